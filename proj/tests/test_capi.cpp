#include <string>

#include "doctest.h"
#include "unets/unets.h"

namespace {

std::string take(char* s) {
    std::string out = s;
    unets_string_free(s);
    return out;
}

const char* kQuartet = "unets 1\nv 0 1\nv 1 2\nv 2 3\nv 3 4\nv 4\nv 5\ne 0 4\ne 1 4\ne 4 5\ne 2 5\ne 3 5\n";
const char* kOther = "unets 1\nv 0 1\nv 1 3\nv 2 2\nv 3 4\nv 4\nv 5\ne 0 4\ne 1 4\ne 4 5\ne 2 5\ne 3 5\n";

}  // namespace

TEST_CASE("parse errors carry a position") {
    unets_graph* g = nullptr;
    CHECK(unets_graph_parse("unets 1\nv a\ne a b\n", &g) == UNETS_E_PARSE);
    CHECK(g == nullptr);
    CHECK(unets_last_error_line() == 3);
    CHECK(unets_last_error_column() == 5);
    CHECK(unets_graph_parse(nullptr, &g) == UNETS_E_ARGUMENT);
    CHECK(unets_network_read("/nonexistent/x.unets", &g) == UNETS_E_IO);
}

TEST_CASE("validation through the C interface") {
    unets_graph* g = nullptr;
    REQUIRE(unets_graph_parse("unets 1\nv a\nv b 1\nv c 2\ne a b\ne a c\ne a a\n", &g) == UNETS_OK);
    CHECK(!unets_graph_is_network(g));
    unets_validation v{};
    REQUIRE(unets_validate(g, &v) == UNETS_OK);
    CHECK(v.valid == 0);
    CHECK(std::string(v.clause).size() > 0);
    unets_graph* n = nullptr;
    CHECK(unets_network_parse("unets 1\nv a\nv b 1\nv c 2\ne a b\ne a c\ne a a\n", &n) == UNETS_E_INVALID);
    unets_distance_info d{};
    CHECK(unets_distance(g, g, UNETS_TBR, -1, &d) == UNETS_E_INVALID);
    unets_graph_free(g);
}

TEST_CASE("distances and lists") {
    unets_graph *a = nullptr, *b = nullptr;
    REQUIRE(unets_network_parse(kQuartet, &a) == UNETS_OK);
    REQUIRE(unets_network_parse(kOther, &b) == UNETS_OK);
    CHECK(unets_graph_leaves(a) == 4);
    CHECK(unets_graph_tier(a) == 0);
    for (unets_metric m : {UNETS_TBR, UNETS_PR, UNETS_REPLUG, UNETS_AD, UNETS_EAD}) {
        unets_distance_info d{};
        REQUIRE(unets_distance(a, b, m, -1, &d) == UNETS_OK);
        CHECK(d.distance == 1);
    }
    unets_maf_info maf{};
    REQUIRE(unets_maf(a, b, &maf) == UNETS_OK);
    CHECK(maf.distance == 1);
    CHECK(maf.components == 2);

    unets_mag* m = nullptr;
    REQUIRE(unets_mag_compute(a, b, &m) == UNETS_OK);
    CHECK(unets_mag_distance(m) == 1);
    CHECK(unets_mag_certified(m));
    char* dot = nullptr;
    REQUIRE(unets_mag_dot(m, 2, &dot) == UNETS_OK);
    CHECK(take(dot).find("graph") != std::string::npos);
    CHECK(unets_mag_dot(m, 5, &dot) == UNETS_E_ARGUMENT);
    unets_graph_list* seq = nullptr;
    REQUIRE(unets_mag_sequence(m, &seq) == UNETS_OK);
    CHECK(unets_list_size(seq) <= 3);
    char *first = nullptr, *last = nullptr;
    REQUIRE(unets_graph_code(unets_list_graph(seq, unets_list_size(seq) - 1), &last) == UNETS_OK);
    REQUIRE(unets_graph_code(b, &first) == UNETS_OK);
    CHECK(take(first) == take(last));
    unets_list_free(seq);
    unets_mag_free(m);

    unets_graph_list* l = nullptr;
    REQUIRE(unets_neighbors(a, "tbr0", &l) == UNETS_OK);
    CHECK(unets_list_size(l) == 2);
    CHECK(unets_list_note(l, 0) != nullptr);
    CHECK(unets_list_graph(l, 9) == nullptr);
    unets_list_free(l);
    CHECK(unets_neighbors(a, "spr", &l) == UNETS_E_ARGUMENT);
    REQUIRE(unets_enumerate(5, 0, &l) == UNETS_OK);
    CHECK(unets_list_size(l) == 15);
    unets_list_free(l);

    unets_graph* g = nullptr;
    REQUIRE(unets_generate(6, 2, 5, 0, &g) == UNETS_OK);
    CHECK(unets_graph_tier(g) == 2);
    char* text = nullptr;
    REQUIRE(unets_graph_serialize(g, &text) == UNETS_OK);
    unets_graph* again = nullptr;
    REQUIRE(unets_network_parse(text, &again) == UNETS_OK);
    unets_string_free(text);
    unets_graph_free(again);
    unets_graph_free(g);
    unets_graph_free(a);
    unets_graph_free(b);
}

TEST_CASE("verify through the C interface") {
    unets_verify_spec spec{4, 0, 0, 0, 1, "metric,bounds"};
    char* report = nullptr;
    int ok = 0;
    REQUIRE(unets_verify(&spec, &report, &ok) == UNETS_OK);
    CHECK(ok == 1);
    CHECK(take(report).find("result=pass") != std::string::npos);
    spec.claims = "nonsense";
    CHECK(unets_verify(&spec, &report, &ok) == UNETS_E_ARGUMENT);
}
