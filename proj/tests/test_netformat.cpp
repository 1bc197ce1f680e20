#include <random>
#include <string>

#include "doctest.h"
#include "support.hpp"
#include "unets/canonical.hpp"
#include "unets/netformat.hpp"
#include "unets/phylo.hpp"

using namespace unets;
using namespace testing_support;

namespace {

ParseError parse_error(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected a ParseError for: " << text);
    return ParseError(0, 0, "");
}

const char* kQuartet =
    "unets 1\n"
    "# quartet 12|34\n"
    "v a 1\n"
    "v b 2\n"
    "v c 3\n"
    "v d 4\n"
    "v x\n"
    "v y\n"
    "e a x\n"
    "e b x\n"
    "e x y\n"
    "e y c\n"
    "e y d\n";

}  // namespace

TEST_CASE("loop example parses but does not validate") {
    MultiGraph g = parse("unets 1\nv a\nv l1 1\nv l2 2\ne a l1\ne a l2\ne a a\n");
    CHECK(g.vertex_count() == 3);
    CHECK(g.edge_count() == 3);
    CHECK(g.degree(0) == 4);
    CHECK(g.loop_count(0) == 1);
    CHECK(g.label(1) == 1);
    CHECK(g.label(2) == 2);
    CHECK_THROWS_AS(validate_network(g), NetworkError);
}

TEST_CASE("quartet file validates with tier 0") {
    MultiGraph g = parse(kQuartet);
    CHECK(g.vertex_count() == 6);
    CHECK(g.edge_count() == 5);
    PhyloNetwork n = validate_network(g);
    CHECK(n.tier() == 0);
    CHECK(canonical_form(g) == canonical_form(quartet(1, 2, 3, 4)));
}

TEST_CASE("comments, blank lines, tabs and CRLF") {
    MultiGraph g = parse("unets 1   # header\r\n\r\n\tv a 1 # leaf\r\nv  b 2\r\n\r\ne a\tb\r\n# end");
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(parse("unets 1").vertex_count() == 0);
}

TEST_CASE("serialize is deterministic and exact") {
    CHECK(serialize(MultiGraph{}) == "unets 1\n");
    MultiGraph q = quartet(1, 2, 3, 4);
    CHECK(serialize(q) ==
          "unets 1\nv 0 1\nv 1 2\nv 2 3\nv 3 4\nv 4\nv 5\n"
          "e 0 4\ne 1 4\ne 2 5\ne 3 5\ne 4 5\n");
    MultiGraph copy = q;
    CHECK(serialize(copy) == serialize(q));
    // Loops and parallel edges.
    MultiGraph m = make_graph(2, {{1, 0}, {0, 0}, {0, 1}});
    CHECK(serialize(m) == "unets 1\nv 0\nv 1\ne 0 0\ne 0 1\ne 0 1\n");
}

TEST_CASE("round trip preserves the canonical code") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        MultiGraph g = random_multigraph(rng, 12);
        // Punch holes in the id space.
        if (g.vertex_count() > 2 && rng() % 2) {
            const VertexId v = g.add_vertex();
            g.add_edge(v, g.vertices()[0]);
            g.erase_edge(g.incident(v)[0]);
            g.erase_vertex(v);
        }
        const std::string text = serialize(g);
        MultiGraph h = parse(text);
        CHECK(canonical_form(h) == canonical_form(g));
        CHECK(serialize(parse(serialize(h))) == serialize(h));
    }
}

TEST_CASE("each diagnostic kind carries a position") {
    struct Case {
        std::string text;
        std::size_t line, column;
    };
    const Case cases[] = {
        {"unets 2\n", 1, 1},                                  // bad magic
        {"", 1, 1},                                           // empty
        {"v a\nunets 1\n", 1, 1},                              // header not first
        {"unets 1\nv a\nw b\n", 3, 1},                         // unknown directive
        {"unets 1\nv a\ne a b\n", 3, 5},                       // undeclared endpoint
        {"unets 1\nv a\nv a\n", 3, 3},                         // duplicate vertex
        {"unets 1\nv a 1\nv b 1\n", 3, 5},                     // duplicate label
        {"unets 1\nv a 0\n", 2, 5},                            // label zero
        {"unets 1\nv a x1\n", 2, 5},                           // non-numeric label
        {"unets 1\nv a 99999999999\n", 2, 5},                  // label out of range
        {"unets 1\nv a-b\n", 2, 3},                            // malformed id
        {"unets 1\nv a\ne a\n", 3, 1},                         // short edge
        {"unets 1\nv\n", 2, 1},                                // short vertex
        {"unets 1\nv a 1 2\n", 2, 1},                          // long vertex
        {"unets 1\nv a 1\nv b\nv c\ne a b\ne a c\n", 6, 3},    // labelled degree two
    };
    for (const Case& c : cases) {
        CAPTURE(c.text);
        const ParseError e = parse_error(c.text);
        CHECK(e.line() == c.line);
        CHECK(e.column() == c.column);
        CHECK(!e.message().empty());
    }
    CHECK(parse_error("unets 1\nv a\ne a zz\n").message().find("zz") != std::string::npos);
}

TEST_CASE("mutated documents either parse or raise ParseError") {
    std::mt19937_64 rng(99);
    const std::string base = kQuartet;
    const std::string alphabet = "uv e#\n\t\r0123456789abcxyz-";
    int parsed = 0;
    for (int i = 0; i < 4000; ++i) {
        std::string t = base;
        const int edits = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < edits; ++k) {
            const std::size_t p = rng() % (t.size() + 1);
            switch (rng() % 3) {
                case 0: t.insert(t.begin() + static_cast<long>(p), alphabet[rng() % alphabet.size()]); break;
                case 1: if (p < t.size()) t.erase(p, 1); break;
                default: if (p < t.size()) t[p] = static_cast<char>(rng() % 256); break;
            }
        }
        try {
            MultiGraph g = parse(t);
            g.check_invariants();
            CHECK(canonical_form(parse(serialize(g))) == canonical_form(g));
            ++parsed;
        } catch (const ParseError& e) {
            CHECK(e.line() >= 1);
            CHECK(e.column() >= 1);
        }
    }
    CHECK(parsed > 0);
}

TEST_CASE("dot output") {
    MultiGraph q = quartet(1, 2, 3, 4);
    const std::string dot = to_dot(q);
    CHECK(dot.rfind("graph unets {", 0) == 0);
    std::size_t edges = 0;
    for (std::size_t p = dot.find(" -- "); p != std::string::npos; p = dot.find(" -- ", p + 1)) ++edges;
    CHECK(edges == 5);
    CHECK(dot.find("label=\"3\"") != std::string::npos);
    CHECK(dot.find("color=red") == std::string::npos);
    CHECK(to_dot(q, {2}).find("v4 -- v5 [color=red, penwidth=2.5]") != std::string::npos);
    CHECK_THROWS_AS(to_dot(q, {17}), GraphError);
    MultiGraph loop = make_graph(1, {{0, 0}});
    CHECK(to_dot(loop).find("v0 -- v0") != std::string::npos);
}
