#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "unets/unets.h"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Failure {
    int code;
};

struct GraphFree {
    void operator()(unets_graph* g) const { unets_graph_free(g); }
};
struct ListFree {
    void operator()(unets_graph_list* l) const { unets_list_free(l); }
};
struct MagFree {
    void operator()(unets_mag* m) const { unets_mag_free(m); }
};
using Graph = std::unique_ptr<unets_graph, GraphFree>;
using List = std::unique_ptr<unets_graph_list, ListFree>;
using Mag = std::unique_ptr<unets_mag, MagFree>;

// Reports a failed call on stderr and unwinds with the matching exit code.
void check(unets_status s, const std::string& what) {
    if (s == UNETS_OK) return;
    std::cerr << what << ": ";
    if (s == UNETS_E_PARSE)
        std::cerr << "line " << unets_last_error_line() << ", column " << unets_last_error_column() << ": ";
    std::cerr << unets_last_error() << '\n';
    throw Failure{s == UNETS_E_BUDGET || s == UNETS_E_INTERNAL ? kFailed : kUsage};
}

std::string take(char* s) {
    std::string out = s;
    unets_string_free(s);
    return out;
}

std::string flat(std::string s) {
    while (!s.empty() && s.back() == '\n') s.pop_back();
    for (char& c : s)
        if (c == '\n') c = ';';
    return s;
}

Graph read_network(const std::string& path) {
    unets_graph* g = nullptr;
    check(unets_network_read(path.c_str(), &g), path);
    return Graph(g);
}

std::string code(const unets_graph* g) {
    char* hex = nullptr;
    check(unets_graph_code(g, &hex), "code");
    return take(hex);
}

void write(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) {
        std::cerr << "cannot write " << path << '\n';
        throw Failure{kUsage};
    }
}

int run_validate(const std::string& path) {
    unets_graph* raw = nullptr;
    check(unets_graph_read(path.c_str(), &raw), path);
    Graph g(raw);
    unets_validation v{};
    check(unets_validate(g.get(), &v), path);
    if (!v.valid) {
        std::cout << "valid=false clause=" << v.clause;
        if (v.witness_edge >= 0) std::cout << " edge=" << v.witness_edge;
        std::cout << '\n';
        return kFailed;
    }
    std::cout << "valid=true leaves=" << v.leaves << " tier=" << v.tier << " code=" << code(g.get()) << '\n';
    return kOk;
}

int run_dist(const std::string& metric, const std::string& a, const std::string& b, long slack) {
    static const std::map<std::string, unets_metric> metrics{
        {"tbr", UNETS_TBR}, {"pr", UNETS_PR}, {"replug", UNETS_REPLUG}, {"ad", UNETS_AD}, {"ead", UNETS_EAD}};
    Graph x = read_network(a);
    Graph y = read_network(b);
    const unets_metric m = metrics.at(metric);
    unets_distance_info d{};
    check(unets_distance(x.get(), y.get(), m, slack, &d), "dist");
    std::cout << metric << '=' << d.distance << '\n';
    if (m != UNETS_AD)
        std::cout << "window=" << d.window_lo << ".." << d.window_hi << " wider=" << d.wider
                  << " stable=" << (d.stable ? "true" : "false") << " witness=" << (d.witness_ok ? "ok" : "bad") << '\n';
    return m == UNETS_AD || d.witness_ok ? kOk : kFailed;
}

int run_neighbors(const std::string& op, const std::string& path) {
    Graph g = read_network(path);
    unets_graph_list* raw = nullptr;
    check(unets_neighbors(g.get(), op.c_str(), &raw), "neighbors");
    List l(raw);
    std::cout << "count=" << unets_list_size(l.get()) << '\n';
    for (std::size_t i = 0; i < unets_list_size(l.get()); ++i) {
        const unets_graph* h = unets_list_graph(l.get(), i);
        std::cout << "move=\"" << unets_list_note(l.get(), i) << "\" network=" << (unets_graph_is_network(h) ? "true" : "false")
                  << " code=" << code(h) << '\n';
    }
    return kOk;
}

int run_enumerate(std::size_t n, std::size_t tier) {
    unets_graph_list* raw = nullptr;
    check(unets_enumerate(n, tier, &raw), "enumerate");
    List l(raw);
    std::cout << "count=" << unets_list_size(l.get()) << '\n';
    for (std::size_t i = 0; i < unets_list_size(l.get()); ++i) std::cout << "code=" << unets_list_note(l.get(), i) << '\n';
    return kOk;
}

int run_maf(const std::string& a, const std::string& b) {
    Graph x = read_network(a);
    Graph y = read_network(b);
    unets_maf_info m{};
    check(unets_maf(x.get(), y.get(), &m), "maf");
    std::cout << "maf=" << m.distance << " components=" << m.components << '\n';
    return kOk;
}

int run_mag(const std::string& a, const std::string& b, const std::string& dot_dir, bool sequence) {
    Graph x = read_network(a);
    Graph y = read_network(b);
    unets_mag* raw = nullptr;
    check(unets_mag_compute(x.get(), y.get(), &raw), "mag");
    Mag m(raw);
    const bool certified = unets_mag_certified(m.get());
    std::cout << "ad=" << unets_mag_distance(m.get()) << " subgraphs=" << unets_mag_subgraphs(m.get())
              << " certified=" << (certified ? "true" : "false") << '\n';
    if (!dot_dir.empty()) {
        std::filesystem::create_directories(dot_dir);
        const char* names[] = {"agreement_graph.dot", "host_a.dot", "host_b.dot"};
        for (int which = 0; which < 3; ++which) {
            char* dot = nullptr;
            check(unets_mag_dot(m.get(), which, &dot), "mag");
            const std::string path = (std::filesystem::path(dot_dir) / names[which]).string();
            write(path, take(dot));
            std::cout << "dot=" << path << '\n';
        }
    }
    if (sequence) {
        unets_graph_list* seq = nullptr;
        check(unets_mag_sequence(m.get(), &seq), "mag");
        List l(seq);
        for (std::size_t i = 0; i < unets_list_size(l.get()); ++i) {
            char* text = nullptr;
            check(unets_graph_serialize(unets_list_graph(l.get(), i), &text), "mag");
            std::cout << "step=" << i << " move=\"" << unets_list_note(l.get(), i) << "\" graph=\"" << flat(take(text))
                      << "\"\n";
        }
    }
    return certified ? kOk : kFailed;
}

int run_verify(std::size_t n, const std::string& tiers, std::size_t count, std::uint64_t seed, const std::string& claims) {
    unets_verify_spec spec{};
    const auto dots = tiers.find("..");
    try {
        if (dots == std::string::npos) {
            spec.tier_lo = spec.tier_hi = std::stoul(tiers);
        } else {
            spec.tier_lo = std::stoul(tiers.substr(0, dots));
            spec.tier_hi = std::stoul(tiers.substr(dots + 2));
        }
    } catch (const std::exception&) {
        std::cerr << "--tiers: expected LO..HI\n";
        return kUsage;
    }
    spec.n = n;
    spec.count = count;
    spec.seed = seed;
    spec.claims = claims.empty() ? nullptr : claims.c_str();
    char* report = nullptr;
    int ok = 0;
    check(unets_verify(&spec, &report, &ok), "verify");
    std::cout << take(report);
    return ok ? kOk : kFailed;
}

int run_gen(std::size_t n, std::size_t tier, std::uint64_t seed, std::size_t index) {
    unets_graph* raw = nullptr;
    check(unets_generate(n, tier, seed, index, &raw), "gen");
    Graph g(raw);
    char* text = nullptr;
    check(unets_graph_serialize(g.get(), &text), "gen");
    std::cout << take(text);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distances between unrooted binary proper phylogenetic networks"};
    app.require_subcommand(1);

    std::string file, a, b, metric, op, dot_dir, tiers, claims;
    std::size_t n = 0, tier = 0, count = 0, index = 0;
    std::uint64_t seed = 1;
    long slack = -1;
    bool sequence = false;

    auto* validate = app.add_subcommand("validate", "Parse a file and check that it is a proper network");
    validate->add_option("FILE", file)->required();

    auto* dist = app.add_subcommand("dist", "Distance between two networks");
    dist->add_option("--metric", metric)->required()->check(CLI::IsMember({"tbr", "pr", "replug", "ad", "ead"}));
    dist->add_option("A", a)->required();
    dist->add_option("B", b)->required();
    dist->add_option("--tier-slack", slack, "Tiers allowed above the larger input tier")->check(CLI::NonNegativeNumber);

    auto* neighbors = app.add_subcommand("neighbors", "One-step neighbourhood");
    neighbors->add_option("--op", op)->required()->check(CLI::IsMember({"tbr0", "tbr+", "tbr-", "pr0", "replug"}));
    neighbors->add_option("FILE", file)->required();

    auto* enumerate = app.add_subcommand("enumerate", "All networks of a tier");
    enumerate->add_option("--n", n)->required();
    enumerate->add_option("--tier", tier)->required();

    auto* maf = app.add_subcommand("maf", "Maximum agreement forest distance of two trees");
    maf->add_option("A", a)->required();
    maf->add_option("B", b)->required();

    auto* mag = app.add_subcommand("mag", "Maximum agreement graph");
    mag->add_option("A", a)->required();
    mag->add_option("B", b)->required();
    mag->add_option("--emit-dot", dot_dir, "Write Graphviz files to this directory");
    mag->add_flag("--emit-sequence", sequence, "Print the TBR sequence built from the agreement graph");

    auto* verify = app.add_subcommand("verify", "Check the distance relations on a corpus");
    verify->add_option("--n", n)->required();
    verify->add_option("--tiers", tiers)->required();
    verify->add_option("--count", count, "0 enumerates every network")->required();
    verify->add_option("--seed", seed);
    verify->add_option("--claims", claims);

    auto* gen = app.add_subcommand("gen", "Random network");
    gen->add_option("--n", n)->required();
    gen->add_option("--tier", tier)->required();
    gen->add_option("--seed", seed)->required();
    gen->add_option("--index", index);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (*validate) return run_validate(file);
        if (*dist) return run_dist(metric, a, b, slack);
        if (*neighbors) return run_neighbors(op, file);
        if (*enumerate) return run_enumerate(n, tier);
        if (*maf) return run_maf(a, b);
        if (*mag) return run_mag(a, b, dot_dir, sequence);
        if (*verify) return run_verify(n, tiers, count, seed, claims);
        if (*gen) return run_gen(n, tier, seed, index);
    } catch (const Failure& f) {
        return f.code;
    }
    return kUsage;
}
