#include "unets/unets.h"

#include <cstring>
#include <exception>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "unets/agreement.hpp"
#include "unets/canonical.hpp"
#include "unets/corpus.hpp"
#include "unets/netformat.hpp"
#include "unets/rearrange.hpp"
#include "unets/search.hpp"

using namespace unets;

struct unets_graph {
    MultiGraph graph;
    std::optional<PhyloNetwork> net;
};

struct unets_graph_list {
    std::vector<unets_graph> graphs;
    std::vector<std::string> notes;
};

struct unets_mag {
    PhyloNetwork a;
    PhyloNetwork b;
    AgreementResult result;
    bool certified = false;
};

namespace {

thread_local std::string g_error;
thread_local std::size_t g_line = 0;
thread_local std::size_t g_column = 0;

unets_status fail(unets_status s, const std::string& msg) {
    g_error = msg;
    g_line = g_column = 0;
    return s;
}

// Runs f, translating exceptions into status codes.
template <class F>
unets_status guard(F&& f) {
    try {
        f();
        g_error.clear();
        return UNETS_OK;
    } catch (const ParseError& e) {
        g_error = e.message();
        g_line = e.line();
        g_column = e.column();
        return UNETS_E_PARSE;
    } catch (const NetworkError& e) {
        return fail(UNETS_E_INVALID, e.what());
    } catch (const SearchError& e) {
        if (e.kind() == SearchError::Kind::Budget) return fail(UNETS_E_BUDGET, e.what());
        return fail(UNETS_E_ARGUMENT, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(UNETS_E_ARGUMENT, e.what());
    } catch (const IoError& e) {
        return fail(UNETS_E_IO, e.what());
    } catch (const std::exception& e) {
        return fail(UNETS_E_INTERNAL, e.what());
    }
}

char* copy(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

unets_graph wrap(MultiGraph g) {
    unets_graph h{std::move(g), std::nullopt};
    try {
        h.net = validate_network(h.graph);
    } catch (const NetworkError&) {
    }
    return h;
}

const PhyloNetwork& network(const unets_graph* g) {
    if (!g) throw std::invalid_argument("null graph");
    if (!g->net) throw NetworkError(NetworkClause::Properness, "graph is not a valid network");
    return *g->net;
}

}  // namespace

extern "C" {

const char* unets_last_error(void) { return g_error.c_str(); }
size_t unets_last_error_line(void) { return g_line; }
size_t unets_last_error_column(void) { return g_column; }

void unets_string_free(char* s) { delete[] s; }

unets_status unets_graph_parse(const char* text, unets_graph** out) {
    if (!text || !out) return fail(UNETS_E_ARGUMENT, "null argument");
    return guard([&] { *out = new unets_graph(wrap(parse(text))); });
}

unets_status unets_graph_read(const char* path, unets_graph** out) {
    if (!path || !out) return fail(UNETS_E_ARGUMENT, "null argument");
    return guard([&] { *out = new unets_graph(wrap(read_file(path))); });
}

unets_status unets_network_parse(const char* text, unets_graph** out) {
    if (!text || !out) return fail(UNETS_E_ARGUMENT, "null argument");
    return guard([&] {
        MultiGraph g = parse(text);
        PhyloNetwork n = validate_network(g);
        *out = new unets_graph{std::move(g), std::move(n)};
    });
}

unets_status unets_network_read(const char* path, unets_graph** out) {
    if (!path || !out) return fail(UNETS_E_ARGUMENT, "null argument");
    return guard([&] {
        MultiGraph g = read_file(path);
        PhyloNetwork n = validate_network(g);
        *out = new unets_graph{std::move(g), std::move(n)};
    });
}

void unets_graph_free(unets_graph* g) { delete g; }

unets_status unets_validate(const unets_graph* g, unets_validation* out) {
    if (!g || !out) return fail(UNETS_E_ARGUMENT, "null argument");
    return guard([&] {
        *out = unets_validation{1, "", -1, 0, 0};
        try {
            const PhyloNetwork n = validate_network(g->graph);
            out->leaves = n.leaf_count();
            out->tier = n.tier();
        } catch (const NetworkError& e) {
            out->valid = 0;
            out->clause = clause_name(e.clause());
            if (e.witness()) out->witness_edge = static_cast<int64_t>(*e.witness());
            out->leaves = g->graph.labelled_vertices().size();
        }
    });
}

int unets_graph_is_network(const unets_graph* g) { return g && g->net ? 1 : 0; }
size_t unets_graph_leaves(const unets_graph* g) { return g ? g->graph.labelled_vertices().size() : 0; }
size_t unets_graph_tier(const unets_graph* g) { return g && g->net ? g->net->tier() : 0; }

unets_status unets_graph_serialize(const unets_graph* g, char** out) {
    if (!g || !out) return fail(UNETS_E_ARGUMENT, "null argument");
    return guard([&] { *out = copy(serialize(g->graph)); });
}

unets_status unets_graph_code(const unets_graph* g, char** hex) {
    if (!g || !hex) return fail(UNETS_E_ARGUMENT, "null argument");
    return guard([&] { *hex = copy(canonical_form(g->graph).hex()); });
}

unets_status unets_graph_dot(const unets_graph* g, char** out) {
    if (!g || !out) return fail(UNETS_E_ARGUMENT, "null argument");
    return guard([&] { *out = copy(to_dot(g->graph)); });
}

size_t unets_list_size(const unets_graph_list* l) { return l ? l->graphs.size() : 0; }
const unets_graph* unets_list_graph(const unets_graph_list* l, size_t i) {
    return l && i < l->graphs.size() ? &l->graphs[i] : nullptr;
}
const char* unets_list_note(const unets_graph_list* l, size_t i) {
    return l && i < l->notes.size() ? l->notes[i].c_str() : nullptr;
}
void unets_list_free(unets_graph_list* l) { delete l; }

unets_status unets_neighbors(const unets_graph* g, const char* op, unets_graph_list** out) {
    if (!g || !op || !out) return fail(UNETS_E_ARGUMENT, "null argument");
    return guard([&] {
        const PhyloNetwork& n = network(g);
        const std::string name = op;
        std::vector<Neighbor> nbs;
        if (name == "tbr0")
            nbs = tbr_neighbors(n, KindSet{MoveKind::TBR0});
        else if (name == "tbr+")
            nbs = tbr_neighbors(n, KindSet{MoveKind::TBRplus});
        else if (name == "tbr-")
            nbs = tbr_neighbors(n, KindSet{MoveKind::TBRminus});
        else if (name == "pr0")
            nbs = pr_neighbors(n, KindSet{MoveKind::PR0});
        else if (name == "replug")
            nbs = replug_neighbors(ReplugNetwork::from(n));
        else
            throw std::invalid_argument("unknown operation `" + name + "`");
        auto* l = new unets_graph_list;
        for (Neighbor& nb : nbs) {
            l->notes.push_back(nb.move.describe());
            l->graphs.push_back(wrap(std::move(nb.graph)));
        }
        *out = l;
    });
}

unets_status unets_enumerate(size_t n, size_t tier, unets_graph_list** out) {
    if (!out) return fail(UNETS_E_ARGUMENT, "null argument");
    return guard([&] {
        auto codes = enumerate_tier(n, tier);
        auto* l = new unets_graph_list;
        for (const CanonicalCode& c : codes) {
            l->notes.push_back(c.hex());
            l->graphs.push_back(wrap(decode(c)));
        }
        *out = l;
    });
}

unets_status unets_generate(size_t n, size_t tier, uint64_t seed, size_t index, unets_graph** out) {
    if (!out) return fail(UNETS_E_ARGUMENT, "null argument");
    return guard([&] {
        CorpusSpec spec;
        spec.n_leaves = n;
        spec.tier_lo = spec.tier_hi = tier;
        spec.seed = seed;
        PhyloNetwork net = random_network(spec, index);
        *out = new unets_graph{net.graph(), net};
    });
}

unets_status unets_distance(const unets_graph* a, const unets_graph* b, unets_metric metric, long slack,
                            unets_distance_info* out) {
    if (!a || !b || !out) return fail(UNETS_E_ARGUMENT, "null argument");
    return guard([&] {
        const PhyloNetwork& x = network(a);
        const PhyloNetwork& y = network(b);
        *out = unets_distance_info{0, 1, 0, 0, 0, 0};
        SearchConfig cfg;
        if (slack >= 0) cfg.slack = slack;
        switch (metric) {
        case UNETS_AD: {
            const AgreementResult r = agreement_distance(x, y);
            out->distance = out->wider = r.distance;
            return;
        }
        case UNETS_TBR: cfg.op = Operation::TBR; break;
        case UNETS_PR: cfg.op = Operation::PR; break;
        case UNETS_REPLUG:
        case UNETS_EAD: cfg.op = Operation::Replug; break;
        default: throw std::invalid_argument("unknown metric");
        }
        const StabilityReport rep = window_stability(x, y, cfg);
        out->distance = rep.result.distance;
        out->wider = rep.wider;
        out->stable = rep.stable ? 1 : 0;
        out->window_lo = rep.result.window_lo;
        out->window_hi = rep.result.window_hi;
        const auto states = rep.result.witness.replay();
        out->witness_ok = canonical_form(states.front()) == canonical_form(x.graph()) &&
                          canonical_form(states.back()) == canonical_form(y.graph());
    });
}

unets_status unets_maf(const unets_graph* a, const unets_graph* b, unets_maf_info* out) {
    if (!a || !b || !out) return fail(UNETS_E_ARGUMENT, "null argument");
    return guard([&] {
        const MafResult r = maf_distance(network(a), network(b));
        out->distance = r.distance;
        out->components = component_count(r.forest);
    });
}

unets_status unets_mag_compute(const unets_graph* a, const unets_graph* b, unets_mag** out) {
    if (!a || !b || !out) return fail(UNETS_E_ARGUMENT, "null argument");
    return guard([&] {
        const PhyloNetwork& x = network(a);
        const PhyloNetwork& y = network(b);
        AgreementResult r = agreement_distance(x, y);
        const bool ok = !embedding_defect(r.into_a, x.graph(), AgreementMode::MAG) &&
                        !embedding_defect(r.into_b, y.graph(), AgreementMode::MAG) &&
                        !ordered_defect(r.into_a, x.graph(), AgreementMode::MAG) &&
                        !ordered_defect(r.into_b, y.graph(), AgreementMode::MAG);
        *out = new unets_mag{x, y, std::move(r), ok};
    });
}

size_t unets_mag_distance(const unets_mag* m) { return m ? m->result.distance : 0; }
size_t unets_mag_subgraphs(const unets_mag* m) { return m ? m->result.graph.subgraphs.size() : 0; }
int unets_mag_certified(const unets_mag* m) { return m && m->certified ? 1 : 0; }

unets_status unets_mag_dot(const unets_mag* m, int which, char** out) {
    if (!m || !out || which < 0 || which > 2) return fail(UNETS_E_ARGUMENT, "bad argument");
    return guard([&] {
        const AgreementEmbedding& e = which == 1 ? m->result.into_a : m->result.into_b;
        std::set<EdgeId> hl;
        if (which == 0) {
            hl.insert(e.disagreement.begin(), e.disagreement.end());
            *out = copy(to_dot(e.pattern, hl));
            return;
        }
        for (EdgeId d : e.disagreement) hl.insert(e.edge_image[d].begin(), e.edge_image[d].end());
        *out = copy(to_dot(which == 1 ? m->a.graph() : m->b.graph(), hl));
    });
}

unets_status unets_mag_sequence(const unets_mag* m, unets_graph_list** out) {
    if (!m || !out) return fail(UNETS_E_ARGUMENT, "null argument");
    return guard([&] {
        const RearrangementSequence seq = mag_to_tbr_sequence(m->a, m->b, m->result);
        auto states = seq.replay();
        auto* l = new unets_graph_list;
        for (std::size_t i = 0; i < states.size(); ++i) {
            l->notes.push_back(i == 0 ? std::string("start") : seq.moves[i - 1].describe());
            l->graphs.push_back(wrap(std::move(states[i])));
        }
        *out = l;
    });
}

void unets_mag_free(unets_mag* m) { delete m; }

unets_status unets_verify(const unets_verify_spec* spec, char** report, int* ok) {
    if (!spec || !report || !ok) return fail(UNETS_E_ARGUMENT, "null argument");
    return guard([&] {
        CorpusSpec s;
        s.n_leaves = spec->n;
        s.tier_lo = spec->tier_lo;
        s.tier_hi = spec->tier_hi;
        s.count = spec->count;
        s.seed = spec->seed;
        const std::uint32_t claims = spec->claims ? parse_claims(spec->claims) : kAllClaims;
        const VerificationReport r = verify_claims(s, claims);
        *ok = r.ok() ? 1 : 0;
        *report = copy(r.to_text());
    });
}

}  // extern "C"
