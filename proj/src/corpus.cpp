#include "unets/corpus.hpp"

#include <chrono>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "unets/agreement.hpp"
#include "unets/canonical.hpp"
#include "unets/fixtures.hpp"
#include "unets/netformat.hpp"
#include "unets/rearrange.hpp"

namespace unets {

namespace {

constexpr Claim kClaims[] = {Claim::Metric,    Claim::Bounds,   Claim::AdOne,   Claim::Trees,    Claim::Displaying,
                             Claim::EadReplug, Claim::Sequence, Claim::Fixtures, Claim::Stability};

std::size_t slot(Claim c) {
    for (std::size_t i = 0; i < std::size(kClaims); ++i)
        if (kClaims[i] == c) return i;
    return 0;
}

MultiGraph random_tree(std::mt19937_64& rng, std::size_t n) {
    MultiGraph g;
    if (n == 2) {
        g.add_edge(g.add_vertex(1), g.add_vertex(2));
        return g;
    }
    const VertexId c = g.add_vertex();
    for (Label l = 1; l <= 3; ++l) g.add_edge(c, g.add_vertex(l));
    for (Label l = 4; l <= n; ++l) {
        const auto es = g.edges();
        const VertexId w = g.subdivide(es[rng() % es.size()]);
        g.add_edge(w, g.add_vertex(l));
    }
    return g;
}

struct Pair {
    std::size_t ad_ab = 0, ad_ba = 0;
    std::size_t ead_ab = 0, ead_ba = 0;
    StabilityReport tbr, pr, ead;
    AgreementResult mag;
};

class Verifier {
public:
    Verifier(const CorpusSpec& spec, std::uint32_t claims) : spec_(spec), claims_(claims) {
        report_.counts.resize(std::size(kClaims));
        for (std::size_t i = 0; i < std::size(kClaims); ++i) report_.counts[i].claim = kClaims[i];
    }

    VerificationReport run() {
        const auto t0 = std::chrono::steady_clock::now();
        const std::vector<PhyloNetwork> nets = corpus_networks(spec_);
        report_.networks = nets.size();
        const std::size_t n = nets.size();
        std::vector<std::vector<std::optional<std::size_t>>> ad(n, std::vector<std::optional<std::size_t>>(n));
        auto ead = ad;
        std::vector<CanonicalCode> codes;
        for (const auto& net : nets) codes.push_back(canonical_form(net.graph()));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                ++report_.pairs;
                auto p = evaluate(nets[i], nets[j]);
                if (!p) continue;
                ad[i][j] = p->ad_ab;
                ad[j][i] = p->ad_ba;
                ead[i][j] = p->ead_ab;
                ead[j][i] = p->ead_ba;
                check_pair(nets[i], nets[j], codes[i] == codes[j], *p);
            }
        if (on(Claim::Metric)) {
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t k = 0; k < n; ++k) {
                        if (!ad[i][j] || !ad[j][k] || !ad[i][k] || !ead[i][j] || !ead[j][k] || !ead[i][k]) continue;
                        const bool ok = *ad[i][k] <= *ad[i][j] + *ad[j][k] && *ead[i][k] <= *ead[i][j] + *ead[j][k];
                        tally(Claim::Metric, ok, [&] {
                            std::ostringstream s;
                            s << "triangle ad=" << *ad[i][j] << ',' << *ad[j][k] << ',' << *ad[i][k] << " ead=" << *ead[i][j]
                              << ',' << *ead[j][k] << ',' << *ead[i][k];
                            return s.str();
                        }, {&nets[i], &nets[j], &nets[k]});
                    }
        }
        if (on(Claim::Fixtures)) fixtures();
        report_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return std::move(report_);
    }

private:
    bool on(Claim c) const { return claims_ & static_cast<std::uint32_t>(c); }

    template <class Detail>
    void tally(Claim c, bool ok, Detail detail, std::vector<const PhyloNetwork*> nets) {
        ClaimCount& cc = report_.counts[slot(c)];
        if (ok) {
            ++cc.pass;
            return;
        }
        ++cc.fail;
        Counterexample ce{c, detail(), {}};
        for (const PhyloNetwork* p : nets) ce.networks.push_back(serialize(p->graph()));
        report_.failures.push_back(std::move(ce));
    }

    SearchConfig config(Operation op) const {
        SearchConfig cfg;
        cfg.op = op;
        cfg.node_budget = spec_.node_budget;
        return cfg;
    }

    std::optional<Pair> evaluate(const PhyloNetwork& a, const PhyloNetwork& b) {
        Pair p;
        try {
            AgreementOptions opt;
            opt.node_budget = spec_.node_budget;
            p.mag = agreement_distance(a, b, opt);
            p.ad_ab = p.mag.distance;
            p.ad_ba = agreement_distance(b, a, opt).distance;
            p.ead = endpoint_agreement_distance(a, b, config(Operation::Replug));
            p.ead_ab = p.ead.result.distance;
            p.ead_ba = endpoint_agreement_distance(b, a, config(Operation::Replug)).result.distance;
            p.tbr = window_stability(a, b, config(Operation::TBR));
            p.pr = window_stability(a, b, config(Operation::PR));
        } catch (const SearchError& e) {
            if (e.kind() != SearchError::Kind::Budget) throw;
            ++report_.budget_exhausted;
            report_.failures.push_back({Claim::Stability, "budget exhausted", {serialize(a.graph()), serialize(b.graph())}});
            return std::nullopt;
        }
        return p;
    }

    void check_pair(const PhyloNetwork& a, const PhyloNetwork& b, bool same, const Pair& p) {
        const std::size_t ad = p.ad_ab;
        const std::size_t ead = p.ead_ab;
        const std::size_t tbr = p.tbr.result.distance;
        const std::size_t pr = p.pr.result.distance;
        auto values = [&] {
            std::ostringstream s;
            s << "ad=" << ad << " ad_ba=" << p.ad_ba << " ead=" << ead << " ead_ba=" << p.ead_ba << " tbr=" << tbr
              << " pr=" << pr;
            return s.str();
        };
        const std::vector<const PhyloNetwork*> ab{&a, &b};
        if (!same) ++(ad == tbr ? report_.ad_equals_tbr : report_.ad_below_tbr);
        if (on(Claim::Metric))
            tally(Claim::Metric, p.ad_ab == p.ad_ba && p.ead_ab == p.ead_ba && (ad == 0) == same && (ead == 0) == same,
                  values, ab);
        if (on(Claim::Bounds)) {
            const bool ok = ad <= tbr && tbr <= 2 * ad && ad <= pr && pr <= 4 * ad && ad <= ead && ead <= 2 * ad &&
                            ead <= pr && pr <= 3 * ead;
            tally(Claim::Bounds, ok, values, ab);
        }
        if (on(Claim::AdOne)) tally(Claim::AdOne, (ad == 1) == (tbr == 1), values, ab);
        if (on(Claim::Stability)) tally(Claim::Stability, p.tbr.stable && p.pr.stable && p.ead.stable, values, ab);
        if (!(p.tbr.stable && p.pr.stable && p.ead.stable)) ++report_.unstable;
        if (on(Claim::Trees)) {
            const bool ta = is_tree(a), tb = is_tree(b);
            if (ta && tb) {
                const std::size_t maf = maf_distance(a, b).distance;
                tally(Claim::Trees, ad == tbr && ad == maf, [&] { return values() + " maf=" + std::to_string(maf); }, ab);
            } else if (ta || tb) {
                tally(Claim::Trees, ad == tbr, values, ab);
            }
        }
        if (on(Claim::Displaying) && a.tier() != b.tier()) {
            const PhyloNetwork& lo = a.tier() < b.tier() ? a : b;
            const PhyloNetwork& hi = a.tier() < b.tier() ? b : a;
            if (displays(hi, lo)) {
                const std::size_t gap = hi.tier() - lo.tier();
                tally(Claim::Displaying, ad == gap && tbr == gap, values, ab);
            }
        }
        if (on(Claim::EadReplug)) {
            const std::size_t m = meag_search(a, b, spec_.node_budget).distance;
            tally(Claim::EadReplug, m == ead, [&] { return values() + " meag=" + std::to_string(m); }, ab);
        }
        if (on(Claim::Sequence)) {
            bool ok = p.mag.distance + 1 >= p.mag.graph.subgraphs.size();
            std::string why;
            try {
                const RearrangementSequence seq = mag_to_tbr_sequence(a, b, p.mag);
                const auto states = seq.replay();
                ok = ok && seq.length() <= 2 * ad && canonical_form(states.front()) == canonical_form(a.graph()) &&
                     canonical_form(states.back()) == canonical_form(b.graph());
                why = " length=" + std::to_string(seq.length());
            } catch (const std::exception& e) {
                ok = false;
                why = std::string(" error=") + e.what();
            }
            tally(Claim::Sequence, ok, [&] { return values() + why; }, ab);
        }
    }

    PhyloNetwork fixture(const char* name) const { return validate_network(parse(fixture_text(name))); }

    void fixtures() {
        {
            const PhyloNetwork a = fixture("adneqtbr_N.unets");
            const PhyloNetwork b = fixture("adneqtbr_Nprime.unets");
            const std::size_t ad = agreement_distance(a, b).distance;
            const std::size_t ead = endpoint_agreement_distance(a, b).result.distance;
            SearchConfig cfg = config(Operation::TBR);
            // Sequences of length at most 2 cannot leave tiers 5-9.
            cfg.tier_lo = 5;
            cfg.tier_hi = 9;
            const std::size_t tbr = distance(a, b, cfg).distance;
            tally(Claim::Fixtures, ad == 2 && ead == 2 && tbr == 3, [&] {
                return "adneqtbr ad=" + std::to_string(ad) + " ead=" + std::to_string(ead) + " tbr=" + std::to_string(tbr);
            }, {&a, &b});
        }
        {
            const PhyloNetwork a = fixture("agex1_N.unets");
            const PhyloNetwork b = fixture("agex1_Nprime.unets");
            const AgreementResult r = agreement_distance(a, b);
            tally(Claim::Fixtures, r.distance == 2 && r.into_a.disagreement.size() == 1,
                  [&] { return "agex1 ad=" + std::to_string(r.distance); }, {&a, &b});
        }
        {
            const PhyloNetwork a = fixture("agex2_N.unets");
            const PhyloNetwork b = fixture("agex2_Nprime.unets");
            const AgreementResult r = agreement_distance(a, b);
            bool unlabelled = false;
            for (const MultiGraph& s : r.graph.subgraphs) unlabelled |= s.labelled_vertices().empty();
            tally(Claim::Fixtures, r.distance == 3 && unlabelled, [&] { return "agex2 ad=" + std::to_string(r.distance); },
                  {&a, &b});
        }
        {
            const PhyloNetwork a = fixture("eagex_N.unets");
            const PhyloNetwork b = fixture("eagex_Nprime.unets");
            const EndpointResult r = meag_search(a, b);
            const std::size_t rep = replug_distance(a, b).distance;
            tally(Claim::Fixtures, r.distance == 2 && rep == 2,
                  [&] { return "eagex meag=" + std::to_string(r.distance) + " replug=" + std::to_string(rep); }, {&a, &b});
        }
        {
            const PhyloNetwork t = fixture("treenet_T.unets");
            const PhyloNetwork n = fixture("treenet_N.unets");
            bool rejected = false;
            try {
                validate_network(parse(fixture_text("treenet_M_improper.unets")));
            } catch (const NetworkError& e) {
                rejected = e.clause() == NetworkClause::Properness;
            }
            tally(Claim::Fixtures, is_tree(t) && n.tier() == 2 && rejected, [] { return std::string("treenet"); }, {&t, &n});
        }
    }

    CorpusSpec spec_;
    std::uint32_t claims_;
    VerificationReport report_;
};

}  // namespace

PhyloNetwork random_network(const CorpusSpec& spec, std::size_t index) {
    if (spec.n_leaves < 2 || spec.tier_lo > spec.tier_hi) throw std::invalid_argument("random_network: bad spec");
    std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(static_cast<std::uint64_t>(index) >> 32)};
    std::mt19937_64 rng(seq);
    const std::size_t tier = spec.tier_lo + rng() % (spec.tier_hi - spec.tier_lo + 1);
    PhyloNetwork net = validate_network(random_tree(rng, spec.n_leaves));
    for (std::size_t i = 0; i < tier; ++i) {
        auto nbs = tbr_neighbors(net, KindSet{MoveKind::TBRplus});
        net = apply(nbs[rng() % nbs.size()].move, net);
    }
    return net;
}

std::vector<PhyloNetwork> corpus_networks(const CorpusSpec& spec) {
    std::vector<PhyloNetwork> out;
    if (spec.count == 0) {
        for (std::size_t r = spec.tier_lo; r <= spec.tier_hi; ++r)
            for (const auto& c : enumerate_tier(spec.n_leaves, r, spec.node_budget)) out.push_back(validate_network(decode(c)));
    } else {
        for (std::size_t i = 0; i < spec.count; ++i) out.push_back(random_network(spec, i));
    }
    return out;
}

const char* claim_name(Claim c) {
    switch (c) {
    case Claim::Metric: return "metric";
    case Claim::Bounds: return "bounds";
    case Claim::AdOne: return "ad1";
    case Claim::Trees: return "trees";
    case Claim::Displaying: return "displaying";
    case Claim::EadReplug: return "ead-replug";
    case Claim::Sequence: return "sequence";
    case Claim::Fixtures: return "fixtures";
    case Claim::Stability: return "stability";
    }
    return "?";
}

std::uint32_t parse_claims(const std::string& list) {
    std::uint32_t out = 0;
    std::stringstream in(list);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item == "all") {
            out |= kAllClaims;
            continue;
        }
        bool found = false;
        for (Claim c : kClaims)
            if (item == claim_name(c)) {
                out |= static_cast<std::uint32_t>(c);
                found = true;
            }
        if (!found) throw std::invalid_argument("unknown claim `" + item + "`");
    }
    return out;
}

VerificationReport verify_claims(const CorpusSpec& spec, std::uint32_t claims) { return Verifier(spec, claims).run(); }

std::string VerificationReport::to_text() const {
    std::ostringstream s;
    s << "networks=" << networks << " pairs=" << pairs << " unstable=" << unstable << " budget_exhausted=" << budget_exhausted
      << " ad_equals_tbr=" << ad_equals_tbr << " ad_below_tbr=" << ad_below_tbr << '\n';
    for (const ClaimCount& c : counts) {
        if (c.pass + c.fail == 0) continue;
        s << "claim=" << claim_name(c.claim) << " pass=" << c.pass << " fail=" << c.fail << '\n';
    }
    for (const Counterexample& ce : failures) {
        s << "counterexample claim=" << claim_name(ce.claim) << ' ' << ce.detail;
        for (std::size_t i = 0; i < ce.networks.size(); ++i) {
            std::string flat = ce.networks[i];
            for (char& ch : flat)
                if (ch == '\n') ch = ';';
            s << " net" << i << "=\"" << flat << '"';
        }
        s << '\n';
    }
    s << "result=" << (ok() ? "pass" : "fail") << '\n';
    return s.str();
}

}  // namespace unets
