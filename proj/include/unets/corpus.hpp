#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "unets/phylo.hpp"
#include "unets/search.hpp"

namespace unets {

struct CorpusSpec {
    std::size_t n_leaves = 4;
    std::size_t tier_lo = 0;
    std::size_t tier_hi = 1;
    // 0 means every network with these parameters (enumerate_tier).
    std::size_t count = 0;
    std::uint64_t seed = 1;
    std::size_t node_budget = 4'000'000;
};

// Random leaf-insertion tree followed by random TBR+ moves; the tier is
// drawn from [tier_lo, tier_hi]. Depends only on (spec, index).
PhyloNetwork random_network(const CorpusSpec& spec, std::size_t index);

// The corpus a spec describes, in a fixed order.
std::vector<PhyloNetwork> corpus_networks(const CorpusSpec& spec);

enum class Claim : std::uint32_t {
    Metric = 1u << 0,       // AD and EAD: symmetry, identity, triangle inequality
    Bounds = 1u << 1,       // the five distance relations
    AdOne = 1u << 2,        // AD = 1 iff TBR = 1
    Trees = 1u << 3,        // tree pairs: AD = TBR = MAF; tree vs network: AD = TBR
    Displaying = 1u << 4,   // b displays a: AD = TBR = tier gap
    EadReplug = 1u << 5,    // meag_search = replug distance
    Sequence = 1u << 6,     // mag_to_tbr_sequence replays within 2 AD
    Fixtures = 1u << 7,     // bundled fixture pairs
    Stability = 1u << 8,    // BFS distances unchanged at slack + 1
};
constexpr std::uint32_t kAllClaims = (1u << 9) - 1;

const char* claim_name(Claim c);
// Parses a comma separated list of claim names ("all" for every claim).
// Throws std::invalid_argument on an unknown name.
std::uint32_t parse_claims(const std::string& list);

struct ClaimCount {
    Claim claim;
    std::size_t pass = 0;
    std::size_t fail = 0;
};

struct Counterexample {
    Claim claim;
    std::string detail;                // computed values
    std::vector<std::string> networks; // serialized
};

struct VerificationReport {
    std::vector<ClaimCount> counts;
    std::vector<Counterexample> failures;
    std::size_t networks = 0;
    std::size_t pairs = 0;
    std::size_t unstable = 0;
    // Distinct pairs with AD = TBR and with AD < TBR.
    std::size_t ad_equals_tbr = 0;
    std::size_t ad_below_tbr = 0;
    std::size_t budget_exhausted = 0;
    double seconds = 0;

    bool ok() const { return failures.empty() && budget_exhausted == 0; }
    // key=value lines, one per claim and one per counterexample. Runtimes
    // are left out so equal specs give equal text.
    std::string to_text() const;
};

// Checks the selected claims on every ordered pair (triangle inequality on
// every triple) of the corpus, plus the fixtures when Fixtures is selected.
VerificationReport verify_claims(const CorpusSpec& spec, std::uint32_t claims = kAllClaims);

}  // namespace unets
