#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "unets/canonical.hpp"
#include "unets/phylo.hpp"
#include "unets/rearrange.hpp"

namespace unets {

enum class Operation { TBR, PR, Replug };

const char* operation_name(Operation op);

struct SearchConfig {
    Operation op = Operation::TBR;
    // Explicit tier window; when unset the window is
    // [min tier, max tier + slack].
    std::optional<long> tier_lo;
    std::optional<long> tier_hi;
    long slack = 1;
    std::size_t node_budget = 4'000'000;
    bool bidirectional = true;
};

struct DistanceResult {
    std::size_t distance = 0;
    RearrangementSequence witness;
    std::size_t explored = 0;
    long window_lo = 0;
    long window_hi = 0;
};

class SearchError : public std::runtime_error {
public:
    enum class Kind { Argument, Budget, Unreachable };
    SearchError(Kind k, const std::string& what) : std::runtime_error(what), kind_(k) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Shortest TBR or PR sequence (cfg.op) using only networks inside the tier
// window. Throws SearchError on budget exhaustion or when b is not reachable
// inside the window.
DistanceResult bfs_distance(const PhyloNetwork& a, const PhyloNetwork& b, const SearchConfig& cfg = {});

// Shortest replug sequence; intermediates range over replug networks whose
// |E| - |V| + 1 lies in the window. cfg.op is ignored.
DistanceResult replug_distance(const PhyloNetwork& a, const PhyloNetwork& b, const SearchConfig& cfg = {});

// Dispatches on cfg.op.
DistanceResult distance(const PhyloNetwork& a, const PhyloNetwork& b, const SearchConfig& cfg);

struct StabilityReport {
    DistanceResult result;  // at cfg.slack
    std::size_t wider = 0;  // at cfg.slack + 1
    bool stable = true;
    // True when `wider` follows without a second search: any sequence
    // through the extra tier is at least as long as `result`.
    bool by_bound = false;
};

// Runs the query at slack s and s + 1 (cfg must not fix the window).
StabilityReport window_stability(const PhyloNetwork& a, const PhyloNetwork& b, const SearchConfig& cfg = {});

// All proper networks with n leaves in the given tier, up to isomorphism,
// sorted by code.
std::vector<CanonicalCode> enumerate_tier(std::size_t n, std::size_t tier, std::size_t node_budget = 4'000'000);

}  // namespace unets
