#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "unets/canonical.hpp"
#include "unets/multigraph.hpp"

namespace unets {

enum class NetworkClause { Connectivity, Degree, Labelling, Properness };

const char* clause_name(NetworkClause c);

class NetworkError : public std::runtime_error {
public:
    NetworkError(NetworkClause clause, const std::string& what, std::optional<EdgeId> witness = std::nullopt)
        : std::runtime_error(what), clause_(clause), witness_(witness) {}
    NetworkClause clause() const { return clause_; }
    std::optional<EdgeId> witness() const { return witness_; }

private:
    NetworkClause clause_;
    std::optional<EdgeId> witness_;
};

// Proper unrooted binary phylogenetic network. Only validate_network and
// trusted internal code construct one.
class PhyloNetwork {
public:
    const MultiGraph& graph() const { return graph_; }
    std::size_t leaf_count() const { return leaves_; }
    std::size_t tier() const { return tier_; }

private:
    PhyloNetwork(MultiGraph g, std::size_t leaves, std::size_t tier)
        : graph_(std::move(g)), leaves_(leaves), tier_(tier) {}

    MultiGraph graph_;
    std::size_t leaves_;
    std::size_t tier_;

    friend PhyloNetwork validate_network(const MultiGraph& g);
    friend PhyloNetwork detail_trust(MultiGraph g, std::size_t leaves);
};

// Leaves and labelled singletons carry 1..n, every unlabelled vertex has
// degree 3. Components, loops and improperness are allowed.
class ReplugNetwork {
public:
    const MultiGraph& graph() const { return graph_; }
    std::size_t leaf_count() const { return leaves_; }
    // |E| - |V| + 1; preserved by horizontal replugs, may be negative.
    long tier() const;

    static ReplugNetwork from(const PhyloNetwork& n) { return ReplugNetwork(n.graph(), n.leaf_count()); }

private:
    ReplugNetwork(MultiGraph g, std::size_t leaves) : graph_(std::move(g)), leaves_(leaves) {}
    MultiGraph graph_;
    std::size_t leaves_;
    friend ReplugNetwork validate_replug(const MultiGraph& g);
    friend ReplugNetwork detail_trust_replug(MultiGraph g, std::size_t leaves);
};

// Wrap graphs already known to satisfy the invariants (for example results
// of detail::valid_network). Not validated.
PhyloNetwork detail_trust(MultiGraph g, std::size_t leaves);
ReplugNetwork detail_trust_replug(MultiGraph g, std::size_t leaves);

PhyloNetwork validate_network(const MultiGraph& g);
ReplugNetwork validate_replug(const MultiGraph& g);

std::size_t tier(const PhyloNetwork& n);
std::size_t cyclomatic_number(const MultiGraph& g);

struct ProperResult {
    bool proper;
    std::optional<EdgeId> witness;
};

// Requires a connected graph.
ProperResult is_proper(const MultiGraph& g);
std::vector<EdgeId> cut_edges(const MultiGraph& g);

bool is_tree(const PhyloNetwork& n);

// True iff a subdivision of pattern is a subgraph of host.
bool displays(const PhyloNetwork& host, const PhyloNetwork& pattern);

namespace detail {
// Fast yes/no checks used on search hot paths (n = expected leaf count).
bool valid_network(const MultiGraph& g, std::size_t n);
bool valid_replug(const MultiGraph& g, std::size_t n);
}  // namespace detail

}  // namespace unets
