#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "unets/multigraph.hpp"
#include "unets/phylo.hpp"
#include "unets/rearrange.hpp"
#include "unets/search.hpp"

namespace unets {

class AgreementError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// MAG: subgraphs carry no sprouts, disagreement edges are counted by
// disagreement_count. MEAG: subgraphs may carry sprouts and
// disagreement_count is the tier gap.
enum class AgreementMode { MAG, MEAG };

struct AgreementGraph {
    AgreementMode mode = AgreementMode::MAG;
    std::vector<MultiGraph> subgraphs;
    std::size_t disagreement_count = 0;

    // Sprouts of the subgraphs (the s of a MEAG).
    std::size_t sprouts() const;
    // Disjoint union of the subgraphs (vertex ids compacted, subgraphs in
    // order) followed by `disagreement` single edges on two sprouts.
    MultiGraph assemble(std::size_t disagreement) const;
};

// Maps a pattern graph (an assembled agreement graph) into a host network.
// Every pattern edge goes to a trail of host edges running from the image
// of ends(e).u to the image of ends(e).v.
struct AgreementEmbedding {
    MultiGraph pattern;
    // Pattern edges that are disagreement edges, in order E_1, E_2, ...
    std::vector<EdgeId> disagreement;
    std::vector<VertexId> vertex_image;
    std::vector<std::vector<EdgeId>> edge_image;

    std::size_t subgraph_count() const;
};

// Empty when e is an agreement embedding into host (edge-disjoint trails
// covering every host edge, labels matched, at most a sprout and a labelled
// singleton sharing a host vertex, every sprout attached). In MAG mode the
// non-disagreement part must be sprout-free.
std::optional<std::string> embedding_defect(const AgreementEmbedding& e, const MultiGraph& host, AgreementMode mode);

// Empty when the embedding is ordered. MAG: E_1 joins two distinct
// subgraphs, E_2..E_{m-1} each merge two components of the covered part,
// later edges attach only to subgraphs or earlier disagreement edges.
// MEAG: no subgraph sprout is attached to a disagreement edge and E_j is
// attached to E_i only when i <= j.
std::optional<std::string> ordered_defect(const AgreementEmbedding& e, const MultiGraph& host, AgreementMode mode);

// Backtracking search for an embedding of g plus `allowed_disagreement`
// disagreement edges into host. Throws AgreementError when the labels of g
// and host differ.
std::optional<AgreementEmbedding> check_agreement_embedding(const AgreementGraph& g, const PhyloNetwork& host,
                                                            std::size_t allowed_disagreement);

// Keeps the subgraph images and re-routes the disagreement edges so that
// the result is ordered (MAG mode). Throws AgreementError on an invalid
// input embedding.
AgreementEmbedding ordered_embedding(const AgreementEmbedding& e, const MultiGraph& host);

// u_sprout must be attached to the edge at v_sprout. The edge at u_sprout
// takes over the part of that edge's trail from v_sprout's image up to
// u_sprout's image; the sprouts swap images.
AgreementEmbedding embedding_change(const AgreementEmbedding& e, const MultiGraph& host, VertexId u_sprout,
                                    VertexId v_sprout);

struct AgreementResult {
    std::size_t distance = 0;
    AgreementGraph graph;
    // Ordered embeddings; the one into the lower-tier network leaves out
    // the last (tier gap) disagreement edges.
    AgreementEmbedding into_a;
    AgreementEmbedding into_b;
};

struct AgreementOptions {
    std::size_t node_budget = 2'000'000;
    // Re-certify the result with check_agreement_embedding.
    bool certify = true;
};

AgreementResult agreement_distance(const PhyloNetwork& a, const PhyloNetwork& b, const AgreementOptions& opt = {});

// Replug distance with the window-stability report (cfg.op is ignored).
StabilityReport endpoint_agreement_distance(const PhyloNetwork& a, const PhyloNetwork& b, const SearchConfig& cfg = {});

struct EndpointResult {
    std::size_t distance = 0;  // s + l
    AgreementGraph graph;
    AgreementEmbedding into_a;
    AgreementEmbedding into_b;
};

EndpointResult meag_search(const PhyloNetwork& a, const PhyloNetwork& b, std::size_t node_budget = 2'000'000,
                           bool certify = true);

struct MafResult {
    std::size_t distance = 0;
    MultiGraph forest;
};

// Maximum agreement forest of two trees by edge-deletion subsets.
MafResult maf_distance(const PhyloNetwork& t1, const PhyloNetwork& t2);

// TBR+ moves adding b's disagreement paths to a, then TBR- moves removing
// a's. Length at most 2 * mag.distance; every intermediate is a network.
RearrangementSequence mag_to_tbr_sequence(const PhyloNetwork& a, const PhyloNetwork& b, const AgreementResult& mag);

namespace detail {
// Smallest k reached by removal sequences (k - l from the lower network,
// k from the other) meeting in a common graph. With self_attached the
// removal of an edge that leaves a bare loop also deletes that loop.
std::size_t removal_meet(const PhyloNetwork& a, const PhyloNetwork& b, bool self_attached,
                         std::size_t node_budget = 2'000'000);
}  // namespace detail

}  // namespace unets
