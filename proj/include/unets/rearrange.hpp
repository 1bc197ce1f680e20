#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "unets/canonical.hpp"
#include "unets/multigraph.hpp"
#include "unets/phylo.hpp"

namespace unets {

enum class MoveKind : std::uint8_t { TBR0, TBRplus, TBRminus, PR0, ReplugH, ReplugPlus, ReplugMinus };

const char* kind_name(MoveKind k);

struct Attachment {
    enum class Kind : std::uint8_t { None, Edge, Singleton };
    Kind kind = Kind::None;
    std::uint32_t id = 0;

    static Attachment edge(EdgeId e) { return {Kind::Edge, e}; }
    static Attachment singleton(VertexId v) { return {Kind::Singleton, v}; }
    friend auto operator<=>(const Attachment&, const Attachment&) = default;
};

// One rearrangement step. `edge` is the moved/removed edge of the source;
// `at` is the pruned endpoint (kNoVertex when an internal edge is removed
// and re-added by TBR0). Attachment edge ids refer to the intermediate
// graph at the time of attaching: for two-sided attachments the second id
// is taken after the first subdivision.
struct Move {
    MoveKind kind = MoveKind::TBR0;
    EdgeId edge = kNoEdge;
    VertexId at = kNoVertex;
    Attachment first;
    Attachment second;

    friend auto operator<=>(const Move&, const Move&) = default;
    std::string describe() const;
};

class KindSet {
public:
    KindSet() = default;
    KindSet(std::initializer_list<MoveKind> ks) {
        for (MoveKind k : ks) add(k);
    }
    void add(MoveKind k) { bits_ |= bit(k); }
    void remove(MoveKind k) { bits_ &= static_cast<std::uint8_t>(~bit(k)); }
    bool has(MoveKind k) const { return bits_ & bit(k); }
    bool empty() const { return bits_ == 0; }

    static KindSet tbr() { return {MoveKind::TBR0, MoveKind::TBRplus, MoveKind::TBRminus}; }
    static KindSet pr() { return {MoveKind::PR0, MoveKind::TBRplus, MoveKind::TBRminus}; }
    static KindSet replug() { return {MoveKind::ReplugH, MoveKind::ReplugPlus, MoveKind::ReplugMinus}; }

private:
    static std::uint8_t bit(MoveKind k) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(k)); }
    std::uint8_t bits_ = 0;
};

class MoveError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Neighbor {
    Move move;
    MultiGraph graph;
    CanonicalCode code;
};

// Deduplicated by canonical code, each keeping its least Move; the source
// itself is never included. Ordered by that Move.
std::vector<Neighbor> tbr_neighbors(const PhyloNetwork& n, KindSet kinds = KindSet::tbr());
// kinds may contain PR0, TBRplus (= PR+) and TBRminus (= PR-).
std::vector<Neighbor> pr_neighbors(const PhyloNetwork& n, KindSet kinds = KindSet::pr());
std::vector<Neighbor> replug_neighbors(const ReplugNetwork& m, KindSet kinds = KindSet::replug());

// Structural replay; throws MoveError if the move does not apply.
MultiGraph apply(const Move& m, const MultiGraph& src);
PhyloNetwork apply(const Move& m, const PhyloNetwork& src);
ReplugNetwork apply(const Move& m, const ReplugNetwork& src);

struct RearrangementSequence {
    MultiGraph start;
    MultiGraph end;
    std::vector<Move> moves;
    bool replug = false;

    std::size_t length() const { return moves.size(); }
    // Replays every move, validating each intermediate as a network (or
    // replug network), and returns all graphs including start and end.
    // Throws MoveError on failure or if the last graph is not isomorphic to
    // `end`.
    std::vector<MultiGraph> replay() const;
};

}  // namespace unets
