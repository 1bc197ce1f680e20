#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "unets/multigraph.hpp"

namespace unets {

// Isomorphism-complete fingerprint of a leaf-labelled multigraph. Two graphs
// get equal codes iff a label-preserving isomorphism exists.
class CanonicalCode {
public:
    CanonicalCode() = default;
    explicit CanonicalCode(std::string bytes) : bytes_(std::move(bytes)) {}

    const std::string& bytes() const { return bytes_; }
    std::string hex() const;

    friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
    friend std::strong_ordering operator<=>(const CanonicalCode& a, const CanonicalCode& b) {
        return a.bytes_.compare(b.bytes_) <=> 0;
    }

private:
    std::string bytes_;
};

struct CodeHash {
    std::size_t operator()(const CanonicalCode& c) const noexcept;
};

struct CanonicalLabelling {
    CanonicalCode code;
    // order[p] is the vertex placed at canonical position p.
    std::vector<VertexId> order;
};

CanonicalCode canonical_form(const MultiGraph& g);
CanonicalLabelling canonical_labelling(const MultiGraph& g);

// Rebuilds a graph from its code: vertex ids are canonical positions and
// edges are added in code order.
MultiGraph decode(const CanonicalCode& code);

// Cheap isomorphism invariant (refinement only). Equal graphs give equal
// hashes; unequal hashes prove non-isomorphism.
std::uint64_t invariant_hash(const MultiGraph& g);

// Maps vertices of a onto vertices of b (indexed by a's vertex ids) when the
// graphs are isomorphic; empty otherwise.
std::vector<VertexId> isomorphism(const MultiGraph& a, const MultiGraph& b);

}  // namespace unets
