#pragma once

#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "braidhom/homology.hpp"
#include "braidhom/surface.hpp"
#include "braidhom/wordalg.hpp"

namespace braidhom {

class LoopOutsideComplexError : public Error {
public:
    using Error::Error;
};

class DependentPunctureError : public Error {
public:
    using Error::Error;
};

class CollapseStalledError : public Error {
public:
    using Error::Error;
};

/// Graph left after collapsing all triangles of a punctured complex, plus
/// the table rewriting collapsed directed edges into surviving walks.
struct Spine {
    std::vector<int> treeParent;      // by sd vertex (-1 for root / absent)
    std::vector<Edge> edges;          // surviving sd edges
    std::vector<int> generatorEdges;  // sd edge indices of non-tree spine edges
    std::map<int, std::vector<int>> rewrite;  // sd edge idx -> expanded walk a..b (canonical a<b)
    int root = -1;

    int rank() const { return static_cast<int>(generatorEdges.size()); }
};

/// Full subcomplex of the subdivision avoiding a set of original vertices.
/// Coordinates split as (closed-surface block, winding block): the first 2g
/// entries agree with the closed-surface coordinates of the loop, entry
/// 2g + i is the winding number around the i-th non-dependent puncture in
/// vertex order. The dependent puncture is the one with the highest id.
class PuncturedComplex {
public:
    PuncturedComplex(const SdSurface& sd, const HomologyBasis& closedBasis,
                     std::vector<VertexId> punctures);

    const SdSurface& sd() const { return *sd_; }
    const HomologyBasis& closedBasis() const { return *closedBasis_; }

    const std::vector<VertexId>& punctures() const { return punctures_; }
    bool hasPunctures() const { return !punctures_.empty(); }
    VertexId dependentPuncture() const;
    /// Punctures carrying a winding coordinate (all but the dependent one).
    const std::vector<VertexId>& coordinatePunctures() const { return coordinatePunctures_; }

    int rank() const;
    int genus() const { return sd_->base().genus(); }

    bool containsSdVertex(int v) const { return !removedVertex_[v]; }
    bool containsSdEdge(int u, int v) const;
    bool containsWalk(const std::vector<int>& walk) const;

    /// Closed walk once around the puncture, oriented as the boundary of its
    /// star; coordinates are e_{2g+i} by construction.
    const std::vector<int>& linkWalk(VertexId puncture) const;

    std::vector<Coord> coordinates(const std::vector<int>& closedWalk) const;
    Coord windingNumber(const std::vector<int>& closedWalk, VertexId target) const;

    /// Representative closed walk of a basis class (coordinates e_i).
    std::vector<int> basisRepresentative(int i) const;

    // Spine machinery; requires punctures.
    const Spine& spine() const;
    int spineRank() const;
    FreeWord loopNormalForm(const std::vector<int>& closedWalk) const;
    /// Closed walk realizing spine generator j, based at the spine tree root.
    std::vector<int> spineGeneratorWalk(int j) const;

    /// Deterministic walk between two pc vertices inside the complex.
    std::vector<int> connectingWalk(int fromSdVertex, int toSdVertex) const;

private:
    void buildChainData();
    void buildSpine();
    std::vector<Coord> windingBlock(const Chain1& z) const;
    std::vector<int> spineWalkOf(const std::vector<int>& walk) const;

    const SdSurface* sd_;
    const HomologyBasis* closedBasis_;
    std::vector<VertexId> punctures_;            // sorted
    std::vector<VertexId> coordinatePunctures_;  // sorted, dependent removed

    std::vector<bool> removedVertex_;  // by sd vertex
    std::vector<bool> removedEdge_;    // by sd edge index
    std::vector<bool> removedTri_;     // by sd triangle index
    std::vector<int> pcTriangles_;

    // Hole-augmented dual tree; nodes are pc triangles then one hole per
    // puncture. Root is the dependent puncture's hole.
    std::vector<int> dualOrder_;       // node ids, root first
    std::vector<int> dualParent_;      // by node id
    std::vector<int> dualParentEdge_;  // sd edge index linking to the parent
    std::vector<int> holeOfPuncture_;  // puncture order -> node id
    std::map<int, std::pair<int, int>> boundaryEdgeHole_;  // sd edge -> (pc tri, hole node)
    std::map<VertexId, Chain1> linkChain_;
    std::map<VertexId, std::vector<int>> linkWalk_;
    std::vector<char> edgeRole_;  // 0 tree, 1 cotree, 2 X, 3 removed

    std::optional<Spine> spine_;
};

/// Builds the subcomplex of all sd simplices avoiding the punctures; errors
/// when the punctures cover every original vertex.
PuncturedComplex puncturedComplex(const SdSurface& sd, const HomologyBasis& closedBasis,
                                  std::vector<VertexId> punctures);

/// The punctured complex as a plain 2-complex (for boundary matrices).
Complex2 complexOf(const PuncturedComplex& pc);

/// Signed chain of the puncture's link cycle on the sd edge index space.
Chain1 linkChainOf(const PuncturedComplex& pc, VertexId puncture);

}  // namespace braidhom
