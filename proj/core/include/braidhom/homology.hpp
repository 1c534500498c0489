#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <vector>

#include "braidhom/surface.hpp"

namespace braidhom {

using BigInt = boost::multiprecision::cpp_int;
using IMatrix = std::vector<std::vector<BigInt>>;

using Coord = long long;
/// Integer 1-chain indexed by sd-edge index.
using Chain1 = std::vector<Coord>;

class NotACycleError : public Error {
public:
    using Error::Error;
};

int rowCount(const IMatrix& m);
int colCount(const IMatrix& m);
IMatrix identityMatrix(int n);
IMatrix multiply(const IMatrix& a, const IMatrix& b);
BigInt determinant(IMatrix m);  // fraction-free elimination

/// Exact inverse of an integer matrix with determinant +-1.
std::vector<std::vector<Coord>> unimodularInverse(const std::vector<std::vector<Coord>>& m);

struct SnfResult {
    IMatrix u;  // rows transform
    IMatrix d;  // diagonal, divisibility chain
    IMatrix v;  // columns transform
};

/// U * A * V = D with U, V unimodular and d_i | d_{i+1}.
SnfResult smithNormalForm(IMatrix a);

/// Generic oriented 2-complex view; vertex ids may be sparse.
struct Complex2 {
    std::vector<int> vertices;  // sorted
    std::vector<Edge> edges;    // sorted canonical pairs
    std::vector<Triangle> triangles;
};

Complex2 complexOf(const SimplicialSurface& s);
Complex2 complexOf(const SdSurface& sd);

struct ChainComplex {
    IMatrix d1;  // vertices x edges
    IMatrix d2;  // edges x triangles
    std::vector<int> vertexIds;
    std::vector<Edge> edges;
    std::vector<Triangle> triangles;
};

/// Boundary matrices with d1 * d2 = 0.
ChainComplex boundaryMatrices(const Complex2& c);

/// +1 / -1 when the oriented triangle induces (a->b) / (b->a), 0 when the
/// edge is not a face of the triangle.
int inducedSign(const Triangle& t, const Edge& e);

/// Signed sd-edge chain of a walk (sequence of sd vertices).
Chain1 chainFromWalk(const SdSurface& sd, const std::vector<int>& walk);
bool isCycle(const SdSurface& sd, const Chain1& z);

/// Integral H1 of the closed subdivision surface via a tree-cotree pair.
/// Basis classes are realized by simple base-edge loops whenever a selection
/// of spanning-tree fundamental cycles with unimodular coordinates exists.
class HomologyBasis {
public:
    explicit HomologyBasis(const SdSurface& sd);

    const SdSurface& surface() const { return *sd_; }
    int rank() const { return static_cast<int>(xEdges_.size()); }

    /// Simple base loop representing basis class i (coordinates = e_i), or
    /// nullopt when the builder had to fall back to chain combinations.
    const std::vector<std::optional<EdgeLoop>>& basisLoops() const { return basisLoops_; }
    const std::vector<Chain1>& basisChains() const { return basisChains_; }

    std::vector<Coord> coordinates(const Chain1& cycle) const;
    std::vector<Coord> coordinatesOfWalk(const std::vector<int>& closedWalk) const;
    std::vector<Coord> coordinatesOfBaseLoop(const EdgeLoop& loop) const;

    Chain1 chainOfBasePath(const EdgePath& path) const;

private:
    std::vector<Coord> rawCoordinates(const Chain1& cycle) const;

    const SdSurface* sd_;
    // Primal tree / cotree / X partition of the sd edges.
    std::vector<char> edgeRole_;  // 0 tree, 1 cotree, 2 X
    std::vector<int> xEdges_;
    std::vector<int> xEdgePos_;  // sd edge index -> position in xEdges_, else -1
    // Dual tree over triangles: parent triangle and connecting cotree edge.
    std::vector<int> dualOrder_;
    std::vector<int> dualParent_;
    std::vector<int> dualParentEdge_;
    // Change of basis from the raw X-coordinates to the published basis.
    std::vector<std::vector<Coord>> normalizer_;  // rank x rank
    std::vector<std::optional<EdgeLoop>> basisLoops_;
    std::vector<Chain1> basisChains_;
};

struct SimpleLoopQuery {
    std::vector<Coord> targetClass;
    std::optional<VertexId> through;  // base vertex the loop must visit
    long long budget = 2'000'000;     // DFS node budget
};

struct SimpleLoopResult {
    std::optional<EdgeLoop> loop;
    bool exhausted = false;  // budget ran out before the search space did
};

/// Bounded deterministic DFS over simple base-edge loops matching a homology
/// class. Never returns a non-simple loop; reports exhaustion instead.
SimpleLoopResult findSimpleLoopInClass(const HomologyBasis& basis, const SimpleLoopQuery& query);

}  // namespace braidhom
