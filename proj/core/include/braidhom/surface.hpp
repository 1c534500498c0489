#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace braidhom {

using VertexId = int;

/// Base error type for the whole library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidSurfaceError : public Error {
public:
    using Error::Error;
};

/// Directed edge between two vertices of the base triangulation.
struct DirectedEdge {
    VertexId from = -1;
    VertexId to = -1;

    DirectedEdge() = default;
    DirectedEdge(VertexId f, VertexId t) : from(f), to(t) {}

    DirectedEdge reversed() const { return {to, from}; }
    bool operator==(const DirectedEdge&) const = default;
    auto operator<=>(const DirectedEdge&) const = default;
};

/// Undirected edge, stored with a < b.
struct Edge {
    VertexId a = -1;
    VertexId b = -1;

    Edge() = default;
    Edge(VertexId u, VertexId v) : a(u < v ? u : v), b(u < v ? v : u) {}
    explicit Edge(const DirectedEdge& d) : Edge(d.from, d.to) {}

    bool operator==(const Edge&) const = default;
    auto operator<=>(const Edge&) const = default;
};

/// Oriented triangle; vertex order encodes the orientation.
struct Triangle {
    std::array<VertexId, 3> v{-1, -1, -1};

    bool operator==(const Triangle&) const = default;
};

/// A closed, oriented, simplicial surface. Construction only indexes the
/// data; structural guarantees come from validate().
class SimplicialSurface {
public:
    static SimplicialSurface fromData(std::string name, std::optional<int> genus,
                                      std::vector<std::string> vertexNames,
                                      std::vector<Triangle> triangles);

    const std::string& name() const { return name_; }
    std::optional<int> declaredGenus() const { return genus_; }

    /// Genus implied by the Euler characteristic; prefers the declared value.
    int genus() const;
    int eulerCharacteristic() const;

    int vertexCount() const { return static_cast<int>(vertexNames_.size()); }
    int edgeCount() const { return static_cast<int>(edges_.size()); }
    int triangleCount() const { return static_cast<int>(triangles_.size()); }

    const std::vector<std::string>& vertexNames() const { return vertexNames_; }
    const std::vector<Triangle>& triangles() const { return triangles_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool hasEdge(VertexId u, VertexId v) const;
    int edgeIndex(const Edge& e) const;  // -1 when absent

    /// Triangle indices incident to an edge (usually exactly two).
    const std::vector<int>& incidentTriangles(const Edge& e) const;

    /// Neighbour vertices, sorted by id.
    const std::vector<VertexId>& neighbors(VertexId v) const;

    std::optional<VertexId> vertexByName(const std::string& n) const;

    /// True if some triangle induces the directed edge (u, v).
    bool inducesDirection(int triangleIdx, const DirectedEdge& d) const;

    /// Returns a copy with triangle orientations flipped to a coherent
    /// assignment, or nullopt when none exists.
    std::optional<SimplicialSurface> orientedCoherently() const;

private:
    SimplicialSurface() = default;

    std::string name_;
    std::optional<int> genus_;
    std::vector<std::string> vertexNames_;
    std::vector<Triangle> triangles_;
    std::vector<Edge> edges_;
    std::map<Edge, int> edgeIndex_;
    std::vector<std::vector<int>> edgeTriangles_;   // by edge index
    std::vector<std::vector<VertexId>> adjacency_;  // by vertex id
};

/// One validator check with an optional human-readable witness on failure.
struct CheckResult {
    std::string check;
    bool passed = false;
    std::string witness;
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool ok() const;
    const CheckResult* find(const std::string& check) const;
    std::string summary() const;
};

/// Vertex count lower bound for triangulations of a genus-g surface
/// (applies for g != 2).
int heawoodLowerBound(int genus);

/// Builds the standard surface of the requested genus: g=0 boundary of the
/// 3-simplex, g=1 the 7-vertex torus, g>=2 an identified 4g-gon subdivided
/// twice. The result is coherently oriented and validates cleanly.
SimplicialSurface buildStandardSurface(int genus);

/// Runs every structural invariant and reports pass/fail with witnesses.
ValidationReport validateSurface(const SimplicialSurface& s);

/// Path of directed base edges, consecutive target = source.
struct EdgePath {
    std::vector<DirectedEdge> edges;
    bool degenerate = false;  // set for the empty u == v path

    static EdgePath fromEdges(std::vector<DirectedEdge> edges);
    static EdgePath fromVertices(const std::vector<VertexId>& vs);

    bool empty() const { return edges.empty(); }
    size_t length() const { return edges.size(); }
    bool isLoop() const;
    bool isSimple() const;

    VertexId source() const;
    VertexId target() const;

    /// Vertex sequence, length() + 1 entries (loops repeat the basepoint).
    std::vector<VertexId> vertices() const;

    EdgePath reversed() const;
};

using EdgeLoop = EdgePath;

/// Deterministic simple path between two vertices: BFS shortest, ties broken
/// by smallest vertex id. u == v yields the empty path flagged degenerate.
EdgePath findEdgePath(const SimplicialSurface& s, VertexId u, VertexId v);

/// Deterministic BFS spanning tree rooted at the smallest vertex id.
std::vector<Edge> spanningTree(const SimplicialSurface& s);

enum class SdKind : uint8_t { Original = 0, Midpoint = 1, Barycenter = 2 };

/// Barycentric subdivision of a validated surface. Vertices are named
/// deterministically: "v<i>", "e<i>:<j>" (i<j), "t<i>:<j>:<k>" (sorted).
class SdSurface {
public:
    explicit SdSurface(SimplicialSurface base);

    const SimplicialSurface& base() const { return base_; }

    int vertexCount() const { return static_cast<int>(names_.size()); }
    int edgeCount() const { return static_cast<int>(edges_.size()); }
    int triangleCount() const { return static_cast<int>(triangles_.size()); }

    SdKind kind(int sdVertex) const { return kinds_[sdVertex]; }
    const std::string& vertexName(int sdVertex) const { return names_[sdVertex]; }
    std::optional<int> vertexByName(const std::string& n) const;

    /// sd id of an original vertex (equal to its base id).
    int originalVertex(VertexId v) const { return v; }
    bool isOriginal(int sdVertex) const { return kinds_[sdVertex] == SdKind::Original; }
    /// Base vertex id of an Original sd vertex.
    VertexId baseVertex(int sdVertex) const;

    int midpoint(const Edge& e) const;
    int barycenter(int triangleIdx) const;

    const std::vector<Triangle>& sdTriangles() const { return triangles_; }
    const std::vector<Edge>& sdEdges() const { return edges_; }
    int sdEdgeIndex(int u, int v) const;  // -1 when absent
    bool hasSdEdge(int u, int v) const { return sdEdgeIndex(u, v) >= 0; }

    const std::vector<int>& sdNeighbors(int sdVertex) const;
    const std::vector<int>& sdEdgeTriangles(int sdEdgeIdx) const;

    /// Incident base triangle inducing the direction of d (t+), and the one
    /// inducing the reverse (t-).
    int plusTriangle(const DirectedEdge& d) const;
    int minusTriangle(const DirectedEdge& d) const;

    /// The six sd triangles refining a base triangle.
    const std::array<int, 6>& refinement(int triangleIdx) const;

    /// Expands a directed base edge into its two-sd-edge path through the
    /// midpoint; used to view base paths as sd chains.
    std::array<int, 3> sdPathOfBaseEdge(const DirectedEdge& d) const;

private:
    SimplicialSurface base_;
    std::vector<std::string> names_;
    std::vector<SdKind> kinds_;
    std::map<std::string, int> byName_;
    std::vector<Triangle> triangles_;
    std::vector<Edge> edges_;
    std::map<Edge, int> edgeIndex_;
    std::vector<std::vector<int>> edgeTriangles_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<std::array<int, 6>> refinement_;
    std::vector<std::array<int, 2>> edgePlusMinus_;  // by base edge index: {t+, t-} for (a<b)
};

/// Barycentric subdivision; throws InvalidSurfaceError when the input does
/// not validate.
SdSurface subdivide(const SimplicialSurface& s);

}  // namespace braidhom
