#include "braidhom/surface.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace braidhom {

namespace {

std::string fmtTriangle(const Triangle& t) {
    std::ostringstream os;
    os << "(" << t.v[0] << "," << t.v[1] << "," << t.v[2] << ")";
    return os.str();
}

std::string fmtEdge(const Edge& e) {
    std::ostringstream os;
    os << "{" << e.a << "," << e.b << "}";
    return os.str();
}

}  // namespace

SimplicialSurface SimplicialSurface::fromData(std::string name, std::optional<int> genus,
                                              std::vector<std::string> vertexNames,
                                              std::vector<Triangle> triangles) {
    SimplicialSurface s;
    s.name_ = std::move(name);
    s.genus_ = genus;
    s.vertexNames_ = std::move(vertexNames);
    s.triangles_ = std::move(triangles);

    const int nv = static_cast<int>(s.vertexNames_.size());
    for (const Triangle& t : s.triangles_) {
        for (VertexId v : t.v) {
            if (v < 0 || v >= nv) {
                throw InvalidSurfaceError("triangle references vertex out of range: " + fmtTriangle(t));
            }
        }
    }

    std::set<Edge> edgeSet;
    for (const Triangle& t : s.triangles_) {
        for (int i = 0; i < 3; ++i) {
            VertexId a = t.v[i], b = t.v[(i + 1) % 3];
            if (a != b) edgeSet.insert(Edge(a, b));
        }
    }
    s.edges_.assign(edgeSet.begin(), edgeSet.end());
    for (int i = 0; i < static_cast<int>(s.edges_.size()); ++i) s.edgeIndex_[s.edges_[i]] = i;

    s.edgeTriangles_.assign(s.edges_.size(), {});
    for (int ti = 0; ti < static_cast<int>(s.triangles_.size()); ++ti) {
        const Triangle& t = s.triangles_[ti];
        std::set<Edge> seen;
        for (int i = 0; i < 3; ++i) {
            VertexId a = t.v[i], b = t.v[(i + 1) % 3];
            if (a == b) continue;
            Edge e(a, b);
            if (seen.insert(e).second) s.edgeTriangles_[s.edgeIndex_.at(e)].push_back(ti);
        }
    }

    s.adjacency_.assign(nv, {});
    for (const Edge& e : s.edges_) {
        s.adjacency_[e.a].push_back(e.b);
        s.adjacency_[e.b].push_back(e.a);
    }
    for (auto& nb : s.adjacency_) std::sort(nb.begin(), nb.end());

    return s;
}

int SimplicialSurface::eulerCharacteristic() const {
    return vertexCount() - edgeCount() + triangleCount();
}

int SimplicialSurface::genus() const {
    if (genus_) return *genus_;
    return (2 - eulerCharacteristic()) / 2;
}

bool SimplicialSurface::hasEdge(VertexId u, VertexId v) const {
    return edgeIndex_.count(Edge(u, v)) > 0;
}

int SimplicialSurface::edgeIndex(const Edge& e) const {
    auto it = edgeIndex_.find(e);
    return it == edgeIndex_.end() ? -1 : it->second;
}

const std::vector<int>& SimplicialSurface::incidentTriangles(const Edge& e) const {
    static const std::vector<int> kEmpty;
    int idx = edgeIndex(e);
    return idx < 0 ? kEmpty : edgeTriangles_[idx];
}

const std::vector<VertexId>& SimplicialSurface::neighbors(VertexId v) const {
    return adjacency_.at(v);
}

std::optional<VertexId> SimplicialSurface::vertexByName(const std::string& n) const {
    for (int i = 0; i < vertexCount(); ++i) {
        if (vertexNames_[i] == n) return i;
    }
    return std::nullopt;
}

bool SimplicialSurface::inducesDirection(int triangleIdx, const DirectedEdge& d) const {
    const Triangle& t = triangles_.at(triangleIdx);
    for (int i = 0; i < 3; ++i) {
        if (t.v[i] == d.from && t.v[(i + 1) % 3] == d.to) return true;
    }
    return false;
}

std::optional<SimplicialSurface> SimplicialSurface::orientedCoherently() const {
    const int nf = triangleCount();
    std::vector<int> flip(nf, -1);  // -1 unvisited, else 0/1

    for (int start = 0; start < nf; ++start) {
        if (flip[start] != -1) continue;
        flip[start] = 0;
        std::deque<int> queue{start};
        while (!queue.empty()) {
            int ti = queue.front();
            queue.pop_front();
            const Triangle& t = triangles_[ti];
            for (int i = 0; i < 3; ++i) {
                Edge e(t.v[i], t.v[(i + 1) % 3]);
                const auto& inc = incidentTriangles(e);
                if (inc.size() != 2) continue;
                int other = inc[0] == ti ? inc[1] : inc[0];
                DirectedEdge mine{t.v[i], t.v[(i + 1) % 3]};
                // Same direction induced on a shared edge means exactly one
                // of the pair must flip.
                bool sameDir = inducesDirection(other, mine);
                int want = sameDir ? 1 - flip[ti] : flip[ti];
                if (flip[other] == -1) {
                    flip[other] = want;
                    queue.push_back(other);
                } else if (flip[other] != want) {
                    return std::nullopt;
                }
            }
        }
    }

    SimplicialSurface out = *this;
    for (int ti = 0; ti < nf; ++ti) {
        if (flip[ti] == 1) std::swap(out.triangles_[ti].v[1], out.triangles_[ti].v[2]);
    }
    return out;
}

bool ValidationReport::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const CheckResult* ValidationReport::find(const std::string& check) const {
    for (const auto& c : checks) {
        if (c.check == check) return &c;
    }
    return nullptr;
}

std::string ValidationReport::summary() const {
    std::ostringstream os;
    for (const auto& c : checks) {
        os << (c.passed ? "pass" : "FAIL") << "  " << c.check;
        if (!c.passed && !c.witness.empty()) os << "  (" << c.witness << ")";
        os << "\n";
    }
    return os.str();
}

int heawoodLowerBound(int genus) {
    const long long d = 1 + 48LL * genus;
    int n = 0;
    while (2LL * n - 7 < 0 || (2LL * n - 7) * (2LL * n - 7) < d) ++n;
    return n;
}

namespace {

ValidationReport runValidation(const SimplicialSurface& s) {
    ValidationReport report;
    auto add = [&](std::string check, bool passed, std::string witness = "") {
        report.checks.push_back({std::move(check), passed, std::move(witness)});
    };

    // Simplicial: three distinct vertices, no repeated vertex set.
    {
        bool ok = true;
        std::string witness;
        std::set<std::array<VertexId, 3>> seen;
        for (int ti = 0; ti < s.triangleCount() && ok; ++ti) {
            const Triangle& t = s.triangles()[ti];
            if (t.v[0] == t.v[1] || t.v[1] == t.v[2] || t.v[0] == t.v[2]) {
                ok = false;
                witness = "triangle " + std::to_string(ti) + " has repeated vertices " + fmtTriangle(t);
                break;
            }
            std::array<VertexId, 3> key = t.v;
            std::sort(key.begin(), key.end());
            if (!seen.insert(key).second) {
                ok = false;
                witness = "duplicate triangle vertex set " + fmtTriangle(t);
            }
        }
        add("simplicial", ok, witness);
    }

    // Every edge in exactly two triangles.
    {
        bool ok = true;
        std::string witness;
        for (const Edge& e : s.edges()) {
            size_t n = s.incidentTriangles(e).size();
            if (n != 2) {
                ok = false;
                witness = "edge " + fmtEdge(e) + " in " + std::to_string(n) + " triangle(s)";
                break;
            }
        }
        add("edge_two_triangles", ok, witness);
    }

    // Link of every vertex is a single cycle.
    {
        bool ok = true;
        std::string witness;
        for (VertexId v = 0; v < s.vertexCount() && ok; ++v) {
            std::map<VertexId, std::vector<VertexId>> link;
            int linkEdges = 0;
            for (int ti = 0; ti < s.triangleCount(); ++ti) {
                const Triangle& t = s.triangles()[ti];
                if (t.v[0] != v && t.v[1] != v && t.v[2] != v) continue;
                std::vector<VertexId> rest;
                for (VertexId w : t.v) {
                    if (w != v) rest.push_back(w);
                }
                if (rest.size() != 2) continue;  // degenerate; simplicial check reports it
                link[rest[0]].push_back(rest[1]);
                link[rest[1]].push_back(rest[0]);
                ++linkEdges;
            }
            if (link.empty()) {
                ok = false;
                witness = "vertex " + std::to_string(v) + " has empty link";
                break;
            }
            for (const auto& [w, nbrs] : link) {
                if (nbrs.size() != 2) {
                    ok = false;
                    witness = "link of vertex " + std::to_string(v) + " is not a cycle at " + std::to_string(w);
                    break;
                }
            }
            if (!ok) break;
            if (linkEdges != static_cast<int>(link.size())) {
                ok = false;
                witness = "link of vertex " + std::to_string(v) + " is not a single cycle";
                break;
            }
            // Connectivity of the link.
            std::set<VertexId> visited;
            std::deque<VertexId> queue{link.begin()->first};
            visited.insert(link.begin()->first);
            while (!queue.empty()) {
                VertexId w = queue.front();
                queue.pop_front();
                for (VertexId u : link[w]) {
                    if (visited.insert(u).second) queue.push_back(u);
                }
            }
            if (visited.size() != link.size()) {
                ok = false;
                witness = "link of vertex " + std::to_string(v) + " is disconnected";
            }
        }
        add("vertex_links", ok, witness);
    }

    // Connectivity of the 1-skeleton.
    {
        bool ok = true;
        std::string witness;
        if (s.vertexCount() > 0) {
            std::vector<bool> visited(s.vertexCount(), false);
            std::deque<VertexId> queue{0};
            visited[0] = true;
            int count = 1;
            while (!queue.empty()) {
                VertexId v = queue.front();
                queue.pop_front();
                for (VertexId w : s.neighbors(v)) {
                    if (!visited[w]) {
                        visited[w] = true;
                        ++count;
                        queue.push_back(w);
                    }
                }
            }
            if (count != s.vertexCount()) {
                ok = false;
                witness = std::to_string(s.vertexCount() - count) + " vertices unreachable";
            }
        }
        add("connected", ok, witness);
    }

    // Euler characteristic against the (declared or inferred) genus.
    {
        bool ok = true;
        std::string witness;
        int chi = s.eulerCharacteristic();
        if (s.declaredGenus()) {
            int expected = 2 - 2 * (*s.declaredGenus());
            if (chi != expected) {
                ok = false;
                witness = "chi=" + std::to_string(chi) + " but genus " + std::to_string(*s.declaredGenus()) +
                          " needs " + std::to_string(expected);
            }
        } else if (chi > 2 || (chi % 2) != 0) {
            ok = false;
            witness = "chi=" + std::to_string(chi) + " is not 2-2g for any g>=0";
        }
        add("euler_characteristic", ok, witness);
    }

    // Orientability (a coherent assignment exists) and stored coherence.
    {
        auto repaired = s.orientedCoherently();
        add("orientable", repaired.has_value(), repaired ? "" : "no coherent orientation assignment exists");

        bool coherent = true;
        std::string witness;
        for (const Edge& e : s.edges()) {
            const auto& inc = s.incidentTriangles(e);
            if (inc.size() != 2) continue;
            DirectedEdge d{e.a, e.b};
            bool first = s.inducesDirection(inc[0], d);
            bool second = s.inducesDirection(inc[1], d);
            if (first == second) {
                coherent = false;
                witness = "edge " + fmtEdge(e) + " receives the same direction twice";
                break;
            }
        }
        add("orientation_coherent", coherent, witness);
    }

    // Heawood bound, skipped for genus 2.
    {
        bool ok = true;
        std::string witness;
        int g = s.genus();
        if (g != 2) {
            int bound = heawoodLowerBound(g);
            if (s.vertexCount() < bound) {
                ok = false;
                witness = "n=" + std::to_string(s.vertexCount()) + " < " + std::to_string(bound) +
                          " for genus " + std::to_string(g);
            }
        }
        add("heawood_bound", ok, witness);
    }

    return report;
}

std::vector<std::string> defaultNames(int n) {
    std::vector<std::string> names(n);
    for (int i = 0; i < n; ++i) names[i] = "v" + std::to_string(i);
    return names;
}

// Delta complex with identified simplices; carrier for the 4g-gon model.
struct DeltaTriangleUse {
    int edge = -1;
    bool forward = true;
};

struct DeltaTriangle {
    std::array<DeltaTriangleUse, 3> side;  // corners c0->c1->c2->c0
};

struct DeltaComplex {
    int vertexCount = 0;
    std::vector<std::pair<int, int>> edges;  // (tail, head)
    std::vector<DeltaTriangle> triangles;

    int tail(const DeltaTriangleUse& u) const { return u.forward ? edges[u.edge].first : edges[u.edge].second; }
    int head(const DeltaTriangleUse& u) const { return u.forward ? edges[u.edge].second : edges[u.edge].first; }
    int corner(const DeltaTriangle& t, int i) const { return tail(t.side[i]); }
};

DeltaComplex subdivideDelta(const DeltaComplex& in) {
    DeltaComplex out;
    const int nv = in.vertexCount;
    const int ne = static_cast<int>(in.edges.size());
    const int nf = static_cast<int>(in.triangles.size());
    out.vertexCount = nv + ne + nf;
    auto midpoint = [&](int e) { return nv + e; };
    auto center = [&](int t) { return nv + ne + t; };

    // Edge halves first: 2e = tail half, 2e+1 = head half.
    out.edges.reserve(2 * ne + 6 * nf);
    for (int e = 0; e < ne; ++e) {
        out.edges.emplace_back(in.edges[e].first, midpoint(e));
        out.edges.emplace_back(midpoint(e), in.edges[e].second);
    }
    // Then per-triangle spokes: midpoint->center and corner->center.
    std::vector<std::array<int, 3>> mb(nf), vb(nf);
    for (int t = 0; t < nf; ++t) {
        for (int j = 0; j < 3; ++j) {
            mb[t][j] = static_cast<int>(out.edges.size());
            out.edges.emplace_back(midpoint(in.triangles[t].side[j].edge), center(t));
        }
        for (int j = 0; j < 3; ++j) {
            vb[t][j] = static_cast<int>(out.edges.size());
            out.edges.emplace_back(in.corner(in.triangles[t], j), center(t));
        }
    }

    auto halfUse = [&](const DeltaTriangleUse& u, bool firstHalf) {
        // First half runs from the use's tail to the midpoint.
        DeltaTriangleUse r;
        if (u.forward) {
            r.edge = firstHalf ? 2 * u.edge : 2 * u.edge + 1;
            r.forward = true;
        } else {
            r.edge = firstHalf ? 2 * u.edge + 1 : 2 * u.edge;
            r.forward = false;
        }
        return r;
    };

    for (int t = 0; t < nf; ++t) {
        const DeltaTriangle& tri = in.triangles[t];
        for (int j = 0; j < 3; ++j) {
            int jn = (j + 1) % 3;
            // (corner_j, midpoint_j, center)
            DeltaTriangle a;
            a.side[0] = halfUse(tri.side[j], true);
            a.side[1] = {mb[t][j], true};
            a.side[2] = {vb[t][j], false};
            out.triangles.push_back(a);
            // (midpoint_j, corner_{j+1}, center)
            DeltaTriangle b;
            b.side[0] = halfUse(tri.side[j], false);
            b.side[1] = {vb[t][jn], true};
            b.side[2] = {mb[t][j], false};
            out.triangles.push_back(b);
        }
    }
    return out;
}

SimplicialSurface deltaToSimplicial(const DeltaComplex& d, std::string name, int genus) {
    std::vector<Triangle> tris;
    tris.reserve(d.triangles.size());
    for (const DeltaTriangle& t : d.triangles) {
        tris.push_back(Triangle{{d.corner(t, 0), d.corner(t, 1), d.corner(t, 2)}});
    }
    return SimplicialSurface::fromData(std::move(name), genus, defaultNames(d.vertexCount), std::move(tris));
}

// Fan-triangulated 4g-gon with the a1 b1 a1' b1' ... identification; all
// polygon corners collapse to a single vertex.
DeltaComplex fundamentalPolygon(int genus) {
    DeltaComplex d;
    d.vertexCount = 2;  // 0 = identified corner, 1 = polygon center
    const int sides = 4 * genus;

    // Side classes: a_k forward at 4k, reversed at 4k+2; b_k at 4k+1 / 4k+3.
    for (int k = 0; k < 2 * genus; ++k) d.edges.emplace_back(0, 0);
    std::vector<DeltaTriangleUse> sideUse(sides);
    for (int k = 0; k < genus; ++k) {
        sideUse[4 * k + 0] = {2 * k, true};
        sideUse[4 * k + 1] = {2 * k + 1, true};
        sideUse[4 * k + 2] = {2 * k, false};
        sideUse[4 * k + 3] = {2 * k + 1, false};
    }
    // Spokes center->corner_i.
    std::vector<int> spoke(sides);
    for (int i = 0; i < sides; ++i) {
        spoke[i] = static_cast<int>(d.edges.size());
        d.edges.emplace_back(1, 0);
    }
    for (int i = 0; i < sides; ++i) {
        DeltaTriangle t;
        t.side[0] = {spoke[i], true};                  // center -> corner_i
        t.side[1] = sideUse[i];                        // corner_i -> corner_{i+1}
        t.side[2] = {spoke[(i + 1) % sides], false};   // corner_{i+1} -> center
        d.triangles.push_back(t);
    }
    return d;
}

}  // namespace

ValidationReport validateSurface(const SimplicialSurface& s) { return runValidation(s); }

SimplicialSurface buildStandardSurface(int genus) {
    if (genus < 0) throw Error("genus must be non-negative");

    SimplicialSurface raw = [&] {
        if (genus == 0) {
            // Boundary of the 3-simplex, oriented outward.
            std::vector<Triangle> tris{
                Triangle{{1, 2, 3}}, Triangle{{0, 3, 2}}, Triangle{{0, 1, 3}}, Triangle{{0, 2, 1}}};
            return SimplicialSurface::fromData("sigma0", 0, defaultNames(4), std::move(tris));
        }
        if (genus == 1) {
            // 7-vertex torus on the complete graph K7.
            std::vector<Triangle> tris;
            for (int i = 0; i < 7; ++i) {
                tris.push_back(Triangle{{i, (i + 1) % 7, (i + 3) % 7}});
                tris.push_back(Triangle{{i, (i + 2) % 7, (i + 3) % 7}});
            }
            return SimplicialSurface::fromData("sigma1", 1, defaultNames(7), std::move(tris));
        }
        DeltaComplex d = fundamentalPolygon(genus);
        d = subdivideDelta(subdivideDelta(d));
        return deltaToSimplicial(d, "sigma" + std::to_string(genus), genus);
    }();

    auto oriented = raw.orientedCoherently();
    if (!oriented) throw InvalidSurfaceError("standard surface construction produced a non-orientable complex");

    ValidationReport report = validateSurface(*oriented);
    if (!report.ok()) {
        throw InvalidSurfaceError("standard surface of genus " + std::to_string(genus) +
                                  " failed validation:\n" + report.summary());
    }
    return *oriented;
}

EdgePath EdgePath::fromEdges(std::vector<DirectedEdge> edges) {
    for (size_t i = 0; i + 1 < edges.size(); ++i) {
        if (edges[i].to != edges[i + 1].from) throw Error("edge path is not a concatenation");
    }
    EdgePath p;
    p.edges = std::move(edges);
    return p;
}

EdgePath EdgePath::fromVertices(const std::vector<VertexId>& vs) {
    std::vector<DirectedEdge> edges;
    for (size_t i = 0; i + 1 < vs.size(); ++i) edges.emplace_back(vs[i], vs[i + 1]);
    return fromEdges(std::move(edges));
}

bool EdgePath::isLoop() const {
    return !edges.empty() && edges.front().from == edges.back().to;
}

bool EdgePath::isSimple() const {
    if (edges.empty()) return true;
    std::set<VertexId> seen;
    seen.insert(edges.front().from);
    for (size_t i = 0; i < edges.size(); ++i) {
        VertexId v = edges[i].to;
        if (i + 1 == edges.size() && v == edges.front().from) break;  // loop closure
        if (!seen.insert(v).second) return false;
    }
    return true;
}

VertexId EdgePath::source() const {
    if (edges.empty()) throw Error("empty edge path has no source");
    return edges.front().from;
}

VertexId EdgePath::target() const {
    if (edges.empty()) throw Error("empty edge path has no target");
    return edges.back().to;
}

std::vector<VertexId> EdgePath::vertices() const {
    std::vector<VertexId> vs;
    if (edges.empty()) return vs;
    vs.push_back(edges.front().from);
    for (const DirectedEdge& d : edges) vs.push_back(d.to);
    return vs;
}

EdgePath EdgePath::reversed() const {
    EdgePath p;
    p.degenerate = degenerate;
    p.edges.reserve(edges.size());
    for (auto it = edges.rbegin(); it != edges.rend(); ++it) p.edges.push_back(it->reversed());
    return p;
}

EdgePath findEdgePath(const SimplicialSurface& s, VertexId u, VertexId v) {
    if (u == v) {
        EdgePath p;
        p.degenerate = true;
        return p;
    }
    std::vector<int> parent(s.vertexCount(), -1);
    std::vector<bool> visited(s.vertexCount(), false);
    visited[u] = true;
    std::vector<VertexId> frontier{u};
    while (!visited[v] && !frontier.empty()) {
        std::vector<VertexId> next;
        for (VertexId w : frontier) {  // frontier kept sorted: smallest-id parent wins
            for (VertexId x : s.neighbors(w)) {
                if (!visited[x]) {
                    visited[x] = true;
                    parent[x] = w;
                    next.push_back(x);
                }
            }
        }
        std::sort(next.begin(), next.end());
        frontier = std::move(next);
    }
    if (!visited[v]) throw Error("vertices lie in different components");

    std::vector<VertexId> chain{v};
    while (chain.back() != u) chain.push_back(parent[chain.back()]);
    std::reverse(chain.begin(), chain.end());
    return EdgePath::fromVertices(chain);
}

std::vector<Edge> spanningTree(const SimplicialSurface& s) {
    std::vector<Edge> tree;
    if (s.vertexCount() == 0) return tree;
    std::vector<bool> visited(s.vertexCount(), false);
    visited[0] = true;
    std::vector<VertexId> frontier{0};
    while (!frontier.empty()) {
        std::vector<VertexId> next;
        for (VertexId w : frontier) {
            for (VertexId x : s.neighbors(w)) {
                if (!visited[x]) {
                    visited[x] = true;
                    tree.emplace_back(w, x);
                    next.push_back(x);
                }
            }
        }
        std::sort(next.begin(), next.end());
        frontier = std::move(next);
    }
    return tree;
}

SdSurface::SdSurface(SimplicialSurface base) : base_(std::move(base)) {
    const int nv = base_.vertexCount();
    const int ne = base_.edgeCount();
    const int nf = base_.triangleCount();

    names_.reserve(nv + ne + nf);
    kinds_.reserve(nv + ne + nf);
    for (int i = 0; i < nv; ++i) {
        names_.push_back("v" + std::to_string(i));
        kinds_.push_back(SdKind::Original);
    }
    for (int e = 0; e < ne; ++e) {
        const Edge& edge = base_.edges()[e];
        names_.push_back("e" + std::to_string(edge.a) + ":" + std::to_string(edge.b));
        kinds_.push_back(SdKind::Midpoint);
    }
    for (int t = 0; t < nf; ++t) {
        std::array<VertexId, 3> key = base_.triangles()[t].v;
        std::sort(key.begin(), key.end());
        names_.push_back("t" + std::to_string(key[0]) + ":" + std::to_string(key[1]) + ":" +
                         std::to_string(key[2]));
        kinds_.push_back(SdKind::Barycenter);
    }
    for (int i = 0; i < static_cast<int>(names_.size()); ++i) byName_[names_[i]] = i;

    auto mid = [&](VertexId a, VertexId b) { return nv + base_.edgeIndex(Edge(a, b)); };
    refinement_.resize(nf);
    triangles_.reserve(6 * nf);
    for (int t = 0; t < nf; ++t) {
        const auto& tv = base_.triangles()[t].v;
        int bt = nv + ne + t;
        int k = 0;
        for (int i = 0; i < 3; ++i) {
            VertexId a = tv[i], b = tv[(i + 1) % 3];
            int m = mid(a, b);
            refinement_[t][k++] = static_cast<int>(triangles_.size());
            triangles_.push_back(Triangle{{a, m, bt}});
            refinement_[t][k++] = static_cast<int>(triangles_.size());
            triangles_.push_back(Triangle{{m, b, bt}});
        }
    }

    std::set<Edge> edgeSet;
    for (const Triangle& t : triangles_) {
        for (int i = 0; i < 3; ++i) edgeSet.insert(Edge(t.v[i], t.v[(i + 1) % 3]));
    }
    edges_.assign(edgeSet.begin(), edgeSet.end());
    for (int i = 0; i < static_cast<int>(edges_.size()); ++i) edgeIndex_[edges_[i]] = i;

    edgeTriangles_.assign(edges_.size(), {});
    for (int ti = 0; ti < static_cast<int>(triangles_.size()); ++ti) {
        const Triangle& t = triangles_[ti];
        for (int i = 0; i < 3; ++i) {
            edgeTriangles_[edgeIndex_.at(Edge(t.v[i], t.v[(i + 1) % 3]))].push_back(ti);
        }
    }

    adjacency_.assign(names_.size(), {});
    for (const Edge& e : edges_) {
        adjacency_[e.a].push_back(e.b);
        adjacency_[e.b].push_back(e.a);
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());

    edgePlusMinus_.assign(ne, {-1, -1});
    for (int e = 0; e < ne; ++e) {
        const Edge& edge = base_.edges()[e];
        for (int ti : base_.incidentTriangles(edge)) {
            if (base_.inducesDirection(ti, DirectedEdge{edge.a, edge.b})) {
                edgePlusMinus_[e][0] = ti;
            } else {
                edgePlusMinus_[e][1] = ti;
            }
        }
    }
}

std::optional<int> SdSurface::vertexByName(const std::string& n) const {
    auto it = byName_.find(n);
    if (it == byName_.end()) return std::nullopt;
    return it->second;
}

VertexId SdSurface::baseVertex(int sdVertex) const {
    if (kinds_.at(sdVertex) != SdKind::Original) throw Error("sd vertex is not an original vertex");
    return sdVertex;
}

int SdSurface::midpoint(const Edge& e) const {
    int idx = base_.edgeIndex(e);
    if (idx < 0) throw Error("no such base edge");
    return base_.vertexCount() + idx;
}

int SdSurface::barycenter(int triangleIdx) const {
    return base_.vertexCount() + base_.edgeCount() + triangleIdx;
}

int SdSurface::sdEdgeIndex(int u, int v) const {
    auto it = edgeIndex_.find(Edge(u, v));
    return it == edgeIndex_.end() ? -1 : it->second;
}

const std::vector<int>& SdSurface::sdNeighbors(int sdVertex) const { return adjacency_.at(sdVertex); }

const std::vector<int>& SdSurface::sdEdgeTriangles(int sdEdgeIdx) const {
    return edgeTriangles_.at(sdEdgeIdx);
}

int SdSurface::plusTriangle(const DirectedEdge& d) const {
    int idx = base_.edgeIndex(Edge(d));
    if (idx < 0) throw Error("no such base edge");
    return d.from < d.to ? edgePlusMinus_[idx][0] : edgePlusMinus_[idx][1];
}

int SdSurface::minusTriangle(const DirectedEdge& d) const {
    int idx = base_.edgeIndex(Edge(d));
    if (idx < 0) throw Error("no such base edge");
    return d.from < d.to ? edgePlusMinus_[idx][1] : edgePlusMinus_[idx][0];
}

const std::array<int, 6>& SdSurface::refinement(int triangleIdx) const {
    return refinement_.at(triangleIdx);
}

std::array<int, 3> SdSurface::sdPathOfBaseEdge(const DirectedEdge& d) const {
    return {d.from, midpoint(Edge(d)), d.to};
}

SdSurface subdivide(const SimplicialSurface& s) {
    ValidationReport report = validateSurface(s);
    if (!report.ok()) {
        throw InvalidSurfaceError("cannot subdivide an invalid surface:\n" + report.summary());
    }
    return SdSurface(s);
}

}  // namespace braidhom
