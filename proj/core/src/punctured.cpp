#include "braidhom/punctured.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace braidhom {

PuncturedComplex::PuncturedComplex(const SdSurface& sd, const HomologyBasis& closedBasis,
                                   std::vector<VertexId> punctures)
    : sd_(&sd), closedBasis_(&closedBasis), punctures_(std::move(punctures)) {
    std::sort(punctures_.begin(), punctures_.end());
    punctures_.erase(std::unique(punctures_.begin(), punctures_.end()), punctures_.end());
    for (VertexId p : punctures_) {
        if (p < 0 || p >= sd.base().vertexCount()) {
            throw Error("puncture " + std::to_string(p) + " is not an original vertex");
        }
    }
    if (static_cast<int>(punctures_.size()) == sd.base().vertexCount()) {
        throw Error("punctures cover every original vertex");
    }
    coordinatePunctures_ = punctures_;
    if (!coordinatePunctures_.empty()) coordinatePunctures_.pop_back();  // drop the dependent (max id)

    removedVertex_.assign(sd.vertexCount(), false);
    for (VertexId p : punctures_) removedVertex_[sd.originalVertex(p)] = true;

    removedTri_.assign(sd.triangleCount(), false);
    for (int t = 0; t < sd.triangleCount(); ++t) {
        for (VertexId v : sd.sdTriangles()[t].v) {
            if (removedVertex_[v]) removedTri_[t] = true;
        }
    }
    for (int t = 0; t < sd.triangleCount(); ++t) {
        if (!removedTri_[t]) pcTriangles_.push_back(t);
    }

    removedEdge_.assign(sd.edgeCount(), false);
    for (int e = 0; e < sd.edgeCount(); ++e) {
        const Edge& edge = sd.sdEdges()[e];
        if (removedVertex_[edge.a] || removedVertex_[edge.b]) removedEdge_[e] = true;
    }

    buildChainData();
    if (hasPunctures()) buildSpine();
}

VertexId PuncturedComplex::dependentPuncture() const {
    if (punctures_.empty()) throw Error("complex has no punctures");
    return punctures_.back();
}

int PuncturedComplex::rank() const {
    int g = genus();
    return punctures_.empty() ? 2 * g : 2 * g + static_cast<int>(punctures_.size()) - 1;
}

bool PuncturedComplex::containsSdEdge(int u, int v) const {
    int idx = sd_->sdEdgeIndex(u, v);
    return idx >= 0 && !removedEdge_[idx];
}

bool PuncturedComplex::containsWalk(const std::vector<int>& walk) const {
    for (int v : walk) {
        if (removedVertex_[v]) return false;
    }
    for (size_t i = 0; i + 1 < walk.size(); ++i) {
        if (!containsSdEdge(walk[i], walk[i + 1])) return false;
    }
    return true;
}

void PuncturedComplex::buildChainData() {
    const SdSurface& sd = *sd_;
    const int nf = sd.triangleCount();
    const int ne = sd.edgeCount();
    const int nv = sd.vertexCount();

    // Link chain of a puncture: boundary of its closed star.
    for (VertexId p : punctures_) {
        Chain1 chain(ne, 0);
        int sdP = sd.originalVertex(p);
        for (int t = 0; t < nf; ++t) {
            const Triangle& tri = sd.sdTriangles()[t];
            if (tri.v[0] != sdP && tri.v[1] != sdP && tri.v[2] != sdP) continue;
            for (int i = 0; i < 3; ++i) {
                Edge e(tri.v[i], tri.v[(i + 1) % 3]);
                chain[sd.sdEdgeIndex(e.a, e.b)] += inducedSign(tri, e);
            }
        }
        // Edges at the puncture cancel in pairs; only the link survives.
        for (int e = 0; e < ne; ++e) {
            if (chain[e] != 0 && removedEdge_[e]) throw Error("link chain leaked onto a removed edge");
        }
        linkChain_[p] = std::move(chain);
    }

    // Walk realization of each link cycle, starting at its smallest vertex.
    for (VertexId p : punctures_) {
        const Chain1& chain = linkChain_.at(p);
        std::map<int, int> succ;  // directed: from -> to
        for (int e = 0; e < ne; ++e) {
            if (chain[e] == 0) continue;
            const Edge& edge = sd.sdEdges()[e];
            if (chain[e] == 1) {
                succ[edge.a] = edge.b;
            } else if (chain[e] == -1) {
                succ[edge.b] = edge.a;
            } else {
                throw Error("link chain is not a simple cycle");
            }
        }
        if (succ.empty()) throw Error("puncture has an empty link");
        std::vector<int> walk{succ.begin()->first};
        do {
            walk.push_back(succ.at(walk.back()));
        } while (walk.back() != walk.front());
        if (walk.size() != succ.size() + 1) throw Error("puncture link is not a single cycle");
        linkWalk_[p] = std::move(walk);
    }

    // Primal spanning tree on the pc 1-skeleton.
    edgeRole_.assign(ne, 2);
    for (int e = 0; e < ne; ++e) {
        if (removedEdge_[e]) edgeRole_[e] = 3;
    }
    int pcVertexCount = 0;
    int rootVertex = -1;
    for (int v = 0; v < nv; ++v) {
        if (!removedVertex_[v]) {
            ++pcVertexCount;
            if (rootVertex < 0) rootVertex = v;
        }
    }
    {
        std::vector<bool> visited(nv, false);
        visited[rootVertex] = true;
        int reached = 1;
        std::vector<int> frontier{rootVertex};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int w : frontier) {
                for (int x : sd.sdNeighbors(w)) {
                    if (removedVertex_[x] || visited[x]) continue;
                    int ei = sd.sdEdgeIndex(w, x);
                    if (removedEdge_[ei]) continue;
                    visited[x] = true;
                    ++reached;
                    edgeRole_[ei] = 0;
                    next.push_back(x);
                }
            }
            std::sort(next.begin(), next.end());
            frontier = std::move(next);
        }
        if (reached != pcVertexCount) throw Error("punctured complex is disconnected");
    }

    // Dual faces per pc edge: alive triangles, or holes via the puncture of
    // each removed incident triangle.
    const int fp = static_cast<int>(pcTriangles_.size());
    std::vector<int> triNode(nf, -1);
    for (int i = 0; i < fp; ++i) triNode[pcTriangles_[i]] = i;
    holeOfPuncture_.assign(punctures_.size(), -1);
    for (size_t i = 0; i < punctures_.size(); ++i) holeOfPuncture_[i] = fp + static_cast<int>(i);
    auto punctureIndex = [&](VertexId p) {
        return static_cast<int>(std::lower_bound(punctures_.begin(), punctures_.end(), p) - punctures_.begin());
    };

    auto dualFaces = [&](int ei) {
        std::array<int, 2> faces{-1, -1};
        int k = 0;
        for (int t : sd.sdEdgeTriangles(ei)) {
            if (!removedTri_[t]) {
                faces[k++] = triNode[t];
            } else {
                VertexId p = -1;
                for (VertexId v : sd.sdTriangles()[t].v) {
                    if (removedVertex_[v]) p = v;
                }
                faces[k++] = holeOfPuncture_[punctureIndex(p)];
            }
        }
        if (k != 2) throw Error("pc edge without two dual faces");
        return faces;
    };

    const int nodeCount = fp + static_cast<int>(punctures_.size());
    dualParent_.assign(nodeCount, -1);
    dualParentEdge_.assign(nodeCount, -1);
    dualOrder_.clear();

    int rootNode = punctures_.empty() ? 0 : holeOfPuncture_[punctureIndex(dependentPuncture())];
    if (nodeCount > 0) {
        std::vector<bool> visited(nodeCount, false);
        visited[rootNode] = true;
        dualOrder_.push_back(rootNode);
        std::deque<int> queue{rootNode};
        // Collect incident pc edges per node once.
        std::vector<std::vector<int>> nodeEdges(nodeCount);
        for (int e = 0; e < ne; ++e) {
            if (removedEdge_[e] || edgeRole_[e] == 0) continue;
            auto faces = dualFaces(e);
            nodeEdges[faces[0]].push_back(e);
            nodeEdges[faces[1]].push_back(e);
        }
        while (!queue.empty()) {
            int node = queue.front();
            queue.pop_front();
            for (int e : nodeEdges[node]) {
                if (edgeRole_[e] != 2) continue;
                auto faces = dualFaces(e);
                int other = faces[0] == node ? faces[1] : faces[0];
                if (visited[other]) continue;
                visited[other] = true;
                edgeRole_[e] = 1;
                dualParent_[other] = node;
                dualParentEdge_[other] = e;
                dualOrder_.push_back(other);
                queue.push_back(other);
            }
        }
        if (static_cast<int>(dualOrder_.size()) != nodeCount) {
            throw Error("dual graph of the punctured complex is disconnected");
        }
    }

    int xCount = 0;
    for (int e = 0; e < ne; ++e) {
        if (edgeRole_[e] == 2) ++xCount;
    }
    if (xCount != 2 * genus()) {
        throw Error("punctured tree-cotree leftover " + std::to_string(xCount) + " != 2g");
    }

    for (int e = 0; e < ne; ++e) {
        if (edgeRole_[e] == 1) {
            auto faces = dualFaces(e);
            boundaryEdgeHole_[e] = {faces[0], faces[1]};
        }
    }
}

const std::vector<int>& PuncturedComplex::linkWalk(VertexId puncture) const {
    auto it = linkWalk_.find(puncture);
    if (it == linkWalk_.end()) throw Error("vertex " + std::to_string(puncture) + " is not a puncture");
    return it->second;
}

std::vector<Coord> PuncturedComplex::windingBlock(const Chain1& z) const {
    if (punctures_.empty()) return {};
    const SdSurface& sd = *sd_;
    const int fp = static_cast<int>(pcTriangles_.size());
    const int nodeCount = fp + static_cast<int>(punctures_.size());

    auto faceSign = [&](int node, int ei) -> int {
        const Edge& e = sd.sdEdges()[ei];
        if (node < fp) return inducedSign(sd.sdTriangles()[pcTriangles_[node]], e);
        VertexId p = punctures_[node - fp];
        return static_cast<int>(linkChain_.at(p)[ei]);
    };

    std::vector<Coord> m(nodeCount, 0);
    for (size_t i = 1; i < dualOrder_.size(); ++i) {
        int node = dualOrder_[i];
        int parent = dualParent_[node];
        int ei = dualParentEdge_[node];
        int sn = faceSign(node, ei);
        int sp = faceSign(parent, ei);
        if (sn == 0 || sp == 0) throw Error("dual edge with vanishing incidence sign");
        m[node] = sn * (z[ei] - m[parent] * sp);
    }

    std::vector<Coord> out;
    out.reserve(coordinatePunctures_.size());
    for (size_t i = 0; i + 1 < punctures_.size(); ++i) {
        out.push_back(m[fp + static_cast<int>(i)]);
    }
    return out;
}

std::vector<Coord> PuncturedComplex::coordinates(const std::vector<int>& closedWalk) const {
    if (closedWalk.size() >= 2 && closedWalk.front() != closedWalk.back()) {
        throw Error("walk is not closed");
    }
    if (!containsWalk(closedWalk)) {
        throw LoopOutsideComplexError("loop touches a puncture's star");
    }
    Chain1 z = chainFromWalk(*sd_, closedWalk);
    std::vector<Coord> out = closedBasis_->coordinates(z);
    std::vector<Coord> winding = windingBlock(z);
    out.insert(out.end(), winding.begin(), winding.end());
    return out;
}

Coord PuncturedComplex::windingNumber(const std::vector<int>& closedWalk, VertexId target) const {
    auto it = std::lower_bound(punctures_.begin(), punctures_.end(), target);
    if (it == punctures_.end() || *it != target) {
        throw Error("winding target " + std::to_string(target) + " is not a puncture");
    }
    if (target == dependentPuncture()) {
        throw DependentPunctureError(
            "winding around the dependent puncture is not a coordinate; re-puncture with a "
            "different dependent choice");
    }
    std::vector<Coord> c = coordinates(closedWalk);
    int pos = static_cast<int>(std::lower_bound(coordinatePunctures_.begin(), coordinatePunctures_.end(),
                                                target) -
                               coordinatePunctures_.begin());
    return c[2 * genus() + pos];
}

std::vector<int> PuncturedComplex::basisRepresentative(int i) const {
    const int g2 = 2 * genus();
    if (i < 0 || i >= rank()) throw Error("basis index out of range");
    if (i >= g2) return linkWalk(coordinatePunctures_[i - g2]);

    if (!hasPunctures()) {
        const auto& loops = closedBasis_->basisLoops();
        if (!loops[i]) throw Error("no loop representative available for this basis class");
        std::vector<int> walk;
        for (const DirectedEdge& d : loops[i]->edges) {
            auto sdPath = sd_->sdPathOfBaseEdge(d);
            if (walk.empty()) walk.push_back(sdPath[0]);
            walk.push_back(sdPath[1]);
            walk.push_back(sdPath[2]);
        }
        return walk;
    }

    // Solve for the class in the spine-generator basis and realize it as a
    // concatenation of generator walks at the root.
    const Spine& sp = spine();
    const int r = rank();
    std::vector<std::vector<Coord>> gcoords(r, std::vector<Coord>(r));
    std::vector<std::vector<int>> gwalks(r);
    for (int j = 0; j < r; ++j) {
        gwalks[j] = spineGeneratorWalk(j);
        std::vector<Coord> c = coordinates(gwalks[j]);
        for (int rr = 0; rr < r; ++rr) gcoords[rr][j] = c[rr];
    }
    std::vector<std::vector<Coord>> inv = unimodularInverse(gcoords);
    std::vector<int> walk{sp.root};
    for (int j = 0; j < r; ++j) {
        Coord mult = inv[j][i];
        std::vector<int> gw = gwalks[j];
        if (mult < 0) {
            std::reverse(gw.begin(), gw.end());
            mult = -mult;
        }
        for (Coord k = 0; k < mult; ++k) walk.insert(walk.end(), gw.begin() + 1, gw.end());
    }
    return walk;
}

void PuncturedComplex::buildSpine() {
    const SdSurface& sd = *sd_;
    const int ne = sd.edgeCount();

    std::vector<int> degree(ne, 0);
    std::vector<int> aliveTri(sd.triangleCount(), 0);
    for (int t : pcTriangles_) aliveTri[t] = 1;
    int aliveCount = static_cast<int>(pcTriangles_.size());
    for (int e = 0; e < ne; ++e) {
        if (removedEdge_[e]) continue;
        for (int t : sd.sdEdgeTriangles(e)) {
            if (aliveTri[t]) ++degree[e];
        }
    }

    std::set<int> free;
    for (int e = 0; e < ne; ++e) {
        if (!removedEdge_[e] && degree[e] == 1) free.insert(e);
    }

    std::vector<bool> collapsedEdge(ne, false);
    struct Step {
        int edge;
        int third;  // vertex opposite the edge in the collapsed triangle
    };
    std::vector<Step> order;
    order.reserve(aliveCount);

    while (!free.empty()) {
        int e = *free.begin();
        free.erase(free.begin());
        if (degree[e] != 1) continue;
        int tri = -1;
        for (int t : sd.sdEdgeTriangles(e)) {
            if (aliveTri[t]) tri = t;
        }
        const Triangle& t = sd.sdTriangles()[tri];
        const Edge& edge = sd.sdEdges()[e];
        int third = -1;
        for (VertexId v : t.v) {
            if (v != edge.a && v != edge.b) third = v;
        }
        order.push_back({e, third});
        collapsedEdge[e] = true;
        aliveTri[tri] = 0;
        --aliveCount;
        for (int i = 0; i < 3; ++i) {
            Edge f(t.v[i], t.v[(i + 1) % 3]);
            int fi = sd.sdEdgeIndex(f.a, f.b);
            --degree[fi];
            if (fi != e) {
                if (degree[fi] == 1) {
                    free.insert(fi);
                } else {
                    free.erase(fi);
                }
            }
        }
    }
    if (aliveCount != 0) {
        throw CollapseStalledError("collapse stalled with " + std::to_string(aliveCount) +
                                   " triangles remaining");
    }

    Spine sp;
    for (int e = 0; e < ne; ++e) {
        if (!removedEdge_[e] && !collapsedEdge[e]) sp.edges.push_back(sd.sdEdges()[e]);
    }

    // Expand rewrites from the last collapse backwards; every reference is
    // then already a surviving walk.
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const Edge& edge = sd.sdEdges()[it->edge];
        std::vector<int> walk{edge.a};
        auto append = [&](int from, int to) {
            int fi = sd.sdEdgeIndex(from, to);
            if (collapsedEdge[fi]) {
                auto found = sp.rewrite.find(fi);
                if (found == sp.rewrite.end()) throw Error("rewrite expansion out of order");
                const std::vector<int>& sub = found->second;
                if (sub.front() == from) {
                    walk.insert(walk.end(), sub.begin() + 1, sub.end());
                } else {
                    walk.insert(walk.end(), sub.rbegin() + 1, sub.rend());
                }
            } else {
                walk.push_back(to);
            }
        };
        append(edge.a, it->third);
        append(it->third, edge.b);
        sp.rewrite[it->edge] = std::move(walk);
    }

    // Spanning tree of the spine graph.
    const int nv = sd.vertexCount();
    std::vector<std::vector<int>> adj(nv);
    std::set<Edge> spineSet(sp.edges.begin(), sp.edges.end());
    for (const Edge& e : sp.edges) {
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());

    sp.treeParent.assign(nv, -2);  // -2 absent, -1 root
    int root = -1;
    for (int v = 0; v < nv; ++v) {
        if (!removedVertex_[v]) {
            root = v;
            break;
        }
    }
    sp.root = root;
    sp.treeParent[root] = -1;
    std::set<Edge> treeSet;
    {
        std::vector<int> frontier{root};
        while (!frontier.empty()) {
            std::vector<int> next;
            for (int w : frontier) {
                for (int x : adj[w]) {
                    if (sp.treeParent[x] != -2) continue;
                    sp.treeParent[x] = w;
                    treeSet.insert(Edge(w, x));
                    next.push_back(x);
                }
            }
            std::sort(next.begin(), next.end());
            frontier = std::move(next);
        }
    }
    for (int v = 0; v < nv; ++v) {
        if (!removedVertex_[v] && sp.treeParent[v] == -2) {
            throw Error("spine graph is disconnected");
        }
    }

    for (const Edge& e : sp.edges) {
        if (!treeSet.count(e)) sp.generatorEdges.push_back(sd.sdEdgeIndex(e.a, e.b));
    }
    std::sort(sp.generatorEdges.begin(), sp.generatorEdges.end());

    if (sp.rank() != rank()) {
        throw Error("spine rank " + std::to_string(sp.rank()) + " does not match homology rank " +
                    std::to_string(rank()));
    }
    spine_ = std::move(sp);
}

const Spine& PuncturedComplex::spine() const {
    if (!spine_) throw Error("spine requires a punctured complex (C must be non-empty)");
    return *spine_;
}

int PuncturedComplex::spineRank() const { return spine().rank(); }

std::vector<int> PuncturedComplex::spineWalkOf(const std::vector<int>& walk) const {
    const Spine& sp = *spine_;
    std::vector<int> out;
    if (walk.empty()) return out;
    out.push_back(walk.front());
    for (size_t i = 0; i + 1 < walk.size(); ++i) {
        int u = walk[i], v = walk[i + 1];
        int ei = sd_->sdEdgeIndex(u, v);
        auto found = sp.rewrite.find(ei);
        if (found == sp.rewrite.end()) {
            out.push_back(v);
            continue;
        }
        const std::vector<int>& sub = found->second;
        if (sub.front() == u) {
            out.insert(out.end(), sub.begin() + 1, sub.end());
        } else {
            out.insert(out.end(), sub.rbegin() + 1, sub.rend());
        }
    }
    return out;
}

FreeWord PuncturedComplex::loopNormalForm(const std::vector<int>& closedWalk) const {
    const Spine& sp = spine();
    if (!containsWalk(closedWalk)) throw LoopOutsideComplexError("loop touches a puncture's star");
    if (!closedWalk.empty() && closedWalk.front() != closedWalk.back()) {
        throw Error("walk is not closed");
    }
    std::vector<int> spWalk = spineWalkOf(closedWalk);

    std::map<int, int> genIndex;
    for (int j = 0; j < sp.rank(); ++j) genIndex[sp.generatorEdges[j]] = j;

    FreeWord word;
    for (size_t i = 0; i + 1 < spWalk.size(); ++i) {
        int u = spWalk[i], v = spWalk[i + 1];
        int ei = sd_->sdEdgeIndex(u, v);
        auto it = genIndex.find(ei);
        if (it == genIndex.end()) continue;  // tree edge
        int sign = (u < v) ? +1 : -1;
        if (!word.empty() && !word.back().commutator && word.back().generator == it->second &&
            word.back().sign == -sign) {
            word.pop_back();
        } else {
            word.push_back(FreeLetter::atom(it->second, sign));
        }
    }
    return word;
}

std::vector<int> PuncturedComplex::spineGeneratorWalk(int j) const {
    const Spine& sp = spine();
    const Edge& e = sd_->sdEdges()[sp.generatorEdges.at(j)];
    auto pathToRoot = [&](int v) {
        std::vector<int> path{v};
        while (sp.treeParent[path.back()] != -1) path.push_back(sp.treeParent[path.back()]);
        return path;  // v .. root
    };
    std::vector<int> pa = pathToRoot(e.a);  // a .. root
    std::vector<int> pb = pathToRoot(e.b);
    std::vector<int> walk(pa.rbegin(), pa.rend());  // root .. a
    walk.push_back(e.b);
    walk.insert(walk.end(), pb.begin() + 1, pb.end());  // b .. root
    return walk;
}

std::vector<int> PuncturedComplex::connectingWalk(int fromSdVertex, int toSdVertex) const {
    if (removedVertex_[fromSdVertex] || removedVertex_[toSdVertex]) {
        throw Error("connecting walk endpoint is a puncture");
    }
    if (fromSdVertex == toSdVertex) return {fromSdVertex};
    const SdSurface& sd = *sd_;
    std::vector<int> parent(sd.vertexCount(), -1);
    std::vector<bool> visited(sd.vertexCount(), false);
    visited[fromSdVertex] = true;
    std::vector<int> frontier{fromSdVertex};
    while (!visited[toSdVertex] && !frontier.empty()) {
        std::vector<int> next;
        for (int w : frontier) {
            for (int x : sd.sdNeighbors(w)) {
                if (visited[x] || removedVertex_[x]) continue;
                if (!containsSdEdge(w, x)) continue;
                visited[x] = true;
                parent[x] = w;
                next.push_back(x);
            }
        }
        std::sort(next.begin(), next.end());
        frontier = std::move(next);
    }
    if (!visited[toSdVertex]) throw Error("no connecting walk inside the punctured complex");
    std::vector<int> walk{toSdVertex};
    while (walk.back() != fromSdVertex) walk.push_back(parent[walk.back()]);
    std::reverse(walk.begin(), walk.end());
    return walk;
}

PuncturedComplex puncturedComplex(const SdSurface& sd, const HomologyBasis& closedBasis,
                                  std::vector<VertexId> punctures) {
    return PuncturedComplex(sd, closedBasis, std::move(punctures));
}

Complex2 complexOf(const PuncturedComplex& pc) {
    const SdSurface& sd = pc.sd();
    Complex2 c;
    for (int v = 0; v < sd.vertexCount(); ++v) {
        if (pc.containsSdVertex(v)) c.vertices.push_back(v);
    }
    for (const Edge& e : sd.sdEdges()) {
        if (pc.containsSdEdge(e.a, e.b)) c.edges.push_back(e);
    }
    for (const Triangle& t : sd.sdTriangles()) {
        if (pc.containsSdVertex(t.v[0]) && pc.containsSdVertex(t.v[1]) && pc.containsSdVertex(t.v[2])) {
            c.triangles.push_back(t);
        }
    }
    return c;
}

Chain1 linkChainOf(const PuncturedComplex& pc, VertexId puncture) {
    return chainFromWalk(pc.sd(), pc.linkWalk(puncture));
}

}  // namespace braidhom
