#include "braidhom/constructions.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace braidhom {

EdgeBraidWord qPath(const EdgePath& path) {
    if (path.degenerate || path.empty()) throw Error("q-path needs a non-degenerate path");
    if (!path.isSimple()) throw Error("q-path needs a simple path");
    if (path.isLoop()) throw Error("q-path needs a path with distinct endpoints");
    EdgeBraidWord w;
    for (const DirectedEdge& e : path.edges) w.letters.push_back({e, +1});
    for (int i = static_cast<int>(path.edges.size()) - 2; i >= 0; --i) {
        w.letters.push_back({path.edges[i], -1});
    }
    return w;
}

EdgeBraidWord loopRotation(const EdgeLoop& loop, int startIndex) {
    if (!loop.isLoop()) throw Error("loop rotation needs a closed edge loop");
    if (!loop.isSimple()) throw Error("loop rotation needs a simple loop");
    const int k = static_cast<int>(loop.edges.size());
    if (startIndex < 0 || startIndex >= k) throw Error("rotation start index out of range");
    EdgeBraidWord w;
    for (int i = 0; i < k; ++i) w.letters.push_back({loop.edges[(startIndex + i) % k], +1});
    return w;
}

EdgeBraidWord wPair(const EdgeLoop& loop, VertexId vi, VertexId vj) {
    if (!loop.isLoop() || !loop.isSimple()) throw Error("w-pair needs a simple edge loop");
    if (vi == vj) throw Error("w-pair needs two distinct vertices");
    const int k = static_cast<int>(loop.edges.size());
    int i = -1, j = -1;
    for (int idx = 0; idx < k; ++idx) {
        if (loop.edges[idx].from == vi) i = idx;
        if (loop.edges[idx].from == vj) j = idx;
    }
    if (i < 0) throw Error("w-pair: first vertex is not on the loop");
    if (j < 0) throw Error("w-pair: second vertex is not on the loop");

    // Rotation followed by the reverse rotation over the path that skips the
    // basepoint; this returns every token home while the basepoint strand
    // keeps its full lap and its successor laps backwards.
    EdgeBraidWord word = loopRotation(loop, i);
    for (int step = k - 2; step >= 1; --step) {
        word.letters.push_back({loop.edges[(i + step) % k], +1});
    }

    int succ = (i + 1) % k;
    if (loop.edges[succ].from == vj) return word;

    // Transport the backward lap from the successor to vj along the loop.
    std::vector<DirectedEdge> mu;
    for (int idx = succ; loop.edges[idx].from != vj; idx = (idx + 1) % k) {
        mu.push_back(loop.edges[idx]);
    }
    EdgeBraidWord conj = qPath(EdgePath::fromEdges(std::move(mu)));
    EdgeBraidWord out = conj;
    out.append(word);
    out.append(conj.inverse());
    return out;
}

EdgeBraidWord wLambda(const EdgePath& path) {
    if (path.degenerate || path.empty()) throw Error("w-lambda needs a non-degenerate path");
    if (!path.isSimple() || path.isLoop()) throw Error("w-lambda needs a simple open path");
    const int k = static_cast<int>(path.edges.size());
    EdgeBraidWord w;
    for (int i = 0; i < k - 1; ++i) w.letters.push_back({path.edges[i], +1});
    w.letters.push_back({path.edges[k - 1], -1});
    w.letters.push_back({path.edges[k - 1], -1});
    for (int i = k - 2; i >= 0; --i) w.letters.push_back({path.edges[i], +1});
    return w;
}

QuadConfiguration quadConfiguration(const SdSurface& sd, const DirectedEdge& shared) {
    if (!sd.base().hasEdge(shared.from, shared.to)) throw Error("shared edge does not exist");
    QuadConfiguration q;
    q.v0 = shared.from;
    q.v2 = shared.to;
    int alpha = sd.minusTriangle(shared);   // induces (v2, v0): reads as (v0, v1, v2)
    int alphaP = sd.plusTriangle(shared);   // induces (v0, v2): reads as (v0, v2, v3)
    auto third = [&](int tri) {
        for (VertexId v : sd.base().triangles()[tri].v) {
            if (v != q.v0 && v != q.v2) return v;
        }
        throw Error("degenerate triangle");
    };
    q.v1 = third(alpha);
    q.v3 = third(alphaP);
    q.e0 = {q.v0, q.v1};
    q.e1 = {q.v1, q.v2};
    q.e2 = {q.v2, q.v3};
    q.e3 = {q.v3, q.v0};
    return q;
}

EdgeBraidWord quadLoop(const SdSurface& sd, const DirectedEdge& shared) {
    QuadConfiguration q = quadConfiguration(sd, shared);
    EdgeBraidWord w;
    w.letters = {{q.e0, +1}, {q.e1, +1}, {q.e0, +1}, {q.e2, +1}, {q.e0, +1}, {q.e2, +1}};
    return w;
}

MoveSequence loopBraid(const SdSurface& sd, VertexId v, const std::vector<int>& walk) {
    int home = sd.originalVertex(v);
    if (walk.empty()) return MoveSequence{};
    if (walk.front() != home || walk.back() != home) {
        throw Error("loop braid walk must start and end at the token's vertex");
    }
    for (size_t i = 1; i + 1 < walk.size(); ++i) {
        if (sd.isOriginal(walk[i])) {
            throw Error("loop braid walk passes through occupied vertex " + sd.vertexName(walk[i]));
        }
    }
    MoveSequence ms;
    for (size_t i = 0; i + 1 < walk.size(); ++i) {
        if (walk[i] == walk[i + 1]) continue;
        ms.moves.push_back({walk[i], walk[i + 1]});
    }
    return ms;
}

MoveSequence conjugateTransport(const SurfaceSystem& sys, const MoveSequence& gamma, const EdgePath& eta) {
    BraidFingerprint fp = fingerprint(sys, gamma);
    if (!fp.pure) throw NotPureError("transport needs a pure braid");
    // Exactly one strand may carry non-trivial loop data; tokens that merely
    // jiggle and return with null loops do not count.
    int nontrivial = 0;
    VertexId loopToken = -1;
    for (const auto& [v, data] : fp.strands) {
        bool zeroCoords = std::all_of(data.coordinates.begin(), data.coordinates.end(),
                                      [](Coord c) { return c == 0; });
        bool emptyWord = !data.normalForm || data.normalForm->empty();
        if (!zeroCoords || !emptyWord) {
            ++nontrivial;
            loopToken = v;
        }
    }
    if (nontrivial != 1) {
        throw Error("transport needs exactly one non-trivial vertex loop, found " +
                    std::to_string(nontrivial));
    }
    if (eta.degenerate || eta.empty() || eta.source() != loopToken) {
        throw Error("transport path must start at the token carrying the loop");
    }
    MoveSequence conj = expand(sys.sd(), qPath(eta));
    MoveSequence out = conj;
    out.append(gamma);
    out.append(conj.reversed());
    return out;
}

EdgeBraidWord commutatorWord(const EdgeBraidWord& a, const EdgeBraidWord& b) {
    EdgeBraidWord out = a;
    out.append(b);
    out.append(a.inverse());
    out.append(b.inverse());
    return out;
}

EdgeBraidWord commutatorCase1(const EdgeLoop& a, const EdgeLoop& b) {
    if (!a.isLoop() || !a.isSimple() || !b.isLoop() || !b.isSimple()) {
        throw Error("commutator loops must be simple edge loops");
    }
    if (a.source() != b.source()) throw Error("commutator loops must share their basepoint");
    std::set<VertexId> onA;
    for (const DirectedEdge& e : a.edges) onA.insert(e.from);
    for (const DirectedEdge& e : b.edges) {
        if (e.from != a.source() && onA.count(e.from)) {
            throw Error("loops intersect away from the basepoint at vertex " + std::to_string(e.from));
        }
    }
    return commutatorWord(loopRotation(a, 0), loopRotation(b, 0));
}

EdgeBraidWord commutatorCase2(const EdgePath& lambda1, const EdgePath& lambda2) {
    if (lambda1.source() != lambda2.source()) throw Error("winding paths must share their source");
    return commutatorWord(wLambda(lambda1), wLambda(lambda2));
}

EdgeBraidWord commutatorCase3(const EdgeLoop& a, const EdgePath& mu) {
    if (!a.isLoop() || !a.isSimple()) throw Error("commutator loop must be a simple edge loop");
    if (mu.source() != a.source()) throw Error("winding path must start at the loop basepoint");
    return commutatorWord(loopRotation(a, 0), wLambda(mu));
}

std::vector<int> sdWalkOfBasePath(const SdSurface& sd, const EdgePath& path) {
    std::vector<int> walk;
    for (const DirectedEdge& d : path.edges) {
        auto sdPath = sd.sdPathOfBaseEdge(d);
        if (walk.empty()) walk.push_back(sdPath[0]);
        walk.push_back(sdPath[1]);
        walk.push_back(sdPath[2]);
    }
    return walk;
}

std::vector<int> vertexLinkWalk(const SdSurface& sd, VertexId v) {
    int sdV = sd.originalVertex(v);
    std::map<int, int> succ;
    for (int t = 0; t < sd.triangleCount(); ++t) {
        const Triangle& tri = sd.sdTriangles()[t];
        if (tri.v[0] != sdV && tri.v[1] != sdV && tri.v[2] != sdV) continue;
        // The edge opposite v, directed as the triangle induces it.
        for (int i = 0; i < 3; ++i) {
            int a = tri.v[i], b = tri.v[(i + 1) % 3];
            if (a != sdV && b != sdV) succ[a] = b;
        }
    }
    if (succ.empty()) throw Error("vertex has no link");
    std::vector<int> walk{succ.begin()->first};
    do {
        walk.push_back(succ.at(walk.back()));
    } while (walk.back() != walk.front());
    if (walk.size() != succ.size() + 1) throw Error("vertex link is not a single cycle");
    return walk;
}

namespace {

// Link arc from a to b following the walk's cyclic orientation; empty for a == b.
std::vector<int> linkArc(const std::vector<int>& link, int a, int b) {
    const int n = static_cast<int>(link.size()) - 1;  // closed walk repeats its start
    int ia = -1;
    for (int i = 0; i < n; ++i) {
        if (link[i] == a) ia = i;
    }
    if (ia < 0) throw Error("arc endpoint is not on the link");
    std::vector<int> arc{a};
    int i = ia;
    while (arc.back() != b) {
        i = (i + 1) % n;
        arc.push_back(link[i]);
        if (static_cast<int>(arc.size()) > n + 1) throw Error("arc endpoint is not on the link");
    }
    return arc;
}

}  // namespace

std::vector<int> detourWalkAroundVertex(const SdSurface& sd, const std::vector<int>& walk, int sdVertex) {
    if (!walk.empty() && (walk.front() == sdVertex || walk.back() == sdVertex)) {
        throw Error("cannot detour a walk around its own basepoint");
    }
    std::vector<int> link;
    std::vector<int> out;
    for (size_t i = 0; i < walk.size(); ++i) {
        if (walk[i] != sdVertex) {
            out.push_back(walk[i]);
            continue;
        }
        if (link.empty()) link = vertexLinkWalk(sd, sd.baseVertex(sdVertex));
        int a = walk[i - 1];
        int b = walk[i + 1];
        std::vector<int> arc = linkArc(link, a, b);
        out.insert(out.end(), arc.begin() + 1, arc.end());
    }
    // Backtracks through the vertex leave an empty arc; drop the stutter.
    std::vector<int> squashed;
    for (int v : out) {
        if (squashed.empty() || squashed.back() != v) squashed.push_back(v);
    }
    return squashed;
}

MoveSequence basisLoopBraid(const SurfaceSystem& sys, VertexId v, int basisIndex) {
    const SdSurface& sd = sys.sd();
    const auto& loops = sys.homology().basisLoops();
    if (basisIndex < 0 || basisIndex >= static_cast<int>(loops.size())) {
        throw Error("basis index out of range");
    }
    if (!loops[basisIndex]) throw Error("no simple loop representative for this basis class");

    std::vector<int> walk = sdWalkOfBasePath(sd, *loops[basisIndex]);
    int home = sd.originalVertex(v);

    // Rebase: at the token's vertex when the loop passes through it, at the
    // first midpoint otherwise, so every other original vertex on the walk
    // is interior and can be detoured.
    auto rotateTo = [&](size_t i) {
        std::vector<int> rotated(walk.begin() + i, walk.end() - 1);
        rotated.insert(rotated.end(), walk.begin(), walk.begin() + i);
        rotated.push_back(rotated.front());
        walk = std::move(rotated);
    };
    size_t homePos = walk.size();
    for (size_t i = 0; i + 1 < walk.size(); ++i) {
        if (walk[i] == home) homePos = i;
    }
    if (homePos < walk.size()) {
        if (homePos != 0) rotateTo(homePos);
    } else {
        rotateTo(1);  // midpoints are never occupied
    }

    for (VertexId u = 0; u < sys.base().vertexCount(); ++u) {
        if (u == v) continue;
        int sdU = sd.originalVertex(u);
        if (std::find(walk.begin(), walk.end(), sdU) != walk.end()) {
            walk = detourWalkAroundVertex(sd, walk, sdU);
        }
    }

    if (walk.front() != home) {
        // Connect v to the loop inside the complex punctured at every other
        // original vertex.
        std::vector<VertexId> others;
        for (VertexId u = 0; u < sys.base().vertexCount(); ++u) {
            if (u != v) others.push_back(u);
        }
        auto pc = sys.punctured(others);
        std::vector<int> conn = pc->connectingWalk(home, walk.front());
        std::vector<int> full = conn;
        full.insert(full.end(), walk.begin() + 1, walk.end());
        for (auto it = conn.rbegin() + 1; it != conn.rend(); ++it) full.push_back(*it);
        walk = std::move(full);
    }

    return loopBraid(sd, v, walk);
}

}  // namespace braidhom
