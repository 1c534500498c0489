#include "braidhom/braid.hpp"

#include <algorithm>

namespace braidhom {

SurfaceSystem::SurfaceSystem(SimplicialSurface base) : sd_(subdivide(base)), homology_(sd_) {}

std::shared_ptr<const PuncturedComplex> SurfaceSystem::punctured(std::vector<VertexId> punctures) const {
    std::sort(punctures.begin(), punctures.end());
    punctures.erase(std::unique(punctures.begin(), punctures.end()), punctures.end());
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(punctures);
    if (it != cache_.end()) return it->second;
    auto pc = std::make_shared<const PuncturedComplex>(sd_, homology_, punctures);
    cache_[punctures] = pc;
    return pc;
}

Simulation simulate(const SdSurface& sd, const MoveSequence& ms) {
    const int nTokens = sd.base().vertexCount();
    Simulation sim;
    sim.tokenPosition.resize(nTokens);
    sim.walks.resize(nTokens);
    std::vector<int> occupant(sd.vertexCount(), -1);
    for (VertexId v = 0; v < nTokens; ++v) {
        int pos = sd.originalVertex(v);
        sim.tokenPosition[v] = pos;
        sim.walks[v] = {pos};
        occupant[pos] = v;
    }
    for (int i = 0; i < static_cast<int>(ms.moves.size()); ++i) {
        const Move& mv = ms.moves[i];
        if (mv.from < 0 || mv.from >= sd.vertexCount() || mv.to < 0 || mv.to >= sd.vertexCount() ||
            !sd.hasSdEdge(mv.from, mv.to)) {
            throw NotAnEdgeError(i, "move " + std::to_string(i) + " is not along an sd edge");
        }
        int token = occupant[mv.from];
        if (token < 0) {
            throw IllegalMoveError(i, "move " + std::to_string(i) + " from unoccupied vertex " +
                                          sd.vertexName(mv.from));
        }
        if (occupant[mv.to] >= 0) {
            throw IllegalMoveError(i, "move " + std::to_string(i) + " into occupied vertex " +
                                          sd.vertexName(mv.to));
        }
        occupant[mv.from] = -1;
        occupant[mv.to] = token;
        sim.tokenPosition[token] = mv.to;
        sim.walks[token].push_back(mv.to);
    }
    sim.closed = true;
    for (VertexId v = 0; v < nTokens; ++v) {
        if (occupant[sd.originalVertex(v)] < 0) sim.closed = false;
    }
    return sim;
}

bool isClosed(const SdSurface& sd, const MoveSequence& ms) { return simulate(sd, ms).closed; }

std::vector<VertexId> permutation(const SdSurface& sd, const MoveSequence& ms) {
    Simulation sim = simulate(sd, ms);
    if (!sim.closed) throw NotClosedError("sequence does not return the tokens to the vertex set");
    std::vector<VertexId> perm(sim.tokenPosition.size());
    for (size_t t = 0; t < sim.tokenPosition.size(); ++t) {
        perm[t] = sd.baseVertex(sim.tokenPosition[t]);
    }
    return perm;
}

bool isIdentityPermutation(const std::vector<VertexId>& perm) {
    for (size_t i = 0; i < perm.size(); ++i) {
        if (perm[i] != static_cast<VertexId>(i)) return false;
    }
    return true;
}

Chain1 totalChain(const SdSurface& sd, const MoveSequence& ms) {
    Chain1 z(sd.edgeCount(), 0);
    for (int i = 0; i < static_cast<int>(ms.moves.size()); ++i) {
        const Move& mv = ms.moves[i];
        int idx = sd.sdEdgeIndex(mv.from, mv.to);
        if (idx < 0) throw NotAnEdgeError(i, "move " + std::to_string(i) + " is not along an sd edge");
        z[idx] += (mv.from < mv.to) ? 1 : -1;
    }
    return z;
}

std::vector<Coord> omega(const SurfaceSystem& sys, const MoveSequence& ms) {
    if (!isClosed(sys.sd(), ms)) throw NotClosedError("omega requires a closed sequence");
    return sys.homology().coordinates(totalChain(sys.sd(), ms));
}

bool isBalanced(const SurfaceSystem& sys, const MoveSequence& ms) {
    std::vector<Coord> w = omega(sys, ms);
    return std::all_of(w.begin(), w.end(), [](Coord c) { return c == 0; });
}

bool isPure(const SdSurface& sd, const MoveSequence& ms) {
    return isIdentityPermutation(permutation(sd, ms));
}

MoveSequence expand(const SdSurface& sd, const EdgeBraidWord& word) {
    MoveSequence out;
    out.moves.reserve(4 * word.letters.size());
    for (int i = 0; i < static_cast<int>(word.letters.size()); ++i) {
        const EdgeBraidLetter& l = word.letters[i];
        if (!sd.base().hasEdge(l.edge.from, l.edge.to)) {
            throw NotAnEdgeError(i, "letter " + std::to_string(i) + " uses a missing edge");
        }
        int v0 = sd.originalVertex(l.edge.from);
        int v1 = sd.originalVertex(l.edge.to);
        int mid = sd.midpoint(Edge(l.edge));
        int tri = l.sign > 0 ? sd.plusTriangle(l.edge) : sd.minusTriangle(l.edge);
        int bary = sd.barycenter(tri);
        out.moves.push_back({v0, bary});
        out.moves.push_back({v1, mid});
        out.moves.push_back({mid, v0});
        out.moves.push_back({bary, v1});
    }
    return out;
}

namespace {

// Canonical word for an abelian class, used when the complex is unpunctured
// and the fundamental group is abelian (genus <= 1).
FreeWord abelianWord(const std::vector<Coord>& coords) {
    FreeWord w;
    for (size_t i = 0; i < coords.size(); ++i) {
        Coord c = coords[i];
        int sign = c >= 0 ? 1 : -1;
        for (Coord k = 0; k < (c >= 0 ? c : -c); ++k) {
            w.push_back(FreeLetter::atom(static_cast<int>(i), sign));
        }
    }
    return w;
}

}  // namespace

BraidFingerprint fingerprint(const SurfaceSystem& sys, const MoveSequence& ms) {
    const SdSurface& sd = sys.sd();
    Simulation sim = simulate(sd, ms);
    if (!sim.closed) throw NotClosedError("fingerprint requires a closed sequence");

    BraidFingerprint fp;
    fp.permutation.resize(sim.tokenPosition.size());
    for (size_t t = 0; t < sim.tokenPosition.size(); ++t) {
        fp.permutation[t] = sd.baseVertex(sim.tokenPosition[t]);
    }
    fp.omegaClass = sys.homology().coordinates(totalChain(sd, ms));
    for (VertexId v = 0; v < sys.base().vertexCount(); ++v) {
        if (sim.walks[v].size() == 1) fp.constants.push_back(v);
    }
    fp.pure = isIdentityPermutation(fp.permutation);
    if (!fp.pure) return fp;
    if (static_cast<int>(fp.constants.size()) == sys.base().vertexCount()) return fp;  // nothing moved

    auto pc = sys.punctured(fp.constants);
    for (VertexId v = 0; v < sys.base().vertexCount(); ++v) {
        if (sim.walks[v].size() == 1) continue;
        StrandData data;
        data.walk = sim.walks[v];
        data.coordinates = pc->coordinates(data.walk);
        if (pc->hasPunctures()) {
            data.normalForm = pc->loopNormalForm(data.walk);
        } else if (sys.genus() == 0) {
            data.normalForm = FreeWord{};
        } else if (sys.genus() == 1) {
            data.normalForm = abelianWord(data.coordinates);
        }
        fp.strands[v] = std::move(data);
    }

    // Consistency: omega is the sum of the strand classes.
    std::vector<Coord> sum(fp.omegaClass.size(), 0);
    for (const auto& [v, data] : fp.strands) {
        for (size_t i = 0; i < sum.size(); ++i) sum[i] += data.coordinates[i];
    }
    for (size_t i = 0; i < sum.size(); ++i) {
        if (sum[i] != fp.omegaClass[i]) throw Error("strand classes do not add up to omega");
    }
    return fp;
}

bool sameFingerprint(const BraidFingerprint& a, const BraidFingerprint& b) {
    if (a.permutation != b.permutation || a.omegaClass != b.omegaClass || a.constants != b.constants ||
        a.pure != b.pure) {
        return false;
    }
    if (!a.pure) return true;
    if (a.strands.size() != b.strands.size()) return false;
    for (const auto& [v, data] : a.strands) {
        auto it = b.strands.find(v);
        if (it == b.strands.end()) return false;
        if (data.coordinates != it->second.coordinates) return false;
        if (data.normalForm.has_value() != it->second.normalForm.has_value()) return false;
        if (data.normalForm && !(*data.normalForm == *it->second.normalForm)) return false;
    }
    return true;
}

}  // namespace braidhom
