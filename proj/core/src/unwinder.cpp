#include "braidhom/unwinder.hpp"

#include <algorithm>

namespace braidhom {

int coxeterLength(const SdSurface& sd, const MoveSequence& ms) {
    std::vector<VertexId> perm = permutation(sd, ms);
    std::vector<bool> seen(perm.size(), false);
    int cycles = 0;
    for (size_t v = 0; v < perm.size(); ++v) {
        if (seen[v]) continue;
        ++cycles;
        size_t w = v;
        while (!seen[w]) {
            seen[w] = true;
            w = perm[w];
        }
    }
    return static_cast<int>(perm.size()) - cycles;
}

PurifyResult purify(const SurfaceSystem& sys, const MoveSequence& ms) {
    const SdSurface& sd = sys.sd();
    std::vector<VertexId> perm = permutation(sd, ms);
    std::vector<VertexId> inv(perm.size());
    for (size_t v = 0; v < perm.size(); ++v) inv[perm[v]] = static_cast<VertexId>(v);

    // Cycle decomposition of the inverse permutation, lowest id first;
    // cycle (c0 c1 .. ck) factors as (c0 c1)(c0 c2)..(c0 ck) applied in order.
    EdgeBraidWord word;
    std::vector<bool> seen(inv.size(), false);
    for (VertexId v = 0; v < static_cast<VertexId>(inv.size()); ++v) {
        if (seen[v] || inv[v] == v) {
            seen[v] = true;
            continue;
        }
        std::vector<VertexId> cycle{v};
        seen[v] = true;
        VertexId w = inv[v];
        while (w != v) {
            cycle.push_back(w);
            seen[w] = true;
            w = inv[w];
        }
        for (size_t j = 1; j < cycle.size(); ++j) {
            word.append(qPath(findEdgePath(sys.base(), cycle[0], cycle[j])));
        }
    }

    PurifyResult out;
    out.word = word;
    out.pureSequence = MoveSequence::concat(expand(sd, word), ms);
    if (!isPure(sd, out.pureSequence)) throw Error("purification did not produce a pure braid");
    return out;
}

namespace {

std::string coordName(const SurfaceSystem& sys, const PuncturedComplex& pc, int index) {
    int g2 = 2 * sys.genus();
    if (index < g2) return "surface[" + std::to_string(index) + "]";
    VertexId p = pc.coordinatePunctures()[index - g2];
    return "link[" + sys.base().vertexNames()[p] + "]";
}

// Word with strand classes +e_i at x and -e_i at acc, trivial elsewhere.
EdgeBraidWord surfaceCanceller(const SurfaceSystem& sys, VertexId x, VertexId acc, int basisIndex,
                               long long budget) {
    const auto& loops = sys.homology().basisLoops();
    EdgeLoop loop;
    if (loops[basisIndex]) {
        loop = *loops[basisIndex];
    } else {
        std::vector<Coord> target(sys.homology().rank(), 0);
        target[basisIndex] = 1;
        SimpleLoopResult found = findSimpleLoopInClass(sys.homology(), {target, std::nullopt, budget});
        if (!found.loop) {
            throw SimpleLoopSearchExhausted("no simple loop found for basis class " +
                                            std::to_string(basisIndex));
        }
        loop = *found.loop;
    }

    std::vector<VertexId> vs = loop.vertices();
    vs.pop_back();  // closed walk repeats the basepoint
    auto onLoop = [&](VertexId v) { return std::find(vs.begin(), vs.end(), v) != vs.end(); };

    VertexId xPrime = x;
    if (!onLoop(x)) {
        xPrime = vs[0] != acc ? vs[0] : vs[1];
    }
    VertexId yPrime = -1;
    if (onLoop(acc) && acc != xPrime) {
        yPrime = acc;
    } else {
        for (VertexId v : vs) {
            if (v != xPrime && v != x && v != acc) {
                yPrime = v;
                break;
            }
        }
    }
    if (yPrime < 0) throw Error("could not place the pair braid on the basis loop");

    EdgeBraidWord w = wPair(loop, xPrime, yPrime);
    if (xPrime != x) {
        EdgeBraidWord conj = qPath(findEdgePath(sys.base(), xPrime, x));
        EdgeBraidWord tmp = conj;
        tmp.append(w);
        tmp.append(conj.inverse());
        w = std::move(tmp);
    }
    if (yPrime != acc) {
        EdgeBraidWord conj = qPath(findEdgePath(sys.base(), yPrime, acc));
        EdgeBraidWord tmp = conj;
        tmp.append(w);
        tmp.append(conj.inverse());
        w = std::move(tmp);
    }
    return w;
}

int countNonEmptyNormalForms(const BraidFingerprint& fp) {
    int n = 0;
    for (const auto& [v, data] : fp.strands) {
        if (data.normalForm && !data.normalForm->empty()) ++n;
    }
    return n;
}

bool allCoordinatesZero(const BraidFingerprint& fp) {
    for (const auto& [v, data] : fp.strands) {
        for (Coord c : data.coordinates) {
            if (c != 0) return false;
        }
    }
    return true;
}

}  // namespace

bool residualTrivial(const BraidFingerprint& fp) {
    if (!fp.pure) return false;
    for (Coord c : fp.omegaClass) {
        if (c != 0) return false;
    }
    if (!allCoordinatesZero(fp)) return false;
    return countNonEmptyNormalForms(fp) <= 1;
}

UnwindCertificate unwind(const SurfaceSystem& sys, const MoveSequence& ms, const UnwindOptions& opts) {
    const SdSurface& sd = sys.sd();
    const int g2 = 2 * sys.genus();

    BraidFingerprint input = fingerprint(sys, ms);
    if (!input.pure) throw NotPureError("unwind needs a pure braid");
    for (Coord c : input.omegaClass) {
        if (c != 0) throw NotBalancedError("unwind needs a balanced braid");
    }

    UnwindCertificate cert;
    cert.input = input;

    if (input.strands.empty()) {
        cert.residual = input;
        cert.status = UnwindStatus::Full;
        return cert;
    }
    const VertexId acc = input.strands.begin()->first;

    MoveSequence current = ms;
    auto apply = [&](const EdgeBraidWord& piece, UnwindStep step) {
        current = MoveSequence::concat(expand(sd, piece), current);
        cert.word = EdgeBraidWord::concat(piece, cert.word);
        cert.steps.push_back(std::move(step));
    };

    try {
        for (;;) {
            BraidFingerprint fp = fingerprint(sys, current);
            auto pc = sys.punctured(fp.constants);

            bool acted = false;

            // Surface classes of the non-accumulator tokens, lowest first.
            for (const auto& [x, data] : fp.strands) {
                if (x == acc) continue;
                for (int i = 0; i < g2 && !acted; ++i) {
                    Coord s = data.coordinates[i];
                    if (s == 0) continue;
                    EdgeBraidWord canceller = surfaceCanceller(sys, x, acc, i, opts.loopSearchBudget);
                    UnwindStep step;
                    step.construction = "w_pair";
                    step.token = x;
                    step.cancelled = coordName(sys, *pc, i);
                    step.amount = s;
                    step.parameters["basis_class"] = std::to_string(i);
                    step.parameters["accumulator"] = sys.base().vertexNames()[acc];
                    apply(canceller.power(-s), std::move(step));
                    acted = true;
                }
                if (acted) break;
            }
            if (acted) continue;

            // Winding coordinates, non-accumulator tokens first, then the
            // accumulator itself.
            const auto& cps = pc->coordinatePunctures();
            for (const auto& [x, data] : fp.strands) {
                if (x == acc) continue;
                for (size_t j = 0; j < cps.size() && !acted; ++j) {
                    Coord d = data.coordinates[g2 + static_cast<int>(j)];
                    if (d == 0) continue;
                    EdgePath path = findEdgePath(sys.base(), x, cps[j]);
                    UnwindStep step;
                    step.construction = "w_lambda";
                    step.token = x;
                    step.cancelled = coordName(sys, *pc, g2 + static_cast<int>(j));
                    step.amount = d;
                    step.parameters["target"] = sys.base().vertexNames()[cps[j]];
                    apply(wLambda(path).power(-d), std::move(step));
                    acted = true;
                }
                if (acted) break;
            }
            if (acted) continue;

            auto accIt = fp.strands.find(acc);
            if (accIt != fp.strands.end()) {
                for (int i = 0; i < g2; ++i) {
                    if (accIt->second.coordinates[i] != 0) {
                        throw Error("accumulator kept a surface class despite omega = 0");
                    }
                }
                for (size_t j = 0; j < cps.size() && !acted; ++j) {
                    Coord d = accIt->second.coordinates[g2 + static_cast<int>(j)];
                    if (d == 0) continue;
                    EdgePath path = findEdgePath(sys.base(), acc, cps[j]);
                    UnwindStep step;
                    step.construction = "w_lambda";
                    step.token = acc;
                    step.cancelled = coordName(sys, *pc, g2 + static_cast<int>(j));
                    step.amount = d;
                    step.parameters["target"] = sys.base().vertexNames()[cps[j]];
                    apply(wLambda(path).power(-d), std::move(step));
                    acted = true;
                }
            }
            if (acted) continue;

            // Coordinates are clear. If several strands still carry nonempty
            // normal forms, release punctures one at a time: the winding
            // content they pin down dissolves with them.
            if (countNonEmptyNormalForms(fp) > 1 && !fp.constants.empty()) {
                VertexId c = fp.constants.front();
                EdgePath path = findEdgePath(sys.base(), acc, c);
                UnwindStep step;
                step.construction = "dissolve";
                step.token = acc;
                step.cancelled = "puncture[" + sys.base().vertexNames()[c] + "]";
                step.amount = 0;
                step.parameters["target"] = sys.base().vertexNames()[c];
                apply(wLambda(path), std::move(step));
                continue;
            }
            break;
        }
    } catch (const SimpleLoopSearchExhausted& e) {
        cert.searchFailure = e.what();
    }

    cert.residual = fingerprint(sys, current);
    cert.status = (!cert.searchFailure && residualTrivial(cert.residual)) ? UnwindStatus::Full
                                                                          : UnwindStatus::PartialResidue;
    if (cert.status == UnwindStatus::PartialResidue) {
        for (const auto& [v, data] : cert.residual.strands) {
            if (data.normalForm && !data.normalForm->empty()) cert.residualNormalForms[v] = *data.normalForm;
        }
    }
    return cert;
}

KernelDecision kernelCertificate(const SurfaceSystem& sys, const MoveSequence& ms,
                                 const UnwindOptions& opts) {
    KernelDecision decision;
    decision.omegaClass = omega(sys, ms);
    bool zero = std::all_of(decision.omegaClass.begin(), decision.omegaClass.end(),
                            [](Coord c) { return c == 0; });
    if (!zero) {
        decision.accepted = false;
        return decision;
    }
    decision.accepted = true;

    PurifyResult p = purify(sys, ms);
    UnwindCertificate cert = unwind(sys, p.pureSequence, opts);
    cert.input = fingerprint(sys, ms);
    cert.word = EdgeBraidWord::concat(cert.word, p.word);
    if (!p.word.letters.empty()) {
        UnwindStep step;
        step.construction = "purify";
        step.parameters["transpositions"] = std::to_string(coxeterLength(sys.sd(), ms));
        cert.steps.insert(cert.steps.begin(), std::move(step));
    }
    decision.certificate = std::move(cert);
    return decision;
}

bool replayCertificate(const SurfaceSystem& sys, const MoveSequence& input, const UnwindCertificate& cert) {
    MoveSequence replay = MoveSequence::concat(expand(sys.sd(), cert.word), input);
    BraidFingerprint fp = fingerprint(sys, replay);
    return sameFingerprint(fp, cert.residual);
}

}  // namespace braidhom
