#include <doctest.h>

#include <map>
#include <memory>
#include <random>
#include <set>

#include "braidhom/unwinder.hpp"

using namespace braidhom;

namespace {

const SurfaceSystem& system(int genus) {
    static std::map<int, std::unique_ptr<SurfaceSystem>> cache;
    auto it = cache.find(genus);
    if (it == cache.end()) {
        it = cache.emplace(genus, std::make_unique<SurfaceSystem>(buildStandardSurface(genus))).first;
    }
    return *it->second;
}

EdgeBraidWord randomWord(const SurfaceSystem& sys, std::mt19937_64& rng, int letters) {
    const auto& edges = sys.base().edges();
    EdgeBraidWord w;
    for (int i = 0; i < letters; ++i) {
        const Edge& e = edges[rng() % edges.size()];
        DirectedEdge d = (rng() % 2) ? DirectedEdge{e.a, e.b} : DirectedEdge{e.b, e.a};
        w.letters.push_back({d, (rng() % 2) ? 1 : -1});
    }
    return w;
}

MoveSequence randomClosedSequence(const SurfaceSystem& sys, std::mt19937_64& rng, int steps) {
    const SdSurface& sd = sys.sd();
    std::vector<int> occupant(sd.vertexCount(), -1);
    for (VertexId v = 0; v < sys.base().vertexCount(); ++v) occupant[v] = v;
    MoveSequence ms;
    for (int i = 0; i < steps; ++i) {
        for (int attempt = 0; attempt < 64; ++attempt) {
            int from = static_cast<int>(rng() % sd.vertexCount());
            if (occupant[from] < 0) continue;
            const auto& nb = sd.sdNeighbors(from);
            int to = nb[rng() % nb.size()];
            if (occupant[to] >= 0) continue;
            occupant[to] = occupant[from];
            occupant[from] = -1;
            ms.moves.push_back({from, to});
            break;
        }
    }
    ms.append(ms.reversed());
    return ms;
}

// Commutator of two basis loop braids at one token.
MoveSequence loopCommutator(const SurfaceSystem& sys, VertexId v, int i, int j) {
    MoveSequence a = basisLoopBraid(sys, v, i);
    MoveSequence b = basisLoopBraid(sys, v, j);
    MoveSequence out = a;
    out.append(b);
    out.append(a.reversed());
    out.append(b.reversed());
    return out;
}

long long coordinateMass(const BraidFingerprint& fp) {
    long long mass = 0;
    for (const auto& [v, data] : fp.strands) {
        for (Coord c : data.coordinates) mass += c < 0 ? -c : c;
    }
    return mass;
}

}  // namespace

TEST_CASE("coxeter length") {
    const SurfaceSystem& sys = system(0);
    SUBCASE("pure braids have length zero") {
        CHECK(coxeterLength(sys.sd(), MoveSequence{}) == 0);
    }
    SUBCASE("one edge braid has length one") {
        EdgeBraidWord w;
        w.letters.push_back({DirectedEdge{0, 1}, 1});
        CHECK(coxeterLength(sys.sd(), expand(sys.sd(), w)) == 1);
    }
    SUBCASE("3-cycles have length two, against brute force") {
        EdgeBraidWord w;
        w.letters.push_back({DirectedEdge{0, 1}, 1});
        w.letters.push_back({DirectedEdge{1, 2}, 1});
        MoveSequence ms = expand(sys.sd(), w);
        std::vector<VertexId> perm = permutation(sys.sd(), ms);

        // Brute force over transposition products.
        auto applyTransposition = [](std::vector<VertexId> p, int a, int b) {
            for (auto& x : p) {
                if (x == a) {
                    x = b;
                } else if (x == b) {
                    x = a;
                }
            }
            return p;
        };
        std::vector<VertexId> identity{0, 1, 2, 3};
        int shortest = -1;
        std::vector<std::pair<std::vector<VertexId>, int>> frontier{{perm, 0}};
        std::set<std::vector<VertexId>> seen{perm};
        while (!frontier.empty() && shortest < 0) {
            auto [p, depth] = frontier.front();
            frontier.erase(frontier.begin());
            if (p == identity) {
                shortest = depth;
                break;
            }
            for (int a = 0; a < 4; ++a) {
                for (int b = a + 1; b < 4; ++b) {
                    auto q = applyTransposition(p, a, b);
                    if (seen.insert(q).second) frontier.emplace_back(q, depth + 1);
                }
            }
        }
        CHECK(shortest == 2);
        CHECK(coxeterLength(sys.sd(), ms) == 2);
    }
}

TEST_CASE("purify") {
    std::mt19937_64 rng(808);
    SUBCASE("pure input gives the empty word") {
        const SurfaceSystem& sys = system(1);
        PurifyResult p = purify(sys, MoveSequence{});
        CHECK(p.word.letters.empty());
    }
    SUBCASE("single edge braid") {
        const SurfaceSystem& sys = system(0);
        EdgeBraidWord w;
        w.letters.push_back({DirectedEdge{1, 3}, 1});
        MoveSequence ms = expand(sys.sd(), w);
        PurifyResult p = purify(sys, ms);
        CHECK(isPure(sys.sd(), p.pureSequence));
        std::vector<VertexId> wordPerm = permutation(sys.sd(), expand(sys.sd(), p.word));
        CHECK(wordPerm[1] == 3);
        CHECK(wordPerm[3] == 1);
    }
    SUBCASE("random closed sequences become pure") {
        for (int g = 0; g <= 2; ++g) {
            const SurfaceSystem& sys = system(g);
            for (int trial = 0; trial < 15; ++trial) {
                EdgeBraidWord w = randomWord(sys, rng, 6);
                MoveSequence ms = expand(sys.sd(), w);
                PurifyResult p = purify(sys, ms);
                CHECK(isPure(sys.sd(), p.pureSequence));
            }
        }
    }
}

TEST_CASE("unwind rejects bad inputs") {
    const SurfaceSystem& sys = system(1);
    SUBCASE("non-pure") {
        EdgeBraidWord w;
        w.letters.push_back({DirectedEdge{0, 1}, 1});
        CHECK_THROWS_AS(unwind(sys, expand(sys.sd(), w)), NotPureError);
    }
    SUBCASE("unbalanced") {
        MoveSequence ms = basisLoopBraid(sys, 0, 0);
        CHECK_THROWS_AS(unwind(sys, ms), NotBalancedError);
    }
}

TEST_CASE("unwind the empty braid") {
    const SurfaceSystem& sys = system(1);
    UnwindCertificate cert = unwind(sys, MoveSequence{});
    CHECK(cert.status == UnwindStatus::Full);
    CHECK(cert.word.letters.empty());
    CHECK(cert.steps.empty());
}

TEST_CASE("unwind expanded edge words to Full") {
    std::mt19937_64 rng(999);
    for (int g = 0; g <= 2; ++g) {
        const SurfaceSystem& sys = system(g);
        for (int trial = 0; trial < 6; ++trial) {
            EdgeBraidWord w = randomWord(sys, rng, 4);
            MoveSequence ms = expand(sys.sd(), w);
            PurifyResult p = purify(sys, ms);
            UnwindCertificate cert = unwind(sys, p.pureSequence);
            CAPTURE(g);
            CAPTURE(trial);
            CHECK(cert.status == UnwindStatus::Full);
            CHECK(replayCertificate(sys, p.pureSequence, cert));
        }
    }
}

TEST_CASE("unwind a loop-braid commutator") {
    const SurfaceSystem& sys = system(1);
    MoveSequence ms = loopCommutator(sys, 0, 0, 1);
    REQUIRE(isPure(sys.sd(), ms));
    REQUIRE(isBalanced(sys, ms));
    UnwindCertificate cert = unwind(sys, ms);
    CHECK(residualTrivial(cert.residual));
    CHECK(replayCertificate(sys, ms, cert));
}

TEST_CASE("unwind cancels injected basis classes") {
    const SurfaceSystem& sys = system(1);
    MoveSequence up = basisLoopBraid(sys, 2, 0);
    MoveSequence down = basisLoopBraid(sys, 5, 0).reversed();
    MoveSequence ms = MoveSequence::concat(up, down);
    REQUIRE(isPure(sys.sd(), ms));
    REQUIRE(isBalanced(sys, ms));

    UnwindCertificate cert = unwind(sys, ms);
    CHECK(replayCertificate(sys, ms, cert));
    CHECK(cert.residual.omegaClass == std::vector<Coord>{0, 0});
    for (const auto& [v, data] : cert.residual.strands) {
        for (Coord c : data.coordinates) CHECK(c == 0);
    }
    bool sawPair = false;
    for (const UnwindStep& s : cert.steps) {
        if (s.construction == "w_pair") sawPair = true;
    }
    CHECK(sawPair);
}

TEST_CASE("logged cancellations cover the outstanding surface mass") {
    const SurfaceSystem& sys = system(1);
    MoveSequence ms = MoveSequence::concat(basisLoopBraid(sys, 1, 0),
                                           basisLoopBraid(sys, 4, 1).reversed());
    ms.append(basisLoopBraid(sys, 4, 0).reversed());
    ms.append(basisLoopBraid(sys, 1, 1));
    REQUIRE(isBalanced(sys, ms));
    REQUIRE(isPure(sys.sd(), ms));

    UnwindCertificate cert = unwind(sys, ms);
    CHECK(replayCertificate(sys, ms, cert));
    CHECK(coordinateMass(cert.residual) == 0);

    VertexId acc = cert.input.strands.begin()->first;
    long long initialMass = 0;
    for (const auto& [v, data] : cert.input.strands) {
        if (v == acc) continue;
        for (int i = 0; i < 2; ++i) initialMass += std::abs(data.coordinates[i]);
    }
    long long logged = 0;
    for (const UnwindStep& s : cert.steps) {
        if (s.construction == "w_pair") logged += std::abs(s.amount);
    }
    CHECK(logged >= initialMass);
}

TEST_CASE("genus-2 stress: mixed words, pair braids and loop commutators") {
    const SurfaceSystem& sys = system(2);
    std::mt19937_64 rng(20207);
    const auto& loops = sys.homology().basisLoops();
    for (int trial = 0; trial < 10; ++trial) {
        MoveSequence ms = expand(sys.sd(), randomWord(sys, rng, 4));
        // Splice in a w_pair word on a random basis loop.
        const EdgeLoop& loop = *loops[rng() % loops.size()];
        std::vector<VertexId> vs = loop.vertices();
        vs.pop_back();
        VertexId vi = vs[rng() % vs.size()];
        VertexId vj = vs[rng() % vs.size()];
        if (vi != vj) ms.append(expand(sys.sd(), wPair(loop, vi, vj)));
        // And a loop-braid commutator at a random token.
        VertexId tok = static_cast<VertexId>(rng() % sys.base().vertexCount());
        int i = static_cast<int>(rng() % 4), j = static_cast<int>(rng() % 4);
        ms.append(loopCommutator(sys, tok, i, j));

        KernelDecision d = kernelCertificate(sys, ms);
        REQUIRE(d.accepted);
        REQUIRE(d.certificate.has_value());
        const UnwindCertificate& cert = *d.certificate;
        CHECK(isIdentityPermutation(cert.residual.permutation));
        for (Coord c : cert.residual.omegaClass) CHECK(c == 0);
        for (const auto& [v, data] : cert.residual.strands) {
            for (Coord c : data.coordinates) CHECK(c == 0);
        }
        CHECK(replayCertificate(sys, ms, cert));
    }
}

TEST_CASE("kernel certificate") {
    const SurfaceSystem& sys = system(1);
    SUBCASE("rejects braids with nonzero omega") {
        MoveSequence ms = basisLoopBraid(sys, 0, 0);
        KernelDecision d = kernelCertificate(sys, ms);
        CHECK_FALSE(d.accepted);
        CHECK(d.omegaClass == std::vector<Coord>{1, 0});
        CHECK_FALSE(d.certificate.has_value());
    }
    SUBCASE("accepts edge words with a Full certificate") {
        std::mt19937_64 rng(2121);
        for (int trial = 0; trial < 5; ++trial) {
            EdgeBraidWord w = randomWord(sys, rng, 5);
            MoveSequence ms = expand(sys.sd(), w);
            KernelDecision d = kernelCertificate(sys, ms);
            CHECK(d.accepted);
            REQUIRE(d.certificate.has_value());
            CHECK(d.certificate->status == UnwindStatus::Full);
            CHECK(replayCertificate(sys, ms, *d.certificate));
        }
    }
    SUBCASE("genus 0: every closed sequence is accepted and Full") {
        const SurfaceSystem& sphere = system(0);
        std::mt19937_64 rng(31);
        for (int trial = 0; trial < 10; ++trial) {
            MoveSequence ms = randomClosedSequence(sphere, rng, 10);
            KernelDecision d = kernelCertificate(sphere, ms);
            CHECK(d.accepted);  // H1 = 0 forces balance
            REQUIRE(d.certificate.has_value());
            CHECK(d.certificate->status == UnwindStatus::Full);
            CHECK(replayCertificate(sphere, ms, *d.certificate));
        }
    }
}

TEST_CASE("certificate copies replay cleanly") {
    const SurfaceSystem& sys = system(1);
    std::mt19937_64 rng(404);
    MoveSequence ms = randomClosedSequence(sys, rng, 14);
    KernelDecision d = kernelCertificate(sys, ms);
    REQUIRE(d.accepted);  // reversal-closed generator is always balanced
    REQUIRE(d.certificate.has_value());
    UnwindCertificate copy = *d.certificate;
    CHECK(replayCertificate(sys, ms, copy));
    CHECK(coordinateMass(copy.residual) == 0);
}
