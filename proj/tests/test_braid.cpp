#include <doctest.h>

#include <map>
#include <memory>
#include <random>

#include "braidhom/braid.hpp"

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

EdgeBraidWord letter(VertexId a, VertexId b, int sign = 1) {
    EdgeBraidWord w;
    w.letters.push_back({DirectedEdge{a, b}, sign});
    return w;
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

// Random legal closed sequence: a random legal walk followed by its reverse.
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

}  // namespace

TEST_CASE("expansion of the empty word") {
    const SurfaceSystem& sys = system(0);
    MoveSequence ms = expand(sys.sd(), EdgeBraidWord{});
    CHECK(ms.moves.empty());
    Simulation sim = simulate(sys.sd(), ms);
    CHECK(sim.closed);
    for (auto& walk : sim.walks) CHECK(walk.size() == 1);
}

TEST_CASE("single edge braid swaps its endpoints in four moves") {
    const SurfaceSystem& sys = system(0);
    MoveSequence ms = expand(sys.sd(), letter(0, 1));
    CHECK(ms.moves.size() == 4);
    std::vector<VertexId> perm = permutation(sys.sd(), ms);
    CHECK(perm[0] == 1);
    CHECK(perm[1] == 0);
    CHECK(perm[2] == 2);
    CHECK(perm[3] == 3);

    Simulation sim = simulate(sys.sd(), ms);
    // Token 0 routes through the plus triangle's barycenter.
    int bary = sys.sd().barycenter(sys.sd().plusTriangle({0, 1}));
    REQUIRE(sim.walks[0].size() == 3);
    CHECK(sim.walks[0][1] == bary);
    CHECK(sim.walks[0][2] == sys.sd().originalVertex(1));
}

TEST_CASE("b_e times its inverse is pure with null strand loops") {
    const SurfaceSystem& sys = system(1);
    EdgeBraidWord w = letter(2, 5);
    w.append(letter(2, 5, -1));
    MoveSequence ms = expand(sys.sd(), w);
    CHECK(ms.moves.size() == 8);
    BraidFingerprint fp = fingerprint(sys, ms);
    CHECK(fp.pure);
    for (Coord c : fp.omegaClass) CHECK(c == 0);
    for (const auto& [v, data] : fp.strands) {
        for (Coord c : data.coordinates) CHECK(c == 0);
        REQUIRE(data.normalForm.has_value());
        CHECK(data.normalForm->empty());
    }
}

TEST_CASE("illegal moves are reported with their index") {
    const SurfaceSystem& sys = system(0);
    SUBCASE("originals are not sd-adjacent") {
        MoveSequence ms;
        ms.moves.push_back({sys.sd().originalVertex(0), sys.sd().originalVertex(1)});
        CHECK_THROWS_AS(simulate(sys.sd(), ms), NotAnEdgeError);
    }
    SUBCASE("from an empty vertex") {
        MoveSequence ms;
        int mid = sys.sd().midpoint(Edge(0, 1));
        ms.moves.push_back({mid, sys.sd().barycenter(sys.sd().plusTriangle({0, 1}))});
        try {
            simulate(sys.sd(), ms);
            FAIL("expected IllegalMoveError");
        } catch (const IllegalMoveError& e) {
            CHECK(e.moveIndex == 0);
        }
    }
    SUBCASE("occupied target") {
        int mid = sys.sd().midpoint(Edge(0, 1));
        MoveSequence ms;
        ms.moves.push_back({sys.sd().originalVertex(0), mid});
        ms.moves.push_back({mid, sys.sd().originalVertex(0)});
        ms.moves.push_back({sys.sd().originalVertex(1), mid});
        ms.moves.push_back({mid, sys.sd().originalVertex(0)});
        try {
            simulate(sys.sd(), ms);
            FAIL("expected IllegalMoveError");
        } catch (const IllegalMoveError& e) {
            CHECK(e.moveIndex == 3);
        }
    }
}

TEST_CASE("b_e squared is pure") {
    const SurfaceSystem& sys = system(1);
    EdgeBraidWord w = letter(3, 6);
    w.append(letter(3, 6));
    CHECK(isPure(sys.sd(), expand(sys.sd(), w)));
}

TEST_CASE("every edge braid induces the endpoint transposition") {
    for (int g = 0; g <= 1; ++g) {
        const SurfaceSystem& sys = system(g);
        for (const Edge& e : sys.base().edges()) {
            for (DirectedEdge d : {DirectedEdge{e.a, e.b}, DirectedEdge{e.b, e.a}}) {
                EdgeBraidWord w;
                w.letters.push_back({d, +1});
                std::vector<VertexId> perm = permutation(sys.sd(), expand(sys.sd(), w));
                for (VertexId v = 0; v < sys.base().vertexCount(); ++v) {
                    VertexId expected = v == e.a ? e.b : (v == e.b ? e.a : v);
                    CHECK(perm[v] == expected);
                }
            }
        }
    }
}

TEST_CASE("permutation requires closure") {
    const SurfaceSystem& sys = system(0);
    MoveSequence ms;
    ms.moves.push_back({sys.sd().originalVertex(0), sys.sd().midpoint(Edge(0, 1))});
    CHECK_THROWS_AS(permutation(sys.sd(), ms), NotClosedError);
    CHECK_FALSE(isClosed(sys.sd(), ms));
}

TEST_CASE("total chain") {
    const SurfaceSystem& sys = system(1);
    std::mt19937_64 rng(17);

    SUBCASE("closed sequences have cycle chains") {
        for (int trial = 0; trial < 50; ++trial) {
            MoveSequence ms = randomClosedSequence(sys, rng, 1 + trial % 20);
            REQUIRE(isClosed(sys.sd(), ms));
            CHECK(isCycle(sys.sd(), totalChain(sys.sd(), ms)));
        }
    }
    SUBCASE("single move boundary") {
        MoveSequence ms;
        int mid = sys.sd().midpoint(Edge(0, 1));
        ms.moves.push_back({sys.sd().originalVertex(0), mid});
        Chain1 z = totalChain(sys.sd(), ms);
        CHECK_FALSE(isCycle(sys.sd(), z));
    }
    SUBCASE("sequence followed by its reverse cancels") {
        MoveSequence ms = randomClosedSequence(sys, rng, 10);
        MoveSequence both = MoveSequence::concat(ms, ms.reversed());
        Chain1 z = totalChain(sys.sd(), both);
        for (Coord c : z) CHECK(c == 0);
    }
}

TEST_CASE("omega vanishes on edge words") {
    for (int g = 0; g <= 2; ++g) {
        const SurfaceSystem& sys = system(g);
        std::mt19937_64 rng(100 + g);
        for (int trial = 0; trial < 20; ++trial) {
            EdgeBraidWord w = randomWord(sys, rng, 1 + static_cast<int>(rng() % 10));
            MoveSequence ms = expand(sys.sd(), w);
            CHECK(isBalanced(sys, ms));
        }
    }
}

TEST_CASE("omega is additive and conjugation-invariant") {
    const SurfaceSystem& sys = system(1);
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
        MoveSequence a = randomClosedSequence(sys, rng, 8);
        MoveSequence b = randomClosedSequence(sys, rng, 8);
        std::vector<Coord> wa = omega(sys, a);
        std::vector<Coord> wb = omega(sys, b);
        std::vector<Coord> wab = omega(sys, MoveSequence::concat(a, b));
        for (size_t i = 0; i < wa.size(); ++i) CHECK(wab[i] == wa[i] + wb[i]);

        // Reversal negates.
        std::vector<Coord> wrev = omega(sys, a.reversed());
        for (size_t i = 0; i < wa.size(); ++i) CHECK(wrev[i] == -wa[i]);

        // Conjugation preserves.
        MoveSequence conj = MoveSequence::concat(MoveSequence::concat(b, a), b.reversed());
        CHECK(omega(sys, conj) == wa);
    }
}

TEST_CASE("expansion legality for 1000 random words across genera") {
    std::mt19937_64 rng(2025);
    for (int g = 0; g <= 2; ++g) {
        const SurfaceSystem& sys = system(g);
        int trials = g == 2 ? 200 : 400;
        for (int trial = 0; trial < trials; ++trial) {
            EdgeBraidWord w = randomWord(sys, rng, 1 + static_cast<int>(rng() % 12));
            MoveSequence ms = expand(sys.sd(), w);
            Simulation sim = simulate(sys.sd(), ms);  // throws on any illegal prefix
            CHECK(sim.closed);
        }
    }
}

TEST_CASE("fingerprint of the empty braid") {
    const SurfaceSystem& sys = system(1);
    BraidFingerprint fp = fingerprint(sys, MoveSequence{});
    CHECK(fp.pure);
    CHECK(isIdentityPermutation(fp.permutation));
    for (Coord c : fp.omegaClass) CHECK(c == 0);
    CHECK(static_cast<int>(fp.constants.size()) == sys.base().vertexCount());
    CHECK(fp.strands.empty());
}

TEST_CASE("fingerprint strand classes sum to omega") {
    const SurfaceSystem& sys = system(1);
    std::mt19937_64 rng(31337);
    int checked = 0;
    for (int trial = 0; trial < 25; ++trial) {
        MoveSequence ms = randomClosedSequence(sys, rng, 12);
        if (!isPure(sys.sd(), ms)) continue;
        BraidFingerprint fp = fingerprint(sys, ms);
        std::vector<Coord> sum(fp.omegaClass.size(), 0);
        for (const auto& [v, data] : fp.strands) {
            for (size_t i = 0; i < sum.size(); ++i) sum[i] += data.coordinates[i];
        }
        CHECK(sum == fp.omegaClass);
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("fingerprint comparison") {
    const SurfaceSystem& sys = system(0);
    EdgeBraidWord w = letter(0, 1);
    MoveSequence a = expand(sys.sd(), w);
    MoveSequence b = expand(sys.sd(), w);
    CHECK(sameFingerprint(fingerprint(sys, a), fingerprint(sys, b)));
    CHECK_FALSE(sameFingerprint(fingerprint(sys, a), fingerprint(sys, expand(sys.sd(), letter(0, 2)))));
}
