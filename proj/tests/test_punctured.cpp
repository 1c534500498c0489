#include <doctest.h>

#include <random>

#include "braidhom/punctured.hpp"
#include "braidhom/wordalg.hpp"

using namespace braidhom;

namespace {

struct Setup {
    SdSurface sd;
    HomologyBasis basis;
    explicit Setup(int genus) : sd(subdivide(buildStandardSurface(genus))), basis(sd) {}
};

std::vector<Coord> unit(int rank, int i) {
    std::vector<Coord> e(rank, 0);
    e[i] = 1;
    return e;
}

}  // namespace

TEST_CASE("punctured ranks 2g + #C - 1") {
    for (int g = 0; g <= 3; ++g) {
        Setup s(g);
        int maxPunctures = std::min(3, s.sd.base().vertexCount() - 1);
        for (int k = 1; k <= maxPunctures; ++k) {
            CAPTURE(g);
            CAPTURE(k);
            std::vector<VertexId> punctures;
            for (int i = 0; i < k; ++i) punctures.push_back(i);
            PuncturedComplex pc(s.sd, s.basis, punctures);
            CHECK(pc.rank() == 2 * g + k - 1);
            CHECK(pc.spineRank() == pc.rank());
            CHECK(pc.dependentPuncture() == punctures.back());
        }
        // Empty puncture set: the closed complex.
        PuncturedComplex closed(s.sd, s.basis, {});
        CHECK(closed.rank() == 2 * g);
        CHECK_FALSE(closed.hasPunctures());
    }
}

TEST_CASE("puncturing every vertex is rejected") {
    Setup s(0);
    std::vector<VertexId> all{0, 1, 2, 3};
    CHECK_THROWS_AS(PuncturedComplex(s.sd, s.basis, all), Error);
}

TEST_CASE("link loops carry the designated coordinates") {
    SUBCASE("single puncture on the torus has the commutator class") {
        Setup s(1);
        PuncturedComplex pc(s.sd, s.basis, {3});
        CHECK(pc.rank() == 2);
        std::vector<Coord> c = pc.coordinates(pc.linkWalk(3));
        CHECK(c == std::vector<Coord>{0, 0});
    }
    SUBCASE("two punctures on the torus: link of the first is e_3") {
        Setup s(1);
        PuncturedComplex pc(s.sd, s.basis, {1, 4});
        CHECK(pc.rank() == 3);
        CHECK(pc.dependentPuncture() == 4);
        CHECK(pc.coordinates(pc.linkWalk(1)) == unit(3, 2));
        // The dependent link is minus the sum of the others.
        std::vector<Coord> dep = pc.coordinates(pc.linkWalk(4));
        CHECK(dep == std::vector<Coord>{0, 0, -1});
    }
    SUBCASE("three punctures on the sphere") {
        Setup s(0);
        PuncturedComplex pc(s.sd, s.basis, {0, 1, 2});
        CHECK(pc.rank() == 2);
        CHECK(pc.coordinates(pc.linkWalk(0)) == unit(2, 0));
        CHECK(pc.coordinates(pc.linkWalk(1)) == unit(2, 1));
        std::vector<Coord> dep = pc.coordinates(pc.linkWalk(2));
        CHECK(dep == std::vector<Coord>{-1, -1});
    }
}

TEST_CASE("winding numbers") {
    Setup s(1);
    PuncturedComplex pc(s.sd, s.basis, {2, 5});
    SUBCASE("link loop winds once") {
        CHECK(pc.windingNumber(pc.linkWalk(2), 2) == 1);
    }
    SUBCASE("reversed link loop winds minus once") {
        std::vector<int> walk = pc.linkWalk(2);
        std::reverse(walk.begin(), walk.end());
        CHECK(pc.windingNumber(walk, 2) == -1);
    }
    SUBCASE("subdivision triangle boundaries wind zero") {
        // Pick a pc triangle away from the punctures.
        for (int t = 0; t < s.sd.triangleCount(); ++t) {
            const Triangle& tri = s.sd.sdTriangles()[t];
            bool inside = true;
            for (VertexId v : tri.v) {
                if (!pc.containsSdVertex(v)) inside = false;
            }
            if (!inside) continue;
            std::vector<int> walk{tri.v[0], tri.v[1], tri.v[2], tri.v[0]};
            CHECK(pc.windingNumber(walk, 2) == 0);
            break;
        }
    }
    SUBCASE("dependent puncture is rejected as a target") {
        CHECK_THROWS_AS(pc.windingNumber(pc.linkWalk(2), 5), DependentPunctureError);
    }
    SUBCASE("loops touching a puncture star are rejected") {
        std::vector<int> bad = pc.linkWalk(2);
        // Route the loop through the puncture itself.
        bad.insert(bad.begin(), s.sd.originalVertex(2));
        bad.push_back(s.sd.originalVertex(2));
        CHECK_THROWS_AS(pc.coordinates(bad), LoopOutsideComplexError);
    }
}

TEST_CASE("collapse to spine") {
    SUBCASE("punctured sphere collapses to a rank-0 spine") {
        Setup s(0);
        PuncturedComplex pc(s.sd, s.basis, {0});
        CHECK(pc.spineRank() == 0);
        // Every loop in the complex reduces to the empty word.
        std::vector<int> walk = pc.linkWalk(0);
        CHECK(pc.loopNormalForm(walk).empty());
    }
    SUBCASE("punctured torus has spine rank 2, twice-punctured rank 3") {
        Setup s(1);
        CHECK(PuncturedComplex(s.sd, s.basis, {0}).spineRank() == 2);
        CHECK(PuncturedComplex(s.sd, s.basis, {0, 6}).spineRank() == 3);
    }
    SUBCASE("collapse requires punctures") {
        Setup s(1);
        PuncturedComplex closed(s.sd, s.basis, {});
        CHECK_THROWS_AS(closed.spine(), Error);
    }
}

TEST_CASE("loop normal forms") {
    Setup s(1);
    PuncturedComplex pc(s.sd, s.basis, {1, 3});

    SUBCASE("subdivision triangle boundary reduces to the empty word") {
        for (int t = 0; t < s.sd.triangleCount(); ++t) {
            const Triangle& tri = s.sd.sdTriangles()[t];
            bool inside = true;
            for (VertexId v : tri.v) {
                if (!pc.containsSdVertex(v)) inside = false;
            }
            if (!inside) continue;
            std::vector<int> walk{tri.v[0], tri.v[1], tri.v[2], tri.v[0]};
            CHECK(pc.loopNormalForm(walk).empty());
            break;
        }
    }
    SUBCASE("loop times inverse reduces to the empty word") {
        std::vector<int> walk = pc.linkWalk(1);
        std::vector<int> both = walk;
        both.insert(both.end(), walk.rbegin() + 1, walk.rend());
        CHECK(pc.loopNormalForm(both).empty());
    }
    SUBCASE("backtrack insertion does not change the normal form") {
        std::vector<int> walk = pc.linkWalk(1);
        FreeWord nf = pc.loopNormalForm(walk);
        // Insert an out-and-back step at position 1.
        int mid = walk[1];
        int nb = -1;
        for (int x : s.sd.sdNeighbors(mid)) {
            if (pc.containsSdVertex(x) && pc.containsSdEdge(mid, x)) {
                nb = x;
                break;
            }
        }
        REQUIRE(nb >= 0);
        std::vector<int> padded(walk.begin(), walk.begin() + 2);
        padded.push_back(nb);
        padded.push_back(mid);
        padded.insert(padded.end(), walk.begin() + 2, walk.end());
        CHECK(pc.loopNormalForm(padded) == nf);
    }
    SUBCASE("link loop of a puncture is nonempty with abelianization e_3") {
        FreeWord nf = pc.loopNormalForm(pc.linkWalk(1));
        CHECK_FALSE(nf.empty());
        // Abelianize through the generator coordinates.
        std::vector<Coord> total(pc.rank(), 0);
        for (auto [gen, count] : abelianization(nf)) {
            std::vector<Coord> g = pc.coordinates(pc.spineGeneratorWalk(gen));
            for (int i = 0; i < pc.rank(); ++i) total[i] += count * g[i];
        }
        CHECK(total == unit(3, 2));
    }
}

TEST_CASE("normal form abelianization equals cycle coordinates") {
    std::mt19937_64 rng(314);
    Setup s(1);
    PuncturedComplex pc(s.sd, s.basis, {0, 2});

    for (int trial = 0; trial < 30; ++trial) {
        // Random closed walk: wander then return along the reverse path.
        int start = -1;
        for (int v = 0; v < s.sd.vertexCount(); ++v) {
            if (pc.containsSdVertex(v)) {
                start = v;
                break;
            }
        }
        std::vector<int> walk{start};
        for (int step = 0; step < 14; ++step) {
            std::vector<int> options;
            for (int x : s.sd.sdNeighbors(walk.back())) {
                if (pc.containsSdVertex(x) && pc.containsSdEdge(walk.back(), x)) options.push_back(x);
            }
            walk.push_back(options[rng() % options.size()]);
        }
        std::vector<int> loop = walk;
        loop.insert(loop.end(), walk.rbegin() + 1, walk.rend());
        // Splice in a generator lap so the class is usually nontrivial.
        std::vector<int> gen = pc.spineGeneratorWalk(static_cast<int>(rng() % pc.spineRank()));
        std::vector<int> conn = pc.connectingWalk(loop.back(), gen.front());
        std::vector<int> full = loop;
        full.insert(full.end(), conn.begin() + 1, conn.end());
        full.insert(full.end(), gen.begin() + 1, gen.end());
        full.insert(full.end(), conn.rbegin() + 1, conn.rend());

        FreeWord nf = pc.loopNormalForm(full);
        std::vector<Coord> total(pc.rank(), 0);
        for (auto [g, count] : abelianization(nf)) {
            std::vector<Coord> gc = pc.coordinates(pc.spineGeneratorWalk(g));
            for (int i = 0; i < pc.rank(); ++i) total[i] += count * gc[i];
        }
        CHECK(total == pc.coordinates(full));
        // Empty normal form forces zero coordinates.
        if (nf.empty()) {
            for (Coord c : pc.coordinates(full)) CHECK(c == 0);
        }
    }
}

TEST_CASE("basis representatives have identity coordinates") {
    for (int g = 0; g <= 2; ++g) {
        Setup s(g);
        std::vector<VertexId> punctures{0, 1};
        PuncturedComplex pc(s.sd, s.basis, punctures);
        for (int i = 0; i < pc.rank(); ++i) {
            CAPTURE(g);
            CAPTURE(i);
            std::vector<int> rep = pc.basisRepresentative(i);
            CHECK(pc.coordinates(rep) == unit(pc.rank(), i));
        }
    }
}

TEST_CASE("first coordinate block agrees with the closed surface") {
    std::mt19937_64 rng(777);
    Setup s(2);
    PuncturedComplex pc(s.sd, s.basis, {0, 1, 2});
    for (int i = 0; i < pc.rank(); ++i) {
        std::vector<int> rep = pc.basisRepresentative(i);
        std::vector<Coord> full = pc.coordinates(rep);
        std::vector<Coord> closed = s.basis.coordinatesOfWalk(rep);
        for (int j = 0; j < 2 * 2; ++j) CHECK(closed[j] == full[j]);
    }
}

namespace {

int snfRankOf(const IMatrix& m) {
    SnfResult snf = smithNormalForm(m);
    int k = std::min(rowCount(snf.d), colCount(snf.d));
    int r = 0;
    for (int i = 0; i < k; ++i) {
        if (snf.d[i][i] != 0) ++r;
    }
    return r;
}

// Over-Z solvability of d2 x = z via the Smith form of d2.
bool boundsOverZ(const IMatrix& d2, const std::vector<Edge>& edges, const SdSurface& sd, const Chain1& z) {
    SnfResult snf = smithNormalForm(d2);
    // Restrict z to the complex's edge rows, in order.
    std::vector<BigInt> rhs(edges.size());
    for (size_t i = 0; i < edges.size(); ++i) rhs[i] = z[sd.sdEdgeIndex(edges[i].a, edges[i].b)];
    // u * z must be divisible by the diagonal, zero past the rank.
    std::vector<BigInt> uz(rowCount(snf.u), 0);
    for (int i = 0; i < rowCount(snf.u); ++i) {
        for (int j = 0; j < colCount(snf.u); ++j) uz[i] += snf.u[i][j] * rhs[j];
    }
    int k = std::min(rowCount(snf.d), colCount(snf.d));
    for (int i = 0; i < rowCount(snf.u); ++i) {
        BigInt d = i < k ? snf.d[i][i] : BigInt(0);
        if (d == 0) {
            if (uz[i] != 0) return false;
        } else if (uz[i] % d != 0) {
            return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("punctured ranks and link classes against the SNF oracle") {
    struct Case {
        int genus;
        std::vector<VertexId> punctures;
    };
    for (const Case& c : {Case{0, {1}}, Case{1, {2}}, Case{1, {1, 4}}}) {
        CAPTURE(c.genus);
        Setup s(c.genus);
        PuncturedComplex pc(s.sd, s.basis, c.punctures);
        ChainComplex cc = boundaryMatrices(complexOf(pc));

        // rank H1 = dim ker d1 - rank d2.
        int kerD1 = colCount(cc.d1) - snfRankOf(cc.d1);
        int rank = kerD1 - snfRankOf(cc.d2);
        CHECK(rank == pc.rank());

        // Link cycles bound exactly when their class vanishes.
        for (VertexId p : c.punctures) {
            Chain1 link = linkChainOf(pc, p);
            bool zeroClass = true;
            for (Coord x : pc.coordinates(pc.linkWalk(p))) {
                if (x != 0) zeroClass = false;
            }
            CHECK(boundsOverZ(cc.d2, cc.edges, s.sd, link) == zeroClass);
        }
    }
}

TEST_CASE("sum of link classes vanishes") {
    for (int g = 0; g <= 2; ++g) {
        Setup s(g);
        std::vector<VertexId> punctures{0, 1, 2};
        PuncturedComplex pc(s.sd, s.basis, punctures);
        std::vector<Coord> sum(pc.rank(), 0);
        for (VertexId p : punctures) {
            std::vector<Coord> c = pc.coordinates(pc.linkWalk(p));
            for (int i = 0; i < pc.rank(); ++i) sum[i] += c[i];
        }
        for (Coord c : sum) CHECK(c == 0);
    }
}
