#include <doctest.h>

#include <random>

#include "braidhom/wordalg.hpp"

using namespace braidhom;

namespace {

FreeWord atoms(std::initializer_list<std::pair<int, int>> letters) {
    FreeWord w;
    for (auto [g, s] : letters) w.push_back(FreeLetter::atom(g, s));
    return w;
}

FreeWord randomWord(std::mt19937_64& rng, int generators, int length) {
    std::uniform_int_distribution<int> gen(0, generators - 1);
    std::uniform_int_distribution<int> sign(0, 1);
    FreeWord w;
    for (int i = 0; i < length; ++i) w.push_back(FreeLetter::atom(gen(rng), sign(rng) ? 1 : -1));
    return w;
}

std::vector<FreeLetter> sLetters(const FreeWord& w, const std::set<int>& S) {
    std::vector<FreeLetter> out;
    for (const FreeLetter& l : w) {
        if (!l.commutator && S.count(l.generator)) out.push_back(l);
    }
    return out;
}

}  // namespace

TEST_CASE("free reduction") {
    CHECK(reduce(atoms({{0, 1}, {0, -1}})).empty());
    CHECK(reduce(atoms({{0, 1}, {1, 1}, {1, -1}, {0, 1}})) == atoms({{0, 1}, {0, 1}}));
    // Expanding [a,b] then appending b a reduces to a b.
    FreeWord w{FreeLetter::comm(atoms({{0, 1}}), atoms({{1, 1}}))};
    w.push_back(FreeLetter::atom(1, 1));
    w.push_back(FreeLetter::atom(0, 1));
    CHECK(reduce(w) == atoms({{0, 1}, {1, 1}}));
}

TEST_CASE("inverse and equality") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        FreeWord w = randomWord(rng, 5, 12);
        FreeWord ww = w;
        FreeWord inv = inverse(w);
        ww.insert(ww.end(), inv.begin(), inv.end());
        CHECK(reduce(ww).empty());
        CHECK(freelyEqual(w, w));
    }
}

TEST_CASE("S-connectivity predicate") {
    std::set<int> S{2, 4};
    CHECK(isSConnected(atoms({{1, 1}, {3, 1}, {0, 1}}), S));           // no S letters
    CHECK(isSConnected(atoms({{1, 1}, {2, 1}, {4, 1}}), S));           // adjacent block
    CHECK_FALSE(isSConnected(atoms({{2, 1}, {1, 1}, {4, 1}}), S));     // split block
    CHECK(isSConnected(atoms({{2, -1}, {4, 1}, {2, 1}, {0, 1}}), S));  // signs irrelevant
}

TEST_CASE("worked rewriting example") {
    // w = a1 a3 a2 a5 a4 with S = {a2, a4} becomes a1 a3 [a2,a5] a5 a2 a4.
    std::vector<std::string> names;
    FreeWord w = parseWord("a1 a3 a2 a5 a4", names);
    std::set<int> S;
    for (int i = 0; i < static_cast<int>(names.size()); ++i) {
        if (names[i] == "a2" || names[i] == "a4") S.insert(i);
    }
    FreeWord star = makeSConnected(w, S);
    CHECK(formatWord(star, names) == "a1 a3 [a2,a5] a5 a2 a4");
    CHECK(isSConnected(star, S));
    CHECK(freelyEqual(star, w));
}

TEST_CASE("single S-letter words are unchanged") {
    std::set<int> S{0};
    FreeWord w = atoms({{1, 1}, {0, -1}, {2, 1}});
    CHECK(makeSConnected(w, S) == w);
    FreeWord none = atoms({{1, 1}, {2, 1}});
    CHECK(makeSConnected(none, S) == none);
}

TEST_CASE("rewriting postconditions on random words") {
    std::mt19937_64 rng(20240817);
    for (int trial = 0; trial < 1000; ++trial) {
        FreeWord w = randomWord(rng, 8, 1 + static_cast<int>(rng() % 14));
        std::set<int> S;
        while (S.empty()) {
            for (int g = 0; g < 8; ++g) {
                if (rng() % 3 == 0) S.insert(g);
            }
        }
        FreeWord star = makeSConnected(w, S);
        CHECK(isSConnected(star, S));
        CHECK(freelyEqual(star, w));
        // The S-letters keep their order and signs.
        auto before = sLetters(w, S);
        auto after = sLetters(star, S);
        CHECK(before == after);
        // Every letter is a letter of w or a commutator marker.
        for (const FreeLetter& l : star) {
            if (!l.commutator) {
                bool found = false;
                for (const FreeLetter& orig : w) {
                    if (!orig.commutator && orig.generator == l.generator && orig.sign == l.sign) found = true;
                }
                CHECK(found);
            }
        }
    }
}

TEST_CASE("rewriting is idempotent up to free equality") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 100; ++trial) {
        FreeWord w = randomWord(rng, 6, 10);
        std::set<int> S{0, 3};
        FreeWord once = makeSConnected(w, S);
        FreeWord twice = makeSConnected(once, S);
        CHECK(isSConnected(twice, S));
        CHECK(freelyEqual(once, twice));
    }
}

TEST_CASE("repeated S-generators stay connected") {
    // a2 x a2 y a4 with S = {a2, a4}: the repeated a2 must join the block.
    std::vector<std::string> names;
    FreeWord w = parseWord("a2 x a2 y a4", names);
    std::set<int> S;
    for (int i = 0; i < static_cast<int>(names.size()); ++i) {
        if (names[i] == "a2" || names[i] == "a4") S.insert(i);
    }
    FreeWord star = makeSConnected(w, S);
    CHECK(isSConnected(star, S));
    CHECK(freelyEqual(star, w));
}

TEST_CASE("word parsing and formatting round trip") {
    std::vector<std::string> names;
    FreeWord w = parseWord("a b' [c,d e'] f", names);
    CHECK(w.size() == 4);
    CHECK(w[1].sign == -1);
    CHECK(w[2].commutator);
    CHECK(formatWord(w, names) == "a b' [c,d e'] f");
    // Abelianization kills commutators.
    auto ab = abelianization(w);
    REQUIRE(ab.size() == 3);
}
