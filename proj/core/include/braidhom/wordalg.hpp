#pragma once

#include <set>
#include <string>
#include <vector>

namespace braidhom {

/// One letter of a free-group word: either a signed generator or a marked
/// commutator [A,B] of two subwords. Commutators stay marked until reduce()
/// expands them, so rewriting postconditions remain syntactically checkable.
struct FreeLetter {
    bool commutator = false;
    int generator = 0;
    int sign = 1;  // +1 or -1; an inverted commutator flips to [B,A]
    std::vector<FreeLetter> lhs;
    std::vector<FreeLetter> rhs;

    static FreeLetter atom(int gen, int sign = 1) {
        FreeLetter l;
        l.generator = gen;
        l.sign = sign;
        return l;
    }
    static FreeLetter comm(std::vector<FreeLetter> a, std::vector<FreeLetter> b) {
        FreeLetter l;
        l.commutator = true;
        l.lhs = std::move(a);
        l.rhs = std::move(b);
        return l;
    }

    bool operator==(const FreeLetter&) const = default;
};

using FreeWord = std::vector<FreeLetter>;

FreeWord inverse(const FreeWord& w);

/// Expands commutator letters and cancels adjacent inverse pairs; the result
/// contains atoms only and is freely reduced.
FreeWord reduce(const FreeWord& w);

bool freelyEqual(const FreeWord& a, const FreeWord& b);

/// Sum of signed generator occurrences after full expansion, keyed by
/// generator id. Commutators contribute nothing.
std::vector<std::pair<int, long long>> abelianization(const FreeWord& w);

/// True iff the letters drawn from S form one contiguous block (commutator
/// letters never count as S-letters).
bool isSConnected(const FreeWord& w, const std::set<int>& S);

/// Rewrites w into an S-connected word that is freely equal to w, keeps the
/// S-letters in their original order, and only introduces commutators of
/// subwords of w.
FreeWord makeSConnected(const FreeWord& w, const std::set<int>& S);

/// Text form: atoms as names (via the table), inverse suffix "'", commutator
/// letters as "[x y,z]" with space-separated argument words.
std::string formatWord(const FreeWord& w, const std::vector<std::string>& names);
FreeWord parseWord(const std::string& text, std::vector<std::string>& names);

}  // namespace braidhom
