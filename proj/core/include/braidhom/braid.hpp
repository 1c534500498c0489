#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "braidhom/homology.hpp"
#include "braidhom/punctured.hpp"
#include "braidhom/surface.hpp"
#include "braidhom/wordalg.hpp"

namespace braidhom {

class NotClosedError : public Error {
public:
    using Error::Error;
};
class NotPureError : public Error {
public:
    using Error::Error;
};
class NotBalancedError : public Error {
public:
    using Error::Error;
};

class IllegalMoveError : public Error {
public:
    IllegalMoveError(int index, const std::string& what) : Error(what), moveIndex(index) {}
    int moveIndex;
};

class NotAnEdgeError : public Error {
public:
    NotAnEdgeError(int index, const std::string& what) : Error(what), moveIndex(index) {}
    int moveIndex;
};

/// One token hop along an sd edge; legal when `from` is occupied and `to` is
/// free at application time.
struct Move {
    int from = -1;
    int to = -1;
    bool operator==(const Move&) const = default;
};

/// Ordered token moves applied from the standard occupancy (all original
/// vertices). A value type; the surface it refers to is passed alongside.
struct MoveSequence {
    std::vector<Move> moves;

    void append(const MoveSequence& other) {
        moves.insert(moves.end(), other.moves.begin(), other.moves.end());
    }
    void prepend(const MoveSequence& other) {
        moves.insert(moves.begin(), other.moves.begin(), other.moves.end());
    }
    MoveSequence reversed() const {
        MoveSequence out;
        out.moves.reserve(moves.size());
        for (auto it = moves.rbegin(); it != moves.rend(); ++it) out.moves.push_back({it->to, it->from});
        return out;
    }
    static MoveSequence concat(const MoveSequence& a, const MoveSequence& b) {
        MoveSequence out = a;
        out.append(b);
        return out;
    }
    bool operator==(const MoveSequence&) const = default;
};

struct Simulation {
    /// Final sd position per token (tokens are named by their start vertex).
    std::vector<int> tokenPosition;
    /// Full walk per token, starting at its home vertex.
    std::vector<std::vector<int>> walks;
    bool closed = false;
};

/// Letter b(e)^{sign} of a word in directed-edge generators.
struct EdgeBraidLetter {
    DirectedEdge edge;
    int sign = 1;
    bool operator==(const EdgeBraidLetter&) const = default;
};

struct EdgeBraidWord {
    std::vector<EdgeBraidLetter> letters;

    EdgeBraidWord inverse() const {
        EdgeBraidWord out;
        out.letters.reserve(letters.size());
        for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
            out.letters.push_back({it->edge, -it->sign});
        }
        return out;
    }
    void append(const EdgeBraidWord& other) {
        letters.insert(letters.end(), other.letters.begin(), other.letters.end());
    }
    static EdgeBraidWord concat(const EdgeBraidWord& a, const EdgeBraidWord& b) {
        EdgeBraidWord out = a;
        out.append(b);
        return out;
    }
    /// w^n (inverse word repeated for negative n).
    EdgeBraidWord power(long long n) const {
        EdgeBraidWord base = n >= 0 ? *this : inverse();
        EdgeBraidWord out;
        for (long long i = 0; i < (n >= 0 ? n : -n); ++i) out.append(base);
        return out;
    }
    bool operator==(const EdgeBraidWord&) const = default;
};

/// Shared per-surface state: the subdivision, the closed homology basis and
/// a cache of punctured complexes. Immutable after construction; the cache
/// is internally synchronized.
class SurfaceSystem {
public:
    explicit SurfaceSystem(SimplicialSurface base);

    const SimplicialSurface& base() const { return sd_.base(); }
    const SdSurface& sd() const { return sd_; }
    const HomologyBasis& homology() const { return homology_; }
    int genus() const { return sd_.base().genus(); }

    std::shared_ptr<const PuncturedComplex> punctured(std::vector<VertexId> punctures) const;

private:
    SdSurface sd_;
    HomologyBasis homology_;
    mutable std::mutex mutex_;
    mutable std::map<std::vector<VertexId>, std::shared_ptr<const PuncturedComplex>> cache_;
};

/// Runs the sequence from the standard occupancy. Throws IllegalMoveError /
/// NotAnEdgeError with the offending move index.
Simulation simulate(const SdSurface& sd, const MoveSequence& ms);

bool isClosed(const SdSurface& sd, const MoveSequence& ms);

/// Start vertex -> end vertex map of a closed sequence.
std::vector<VertexId> permutation(const SdSurface& sd, const MoveSequence& ms);

bool isIdentityPermutation(const std::vector<VertexId>& perm);

/// Signed sum of traversed sd edges; a cycle whenever the sequence is closed.
Chain1 totalChain(const SdSurface& sd, const MoveSequence& ms);

/// Closed-surface homology class of the total chain (length 2g).
std::vector<Coord> omega(const SurfaceSystem& sys, const MoveSequence& ms);

bool isBalanced(const SurfaceSystem& sys, const MoveSequence& ms);
bool isPure(const SdSurface& sd, const MoveSequence& ms);

/// Expansion of an edge-braid word into token moves: b(v0,v1) routes v0
/// through the barycenter of the triangle inducing (v0,v1) while v1 passes
/// through the edge midpoint; the inverse letter uses the other triangle.
MoveSequence expand(const SdSurface& sd, const EdgeBraidWord& word);

struct StrandData {
    std::vector<int> walk;          // closed walk at the token's home vertex
    std::vector<Coord> coordinates;  // in H1 of the complex punctured at the constants
    /// Reduced word over the punctured spine generators. For an unpunctured
    /// complex this is only available on genus 0 (trivial group) and genus 1
    /// (abelian, written in the closed basis); otherwise nullopt.
    std::optional<FreeWord> normalForm;
};

struct BraidFingerprint {
    std::vector<VertexId> permutation;
    std::vector<Coord> omegaClass;
    std::vector<VertexId> constants;  // tokens that never move, sorted
    bool pure = false;
    std::map<VertexId, StrandData> strands;  // moving tokens; pure braids only
};

/// Invariant certificate: permutation, omega class, constant set, and for
/// pure braids the per-strand loop invariants.
BraidFingerprint fingerprint(const SurfaceSystem& sys, const MoveSequence& ms);

/// Exact equality of the recorded invariants.
bool sameFingerprint(const BraidFingerprint& a, const BraidFingerprint& b);

}  // namespace braidhom
