#pragma once

#include <map>
#include <optional>
#include <string>

#include "braidhom/braid.hpp"
#include "braidhom/constructions.hpp"

namespace braidhom {

class SimpleLoopSearchExhausted : public Error {
public:
    using Error::Error;
};

struct UnwindStep {
    std::string construction;  // "purify", "w_pair", "w_lambda", "dissolve"
    std::map<std::string, std::string> parameters;
    VertexId token = -1;
    std::string cancelled;  // coordinate description, e.g. "surface[1]" or "link[v5]"
    Coord amount = 0;
};

enum class UnwindStatus { Full, PartialResidue };

/// Reduction certificate: expand(word) . input has the recorded residual
/// fingerprint. Full means the residual is fingerprint-trivial: identity
/// permutation, zero omega, zero strand coordinates, and at most one strand
/// with a nonempty normal form (itself null-homologous).
struct UnwindCertificate {
    BraidFingerprint input;
    EdgeBraidWord word;
    BraidFingerprint residual;
    UnwindStatus status = UnwindStatus::PartialResidue;
    std::vector<UnwindStep> steps;
    std::map<VertexId, FreeWord> residualNormalForms;  // attached when partial
    std::optional<std::string> searchFailure;
};

struct UnwindOptions {
    long long loopSearchBudget = 2'000'000;
};

/// n minus the number of permutation cycles: the transposition length of the
/// induced permutation.
int coxeterLength(const SdSurface& sd, const MoveSequence& ms);

struct PurifyResult {
    EdgeBraidWord word;         // product of q-path words, one per transposition
    MoveSequence pureSequence;  // expand(word) . input
};

/// Left-multiplies q-path braids realizing a transposition factorization of
/// the inverse permutation; the result is pure.
PurifyResult purify(const SurfaceSystem& sys, const MoveSequence& ms);

/// Cancels strand-loop invariants of a pure balanced braid by quasi-edge
/// braids: surface classes via transported w-pair braids into a designated
/// accumulator token, puncture windings via w-lambda braids.
UnwindCertificate unwind(const SurfaceSystem& sys, const MoveSequence& ms, const UnwindOptions& opts = {});

struct KernelDecision {
    bool accepted = false;
    std::vector<Coord> omegaClass;
    std::optional<UnwindCertificate> certificate;
};

/// Rejects braids with nonzero omega; otherwise runs purify + unwind and
/// returns the combined certificate.
KernelDecision kernelCertificate(const SurfaceSystem& sys, const MoveSequence& ms,
                                 const UnwindOptions& opts = {});

/// Re-simulates expand(word) . input and compares against the recorded
/// residual fingerprint.
bool replayCertificate(const SurfaceSystem& sys, const MoveSequence& input, const UnwindCertificate& cert);

bool residualTrivial(const BraidFingerprint& fp);

}  // namespace braidhom
