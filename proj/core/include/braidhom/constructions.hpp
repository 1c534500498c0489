#pragma once

#include "braidhom/braid.hpp"

namespace braidhom {

/// Transposition braid along a simple path: b_{e1}..b_{ek} b_{e_{k-1}}^{-1}..b_{e1}^{-1}.
/// Swaps the endpoints and leaves every other token fixed.
EdgeBraidWord qPath(const EdgePath& path);

/// Cyclic product of the loop's edge braids starting at position i; the
/// token based at vertex i travels once around the loop.
EdgeBraidWord loopRotation(const EdgeLoop& loop, int startIndex);

/// Pure braid whose strand loops are +loop at vi and -loop at vj, trivial
/// elsewhere. The rotation start and the fix-up segment are chosen so the
/// result is pure; vj is reached by conjugating along the loop.
EdgeBraidWord wPair(const EdgeLoop& loop, VertexId vi, VertexId vj);

/// b_{e1}..b_{e_{k-1}} b_{ek}^{-2} b_{e_{k-1}}..b_{e1} along a simple path;
/// the source strand winds once around the target endpoint.
EdgeBraidWord wLambda(const EdgePath& path);

/// The six-letter word b_{e0} b_{e1} b_{e0} b_{e2} b_{e0} b_{e2} attached to
/// the two triangles around the shared directed edge (v0, v2).
EdgeBraidWord quadLoop(const SdSurface& sd, const DirectedEdge& shared);

struct QuadConfiguration {
    VertexId v0, v1, v2, v3;
    DirectedEdge e0, e1, e2, e3;
};
QuadConfiguration quadConfiguration(const SdSurface& sd, const DirectedEdge& shared);

/// Single-token walk along a loop in the punctured 1-skeleton; omega equals
/// the closed-surface class of the loop.
MoveSequence loopBraid(const SdSurface& sd, VertexId v, const std::vector<int>& walk);

/// q_eta . gamma . q_eta^{-1}: relocates the unique non-trivial vertex loop
/// of gamma from eta's source to its target.
MoveSequence conjugateTransport(const SurfaceSystem& sys, const MoveSequence& gamma, const EdgePath& eta);

/// [A, B] as a word: A B A^{-1} B^{-1}.
EdgeBraidWord commutatorWord(const EdgeBraidWord& a, const EdgeBraidWord& b);

/// Commutator of two loop rotations; the loops must meet only at the common
/// basepoint (their shared source vertex).
EdgeBraidWord commutatorCase1(const EdgeLoop& a, const EdgeLoop& b);

/// Commutator of two puncture-winding braids from a common source.
EdgeBraidWord commutatorCase2(const EdgePath& lambda1, const EdgePath& lambda2);

/// Commutator of a loop rotation and a puncture-winding braid, both based at
/// the loop's source.
EdgeBraidWord commutatorCase3(const EdgeLoop& a, const EdgePath& mu);

/// The loop's vertices as an sd walk through edge midpoints.
std::vector<int> sdWalkOfBasePath(const SdSurface& sd, const EdgePath& path);

/// Boundary-of-star walk around an original vertex, oriented with the
/// surface; the punctured-complex winding of this walk around the vertex is
/// +1 by normalization.
std::vector<int> vertexLinkWalk(const SdSurface& sd, VertexId v);

/// Replaces every interior visit of the walk to the given sd vertex by the
/// link arc joining its neighbours along the link orientation. This is the
/// braid-faithful push-off: the strand of b_e^{-2} detoured off the far
/// endpoint winds +1 around it.
std::vector<int> detourWalkAroundVertex(const SdSurface& sd, const std::vector<int>& walk, int sdVertex);

/// Single-token braid at v realizing closed-basis class i: the basis loop is
/// detoured off every other original vertex and connected to v inside the
/// complex punctured at all other original vertices.
MoveSequence basisLoopBraid(const SurfaceSystem& sys, VertexId v, int basisIndex);

}  // namespace braidhom
