#pragma once

#include <json.hpp>

#include <string>

#include "braidhom/braid.hpp"
#include "braidhom/unwinder.hpp"

namespace braidhom {

class ParseError : public Error {
public:
    using Error::Error;
};

using Json = nlohmann::json;

// Surface files: {"name": str, "genus": int|null, "vertices": [str],
// "triangles": [[i,j,k]]} with triangle order encoding the orientation.
Json surfaceToJson(const SimplicialSurface& s);
SimplicialSurface surfaceFromJson(const Json& j, const std::string& origin);
SimplicialSurface parseSurfaceText(const std::string& text, const std::string& origin);
SimplicialSurface readSurfaceFile(const std::string& path);
void writeSurfaceFile(const std::string& path, const SimplicialSurface& s);

// Braid words, one per line: letters b(v_i,v_j) or B(v_i,v_j) for the
// inverse, separated by whitespace, vertex names as in the surface file.
std::string formatBraidWord(const SimplicialSurface& s, const EdgeBraidWord& w);
EdgeBraidWord parseBraidWord(const SimplicialSurface& s, const std::string& text);

// Move sequences: one "from -> to" line per move, deterministic sd names.
std::string formatMoveSequence(const SdSurface& sd, const MoveSequence& ms);
MoveSequence parseMoveSequence(const SdSurface& sd, const std::string& text);

Json fingerprintToJson(const SurfaceSystem& sys, const BraidFingerprint& fp);
Json certificateToJson(const SurfaceSystem& sys, const UnwindCertificate& cert);
Json validationToJson(const ValidationReport& report);

std::string readTextFile(const std::string& path);
void writeTextFile(const std::string& path, const std::string& text);

}  // namespace braidhom
