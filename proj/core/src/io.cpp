#include "braidhom/io.hpp"

#include <fstream>
#include <sstream>

namespace braidhom {

Json surfaceToJson(const SimplicialSurface& s) {
    Json j;
    j["name"] = s.name();
    if (s.declaredGenus()) {
        j["genus"] = *s.declaredGenus();
    } else {
        j["genus"] = nullptr;
    }
    j["vertices"] = s.vertexNames();
    Json tris = Json::array();
    for (const Triangle& t : s.triangles()) tris.push_back({t.v[0], t.v[1], t.v[2]});
    j["triangles"] = std::move(tris);
    return j;
}

SimplicialSurface surfaceFromJson(const Json& j, const std::string& origin) {
    auto fail = [&](const std::string& what) -> ParseError {
        return ParseError(origin + ": " + what);
    };
    if (!j.is_object()) throw fail("surface file must be a JSON object");
    if (!j.contains("vertices") || !j["vertices"].is_array()) throw fail("missing \"vertices\" array");
    if (!j.contains("triangles") || !j["triangles"].is_array()) throw fail("missing \"triangles\" array");

    std::string name = j.value("name", std::string("surface"));
    std::optional<int> genus;
    if (j.contains("genus") && !j["genus"].is_null()) {
        if (!j["genus"].is_number_integer()) throw fail("\"genus\" must be an integer or null");
        int g = j["genus"].get<int>();
        if (g < 0) throw fail("\"genus\" must be non-negative");
        genus = g;
    }

    std::vector<std::string> names;
    for (const Json& v : j["vertices"]) {
        if (!v.is_string()) throw fail("vertex names must be strings");
        names.push_back(v.get<std::string>());
    }
    std::vector<Triangle> tris;
    int idx = 0;
    for (const Json& t : j["triangles"]) {
        if (!t.is_array() || t.size() != 3) {
            throw fail("triangle " + std::to_string(idx) + " must be a 3-element array");
        }
        Triangle tri;
        for (int i = 0; i < 3; ++i) {
            if (!t[i].is_number_integer()) {
                throw fail("triangle " + std::to_string(idx) + " entries must be vertex indices");
            }
            long long v = t[i].get<long long>();
            if (v < 0 || v >= static_cast<long long>(names.size())) {
                throw fail("triangle " + std::to_string(idx) + " references vertex " + std::to_string(v) +
                           " out of range");
            }
            tri.v[i] = static_cast<VertexId>(v);
        }
        tris.push_back(tri);
        ++idx;
    }
    try {
        return SimplicialSurface::fromData(std::move(name), genus, std::move(names), std::move(tris));
    } catch (const Error& e) {
        throw fail(e.what());
    }
}

SimplicialSurface parseSurfaceText(const std::string& text, const std::string& origin) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(origin + ": " + e.what());
    }
    return surfaceFromJson(j, origin);
}

SimplicialSurface readSurfaceFile(const std::string& path) {
    return parseSurfaceText(readTextFile(path), path);
}

void writeSurfaceFile(const std::string& path, const SimplicialSurface& s) {
    writeTextFile(path, surfaceToJson(s).dump(2) + "\n");
}

std::string formatBraidWord(const SimplicialSurface& s, const EdgeBraidWord& w) {
    std::ostringstream os;
    for (size_t i = 0; i < w.letters.size(); ++i) {
        if (i) os << " ";
        const EdgeBraidLetter& l = w.letters[i];
        os << (l.sign > 0 ? "b(" : "B(") << s.vertexNames()[l.edge.from] << ","
           << s.vertexNames()[l.edge.to] << ")";
    }
    return os.str();
}

EdgeBraidWord parseBraidWord(const SimplicialSurface& s, const std::string& text) {
    EdgeBraidWord w;
    std::istringstream is(text);
    std::string tok;
    while (is >> tok) {
        int sign;
        if (tok.rfind("b(", 0) == 0) {
            sign = +1;
        } else if (tok.rfind("B(", 0) == 0) {
            sign = -1;
        } else {
            throw ParseError("braid letter must look like b(u,v) or B(u,v), got '" + tok + "'");
        }
        if (tok.back() != ')') throw ParseError("unterminated braid letter '" + tok + "'");
        std::string inner = tok.substr(2, tok.size() - 3);
        size_t comma = inner.find(',');
        if (comma == std::string::npos) throw ParseError("braid letter needs two vertices: '" + tok + "'");
        std::string an = inner.substr(0, comma);
        std::string bn = inner.substr(comma + 1);
        auto va = s.vertexByName(an);
        auto vb = s.vertexByName(bn);
        if (!va) throw ParseError("unknown vertex '" + an + "' in letter '" + tok + "'");
        if (!vb) throw ParseError("unknown vertex '" + bn + "' in letter '" + tok + "'");
        if (!s.hasEdge(*va, *vb)) throw ParseError("no edge between " + an + " and " + bn);
        w.letters.push_back({DirectedEdge{*va, *vb}, sign});
    }
    return w;
}

std::string formatMoveSequence(const SdSurface& sd, const MoveSequence& ms) {
    std::ostringstream os;
    for (const Move& m : ms.moves) {
        os << sd.vertexName(m.from) << " -> " << sd.vertexName(m.to) << "\n";
    }
    return os.str();
}

MoveSequence parseMoveSequence(const SdSurface& sd, const std::string& text) {
    MoveSequence ms;
    std::istringstream is(text);
    std::string line;
    int lineNo = 0;
    while (std::getline(is, line)) {
        ++lineNo;
        std::string trimmed;
        for (char c : line) {
            if (!isspace(static_cast<unsigned char>(c)) || !trimmed.empty()) trimmed += c;
        }
        while (!trimmed.empty() && isspace(static_cast<unsigned char>(trimmed.back()))) trimmed.pop_back();
        if (trimmed.empty() || trimmed[0] == '#') continue;
        size_t arrow = trimmed.find("->");
        if (arrow == std::string::npos) {
            throw ParseError("line " + std::to_string(lineNo) + ": expected 'from -> to'");
        }
        auto strip = [](std::string s) {
            size_t b = s.find_first_not_of(" \t");
            size_t e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string from = strip(trimmed.substr(0, arrow));
        std::string to = strip(trimmed.substr(arrow + 2));
        auto vf = sd.vertexByName(from);
        auto vt = sd.vertexByName(to);
        if (!vf) throw ParseError("line " + std::to_string(lineNo) + ": unknown sd vertex '" + from + "'");
        if (!vt) throw ParseError("line " + std::to_string(lineNo) + ": unknown sd vertex '" + to + "'");
        ms.moves.push_back({*vf, *vt});
    }
    return ms;
}

Json fingerprintToJson(const SurfaceSystem& sys, const BraidFingerprint& fp) {
    const auto& names = sys.base().vertexNames();
    Json j;
    Json perm = Json::object();
    for (size_t v = 0; v < fp.permutation.size(); ++v) perm[names[v]] = names[fp.permutation[v]];
    j["permutation"] = std::move(perm);
    j["omega"] = fp.omegaClass;
    Json consts = Json::array();
    for (VertexId v : fp.constants) consts.push_back(names[v]);
    j["constants"] = std::move(consts);
    j["pure"] = fp.pure;
    if (fp.pure) {
        Json strands = Json::object();
        for (const auto& [v, data] : fp.strands) {
            Json s;
            s["coordinates"] = data.coordinates;
            if (data.normalForm) {
                s["normal_form"] = formatWord(*data.normalForm, {});  // spine generators print as g<i>
            } else {
                s["normal_form"] = nullptr;
            }
            strands[names[v]] = std::move(s);
        }
        j["strands"] = std::move(strands);
    }
    return j;
}

Json certificateToJson(const SurfaceSystem& sys, const UnwindCertificate& cert) {
    Json j;
    j["input_fingerprint"] = fingerprintToJson(sys, cert.input);
    j["word"] = formatBraidWord(sys.base(), cert.word);
    j["residual_fingerprint"] = fingerprintToJson(sys, cert.residual);
    j["status"] = cert.status == UnwindStatus::Full ? "full" : "partial_residue";
    Json steps = Json::array();
    for (const UnwindStep& s : cert.steps) {
        Json step;
        step["construction"] = s.construction;
        step["parameters"] = s.parameters;
        if (s.token >= 0) step["token"] = sys.base().vertexNames()[s.token];
        if (!s.cancelled.empty()) {
            step["cancelled"] = s.cancelled;
            step["amount"] = s.amount;
        }
        steps.push_back(std::move(step));
    }
    j["steps"] = std::move(steps);
    if (!cert.residualNormalForms.empty()) {
        Json nf = Json::object();
        for (const auto& [v, word] : cert.residualNormalForms) {
            nf[sys.base().vertexNames()[v]] = formatWord(word, {});
        }
        j["residual_normal_forms"] = std::move(nf);
    }
    if (cert.searchFailure) j["search_failure"] = *cert.searchFailure;
    return j;
}

Json validationToJson(const ValidationReport& report) {
    Json j;
    j["ok"] = report.ok();
    Json checks = Json::array();
    for (const CheckResult& c : report.checks) {
        Json e;
        e["check"] = c.check;
        e["passed"] = c.passed;
        if (!c.witness.empty()) e["witness"] = c.witness;
        checks.push_back(std::move(e));
    }
    j["checks"] = std::move(checks);
    return j;
}

std::string readTextFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void writeTextFile(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << text;
}

}  // namespace braidhom
