// braidhom command line: generate and validate surfaces, compute homology,
// evaluate braids, run the explicit constructions, and produce kernel
// certificates. JSON goes to stdout, diagnostics to stderr.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "braidhom/constructions.hpp"
#include "braidhom/io.hpp"
#include "braidhom/unwinder.hpp"
#include "braidhom/wordalg.hpp"

namespace {

using namespace braidhom;

struct GlobalFlags {
    long long seed = 0;
    long long budget = 2'000'000;
    int jobs = 1;
    bool verbose = false;
};

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string slurpWordArgument(const std::string& arg) {
    std::ifstream probe(arg);
    if (probe.good()) return readTextFile(arg);
    return arg;
}

SimplicialSurface loadSurface(const std::string& path, bool verbose) {
    SimplicialSurface s = readSurfaceFile(path);
    auto oriented = s.orientedCoherently();
    if (!oriented) throw Error(path + ": surface is not orientable");
    ValidationReport report = validateSurface(*oriented);
    if (!report.ok()) throw Error(path + ": invalid surface\n" + report.summary());
    if (verbose) std::cerr << "loaded " << oriented->name() << " with " << oriented->vertexCount()
                           << " vertices\n";
    return *oriented;
}

VertexId vertexArg(const SimplicialSurface& s, const std::string& name) {
    auto v = s.vertexByName(name);
    if (!v) throw Error("unknown vertex '" + name + "'");
    return *v;
}

std::vector<VertexId> vertexListArg(const SimplicialSurface& s, const std::string& list) {
    std::vector<VertexId> out;
    std::string cur;
    std::istringstream is(list);
    while (std::getline(is, cur, ',')) {
        if (!cur.empty()) out.push_back(vertexArg(s, cur));
    }
    return out;
}

EdgePath pathArg(const SimplicialSurface& s, const std::string& list) {
    std::vector<VertexId> vs = vertexListArg(s, list);
    for (size_t i = 0; i + 1 < vs.size(); ++i) {
        if (!s.hasEdge(vs[i], vs[i + 1])) {
            throw Error("no edge between listed vertices " + s.vertexNames()[vs[i]] + " and " +
                        s.vertexNames()[vs[i + 1]]);
        }
    }
    return EdgePath::fromVertices(vs);
}

MoveSequence loadMoves(const SurfaceSystem& sys, const std::string& wordArg, const std::string& movesPath) {
    if (!wordArg.empty() && !movesPath.empty()) throw Error("give either --word or --moves, not both");
    if (!wordArg.empty()) {
        EdgeBraidWord w = parseBraidWord(sys.base(), slurpWordArgument(wordArg));
        return expand(sys.sd(), w);
    }
    if (!movesPath.empty()) return parseMoveSequence(sys.sd(), readTextFile(movesPath));
    throw Error("need --word or --moves");
}

Json wordResult(const SurfaceSystem& sys, const EdgeBraidWord& w, Json expected) {
    Json j;
    j["word"] = formatBraidWord(sys.base(), w);
    j["letters"] = w.letters.size();
    j["expected"] = std::move(expected);
    return j;
}

int runCli(int argc, char** argv) {
    GlobalFlags flags;
    CLI::App app{"surface braid toolkit"};
    app.require_subcommand(1);
    app.add_option("--seed", flags.seed, "fix randomized search orders");
    app.add_option("--budget", flags.budget, "simple-loop search budget");
    app.add_option("--jobs", flags.jobs, "parallelism for independent evaluations")->check(CLI::PositiveNumber);
    app.add_flag("--verbose", flags.verbose, "human-readable summaries on stderr");

    std::string surfacePath, wordArg, movesPath, outPath;

    // surface gen / validate
    auto* surface = app.add_subcommand("surface", "generate and validate triangulations");
    surface->require_subcommand(1);
    auto* gen = surface->add_subcommand("gen", "standard surface of a given genus");
    int genGenus = 0;
    gen->add_option("--genus", genGenus, "genus")->required()->check(CLI::NonNegativeNumber);
    gen->add_option("--out", outPath, "write the surface file here instead of stdout");
    gen->callback([&] {
        SimplicialSurface s = buildStandardSurface(genGenus);
        if (!outPath.empty()) {
            writeSurfaceFile(outPath, s);
            Json j;
            j["written"] = outPath;
            j["vertices"] = s.vertexCount();
            emit(j);
        } else {
            emit(surfaceToJson(s));
        }
    });
    auto* validate = surface->add_subcommand("validate", "run every structural check");
    validate->add_option("--surface", surfacePath, "surface file")->required();
    validate->callback([&] {
        SimplicialSurface s = readSurfaceFile(surfacePath);
        ValidationReport report = validateSurface(s);
        emit(validationToJson(report));
        if (!report.ok()) throw Error("surface failed validation");
    });

    // homology basis / coords
    auto* homology = app.add_subcommand("homology", "integral H1 of the subdivision complex");
    homology->require_subcommand(1);
    auto* basisCmd = homology->add_subcommand("basis", "rank and basis cycles");
    basisCmd->add_option("--surface", surfacePath, "surface file")->required();
    std::string puncturesArg;
    basisCmd->add_option("--punctures", puncturesArg, "comma-separated punctured vertices");
    basisCmd->callback([&] {
        SurfaceSystem sys(loadSurface(surfacePath, flags.verbose));
        Json j;
        if (puncturesArg.empty()) {
            const HomologyBasis& basis = sys.homology();
            j["rank"] = basis.rank();
            Json cycles = Json::array();
            for (const auto& loop : basis.basisLoops()) {
                if (loop) {
                    Json names = Json::array();
                    for (VertexId v : loop->vertices()) names.push_back(sys.base().vertexNames()[v]);
                    cycles.push_back(std::move(names));
                } else {
                    cycles.push_back(nullptr);
                }
            }
            j["basis_loops"] = std::move(cycles);
        } else {
            auto pc = sys.punctured(vertexListArg(sys.base(), puncturesArg));
            j["rank"] = pc->rank();
            j["dependent_puncture"] = sys.base().vertexNames()[pc->dependentPuncture()];
            Json links = Json::object();
            for (VertexId p : pc->coordinatePunctures()) {
                Json walk = Json::array();
                for (int v : pc->linkWalk(p)) walk.push_back(sys.sd().vertexName(v));
                links[sys.base().vertexNames()[p]] = std::move(walk);
            }
            j["link_walks"] = std::move(links);
            j["spine_rank"] = pc->spineRank();
        }
        emit(j);
    });
    auto* coordsCmd = homology->add_subcommand("coords", "coordinates of a closed sd walk");
    std::string walkArg;
    coordsCmd->add_option("--surface", surfacePath, "surface file")->required();
    coordsCmd->add_option("--walk", walkArg, "whitespace-separated sd vertex names, closed")->required();
    coordsCmd->add_option("--punctures", puncturesArg, "measure in this punctured complex");
    coordsCmd->callback([&] {
        SurfaceSystem sys(loadSurface(surfacePath, flags.verbose));
        std::vector<int> walk;
        std::istringstream is(walkArg);
        std::string tok;
        while (is >> tok) {
            auto v = sys.sd().vertexByName(tok);
            if (!v) throw Error("unknown sd vertex '" + tok + "'");
            walk.push_back(*v);
        }
        Json j;
        if (puncturesArg.empty()) {
            j["coordinates"] = sys.homology().coordinatesOfWalk(walk);
        } else {
            auto pc = sys.punctured(vertexListArg(sys.base(), puncturesArg));
            j["coordinates"] = pc->coordinates(walk);
        }
        emit(j);
    });

    // braid eval / omega / fingerprint
    auto* braid = app.add_subcommand("braid", "evaluate braid words and move sequences");
    braid->require_subcommand(1);
    auto addBraidInputs = [&](CLI::App* cmd) {
        cmd->add_option("--surface", surfacePath, "surface file")->required();
        cmd->add_option("--word", wordArg, "braid word (inline or a file path)");
        cmd->add_option("--moves", movesPath, "move sequence file");
    };
    auto* evalCmd = braid->add_subcommand("eval", "simulate and report the permutation");
    addBraidInputs(evalCmd);
    evalCmd->callback([&] {
        SurfaceSystem sys(loadSurface(surfacePath, flags.verbose));
        MoveSequence ms = loadMoves(sys, wordArg, movesPath);
        Simulation sim = simulate(sys.sd(), ms);
        Json j;
        j["moves"] = ms.moves.size();
        j["closed"] = sim.closed;
        if (sim.closed) {
            Json perm = Json::object();
            for (size_t v = 0; v < sim.tokenPosition.size(); ++v) {
                perm[sys.base().vertexNames()[v]] =
                    sys.base().vertexNames()[sys.sd().baseVertex(sim.tokenPosition[v])];
            }
            j["permutation"] = std::move(perm);
            j["pure"] = isPure(sys.sd(), ms);
        }
        emit(j);
    });
    auto* omegaCmd = braid->add_subcommand("omega", "total winding number class");
    addBraidInputs(omegaCmd);
    omegaCmd->callback([&] {
        SurfaceSystem sys(loadSurface(surfacePath, flags.verbose));
        MoveSequence ms = loadMoves(sys, wordArg, movesPath);
        Json j;
        j["omega"] = omega(sys, ms);
        j["balanced"] = isBalanced(sys, ms);
        emit(j);
    });
    auto* fpCmd = braid->add_subcommand("fingerprint", "full invariant certificate");
    addBraidInputs(fpCmd);
    fpCmd->callback([&] {
        SurfaceSystem sys(loadSurface(surfacePath, flags.verbose));
        MoveSequence ms = loadMoves(sys, wordArg, movesPath);
        emit(fingerprintToJson(sys, fingerprint(sys, ms)));
    });

    // construct ...
    auto* construct = app.add_subcommand("construct", "explicit quasi-edge braids");
    construct->require_subcommand(1);
    std::string fromArg, toArg, pathArgStr, loopArg, loop2Arg, viArg, vjArg, sharedArg, vertexArgStr;
    int basisClass = -1, commutatorCase = 1;

    auto* qpathCmd = construct->add_subcommand("qpath", "endpoint transposition along a path");
    qpathCmd->add_option("--surface", surfacePath)->required();
    qpathCmd->add_option("--from", fromArg);
    qpathCmd->add_option("--to", toArg);
    qpathCmd->add_option("--path", pathArgStr, "comma-separated vertices");
    qpathCmd->callback([&] {
        SurfaceSystem sys(loadSurface(surfacePath, flags.verbose));
        EdgePath path;
        if (!pathArgStr.empty()) {
            path = pathArg(sys.base(), pathArgStr);
        } else if (!fromArg.empty() && !toArg.empty()) {
            path = findEdgePath(sys.base(), vertexArg(sys.base(), fromArg), vertexArg(sys.base(), toArg));
        } else {
            throw Error("qpath needs --path or --from/--to");
        }
        EdgeBraidWord w = qPath(path);
        Json expected;
        expected["permutation"] = Json::array(
            {sys.base().vertexNames()[path.source()], sys.base().vertexNames()[path.target()]});
        expected["balanced"] = true;
        emit(wordResult(sys, w, std::move(expected)));
    });

    auto* wpairCmd = construct->add_subcommand("wpair", "opposite loop laps at two vertices");
    wpairCmd->add_option("--surface", surfacePath)->required();
    wpairCmd->add_option("--loop", loopArg, "comma-separated loop vertices")->required();
    wpairCmd->add_option("--vi", viArg)->required();
    wpairCmd->add_option("--vj", vjArg)->required();
    wpairCmd->callback([&] {
        SurfaceSystem sys(loadSurface(surfacePath, flags.verbose));
        std::vector<VertexId> vs = vertexListArg(sys.base(), loopArg);
        vs.push_back(vs.front());
        EdgeLoop loop = EdgePath::fromVertices(vs);
        EdgeBraidWord w = wPair(loop, vertexArg(sys.base(), viArg), vertexArg(sys.base(), vjArg));
        Json expected;
        expected["loop_class"] = sys.homology().coordinatesOfBaseLoop(loop);
        expected["pure"] = true;
        expected["plus_at"] = viArg;
        expected["minus_at"] = vjArg;
        emit(wordResult(sys, w, std::move(expected)));
    });

    auto* wlambdaCmd = construct->add_subcommand("wlambda", "winding braid along a path");
    wlambdaCmd->add_option("--surface", surfacePath)->required();
    wlambdaCmd->add_option("--path", pathArgStr, "comma-separated vertices")->required();
    wlambdaCmd->callback([&] {
        SurfaceSystem sys(loadSurface(surfacePath, flags.verbose));
        EdgePath path = pathArg(sys.base(), pathArgStr);
        EdgeBraidWord w = wLambda(path);
        Json expected;
        expected["pure"] = true;
        expected["winding_plus_one_around"] = sys.base().vertexNames()[path.target()];
        expected["stationary_windings"] = 0;
        emit(wordResult(sys, w, std::move(expected)));
    });

    auto* quadCmd = construct->add_subcommand("quad", "six-letter quadrilateral word");
    quadCmd->add_option("--surface", surfacePath)->required();
    quadCmd->add_option("--shared", sharedArg, "shared directed edge v0,v2")->required();
    quadCmd->callback([&] {
        SurfaceSystem sys(loadSurface(surfacePath, flags.verbose));
        std::vector<VertexId> vs = vertexListArg(sys.base(), sharedArg);
        if (vs.size() != 2) throw Error("--shared needs exactly two vertices");
        QuadConfiguration q = quadConfiguration(sys.sd(), {vs[0], vs[1]});
        EdgeBraidWord w = quadLoop(sys.sd(), {vs[0], vs[1]});
        Json expected;
        expected["quad"] = Json::array({sys.base().vertexNames()[q.v0], sys.base().vertexNames()[q.v1],
                                        sys.base().vertexNames()[q.v2], sys.base().vertexNames()[q.v3]});
        expected["balanced"] = true;
        emit(wordResult(sys, w, std::move(expected)));
    });

    auto* loopCmd = construct->add_subcommand("loop", "single-token loop braid");
    loopCmd->add_option("--surface", surfacePath)->required();
    loopCmd->add_option("--vertex", vertexArgStr)->required();
    loopCmd->add_option("--class", basisClass, "closed-surface basis class index");
    loopCmd->add_option("--walk", walkArg, "explicit sd walk (whitespace-separated names)");
    loopCmd->callback([&] {
        SurfaceSystem sys(loadSurface(surfacePath, flags.verbose));
        VertexId v = vertexArg(sys.base(), vertexArgStr);
        MoveSequence ms;
        if (!walkArg.empty()) {
            std::vector<int> walk;
            std::istringstream is(walkArg);
            std::string tok;
            while (is >> tok) {
                auto sv = sys.sd().vertexByName(tok);
                if (!sv) throw Error("unknown sd vertex '" + tok + "'");
                walk.push_back(*sv);
            }
            ms = loopBraid(sys.sd(), v, walk);
        } else if (basisClass >= 0) {
            ms = basisLoopBraid(sys, v, basisClass);
        } else {
            throw Error("loop needs --walk or --class");
        }
        Json j;
        j["moves"] = formatMoveSequence(sys.sd(), ms);
        j["omega"] = omega(sys, ms);
        emit(j);
    });

    auto* commCmd = construct->add_subcommand("commutator", "commutator braids");
    commCmd->add_option("--surface", surfacePath)->required();
    commCmd->add_option("--case", commutatorCase, "1: two loops, 2: two paths, 3: loop and path")
        ->check(CLI::Range(1, 3));
    commCmd->add_option("--loop", loopArg, "first loop, comma-separated");
    commCmd->add_option("--loop2", loop2Arg, "second loop (case 1)");
    commCmd->add_option("--path", pathArgStr, "winding path (cases 2 and 3)");
    commCmd->add_option("--path2", walkArg, "second winding path (case 2)");
    commCmd->callback([&] {
        SurfaceSystem sys(loadSurface(surfacePath, flags.verbose));
        auto asLoop = [&](const std::string& arg) {
            std::vector<VertexId> vs = vertexListArg(sys.base(), arg);
            vs.push_back(vs.front());
            return EdgePath::fromVertices(vs);
        };
        EdgeBraidWord w;
        if (commutatorCase == 1) {
            w = commutatorCase1(asLoop(loopArg), asLoop(loop2Arg));
        } else if (commutatorCase == 2) {
            w = commutatorCase2(pathArg(sys.base(), pathArgStr), pathArg(sys.base(), walkArg));
        } else {
            w = commutatorCase3(asLoop(loopArg), pathArg(sys.base(), pathArgStr));
        }
        Json expected;
        expected["pure"] = true;
        expected["balanced"] = true;
        expected["null_homologous_strands"] = true;
        emit(wordResult(sys, w, std::move(expected)));
    });

    // unwind / certify
    auto* unwindCmd = app.add_subcommand("unwind", "cancel strand invariants of a pure balanced braid");
    addBraidInputs(unwindCmd);
    unwindCmd->callback([&] {
        SurfaceSystem sys(loadSurface(surfacePath, flags.verbose));
        MoveSequence ms = loadMoves(sys, wordArg, movesPath);
        UnwindOptions opts;
        opts.loopSearchBudget = flags.budget;
        UnwindCertificate cert = unwind(sys, ms, opts);
        emit(certificateToJson(sys, cert));
    });

    auto* certifyCmd = app.add_subcommand("certify", "kernel membership certificate");
    addBraidInputs(certifyCmd);
    certifyCmd->callback([&] {
        SurfaceSystem sys(loadSurface(surfacePath, flags.verbose));
        MoveSequence ms = loadMoves(sys, wordArg, movesPath);
        UnwindOptions opts;
        opts.loopSearchBudget = flags.budget;
        KernelDecision decision = kernelCertificate(sys, ms, opts);
        Json j;
        j["accepted"] = decision.accepted;
        j["omega"] = decision.omegaClass;
        if (decision.certificate) {
            j["certificate"] = certificateToJson(sys, *decision.certificate);
            j["replay_ok"] = replayCertificate(sys, ms, *decision.certificate);
        }
        emit(j);
    });

    // rewrite
    auto* rewriteCmd = app.add_subcommand("rewrite", "S-connected free-word rewriting");
    std::string rwWord, rwSubset;
    rewriteCmd->add_option("--word", rwWord, "whitespace-separated letters, ' marks inverses")->required();
    rewriteCmd->add_option("--subset", rwSubset, "comma-separated generators")->required();
    rewriteCmd->callback([&] {
        std::vector<std::string> names;
        FreeWord w = parseWord(rwWord, names);
        std::set<int> subset;
        std::istringstream is(rwSubset);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            if (tok.empty()) continue;
            bool found = false;
            for (int i = 0; i < static_cast<int>(names.size()); ++i) {
                if (names[i] == tok) {
                    subset.insert(i);
                    found = true;
                }
            }
            if (!found) throw Error("subset generator '" + tok + "' does not occur in the word");
        }
        FreeWord star = makeSConnected(w, subset);
        Json j;
        j["word"] = formatWord(star, names);
        j["s_connected"] = isSConnected(star, subset);
        j["freely_equal_to_input"] = freelyEqual(star, w);
        emit(j);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    // Exit-code contract: 2 for an unknown subcommand, 1 for bad input.
    static const std::set<std::string> known{"surface", "homology", "braid",   "construct",
                                             "unwind",  "certify",  "rewrite", "-h",
                                             "--help",  "help"};
    if (argc >= 2 && !known.count(argv[1])) {
        std::cerr << "unknown subcommand '" << argv[1] << "'\n";
        return 2;
    }
    try {
        return runCli(argc, argv);
    } catch (const braidhom::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
