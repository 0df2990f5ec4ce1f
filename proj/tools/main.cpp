#include <CLI11.hpp>

#include "dissect/hgraph.hpp"
#include "dissect/incidence.hpp"
#include "dissect/search.hpp"
#include "dissect/segments.hpp"
#include "dissect/serialize.hpp"
#include "dissect/tiling.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace dissect;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw LoadError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << bytes;
}

QuadraticNumber qn_arg(const std::string& text, const char* flag) {
    auto v = QuadraticNumber::parse(text);
    if (!v)
        throw std::invalid_argument(std::string(flag) + ": cannot parse exact number '" + text +
                                    "' (expected forms like 2, -1/3, (1/2)√3, (-1/2)+(1/2)√3)");
    return *v;
}

Region region_arg(const std::string& text) {
    const size_t p = text.find('x');
    if (p == std::string::npos)
        throw std::invalid_argument("--region: expected WIDTHxHEIGHT, e.g. \"√3x√3\"");
    return Region{qn_arg(text.substr(0, p), "--region"), qn_arg(text.substr(p + 1), "--region")};
}

ojson qn_json(const QuadraticNumber& v) {
    ojson j = to_json(v);
    j["dec"] = qn_decimal(v, 9);
    return j;
}

ojson pt_json(const Point& p) { return ojson{{"x", qn_json(p.x)}, {"y", qn_json(p.y)}}; }
ojson vec_json(const Vec& v) { return ojson{{"dx", qn_json(v.dx)}, {"dy", qn_json(v.dy)}}; }

const char* failure_name(Failure::Kind k) {
    switch (k) {
        case Failure::Kind::Overlap: return "overlap";
        case Failure::Kind::Gap: return "gap";
        case Failure::Kind::OutOfRegion: return "out-of-region";
        case Failure::Kind::AreaMismatch: return "area-mismatch";
    }
    return "?";
}

const char* tag_name(SideTag t) {
    switch (t) {
        case SideTag::X: return "x";
        case SideTag::XP1: return "x+1";
        case SideTag::Two: return "2";
        case SideTag::Leg: return "leg";
        case SideTag::RectW: return "w";
        case SideTag::RectH: return "h";
        case SideTag::Poly: return "side";
    }
    return "?";
}

const char* side_name(SegmentSide s) { return s == SegmentSide::Upper ? "upper" : "lower"; }
const char* head_name(HeadAngle a) { return a == HeadAngle::Acute ? "acute" : "obtuse"; }

const char* step_name(ChainStep::Kind k) {
    switch (k) {
        case ChainStep::Kind::Advanced: return "advanced";
        case ChainStep::Kind::Contradiction: return "contradiction";
        case ChainStep::Kind::Terminated: return "terminated";
    }
    return "?";
}

// ---------------------------------------------------------------- validate

int run_validate(const std::string& file, bool json, int threads) {
    Tiling t = load_tiling(read_file(file));
    ValidationReport rep = validate(t, threads);
    if (json) {
        ojson fails = ojson::array();
        for (const Failure& f : rep.failures) {
            ojson jf{{"kind", failure_name(f.kind)}, {"i", f.i}, {"j", f.j}, {"detail", f.detail}};
            if (f.witness) jf["witness"] = pt_json(*f.witness);
            fails.push_back(std::move(jf));
        }
        ojson j{{"valid", rep.valid}, {"tiles", t.size()}, {"failures", std::move(fails)}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << rep.summary() << "\n";
    }
    return rep.valid ? 0 : 2;
}

// ----------------------------------------------------------------- analyze

int run_analyze(const std::string& file, bool json) {
    Tiling t = load_tiling(read_file(file));
    ValidationReport rep = validate(t);
    if (!rep.valid) {
        std::cerr << "input tiling is invalid: " << rep.summary() << "\n";
        return 2;
    }
    auto inc = build_incidence(t);
    CountingSummary cs = counting_summary(inc, t.prototile.sides(), t.size());
    const bool ratio = check_ratio_identity(cs);
    const LinearIdentity lin = check_linear_identity(cs);
    if (json) {
        ojson j{{"q", cs.q},
                {"N", cs.N},
                {"cardF", cs.cardF},
                {"cardH", cs.cardH},
                {"F", cs.F},
                {"H", cs.H},
                {"hbar", cs.hbar},
                {"Delta", cs.Delta},
                {"ratioIdentity", ratio},
                {"linearIdentity", ojson{{"holds", lin.holds}, {"lhs", lin.lhs}}}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "q=" << cs.q << " N=" << cs.N << " |F|=" << cs.cardF << " |H|=" << cs.cardH
                  << " F=" << cs.F << " H=" << cs.H << " hbar=" << cs.hbar
                  << " Delta=" << cs.Delta << "\n"
                  << "ratio identity:  " << (ratio ? "holds" : "VIOLATED") << "\n"
                  << "linear identity: " << (lin.holds ? "holds" : "VIOLATED")
                  << " (lhs=" << lin.lhs << ")\n";
    }
    return ratio && lin.holds ? 0 : 2;
}

// ------------------------------------------------------------------ hgraph

int run_hgraph(const std::string& file, bool json) {
    Tiling t = load_tiling(read_file(file));
    ValidationReport rep = validate(t);
    if (!rep.valid) {
        std::cerr << "input tiling is invalid: " << rep.summary() << "\n";
        return 2;
    }
    HypotenuseGraph g = build_hgraph(t);
    DegreeBalance bal = degree_balance(g);
    PatternReport pat = angle_pattern_check(t, g);
    PeelReport peel = peel_edge_cycles(g);
    auto inc = build_incidence(t);
    PairedGraph pg = pair_merge(g, inc);
    auto cycles = decompose_feasible_cycles(pg, t);

    bool certsOk = true;
    ojson jc = ojson::array();
    for (const FeasibleCycle& c : cycles) {
        ParityCertificate cert = parity_certificate(c, t.angleMode);
        const bool orient = orientation_propagation_check(c);
        const bool ok =
            cert.closure && cert.normEquality && cert.length % 2 == 0 && orient;
        certsOk = certsOk && ok;
        jc.push_back(ojson{{"length", cert.length},
                           {"certificate", ojson{{"a", cert.a},
                                                 {"b", cert.b},
                                                 {"c", cert.c},
                                                 {"d", cert.d},
                                                 {"closure", cert.closure},
                                                 {"normEquality", cert.normEquality},
                                                 {"conjugateFrame", cert.conjugateFrame}}},
                           {"orientationPropagation", orient},
                           {"evenLength", cert.length % 2 == 0}});
    }

    const bool eulerian = bal.balanced && peel.consumedAll && pat.eulerian;
    const bool pairing = pairing_conjecture_check(t);
    const bool nEven = t.size() % 2 == 0;
    bool undirected = true;
    const bool piOver4 = t.prototile.kind() == Prototile::Kind::RightTrapezoid &&
                         t.prototile.field_radicand() == 2;
    if (piOver4) undirected = undirected_cycle_parity(t);

    const bool ok = eulerian && certsOk && nEven && undirected;
    if (json) {
        ojson offenders = ojson::array();
        for (const PatternOffender& o : pat.offenders) {
            ojson angles = ojson::array();
            for (const ExactAngle& a : o.pattern) angles.push_back(a.str());
            offenders.push_back(ojson{{"at", pt_json(o.w)}, {"pattern", std::move(angles)}});
        }
        ojson j{{"eulerian", eulerian},
                {"balanced", bal.balanced},
                {"peelingConsumedAll", peel.consumedAll},
                {"offenders", std::move(offenders)},
                {"cycles", std::move(jc)},
                {"pairingConjecture", pairing},
                {"nEven", nEven}};
        if (piOver4) j["undirectedCycleParity"] = undirected;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "eulerian: " << (eulerian ? "yes" : "NO") << " (" << g.edges.size()
                  << " edges, " << g.V.size() << " vertices)\n"
                  << "cycles: " << cycles.size() << ", certificates "
                  << (certsOk ? "all hold" : "VIOLATED") << "\n"
                  << "pairing conjecture: " << (pairing ? "holds" : "no") << "\n"
                  << "N even: " << (nEven ? "yes" : "NO") << "\n";
        if (piOver4)
            std::cout << "undirected cycle parity: " << (undirected ? "holds" : "VIOLATED")
                      << "\n";
    }
    return ok ? 0 : 2;
}

// ---------------------------------------------------------------- segments

ojson run_json(const std::vector<RunSide>& run) {
    ojson arr = ojson::array();
    for (const RunSide& s : run)
        arr.push_back(ojson{{"tile", s.tile},
                            {"side", s.sideIndex},
                            {"tag", tag_name(s.tag)},
                            {"length", qn_json(s.length)},
                            {"from", pt_json(s.from)},
                            {"to", pt_json(s.to)}});
    return arr;
}

ojson head_json(const HeadInformation& h) {
    return ojson{{"u", pt_json(h.u)},
                 {"dir", vec_json(h.dir)},
                 {"delta", side_name(h.delta)},
                 {"theta", head_name(h.theta)}};
}

int run_segments(const std::string& file, bool json) {
    Tiling t = load_tiling(read_file(file));
    const bool valid = validate(t).valid;

    auto segs = extract_maximal_segments(t);
    ojson j{{"valid", valid}, {"maximalSegments", ojson::array()}};
    for (const MaximalSegment& m : segs)
        j["maximalSegments"].push_back(ojson{{"u", pt_json(m.u)},
                                             {"v", pt_json(m.v)},
                                             {"dir", vec_json(m.dir)},
                                             {"length", qn_json(m.len)},
                                             {"onBoundary", m.onBoundary},
                                             {"upper", run_json(m.upper)},
                                             {"lower", run_json(m.lower)}});

    try {
        auto rels = boundary_identified_relations(t);
        ojson jr = ojson::array();
        for (const SideRelation& r : rels)
            jr.push_back(ojson{{"a", r.a}, {"b", r.b}, {"c", r.c}, {"d", r.d}});
        j["relations"] = std::move(jr);
        SolveOutcome sol = solve_x(rels);
        ojson js{{"kind", sol.kind == SolveOutcome::Kind::Solved          ? "solved"
                          : sol.kind == SolveOutcome::Kind::AllDegenerate ? "all-degenerate"
                                                                          : "inconsistent"},
                 {"detail", sol.detail}};
        if (sol.kind == SolveOutcome::Kind::Solved) {
            js["r"] = to_json(sol.r);
            js["s"] = to_json(sol.s);
        }
        j["solve"] = std::move(js);
    } catch (const std::exception& e) {
        j["relations"] = nullptr;
        j["solve"] = ojson{{"kind", "skipped"}, {"detail", e.what()}};
    }

    try {
        AreaCheck ac = area_constraint_check(t);
        j["area"] = ojson{{"sPositive", ac.sPositive}, {"A", to_json(ac.A)}, {"B", to_json(ac.B)}};
    } catch (const std::exception& e) {
        j["area"] = ojson{{"skipped", e.what()}};
    }

    try {
        auto specials = scan_special_segments(t);
        ojson sp = ojson::array();
        for (const SpecialSegment& s : specials) {
            ojson e = head_json(s.head);
            e["v"] = pt_json(s.seg.v);
            sp.push_back(std::move(e));
        }
        j["specialSegments"] = std::move(sp);

        ObstructionReport rep = odd_n_obstruction_report(t);
        ojson chains = ojson::array();
        for (const ObstructionChain& ch : rep.chains) {
            ojson heads = ojson::array();
            for (const HeadInformation& h : ch.heads) heads.push_back(head_json(h));
            ojson witnesses = ojson::array();
            for (int w : ch.last.witnessTiles) witnesses.push_back(w);
            chains.push_back(ojson{{"seed", pt_json(ch.seed)},
                                   {"seedMixed", ch.seedMixed},
                                   {"strictlyIncreasing", ch.strictlyIncreasing},
                                   {"heads", std::move(heads)},
                                   {"last", ojson{{"kind", step_name(ch.last.kind)},
                                                  {"at", pt_json(ch.last.at)},
                                                  {"detail", ch.last.detail},
                                                  {"witnessTiles", std::move(witnesses)}}}});
        }
        j["obstruction"] = ojson{{"applicable", rep.applicable},
                                 {"reason", rep.reason},
                                 {"chains", std::move(chains)}};
    } catch (const std::exception& e) {
        j["specialSegments"] = nullptr;
        j["obstruction"] = ojson{{"skipped", e.what()}};
    }

    if (json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << segs.size() << " maximal segments ("
                  << (valid ? "valid tiling" : "INVALID tiling") << ")\n";
        for (const MaximalSegment& m : segs)
            std::cout << "  " << m.u.str() << " -> " << m.v.str() << "  len "
                      << qn_decimal(m.len, 6) << (m.onBoundary ? "  [boundary]" : "") << "\n";
        std::cout << "solve: " << j["solve"]["kind"].get<std::string>() << "; specials: "
                  << (j["specialSegments"].is_array()
                          ? std::to_string(j["specialSegments"].size())
                          : std::string("skipped"))
                  << "; obstruction chains: "
                  << (j["obstruction"].contains("chains")
                          ? std::to_string(j["obstruction"]["chains"].size())
                          : std::string("0"))
                  << "\n";
    }
    return 0;
}

// ------------------------------------------------------------------ search

struct ProtoOpts {
    std::string kind = "trapezoid";
    std::string x, w, h;
};

Prototile make_prototile(const ProtoOpts& o, AngleMode& mode) {
    if (o.kind == "trapezoid") {
        if (o.x.empty()) throw std::invalid_argument("--x is required for trapezoid prototiles");
        mode = AngleMode::bound(1, 3);
        return Prototile::trapezoid_pi3(qn_arg(o.x, "--x"));
    }
    if (o.kind == "trapezoid4") {
        if (o.x.empty()) throw std::invalid_argument("--x is required for trapezoid prototiles");
        mode = AngleMode::bound(1, 4);
        return Prototile::trapezoid_pi4(qn_arg(o.x, "--x"));
    }
    if (o.kind == "rectangle") {
        if (o.w.empty() || o.h.empty())
            throw std::invalid_argument("--tile-w and --tile-h are required for rectangle prototiles");
        mode = AngleMode::generic();
        return Prototile::rectangle(qn_arg(o.w, "--tile-w"), qn_arg(o.h, "--tile-h"));
    }
    throw std::invalid_argument("unknown prototile kind '" + o.kind +
                                "' (expected trapezoid, trapezoid4 or rectangle)");
}

int run_search(const ProtoOpts& po, const std::string& regionText, int n,
               const std::string& outDir, long long limit, bool dedup, int threads, bool json) {
    SearchConfig cfg;
    cfg.prototile = make_prototile(po, cfg.angleMode);
    cfg.region = region_arg(regionText);
    cfg.targetN = n;
    cfg.nodeLimit = limit;
    cfg.dedupSymmetry = dedup;

    SearchResult res = enumerate(cfg, threads);

    ojson files = ojson::array();
    if (!outDir.empty()) {
        std::filesystem::create_directories(outDir);
        for (size_t i = 0; i < res.tilings.size(); ++i) {
            char name[32];
            std::snprintf(name, sizeof name, "tiling-%03zu.json", i);
            write_file((std::filesystem::path(outDir) / name).string(),
                       save_tiling(res.tilings[i]));
            files.push_back(std::string(name));
        }
    }
    ojson summary{{"prototile", po.kind},
                  {"region", ojson{{"w", qn_json(cfg.region.width)}, {"h", qn_json(cfg.region.height)}}},
                  {"n", n},
                  {"tilings", res.tilings.size()},
                  {"nodes", res.nodesExplored},
                  {"exhausted", res.exhausted},
                  {"dedupSymmetry", dedup},
                  {"files", std::move(files)}};
    if (!outDir.empty())
        write_file((std::filesystem::path(outDir) / "summary.json").string(),
                   summary.dump(2) + "\n");
    if (json)
        std::cout << summary.dump(2) << "\n";
    else
        std::cout << res.tilings.size() << " tilings, "
                  << (res.exhausted ? "exhausted" : "node limit reached") << ", "
                  << res.nodesExplored << " nodes\n";
    return res.exhausted ? 0 : 3;
}

// ------------------------------------------------------------------ render

int run_render(const std::string& file, const std::string& out, bool withHgraph,
               bool withSegments) {
    Tiling t = load_tiling(read_file(file));
    RenderOverlays ov;
    if (withHgraph) {
        HypotenuseGraph g = build_hgraph(t);
        for (const HEdge& e : g.edges) ov.arrows.emplace_back(e.origin, e.terminus);
    }
    if (withSegments) {
        for (const MaximalSegment& m : extract_maximal_segments(t))
            ov.highlights.push_back(Segment{m.u, m.v});
    }
    write_file(out, render_svg(t, ov));
    return 0;
}

// ------------------------------------------------------------------- sweep

int run_sweep(const ProtoOpts& po, const std::string& regionText, int nmin, int nmax,
              int threads, bool json) {
    if (nmin < 0 || nmax < nmin)
        throw std::invalid_argument("--nmin/--nmax must satisfy 0 <= nmin <= nmax");
    AngleMode mode;
    Prototile proto = make_prototile(po, mode);
    Region region = region_arg(regionText);
    std::vector<SweepCase> cases;
    for (int n = nmin; n <= nmax; ++n)
        cases.push_back(SweepCase{"n=" + std::to_string(n), proto, region, n, mode});

    std::vector<SweepCell> table = sweep(cases, threads);
    bool allExhausted = true;
    for (const SweepCell& c : table)
        if (!c.skipped && !c.exhausted) allExhausted = false;

    if (json) {
        ojson arr = ojson::array();
        for (const SweepCell& c : table)
            arr.push_back(ojson{{"label", c.label},
                                {"n", c.n},
                                {"skipped", c.skipped},
                                {"nodes", c.nodes},
                                {"exhausted", c.exhausted},
                                {"tilings", c.tilingCount},
                                {"allEulerian", c.allEulerian},
                                {"allPaired", c.allPaired},
                                {"allEvenN", c.allEvenN}});
        std::cout << arr.dump(2) << "\n";
    } else {
        std::cout << "n      tilings  nodes      exhausted  eulerian  paired  evenN\n";
        for (const SweepCell& c : table) {
            if (c.skipped) {
                std::printf("%-6d skipped (area-incompatible)\n", c.n);
                continue;
            }
            std::printf("%-6d %-8d %-10lld %-10s %-9s %-7s %s\n", c.n, c.tilingCount, c.nodes,
                        c.exhausted ? "yes" : "NO", c.allEulerian ? "yes" : "NO",
                        c.allPaired ? "yes" : "no", c.allEvenN ? "yes" : "NO");
        }
    }
    return allExhausted ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic tiling toolkit: validation, incidence counting, hypotenuse\n"
                 "cycle certificates, maximal-segment audits and exhaustive tiling search"};
    app.require_subcommand(1);

    int threads = 1;
    bool json = false;
    long long seed = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--threads", threads, "worker threads");
        sub->add_flag("--json", json, "machine-readable output");
        sub->add_option("--seed", seed, "reserved; exact code paths ignore it");
    };

    std::string file, out;

    auto* vValidate = app.add_subcommand("validate", "check a tiling file: exact cover of the region");
    vValidate->add_option("file", file, "tiling JSON")->required();
    add_common(vValidate);

    auto* vAnalyze = app.add_subcommand("analyze", "vertex census and counting identities");
    vAnalyze->add_option("file", file, "tiling JSON")->required();
    add_common(vAnalyze);

    auto* vHgraph = app.add_subcommand("hgraph", "hypotenuse graph: balance, cycles, certificates");
    vHgraph->add_option("file", file, "tiling JSON")->required();
    add_common(vHgraph);

    auto* vSegments = app.add_subcommand("segments", "maximal segments, leg-parameter solve, special-segment audit");
    vSegments->add_option("file", file, "tiling JSON")->required();
    add_common(vSegments);

    ProtoOpts po;
    std::string regionText;
    int n = 0, nmin = 0, nmax = 0;
    long long limit = 10'000'000;
    bool noDedup = false;

    auto add_proto = [&](CLI::App* sub) {
        sub->add_option("--prototile", po.kind, "trapezoid | trapezoid4 | rectangle")
            ->capture_default_str();
        sub->add_option("--x", po.x, "trapezoid top side, exact (e.g. \"(-1/2)+(1/2)√3\")");
        sub->add_option("--tile-w", po.w, "rectangle prototile width, exact");
        sub->add_option("--tile-h", po.h, "rectangle prototile height, exact");
        sub->add_option("--region", regionText, "target rectangle WIDTHxHEIGHT, exact")
            ->required();
    };

    auto* vSearch = app.add_subcommand("search", "exhaustive tiling enumeration at fixed tile count");
    add_proto(vSearch);
    vSearch->add_option("--n", n, "number of tiles")->required();
    vSearch->add_option("--out", out, "directory for per-solution JSON files");
    vSearch->add_option("--limit", limit, "node budget")->capture_default_str();
    vSearch->add_flag("--no-dedup", noDedup, "keep symmetric duplicates");
    add_common(vSearch);

    auto* vRender = app.add_subcommand("render", "draw a tiling as SVG");
    vRender->add_option("file", file, "tiling JSON")->required();
    vRender->add_option("--out", out, "output SVG path")->required();
    bool ovHgraph = false, ovSegments = false;
    vRender->add_flag("--hgraph", ovHgraph, "overlay hypotenuse arrows");
    vRender->add_flag("--segments", ovSegments, "overlay maximal segments");
    add_common(vRender);

    auto* vSweep = app.add_subcommand("sweep", "search a range of tile counts, with structure audits");
    add_proto(vSweep);
    vSweep->add_option("--nmin", nmin, "first tile count")->required();
    vSweep->add_option("--nmax", nmax, "last tile count")->required();
    add_common(vSweep);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (vValidate->parsed()) return run_validate(file, json, threads);
        if (vAnalyze->parsed()) return run_analyze(file, json);
        if (vHgraph->parsed()) return run_hgraph(file, json);
        if (vSegments->parsed()) return run_segments(file, json);
        if (vSearch->parsed())
            return run_search(po, regionText, n, out, limit, !noDedup, threads, json);
        if (vRender->parsed()) return run_render(file, out, ovHgraph, ovSegments);
        if (vSweep->parsed()) return run_sweep(po, regionText, nmin, nmax, threads, json);
    } catch (const LoadError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
