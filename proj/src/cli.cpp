#include "envlab/cli.hpp"

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "envlab/census.hpp"
#include "envlab/crossings.hpp"
#include "envlab/envelope.hpp"
#include "envlab/error.hpp"
#include "envlab/render.hpp"
#include "envlab/service.hpp"
#include "envlab/singularity.hpp"

namespace envlab::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(const char* f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

struct FamilyArgs {
    long a = 0;
    long b = 1;
    double r = 1.0;
    double c = 0.0;
    double d = 0.0;
};

struct OutputArgs {
    std::string svg;
    std::string json;
    int n = 0;
    bool lines = false;
    bool check = false;
};

// Invalid flag values detected after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

LineFamily build_family(const FamilyArgs& f) {
    const RationalSlope slope(f.a, f.b);
    if (f.c != 0.0 || f.d != 0.0) return offset_circle(slope, f.r, f.c, f.d);
    if (f.r == 1.0) return one_circle(slope);
    return two_circle(slope, f.r);
}

int samples_or_default(int n, int fallback) {
    if (n > 0) return n;
    if (auto env = samples_from_env()) return *env;
    return fallback;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
}

// Writes a scene to --svg or --json; false when neither was given.
bool write_scene(const Scene& scene, const OutputArgs& o, std::ostream& out) {
    if (!o.svg.empty()) {
        write_file(o.svg, emit_svg(scene));
        out << "wrote " << o.svg << "\n";
        return true;
    }
    if (!o.json.empty()) {
        write_file(o.json, scene_json(scene, o.lines).dump(2) + "\n");
        out << "wrote " << o.json << "\n";
        return true;
    }
    return false;
}

std::string describe(const LineFamily& fam) {
    std::string s = fmt("%s a=%lld b=%lld", std::string(to_string(fam.kind)).c_str(),
                        static_cast<long long>(fam.slope.a()), static_cast<long long>(fam.slope.b()));
    if (fam.kind != FamilyKind::OneCircle) s += fmt(" r=%g", fam.params.r);
    if (fam.kind == FamilyKind::OffsetCircle) s += fmt(" c=%g d=%g", fam.params.c, fam.params.d);
    return s;
}

std::string pair_text(const CountPair& p) {
    return p.analytic ? fmt("%d/%d", p.numeric, *p.analytic) : fmt("%d/-", p.numeric);
}

std::array<int, 4> class_counts(const std::vector<SingularPoint>& pts) {
    std::array<int, 4> n{};
    for (const auto& p : pts) ++n[static_cast<std::size_t>(p.cls)];
    return n;
}

std::string class_summary(const std::vector<SingularPoint>& pts) {
    const auto n = class_counts(pts);
    std::string s;
    for (int k = 0; k < 4; ++k) {
        if (n[k] == 0) continue;
        if (!s.empty()) s += ", ";
        s += fmt("%s %d", std::string(to_string(static_cast<SingularClass>(k))).c_str(), n[k]);
    }
    return s.empty() ? "none" : s;
}

void print_singular_table(const std::vector<SingularPoint>& pts, double b, std::ostream& out) {
    out << fmt("%-10s %-10s %-12s %-12s %-16s %4s %12s %12s %12s %12s\n", "T", "t", "x", "y", "class", "mult",
               "F_tt", "F_ttt", "F_tttt", "F_ttttt");
    for (const auto& p : pts) {
        const Vec2 q = p.location.value_or(Vec2{NAN, NAN});
        out << fmt("%-10.6f %-10.6f %-12.8f %-12.8f %-16s %4d %12.3e %12.3e %12.3e %12.3e\n", p.T, b * p.T, q.x, q.y,
                   std::string(to_string(p.cls)).c_str(), p.multiplicity, p.derivatives[0], p.derivatives[1],
                   p.derivatives[2], p.derivatives[3]);
    }
}

int cmd_envelope(const FamilyArgs& f, const OutputArgs& o, std::ostream& out) {
    const LineFamily fam = build_family(f);
    SceneOptions opt;
    opt.samples = samples_or_default(o.n, 2048);
    opt.lines = o.lines;
    const Scene scene = envelope_scene(fam, opt);
    if (!write_scene(scene, o, out)) {
        out << describe(fam) << "\n";
        out << fmt("arcs %zu, infinity cuts %zu, singular points %zu (%s)\n", scene.arcs.size(), scene.cuts.size(),
                   scene.singular.size(), class_summary(scene.singular).c_str());
    }
    return 0;
}

int cmd_classify(const FamilyArgs& f, const OutputArgs& o, std::ostream& out) {
    const LineFamily fam = build_family(f);
    SingularityOptions sopt;
    sopt.samples = o.n;
    const auto pts = find_singular_points(fam, sopt);
    out << describe(fam) << "\n";
    print_singular_table(pts, static_cast<double>(fam.slope.b()), out);
    out << "summary: " << class_summary(pts) << "\n";
    if (o.check && (fam.kind == FamilyKind::OneCircle || fam.kind == FamilyKind::TwoCircle) && fam.in_regime) {
        const auto rep = census(fam, {false, 0});
        out << "cusps " << pair_text(rep.cusps) << "\n";
        return rep.cusps.matches() ? 0 : 1;
    }
    return 0;
}

int cmd_counts(const FamilyArgs& f, const OutputArgs& o, std::ostream& out) {
    const LineFamily fam = build_family(f);
    CensusOptions copt;
    copt.crossing_samples = o.n > 0 ? o.n : 0;
    const CensusReport rep = census(fam, copt);
    out << describe(fam) << "  (numeric/analytic)\n";
    out << "cusps          " << pair_text(rep.cusps) << "\n";
    out << "tangencies     " << pair_text(rep.tangencies) << "\n";
    out << "crossings      " << pair_text(rep.crossings) << (rep.crossings_partial ? "  partial" : "") << "\n";
    out << "infinity cuts  " << pair_text(rep.infinity_cuts) << "\n";
    std::string classes;
    for (int k = 0; k < 4; ++k)
        classes += fmt("%s%s %d", k ? ", " : "", std::string(to_string(static_cast<SingularClass>(k))).c_str(),
                       rep.by_class[k]);
    out << "classes        " << classes << "\n";
    if (!rep.in_regime) out << "note: r <= 1 lies outside the regime of the counting results\n";
    if (o.check) return rep.consistent() ? 0 : 1;
    return 0;
}

int cmd_crossings(const FamilyArgs& f, const OutputArgs& o, std::ostream& out) {
    const LineFamily fam = build_family(f);
    CrossingOptions copt;
    copt.samples = o.n;
    const CrossingReport rep = count_self_crossings(fam, copt);
    out << describe(fam) << "\n";
    out << "crossings " << rep.count() << (rep.partial ? " (partial: finite arcs only)" : "") << "\n";
    out << fmt("%-12s %-12s %-14s %-14s %s\n", "T1", "T2", "x", "y", "residual");
    for (const auto& c : rep.points)
        out << fmt("%-12.8f %-12.8f %-14.10f %-14.10f %.2e\n", c.T1, c.T2, c.point.x, c.point.y, c.residual);
    for (const auto& s : rep.stalled)
        out << fmt("stalled candidate T1=%.8f T2=%.8f residual %.2e\n", s.T1, s.T2, s.residual);
    if (!rep.arc_counts.empty()) {
        out << "per arc:";
        for (int n : rep.arc_counts) out << " " << n;
        out << "\n";
    }
    if (o.check && fam.kind == FamilyKind::OneCircle) {
        const int expect = predicted_one_circle_crossings(fam.slope);
        out << fmt("analytic %d\n", expect);
        return rep.count() == expect ? 0 : 1;
    }
    return 0;
}

int cmd_clock(const FamilyArgs& f, double delta, const OutputArgs& o, std::ostream& out) {
    const ClockGrid grid = clock_grid(RationalSlope(f.a, f.b), f.r, f.d, delta, samples_or_default(o.n, 1024));
    if (!o.svg.empty()) {
        write_file(o.svg, emit_clock_svg(grid));
        out << "wrote " << o.svg << "\n";
    } else if (!o.json.empty()) {
        auto cells = nlohmann::json::array();
        for (const auto& c : grid.cells) cells.push_back(scene_json(c));
        write_file(o.json, cells.dump(2) + "\n");
        out << "wrote " << o.json << "\n";
    }
    for (std::size_t k = 0; k < grid.cells.size(); ++k)
        out << fmt("r=%.4f d=%.4f  %2zu singular points (%s)\n", grid.r0 + grid.offsets[k].first,
                   grid.d0 + grid.offsets[k].second, grid.cells[k].singular.size(),
                   class_summary(grid.cells[k].singular).c_str());
    return 0;
}

int cmd_standard(const std::string& model, double y, double z, const OutputArgs& o, std::ostream& out) {
    StandardModel m;
    if (model == "swallowtail") m = StandardModel::Swallowtail;
    else if (model == "butterfly") m = StandardModel::Butterfly;
    else throw UsageError("--model must be swallowtail or butterfly");
    SceneOptions opt;
    opt.samples = samples_or_default(o.n, 2048);
    const Scene scene = standard_scene(m, y, z, opt);
    const SliceCurve slice = m == StandardModel::Swallowtail ? swallowtail_slice(z) : butterfly_slice(y, z);
    const int crossings = count_self_crossings(slice, std::max(opt.samples, 8192)).count();
    write_scene(scene, o, out);
    out << fmt("%s y=%g z=%g\n", std::string(to_string(m)).c_str(), y, z);
    out << fmt("singular points %zu (%s)\n", scene.singular.size(), class_summary(scene.singular).c_str());
    out << fmt("crossings %d\n", crossings);
    print_singular_table(scene.singular, 1.0, out);
    if (o.check) {
        const int want = scene.predictions.at("singular_points").get<int>();
        bool ok = static_cast<int>(scene.singular.size()) == want;
        if (scene.predictions.contains("crossings")) ok = ok && crossings == scene.predictions["crossings"].get<int>();
        out << (ok ? "check passed\n" : "check failed\n");
        return ok ? 0 : 1;
    }
    return 0;
}

int cmd_caustic(double r, const OutputArgs& o, std::ostream& out) {
    double prop = 0.0, ray = 0.0, chord = 0.0;
    constexpr int probes = 360;
    for (int i = 0; i < probes; ++i) {
        const auto c = compare_caustic(r, 2.0 * kPi * (i + 0.5) / probes);
        prop = std::max(prop, c.proportionality);
        ray = std::max(ray, c.ray_residual);
        chord = std::max(chord, c.chord_residual);
    }
    const bool ok = prop < 1e-12 && ray < 1e-12 && chord < 1e-12;
    out << fmt("caustic r=%g against two_circle a=2 b=1 r=%g over %d rays\n", r, r, probes);
    out << fmt("max proportionality residual %.2e\n", prop);
    out << fmt("max residual at (r cos 2t, r sin 2t): ray %.2e, chord %.2e\n", ray, chord);
    out << (ok ? "equivalent\n" : "NOT equivalent\n");
    SceneOptions opt;
    opt.samples = samples_or_default(o.n, 2048);
    opt.lines = o.lines;
    write_scene(envelope_scene(caustic_ray_family(r), opt), o, out);
    return o.check && !ok ? 1 : 0;
}

int cmd_serve(int port, std::ostream& out, std::ostream& err) {
    service::ServerConfig cfg = service::config_from_env();
    if (port >= 0) cfg.port = port;
    service::Server server(cfg);
    const int bound = server.bind();
    if (bound < 0) {
        err << "cannot bind " << cfg.host << ":" << cfg.port << "\n";
        return 1;
    }
    out << "listening on http://" << cfg.host << ":" << bound << "\n" << std::flush;
    return server.listen() ? 0 : 1;
}

void add_family(CLI::App* sub, FamilyArgs& f, bool need_slope = true) {
    auto* a = sub->add_option("--a", f.a, "slope numerator");
    if (need_slope) a->required();
    sub->add_option("--b", f.b, "slope denominator")->capture_default_str();
    sub->add_option("--r", f.r, "second circle radius")->capture_default_str();
    sub->add_option("--c", f.c, "second circle centre x")->capture_default_str();
    sub->add_option("--d", f.d, "second circle centre y")->capture_default_str();
}

void add_output(CLI::App* sub, OutputArgs& o, bool scene) {
    sub->add_option("--n", o.n, "samples")->check(CLI::Range(64, 1 << 24));
    sub->add_flag("--check", o.check, "compare with the counting results; exit 1 on mismatch");
    if (!scene) return;
    auto* svg = sub->add_option("--svg", o.svg, "write SVG to PATH");
    auto* json = sub->add_option("--json", o.json, "write JSON to PATH");
    svg->excludes(json);
    sub->add_flag("--lines", o.lines, "include the chord fan");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"envlab: envelopes of line families"};
    app.name("envlab");
    app.require_subcommand(0, 1);
    bool check_all = false;
    app.add_flag("--check", check_all, "run the built-in regression list");

    FamilyArgs fam;
    OutputArgs o;
    double delta = 0.5, y = 0.0, z = 0.0;
    std::string model;
    int port = -1;

    auto* envelope = app.add_subcommand("envelope", "sample the envelope into a scene");
    add_family(envelope, fam);
    add_output(envelope, o, true);
    auto* classify = app.add_subcommand("classify", "list singular points with their classes");
    add_family(classify, fam);
    add_output(classify, o, false);
    auto* counts = app.add_subcommand("counts", "numeric counts next to the counting results");
    add_family(counts, fam);
    add_output(counts, o, false);
    auto* crossings = app.add_subcommand("crossings", "self-crossings of the envelope");
    add_family(crossings, fam);
    add_output(crossings, o, false);
    auto* clock = app.add_subcommand("clock", "3x3 grid of offset-circle envelopes around (r, d)");
    add_family(clock, fam);
    add_output(clock, o, true);
    clock->add_option("--delta", delta, "grid spacing")->capture_default_str()->check(CLI::NonNegativeNumber);
    auto* standard = app.add_subcommand("standard", "swallowtail or butterfly slice");
    standard->add_option("--model", model, "swallowtail | butterfly")
        ->required()
        ->check(CLI::IsMember({"swallowtail", "butterfly"}));
    standard->add_option("--y", y, "slice parameter y")->capture_default_str();
    standard->add_option("--z", z, "slice parameter z")->capture_default_str();
    add_output(standard, o, true);
    auto* caustic = app.add_subcommand("caustic", "reflected rays against the m = 2 chord family");
    caustic->add_option("--r", fam.r, "source distance")->capture_default_str();
    add_output(caustic, o, true);
    auto* serve = app.add_subcommand("serve", "start the HTTP service");
    serve->add_option("--port", port, "port (default ENVLAB_PORT or 8642)")->check(CLI::Range(0, 65535));

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (check_all) return run_regressions(out);
        if (*envelope) return cmd_envelope(fam, o, out);
        if (*classify) return cmd_classify(fam, o, out);
        if (*counts) return cmd_counts(fam, o, out);
        if (*crossings) return cmd_crossings(fam, o, out);
        if (*clock) return cmd_clock(fam, delta, o, out);
        if (*standard) return cmd_standard(model, y, z, o, out);
        if (*caustic) return cmd_caustic(fam.r, o, out);
        if (*serve) return cmd_serve(port, out, err);
        out << app.help();
        return 2;
    } catch (const UsageError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << to_string(e.code()) << ": " << e.what() << "\n";
        const bool bad_input = e.code() == ErrorCode::InvalidSlope || e.code() == ErrorCode::InvalidParameter ||
                               e.code() == ErrorCode::InvalidKind;
        return bad_input ? 2 : 1;
    }
}

std::vector<RegressionCase> regression_cases() {
    std::vector<RegressionCase> cases;
    auto add = [&](std::string name, std::function<bool(std::string&)> f) {
        cases.push_back({std::move(name), std::move(f)});
    };
    auto census_case = [](const LineFamily& fam, int cusps, int tangencies, int crossings) {
        return [=](std::string& d) {
            const auto rep = census(fam);
            d = fmt("cusps %s tangencies %s crossings %s", pair_text(rep.cusps).c_str(),
                    pair_text(rep.tangencies).c_str(), pair_text(rep.crossings).c_str());
            return rep.consistent() && rep.cusps.numeric == cusps && rep.tangencies.numeric == tangencies &&
                   rep.crossings.numeric == crossings;
        };
    };
    auto classes_case = [](const LineFamily& fam, std::size_t total, int simple, int butterfly) {
        return [=](std::string& d) {
            const auto pts = find_singular_points(fam);
            const auto n = class_counts(pts);
            d = fmt("%zu singular points (%s)", pts.size(), class_summary(pts).c_str());
            return pts.size() == total && n[0] == simple && n[2] == butterfly;
        };
    };
    auto cuts_case = [](double r, int want) {
        return [=](std::string& d) {
            const auto rep = infinity_cuts(two_circle({-2, 3}, r));
            d = fmt("%zu cuts, analytic %d", rep.cuts.size(), rep.analytic_count.value_or(-1));
            return static_cast<int>(rep.cuts.size()) == want && rep.analytic_count == want;
        };
    };
    auto slice_case = [](StandardModel m, double y, double z, int singular, int crossings) {
        return [=](std::string& d) {
            const PolyLineFamily fam = m == StandardModel::Swallowtail ? swallowtail_family(z) : butterfly_family(y, z);
            const SliceCurve slice = m == StandardModel::Swallowtail ? swallowtail_slice(z) : butterfly_slice(y, z);
            const auto pts = find_singular_points(fam);
            const int cr = count_self_crossings(slice).count();
            d = fmt("%zu singular points (%s), %d crossings", pts.size(), class_summary(pts).c_str(), cr);
            return static_cast<int>(pts.size()) == singular && (crossings < 0 || cr == crossings);
        };
    };

    add("one_circle 3/1: 2 cusps, no crossings", census_case(one_circle({3, 1}), 2, 2, 0));
    add("one_circle 5/4: 1 cusp, 3 crossings", census_case(one_circle({5, 4}), 1, 1, 3));
    add("one_circle 2/5: 3 crossings", census_case(one_circle({2, 5}), 3, 3, 3));
    add("one_circle 3/1 at T=0 is (1, 0), removable", [](std::string& d) {
        const auto s = envelope_point(one_circle({3, 1}), 0.0);
        d = s.point ? fmt("(%.15g, %.15g) removable=%d", s.point->x, s.point->y, s.removable) : "at infinity";
        return s.point && std::abs(s.point->x - 1.0) < 1e-12 && std::abs(s.point->y) < 1e-12 && s.removable;
    });
    add("two_circle 3/4 r=5/2 at T=0 is (-5/7, 0)", [](std::string& d) {
        const auto s = envelope_point(two_circle({3, 4}, 2.5), 0.0);
        d = s.point ? fmt("(%.15g, %.15g)", s.point->x, s.point->y) : "at infinity";
        return s.point && std::abs(s.point->x + 5.0 / 7.0) < 1e-12 && std::abs(s.point->y) < 1e-12;
    });
    add("two_circle -4/3 r=3.5: 14 simple cusps", classes_case(two_circle({-4, 3}, 3.5), 14, 14, 0));
    add("two_circle 3/4 r=2: 4 cusps, extreme r 5/2", [](std::string& d) {
        const auto fam = two_circle({3, 4}, 2.0);
        const auto pts = find_singular_points(fam);
        const auto p = predict(fam);
        d = fmt("%zu cusps, general %d extra %d, extreme r %g", pts.size(), p.general_cusp_count, p.extra_cusp_count,
                p.extreme_r);
        return pts.size() == 4 && p.general_cusp_count == 2 && p.extra_cusp_count == 2 &&
               std::abs(p.extreme_r - 2.5) < 1e-12;
    });
    add("two_circle 3/4 r=5/2: butterfly at T=0, simple cusp at T=pi", [](std::string& d) {
        const auto pts = find_singular_points(two_circle({3, 4}, 2.5));
        d = fmt("%zu singular points (%s)", pts.size(), class_summary(pts).c_str());
        if (pts.size() != 2) return false;
        bool fly = false, cusp = false;
        for (const auto& p : pts) {
            fly = fly || (p.cls == SingularClass::Butterfly && std::min(p.T, 2 * kPi - p.T) < 1e-6);
            cusp = cusp || (p.cls == SingularClass::SimpleCusp && std::abs(p.T - kPi) < 1e-6);
        }
        return fly && cusp;
    });
    add("two_circle -2/3 r=1.1: extra cusps below r = 8/7", [](std::string& d) {
        const auto fam = two_circle({-2, 3}, 1.1);
        const auto pts = find_singular_points(fam);
        const auto p = predict(fam);
        d = fmt("%zu cusps, extra predicted %d, extreme r %.6f", pts.size(), p.extra_cusp_count, p.extreme_r);
        return pts.size() == 20 && p.extra_cusp_count == 10 && std::abs(p.extreme_r - 8.0 / 7.0) < 1e-12;
    });
    add("two_circle -2/3 r=1.2: 10 infinity cuts", cuts_case(1.2, 10));
    add("two_circle -2/3 r=1.5: 5 infinity cuts", cuts_case(1.5, 5));
    add("two_circle -2/3 r=1.7: no infinity cuts", cuts_case(1.7, 0));
    add("two_circle 3/4 r=5/2: Taylor data of both cusps", [](std::string& d) {
        const auto fam = two_circle({3, 4}, 2.5);
        const auto left = taylor_at(fam, 0.0, 5);
        const auto right = taylor_at(fam, kPi, 3);
        const auto rel = [](double got, double want) { return std::abs(got - want) / std::abs(want); };
        const double err = std::max({rel(left.x[0], -5.0 / 7.0), rel(left.x[4], -25.0 / 1792.0),
                                     rel(left.y[5], -5.0 / 768.0), rel(right.x[0], -5.0 / 23.0),
                                     rel(right.x[2], -75.0 / 1058.0), rel(right.y[3], -25.0 / 644.0)});
        d = fmt("largest relative error %.2e", err);
        return err < 1e-6;
    });
    add("swallowtail z=-1: 2 cusps and a crossing", slice_case(StandardModel::Swallowtail, 0.0, -1.0, 2, 1));
    add("swallowtail z=0: one point", slice_case(StandardModel::Swallowtail, 0.0, 0.0, 1, 0));
    add("swallowtail z=1: smooth", slice_case(StandardModel::Swallowtail, 0.0, 1.0, 0, 0));
    add("butterfly y=z=0: one (4,5) point", [](std::string& d) {
        const auto pts = find_singular_points(butterfly_family(0.0, 0.0));
        d = fmt("%zu singular points (%s)", pts.size(), class_summary(pts).c_str());
        return pts.size() == 1 && pts[0].cls == SingularClass::Butterfly && pts[0].location &&
               norm(*pts[0].location) < 1e-9;
    });
    add("butterfly tour: two transitions by two cusps", [](std::string& d) {
        std::vector<int> counts;
        for (int i = 0; i <= 200; ++i) {
            const double a = kPi / 2 + 2 * kPi * i / 200;
            counts.push_back(static_cast<int>(
                find_singular_points(butterfly_family(0.5 * std::cos(a), 0.5 * std::sin(a))).size()));
        }
        int transitions = 0;
        bool by_two = true;
        for (std::size_t i = 1; i < counts.size(); ++i)
            if (counts[i] != counts[i - 1]) {
                ++transitions;
                by_two = by_two && std::abs(counts[i] - counts[i - 1]) == 2;
            }
        d = fmt("%d count changes", transitions);
        return transitions == 2 && by_two;
    });
    add("clock 3/4 around (2.5, 0): centre and top row", [](std::string& d) {
        const auto g = clock_grid({3, 4}, 2.5, 0.0, 0.5, 256);
        const auto centre = class_counts(g.cells[4].singular);
        const auto top_mid = g.cells[1].singular.size(), top_right = g.cells[2].singular.size();
        d = fmt("centre (%s), top row %zu -> %zu", class_summary(g.cells[4].singular).c_str(), top_mid, top_right);
        return g.cells[4].singular.size() == 2 && centre[2] == 1 && centre[0] == 1 &&
               std::abs(static_cast<int>(top_mid) - static_cast<int>(top_right)) == 2;
    });
    add("offset 3/4 r=2.5 d=0.5: d-terms", [](std::string& d) {
        const auto off = offset_circle({3, 4}, 2.5, 0.0, 0.5);
        const auto two = two_circle({3, 4}, 2.5);
        const double ea = coefficient_distance(off.A - two.A, TrigPoly::constant(0.5));
        const double eb = coefficient_distance(off.B, two.B);
        const double ec = coefficient_distance(off.C - two.C, TrigPoly::cos(4, -0.5));
        d = fmt("coefficient errors %.1e %.1e %.1e", ea, eb, ec);
        return std::max({ea, eb, ec}) < 1e-15;
    });
    add("caustic equivalence with two_circle 2/1", [](std::string& d) {
        double worst = 0.0;
        for (double r : {0.5, 1.5, 2.0, 3.0})
            for (int i = 0; i < 64; ++i) {
                const auto c = compare_caustic(r, 2 * kPi * (i + 0.5) / 64);
                worst = std::max({worst, c.proportionality, c.ray_residual, c.chord_residual});
            }
        d = fmt("largest residual %.2e", worst);
        return worst < 1e-12;
    });
    return cases;
}

int run_regressions(std::ostream& out) {
    int failed = 0;
    for (const auto& c : regression_cases()) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.check(detail);
        } catch (const std::exception& e) {
            detail = std::string("error: ") + e.what();
        }
        failed += ok ? 0 : 1;
        out << (ok ? "PASS  " : "FAIL  ") << c.name << "  [" << detail << "]\n";
    }
    out << (failed ? fmt("%d case(s) failed\n", failed) : std::string("all cases passed\n"));
    return failed ? 1 : 0;
}

}  // namespace envlab::cli
