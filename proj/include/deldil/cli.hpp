#pragma once

// Command-line front end. Exit codes: 0 success, 1 domain failure (invalid
// triangulation, bound not met, degenerate input, search failure), 2 usage
// or I/O error.

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "deldil/closed_form.hpp"
#include "deldil/constructions.hpp"
#include "deldil/delaunay.hpp"
#include "deldil/dilation.hpp"
#include "deldil/io.hpp"
#include "deldil/random_experiments.hpp"
#include "deldil/validity.hpp"

namespace deldil::cli {

enum ExitCode { kOk = 0, kDomainFailure = 1, kUsage = 2 };

struct BoundFailure : Error {
    using Error::Error;
};

inline void check_bound(std::optional<double> bound, double value) {
    if (bound && !(value > *bound)) {
        throw BoundFailure("dilation " + io::fmt(value) + " does not exceed the asserted bound " + io::fmt(*bound));
    }
}

inline std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw InvalidSpec("not an integer list: '" + s + "'");
        }
    }
    if (out.empty()) throw InvalidSpec("empty integer list");
    return out;
}

struct ConstructArgs {
    std::string kind;
    std::optional<int> n;
    std::optional<double> d, alpha, r, density, margin;
    std::optional<int> points;
    std::string spec_file;
    std::string out_dir = ".";
    bool svg = false;
    double eps = kConstructionEps;
    std::optional<double> bound;
};

inline void read_spec_file(ConstructArgs& a) {
    using nlohmann::json;
    const json j = io::parse_json(io::read_file(a.spec_file), a.spec_file);
    if (!j.is_object()) throw IoError(a.spec_file + ": expected a JSON object");
    auto num = [&](const char* key, std::optional<double>& dst) {
        if (!j.contains(key) || dst) return;
        if (!j[key].is_number()) throw IoError(a.spec_file + ": '" + key + "' must be a number");
        dst = j[key].get<double>();
    };
    auto integer = [&](const char* key, std::optional<int>& dst) {
        if (!j.contains(key) || dst) return;
        if (!j[key].is_number_integer()) throw IoError(a.spec_file + ": '" + key + "' must be an integer");
        dst = j[key].get<int>();
    };
    if (j.contains("kind")) {
        if (!j["kind"].is_string()) throw IoError(a.spec_file + ": 'kind' must be a string");
        if (a.kind.empty()) a.kind = j["kind"].get<std::string>();
    }
    integer("n", a.n);
    integer("points", a.points);
    num("d", a.d);
    num("alpha", a.alpha);
    num("r", a.r);
    num("arc_density", a.density);
    num("shield_margin", a.margin);
}

inline ConstructionOutput build(const ConstructArgs& a) {
    if (a.kind == "chew") {
        ChewSpec s;
        if (a.n) s.n = *a.n;
        return generate_chew(s);
    }
    if (a.kind == "convex") {
        TwoSemicircleSpec s;
        if (a.d) s.d = *a.d;
        if (a.alpha) s.alpha = *a.alpha;
        if (a.points) {
            if (*a.points % 2 != 0) throw InvalidSpec("--points must be even (split evenly between the arcs)");
            s.n_arc = *a.points / 2;
        }
        return generate_two_semicircle(s);
    }
    if (a.kind == "three-circle") {
        ThreeCircleSpec s;
        if (a.d) s.d = *a.d;
        if (a.r) s.r = *a.r;
        if (a.density) s.arc_density = *a.density;
        if (a.margin) s.shield_margin = *a.margin;
        return generate_three_circle(s);
    }
    throw InvalidSpec("unknown construction '" + a.kind + "' (chew, convex, three-circle)");
}

inline int cmd_construct(ConstructArgs a, std::ostream& out) {
    if (!a.spec_file.empty()) read_spec_file(a);
    if (a.kind.empty()) throw InvalidSpec("construct: missing kind (chew, convex, three-circle)");
    const auto c = build(a);
    const auto validity = is_valid_delaunay(c.points, c.triangulation, a.eps);
    const auto report = max_dilation(graph_from_triangulation(c.points, c.triangulation));

    std::filesystem::create_directories(a.out_dir);
    const std::filesystem::path dir(a.out_dir);
    io::write_file((dir / "points.json").string(), io::points_to_json(c.points).dump() + "\n");
    io::write_file((dir / "triangulation.json").string(), io::triangulation_to_json(c.triangulation).dump() + "\n");
    if (a.svg) {
        io::SvgScene scene{&c.points, &c.triangulation, c.guides, report.witness_path, {c.p, c.q},
                           a.kind + ": dilation " + io::fmt(report.max_dilation)};
        io::write_file((dir / "figure.svg").string(), io::render_svg(scene));
    }

    out << "kind " << a.kind << "\n";
    out << "points " << c.points.size() << "\n";
    out << "marked_pair " << c.p << " " << c.q << "\n";
    for (const auto& [k, v] : c.params) out << k << " " << io::fmt(v) << "\n";
    out << "predicted_dilation " << io::fmt(c.predicted_dilation) << "\n";
    out << "computed_dilation " << io::fmt(report.max_dilation) << "\n";
    out << "witness " << report.witness.first << " " << report.witness.second << "\n";
    out << "valid " << (validity.valid ? "true" : "false") << "\n";
    if (!validity.valid) return kDomainFailure;
    check_bound(a.bound, report.max_dilation);
    return kOk;
}

struct DilationArgs {
    std::string points, triangulation, out_file, csv_file, svg_file;
    std::vector<int> pair;
    bool pairs = false;
    std::optional<double> bound;
};

inline int cmd_dilation(const DilationArgs& a, std::ostream& out) {
    const PointSet ps = io::load_points(a.points);
    Triangulation t;
    if (a.triangulation.empty()) {
        t = delaunay(ps);
    } else {
        t = io::load_triangulation(a.triangulation);
        t = oriented_ccw(ps, t);
        validate_structure(ps, t);
    }
    const auto g = graph_from_triangulation(ps, t);
    nlohmann::json j;
    double value = 0.0;
    std::vector<int> path;
    if (!a.pair.empty()) {
        const int u = a.pair[0], v = a.pair[1];
        if (u < 0 || v < 0 || u >= g.vertex_count() || v >= g.vertex_count()) throw InvalidSpec("--pair: index out of range");
        const auto sp = shortest_path(g, u, v);
        value = pair_dilation(g, u, v);
        path = sp.path;
        j = {{"pair", {u, v}}, {"dilation", value}, {"length", sp.length}, {"path", sp.path}};
    } else {
        const auto r = max_dilation(g, {a.pairs || !a.csv_file.empty(), 0});
        value = r.max_dilation;
        path = r.witness_path;
        if (!a.csv_file.empty()) io::write_file(a.csv_file, io::pairs_csv(*r.pairs));
        DilationReport shown = r;
        if (!a.pairs) shown.pairs.reset();
        j = io::report_to_json(shown);
    }
    const std::string text = j.dump(2) + "\n";
    if (a.out_file.empty()) {
        out << text;
    } else {
        io::write_file(a.out_file, text);
        out << "dilation " << io::fmt(value) << "\n";
    }
    if (!a.svg_file.empty()) {
        io::SvgScene scene{&ps, &t, {}, path, {path.front(), path.back()}, "dilation " + io::fmt(value)};
        io::write_file(a.svg_file, io::render_svg(scene));
    }
    check_bound(a.bound, value);
    return kOk;
}

inline int cmd_sweep(double d_min, double d_max, double step, const std::string& out_file, std::ostream& out) {
    const auto s = sweep_d(d_min, d_max, step);
    std::string text = io::sweep_csv(s);
    if (out_file.empty()) {
        out << text;
    } else {
        io::write_file(out_file, text);
    }
    double lowest = 1e300;
    for (const auto& r : s.rows) lowest = std::min(lowest, r.t);
    out << "argmax_d " << io::fmt(s.argmax_d) << " max_t " << io::fmt(s.max_t) << " min_t " << io::fmt(lowest) << "\n";
    return kOk;
}

struct RandomArgs {
    std::string dist = "uniform-square";
    std::string ns = "50,200,1000";
    int trials = 20;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string csv_file, json_file;
};

inline int cmd_random(const RandomArgs& a, std::ostream& out) {
    const auto density = parse_density(a.dist);
    const auto r = dilation_trend(density, parse_int_list(a.ns), a.trials, a.seed, a.threads);
    if (a.csv_file.empty()) {
        out << io::trend_csv(r);
    } else {
        io::write_file(a.csv_file, io::trend_csv(r));
    }
    const auto summary = io::trend_to_json(r);
    if (!a.json_file.empty()) io::write_file(a.json_file, summary.dump(2) + "\n");
    for (const auto& s : r.summary) {
        out << "n " << s.n << " median " << io::fmt(s.median) << " max " << io::fmt(s.max) << "\n";
    }
    out << "median_inversions " << median_inversions(r) << "\n";
    return kOk;
}

struct PlantArgs {
    std::string config = "convex";
    int n_outside = 500;
    std::uint64_t seed = 0;
    std::string dist = "uniform-square";
    double scale = 0.2;
    std::string out_dir;
    std::optional<double> bound;
};

inline int cmd_plant(const PlantArgs& a, std::ostream& out) {
    if (a.config != "convex") throw InvalidSpec("plant: only --config convex is available");
    const auto density = parse_density(a.dist);
    const auto pc = planted_two_semicircle(TwoSemicircleSpec{}, a.seed);
    const double offset = 0.5 - a.scale / 2;
    const PointSet ps = plant({pc.config, pc.ball_radius, a.scale, {offset, offset}, a.n_outside}, density, a.seed);
    const Triangulation t = delaunay(ps);
    const auto r = max_dilation(graph_from_triangulation(ps, t));
    if (!a.out_dir.empty()) {
        std::filesystem::create_directories(a.out_dir);
        const std::filesystem::path dir(a.out_dir);
        io::write_file((dir / "points.json").string(), io::points_to_json(ps).dump() + "\n");
        io::write_file((dir / "triangulation.json").string(), io::triangulation_to_json(t).dump() + "\n");
    }
    out << "configuration_points " << pc.config.size() << "\n";
    out << "ball_radius " << io::fmt(pc.ball_radius) << "\n";
    out << "configuration_dilation " << io::fmt(pc.dilation) << "\n";
    out << "points " << ps.size() << "\n";
    out << "computed_dilation " << io::fmt(r.max_dilation) << "\n";
    out << "witness " << r.witness.first << " " << r.witness.second << "\n";
    check_bound(a.bound, r.max_dilation);
    return kOk;
}

inline int cmd_verify(const std::string& points, const std::string& triangulation, double eps, std::ostream& out) {
    const PointSet ps = io::load_points(points);
    const Triangulation t = io::load_triangulation(triangulation);
    const auto rep = is_valid_delaunay(ps, t, eps);
    out << io::validity_to_json(rep).dump(2) << "\n";
    return rep.valid ? kOk : kDomainFailure;
}

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Delaunay dilation constructions and experiments", "deldil"};
    app.require_subcommand(1);

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "generate a construction and its triangulation");
    construct->add_option("kind", ca.kind, "chew | convex | three-circle");
    construct->add_option("--n", ca.n, "chew: number of points (even, >= 8)");
    construct->add_option("--d", ca.d, "center separation");
    construct->add_option("--alpha", ca.alpha, "convex: marker angle (radians)");
    construct->add_option("--points", ca.points, "convex: total point count (even)");
    construct->add_option("--r", ca.r, "three-circle: radius of the middle circle");
    construct->add_option("--arc-density", ca.density, "three-circle: points per unit arc length");
    construct->add_option("--shield-margin", ca.margin, "three-circle: shield path excess");
    construct->add_option("--spec", ca.spec_file, "JSON spec file; flags take precedence");
    construct->add_option("--out", ca.out_dir, "output directory")->capture_default_str();
    construct->add_flag("--svg", ca.svg, "also write figure.svg");
    construct->add_option("--eps", ca.eps, "validity tolerance")->capture_default_str();
    construct->add_option("--assert-bound", ca.bound, "exit 1 unless dilation > X");

    DilationArgs da;
    auto* dil = app.add_subcommand("dilation", "maximum or single-pair dilation of a triangulation");
    dil->add_option("--points", da.points, "points JSON")->required();
    dil->add_option("--triangulation", da.triangulation, "triangulation JSON (default: Delaunay)");
    dil->add_option("--pair", da.pair, "single pair i j")->expected(2);
    dil->add_flag("--pairs", da.pairs, "include the per-pair table in the report");
    dil->add_option("--out", da.out_file, "report JSON file (default: stdout)");
    dil->add_option("--csv", da.csv_file, "per-pair table as CSV");
    dil->add_option("--svg", da.svg_file, "figure with the witness path");
    dil->add_option("--assert-bound", da.bound, "exit 1 unless dilation > X");

    double d_min = 0.0, d_max = 1.0, step = 1e-3;
    std::string sweep_out;
    auto* sweep = app.add_subcommand("sweep", "closed-form dilation over d at alpha = 1");
    sweep->add_option("--d-min", d_min)->capture_default_str();
    sweep->add_option("--d-max", d_max)->capture_default_str();
    sweep->add_option("--step", step)->capture_default_str();
    sweep->add_option("--out", sweep_out, "CSV file (default: stdout)");

    RandomArgs ra;
    auto* random = app.add_subcommand("random", "dilation of Delaunay triangulations of random samples");
    random->add_option("--dist", ra.dist, "uniform-square | uniform-disk | gaussian | mixture")->capture_default_str();
    random->add_option("--ns", ra.ns, "comma-separated increasing sizes")->capture_default_str();
    random->add_option("--trials", ra.trials)->capture_default_str();
    random->add_option("--seed", ra.seed)->capture_default_str();
    random->add_option("--threads", ra.threads)->capture_default_str();
    random->add_option("--csv", ra.csv_file, "per-trial CSV (default: stdout)");
    random->add_option("--json", ra.json_file, "summary JSON");

    PlantArgs pa;
    auto* plant_cmd = app.add_subcommand("plant", "plant a scaled construction among random points");
    plant_cmd->add_option("--config", pa.config, "convex")->capture_default_str();
    plant_cmd->add_option("--n-outside", pa.n_outside)->capture_default_str();
    plant_cmd->add_option("--seed", pa.seed)->capture_default_str();
    plant_cmd->add_option("--dist", pa.dist)->capture_default_str();
    plant_cmd->add_option("--scale", pa.scale, "side of the box holding the configuration")->capture_default_str();
    plant_cmd->add_option("--out", pa.out_dir, "write points.json and triangulation.json here");
    plant_cmd->add_option("--assert-bound", pa.bound, "exit 1 unless dilation > X");

    std::string vp, vt;
    double veps = kConstructionEps;
    auto* verify = app.add_subcommand("verify", "check the empty-circumcircle property");
    verify->add_option("--points", vp)->required();
    verify->add_option("--triangulation", vt)->required();
    verify->add_option("--eps", veps, "relative tolerance")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*construct) return cmd_construct(ca, out);
        if (*dil) return cmd_dilation(da, out);
        if (*sweep) return cmd_sweep(d_min, d_max, step, sweep_out, out);
        if (*random) return cmd_random(ra, out);
        if (*plant_cmd) return cmd_plant(pa, out);
        if (*verify) return cmd_verify(vp, vt, veps, out);
    } catch (const BoundFailure& e) {
        err << "error: " << e.what() << "\n";
        return kDomainFailure;
    } catch (const InvalidSpec& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const IoError& e) {
        err << "input error: " << e.what() << "\n";
        return kUsage;
    } catch (const MalformedTriangulation& e) {
        err << "malformed triangulation: " << e.what() << "\n";
        return kUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kDomainFailure;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "io error: " << e.what() << "\n";
        return kUsage;
    }
    return kUsage;
}

} // namespace deldil::cli
