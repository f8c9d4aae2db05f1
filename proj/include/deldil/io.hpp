#pragma once

// File formats: JSON point sets, triangulations and reports; CSV tables; SVG figures.

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "deldil/closed_form.hpp"
#include "deldil/constructions.hpp"
#include "deldil/dilation.hpp"
#include "deldil/errors.hpp"
#include "deldil/random_experiments.hpp"
#include "deldil/triangulation.hpp"
#include "deldil/validity.hpp"

namespace deldil {

// Unreadable file, malformed JSON, or JSON of the wrong shape.
class IoError : public Error {
public:
    using Error::Error;
};

namespace io {

using nlohmann::json;

// %.17g: round-trips every double.
inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("write failed for '" + path + "'");
}

inline json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError("malformed JSON in " + what + ": " + e.what());
    }
}

inline json points_to_json(const PointSet& ps) {
    json arr = json::array();
    for (const auto& p : ps) arr.push_back({p.x, p.y});
    return json{{"points", arr}};
}

inline PointSet points_from_json(const json& j, const std::string& what = "points file") {
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array()) {
        throw IoError(what + ": expected {\"points\": [[x, y], ...]}");
    }
    std::vector<Point2> pts;
    for (const auto& e : j["points"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
            throw IoError(what + ": each point must be [x, y] with numeric coordinates");
        }
        pts.push_back({e[0].get<double>(), e[1].get<double>()});
    }
    return PointSet(std::move(pts));
}

inline json triangulation_to_json(const Triangulation& t) {
    json arr = json::array();
    for (const auto& tri : t.triangles) arr.push_back({tri[0], tri[1], tri[2]});
    return json{{"triangles", arr}};
}

inline Triangulation triangulation_from_json(const json& j, const std::string& what = "triangulation file") {
    if (!j.is_object() || !j.contains("triangles") || !j["triangles"].is_array()) {
        throw IoError(what + ": expected {\"triangles\": [[i, j, k], ...]}");
    }
    Triangulation t;
    for (const auto& e : j["triangles"]) {
        if (!e.is_array() || e.size() != 3) throw IoError(what + ": each triangle must be [i, j, k]");
        Tri tri{};
        for (int k = 0; k < 3; ++k) {
            if (!e[k].is_number_integer()) throw IoError(what + ": triangle indices must be integers");
            tri[k] = e[k].get<int>();
        }
        t.triangles.push_back(tri);
    }
    return t;
}

inline PointSet load_points(const std::string& path) { return points_from_json(parse_json(read_file(path), path), path); }

inline Triangulation load_triangulation(const std::string& path) {
    return triangulation_from_json(parse_json(read_file(path), path), path);
}

inline json report_to_json(const DilationReport& r) {
    json j{{"max_dilation", r.max_dilation}, {"witness", {r.witness.first, r.witness.second}}, {"path", r.witness_path}};
    if (r.pairs) {
        json rows = json::array();
        for (const auto& p : *r.pairs) rows.push_back({{"i", p.i}, {"j", p.j}, {"path_length", p.path_length}, {"dilation", p.dilation}});
        j["pairs"] = rows;
    }
    return j;
}

inline json validity_to_json(const ValidityReport& r) {
    json v = json::array();
    for (const auto& x : r.violations) v.push_back({{"triangle", x.triangle}, {"point", x.point}, {"margin", x.margin}});
    return json{{"valid", r.valid}, {"violations", v}};
}

inline std::string pairs_csv(const std::vector<PairDilation>& pairs) {
    std::string out = "i,j,path_length,dilation\n";
    for (const auto& p : pairs) out += std::to_string(p.i) + "," + std::to_string(p.j) + "," + fmt(p.path_length) + "," + fmt(p.dilation) + "\n";
    return out;
}

inline std::string sweep_csv(const SweepResult& s) {
    std::string out = "d,ell,t\n";
    for (const auto& r : s.rows) out += fmt(r.d) + "," + fmt(r.ell) + "," + fmt(r.t) + "\n";
    return out;
}

inline std::string trend_csv(const TrendResult& r) {
    std::string out = "n,trial,seed,max_dilation,witness_i,witness_j\n";
    for (const auto& t : r.trials) {
        out += std::to_string(t.n) + "," + std::to_string(t.trial) + "," + std::to_string(t.seed) + "," + fmt(t.max_dilation) + "," +
               std::to_string(t.witness_i) + "," + std::to_string(t.witness_j) + "\n";
    }
    return out;
}

inline json trend_to_json(const TrendResult& r) {
    json rows = json::array();
    for (const auto& s : r.summary) {
        json ex = json::object();
        for (const auto& [th, frac] : s.exceed) ex[fmt(th)] = frac;
        rows.push_back({{"n", s.n}, {"median", s.median}, {"max", s.max}, {"fraction_above", ex}});
    }
    int redraws = 0;
    for (const auto& t : r.trials) redraws += t.redraws;
    return json{{"summary", rows}, {"median_inversions", median_inversions(r)}, {"redrawn_samples", redraws}};
}

struct SvgScene {
    const PointSet* points = nullptr;
    const Triangulation* triangulation = nullptr;
    std::vector<Circle> guides;
    std::vector<int> witness_path;
    std::vector<int> marked; // highlighted vertices
    std::string caption;
};

// Fixed-precision SVG; identical scenes give identical bytes.
inline std::string render_svg(const SvgScene& scene) {
    const PointSet& ps = *scene.points;
    double lox = 1e300, hix = -1e300, loy = 1e300, hiy = -1e300;
    auto grow = [&](double x, double y) {
        lox = std::min(lox, x);
        hix = std::max(hix, x);
        loy = std::min(loy, y);
        hiy = std::max(hiy, y);
    };
    for (const auto& p : ps) grow(p.x, p.y);
    const double span = std::max({hix - lox, hiy - loy, 1e-12});
    const double size = 800.0, pad = 40.0, k = (size - 2 * pad) / span;
    auto X = [&](double x) { return pad + (x - lox) * k; };
    auto Y = [&](double y) { return size - pad - (y - loy) * k; };
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3f", v);
        return std::string(buf);
    };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(size) + "\" height=\"" + num(size + 30) +
         "\" viewBox=\"0 0 " + num(size) + " " + num(size + 30) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<g fill=\"none\" stroke=\"#9bb\" stroke-width=\"1\" stroke-dasharray=\"4 3\">\n";
    for (const auto& c : scene.guides) {
        s += "<circle cx=\"" + num(X(c.center.x)) + "\" cy=\"" + num(Y(c.center.y)) + "\" r=\"" + num(c.radius * k) + "\"/>\n";
    }
    s += "</g>\n";
    if (scene.triangulation) {
        s += "<g stroke=\"#444\" stroke-width=\"0.6\">\n";
        for (const auto& e : scene.triangulation->edges()) {
            s += "<line x1=\"" + num(X(ps[e.a].x)) + "\" y1=\"" + num(Y(ps[e.a].y)) + "\" x2=\"" + num(X(ps[e.b].x)) +
                 "\" y2=\"" + num(Y(ps[e.b].y)) + "\"/>\n";
        }
        s += "</g>\n";
    }
    if (scene.witness_path.size() > 1) {
        s += "<polyline fill=\"none\" stroke=\"#d22\" stroke-width=\"2.5\" points=\"";
        for (std::size_t i = 0; i < scene.witness_path.size(); ++i) {
            const auto& p = ps[scene.witness_path[i]];
            s += (i ? " " : "") + num(X(p.x)) + "," + num(Y(p.y));
        }
        s += "\"/>\n";
    }
    s += "<g fill=\"#000\">\n";
    for (const auto& p : ps) s += "<circle cx=\"" + num(X(p.x)) + "\" cy=\"" + num(Y(p.y)) + "\" r=\"1.6\"/>\n";
    s += "</g>\n<g fill=\"#16c\">\n";
    for (int v : scene.marked) s += "<circle cx=\"" + num(X(ps[v].x)) + "\" cy=\"" + num(Y(ps[v].y)) + "\" r=\"5\"/>\n";
    s += "</g>\n";
    if (!scene.caption.empty()) {
        s += "<text x=\"" + num(pad) + "\" y=\"" + num(size + 15) + "\" font-family=\"monospace\" font-size=\"14\">" +
             scene.caption + "</text>\n";
    }
    s += "</svg>\n";
    return s;
}

} // namespace io

} // namespace deldil
