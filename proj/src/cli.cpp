#include "ehvortex/cli.hpp"

#include "ehvortex/oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace fs = std::filesystem;

namespace ehv::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

double parse_double(const std::string& s, const std::string& what) {
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad " + what + " '" + s + "'");
    }
    if (used != s.size() || !std::isfinite(v)) throw std::invalid_argument("bad " + what + " '" + s + "'");
    return v;
}

std::pair<double, double> parse_pair(const std::string& text, const std::string& what) {
    const auto parts = split(text, ':');
    if (parts.size() != 2) throw std::invalid_argument(what + " must be lo:hi, got '" + text + "'");
    const double lo = parse_double(parts[0], what), hi = parse_double(parts[1], what);
    if (!(lo < hi)) throw std::invalid_argument(what + " needs lo < hi");
    return {lo, hi};
}

void write_atomic(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary);
        if (!os) throw std::runtime_error("cannot write " + tmp.string());
        os << content;
    }
    fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string frame_name(std::size_t n) {
    std::ostringstream os;
    os << "frame_" << std::setw(4) << std::setfill('0') << n << ".json";
    return os.str();
}

// ---------------------------------------------------------------- subcommands

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    const VerifyReport rep = verify(cfg.params);
    out << "config=" << cfg.to_json() << "\n" << rep.to_key_value();
    return rep.passed() ? 0 : 1;
}

int cmd_track(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const AnalyticSolution sol = make_solution(cfg.params, cfg.quantum);
    const NumericVecPoly field = sol.numeric(cfg.coupling_scale);
    const std::string config = cfg.to_json();
    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);

    const auto frames = track(field, cfg.grid, cfg.time.start, cfg.time.end, cfg.time.frames);

    std::string csv = "# config=" + config + "\n" + topology_csv_header() + "\n";
    std::ostringstream log;
    nlohmann::ordered_json summary;
    summary["config"] = nlohmann::ordered_json::parse(config);
    auto jframes = nlohmann::ordered_json::array();
    auto jevents = nlohmann::ordered_json::array();

    std::size_t best = 0;
    for (std::size_t n = 0; n < frames.size(); ++n) {
        const Frame& f = frames[n];
        write_atomic(dir / frame_name(n), curves_to_json(f.extraction, config));
        csv += topology_csv_row(f.report) + "\n";

        nlohmann::ordered_json jf;
        jf["file"] = frame_name(n);
        jf["time"] = f.report.time;
        jf["component_count"] = f.report.component_count;
        jf["radius"] = f.report.radius();
        jf["degenerate_cells"] = f.extraction.degenerate_cells.size();
        jf["winding_violations"] = f.extraction.winding_violations;
        jf["grid_offset"] = f.extraction.grid_offset;
        jframes.push_back(std::move(jf));

        if (n > 0 && f.topology_event) {
            nlohmann::ordered_json je;
            je["from_time"] = frames[n - 1].report.time;
            je["to_time"] = f.report.time;
            je["from_count"] = frames[n - 1].report.component_count;
            je["to_count"] = f.report.component_count;
            jevents.push_back(std::move(je));
        }
        if (!f.extraction.degenerate_cells.empty())
            log << "warning: t=" << f.report.time << " " << f.extraction.degenerate_cells.size()
                << " degenerate cells\n";
        if (f.extraction.grid_offset != 0.0)
            log << "note: t=" << f.report.time << " lattice shifted by " << f.extraction.grid_offset << " cell\n";
        if (f.report.radius() > frames[best].report.radius()) best = n;
    }
    nlohmann::ordered_json jmax;
    jmax["time"] = frames[best].report.time;
    jmax["radius"] = frames[best].report.radius();
    jmax["frame"] = best;
    jmax["interior"] = best > 0 && best + 1 < frames.size() && frames[best].report.radius() > 0;
    summary["frames"] = jframes;
    summary["events"] = jevents;
    summary["max_radius"] = jmax;
    summary["final_component_count"] = frames.back().report.component_count;

    write_atomic(dir / "topology.csv", csv);
    write_atomic(dir / "summary.json", summary.dump(1) + "\n");
    write_atomic(dir / "track.log", "# config=" + config + "\n" + log.str());
    err << log.str();

    for (const auto& f : frames)
        out << "t=" << f.report.time << " components=" << f.report.component_count << " radius=" << f.report.radius()
            << "\n";
    out << "events=" << jevents.size() << " frames=" << frames.size() << " out=" << dir.string() << "\n";
    return 0;
}

int cmd_integrate(const RunConfig& cfg, double dt, int halvings, const std::string& against, std::ostream& out) {
    const AnalyticSolution sol = make_solution(cfg.params, cfg.quantum);
    const NumericVecPoly field = sol.numeric(cfg.coupling_scale);
    const Coupling c = cfg.quantum ? cfg.params.coupling(cfg.coupling_scale) : Coupling::classical();
    const GridField s0 = sample_field(field, cfg.grid, cfg.time.start);

    std::optional<GridField> reference;
    if (against == "reference") {
        const double fine = dt / std::pow(2.0, halvings + 2);
        reference = integrate(s0, c, cfg.time.start, cfg.time.end, fine, field);
    }
    std::vector<ConvergenceRow> rows;
    for (int h = 0; h <= halvings; ++h) {
        const double step = dt / std::pow(2.0, h);
        const GridField s = integrate(s0, c, cfg.time.start, cfg.time.end, step, field);
        const double e = reference ? max_interior_difference(s, *reference) : max_interior_error(s, field);
        rows.push_back({cfg.grid.cells[0], step, e});
    }
    const std::string csv = "# config=" + cfg.to_json() + "\n# against=" + against + "\n" + convergence_csv(rows);
    if (cfg.out_dir.empty()) {
        out << csv;
    } else {
        const fs::path p(cfg.out_dir);
        if (p.has_parent_path()) fs::create_directories(p.parent_path());
        write_atomic(p, csv);
        out << "wrote " << p.string() << "\n";
    }
    return 0;
}

int cmd_render(const std::vector<std::string>& inputs, const std::string& out_dir, RenderOptions opt,
               bool overlay, const std::optional<std::string>& bounds, std::ostream& out, std::ostream& err) {
    std::vector<fs::path> files;
    for (const auto& in : inputs) {
        const fs::path p(in);
        if (fs::is_directory(p)) {
            for (const auto& e : fs::directory_iterator(p))
                if (e.path().extension() == ".json" && e.path().filename() != "summary.json") files.push_back(e.path());
        } else if (fs::exists(p)) {
            files.push_back(p);
        } else {
            err << "error: missing input " << in << "\n";
            return 2;
        }
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        err << "error: no curve files\n";
        return 2;
    }
    fs::create_directories(out_dir);
    for (const auto& f : files) {
        const std::string text = read_file(f);
        const CurveFile cf = curves_from_json(text);
        RenderOptions o = opt;
        const auto doc = nlohmann::json::parse(text);
        if (bounds) {
            const auto [lo, hi] = parse_pair(*bounds, "--bounds");
            o.lo = {lo, lo, lo};
            o.hi = {hi, hi, hi};
        } else if (doc.contains("config") && doc["config"].contains("grid")) {
            const auto& g = doc["config"]["grid"];
            for (int k = 0; k < 3; ++k) {
                o.lo[k] = g["lo"][k].get<double>();
                o.hi[k] = g["hi"][k].get<double>();
            }
        }
        if (overlay) {
            double a = 1.0;
            if (doc.contains("config") && doc["config"].contains("a")) a = parse_rational(doc["config"]["a"].get<std::string>()).convert_to<double>();
            o.overlay_ring_a = a;
        }
        const fs::path target = fs::path(out_dir) / (f.stem().string() + ".svg");
        write_atomic(target, render_svg(cf, o));
        out << target.string() << "\n";
    }
    return 0;
}

}  // namespace

// ---------------------------------------------------------------- config

TimeRange TimeRange::parse(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() != 2 && parts.size() != 3)
        throw std::invalid_argument("time range must be t0:t1[:n], got '" + text + "'");
    TimeRange r;
    r.start = parse_double(parts[0], "time");
    r.end = parse_double(parts[1], "time");
    r.frames = 2;
    if (parts.size() == 3) {
        std::size_t used = 0;
        try {
            r.frames = std::stoi(parts[2], &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != parts[2].size()) throw std::invalid_argument("bad frame count '" + parts[2] + "'");
    }
    if (r.frames < 2) throw std::invalid_argument("time range needs at least 2 frames");
    if (!(r.start < r.end)) throw std::invalid_argument("time range needs t0 < t1");
    return r;
}

double RunConfig::lambda() const { return quantum ? params.coupling(coupling_scale).lambda() : 0.0; }

std::string RunConfig::to_json() const {
    nlohmann::ordered_json j;
    j["subcommand"] = subcommand;
    j["case"] = to_string(params.kind);
    j["mode"] = quantum ? "quantum" : "classical";
    j["a"] = to_string(params.a);
    j["m"] = params.m;
    j["alpha"] = params.alpha;
    j["coupling_scale"] = coupling_scale;
    j["lambda"] = lambda();
    j["correction"] = to_string(params.source);
    if (params.mutation) {
        std::ostringstream os;
        os << "t^" << params.mutation->power << "." << "xyz"[params.mutation->component] << ":"
           << to_string(params.mutation->relative);
        j["mutation"] = os.str();
    }
    if (subcommand == "verify") return j.dump();
    j["grid"]["lo"] = {grid.lo[0], grid.lo[1], grid.lo[2]};
    j["grid"]["hi"] = {grid.hi[0], grid.hi[1], grid.hi[2]};
    j["grid"]["cells"] = {grid.cells[0], grid.cells[1], grid.cells[2]};
    j["time"]["start"] = time.start;
    j["time"]["end"] = time.end;
    j["time"]["frames"] = time.frames;
    return j.dump();
}

// ---------------------------------------------------------------- render

Camera Camera::preset(const std::string& name) {
    if (name == "ring") return {-55.0, 25.0};
    if (name == "pair") return {-35.0, 20.0};
    if (name == "top") return {0.0, 90.0};
    if (name == "front") return {0.0, 0.0};
    throw std::invalid_argument("unknown camera '" + name + "' (ring|pair|top|front)");
}

std::string render_svg(const CurveFile& file, const RenderOptions& opt) {
    const double az = opt.camera.azimuth * kPi / 180.0, el = opt.camera.elevation * kPi / 180.0;
    const Vec3 right{std::cos(az), std::sin(az), 0.0};
    const Vec3 up{-std::sin(az) * std::sin(el), std::cos(az) * std::sin(el), std::cos(el)};

    auto warp = [&](const Vec3& p) {
        Vec3 q = p;
        if (opt.y_range) {
            const auto [ylo, yhi] = *opt.y_range;
            q[1] = opt.lo[1] + (p[1] - ylo) * (opt.hi[1] - opt.lo[1]) / (yhi - ylo);
        }
        return q;
    };
    std::vector<Vec3> corners;
    for (int m = 0; m < 8; ++m)
        corners.push_back({m & 1 ? opt.hi[0] : opt.lo[0], m & 2 ? opt.hi[1] : opt.lo[1], m & 4 ? opt.hi[2] : opt.lo[2]});
    double umin = 1e300, umax = -1e300, vmin = 1e300, vmax = -1e300;
    for (const auto& c : corners) {
        umin = std::min(umin, dot(c, right));
        umax = std::max(umax, dot(c, right));
        vmin = std::min(vmin, dot(c, up));
        vmax = std::max(vmax, dot(c, up));
    }
    const double margin = 40.0;
    const double scale = std::min((opt.width - 2 * margin) / (umax - umin), (opt.height - 2 * margin) / (vmax - vmin));
    auto project = [&](const Vec3& p) {
        const Vec3 q = warp(p);
        const double u = (dot(q, right) - 0.5 * (umin + umax)) * scale + 0.5 * opt.width;
        const double v = 0.5 * opt.height - (dot(q, up) - 0.5 * (vmin + vmax)) * scale;
        return std::pair<double, double>{u, v};
    };
    auto project_raw = [&](const Vec3& q) {
        const double u = (dot(q, right) - 0.5 * (umin + umax)) * scale + 0.5 * opt.width;
        const double v = 0.5 * opt.height - (dot(q, up) - 0.5 * (vmin + vmax)) * scale;
        return std::pair<double, double>{u, v};
    };

    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
       << "\" viewBox=\"0 0 " << opt.width << " " << opt.height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    static const int edges[12][2] = {{0, 1}, {2, 3}, {4, 5}, {6, 7}, {0, 2}, {1, 3},
                                     {4, 6}, {5, 7}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};
    for (const auto& e : edges) {
        const auto [u0, v0] = project_raw(corners[e[0]]);
        const auto [u1, v1] = project_raw(corners[e[1]]);
        os << "<line x1=\"" << u0 << "\" y1=\"" << v0 << "\" x2=\"" << u1 << "\" y2=\"" << v1
           << "\" stroke=\"#bbbbbb\" stroke-width=\"1\"/>\n";
    }
    const double ylo = opt.y_range ? opt.y_range->first : opt.lo[1];
    const double yhi = opt.y_range ? opt.y_range->second : opt.hi[1];
    const char* names[3] = {"x", "y", "z"};
    const double axis_lo[3] = {opt.lo[0], ylo, opt.lo[2]};
    const double axis_hi[3] = {opt.hi[0], yhi, opt.hi[2]};
    for (int k = 0; k < 3; ++k) {
        Vec3 tip = opt.lo;
        tip[k] = opt.hi[k];
        const auto [u0, v0] = project_raw(opt.lo);
        const auto [u1, v1] = project_raw(tip);
        os << "<line x1=\"" << u0 << "\" y1=\"" << v0 << "\" x2=\"" << u1 << "\" y2=\"" << v1
           << "\" stroke=\"#444444\" stroke-width=\"1.2\"/>\n";
        const bool near_right = u1 > opt.width - 160;
        os << "<text x=\"" << (near_right ? u1 - 4 : u1 + 4) << "\" y=\"" << v1 - 6 << "\" font-size=\"12\""
           << (near_right ? " text-anchor=\"end\"" : "") << " font-family=\"sans-serif\">"
           << names[k] << " [" << std::setprecision(3) << axis_lo[k] << ", " << axis_hi[k] << "]</text>\n"
           << std::setprecision(2);
    }

    if (opt.overlay_ring_a) {
        const RingLocus loc = classical_ring_locus(*opt.overlay_ring_a, file.time);
        if (loc.circle_radius) {
            const double nn = std::sqrt(dot(loc.plane_normal, loc.plane_normal));
            const Vec3 n = (1.0 / nn) * loc.plane_normal;
            Vec3 e1 = std::abs(n[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
            e1 = e1 - dot(e1, n) * n;
            e1 = (1.0 / std::sqrt(dot(e1, e1))) * e1;
            const Vec3 e2{n[1] * e1[2] - n[2] * e1[1], n[2] * e1[0] - n[0] * e1[2], n[0] * e1[1] - n[1] * e1[0]};
            os << "<polygon fill=\"none\" stroke=\"#d04040\" stroke-width=\"1\" stroke-dasharray=\"4 3\" points=\"";
            for (int k = 0; k < 180; ++k) {
                const double th = 2.0 * kPi * k / 180.0;
                const Vec3 p = loc.sphere_center + *loc.circle_radius * (std::cos(th) * e1 + std::sin(th) * e2);
                const auto [u, v] = project(p);
                os << u << "," << v << " ";
            }
            os << "\"/>\n";
        }
    }

    // curves are cut where they leave the drawn box
    auto inside = [&](const Vec3& p) {
        const Vec3 q = warp(p);
        for (int k = 0; k < 3; ++k) {
            const double tol = 1e-9 * (opt.hi[k] - opt.lo[k]);
            if (q[k] < opt.lo[k] - tol || q[k] > opt.hi[k] + tol) return false;
        }
        return true;
    };
    for (const auto& c : file.curves) {
        std::vector<std::vector<Vec3>> runs(1);
        for (const auto& p : c.points) {
            if (inside(p)) {
                runs.back().push_back(p);
            } else if (!runs.back().empty()) {
                runs.emplace_back();
            }
        }
        const bool whole = runs.size() == 1 && runs[0].size() == c.points.size();
        for (const auto& run : runs) {
            if (run.size() < 2) continue;
            os << (c.closed && whole ? "<polygon" : "<polyline")
               << " fill=\"none\" stroke=\"#1f3f9f\" stroke-width=\"1.6\" points=\"";
            for (const auto& p : run) {
                const auto [u, v] = project(p);
                os << u << "," << v << " ";
            }
            os << "\"/>\n";
        }
    }
    os << "<text x=\"10\" y=\"20\" font-size=\"14\" font-family=\"sans-serif\">t = " << std::setprecision(4)
       << file.time << "  curves: " << file.curves.size() << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

// ---------------------------------------------------------------- entry point

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Euler-Heisenberg vortex solutions: verification, tracking, integration, rendering"};
    app.require_subcommand(1);

    std::string case_name, correction = "printed", mutate, a_text = "1", t_text, bounds, y_range, camera = "ring",
                against = "analytic", out_path;
    double m = 1.0, alpha = kFineStructure, coupling_scale = 1.0, box = 4.0, dt = 0.01;
    int cells = 96, halvings = 1;
    bool classical = false, quantum = false, overlay = false;
    std::vector<std::string> inputs;

    auto add_physics = [&](CLI::App* sub) {
        sub->add_option("--case", case_name, "a (ring) or b (pair)")->required();
        sub->add_option("--a", a_text, "length scale a (exact rational)");
        sub->add_option("--m", m, "electron mass");
        sub->add_option("--alpha", alpha, "fine-structure constant");
        sub->add_option("--correction", correction, "printed|perturbative");
    };

    auto* verify_cmd = app.add_subcommand("verify", "exact residual check of an analytic solution");
    add_physics(verify_cmd);
    verify_cmd->add_option("--mutate", mutate, "perturb one correction coefficient, e.g. beta.x:1e-3");

    auto* track_cmd = app.add_subcommand("track", "extract and track vortex lines over a time range");
    add_physics(track_cmd);
    auto* cflag = track_cmd->add_flag("--classical", classical, "Maxwell seed only");
    auto* qflag = track_cmd->add_flag("--quantum", quantum, "seed plus quantum correction");
    cflag->excludes(qflag);
    track_cmd->add_option("--box", box, "half width of the cubic box");
    track_cmd->add_option("--grid", cells, "cells per axis");
    track_cmd->add_option("--t", t_text, "t0:t1:frames")->required();
    track_cmd->add_option("--coupling-scale", coupling_scale, "multiplier on lambda");
    track_cmd->add_option("--out", out_path, "output directory")->required();

    auto* integ_cmd = app.add_subcommand("integrate", "RK4 oracle run and convergence table");
    add_physics(integ_cmd);
    auto* icflag = integ_cmd->add_flag("--classical", classical, "Maxwell seed only");
    icflag->excludes(integ_cmd->add_flag("--quantum", quantum, "seed plus quantum correction (default)"));
    integ_cmd->add_option("--box", box, "half width of the cubic box");
    integ_cmd->add_option("--grid", cells, "cells per axis");
    integ_cmd->add_option("--t", t_text, "t0:t1");
    integ_cmd->add_option("--dt", dt, "largest time step");
    integ_cmd->add_option("--halvings", halvings, "number of dt halvings");
    integ_cmd->add_option("--against", against, "analytic|reference");
    integ_cmd->add_option("--coupling-scale", coupling_scale, "multiplier on lambda");
    integ_cmd->add_option("--out", out_path, "CSV path (stdout if absent)");

    auto* render_cmd = app.add_subcommand("render", "SVG line drawings of curve files");
    render_cmd->add_option("--in", inputs, "curve JSON files or track directories")->required();
    render_cmd->add_option("--out", out_path, "output directory")->required();
    render_cmd->add_option("--camera", camera, "ring|pair|top|front");
    render_cmd->add_option("--y-range", y_range, "lo:hi drawn over the full y extent");
    render_cmd->add_option("--bounds", bounds, "lo:hi cube drawn as axes");
    render_cmd->add_flag("--overlay-ring", overlay, "draw the classical ring locus");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    RunConfig cfg;
    try {
        if (*render_cmd) {
            cfg.subcommand = "render";
            RenderOptions opt;
            opt.camera = Camera::preset(camera);
            if (!y_range.empty()) opt.y_range = parse_pair(y_range, "--y-range");
            return cmd_render(inputs, out_path, opt, overlay,
                              bounds.empty() ? std::nullopt : std::optional<std::string>(bounds), out, err);
        }
        cfg.params.kind = parse_case(case_name);
        cfg.params.source = parse_correction_source(correction);
        cfg.params.a = parse_rational(a_text);
        cfg.params.m = m;
        cfg.params.alpha = alpha;
        if (!mutate.empty()) cfg.params.mutation = Mutation::parse(mutate);
        cfg.params.validate();
        cfg.coupling_scale = coupling_scale;
        cfg.params.coupling(coupling_scale).validate();
        cfg.out_dir = out_path;

        if (*verify_cmd) {
            cfg.subcommand = "verify";
            return cmd_verify(cfg, out);
        }
        if (!(box > 0)) throw std::invalid_argument("--box must be positive");
        cfg.grid = GridSpec::cube(box, cells);
        cfg.grid.validate();
        if (*track_cmd) {
            cfg.subcommand = "track";
            cfg.quantum = quantum;
            cfg.time = TimeRange::parse(t_text);
            return cmd_track(cfg, out, err);
        }
        cfg.subcommand = "integrate";
        cfg.quantum = !classical;
        cfg.time = TimeRange::parse(t_text.empty() ? "0:0.1" : t_text);
        if (halvings < 0 || halvings > 6) throw std::invalid_argument("--halvings must be in [0, 6]");
        if (against != "analytic" && against != "reference")
            throw std::invalid_argument("--against must be analytic or reference");
        if (dt > 0.5 * cfg.grid.max_spacing()) throw std::invalid_argument("--dt exceeds 0.5 dx");
        return cmd_integrate(cfg, dt, halvings, against, out);
    } catch (const IntegrationError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace ehv::cli
