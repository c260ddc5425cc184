#include "ehvortex/vortex.hpp"

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace ehv {

void GridSpec::validate() const {
    for (int a = 0; a < 3; ++a) {
        if (cells[a] < 8) throw std::invalid_argument("grid: resolution must be at least 8 cells per axis");
        if (!(hi[a] > lo[a]) || !std::isfinite(lo[a]) || !std::isfinite(hi[a]))
            throw std::invalid_argument("grid: bounds must satisfy lo < hi");
    }
}

double GridSpec::cell_diagonal() const {
    const double dx = spacing(0), dy = spacing(1), dz = spacing(2);
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double GridSpec::max_spacing() const { return std::max({spacing(0), spacing(1), spacing(2)}); }

std::size_t GridSpec::vertex_count() const {
    return static_cast<std::size_t>(cells[0] + 1) * (cells[1] + 1) * (cells[2] + 1);
}

Vec3 GridSpec::vertex(int i, int j, int k) const {
    return {lo[0] + i * spacing(0), lo[1] + j * spacing(1), lo[2] + k * spacing(2)};
}

GridSpec GridSpec::shifted(double fraction) const {
    GridSpec g = *this;
    for (int a = 0; a < 3; ++a) {
        const double d = fraction * spacing(a);
        g.lo[a] += d;
        g.hi[a] += d;
    }
    return g;
}

GridSpec GridSpec::refined() const {
    GridSpec g = *this;
    for (int& n : g.cells) n *= 2;
    return g;
}

bool ComplexLattice::has_exact_zero() const {
    return std::any_of(values.begin(), values.end(), [](const auto& w) { return w == 0.0; });
}

ComplexLattice sample_scalar(const NumericVecPoly& field, const GridSpec& grid, double t) {
    grid.validate();
    ComplexLattice lat;
    lat.grid = grid;
    lat.time = t;
    lat.values.resize(grid.vertex_count());
    for (int k = 0; k <= grid.cells[2]; ++k)
        for (int j = 0; j <= grid.cells[1]; ++j)
            for (int i = 0; i <= grid.cells[0]; ++i) {
                const Vec3 p = grid.vertex(i, j, k);
                lat.values[lat.index(i, j, k)] = field.square({p[0], p[1], p[2], t});
            }
    return lat;
}

Winding plaquette_winding(std::complex<double> w1, std::complex<double> w2, std::complex<double> w3,
                          std::complex<double> w4) {
    if (w1 == 0.0 || w2 == 0.0 || w3 == 0.0 || w4 == 0.0) return {0, true};
    // antisymmetric in (from, to) even for an exact half turn, so shared edges cancel between faces
    auto step = [](std::complex<double> from, std::complex<double> to) {
        const std::complex<double> z = to * std::conj(from);
        if (z.imag() == 0.0 && z.real() < 0.0) {
            const bool ascending = std::pair(from.real(), from.imag()) < std::pair(to.real(), to.imag());
            return ascending ? std::numbers::pi : -std::numbers::pi;
        }
        return std::arg(z);
    };
    const double total = step(w1, w2) + step(w2, w3) + step(w3, w4) + step(w4, w1);
    return {static_cast<int>(std::lround(total / (2.0 * std::numbers::pi))), false};
}

Winding face_winding(const ComplexLattice& lat, int axis, int i, int j, int k) {
    std::array<int, 3> v{i, j, k};
    std::array<int, 3> e1{0, 0, 0}, e2{0, 0, 0};
    e1[(axis + 1) % 3] = 1;
    e2[(axis + 2) % 3] = 1;
    auto at = [&](int a, int b) {
        return lat.at(v[0] + a * e1[0] + b * e2[0], v[1] + a * e1[1] + b * e2[1], v[2] + a * e1[2] + b * e2[2]);
    };
    return plaquette_winding(at(0, 0), at(1, 0), at(1, 1), at(0, 1));
}

namespace {

/// Zero of the complex bilinear interpolant on the unit square, or the centre if none is found.
std::array<double, 2> bilinear_zero(std::complex<double> w00, std::complex<double> w10, std::complex<double> w11,
                                    std::complex<double> w01) {
    double u = 0.5, v = 0.5;
    for (int it = 0; it < 30; ++it) {
        const std::complex<double> f = w00 * (1 - u) * (1 - v) + w10 * u * (1 - v) + w11 * u * v + w01 * (1 - u) * v;
        const std::complex<double> fu = (w10 - w00) * (1 - v) + (w11 - w01) * v;
        const std::complex<double> fv = (w01 - w00) * (1 - u) + (w11 - w10) * u;
        const double det = fu.real() * fv.imag() - fv.real() * fu.imag();
        if (det == 0.0 || !std::isfinite(det)) return {0.5, 0.5};
        const double du = (f.real() * fv.imag() - fv.real() * f.imag()) / det;
        const double dv = (fu.real() * f.imag() - f.real() * fu.imag()) / det;
        u -= du;
        v -= dv;
        if (!std::isfinite(u) || !std::isfinite(v)) return {0.5, 0.5};
        if (std::abs(du) + std::abs(dv) < 1e-13) break;
    }
    constexpr double slack = 1e-6;
    if (u < -slack || u > 1 + slack || v < -slack || v > 1 + slack) return {0.5, 0.5};
    return {std::clamp(u, 0.0, 1.0), std::clamp(v, 0.0, 1.0)};
}

struct Node {
    FaceRef face;
    int winding = 0;
    Vec3 position{};
};

double dist2(const Vec3& a, const Vec3& b) {
    const Vec3 d = a - b;
    return dot(d, d);
}

}  // namespace

Extraction extract_vortex_curves(const ComplexLattice& lat) {
    const GridSpec& g = lat.grid;
    const int nx = g.cells[0], ny = g.cells[1], nz = g.cells[2];
    const std::size_t nv = g.vertex_count();

    Extraction ex;
    ex.time = lat.time;
    ex.grid = g;

    // Face windings per normal axis, indexed by lowest vertex; on-node faces marked.
    constexpr std::int8_t kOnNode = INT8_MIN;
    std::array<std::vector<std::int8_t>, 3> wind;
    std::array<std::vector<std::int32_t>, 3> first_node;
    std::vector<Node> nodes;
    for (int axis = 0; axis < 3; ++axis) {
        wind[axis].assign(nv, 0);
        first_node[axis].assign(nv, -1);
        std::array<int, 3> lim{nx - 1, ny - 1, nz - 1};
        lim[axis] += 1;
        const int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
        for (int k = 0; k <= lim[2]; ++k)
            for (int j = 0; j <= lim[1]; ++j)
                for (int i = 0; i <= lim[0]; ++i) {
                    const Winding w = face_winding(lat, axis, i, j, k);
                    const std::size_t id = lat.index(i, j, k);
                    if (w.on_node) {
                        wind[axis][id] = kOnNode;
                        continue;
                    }
                    if (w.value == 0) continue;
                    wind[axis][id] = static_cast<std::int8_t>(std::clamp(w.value, -100, 100));

                    std::array<int, 3> v{i, j, k};
                    auto corner = [&](int a, int b) {
                        std::array<int, 3> c = v;
                        c[a1] += a;
                        c[a2] += b;
                        return lat.at(c[0], c[1], c[2]);
                    };
                    const auto [u, s] = bilinear_zero(corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1));
                    Vec3 pos = g.vertex(i, j, k);
                    pos[a1] += u * g.spacing(a1);
                    pos[a2] += s * g.spacing(a2);

                    first_node[axis][id] = static_cast<std::int32_t>(nodes.size());
                    const int sign = w.value > 0 ? 1 : -1;
                    for (int rep = 0; rep < std::abs(w.value); ++rep)
                        nodes.push_back({FaceRef{static_cast<std::uint8_t>(axis), i, j, k}, sign, pos});
                }
    }

    std::vector<std::int32_t> next(nodes.size(), -1), prev(nodes.size(), -1);

    std::vector<std::int32_t> entries, exits;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                entries.clear();
                exits.clear();
                bool on_node = false;
                int net = 0;
                for (int axis = 0; axis < 3; ++axis) {
                    for (int side = 0; side < 2; ++side) {
                        std::array<int, 3> v{i, j, k};
                        v[axis] += side;
                        const std::size_t id = lat.index(v[0], v[1], v[2]);
                        const std::int8_t w = wind[axis][id];
                        if (w == kOnNode) {
                            on_node = true;
                            continue;
                        }
                        if (w == 0) continue;
                        const int outward = side == 1 ? w : -w;
                        net += outward;
                        const std::int32_t first = first_node[axis][id];
                        for (int rep = 0; rep < std::abs(outward); ++rep)
                            (outward > 0 ? exits : entries).push_back(first + rep);
                    }
                }
                if (net != 0) ++ex.winding_violations;
                if (on_node || net != 0) ex.degenerate_cells.push_back({i, j, k});
                if (entries.empty() || exits.empty()) continue;

                // Greedy nearest pairing; exact for the common single-line cell.
                std::vector<bool> used(exits.size(), false);
                for (std::int32_t e : entries) {
                    std::size_t best = exits.size();
                    double best_d = 0;
                    for (std::size_t x = 0; x < exits.size(); ++x) {
                        if (used[x]) continue;
                        const double d = dist2(nodes[e].position, nodes[exits[x]].position);
                        if (best == exits.size() || d < best_d) {
                            best = x;
                            best_d = d;
                        }
                    }
                    if (best == exits.size()) break;
                    used[best] = true;
                    next[e] = exits[best];
                    prev[exits[best]] = e;
                }
            }

    std::vector<bool> visited(nodes.size(), false);
    auto walk = [&](std::int32_t start, bool closed) {
        VortexCurve c;
        c.closed = closed;
        c.component_id = static_cast<int>(ex.curves.size());
        std::int32_t n = start;
        while (n >= 0 && !visited[n]) {
            visited[n] = true;
            c.points.push_back(nodes[n].position);
            c.faces.push_back(nodes[n].face);
            c.windings.push_back(nodes[n].winding);
            n = next[n];
        }
        ex.curves.push_back(std::move(c));
    };
    for (std::size_t n = 0; n < nodes.size(); ++n)
        if (prev[n] < 0 && !visited[n]) walk(static_cast<std::int32_t>(n), false);
    for (std::size_t n = 0; n < nodes.size(); ++n)
        if (!visited[n]) walk(static_cast<std::int32_t>(n), true);
    return ex;
}

Extraction extract_at(const NumericVecPoly& field, const GridSpec& grid, double t) {
    for (double offset : {0.0, 0.5, 0.25}) {
        const GridSpec g = offset == 0.0 ? grid : grid.shifted(offset);
        ComplexLattice lat = sample_scalar(field, g, t);
        if (lat.has_exact_zero() && offset != 0.25) continue;
        Extraction ex = extract_vortex_curves(lat);
        ex.grid_offset = offset;
        return ex;
    }
    return {};  // unreachable
}

RefineResult refine_crossing(const NumericVecPoly& field, double t, const Vec3& seed, const RefineOptions& opt) {
    auto residual = [&](const Vec3& p) { return field.square({p[0], p[1], p[2], t}); };
    auto scale2 = [&](const Vec3& p) {
        const CVec3 f = field({p[0], p[1], p[2], t});
        return std::norm(f[0]) + std::norm(f[1]) + std::norm(f[2]);
    };

    RefineResult r;
    r.point = seed;
    Vec3 p = seed;
    for (int it = 0; it <= opt.max_iterations; ++it) {
        const std::complex<double> g = residual(p);
        const double tol = opt.tolerance * scale2(p);
        if (std::abs(g.real()) <= tol && std::abs(g.imag()) <= tol) {
            r.point = p;
            r.converged = true;
            r.iterations = it;
            return r;
        }
        if (it == opt.max_iterations) break;

        // J is 2x3: rows Re, Im; columns x, y, z.
        double J[2][3];
        for (int a = 0; a < 3; ++a) {
            Vec3 hp = p, hm = p;
            const double h = opt.fd_step * std::max(1.0, std::abs(p[a]));
            hp[a] += h;
            hm[a] -= h;
            const std::complex<double> d = (residual(hp) - residual(hm)) / (2.0 * h);
            J[0][a] = d.real();
            J[1][a] = d.imag();
        }
        // minimum-norm step: dp = -J^T (J J^T)^-1 g
        const double a11 = J[0][0] * J[0][0] + J[0][1] * J[0][1] + J[0][2] * J[0][2];
        const double a12 = J[0][0] * J[1][0] + J[0][1] * J[1][1] + J[0][2] * J[1][2];
        const double a22 = J[1][0] * J[1][0] + J[1][1] * J[1][1] + J[1][2] * J[1][2];
        const double det = a11 * a22 - a12 * a12;
        if (!(std::abs(det) > 1e-300) || !std::isfinite(det)) break;
        const double y1 = (a22 * g.real() - a12 * g.imag()) / det;
        const double y2 = (-a12 * g.real() + a11 * g.imag()) / det;
        for (int a = 0; a < 3; ++a) p[a] -= J[0][a] * y1 + J[1][a] * y2;
        if (!std::isfinite(p[0] + p[1] + p[2]) || std::sqrt(dist2(p, seed)) > opt.max_displacement) break;
    }
    r.point = seed;
    r.converged = false;
    r.iterations = opt.max_iterations;
    return r;
}

ComponentStats component_stats(const VortexCurve& curve) {
    ComponentStats s;
    s.closed = curve.closed;
    s.point_count = curve.points.size();
    const auto& pts = curve.points;
    if (pts.empty()) return s;

    // Segments carry arc-length weight, split evenly between their endpoints.
    std::vector<double> w(pts.size(), 0.0);
    const std::size_t nseg = curve.closed && pts.size() > 2 ? pts.size() : pts.size() - 1;
    for (std::size_t k = 0; k < nseg; ++k) {
        const std::size_t a = k, b = (k + 1) % pts.size();
        const double len = std::sqrt(dist2(pts[a], pts[b]));
        s.arc_length += len;
        w[a] += 0.5 * len;
        w[b] += 0.5 * len;
    }
    double total = s.arc_length;
    if (total <= 0.0) {
        std::fill(w.begin(), w.end(), 1.0);
        total = static_cast<double>(pts.size());
    }

    Vec3 c{0, 0, 0};
    for (std::size_t k = 0; k < pts.size(); ++k) c = c + (w[k] / total) * pts[k];
    s.centroid = c;

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const Vec3 d = pts[k] - c;
        s.ring_radius += w[k] / total * std::sqrt(dot(d, d));
        const Eigen::Vector3d v(d[0], d[1], d[2]);
        cov += (w[k] / total) * v * v.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(cov);
    s.planarity_deviation = std::sqrt(std::max(0.0, eig.eigenvalues()(0)));
    const Eigen::Vector3d n = eig.eigenvectors().col(0);
    s.plane_normal = {n(0), n(1), n(2)};
    return s;
}

double TopologyReport::radius() const {
    const ComponentStats* best = nullptr;
    for (const auto& c : components)
        if (!best || c.arc_length > best->arc_length) best = &c;
    return best ? best->ring_radius : 0.0;
}

double TopologyReport::planarity() const {
    double p = 0.0;
    for (const auto& c : components) p = std::max(p, c.planarity_deviation);
    return p;
}

double TopologyReport::total_arc_length() const {
    double l = 0.0;
    for (const auto& c : components) l += c.arc_length;
    return l;
}

TopologyReport topology_report(const std::vector<VortexCurve>& curves, double t) {
    TopologyReport r;
    r.time = t;
    r.component_count = static_cast<int>(curves.size());
    for (const auto& c : curves) r.components.push_back(component_stats(c));
    return r;
}

std::vector<double> frame_times(double t_start, double t_end, int steps) {
    if (steps < 2) throw std::invalid_argument("track: at least 2 frames required");
    std::vector<double> ts(steps);
    for (int k = 0; k < steps; ++k) ts[k] = t_start + (t_end - t_start) * k / (steps - 1);
    ts.back() = t_end;
    return ts;
}

std::vector<Frame> track(const NumericVecPoly& field, const GridSpec& grid, double t_start, double t_end, int steps) {
    std::vector<Frame> frames;
    for (double t : frame_times(t_start, t_end, steps)) {
        Frame f;
        f.extraction = extract_at(field, grid, t);
        f.report = topology_report(f.extraction.curves, t);
        f.topology_event = !frames.empty() && frames.back().report.component_count != f.report.component_count;
        frames.push_back(std::move(f));
    }
    return frames;
}

std::string curves_to_json(const Extraction& ex, const std::string& config_json) {
    nlohmann::ordered_json doc;
    doc["time"] = ex.time;
    doc["config"] = nlohmann::ordered_json::parse(config_json);
    doc["grid_offset"] = ex.grid_offset;
    doc["degenerate_cells"] = ex.degenerate_cells.size();
    auto& arr = doc["curves"] = nlohmann::ordered_json::array();
    for (const auto& c : ex.curves) {
        nlohmann::ordered_json jc;
        jc["closed"] = c.closed;
        auto& pts = jc["points"] = nlohmann::ordered_json::array();
        for (const auto& p : c.points) pts.push_back({p[0], p[1], p[2]});
        arr.push_back(std::move(jc));
    }
    return doc.dump(1) + "\n";
}

CurveFile curves_from_json(const std::string& text) {
    const auto doc = nlohmann::json::parse(text);
    CurveFile f;
    f.time = doc.value("time", 0.0);
    for (const auto& jc : doc.at("curves")) {
        VortexCurve c;
        c.closed = jc.value("closed", false);
        for (const auto& p : jc.at("points")) c.points.push_back({p.at(0).get<double>(), p.at(1).get<double>(), p.at(2).get<double>()});
        c.component_id = static_cast<int>(f.curves.size());
        f.curves.push_back(std::move(c));
    }
    return f;
}

std::string topology_csv_header() { return "time,component_count,radius,planarity,arclength"; }

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string topology_csv_row(const TopologyReport& r) {
    return format_double(r.time) + ',' + std::to_string(r.component_count) + ',' + format_double(r.radius()) + ',' +
           format_double(r.planarity()) + ',' + format_double(r.total_arc_length());
}

}  // namespace ehv
