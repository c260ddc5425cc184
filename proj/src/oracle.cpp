#include "ehvortex/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace ehv {

bool GridField::in_margin(int i, int j, int k, int width) const {
    return i < width || j < width || k < width || i > grid.cells[0] - width || j > grid.cells[1] - width ||
           k > grid.cells[2] - width;
}

GridField sample_field(const NumericVecPoly& fplus, const GridSpec& grid, double t, int boundary_width) {
    grid.validate();
    GridField s;
    s.grid = grid;
    s.time = t;
    s.boundary_width = boundary_width;
    s.D.resize(grid.vertex_count());
    s.B.resize(grid.vertex_count());
    for (int k = 0; k <= grid.cells[2]; ++k)
        for (int j = 0; j <= grid.cells[1]; ++j)
            for (int i = 0; i <= grid.cells[0]; ++i) {
                const Vec3 p = grid.vertex(i, j, k);
                const auto [D, B] = from_riemann_silberstein(fplus({p[0], p[1], p[2], t}));
                s.D[s.index(i, j, k)] = D;
                s.B[s.index(i, j, k)] = B;
            }
    return s;
}

void clamp_boundary(GridField& s, const NumericVecPoly& fplus, double t) {
    const auto& g = s.grid;
    for (int k = 0; k <= g.cells[2]; ++k)
        for (int j = 0; j <= g.cells[1]; ++j)
            for (int i = 0; i <= g.cells[0]; ++i) {
                if (!s.in_boundary(i, j, k)) continue;
                const Vec3 p = g.vertex(i, j, k);
                const auto [D, B] = from_riemann_silberstein(fplus({p[0], p[1], p[2], t}));
                s.D[s.index(i, j, k)] = D;
                s.B[s.index(i, j, k)] = B;
            }
    s.time = t;
}

namespace {

/// Fourth-order centred first derivative of component `comp` of `f` along `axis` at (i,j,k).
double d4(const GridField& s, const std::vector<Vec3>& f, int comp, int axis, int i, int j, int k) {
    std::array<int, 3> v{i, j, k};
    auto at = [&](int off) {
        std::array<int, 3> w = v;
        w[axis] += off;
        return f[s.index(w[0], w[1], w[2])][comp];
    };
    return (at(-2) - 8.0 * at(-1) + 8.0 * at(1) - at(2)) / (12.0 * s.grid.spacing(axis));
}

Vec3 curl4(const GridField& s, const std::vector<Vec3>& f, int i, int j, int k) {
    return {d4(s, f, 2, 1, i, j, k) - d4(s, f, 1, 2, i, j, k), d4(s, f, 0, 2, i, j, k) - d4(s, f, 2, 0, i, j, k),
            d4(s, f, 1, 0, i, j, k) - d4(s, f, 0, 1, i, j, k)};
}

void axpy(std::vector<Vec3>& out, const std::vector<Vec3>& base, double h, const std::vector<Vec3>& k) {
    out.resize(base.size());
    for (std::size_t n = 0; n < base.size(); ++n) out[n] = base[n] + h * k[n];
}

bool all_finite(const GridField& s) {
    for (std::size_t n = 0; n < s.D.size(); ++n)
        for (int c = 0; c < 3; ++c)
            if (!std::isfinite(s.D[n][c]) || !std::isfinite(s.B[n][c])) return false;
    return true;
}

}  // namespace

GridField rhs(const GridField& s, const Coupling& c) {
    const auto& g = s.grid;
    const std::size_t nv = g.vertex_count();
    std::vector<Vec3> wd(nv), wb(nv);
    for (std::size_t n = 0; n < nv; ++n) {
        wd[n] = hamiltonian_grad_B(s.D[n], s.B[n], c);
        wb[n] = hamiltonian_grad_D(s.D[n], s.B[n], c);
    }
    GridField out;
    out.grid = g;
    out.time = s.time;
    out.boundary_width = s.boundary_width;
    out.D.assign(nv, Vec3{0, 0, 0});
    out.B.assign(nv, Vec3{0, 0, 0});
    for (int k = 2; k <= g.cells[2] - 2; ++k)
        for (int j = 2; j <= g.cells[1] - 2; ++j)
            for (int i = 2; i <= g.cells[0] - 2; ++i) {
                const std::size_t n = s.index(i, j, k);
                out.D[n] = curl4(s, wd, i, j, k);
                out.B[n] = -1.0 * curl4(s, wb, i, j, k);
            }
    return out;
}

GridField integrate(const GridField& state0, const Coupling& c, double t0, double t1, double dt,
                    const NumericVecPoly& boundary) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
    const double dx = std::min({state0.grid.spacing(0), state0.grid.spacing(1), state0.grid.spacing(2)});
    if (dt > 0.5 * dx * (1.0 + 1e-12)) throw std::invalid_argument("integrate: dt exceeds 0.5 dx");
    const int steps = std::max(1, static_cast<int>(std::ceil((t1 - t0) / dt - 1e-9)));
    const double h = (t1 - t0) / steps;

    GridField u = state0;
    clamp_boundary(u, boundary, t0);
    GridField stage = u;
    for (int n = 0; n < steps; ++n) {
        const double t = t0 + n * h;
        const GridField k1 = rhs(u, c);

        axpy(stage.D, u.D, 0.5 * h, k1.D);
        axpy(stage.B, u.B, 0.5 * h, k1.B);
        clamp_boundary(stage, boundary, t + 0.5 * h);
        const GridField k2 = rhs(stage, c);

        axpy(stage.D, u.D, 0.5 * h, k2.D);
        axpy(stage.B, u.B, 0.5 * h, k2.B);
        clamp_boundary(stage, boundary, t + 0.5 * h);
        const GridField k3 = rhs(stage, c);

        axpy(stage.D, u.D, h, k3.D);
        axpy(stage.B, u.B, h, k3.B);
        clamp_boundary(stage, boundary, t + h);
        const GridField k4 = rhs(stage, c);

        for (std::size_t m = 0; m < u.D.size(); ++m) {
            u.D[m] = u.D[m] + (h / 6.0) * (k1.D[m] + 2.0 * k2.D[m] + 2.0 * k3.D[m] + k4.D[m]);
            u.B[m] = u.B[m] + (h / 6.0) * (k1.B[m] + 2.0 * k2.B[m] + 2.0 * k3.B[m] + k4.B[m]);
        }
        const double t_next = n + 1 == steps ? t1 : t + h;
        clamp_boundary(u, boundary, t_next);
        if (!all_finite(u)) throw IntegrationError("integrate: non-finite field at t=" + std::to_string(t_next), t_next);
    }
    return u;
}

double max_interior_error(const GridField& s, const NumericVecPoly& exact, int margin) {
    const GridField ref = sample_field(exact, s.grid, s.time, s.boundary_width);
    return max_interior_difference(s, ref, margin);
}

double max_interior_difference(const GridField& a, const GridField& b, int margin) {
    double err = 0.0;
    const auto& g = a.grid;
    for (int k = margin; k <= g.cells[2] - margin; ++k)
        for (int j = margin; j <= g.cells[1] - margin; ++j)
            for (int i = margin; i <= g.cells[0] - margin; ++i) {
                const std::size_t n = a.index(i, j, k);
                for (int c = 0; c < 3; ++c) {
                    err = std::max(err, std::abs(a.D[n][c] - b.D[n][c]));
                    err = std::max(err, std::abs(a.B[n][c] - b.B[n][c]));
                }
            }
    return err;
}

DivergenceNorms max_divergence(const GridField& s, int margin) {
    DivergenceNorms out;
    const auto& g = s.grid;
    margin = std::max(margin, 2);
    for (int k = margin; k <= g.cells[2] - margin; ++k)
        for (int j = margin; j <= g.cells[1] - margin; ++j)
            for (int i = margin; i <= g.cells[0] - margin; ++i) {
                const double dd = d4(s, s.D, 0, 0, i, j, k) + d4(s, s.D, 1, 1, i, j, k) + d4(s, s.D, 2, 2, i, j, k);
                const double db = d4(s, s.B, 0, 0, i, j, k) + d4(s, s.B, 1, 1, i, j, k) + d4(s, s.B, 2, 2, i, j, k);
                out.D = std::max(out.D, std::abs(dd));
                out.B = std::max(out.B, std::abs(db));
            }
    return out;
}

std::string convergence_csv(const std::vector<ConvergenceRow>& rows) {
    std::string out = "resolution,dt,max_interior_error\n";
    for (const auto& r : rows)
        out += std::to_string(r.resolution) + ',' + format_double(r.dt) + ',' + format_double(r.max_interior_error) + '\n';
    return out;
}

}  // namespace ehv
