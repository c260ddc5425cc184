#pragma once

// Independent finite-difference integrator for the canonical (D, B) equations
//   dD/dt =  curl dH/dB,   dB/dt = -curl dH/dD,
// with fourth-order centred curls and classical RK4 in time. A Dirichlet layer is
// clamped to an analytic solution at every stage.

#include "ehvortex/field.hpp"
#include "ehvortex/poly.hpp"
#include "ehvortex/vortex.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace ehv {

struct GridField {
    GridSpec grid;
    double time = 0;
    int boundary_width = 3;
    std::vector<Vec3> D;
    std::vector<Vec3> B;

    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(k) * (grid.cells[1] + 1) + j) * (grid.cells[0] + 1) + i;
    }
    /// Within `width` vertices of any face of the box.
    bool in_margin(int i, int j, int k, int width) const;
    bool in_boundary(int i, int j, int k) const { return in_margin(i, j, k, boundary_width); }
};

class IntegrationError : public std::runtime_error {
public:
    IntegrationError(const std::string& what, double t) : std::runtime_error(what), time_(t) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// D = sqrt(2) Re F+, B = sqrt(2) Im F+ at every vertex.
GridField sample_field(const NumericVecPoly& fplus, const GridSpec& grid, double t, int boundary_width = 3);

/// Overwrites the boundary layer from the analytic field at time t.
void clamp_boundary(GridField& state, const NumericVecPoly& fplus, double t);

/// Time derivative; zero within two vertices of the box, where the stencil does not fit.
GridField rhs(const GridField& state, const Coupling& c);

/// RK4 from state0 (at t0) to t1. dt is rounded down so that an integer number of steps lands on t1.
/// Throws std::invalid_argument if dt > 0.5 dx, IntegrationError on NaN/overflow.
GridField integrate(const GridField& state0, const Coupling& c, double t0, double t1, double dt,
                    const NumericVecPoly& boundary);

/// Max over vertices at least `margin` cells from the box of |D - D_exact| and |B - B_exact| (componentwise).
double max_interior_error(const GridField& state, const NumericVecPoly& exact, int margin = 6);

/// Max difference between two fields on the same grid, same margin rule.
double max_interior_difference(const GridField& a, const GridField& b, int margin = 6);

struct DivergenceNorms {
    double D = 0;
    double B = 0;
};
/// Max |div| with fourth-order stencils over vertices at least `margin` cells inside.
DivergenceNorms max_divergence(const GridField& state, int margin = 6);

struct ConvergenceRow {
    int resolution = 0;
    double dt = 0;
    double max_interior_error = 0;
};

std::string convergence_csv(const std::vector<ConvergenceRow>& rows);

}  // namespace ehv
