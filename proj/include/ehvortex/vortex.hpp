#pragma once

// Vortex-line extraction: zeros of F+.F+ located by phase winding on the faces
// of a regular lattice, stitched cell to cell into oriented polylines.

#include "ehvortex/field.hpp"
#include "ehvortex/poly.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ehv {

struct GridSpec {
    Vec3 lo{-4.0, -4.0, -4.0};
    Vec3 hi{4.0, 4.0, 4.0};
    std::array<int, 3> cells{96, 96, 96};

    static GridSpec cube(double half_width, int n) {
        return {{-half_width, -half_width, -half_width}, {half_width, half_width, half_width}, {n, n, n}};
    }

    /// Throws std::invalid_argument unless every axis has >= 8 cells and lo < hi.
    void validate() const;

    double spacing(int axis) const { return (hi[axis] - lo[axis]) / cells[axis]; }
    double cell_diagonal() const;
    double max_spacing() const;
    std::size_t vertex_count() const;
    Vec3 vertex(int i, int j, int k) const;

    /// Same resolution, origin moved by `fraction` of a cell along every axis.
    GridSpec shifted(double fraction) const;
    /// Twice the cells over the same bounds.
    GridSpec refined() const;
};

/// F+.F+ sampled on lattice vertices at one time.
struct ComplexLattice {
    GridSpec grid;
    double time = 0;
    std::vector<std::complex<double>> values;

    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(k) * (grid.cells[1] + 1) + j) * (grid.cells[0] + 1) + i;
    }
    const std::complex<double>& at(int i, int j, int k) const { return values[index(i, j, k)]; }
    bool has_exact_zero() const;
};

ComplexLattice sample_scalar(const NumericVecPoly& field, const GridSpec& grid, double t);

struct Winding {
    int value = 0;
    bool on_node = false;  ///< a corner is exactly zero; value is meaningless
};

/// Circulation of arg(w) around w1 -> w2 -> w3 -> w4 -> w1 in units of 2 pi.
Winding plaquette_winding(std::complex<double> w1, std::complex<double> w2, std::complex<double> w3,
                          std::complex<double> w4);

/// A lattice face: normal axis plus the index of its lowest vertex.
struct FaceRef {
    std::uint8_t axis = 0;
    int i = 0, j = 0, k = 0;
    friend bool operator==(const FaceRef&, const FaceRef&) = default;
};

struct VortexCurve {
    std::vector<Vec3> points;
    std::vector<FaceRef> faces;  ///< face crossed at each point
    std::vector<int> windings;   ///< winding of that face about its +axis normal
    bool closed = false;
    int component_id = 0;
};

struct CellRef {
    int i = 0, j = 0, k = 0;
};

struct Extraction {
    std::vector<VortexCurve> curves;
    std::vector<CellRef> degenerate_cells;
    std::size_t winding_violations = 0;  ///< interior cells with nonzero net winding
    double time = 0;
    double grid_offset = 0;  ///< fraction of a cell the lattice was shifted to avoid on-node zeros
    GridSpec grid;
};

/// Winding of the face with lowest vertex (i,j,k) and normal `axis`, counted about +axis.
Winding face_winding(const ComplexLattice& lattice, int axis, int i, int j, int k);

Extraction extract_vortex_curves(const ComplexLattice& lattice);

/// Samples and extracts; if the lattice hits an exact zero, the grid is shifted by half a
/// cell (then a quarter) and resampled.
Extraction extract_at(const NumericVecPoly& field, const GridSpec& grid, double t);

struct RefineResult {
    Vec3 point{};
    bool converged = false;
    int iterations = 0;
};

struct RefineOptions {
    int max_iterations = 25;
    double tolerance = 1e-9;         ///< relative to |F|^2 at the iterate
    double max_displacement = 1.0;   ///< farther than this from the seed counts as failure
    double fd_step = 1e-6;
};

/// Gauss-Newton on (Re F.F, Im F.F) = 0 with a finite-difference Jacobian and minimum-norm steps.
RefineResult refine_crossing(const NumericVecPoly& field, double t, const Vec3& seed, const RefineOptions& opt = {});

struct ComponentStats {
    bool closed = false;
    double ring_radius = 0;          ///< mean distance to centroid, arc-length weighted
    double planarity_deviation = 0;  ///< RMS distance to best-fit plane, arc-length weighted
    double arc_length = 0;
    Vec3 centroid{};
    Vec3 plane_normal{};
    std::size_t point_count = 0;
};

struct TopologyReport {
    double time = 0;
    int component_count = 0;
    std::vector<ComponentStats> components;

    /// Radius of the longest component (0 with no components).
    double radius() const;
    /// Largest planarity deviation over components.
    double planarity() const;
    double total_arc_length() const;
};

ComponentStats component_stats(const VortexCurve& curve);
TopologyReport topology_report(const std::vector<VortexCurve>& curves, double t);

struct Frame {
    Extraction extraction;
    TopologyReport report;
    bool topology_event = false;  ///< component count differs from the previous frame
};

/// Inclusive uniform time samples t_start .. t_end.
std::vector<double> frame_times(double t_start, double t_end, int steps);

std::vector<Frame> track(const NumericVecPoly& field, const GridSpec& grid, double t_start, double t_end, int steps);

// Output schemas.
//   curves JSON: {"time": t, "config": {...}, "curves": [{"closed": b, "points": [[x,y,z], ...]}, ...]}
//   topology CSV: time,component_count,radius,planarity,arclength
std::string curves_to_json(const Extraction& ex, const std::string& config_json = "{}");

struct CurveFile {
    double time = 0;
    std::vector<VortexCurve> curves;
};
CurveFile curves_from_json(const std::string& text);

/// Shortest text that reads back to the same double.
std::string format_double(double v);

std::string topology_csv_header();
std::string topology_csv_row(const TopologyReport& r);

}  // namespace ehv
