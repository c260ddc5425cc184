#pragma once

#include "ehvortex/solutions.hpp"
#include "ehvortex/vortex.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ehv::cli {

struct TimeRange {
    double start = 0;
    double end = 0;
    int frames = 1;

    /// "t0:t1:n" (inclusive, n >= 2) or "t0:t1" (n = 2).
    static TimeRange parse(const std::string& text);
};

struct RunConfig {
    std::string subcommand;
    SolutionParams params;
    bool quantum = true;
    double coupling_scale = 1.0;
    GridSpec grid = GridSpec::cube(4.0, 96);
    TimeRange time{0, 0, 1};
    std::string out_dir;

    double lambda() const;
    /// Resolved config echoed into every output file.
    std::string to_json() const;
};

/// Fixed orthographic cameras; angles in degrees.
struct Camera {
    double azimuth = -55.0;
    double elevation = 25.0;

    static Camera preset(const std::string& name);  // "ring", "pair", "top", "front"
};

struct RenderOptions {
    Camera camera;
    Vec3 lo{-4, -4, -4};
    Vec3 hi{4, 4, 4};
    std::optional<std::pair<double, double>> y_range;  ///< drawn stretched over [lo.y, hi.y]
    std::optional<double> overlay_ring_a;              ///< draw the classical RingA circle for this a
    int width = 640;
    int height = 560;
};

std::string render_svg(const CurveFile& file, const RenderOptions& opt);

/// Entry point shared by the executable and the tests. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ehv::cli
