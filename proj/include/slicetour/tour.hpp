#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "slicetour/linalg.hpp"

namespace slicetour {

// Geodesic between two d-planes in R^p.
//
// With the SVD start^T target = V diag(cos tau) W^T, the start plane is
// spanned by B = start V and the target plane by B cos(tau) + B* sin(tau),
// where B* holds the normalized components of target W orthogonal to B.
// Columns whose angle is below kFixedAngle stay put; their entry in
// ortho_directions is zero and `active` is false.
struct PathSegment {
    static constexpr double kFixedAngle = 1e-8;

    Frame start;
    Frame target;
    Vector principal_angles;   // descending, in [0, pi/2]
    Matrix start_directions;   // B, p x d
    Matrix ortho_directions;   // B*, p x d
    Matrix start_rotation;     // V, d x d
    std::vector<bool> active;

    double length() const { return principal_angles.norm(); }
};

PathSegment geodesic_between(const Frame& start, const Frame& target);

// Interpolated frame at fraction t of the segment. The result is rotated back
// by V^T so that frame_at(seg, 0) reproduces seg.start column for column; at
// t = 1 it spans the target plane but may differ from the target basis by a
// within-plane rotation.
Frame frame_at(const PathSegment& seg, double t);

struct TourConfig {
    static constexpr double kDefaultStepAngle = 0.05;

    double step_angle = kDefaultStepAngle;  // radians per emitted frame
    std::optional<std::size_t> max_segments;
    std::uint64_t seed = 1;
};

struct TourFrame {
    Frame basis;
    std::size_t index = 0;    // global, 0-based
    double t = 0.0;           // position within the current segment
    std::size_t segment = 0;  // 0-based segment counter
};

// Grand tour: random target planes joined by geodesics, walked at a constant
// angular step. The first frame is a random start plane (index 0, t = 0);
// each following frame advances by at most step_angle along the current
// segment. When a segment ends, the next one starts from the interpolated
// end frame, not from the drawn target basis.
class GrandTour {
public:
    GrandTour(int p, TourConfig cfg, int d = 2);

    // Next frame, or nullopt once max_segments segments are complete.
    std::optional<TourFrame> next();

    // Takes effect from the next step; the current segment is not rebuilt.
    void set_step_angle(double step_angle);
    double step_angle() const { return cfg_.step_angle; }

    const TourConfig& config() const { return cfg_; }
    const PathSegment& segment() const { return segment_; }

private:
    PathSegment draw_segment(const Frame& from);

    int p_;
    int d_;
    TourConfig cfg_;
    Rng rng_;
    PathSegment segment_;
    double t_ = 0.0;
    std::size_t segment_index_ = 0;
    std::size_t emitted_ = 0;
};

} // namespace slicetour
