#include "slicetour/tour.hpp"

#include <algorithm>
#include <cmath>

#include "slicetour/error.hpp"

namespace slicetour {

namespace {

// Segments shorter than this count as "same plane" and are redrawn.
constexpr double kMinSegmentLength = 1e-6;

PathSegment make_placeholder(const Frame& f) {
    const int d = f.d();
    return PathSegment{f,
                       f,
                       Vector::Zero(d),
                       f.matrix(),
                       Matrix::Zero(f.p(), d),
                       Matrix::Identity(d, d),
                       std::vector<bool>(static_cast<std::size_t>(d), false)};
}

int checked_dimension(int p) {
    if (p <= 2) throw UnsupportedDimension("grand tour needs p > 2");
    return p;
}

} // namespace

PathSegment geodesic_between(const Frame& start, const Frame& target) {
    if (start.p() != target.p() || start.d() != target.d()) {
        throw DimensionMismatch("geodesic endpoints must have equal p and d");
    }
    const int d = start.d();
    const Matrix cross = start.matrix().transpose() * target.matrix();
    Eigen::JacobiSVD<Matrix> svd(cross, Eigen::ComputeFullU | Eigen::ComputeFullV);

    // SVD order is descending cosine; reverse to get descending angles.
    const Matrix v = svd.matrixU().rowwise().reverse();
    const Matrix w = svd.matrixV().rowwise().reverse();
    const Vector cosines = svd.singularValues().reverse();

    const Matrix b = start.matrix() * v;
    const Matrix target_dirs = target.matrix() * w;

    Matrix ortho = Matrix::Zero(start.p(), d);
    Vector angles(d);
    std::vector<bool> active(static_cast<std::size_t>(d), false);
    for (int k = 0; k < d; ++k) {
        Vector r = target_dirs.col(k);
        for (int pass = 0; pass < 2; ++pass) {
            r -= b * (b.transpose() * r);
            for (int j = 0; j < k; ++j) {
                if (active[static_cast<std::size_t>(j)]) r -= ortho.col(j).dot(r) * ortho.col(j);
            }
        }
        const double s = r.norm();
        const double c = std::max(cosines(k), 0.0);
        const double tau = std::atan2(s, c);
        if (tau < PathSegment::kFixedAngle) {
            angles(k) = 0.0;
            continue;
        }
        angles(k) = tau;
        ortho.col(k) = r / s;
        active[static_cast<std::size_t>(k)] = true;
    }
    return PathSegment{start, target, angles, b, ortho, v, std::move(active)};
}

Frame frame_at(const PathSegment& seg, double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("interpolation fraction must lie in [0, 1]");
    Matrix g = seg.start_directions;
    for (int k = 0; k < g.cols(); ++k) {
        if (!seg.active[static_cast<std::size_t>(k)]) continue;
        const double angle = t * seg.principal_angles(k);
        g.col(k) = seg.start_directions.col(k) * std::cos(angle) +
                   seg.ortho_directions.col(k) * std::sin(angle);
    }
    return Frame(g * seg.start_rotation.transpose());
}

GrandTour::GrandTour(int p, TourConfig cfg, int d)
    : p_(checked_dimension(p)), d_(d), cfg_(cfg), rng_(make_rng(cfg.seed)),
      segment_(make_placeholder(random_frame(p, d, rng_))) {
    set_step_angle(cfg.step_angle);
}

void GrandTour::set_step_angle(double step_angle) {
    if (!(step_angle > 0.0) || !std::isfinite(step_angle)) {
        throw DomainError("step angle must be positive");
    }
    cfg_.step_angle = step_angle;
}

PathSegment GrandTour::draw_segment(const Frame& from) {
    for (;;) {
        PathSegment seg = geodesic_between(from, random_frame(p_, d_, rng_));
        if (seg.length() >= kMinSegmentLength) return seg;
    }
}

std::optional<TourFrame> GrandTour::next() {
    if (emitted_ == 0) {
        // segment_ holds only the start frame until the first step
        ++emitted_;
        return TourFrame{segment_.start, 0, 0.0, 0};
    }
    const bool first_step = emitted_ == 1;
    if (first_step || t_ >= 1.0) {
        if (!first_step) {
            if (cfg_.max_segments && segment_index_ + 1 >= *cfg_.max_segments) return std::nullopt;
            ++segment_index_;
        } else if (cfg_.max_segments && *cfg_.max_segments == 0) {
            return std::nullopt;
        }
        // clean up accumulated rounding before it can build up across segments
        const Frame from = first_step ? segment_.start : orthonormalize(frame_at(segment_, 1.0).matrix());
        segment_ = draw_segment(from);
        t_ = 0.0;
    }
    t_ = std::min(1.0, t_ + cfg_.step_angle / segment_.length());
    return TourFrame{frame_at(segment_, t_), emitted_++, t_, segment_index_};
}

} // namespace slicetour
