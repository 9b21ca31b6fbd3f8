#include "slicetour/slicer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "slicetour/error.hpp"

namespace slicetour {

namespace {

void require_slice_dimension(int p) {
    if (p <= 2) {
        throw UnsupportedDimension("slicing needs p > 2 (got p=" + std::to_string(p) + ")");
    }
}

void require_same_p(Eigen::Index size, const Frame& f, const char* what) {
    if (size != f.p()) {
        throw DimensionMismatch(std::string(what) + " has " + std::to_string(size) +
                                " coordinates but the frame has p=" + std::to_string(f.p()));
    }
}

} // namespace

double half_thickness(double eps, int p) {
    require_slice_dimension(p);
    if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("eps must lie in (0, 1]");
    return std::pow(eps, 1.0 / (p - 2));
}

double relative_volume(double h, double radius, int p) {
    require_slice_dimension(p);
    if (!(radius > 0.0)) throw DomainError("radius must be positive");
    if (!(h >= 0.0)) throw DomainError("h must be non-negative");
    if (h > radius) throw DomainError("h exceeds the hypersphere radius");
    return 0.5 * std::pow(h, p - 2) / std::pow(radius, p) *
           (p * radius * radius - (p - 2) * h * h);
}

double relative_volume_approx(double h, double radius, int p) {
    require_slice_dimension(p);
    if (!(radius > 0.0)) throw DomainError("radius must be positive");
    return 0.5 * std::pow(h / radius, p - 2);
}

double orthogonal_distance(const Vector& x, const Frame& f) {
    require_same_p(x.size(), f, "point");
    const Vector residual = x - f.matrix() * (f.matrix().transpose() * x);
    return residual.norm();
}

double anchored_distance(const Vector& x, const Frame& f, const Vector& c) {
    require_same_p(x.size(), f, "point");
    require_same_p(c.size(), f, "anchor");
    const Vector xa = f.matrix().transpose() * x;
    const Vector ca = f.matrix().transpose() * c;
    const double x_perp2 = x.squaredNorm() - xa.squaredNorm();
    const double c_perp2 = c.squaredNorm() - ca.squaredNorm();
    const double cross = x.dot(c) - ca.dot(xa);
    return std::sqrt(std::max(0.0, x_perp2 + c_perp2 - 2.0 * cross));
}

SliceSpec::SliceSpec(double eps, double h, int p, Source source, std::optional<Vector> anchor)
    : eps_(eps), h_(h), p_(p), source_(source), anchor_(std::move(anchor)) {
    if (anchor_) {
        if (anchor_->size() != p_) {
            throw DimensionMismatch("anchor has " + std::to_string(anchor_->size()) +
                                    " coordinates, expected " + std::to_string(p_));
        }
        if (!anchor_->allFinite()) throw DomainError("anchor must be finite");
    }
}

SliceSpec SliceSpec::from_eps(double eps, int p, std::optional<Vector> anchor) {
    return SliceSpec(eps, half_thickness(eps, p), p, Source::Eps, std::move(anchor));
}

SliceSpec SliceSpec::from_h(double h, int p, std::optional<Vector> anchor) {
    require_slice_dimension(p);
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("h must be positive and finite");
    return SliceSpec(std::pow(h, p - 2), h, p, Source::ExplicitH, std::move(anchor));
}

SliceSpec SliceSpec::with_anchor(std::optional<Vector> anchor) const {
    return SliceSpec(eps_, h_, p_, source_, std::move(anchor));
}

int SliceView::inside_count() const {
    return static_cast<int>(std::count(inside.begin(), inside.end(), true));
}

Vector slice_distances(const Matrix& x, const Frame& f, const std::optional<Vector>& anchor) {
    require_same_p(x.cols(), f, "data");
    const Matrix& a = f.matrix();
    const Matrix xa = x * a;
    if (!anchor) {
        const Matrix residual = x - xa * a.transpose();
        return residual.rowwise().norm();
    }
    require_same_p(anchor->size(), f, "anchor");
    const Vector& c = *anchor;
    const Vector ca = a.transpose() * c;
    const double c_perp2 = c.squaredNorm() - ca.squaredNorm();
    const Vector x_perp2 = x.rowwise().squaredNorm() - xa.rowwise().squaredNorm();
    const Vector cross = x * c - xa * ca;
    const Vector v2 = (x_perp2.array() + c_perp2 - 2.0 * cross.array()).cwiseMax(0.0);
    return v2.cwiseSqrt();
}

SliceView slice_view(const Dataset& data, const Frame& f, const SliceSpec& spec) {
    if (spec.p() != data.p()) {
        throw DimensionMismatch("slice spec has p=" + std::to_string(spec.p()) +
                                " but data has p=" + std::to_string(data.p()));
    }
    Matrix projected = project(data, f);
    Vector distances = slice_distances(data.values, f, spec.anchor());
    std::vector<bool> inside(static_cast<std::size_t>(distances.size()));
    for (Eigen::Index i = 0; i < distances.size(); ++i) {
        inside[static_cast<std::size_t>(i)] = distances(i) <= spec.h();
    }
    return SliceView{f, std::move(projected), std::move(distances), std::move(inside), spec};
}

} // namespace slicetour
