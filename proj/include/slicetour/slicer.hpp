#pragma once

#include <optional>
#include <vector>

#include "slicetour/linalg.hpp"

namespace slicetour {

// h = eps^(1/(p-2)). Throws UnsupportedDimension for p <= 2 and DomainError
// unless 0 < eps <= 1.
double half_thickness(double eps, int p);

// Fraction of a uniform p-ball of radius R lying within distance h of a
// central 2-plane:  1/2 * h^(p-2) / R^p * (p R^2 - (p-2) h^2).
double relative_volume(double h, double radius, int p);

// Small-h approximation 1/2 (h/R)^(p-2). Kept for reporting only; the exact
// expression tends to p/2 (h/R)^(p-2), a factor p larger.
double relative_volume_approx(double h, double radius, int p);

// Norm of x minus its projection onto span(f); any d.
double orthogonal_distance(const Vector& x, const Frame& f);

// Distance between the components of x and c orthogonal to span(f), computed
// from dot products only:
//   v^2 = |x'|^2 + |c'|^2 - 2 x'.c',   x'.c' = x.c - sum_k (c.a_k)(x.a_k)
double anchored_distance(const Vector& x, const Frame& f, const Vector& c);

class SliceSpec {
public:
    enum class Source { Eps, ExplicitH };

    static SliceSpec from_eps(double eps, int p, std::optional<Vector> anchor = std::nullopt);
    // h in working coordinates; eps() then reports the implied h^(p-2).
    static SliceSpec from_h(double h, int p, std::optional<Vector> anchor = std::nullopt);

    double eps() const { return eps_; }
    double h() const { return h_; }
    int p() const { return p_; }
    Source source() const { return source_; }
    const std::optional<Vector>& anchor() const { return anchor_; }

    SliceSpec with_eps(double eps) const { return from_eps(eps, p_, anchor_); }
    SliceSpec with_h(double h) const { return from_h(h, p_, anchor_); }
    SliceSpec with_anchor(std::optional<Vector> anchor) const;

private:
    SliceSpec(double eps, double h, int p, Source source, std::optional<Vector> anchor);

    double eps_;
    double h_;
    int p_;
    Source source_;
    std::optional<Vector> anchor_;
};

constexpr double kDefaultEps = 0.1;

struct SliceView {
    Frame basis;
    Matrix projected;        // n x d
    Vector distances;        // n, >= 0
    std::vector<bool> inside;  // distances[i] <= h
    SliceSpec spec;

    int inside_count() const;
};

// Points with distance exactly h count as inside.
SliceView slice_view(const Dataset& data, const Frame& f, const SliceSpec& spec);

// Batch distances for every row of x; anchored when spec has an anchor.
Vector slice_distances(const Matrix& x, const Frame& f, const std::optional<Vector>& anchor);

} // namespace slicetour
