#include "slicetour/shapes.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "slicetour/error.hpp"

namespace slicetour {

namespace {

constexpr std::array<std::pair<ShapeKind, std::string_view>, 6> kNames{{
    {ShapeKind::SphereHollow, "sphere-hollow"},
    {ShapeKind::SphereSolid, "sphere-solid"},
    {ShapeKind::CubeSolid, "cube-solid"},
    {ShapeKind::CubeHollow, "cube-hollow"},
    {ShapeKind::TorusFlat4d, "torus-flat"},
    {ShapeKind::RomanSurface3d, "roman-surface"},
}};

void sphere_rows(Matrix& x, double radius, bool solid, Rng& rng) {
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform;
    const int p = static_cast<int>(x.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        double norm = 0.0;
        do {
            for (int j = 0; j < p; ++j) x(i, j) = normal(rng);
            norm = x.row(i).norm();
        } while (norm == 0.0);
        double r = radius;
        if (solid) r *= std::pow(uniform(rng), 1.0 / p);
        x.row(i) *= r / norm;
    }
}

void cube_rows(Matrix& x, double radius, bool hollow, Rng& rng) {
    std::uniform_real_distribution<double> uniform(-radius, radius);
    const int p = static_cast<int>(x.cols());
    std::uniform_int_distribution<int> face(0, 2 * p - 1);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (int j = 0; j < p; ++j) x(i, j) = uniform(rng);
        if (hollow) {
            const int f = face(rng);
            x(i, f / 2) = (f % 2 == 0) ? -radius : radius;
        }
    }
}

void torus_rows(Matrix& x, double radius, Rng& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const double theta = angle(rng);
        const double phi = angle(rng);
        x(i, 0) = radius * std::cos(theta);
        x(i, 1) = radius * std::sin(theta);
        x(i, 2) = radius * std::cos(phi);
        x(i, 3) = radius * std::sin(phi);
    }
}

void roman_rows(Matrix& x, double radius, Rng& rng) {
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        const double theta = angle(rng);
        const double phi = angle(rng);
        const double cp = std::cos(phi);
        const double sp = std::sin(phi);
        x(i, 0) = radius * std::cos(theta) * cp * sp;
        x(i, 1) = radius * std::sin(theta) * cp * sp;
        x(i, 2) = radius * std::cos(theta) * std::sin(theta) * cp * cp;
    }
}

} // namespace

std::string_view shape_name(ShapeKind kind) {
    for (const auto& [k, name] : kNames) {
        if (k == kind) return name;
    }
    return "unknown";
}

std::optional<ShapeKind> parse_shape_kind(std::string_view name) {
    for (const auto& [k, n] : kNames) {
        if (n == name) return k;
    }
    return std::nullopt;
}

int ShapeSpec::dimension() const {
    const auto fixed = [&](int required) {
        if (p && *p != required) {
            throw UnsupportedDimension(std::string(shape_name(kind)) + " is defined only for p=" +
                                       std::to_string(required));
        }
        return required;
    };
    switch (kind) {
    case ShapeKind::TorusFlat4d: return fixed(4);
    case ShapeKind::RomanSurface3d: return fixed(3);
    default: break;
    }
    const int dim = p.value_or(3);
    if (dim < 3) {
        throw UnsupportedDimension(std::string(shape_name(kind)) + " needs p >= 3 (got p=" +
                                   std::to_string(dim) + ")");
    }
    return dim;
}

Dataset generate(const ShapeSpec& spec) {
    const int p = spec.dimension();
    if (spec.n <= 0) throw DomainError("point count must be positive");
    if (!(spec.radius > 0.0) || !std::isfinite(spec.radius)) {
        throw DomainError("radius must be positive and finite");
    }
    Rng rng = make_rng(spec.seed);
    Matrix x(spec.n, p);
    switch (spec.kind) {
    case ShapeKind::SphereHollow: sphere_rows(x, spec.radius, false, rng); break;
    case ShapeKind::SphereSolid: sphere_rows(x, spec.radius, true, rng); break;
    case ShapeKind::CubeSolid: cube_rows(x, spec.radius, false, rng); break;
    case ShapeKind::CubeHollow: cube_rows(x, spec.radius, true, rng); break;
    case ShapeKind::TorusFlat4d: torus_rows(x, spec.radius, rng); break;
    case ShapeKind::RomanSurface3d: roman_rows(x, spec.radius, rng); break;
    }
    Dataset data = make_dataset(std::move(x));
    data.scale_note = "generated " + std::string(shape_name(spec.kind));
    return data;
}

} // namespace slicetour
