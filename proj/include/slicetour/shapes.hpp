#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "slicetour/linalg.hpp"

namespace slicetour {

enum class ShapeKind {
    SphereHollow,
    SphereSolid,
    CubeSolid,
    CubeHollow,
    TorusFlat4d,
    RomanSurface3d,
};

// Command-line spelling: "sphere-hollow", "torus-flat", ...
std::string_view shape_name(ShapeKind kind);
std::optional<ShapeKind> parse_shape_kind(std::string_view name);

struct ShapeSpec {
    ShapeKind kind = ShapeKind::SphereHollow;
    std::optional<int> p;  // required dimension is implied for torus/roman; defaults to 3 otherwise
    int n = 1000;
    double radius = 1.0;
    std::uint64_t seed = 1;

    int dimension() const;  // validated ambient dimension
};

// Sphere and cube kinds need p >= 3 (slicing is undefined below that).
// The torus is (r cos t, r sin t, r cos u, r sin u) with r = radius and t, u
// uniform in parameter space; the Roman surface is likewise
// parameter-uniform over [0, pi)^2.
Dataset generate(const ShapeSpec& spec);

} // namespace slicetour
