#pragma once

// Test-only helpers. Samplers here deliberately avoid the library's shape
// generators so they can serve as independent oracles.

#include <cmath>
#include <filesystem>
#include <random>
#include <string>

#include "slicetour/linalg.hpp"

namespace slicetour::test {

inline Vector unit(int p, int k) {
    Vector e = Vector::Zero(p);
    e(k) = 1.0;
    return e;
}

inline Frame plane(const Vector& a, const Vector& b) {
    Matrix m(a.size(), 2);
    m.col(0) = a;
    m.col(1) = b;
    return orthonormalize(m);
}

inline Matrix normal_matrix(int rows, int cols, Rng& rng) {
    std::normal_distribution<double> g;
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = g(rng);
    return m;
}

// Uniform points in the unit p-ball by rejection from the cube.
inline Matrix rejection_ball(int n, int p, Rng& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix x(n, p);
    Vector v(p);
    for (int i = 0; i < n;) {
        for (int j = 0; j < p; ++j) v(j) = u(rng);
        if (v.squaredNorm() <= 1.0) x.row(i++) = v.transpose();
    }
    return x;
}

inline double binomial_se(double prob, int n) { return std::sqrt(prob * (1.0 - prob) / n); }

inline std::filesystem::path temp_path(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / "slicetour_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace slicetour::test
