#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace slicetour {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// All stochastic operations take this generator explicitly; there is no
// global random state anywhere in the library.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng{seed}; }

// p x d matrix with orthonormal columns, p > d >= 1.
class Frame {
public:
    static constexpr double kTolerance = 1e-10;

    // Validates the invariants and throws InvariantViolation when they fail.
    // Use orthonormalize() to build a Frame from an arbitrary matrix.
    explicit Frame(Matrix columns);

    int p() const { return static_cast<int>(columns_.rows()); }
    int d() const { return static_cast<int>(columns_.cols()); }

    const Matrix& matrix() const { return columns_; }
    auto column(int k) const { return columns_.col(k); }

    bool operator==(const Frame& other) const { return columns_ == other.columns_; }

private:
    Matrix columns_;
};

// Largest deviation of F^T F from the identity.
double orthonormality_error(const Matrix& f);

// Modified Gram-Schmidt with one re-orthogonalization pass. A column whose
// residual falls below 1e-8 of its original norm is a DegenerateInput error.
Frame orthonormalize(const Matrix& m);

// Haar-uniform d-plane in R^p: i.i.d. standard normals, orthonormalized.
Frame random_frame(int p, int d, Rng& rng);

// n x p data matrix plus the bookkeeping needed to map points between the
// file coordinates and the working (preprocessed) coordinates.
struct Dataset {
    Matrix values;
    std::vector<std::string> column_names;
    std::vector<std::string> labels;  // empty, or one group label per row
    std::string label_column;
    bool centered = false;
    std::string scale_note;
    // working = (file - shift) / scale, elementwise per column
    Vector shift;
    Vector scale;

    int n() const { return static_cast<int>(values.rows()); }
    int p() const { return static_cast<int>(values.cols()); }

    // Maps a point given in file coordinates into working coordinates.
    Vector to_working(const Vector& file_point) const;
};

// Builds a Dataset around raw values with default names x1..xp and identity
// transform. Throws DomainError on non-finite entries.
Dataset make_dataset(Matrix values, std::vector<std::string> column_names = {});

// Y = X A, n x d.
Matrix project(const Dataset& data, const Frame& f);
Matrix project(const Matrix& x, const Frame& f);

// Principal angles between span(a) and span(b), sorted descending. Uses cosines
// for large angles and sines for small ones so both ends stay accurate.
Vector principal_angles(const Frame& a, const Frame& b);

// sqrt(sum of squared principal angles).
double geodesic_distance(const Frame& a, const Frame& b);

} // namespace slicetour
