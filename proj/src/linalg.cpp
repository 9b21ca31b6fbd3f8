#include "slicetour/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "slicetour/error.hpp"

namespace slicetour {

namespace {

constexpr double kRankTolerance = 1e-8;

void check_finite(const Matrix& m) {
    if (!m.allFinite()) throw DomainError("matrix contains non-finite entries");
}

} // namespace

Frame::Frame(Matrix columns) : columns_(std::move(columns)) {
    const auto p = columns_.rows();
    const auto d = columns_.cols();
    if (d < 1 || p <= d) {
        throw InvariantViolation("frame needs p > d >= 1, got p=" + std::to_string(p) +
                                 " d=" + std::to_string(d));
    }
    check_finite(columns_);
    for (Eigen::Index j = 0; j < d; ++j) {
        if (std::abs(columns_.col(j).norm() - 1.0) >= kTolerance) {
            throw InvariantViolation("frame column " + std::to_string(j) + " is not unit length");
        }
        for (Eigen::Index k = j + 1; k < d; ++k) {
            if (std::abs(columns_.col(j).dot(columns_.col(k))) >= kTolerance) {
                throw InvariantViolation("frame columns " + std::to_string(j) + " and " +
                                         std::to_string(k) + " are not orthogonal");
            }
        }
    }
}

double orthonormality_error(const Matrix& f) {
    const Matrix gram = f.transpose() * f;
    return (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

Frame orthonormalize(const Matrix& m) {
    check_finite(m);
    if (m.cols() < 1 || m.rows() <= m.cols()) {
        throw DimensionMismatch("orthonormalize needs a p x d matrix with p > d >= 1");
    }
    Matrix q = m;
    for (Eigen::Index j = 0; j < q.cols(); ++j) {
        const double original = m.col(j).norm();
        if (original == 0.0) {
            throw DegenerateInput("column " + std::to_string(j) + " is zero");
        }
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index i = 0; i < j; ++i) {
                q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
            }
        }
        const double residual = q.col(j).norm();
        if (residual < kRankTolerance * original) {
            throw DegenerateInput("column " + std::to_string(j) +
                                  " is linearly dependent on the preceding columns");
        }
        q.col(j) /= residual;
    }
    return Frame(std::move(q));
}

Frame random_frame(int p, int d, Rng& rng) {
    if (d < 1 || p <= d) throw DimensionMismatch("random_frame needs p > d >= 1");
    std::normal_distribution<double> normal;
    for (;;) {
        Matrix m(p, d);
        // fill row-major so the draw order does not depend on Eigen's storage
        for (int i = 0; i < p; ++i) {
            for (int j = 0; j < d; ++j) m(i, j) = normal(rng);
        }
        try {
            return orthonormalize(m);
        } catch (const DegenerateInput&) {
            // probability zero; draw again
        }
    }
}

Vector Dataset::to_working(const Vector& file_point) const {
    if (file_point.size() != p()) {
        throw DimensionMismatch("point has " + std::to_string(file_point.size()) +
                                " coordinates, dataset has " + std::to_string(p()));
    }
    return (file_point - shift).cwiseQuotient(scale);
}

Dataset make_dataset(Matrix values, std::vector<std::string> column_names) {
    check_finite(values);
    const auto p = values.cols();
    if (column_names.empty()) {
        for (Eigen::Index j = 0; j < p; ++j) column_names.push_back("x" + std::to_string(j + 1));
    }
    if (static_cast<Eigen::Index>(column_names.size()) != p) {
        throw DimensionMismatch("column name count does not match the data");
    }
    Dataset data;
    data.values = std::move(values);
    data.column_names = std::move(column_names);
    data.shift = Vector::Zero(p);
    data.scale = Vector::Ones(p);
    return data;
}

Matrix project(const Matrix& x, const Frame& f) {
    if (x.cols() != f.p()) {
        throw DimensionMismatch("data has p=" + std::to_string(x.cols()) + " but frame has p=" +
                                std::to_string(f.p()));
    }
    return x * f.matrix();
}

Matrix project(const Dataset& data, const Frame& f) { return project(data.values, f); }

Vector principal_angles(const Frame& a, const Frame& b) {
    if (a.p() != b.p() || a.d() != b.d()) {
        throw DimensionMismatch("principal angles need frames of equal shape");
    }
    const Matrix cross = a.matrix().transpose() * b.matrix();
    const Matrix residual = b.matrix() - a.matrix() * cross;
    // Both come back in descending order: cosines pair with sines in reverse.
    const Vector cosines = Eigen::JacobiSVD<Matrix>(cross).singularValues();
    const Vector sines = Eigen::JacobiSVD<Matrix>(residual).singularValues();
    const int d = a.d();
    Vector angles(d);
    for (int k = 0; k < d; ++k) {
        const double c = std::clamp(cosines(d - 1 - k), 0.0, 1.0);
        const double s = std::clamp(sines(k), 0.0, 1.0);
        angles(k) = (c * c < 0.5) ? std::acos(c) : std::asin(s);
    }
    return angles;
}

double geodesic_distance(const Frame& a, const Frame& b) { return principal_angles(a, b).norm(); }

} // namespace slicetour
