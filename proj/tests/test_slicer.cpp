#include "doctest.h"

#include <numbers>

#include "slicetour/error.hpp"
#include "slicetour/shapes.hpp"
#include "slicetour/slicer.hpp"
#include "support.hpp"

using namespace slicetour;
using slicetour::test::plane;
using slicetour::test::unit;

TEST_CASE("orthogonal distance basics") {
    const Frame f = plane(unit(3, 0), unit(3, 1));
    Vector x(3);
    x << 1, 2, 3;
    CHECK(orthogonal_distance(x, f) == doctest::Approx(3.0));
    CHECK(orthogonal_distance(Vector(0.4 * f.column(0) + 2.0 * f.column(1)), f) < 1e-15);
    CHECK_THROWS_AS(orthogonal_distance(Vector::Zero(4), f), DimensionMismatch);
}

TEST_CASE("orthogonal distance satisfies Pythagoras") {
    Rng rng = make_rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const int p = 3 + trial % 6;
        const Frame f = random_frame(p, 2, rng);
        const Vector x = test::normal_matrix(p, 1, rng);
        const double in_plane2 = (f.matrix().transpose() * x).squaredNorm();
        const double v = orthogonal_distance(x, f);
        CHECK(std::abs(v * v - (x.squaredNorm() - in_plane2)) < 1e-10);
    }
}

TEST_CASE("orthogonal distance generalizes to d > 2") {
    Matrix m(5, 3);
    m.col(0) = unit(5, 0);
    m.col(1) = unit(5, 1);
    m.col(2) = unit(5, 2);
    const Frame f = orthonormalize(m);
    Vector x(5);
    x << 9, 9, 9, 3, 4;
    CHECK(orthogonal_distance(x, f) == doctest::Approx(5.0));
}

TEST_CASE("anchored distance reduces to the central one") {
    Rng rng = make_rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const Frame f = random_frame(5, 2, rng);
        const Vector x = test::normal_matrix(5, 1, rng);
        CHECK(std::abs(anchored_distance(x, f, Vector::Zero(5)) - orthogonal_distance(x, f)) < 1e-10);
        const Vector in_plane = 1.3 * f.column(0) - 0.2 * f.column(1);
        CHECK(std::abs(anchored_distance(x, f, in_plane) - orthogonal_distance(x, f)) < 1e-10);
    }
}

TEST_CASE("anchored distance of the origin to an off-plane anchor") {
    const Frame f = plane(unit(3, 0), unit(3, 1));
    const Vector c = Vector::Constant(3, 0.7);
    CHECK(anchored_distance(Vector::Zero(3), f, c) == doctest::Approx(0.7));
    CHECK_THROWS_AS(anchored_distance(Vector::Zero(3), f, Vector::Zero(4)), DimensionMismatch);
}

TEST_CASE("dot-product anchored distance matches explicit residuals") {
    Rng rng = make_rng(34);
    for (int trial = 0; trial < 300; ++trial) {
        const int p = 3 + trial % 8;
        const Frame f = random_frame(p, 2, rng);
        const Vector x = test::normal_matrix(p, 1, rng);
        const Vector c = test::normal_matrix(p, 1, rng);
        const Matrix proj = f.matrix() * f.matrix().transpose();
        const Vector xr = x - proj * x;
        const Vector cr = c - proj * c;
        CHECK(std::abs(anchored_distance(x, f, c) - (xr - cr).norm()) < 1e-10);
    }
}

TEST_CASE("half thickness from the volume parameter") {
    CHECK(half_thickness(0.1, 3) == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(std::abs(half_thickness(0.1, 5) - std::cbrt(0.1)) < 1e-15);
    CHECK(std::abs(half_thickness(0.1, 5) - 0.4642) < 1e-4);
    for (int p = 3; p < 12; ++p) CHECK(half_thickness(1.0, p) == 1.0);
    CHECK_THROWS_AS(half_thickness(0.1, 2), UnsupportedDimension);
    CHECK_THROWS_AS(half_thickness(0.0, 4), DomainError);
    CHECK_THROWS_AS(half_thickness(1.5, 4), DomainError);
}

TEST_CASE("relative volume closed form") {
    for (int p = 3; p < 10; ++p) {
        CHECK(relative_volume(1.0, 1.0, p) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(relative_volume(2.5, 2.5, p) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(relative_volume(0.0, 1.0, p) == 0.0);
    }
    CHECK(relative_volume(0.1, 1.0, 3) == doctest::Approx(0.1495).epsilon(1e-12));
    // p = 4 integrates by hand to 2h^2 - h^4
    CHECK(relative_volume(0.3, 1.0, 4) == doctest::Approx(2 * 0.09 - 0.0081).epsilon(1e-12));
    CHECK_THROWS_AS(relative_volume(1.1, 1.0, 3), DomainError);
    CHECK_THROWS_AS(relative_volume(0.1, 1.0, 2), UnsupportedDimension);
}

TEST_CASE("relative volume agrees with Monte Carlo in the 3-ball") {
    Rng rng = make_rng(2718);
    constexpr int kSamples = 100000;
    const Matrix x = test::rejection_ball(kSamples, 3, rng);
    int inside = 0;
    for (int i = 0; i < kSamples; ++i) inside += std::abs(x(i, 2)) <= 0.1 ? 1 : 0;
    const double expected = relative_volume(0.1, 1.0, 3);
    const double observed = static_cast<double>(inside) / kSamples;
    CHECK(std::abs(observed - expected) < 3 * test::binomial_se(expected, kSamples));
}

TEST_CASE("central slice fraction matches relative volume for p = 3, 4, 5") {
    Rng rng = make_rng(99);
    constexpr int kSamples = 60000;
    for (int p : {3, 4, 5}) {
        const Dataset data = make_dataset(test::rejection_ball(kSamples, p, rng));
        const SliceSpec spec = SliceSpec::from_eps(0.2, p);
        const SliceView view = slice_view(data, random_frame(p, 2, rng), spec);
        const double expected = relative_volume(spec.h(), 1.0, p);
        const double observed = static_cast<double>(view.inside_count()) / kSamples;
        CHECK(std::abs(observed - expected) < 3 * test::binomial_se(expected, kSamples));
    }
}

TEST_CASE("slice_view on a solid ball with eps = 1 keeps every point") {
    const Dataset data = generate(ShapeSpec{ShapeKind::SphereSolid, 4, 2000, 1.0, 5});
    Rng rng = make_rng(1);
    const SliceView view = slice_view(data, random_frame(4, 2, rng), SliceSpec::from_eps(1.0, 4));
    CHECK(view.inside_count() == data.n());
}

TEST_CASE("central slice of the hollow 3-sphere is a thin ring") {
    const Dataset data = generate(ShapeSpec{ShapeKind::SphereHollow, 3, 5000, 1.0, 17});
    Rng rng = make_rng(6);
    const SliceSpec spec = SliceSpec::from_eps(0.1, 3);
    for (int trial = 0; trial < 10; ++trial) {
        const SliceView view = slice_view(data, random_frame(3, 2, rng), spec);
        CHECK(view.inside_count() > 0);
        for (int i = 0; i < data.n(); ++i) {
            if (!view.inside[static_cast<std::size_t>(i)]) continue;
            const double r = view.projected.row(i).norm();
            CHECK(r >= std::sqrt(1.0 - 0.01) - 1e-12);
            CHECK(r <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("anchored slice orthogonal to the anchor axis is empty") {
    const Dataset data = generate(ShapeSpec{ShapeKind::SphereHollow, 3, 5000, 1.0, 23});
    const Vector c = Vector::Constant(3, 0.7);
    Vector u(3), w(3);
    u << 1, -1, 0;
    w << 1, 1, -2;
    const Frame f = plane(u, w);  // plane perpendicular to (1,1,1)
    const SliceView view = slice_view(data, f, SliceSpec::from_h(0.1, 3, c));
    CHECK(view.inside_count() == 0);
    CHECK(view.distances.minCoeff() >= c.norm() - 1.0 - 1e-12);
    CHECK(c.norm() - 1.0 == doctest::Approx(0.2124).epsilon(1e-3));
}

TEST_CASE("slice views satisfy their invariants") {
    Rng rng = make_rng(71);
    const Dataset data = make_dataset(test::normal_matrix(500, 6, rng));
    const SliceSpec spec = SliceSpec::from_eps(0.1, 6, Vector(test::normal_matrix(6, 1, rng)));
    const SliceView view = slice_view(data, random_frame(6, 2, rng), spec);
    CHECK(view.projected.rows() == 500);
    CHECK(view.distances.allFinite());
    CHECK(view.distances.minCoeff() >= 0.0);
    for (int i = 0; i < 500; ++i) {
        CHECK(view.inside[static_cast<std::size_t>(i)] == (view.distances(i) <= spec.h()));
    }
}

TEST_CASE("distance exactly h counts as inside") {
    Matrix x(1, 3);
    x << 0.2, 0.1, 0.5;
    const Frame f = plane(unit(3, 0), unit(3, 1));
    const SliceView view = slice_view(make_dataset(x), f, SliceSpec::from_h(0.5, 3));
    CHECK(view.distances(0) == 0.5);
    CHECK(view.inside[0]);
}

TEST_CASE("distances do not depend on the basis chosen for the plane") {
    Rng rng = make_rng(44);
    const Matrix x = test::normal_matrix(100, 7, rng);
    const Vector c = test::normal_matrix(7, 1, rng);
    for (int trial = 0; trial < 20; ++trial) {
        const Frame f = random_frame(7, 2, rng);
        Eigen::Matrix2d mix = test::normal_matrix(2, 2, rng);
        const Frame g = orthonormalize(f.matrix() * mix);  // same plane, other basis
        CHECK((slice_distances(x, f, std::nullopt) - slice_distances(x, g, std::nullopt)).cwiseAbs().maxCoeff() < 1e-10);
        CHECK((slice_distances(x, f, c) - slice_distances(x, g, c)).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("batch distances agree with the single-point functions") {
    Rng rng = make_rng(45);
    const Matrix x = test::normal_matrix(40, 5, rng);
    const Vector c = test::normal_matrix(5, 1, rng);
    const Frame f = random_frame(5, 2, rng);
    const Vector central = slice_distances(x, f, std::nullopt);
    const Vector anchored = slice_distances(x, f, c);
    for (int i = 0; i < 40; ++i) {
        CHECK(std::abs(central(i) - orthogonal_distance(x.row(i).transpose(), f)) < 1e-12);
        CHECK(std::abs(anchored(i) - anchored_distance(x.row(i).transpose(), f, c)) < 1e-12);
    }
}

TEST_CASE("slice membership is monotone in h") {
    Rng rng = make_rng(55);
    for (int trial = 0; trial < 200; ++trial) {
        const int p = 3 + trial % 5;
        const Dataset data = make_dataset(test::normal_matrix(100, p, rng));
        const Frame f = random_frame(p, 2, rng);
        std::uniform_real_distribution<double> u(0.01, 2.0);
        double h1 = u(rng), h2 = u(rng);
        if (h1 > h2) std::swap(h1, h2);
        const auto small = slice_view(data, f, SliceSpec::from_h(h1, p));
        const auto large = slice_view(data, f, SliceSpec::from_h(h2, p));
        for (std::size_t i = 0; i < small.inside.size(); ++i) {
            if (small.inside[i]) CHECK(large.inside[i]);
        }
    }
}

TEST_CASE("off-centre anchors catch fewer points of a ball") {
    Rng rng = make_rng(66);
    const Dataset data = make_dataset(test::rejection_ball(5000, 4, rng));
    Vector c = test::normal_matrix(4, 1, rng);
    c *= 0.7 / c.norm();
    const SliceSpec central = SliceSpec::from_eps(0.1, 4);
    const SliceSpec anchored = central.with_anchor(c);
    double sum_central = 0.0, sum_anchored = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const Frame f = random_frame(4, 2, rng);
        sum_central += slice_view(data, f, central).inside_count();
        sum_anchored += slice_view(data, f, anchored).inside_count();
    }
    CHECK(sum_anchored < sum_central);
}

TEST_CASE("SliceSpec records its source and validates") {
    const SliceSpec a = SliceSpec::from_eps(0.2, 4);
    CHECK(a.source() == SliceSpec::Source::Eps);
    CHECK(a.h() == doctest::Approx(std::sqrt(0.2)));
    const SliceSpec b = a.with_h(0.3);
    CHECK(b.source() == SliceSpec::Source::ExplicitH);
    CHECK(b.h() == 0.3);
    CHECK(b.eps() == doctest::Approx(0.09));
    CHECK(b.with_eps(0.5).source() == SliceSpec::Source::Eps);
    CHECK_THROWS_AS(SliceSpec::from_h(0.0, 4), DomainError);
    CHECK_THROWS_AS(SliceSpec::from_eps(0.1, 4, Vector::Zero(3)), DimensionMismatch);
    Rng rng = make_rng(1);
    CHECK_THROWS_AS(slice_view(make_dataset(Matrix::Zero(3, 5)), random_frame(5, 2, rng), a),
                    DimensionMismatch);
}

TEST_CASE("approximate relative volume differs from the exact one by a factor p for thin slices") {
    for (int p : {3, 4, 5, 8}) {
        const double h = 1e-4;
        CHECK(relative_volume(h, 1.0, p) / relative_volume_approx(h, 1.0, p) == doctest::Approx(p).epsilon(1e-6));
    }
}
