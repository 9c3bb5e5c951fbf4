#include <doctest.h>

#include "oracle.hpp"

using namespace mtv;
using doctest::Approx;

TEST_CASE("descriptor element lengths and tags") {
    CHECK(ManifoldDescriptor::s1().element_len() == 1);
    CHECK(ManifoldDescriptor::s2().element_len() == 3);
    CHECK(ManifoldDescriptor::so3().element_len() == 9);
    CHECK(ManifoldDescriptor::pos3().element_len() == 9);
    CHECK(ManifoldDescriptor::euclidean(5).element_len() == 5);
    CHECK(ManifoldDescriptor::lch().element_len() == 3);

    for (const char* tag : {"s1", "s2", "so3", "pos3", "euclidean:4", "lch"})
        CHECK(ManifoldDescriptor::from_tag(tag).tag() == tag);
    CHECK(ManifoldDescriptor::from_tag("lch") == ManifoldDescriptor::lch());
    CHECK_THROWS_AS(ManifoldDescriptor::from_tag("sphere"), std::invalid_argument);
    CHECK_THROWS_AS(ManifoldDescriptor::from_tag("euclidean:x"), std::invalid_argument);
    CHECK_THROWS_AS(ManifoldDescriptor::euclidean(0), std::invalid_argument);

    // product element_len is the sum of the components
    const auto p = ManifoldDescriptor::product(
        {ManifoldDescriptor::s2(), ManifoldDescriptor::euclidean(2),
         ManifoldDescriptor::s1()});
    CHECK(p.element_len() == 6);
    CHECK_THROWS_AS(p.tag(), std::invalid_argument);  // no tag for ad-hoc products
}

TEST_CASE("point invariant validation") {
    const auto s1 = ManifoldDescriptor::s1();
    CHECK(!s1.validate_point(std::vector<double>{1.0}));
    CHECK(s1.validate_point(std::vector<double>{7.0}));  // outside (-pi, pi]

    const auto s2 = ManifoldDescriptor::s2();
    CHECK(!s2.validate_point(std::vector<double>{0, 0, 1}));
    CHECK(s2.validate_point(std::vector<double>{0, 0, 1.1}));

    const auto so3 = ManifoldDescriptor::so3();
    CHECK(!so3.validate_point(std::vector<double>{1, 0, 0, 0, 1, 0, 0, 0, 1}));
    // orthogonal but det = -1
    CHECK(so3.validate_point(std::vector<double>{1, 0, 0, 0, 1, 0, 0, 0, -1}));

    const auto pos3 = ManifoldDescriptor::pos3();
    CHECK(!pos3.validate_point(std::vector<double>{2, 0, 0, 0, 1, 0, 0, 0, 1}));
    CHECK(pos3.validate_point(std::vector<double>{-1, 0, 0, 0, 1, 0, 0, 0, 1}));
    CHECK(pos3.validate_point(std::vector<double>{1, 0.5, 0, 0, 1, 0, 0, 0, 1}));  // asym

    CHECK(s2.validate_point(std::vector<double>{0, 0}));  // wrong length
}

TEST_CASE("value API checks anchoring and manifolds") {
    const auto e2 = ManifoldDescriptor::euclidean(2);
    const ManifoldPoint a(e2, {1, 2});
    const ManifoldPoint other(e2, {0, 0});
    const TangentVector v(a, {3, -1});

    const auto moved = exp_map(a, v);
    CHECK(moved.coords()[0] == 4.0);
    CHECK(moved.coords()[1] == 1.0);

    CHECK_THROWS_AS(exp_map(other, v), std::invalid_argument);
    CHECK_THROWS_AS(dist(a, ManifoldPoint(ManifoldDescriptor::euclidean(3), {0, 0, 0})),
                    std::invalid_argument);
    CHECK_THROWS_AS(TangentVector(a, {1, 2, 3}), std::invalid_argument);

    // exp of the zero tangent is the base on every manifold
    oracle::Rng rng(7);
    for (const auto& m : oracle::all_manifolds()) {
        const ManifoldPoint base(m, oracle::random_point(m, rng));
        const TangentVector zero(base, std::vector<double>(m.element_len(), 0.0));
        const auto back = exp_map(base, zero);
        for (int k = 0; k < m.element_len(); ++k)
            CHECK(back.coords()[k] == Approx(base.coords()[k]).epsilon(1e-14));
        // log of the point itself is the zero vector
        const auto lg = log_map(base, base);
        for (int k = 0; k < m.element_len(); ++k) CHECK(lg.coords()[k] == 0.0);
        CHECK(norm_at(lg) == 0.0);
    }
}

TEST_CASE("round trip exp(log) on 1000 injectivity-safe pairs per manifold") {
    oracle::Rng rng(101);
    for (const auto& m : oracle::all_manifolds()) {
        std::vector<double> b(m.element_len()), lg(m.element_len()),
            back(m.element_len());
        double worst = 0;
        for (int trial = 0; trial < 1000; ++trial) {
            const auto a = oracle::random_point(m, rng);
            const auto v = oracle::random_tangent(m, a, 1.0, rng);
            exp_map(m, a, v, b);
            log_map(m, a, b, lg);
            exp_map(m, a, lg, back);
            worst = std::max(worst, dist(m, back, b));
        }
        CHECK(worst <= 1e-9);
    }
}

TEST_CASE("geodesics run at unit speed") {
    oracle::Rng rng(102);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const auto& m : oracle::all_manifolds()) {
        std::vector<double> b(m.element_len()), g(m.element_len());
        for (int trial = 0; trial < 200; ++trial) {
            const auto a = oracle::random_point(m, rng);
            const auto v = oracle::random_tangent(m, a, 1.0, rng);
            exp_map(m, a, v, b);
            const double d = dist(m, a, b);
            const double t = unit(rng) * d;
            geodesic_point(m, a, b, t, g);
            CHECK(std::abs(dist(m, a, g) - t) < 1e-9);
            CHECK(std::abs(dist(m, g, b) - (d - t)) < 1e-9);
        }
    }
}

TEST_CASE("distance symmetry and triangle inequality") {
    oracle::Rng rng(103);
    for (const auto& m : oracle::all_manifolds()) {
        std::vector<double> b(m.element_len()), c(m.element_len());
        for (int trial = 0; trial < 300; ++trial) {
            const auto a = oracle::random_point(m, rng);
            exp_map(m, a, oracle::random_tangent(m, a, 0.5, rng), b);
            exp_map(m, a, oracle::random_tangent(m, a, 0.5, rng), c);
            const double ab = dist(m, a, b);
            const double ba = dist(m, b, {a.data(), a.size()});
            CHECK(std::abs(ab - ba) <= 1e-12);
            CHECK(dist(m, a, c) <= ab + dist(m, b, c) + 1e-9);
        }
    }
}

TEST_CASE("product distance is the root of summed squared component distances") {
    oracle::Rng rng(104);
    const auto prod = ManifoldDescriptor::product(
        {ManifoldDescriptor::s2(), ManifoldDescriptor::pos3(),
         ManifoldDescriptor::euclidean(2)});
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = oracle::random_point(prod, rng);
        const auto b = oracle::random_point(prod, rng);
        const double ds2 = dist(ManifoldDescriptor::s2(), {a.data(), 3}, {b.data(), 3});
        const double dpos =
            dist(ManifoldDescriptor::pos3(), {a.data() + 3, 9}, {b.data() + 3, 9});
        const double de =
            dist(ManifoldDescriptor::euclidean(2), {a.data() + 12, 2}, {b.data() + 12, 2});
        const double expected = std::sqrt(ds2 * ds2 + dpos * dpos + de * de);
        CHECK(dist(prod, a, b) == Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("geodesic_point endpoints and argument checks") {
    const auto e1 = ManifoldDescriptor::euclidean(1);
    const ManifoldPoint zero(e1, {0.0});
    const ManifoldPoint four(e1, {4.0});

    CHECK(geodesic_point(zero, four, 0.0).coords()[0] == 0.0);
    CHECK(geodesic_point(zero, four, 1.0).coords()[0] == Approx(1.0));
    CHECK(geodesic_point(zero, four, 4.0).coords()[0] == Approx(4.0));
    CHECK_THROWS_AS(geodesic_point(zero, four, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(geodesic_point(zero, four, -1.0), std::invalid_argument);

    const auto s1 = ManifoldDescriptor::s1();
    const ManifoldPoint a(s1, {0.0});
    const ManifoldPoint b(s1, {kPi / 2});
    CHECK(geodesic_point(a, b, kPi / 4).coords()[0] == Approx(kPi / 4));

    // cut-locus pair: the geodesic is ambiguous for t > 0
    const ManifoldPoint anti(s1, {kPi});
    CHECK_THROWS_AS(geodesic_point(a, anti, 0.1), CutLocusError);
    // degenerate pair: stays put for any t = 0
    CHECK(geodesic_point(a, a, 0.0).coords()[0] == 0.0);
}

TEST_CASE("norm_at frozen values") {
    const auto pos3 = ManifoldDescriptor::pos3();
    const std::vector<double> id = {1, 0, 0, 0, 1, 0, 0, 0, 1};
    const std::vector<double> w100 = {1, 0, 0, 0, 0, 0, 0, 0, 0};
    CHECK(norm_at(pos3, id, w100) == Approx(1.0));  // reduces to Frobenius at I

    const auto so3 = ManifoldDescriptor::so3();
    std::vector<double> skew(9);
    skew_from_axis(0, 0, kPi / 2).store(skew.data());
    CHECK(norm_at(so3, id, skew) == Approx(std::sqrt(2.0) * kPi / 2));
}
