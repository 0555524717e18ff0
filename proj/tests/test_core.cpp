#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "testfn/core.hpp"

using namespace testfn;

TEST_CASE("h_transform branches") {
    CHECK(h_transform(Dimension(2), 1.0) == 0.0);
    CHECK(h_transform(Dimension(3), 1.0) == -1.0);
    CHECK(h_transform(Dimension(1), 5.0) == 5.0);
    CHECK(h_transform(Dimension(4), 2.0) == Catch::Approx(-0.25).epsilon(1e-15));
    CHECK_THROWS_AS(h_transform(Dimension(2), 0.0), std::domain_error);
    CHECK_THROWS_AS(h_transform(Dimension(3), -1.0), std::domain_error);
}

TEST_CASE("h_transform is strictly increasing") {
    std::mt19937 rng(1234);
    std::uniform_real_distribution<double> u(0.01, 50.0);
    for (int m : {1, 2, 3, 5, 8}) {
        for (int i = 0; i < 200; ++i) {
            double a = u(rng), b = u(rng);
            if (a > b) std::swap(a, b);
            if (a == b) continue;
            CHECK(h_transform(Dimension(m), a) < h_transform(Dimension(m), b));
        }
    }
}

TEST_CASE("h_inverse examples and round trip") {
    CHECK(h_inverse(Dimension(2), 0.0) == 1.0);
    CHECK(h_inverse(Dimension(3), -1.0) == Catch::Approx(1.0).epsilon(1e-15));
    CHECK(h_inverse(Dimension(2), 1.0) == Catch::Approx(std::exp(1.0)).epsilon(1e-12));
    CHECK_THROWS_AS(h_inverse(Dimension(3), 0.0), std::domain_error);
    CHECK_THROWS_AS(h_inverse(Dimension(5), 0.5), std::domain_error);

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> u(0.02, 20.0);
    for (int m : {1, 2, 3, 4, 7}) {
        for (int i = 0; i < 200; ++i) {
            const double t = u(rng);
            const double s = h_transform(Dimension(m), t);
            const double back = h_inverse(Dimension(m), s);
            CHECK(std::abs(back - t) <= 1e-12 * std::abs(t));
            const double fwd = h_transform(Dimension(m), back);
            CHECK(std::abs(fwd - s) <= 1e-12 * std::max(1.0, std::abs(s)));
        }
    }
}

TEST_CASE("invert_point maps 0 and infinity to each other") {
    const Point inf = Point::infinity(2);
    CHECK(invert_point(inf).is_origin());
    CHECK(invert_point(Point{0.0, 0.0}).at_infinity);

    const Point p{2.0, 0.0};
    const Point q = invert_point(p);
    CHECK(q.x[0] == Catch::Approx(0.5).epsilon(1e-15));
    CHECK(q.x[1] == 0.0);
}

TEST_CASE("invert_point fixes the unit sphere") {
    const double c = 1.0 / std::sqrt(2.0);
    const Point p{c, c};
    const Point q = invert_point(p);
    CHECK(q.x[0] == Catch::Approx(c).epsilon(1e-14));
    CHECK(q.x[1] == Catch::Approx(c).epsilon(1e-14));
}

TEST_CASE("invert_point is an involution") {
    std::mt19937 rng(7);
    std::normal_distribution<double> g(0.0, 2.0);
    for (int dim : {2, 3, 5}) {
        for (int i = 0; i < 300; ++i) {
            Point p;
            for (int d = 0; d < dim; ++d) p.x.push_back(g(rng));
            if (p.is_origin()) continue;
            const Point back = invert_point(invert_point(p));
            for (int d = 0; d < dim; ++d)
                CHECK(std::abs(back.x[d] - p.x[d]) <= 1e-12 * std::max(1.0, std::abs(p.x[d])));
        }
    }
    CHECK(invert_point(invert_point(Point{0.0, 0.0, 0.0})).is_origin());
    CHECK(invert_point(invert_point(Point::infinity(3))).at_infinity);
}

TEST_CASE("kelvin_value") {
    SECTION("m=2 keeps the value") {
        auto [xs, v] = kelvin_value(Dimension(2), 5.0, Point{3.0, 0.0});
        CHECK(xs.x[0] == Catch::Approx(1.0 / 3.0).epsilon(1e-15));
        CHECK(v == 5.0);
    }
    SECTION("m=3 scales by |x|") {
        auto [xs, v] = kelvin_value(Dimension(3), 1.0, Point{2.0, 0.0, 0.0});
        CHECK(xs.x[0] == Catch::Approx(0.5).epsilon(1e-15));
        CHECK(v == Catch::Approx(2.0).epsilon(1e-15));
    }
    SECTION("zero function stays zero") {
        auto [xs, v] = kelvin_value(Dimension(4), 0.0, Point{0.3, -1.2, 0.0, 2.0});
        (void)xs;
        CHECK(v == 0.0);
    }
    CHECK_THROWS_AS(kelvin_value(Dimension(3), 1.0, Point{0.0, 0.0, 0.0}), std::domain_error);
    CHECK_THROWS_AS(kelvin_value(Dimension(3), 1.0, Point::infinity(3)), std::domain_error);
}

TEST_CASE("riesz_constant closed forms") {
    CHECK(riesz_constant(Dimension(1)) == Catch::Approx(0.5).epsilon(1e-14));
    CHECK(riesz_constant(Dimension(2)) == Catch::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-14));
    CHECK(riesz_constant(Dimension(3)) == Catch::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-14));
    CHECK(riesz_constant(Dimension(4)) == Catch::Approx(1.0 / (4.0 * M_PI * M_PI)).epsilon(1e-14));
}

TEST_CASE("dimension guards") {
    CHECK_THROWS_AS(Dimension(0), std::domain_error);
    CHECK(Dimension::complex(3).value() == 6);
    CHECK_THROWS_AS(Dimension::complex(0), std::domain_error);
}
