#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "test_util.hpp"

using namespace spectral_strings;
using Catch::Matchers::ContainsSubstring;

namespace {

// Reference family: int 1/(|xi|^2+1)^2 = pi, int 1/(|xi|^2+1)^3 = pi/2,
// int xi1^2/(|xi|^2+1)^3 = pi/4.
double inv_sq(const Vec2& xi) {
    const double q = norm_sq(xi) + 1.0;
    return 1.0 / (q * q);
}

double inv_cube(const Vec2& xi) {
    const double q = norm_sq(xi) + 1.0;
    return 1.0 / (q * q * q);
}

double axis_weighted(const Vec2& xi) {
    const double q = norm_sq(xi) + 1.0;
    return xi.x * xi.x / (q * q * q);
}

}  // namespace

TEST_CASE("reference integrals") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-10;
    cfg.abs_tol = 1e-14;

    const IntegralResult a = integrate_plane(inv_sq, cfg);
    REQUIRE(a.converged);
    REQUIRE(testutil::rel_close(a.value, pi, 1e-10));
    REQUIRE(a.evaluations > 0);
    REQUIRE(a.error_estimate >= 0.0);

    const IntegralResult b = integrate_plane(inv_cube, cfg);
    REQUIRE(b.converged);
    REQUIRE(testutil::rel_close(b.value, pi / 2.0, 1e-10));

    const IntegralResult c = integrate_plane(axis_weighted, cfg);
    REQUIRE(c.converged);
    REQUIRE(testutil::rel_close(c.value, pi / 4.0, 1e-10));
}

TEST_CASE("anisotropic reference integral") {
    // int 1/(|K xi|^2 + 1)^2 = pi / |det K|.
    const Mat2 k = Mat2::diag(2.0, 3.0);
    const auto f = [&](const Vec2& xi) {
        const double q = norm_sq(k * xi) + 1.0;
        return 1.0 / (q * q);
    };
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-9;
    const IntegralResult r = integrate_plane(f, cfg);
    REQUIRE(r.converged);
    REQUIRE(testutil::rel_close(r.value, pi / 6.0, 1e-9));
}

TEST_CASE("affine covariance") {
    const Mat2 a{1.5, 0.4, -0.3, 1.2};
    const auto f = [&](const Vec2& xi) { return inv_sq(xi); };
    const auto g = [&](const Vec2& xi) { return f(a * xi); };
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-9;
    const IntegralResult r = integrate_plane(g, cfg);
    REQUIRE(r.converged);
    REQUIRE(testutil::rel_close(r.value, pi / std::abs(det(a)), 1e-9));
}

TEST_CASE("half-plane doubling for even integrands") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-10;
    const IntegralResult full = integrate_plane(inv_sq, cfg);
    const IntegralResult half = integrate_half_plane(inv_sq, cfg);
    REQUIRE(half.converged);
    REQUIRE(testutil::rel_close(2.0 * half.value, full.value, 1e-10));
}

TEST_CASE("anisotropy preconditioner") {
    const Mat2 k = Mat2::diag(40.0, 0.02);
    const auto f = [&](const Vec2& xi) {
        const double q = norm_sq(k * xi) + 1.0;
        return 1.0 / (q * q);
    };
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-9;
    // Gram matrix of the frame, K^T K, as the scale hint.
    cfg.scale = SPD2{1600.0, 0.0, 4e-4};
    const IntegralResult r = integrate_plane(f, cfg);
    REQUIRE(r.converged);
    REQUIRE(testutil::rel_close(r.value, pi / 0.8, 1e-9));
}

TEST_CASE("deterministic repetition") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-9;
    const IntegralResult a = integrate_plane(axis_weighted, cfg);
    const IntegralResult b = integrate_plane(axis_weighted, cfg);
    REQUIRE(a.value == b.value);
    REQUIRE(a.error_estimate == b.error_estimate);
    REQUIRE(a.evaluations == b.evaluations);
}

TEST_CASE("non-finite integrand values are reported with the point") {
    const auto f = [](const Vec2& xi) {
        return norm_sq(xi) > 100.0 ? std::nan("") : inv_sq(xi);
    };
    REQUIRE_THROWS_WITH(integrate_plane(f), ContainsSubstring("non-finite"));
}

TEST_CASE("exhausted budget reports non-convergence") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-13;
    cfg.abs_tol = 1e-16;
    cfg.max_subdivisions = 8;
    const IntegralResult r = integrate_plane(inv_sq, cfg);
    REQUIRE_FALSE(r.converged);
    REQUIRE(std::isfinite(r.value));
}

TEST_CASE("tightening the tolerance never degrades the result") {
    const struct {
        double (*f)(const Vec2&);
        double reference;
    } cases[3] = {{inv_sq, pi}, {inv_cube, pi / 2.0}, {axis_weighted, pi / 4.0}};

    for (const auto& c : cases) {
        double prev_err = std::numeric_limits<double>::infinity();
        for (double tol = 1e-4; tol >= 1e-11; tol *= 0.1) {
            QuadratureConfig cfg;
            cfg.rel_tol = tol;
            cfg.abs_tol = 1e-15;
            const IntegralResult r = integrate_plane(c.f, cfg);
            REQUIRE(r.converged);
            const double err = std::abs(r.value - c.reference);
            REQUIRE(err <= prev_err + 4.0 * std::numeric_limits<double>::epsilon() * c.reference);
            prev_err = err;
        }
    }
}
