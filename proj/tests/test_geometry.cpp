#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

#include "test_util.hpp"

using namespace spectral_strings;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("Zweibein gates singular frames") {
    REQUIRE_THROWS_WITH(Zweibein(Mat2{1.0, 2.0, 2.0, 4.0}), ContainsSubstring("singular"));
    REQUIRE_NOTHROW(Zweibein(Mat2{1.0, 0.0, 0.0, 1e-6}));
}

TEST_CASE("metric_from_zweibein") {
    SECTION("shear frame example") {
        const MetricPair mp = metric_from_zweibein(Zweibein(Mat2{1.0, 1.0, 0.0, 1.0}));
        REQUIRE(mp.g_inv.a11 == 2.0);
        REQUIRE(mp.g_inv.a12 == 1.0);
        REQUIRE(mp.g_inv.a22 == 1.0);
        REQUIRE(mp.g.a11 == Approx(1.0).margin(1e-15));
        REQUIRE(mp.g.a12 == Approx(-1.0).margin(1e-15));
        REQUIRE(mp.g.a22 == Approx(2.0).margin(1e-15));
    }
    SECTION("g g_inv = I and det(g_inv) = det(K)^2") {
        std::mt19937_64 rng(21);
        for (int i = 0; i < 200; ++i) {
            const Zweibein k = testutil::random_zweibein(rng);
            const MetricPair mp = metric_from_zweibein(k);

            const Mat2 gram = k.m * transpose(k.m);
            REQUIRE(max_abs_entry(mp.g_inv.to_mat() - gram) <= 1e-13 * max_abs_entry(gram));

            const Mat2 prod = mp.g.to_mat() * mp.g_inv.to_mat();
            REQUIRE(max_abs_entry(prod - Mat2::identity()) <= 1e-12);

            const double dk = det(k.m);
            REQUIRE(mp.g_inv.det() == Approx(dk * dk).epsilon(1e-12));
        }
    }
}

TEST_CASE("transition data") {
    SECTION("stretched pair example") {
        const TransitionData td =
            transition(Zweibein(Mat2::identity()), Zweibein(Mat2::diag(2.0, 3.0)));
        REQUIRE(td.X.a11 == 2.0);
        REQUIRE(td.X.a22 == 3.0);
        REQUIRE(td.X.a12 == 0.0);
        REQUIRE(td.XtX.a11 == 4.0);
        REQUIRE(td.XtX.a22 == 9.0);
        REQUIRE(td.det_sign == 1);
    }
    SECTION("orientation flip is recorded") {
        const TransitionData td =
            transition(Zweibein(Mat2::identity()), Zweibein(Mat2::diag(1.0, -1.0)));
        REQUIRE(td.det_sign == -1);
    }
    SECTION("X K = L and determinant relations") {
        std::mt19937_64 rng(22);
        for (int i = 0; i < 200; ++i) {
            const auto [k, l] = testutil::random_frame_pair(rng);
            const TransitionData td = transition(k, l);

            REQUIRE(max_abs_entry(td.X * k.m - l.m) <= 1e-12 * max_abs_entry(l.m));
            REQUIRE(det(td.X) == Approx(det(l.m) / det(k.m)).epsilon(1e-12));

            // |det X|^2 = det(g h^-1) for the two metrics g, h.
            const MetricPair g = metric_from_zweibein(k);
            const MetricPair h = metric_from_zweibein(l);
            const double metric_ratio = g.g.det() * h.g_inv.det();
            REQUIRE(det(td.X) * det(td.X) == Approx(metric_ratio).epsilon(1e-11));

            const Mat2 xtx = transpose(td.X) * td.X;
            REQUIRE(max_abs_entry(td.XtX.to_mat() - xtx) <= 1e-12 * max_abs_entry(xtx));
        }
    }
    SECTION("invariant under a common frame rotation") {
        std::mt19937_64 rng(23);
        for (int i = 0; i < 100; ++i) {
            const auto [k, l] = testutil::random_frame_pair(rng);
            const Mat2 r = testutil::rotation(testutil::uniform(rng, 0.0, 2.0 * pi));
            const TransitionData a = transition(k, l);
            const TransitionData b = transition(Zweibein(k.m * r), Zweibein(l.m * r));
            REQUIRE(max_abs_entry(a.X - b.X) <= 1e-12 * (1.0 + max_abs_entry(a.X)));
        }
    }
}

TEST_CASE("det_relation") {
    std::mt19937_64 rng(24);
    for (int i = 0; i < 100; ++i) {
        const Zweibein k = testutil::random_zweibein(rng);
        const auto [signed_det, volume] = det_relation(k);
        REQUIRE(signed_det == det(k.m));
        REQUIRE(volume == std::abs(signed_det));
        const MetricPair mp = metric_from_zweibein(k);
        REQUIRE(volume == Approx(std::sqrt(mp.g_inv.det())).epsilon(1e-12));
    }
}
