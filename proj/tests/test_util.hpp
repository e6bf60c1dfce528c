#pragma once

// Deterministic random generators shared by the test binaries. Every
// battery seeds its own mt19937_64, so test order never changes the
// draws. Frames are kept moderately conditioned (entry range [-2, 2],
// |det| >= 0.3) so quadrature-based checks converge quickly and the
// pinned tolerances are meaningful.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <utility>

#include <spectral_strings/spectral_strings.hpp>

namespace testutil {

using spectral_strings::cplx;
using spectral_strings::Mat2;
using spectral_strings::SPD2;
using spectral_strings::Vec2;
using spectral_strings::Zweibein;

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Mat2 random_mat2(std::mt19937_64& rng, double lo = -2.0, double hi = 2.0) {
    return {uniform(rng, lo, hi), uniform(rng, lo, hi), uniform(rng, lo, hi),
            uniform(rng, lo, hi)};
}

inline Zweibein random_zweibein(std::mt19937_64& rng, double min_abs_det = 0.3) {
    for (;;) {
        const Mat2 m = random_mat2(rng);
        if (std::abs(det(m)) >= min_abs_det) return Zweibein(m);
    }
}

// orientation: +1 draws pairs with det X > 0, -1 with det X < 0, 0 any.
// min_separation keeps |X - I| away from zero so interaction terms are
// not degenerate.
inline std::pair<Zweibein, Zweibein> random_frame_pair(std::mt19937_64& rng,
                                                       int orientation = 0,
                                                       double min_separation = 0.0) {
    for (;;) {
        const Zweibein k = random_zweibein(rng);
        const Zweibein l = random_zweibein(rng);
        const double sign = det(k.m) * det(l.m);
        if (orientation > 0 && sign < 0.0) continue;
        if (orientation < 0 && sign > 0.0) continue;
        if (min_separation > 0.0) {
            const Mat2 x = l.m * inverse(k.m);
            if (frobenius_sq(x - Mat2::identity()) < min_separation * min_separation)
                continue;
        }
        return {k, l};
    }
}

inline Mat2 rotation(double angle) {
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c, -s, s, c};
}

inline SPD2 random_spd(std::mt19937_64& rng, double lmin = 0.1, double lmax = 10.0) {
    const double l1 = uniform(rng, lmin, lmax);
    const double l2 = uniform(rng, lmin, lmax);
    const Mat2 r = rotation(uniform(rng, 0.0, 2.0 * spectral_strings::pi));
    const Mat2 y = r * Mat2::diag(l1, l2) * transpose(r);
    return {y.a11, 0.5 * (y.a12 + y.a21), y.a22};
}

inline cplx random_phi(std::mt19937_64& rng) {
    for (;;) {
        const cplx phi(uniform(rng, -1.5, 1.5), uniform(rng, -1.5, 1.5));
        if (std::abs(phi) >= 0.2) return phi;
    }
}

inline bool rel_close(double a, double b, double tol, double floor = 0.0) {
    return std::abs(a - b) <= std::max(tol * std::max(std::abs(a), std::abs(b)), floor);
}

}  // namespace testutil
