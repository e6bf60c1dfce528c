#pragma once

// Constant-frame geometry of the doubled model: two zweibeins K and L on
// the plane, the flat metrics they induce, and the transition matrix
// X = L K^(-1) whose similarity invariants carry the entire interaction.

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

#include "mat2.hpp"

namespace spectral_strings {

// A constant zweibein, stored as the 2x2 frame matrix. Invertibility is
// gated at construction with a hard floor on |det|.
struct Zweibein {
    Mat2 m;

    explicit Zweibein(const Mat2& frame) : m(frame) {
        if (std::abs(det(m)) < 1e-12)
            throw std::domain_error("Zweibein: frame matrix is singular (det = " +
                                    std::to_string(det(m)) + ")");
    }
};

// Inverse metric g^(-1) = K K^T and its inverse g. Both are SPD whenever
// the zweibein is invertible.
struct MetricPair {
    SPD2 g_inv;
    SPD2 g;
};

inline MetricPair metric_from_zweibein(const Zweibein& k) {
    const Mat2& m = k.m;
    const SPD2 g_inv{m.a11 * m.a11 + m.a12 * m.a12,
                     m.a11 * m.a21 + m.a12 * m.a22,
                     m.a21 * m.a21 + m.a22 * m.a22};
    return {g_inv, spd_inverse(g_inv)};
}

// Transition matrix between the two frames, X = L K^(-1), with its Gram
// matrix X^T X and the sign of det X. det X = det L / det K, so the sign
// records whether the frames share an orientation.
struct TransitionData {
    Mat2 X;
    SPD2 XtX;
    int det_sign;
};

inline TransitionData transition(const Zweibein& k, const Zweibein& l) {
    const Mat2 x = l.m * inverse(k.m);
    const SPD2 xtx{x.a11 * x.a11 + x.a21 * x.a21,
                   x.a11 * x.a12 + x.a21 * x.a22,
                   x.a12 * x.a12 + x.a22 * x.a22};
    return {x, xtx, det(x) > 0.0 ? +1 : -1};
}

/// Determinant bookkeeping for a single zweibein: the signed determinant
/// of the frame matrix and the volume factor sqrt(det g^(-1)) = |det K|.
inline std::pair<double, double> det_relation(const Zweibein& k) {
    const double d = det(k.m);
    return {d, std::abs(d)};
}

}  // namespace spectral_strings
