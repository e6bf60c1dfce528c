#pragma once

// Dense 2x2 real matrices with closed-form decompositions.
// Everything downstream (metrics, transition matrices, symbol quadratic
// forms) is built from these; all operations are branch-light closed
// forms chosen for stability near repeated eigenvalues.

#include <cmath>
#include <stdexcept>
#include <string>

namespace spectral_strings {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline double dot(const Vec2& u, const Vec2& v) { return u.x * v.x + u.y * v.y; }
inline double norm_sq(const Vec2& v) { return dot(v, v); }
inline Vec2 operator+(const Vec2& u, const Vec2& v) { return {u.x + v.x, u.y + v.y}; }
inline Vec2 operator-(const Vec2& u, const Vec2& v) { return {u.x - v.x, u.y - v.y}; }
inline Vec2 operator*(double s, const Vec2& v) { return {s * v.x, s * v.y}; }

// Row-major 2x2 matrix. Entries are validated to be finite on
// construction so non-finite values surface where they are produced,
// not several operations later.
struct Mat2 {
    double a11, a12, a21, a22;

    Mat2(double m11, double m12, double m21, double m22)
        : a11(m11), a12(m12), a21(m21), a22(m22) {
        if (!(std::isfinite(a11) && std::isfinite(a12) &&
              std::isfinite(a21) && std::isfinite(a22)))
            throw std::invalid_argument("Mat2: non-finite entry");
    }

    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 diag(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }
};

inline Mat2 operator+(const Mat2& a, const Mat2& b) {
    return {a.a11 + b.a11, a.a12 + b.a12, a.a21 + b.a21, a.a22 + b.a22};
}

inline Mat2 operator-(const Mat2& a, const Mat2& b) {
    return {a.a11 - b.a11, a.a12 - b.a12, a.a21 - b.a21, a.a22 - b.a22};
}

inline Mat2 operator*(const Mat2& a, const Mat2& b) {
    return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
            a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

inline Mat2 operator*(double s, const Mat2& a) {
    return {s * a.a11, s * a.a12, s * a.a21, s * a.a22};
}

inline Vec2 operator*(const Mat2& a, const Vec2& v) {
    return {a.a11 * v.x + a.a12 * v.y, a.a21 * v.x + a.a22 * v.y};
}

inline Mat2 transpose(const Mat2& a) { return {a.a11, a.a21, a.a12, a.a22}; }

inline double det(const Mat2& a) { return a.a11 * a.a22 - a.a12 * a.a21; }

inline double trace(const Mat2& a) { return a.a11 + a.a22; }

inline Mat2 inverse(const Mat2& a) {
    const double d = det(a);
    if (d == 0.0)
        throw std::domain_error("Mat2: inverse of singular matrix");
    const double r = 1.0 / d;
    return {r * a.a22, -r * a.a12, -r * a.a21, r * a.a11};
}

// Frobenius norm squared, Tr(A^T A).
inline double frobenius_sq(const Mat2& a) {
    return a.a11 * a.a11 + a.a12 * a.a12 + a.a21 * a.a21 + a.a22 * a.a22;
}

inline double max_abs_entry(const Mat2& a) {
    return std::max(std::max(std::abs(a.a11), std::abs(a.a12)),
                    std::max(std::abs(a.a21), std::abs(a.a22)));
}

/// Similarity invariants of a 2x2 matrix: trace, trace of the square,
/// and determinant. Tr(X^2) = (Tr X)^2 - 2 det X holds identically.
struct Invariants2 {
    double tr;
    double tr_sq;
    double det;
};

inline Invariants2 invariants(const Mat2& x) {
    return {trace(x), trace(x * x), det(x)};
}

// Symmetric positive-definite 2x2 matrix, stored as the upper triangle.
// Positivity (trace > 0 and det > 0) is enforced strictly at
// construction; the violated condition is named in the error.
struct SPD2 {
    double a11, a12, a22;

    SPD2(double m11, double m12, double m22) : a11(m11), a12(m12), a22(m22) {
        if (!(std::isfinite(a11) && std::isfinite(a12) && std::isfinite(a22)))
            throw std::invalid_argument("SPD2: non-finite entry");
        if (!(trace() > 0.0))
            throw std::domain_error("SPD2: trace not positive (trace = " +
                                    std::to_string(trace()) + ")");
        if (!(det() > 0.0))
            throw std::domain_error("SPD2: determinant not positive (det = " +
                                    std::to_string(det()) + ")");
    }

    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a12; }
    Mat2 to_mat() const { return {a11, a12, a12, a22}; }

    static SPD2 identity() { return {1.0, 0.0, 1.0}; }
};

// Requires exact symmetry of the stored entries; intended for products
// of the form X^T X whose off-diagonal entries are computed once.
inline SPD2 spd_from_mat(const Mat2& m) {
    if (m.a12 != m.a21)
        throw std::domain_error("SPD2: matrix not symmetric as stored");
    return {m.a11, m.a12, m.a22};
}

inline SPD2 spd_inverse(const SPD2& y) {
    const double r = 1.0 / y.det();
    return {r * y.a22, -r * y.a12, r * y.a11};
}

/// Eigendecomposition of a symmetric matrix: Y = S diag(l1, l2) S^T with
/// l1 >= l2 and S a proper rotation (det S = +1). For a repeated
/// eigenvalue S is the identity.
struct EigenPair2 {
    Mat2 S;
    double lambda1;
    double lambda2;
};

inline EigenPair2 sym_eig2(const SPD2& y) {
    const double a = y.a11, b = y.a22, c = y.a12;
    const double gap = std::sqrt((a - b) * (a - b) + 4.0 * c * c);
    const double l1 = 0.5 * ((a + b) + gap);
    const double l2 = (a * b - c * c) / l1;  // product form, avoids cancellation

    // Eigenvector of l1 from the better-conditioned row of Y - l1 I.
    Vec2 v{1.0, 0.0};
    const double n1 = c * c + (l1 - a) * (l1 - a);
    const double n2 = (l1 - b) * (l1 - b) + c * c;
    if (n1 > n2 && n1 > 0.0) {
        const double s = 1.0 / std::sqrt(n1);
        v = {s * c, s * (l1 - a)};
    } else if (n2 > 0.0) {
        const double s = 1.0 / std::sqrt(n2);
        v = {s * (l1 - b), s * c};
    }
    return {Mat2{v.x, -v.y, v.y, v.x}, l1, l2};
}

/// Principal square root of an SPD matrix by the 2x2 closed form
///   sqrt(Y) = (Y + sqrt(det Y) I) / sqrt(Tr Y + 2 sqrt(det Y)).
inline SPD2 mat_sqrt_pos(const SPD2& y) {
    const double sd = std::sqrt(y.det());
    const double s = 1.0 / std::sqrt(y.trace() + 2.0 * sd);
    return {s * (y.a11 + sd), s * y.a12, s * (y.a22 + sd)};
}

/// Inverse principal square root, same normalization:
///   Y^(-1/2) = (sqrt(det Y) Y^(-1) + I) / sqrt(Tr Y + 2 sqrt(det Y)).
inline SPD2 mat_inv_sqrt_pos(const SPD2& y) {
    const double sd = std::sqrt(y.det());
    const double s = 1.0 / std::sqrt(y.trace() + 2.0 * sd);
    const double r = 1.0 / sd;
    return {s * (r * y.a22 + 1.0), s * (-r * y.a12), s * (r * y.a11 + 1.0)};
}

}  // namespace spectral_strings
