#pragma once

// Complex 2x2 / 4x4 matrix arithmetic and the Clifford data of the model.
// The 4x4 space is the tensor product (spinor 2) x (doubling 2), in that
// order: flat index = 2 * spinor + doubling. tr_spinor contracts the
// spinor factor (the Clifford trace, tr_spinor(I4) = 2 * I2), tr_doubling
// contracts the doubling factor.

#include <array>
#include <complex>
#include <cstddef>

#include "mat2.hpp"

namespace spectral_strings {

using cplx = std::complex<double>;

struct Mat2c {
    std::array<cplx, 4> e{};  // row major

    cplx& operator()(int i, int j) { return e[static_cast<std::size_t>(2 * i + j)]; }
    const cplx& operator()(int i, int j) const { return e[static_cast<std::size_t>(2 * i + j)]; }

    static Mat2c identity() { return {{cplx(1), cplx(0), cplx(0), cplx(1)}}; }
    static Mat2c zero() { return {}; }
};

inline Mat2c operator+(const Mat2c& a, const Mat2c& b) {
    Mat2c r;
    for (std::size_t i = 0; i < 4; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

inline Mat2c operator-(const Mat2c& a, const Mat2c& b) {
    Mat2c r;
    for (std::size_t i = 0; i < 4; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
}

inline Mat2c operator*(const Mat2c& a, const Mat2c& b) {
    Mat2c r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
    return r;
}

inline Mat2c operator*(cplx s, const Mat2c& a) {
    Mat2c r;
    for (std::size_t i = 0; i < 4; ++i) r.e[i] = s * a.e[i];
    return r;
}

inline cplx trace(const Mat2c& a) { return a.e[0] + a.e[3]; }

inline Mat2c commutator(const Mat2c& a, const Mat2c& b) { return a * b - b * a; }

inline Mat2c anticommutator(const Mat2c& a, const Mat2c& b) { return a * b + b * a; }

struct Mat4c {
    std::array<cplx, 16> e{};  // row major

    cplx& operator()(int i, int j) { return e[static_cast<std::size_t>(4 * i + j)]; }
    const cplx& operator()(int i, int j) const { return e[static_cast<std::size_t>(4 * i + j)]; }

    static Mat4c identity() {
        Mat4c r;
        for (int i = 0; i < 4; ++i) r(i, i) = cplx(1);
        return r;
    }
};

inline Mat4c operator+(const Mat4c& a, const Mat4c& b) {
    Mat4c r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = a.e[i] + b.e[i];
    return r;
}

inline Mat4c operator-(const Mat4c& a, const Mat4c& b) {
    Mat4c r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = a.e[i] - b.e[i];
    return r;
}

inline Mat4c operator*(const Mat4c& a, const Mat4c& b) {
    Mat4c r;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0)) continue;
            for (int j = 0; j < 4; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

inline Mat4c operator*(cplx s, const Mat4c& a) {
    Mat4c r;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] = s * a.e[i];
    return r;
}

inline cplx trace(const Mat4c& a) { return a(0, 0) + a(1, 1) + a(2, 2) + a(3, 3); }

/// Tensor product with the spinor factor slow and the doubling factor
/// fast: (s x d)((i,a),(j,b)) = s(i,j) d(a,b).
inline Mat4c kron(const Mat2c& spinor, const Mat2c& doubling) {
    Mat4c r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    r(2 * i + a, 2 * j + b) = spinor(i, j) * doubling(a, b);
    return r;
}

/// Clifford trace: contract the spinor factor, leaving a doubling-space
/// matrix. tr_spinor(kron(s, d)) = trace(s) * d.
inline Mat2c tr_spinor(const Mat4c& m) {
    Mat2c r;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            r(a, b) = m(a, b) + m(2 + a, 2 + b);
    return r;
}

/// Contract the doubling factor, leaving a spinor-space matrix.
inline Mat2c tr_doubling(const Mat4c& m) {
    Mat2c r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r(i, j) = m(2 * i, 2 * j) + m(2 * i + 1, 2 * j + 1);
    return r;
}

// Pauli generators and the grading element sigma = chi * sigma3 with
// sigma^2 = kappa. For kappa = +1 the factor chi is 1, for kappa = -1 it
// is i; either way {sigma_a, sigma} = 0.
struct CliffordRep {
    Mat2c sigma1;
    Mat2c sigma2;
    Mat2c sigma3;
    Mat2c sigma;
    int kappa;
};

inline CliffordRep build_clifford(int kappa) {
    if (kappa != 1 && kappa != -1)
        throw std::invalid_argument("CliffordRep: kappa must be +1 or -1");
    const cplx i(0.0, 1.0);
    const Mat2c s1{{cplx(0), cplx(1), cplx(1), cplx(0)}};
    const Mat2c s2{{cplx(0), -i, i, cplx(0)}};
    const Mat2c s3{{cplx(1), cplx(0), cplx(0), cplx(-1)}};
    const cplx chi = (kappa == 1) ? cplx(1) : i;
    return {s1, s2, s3, chi * s3, kappa};
}

}  // namespace spectral_strings
