#pragma once

// Symbol calculus for the squared doubled Dirac operator
//   D = i sigma_a A_a d/dx + sigma F,  A_a = diag(K_a, L_a),  F = offdiag(phi, conj phi),
// expanded in momentum degree:
//   a2 = I x diag(|K xi|^2, |L xi|^2)      (principal part)
//   a1 = sum_c (sigma_c sigma) x [F, A_c(xi)]
//   a0 = kappa |phi|^2 I
// and the parametrix terms b0 = (a2 + 1)^(-1),
// b2 = -b0 a0 b0 + b0 a1 b0 a1 b0. The momentum pairing throughout is the
// plain matrix-vector product of the stored frame matrix, q_M(xi) = |M xi|^2;
// the closed forms in analytic.hpp are exact for this pairing.
//
// The traced integrands f_* feed the plane quadrature; they are computed
// from the full 4x4 matrix products so the quadrature side stays an
// independent first-principles check of the closed forms.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "clifford.hpp"
#include "geometry.hpp"
#include "mat2.hpp"

namespace spectral_strings {

// Model data: the two frames, the constant Higgs coupling, and the
// signature sign kappa.
struct DoubledGeometry {
    Zweibein K;
    Zweibein L;
    cplx phi;
    int kappa;

    DoubledGeometry(const Zweibein& k, const Zweibein& l, cplx higgs, int sign)
        : K(k), L(l), phi(higgs), kappa(sign) {
        if (sign != 1 && sign != -1)
            throw std::invalid_argument("DoubledGeometry: kappa must be +1 or -1");
    }
};

namespace detail {

inline std::string point_str(const Vec2& xi) {
    return "(" + std::to_string(xi.x) + ", " + std::to_string(xi.y) + ")";
}

// The traces below are real for both kappa signs; a residual imaginary
// part means the tensor bookkeeping broke, so fail loudly.
inline double real_trace(const cplx& z, const Vec2& xi) {
    if (std::abs(z.imag()) > 1e-12 * std::max(1.0, std::abs(z.real())))
        throw std::runtime_error(
            "symbols: trace has a non-vanishing imaginary part at xi = " + point_str(xi));
    return z.real();
}

}  // namespace detail

// Momentum-space symbols of the squared operator for one fixed geometry.
class SymbolSet {
  public:
    explicit SymbolSet(const DoubledGeometry& geom)
        : geom_(geom), cl_(build_clifford(geom.kappa)) {}

    const DoubledGeometry& geometry() const { return geom_; }
    const CliffordRep& clifford() const { return cl_; }

    // diag over doubling of the two frame quadratic forms.
    Mat4c a2(const Vec2& xi) const {
        const double qk = norm_sq(geom_.K.m * xi);
        const double ql = norm_sq(geom_.L.m * xi);
        Mat4c r;
        r(0, 0) = qk; r(1, 1) = ql; r(2, 2) = qk; r(3, 3) = ql;
        return r;
    }

    // First-order cross term: the Higgs field against the frame mismatch,
    //   a1 = sum_c (sigma_c sigma) x [F, diag((K xi)_c, (L xi)_c)].
    Mat4c a1(const Vec2& xi) const {
        const Vec2 p = geom_.K.m * xi;
        const Vec2 q = geom_.L.m * xi;
        return kron(cl_.sigma1 * cl_.sigma, higgs_commutator(p.x, q.x)) +
               kron(cl_.sigma2 * cl_.sigma, higgs_commutator(p.y, q.y));
    }

    // Zeroth order: sigma F sigma F = kappa F^2 = kappa |phi|^2.
    Mat4c a0() const {
        return cplx(geom_.kappa * std::norm(geom_.phi)) * Mat4c::identity();
    }

    // Leading parametrix term. a2 + 1 is diagonal, so the inverse is exact.
    Mat4c b0(const Vec2& xi) const {
        const double qk = norm_sq(geom_.K.m * xi);
        const double ql = norm_sq(geom_.L.m * xi);
        Mat4c r;
        r(0, 0) = 1.0 / (qk + 1.0);
        r(1, 1) = 1.0 / (ql + 1.0);
        r(2, 2) = r(0, 0);
        r(3, 3) = r(1, 1);
        return r;
    }

    // Second parametrix term, b2 = -b0 a0 b0 + b0 a1 b0 a1 b0.
    Mat4c b2(const Vec2& xi) const {
        const Mat4c b = b0(xi);
        const Mat4c a = a1(xi);
        const Mat4c bab = b * a * b;
        return b * a * bab - b * a0() * b;
    }

  private:
    Mat2c higgs_commutator(double pc, double qc) const {
        // [F, diag(p, q)] = offdiag(phi (q - p), conj(phi) (p - q))
        Mat2c r;
        r(0, 1) = geom_.phi * (qc - pc);
        r(1, 0) = std::conj(geom_.phi) * (pc - qc);
        return r;
    }

    DoubledGeometry geom_;
    CliffordRep cl_;
};

// Scalar integrands obtained by tracing the symbol products over both
// tensor factors. Each evaluator checks that the trace is real.
class Integrands {
  public:
    explicit Integrands(const DoubledGeometry& geom) : sym_(geom) {}

    /// Volume term integrand, trace of b0^2.
    double f_cosmo(const Vec2& xi) const {
        const Mat4c b = sym_.b0(xi);
        return detail::real_trace(trace(b * b), xi);
    }

    /// Higgs mass term integrand, trace of -b0 a0 b0.
    double f_mass(const Vec2& xi) const {
        const Mat4c b = sym_.b0(xi);
        return -detail::real_trace(trace(b * sym_.a0() * b), xi);
    }

    /// Interaction integrand, trace of b0 a1 b0 a1 b0.
    double f_int(const Vec2& xi) const {
        const Mat4c b = sym_.b0(xi);
        const Mat4c ba = b * sym_.a1(xi);
        return detail::real_trace(trace(ba * ba * b), xi);
    }

    const SymbolSet& symbols() const { return sym_; }

  private:
    SymbolSet sym_;
};

// Closed scalar forms of the same traces, used to cross-check the matrix
// pipeline and as the cheap evaluation path:
//   f_cosmo = 2 (bK^2 + bL^2)
//   f_mass  = -kappa |phi|^2 f_cosmo
//   f_int   = 2 kappa |phi|^2 |(K - L) xi|^2 (bK^2 bL + bK bL^2)
// with bM = 1 / (|M xi|^2 + 1).
struct IntegrandValues {
    double f_cosmo;
    double f_mass;
    double f_int;
};

inline IntegrandValues integrand_closed_forms(const DoubledGeometry& geom, const Vec2& xi) {
    const double qk = norm_sq(geom.K.m * xi);
    const double ql = norm_sq(geom.L.m * xi);
    const double qd = norm_sq((geom.K.m - geom.L.m) * xi);
    const double bk = 1.0 / (qk + 1.0);
    const double bl = 1.0 / (ql + 1.0);
    const double phi2 = std::norm(geom.phi);
    const double cosmo = 2.0 * (bk * bk + bl * bl);
    return {cosmo, -geom.kappa * phi2 * cosmo,
            2.0 * geom.kappa * phi2 * qd * bk * bl * (bk + bl)};
}

}  // namespace spectral_strings
