#pragma once

// Closed-form spectral action terms and the two independent evaluation
// routes for the string interaction potential:
//
//   * v1_invariant: the potential written in similarity invariants of the
//     transition matrix X = L K^(-1), with a branch on the orientation
//     sign det X.
//   * v1_via_diagonalization: the same quantity assembled from the
//     singular frame of X (rotate by S diagonalizing X^T X, rescale by
//     the singular values Lambda_i) and the one-dimensional building
//     block I1. Agreement of the two routes is a strong algebra check.
//
// Conventions: volume factors carry 1/|det K|; orientation enters only
// through sign(det X).

#include <cmath>
#include <complex>
#include <stdexcept>

#include "geometry.hpp"
#include "mat2.hpp"
#include "quadrature.hpp"
#include "symbols.hpp"

namespace spectral_strings {

inline constexpr double pi = 3.14159265358979323846264338327950288;

/// Volume (cosmological) term: 2 pi (1/|det K| + 1/|det L|).
inline double cosmological_term(const Zweibein& k, const Zweibein& l) {
    return 2.0 * pi * (1.0 / std::abs(det(k.m)) + 1.0 / std::abs(det(l.m)));
}

/// Higgs mass correction, -kappa |phi|^2 times the volume term.
inline double mass_correction(const Zweibein& k, const Zweibein& l, cplx phi, int kappa) {
    return -kappa * std::norm(phi) * cosmological_term(k, l);
}

// Singular frame of the transition matrix: S diagonalizes X^T X with
// singular values Lambda1 >= Lambda2 > 0, and W = (I - X) S is the frame
// mismatch in that basis.
struct DiagonalizationData {
    Mat2 S;
    double Lambda1;
    double Lambda2;
    Mat2 W;
};

inline DiagonalizationData diagonalize_transition(const Zweibein& k, const Zweibein& l) {
    const TransitionData td = transition(k, l);
    const EigenPair2 e = sym_eig2(td.XtX);
    const Mat2 w = e.S - td.X * e.S;
    return {e.S, std::sqrt(e.lambda1), std::sqrt(e.lambda2), w};
}

/// The axis-weighted rational integral
///   I1(a,b,c,d) = int xi1^2 / ((a^2 xi1^2 + b^2 xi2^2 + 1)^2
///                              (c^2 xi1^2 + d^2 xi2^2 + 1)) d^2 xi.
/// The closed form below is valid on the principal branch c > a, b > d
/// (all arcsin arguments in [0, 1]); i1_closed_form_applicable reports
/// whether it is used, otherwise the plane quadrature takes over.
inline bool i1_closed_form_applicable(double a, double b, double c, double d) {
    return (c * c - a * a) > 1e-6 * std::max(a * a, c * c) && b > d;
}

inline double I1(double a, double b, double c, double d,
                 const QuadratureConfig& fallback_cfg = {1e-12, 1e-14, 1000000, {}}) {
    if (!(a > 0.0 && b > 0.0 && c > 0.0 && d > 0.0))
        throw std::domain_error("I1: parameters must be positive");

    if (i1_closed_form_applicable(a, b, c, d)) {
        const double ca = c * c - a * a;
        const double s = std::sqrt(b * b - d * d);
        const double r = std::sqrt(b * b * c * c - a * a * d * d);
        const double t1 = (c / a) * pi / (ca * (b * c + a * d));
        const double t2 = pi / (std::pow(ca, 1.5) * s) *
                          (std::asin(a * s / r) - std::asin(c * s / r));
        return t1 + t2;
    }

    const auto f = [=](const Vec2& xi) {
        const double p = a * a * xi.x * xi.x + b * b * xi.y * xi.y + 1.0;
        const double q = c * c * xi.x * xi.x + d * d * xi.y * xi.y + 1.0;
        return xi.x * xi.x / (p * p * q);
    };
    const IntegralResult res = integrate_plane(f, fallback_cfg);
    if (!res.converged)
        throw std::runtime_error("I1: quadrature fallback did not converge");
    return res.value;
}

/// Paired combination of I1 values along a singular direction:
///   I1(1,1,l1,l2) + I1(l1,l2,1,1) = pi / ((l1 + l2) l1).
inline double I1_pair(double lambda1, double lambda2) {
    if (!(lambda1 > 0.0 && lambda2 > 0.0))
        throw std::domain_error("I1_pair: singular values must be positive");
    return pi / ((lambda1 + lambda2) * lambda1);
}

/// Interaction potential through the singular-frame route. Requires the
/// frames to share an orientation (det X > 0).
inline double v1_via_diagonalization(const Zweibein& k, const Zweibein& l, cplx phi,
                                     int kappa) {
    const TransitionData td = transition(k, l);
    if (td.det_sign <= 0)
        throw std::domain_error("v1_via_diagonalization: requires det X > 0");
    const DiagonalizationData dg = diagonalize_transition(k, l);
    const double w11 = dg.W.a11 * dg.W.a11 + dg.W.a21 * dg.W.a21;  // (W^T W)_11
    const double w22 = dg.W.a12 * dg.W.a12 + dg.W.a22 * dg.W.a22;  // (W^T W)_22
    return 2.0 * kappa * std::norm(phi) / std::abs(det(k.m)) *
           (w11 * I1_pair(dg.Lambda1, dg.Lambda2) + w22 * I1_pair(dg.Lambda2, dg.Lambda1));
}

/// Interaction potential in similarity invariants of X = L K^(-1):
///   det X > 0:  (2 pi kappa |phi|^2 / |det K|)
///                 (1 + 1/det X - 4 Tr X / (Tr(X^T X) + 2 det X))
///   det X < 0:  (2 pi kappa |phi|^2 / |det K|) (1 + 1/|det X|).
inline double v1_invariant(const Zweibein& k, const Zweibein& l, cplx phi, int kappa) {
    const TransitionData td = transition(k, l);
    const double dx = det(td.X);
    const double pre = 2.0 * pi * kappa * std::norm(phi) / std::abs(det(k.m));
    if (dx > 0.0)
        return pre * (1.0 + 1.0 / dx -
                      4.0 * trace(td.X) / (td.XtX.trace() + 2.0 * dx));
    return pre * (1.0 + 1.0 / std::abs(dx));
}

/// String-string interaction: the part of the potential that couples the
/// two frames. Vanishes identically for opposite orientations.
inline double v_int(const Zweibein& k, const Zweibein& l, cplx phi, int kappa) {
    const TransitionData td = transition(k, l);
    const double dx = det(td.X);
    if (dx <= 0.0) return 0.0;
    return -8.0 * pi * kappa * std::norm(phi) * trace(td.X) /
           (std::abs(det(k.m)) * (td.XtX.trace() + 2.0 * dx));
}

/// Interaction for diagonal frames K = diag(a1, b1), L = diag(a2, b2):
///   -8 pi kappa |phi|^2 sign(a1 b1) / (a1 b2 + a2 b1)
/// when the orientations agree, 0 otherwise.
inline double v_int_diagonal(double a1, double b1, double a2, double b2, cplx phi,
                             int kappa) {
    if (a1 == 0.0 || b1 == 0.0 || a2 == 0.0 || b2 == 0.0)
        throw std::domain_error("v_int_diagonal: zweibein entries must be nonzero");
    const double det_k = a1 * b1;
    const double det_x = (a2 * b2) / det_k;
    if (det_x <= 0.0) return 0.0;
    const double sign_k = det_k > 0.0 ? 1.0 : -1.0;
    return -8.0 * pi * kappa * std::norm(phi) * sign_k / (a1 * b2 + a2 * b1);
}

/// Interaction written in metric data for diagonal metrics g, h:
///   -8 pi kappa |phi|^2 sqrt(det g) x y / (x + y),
/// where x, y are the eigenvalues of sqrt(g^(-1) h). Symmetric under
/// exchanging (g, x y) with (h, 1/x 1/y).
inline double v_metric_diagonal(const SPD2& g, const SPD2& h, cplx phi, int kappa) {
    if (g.a12 != 0.0 || h.a12 != 0.0)
        throw std::domain_error("v_metric_diagonal: metrics must be diagonal");
    const double x = std::sqrt(h.a11 / g.a11);
    const double y = std::sqrt(h.a22 / g.a22);
    return -8.0 * pi * kappa * std::norm(phi) * std::sqrt(g.det()) * x * y / (x + y);
}

// All closed-form terms of one model in one record.
struct ActionTerms {
    double cosmological;
    double mass_correction;
    double v1;
    double v_int;
};

inline ActionTerms action_terms(const DoubledGeometry& geom) {
    return {cosmological_term(geom.K, geom.L),
            mass_correction(geom.K, geom.L, geom.phi, geom.kappa),
            v1_invariant(geom.K, geom.L, geom.phi, geom.kappa),
            v_int(geom.K, geom.L, geom.phi, geom.kappa)};
}

}  // namespace spectral_strings
