#pragma once

// First-principles evaluation of the action terms by plane quadrature of
// the traced symbol integrands. This is the independent cross-check of
// the closed forms in analytic.hpp: the two sides share no algebra
// beyond the symbol definitions.

#include "analytic.hpp"
#include "quadrature.hpp"
#include "symbols.hpp"

namespace spectral_strings {

struct OracleTerms {
    IntegralResult cosmological;
    IntegralResult mass_correction;
    IntegralResult v1;
};

// Gram matrix of both frames, K^T K + L^T L. Its conditioning measures
// the anisotropy of the combined integrand.
inline SPD2 frame_gram_sum(const DoubledGeometry& geom) {
    const Mat2 g = transpose(geom.K.m) * geom.K.m + transpose(geom.L.m) * geom.L.m;
    return SPD2{g.a11, 0.5 * (g.a12 + g.a21), g.a22};
}

inline double condition_number(const SPD2& m) {
    const EigenPair2 e = sym_eig2(m);
    return e.lambda1 / e.lambda2;
}

/// Quadrature config for a given model: the supplied tolerances plus the
/// anisotropy preconditioner when the frames warrant one.
inline QuadratureConfig oracle_config(const DoubledGeometry& geom, QuadratureConfig cfg) {
    const SPD2 gram = frame_gram_sum(geom);
    if (condition_number(gram) > 1e3) cfg.scale = gram;
    return cfg;
}

/// Integrate the three traced integrands over the plane.
inline OracleTerms oracle_terms(const DoubledGeometry& geom, const QuadratureConfig& cfg = {}) {
    const QuadratureConfig run_cfg = oracle_config(geom, cfg);
    const Integrands integrands(geom);
    OracleTerms out;
    out.cosmological =
        integrate_plane([&](const Vec2& xi) { return integrands.f_cosmo(xi); }, run_cfg);
    out.mass_correction =
        integrate_plane([&](const Vec2& xi) { return integrands.f_mass(xi); }, run_cfg);
    out.v1 = integrate_plane([&](const Vec2& xi) { return integrands.f_int(xi); }, run_cfg);
    return out;
}

}  // namespace spectral_strings
