#pragma once

// Deterministic adaptive quadrature over the plane.
//
// The integral is taken in polar coordinates. The radial half-line is
// compactified by r = t / (1 - t), t in [0, 1), and each radial line is
// integrated with an adaptive Gauss-Kronrod 7-15 scheme; the angle is
// handled by the periodic trapezoid rule with node doubling (spectrally
// accurate for the smooth periodic integrands this library produces).
//
// Determinism: subdivision picks the worst panel through a priority
// queue keyed by (error estimate, creation index), panel contributions
// are summed pairwise in panel-position order, and evaluation is
// single-threaded, so a given (integrand, config) pair always returns
// bit-identical results.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mat2.hpp"

namespace spectral_strings {

struct QuadratureConfig {
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    // Bounds the total number of Gauss-Kronrod panels evaluated across
    // the whole plane integral.
    long max_subdivisions = 1000000;
    // Optional anisotropy preconditioner M (an SPD Gram matrix): the
    // integration runs in the variables xi = M^(-1/2) eta with the
    // Jacobian det(M)^(-1/2) applied internally.
    std::optional<SPD2> scale;
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
    bool converged = false;
};

namespace quad_detail {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1]. Kronrod nodes are
// symmetric; even indices of xk are the embedded Gauss-7 nodes.
inline constexpr double xk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double x0, x1;
    double value;
    double error;
    long index;  // creation order, breaks error ties deterministically
};

// One Gauss-Kronrod 7-15 evaluation with the QUADPACK-style error
// estimate (scaled by the variation of f over the panel, so the estimate
// is conservative for non-polynomial behaviour).
template <class G>
inline Panel gk15(G&& g, double x0, double x1, long index, long& evals) {
    const double c = 0.5 * (x0 + x1);
    const double h = 0.5 * (x1 - x0);

    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[2 * i] = g(c - h * xk[i]);
        fv[2 * i + 1] = g(c + h * xk[i]);
    }
    fv[14] = g(c);
    evals += 15;

    double resk = wk[7] * fv[14];
    double resg = wg[3] * fv[14];
    double resabs = wk[7] * std::abs(fv[14]);
    for (int i = 0; i < 7; ++i) {
        const double sum = fv[2 * i] + fv[2 * i + 1];
        resk += wk[i] * sum;
        resabs += wk[i] * (std::abs(fv[2 * i]) + std::abs(fv[2 * i + 1]));
        if (i % 2 == 1) resg += wg[i / 2] * sum;
    }
    const double mean = 0.5 * resk;
    double resasc = wk[7] * std::abs(fv[14] - mean);
    for (int i = 0; i < 7; ++i)
        resasc += wk[i] * (std::abs(fv[2 * i] - mean) + std::abs(fv[2 * i + 1] - mean));

    double err = std::abs(resk - resg) * h;
    resasc *= h;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs * h > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(err, 50.0 * eps * resabs * h);
    return {x0, x1, resk * h, err, index};
}

inline double pairwise_sum(const double* v, std::size_t n) {
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) {
    return pairwise_sum(v.data(), v.size());
}

struct LineResult {
    double value = 0.0;
    double error = 0.0;
    bool converged = false;
};

struct PanelWorse {
    const std::vector<Panel>* panels;
    bool operator()(std::size_t a, std::size_t b) const {
        const Panel& pa = (*panels)[a];
        const Panel& pb = (*panels)[b];
        if (pa.error != pb.error) return pa.error < pb.error;
        return pa.index > pb.index;  // older panel wins ties
    }
};

// Adaptive 1D integration of g over [x0, x1]. `budget` is the shared
// panel budget of the enclosing plane integral.
template <class G>
inline LineResult adaptive_line(G&& g, double x0, double x1, double rel_tol,
                                double abs_tol, long& budget, long& evals) {
    std::vector<Panel> panels;
    panels.reserve(64);
    if (budget <= 0) return {};
    --budget;
    panels.push_back(gk15(g, x0, x1, 0, evals));

    PanelWorse cmp{&panels};
    std::priority_queue<std::size_t, std::vector<std::size_t>, PanelWorse> queue(cmp);
    queue.push(0);

    double total_value = panels[0].value;
    double total_error = panels[0].error;
    long next_index = 1;
    const double width_floor =
        std::numeric_limits<double>::epsilon() * (std::abs(x0) + std::abs(x1) + 1.0);

    while (total_error > std::max(abs_tol, rel_tol * std::abs(total_value))) {
        if (queue.empty() || budget < 2) break;
        const std::size_t worst = queue.top();
        queue.pop();
        const double a = panels[worst].x0;
        const double b = panels[worst].x1;
        if (b - a < width_floor) continue;  // roundoff-limited panel, keep as is

        const double mid = 0.5 * (a + b);
        budget -= 2;
        Panel left = gk15(g, a, mid, next_index++, evals);
        Panel right = gk15(g, mid, b, next_index++, evals);
        total_value += left.value + right.value - panels[worst].value;
        total_error += left.error + right.error - panels[worst].error;

        panels[worst] = left;
        queue.push(worst);
        panels.push_back(right);
        queue.push(panels.size() - 1);
    }

    std::sort(panels.begin(), panels.end(),
              [](const Panel& a, const Panel& b) { return a.x0 < b.x0; });
    std::vector<double> values(panels.size()), errors(panels.size());
    for (std::size_t i = 0; i < panels.size(); ++i) {
        values[i] = panels[i].value;
        errors[i] = panels[i].error;
    }
    LineResult r;
    r.value = pairwise_sum(values);
    r.error = pairwise_sum(errors);
    r.converged = r.error <= std::max(abs_tol, rel_tol * std::abs(r.value));
    return r;
}

}  // namespace quad_detail

namespace detail {

template <class F>
IntegralResult integrate_polar(F&& f, double theta0, double theta1,
                               const QuadratureConfig& cfg) {
    IntegralResult out;
    long budget = cfg.max_subdivisions;

    // Optional preconditioning xi = T eta, T = scale^(-1/2).
    Mat2 t_mat = Mat2::identity();
    double jacobian = 1.0;
    if (cfg.scale) {
        const SPD2 t = mat_inv_sqrt_pos(*cfg.scale);
        t_mat = t.to_mat();
        jacobian = t.det();
    }

    auto eval = [&](double x, double y) {
        const Vec2 xi = t_mat * Vec2{x, y};
        const double v = f(xi);
        if (!std::isfinite(v))
            throw std::domain_error(
                "quadrature: integrand returned a non-finite value at xi = (" +
                std::to_string(xi.x) + ", " + std::to_string(xi.y) + ")");
        return v;
    };

    const double span = theta1 - theta0;
    const double rel_line = 0.25 * cfg.rel_tol;
    const double abs_line = cfg.abs_tol / span;

    // Radial integral along direction theta, compactified by r = t/(1-t).
    auto radial = [&](double theta) {
        const double ct = std::cos(theta);
        const double st = std::sin(theta);
        auto integrand = [&](double t) {
            const double om = 1.0 - t;
            const double r = t / om;
            return eval(r * ct, r * st) * r / (om * om);
        };
        return quad_detail::adaptive_line(integrand, 0.0, 1.0, rel_line, abs_line,
                                          budget, out.evaluations);
    };

    std::vector<double> values;  // radial values at theta_j = theta0 + j span / n
    std::vector<double> errors;
    bool lines_ok = true;

    std::size_t n = 16;
    values.reserve(n);
    errors.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto line = radial(theta0 + span * static_cast<double>(j) / static_cast<double>(n));
        values.push_back(line.value);
        errors.push_back(line.error);
        lines_ok = lines_ok && line.converged;
    }

    double value = span / static_cast<double>(n) * quad_detail::pairwise_sum(values);
    double line_err = span / static_cast<double>(n) * quad_detail::pairwise_sum(errors);
    double theta_err = std::numeric_limits<double>::infinity();

    constexpr std::size_t max_nodes = 1 << 14;
    while (true) {
        const double goal = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
        if (theta_err + line_err <= goal && lines_ok) {
            out.converged = true;
            break;
        }
        if (n >= max_nodes || budget <= 0) break;

        // Double the angular resolution; old nodes land on even slots.
        std::vector<double> v2(2 * n), e2(2 * n);
        for (std::size_t j = 0; j < n; ++j) {
            v2[2 * j] = values[j];
            e2[2 * j] = errors[j];
            const auto line = radial(theta0 + span * (2.0 * static_cast<double>(j) + 1.0) /
                                                  static_cast<double>(2 * n));
            v2[2 * j + 1] = line.value;
            e2[2 * j + 1] = line.error;
            lines_ok = lines_ok && line.converged;
        }
        values.swap(v2);
        errors.swap(e2);
        n *= 2;

        const double refined = span / static_cast<double>(n) * quad_detail::pairwise_sum(values);
        theta_err = std::abs(refined - value);
        line_err = span / static_cast<double>(n) * quad_detail::pairwise_sum(errors);
        value = refined;
    }

    if (theta_err == std::numeric_limits<double>::infinity()) theta_err = 0.0;
    out.value = jacobian * value;
    out.error_estimate = jacobian * (theta_err + line_err);
    return out;
}

}  // namespace detail

/// Integrate f over the whole plane. f receives a Vec2 and returns a
/// finite double; a non-finite value raises std::domain_error naming the
/// evaluation point. The result reports convergence honestly: if the
/// requested tolerances were not met within the subdivision budget,
/// `converged` is false and `value` is the best available estimate.
template <class F>
IntegralResult integrate_plane(F&& f, const QuadratureConfig& cfg = {}) {
    return detail::integrate_polar(std::forward<F>(f), 0.0,
                                   2.0 * 3.14159265358979323846264338327950288, cfg);
}

/// Integrate f over the upper half-plane (angle in [0, pi)). Spectrally
/// accurate when f is even, f(-xi) = f(xi), which makes the angular
/// integrand pi-periodic; for even f the full-plane integral is twice
/// this one.
template <class F>
IntegralResult integrate_half_plane(F&& f, const QuadratureConfig& cfg = {}) {
    return detail::integrate_polar(std::forward<F>(f), 0.0,
                                   3.14159265358979323846264338327950288, cfg);
}

}  // namespace spectral_strings
