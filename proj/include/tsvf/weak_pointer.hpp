#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tsvf/spectral.hpp"
#include "tsvf/two_state.hpp"

namespace tsvf {

/// Impulsive pointer coupling H = g(t) p A.  Only the integrated strength
/// matters for the final pointer state, so the model carries g = int g(t) dt
/// and the initial Gaussian position spread, plus the readout grid.  Grid
/// fields left at 0 are resolved from the observable's spectrum:
/// halfwidth g*max|a_i| + 8*width, step width/50.
struct PointerModel {
    double coupling;             // g
    double width;                // position std of the initial pointer
    double grid_halfwidth = 0.0; // 0 -> auto
    double grid_step = 0.0;      // 0 -> auto

    PointerModel(double g, double delta, double halfwidth = 0.0, double step = 0.0)
        : coupling(g), width(delta), grid_halfwidth(halfwidth), grid_step(step) {
        if (!(width > 0.0)) throw std::invalid_argument("PointerModel: width must be > 0");
        if (grid_step < 0.0 || grid_halfwidth < 0.0)
            throw std::invalid_argument("PointerModel: negative grid parameter");
    }
};

/// Final pointer position density on a uniform grid, after post-selection.
/// retained_norm is the post-selection success probability (the norm of the
/// conditional pointer state before renormalization).
struct PointerDistribution {
    std::vector<double> grid;
    std::vector<double> density;
    double retained_norm;
};

namespace detail {

inline double trapezoid(const std::vector<double>& grid, const std::vector<double>& f) {
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < grid.size(); ++k)
        acc += 0.5 * (f[k] + f[k + 1]) * (grid[k + 1] - grid[k]);
    return acc;
}

}  // namespace detail

/// Exact post-selected pointer state for the impulsive coupling: the initial
/// Gaussian splits into one shifted copy per eigenvalue, weighted by the
/// two-state transition amplitudes,
///   Phi(q) = sum_i <post| P_i |pre> phi0(q - g a_i),
/// with phi0 the unit-norm Gaussian of position variance width^2.
inline PointerDistribution pointer_distribution(const TwoStateVector& tsv, const Observable& obs,
                                                const PointerModel& pm) {
    if (obs.dim() != tsv.pre.dim())
        throw std::invalid_argument("pointer_distribution: dimension mismatch");
    const SpectralForm form = spectral_decompose(obs);

    std::vector<cdouble> amps(form.size());
    double total_weight = 0.0;
    double max_abs_eig = 0.0;
    for (std::size_t i = 0; i < form.size(); ++i) {
        amps[i] = detail::sandwich(tsv.post, form.projectors[i], tsv.pre);
        total_weight += std::norm(amps[i]);
        max_abs_eig = std::max(max_abs_eig, std::abs(form.eigenvalues[i]));
    }
    if (total_weight <= kAblDenominatorFloor)
        throw std::domain_error("pointer_distribution: post-selection unreachable");

    const double required = std::abs(pm.coupling) * max_abs_eig + 8.0 * pm.width;
    const double halfwidth = pm.grid_halfwidth > 0.0 ? pm.grid_halfwidth : required;
    if (halfwidth < required)
        throw std::invalid_argument("pointer_distribution: grid_halfwidth below g*max|a| + 8*width");
    const double step = pm.grid_step > 0.0 ? pm.grid_step : pm.width / 50.0;

    const std::size_t points = static_cast<std::size_t>(std::ceil(2.0 * halfwidth / step)) + 1;
    PointerDistribution dist;
    dist.grid.resize(points);
    dist.density.resize(points);

    // phi0(q) = (2 pi width^2)^(-1/4) exp(-q^2 / (4 width^2))
    const double norm_4 = std::pow(2.0 * M_PI * pm.width * pm.width, -0.25);
    const double inv4w2 = 1.0 / (4.0 * pm.width * pm.width);
    for (std::size_t k = 0; k < points; ++k) {
        const double q = -halfwidth + static_cast<double>(k) * step;
        dist.grid[k] = q;
        cdouble phi = 0.0;
        for (std::size_t i = 0; i < form.size(); ++i) {
            const double dq = q - pm.coupling * form.eigenvalues[i];
            phi += amps[i] * (norm_4 * std::exp(-dq * dq * inv4w2));
        }
        dist.density[k] = std::norm(phi);
    }

    dist.retained_norm = detail::trapezoid(dist.grid, dist.density);
    if (dist.retained_norm <= 0.0)
        throw std::domain_error("pointer_distribution: post-selection unreachable");
    for (auto& d : dist.density) d /= dist.retained_norm;
    return dist;
}

/// First moment of the density by the trapezoid rule.
inline double pointer_mean(const PointerDistribution& dist) {
    std::vector<double> qf(dist.grid.size());
    for (std::size_t k = 0; k < qf.size(); ++k) qf[k] = dist.grid[k] * dist.density[k];
    return detail::trapezoid(dist.grid, qf);
}

/// One rung of the weak-coupling ladder: the probed coupling and the
/// distance of mean/g from the real part of the weak value.
struct ConvergencePoint {
    double coupling;
    double error;
};

/// Halves the coupling `halvings` times starting from pm_base.coupling and
/// records |pointer_mean/g - Re(A_w)| at every rung.  In the weak limit the
/// pointer mean approaches g times the real part of the weak value, so the
/// sequence should shrink toward zero.
inline std::vector<ConvergencePoint> weak_convergence_report(const TwoStateVector& tsv,
                                                             const Observable& obs,
                                                             const PointerModel& pm_base,
                                                             std::size_t halvings) {
    const double target = weak_value(tsv, obs).real();
    std::vector<ConvergencePoint> report;
    report.reserve(halvings + 1);
    double g = pm_base.coupling;
    for (std::size_t k = 0; k <= halvings; ++k, g *= 0.5) {
        PointerModel pm(g, pm_base.width, pm_base.grid_halfwidth, pm_base.grid_step);
        const double mean = pointer_mean(pointer_distribution(tsv, obs, pm));
        report.push_back({g, std::abs(mean / g - target)});
    }
    return report;
}

}  // namespace tsvf
