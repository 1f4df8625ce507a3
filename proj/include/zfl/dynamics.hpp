#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "zfl/errors.hpp"
#include "zfl/littlewood_paley.hpp"
#include "zfl/spectral_field.hpp"
#include "zfl/spectral_ops.hpp"

namespace zfl {

enum class EvolutionKind { ch_nonlocal, ch_transport, burgers };

inline const char* to_string(EvolutionKind k) {
    switch (k) {
        case EvolutionKind::ch_nonlocal: return "ch-nonlocal";
        case EvolutionKind::ch_transport: return "ch-transport";
        case EvolutionKind::burgers: return "burgers";
    }
    return "?";
}

struct EvolutionSpec {
    EvolutionKind kind = EvolutionKind::ch_nonlocal;
    FilterParam alpha{};          // ignored for Burgers
    double dealias_rule = 2.0 / 3.0;
};

/** Fixed-step policy. When dt is absent it is derived from the CFL heuristic
 *      dt = cfl * dx / max(1, 3 max|u0|),
 *  then shrunk so the horizon T is an exact multiple of the step and the
 *  step count a multiple of the snapshot stride.
 */
struct StepPolicy {
    std::optional<double> dt;
    double cfl = 0.25;
    double T = 1.0;
    int snapshot_stride = 10;
};

/// d_t u = -3 u u_x (advection constant 3), dealiased.
inline SpectralField burgers_rhs(const SpectralField& u, double rule = 2.0 / 3.0) {
    return -3.0 * product_dealiased(u, derivative(u, 1), rule);
}

/// Filtered advection form: d_t u = -u u_x - d_x R(u^2 + (a^2/2) u_x^2).
inline SpectralField ch_rhs_nonlocal(const SpectralField& u, FilterParam alpha,
                                     double rule = 2.0 / 3.0) {
    const SpectralField du = derivative(u, 1);
    const SpectralField uux = product_dealiased(u, du, rule);
    const SpectralField u2 = product_dealiased(u, u, rule);
    const SpectralField ux2 = product_dealiased(du, du, rule);
    const double a2 = alpha.value * alpha.value;
    const SpectralField arg = u2 + (0.5 * a2) * ux2;
    return -1.0 * uux - derivative(resolvent(arg, alpha), 1);
}

/// Equivalent transport form: d_t u = -3 u u_x - a^2 dxxx R(u^2) - (a^2/2) d_x R(u_x^2).
inline SpectralField ch_rhs_transport(const SpectralField& u, FilterParam alpha,
                                      double rule = 2.0 / 3.0) {
    const SpectralField du = derivative(u, 1);
    const SpectralField uux = product_dealiased(u, du, rule);
    const SpectralField u2 = product_dealiased(u, u, rule);
    const SpectralField ux2 = product_dealiased(du, du, rule);
    const double a2 = alpha.value * alpha.value;
    return -3.0 * uux - a2 * derivative(resolvent(u2, alpha), 3) -
           (0.5 * a2) * derivative(resolvent(ux2, alpha), 1);
}

inline SpectralField evolution_rhs(const SpectralField& u, const EvolutionSpec& spec) {
    switch (spec.kind) {
        case EvolutionKind::burgers: return burgers_rhs(u, spec.dealias_rule);
        case EvolutionKind::ch_nonlocal: return ch_rhs_nonlocal(u, spec.alpha, spec.dealias_rule);
        case EvolutionKind::ch_transport:
            return ch_rhs_transport(u, spec.alpha, spec.dealias_rule);
    }
    throw ConfigError("evolution_rhs: bad kind");
}

/** Symmetric bilinear map B(f, g) = d_x R(f g + (a^2/2) f_x g_x). With this
 *  sign the nonlocal advection form reads d_t u = -u u_x - B(u, u).
 */
inline SpectralField bilinear_form(const SpectralField& f, const SpectralField& g,
                                   FilterParam alpha, double rule = 2.0 / 3.0) {
    const SpectralField fg = product_dealiased(f, g, rule);
    const SpectralField dfdg = product_dealiased(derivative(f, 1), derivative(g, 1), rule);
    const double a2 = alpha.value * alpha.value;
    return derivative(resolvent(fg + (0.5 * a2) * dfdg, alpha), 1);
}

/// First-order-in-time field of the flow started at u0 (the transport-form RHS).
inline SpectralField expansion_e0(const SpectralField& u0, FilterParam alpha,
                                  double rule = 2.0 / 3.0) {
    return ch_rhs_transport(u0, alpha, rule);
}

/// Scalar error coefficient built from four norms of the initial datum.
inline double expansion_f0(const SpectralField& u0, FilterParam alpha, const BesovParams& params,
                           const DyadicPartition& part) {
    const double a = alpha.value;
    const double bm1 = besov_norm(u0, BesovParams(params.s - 1.0, params.r), part);
    const double bp1 = besov_norm(u0, BesovParams(params.s + 1.0, params.r), part);
    const double bp2 = besov_norm(u0, BesovParams(params.s + 2.0, params.r), part);
    return (a * bp1 + 1.0) * (a * bp1 + bm1 * bp1) + a * (bp1 + bm1 * bp2);
}

/** Conserved pair: H0 = int u dx and H_alpha = int u^2 + alpha^2 u_x^2 dx.
 *  The functional accepts any alpha in [0, 1]; pass the evolution's filter.
 */
inline std::pair<double, double> conserved_quantities(const SpectralField& u, FilterParam alpha) {
    const Grid& g = u.grid();
    double h0 = 0.0, e = 0.0;
    for (double v : u.values()) {
        h0 += v;
        e += v * v;
    }
    const SpectralField du = derivative(u, 1);
    double ex = 0.0;
    for (double v : du.values()) ex += v * v;
    const double a2 = alpha.value * alpha.value;
    return {h0 * g.dx(), (e + a2 * ex) * g.dx()};
}

namespace detail {
inline void check_finite(const SpectralField& u, double t) {
    if (!u.all_finite())
        throw BlowUpError("time stepping produced NaN/Inf at t = " + std::to_string(t), t);
}
}  // namespace detail

/// One classical 4-stage Runge-Kutta step; throws BlowUpError on NaN/Inf.
inline SpectralField rk4_step(const SpectralField& u, const EvolutionSpec& spec, double dt,
                              double t0 = 0.0) {
    if (!(dt > 0.0)) throw ConfigError("rk4_step: dt must be positive");
    const SpectralField k1 = evolution_rhs(u, spec);
    detail::check_finite(k1, t0);
    const SpectralField k2 = evolution_rhs(u + (0.5 * dt) * k1, spec);
    detail::check_finite(k2, t0);
    const SpectralField k3 = evolution_rhs(u + (0.5 * dt) * k2, spec);
    detail::check_finite(k3, t0);
    const SpectralField k4 = evolution_rhs(u + dt * k3, spec);
    detail::check_finite(k4, t0);
    SpectralField out = u + (dt / 6.0) * (k1 + 2.0 * (k2 + k3) + k4);
    detail::check_finite(out, t0 + dt);
    return out;
}

/// First crossing time of characteristics, 1/(3 max(-u0')); +inf without compression.
inline double shock_time_estimate(const SpectralField& u0) {
    const SpectralField du = derivative(u0, 1);
    double m = 0.0;
    for (double v : du.values()) m = std::max(m, -v);
    return m > 0.0 ? 1.0 / (3.0 * m) : std::numeric_limits<double>::infinity();
}

struct ConservedSample {
    double t = 0.0;
    double h0 = 0.0;
    double h_alpha = 0.0;
};

struct ConservedLedger {
    std::vector<ConservedSample> samples;

    /// Largest |H(t) - H(0)| / max(|H(0)|, floor) over the run.
    double max_relative_drift_h_alpha() const {
        if (samples.empty()) return 0.0;
        const double ref = std::max(std::abs(samples.front().h_alpha), 1e-300);
        double d = 0.0;
        for (const auto& s : samples)
            d = std::max(d, std::abs(s.h_alpha - samples.front().h_alpha) / ref);
        return d;
    }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<SpectralField> snapshots;
    ConservedLedger ledger;
};

/// Derived fixed step honoring T and the snapshot stride.
struct ResolvedSteps {
    double dt = 0.0;
    long long n_steps = 0;
};

inline ResolvedSteps resolve_steps(const SpectralField& u0, const StepPolicy& policy) {
    if (!(policy.T >= 0.0)) throw ConfigError("integrate: T must be >= 0");
    if (policy.T == 0.0) return {0.0, 0};
    double dt_raw;
    if (policy.dt) {
        if (!(*policy.dt > 0.0)) throw ConfigError("integrate: dt must be positive");
        dt_raw = *policy.dt;
    } else {
        dt_raw = policy.cfl * u0.grid().dx() / std::max(1.0, 3.0 * u0.max_abs());
    }
    long long n = static_cast<long long>(std::ceil(policy.T / dt_raw - 1e-12));
    n = std::max<long long>(n, 1);
    const int stride = std::max(1, policy.snapshot_stride);
    if (n % stride != 0) n += stride - (n % stride);
    return {policy.T / static_cast<double>(n), n};
}

/** Integrates with snapshots delivered to an observer at every stride point
 *  (and at t = 0). Burgers runs refuse to continue once max|u_x| exceeds
 *  50x its initial value; NaN/Inf aborts with a BlowUpError.
 */
template <typename Observer>
void integrate(const SpectralField& u0, const EvolutionSpec& spec, const StepPolicy& policy,
               Observer&& observe) {
    const ResolvedSteps rs = resolve_steps(u0, policy);
    SpectralField u = dealias(u0, spec.dealias_rule);
    observe(0.0, u);
    if (rs.n_steps == 0) return;

    double grad0 = 0.0;
    if (spec.kind == EvolutionKind::burgers) {
        for (double v : derivative(u, 1).values()) grad0 = std::max(grad0, std::abs(v));
    }
    const int stride = std::max(1, policy.snapshot_stride);
    for (long long i = 0; i < rs.n_steps; ++i) {
        const double t = static_cast<double>(i) * rs.dt;
        u = rk4_step(u, spec, rs.dt, t);
        if ((i + 1) % stride == 0 || i + 1 == rs.n_steps) {
            const double t1 = static_cast<double>(i + 1) * rs.dt;
            if (spec.kind == EvolutionKind::burgers && grad0 > 0.0) {
                double grad = 0.0;
                for (double v : derivative(u, 1).values()) grad = std::max(grad, std::abs(v));
                if (grad > 50.0 * grad0)
                    throw ShockError("gradient exceeded 50x its initial size at t = " +
                                         std::to_string(t1) + "; shock imminent",
                                     t1);
            }
            observe(t1, u);
        }
    }
}

/// Convenience overload collecting snapshots and the conserved-quantity series.
inline Trajectory integrate(const SpectralField& u0, const EvolutionSpec& spec,
                            const StepPolicy& policy) {
    Trajectory traj;
    integrate(u0, spec, policy, [&](double t, const SpectralField& u) {
        traj.times.push_back(t);
        traj.snapshots.push_back(u);
        const auto [h0, ha] = conserved_quantities(
            u, spec.kind == EvolutionKind::burgers ? FilterParam(0.0) : spec.alpha);
        traj.ledger.samples.push_back({t, h0, ha});
    });
    return traj;
}

}  // namespace zfl
