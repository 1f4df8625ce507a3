#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "zfl/errors.hpp"
#include "zfl/littlewood_paley.hpp"
#include "zfl/spectral_field.hpp"
#include "zfl/spectral_ops.hpp"

namespace zfl {

/** Band profile in frequency space: even, real, identically 1 on
 *  |xi| <= plateau and 0 on |xi| >= support, with a smooth_step transition.
 */
struct ProfileSpec {
    double plateau = 0.25;
    double support = 0.5;
    std::string transition = "exp-step";
};

inline double profile_hat(double xi, const ProfileSpec& spec = {}) {
    const double a = std::abs(xi);
    if (a <= spec.plateau) return 1.0;
    if (a >= spec.support) return 0.0;
    return smooth_step((spec.support - a) / (spec.support - spec.plateau));
}

/** Samples the profile transform on the grid frequencies and inverts.
 *  Requires at least 8 frequency samples across the transition band.
 */
inline SpectralField make_profile(const Grid& grid, const ProfileSpec& spec = {}) {
    if (spec.transition != "exp-step")
        throw ConfigError("make_profile: unknown transition profile '" + spec.transition + "'");
    if (!(spec.plateau > 0.0 && spec.support > spec.plateau))
        throw ConfigError("make_profile: need 0 < plateau < support");
    const double samples = (spec.support - spec.plateau) / grid.freq_step();
    if (samples < 8.0)
        throw ConfigError("make_profile: only " + std::to_string(samples) +
                          " frequency samples across the transition; need >= 8 "
                          "(increase the domain half length)");
    std::vector<Complex> c(grid.size());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = profile_hat(grid.freq(k), spec);
    return SpectralField::from_coeffs(grid, std::move(c));
}

/** Modulation frequency (17/12) 2^n snapped to the nearest grid frequency,
 *  so the modulated field is exactly periodic and its spectrum is exactly
 *  two shifted copies of the profile transform. The relative perturbation is
 *  at most (freq_step/2) / ((17/12) 2^n).
 */
inline double modulation_freq(const Grid& grid, int n) {
    const double target = (17.0 / 12.0) * std::pow(2.0, n);
    return std::round(target / grid.freq_step()) * grid.freq_step();
}

/// Largest n whose modulated band fits below the dealias cutoff.
inline int max_admissible_n(const Grid& grid, double dealias_rule = 2.0 / 3.0) {
    const double cut = dealias_cutoff_freq(grid, dealias_rule);
    if (cut <= 0.5) return -1;
    return static_cast<int>(std::floor(std::log2((cut - 0.5) * 12.0 / 17.0)));
}

/** High-frequency datum 2^{-ns} phi(x) sin(omega_n x), sampled pointwise.
 *  Its spectrum is confined to the two bands |xi -+ omega_n| <= support.
 */
inline SpectralField make_fn(const Grid& grid, int n, double s, const SpectralField& profile,
                             double dealias_rule = 2.0 / 3.0) {
    if (n < 1) throw ConfigError("make_fn: n must be >= 1");
    const double omega = modulation_freq(grid, n);
    if (!(omega + 0.5 < dealias_cutoff_freq(grid, dealias_rule)))
        throw ConfigError("make_fn: modulated band for n = " + std::to_string(n) +
                          " exceeds the dealias cutoff; max admissible n for this grid is " +
                          std::to_string(max_admissible_n(grid, dealias_rule)));
    const double amp = std::pow(2.0, -n * s);
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        v[i] = amp * profile.values()[i] * std::sin(omega * grid.x(i));
    return SpectralField::from_values(grid, std::move(v));
}

/// Low-frequency datum 2^{-n} phi(x).
inline SpectralField make_gn(const Grid& grid, int n, const SpectralField& profile) {
    if (n < 1) throw ConfigError("make_gn: n must be >= 1");
    if (profile.grid() != grid) throw ConfigError("make_gn: profile lives on a different grid");
    return std::pow(2.0, -n) * profile;
}

/** The interacting pair f_n + g_n with its filter value alpha_n = 2^{-n} and
 *  the four norms recorded at construction time.
 */
struct CounterexampleDatum {
    int n = 0;
    double s = 2.0;
    double alpha = 0.0;  // 2^{-n}
    SpectralField fn, gn, u0;
    std::map<int, double> u0_norms;  // k -> ||u0||_{B^{s+k}_{2,r}} for k in {-1,0,1,2}
};

inline CounterexampleDatum make_counterexample(const Grid& grid, int n, double s, double r,
                                               const SpectralField& profile,
                                               const DyadicPartition& part) {
    CounterexampleDatum d{n,
                          s,
                          std::pow(2.0, -n),
                          make_fn(grid, n, s, profile, part.dealias_rule()),
                          make_gn(grid, n, profile),
                          SpectralField::zero(grid),
                          {}};
    d.u0 = d.fn + d.gn;
    for (int k = -1; k <= 2; ++k)
        d.u0_norms[k] = besov_norm(d.u0, BesovParams(s + k, r), part);
    return d;
}

/** Diagnostics of the interaction product g_n d_x f_n: spectral mass outside
 *  the annulus (17/12)2^n -+ 1, its norm, and the gain of alpha_n^2 dxx
 *  applied through the resolvent on that band.
 */
struct SupportCheckReport {
    double outside_mass_rel = 0.0;    // relative L2 mass outside the annulus
    double product_norm = 0.0;        // ||g_n d_x f_n||_{B^s_{2,r}}
    double smoothing_ratio = 0.0;     // ||a^2 dxx R(g d_x f)|| / ||g d_x f||
};

inline SupportCheckReport support_check_gfx(const CounterexampleDatum& d,
                                            const DyadicPartition& part, double r) {
    const Grid& g = d.u0.grid();
    const SpectralField prod =
        product_dealiased(d.gn, derivative(d.fn, 1), part.dealias_rule());
    const double center = (17.0 / 12.0) * std::pow(2.0, d.n);
    double inside = 0.0, outside = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double m = std::norm(prod.coeffs()[k]);
        if (std::abs(std::abs(g.freq(k)) - center) <= 1.0)
            inside += m;
        else
            outside += m;
    }
    SupportCheckReport rep;
    const double total = inside + outside;
    rep.outside_mass_rel = total > 0.0 ? std::sqrt(outside / total) : 0.0;
    const BesovParams bp(d.s, r);
    rep.product_norm = besov_norm(prod, bp, part);
    const double a2 = d.alpha * d.alpha;
    SpectralField smoothed = apply_real_multiplier(
        prod, [a2](double xi) { return a2 * xi * xi / (1.0 + a2 * xi * xi); });
    rep.smoothing_ratio =
        rep.product_norm > 0.0 ? besov_norm(smoothed, bp, part) / rep.product_norm : 0.0;
    return rep;
}

/** Deterministic real field with spectrum confined to |xi| <= max_freq.
 *  Coefficient amplitudes fall off like (1 + xi^2)^{-decay}; the RNG mapping
 *  is fixed (mt19937_64 + explicit Box-Muller) so a seed reproduces the field
 *  bit-for-bit.
 */
inline SpectralField random_band_limited(const Grid& grid, double max_freq, std::uint64_t seed,
                                         double decay = 1.0) {
    if (!(max_freq > 0.0) || max_freq > grid.max_freq())
        throw ConfigError("random_band_limited: max_freq must lie in (0, grid max]");
    std::mt19937_64 rng(seed);
    auto uniform = [&rng]() {
        return (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
    };
    auto gaussian_pair = [&](double& a, double& b) {
        const double u1 = uniform(), u2 = uniform();
        const double m = std::sqrt(-2.0 * std::log(u1));
        a = m * std::cos(2.0 * kPi * u2);
        b = m * std::sin(2.0 * kPi * u2);
    };
    std::vector<Complex> c(grid.size(), Complex(0.0));
    double a, b;
    gaussian_pair(a, b);
    c[0] = Complex(a, 0.0);
    for (std::size_t k = 1; k < grid.size() / 2; ++k) {
        const double xi = grid.freq(k);
        if (xi > max_freq) break;
        gaussian_pair(a, b);
        const double amp = std::pow(1.0 + xi * xi, -decay);
        c[k] = Complex(a, b) * amp;
        c[grid.size() - k] = std::conj(c[k]);
    }
    return SpectralField::from_coeffs(grid, std::move(c));
}

}  // namespace zfl
