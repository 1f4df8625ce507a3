#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "zfl/errors.hpp"
#include "zfl/spectral_field.hpp"

namespace zfl {

/// Length scale of the smoothing operator 1 - alpha^2 d_xx.
struct FilterParam {
    double value = 0.0;
    FilterParam() = default;
    explicit FilterParam(double alpha) : value(alpha) {
        if (!(alpha >= 0.0 && alpha <= 1.0))
            throw ConfigError("filter parameter must lie in [0, 1], got " +
                              std::to_string(alpha));
    }
};

/// Applies a real Fourier multiplier xi -> m(xi) coefficient-wise.
template <typename Symbol>
SpectralField apply_real_multiplier(const SpectralField& u, Symbol&& m) {
    const Grid& g = u.grid();
    std::vector<Complex> c(u.coeffs());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= m(g.freq(k));
    return SpectralField::from_coeffs_trusted(g, std::move(c));
}

/** Spectral derivative of order 1, 2 or 3: multiplication by (i xi)^order.
 *  The unmatched mode is zeroed for odd orders to keep the result real.
 */
inline SpectralField derivative(const SpectralField& u, int order = 1) {
    if (order < 1 || order > 3)
        throw ConfigError("derivative: order must be 1, 2 or 3, got " + std::to_string(order));
    const Grid& g = u.grid();
    std::vector<Complex> c(u.coeffs());
    for (std::size_t k = 0; k < c.size(); ++k) {
        const double xi = g.freq(k);
        switch (order) {
            case 1: c[k] *= Complex(0.0, xi); break;
            case 2: c[k] *= -xi * xi; break;
            case 3: c[k] *= Complex(0.0, -xi * xi * xi); break;
        }
    }
    if (order % 2 == 1) c[g.nyquist_slot()] = Complex(0.0);
    return SpectralField::from_coeffs_trusted(g, std::move(c));
}

/// Helmholtz resolvent (1 - alpha^2 d_xx)^{-1}: multiplier 1/(1 + alpha^2 xi^2).
inline SpectralField resolvent(const SpectralField& u, FilterParam alpha) {
    const double a2 = alpha.value * alpha.value;
    return apply_real_multiplier(u, [a2](double xi) { return 1.0 / (1.0 + a2 * xi * xi); });
}

/// Index of the last Fourier mode kept by the dealiasing rule.
inline long long dealias_cut_index(const Grid& grid, double rule) {
    return static_cast<long long>(std::floor(rule * static_cast<double>(grid.size()) / 2.0));
}

inline double dealias_cutoff_freq(const Grid& grid, double rule) {
    return static_cast<double>(dealias_cut_index(grid, rule)) * grid.freq_step();
}

/** Zeroes every coefficient with |k| > rule * N/2. With the default 2/3 rule
 *  and power-of-two N, pointwise products of two fields supported inside the
 *  kept band alias only into the removed band, so dealiased quadratic terms
 *  are exact Galerkin products.
 */
inline SpectralField dealias(const SpectralField& u, double rule = 2.0 / 3.0) {
    if (!(rule > 0.0 && rule <= 1.0))
        throw ConfigError("dealias: rule must lie in (0, 1], got " + std::to_string(rule));
    const Grid& g = u.grid();
    const long long cut = dealias_cut_index(g, rule);
    std::vector<Complex> c(u.coeffs());
    for (std::size_t k = 0; k < c.size(); ++k)
        if (std::llabs(g.mode_index(k)) > cut) c[k] = Complex(0.0);
    return SpectralField::from_coeffs_trusted(g, std::move(c));
}

/// Pointwise product of two fields, dealiased.
inline SpectralField product_dealiased(const SpectralField& a, const SpectralField& b,
                                       double rule = 2.0 / 3.0) {
    const Grid& g = a.grid();
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.values()[i] * b.values()[i];
    return dealias(SpectralField::from_values(g, std::move(v)), rule);
}

/** Grid maxima of the three multiplier magnitudes tied to the resolvent:
 *      m1 = alpha^2 xi^2 / (1 + alpha^2 xi^2)        (order-0 bound, <= 1)
 *      m2 = |alpha xi| / (1 + alpha^2 xi^2)          (order-0 bound, <= 1/2)
 *      m3 = alpha^2 |xi| sqrt(1 + xi^2) / (1 + alpha^2 xi^2)   (one-derivative gain)
 */
struct SymbolBounds {
    double max_m1 = 0.0;
    double max_m2 = 0.0;
    double max_m3 = 0.0;
};

inline SymbolBounds symbol_bounds_check(const Grid& grid, FilterParam alpha) {
    if (!(alpha.value > 0.0))
        throw ConfigError("symbol_bounds_check: alpha must be positive");
    const double a2 = alpha.value * alpha.value;
    SymbolBounds out;
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double xi = std::abs(grid.freq(k));
        const double d = 1.0 + a2 * xi * xi;
        out.max_m1 = std::max(out.max_m1, a2 * xi * xi / d);
        out.max_m2 = std::max(out.max_m2, alpha.value * xi / d);
        out.max_m3 = std::max(out.max_m3, a2 * xi * std::sqrt(1.0 + xi * xi) / d);
    }
    return out;
}

}  // namespace zfl
