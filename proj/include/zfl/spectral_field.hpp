#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "zfl/errors.hpp"
#include "zfl/grid.hpp"

namespace zfl {

using Complex = std::complex<double>;

/** Forward transform, the discretization of F(f)(xi) = int exp(-i x xi) f dx:
 *      c_k = dx * sum_j f(x_j) exp(-i x_j xi_k).
 *  With x_j = -L + j dx this is dx * (-1)^k * FFT(values).
 */
inline std::vector<Complex> dft_forward(const std::vector<double>& values, const Grid& grid) {
    const std::size_t n = grid.size();
    if (values.size() != n)
        throw ConfigError("dft_forward: expected " + std::to_string(n) + " values, got " +
                          std::to_string(values.size()));
    std::vector<Complex> buf(n);
    for (std::size_t j = 0; j < n; ++j) buf[j] = values[j];
    grid.plan().forward(buf);
    const double dx = grid.dx();
    for (std::size_t k = 0; k < n; ++k)
        buf[k] *= (k & 1) ? -dx : dx;
    return buf;
}

/// Largest deviation from conjugate symmetry, relative to the largest coefficient.
inline double conjugate_symmetry_defect(const std::vector<Complex>& coeffs) {
    const std::size_t n = coeffs.size();
    double scale = 0.0, defect = 0.0;
    for (const auto& c : coeffs) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) return 0.0;
    defect = std::max(defect, std::abs(coeffs[0].imag()));
    defect = std::max(defect, std::abs(coeffs[n / 2].imag()));
    for (std::size_t k = 1; k < n / 2; ++k)
        defect = std::max(defect, std::abs(coeffs[k] - std::conj(coeffs[n - k])));
    return defect / scale;
}

namespace detail {
inline std::vector<double> inverse_real_samples(const std::vector<Complex>& coeffs,
                                                const Grid& grid) {
    const std::size_t n = grid.size();
    std::vector<Complex> buf(n);
    for (std::size_t k = 0; k < n; ++k)
        buf[k] = (k & 1) ? -coeffs[k] : coeffs[k];
    grid.plan().inverse(buf);
    const double scale = 1.0 / (grid.dx() * static_cast<double>(n));
    std::vector<double> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = buf[j].real() * scale;
    return out;
}
}  // namespace detail

/** Inverse transform back to real samples:
 *      f(x_j) = (1/2pi) sum_k c_k exp(+i x_j xi_k) dxi.
 *  Requires conjugate-symmetric input (checked to 1e-9 relative).
 */
inline std::vector<double> dft_inverse(const std::vector<Complex>& coeffs, const Grid& grid) {
    const std::size_t n = grid.size();
    if (coeffs.size() != n)
        throw ConfigError("dft_inverse: expected " + std::to_string(n) + " coefficients, got " +
                          std::to_string(coeffs.size()));
    const double defect = conjugate_symmetry_defect(coeffs);
    if (defect > 1e-9)
        throw SymmetryError("dft_inverse: coefficients are not conjugate-symmetric (defect " +
                            std::to_string(defect) + ")");
    return detail::inverse_real_samples(coeffs, grid);
}

/** A real field on the grid together with its Fourier coefficients; the two
 *  representations are constructed in sync and never mutated afterwards.
 */
class SpectralField {
public:
    static SpectralField zero(const Grid& grid) {
        return SpectralField(grid, std::vector<double>(grid.size(), 0.0),
                             std::vector<Complex>(grid.size(), Complex(0.0)));
    }

    static SpectralField from_values(const Grid& grid, std::vector<double> values) {
        auto coeffs = dft_forward(values, grid);
        return SpectralField(grid, std::move(values), std::move(coeffs));
    }

    /** Builds a real field from coefficients. The input is symmetrized
     *  exactly after the 1e-9 defect check, and the unmatched mode at
     *  index N/2 is forced to zero so the values are exactly real.
     */
    static SpectralField from_coeffs(const Grid& grid, std::vector<Complex> coeffs) {
        const std::size_t n = grid.size();
        if (coeffs.size() != n)
            throw ConfigError("SpectralField: expected " + std::to_string(n) +
                              " coefficients, got " + std::to_string(coeffs.size()));
        const double defect = conjugate_symmetry_defect(coeffs);
        if (defect > 1e-9)
            throw SymmetryError("SpectralField: coefficients are not conjugate-symmetric "
                                "(defect " + std::to_string(defect) + ")");
        return from_coeffs_trusted(grid, std::move(coeffs));
    }

    /** Same construction without the defect check, for results of operations
     *  that preserve conjugate symmetry structurally (even real multipliers,
     *  linear combinations of real fields). Near-zero results of such
     *  operations carry only rounding dust, which a relative defect check
     *  would misclassify.
     */
    static SpectralField from_coeffs_trusted(const Grid& grid, std::vector<Complex> coeffs) {
        const std::size_t n = grid.size();
        coeffs[0] = Complex(coeffs[0].real(), 0.0);
        coeffs[n / 2] = Complex(0.0, 0.0);
        for (std::size_t k = 1; k < n / 2; ++k) {
            const Complex sym = 0.5 * (coeffs[k] + std::conj(coeffs[n - k]));
            coeffs[k] = sym;
            coeffs[n - k] = std::conj(sym);
        }
        auto values = detail::inverse_real_samples(coeffs, grid);
        return SpectralField(grid, std::move(values), std::move(coeffs));
    }

    const Grid& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    const std::vector<Complex>& coeffs() const { return coeffs_; }

    double max_abs() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Grid-quadrature L2 norm, sqrt(sum u_i^2 dx).
    double l2_norm() const {
        double s = 0.0;
        for (double v : values_) s += v * v;
        return std::sqrt(s * grid_.dx());
    }

    bool all_finite() const {
        for (double v : values_)
            if (!std::isfinite(v)) return false;
        return true;
    }

private:
    SpectralField(const Grid& grid, std::vector<double> values, std::vector<Complex> coeffs)
        : grid_(grid), values_(std::move(values)), coeffs_(std::move(coeffs)) {}

    Grid grid_;
    std::vector<double> values_;
    std::vector<Complex> coeffs_;
};

/// Quadrature-weighted L2 norm computed on the coefficient side (Parseval).
inline double l2_norm_of_coeffs(const std::vector<Complex>& coeffs, const Grid& grid) {
    double s = 0.0;
    for (const auto& c : coeffs) s += std::norm(c);
    return std::sqrt(s * grid.freq_step() / (2.0 * kPi));
}

inline SpectralField operator+(const SpectralField& a, const SpectralField& b) {
    std::vector<Complex> c(a.coeffs());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += b.coeffs()[k];
    return SpectralField::from_coeffs_trusted(a.grid(), std::move(c));
}

inline SpectralField operator-(const SpectralField& a, const SpectralField& b) {
    std::vector<Complex> c(a.coeffs());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] -= b.coeffs()[k];
    return SpectralField::from_coeffs_trusted(a.grid(), std::move(c));
}

inline SpectralField operator*(double scale, const SpectralField& a) {
    std::vector<Complex> c(a.coeffs());
    for (auto& ck : c) ck *= scale;
    return SpectralField::from_coeffs_trusted(a.grid(), std::move(c));
}

}  // namespace zfl
