#pragma once

// Independent reference implementations used only by tests. Each one follows
// the mathematical definition directly so it cannot share a bug with the
// fast paths it checks.

#include <complex>
#include <vector>

#include "zfl/grid.hpp"
#include "zfl/spectral_field.hpp"

namespace zfl::oracle {

/// O(N^2) transform straight from the definition c_k = dx sum_j f_j e^{-i x_j xi_k}.
inline std::vector<Complex> naive_dft(const std::vector<double>& values, const Grid& grid) {
    const std::size_t n = grid.size();
    std::vector<Complex> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        Complex acc(0.0);
        const double xi = grid.freq(k);
        for (std::size_t j = 0; j < n; ++j) {
            const double ph = -grid.x(j) * xi;
            acc += values[j] * Complex(std::cos(ph), std::sin(ph));
        }
        out[k] = acc * grid.dx();
    }
    return out;
}

/// Direct evaluation of the inverse sum at one point.
inline double eval_inverse_at(const std::vector<Complex>& coeffs, const Grid& grid, double x) {
    Complex acc(0.0);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const double ph = x * grid.freq(k);
        acc += coeffs[k] * Complex(std::cos(ph), std::sin(ph));
    }
    return (acc * grid.freq_step() / (2.0 * kPi)).real();
}

/// Centered 8th-order finite-difference first derivative on the periodic grid.
inline std::vector<double> fd_derivative_8(const std::vector<double>& v, double dx) {
    static const double c[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
    const std::size_t n = v.size();
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t m = 1; m <= 4; ++m) {
            const std::size_t ip = (i + m) % n;
            const std::size_t im = (i + n - m) % n;
            acc += c[m - 1] * (v[ip] - v[im]);
        }
        out[i] = acc / dx;
    }
    return out;
}

/// Exact linear convolution of two coefficient sequences (signed-index form),
/// evaluated at one signed output index. Quadrature weight dxi/(2pi) matches
/// the discrete transform of a pointwise product.
inline Complex convolution_at(const std::vector<Complex>& a, const std::vector<Complex>& b,
                              const Grid& grid, long long out_index) {
    const long long half = static_cast<long long>(grid.size() / 2);
    auto at = [&](const std::vector<Complex>& c, long long idx) -> Complex {
        if (idx < -half || idx >= half) return Complex(0.0);
        const std::size_t slot = idx >= 0 ? static_cast<std::size_t>(idx)
                                          : grid.size() - static_cast<std::size_t>(-idx);
        return c[slot];
    };
    Complex acc(0.0);
    for (long long q = -half; q < half; ++q) acc += at(a, q) * at(b, out_index - q);
    return acc * (grid.freq_step() / (2.0 * kPi));
}

}  // namespace zfl::oracle
