#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace zfl {

/** Iterative radix-2 complex FFT with precomputed twiddles and bit-reversal
 *  table. A plan is immutable after construction and safe to share across
 *  threads. Transforms are unnormalized:
 *      forward:  A_k = sum_j a_j exp(-2*pi*i*j*k/n)
 *      inverse:  a_j = sum_k A_k exp(+2*pi*i*j*k/n)   (caller divides by n)
 */
class FftPlan {
public:
    explicit FftPlan(std::size_t n) : n_(n) {
        bitrev_.resize(n);
        std::size_t log2n = 0;
        while ((std::size_t{1} << log2n) < n) ++log2n;
        for (std::size_t i = 0; i < n; ++i) {
            std::size_t r = 0;
            for (std::size_t b = 0; b < log2n; ++b)
                if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (log2n - 1 - b);
            bitrev_[i] = r;
        }
        // twiddles for the largest stage; smaller stages stride into it
        twiddle_.resize(n / 2);
        const double base = -2.0 * pi() / static_cast<double>(n);
        for (std::size_t k = 0; k < n / 2; ++k)
            twiddle_[k] = std::complex<double>(std::cos(base * k), std::sin(base * k));
    }

    std::size_t size() const { return n_; }

    void forward(std::vector<std::complex<double>>& a) const { transform(a, false); }
    void inverse(std::vector<std::complex<double>>& a) const { transform(a, true); }

private:
    static constexpr double pi() { return 3.14159265358979323846; }

    void transform(std::vector<std::complex<double>>& a, bool conj) const {
        const std::size_t n = n_;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t r = bitrev_[i];
            if (i < r) std::swap(a[i], a[r]);
        }
        for (std::size_t len = 2; len <= n; len <<= 1) {
            const std::size_t half = len >> 1;
            const std::size_t stride = n / len;
            for (std::size_t start = 0; start < n; start += len) {
                for (std::size_t k = 0; k < half; ++k) {
                    std::complex<double> w = twiddle_[k * stride];
                    if (conj) w = std::conj(w);
                    const std::complex<double> u = a[start + k];
                    const std::complex<double> v = a[start + k + half] * w;
                    a[start + k] = u + v;
                    a[start + k + half] = u - v;
                }
            }
        }
    }

    std::size_t n_;
    std::vector<std::size_t> bitrev_;
    std::vector<std::complex<double>> twiddle_;
};

}  // namespace zfl
