#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "zfl/errors.hpp"
#include "zfl/spectral_field.hpp"
#include "zfl/spectral_ops.hpp"

namespace zfl {

/// C-infinity step: 0 for t <= 0, 1 for t >= 1, built from exp(-1/t).
inline double smooth_step(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

/// Radial low cutoff: 1 on |t| <= 1, 0 on |t| >= 4/3, smooth in between.
inline double lowpass_profile(double t) {
    const double a = std::abs(t);
    if (a <= 1.0) return 1.0;
    if (a >= 4.0 / 3.0) return 0.0;
    return smooth_step((4.0 / 3.0 - a) * 3.0);
}

/// Annulus bump chi(t/2) - chi(t): supported in 1 <= |t| <= 8/3, equal to 1 on [4/3, 2].
inline double annulus_profile(double t) {
    return lowpass_profile(t / 2.0) - lowpass_profile(t);
}

/** Dyadic partition of unity on the grid frequencies.
 *
 *  phi_j(xi) = annulus_profile(xi / 2^j) for j >= 0 and chi(xi) at j = -1 give
 *      chi(xi) + sum_{j>=0} phi_j(xi) = 1   exactly (telescoping sum),
 *  and at every frequency at most two consecutive terms are nonzero, so
 *      1/2 <= chi^2 + sum phi_j^2 <= 1.
 *
 *  Block multipliers carry the dealias indicator, so summing all blocks of a
 *  field reconstructs its dealiased part and block norms never see removed
 *  modes. Tables are precomputed; the object is immutable and shareable.
 */
class DyadicPartition {
public:
    explicit DyadicPartition(const Grid& grid, double dealias_rule = 2.0 / 3.0)
        : grid_(grid), rule_(dealias_rule) {
        cut_index_ = dealias_cut_index(grid, dealias_rule);
        cutoff_ = dealias_cutoff_freq(grid, dealias_rule);
        if (cutoff_ < 8.0 / 3.0)
            throw ConfigError("dyadic partition: grid too coarse, dealiased band must reach "
                              "|xi| = 8/3 to host the j = 0 annulus");
        j_max_ = static_cast<int>(std::ceil(std::log2(cutoff_ * grid.half_length() / kPi))) + 1;
        tables_.resize(static_cast<std::size_t>(j_max_ + 2));
        for (int j = -1; j <= j_max_; ++j) {
            auto& tab = tables_[static_cast<std::size_t>(j + 1)];
            tab.resize(grid.size());
            for (std::size_t k = 0; k < grid.size(); ++k) {
                if (std::llabs(grid.mode_index(k)) > cut_index_) {
                    tab[k] = 0.0;
                    continue;
                }
                const double xi = grid.freq(k);
                tab[k] = (j == -1) ? lowpass_profile(xi)
                                   : annulus_profile(xi / std::pow(2.0, j));
            }
        }
    }

    const Grid& grid() const { return grid_; }
    double dealias_rule() const { return rule_; }
    double cutoff_freq() const { return cutoff_; }
    int j_min() const { return -1; }
    int j_max() const { return j_max_; }

    /// Multiplier table for block j (j in [-1, j_max]).
    const std::vector<double>& multiplier(int j) const {
        return tables_[static_cast<std::size_t>(j + 1)];
    }

    double chi(double xi) const { return lowpass_profile(xi); }
    double phi(double xi) const { return annulus_profile(xi); }

private:
    Grid grid_;
    double rule_;
    long long cut_index_;
    double cutoff_;
    int j_max_;
    std::vector<std::vector<double>> tables_;
};

/// Frequency-localization block: zero for j <= -2, low cutoff at j = -1, annulus above.
inline SpectralField block(const SpectralField& u, int j, const DyadicPartition& part) {
    if (j <= -2) return SpectralField::zero(u.grid());
    if (j > part.j_max()) return SpectralField::zero(u.grid());
    const auto& tab = part.multiplier(j);
    std::vector<Complex> c(u.coeffs());
    for (std::size_t k = 0; k < c.size(); ++k) c[k] *= tab[k];
    return SpectralField::from_coeffs_trusted(u.grid(), std::move(c));
}

/// Quadrature L2 norm of block j, computed coefficient-side (no transform).
inline double block_l2_norm(const SpectralField& u, int j, const DyadicPartition& part) {
    if (j <= -2 || j > part.j_max()) return 0.0;
    const auto& tab = part.multiplier(j);
    const auto& c = u.coeffs();
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        const double m = tab[k];
        if (m != 0.0) s += std::norm(c[k]) * m * m;
    }
    return std::sqrt(s * u.grid().freq_step() / (2.0 * kPi));
}

/** Low-frequency cutoff S_n = sum_{j<n} Delta_j, realized as the multiplier
 *  chi(2^{-n} xi) (exact by the telescoping identity).
 */
inline SpectralField lowpass(const SpectralField& u, int n, const DyadicPartition& part) {
    if (n < 0) throw ConfigError("lowpass: cutoff index must be >= 0");
    const Grid& g = u.grid();
    const long long cut = dealias_cut_index(g, part.dealias_rule());
    const double scale = std::pow(2.0, -n);
    std::vector<Complex> c(u.coeffs());
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (std::llabs(g.mode_index(k)) > cut) {
            c[k] = Complex(0.0);
            continue;
        }
        c[k] *= lowpass_profile(g.freq(k) * scale);
    }
    return SpectralField::from_coeffs_trusted(g, std::move(c));
}

struct BlockDecomposition {
    std::vector<SpectralField> blocks;  // indexed j = -1 .. j_max
    int j_min = -1;
};

inline BlockDecomposition decompose(const SpectralField& u, const DyadicPartition& part) {
    BlockDecomposition out;
    out.blocks.reserve(static_cast<std::size_t>(part.j_max() + 2));
    for (int j = -1; j <= part.j_max(); ++j) out.blocks.push_back(block(u, j, part));
    return out;
}

/// Parameters of the norm (sum_j 2^{jsr} ||Delta_j u||_{L^2}^r)^{1/r}; p is fixed at 2.
struct BesovParams {
    double s = 2.0;
    double r = 2.0;  // may be infinity (sup over j)
    BesovParams() = default;
    BesovParams(double s_, double r_) : s(s_), r(r_) {
        if (!(r_ >= 1.0)) throw ConfigError("besov: summation exponent r must be >= 1");
    }
};

inline double besov_norm(const SpectralField& u, const BesovParams& params,
                         const DyadicPartition& part) {
    const bool sup_norm = std::isinf(params.r);
    double acc = 0.0;
    for (int j = -1; j <= part.j_max(); ++j) {
        const double bj = block_l2_norm(u, j, part);
        if (bj == 0.0) continue;
        const double term = std::pow(2.0, j * params.s) * bj;
        if (sup_norm)
            acc = std::max(acc, term);
        else
            acc += std::pow(term, params.r);
    }
    return sup_norm ? acc : std::pow(acc, 1.0 / params.r);
}

/// Sobolev norm (weighted coefficient sum); equivalent to the r = 2 norm above.
inline double sobolev_norm(const SpectralField& u, double sigma) {
    const Grid& g = u.grid();
    const auto& c = u.coeffs();
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        const double xi = g.freq(k);
        s += std::pow(1.0 + xi * xi, sigma) * std::norm(c[k]);
    }
    return std::sqrt(s * g.freq_step() / (2.0 * kPi));
}

/// Commutator [Delta_j, f] d_x g = Delta_j(f d_x g) - f Delta_j(d_x g), products dealiased.
inline SpectralField commutator_block(int j, const SpectralField& f, const SpectralField& g,
                                      const DyadicPartition& part) {
    const double rule = part.dealias_rule();
    const SpectralField dg = derivative(g, 1);
    const SpectralField t1 = block(product_dealiased(f, dg, rule), j, part);
    const SpectralField t2 = product_dealiased(f, block(dg, j, part), rule);
    return t1 - t2;
}

}  // namespace zfl
