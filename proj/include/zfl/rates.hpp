#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "zfl/errors.hpp"

namespace zfl {

/// Ordinary least squares fit of log(y) against log(x).
struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
    int point_count = 0;
    bool dropped_last = false;  // largest-x point removed as a 3-sigma outlier
};

namespace detail {
inline RateFit ols_loglog(const std::vector<double>& xs, const std::vector<double>& ys) {
    const int n = static_cast<int>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    RateFit f;
    f.point_count = n;
    const double denom = n * sxx - sx * sx;
    f.slope = (n * sxy - sx * sy) / denom;
    f.intercept = (sy - f.slope * sx) / n;
    double ss = 0;
    for (int i = 0; i < n; ++i) {
        const double r = std::log(ys[i]) - (f.intercept + f.slope * std::log(xs[i]));
        ss += r * r;
    }
    f.residual_rms = std::sqrt(ss / n);
    return f;
}
}  // namespace detail

/** Fits a power law through (x, y) pairs. The largest-x point is dropped when
 *  its residual exceeds 3x the RMS of the others (it is the point most often
 *  outside the asymptotic regime). At least 4 points are required.
 */
inline RateFit fit_loglog(std::vector<double> xs, std::vector<double> ys,
                          bool allow_outlier_drop = true) {
    if (xs.size() != ys.size()) throw ConfigError("fit_loglog: size mismatch");
    if (xs.size() < 4) throw ConfigError("fit_loglog: need at least 4 points");
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw ConfigError("fit_loglog: points must be positive");
    // sort by x so "last" is the largest
    std::vector<std::size_t> idx(xs.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    std::vector<double> x2, y2;
    for (std::size_t i : idx) {
        x2.push_back(xs[i]);
        y2.push_back(ys[i]);
    }
    RateFit fit = detail::ols_loglog(x2, y2);
    if (allow_outlier_drop && x2.size() >= 5) {
        std::vector<double> xh(x2.begin(), x2.end() - 1), yh(y2.begin(), y2.end() - 1);
        const RateFit head = detail::ols_loglog(xh, yh);
        const double r_last =
            std::abs(std::log(y2.back()) - (head.intercept + head.slope * std::log(x2.back())));
        if (head.residual_rms > 0.0 && r_last > 3.0 * head.residual_rms) {
            RateFit out = head;
            out.dropped_last = true;
            return out;
        }
    }
    return fit;
}

/// Percentile bootstrap 95% interval for the fitted slope (fixed seed, 200 resamples).
struct SlopeInterval {
    double lo = 0.0;
    double hi = 0.0;
};

inline SlopeInterval bootstrap_slope_ci(const std::vector<double>& xs,
                                        const std::vector<double>& ys,
                                        std::uint64_t seed = 2718281828u, int resamples = 200) {
    if (xs.size() < 4) throw ConfigError("bootstrap_slope_ci: need at least 4 points");
    std::mt19937_64 rng(seed);
    std::vector<double> slopes;
    slopes.reserve(resamples);
    std::vector<double> bx(xs.size()), by(xs.size());
    for (int b = 0; b < resamples; ++b) {
        bool degenerate = true;
        for (std::size_t i = 0; i < xs.size(); ++i) {
            const std::size_t j = rng() % xs.size();
            bx[i] = xs[j];
            by[i] = ys[j];
            if (bx[i] != bx[0]) degenerate = false;
        }
        if (degenerate) continue;
        slopes.push_back(detail::ols_loglog(bx, by).slope);
    }
    std::sort(slopes.begin(), slopes.end());
    SlopeInterval ci;
    const std::size_t m = slopes.size();
    ci.lo = slopes[static_cast<std::size_t>(0.025 * m)];
    ci.hi = slopes[std::min(m - 1, static_cast<std::size_t>(0.975 * m))];
    return ci;
}

}  // namespace zfl
