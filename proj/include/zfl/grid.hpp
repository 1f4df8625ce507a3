#pragma once

#include <cmath>
#include <cstddef>
#include <memory>
#include <string>

#include "zfl/errors.hpp"
#include "zfl/fft.hpp"

namespace zfl {

inline constexpr double kPi = 3.14159265358979323846;

/** Uniform periodic grid on [-L, L) with N points (N a power of two, >= 16).
 *
 *  Storage order of frequencies follows the FFT layout: slot k holds the
 *  signed mode index k for k < N/2 and k - N otherwise, so xi_k = idx * pi/L.
 *  The mode at index N/2 (frequency -N/2 * pi/L) has no positive partner.
 *
 *  A Grid is a value type; the FFT plan is shared, so copies are cheap and
 *  all operations are thread-safe.
 */
class Grid {
public:
    Grid(double half_length, std::size_t size)
        : half_length_(half_length), size_(size) {
        if (!(half_length > 0.0))
            throw ConfigError("grid: half length must be positive, got " +
                              std::to_string(half_length));
        if (size < 16 || (size & (size - 1)) != 0)
            throw ConfigError("grid: size must be a power of two >= 16, got " +
                              std::to_string(size));
        plan_ = std::make_shared<const FftPlan>(size);
    }

    double half_length() const { return half_length_; }
    std::size_t size() const { return size_; }
    double dx() const { return 2.0 * half_length_ / static_cast<double>(size_); }
    double freq_step() const { return kPi / half_length_; }

    double x(std::size_t i) const { return -half_length_ + static_cast<double>(i) * dx(); }

    /// Signed mode index of storage slot k.
    long long mode_index(std::size_t k) const {
        return k < size_ / 2 ? static_cast<long long>(k)
                             : static_cast<long long>(k) - static_cast<long long>(size_);
    }

    /// Frequency xi_k = mode_index * pi / L of storage slot k.
    double freq(std::size_t k) const {
        return static_cast<double>(mode_index(k)) * freq_step();
    }

    /// Largest represented |xi| (the unmatched mode at index N/2).
    double max_freq() const { return static_cast<double>(size_ / 2) * freq_step(); }

    std::size_t nyquist_slot() const { return size_ / 2; }

    const FftPlan& plan() const { return *plan_; }

    bool operator==(const Grid& o) const {
        return half_length_ == o.half_length_ && size_ == o.size_;
    }
    bool operator!=(const Grid& o) const { return !(*this == o); }

private:
    double half_length_;
    std::size_t size_;
    std::shared_ptr<const FftPlan> plan_;
};

}  // namespace zfl
