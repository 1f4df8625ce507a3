#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "oracle_helpers.hpp"
#include "zfl/constructions.hpp"
#include "zfl/spectral_field.hpp"
#include "zfl/spectral_ops.hpp"

using namespace zfl;

namespace {
const double kL = 32.0 * kPi;

double max_coeff_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}
}  // namespace

TEST_CASE("grid construction validates its inputs", "[grid]") {
    REQUIRE_THROWS_AS(Grid(kL, 8), ConfigError);
    REQUIRE_THROWS_AS(Grid(kL, 100), ConfigError);  // not a power of two
    REQUIRE_THROWS_AS(Grid(-1.0, 64), ConfigError);
    const Grid g(kL, 64);
    REQUIRE(g.dx() == Catch::Approx(2.0 * kL / 64.0));
    REQUIRE(g.freq(1) == Catch::Approx(kPi / kL));
    REQUIRE(g.mode_index(63) == -1);
    REQUIRE(g.freq(32) == Catch::Approx(-32.0 * kPi / kL));
}

TEST_CASE("forward transform", "[dft]") {
    const Grid g(kL, 64);

    SECTION("zero maps to zero") {
        const auto c = dft_forward(std::vector<double>(64, 0.0), g);
        for (const auto& ck : c) REQUIRE(std::abs(ck) == 0.0);
    }
    SECTION("cos(pi x / L) concentrates on modes +-1") {
        std::vector<double> v(64);
        for (std::size_t i = 0; i < 64; ++i) v[i] = std::cos(kPi * g.x(i) / kL);
        const auto c = dft_forward(v, g);
        const double peak = std::abs(c[1]);
        REQUIRE(peak > 0.0);
        for (std::size_t k = 0; k < 64; ++k) {
            if (k == 1 || k == 63) continue;
            REQUIRE(std::abs(c[k]) <= 1e-12 * peak);
        }
    }
    SECTION("matches the O(N^2) summation oracle") {
        const SpectralField u = random_band_limited(g, g.max_freq(), 42);
        const auto expected = oracle::naive_dft(u.values(), g);
        REQUIRE(max_coeff_diff(u.coeffs(), expected) <= 1e-10);
    }
    SECTION("length mismatch is a configuration error") {
        REQUIRE_THROWS_AS(dft_forward(std::vector<double>(63, 0.0), g), ConfigError);
    }
}

TEST_CASE("inverse transform", "[dft]") {
    const Grid g(kL, 64);

    SECTION("zero maps to zero") {
        const auto v = dft_inverse(std::vector<Complex>(64, Complex(0.0)), g);
        for (double x : v) REQUIRE(x == 0.0);
    }
    SECTION("round trip is the identity across grid sizes") {
        for (std::size_t n : {16u, 64u, 256u, 4096u}) {
            const Grid grid(kL, n);
            const SpectralField u = random_band_limited(grid, grid.max_freq(), 7 + n);
            const auto back = dft_inverse(dft_forward(u.values(), grid), grid);
            double worst = 0.0;
            const double scale = u.max_abs();
            for (std::size_t i = 0; i < n; ++i)
                worst = std::max(worst, std::abs(back[i] - u.values()[i]));
            REQUIRE(worst <= 1e-12 * scale);
        }
    }
    SECTION("single mode matches direct evaluation") {
        std::vector<Complex> c(64, Complex(0.0));
        c[2] = Complex(1.0, 0.25);
        c[62] = std::conj(c[2]);
        const auto v = dft_inverse(c, g);
        for (std::size_t i = 0; i < 64; i += 7)
            REQUIRE(v[i] == Catch::Approx(oracle::eval_inverse_at(c, g, g.x(i))).margin(1e-13));
    }
    SECTION("asymmetric coefficients are rejected") {
        std::vector<Complex> c(64, Complex(0.0));
        c[2] = Complex(1.0, 0.0);  // no conjugate partner
        REQUIRE_THROWS_AS(dft_inverse(c, g), SymmetryError);
    }
}

TEST_CASE("Parseval identity on the grid", "[dft]") {
    const Grid g(kL, 256);
    const SpectralField u = random_band_limited(g, 0.8 * g.max_freq(), 99);
    double phys = 0.0;
    for (double v : u.values()) phys += v * v;
    phys *= g.dx();
    double spec = 0.0;
    for (const auto& c : u.coeffs()) spec += std::norm(c);
    spec *= g.freq_step() / (2.0 * kPi);
    REQUIRE(phys == Catch::Approx(spec).epsilon(1e-10));
}

TEST_CASE("spectral derivative", "[ops]") {
    const Grid g(kL, 256);

    SECTION("constant field maps to zero") {
        const SpectralField u = SpectralField::from_values(g, std::vector<double>(256, 3.5));
        REQUIRE(derivative(u, 1).max_abs() <= 1e-12);
    }
    SECTION("eigenfunction sin(pi x / L)") {
        std::vector<double> v(256);
        for (std::size_t i = 0; i < 256; ++i) v[i] = std::sin(kPi * g.x(i) / kL);
        const SpectralField du = derivative(SpectralField::from_values(g, v), 1);
        for (std::size_t i = 0; i < 256; i += 13)
            REQUIRE(du.values()[i] ==
                    Catch::Approx((kPi / kL) * std::cos(kPi * g.x(i) / kL)).margin(1e-10));
    }
    SECTION("matches the 8th-order finite-difference oracle at its order") {
        double err_coarse = 0.0, err_fine = 0.0;
        for (std::size_t n : {512u, 1024u}) {
            const Grid grid(kL, n);
            const SpectralField u = random_band_limited(grid, 1.5, 4711, 1.0);
            const SpectralField du = derivative(u, 1);
            const auto fd = oracle::fd_derivative_8(u.values(), grid.dx());
            double worst = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                worst = std::max(worst, std::abs(fd[i] - du.values()[i]));
            (n == 512 ? err_coarse : err_fine) = worst;
        }
        REQUIRE(err_fine > 0.0);
        const double order = std::log2(err_coarse / err_fine);
        REQUIRE(order >= 7.0);  // O(dx^8) convergence
        REQUIRE(order <= 9.5);
    }
    SECTION("unsupported order is a configuration error") {
        const SpectralField u = SpectralField::zero(g);
        REQUIRE_THROWS_AS(derivative(u, 4), ConfigError);
        REQUIRE_THROWS_AS(derivative(u, 0), ConfigError);
    }
}

TEST_CASE("resolvent multiplier", "[ops]") {
    SECTION("alpha = 0 is the identity") {
        const Grid g(kL, 128);
        const SpectralField u = random_band_limited(g, 0.5 * g.max_freq(), 5);
        const SpectralField r = resolvent(u, FilterParam(0.0));
        double worst = 0.0;
        for (std::size_t i = 0; i < 128; ++i)
            worst = std::max(worst, std::abs(r.values()[i] - u.values()[i]));
        REQUIRE(worst <= 1e-13);
    }
    SECTION("eigenfunction cos(pi x / L) with alpha * xi_1 = 1") {
        const Grid g(kPi / 2.0, 64);  // xi_1 = 2, alpha = 1/2 halves the mode
        std::vector<double> v(64);
        for (std::size_t i = 0; i < 64; ++i) v[i] = std::cos(kPi * g.x(i) / g.half_length());
        const SpectralField r = resolvent(SpectralField::from_values(g, v), FilterParam(0.5));
        for (std::size_t i = 0; i < 64; i += 5)
            REQUIRE(r.values()[i] == Catch::Approx(0.5 * v[i]).margin(1e-12));
    }
    SECTION("contracts the L2 norm") {
        const Grid g(kL, 256);
        for (int i = 0; i < 20; ++i) {
            const SpectralField u = random_band_limited(g, 0.9 * g.max_freq(), 100 + i);
            REQUIRE(resolvent(u, FilterParam(0.7)).l2_norm() <= u.l2_norm() * (1 + 1e-12));
        }
    }
    SECTION("filter parameter range is validated") {
        REQUIRE_THROWS_AS(FilterParam(-0.1), ConfigError);
        REQUIRE_THROWS_AS(FilterParam(1.5), ConfigError);
        REQUIRE_NOTHROW(FilterParam(1.0));
    }
}

TEST_CASE("resolvent and derivative commute", "[ops]") {
    const Grid g(kL, 256);
    const SpectralField u = random_band_limited(g, 0.6 * g.max_freq(), 31);
    const SpectralField a = derivative(resolvent(u, FilterParam(0.3)), 1);
    const SpectralField b = resolvent(derivative(u, 1), FilterParam(0.3));
    REQUIRE((a - b).max_abs() <= 1e-11);
}

TEST_CASE("multiplier magnitude bounds", "[ops]") {
    SECTION("order-0 bounds hold at every grid frequency") {
        for (double a : {0.5, 0.25, 0.125, 1.0}) {
            const SymbolBounds sb = symbol_bounds_check(Grid(kL, 1024), FilterParam(a));
            REQUIRE(sb.max_m1 <= 1.0);
            REQUIRE(sb.max_m2 <= 0.5);
        }
    }
    SECTION("one-derivative gain stays below 3 across the dyadic filter sweep") {
        const Grid g(kL, 4096);
        for (int e = 1; e <= 10; ++e) {
            const SymbolBounds sb = symbol_bounds_check(g, FilterParam(std::pow(2.0, -e)));
            REQUIRE(sb.max_m3 <= 3.0);
        }
    }
    SECTION("alpha = 0 is rejected") {
        REQUIRE_THROWS_AS(symbol_bounds_check(Grid(kL, 64), FilterParam(0.0)), ConfigError);
    }
}

TEST_CASE("dealiasing", "[ops]") {
    const Grid g(kL, 256);
    const long long cut = dealias_cut_index(g, 2.0 / 3.0);

    SECTION("band-limited fields pass through unchanged") {
        const SpectralField u =
            random_band_limited(g, 0.5 * dealias_cutoff_freq(g, 2.0 / 3.0), 8);
        REQUIRE(max_coeff_diff(dealias(u).coeffs(), u.coeffs()) == 0.0);
    }
    SECTION("modes above the cutoff are removed") {
        std::vector<Complex> c(256, Complex(0.0));
        const std::size_t hot = static_cast<std::size_t>(cut + 2);
        c[hot] = Complex(1.0, 0.0);
        c[256 - hot] = Complex(1.0, 0.0);
        const SpectralField u = dealias(SpectralField::from_coeffs(g, c));
        REQUIRE(u.max_abs() == 0.0);
    }
    SECTION("pointwise products of half-band fields need no dealiasing") {
        const double half_band = 0.5 * dealias_cutoff_freq(g, 2.0 / 3.0);
        const SpectralField a = random_band_limited(g, half_band, 21);
        const SpectralField b = random_band_limited(g, half_band, 22);
        std::vector<double> prod(256);
        for (std::size_t i = 0; i < 256; ++i) prod[i] = a.values()[i] * b.values()[i];
        const SpectralField p = SpectralField::from_values(g, prod);
        const double scale = p.l2_norm();
        // raw product equals its dealiased version...
        REQUIRE(max_coeff_diff(dealias(p).coeffs(), p.coeffs()) <= 1e-14 * scale);
        // ...and both equal the exact convolution of the factor spectra
        for (long long out : {0ll, 3ll, cut / 2, cut}) {
            const Complex expected = oracle::convolution_at(a.coeffs(), b.coeffs(), g, out);
            REQUIRE(std::abs(p.coeffs()[static_cast<std::size_t>(out)] - expected) <= 1e-12);
        }
    }
    SECTION("dealiased quadratic products are exact on the kept band") {
        // full-band factors: aliased images land strictly above the kept band
        const SpectralField a = random_band_limited(g, dealias_cutoff_freq(g, 2.0 / 3.0), 23);
        const SpectralField b = random_band_limited(g, dealias_cutoff_freq(g, 2.0 / 3.0), 24);
        const SpectralField p = product_dealiased(a, b);
        for (long long out = -cut; out <= cut; out += 17) {
            const std::size_t slot = out >= 0 ? static_cast<std::size_t>(out)
                                              : g.size() - static_cast<std::size_t>(-out);
            const Complex expected = oracle::convolution_at(a.coeffs(), b.coeffs(), g, out);
            REQUIRE(std::abs(p.coeffs()[slot] - expected) <= 1e-12);
        }
    }
    SECTION("rule range is validated") {
        REQUIRE_THROWS_AS(dealias(SpectralField::zero(g), 0.0), ConfigError);
        REQUIRE_THROWS_AS(dealias(SpectralField::zero(g), 1.5), ConfigError);
    }
}

TEST_CASE("field construction cleans coefficient input", "[field]") {
    const Grid g(kL, 64);
    std::vector<Complex> c(64, Complex(0.0));
    c[3] = Complex(0.5, 0.5);
    c[61] = std::conj(c[3]) + Complex(1e-12, 1e-12);  // defect below threshold
    c[32] = Complex(1e-11, 0.0);                      // unmatched mode
    const SpectralField u = SpectralField::from_coeffs(g, c);
    REQUIRE(u.coeffs()[32] == Complex(0.0));
    REQUIRE(u.coeffs()[61] == std::conj(u.coeffs()[3]));
    const auto back = dft_forward(u.values(), g);
    REQUIRE(max_coeff_diff(back, u.coeffs()) <= 1e-12);
}
