// SPDX-License-Identifier: Apache-2.0
// Distribution layer: special functions, intensity densities, grids,
// convolutions, and count pmfs, checked against brute-force oracles.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "photostat/bsv.hpp"
#include "photostat/convolve.hpp"
#include "photostat/count_pmf.hpp"
#include "photostat/grid.hpp"
#include "photostat/rng.hpp"
#include "photostat/special.hpp"
#include "support/oracles.hpp"

using namespace photostat;

TEST_CASE("double factorial matches iteration and rejects bad input") {
    CHECK(double_factorial(-1) == 1);
    CHECK(double_factorial(1) == 1);
    CHECK(double_factorial(3) == 3);
    CHECK(double_factorial(5) == 15);
    CHECK(double_factorial(7) == 105);
    CHECK(double_factorial(11) == 10395);
    for (int k = 1; k <= 33; k += 2) {
        CHECK(static_cast<double>(double_factorial(k)) ==
              doctest::Approx(oracle::double_factorial_iter(k)).epsilon(1e-13));
    }
    CHECK_THROWS_AS(double_factorial(0), std::domain_error);
    CHECK_THROWS_AS(double_factorial(4), std::domain_error);
    CHECK_THROWS_AS(double_factorial(-3), std::domain_error);
}

TEST_CASE("log double factorial tracks the exact values and extends past them") {
    for (int k = 1; k <= 33; k += 2) {
        const double exact = std::log(static_cast<double>(double_factorial(k)));
        CHECK(log_double_factorial(k) == doctest::Approx(exact).epsilon(1e-14));
    }
    // 99!! = 99 * 97 * ... * 1, summed in logs.
    double ref = 0.0;
    for (int j = 99; j >= 1; j -= 2) ref += std::log(static_cast<double>(j));
    CHECK(log_double_factorial(99) == doctest::Approx(ref).epsilon(1e-13));
}

TEST_CASE("poisson log pmf agrees with a log-factorial oracle") {
    const int ks[] = {0, 1, 5, 65, 200};
    const double mus[] = {0.27, 1.0, 16.0, 100.0};
    for (int k : ks) {
        for (double mu : mus) {
            const double ref =
                (-mu + k * std::log(mu) - oracle::log_factorial_sum(k)) /
                std::log(10.0);
            CHECK(poisson_log_pmf(k, mu) ==
                  doctest::Approx(ref).epsilon(1e-12));
            CHECK(poisson_ln_pmf(k, mu) ==
                  doctest::Approx(ref * std::log(10.0)).epsilon(1e-12));
        }
    }
    CHECK(poisson_log_pmf(0, 0.0) == 0.0);
    CHECK(poisson_log_pmf(3, 0.0) == -INFINITY);
    // Tail is strictly decreasing beyond the mean.
    double prev = poisson_log_pmf(17, 16.0);
    for (int k = 18; k < 60; ++k) {
        const double cur = poisson_log_pmf(k, 16.0);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("incomplete gamma and friends") {
    // P(1/2, x) = erf(sqrt x).
    for (double x : {0.01, 0.3, 1.0, 4.0, 20.0}) {
        CHECK(gamma_p(0.5, x) ==
              doctest::Approx(std::erf(std::sqrt(x))).epsilon(1e-12));
        CHECK(gamma_p(0.5, x) + gamma_q(0.5, x) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
    // Chi-square with 2 dof is exponential with mean 2.
    for (double x : {0.5, 2.0, 9.21}) {
        CHECK(chi_square_sf(x, 2.0) ==
              doctest::Approx(std::exp(-0.5 * x)).epsilon(1e-12));
    }
    // Gamma CDF against adaptive Simpson away from the origin.
    const double shape = 2.5, scale = 1.7;
    auto pdf = [&](double t) {
        return std::pow(t, shape - 1.0) * std::exp(-t / scale) /
               (std::tgamma(shape) * std::pow(scale, shape));
    };
    const double got = gamma_cdf(6.0, shape, scale) - gamma_cdf(0.5, shape, scale);
    CHECK(got == doctest::Approx(oracle::simpson(pdf, 0.5, 6.0)).epsilon(1e-10));
}

TEST_CASE("normal tail quantile inverts erfc") {
    for (double p : {1.0, 0.5, 0.1, 1e-3, 1e-9}) {
        const double z = standard_normal_tail_quantile(p);
        CHECK(std::erfc(z / std::sqrt(2.0)) == doctest::Approx(p).epsilon(1e-10));
    }
    CHECK(standard_normal_tail_quantile(1.0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK_THROWS_AS(standard_normal_tail_quantile(0.0), std::domain_error);
    CHECK_THROWS_AS(standard_normal_tail_quantile(1.5), std::domain_error);
}

TEST_CASE("nonlinearity order validation and (2n-1)!!") {
    CHECK(NonlinearityOrder(1).odd_double_factorial() == 1);
    CHECK(NonlinearityOrder(2).odd_double_factorial() == 3);
    CHECK(NonlinearityOrder(3).odd_double_factorial() == 15);
    CHECK(NonlinearityOrder(4).odd_double_factorial() == 105);
    for (int n = 1; n <= 12; ++n) {
        CHECK(NonlinearityOrder(n).odd_double_factorial() ==
              double_factorial(2 * n - 1));
    }
    CHECK_THROWS_AS(NonlinearityOrder(0), std::domain_error);
    CHECK_THROWS_AS(NonlinearityOrder(13), std::domain_error);
    CHECK_THROWS_AS(NonlinearityOrder(-2), std::domain_error);
}

TEST_CASE("single-mode density: normalization, moments, shape") {
    const double mean = 1.3;
    auto p = [&](double x) { return bsv_single_mode_density(x, mean); };
    CHECK(oracle::integrate_half_line(p) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(oracle::integrate_half_line([&](double x) { return x * p(x); }) ==
          doctest::Approx(mean).epsilon(1e-10));
    // Second moment 3<N>^2 gives the g2 = 3 signature.
    CHECK(oracle::integrate_half_line([&](double x) { return x * x * p(x); }) ==
          doctest::Approx(3.0 * mean * mean).epsilon(1e-9));
    CHECK(p(0.01) > p(0.1));  // integrable divergence toward zero
    CHECK_THROWS_AS(bsv_single_mode_density(0.0, mean), std::domain_error);
    CHECK_THROWS_AS(bsv_single_mode_density(1.0, -1.0), std::domain_error);
}

TEST_CASE("order-1 law collapses to the single-mode density") {
    Rng rng(421);
    const NonlinearityOrder one(1);
    for (int i = 0; i < 100; ++i) {
        const double mean = 0.05 + 20.0 * rng.uniform();
        const double x = mean * (0.001 + 8.0 * rng.uniform());
        const double a = gamma_n_density(x, mean, one);
        const double b = bsv_single_mode_density(x, mean);
        CHECK(std::abs(a - b) <= 1e-12 * std::abs(b));
    }
}

TEST_CASE("order-n density normalizes with exact mean for n = 1..6") {
    for (int n = 1; n <= 6; ++n) {
        const NonlinearityOrder order(n);
        const double mean = 0.7 + 0.4 * n;
        auto p = [&](double x) { return gamma_n_density(x, mean, order); };
        CHECK(oracle::integrate_half_line(p, 12) ==
              doctest::Approx(1.0).epsilon(1e-8));
        CHECK(oracle::integrate_half_line([&](double x) { return x * p(x); },
                                          12) ==
              doctest::Approx(mean).epsilon(1e-7));
    }
}

TEST_CASE("order-n cdf integrates the density") {
    const NonlinearityOrder order(4);
    const double mean = 2.0;
    auto p = [&](double x) { return gamma_n_density(x, mean, order); };
    // Away from the origin the density is smooth; compare increments.
    const double pairs[][2] = {{0.2, 1.0}, {1.0, 4.0}, {4.0, 12.0}};
    for (const auto& pr : pairs) {
        const double inc = gamma_n_cdf(pr[1], mean, order) -
                           gamma_n_cdf(pr[0], mean, order);
        CHECK(inc == doctest::Approx(oracle::simpson(p, pr[0], pr[1]))
                         .epsilon(1e-9));
    }
    for (double x : {0.01, 0.5, 3.0, 50.0}) {
        CHECK(gamma_n_cdf(x, mean, order) + gamma_n_survival(x, mean, order) ==
              doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("order-n tail quantile round trip") {
    for (int n : {1, 3, 6}) {
        const NonlinearityOrder order(n);
        for (double p : {1e-2, 1e-6, 1e-9}) {
            const double x = gamma_n_tail_quantile(p, 1.4, order);
            CHECK(gamma_n_survival(x, 1.4, order) ==
                  doctest::Approx(p).epsilon(1e-8));
        }
    }
}

TEST_CASE("order-n moments match quadrature and the n = 1 closed form") {
    const double mean = 1.9;
    CHECK(gamma_n_moment(1, mean, NonlinearityOrder(3)) ==
          doctest::Approx(mean).epsilon(1e-14));
    CHECK(gamma_n_moment(2, mean, NonlinearityOrder(1)) ==
          doctest::Approx(3.0 * mean * mean).epsilon(1e-14));
    for (int n : {2, 4}) {
        const NonlinearityOrder order(n);
        auto p = [&](double x) { return gamma_n_density(x, mean, order); };
        const double m2 =
            oracle::integrate_half_line([&](double x) { return x * x * p(x); },
                                        12);
        CHECK(gamma_n_moment(2, mean, order) ==
              doctest::Approx(m2).epsilon(1e-7));
    }
}

TEST_CASE("half-normal coordinate maps invert each other") {
    const NonlinearityOrder order(4);
    for (double z : {0.2, 1.0, 3.3}) {
        const double x = gamma_n_from_z(z, 0.8, order);
        CHECK(gamma_n_z(x, 0.8, order) == doctest::Approx(z).epsilon(1e-12));
    }
}

TEST_CASE("log-grid discretization conserves mass and moments") {
    for (int n : {1, 4}) {
        for (double mean : {0.27, 16.0}) {
            GridConfig cfg;
            cfg.bins = 4096;
            // Tight tail so the truncated upper tail cannot eat into the
            // second moment (it scales like x_hi^2 * tail_mass).
            cfg.tail_mass = 1e-12;
            const auto d = discretize(mean, NonlinearityOrder(n), cfg);
            d.validate();
            CHECK(d.total_mass() + d.truncated_tail_mass ==
                  doctest::Approx(1.0).epsilon(1e-9));
            CHECK(d.mean() == doctest::Approx(mean).epsilon(1e-4));
            CHECK(d.second_moment() ==
                  doctest::Approx(gamma_n_moment(2, mean, NonlinearityOrder(n)))
                      .epsilon(1e-3));
        }
    }
    GridConfig coarse;
    coarse.bins = 4;
    coarse.norm_tol = 1e-9;
    CHECK_THROWS_AS(discretize(1.0, NonlinearityOrder(4), coarse),
                    std::runtime_error);
    CHECK_THROWS_AS(discretize(-1.0, NonlinearityOrder(1), GridConfig{}),
                    std::domain_error);
}

TEST_CASE("lattice discretization: mass accounting and mean") {
    const NonlinearityOrder order(1);
    const double mean = 0.5;
    const double upper = gamma_n_tail_quantile(1e-9, mean, order);
    const auto d = discretize_lattice(mean, order, 1 << 14, upper);
    CHECK(d.kind == GridKind::linear);
    CHECK(d.total_mass() + d.truncated_tail_mass ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(d.mean() == doctest::Approx(mean).epsilon(1e-3));
    CHECK(d.step() == doctest::Approx(upper / double((1 << 14) - 1)));
}

TEST_CASE("convolve_modes: identity, exponential law, mean preservation") {
    const NonlinearityOrder order(1);

    SUBCASE("m = 1 returns the input") {
        const double upper = suggested_lattice_upper(1.0, order, 1);
        const auto d = discretize_lattice(1.0, order, 4096, upper);
        const auto out = convolve_modes(d, 1, 1.0);
        REQUIRE(out.mass.size() == d.mass.size());
        for (std::size_t i = 0; i < d.mass.size(); ++i) {
            CHECK(out.mass[i] == d.mass[i]);
        }
    }

    SUBCASE("two half-gammas make an exponential") {
        const double total = 1.0;
        const double upper = suggested_lattice_upper(total, order, 2);
        const auto single = discretize_lattice(total / 2, order, 1 << 15, upper);
        const auto sum = convolve_modes(single, 2, total);
        const double h = sum.step();
        // Sum of two Gamma(1/2, 1) is Exp(1); compare interior densities.
        for (double x = 0.05; x <= 3.0; x += 0.22) {
            const auto j = static_cast<std::size_t>(std::lround(x / h));
            const double est = sum.mass[j] / h;
            const double ref = std::exp(-static_cast<double>(j) * h);
            CHECK(std::abs(est - ref) <= 1e-4 * ref);
        }
    }

    SUBCASE("total mean preserved across mode counts") {
        for (int m : {1, 2, 4, 16, 64}) {
            const double total = 2.0;
            const double upper = suggested_lattice_upper(total, order, m);
            const auto single =
                discretize_lattice(total / m, order, 1 << 14, upper);
            const auto sum = convolve_modes(single, m, total);
            CHECK(sum.mean() == doctest::Approx(total).epsilon(1e-3));
        }
    }

    SUBCASE("mean mismatch is rejected") {
        const double upper = suggested_lattice_upper(1.0, order, 1);
        const auto d = discretize_lattice(1.0, order, 2048, upper);
        CHECK_THROWS_AS(convolve_modes(d, 4, 1.0), std::invalid_argument);
    }

    SUBCASE("log grids are rejected") {
        GridConfig cfg;
        cfg.bins = 512;
        const auto d = discretize(1.0, order, cfg);
        CHECK_THROWS_AS(convolve_modes(d, 2, 1.0), std::invalid_argument);
    }
}

TEST_CASE("degenerate rate density reproduces Poisson exactly") {
    DiscretizedDensity point;
    point.grid = {3.5};
    point.mass = {1.0};
    point.kind = GridKind::logarithmic;
    const auto mixed = mixed_poisson_pmf(point, 64);
    const auto pois = poisson_pmf(3.5, 64);
    REQUIRE(mixed.probs.size() == pois.probs.size());
    for (int k = 0; k <= 64; ++k) {
        CHECK(mixed.probs[k] == pois.probs[k]);  // same code path, bitwise
    }
}

TEST_CASE("poisson_pmf sums to one and matches the log form") {
    const auto pmf = poisson_pmf(16.0, 256);
    pmf.validate();
    CHECK(pmf.total() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pmf.mean() == doctest::Approx(16.0).epsilon(1e-10));
    for (int k : {0, 5, 16, 40}) {
        CHECK(pmf.log10_probs[k] ==
              doctest::Approx(poisson_log_pmf(k, 16.0)).epsilon(1e-10));
    }
    // Large-mean row exercises the per-entry log branch.
    const auto big = poisson_pmf(800.0, 1200);
    big.validate();
    CHECK(big.mean() == doctest::Approx(800.0).epsilon(1e-6));
}

TEST_CASE("electron pmf: quadrature vs log-grid mixing cross-check") {
    const NonlinearityOrder order(4);
    const auto direct = single_mode_electron_pmf(1.0, order, 512);
    GridConfig cfg;
    cfg.bins = 1 << 14;
    const auto density = discretize(1.0, order, cfg);
    const auto viaGrid = mixed_poisson_pmf(density, 512);
    CHECK(tv_distance(direct, viaGrid) < 1e-6);
}

TEST_CASE("electron pmf basic shape and mean accuracy") {
    const NonlinearityOrder order(4);
    const auto pmf = electron_count_pmf(1.0, order, 1, 4096);
    pmf.validate();
    CHECK(pmf.truncation_mass < 1e-6);
    // The truncated tail sits at k ~ k_max, so the mean deficit is about
    // k_max * truncation_mass; 1e-3 would be too tight for this support.
    CHECK(pmf.mean() == doctest::Approx(1.0).epsilon(5e-3));
    // Zero-count bin dominates; variance is super-Poissonian.
    for (int k = 1; k <= pmf.k_max(); ++k) CHECK(pmf.probs[0] >= pmf.probs[k]);
    CHECK(pmf.variance() > pmf.mean());
}

TEST_CASE("serial and parallel single-mode pmfs are bitwise identical") {
    const NonlinearityOrder order(4);
    const auto par = single_mode_electron_pmf(0.7, order, 256);
    const auto ser = single_mode_electron_pmf_serial(0.7, order, 256);
    REQUIRE(par.probs.size() == ser.probs.size());
    for (std::size_t i = 0; i < par.probs.size(); ++i) {
        CHECK(par.probs[i] == ser.probs[i]);
    }
}

TEST_CASE("multimode pmf equals brute-force self-convolution") {
    const NonlinearityOrder order(4);

    SUBCASE("small support, direct path") {
        // Mean low enough that k_max = 1023 captures > 1 - 1e-6 of the
        // heavy tail while the support stays on the direct path.
        const int k_max = 1023;
        const auto single = single_mode_electron_pmf(0.3 / 3, order, k_max);
        const auto brute = oracle::self_convolve_brute(
            single.probs, 3, static_cast<std::size_t>(k_max) + 1);
        const auto fast = electron_count_pmf(0.3, order, 3, k_max);
        for (int k = 0; k <= k_max; ++k) {
            CHECK(fast.probs[k] == doctest::Approx(brute[k]).epsilon(1e-9));
        }
    }

    SUBCASE("large support, transform path") {
        const int k_max = 2048;
        const auto single = single_mode_electron_pmf(0.4, order, k_max);
        const auto brute = oracle::self_convolve_brute(
            single.probs, 2, static_cast<std::size_t>(k_max) + 1);
        const auto fast = electron_count_pmf(0.8, order, 2, k_max);
        for (int k = 0; k <= k_max; ++k) {
            CHECK(fast.probs[k] == doctest::Approx(brute[k]).epsilon(1e-8));
        }
    }
}

TEST_CASE("insufficient support raises TruncationError with captured mass") {
    try {
        electron_count_pmf(16.0, NonlinearityOrder(4), 1, 32);
        FAIL("expected TruncationError");
    } catch (const TruncationError& e) {
        CHECK(e.captured_mass > 0.0);
        CHECK(e.captured_mass < 1.0 - 1e-6);
        CHECK(std::string(e.what()).find("32") != std::string::npos);
    }
}

TEST_CASE("heavy tail of the squeezed-drive pmf") {
    const auto pmf = electron_count_pmf(0.27, NonlinearityOrder(4), 1, 1024);
    const double lt = pmf.log10_survival(65);
    CHECK(lt > -6.0);
    CHECK(lt < -2.0);
    // Poisson at the same mean is dozens of decades below.
    CHECK(poisson_log_pmf(65, 0.27) < -100.0);
}

TEST_CASE("admixture: identity at zero and Poisson additivity oracle") {
    const auto base = poisson_pmf(2.0, 64);

    SUBCASE("zero admixture is the identity") {
        const auto same = admixture_pmf(base, 0.0);
        for (int k = 0; k <= 64; ++k) CHECK(same.probs[k] == base.probs[k]);
    }

    SUBCASE("poisson + poisson = poisson") {
        const auto mixed = admixture_pmf(base, 1.5);
        auto ref = poisson_pmf(3.5, 64);
        const double norm = ref.total();
        CHECK(mixed.total() == doctest::Approx(1.0).epsilon(1e-12));
        for (int k = 0; k <= 64; ++k) {
            CHECK(mixed.probs[k] ==
                  doctest::Approx(ref.probs[k] / norm).epsilon(1e-10));
        }
    }

    SUBCASE("distortion grows with the admixed mean") {
        const auto squeezed =
            electron_count_pmf(1.0, NonlinearityOrder(4), 1, 4096);
        const double tv_small = tv_distance(squeezed, admixture_pmf(squeezed, 0.01));
        const double tv_mid = tv_distance(squeezed, admixture_pmf(squeezed, 0.1));
        const double tv_big = tv_distance(squeezed, admixture_pmf(squeezed, 0.5));
        CHECK(tv_small < tv_mid);
        CHECK(tv_mid < tv_big);
        CHECK(tv_small < 0.02);
        CHECK(tv_big > 0.1);
    }
}

TEST_CASE("k-emitter pmf against the brute oracle") {
    const auto single = poisson_pmf(1.0, 128);

    SUBCASE("one emitter is the identity") {
        const auto same = k_emitter_pmf(single, 1);
        for (std::size_t i = 0; i < single.probs.size(); ++i) {
            CHECK(same.probs[i] == single.probs[i]);
        }
    }

    SUBCASE("three emitters") {
        const auto brute =
            oracle::self_convolve_brute(single.probs, 3, single.probs.size());
        const auto fast = k_emitter_pmf(single, 3);
        for (std::size_t i = 0; i < brute.size(); ++i) {
            CHECK(fast.probs[i] == doctest::Approx(brute[i]).epsilon(1e-12));
        }
    }

    SUBCASE("mean scales with the emitter count") {
        const auto four = k_emitter_pmf(single, 4);
        CHECK(four.mean() == doctest::Approx(4.0).epsilon(1e-9));
    }
}

TEST_CASE("pairwise convolution matches the defining double sum") {
    const auto a = poisson_pmf(0.8, 24);
    const auto b = poisson_pmf(2.2, 40);
    const auto got = convolve_pmf(a, b);
    const auto ref = oracle::convolve_brute(a.probs, b.probs);
    REQUIRE(got.probs.size() == 41);
    for (int k = 0; k <= 40; ++k) {
        CHECK(got.probs[k] == doctest::Approx(ref[k]).epsilon(1e-13));
    }
}

TEST_CASE("total variation distance basics") {
    const auto a = poisson_pmf(1.0, 64);
    CHECK(tv_distance(a, a) == 0.0);
    CountPmf zero_only;
    zero_only.probs = {1.0};
    zero_only.log10_probs = {0.0};
    CountPmf one_only;
    one_only.probs = {0.0, 1.0};
    one_only.log10_probs = {-INFINITY, 0.0};
    CHECK(tv_distance(zero_only, one_only) == doctest::Approx(1.0));
    CountPmf half;
    half.probs = {0.5, 0.5};
    half.log10_probs = {std::log10(0.5), std::log10(0.5)};
    CHECK(tv_distance(zero_only, half) == doctest::Approx(0.5));
}

TEST_CASE("log10 survival sums the stored tail") {
    const auto pmf = poisson_pmf(4.0, 256);
    long double tail = 0.0;
    for (int k = 10; k <= 256; ++k) tail += pmf.probs[k];
    CHECK(pmf.log10_survival(10) ==
          doctest::Approx(std::log10(static_cast<double>(tail))).epsilon(1e-10));
    CHECK(pmf.log10_survival(0) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(pmf.log10_survival(257) == -INFINITY);
}
