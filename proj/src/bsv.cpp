// SPDX-License-Identifier: Apache-2.0
#include "photostat/bsv.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "photostat/special.hpp"

namespace photostat {

NonlinearityOrder::NonlinearityOrder(int order) : n(order) {
    if (order < 1 || order > 12) {
        throw std::domain_error("NonlinearityOrder: n must be in [1, 12], got " +
                                std::to_string(order));
    }
}

std::int64_t NonlinearityOrder::odd_double_factorial() const {
    return double_factorial(2 * n - 1);
}

namespace {

void check_args(double value, double mean, const char* who) {
    if (!(value > 0.0) || !(mean > 0.0)) {
        throw std::domain_error(std::string(who) + ": need N > 0 and mean > 0");
    }
}

}  // namespace

double bsv_single_mode_density(double photon_number, double mean) {
    check_args(photon_number, mean, "bsv_single_mode_density");
    return std::exp(-photon_number / (2.0 * mean)) /
           std::sqrt(2.0 * std::numbers::pi * mean * photon_number);
}

double gamma_n_log_density(double value, double mean, NonlinearityOrder order) {
    check_args(value, mean, "gamma_n_density");
    const int n = order.n;
    const double ldf = log_double_factorial(2 * n - 1);
    const double inv2n = 1.0 / (2.0 * n);
    // z^2 = ((2n-1)!! N / <N>)^{1/n}
    const double z2 = std::exp((ldf + std::log(value / mean)) / n);
    return ldf * inv2n - std::log(static_cast<double>(n)) -
           0.5 * std::log(2.0 * std::numbers::pi) - inv2n * std::log(mean) -
           (1.0 - inv2n) * std::log(value) - 0.5 * z2;
}

double gamma_n_density(double value, double mean, NonlinearityOrder order) {
    return std::exp(gamma_n_log_density(value, mean, order));
}

double gamma_n_z(double value, double mean, NonlinearityOrder order) {
    if (!(mean > 0.0)) throw std::domain_error("gamma_n_z: need mean > 0");
    if (value < 0.0) throw std::domain_error("gamma_n_z: need N >= 0");
    if (value == 0.0) return 0.0;
    const double ldf = log_double_factorial(2 * order.n - 1);
    return std::exp((ldf + std::log(value / mean)) / (2.0 * order.n));
}

double gamma_n_from_z(double z, double mean, NonlinearityOrder order) {
    if (z < 0.0) throw std::domain_error("gamma_n_from_z: z must be >= 0");
    if (z == 0.0) return 0.0;
    const double ldf = log_double_factorial(2 * order.n - 1);
    return mean * std::exp(2.0 * order.n * std::log(z) - ldf);
}

double gamma_n_cdf(double value, double mean, NonlinearityOrder order) {
    if (value <= 0.0) return 0.0;
    return std::erf(gamma_n_z(value, mean, order) / std::sqrt(2.0));
}

double gamma_n_survival(double value, double mean, NonlinearityOrder order) {
    if (value <= 0.0) return 1.0;
    return std::erfc(gamma_n_z(value, mean, order) / std::sqrt(2.0));
}

double gamma_n_tail_quantile(double tail_prob, double mean, NonlinearityOrder order) {
    const double z = standard_normal_tail_quantile(tail_prob);
    return gamma_n_from_z(z, mean, order);
}

double gamma_n_moment(int r, double mean, NonlinearityOrder order) {
    if (r < 0) throw std::domain_error("gamma_n_moment: r must be >= 0");
    if (r == 0) return 1.0;
    // E[(<N> z^{2n}/(2n-1)!!)^r] with E[z^{2nr}] = (2nr-1)!!
    const double lm = log_double_factorial(2 * order.n * r - 1) -
                      static_cast<double>(r) * log_double_factorial(2 * order.n - 1);
    return std::exp(static_cast<double>(r) * std::log(mean) + lm);
}

}  // namespace photostat
