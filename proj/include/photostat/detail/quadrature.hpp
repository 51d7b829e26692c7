// SPDX-License-Identifier: Apache-2.0
#ifndef PHOTOSTAT_DETAIL_QUADRATURE_HPP
#define PHOTOSTAT_DETAIL_QUADRATURE_HPP

#include <array>
#include <cstddef>

namespace photostat::detail {

// Gauss-Legendre abscissas/weights on [-1, 1], positive half; the
// negative half mirrors with equal weight.

inline constexpr std::array<double, 4> gl8_x = {
    0.1834346424956498, 0.5255324099163290,
    0.7966664774136267, 0.9602898564975363};
inline constexpr std::array<double, 4> gl8_w = {
    0.3626837833783620, 0.3137066458778873,
    0.2223810344533745, 0.1012285362903763};

inline constexpr std::array<double, 8> gl16_x = {
    0.0950125098376374, 0.2816035507792589, 0.4580167776572274,
    0.6178762444026438, 0.7554044083550030, 0.8656312023878318,
    0.9445750230732326, 0.9894009349916499};
inline constexpr std::array<double, 8> gl16_w = {
    0.1894506104550685, 0.1826034150449236, 0.1691565193950025,
    0.1495959888165767, 0.1246289712555339, 0.0951585116824928,
    0.0622535239386479, 0.0271524594117541};

template <class F>
double gauss8(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < gl8_x.size(); ++i) {
        acc += gl8_w[i] * (f(c - h * gl8_x[i]) + f(c + h * gl8_x[i]));
    }
    return acc * h;
}

template <class F>
double gauss16(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double acc = 0.0;
    for (std::size_t i = 0; i < gl16_x.size(); ++i) {
        acc += gl16_w[i] * (f(c - h * gl16_x[i]) + f(c + h * gl16_x[i]));
    }
    return acc * h;
}

}  // namespace photostat::detail

#endif
