#pragma once

#include <cmath>
#include <vector>

namespace envlab {

// k-th derivative of f at x from symmetric central differences
//   h^-k * sum_j (-1)^j C(k, j) f(x + (k/2 - j) h),
// whose error expands in even powers of h, extrapolated over the steps
// h0, h0/2, ..., h0/2^(levels-1).
template <class F>
double richardson_derivative(const F& f, double x, int k, double h0, int levels) {
    if (k == 0) return f(x);
    std::vector<double> binom(static_cast<std::size_t>(k) + 1, 1.0);
    for (int j = 1; j <= k; ++j) binom[j] = binom[j - 1] * (k - j + 1) / j;

    auto central = [&](double h) {
        double acc = 0.0;
        for (int j = 0; j <= k; ++j) {
            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
            acc += sign * binom[j] * f(x + (0.5 * k - j) * h);
        }
        return acc / std::pow(h, k);
    };

    std::vector<std::vector<double>> table(static_cast<std::size_t>(levels));
    double h = h0;
    for (int i = 0; i < levels; ++i, h *= 0.5) {
        table[i].push_back(central(h));
        double factor = 4.0;
        for (int j = 1; j <= i; ++j, factor *= 4.0) {
            table[i].push_back(table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (factor - 1.0));
        }
    }
    return table.back().back();
}

}  // namespace envlab
