#include "spinboost/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinboost::quadrature {

std::vector<NodeWeight> gauss_legendre(int n) {
    if (n < 1) throw std::domain_error("gauss_legendre: need at least one node");
    std::vector<NodeWeight> rule(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi-style initial guess for the i-th root of P_n
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // recurrence: (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
            double p0 = 1.0, p1 = x;
            for (int k = 1; k < n; ++k) {
                const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule[i] = {-x, w};             // roots found in descending order
        rule[n - 1 - i] = {x, w};
    }
    return rule;
}

std::vector<NodeWeight> gauss_legendre(int n, double a, double b) {
    auto rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double halfwidth = 0.5 * (b - a);
    for (auto& nw : rule) {
        nw.node = mid + halfwidth * nw.node;
        nw.weight *= halfwidth;
    }
    return rule;
}

}  // namespace spinboost::quadrature
