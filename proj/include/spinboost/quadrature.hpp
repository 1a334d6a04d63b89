#pragma once

#include <vector>

namespace spinboost::quadrature {

struct NodeWeight {
    double node;
    double weight;
};

/// Gauss-Legendre nodes and weights on [-1, 1], exact for polynomials of
/// degree 2n-1. Newton iteration on P_n from the asymptotic root estimate.
std::vector<NodeWeight> gauss_legendre(int n);

/// The same rule mapped affinely to [a, b].
std::vector<NodeWeight> gauss_legendre(int n, double a, double b);

}  // namespace spinboost::quadrature
