#include "spinboost/spin_algebra.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "spinboost/errors.hpp"

namespace spinboost::spin_algebra {

namespace {

constexpr double kAcceptTol = 1e-8;  // Hermiticity / trace / positivity acceptance
constexpr double kImagTol = 1e-8;    // discarded imaginary parts of rho*rho~ spectrum
// Floors for the spectrum of rho * rho~. The square root turns an
// eigenvalue error e into an error sqrt(e), so solver noise on exact-zero
// eigenvalues must be clamped, not carried. The absolute term covers the
// near-rank-deficient case where even the largest eigenvalue is tiny while
// the product's entry noise stays at machine scale (norm(rho) is 1).
constexpr double kRelativeFloor = 1e-12;
constexpr double kAbsoluteFloor = 1e-13;

const Eigen::Matrix4cd& sigma_yy() {
    static const Eigen::Matrix4cd syy = [] {
        Eigen::Matrix2cd sy;
        sy << 0.0, std::complex<double>(0.0, -1.0),  //
            std::complex<double>(0.0, 1.0), 0.0;
        Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k)
                    for (int l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = sy(i, j) * sy(k, l);
        return m;
    }();
    return syy;
}

/// Descending square roots of the spectrum of rho * rho~.
std::array<double, 4> wootters_lambdas(const Eigen::Matrix4cd& rho) {
    const Eigen::Matrix4cd product = rho * (sigma_yy() * rho.conjugate() * sigma_yy());
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> solver(product, false);
    if (solver.info() != Eigen::Success) {
        throw numerical_error("concurrence: eigen-solver failed on rho * rho~");
    }
    std::array<double, 4> re{};
    double max_re = 0.0;
    for (int i = 0; i < 4; ++i) {
        const auto ev = solver.eigenvalues()(i);
        if (std::abs(ev.imag()) > kImagTol) {
            throw numerical_error("concurrence: rho * rho~ spectrum has large imaginary part");
        }
        re[i] = ev.real();
        max_re = std::max(max_re, re[i]);
    }
    const double floor = std::max(kRelativeFloor * max_re, kAbsoluteFloor);
    std::array<double, 4> lambdas{};
    for (int i = 0; i < 4; ++i) {
        const double clamped = (re[i] < floor) ? 0.0 : re[i];
        lambdas[i] = std::sqrt(clamped);
    }
    std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
    return lambdas;
}

}  // namespace

PureState4 bell_state(BellKind kind) {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Vector4cd v = Eigen::Vector4cd::Zero();
    switch (kind) {
        case BellKind::phi_plus: v(0) = r; v(3) = r; break;
        case BellKind::phi_minus: v(0) = r; v(3) = -r; break;
        case BellKind::psi_plus: v(1) = r; v(2) = r; break;
        case BellKind::psi_minus: v(1) = r; v(2) = -r; break;
    }
    return PureState4(v);
}

PureState4::PureState4(const Eigen::Vector4cd& amplitudes) : amp_(amplitudes) {
    const double n = amp_.norm();
    if (!(std::abs(n - 1.0) <= 1e-12)) {
        throw std::domain_error("PureState4: amplitudes must have unit norm");
    }
    amp_ /= n;
}

DensityMatrix4::DensityMatrix4(const Eigen::Matrix4cd& rho) {
    if (!rho.allFinite()) {
        throw std::domain_error("DensityMatrix4: non-finite entries");
    }
    const double herm_defect = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    const double trace_defect = std::abs(rho.trace() - std::complex<double>(1.0));
    if (herm_defect > kAcceptTol || trace_defect > kAcceptTol) {
        throw std::domain_error("DensityMatrix4: Hermiticity/trace defect exceeds 1e-8");
    }
    rho_ = 0.5 * (rho + rho.adjoint());
    rho_ /= rho_.trace().real();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(rho_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw numerical_error("DensityMatrix4: eigenvalue check failed");
    }
    if (solver.eigenvalues().minCoeff() < -kAcceptTol) {
        throw std::domain_error("DensityMatrix4: negative eigenvalue beyond tolerance");
    }
}

Eigen::Matrix4cd spin_flip(const DensityMatrix4& rho) {
    return sigma_yy() * rho.matrix().conjugate() * sigma_yy();
}

double concurrence(const DensityMatrix4& rho) {
    return std::max(0.0, concurrence_unclamped(rho));
}

double concurrence_unclamped(const DensityMatrix4& rho) {
    const auto l = wootters_lambdas(rho.matrix());
    return l[0] - l[1] - l[2] - l[3];
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, Eigen::Index dim_left,
                            Eigen::Index dim_right, Side traced_out) {
    if (dim_left < 1 || dim_right < 1 || rho.rows() != dim_left * dim_right ||
        rho.cols() != dim_left * dim_right) {
        throw std::domain_error("partial_trace: dimensions do not factorize the matrix");
    }
    if (traced_out == Side::right) {
        ComplexMatrix out = ComplexMatrix::Zero(dim_left, dim_left);
        for (Eigen::Index i = 0; i < dim_left; ++i)
            for (Eigen::Index j = 0; j < dim_left; ++j)
                for (Eigen::Index k = 0; k < dim_right; ++k)
                    out(i, j) += rho(i * dim_right + k, j * dim_right + k);
        return out;
    }
    ComplexMatrix out = ComplexMatrix::Zero(dim_right, dim_right);
    for (Eigen::Index i = 0; i < dim_right; ++i)
        for (Eigen::Index j = 0; j < dim_right; ++j)
            for (Eigen::Index k = 0; k < dim_left; ++k)
                out(i, j) += rho(k * dim_right + i, k * dim_right + j);
    return out;
}

double entanglement_entropy(const Eigen::VectorXcd& psi, Eigen::Index dim_left,
                            Eigen::Index dim_right) {
    if (psi.size() != dim_left * dim_right) {
        throw std::domain_error("entanglement_entropy: dimensions do not factorize the state");
    }
    if (std::abs(psi.norm() - 1.0) > 1e-12) {
        throw std::domain_error("entanglement_entropy: state must have unit norm");
    }
    // Schmidt coefficients are the singular values of the reshaped amplitudes
    ComplexMatrix m(dim_left, dim_right);
    for (Eigen::Index i = 0; i < dim_left; ++i)
        for (Eigen::Index j = 0; j < dim_right; ++j) m(i, j) = psi(i * dim_right + j);
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    double entropy = 0.0;
    for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
        const double p = svd.singularValues()(k) * svd.singularValues()(k);
        if (p > 0.0) entropy -= p * std::log2(p);
    }
    return entropy;
}

double entanglement_entropy(const PureState4& psi) {
    return entanglement_entropy(Eigen::VectorXcd(psi.amplitudes()), 2, 2);
}

}  // namespace spinboost::spin_algebra
