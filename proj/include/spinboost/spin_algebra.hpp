#pragma once

#include <complex>

#include <Eigen/Dense>

namespace spinboost::spin_algebra {

/// Basis order for all two-qubit objects, fixed repository-wide:
///   index 0 = |up,up>, 1 = |up,down>, 2 = |down,up>, 3 = |down,down>
/// (rest-frame z-spin, particle A tensor particle B).

using ComplexMatrix = Eigen::MatrixXcd;

enum class BellKind { phi_plus, phi_minus, psi_plus, psi_minus };

/// Which tensor factor an operation traces out.
enum class Side { left, right };

/// Two-qubit pure state: 4 complex amplitudes of unit norm.
class PureState4 {
public:
    explicit PureState4(const Eigen::Vector4cd& amplitudes);

    const Eigen::Vector4cd& amplitudes() const { return amp_; }
    Eigen::Matrix4cd density_matrix() const { return amp_ * amp_.adjoint(); }

private:
    Eigen::Vector4cd amp_;
};

/// Two-qubit spin density matrix rho_AB. Accepts input whose Hermiticity
/// and trace defects are below 1e-8 (quadrature-assembled matrices carry
/// integration error), then symmetrizes and renormalizes; the stored
/// matrix is exactly Hermitian with unit trace. Eigenvalues must be
/// >= -1e-8 on input.
class DensityMatrix4 {
public:
    explicit DensityMatrix4(const Eigen::Matrix4cd& rho);
    explicit DensityMatrix4(const PureState4& psi) : DensityMatrix4(psi.density_matrix()) {}

    const Eigen::Matrix4cd& matrix() const { return rho_; }

private:
    Eigen::Matrix4cd rho_;
};

/// The four standard Bell states, e.g. phi+ = (|uu> + |dd>)/sqrt(2),
/// psi- = (|ud> - |du>)/sqrt(2).
PureState4 bell_state(BellKind kind);

/// Spin-flipped ("time-reversed") matrix
///   rho~ = (sigma_y x sigma_y) conj(rho) (sigma_y x sigma_y).
Eigen::Matrix4cd spin_flip(const DensityMatrix4& rho);

/// Wootters concurrence: C = max(lambda1 - lambda2 - lambda3 - lambda4, 0)
/// where lambda_i are the descending square roots of the eigenvalues of
/// rho * rho~. The product is non-Hermitian, so a general eigen-solver is
/// used; imaginary parts below 1e-8 are discarded and real parts are
/// clamped at zero (with a relative floor absorbing the round-off of
/// rank-deficient products) before the square root.
double concurrence(const DensityMatrix4& rho);

/// The unclamped pre-image lambda1 - lambda2 - lambda3 - lambda4.
/// Negative past the separability boundary; used for root-finding where
/// the clamped concurrence is identically zero.
double concurrence_unclamped(const DensityMatrix4& rho);

/// Partial trace of a density matrix on H_left (x) H_right, tracing out
/// the named factor. Trace-preserving; Hermitian output for Hermitian
/// input. Throws std::domain_error if rho is not (dim_left*dim_right)^2.
ComplexMatrix partial_trace(const ComplexMatrix& rho, Eigen::Index dim_left,
                            Eigen::Index dim_right, Side traced_out);

/// Von Neumann entropy (base-2) of either marginal of a pure state on
/// H_left (x) H_right, given as amplitudes with index i*dim_right + j.
/// Zero exactly when the state is a product across the cut.
double entanglement_entropy(const Eigen::VectorXcd& psi, Eigen::Index dim_left,
                            Eigen::Index dim_right);

/// Two-qubit convenience overload for the A|B cut.
double entanglement_entropy(const PureState4& psi);

}  // namespace spinboost::spin_algebra
