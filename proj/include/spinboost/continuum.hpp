#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "spinboost/kinematics.hpp"
#include "spinboost/spin_algebra.hpp"

namespace spinboost::continuum {

/// Node counts and radial cutoff for the (p, cos phi) product quadrature
/// (Gauss-Legendre in both directions). The azimuth never appears: for
/// isotropic wavepackets it is integrated analytically.
struct QuadratureSpec {
    int n_radial = 128;
    int n_polar = 64;
    double p_max = 0.0;

    /// Default cutoff 8 * max(sigma_r, m); node counts as above.
    static QuadratureSpec defaults_for(double sigma_r, double m);

    /// Node counts >= 8 and p_max >= 6 sigma_r, else std::domain_error.
    void validate(double sigma_r) const;

    QuadratureSpec doubled() const { return {2 * n_radial, 2 * n_polar, p_max}; }
};

/// Radial momentum amplitude f(p) = sqrt(exp(-p^2 / 2 sigma_r^2) / N),
/// normalized against the invariant measure d~p = d^3p / (2 E):
/// integral of |f|^2 d~p = 1.
class MomentumWavepacket {
public:
    /// Computes and caches N(sigma_r); throws numerical_error if the
    /// normalization quadrature fails its convergence check.
    MomentumWavepacket(double sigma_r, double m, const QuadratureSpec& quad);
    MomentumWavepacket(double sigma_r, double m);

    double sigma_r() const { return sigma_r_; }
    double m() const { return m_; }
    double norm() const { return norm_; }

    /// |f(p)|^2 = exp(-p^2 / 2 sigma_r^2) / N.
    double density(double p) const;

private:
    double sigma_r_, m_, norm_;
};

/// Trace-preserving completely positive map on single-spin (2x2) density
/// matrices, stored as a 4x4 superoperator acting on row-major
/// vectorizations: vec(rho)_{2i+j} = rho_{ij}.
class SpinChannel {
public:
    explicit SpinChannel(const Eigen::Matrix4cd& superoperator);

    const Eigen::Matrix4cd& superoperator() const { return superop_; }

    Eigen::Matrix2cd apply(const Eigen::Matrix2cd& rho) const;

    /// Applies the map to one spin of a two-qubit state (qubit 0 = left
    /// factor, 1 = right factor in the fixed basis order).
    Eigen::Matrix4cd apply_to_qubit(const Eigen::Matrix4cd& rho, int qubit) const;

    /// Choi matrix (sum_ij E(|i><j|) (x) |i><j|); positive semidefinite
    /// exactly when the map is completely positive.
    Eigen::Matrix4cd choi_matrix() const;

    /// Max deviation of trace(E(rho)) from trace(rho) over a basis.
    double trace_preservation_defect() const;

    static SpinChannel identity();

private:
    Eigen::Matrix4cd superop_;
};

/// N(sigma_r) = integral of exp(-p^2 / 2 sigma_r^2) d^3p / (2 E).
/// Recomputes at doubled node counts; a relative change above 1e-6 raises
/// numerical_error, otherwise the doubled-grid value is returned.
double normalization_constant(double sigma_r, double m, const QuadratureSpec& quad);

/// The momentum-averaged spin decoherence channel of a z-boost:
///
///   E_xi(rho) = integral |f(p)|^2 U^(p) rho U^(p)+ d~p
///
/// with U^(p) the Wigner rotation at rapidity xi. The azimuth integral is
/// analytic: terms linear in e^{+-i theta} vanish for isotropic |f|^2,
/// leaving per-node weights alpha^2 on the identity part and beta^2 on the
/// spin-flip part. Momentum relabeling is omitted: the trace over momentum
/// makes it unobservable under the invariant measure. The weights are
/// evaluated at quad and at quad.doubled(); a relative disagreement above
/// 1e-6 raises numerical_error, otherwise the doubled-grid channel is
/// returned.
SpinChannel spin_channel(const MomentumWavepacket& pkt, const kinematics::Rapidity& xi,
                         const QuadratureSpec& quad);

/// The xi -> infinity channel, built directly from the closed-form limits
/// of the rotation parameters (no large-xi evaluation).
SpinChannel spin_channel_limit(const MomentumWavepacket& pkt, const QuadratureSpec& quad);

/// Reduced two-spin state seen by the boosted observer when the momenta
/// are in the product wavepacket: (E_xi (x) E_xi)(spin_in). Valid exactly
/// for separable momentum amplitudes g = chi f(p) f(q).
spin_algebra::DensityMatrix4 boosted_spin_density(const spin_algebra::DensityMatrix4& spin_in,
                                                  const MomentumWavepacket& pkt,
                                                  const kinematics::Rapidity& xi,
                                                  const QuadratureSpec& quad);

/// Concurrence of the boosted Bell state phi+ against rapidity, for mass 1
/// and width sigma_over_m. xi_values must be non-negative and ascending.
std::vector<std::pair<double, double>> concurrence_curve(double sigma_over_m,
                                                         const std::vector<double>& xi_values,
                                                         const QuadratureSpec& quad);

/// Limiting concurrence as xi -> infinity, from the limit channel.
double saturation_level(double sigma_over_m, const QuadratureSpec& quad);

/// Unclamped pre-image of saturation_level (negative past the critical
/// ratio); the root-finding objective for critical_ratio.
double saturation_level_unclamped(double sigma_over_m, const QuadratureSpec& quad);

/// The width-to-mass ratio at which the saturation level reaches zero.
/// Bisection on the unclamped pre-image to absolute tolerance 1e-3; the
/// bracket must satisfy saturation_level(low) > 0 and
/// saturation_level(high) = 0, else std::domain_error.
double critical_ratio(const QuadratureSpec& quad, double bracket_low, double bracket_high);

}  // namespace spinboost::continuum
