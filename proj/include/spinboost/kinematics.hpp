#pragma once

#include <complex>

#include <Eigen/Core>

namespace spinboost::kinematics {

/// Natural units throughout: c = 1, masses/momenta/energies share one unit,
/// rapidity is dimensionless. Boosts are along +z; arbitrary boost directions
/// are handled by rotating input momenta into this frame.

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const;
    Vec3 scaled(double s) const { return {s * x, s * y, s * z}; }
};

/// On-shell momentum of a massive particle. Stored as (mass, 3-momentum);
/// the energy is derived, so boosts preserve the mass exactly and the
/// on-shell identity e^2 - |p|^2 = m^2 holds to rounding at any rapidity.
class FourMomentum {
public:
    /// From energy and 3-momentum. Requires e > 0 and e^2 - |p|^2 > 0.
    FourMomentum(double e, double px, double py, double pz);

    /// From mass and 3-momentum; e = sqrt(m^2 + |p|^2). Requires m > 0.
    static FourMomentum from_mass_momentum(double m, const Vec3& p3);

    double e() const;
    double px() const { return px_; }
    double py() const { return py_; }
    double pz() const { return pz_; }
    double mass() const { return m_; }
    Vec3 spatial() const { return {px_, py_, pz_}; }

private:
    FourMomentum() = default;
    double m_ = 0.0;
    double px_ = 0.0;
    double py_ = 0.0;
    double pz_ = 0.0;
};

/// Momentum in polar coordinates:
///   p^mu = [E, p cos(theta) sin(phi), p sin(theta) sin(phi), p cos(phi)]
/// theta is the azimuth in [0, 2pi), phi the polar angle from +z in [0, pi].
/// When sin(phi) = 0 the azimuth is unobservable and is pinned to 0.
class PolarMomentum {
public:
    PolarMomentum(double p, double theta, double phi, double m);

    static PolarMomentum from_four_momentum(const FourMomentum& q);
    FourMomentum four_momentum() const;

    double p() const { return p_; }
    double theta() const { return theta_; }
    double phi() const { return phi_; }
    double m() const { return m_; }
    double energy() const;

private:
    double p_, theta_, phi_, m_;
};

/// Rapidity of a boost along +z; velocity v = tanh(xi). Signed: negative
/// values are boosts along -z (used for inverse boosts). |xi| <= 700 keeps
/// cosh within double range.
class Rapidity {
public:
    explicit Rapidity(double xi);
    double value() const { return xi_; }
    Rapidity inverse() const { return Rapidity(-xi_); }

private:
    double xi_;
};

/// The spin-1/2 Wigner rotation picked up by a rest-frame spin under a
/// z-boost, parametrized so the matrix is
///
///     [ alpha              beta e^{-i theta} ]
///     [ -beta e^{i theta}  alpha             ]
///
/// with alpha^2 + beta^2 = 1 (SU(2) membership). Keeping (alpha, beta,
/// theta) rather than the raw matrix preserves the structure used for the
/// analytic azimuth integration in the continuum channel.
class SpinRotation {
public:
    SpinRotation(double alpha, double beta, double theta);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }
    double theta() const { return theta_; }

    Eigen::Matrix2cd matrix() const;

    /// |alpha^2 + beta^2 - 1|; zero up to rounding for any valid rotation.
    double unitarity_defect() const;

    static SpinRotation identity() { return {1.0, 0.0, 0.0}; }

private:
    double alpha_, beta_, theta_;
};

/// Rapidity vector of the pure boost taking a rest particle of mass m to
/// 3-momentum p3: magnitude asinh(|p3|/m), direction p3/|p3|. Zero vector
/// when p3 = 0. Requires m > 0.
Vec3 rapidity_for_momentum(const Vec3& p3, double m);

/// Pure boost along +z: e' = e cosh(xi) + pz sinh(xi),
/// pz' = e sinh(xi) + pz cosh(xi); px, py and the mass are unchanged.
FourMomentum boost(const FourMomentum& p, const Rapidity& xi);

/// Energy seen by the boosted observer: E' = E cosh(xi) + p cos(phi) sinh(xi).
double boosted_energy(const PolarMomentum& p, const Rapidity& xi);

/// The momentum-conditioned spin rotation for a z-boost of rapidity xi:
///
///   alpha = sqrt((E+m)/(E'+m)) [cosh(xi/2) + p cos(phi)/(E+m) sinh(xi/2)]
///   beta  = p sin(phi) / sqrt((E+m)(E'+m)) * sinh(xi/2)
///
/// with E' = boosted_energy(p, xi) and theta the azimuth of p.
SpinRotation wigner_rotation(const PolarMomentum& p, const Rapidity& xi);

/// The xi -> infinity limit of wigner_rotation:
///
///   alpha_inf = sqrt((E+m)/(2(E + p cos(phi)))) (1 + p cos(phi)/(E+m))
///   beta_inf  = p sin(phi) / sqrt(2(E+m)(E + p cos(phi)))
SpinRotation wigner_limit(const PolarMomentum& p);

/// Maximum over phi of beta_inf at fixed p/m:
///   (p/m) / (1 + sqrt(1 + (p/m)^2)),
/// monotonically increasing in p/m and tending to 1.
double beta_max(double p_over_m);

}  // namespace spinboost::kinematics
