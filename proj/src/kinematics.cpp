#include "spinboost/kinematics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinboost::kinematics {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kRapidityCeiling = 700.0;  // cosh overflows past ~710

double wrap_azimuth(double theta) {
    double t = std::fmod(theta, kTwoPi);
    if (t < 0.0) t += kTwoPi;
    // fmod can land exactly on 2pi after the correction
    if (t >= kTwoPi) t = 0.0;
    return t;
}

}  // namespace

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

FourMomentum::FourMomentum(double e, double px, double py, double pz) {
    if (!std::isfinite(e) || !std::isfinite(px) || !std::isfinite(py) || !std::isfinite(pz)) {
        throw std::domain_error("FourMomentum: non-finite component");
    }
    if (e <= 0.0) {
        throw std::domain_error("FourMomentum: energy must be positive");
    }
    const double m2 = e * e - (px * px + py * py + pz * pz);
    if (m2 <= 0.0) {
        throw std::domain_error("FourMomentum: e^2 - |p|^2 must be positive (massive particles only)");
    }
    m_ = std::sqrt(m2);
    px_ = px;
    py_ = py;
    pz_ = pz;
}

FourMomentum FourMomentum::from_mass_momentum(double m, const Vec3& p3) {
    if (!(m > 0.0) || !std::isfinite(m)) {
        throw std::domain_error("FourMomentum: mass must be positive and finite");
    }
    FourMomentum q;
    q.m_ = m;
    q.px_ = p3.x;
    q.py_ = p3.y;
    q.pz_ = p3.z;
    return q;
}

double FourMomentum::e() const {
    return std::sqrt(m_ * m_ + px_ * px_ + py_ * py_ + pz_ * pz_);
}

PolarMomentum::PolarMomentum(double p, double theta, double phi, double m)
    : p_(p), theta_(wrap_azimuth(theta)), phi_(phi), m_(m) {
    if (!(m > 0.0) || !std::isfinite(m)) {
        throw std::domain_error("PolarMomentum: mass must be positive and finite");
    }
    if (!(p >= 0.0) || !std::isfinite(p)) {
        throw std::domain_error("PolarMomentum: momentum magnitude must be non-negative");
    }
    if (!(phi >= 0.0 && phi <= std::numbers::pi)) {
        throw std::domain_error("PolarMomentum: polar angle must lie in [0, pi]");
    }
    if (std::sin(phi_) == 0.0) theta_ = 0.0;
}

PolarMomentum PolarMomentum::from_four_momentum(const FourMomentum& q) {
    const double pt = std::hypot(q.px(), q.py());
    const double p = std::hypot(pt, q.pz());
    const double phi = (p == 0.0) ? 0.0 : std::atan2(pt, q.pz());
    const double theta = (pt == 0.0) ? 0.0 : std::atan2(q.py(), q.px());
    return PolarMomentum(p, theta, phi, q.mass());
}

FourMomentum PolarMomentum::four_momentum() const {
    const double s = std::sin(phi_);
    return FourMomentum::from_mass_momentum(
        m_, {p_ * std::cos(theta_) * s, p_ * std::sin(theta_) * s, p_ * std::cos(phi_)});
}

double PolarMomentum::energy() const { return std::sqrt(p_ * p_ + m_ * m_); }

Rapidity::Rapidity(double xi) : xi_(xi) {
    if (!std::isfinite(xi) || std::abs(xi) > kRapidityCeiling) {
        throw std::domain_error("Rapidity: |xi| must be finite and <= 700");
    }
}

SpinRotation::SpinRotation(double alpha, double beta, double theta)
    : alpha_(alpha), beta_(beta), theta_(wrap_azimuth(theta)) {}

Eigen::Matrix2cd SpinRotation::matrix() const {
    const std::complex<double> phase(std::cos(theta_), std::sin(theta_));
    Eigen::Matrix2cd u;
    u << alpha_, beta_ * std::conj(phase),  //
        -beta_ * phase, alpha_;
    return u;
}

double SpinRotation::unitarity_defect() const {
    return std::abs(alpha_ * alpha_ + beta_ * beta_ - 1.0);
}

Vec3 rapidity_for_momentum(const Vec3& p3, double m) {
    if (!(m > 0.0) || !std::isfinite(m)) {
        throw std::domain_error("rapidity_for_momentum: mass must be positive");
    }
    const double mag = p3.norm();
    if (mag == 0.0) return {};
    return p3.scaled(std::asinh(mag / m) / mag);
}

FourMomentum boost(const FourMomentum& p, const Rapidity& xi) {
    const double ch = std::cosh(xi.value());
    const double sh = std::sinh(xi.value());
    const double pz = p.e() * sh + p.pz() * ch;
    // Energy is re-derived from the carried mass, keeping the result
    // on-shell even when the matrix row would cancel catastrophically.
    return FourMomentum::from_mass_momentum(p.mass(), {p.px(), p.py(), pz});
}

double boosted_energy(const PolarMomentum& p, const Rapidity& xi) {
    return p.energy() * std::cosh(xi.value()) +
           p.p() * std::cos(p.phi()) * std::sinh(xi.value());
}

SpinRotation wigner_rotation(const PolarMomentum& p, const Rapidity& xi) {
    const double e = p.energy();
    const double m = p.m();
    const double ep = boosted_energy(p, xi);
    const double ch = std::cosh(0.5 * xi.value());
    const double sh = std::sinh(0.5 * xi.value());
    const double pcos = p.p() * std::cos(p.phi());
    const double psin = p.p() * std::sin(p.phi());
    const double alpha = std::sqrt((e + m) / (ep + m)) * (ch + pcos / (e + m) * sh);
    const double beta = psin / std::sqrt((e + m) * (ep + m)) * sh;
    return {alpha, beta, p.theta()};
}

SpinRotation wigner_limit(const PolarMomentum& p) {
    const double e = p.energy();
    const double m = p.m();
    const double pcos = p.p() * std::cos(p.phi());
    const double psin = p.p() * std::sin(p.phi());
    // e + pcos > 0 for any massive momentum, so no singularity here
    const double alpha = std::sqrt((e + m) / (2.0 * (e + pcos))) * (1.0 + pcos / (e + m));
    const double beta = psin / std::sqrt(2.0 * (e + m) * (e + pcos));
    return {alpha, beta, p.theta()};
}

double beta_max(double p_over_m) {
    if (!(p_over_m >= 0.0)) {
        throw std::domain_error("beta_max: p/m must be non-negative");
    }
    return p_over_m / (1.0 + std::sqrt(1.0 + p_over_m * p_over_m));
}

}  // namespace spinboost::kinematics
