#include "spinboost/continuum.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "spinboost/errors.hpp"
#include "spinboost/quadrature.hpp"

namespace spinboost::continuum {

namespace {

constexpr double kConvergenceTol = 1e-6;

/// sigma_+ (x) sigma_+ + sigma_- (x) sigma_- in the row-major
/// vectorization: the only beta^2 terms surviving the azimuth average.
Eigen::Matrix4cd flip_superop() {
    Eigen::Matrix4cd k = Eigen::Matrix4cd::Zero();
    k(0, 3) = 1.0;
    k(3, 0) = 1.0;
    return k;
}

struct ChannelWeights {
    double keep = 0.0;
    double flip = 0.0;
};

double normalization_once(double sigma_r, double m, const QuadratureSpec& quad) {
    const auto radial = quadrature::gauss_legendre(quad.n_radial, 0.0, quad.p_max);
    double acc = 0.0;
    for (const auto& [p, w] : radial) {
        const double e = std::hypot(p, m);
        acc += w * p * p * std::exp(-p * p / (2.0 * sigma_r * sigma_r)) / e;
    }
    return 2.0 * std::numbers::pi * acc;
}

/// Normalized weights <alpha^2>, <beta^2> of the azimuth-averaged channel
/// over the (p, cos phi) product rule. Constant prefactors of the measure
/// cancel in the ratio, so only |f|^2 p^2 / (2E) appears.
template <typename RotationAt>
ChannelWeights averaged_weights(const MomentumWavepacket& pkt, const QuadratureSpec& quad,
                                RotationAt&& rotation_at) {
    const auto radial = quadrature::gauss_legendre(quad.n_radial, 0.0, quad.p_max);
    const auto polar = quadrature::gauss_legendre(quad.n_polar, -1.0, 1.0);
    double total = 0.0;
    double keep = 0.0;
    double flip = 0.0;
    for (const auto& [p, wp] : radial) {
        const double e = std::hypot(p, pkt.m());
        const double shell = wp * pkt.density(p) * p * p / (2.0 * e);
        for (const auto& [c, wc] : polar) {
            const double phi = std::acos(std::clamp(c, -1.0, 1.0));
            const kinematics::SpinRotation rot =
                rotation_at(kinematics::PolarMomentum(p, 0.0, phi, pkt.m()));
            const double w = shell * wc;
            total += w;
            keep += w * rot.alpha() * rot.alpha();
            flip += w * rot.beta() * rot.beta();
        }
    }
    return {keep / total, flip / total};
}

template <typename RotationAt>
SpinChannel averaged_channel(const MomentumWavepacket& pkt, const QuadratureSpec& quad,
                             RotationAt&& rotation_at) {
    const ChannelWeights coarse = averaged_weights(pkt, quad, rotation_at);
    const ChannelWeights fine = averaged_weights(pkt, quad.doubled(), rotation_at);
    if (std::abs(fine.flip - coarse.flip) >
        kConvergenceTol * std::max(std::abs(fine.flip), 1e-12)) {
        throw numerical_error("spin-channel quadrature did not converge under node doubling");
    }
    return SpinChannel(fine.keep * Eigen::Matrix4cd::Identity() + fine.flip * flip_superop());
}

spin_algebra::DensityMatrix4 limit_density(double sigma_over_m, const QuadratureSpec& quad) {
    const MomentumWavepacket pkt(sigma_over_m, 1.0, quad);
    const SpinChannel channel = spin_channel_limit(pkt, quad);
    const Eigen::Matrix4cd bell =
        spin_algebra::bell_state(spin_algebra::BellKind::phi_plus).density_matrix();
    return spin_algebra::DensityMatrix4(
        channel.apply_to_qubit(channel.apply_to_qubit(bell, 0), 1));
}

}  // namespace

QuadratureSpec QuadratureSpec::defaults_for(double sigma_r, double m) {
    QuadratureSpec spec;
    spec.p_max = 8.0 * std::max(sigma_r, m);
    return spec;
}

void QuadratureSpec::validate(double sigma_r) const {
    if (n_radial < 8) {
        throw std::domain_error("quadrature n_radial must be at least 8");
    }
    if (n_polar < 8) {
        throw std::domain_error("quadrature n_polar must be at least 8");
    }
    if (!(p_max >= 6.0 * sigma_r)) {
        throw std::domain_error("quadrature p_max must be at least 6 sigma_r");
    }
}

MomentumWavepacket::MomentumWavepacket(double sigma_r, double m, const QuadratureSpec& quad)
    : sigma_r_(sigma_r), m_(m), norm_(normalization_constant(sigma_r, m, quad)) {}

MomentumWavepacket::MomentumWavepacket(double sigma_r, double m)
    : MomentumWavepacket(sigma_r, m, QuadratureSpec::defaults_for(sigma_r, m)) {}

double MomentumWavepacket::density(double p) const {
    return std::exp(-p * p / (2.0 * sigma_r_ * sigma_r_)) / norm_;
}

SpinChannel::SpinChannel(const Eigen::Matrix4cd& superoperator) : superop_(superoperator) {
    if (!superop_.allFinite()) {
        throw std::domain_error("channel superoperator must have finite entries");
    }
}

Eigen::Matrix2cd SpinChannel::apply(const Eigen::Matrix2cd& rho) const {
    Eigen::Vector4cd v;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            v(2 * i + j) = rho(i, j);
        }
    }
    const Eigen::Vector4cd u = superop_ * v;
    Eigen::Matrix2cd out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out(i, j) = u(2 * i + j);
        }
    }
    return out;
}

Eigen::Matrix4cd SpinChannel::apply_to_qubit(const Eigen::Matrix4cd& rho, int qubit) const {
    if (qubit != 0 && qubit != 1) {
        throw std::domain_error("qubit index must be 0 or 1");
    }
    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            for (int ip = 0; ip < 2; ++ip) {
                for (int jp = 0; jp < 2; ++jp) {
                    const std::complex<double> s = superop_(2 * i + j, 2 * ip + jp);
                    if (s == std::complex<double>{}) {
                        continue;
                    }
                    for (int a = 0; a < 2; ++a) {
                        for (int b = 0; b < 2; ++b) {
                            if (qubit == 0) {
                                out(2 * i + a, 2 * j + b) += s * rho(2 * ip + a, 2 * jp + b);
                            } else {
                                out(2 * a + i, 2 * b + j) += s * rho(2 * a + ip, 2 * b + jp);
                            }
                        }
                    }
                }
            }
        }
    }
    return out;
}

Eigen::Matrix4cd SpinChannel::choi_matrix() const {
    Eigen::Matrix4cd choi;
    for (int i = 0; i < 2; ++i) {
        for (int a = 0; a < 2; ++a) {
            for (int j = 0; j < 2; ++j) {
                for (int b = 0; b < 2; ++b) {
                    choi(2 * i + a, 2 * j + b) = superop_(2 * i + j, 2 * a + b);
                }
            }
        }
    }
    return choi;
}

double SpinChannel::trace_preservation_defect() const {
    double defect = 0.0;
    for (int c = 0; c < 4; ++c) {
        const std::complex<double> traced = superop_(0, c) + superop_(3, c);
        const double expected = (c == 0 || c == 3) ? 1.0 : 0.0;
        defect = std::max(defect, std::abs(traced - expected));
    }
    return defect;
}

SpinChannel SpinChannel::identity() {
    return SpinChannel(Eigen::Matrix4cd::Identity());
}

double normalization_constant(double sigma_r, double m, const QuadratureSpec& quad) {
    if (!(sigma_r > 0.0)) {
        throw std::domain_error("wavepacket width sigma_r must be positive");
    }
    if (!(m > 0.0)) {
        throw std::domain_error("wavepacket mass must be positive");
    }
    quad.validate(sigma_r);
    const double coarse = normalization_once(sigma_r, m, quad);
    const double fine = normalization_once(sigma_r, m, quad.doubled());
    if (std::abs(fine - coarse) > kConvergenceTol * std::abs(fine)) {
        throw numerical_error("wavepacket normalization did not converge under node doubling");
    }
    return fine;
}

SpinChannel spin_channel(const MomentumWavepacket& pkt, const kinematics::Rapidity& xi,
                         const QuadratureSpec& quad) {
    if (xi.value() < 0.0) {
        throw std::domain_error("channel rapidity must be non-negative");
    }
    quad.validate(pkt.sigma_r());
    return averaged_channel(pkt, quad, [&xi](const kinematics::PolarMomentum& q) {
        return kinematics::wigner_rotation(q, xi);
    });
}

SpinChannel spin_channel_limit(const MomentumWavepacket& pkt, const QuadratureSpec& quad) {
    quad.validate(pkt.sigma_r());
    return averaged_channel(pkt, quad, [](const kinematics::PolarMomentum& q) {
        return kinematics::wigner_limit(q);
    });
}

spin_algebra::DensityMatrix4 boosted_spin_density(const spin_algebra::DensityMatrix4& spin_in,
                                                  const MomentumWavepacket& pkt,
                                                  const kinematics::Rapidity& xi,
                                                  const QuadratureSpec& quad) {
    const SpinChannel channel = spin_channel(pkt, xi, quad);
    return spin_algebra::DensityMatrix4(
        channel.apply_to_qubit(channel.apply_to_qubit(spin_in.matrix(), 0), 1));
}

std::vector<std::pair<double, double>> concurrence_curve(double sigma_over_m,
                                                         const std::vector<double>& xi_values,
                                                         const QuadratureSpec& quad) {
    if (!(sigma_over_m > 0.0)) {
        throw std::domain_error("sigma_over_m must be positive");
    }
    for (std::size_t k = 0; k < xi_values.size(); ++k) {
        if (xi_values[k] < 0.0) {
            throw std::domain_error("xi values must be non-negative");
        }
        if (k > 0 && xi_values[k] <= xi_values[k - 1]) {
            throw std::domain_error("xi values must be strictly ascending");
        }
    }
    const MomentumWavepacket pkt(sigma_over_m, 1.0, quad);
    const spin_algebra::DensityMatrix4 bell(
        spin_algebra::bell_state(spin_algebra::BellKind::phi_plus));
    std::vector<std::pair<double, double>> curve;
    curve.reserve(xi_values.size());
    for (const double xi : xi_values) {
        const auto rho = boosted_spin_density(bell, pkt, kinematics::Rapidity(xi), quad);
        curve.emplace_back(xi, spin_algebra::concurrence(rho));
    }
    return curve;
}

double saturation_level(double sigma_over_m, const QuadratureSpec& quad) {
    if (!(sigma_over_m > 0.0)) {
        throw std::domain_error("sigma_over_m must be positive");
    }
    return spin_algebra::concurrence(limit_density(sigma_over_m, quad));
}

double saturation_level_unclamped(double sigma_over_m, const QuadratureSpec& quad) {
    if (!(sigma_over_m > 0.0)) {
        throw std::domain_error("sigma_over_m must be positive");
    }
    return spin_algebra::concurrence_unclamped(limit_density(sigma_over_m, quad));
}

double critical_ratio(const QuadratureSpec& quad, double bracket_low, double bracket_high) {
    if (!(bracket_low > 0.0) || !(bracket_high > bracket_low)) {
        throw std::domain_error("bracket must satisfy 0 < low < high");
    }
    if (!(saturation_level(bracket_low, quad) > 0.0)) {
        throw std::domain_error("bracket low edge must have a positive saturation level");
    }
    if (saturation_level(bracket_high, quad) != 0.0) {
        throw std::domain_error("bracket high edge must have a zero saturation level");
    }
    double lo = bracket_low;
    double hi = bracket_high;
    while (hi - lo > 1e-3) {
        const double mid = 0.5 * (lo + hi);
        if (saturation_level_unclamped(mid, quad) > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace spinboost::continuum
