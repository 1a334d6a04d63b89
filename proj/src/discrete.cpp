#include "spinboost/discrete.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <utility>

namespace spinboost::discrete {

namespace {

constexpr double kModeTol = 1e-9;
constexpr double kNormTol = 1e-12;

/// k-th output of a splitmix64 stream started at base; mixes well enough
/// that per-sample generators are independent for any base.
std::uint64_t sample_seed(std::uint64_t base, std::uint64_t k) {
    std::uint64_t x = base + (k + 1) * 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::vector<MomentumMode> sample_modes(std::mt19937_64& gen, int count) {
    std::uniform_real_distribution<double> cos_polar(-1.0, 1.0);
    std::uniform_real_distribution<double> azimuth(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> log_magnitude(std::log(0.1), std::log(10.0));
    std::vector<MomentumMode> modes;
    modes.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(modes.size()) < count) {
        const double z = cos_polar(gen);
        const double th = azimuth(gen);
        const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double mag = std::exp(log_magnitude(gen));
        const MomentumMode candidate(kinematics::FourMomentum::from_mass_momentum(
            1.0, {mag * r * std::cos(th), mag * r * std::sin(th), mag * z}));
        bool duplicate = false;
        for (const auto& mode : modes) {
            if (mode == candidate) {
                duplicate = true;
                break;
            }
        }
        if (!duplicate) {
            modes.push_back(candidate);
        }
    }
    return modes;
}

Eigen::VectorXcd gaussian_unit_vector(std::mt19937_64& gen, int size) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXcd v(size);
    for (int s = 0; s < size; ++s) {
        const double re = normal(gen);
        const double im = normal(gen);
        v(s) = std::complex<double>(re, im);
    }
    return v / v.norm();
}

DiscreteTwoParticleState sample_product_state(std::mt19937_64& gen) {
    std::uniform_int_distribution<int> mode_count(1, 4);
    const int na = mode_count(gen);
    const int nb = mode_count(gen);
    auto modes_a = sample_modes(gen, na);
    auto modes_b = sample_modes(gen, nb);
    const Eigen::VectorXcd momentum_amp = gaussian_unit_vector(gen, na * nb);
    const Eigen::VectorXcd spin_amp = gaussian_unit_vector(gen, 4);
    Eigen::VectorXcd g(na * nb * 4);
    for (int ij = 0; ij < na * nb; ++ij) {
        for (int s = 0; s < 4; ++s) {
            g(ij * 4 + s) = momentum_amp(ij) * spin_amp(s);
        }
    }
    return {std::move(modes_a), std::move(modes_b), g};
}

DiscreteTwoParticleState sample_general_state(std::mt19937_64& gen) {
    std::uniform_int_distribution<int> mode_count(1, 4);
    const int na = mode_count(gen);
    const int nb = mode_count(gen);
    auto modes_a = sample_modes(gen, na);
    auto modes_b = sample_modes(gen, nb);
    const Eigen::VectorXcd g = gaussian_unit_vector(gen, na * nb * 4);
    return {std::move(modes_a), std::move(modes_b), g};
}

}  // namespace

bool MomentumMode::operator==(const MomentumMode& other) const {
    return std::abs(p_.px() - other.p_.px()) <= kModeTol &&
           std::abs(p_.py() - other.p_.py()) <= kModeTol &&
           std::abs(p_.pz() - other.p_.pz()) <= kModeTol;
}

DiscreteTwoParticleState::DiscreteTwoParticleState(std::vector<MomentumMode> modes_a,
                                                   std::vector<MomentumMode> modes_b,
                                                   const Eigen::VectorXcd& amplitudes)
    : modes_a_(std::move(modes_a)), modes_b_(std::move(modes_b)), amp_(amplitudes) {
    if (modes_a_.empty() || modes_b_.empty()) {
        throw std::domain_error("each particle needs at least one momentum mode");
    }
    const auto expected = static_cast<Eigen::Index>(modes_a_.size() * modes_b_.size() * 4);
    if (amp_.size() != expected) {
        throw std::domain_error("amplitude tensor size does not match the mode lists");
    }
    for (const auto& modes : {modes_a_, modes_b_}) {
        for (std::size_t i = 0; i < modes.size(); ++i) {
            for (std::size_t j = i + 1; j < modes.size(); ++j) {
                if (modes[i] == modes[j]) {
                    throw std::domain_error("momentum mode lists must not contain duplicates");
                }
            }
        }
    }
    if (std::abs(amp_.squaredNorm() - 1.0) > kNormTol) {
        throw std::domain_error("state amplitudes must have unit total norm");
    }
}

int DiscreteTwoParticleState::flat_index(int i, int j, int lambda, int sigma) const {
    return ((i * n_modes_b() + j) * 2 + lambda) * 2 + sigma;
}

std::complex<double> DiscreteTwoParticleState::amplitude(int i, int j, int lambda,
                                                         int sigma) const {
    return amp_(flat_index(i, j, lambda, sigma));
}

Eigen::Matrix2cd DiscreteTwoParticleState::spin_block(int i, int j) const {
    Eigen::Matrix2cd block;
    for (int lambda = 0; lambda < 2; ++lambda) {
        for (int sigma = 0; sigma < 2; ++sigma) {
            block(lambda, sigma) = amplitude(i, j, lambda, sigma);
        }
    }
    return block;
}

DiscreteTwoParticleState apply_boost(const DiscreteTwoParticleState& state,
                                     const kinematics::Rapidity& xi) {
    return apply_boost(state, xi, xi);
}

DiscreteTwoParticleState apply_boost(const DiscreteTwoParticleState& state,
                                     const kinematics::Rapidity& xi_a,
                                     const kinematics::Rapidity& xi_b) {
    const int na = state.n_modes_a();
    const int nb = state.n_modes_b();
    std::vector<MomentumMode> boosted_a;
    std::vector<MomentumMode> boosted_b;
    std::vector<Eigen::Matrix2cd> rot_a;
    std::vector<Eigen::Matrix2cd> rot_b;
    boosted_a.reserve(static_cast<std::size_t>(na));
    rot_a.reserve(static_cast<std::size_t>(na));
    for (int i = 0; i < na; ++i) {
        const auto& p = state.mode_a(i).momentum();
        rot_a.push_back(
            kinematics::wigner_rotation(kinematics::PolarMomentum::from_four_momentum(p), xi_a)
                .matrix());
        boosted_a.emplace_back(kinematics::boost(p, xi_a));
    }
    boosted_b.reserve(static_cast<std::size_t>(nb));
    rot_b.reserve(static_cast<std::size_t>(nb));
    for (int j = 0; j < nb; ++j) {
        const auto& q = state.mode_b(j).momentum();
        rot_b.push_back(
            kinematics::wigner_rotation(kinematics::PolarMomentum::from_four_momentum(q), xi_b)
                .matrix());
        boosted_b.emplace_back(kinematics::boost(q, xi_b));
    }
    Eigen::VectorXcd g(state.amplitudes().size());
    for (int i = 0; i < na; ++i) {
        for (int j = 0; j < nb; ++j) {
            const Eigen::Matrix2cd block = rot_a[static_cast<std::size_t>(i)] *
                                           state.spin_block(i, j) *
                                           rot_b[static_cast<std::size_t>(j)].transpose();
            for (int lambda = 0; lambda < 2; ++lambda) {
                for (int sigma = 0; sigma < 2; ++sigma) {
                    g(state.flat_index(i, j, lambda, sigma)) = block(lambda, sigma);
                }
            }
        }
    }
    // The rotations are unitary, but evaluating them at labels where
    // E cosh xi and p sinh xi nearly cancel (a boost opposing a fast mode)
    // leaves rounding of order 1e-12 in the norm, so rescale.
    g /= g.norm();
    return {std::move(boosted_a), std::move(boosted_b), g};
}

spin_algebra::DensityMatrix4 reduced_spin_density(const DiscreteTwoParticleState& state) {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < state.n_modes_a(); ++i) {
        for (int j = 0; j < state.n_modes_b(); ++j) {
            const Eigen::Matrix2cd block = state.spin_block(i, j);
            Eigen::Vector4cd v;
            v << block(0, 0), block(0, 1), block(1, 0), block(1, 1);
            rho += v * v.adjoint();
        }
    }
    return spin_algebra::DensityMatrix4(rho);
}

DiscreteTwoParticleState perpendicular_decay_state(double p, double m) {
    if (!(p > 0.0)) {
        throw std::domain_error("momentum magnitude p must be positive");
    }
    if (!(m > 0.0)) {
        throw std::domain_error("mass must be positive");
    }
    using kinematics::FourMomentum;
    std::vector<MomentumMode> modes_a{
        MomentumMode(FourMomentum::from_mass_momentum(m, {p, 0.0, 0.0})),
        MomentumMode(FourMomentum::from_mass_momentum(m, {0.0, p, 0.0}))};
    std::vector<MomentumMode> modes_b{
        MomentumMode(FourMomentum::from_mass_momentum(m, {-p, 0.0, 0.0})),
        MomentumMode(FourMomentum::from_mass_momentum(m, {0.0, -p, 0.0}))};
    const Eigen::Vector4cd phi_plus =
        spin_algebra::bell_state(spin_algebra::BellKind::phi_plus).amplitudes();
    const Eigen::Vector4cd phi_minus =
        spin_algebra::bell_state(spin_algebra::BellKind::phi_minus).amplitudes();
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(16);
    const double w = 1.0 / std::sqrt(2.0);
    for (int s = 0; s < 4; ++s) {
        g(0 * 4 + s) = w * phi_plus(s);   // mode pair (0, 0): p with -p
        g(3 * 4 + s) = w * phi_minus(s);  // mode pair (1, 1): p_perp with -p_perp
    }
    return {std::move(modes_a), std::move(modes_b), g};
}

double perp_concurrence_closed_form(double p, double xi) {
    if (p < 0.0) {
        throw std::domain_error("momentum magnitude p must be non-negative");
    }
    if (xi < 0.0) {
        throw std::domain_error("rapidity must be non-negative");
    }
    const double inv_ch = 1.0 / std::cosh(xi);
    const double root = std::sqrt(1.0 + p * p);
    const double den = root + inv_ch;
    return p * p * (1.0 - inv_ch * inv_ch) / (den * den);
}

MonotonicityReport verify_monotonicity_theorem(int n_samples, std::uint64_t rng_seed,
                                               bool independent_boosts) {
    if (n_samples < 1) {
        throw std::domain_error("n_samples must be at least 1");
    }
    MonotonicityReport report;
    report.samples = n_samples;
    report.tolerance = 1e-9;
    report.max_increase = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < n_samples; ++k) {
        const std::uint64_t seed = sample_seed(rng_seed, static_cast<std::uint64_t>(k));
        std::mt19937_64 gen(seed);
        const DiscreteTwoParticleState state = sample_product_state(gen);
        std::uniform_real_distribution<double> rapidity(0.0, 10.0);
        const kinematics::Rapidity xi_a(rapidity(gen));
        const kinematics::Rapidity xi_b =
            independent_boosts ? kinematics::Rapidity(rapidity(gen)) : xi_a;
        const double before = spin_algebra::concurrence(reduced_spin_density(state));
        const double after =
            spin_algebra::concurrence(reduced_spin_density(apply_boost(state, xi_a, xi_b)));
        const double increase = after - before;
        if (increase > report.max_increase) {
            report.max_increase = increase;
            report.worst_sample_seed = seed;
        }
    }
    report.passed = report.max_increase <= report.tolerance;
    return report;
}

DiscreteTwoParticleState random_product_state(std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    return sample_product_state(gen);
}

DiscreteTwoParticleState random_state(std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    return sample_general_state(gen);
}

double joint_entanglement_entropy(const DiscreteTwoParticleState& state) {
    const int na = state.n_modes_a();
    const int nb = state.n_modes_b();
    Eigen::VectorXcd psi(4 * na * nb);
    for (int i = 0; i < na; ++i) {
        for (int lambda = 0; lambda < 2; ++lambda) {
            for (int j = 0; j < nb; ++j) {
                for (int sigma = 0; sigma < 2; ++sigma) {
                    psi((i * 2 + lambda) * (2 * nb) + (j * 2 + sigma)) =
                        state.amplitude(i, j, lambda, sigma);
                }
            }
        }
    }
    return spin_algebra::entanglement_entropy(psi, 2 * na, 2 * nb);
}

}  // namespace spinboost::discrete
