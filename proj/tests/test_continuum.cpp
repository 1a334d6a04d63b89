#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "spinboost/continuum.hpp"
#include "spinboost/errors.hpp"
#include "spinboost/kinematics.hpp"
#include "spinboost/quadrature.hpp"
#include "spinboost/spin_algebra.hpp"

using namespace spinboost;
using continuum::MomentumWavepacket;
using continuum::QuadratureSpec;
using continuum::SpinChannel;
using Eigen::Matrix2cd;
using Eigen::Matrix4cd;

namespace {

constexpr double kPi = std::numbers::pi;

Matrix4cd kron2(const Matrix2cd& x, const Matrix2cd& y) {
    Matrix4cd out;
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.block<2, 2>(2 * i, 2 * j) = x(i, j) * y;
        }
    }
    return out;
}

/// Brute-force superoperator with the azimuth integrated numerically on an
/// n_theta-point periodic grid instead of analytically. Same radial/polar
/// nodes as the production channel, so any disagreement isolates the
/// azimuth treatment.
Matrix4cd azimuth_grid_superop(const MomentumWavepacket& pkt,
                               const kinematics::Rapidity& xi,
                               const QuadratureSpec& quad, int n_theta) {
    const auto radial = quadrature::gauss_legendre(quad.n_radial, 0.0, quad.p_max);
    const auto polar = quadrature::gauss_legendre(quad.n_polar, -1.0, 1.0);

    Matrix4cd superop = Matrix4cd::Zero();
    double total = 0.0;
    for (const auto& [p, wp] : radial) {
        const double energy = std::hypot(p, pkt.m());
        const double base = wp * pkt.density(p) * p * p / (2.0 * energy) * 2.0 * kPi;
        for (const auto& [c, wc] : polar) {
            const double w = base * wc;
            total += w;
            for (int k = 0; k < n_theta; ++k) {
                const double theta = 2.0 * kPi * k / n_theta;
                const kinematics::PolarMomentum node(p, theta, std::acos(c), pkt.m());
                const Matrix2cd u = kinematics::wigner_rotation(node, xi).matrix();
                superop += (w / n_theta) * kron2(u, u.conjugate());
            }
        }
    }
    return superop / total;
}

}  // namespace

TEST_CASE("gauss-legendre rules integrate polynomials exactly") {
    const auto one = quadrature::gauss_legendre(1);
    REQUIRE(one.size() == 1);
    CHECK(one[0].node == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(one[0].weight == doctest::Approx(2.0).epsilon(1e-15));

    // five nodes are exact through degree nine
    const auto five = quadrature::gauss_legendre(5);
    double x8 = 0.0;
    for (const auto& [x, w] : five) {
        x8 += w * std::pow(x, 8);
    }
    CHECK(x8 == doctest::Approx(2.0 / 9.0).epsilon(1e-14));

    const auto mapped = quadrature::gauss_legendre(5, 0.0, 2.0);
    double cubic = 0.0;
    for (const auto& [x, w] : mapped) {
        cubic += w * (3.0 * x * x * x - 2.0 * x * x + x - 1.0);
    }
    CHECK(cubic == doctest::Approx(20.0 / 3.0).epsilon(1e-14));

    const auto seven = quadrature::gauss_legendre(7);
    double weight_sum = 0.0;
    for (int i = 0; i < 7; ++i) {
        CHECK(seven[i].node == doctest::Approx(-seven[6 - i].node).scale(1.0).epsilon(1e-14));
        CHECK(seven[i].weight == doctest::Approx(seven[6 - i].weight).epsilon(1e-14));
        weight_sum += seven[i].weight;
    }
    CHECK(weight_sum == doctest::Approx(2.0).epsilon(1e-14));

    CHECK_THROWS_AS(quadrature::gauss_legendre(0), std::domain_error);
}

TEST_CASE("quadrature spec defaults and validation") {
    const auto spec = QuadratureSpec::defaults_for(1.0, 1.0);
    CHECK(spec.n_radial == 128);
    CHECK(spec.n_polar == 64);
    CHECK(spec.p_max == doctest::Approx(8.0));
    CHECK(QuadratureSpec::defaults_for(4.0, 1.0).p_max == doctest::Approx(32.0));
    CHECK(QuadratureSpec::defaults_for(0.5, 1.0).p_max == doctest::Approx(8.0));

    CHECK_NOTHROW(spec.validate(1.0));
    CHECK_THROWS_AS(QuadratureSpec({4, 64, 8.0}).validate(1.0), std::domain_error);
    CHECK_THROWS_AS(QuadratureSpec({128, 4, 8.0}).validate(1.0), std::domain_error);
    CHECK_THROWS_AS(QuadratureSpec({128, 64, 5.0}).validate(1.0), std::domain_error);

    const auto dbl = spec.doubled();
    CHECK(dbl.n_radial == 256);
    CHECK(dbl.n_polar == 128);
    CHECK(dbl.p_max == doctest::Approx(8.0));
}

TEST_CASE("normalization approaches the nonrelativistic closed form") {
    // for m >> sigma_r the measure factor 1/(2E) freezes at 1/(2m) and the
    // integral collapses to a plain Gaussian volume
    const double sigma = 1.0;
    const double m = 1.0e4;
    const QuadratureSpec quad{128, 64, 8.0};
    const double n = continuum::normalization_constant(sigma, m, quad);
    const double expected = std::pow(2.0 * kPi * sigma * sigma, 1.5) / (2.0 * m);
    CHECK(n == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("wavepacket density integrates to one") {
    const QuadratureSpec quad{128, 64, 8.0};
    const MomentumWavepacket pkt(1.0, 1.0, quad);
    const auto radial = quadrature::gauss_legendre(quad.n_radial, 0.0, quad.p_max);
    double mass = 0.0;
    for (const auto& [p, w] : radial) {
        const double energy = std::hypot(p, 1.0);
        mass += w * pkt.density(p) * 4.0 * kPi * p * p / (2.0 * energy);
    }
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("normalization is stable under node doubling") {
    const QuadratureSpec quad{128, 64, 8.0};
    const double coarse = continuum::normalization_constant(1.0, 1.0, quad);
    const double fine = continuum::normalization_constant(1.0, 1.0, quad.doubled());
    CHECK(coarse == doctest::Approx(fine).epsilon(1e-8));
}

TEST_CASE("normalization rejects under-resolved grids") {
    // eight radial nodes across [0, 500] skip the entire unit-width peak,
    // so the doubling check cannot agree
    const QuadratureSpec bad{8, 8, 500.0};
    CHECK_THROWS_AS(continuum::normalization_constant(1.0, 1.0, bad),
                    spinboost::numerical_error);
    CHECK_THROWS_AS(MomentumWavepacket(1.0, 1.0, bad), spinboost::numerical_error);
}

TEST_CASE("normalization validates its parameters") {
    const QuadratureSpec quad{128, 64, 8.0};
    CHECK_THROWS_AS(continuum::normalization_constant(-1.0, 1.0, quad),
                    std::domain_error);
    CHECK_THROWS_AS(continuum::normalization_constant(1.0, 0.0, quad),
                    std::domain_error);
}

TEST_CASE("channel at zero rapidity is the identity") {
    const QuadratureSpec quad = QuadratureSpec::defaults_for(1.0, 1.0);
    const MomentumWavepacket pkt(1.0, 1.0, quad);
    const SpinChannel chan =
        continuum::spin_channel(pkt, kinematics::Rapidity(0.0), quad);
    CHECK((chan.superoperator() - Matrix4cd::Identity()).cwiseAbs().maxCoeff() <
          1e-10);
}

TEST_CASE("channel rejects negative rapidity") {
    const QuadratureSpec quad = QuadratureSpec::defaults_for(1.0, 1.0);
    const MomentumWavepacket pkt(1.0, 1.0, quad);
    CHECK_THROWS_AS(continuum::spin_channel(pkt, kinematics::Rapidity(-1.0), quad),
                    std::domain_error);
}

TEST_CASE("narrow wavepackets decohere negligibly") {
    // sigma_r / m = 1e-3: every populated momentum rotates by nearly the
    // same (identity-equivalent) angle, so the channel is close to trivial
    const QuadratureSpec quad{128, 64, 8.0e-3};
    const MomentumWavepacket pkt(1.0e-3, 1.0, quad);
    const SpinChannel chan =
        continuum::spin_channel(pkt, kinematics::Rapidity(2.0), quad);
    CHECK((chan.superoperator() - Matrix4cd::Identity()).cwiseAbs().maxCoeff() <
          1e-4);
}

TEST_CASE("channel matches a brute-force azimuth grid") {
    const QuadratureSpec quad{64, 32, 8.0};
    const MomentumWavepacket pkt(1.0, 1.0, quad);
    const kinematics::Rapidity xi(2.0);
    const SpinChannel chan = continuum::spin_channel(pkt, xi, quad);
    // The channel reports its refined evaluation, so the oracle integrates on
    // the doubled grid.
    const Matrix4cd oracle = azimuth_grid_superop(pkt, xi, quad.doubled(), 64);
    CHECK((chan.superoperator() - oracle).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("channel has the two-parameter mixing structure") {
    const QuadratureSpec quad = QuadratureSpec::defaults_for(1.0, 1.0);
    const MomentumWavepacket pkt(1.0, 1.0, quad);
    const SpinChannel chan =
        continuum::spin_channel(pkt, kinematics::Rapidity(3.0), quad);
    const Matrix4cd& s = chan.superoperator();

    const double keep = s(0, 0).real();
    const double flip = s(0, 3).real();
    CHECK(keep + flip == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(flip > 0.0);
    CHECK(s(3, 3).real() == doctest::Approx(keep).epsilon(1e-14));
    CHECK(s(1, 1).real() == doctest::Approx(keep).epsilon(1e-14));
    CHECK(s(2, 2).real() == doctest::Approx(keep).epsilon(1e-14));
    CHECK(s(3, 0).real() == doctest::Approx(flip).epsilon(1e-14));

    Matrix4cd off_structure = s;
    off_structure(0, 0) = off_structure(1, 1) = off_structure(2, 2) =
        off_structure(3, 3) = 0.0;
    off_structure(0, 3) = off_structure(3, 0) = 0.0;
    CHECK(off_structure.cwiseAbs().maxCoeff() < 1e-14);

    // the populations mix exactly by (keep, flip)
    Matrix2cd up = Matrix2cd::Zero();
    up(0, 0) = 1.0;
    const Matrix2cd mixed = chan.apply(up);
    CHECK(mixed(0, 0).real() == doctest::Approx(keep).epsilon(1e-12));
    CHECK(mixed(1, 1).real() == doctest::Approx(flip).epsilon(1e-12));
}

TEST_CASE("channel is trace preserving and completely positive") {
    for (const double sigma : {1.0, 4.0}) {
        const QuadratureSpec quad = QuadratureSpec::defaults_for(sigma, 1.0);
        const MomentumWavepacket pkt(sigma, 1.0, quad);
        for (const double xi : {0.0, 1.0, 5.0}) {
            const SpinChannel chan =
                continuum::spin_channel(pkt, kinematics::Rapidity(xi), quad);
            CHECK(chan.trace_preservation_defect() < 1e-12);

            Eigen::SelfAdjointEigenSolver<Matrix4cd> solver(chan.choi_matrix());
            CHECK(solver.eigenvalues().minCoeff() > -1e-12);
            CHECK(chan.choi_matrix().trace().real() ==
                  doctest::Approx(2.0).epsilon(1e-12));
        }

        const SpinChannel limit = continuum::spin_channel_limit(pkt, quad);
        Eigen::SelfAdjointEigenSolver<Matrix4cd> solver(limit.choi_matrix());
        CHECK(solver.eigenvalues().minCoeff() > -1e-12);
        CHECK(limit.trace_preservation_defect() < 1e-12);
    }
}

TEST_CASE("identity channel and qubit routing") {
    const SpinChannel id = SpinChannel::identity();
    Matrix2cd rho;
    rho << 0.7, std::complex<double>(0.1, 0.2), std::complex<double>(0.1, -0.2), 0.3;
    CHECK((id.apply(rho) - rho).cwiseAbs().maxCoeff() < 1e-15);

    const Matrix4cd joint = kron2(rho, Matrix2cd::Identity() / 2.0);
    CHECK((id.apply_to_qubit(joint, 0) - joint).cwiseAbs().maxCoeff() < 1e-15);
    CHECK_THROWS_AS(id.apply_to_qubit(joint, 2), std::domain_error);
    CHECK_THROWS_AS(id.apply_to_qubit(joint, -1), std::domain_error);
}

TEST_CASE("product input stays a product of single-spin outputs") {
    const QuadratureSpec quad = QuadratureSpec::defaults_for(1.0, 1.0);
    const MomentumWavepacket pkt(1.0, 1.0, quad);
    const SpinChannel chan =
        continuum::spin_channel(pkt, kinematics::Rapidity(2.0), quad);

    Matrix2cd rho_a, rho_b;
    rho_a << 0.8, std::complex<double>(0.0, 0.3), std::complex<double>(0.0, -0.3), 0.2;
    rho_b << 0.4, 0.25, 0.25, 0.6;
    const Matrix4cd both =
        chan.apply_to_qubit(chan.apply_to_qubit(kron2(rho_a, rho_b), 0), 1);
    const Matrix4cd expected = kron2(chan.apply(rho_a), chan.apply(rho_b));
    CHECK((both - expected).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("boosted spin density reduces to the input at zero rapidity") {
    const QuadratureSpec quad = QuadratureSpec::defaults_for(1.0, 1.0);
    const MomentumWavepacket pkt(1.0, 1.0, quad);
    const spin_algebra::DensityMatrix4 bell(
        spin_algebra::bell_state(spin_algebra::BellKind::phi_plus));
    const auto out =
        continuum::boosted_spin_density(bell, pkt, kinematics::Rapidity(0.0), quad);
    CHECK((out.matrix() - bell.matrix()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(spin_algebra::concurrence(out) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("concurrence curve starts at one and decays monotonically") {
    const QuadratureSpec quad = QuadratureSpec::defaults_for(1.0, 1.0);
    std::vector<double> xi;
    for (int i = 0; i <= 20; ++i) {
        xi.push_back(0.5 * i);
    }
    const auto curve = continuum::concurrence_curve(1.0, xi, quad);
    REQUIRE(curve.size() == xi.size());
    CHECK(curve.front().second == doctest::Approx(1.0).epsilon(1e-6));
    for (std::size_t i = 1; i < curve.size(); ++i) {
        CHECK(curve[i].second <= curve[i - 1].second + 1e-8);
    }
    CHECK(curve.back().second > 0.0);
    CHECK(curve.back().second < 1.0);
}

TEST_CASE("concurrence curve flattens at large rapidity") {
    const QuadratureSpec quad = QuadratureSpec::defaults_for(1.0, 1.0);
    const auto tail = continuum::concurrence_curve(1.0, {20.0, 40.0}, quad);
    CHECK(std::abs(tail[0].second - tail[1].second) < 1e-4);
}

TEST_CASE("wider wavepackets lose more concurrence") {
    const auto narrow = continuum::concurrence_curve(
        1.0, {6.0}, QuadratureSpec::defaults_for(1.0, 1.0));
    const auto wide = continuum::concurrence_curve(
        2.0, {6.0}, QuadratureSpec::defaults_for(2.0, 1.0));
    CHECK(wide[0].second < narrow[0].second);
}

TEST_CASE("concurrence curve validates the rapidity grid") {
    const QuadratureSpec quad = QuadratureSpec::defaults_for(1.0, 1.0);
    CHECK_THROWS_AS(continuum::concurrence_curve(1.0, {-0.5, 1.0}, quad),
                    std::domain_error);
    CHECK_THROWS_AS(continuum::concurrence_curve(1.0, {1.0, 0.5}, quad),
                    std::domain_error);
    CHECK_THROWS_AS(continuum::concurrence_curve(0.0, {0.0, 1.0}, quad),
                    std::domain_error);
}

TEST_CASE("saturation levels match frozen reference values") {
    // reference points computed with an independent high-resolution
    // implementation of the limiting rotation average
    const struct {
        double sigma;
        double level;
    } golden[] = {
        {0.5, 0.721089663188},
        {1.0, 0.440756188490},
        {2.0, 0.158675483485},
        {3.0, 0.030884201202},
    };
    for (const auto& [sigma, level] : golden) {
        const QuadratureSpec quad = QuadratureSpec::defaults_for(sigma, 1.0);
        CHECK(std::abs(continuum::saturation_level(sigma, quad) - level) < 1e-9);
    }
}

TEST_CASE("saturation vanishes beyond the critical width") {
    const QuadratureSpec quad = QuadratureSpec::defaults_for(4.0, 1.0);
    CHECK(continuum::saturation_level(4.0, quad) == 0.0);
    const double unclamped = continuum::saturation_level_unclamped(4.0, quad);
    CHECK(unclamped > -0.05);
    CHECK(unclamped < -0.03);
}

TEST_CASE("saturation decreases with width") {
    double previous = 1.0;
    for (const double sigma : {0.5, 1.0, 2.0, 3.0, 4.0}) {
        const double level = continuum::saturation_level(
            sigma, QuadratureSpec::defaults_for(sigma, 1.0));
        CHECK(level < previous);
        previous = level;
    }
}

TEST_CASE("unclamped saturation equals the flip-weight polynomial") {
    // the limiting two-spin state is an x-form mixture whose unclamped
    // concurrence is (1 - b)(1 - 3b) in the flip weight b
    for (const double sigma : {0.8, 1.5, 2.5, 3.7}) {
        const QuadratureSpec quad = QuadratureSpec::defaults_for(sigma, 1.0);
        const MomentumWavepacket pkt(sigma, 1.0, quad);
        const double b =
            continuum::spin_channel_limit(pkt, quad).superoperator()(0, 3).real();
        const double expected = (1.0 - b) * (1.0 - 3.0 * b);
        CHECK(continuum::saturation_level_unclamped(sigma, quad) ==
              doctest::Approx(expected).scale(1.0).epsilon(1e-9));
    }
}

TEST_CASE("large-rapidity curve agrees with the limit channel") {
    const QuadratureSpec quad = QuadratureSpec::defaults_for(1.0, 1.0);
    const auto tail = continuum::concurrence_curve(1.0, {40.0}, quad);
    const double limit = continuum::saturation_level(1.0, quad);
    CHECK(std::abs(tail[0].second - limit) < 1e-6);
}

TEST_CASE("critical ratio from the default bracket") {
    const QuadratureSpec quad{128, 64, 32.0};
    const double ratio = continuum::critical_ratio(quad, 3.0, 3.8);
    CHECK(std::abs(ratio - 3.377377056110896) < 1e-3);
}

TEST_CASE("critical ratio from a narrow bracket") {
    const QuadratureSpec quad{128, 64, 32.0};
    const double ratio = continuum::critical_ratio(quad, 3.37, 3.39);
    CHECK(std::abs(ratio - 3.377377056110896) < 1e-3);
}

TEST_CASE("critical ratio rejects brackets that do not straddle the root") {
    const QuadratureSpec quad{128, 64, 32.0};
    CHECK_THROWS_AS(continuum::critical_ratio(quad, 1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(continuum::critical_ratio(quad, 3.8, 3.0), std::domain_error);
    CHECK_THROWS_AS(continuum::critical_ratio(quad, -1.0, 3.8), std::domain_error);
}

TEST_CASE("boosted concurrence is insensitive to node doubling") {
    const QuadratureSpec coarse{128, 64, 8.0};
    const auto at = [](const QuadratureSpec& quad) {
        return continuum::concurrence_curve(1.0, {2.0}, quad)[0].second;
    };
    CHECK(std::abs(at(coarse) - at(coarse.doubled())) < 1e-6);
}
