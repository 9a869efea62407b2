#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "gcnm/gchannel.hpp"
#include "oracles.hpp"

using namespace gcnm;
using namespace gcnm::gchannel;

namespace {

coeffs::ChannelParams params(double x, double tau_max = 50.0) {
    coeffs::ChannelParams p;
    p.x = x;
    p.theta = 100.0;
    p.alpha = 0.1;
    p.tau_max = tau_max;
    return p;
}

coeffs::CoefficientTable synthetic_table(double x, double gamma, double delta, double pi,
                                         double tau_max, int n = 4001) {
    coeffs::CoefficientTable t;
    t.params.x = x;
    t.params.tau_max = tau_max;
    const double h = tau_max / (n - 1);
    t.tau.resize(n);
    t.gamma.assign(n, gamma);
    t.delta.assign(n, delta);
    t.pi.assign(n, pi);
    t.gamma_cum.resize(n);
    for (int k = 0; k < n; ++k) {
        t.tau[k] = k * h;
        t.gamma_cum[k] = 2.0 * gamma * t.tau[k];
    }
    return t;
}

double mnorm(const Mat2& m) { return m.norm(); }

}  // namespace

TEST_CASE("symplectic form") {
    const Mat2 o = symplectic_form();
    CHECK(mnorm(o.transpose() + o) == 0.0);
    CHECK(mnorm(o * o + Mat2::Identity()) == 0.0);
}

TEST_CASE("rotation basics") {
    CHECK(mnorm(rotation(0.0, 0.3) - Mat2::Identity()) == 0.0);
    // quarter period: R = [[0,1],[-1,0]]
    Mat2 expect;
    expect << 0.0, 1.0, -1.0, 0.0;
    CHECK(mnorm(rotation(M_PI * 0.35 / 2.0, 0.35) - expect) < 1e-15);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> pick(0.0, 20.0);
    for (int i = 0; i < 20; ++i) {
        const double t1 = pick(rng), t2 = pick(rng);
        const Mat2 r1 = rotation(t1, 0.2), r2 = rotation(t2, 0.2);
        CHECK(mnorm(r1 * r2 - rotation(t1 + t2, 0.2)) < 1e-12);
        CHECK(mnorm(r1 * r1.transpose() - Mat2::Identity()) < 1e-15);
        CHECK(r1.determinant() == doctest::Approx(1.0).epsilon(1e-14));
    }
    CHECK_THROWS_AS(rotation(1.0, 0.0), std::domain_error);
}

TEST_CASE("state constructors and physicality") {
    CHECK(vacuum_state().cov.determinant() == doctest::Approx(0.25));
    CHECK(thermal_state(2.0).cov.determinant() == doctest::Approx(6.25));
    CHECK(squeezed_state(1.0).cov.determinant() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(vacuum_state().physical());
    GaussianState bad;
    bad.cov = 0.1 * Mat2::Identity();
    CHECK(!bad.physical());
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    CHECK_THROWS_AS(thermal_state(-1.0), std::invalid_argument);
}

TEST_CASE("wbar vanishes at tau = 0 and obeys the frozen-rotation limit") {
    const QbmChannel qbm(coeffs::build_table(params(0.3, 10.0)));
    CHECK(mnorm(qbm.wbar(0.0)) == 0.0);

    // delta = c, pi = gamma = 0, negligible rotation: Wbar ~ c tau J00
    const double c = 0.5;
    const QbmChannel frozen(synthetic_table(1e6, 0.0, c, 0.0, 2.0));
    Mat2 expect = Mat2::Zero();
    expect(0, 0) = c * 2.0;
    CHECK(mnorm(frozen.wbar(2.0) - expect) < 1e-4);
}

TEST_CASE("wbar matches the RK4 reference of its differential form") {
    const QbmChannel qbm(coeffs::build_table(params(0.1, 12.0)));
    const oracle::WbarOde ode{0.1, 100.0, 0.1};
    const Eigen::Matrix2d ref = ode.run(10.0);
    const Mat2 got = qbm.wbar(10.0);
    CHECK_MESSAGE(mnorm(got - ref) < 1e-6, "got\n", got(0, 0), " ", got(0, 1), " ", got(1, 1),
                  " want ", ref(0, 0), " ", ref(0, 1), " ", ref(1, 1));
    CHECK(got(0, 1) == got(1, 0));  // symmetric by construction
}

TEST_CASE("channel map basics") {
    const QbmChannel qbm(coeffs::build_table(params(0.3, 20.0)));
    const ChannelMap m0 = qbm.map(0.0);
    CHECK(mnorm(m0.X - Mat2::Identity()) == 0.0);
    CHECK(mnorm(m0.Y) == 0.0);

    // gamma = 0: pure rotation, det X = 1 for all tau
    const QbmChannel rot(synthetic_table(0.5, 0.0, 0.2, 0.1, 10.0));
    for (double tau : {0.5, 2.0, 7.5}) {
        CHECK(rot.map(tau).X.determinant() == doctest::Approx(1.0).epsilon(1e-13));
    }
    CHECK_THROWS_AS(qbm.map(21.0), std::out_of_range);
    CHECK_THROWS_AS(qbm.map(-0.1), std::out_of_range);
}

TEST_CASE("evolve: identity, full thermalization, physicality") {
    const GaussianState in = squeezed_state(0.8);
    const GaussianState same = evolve(ChannelMap{}, in);
    CHECK(mnorm(same.cov - in.cov) == 0.0);

    ChannelMap full;  // X = 0: output is Y regardless of input
    full.X = Mat2::Zero();
    full.Y = thermal_state(3.0).cov;
    CHECK(mnorm(evolve(full, in).cov - full.Y) == 0.0);
    CHECK(evolve(full, in).mean.norm() == 0.0);

    const QbmChannel qbm(coeffs::build_table(params(0.1, 12.0)));
    const GaussianState out = evolve(qbm.map(10.0), vacuum_state());
    CHECK(out.cov.determinant() >= 0.25 - 1e-9);

    GaussianState bad;
    bad.cov = 0.05 * Mat2::Identity();
    CHECK_THROWS_AS(evolve(ChannelMap{}, bad), std::invalid_argument);
}

TEST_CASE("covariance update agrees with the transposed-inverse-rotation form") {
    // X sigma X^T + Y with X = e^{-G/2} R equals
    // [e^{-G/2} R^{-1}]^T sigma [e^{-G/2} R^{-1}] + 2 Wbar since R^{-1} = R^T
    const QbmChannel qbm(coeffs::build_table(params(0.1, 12.0)));
    const GaussianState in = squeezed_state(0.6);
    for (double tau : {1.0, 5.0, 10.0}) {
        const ChannelMap m = qbm.map(tau);
        const GaussianState out = evolve(m, in);
        const Mat2 rinv = rotation(tau, 0.1).inverse();
        const double damp = std::exp(-qbm.table().gamma_cum_at(tau));
        const Mat2 alt = damp * rinv.transpose() * in.cov * rinv + 2.0 * qbm.wbar(tau);
        CHECK(mnorm(out.cov - alt) < 1e-13 * std::max(1.0, mnorm(alt)));
    }
}

TEST_CASE("characteristic function") {
    const Vec2 zero = Vec2::Zero();
    for (const GaussianState& s :
         {vacuum_state(), thermal_state(1.5), squeezed_state(0.7), coherent_state(1.0, -2.0)}) {
        CHECK(std::abs(char_function(s, zero) - std::complex<double>(1.0, 0.0)) == 0.0);
    }
    // |chi| <= 1 on a grid, and the vacuum value is exp(-|L|^2/4)
    for (double lx = -2.0; lx <= 2.0; lx += 0.5) {
        for (double lp = -2.0; lp <= 2.0; lp += 0.5) {
            const Vec2 l(lx, lp);
            CHECK(std::abs(char_function(squeezed_state(0.5), l)) <= 1.0 + 1e-15);
            CHECK(std::abs(char_function(vacuum_state(), l)) ==
                  doctest::Approx(std::exp(-0.25 * l.squaredNorm())).epsilon(1e-13));
        }
    }
}

TEST_CASE("distinct inputs contract toward a common state") {
    // || sigma1(tau) - sigma2(tau) || = e^{-Gamma(tau)} || sigma1(0) - sigma2(0) ||
    // exactly (rotations preserve the Frobenius norm); the gap closes at the
    // slow rate Gamma ~ 2 gamma_as tau
    const QbmChannel qbm(coeffs::build_table(params(0.1, 80.0)));
    const GaussianState a = thermal_state(1.0);
    const GaussianState b = squeezed_state(0.5);
    const double d0 = mnorm(a.cov - b.cov);
    double prev = d0;
    for (double tau : {20.0, 40.0, 60.0, 80.0}) {
        const ChannelMap m = qbm.map(tau);
        const double d = mnorm(evolve(m, a).cov - evolve(m, b).cov);
        const double expect = std::exp(-qbm.table().gamma_cum_at(tau)) * d0;
        CHECK(d == doctest::Approx(expect).epsilon(1e-10));
        CHECK(d < prev * (1.0 + 1e-12));
        prev = d;
    }
}

TEST_CASE("intermediate map: identity at eps = 0 and composition law") {
    const QbmChannel qbm(coeffs::build_table(params(0.1, 20.0)));
    const ChannelMap m0 = qbm.intermediate_map(5.0, 0.0);
    CHECK(mnorm(m0.X - Mat2::Identity()) < 1e-15);
    CHECK(mnorm(m0.Y) < 1e-13);

    std::mt19937 rng(99);
    std::uniform_real_distribution<double> pick(0.0, 20.0);
    for (int i = 0; i < 12; ++i) {
        double t1 = pick(rng), t2 = pick(rng);
        if (t1 > t2) std::swap(t1, t2);
        const ChannelMap full1 = qbm.map(t1);
        const ChannelMap full2 = qbm.map(t2);
        const ChannelMap inter = qbm.intermediate_map(t1, t2 - t1);
        CHECK(mnorm(full2.X - inter.X * full1.X) <= 1e-8);
        CHECK(mnorm(full2.Y - (inter.X * full1.Y * inter.X.transpose() + inter.Y)) <= 1e-8);
    }

    // against the composition oracle X(t+e) X(t)^{-1}
    const ChannelMap inter = qbm.intermediate_map(5.0, 1e-3);
    const Mat2 xref = qbm.map(5.001).X * qbm.map(5.0).X.inverse();
    CHECK(mnorm(inter.X - xref) < 1e-10);
}

TEST_CASE("z matrix: unitary channel gives zero, Hermitian in general") {
    const QbmChannel unitary(synthetic_table(0.5, 0.0, 0.0, 0.0, 10.0));
    const ZMatrix z0 = unitary.z_matrix(3.0, 0.01);
    CHECK(z0.m.norm() < 1e-15);

    const QbmChannel qbm(coeffs::build_table(params(0.1, 20.0)));
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> pick(0.1, 15.0);
    for (int i = 0; i < 10; ++i) {
        const ZMatrix z = qbm.z_matrix(pick(rng), 1e-3);
        CHECK((z.m - z.m.adjoint()).norm() < 1e-14 * std::max(1.0, z.m.norm()));
        CHECK(!z.rescaled);
    }
    CHECK_THROWS_AS(qbm.z_matrix(5.0, 0.0), std::invalid_argument);
}

TEST_CASE("first-order z structure") {
    // delta = 1, pi = gamma = 0 -> [[2,0],[0,0]]
    const QbmChannel a(synthetic_table(0.5, 0.0, 1.0, 0.0, 4.0));
    const ZMatrix za = a.z_matrix_firstorder(2.0);
    CHECK(std::abs(za.m(0, 0) - 2.0) < 1e-12);
    CHECK(std::abs(za.m(0, 1)) < 1e-12);
    CHECK(std::abs(za.m(1, 1)) < 1e-12);
    CHECK(za.rescaled);

    // delta = pi = 0, gamma = 1 -> [[0,-i],[i,0]], eigenvalues +-1
    const QbmChannel b(synthetic_table(0.5, 1.0, 0.0, 0.0, 4.0));
    const ZMatrix zb = b.z_matrix_firstorder(2.0);
    CHECK(std::abs(zb.m(0, 1) - std::complex<double>(0.0, -1.0)) < 1e-12);
    const ZSpectrum sb = z_eigenvalues(zb);
    CHECK(sb.lambda_plus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(sb.lambda_minus == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("finite-eps z converges to the first-order form at rate eps") {
    // fine dedicated grid so that tau and tau+eps are exact nodes
    coeffs::ChannelParams p = params(0.1, 5.2);
    p.n_grid = 520001;  // h = 1e-5
    const QbmChannel qbm(coeffs::build_table(p));
    const double tau = 5.0;
    const Eigen::Matrix2cd z1 = qbm.z_matrix_firstorder(tau).m;
    double prev_err = -1.0;
    for (double eps : {1e-2, 5e-3, 2.5e-3}) {
        const Eigen::Matrix2cd zf = qbm.z_matrix(tau, eps).m / eps;
        const double err = (zf - z1).norm();
        if (prev_err > 0.0) {
            const double ratio = prev_err / err;
            CHECK_MESSAGE(ratio > 1.6, "eps=", eps, " ratio=", ratio);
            CHECK_MESSAGE(ratio < 2.6, "eps=", eps, " ratio=", ratio);
        }
        prev_err = err;
    }
}

TEST_CASE("z eigenvalues closed form") {
    ZMatrix z;
    z.m << std::complex<double>(6.0, 0.0), std::complex<double>(0.0, -4.0),
        std::complex<double>(0.0, 4.0), std::complex<double>(0.0, 0.0);
    const ZSpectrum s = z_eigenvalues(z);  // delta=3, gamma=4, pi=0 -> 3 +- 5
    CHECK(s.lambda_plus == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(s.lambda_minus == doctest::Approx(-2.0).epsilon(1e-14));

    ZMatrix zero;
    const ZSpectrum s0 = z_eigenvalues(zero);
    CHECK(s0.lambda_plus == 0.0);
    CHECK(s0.lambda_minus == 0.0);

    // lambda+ lambda- = -(gamma^2 + pi^2)
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> pick(-2.0, 2.0);
    for (int i = 0; i < 25; ++i) {
        const double d = pick(rng), g = pick(rng), pp = pick(rng);
        ZMatrix zz;
        zz.m(0, 0) = 2.0 * d;
        zz.m(0, 1) = std::complex<double>(-pp, -g);
        zz.m(1, 0) = std::complex<double>(-pp, g);
        zz.m(1, 1) = 0.0;
        const ZSpectrum sp = z_eigenvalues(zz);
        CHECK(sp.lambda_plus * sp.lambda_minus ==
              doctest::Approx(-(g * g + pp * pp)).epsilon(1e-9));
    }

    ZMatrix nonherm;
    nonherm.m(0, 1) = std::complex<double>(1.0, 0.0);
    CHECK_THROWS_AS(z_eigenvalues(nonherm), std::invalid_argument);
}

TEST_CASE("lambda_minus < 0 along the exact high-T Ohmic evolution") {
    for (double x : {0.1, 0.3, 0.5}) {
        const coeffs::CoefficientTable t = coeffs::build_table(params(x, 50.0));
        for (std::size_t k = 1; k < t.size(); k += 7) {
            const ZSpectrum s = z_eigenvalues(z_matrix_firstorder(t, t.tau[k]));
            CHECK(s.lambda_minus < 0.0);
        }
    }
}

TEST_CASE("physicality preserved for vacuum and squeezed inputs") {
    for (double x : {0.1, 0.3, 0.5}) {
        const QbmChannel qbm(coeffs::build_table(params(x, 50.0)));
        for (const GaussianState& in : {vacuum_state(), squeezed_state(1.0)}) {
            for (double tau = 0.0; tau <= 50.0; tau += 0.25) {
                const GaussianState out = evolve(qbm.map(tau), in);
                CHECK(out.cov.determinant() >= 0.25 - 1e-9);
            }
        }
    }
}
