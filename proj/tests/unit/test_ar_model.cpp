#include <doctest.h>

#include <sstream>

#include "arlab/ar_model.hpp"
#include "arlab/error.hpp"
#include "arlab/gram.hpp"
#include "support.hpp"

using namespace arlab;
using namespace arlab::testing;

TEST_CASE("simulate with zero dynamics returns the raw noise") {
    const SeedSpec seed{5, 1};
    const Trajectory z = simulate(SystemMatrix::scalar(0.0), 3, seed);
    const Trajectory w = draw_noise(1, 3, seed);
    CHECK(z.states() == w.states());
}

TEST_CASE("identity dynamics with null noise keeps every state at z_1") {
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(2, 3);
    w.col(0) << 0.3, -1.1;
    const Trajectory z = color(Trajectory(w), SystemMatrix::identity(2));
    for (Index k = 0; k < 3; ++k) CHECK(z.state(k) == w.col(0));
}

TEST_CASE("simulate is deterministic and consumes its stream in (k, j) order") {
    const SystemMatrix a = SystemMatrix::parse("0.5,0.2;-0.1,0.7");
    const Trajectory z1 = simulate(a, 50, SeedSpec{11, 3});
    const Trajectory z2 = simulate(a, 50, SeedSpec{11, 3});
    CHECK(z1.states() == z2.states());
    CHECK(simulate(a, 50, SeedSpec{11, 4}).states() != z1.states());

    CounterRng rng(SeedSpec{11, 3});
    const Trajectory w = draw_noise(2, 50, SeedSpec{11, 3});
    CHECK(w.states()(0, 0) == rng.normal());
    CHECK(w.states()(1, 0) == rng.normal());
    CHECK(w.states()(0, 1) == rng.normal());
}

TEST_CASE("long scalar run: mean of z_k^2 tracks the averaged state covariance") {
    // Oracle: (1/n) sum_i P_i from the gram module; batch means for the SE
    // because consecutive z_k^2 are correlated.
    const Index n = 10000;
    const SystemMatrix a = SystemMatrix::scalar(0.5);
    const Trajectory z = simulate(a, n, SeedSpec{2024, 0});
    const Index batch = 100;
    std::vector<double> means;
    for (Index b = 0; b < n / batch; ++b) means.push_back(z.states().middleCols(b * batch, batch).squaredNorm() / batch);
    double mean = 0.0;
    for (double m : means) mean += m;
    mean /= static_cast<double>(means.size());
    double ss = 0.0;
    for (double m : means) ss += (m - mean) * (m - mean);
    const double se = std::sqrt(ss / (means.size() - 1) / means.size());
    const double expected = gram(a, n).matrix(0, 0) / static_cast<double>(n);
    CHECK(std::abs(expected - 4.0 / 3.0) < 1e-3);
    CHECK(std::abs(mean - expected) <= 3.0 * se);
}

TEST_CASE("whiten scalar example") {
    Eigen::MatrixXd z(1, 3);
    z << 1.0, 0.7, 0.2;
    const Trajectory w = whiten(Trajectory(z), SystemMatrix::scalar(0.5));
    CHECK(w.states()(0, 0) == doctest::Approx(1.0));
    CHECK(w.states()(0, 1) == doctest::Approx(0.2));
    CHECK(w.states()(0, 2) == doctest::Approx(-0.15));
}

TEST_CASE("whiten recovers the noise drawn inside simulate") {
    const SystemMatrix a = SystemMatrix::parse("0.9,0.3;-0.2,0.4");
    const SeedSpec seed{77, 0};
    const Trajectory w = whiten(simulate(a, 40, seed), a);
    const Trajectory noise = draw_noise(2, 40, seed);
    CHECK((w.states() - noise.states()).cwiseAbs().maxCoeff() <= 1e-12 * (1.0 + noise.states().cwiseAbs().maxCoeff()));
}

TEST_CASE("color scalar example") {
    Eigen::MatrixXd w(1, 3);
    w << 1.0, 0.0, 0.0;
    const Trajectory z = color(Trajectory(w), SystemMatrix::scalar(0.5));
    CHECK(z.states()(0, 1) == 0.5);
    CHECK(z.states()(0, 2) == 0.25);
}

TEST_CASE("whiten and color match the dense factors") {
    std::mt19937_64 gen(1);
    for (int rep = 0; rep < 10; ++rep) {
        const SystemMatrix a2 = random_system(gen, 2);
        const Trajectory z = random_trajectory(gen, 2, 6);
        const Eigen::VectorXd dense_w = dense_inverse_factor(a2, 6) * z.stacked();
        const Trajectory w = whiten(z, a2);
        CHECK((w.stacked() - dense_w).norm() <= 1e-12 * dense_w.norm());

        const SystemMatrix a3 = random_system(gen, 3);
        const Trajectory noise = random_trajectory(gen, 3, 5);
        const Eigen::VectorXd dense_z = dense_factor(a3, 5) * noise.stacked();
        const Trajectory zz = color(noise, a3);
        CHECK((zz.stacked() - dense_z).norm() <= 1e-12 * dense_z.norm());
    }
}

TEST_CASE("color and whiten are inverse to roundoff") {
    std::mt19937_64 gen(2);
    for (int rep = 0; rep < 50; ++rep) {
        const Index d = 1 + rep % 3;
        const SystemMatrix a = random_system(gen, d, -0.9, 0.9);
        const Trajectory z = random_trajectory(gen, d, 20);
        const Trajectory back = color(whiten(z, a), a);
        CHECK((back.states() - z.states()).norm() <= 1e-12 * z.states().norm() * 10);
        const Trajectory fwd = whiten(color(z, a), a);
        CHECK((fwd.states() - z.states()).norm() <= 1e-12 * color(z, a).states().norm() * 10);
    }
}

TEST_CASE("log_density examples") {
    CHECK(log_density(Trajectory::zeros(1, 1), SystemMatrix::scalar(0.7)) == doctest::Approx(-0.918938533204673));
    Eigen::MatrixXd z(1, 2);
    z << 1.0, 0.5;
    const Trajectory t(z);
    const double expected = -std::log(2.0 * std::numbers::pi) - 0.625;
    CHECK(log_density(t, SystemMatrix::scalar(0.0)) == doctest::Approx(expected).epsilon(1e-14));
    CHECK(dense_log_density(dense_covariance(SystemMatrix::scalar(0.0), 2), t.stacked()) ==
          doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("log_density equals the dense Gaussian log-density and det Sigma = 1") {
    std::mt19937_64 gen(3);
    for (int rep = 0; rep < 30; ++rep) {
        const Index d = 1 + rep % 3;
        const Index n = 2 + static_cast<Index>(gen() % 40);
        const SystemMatrix a = random_stable(gen, d, 0.95);
        const Trajectory z = simulate(a, n, SeedSpec{3, static_cast<std::uint64_t>(rep)});
        const Eigen::MatrixXd sigma = dense_covariance(a, n);
        CHECK(std::abs(log_density(z, a) - dense_log_density(sigma, z.stacked())) <= 1e-8);
        CHECK(std::abs(dense_log_det(sigma)) <= 1e-8);
    }
}

TEST_CASE("dense_covariance examples") {
    CHECK(dense_covariance(SystemMatrix::scalar(0.0), 3) == Eigen::MatrixXd::Identity(3, 3));
    Eigen::MatrixXd expected(2, 2);
    expected << 1, 1, 1, 2;
    CHECK(dense_covariance(SystemMatrix::scalar(1.0), 2) == expected);
    CHECK_THROWS_AS(dense_covariance(SystemMatrix::zero(2), 1001), ValidationError);
}

TEST_CASE("precondition and overflow errors") {
    const SystemMatrix a = SystemMatrix::identity(2);
    CHECK_THROWS_AS(simulate(a, 0, SeedSpec{}), ValidationError);
    CHECK_THROWS_AS(whiten(Trajectory::zeros(3, 4), a), ValidationError);
    CHECK_THROWS_AS(color(Trajectory::zeros(1, 4), a), ValidationError);
    CHECK_THROWS_AS(log_density(Trajectory::zeros(1, 4), a), ValidationError);
    CHECK_THROWS_AS(SystemMatrix(Eigen::MatrixXd::Zero(2, 3)), ValidationError);
    CHECK_THROWS_AS(SystemMatrix::scalar(std::nan("")), ValidationError);

    Eigen::MatrixXd w = Eigen::MatrixXd::Ones(1, 3);
    try {
        color(Trajectory(w), SystemMatrix::scalar(1e200));
        FAIL("expected overflow");
    } catch (const OverflowError& e) {
        CHECK(e.step() == 3);
    }
}

TEST_CASE("trajectory csv round trip") {
    const Trajectory z = simulate(SystemMatrix::parse("0.3,0;0.1,-0.4"), 7, SeedSpec{1, 1});
    std::stringstream s;
    write_csv(s, z);
    CHECK(s.str().rfind("k,z_1,z_2\n1,", 0) == 0);
    const Trajectory back = read_csv(s);
    CHECK(back.states() == z.states());

    std::stringstream bad("k,z_1\n1,0.5\n3,0.1\n");
    CHECK_THROWS_AS(read_csv(bad), ValidationError);
}
