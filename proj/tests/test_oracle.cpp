#include <gtest/gtest.h>

#include "rcop/cone.hpp"
#include "rcop/errors.hpp"
#include "rcop/oracle.hpp"
#include "rcop/registry.hpp"
#include "test_support.hpp"

namespace rcop {
namespace {

InvariantSpace<double> sym2() {
    return InvariantSpace<double>(Graph::unlabeled(2, {{0, 1}}), PermutationGroup::generated_by(2, {}));
}

InvariantSpace<double> ray(int p) {
    const Graph g = Graph::unlabeled(p, {});
    return InvariantSpace<double>(g, automorphism_group(g));
}

double closed_form(const InvariantSpace<double>& z, double alpha, const MatrixXd& y) {
    const auto real = find_realization(z, &butterfly_registry());
    const auto dp = real->delta_phi(y);
    return std::exp(real->log_gamma(alpha) + dp.log_phi - alpha * dp.log_delta);
}

TEST(MonteCarlo, FullSym2AtIdentity) {
    const auto z = sym2();
    const MatrixXd y = MatrixXd::Identity(2, 2);
    const double closed = std::sqrt(2.0 * M_PI) * std::tgamma(2.0) * std::tgamma(2.5);
    EXPECT_NEAR(closed_form(z, 1.0, y), closed, 1e-12);
    const auto est = mc_cone_integral(z, 1.0, y, 400000);
    EXPECT_LT(std::abs(est.value - closed), 3.0 * est.std_error);
    EXPECT_GT(est.std_error, 0.0);
    EXPECT_EQ(est.samples, 400000);
    EXPECT_EQ(est.seed, kDefaultMcSeed);
}

TEST(MonteCarlo, RayMatchesOneDimensionalFormula) {
    for (int p = 1; p <= 3; ++p) {
        const auto z = ray(p);
        const double closed = std::pow(double(p), -p - 0.5) * std::tgamma(p + 1.0);
        const auto est = mc_cone_integral(z, 1.0, MatrixXd(MatrixXd::Identity(p, p)), 200000);
        EXPECT_LT(std::abs(est.value - closed), 3.0 * est.std_error) << "p=" << p;
    }
}

TEST(MonteCarlo, Gamma7AtHalfIdentity) {
    const auto z = testing::butterfly_space("Gamma7");
    const MatrixXd y = MatrixXd::Identity(5, 5) / 2.0;
    const auto est = mc_cone_integral(z, 0.5, y, 400000);
    EXPECT_LT(std::abs(est.value - closed_form(z, 0.5, y)), 3.0 * est.std_error);
}

TEST(MonteCarlo, AlphaZero) {
    const auto z = sym2();
    MatrixXd y(2, 2);
    y << 2, 0.5, 0.5, 1;
    const auto est = mc_cone_integral(z, 0.0, y, 400000);
    EXPECT_LT(std::abs(est.value - closed_form(z, 0.0, y)), 3.0 * est.std_error);
}

TEST(MonteCarlo, DeterministicPerSeedAndSeedsAgree) {
    const auto z = testing::butterfly_space("Gamma7");
    const MatrixXd y = MatrixXd::Identity(5, 5);
    const auto a = mc_cone_integral(z, 1.0, y, 100000, 1);
    const auto b = mc_cone_integral(z, 1.0, y, 100000, 1);
    const auto c = mc_cone_integral(z, 1.0, y, 100000, 2);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.std_error, b.std_error);
    EXPECT_NE(a.value, c.value);
    EXPECT_LT(std::abs(a.value - c.value), 4.0 * std::hypot(a.std_error, c.std_error));
}

TEST(MonteCarlo, Guards) {
    EXPECT_THROW(mc_cone_integral(testing::butterfly_space("Gamma1"), 1.0, MatrixXd(MatrixXd::Identity(5, 5)), 1000),
                 ScopeError);
    EXPECT_THROW(mc_cone_integral(sym2(), -1.0, MatrixXd(MatrixXd::Identity(2, 2)), 1000), DomainError);
}

TEST(MonteCarlo, EffectiveSampleSizeIsReported) {
    const auto est = mc_cone_integral(sym2(), 1.0, MatrixXd(MatrixXd::Identity(2, 2)), 50000);
    EXPECT_GT(est.effective_sample_size, 0.0);
    EXPECT_LE(est.effective_sample_size, double(est.samples) + 1e-6);
    EXPECT_FALSE(est.variance_warning);
}

TEST(FiniteDifferences, LinearFieldHasZeroHessian) {
    const VectorXd c = VectorXd::LinSpaced(4, 1.0, 4.0);
    const ScalarField f = [&](const VectorXd& v) { return c.dot(v); };
    const VectorXd at = VectorXd::Ones(4);
    EXPECT_TRUE(finite_diff_gradient(f, at, 1e-4).isApprox(c, 1e-9));
    EXPECT_LT(finite_diff_hessian(f, at, 1e-3).norm(), 1e-8);
}

TEST(FiniteDifferences, QuadraticHessianIsExactAndSymmetric) {
    MatrixXd a(3, 3);
    a << 2, 1, 0, 1, 3, -1, 0, -1, 4;
    const ScalarField f = [&](const VectorXd& v) { return 0.5 * v.dot(a * v); };
    const MatrixXd h = finite_diff_hessian(f, VectorXd::Ones(3), 1e-3);
    EXPECT_TRUE(h.isApprox(a, 1e-7));
    EXPECT_EQ(h, h.transpose());
}

TEST(FiniteDifferences, Gamma2HessianMatchesS) {
    const auto z = testing::butterfly_space("Gamma2");
    std::mt19937_64 rng(51);
    const MatrixXd y = testing::random_dual_point(z, rng);
    const auto f = in_coordinates(z, [&](const MatrixXd& m) { return -log_delta(z, m); });
    const MatrixXd h = finite_diff_hessian(f, z.coordinates(y), 1e-4);
    EXPECT_LT((h - hessian_matrix(z, y)).norm(), 1e-5 * std::max(1.0, h.norm()));
}

TEST(FiniteDifferences, StencilFailureIsReported) {
    const auto z = sym2();
    const auto f = in_coordinates(z, [&](const MatrixXd& m) { return -log_delta(z, m); });
    // One unit away from the boundary of the cone, a step of 2 leaves it.
    const VectorXd at = z.coordinates(MatrixXd::Identity(2, 2) * 1e-3);
    EXPECT_THROW(finite_diff_gradient(f, at, 2.0), DomainError);
    EXPECT_THROW(finite_diff_hessian(f, at, 2.0), DomainError);
    EXPECT_THROW(finite_diff_gradient(f, at, 0.0), DomainError);
}

}  // namespace
}  // namespace rcop
