#include <gtest/gtest.h>

#include <random>

#include "rcop/cone.hpp"
#include "rcop/errors.hpp"
#include "rcop/realization.hpp"
#include "rcop/registry.hpp"
#include "rcop/selection.hpp"
#include "test_support.hpp"

namespace rcop {
namespace {

using testing::butterfly_space;
using testing::kDistinctLabels;

const double kR = 1.0 / std::sqrt(2.0);

Realization<double> butterfly_realization(const std::string& label) {
    const auto z = butterfly_space(label);
    auto r = find_realization(z, &butterfly_registry());
    if (!r) throw std::runtime_error("no realization for " + label);
    return *r;
}

VStructure<double> gamma3_structure() {
    MatrixXd ones(1, 2);
    ones << kR, kR;
    return VStructure<double>({2, 2, 1}, {{{1, 0}, {MatrixXd::Identity(2, 2) * kR}},
                                          {{2, 0}, {ones}},
                                          {{2, 1}, {ones}}});
}

TriangularElement<double> random_triangular(const VStructure<double>& v, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> pos(0.5, 2.0);
    std::normal_distribution<double> n(0.0, 1.0);
    VectorXd d(v.rank());
    for (int k = 0; k < v.rank(); ++k) d[k] = pos(rng);
    std::map<BlockIndex, MatrixXd> blocks;
    for (const auto& [idx, basis] : v.subspaces()) {
        MatrixXd b = MatrixXd::Zero(v.block_size(idx.first), v.block_size(idx.second));
        for (const auto& a : basis) b += n(rng) * a;
        blocks[idx] = b;
    }
    return make_triangular(v, d, blocks);
}

TEST(Axioms, FullSym2IsValid) {
    EXPECT_TRUE(validate_vstructure(VStructure<double>::full_symmetric(2)).ok());
}

TEST(Axioms, RankOneProductBreaksV1) {
    MatrixXd e1(2, 1), e2(2, 1);
    e1 << 1, 0;
    e2 << 0, 1;
    const VStructure<double> v({1, 2}, {{{1, 0}, {e1, e2}}});
    const auto report = validate_vstructure(v);
    EXPECT_FALSE(report.v1);
    EXPECT_FALSE(report.ok());
    ASSERT_FALSE(report.failures.empty());
}

TEST(Axioms, Gamma3StructureIsValid) {
    const auto v = gamma3_structure();
    EXPECT_TRUE(validate_vstructure(v).ok());
    EXPECT_EQ(v.dim(), 6);
    EXPECT_EQ(v.q(0), 2);
    EXPECT_EQ(v.q(1), 1);
    EXPECT_EQ(v.q(2), 0);
}

TEST(Axioms, RegistryStructuresAreValid) {
    for (const auto& e : butterfly_registry().entries) {
        const auto report = validate_vstructure(e.v);
        EXPECT_TRUE(report.ok()) << e.id;
    }
}

TEST(Axioms, V3FailureIsReported) {
    // 1x1 blocks with V21 and V32 present but V31 missing: A B lands outside V31.
    const VStructure<double> v({1, 1, 1}, {{{1, 0}, {MatrixXd::Ones(1, 1)}}, {{2, 1}, {MatrixXd::Ones(1, 1)}}});
    const auto report = validate_vstructure(v);
    EXPECT_TRUE(report.v1);
    EXPECT_FALSE(report.v3);
}

TEST(VStructure, RejectsBadShapesAndNonOrthonormalBases) {
    EXPECT_THROW(VStructure<double>({}, {}), ShapeError);
    EXPECT_THROW(VStructure<double>({1, 1}, {{{0, 1}, {MatrixXd::Ones(1, 1)}}}), ShapeError);
    EXPECT_THROW(VStructure<double>({1, 1}, {{{1, 0}, {MatrixXd::Ones(2, 1)}}}), ShapeError);
    EXPECT_THROW(VStructure<double>({1, 1}, {{{1, 0}, {MatrixXd::Ones(1, 1) * 2}}}), DomainError);
}

TEST(VStructure, SpaceDimensionIsRankPlusSubspaces) {
    for (const auto& e : butterfly_registry().entries) {
        const auto zv = e.v.space();
        EXPECT_EQ(zv.dim(), e.v.dim()) << e.id;
        for (int a = 0; a < zv.dim(); ++a) {
            for (int b = 0; b < zv.dim(); ++b) {
                EXPECT_NEAR(trace_inner(zv.basis(a), zv.basis(b)), a == b ? 1.0 : 0.0, 1e-15);
            }
        }
    }
}

TEST(Conjugation, Gamma2MatchesDisplayedPattern) {
    const double a = 1.1, b = 0.3, c = 0.2, d = 2.0, e = 0.4, f = 0.5, g = 1.7, h = 0.6, i = 1.9;
    MatrixXd x(5, 5);
    x << a, b, c, 0, 0,
         b, a, c, 0, 0,
         c, c, d, e, f,
         0, 0, e, g, h,
         0, 0, f, h, i;
    const auto real = butterfly_realization("Gamma2");
    const double s = std::sqrt(2.0) * c;
    MatrixXd expected(5, 5);
    expected << a - b, 0, 0, 0, 0,
                0, a + b, 0, 0, s,
                0, 0, g, h, e,
                0, 0, h, i, f,
                0, s, e, f, d;
    EXPECT_LT((real.to_realized(x) - expected).norm(), 1e-14);
}

TEST(Conjugation, Gamma1IsAReordering) {
    MatrixXd x(5, 5);
    x << 11, 21, 31, 0, 0,
         21, 22, 32, 0, 0,
         31, 32, 33, 43, 53,
         0, 0, 43, 44, 54,
         0, 0, 53, 54, 55;
    MatrixXd expected(5, 5);
    expected << 11, 21, 0, 0, 31,
                21, 22, 0, 0, 32,
                0, 0, 44, 54, 43,
                0, 0, 54, 55, 53,
                31, 32, 43, 53, 33;
    const auto real = butterfly_realization("Gamma1");
    EXPECT_LT((real.to_realized(x) - expected).norm(), 1e-13);
    EXPECT_TRUE((real.u().array().abs() == 1.0 || real.u().array() == 0.0).all());
}

TEST(Conjugation, IdentityOnFullSymmetric) {
    const Graph k3 = Graph::unlabeled(3, {{0, 1}, {0, 2}, {1, 2}});
    const InvariantSpace<double> z(k3, PermutationGroup::generated_by(3, {}));
    EXPECT_NO_THROW(conjugate_space<double>(z, MatrixXd::Identity(3, 3), VStructure<double>::full_symmetric(3)));
}

TEST(Conjugation, MismatchIsRejected) {
    const auto z = butterfly_space("Gamma2");
    const auto& e = *butterfly_registry().find("Gamma2");
    EXPECT_THROW(conjugate_space<double>(z, MatrixXd::Identity(5, 5), e.v), ConjugationError);
    MatrixXd skewed = e.u;
    skewed(0, 0) *= 2;
    EXPECT_THROW(conjugate_space<double>(z, skewed, e.v), ConjugationError);
    const auto& other = *butterfly_registry().find("Gamma3");
    EXPECT_THROW(conjugate_space<double>(z, e.u, other.v), ConjugationError);
}

TEST(Conjugation, CoordinateMapIsOrthogonal) {
    for (const char* label : kDistinctLabels) {
        const auto real = butterfly_realization(label);
        const MatrixXd m = real.coordinate_map();
        EXPECT_TRUE((m.transpose() * m).isApprox(MatrixXd::Identity(m.cols(), m.cols()), 1e-12)) << label;
    }
}

TEST(Gamma, MatchesPrintedFormulas) {
    for (const char* label : kDistinctLabels) {
        const auto real = butterfly_realization(label);
        for (double a : {0.0, 0.5, 1.0, 2.5, 43.5, 44.0}) {
            const double expected = testing::closed_log_gamma(label, a);
            EXPECT_NEAR(real.log_gamma(a), expected, 1e-10 * std::max(1.0, std::abs(expected))) << label << " " << a;
        }
    }
}

TEST(Gamma, RayMatchesQuadrature) {
    for (int p = 1; p <= 3; ++p) {
        const VStructure<double> ray({p}, {});
        for (double a : {0.5, 1.0, 2.0}) {
            // integral over t > 0 of exp(-p t) t^{p a} sqrt(p), composite Simpson after t = s^2.
            const int n = 200000;
            const double s_max = std::sqrt(60.0 / p);
            const double h = s_max / n;
            auto f = [&](double s) {
                const double t = s * s;
                return std::exp(-p * t) * std::pow(t, p * a) * std::sqrt(double(p)) * 2.0 * s;
            };
            double sum = f(0) + f(s_max);
            for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
            const double quad = sum * h / 3.0;
            EXPECT_NEAR(std::exp(log_gamma_v(ray, a)), quad, 1e-9 * quad) << "p=" << p << " a=" << a;
            const double formula = (-p * a - 0.5) * std::log(double(p)) + std::lgamma(p * a + 1.0);
            EXPECT_NEAR(log_gamma_v(ray, a), formula, 1e-12);
        }
    }
}

TEST(Gamma, SiegelConsistency) {
    for (int p = 2; p <= 4; ++p) {
        const auto v = VStructure<double>::full_symmetric(p);
        for (double a : {0.0, 0.5, 1.0, 7.25, 43.5}) {
            EXPECT_NEAR(log_gamma_v(v, a), testing::siegel_log_gamma(p, a), 1e-10 * std::max(1.0, std::abs(testing::siegel_log_gamma(p, a))));
        }
    }
}

TEST(Gamma, NegativeAlphaIsRejected) {
    EXPECT_THROW(log_gamma_v(VStructure<double>::full_symmetric(2), -0.5), DomainError);
}

TEST(FactorT, IdentityPoint) {
    const auto v = gamma3_structure();
    const auto t = factor_T(v, MatrixXd(MatrixXd::Identity(5, 5)));
    EXPECT_TRUE(t.matrix.isApprox(MatrixXd::Identity(5, 5), 1e-15));
    const auto dp = delta_phi_fast(v, MatrixXd(MatrixXd::Identity(5, 5)));
    EXPECT_NEAR(dp.log_delta, 0.0, 1e-15);
    EXPECT_NEAR(dp.log_phi, 0.0, 1e-14);
}

TEST(FactorT, HandSolvedTwoByTwo) {
    MatrixXd y(2, 2);
    y << 5, 2, 2, 1;
    const auto t = factor_T(VStructure<double>::full_symmetric(2), y);
    MatrixXd expected(2, 2);
    expected << 1, 0, 2, 1;
    EXPECT_TRUE(t.matrix.isApprox(expected, 1e-14));
    EXPECT_TRUE((t.matrix.transpose() * t.matrix).isApprox(y, 1e-14));
    EXPECT_NEAR(delta_phi_fast(VStructure<double>::full_symmetric(2), y).log_delta, std::log(y.determinant()), 1e-14);
}

TEST(FactorT, Gamma3AtExamScatter) {
    const auto real = butterfly_realization("Gamma3");
    const auto data = exam_marks_fixture();
    const MatrixXd y = real.to_realized(real.space().project(data.scatter / 87.0));
    const auto t = factor_T(real.vstructure(), y);
    EXPECT_TRUE((t.diagonal.array() > 0).all());
    const MatrixXd back = real.realized_space().project(MatrixXd(t.matrix.transpose() * t.matrix));
    EXPECT_LT((back - y).norm(), 1e-10);
}

TEST(FactorT, BreakdownSignalsNonDualPoint) {
    MatrixXd y(2, 2);
    y << 1, 2, 2, 1;
    EXPECT_THROW(factor_T(VStructure<double>::full_symmetric(2), y), DualMembershipError);
}

TEST(LemmaCrossCheck, FastMatchesNumericOnRandomPoints) {
    std::mt19937_64 rng(21);
    for (const char* label : kDistinctLabels) {
        const auto real = butterfly_realization(label);
        for (int t = 0; t < 20; ++t) {
            const MatrixXd y = testing::random_dual_point(real.space(), rng);
            const auto fast = real.delta_phi(y);
            const auto num = cone_values(real.space(), y);
            EXPECT_NEAR(fast.log_delta, num.log_delta, 1e-8) << label;
            EXPECT_NEAR(fast.log_phi, num.log_phi, 1e-8) << label;
            EXPECT_LT((real.psi(y) - num.psi.x_star).norm(), 1e-8 * num.psi.x_star.norm()) << label;
        }
    }
}

TEST(TriangularGroup, RhoIsAnActionAndTheGroupIsClosed) {
    std::mt19937_64 rng(22);
    for (const auto& e : butterfly_registry().entries) {
        const auto zv = e.v.space();
        for (int trial = 0; trial < 5; ++trial) {
            const auto t1 = random_triangular(e.v, rng);
            const auto t2 = random_triangular(e.v, rng);
            const MatrixXd x = testing::random_dual_point(zv, rng);
            const MatrixXd product = t1.matrix * t2.matrix;
            EXPECT_LT((product * x * product.transpose() - rho(t1, MatrixXd(rho(t2, x)))).norm(), 1e-11);
            // Closure: the product keeps scalar diagonal blocks and lower blocks in V_lk.
            VectorXd d(e.v.rank());
            std::map<BlockIndex, MatrixXd> blocks;
            for (int k = 0; k < e.v.rank(); ++k) {
                d[k] = product(e.v.offset(k), e.v.offset(k));
                for (int l = k + 1; l < e.v.rank(); ++l) {
                    blocks[{l, k}] = product.block(e.v.offset(l), e.v.offset(k), e.v.block_size(l), e.v.block_size(k));
                }
            }
            EXPECT_LT((make_triangular(e.v, d, blocks).matrix - product).norm(), 1e-12) << e.id;
            EXPECT_TRUE(zv.contains(rho(t1, x))) << e.id;
        }
    }
}

TEST(TriangularGroup, AdjointIdentity) {
    std::mt19937_64 rng(23);
    for (const auto& e : butterfly_registry().entries) {
        const auto zv = e.v.space();
        for (int trial = 0; trial < 5; ++trial) {
            const auto t = random_triangular(e.v, rng);
            const MatrixXd x = zv.project(testing::random_symmetric(5, rng));
            const MatrixXd y = zv.project(testing::random_symmetric(5, rng));
            const double lhs = trace_inner(rho(t, x), y);
            const double rhs = trace_inner(x, rho_adjoint(zv, t, y));
            EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(lhs))) << e.id;
        }
    }
}

TEST(TriangularGroup, MultiDegreeMatchesDirectDeterminant) {
    std::mt19937_64 rng(24);
    for (const auto& e : butterfly_registry().entries) {
        const auto zv = e.v.space();
        const auto sigma = e.v.multi_degree();
        for (int trial = 0; trial < 5; ++trial) {
            const auto t = random_triangular(e.v, rng);
            double expected = 0;
            for (int k = 0; k < e.v.rank(); ++k) expected += sigma[k] * std::log(t.diagonal[k]);
            EXPECT_NEAR(log_abs_det(rho_matrix(zv, t)), expected, 1e-10) << e.id;
        }
    }
}

TEST(Realization, LongDoubleInstantiation) {
    const auto& e = *butterfly_registry().find("Gamma7");
    const VStructure<long double> vl(
        e.v.block_sizes(), [&] {
            std::map<BlockIndex, std::vector<Matrix<long double>>> subs;
            for (const auto& [idx, basis] : e.v.subspaces()) {
                for (const auto& a : basis) subs[idx].push_back(a.cast<long double>());
            }
            return subs;
        }());
    EXPECT_TRUE(validate_vstructure(vl, 1e-15L).ok());
    EXPECT_NEAR(static_cast<double>(log_gamma_v(vl, 43.5L)), log_gamma_v(e.v, 43.5), 1e-10);
    std::mt19937_64 rng(25);
    const MatrixXd y = testing::random_dual_point(e.v.space(), rng);
    const auto dl = delta_phi_fast(vl, Matrix<long double>(y.cast<long double>()));
    const auto dd = delta_phi_fast(e.v, y);
    EXPECT_NEAR(static_cast<double>(dl.log_delta), dd.log_delta, 1e-12);
    EXPECT_NEAR(static_cast<double>(dl.log_phi), dd.log_phi, 1e-12);
}

}  // namespace
}  // namespace rcop
