#include "onecount/errors.hpp"
#include "onecount/jc_oracle.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace onecount {
namespace {

using testing::random_mixed_state;

const double kAngles[] = {0.5, 1.0, 2.0, std::numbers::pi, 7.3};

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

JCParams series(double y) { return {y, UnitaryConstruction::SeriesExponential, 1e-14}; }

TEST(JcUnitary, IsUnitary) {
  for (std::size_t d : {2u, 8u, 32u, 64u}) {
    for (double y : kAngles) {
      for (auto c : {UnitaryConstruction::AnalyticBlocks, UnitaryConstruction::SeriesExponential}) {
        const Matrix u = jc_unitary({y, c, 1e-14}, d);
        const auto dim = static_cast<Eigen::Index>(2 * d);
        EXPECT_LE(max_abs(u.adjoint() * u - Matrix::Identity(dim, dim)), 1e-12) << d << " " << y;
      }
    }
  }
}

TEST(JcUnitary, ConstructionsAgree) {
  for (std::size_t d : {4u, 16u, 64u}) {
    for (double y : {0.1, 0.5, 1.0, 2.0, std::numbers::pi, 7.3, 10.0}) {
      const Matrix analytic = jc_unitary({y, UnitaryConstruction::AnalyticBlocks}, d);
      EXPECT_LE(max_abs(analytic - jc_unitary(series(y), d)), 1e-9) << d << " " << y;
    }
  }
}

TEST(JcUnitary, Structure) {
  const Matrix h = jc_coupling(4);
  EXPECT_EQ(h.rows(), 8);
  EXPECT_EQ(max_abs(h - h.adjoint()), 0.0);
  EXPECT_DOUBLE_EQ(h(4 + 1, 2).real(), std::sqrt(2.0));  // |e,1><g,2|
  EXPECT_EQ(h.row(7).cwiseAbs().sum(), 0.0);            // |e,d-1> uncoupled
  EXPECT_EQ(h.row(0).cwiseAbs().sum(), 0.0);            // |g,0> uncoupled
}

TEST(JcUnitary, Errors) {
  EXPECT_THROW(jc_unitary({1.0}, 1), ValidationError);
  EXPECT_THROW(jc_unitary({std::nan("")}, 4), ValidationError);
  EXPECT_THROW(jc_unitary({1.0, UnitaryConstruction::SeriesExponential, 1e-6}, 4), ValidationError);
}

// Value from tests/oracles/derive_expected.py.
TEST(ExcitationProbability, ThermalExample) {
  const auto rho = prepare_thermal(1.0);
  EXPECT_NEAR(excitation_probability({1.0}, rho), 0.3997066004937292750, 1e-11);
  EXPECT_NEAR(detection_probabilities({1.0}, rho).excited, 0.3997066004937292750, 1e-11);
}

TEST(ConditionedFieldState, FockExamples) {
  const auto out = conditioned_field_state({std::numbers::pi / 2.0}, prepare_fock(1));
  EXPECT_NEAR(out.norm, 1.0, 1e-15);
  EXPECT_NEAR(out.state(0, 0).real(), 1.0, 1e-15);
  EXPECT_THROW(conditioned_field_state({std::numbers::pi}, prepare_fock(1)), ZeroJumpWeight);
  EXPECT_THROW(conditioned_field_state({1.0}, prepare_fock(0)), ZeroJumpWeight);
}

TEST(ConditionedFieldState, MatchesHModelOnRandomStates) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 23);
    const auto rho = random_mixed_state(rng, d, 1 + static_cast<std::size_t>(trial % 3));
    for (double y : kAngles) {
      // |1> alone at y = pi carries no jump weight; both sides must refuse it.
      if (rho.dim() == 2 && std::abs(rho(1, 1).real() * std::pow(std::sin(y), 2)) <= kJumpWeightThreshold) {
        EXPECT_THROW(apply_jump(JumpModel::h(y), rho), ZeroJumpWeight);
        EXPECT_THROW(conditioned_field_state({y}, rho), ZeroJumpWeight);
        continue;
      }
      const auto expected = apply_jump(JumpModel::h(y), rho);
      for (const JCParams& params : {JCParams{y}, series(y)}) {
        const auto got = conditioned_field_state(params, rho);
        EXPECT_NEAR(got.norm, expected.norm, 1e-12);
        EXPECT_LE(max_abs(got.state.elements() - expected.state.elements()), 1e-10) << d << " " << y;
      }
    }
  }
}

TEST(ConditionedFieldState, ProbabilityConservation) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = random_mixed_state(rng, 12, 2);
    for (double y : kAngles) {
      const auto p = detection_probabilities({y}, rho);
      EXPECT_NEAR(p.excited + p.ground, rho.trace(), 1e-12);
      EXPECT_NEAR(p.excited, excitation_probability({y}, rho), 1e-12);
      const auto s = detection_probabilities(series(y), rho);
      EXPECT_NEAR(s.excited + s.ground, rho.trace(), 1e-12);
    }
  }
}

TEST(ConditionedFieldState, PreparedStates) {
  for (const auto& rho : {prepare_thermal(0.7), prepare_coherent(Complex(1.2, 0.4)), prepare_squeezed_vacuum(0.5)}) {
    for (double y : kAngles) {
      const auto expected = apply_jump(JumpModel::h(y), rho);
      const auto got = conditioned_field_state({y}, rho);
      EXPECT_LE(max_abs(got.state.elements() - expected.state.elements()), 1e-12);
      EXPECT_LE(got.state.tail_mass_bound(), 1.0);
    }
  }
}

}  // namespace
}  // namespace onecount
