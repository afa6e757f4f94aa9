#include "onecount/errors.hpp"
#include "onecount/jump_models.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace onecount {
namespace {

using testing::annihilation;
using testing::diagonal_function;
using testing::random_diagonal_state;
using testing::random_mixed_state;

std::vector<JumpModel> all_models() {
  return {JumpModel::a(),      JumpModel::e(),         JumpModel::h(0.7),     JumpModel::h(2.0),
          JumpModel::h(7.3),   JumpModel::n(),         JumpModel::beta(0.0),  JumpModel::beta(0.25),
          JumpModel::beta(0.5), JumpModel::beta(1.0)};
}

// Dense lowering operator for a model, assembled from its defining formula.
Eigen::MatrixXcd dense_lowering(const JumpModel& model, std::size_t d) {
  const Eigen::MatrixXcd a = annihilation(d);
  auto power = [d](double beta) {
    return diagonal_function(d, [beta](std::size_t n) { return std::pow(1.0 + static_cast<double>(n), -beta); });
  };
  switch (model.kind()) {
    case JumpModel::Kind::A:
      return a;
    case JumpModel::Kind::E:
      return power(0.5) * a;
    case JumpModel::Kind::Beta:
      return power(model.parameter()) * a;
    case JumpModel::Kind::H: {
      const double y = model.parameter();
      // sin(y sqrt(n + 1)) E_-
      return diagonal_function(d, [y](std::size_t n) { return std::sin(y * std::sqrt(n + 1.0)); }) * power(0.5) * a;
    }
    case JumpModel::Kind::N:
      break;
  }
  return diagonal_function(d, [](std::size_t n) { return static_cast<double>(n); });
}

Eigen::MatrixXcd dense_jump(const JumpModel& model, const DensityMatrix& rho) {
  const Eigen::MatrixXcd o = dense_lowering(model, rho.dim());
  const Eigen::MatrixXcd in = rho.elements();
  Eigen::MatrixXcd out = model.is_lowering() ? Eigen::MatrixXcd(o * in * o.adjoint()) : Eigen::MatrixXcd(o * in * o);
  return out / out.trace().real();
}

TEST(LoweringOperator, Examples) {
  EXPECT_DOUBLE_EQ(lowering_operator(JumpModel::a(), 8).weights[4], 2.0);
  for (std::size_t n = 1; n < 8; ++n) EXPECT_EQ(lowering_operator(JumpModel::e(), 8).weights[n], 1.0);
  EXPECT_NEAR(lowering_operator(JumpModel::h(std::numbers::pi), 4).weights[1], 0.0, 1e-15);
  EXPECT_EQ(lowering_operator(JumpModel::a(), 8).weights[0], 0.0);
}

TEST(LoweringOperator, Errors) {
  EXPECT_THROW(lowering_operator(JumpModel::n(), 8), ValidationError);
  EXPECT_THROW(lowering_operator(JumpModel::a(), 1), ValidationError);
  EXPECT_THROW(JumpModel::h(0.0), ValidationError);
  EXPECT_THROW(JumpModel::beta(-0.1), ValidationError);
}

TEST(LoweringOperator, MatchesDenseOperatorAlgebra) {
  const std::size_t d = 16;
  for (const auto& model : all_models()) {
    if (!model.is_lowering()) continue;
    const auto w = lowering_operator(model, d).weights;
    const Eigen::MatrixXcd o = dense_lowering(model, d);
    for (std::size_t n = 1; n < d; ++n) {
      EXPECT_NEAR(std::abs(o(static_cast<Eigen::Index>(n - 1), static_cast<Eigen::Index>(n)) - w[n]), 0.0, 1e-14)
          << model.label() << " n=" << n;
      EXPECT_NEAR(model.weight_squared(n), w[n] * w[n], 1e-13);
    }
  }
}

TEST(ApplyJump, AModelOnFockState) {
  const auto out = apply_jump(JumpModel::a(), prepare_fock(3));
  EXPECT_DOUBLE_EQ(out.norm, 3.0);
  EXPECT_DOUBLE_EQ(out.state(2, 2).real(), 1.0);
  EXPECT_DOUBLE_EQ(photon_statistics(out.state).mean, 2.0);
}

TEST(ApplyJump, ZeroWeight) {
  EXPECT_THROW(apply_jump(JumpModel::a(), prepare_fock(0)), ZeroJumpWeight);
  EXPECT_THROW(apply_jump(JumpModel::n(), prepare_fock(0)), ZeroJumpWeight);
  // Every occupied level of |1> sits on a sine zero at y = pi.
  EXPECT_THROW(apply_jump(JumpModel::h(std::numbers::pi), prepare_fock(1)), ZeroJumpWeight);
}

TEST(ApplyJump, NModelKeepsNumberStates) {
  const auto out = apply_jump(JumpModel::n(), prepare_fock(3));
  EXPECT_DOUBLE_EQ(out.norm, 9.0);
  EXPECT_DOUBLE_EQ(out.state(3, 3).real(), 1.0);
}

TEST(ApplyJump, ThermalIsFixedPointOfE) {
  for (double nbar : {0.1, 0.7, 1.0, 4.0}) {
    const auto rho = prepare_thermal(nbar);
    const auto out = apply_jump(JumpModel::e(), rho);
    for (std::size_t n = 0; n + 1 < rho.dim(); ++n) {
      EXPECT_NEAR(out.state(n, n).real(), rho(n, n).real(), 1e-10 + rho.tail_mass_bound()) << nbar;
    }
  }
}

TEST(ApplyJump, CoherentIsFixedPointOfA) {
  for (Complex alpha : {Complex(0.5, 0.0), Complex(1.0, -1.0), Complex(2.0, 0.3)}) {
    const auto rho = prepare_coherent(alpha);
    const auto out = apply_jump(JumpModel::a(), rho);
    for (std::size_t n = 0; n + 1 < rho.dim(); ++n) {
      EXPECT_NEAR(out.state(n, n).real(), rho(n, n).real(), 1e-10 + rho.tail_mass_bound());
    }
  }
}

TEST(ApplyJump, MatchesDenseOperatorProducts) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 10; ++trial) {
    const auto rho = random_mixed_state(rng, 10, 1 + static_cast<std::size_t>(trial % 4));
    for (const auto& model : all_models()) {
      const auto out = apply_jump(model, rho);
      const Eigen::MatrixXcd expected = dense_jump(model, rho);
      const Eigen::MatrixXcd got = out.state.elements();
      EXPECT_LE((got - expected).cwiseAbs().maxCoeff(), 1e-13) << model.label();
    }
  }
}

TEST(ApplyJump, OutputIsAValidNormalizedState) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto rho = random_mixed_state(rng, 12, 2);
    for (const auto& model : all_models()) {
      const auto out = apply_jump(model, rho);
      EXPECT_NEAR(out.state.trace(), 1.0, 1e-15);
      EXPECT_GT(out.norm, 0.0);
      EXPECT_GE(out.state.min_eigenvalue(), -1e-10);
      const Matrix& m = out.state.elements();
      EXPECT_EQ((m - m.adjoint()).cwiseAbs().maxCoeff(), 0.0);
    }
  }
}

// Values from tests/oracles/derive_expected.py.
TEST(PredictPn, Examples) {
  const auto thermal = prepare_thermal(thermal_mean_from_chi0(0.6)).populations();
  EXPECT_NEAR(predict_pn(JumpModel::a(), thermal, 0), 0.36, 1e-10);
  EXPECT_NEAR(predict_pn(JumpModel::a(), thermal, 1), 0.288, 1e-10);
  const auto coherent = prepare_coherent(1.0).populations();
  EXPECT_NEAR(predict_pn(JumpModel::e(), coherent, 0), 0.58197670686932642, 1e-12);
}

TEST(PredictPn, NModelFormula) {
  const auto chi = prepare_thermal(0.7).populations();
  const double m2 = chi.second_moment();
  EXPECT_EQ(predict_pn(JumpModel::n(), chi, 0), 0.0);
  EXPECT_NEAR(predict_pn(JumpModel::n(), chi, 2), 4.0 * chi[2] / m2, 1e-15);
}

TEST(PredictPn, DegenerateDenominators) {
  const FockDistribution vacuum({1.0, 0.0});
  EXPECT_THROW(predict_pn(JumpModel::a(), vacuum, 0), ZeroJumpWeight);
  EXPECT_THROW(predict_pn(JumpModel::e(), vacuum, 0), ZeroJumpWeight);
  EXPECT_THROW(predict_pn(JumpModel::n(), vacuum, 0), ZeroJumpWeight);
  EXPECT_THROW(predict_pn(JumpModel::h(std::numbers::pi), FockDistribution({0.0, 1.0}), 0), ZeroJumpWeight);
}

TEST(PredictPn, AgreesWithMatrixJumpOnRandomDiagonalStates) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto rho = random_diagonal_state(rng, 3 + static_cast<std::size_t>(trial % 30));
    const auto chi = rho.populations();
    for (const auto& model : all_models()) {
      const auto out = apply_jump(model, rho);
      for (std::size_t n = 0; n < rho.dim(); ++n) {
        EXPECT_NEAR(out.state(n, n).real(), predict_pn(model, chi, n), 1e-12) << model.label();
      }
    }
  }
}

TEST(PredictPn, FamilyLimits) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const auto chi = random_diagonal_state(rng, 25).populations();
    for (std::size_t n = 0; n < 25; ++n) {
      EXPECT_NEAR(predict_pn(JumpModel::beta(0.0), chi, n), predict_pn(JumpModel::a(), chi, n), 1e-13);
      EXPECT_NEAR(predict_pn(JumpModel::beta(0.5), chi, n), predict_pn(JumpModel::e(), chi, n), 1e-13);
    }
  }
}

TEST(PredictPn, SmallRabiAngleRecoversA) {
  const auto chi = prepare_thermal(1.0).populations();
  for (double y : {1e-2, 1e-3}) {
    double worst = 0.0;
    for (std::size_t n = 0; n < 20; ++n) {
      worst = std::max(worst, std::abs(predict_pn(JumpModel::h(y), chi, n) - predict_pn(JumpModel::a(), chi, n)));
    }
    EXPECT_LE(worst, 1.0 * y * y) << y;
  }
}

TEST(PredictPn, AsymptoticHalfRatio) {
  const double chi0 = 0.999;
  const auto thermal = prepare_thermal(thermal_mean_from_chi0(chi0)).populations();
  const auto coherent = prepare_coherent(std::sqrt(-std::log(chi0))).populations();
  for (const auto& chi : {thermal, coherent}) {
    const double ratio = predict_pn(JumpModel::e(), chi, 1) / predict_pn(JumpModel::a(), chi, 1);
    EXPECT_NEAR(ratio, 0.5, 2e-3);
  }
}

TEST(MeanAfterJump, Examples) {
  PhotonStatistics exact_thermal;  // nbar = 1: <n^2> = 2 nbar^2 + nbar
  exact_thermal.chi = {0.5, 0.25, 0.125};
  exact_thermal.mean = 1.0;
  exact_thermal.second_moment = 3.0;
  EXPECT_DOUBLE_EQ(mean_after_jump(JumpModel::a(), exact_thermal), 2.0);

  const auto stats = photon_statistics(prepare_thermal(1.0));
  EXPECT_NEAR(mean_after_jump(JumpModel::a(), stats), 2.0, 1e-8);
  EXPECT_NEAR(mean_after_jump(JumpModel::e(), stats), 1.0, 1e-8);
  EXPECT_THROW(mean_after_jump(JumpModel::n(), stats), ValidationError);
  EXPECT_THROW(mean_after_jump(JumpModel::a(), photon_statistics(prepare_fock(0))), ZeroJumpWeight);
}

TEST(MeanAfterJump, SqueezedVacuumUnderA) {
  const double r = 1.0;
  const auto rho = prepare_squeezed_vacuum(r);
  const auto corrected = testing::tail_corrected(rho, testing::squeezed_chi_reference(r, 4000));
  PhotonStatistics stats = photon_statistics(rho);
  stats.mean = corrected.mean;
  stats.second_moment = corrected.second_moment;
  const double n = std::sinh(r) * std::sinh(r);
  EXPECT_NEAR(mean_after_jump(JumpModel::a(), stats), 3.0 * n + 1.0, 1e-9);
  EXPECT_GT(mean_after_jump(JumpModel::a(), stats), 2.0 * n);
}

TEST(MeanAfterJump, MomentIdentitiesOnRandomStates) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    // d >= 3 keeps the post-jump mean away from zero, where a relative error is meaningless.
    const auto rho = random_diagonal_state(rng, 3 + static_cast<std::size_t>(trial % 40));
    const auto stats = photon_statistics(rho);
    const double after_a = photon_statistics(apply_jump(JumpModel::a(), rho).state).mean;
    const double after_e = photon_statistics(apply_jump(JumpModel::e(), rho).state).mean;
    const double eq7 = stats.mean + *stats.mandel_q;
    const double eq8 = stats.mean / (1.0 - stats.chi[0]) - 1.0;
    EXPECT_LE(std::abs(after_a - eq7), 1e-10 * std::abs(eq7));
    EXPECT_LE(std::abs(after_e - eq8), 1e-10 * std::max(std::abs(eq8), 1e-300));
    EXPECT_NEAR(mean_after_jump(JumpModel::a(), stats), eq7, 1e-10 * std::abs(eq7));
  }
}

TEST(Chi0Branches, Examples) {
  const auto [a, b] = chi0_branches(0.25);
  EXPECT_DOUBLE_EQ(a, 0.5);
  EXPECT_DOUBLE_EQ(b, 0.5);
  for (double chi1 : {0.24, 0.09, 0.1, 0.01}) {
    const auto [upper, lower] = chi0_branches(chi1);
    EXPECT_NEAR(upper * (1.0 - upper), chi1, 1e-15);
    EXPECT_NEAR(lower * (1.0 - lower), chi1, 1e-15);
    EXPECT_GT(upper, lower);
  }
  EXPECT_NEAR(chi0_branches(0.24).first, 0.6, 1e-15);
  EXPECT_NEAR(chi0_branches(0.24).second, 0.4, 1e-15);
  EXPECT_NEAR(chi0_branches(0.09).first, 0.9, 1e-15);
  EXPECT_NEAR(chi0_branches(0.09).second, 0.1, 1e-15);
}

TEST(Chi0Branches, Errors) {
  EXPECT_THROW(chi0_branches(0.2500001), ValidationError);
  EXPECT_THROW(chi0_branches(0.0), ValidationError);
  EXPECT_THROW(chi0_branches(-0.1), ValidationError);
}

TEST(JumpModel, ParseAndLabelRoundTrip) {
  for (const auto& model : all_models()) EXPECT_EQ(JumpModel::parse(model.label()), model);
  EXPECT_EQ(JumpModel::parse(" h(2) "), JumpModel::h(2.0));
  EXPECT_EQ(JumpModel::parse("beta(0.5)"), JumpModel::beta(0.5));
  for (const char* bad : {"B", "H", "H()", "A(1)", "H(2", "Beta(x)"}) {
    EXPECT_THROW(JumpModel::parse(bad), ValidationError) << bad;
  }
  EXPECT_THROW(JumpModel::parse("H(-1)"), ValidationError);
}

}  // namespace
}  // namespace onecount
