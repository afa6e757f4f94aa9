// jc_oracle.hpp: brute-force check of the H-model. A two-level atom enters
// in |g>, interacts resonantly with the field for a Rabi angle y = g t, and is
// found in |e>. The conditioned field state is compared with
// apply_jump(JumpModel::h(y), rho).
//
// Joint basis ordering: index n is |g,n>, index d + n is |e,n>.

#pragma once

#include "onecount/fock.hpp"
#include "onecount/jump_models.hpp"

#include <cstddef>

namespace onecount {

enum class UnitaryConstruction { AnalyticBlocks, SeriesExponential };

struct JCParams {
  double y = 1.0;
  UnitaryConstruction construction = UnitaryConstruction::AnalyticBlocks;
  double series_tolerance = 1e-14;  // must be <= 1e-12 for SeriesExponential
};

struct JointState {
  std::size_t dim_field = 0;
  Matrix matrix;  // 2d x 2d
};

// Dimensionless resonant coupling sum_n sqrt(n) (|e,n-1><g,n| + h.c.), n = 1 .. d-1.
// |e,d-1> is left uncoupled so the truncated evolution stays unitary.
Matrix jc_coupling(std::size_t d);

// exp(-i y H), either from the closed-form 2x2 blocks or by scaled Taylor
// summation of the coupling matrix.
Matrix jc_unitary(const JCParams& params, std::size_t d);

// |g><g| (x) rho
JointState atom_ground_joint_state(const DensityMatrix& rho);

JointState evolve(const JointState& state, const Matrix& unitary);

struct AtomDetection {
  double excited = 0.0;
  double ground = 0.0;
};

// Atom readout probabilities after the joint evolution; they sum to Tr rho.
AtomDetection detection_probabilities(const JCParams& params, const DensityMatrix& rho);

// Field state conditioned on finding the atom excited; norm is the excitation
// probability. Throws ZeroJumpWeight when it is at or below the jump threshold.
JumpOutcome conditioned_field_state(const JCParams& params, const DensityMatrix& rho);

// sum_n sin^2(y sqrt n) chi_n
double excitation_probability(const JCParams& params, const DensityMatrix& rho);

}  // namespace onecount
