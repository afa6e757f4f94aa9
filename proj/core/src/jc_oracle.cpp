#include "onecount/jc_oracle.hpp"

#include "onecount/errors.hpp"

#include <cmath>

namespace onecount {

namespace {

using Index = Eigen::Index;

void check_params(const JCParams& params, std::size_t d) {
  if (d < 2) throw ValidationError("JC evolution needs field dimension >= 2");
  if (d > kMaxDimension) throw ValidationError("JC field dimension exceeds the cap");
  if (!std::isfinite(params.y)) throw ValidationError("Rabi angle y must be finite");
  if (params.construction == UnitaryConstruction::SeriesExponential &&
      !(params.series_tolerance > 0.0 && params.series_tolerance <= 1e-12)) {
    throw ValidationError("series tolerance must lie in (0, 1e-12]");
  }
}

Matrix analytic_unitary(double y, std::size_t d) {
  const auto dim = static_cast<Index>(d);
  Matrix u = Matrix::Identity(2 * dim, 2 * dim);
  const Complex minus_i(0.0, -1.0);
  for (Index n = 1; n < dim; ++n) {
    const double angle = y * std::sqrt(static_cast<double>(n));
    const Index g = n;             // |g,n>
    const Index e = dim + n - 1;   // |e,n-1>
    u(g, g) = std::cos(angle);
    u(e, e) = std::cos(angle);
    u(e, g) = minus_i * std::sin(angle);
    u(g, e) = minus_i * std::sin(angle);
  }
  return u;
}

// exp(-i y H) by scaling and squaring: Taylor-sum exp(-i y H / 2^s) until the
// term norm drops below tol, then square s times.
Matrix series_unitary(double y, std::size_t d, double tol) {
  const Matrix generator = Complex(0.0, -y) * jc_coupling(d);
  const double norm = generator.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scaled = norm;
  while (scaled > 0.5) {
    scaled *= 0.5;
    ++squarings;
  }
  const Matrix a = generator / std::ldexp(1.0, squarings);
  const Index dim = generator.rows();
  Matrix result = Matrix::Identity(dim, dim);
  Matrix term = Matrix::Identity(dim, dim);
  for (int k = 1; k < 200; ++k) {
    term = (term * a / static_cast<double>(k)).eval();
    result += term;
    if (term.cwiseAbs().rowwise().sum().maxCoeff() < tol) break;
  }
  for (int i = 0; i < squarings; ++i) result = (result * result).eval();
  return result;
}

}  // namespace

Matrix jc_coupling(std::size_t d) {
  const auto dim = static_cast<Index>(d);
  Matrix h = Matrix::Zero(2 * dim, 2 * dim);
  for (Index n = 1; n < dim; ++n) {
    const double coupling = std::sqrt(static_cast<double>(n));
    h(dim + n - 1, n) = coupling;
    h(n, dim + n - 1) = coupling;
  }
  return h;
}

Matrix jc_unitary(const JCParams& params, std::size_t d) {
  check_params(params, d);
  if (params.construction == UnitaryConstruction::AnalyticBlocks) return analytic_unitary(params.y, d);
  return series_unitary(params.y, d, params.series_tolerance);
}

JointState atom_ground_joint_state(const DensityMatrix& rho) {
  const auto dim = static_cast<Index>(rho.dim());
  JointState joint{rho.dim(), Matrix::Zero(2 * dim, 2 * dim)};
  joint.matrix.topLeftCorner(dim, dim) = rho.elements();
  return joint;
}

JointState evolve(const JointState& state, const Matrix& unitary) {
  if (unitary.rows() != state.matrix.rows() || unitary.cols() != state.matrix.cols()) {
    throw ValidationError("unitary and joint state dimensions differ");
  }
  return {state.dim_field, unitary * state.matrix * unitary.adjoint()};
}

AtomDetection detection_probabilities(const JCParams& params, const DensityMatrix& rho) {
  const auto dim = static_cast<Index>(rho.dim());
  const JointState out = evolve(atom_ground_joint_state(rho), jc_unitary(params, rho.dim()));
  return {out.matrix.bottomRightCorner(dim, dim).trace().real(),
          out.matrix.topLeftCorner(dim, dim).trace().real()};
}

JumpOutcome conditioned_field_state(const JCParams& params, const DensityMatrix& rho) {
  const auto dim = static_cast<Index>(rho.dim());
  const JointState out = evolve(atom_ground_joint_state(rho), jc_unitary(params, rho.dim()));
  // <e| . |e>, then trace over the atom
  Matrix field = out.matrix.bottomRightCorner(dim, dim);
  const double norm = field.trace().real();
  if (!(norm > kJumpWeightThreshold)) throw ZeroJumpWeight(norm);
  field /= norm;
  field = (0.5 * (field + field.adjoint())).eval();
  const double tail = rho.tail_mass_bound() == 0.0 ? 0.0 : std::min(1.0, rho.tail_mass_bound() / norm);
  return {DensityMatrix(std::move(field), tail), norm};
}

double excitation_probability(const JCParams& params, const DensityMatrix& rho) {
  check_params(params, rho.dim());
  double p = 0.0;
  for (std::size_t n = 1; n < rho.dim(); ++n) {
    const double s = std::sin(params.y * std::sqrt(static_cast<double>(n)));
    p += s * s * rho(n, n).real();
  }
  return p;
}

}  // namespace onecount
