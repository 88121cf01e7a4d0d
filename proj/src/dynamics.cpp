#include "enantiosim/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace enantiosim {

namespace {

constexpr double kStateTolerance = 1e-9;
constexpr double kHermitianTolerance = 1e-12;
constexpr double kPropagationTolerance = 1e-7;
constexpr double kPositivityTolerance = 1e-9;

void check_dim(std::size_t dim) {
  if (dim < 2 || dim > static_cast<std::size_t>(kMaxDim)) {
    throw ConfigError("quantum state dimension must be in [2, 4], got " + std::to_string(dim));
  }
}

double max_hermitian_defect(const Matrix& m) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = i; j < m.cols(); ++j) {
      worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
    }
  }
  return worst;
}

}  // namespace

double min_eigenvalue(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

QuantumState QuantumState::basis(std::size_t dim, std::size_t level) {
  check_dim(dim);
  if (level >= dim) {
    throw ConfigError("basis level " + std::to_string(level) + " out of range for dim " +
                      std::to_string(dim));
  }
  Vector psi = Vector::Zero(static_cast<Eigen::Index>(dim));
  psi(static_cast<Eigen::Index>(level)) = 1.0;
  return unchecked_vector(std::move(psi));
}

QuantumState QuantumState::pure(Vector amplitudes) {
  check_dim(static_cast<std::size_t>(amplitudes.size()));
  if (!amplitudes.allFinite()) throw ConfigError("state amplitudes must be finite");
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > kStateTolerance) {
    std::ostringstream msg;
    msg << "state vector not normalized: sum |c|^2 = " << norm2;
    throw ConfigError(msg.str());
  }
  return unchecked_vector(std::move(amplitudes));
}

QuantumState QuantumState::density(Matrix rho) {
  if (rho.rows() != rho.cols()) throw ConfigError("density matrix must be square");
  check_dim(static_cast<std::size_t>(rho.rows()));
  if (!rho.allFinite()) throw ConfigError("density matrix entries must be finite");
  if (max_hermitian_defect(rho) > kHermitianTolerance) {
    throw ConfigError("density matrix is not Hermitian");
  }
  const double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > kStateTolerance) {
    std::ostringstream msg;
    msg << "density matrix trace " << tr << " differs from 1";
    throw ConfigError(msg.str());
  }
  if (min_eigenvalue(rho) < -kPositivityTolerance) {
    throw ConfigError("density matrix has a negative eigenvalue");
  }
  return unchecked_density(std::move(rho));
}

QuantumState QuantumState::mixture(std::span<const double> populations) {
  const auto n = static_cast<Eigen::Index>(populations.size());
  Matrix rho = Matrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) rho(i, i) = populations[static_cast<std::size_t>(i)];
  return density(std::move(rho));
}

QuantumState QuantumState::unchecked_vector(Vector psi) {
  QuantumState s;
  s.kind_ = StateKind::kVector;
  s.dim_ = static_cast<std::size_t>(psi.size());
  s.psi_ = std::move(psi);
  return s;
}

QuantumState QuantumState::unchecked_density(Matrix rho) {
  QuantumState s;
  s.kind_ = StateKind::kDensity;
  s.dim_ = static_cast<std::size_t>(rho.rows());
  s.rho_ = std::move(rho);
  return s;
}

const Vector& QuantumState::amplitudes() const {
  if (kind_ != StateKind::kVector) throw ConfigError("state is a density matrix, not a vector");
  return psi_;
}

const Matrix& QuantumState::matrix() const {
  if (kind_ != StateKind::kDensity) throw ConfigError("state is a vector, not a density matrix");
  return rho_;
}

Matrix QuantumState::density_matrix() const {
  if (kind_ == StateKind::kDensity) return rho_;
  return psi_ * psi_.adjoint();
}

double population(const QuantumState& state, std::size_t level) {
  if (level >= state.dim()) {
    throw ConfigError("level " + std::to_string(level) + " out of range for dim " +
                      std::to_string(state.dim()));
  }
  const auto i = static_cast<Eigen::Index>(level);
  if (state.kind() == StateKind::kVector) return std::norm(state.amplitudes()(i));
  return state.matrix()(i, i).real();
}

Complex coherence(const QuantumState& state, std::size_t m, std::size_t n) {
  if (m >= state.dim() || n >= state.dim()) throw ConfigError("coherence index out of range");
  if (m == n) throw ConfigError("coherence needs two distinct levels");
  const auto i = static_cast<Eigen::Index>(m);
  const auto j = static_cast<Eigen::Index>(n);
  if (state.kind() == StateKind::kVector) {
    return state.amplitudes()(i) * std::conj(state.amplitudes()(j));
  }
  return state.matrix()(i, j);
}

TimeDependentOperator::TimeDependentOperator(std::size_t dim, Evaluator fn,
                                             std::vector<double> frame_energies)
    : dim_(dim), fn_(std::move(fn)), frame_(std::move(frame_energies)) {
  check_dim(dim);
  if (!frame_.empty() && frame_.size() != dim) {
    throw ConfigError("frame energies must match the operator dimension");
  }
}

Matrix TimeDependentOperator::operator()(double t) const {
  Matrix h = fn_(t);
  if (static_cast<std::size_t>(h.rows()) != dim_ || static_cast<std::size_t>(h.cols()) != dim_) {
    throw ConfigError("operator evaluated to a matrix of the wrong dimension");
  }
  if (!h.allFinite()) {
    std::ostringstream msg;
    msg << "non-finite Hamiltonian entry at t = " << t << " us";
    throw NumericalError(msg.str());
  }
  return h;
}

Matrix TimeDependentOperator::interaction(double t) const {
  Matrix h = (*this)(t);
  if (frame_.empty()) return h;
  const auto n = static_cast<Eigen::Index>(dim_);
  for (Eigen::Index i = 0; i < n; ++i) {
    h(i, i) -= frame_[static_cast<std::size_t>(i)];
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Complex phase = std::polar(1.0, (frame_[static_cast<std::size_t>(i)] -
                                             frame_[static_cast<std::size_t>(j)]) * t);
      h(i, j) *= phase;
      h(j, i) *= std::conj(phase);
    }
  }
  return h;
}

std::size_t TimeGrid::step_count() const {
  const double n = (t_end - t_start) / integrator_step;
  return static_cast<std::size_t>(std::max(1.0, std::ceil(n - 1e-9)));
}

void TimeGrid::validate() const {
  if (!(t_end > t_start)) throw ConfigError("time grid needs t_end > t_start");
  if (!(integrator_step > 0.0)) throw ConfigError("integrator step must be positive");
  if (record_stride == 0) throw ConfigError("record stride must be at least 1");
}

TimeGrid make_grid(double t_end, double max_step, double resolution, std::size_t record_points) {
  if (!(max_step > 0.0)) throw ConfigError("maximum integrator step must be positive");
  double step = max_step;
  if (resolution > 0.0) {
    step = resolution / std::ceil(resolution / std::min(resolution, max_step) - 1e-9);
  }
  TimeGrid grid{0.0, t_end, step, 1};
  grid.validate();
  const std::size_t steps = grid.step_count();
  grid.integrator_step = t_end / static_cast<double>(steps);
  if (record_points > 1) {
    grid.record_stride = std::max<std::size_t>(1, steps / (record_points - 1));
  }
  return grid;
}

namespace {

// Rotates an interaction-picture state back to the original frame.
Vector to_lab(const Vector& psi, const std::vector<double>& frame, double t) {
  if (frame.empty()) return psi;
  Vector out = psi;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out(i) *= std::polar(1.0, -frame[static_cast<std::size_t>(i)] * t);
  }
  return out;
}

Matrix to_lab(const Matrix& rho, const std::vector<double>& frame, double t) {
  if (frame.empty()) return rho;
  Matrix out = rho;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      if (i == j) continue;
      out(i, j) *= std::polar(1.0, -(frame[static_cast<std::size_t>(i)] -
                                     frame[static_cast<std::size_t>(j)]) * t);
    }
  }
  return out;
}

Vector to_interaction(const Vector& psi, const std::vector<double>& frame, double t) {
  if (frame.empty()) return psi;
  Vector out = psi;
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    out(i) *= std::polar(1.0, frame[static_cast<std::size_t>(i)] * t);
  }
  return out;
}

Matrix to_interaction(const Matrix& rho, const std::vector<double>& frame, double t) {
  if (frame.empty()) return rho;
  Matrix out = rho;
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    for (Eigen::Index j = 0; j < out.cols(); ++j) {
      if (i == j) continue;
      out(i, j) *= std::polar(1.0, (frame[static_cast<std::size_t>(i)] -
                                    frame[static_cast<std::size_t>(j)]) * t);
    }
  }
  return out;
}

void check_vector(const Vector& psi, double t) {
  const double dev = std::abs(psi.squaredNorm() - 1.0);
  if (!psi.allFinite() || dev > kPropagationTolerance) {
    std::ostringstream msg;
    msg << "norm diagnostic failed at t = " << t << " us (|norm^2 - 1| = " << dev << ")";
    throw NumericalError(msg.str());
  }
}

void check_density(const Matrix& rho, double t) {
  std::ostringstream msg;
  if (!rho.allFinite()) {
    msg << "non-finite density matrix at t = " << t << " us";
    throw NumericalError(msg.str());
  }
  const double dev = std::abs(rho.trace().real() - 1.0);
  if (dev > kPropagationTolerance) {
    msg << "trace diagnostic failed at t = " << t << " us (|tr - 1| = " << dev << ")";
    throw NumericalError(msg.str());
  }
  const double lambda = min_eigenvalue(rho);
  if (lambda < -kPositivityTolerance) {
    msg << "positivity diagnostic failed at t = " << t << " us (min eigenvalue " << lambda << ")";
    throw NumericalError(msg.str());
  }
}

// Classical RK4 on a fixed grid. Stage times at the step ends are pulled
// inside the step by a relative 1e-9 so that piecewise-constant drives are
// sampled on the bin that owns the step.
template <typename State, typename Rhs, typename Record>
void rk4(State y, const TimeGrid& grid, Rhs&& rhs, Record&& record) {
  grid.validate();
  const std::size_t steps = grid.step_count();
  const double h = (grid.t_end - grid.t_start) / static_cast<double>(steps);
  const double nudge = 1e-9 * h;
  record(grid.t_start, y);
  for (std::size_t i = 0; i < steps; ++i) {
    const double t0 = grid.t_start + static_cast<double>(i) * h;
    const State k1 = rhs(t0 + nudge, y);
    const State k2 = rhs(t0 + 0.5 * h, State(y + (0.5 * h) * k1));
    const State k3 = rhs(t0 + 0.5 * h, State(y + (0.5 * h) * k2));
    const State k4 = rhs(t0 + h - nudge, State(y + h * k3));
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const bool last = i + 1 == steps;
    if (last || (i + 1) % grid.record_stride == 0) {
      record(last ? grid.t_end : grid.t_start + static_cast<double>(i + 1) * h, y);
    }
  }
}

}  // namespace

Trajectory propagate_schrodinger(const TimeDependentOperator& hamiltonian, const QuantumState& psi0,
                                 const TimeGrid& grid) {
  if (psi0.kind() != StateKind::kVector) {
    throw ConfigError("Schroedinger propagation needs a state vector");
  }
  if (psi0.dim() != hamiltonian.dim()) throw ConfigError("state and Hamiltonian dimensions differ");
  const auto& frame = hamiltonian.frame_energies();
  const Complex minus_i(0.0, -1.0);

  Trajectory traj;
  auto rhs = [&](double t, const Vector& psi) -> Vector {
    return minus_i * (hamiltonian.interaction(t) * psi);
  };
  auto record = [&](double t, const Vector& psi) {
    Vector lab = to_lab(psi, frame, t);
    check_vector(lab, t);
    traj.times.push_back(t);
    traj.states.push_back(QuantumState::unchecked_vector(std::move(lab)));
  };
  rk4(to_interaction(psi0.amplitudes(), frame, grid.t_start), grid, rhs, record);
  return traj;
}

Trajectory propagate_lindblad(const TimeDependentOperator& hamiltonian,
                              std::span<const RelaxationChannel> channels, const QuantumState& rho0,
                              const TimeGrid& grid) {
  if (rho0.dim() != hamiltonian.dim()) throw ConfigError("state and Hamiltonian dimensions differ");
  for (const auto& ch : channels) {
    if (ch.from_level >= rho0.dim() || ch.to_level >= rho0.dim()) {
      throw ConfigError("relaxation channel level out of range");
    }
    if (ch.from_level == ch.to_level) throw ConfigError("relaxation channel needs distinct levels");
    if (!(ch.rate >= 0.0) || !std::isfinite(ch.rate)) {
      throw ConfigError("relaxation rate must be finite and non-negative");
    }
  }
  const auto& frame = hamiltonian.frame_energies();
  const Complex minus_i(0.0, -1.0);
  const auto n = static_cast<Eigen::Index>(rho0.dim());

  // Dissipators are invariant under the diagonal frame change: the jump
  // operators only pick up a phase.
  auto rhs = [&](double t, const Matrix& rho) -> Matrix {
    const Matrix h = hamiltonian.interaction(t);
    Matrix d = minus_i * (h * rho - rho * h);
    for (const auto& ch : channels) {
      if (ch.rate == 0.0) continue;
      const auto f = static_cast<Eigen::Index>(ch.from_level);
      const auto to = static_cast<Eigen::Index>(ch.to_level);
      d(to, to) += ch.rate * rho(f, f);
      for (Eigen::Index j = 0; j < n; ++j) {
        d(f, j) -= 0.5 * ch.rate * rho(f, j);
        d(j, f) -= 0.5 * ch.rate * rho(j, f);
      }
    }
    return d;
  };

  Trajectory traj;
  auto record = [&](double t, const Matrix& rho) {
    Matrix lab = to_lab(rho, frame, t);
    check_density(lab, t);
    traj.times.push_back(t);
    traj.states.push_back(QuantumState::unchecked_density(std::move(lab)));
  };
  rk4(to_interaction(rho0.density_matrix(), frame, grid.t_start), grid, rhs, record);
  return traj;
}

}  // namespace enantiosim
