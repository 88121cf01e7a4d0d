#pragma once

#include "enantiosim/core.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace enantiosim {

enum class StateKind { kVector, kDensity };

/// State vector or density matrix on a 2-4 level Hilbert space.
///
/// The factory functions validate the physical invariants (normalization,
/// Hermiticity, unit trace, positivity). States produced by the propagators
/// are checked by the propagators' own diagnostics instead.
class QuantumState {
 public:
  static QuantumState basis(std::size_t dim, std::size_t level);
  static QuantumState pure(Vector amplitudes);
  static QuantumState density(Matrix rho);
  /// Diagonal (incoherent) mixture with the given level populations.
  static QuantumState mixture(std::span<const double> populations);

  StateKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }

  const Vector& amplitudes() const;
  const Matrix& matrix() const;
  /// rho for density kind, |psi><psi| for vector kind.
  Matrix density_matrix() const;

  // Internal constructors for propagator output; no validation.
  static QuantumState unchecked_vector(Vector psi);
  static QuantumState unchecked_density(Matrix rho);

 private:
  QuantumState() = default;

  StateKind kind_ = StateKind::kVector;
  std::size_t dim_ = 0;
  Vector psi_;
  Matrix rho_;
};

double population(const QuantumState& state, std::size_t level);
/// rho_{mn}; for vector states c_m conj(c_n).
Complex coherence(const QuantumState& state, std::size_t m, std::size_t n);

/// Hermitian operator-valued function of time (entries in rad/us).
///
/// Optionally carries a static diagonal part ("frame energies") that is
/// contained in H(t). Propagators then integrate in the interaction picture
/// of that diagonal, which is exact and removes the fast free evolution from
/// the Runge-Kutta error budget. Recorded states are always returned in the
/// original (Schroedinger) frame.
class TimeDependentOperator {
 public:
  using Evaluator = std::function<Matrix(double)>;

  TimeDependentOperator(std::size_t dim, Evaluator fn, std::vector<double> frame_energies = {});

  std::size_t dim() const { return dim_; }
  const std::vector<double>& frame_energies() const { return frame_; }
  bool has_frame() const { return !frame_.empty(); }

  Matrix operator()(double t) const;
  /// e^{iE t} (H(t) - E) e^{-iE t} with E the frame energies.
  Matrix interaction(double t) const;

 private:
  std::size_t dim_;
  Evaluator fn_;
  std::vector<double> frame_;
};

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 0.0;
  double integrator_step = 0.0;
  std::size_t record_stride = 1;

  std::size_t step_count() const;
  void validate() const;
};

/// Builds a grid whose step divides the pulse resolution (when given) so that
/// no Runge-Kutta step straddles a bin edge of a discretized drive. The
/// stride is chosen to give about `record_points` samples.
TimeGrid make_grid(double t_end, double max_step, double resolution, std::size_t record_points = 200);

/// Lindblad jump |to><from| with rate in 1/us.
struct RelaxationChannel {
  std::size_t from_level = 0;
  std::size_t to_level = 0;
  double rate = 0.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<QuantumState> states;

  const QuantumState& final_state() const { return states.back(); }
};

Trajectory propagate_schrodinger(const TimeDependentOperator& hamiltonian, const QuantumState& psi0,
                                 const TimeGrid& grid);

Trajectory propagate_lindblad(const TimeDependentOperator& hamiltonian,
                              std::span<const RelaxationChannel> channels, const QuantumState& rho0,
                              const TimeGrid& grid);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const Matrix& rho);

}  // namespace enantiosim
