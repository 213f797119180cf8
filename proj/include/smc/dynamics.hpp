#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace smc {

using Vector = std::vector<double>;

/// Finite, non-empty state of a SISO plant.
class StateVector {
 public:
  explicit StateVector(Vector values);
  StateVector(std::initializer_list<double> values);

  std::size_t dimension() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const noexcept { return values_; }
  const Vector& vector() const noexcept { return values_; }
  double max_abs() const noexcept;

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  Vector values_;
};

enum class SignalKind { Zero, Constant, Sinusoid, SeededRandom };

const char* to_string(SignalKind kind);
SignalKind signal_kind_from_string(const std::string& name);

/// Scalar time signal used for matched (and scalar unmatched) disturbances.
///
///   zero           0
///   constant       offset + amplitude
///   sinusoid       offset + amplitude * sin(frequency * t)
///   seeded-random  offset + amplitude * r(t), r piecewise linear between
///                  uniform [-1, 1] knots spaced 1/frequency apart
///
/// The random knots are a pure function of (seed, knot index), so the signal
/// can be evaluated at any t in any order with identical results.
struct DisturbanceSignal {
  SignalKind kind = SignalKind::Zero;
  double amplitude = 0.0;
  double frequency = 0.0;
  double offset = 0.0;
  std::uint64_t seed = 0;

  static DisturbanceSignal zero() { return {}; }
  static DisturbanceSignal constant(double value);
  static DisturbanceSignal sinusoid(double amplitude, double frequency, double offset = 0.0);
  static DisturbanceSignal seeded_random(double amplitude, double knot_rate, std::uint64_t seed,
                                         double offset = 0.0);

  double value(double t) const;
  double operator()(double t) const { return value(t); }
  /// Analytic supremum of |value(t)| over all t.
  double sup_abs() const;
  void validate() const;

  friend bool operator==(const DisturbanceSignal&, const DisturbanceSignal&) = default;
};

/// Control-affine plant  x' = f(x, t) + b(x) u + b(x) d(t) + w_u(x, t).
struct SystemModel {
  std::size_t dimension = 1;
  std::function<Vector(const StateVector&, double)> drift;
  std::function<Vector(const StateVector&)> input_vector;
  DisturbanceSignal matched_disturbance;
  // Empty means w_u == 0.
  std::function<Vector(const StateVector&, double)> unmatched_disturbance;
  // Elementwise bound on |w_u|; empty means all zero.
  Vector unmatched_bound;
  std::string label;

  Vector drift_at(const StateVector& x, double t) const;
  Vector input_at(const StateVector& x) const;
  Vector unmatched_at(const StateVector& x, double t) const;
};

struct SlidingSurface {
  std::size_t dimension = 1;
  std::function<double(const StateVector&)> value;
  std::function<Vector(const StateVector&)> gradient;
  std::string description;
};

double surface_value(const SlidingSurface& surface, const StateVector& x);
Vector surface_gradient(const SlidingSurface& surface, const StateVector& x);
// Central differences; test oracle only, never used inside the control loop.
Vector surface_gradient_fd(const SlidingSurface& surface, const StateVector& x, double h = 1e-5);

/// -1, 0 or +1; zero only for an exact 0.0.
int sgn(double v);

Vector eval_plant_derivative(const SystemModel& model, const StateVector& x, double t, double u);
// Same, with the matched disturbance replaced by d_value.
Vector eval_plant_derivative(const SystemModel& model, const StateVector& x, double t, double u,
                             double d_value);

double dot(std::span<const double> a, std::span<const double> b);
double max_abs(std::span<const double> v);

}  // namespace smc
