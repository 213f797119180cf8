#include "smc/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "smc/errors.hpp"

namespace smc {

namespace {

void require_finite(std::span<const double> v, const char* what) {
  for (double e : v) {
    if (!std::isfinite(e)) throw NumericsError(std::string(what) + " has a non-finite entry");
  }
}

void require_dimension(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(want) +
                         ", got " + std::to_string(got));
  }
}

// splitmix64 finalizer; maps (seed, knot) to a uniform value in [-1, 1].
double knot_value(std::uint64_t seed, std::int64_t knot) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(knot) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z = z ^ (z >> 31);
  const double unit = static_cast<double>(z >> 11) * 0x1.0p-53;  // [0, 1)
  return 2.0 * unit - 1.0;
}

}  // namespace

StateVector::StateVector(Vector values) : values_(std::move(values)) {
  if (values_.empty()) throw DimensionError("state vector must have dimension >= 1");
  require_finite(values_, "state vector");
}

StateVector::StateVector(std::initializer_list<double> values) : StateVector(Vector(values)) {}

double StateVector::max_abs() const noexcept { return smc::max_abs(values_); }

const char* to_string(SignalKind kind) {
  switch (kind) {
    case SignalKind::Zero: return "zero";
    case SignalKind::Constant: return "constant";
    case SignalKind::Sinusoid: return "sinusoid";
    case SignalKind::SeededRandom: return "seeded-random";
  }
  return "zero";
}

SignalKind signal_kind_from_string(const std::string& name) {
  if (name == "zero") return SignalKind::Zero;
  if (name == "constant") return SignalKind::Constant;
  if (name == "sinusoid") return SignalKind::Sinusoid;
  if (name == "seeded-random") return SignalKind::SeededRandom;
  throw ParameterError("unknown signal kind '" + name +
                       "' (known: zero, constant, sinusoid, seeded-random)");
}

DisturbanceSignal DisturbanceSignal::constant(double value) {
  DisturbanceSignal sig;
  sig.kind = SignalKind::Constant;
  sig.amplitude = value;
  return sig;
}

DisturbanceSignal DisturbanceSignal::sinusoid(double amplitude, double frequency, double offset) {
  DisturbanceSignal sig;
  sig.kind = SignalKind::Sinusoid;
  sig.amplitude = amplitude;
  sig.frequency = frequency;
  sig.offset = offset;
  return sig;
}

DisturbanceSignal DisturbanceSignal::seeded_random(double amplitude, double knot_rate,
                                                   std::uint64_t seed, double offset) {
  DisturbanceSignal sig;
  sig.kind = SignalKind::SeededRandom;
  sig.amplitude = amplitude;
  sig.frequency = knot_rate;
  sig.seed = seed;
  sig.offset = offset;
  sig.validate();
  return sig;
}

double DisturbanceSignal::value(double t) const {
  switch (kind) {
    case SignalKind::Zero:
      return 0.0;
    case SignalKind::Constant:
      return offset + amplitude;
    case SignalKind::Sinusoid:
      return offset + amplitude * std::sin(frequency * t);
    case SignalKind::SeededRandom: {
      const double pos = t * frequency;
      const double base = std::floor(pos);
      const double frac = pos - base;
      const auto knot = static_cast<std::int64_t>(base);
      const double r0 = knot_value(seed, knot);
      const double r1 = knot_value(seed, knot + 1);
      return offset + amplitude * ((1.0 - frac) * r0 + frac * r1);
    }
  }
  return 0.0;
}

double DisturbanceSignal::sup_abs() const {
  switch (kind) {
    case SignalKind::Zero: return 0.0;
    case SignalKind::Constant: return std::abs(offset + amplitude);
    case SignalKind::Sinusoid:
      return frequency == 0.0 ? std::abs(offset) : std::abs(offset) + std::abs(amplitude);
    case SignalKind::SeededRandom: return std::abs(offset) + std::abs(amplitude);
  }
  return 0.0;
}

void DisturbanceSignal::validate() const {
  if (!std::isfinite(amplitude) || !std::isfinite(frequency) || !std::isfinite(offset)) {
    throw ParameterError("disturbance parameters must be finite");
  }
  if (kind == SignalKind::SeededRandom && !(frequency > 0.0)) {
    throw ParameterError("seeded-random disturbance needs a positive knot rate (frequency)");
  }
}

Vector SystemModel::drift_at(const StateVector& x, double t) const {
  require_dimension(x.dimension(), dimension, "drift");
  Vector f = drift(x, t);
  require_dimension(f.size(), dimension, "drift output");
  return f;
}

Vector SystemModel::input_at(const StateVector& x) const {
  require_dimension(x.dimension(), dimension, "input vector");
  Vector b = input_vector(x);
  require_dimension(b.size(), dimension, "input vector output");
  return b;
}

Vector SystemModel::unmatched_at(const StateVector& x, double t) const {
  require_dimension(x.dimension(), dimension, "unmatched disturbance");
  if (!unmatched_disturbance) return Vector(dimension, 0.0);
  Vector w = unmatched_disturbance(x, t);
  require_dimension(w.size(), dimension, "unmatched disturbance output");
  return w;
}

double surface_value(const SlidingSurface& surface, const StateVector& x) {
  require_dimension(x.dimension(), surface.dimension, "surface value");
  const double s = surface.value(x);
  if (!std::isfinite(s)) throw NumericsError("surface value is not finite");
  return s;
}

Vector surface_gradient(const SlidingSurface& surface, const StateVector& x) {
  require_dimension(x.dimension(), surface.dimension, "surface gradient");
  Vector g = surface.gradient(x);
  require_dimension(g.size(), surface.dimension, "surface gradient output");
  require_finite(g, "surface gradient");
  return g;
}

Vector surface_gradient_fd(const SlidingSurface& surface, const StateVector& x, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ParameterError("finite-difference step must be > 0");
  require_dimension(x.dimension(), surface.dimension, "surface gradient (fd)");
  Vector g(x.dimension());
  Vector probe = x.vector();
  for (std::size_t i = 0; i < probe.size(); ++i) {
    const double xi = probe[i];
    probe[i] = xi + h;
    const double plus = surface.value(StateVector(probe));
    probe[i] = xi - h;
    const double minus = surface.value(StateVector(probe));
    probe[i] = xi;
    g[i] = (plus - minus) / (2.0 * h);
  }
  return g;
}

int sgn(double v) {
  if (!std::isfinite(v)) throw ParameterError("sgn of a non-finite value");
  return (v > 0.0) - (v < 0.0);
}

Vector eval_plant_derivative(const SystemModel& model, const StateVector& x, double t, double u) {
  return eval_plant_derivative(model, x, t, u, model.matched_disturbance.value(t));
}

Vector eval_plant_derivative(const SystemModel& model, const StateVector& x, double t, double u,
                             double d_value) {
  if (!std::isfinite(u)) throw NumericsError("control input is not finite");
  Vector xdot = model.drift_at(x, t);
  const Vector b = model.input_at(x);
  const Vector w = model.unmatched_at(x, t);
  for (std::size_t i = 0; i < xdot.size(); ++i) {
    xdot[i] += b[i] * u + b[i] * d_value + w[i];
  }
  require_finite(xdot, "plant derivative");
  return xdot;
}

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("dot product of mismatched vectors");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

}  // namespace smc
