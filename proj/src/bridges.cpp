#include "rmix/bridges.hpp"

#include <cmath>
#include <stdexcept>

namespace rmix {

NoiseSchedule NoiseSchedule::constant(double s, double T) {
  if (!(s > 0.0)) throw std::invalid_argument("schedule: sigma must be > 0");
  if (!(T > 0.0)) throw std::invalid_argument("schedule: horizon must be > 0");
  NoiseSchedule out;
  out.kind = Kind::Constant;
  out.sigma = s;
  out.horizon = T;
  return out;
}

NoiseSchedule NoiseSchedule::linear(double s0, double s1, double T) {
  if (!(s0 > 0.0) || !(s1 > 0.0)) {
    throw std::invalid_argument("schedule: sigma must stay > 0 on [0,T]");
  }
  if (!(T > 0.0)) throw std::invalid_argument("schedule: horizon must be > 0");
  NoiseSchedule out;
  out.kind = Kind::Linear;
  out.sigma0 = s0;
  out.sigma1 = s1;
  out.horizon = T;
  return out;
}

double NoiseSchedule::sigma_at(double t) const {
  if (kind == Kind::Constant) return sigma;
  return sigma0 + (sigma1 - sigma0) * (t / horizon);
}

double NoiseSchedule::tau(double t) const {
  if (t < 0.0 || t > horizon * (1.0 + 1e-12)) {
    throw std::range_error("tau: t outside [0, T]");
  }
  t = std::min(t, horizon);
  if (kind == Kind::Constant) return sigma * sigma * t;
  const double a = (sigma1 - sigma0) / horizon;
  if (std::abs(a) < 1e-300) return sigma0 * sigma0 * t;
  const double st = sigma0 + a * t;
  return (st * st * st - sigma0 * sigma0 * sigma0) / (3.0 * a);
}

double NoiseSchedule::tau_total() const { return tau(horizon); }

double tau(const NoiseSchedule& s, double t) { return s.tau(t); }

void BridgeSpec::validate() const {
  if (!manifold) throw std::invalid_argument("bridge: missing manifold");
  switch (family) {
    case BridgeFamily::Logarithm:
      if (manifold->kind() == ManifoldKind::Mesh) {
        throw std::invalid_argument("bridge: Logarithm family has no log map on meshes; use Spectral");
      }
      break;
    case BridgeFamily::Spectral:
      if (manifold->kind() != ManifoldKind::Mesh || mesh == nullptr || basis == nullptr) {
        throw std::invalid_argument("bridge: Spectral family requires a mesh manifold with a spectral basis");
      }
      break;
    case BridgeFamily::EuclideanBrownian:
      if (manifold->kind() != ManifoldKind::Euclidean) {
        throw std::invalid_argument("bridge: EuclideanBrownian family requires a Euclidean manifold");
      }
      break;
  }
}

namespace {

void check_horizon(const BridgeSpec& spec, double t) {
  const double T = spec.schedule.horizon;
  if (t < 0.0 || t >= T - spec.schedule.clip()) {
    throw std::range_error("bridge drift evaluated at t >= T - clip (drift singularity)");
  }
}

Eigen::VectorXd direction_of(const BridgeSpec& spec, const Point& x) {
  switch (spec.family) {
    case BridgeFamily::Logarithm:
      return spec.manifold->log_map(x, spec.endpoint).v;
    case BridgeFamily::Spectral:
      return spectral_log(*spec.mesh, *spec.basis, x, spec.endpoint);
    case BridgeFamily::EuclideanBrownian:
      // Heat-kernel gradient route: the Euclidean Gaussian kernel gives
      // exactly the straight-line displacement.
      return spec.endpoint.x - x.x;
  }
  throw std::logic_error("unreachable");
}

}  // namespace

double drift_scale(const BridgeSpec& spec, double t) {
  const NoiseSchedule& sc = spec.schedule;
  if (spec.direction == BridgeDirection::Forward) {
    const double s = sc.sigma_at(t);
    return s * s / (sc.tau_total() - sc.tau(t));
  }
  // Reversed clock s: reflected schedule sigma_bar(s) = sigma(T-s), and the
  // reflected tau satisfies tau_bar(T) - tau_bar(s) = tau(T-s).
  const double sig = sc.sigma_at(sc.horizon - t);
  return sig * sig / sc.tau(sc.horizon - t);
}

TangentVec unscaled_direction(const BridgeSpec& spec, const Point& x, double t) {
  check_horizon(spec, t);
  return TangentVec{x, direction_of(spec, x)};
}

TangentVec bridge_drift(const BridgeSpec& spec, const Point& x, double t) {
  check_horizon(spec, t);
  return TangentVec{x, drift_scale(spec, t) * direction_of(spec, x)};
}

TangentVec reversed_bridge_drift(const BridgeSpec& spec, const Point& x, double s) {
  BridgeSpec rev = spec;
  rev.direction = spec.direction == BridgeDirection::Forward ? BridgeDirection::Reversed
                                                             : BridgeDirection::Forward;
  return bridge_drift(rev, x, s);
}

}  // namespace rmix
