#pragma once

#include <memory>

#include "rmix/manifold.hpp"
#include "rmix/mesh.hpp"

namespace rmix {

// sigma_t and its rescaled time tau(t) = int_0^t sigma_s^2 ds, closed form.
struct NoiseSchedule {
  enum class Kind { Constant, Linear };
  Kind kind = Kind::Constant;
  double sigma = 1.0;              // constant
  double sigma0 = 0.1, sigma1 = 1.0;  // linear in t
  double horizon = 1.0;            // T

  static NoiseSchedule constant(double s, double T = 1.0);
  static NoiseSchedule linear(double s0, double s1, double T = 1.0);

  double sigma_at(double t) const;
  double tau(double t) const;  // throws std::range_error outside [0,T]
  double tau_total() const;

  // Drift singularity guard: the drift is never evaluated at t >= T - clip.
  double clip() const { return 1e-4 * horizon; }
};

double tau(const NoiseSchedule& s, double t);

enum class BridgeFamily { Logarithm, Spectral, EuclideanBrownian };
enum class BridgeDirection { Forward, Reversed };

// A bridge process family pinned at `endpoint`. Spectral bridges additionally
// need the mesh and its spectral basis.
struct BridgeSpec {
  BridgeFamily family = BridgeFamily::Logarithm;
  ManifoldPtr manifold;
  Point endpoint;
  NoiseSchedule schedule;
  BridgeDirection direction = BridgeDirection::Forward;
  const TriMesh* mesh = nullptr;
  const SpectralBasis* basis = nullptr;

  void validate() const;  // family/manifold compatibility
};

// Unscaled drift direction: log_map(x, z) for the Logarithm family (and the
// Euclidean Brownian bridge), the spectral descent direction for meshes.
// Throws std::domain_error (cut locus) or DegenerateDirectionError.
TangentVec unscaled_direction(const BridgeSpec& spec, const Point& x, double t);

// Full drift. Forward at time t: sigma_t^2/(tau_T - tau_t) * direction.
// Reversed at reversed time s: the schedule reflects (sigma_bar_s =
// sigma_{T-s}), which reduces to sigma_{T-s}^2 / tau(T-s) * direction.
TangentVec bridge_drift(const BridgeSpec& spec, const Point& x, double t);

// Convenience: drift of the time-reversed bridge at reversed time s.
TangentVec reversed_bridge_drift(const BridgeSpec& spec, const Point& x, double s);

// Scale factor multiplying the unscaled direction at time t.
double drift_scale(const BridgeSpec& spec, double t);

}  // namespace rmix
