#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "rmix/bridges.hpp"
#include "rmix/manifold.hpp"

namespace rmix {

// A drift/velocity field on the manifold. Implementations should vectorize
// eval_batch (networks do); the pointwise entry is derived from it.
class DriftField {
 public:
  virtual ~DriftField() = default;
  // out is (ambient_dim x n); column j is the tangent vector at (xs[j], ts[j]).
  virtual void eval_batch(const std::vector<Point>& xs, const std::vector<double>& ts,
                          Eigen::MatrixXd& out) const = 0;
  Eigen::VectorXd eval(const Point& x, double t) const;
};

class LambdaDrift final : public DriftField {
 public:
  using Fn = std::function<Eigen::VectorXd(const Point&, double)>;
  explicit LambdaDrift(Fn fn) : fn_(std::move(fn)) {}
  void eval_batch(const std::vector<Point>& xs, const std::vector<double>& ts,
                  Eigen::MatrixXd& out) const override;

 private:
  Fn fn_;
};

enum class Leg { Forward, Backward };

struct TrajectoryBatch {
  std::vector<double> times;               // strictly increasing, t0=0, tN=T
  std::vector<Leg> leg;                    // per grid index
  std::vector<std::vector<Point>> states;  // [time][sample]

  int n_times() const { return static_cast<int>(times.size()); }
  int batch() const { return times.empty() ? 0 : static_cast<int>(states[0].size()); }
};

struct TwoWayConfig {
  int n_steps = 15;
  double t_star = 0.5;  // split time
  void validate(double horizon) const;
};

// Euler-Maruyama on the tangent space:
//   x_{k+1} = exp(x_k, h*drift(x_k,t_k) + sigma_{t_k} sqrt(h) xi).
// Deterministic given (seed, tag): sample i uses Rng::substream(seed, tag, i).
TrajectoryBatch geodesic_random_walk(const Manifold& m,
                                     const std::function<Eigen::VectorXd(const Point&, double)>& drift,
                                     const NoiseSchedule& schedule,
                                     const std::vector<Point>& x0, int n_steps,
                                     std::uint64_t seed, std::uint64_t tag = 0);

// Simulates the bridge to its horizon; steps landing inside the clipped zone
// snap toward the endpoint via the exponential map.
TrajectoryBatch simulate_bridge(const BridgeSpec& spec, const std::vector<Point>& x0,
                                int n_steps, std::uint64_t seed, std::uint64_t tag = 0);

// Two-way in-training simulation of the bridge pinned at x (data, t=T) and
// y (prior, t=0). Grid points below t_star come from the forward leg started
// at y; the rest from the reversed leg started at x. Cut-locus events resample
// the offending step's noise up to 8 times.
TrajectoryBatch simulate_two_way(const std::vector<Point>& x, const std::vector<Point>& y,
                                 BridgeFamily family, const ManifoldPtr& manifold,
                                 const NoiseSchedule& schedule, const TwoWayConfig& cfg,
                                 std::uint64_t seed, std::uint64_t tag,
                                 const TriMesh* mesh = nullptr,
                                 const SpectralBasis* basis = nullptr);

// Probability-flow velocity 1/2 (s_f(x,t) - s_b(x, T-t)).
struct FlowVelocity {
  const Manifold* manifold;
  const DriftField* fwd;
  const DriftField* bwd;
  double horizon;
  void eval_batch(const std::vector<Point>& xs, const std::vector<double>& ts,
                  Eigen::MatrixXd& out) const;
};

struct OdeOptions {
  int n_steps = 200;
  bool mesh_euler = false;   // Euler with per-step projection (meshes)
  double fd_step = 1e-4;     // divergence finite-difference step
};

// Integrates dY/dt = v from t=0 to T with fixed-step RK4 on the tangent space,
// re-projecting after every stage.
std::vector<Point> solve_ode(const Manifold& m, const DriftField& fwd, const DriftField& bwd,
                             std::vector<Point> x0, const OdeOptions& opts, double horizon = 1.0);

// Riemannian divergence of a velocity field via central differences along an
// orthonormal tangent basis, with projected differences.
double divergence(const Manifold& m,
                  const std::function<Eigen::VectorXd(const Point&, double)>& field,
                  const Point& x, double t, double fd_step = 1e-4);

// Probability-flow negative log-likelihood in nats: integrates the flow in
// reverse from each data point and accumulates the divergence.
struct NllOptions {
  int n_steps = 200;
  bool mesh_euler = false;
  double fd_step = 1e-4;
};
std::vector<double> nll(const Manifold& m, const DriftField& fwd, const DriftField& bwd,
                        const std::function<double(const Point&)>& prior_log_density,
                        const std::vector<Point>& x_data, const NllOptions& opts,
                        double horizon = 1.0);

}  // namespace rmix
