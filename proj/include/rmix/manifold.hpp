#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

#include "rmix/rng.hpp"

namespace rmix {

// A manifold point in ambient coordinates. The flat torus stores angles in
// [0,2pi); mesh points additionally carry their face and barycentric weights
// (coords cache the 3D position).
struct Point {
  Eigen::VectorXd x;
  int face = -1;
  Eigen::Vector3d bary = Eigen::Vector3d::Zero();
};

struct TangentVec {
  Point base;
  Eigen::VectorXd v;
};

enum class ManifoldKind { Euclidean, Sphere, FlatTorus, Hyperboloid, Mesh };

const char* kind_name(ManifoldKind k);

class Manifold {
 public:
  virtual ~Manifold() = default;

  virtual ManifoldKind kind() const = 0;
  virtual std::string describe() const = 0;
  // Length of Point::x and of tangent component vectors.
  virtual int ambient_dim() const = 0;
  virtual int intrinsic_dim() const = 0;
  virtual bool compact() const = 0;

  // Throws std::domain_error when the point violates the manifold constraints.
  virtual void validate(const Point& p) const = 0;

  virtual Point exp(const Point& x, const Eigen::VectorXd& v) const = 0;
  // False when y is at (or numerically too close to) the cut locus of x.
  virtual bool log(const Point& x, const Point& y, Eigen::VectorXd& out) const = 0;
  virtual double dist(const Point& x, const Point& y) const = 0;
  virtual Eigen::VectorXd project(const Point& x, const Eigen::VectorXd& w) const = 0;

  // Adjoint of the tangent projection, for reverse-mode gradients. The
  // projection is self-adjoint for all embedded kinds except the hyperboloid
  // (Lorentz metric), which overrides this.
  virtual Eigen::VectorXd project_adjoint(const Point& x, const Eigen::VectorXd& g) const {
    return project(x, g);
  }

  // Columns form a basis of T_xM, orthonormal in the manifold metric.
  virtual Eigen::MatrixXd tangent_basis(const Point& x) const = 0;

  // Metric on tangent components. Euclidean restriction everywhere except the
  // hyperboloid (Lorentz form, positive definite on tangent vectors).
  virtual double inner(const Point& x, const Eigen::VectorXd& u,
                       const Eigen::VectorXd& v) const {
    (void)x;
    return u.dot(v);
  }
  double norm(const Point& x, const Eigen::VectorXd& v) const {
    return std::sqrt(std::max(0.0, inner(x, v, v)));
  }
  // d/dv <v,v>_M
  virtual Eigen::VectorXd metric_grad(const Point& x, const Eigen::VectorXd& v) const {
    (void)x;
    return 2.0 * v;
  }

  // Isotropic Gaussian with std `scale` in an orthonormal tangent basis.
  virtual Eigen::VectorXd tangent_gaussian(const Point& x, Rng& rng, double scale) const;

  // Compact kinds only; throws std::invalid_argument otherwise.
  virtual Point sample_uniform(Rng& rng) const;
  // -log(volume) of the uniform distribution; compact kinds only.
  virtual double uniform_log_density() const;

  // Network input featurization (torus: cos/sin pairs; others: coordinates).
  virtual int feature_dim() const { return ambient_dim(); }
  virtual void featurize(const Point& p, double* out) const;

  // Spec-facing wrappers around the component-level operations.
  Point exp_map(const Point& x, const TangentVec& v) const;
  TangentVec log_map(const Point& x, const Point& y) const;  // throws on cut locus
  double geodesic_dist(const Point& x, const Point& y) const { return dist(x, y); }
  TangentVec project_to_tangent(const Point& x, const Eigen::VectorXd& w) const;
};

using ManifoldPtr = std::shared_ptr<const Manifold>;

ManifoldPtr make_euclidean(int d);
ManifoldPtr make_sphere(int d);     // S^d embedded in R^{d+1}
ManifoldPtr make_flat_torus(int n); // angles with wrapped arithmetic
ManifoldPtr make_hyperboloid();     // H^2, Lorentz model

// n uniform draws; throws for non-compact kinds.
std::vector<Point> sample_uniform(const Manifold& m, Rng& rng, int n);

// Wrap an angle into [0, 2pi).
double wrap_angle(double a);
// Wrap a difference into (-pi, pi].
double wrap_diff(double a);

// Lorentz form <u,v>_L = -u0 v0 + u1 v1 + u2 v2.
double lorentz_inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

Point make_point(std::initializer_list<double> coords);

}  // namespace rmix
