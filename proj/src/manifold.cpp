#include "rmix/manifold.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace rmix {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_finite(const Eigen::VectorXd& v, const char* what) {
  if (!v.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite input");
  }
}
}  // namespace

const char* kind_name(ManifoldKind k) {
  switch (k) {
    case ManifoldKind::Euclidean: return "euclidean";
    case ManifoldKind::Sphere: return "sphere";
    case ManifoldKind::FlatTorus: return "torus";
    case ManifoldKind::Hyperboloid: return "hyperboloid";
    case ManifoldKind::Mesh: return "mesh";
  }
  return "?";
}

double wrap_angle(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;  // fmod can land exactly on 2pi after the add
  return w;
}

double wrap_diff(double a) {
  double w = std::fmod(a, kTwoPi);
  if (w > kPi) w -= kTwoPi;
  if (w <= -kPi) w += kTwoPi;
  return w;
}

double lorentz_inner(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  return -u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

Point make_point(std::initializer_list<double> coords) {
  Point p;
  p.x.resize(static_cast<int>(coords.size()));
  int i = 0;
  for (double c : coords) p.x[i++] = c;
  return p;
}

Eigen::VectorXd Manifold::tangent_gaussian(const Point& x, Rng& rng, double scale) const {
  if (!(scale > 0.0)) throw std::invalid_argument("tangent_gaussian: scale must be > 0");
  const Eigen::MatrixXd basis = tangent_basis(x);
  Eigen::VectorXd z(basis.cols());
  for (int i = 0; i < z.size(); ++i) z[i] = scale * rng.normal();
  return basis * z;
}

Point Manifold::sample_uniform(Rng&) const {
  throw std::invalid_argument(std::string("sample_uniform: unsupported prior on non-compact manifold ") +
                              kind_name(kind()));
}

double Manifold::uniform_log_density() const {
  throw std::invalid_argument(std::string("uniform_log_density: non-compact manifold ") +
                              kind_name(kind()));
}

void Manifold::featurize(const Point& p, double* out) const {
  for (int i = 0; i < ambient_dim(); ++i) out[i] = p.x[i];
}

Point Manifold::exp_map(const Point& x, const TangentVec& v) const {
  if (v.base.x.size() != x.x.size() || (v.base.x - x.x).lpNorm<Eigen::Infinity>() > 1e-12) {
    throw std::invalid_argument("exp_map: tangent vector base does not match the point");
  }
  return exp(x, v.v);
}

TangentVec Manifold::log_map(const Point& x, const Point& y) const {
  Eigen::VectorXd out;
  if (!log(x, y, out)) {
    std::ostringstream oss;
    oss << "log_map: target in the cut locus of the base point (x=[" << x.x.transpose()
        << "], y=[" << y.x.transpose() << "])";
    throw std::domain_error(oss.str());
  }
  return TangentVec{x, out};
}

TangentVec Manifold::project_to_tangent(const Point& x, const Eigen::VectorXd& w) const {
  return TangentVec{x, project(x, w)};
}

std::vector<Point> sample_uniform(const Manifold& m, Rng& rng, int n) {
  if (!m.compact()) {
    throw std::invalid_argument(std::string("sample_uniform: unsupported prior on non-compact manifold ") +
                                kind_name(m.kind()));
  }
  std::vector<Point> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(m.sample_uniform(rng));
  return out;
}

// ---------------------------------------------------------------------------
// Euclidean R^d

class EuclideanManifold final : public Manifold {
 public:
  explicit EuclideanManifold(int d) : d_(d) {
    if (d < 1) throw std::invalid_argument("euclidean: dimension must be >= 1");
  }

  ManifoldKind kind() const override { return ManifoldKind::Euclidean; }
  std::string describe() const override { return "euclidean(" + std::to_string(d_) + ")"; }
  int ambient_dim() const override { return d_; }
  int intrinsic_dim() const override { return d_; }
  bool compact() const override { return false; }

  void validate(const Point& p) const override {
    if (p.x.size() != d_) throw std::domain_error("euclidean: wrong coordinate count");
    require_finite(p.x, "euclidean point");
  }

  Point exp(const Point& x, const Eigen::VectorXd& v) const override {
    require_finite(v, "exp_map");
    Point out;
    out.x = x.x + v;
    return out;
  }

  bool log(const Point& x, const Point& y, Eigen::VectorXd& out) const override {
    out = y.x - x.x;
    return true;
  }

  double dist(const Point& x, const Point& y) const override { return (y.x - x.x).norm(); }

  Eigen::VectorXd project(const Point&, const Eigen::VectorXd& w) const override { return w; }

  Eigen::MatrixXd tangent_basis(const Point&) const override {
    return Eigen::MatrixXd::Identity(d_, d_);
  }

  Eigen::VectorXd tangent_gaussian(const Point&, Rng& rng, double scale) const override {
    if (!(scale > 0.0)) throw std::invalid_argument("tangent_gaussian: scale must be > 0");
    Eigen::VectorXd v(d_);
    for (int i = 0; i < d_; ++i) v[i] = scale * rng.normal();
    return v;
  }

 private:
  int d_;
};

// ---------------------------------------------------------------------------
// Sphere S^d in R^{d+1}

class SphereManifold final : public Manifold {
 public:
  explicit SphereManifold(int d) : d_(d) {
    if (d < 1) throw std::invalid_argument("sphere: dimension must be >= 1");
  }

  ManifoldKind kind() const override { return ManifoldKind::Sphere; }
  std::string describe() const override { return "sphere(" + std::to_string(d_) + ")"; }
  int ambient_dim() const override { return d_ + 1; }
  int intrinsic_dim() const override { return d_; }
  bool compact() const override { return true; }

  void validate(const Point& p) const override {
    if (p.x.size() != d_ + 1) throw std::domain_error("sphere: wrong coordinate count");
    require_finite(p.x, "sphere point");
    if (std::abs(p.x.norm() - 1.0) > 1e-9) {
      throw std::domain_error("sphere: point not on the unit sphere");
    }
  }

  Point exp(const Point& x, const Eigen::VectorXd& v) const override {
    require_finite(v, "exp_map");
    const double n = v.norm();
    Point out;
    if (n < 1e-14) {
      out.x = x.x;
    } else {
      out.x = std::cos(n) * x.x + (std::sin(n) / n) * v;
    }
    out.x.normalize();  // re-project onto the constraint set
    return out;
  }

  bool log(const Point& x, const Point& y, Eigen::VectorXd& out) const override {
    double c = x.x.dot(y.x);
    if (c < -1.0 + 1e-10) return false;  // antipode: gradient of distance undefined
    c = std::min(c, 1.0);
    const Eigen::VectorXd u = y.x - c * x.x;
    const double s = u.norm();  // sin(theta)
    const double theta = std::acos(std::max(-1.0, std::min(1.0, c)));
    if (s < 1e-14) {
      out = Eigen::VectorXd::Zero(d_ + 1);
    } else {
      out = (theta / s) * u;
    }
    return true;
  }

  double dist(const Point& x, const Point& y) const override {
    const double c = std::max(-1.0, std::min(1.0, x.x.dot(y.x)));
    return std::acos(c);
  }

  Eigen::VectorXd project(const Point& x, const Eigen::VectorXd& w) const override {
    return w - x.x.dot(w) * x.x;
  }

  Eigen::MatrixXd tangent_basis(const Point& x) const override {
    // Gram-Schmidt of canonical directions, skipping the one most aligned
    // with x. Deterministic; any orthonormal basis works for our callers.
    int skip = 0;
    x.x.cwiseAbs().maxCoeff(&skip);
    Eigen::MatrixXd basis(d_ + 1, d_);
    int col = 0;
    for (int j = 0; j <= d_ && col < d_; ++j) {
      if (j == skip) continue;
      Eigen::VectorXd e = Eigen::VectorXd::Zero(d_ + 1);
      e[j] = 1.0;
      Eigen::VectorXd u = project(x, e);
      for (int k = 0; k < col; ++k) u -= basis.col(k).dot(u) * basis.col(k);
      const double n = u.norm();
      if (n < 1e-12) continue;
      basis.col(col++) = u / n;
    }
    if (col != d_) throw std::runtime_error("sphere: tangent basis construction failed");
    return basis;
  }

  Eigen::VectorXd tangent_gaussian(const Point& x, Rng& rng, double scale) const override {
    if (!(scale > 0.0)) throw std::invalid_argument("tangent_gaussian: scale must be > 0");
    Eigen::VectorXd w(d_ + 1);
    for (int i = 0; i <= d_; ++i) w[i] = scale * rng.normal();
    return project(x, w);
  }

  Point sample_uniform(Rng& rng) const override {
    Eigen::VectorXd v(d_ + 1);
    double n = 0.0;
    do {
      for (int i = 0; i <= d_; ++i) v[i] = rng.normal();
      n = v.norm();
    } while (n < 1e-12);
    Point p;
    p.x = v / n;
    return p;
  }

  double uniform_log_density() const override {
    // Surface area of S^d: 2 pi^{(d+1)/2} / Gamma((d+1)/2).
    const double logA = std::log(2.0) + 0.5 * (d_ + 1) * std::log(kPi) - std::lgamma(0.5 * (d_ + 1));
    return -logA;
  }

 private:
  int d_;
};

// ---------------------------------------------------------------------------
// Flat torus T^n, angles with wrapped arithmetic

class FlatTorusManifold final : public Manifold {
 public:
  explicit FlatTorusManifold(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("torus: dimension must be >= 1");
  }

  ManifoldKind kind() const override { return ManifoldKind::FlatTorus; }
  std::string describe() const override { return "torus(" + std::to_string(n_) + ")"; }
  int ambient_dim() const override { return n_; }
  int intrinsic_dim() const override { return n_; }
  bool compact() const override { return true; }

  void validate(const Point& p) const override {
    if (p.x.size() != n_) throw std::domain_error("torus: wrong coordinate count");
    require_finite(p.x, "torus point");
    for (int i = 0; i < n_; ++i) {
      if (p.x[i] < 0.0 || p.x[i] >= kTwoPi) {
        throw std::domain_error("torus: angle outside [0, 2pi)");
      }
    }
  }

  Point exp(const Point& x, const Eigen::VectorXd& v) const override {
    require_finite(v, "exp_map");
    Point out;
    out.x.resize(n_);
    for (int i = 0; i < n_; ++i) out.x[i] = wrap_angle(x.x[i] + v[i]);
    return out;
  }

  bool log(const Point& x, const Point& y, Eigen::VectorXd& out) const override {
    out.resize(n_);
    for (int i = 0; i < n_; ++i) out[i] = wrap_diff(y.x[i] - x.x[i]);
    return true;
  }

  double dist(const Point& x, const Point& y) const override {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) {
      const double d = wrap_diff(y.x[i] - x.x[i]);
      s += d * d;
    }
    return std::sqrt(s);
  }

  Eigen::VectorXd project(const Point&, const Eigen::VectorXd& w) const override { return w; }

  Eigen::MatrixXd tangent_basis(const Point&) const override {
    return Eigen::MatrixXd::Identity(n_, n_);
  }

  Eigen::VectorXd tangent_gaussian(const Point&, Rng& rng, double scale) const override {
    if (!(scale > 0.0)) throw std::invalid_argument("tangent_gaussian: scale must be > 0");
    Eigen::VectorXd v(n_);
    for (int i = 0; i < n_; ++i) v[i] = scale * rng.normal();
    return v;
  }

  Point sample_uniform(Rng& rng) const override {
    Point p;
    p.x.resize(n_);
    for (int i = 0; i < n_; ++i) p.x[i] = rng.uniform(0.0, kTwoPi);
    return p;
  }

  double uniform_log_density() const override { return -n_ * std::log(kTwoPi); }

  int feature_dim() const override { return 2 * n_; }

  void featurize(const Point& p, double* out) const override {
    for (int i = 0; i < n_; ++i) {
      out[2 * i] = std::cos(p.x[i]);
      out[2 * i + 1] = std::sin(p.x[i]);
    }
  }

 private:
  int n_;
};

// ---------------------------------------------------------------------------
// Hyperboloid H^2, Lorentz model: -x0^2 + x1^2 + x2^2 = -1, x0 > 0

class HyperboloidManifold final : public Manifold {
 public:
  ManifoldKind kind() const override { return ManifoldKind::Hyperboloid; }
  std::string describe() const override { return "hyperboloid"; }
  int ambient_dim() const override { return 3; }
  int intrinsic_dim() const override { return 2; }
  bool compact() const override { return false; }

  void validate(const Point& p) const override {
    if (p.x.size() != 3) throw std::domain_error("hyperboloid: wrong coordinate count");
    require_finite(p.x, "hyperboloid point");
    if (std::abs(lorentz_inner(p.x, p.x) + 1.0) > 1e-9 || p.x[0] < 1.0 - 1e-12) {
      throw std::domain_error("hyperboloid: point not on the upper sheet");
    }
  }

  Point exp(const Point& x, const Eigen::VectorXd& v) const override {
    require_finite(v, "exp_map");
    const double r2 = lorentz_inner(v, v);
    const double r = std::sqrt(std::max(0.0, r2));
    Point out;
    if (r < 1e-14) {
      out.x = x.x;
    } else {
      out.x = std::cosh(r) * x.x + (std::sinh(r) / r) * v;
    }
    // Re-solve x0 from the sheet constraint to stop drift accumulation.
    out.x[0] = std::sqrt(1.0 + out.x[1] * out.x[1] + out.x[2] * out.x[2]);
    return out;
  }

  bool log(const Point& x, const Point& y, Eigen::VectorXd& out) const override {
    double alpha = -lorentz_inner(x.x, y.x);
    alpha = std::max(alpha, 1.0);
    const double d = std::acosh(alpha);
    const Eigen::VectorXd u = y.x - alpha * x.x;
    const double un = std::sqrt(std::max(0.0, lorentz_inner(u, u)));  // sinh(d)
    if (un < 1e-14) {
      out = Eigen::VectorXd::Zero(3);
    } else {
      out = (d / un) * u;
    }
    return true;
  }

  double dist(const Point& x, const Point& y) const override {
    return std::acosh(std::max(1.0, -lorentz_inner(x.x, y.x)));
  }

  Eigen::VectorXd project(const Point& x, const Eigen::VectorXd& w) const override {
    return w + lorentz_inner(w, x.x) * x.x;
  }

  Eigen::VectorXd project_adjoint(const Point& x, const Eigen::VectorXd& g) const override {
    // P = I + x (Lx)^T, so P^T g = g + (x.g) Lx.
    Eigen::VectorXd lx(3);
    lx << -x.x[0], x.x[1], x.x[2];
    return g + x.x.dot(g) * lx;
  }

  Eigen::MatrixXd tangent_basis(const Point& x) const override {
    Eigen::MatrixXd basis(3, 2);
    int col = 0;
    for (int j = 1; j < 3 && col < 2; ++j) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(3);
      e[j] = 1.0;
      Eigen::VectorXd u = project(x, e);
      for (int k = 0; k < col; ++k) {
        u -= lorentz_inner(basis.col(k), u) * basis.col(k);
      }
      const double n = std::sqrt(std::max(0.0, lorentz_inner(u, u)));
      if (n < 1e-12) continue;
      basis.col(col++) = u / n;
    }
    if (col != 2) throw std::runtime_error("hyperboloid: tangent basis construction failed");
    return basis;
  }

  double inner(const Point&, const Eigen::VectorXd& u, const Eigen::VectorXd& v) const override {
    return lorentz_inner(u, v);
  }

  Eigen::VectorXd metric_grad(const Point&, const Eigen::VectorXd& v) const override {
    Eigen::VectorXd g(3);
    g << -2.0 * v[0], 2.0 * v[1], 2.0 * v[2];
    return g;
  }
};

ManifoldPtr make_euclidean(int d) { return std::make_shared<EuclideanManifold>(d); }
ManifoldPtr make_sphere(int d) { return std::make_shared<SphereManifold>(d); }
ManifoldPtr make_flat_torus(int n) { return std::make_shared<FlatTorusManifold>(n); }
ManifoldPtr make_hyperboloid() { return std::make_shared<HyperboloidManifold>(); }

}  // namespace rmix
