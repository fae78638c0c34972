#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "rmix/manifold.hpp"

namespace rmix {

// Thrown when a descent direction degenerates (vanishing spectral gradient);
// simulation callers respond by resampling the noise of the offending step.
class DegenerateDirectionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MeshQualityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TriMesh {
  Eigen::MatrixXd vertices;  // n x 3
  Eigen::MatrixXi faces;     // m x 3

  // Derived (filled by finalize()).
  Eigen::MatrixXd face_normal;  // m x 3, unit
  Eigen::VectorXd face_area;    // m
  double total_area = 0.0;
  // neighbor across the edge (F(f,i), F(f,(i+1)%3)); -1 on the boundary
  std::vector<std::array<int, 3>> neighbor;
  // per-face gradients of the barycentric coordinates, rows = d(lambda_i)/dp
  std::vector<Eigen::Matrix3d> bary_grad;

  int n_vertices() const { return static_cast<int>(vertices.rows()); }
  int n_faces() const { return static_cast<int>(faces.rows()); }

  // Computes areas/normals/adjacency; throws MeshQualityError listing
  // degenerate faces (area < 1e-12 * total).
  void finalize();

  Eigen::Vector3d position(int face, const Eigen::Vector3d& bary) const;
  Eigen::Vector3d barycentric(int face, const Eigen::Vector3d& pos) const;
};

// A point on the mesh as the generic Point currency (x caches the position).
Point mesh_point(const TriMesh& mesh, int face, const Eigen::Vector3d& bary);

// Cotangent stiffness (symmetric, zero row sums) and lumped mass diagonal.
struct MeshLaplacian {
  Eigen::SparseMatrix<double> stiffness;
  Eigen::VectorXd mass;
};
MeshLaplacian build_laplacian(const TriMesh& mesh);

enum class SpectralWeight { Diffusion, Biharmonic };

struct SpectralBasis {
  Eigen::VectorXd eigenvalues;     // K ascending, zero modes excluded
  Eigen::MatrixXd eigenfunctions;  // n_vertices x K, mass-orthonormal
  SpectralWeight weight_kind = SpectralWeight::Diffusion;
  double t_diff = 0.0;             // diffusion time (default 1/lambda_K)
  Eigen::VectorXd weights;         // w(lambda_i)

  int K() const { return static_cast<int>(eigenvalues.size()); }
  double eigenfunction_at(const TriMesh& mesh, int k, const Point& p) const;
};

// K smallest nonzero generalized eigenpairs of (stiffness, mass).
// t_diff <= 0 selects the default 1/lambda_K.
SpectralBasis compute_basis(const TriMesh& mesh, int K, SpectralWeight kind,
                            double t_diff = 0.0);

double spectral_dist_sq(const TriMesh& mesh, const SpectralBasis& basis,
                        const Point& x, const Point& y);

// Unscaled spectral bridge direction -1/2 grad d_w(x,z)^2 / |grad d_w(x,z)|^2,
// in the plane of x's face. Throws DegenerateDirectionError near critical
// points of d_w(., z).
Eigen::VectorXd spectral_log(const TriMesh& mesh, const SpectralBasis& basis,
                             const Point& x, const Point& z);

struct MeshStepResult {
  Point point;
  bool clamped = false;  // hit a boundary edge of an open mesh
};

// Advances x by the in-plane vector v, unfolding across edges so the traversed
// arc length equals |v|.
MeshStepResult mesh_step(const TriMesh& mesh, const Point& x, const Eigen::Vector3d& v);

// Density proportional to max(phi_k, 0), piecewise constant per face.
struct MeshDensity {
  const TriMesh* mesh = nullptr;
  Eigen::VectorXd face_mass;   // sums to 1
  Eigen::VectorXd face_value;  // density value on each face
  Point sample(Rng& rng) const;
  double log_density(const Point& p) const;
};
MeshDensity eigenfunction_density(const TriMesh& mesh, const SpectralBasis& basis, int k);

// One round of Loop subdivision (boundary-aware, corners pinned).
TriMesh loop_subdivide(const TriMesh& mesh);

// Generators for tests and fixtures.
TriMesh make_grid_mesh(int nx, int ny);        // unit square in z=0
TriMesh make_icosphere(int subdivisions);      // unit sphere triangulation
TriMesh make_tetrahedron();                     // regular, unit edge length

// ASCII OFF/OBJ, triangles only; vertex coordinates are normalized into
// (0,1)^3 on load.
TriMesh load_mesh(const std::string& path);
void save_off(const TriMesh& mesh, const std::string& path);

// Basis cache: "SPB1" header + little-endian doubles.
void save_basis(const SpectralBasis& basis, const std::string& path);
SpectralBasis load_basis(const std::string& path, const TriMesh& mesh);

// Closest point on the mesh to an arbitrary 3D position (brute force).
Point closest_point(const TriMesh& mesh, const Eigen::Vector3d& pos);

// Manifold facade over a mesh. dist() is the ambient 3D distance (exact mesh
// geodesics are out of scope); log() is unsupported.
ManifoldPtr make_mesh_manifold(std::shared_ptr<const TriMesh> mesh, std::string label);
const TriMesh& mesh_of(const Manifold& m);  // throws if not a mesh manifold

}  // namespace rmix
