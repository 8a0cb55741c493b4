#pragma once

#include <functional>
#include <vector>

namespace fracwave {

/// Nodal values on the interior nodes of a mesh, length MeshSpec::M.
using FieldVector = std::vector<double>;

/// Space function u(x, y); the y argument is ignored for dim == 1.
using SpaceFn = std::function<double(double, double)>;
/// Space-time function f(x, y, t); the y argument is ignored for dim == 1.
using SpaceTimeFn = std::function<double(double, double, double)>;

/// Uniform tensor-product mesh on (0,1)^dim with homogeneous Dirichlet
/// boundary. Only interior nodes carry unknowns.
struct MeshSpec {
  int dim = 1;        // 1 or 2
  int cells = 2;      // 1/h, integer >= 2
  double h = 0.5;     // 1/cells
  int m = 1;          // interior nodes per dimension
  int M = 1;          // total interior unknowns, m^dim
  double K = 0.01;    // wave-speed factor multiplying the stiffness form
};

/// Throws std::invalid_argument unless dim in {1,2}, cells >= 2, K > 0.
MeshSpec make_mesh(int dim, int cells, double K);

/// Convenience for h = 2^-h_exp.
MeshSpec make_mesh_pow2(int dim, int h_exp, double K);

/// Mass and stiffness matrices for continuous piecewise-(bi)linear elements,
/// held as their 1D three-point stencils. In 2D the operators are the
/// Kronecker forms M1 (x) M1 and S1 (x) M1 + M1 (x) S1 and are never
/// materialized.
struct OperatorPair {
  MeshSpec mesh;
  double mass_diag = 0.0;   // (h/6) * 4
  double mass_off = 0.0;    // (h/6) * 1
  double stiff_diag = 0.0;  // (K/h) * 2
  double stiff_off = 0.0;   // (K/h) * -1
};

OperatorPair assemble_operators(const MeshSpec& mesh);

/// Load vector F_i = integral of f(., t) phi_i, by 3-point Gauss quadrature
/// per element and dimension.
FieldVector load_vector(const SpaceTimeFn& f, double t, const MeshSpec& mesh);

/// Nodal interpolant: values[i] = u(x_i) at interior nodes.
FieldVector interpolate(const SpaceFn& u, const MeshSpec& mesh);

/// L2(Omega) norm of (piecewise-linear interpolant of U) - exact, by 3-point
/// Gauss quadrature per element and dimension. Boundary values of U are zero.
double l2_error(const FieldVector& U, const SpaceFn& exact, const MeshSpec& mesh);

/// Weight convention for the discrete grid norm below.
enum class GridWeight {
  PerDim,  // h^dim: the discrete L2 norm of the grid function
  PaperH,  // h^1 regardless of dimension
};

/// sqrt(weight * sum_j |U_j - V_j|^2) over interior nodes, with the coarse
/// mesh's h in the weight. V may live on the same mesh or on the once-refined
/// mesh (cells doubled), in which case fine values are sampled at the
/// coinciding nodes (index doubling per dimension).
/// Throws std::invalid_argument on any other mesh pairing.
double grid_l2_diff(const MeshSpec& mesh_u, const FieldVector& U,
                    const MeshSpec& mesh_v, const FieldVector& V,
                    GridWeight weight = GridWeight::PerDim);

}  // namespace fracwave
