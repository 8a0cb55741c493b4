#include "fracwave/fem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracwave {

namespace {

// 3-point Gauss-Legendre rule on [0,1].
constexpr double kGaussNode[3] = {0.1127016653792583, 0.5, 0.8872983346207417};
constexpr double kGaussWeight[3] = {5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};

void require(bool ok, const std::string& msg) {
  if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

MeshSpec make_mesh(int dim, int cells, double K) {
  require(dim == 1 || dim == 2, "mesh: dim must be 1 or 2");
  require(cells >= 2, "mesh: 1/h must be an integer >= 2");
  require(K > 0.0, "mesh: K must be > 0");
  MeshSpec mesh;
  mesh.dim = dim;
  mesh.cells = cells;
  mesh.h = 1.0 / cells;
  mesh.m = cells - 1;
  mesh.M = dim == 1 ? mesh.m : mesh.m * mesh.m;
  mesh.K = K;
  return mesh;
}

MeshSpec make_mesh_pow2(int dim, int h_exp, double K) {
  require(h_exp >= 1 && h_exp < 30, "mesh: h_exp must be in [1, 30)");
  return make_mesh(dim, 1 << h_exp, K);
}

OperatorPair assemble_operators(const MeshSpec& mesh) {
  OperatorPair ops;
  ops.mesh = mesh;
  ops.mass_diag = 4.0 * mesh.h / 6.0;
  ops.mass_off = mesh.h / 6.0;
  ops.stiff_diag = 2.0 * mesh.K / mesh.h;
  ops.stiff_off = -mesh.K / mesh.h;
  return ops;
}

FieldVector load_vector(const SpaceTimeFn& f, double t, const MeshSpec& mesh) {
  require(static_cast<bool>(f), "load_vector: f must be callable");
  FieldVector F(static_cast<std::size_t>(mesh.M), 0.0);
  const double h = mesh.h;
  if (mesh.dim == 1) {
    // Element e spans [e h, (e+1) h] with hat functions of nodes e and e+1.
    for (int e = 0; e < mesh.cells; ++e) {
      for (int q = 0; q < 3; ++q) {
        const double s = kGaussNode[q];
        const double x = (e + s) * h;
        const double fw = f(x, 0.0, t) * kGaussWeight[q] * h;
        const int left = e;       // global node index, 0 = boundary
        const int right = e + 1;
        if (left >= 1 && left <= mesh.m) F[static_cast<std::size_t>(left - 1)] += fw * (1.0 - s);
        if (right >= 1 && right <= mesh.m) F[static_cast<std::size_t>(right - 1)] += fw * s;
      }
    }
    return F;
  }
  // 2D: bilinear basis on each cell, tensor 3x3 Gauss.
  const int m = mesh.m;
  auto idx = [m](int ix, int iy) { return static_cast<std::size_t>(iy - 1) * m + (ix - 1); };
  for (int ey = 0; ey < mesh.cells; ++ey) {
    for (int ex = 0; ex < mesh.cells; ++ex) {
      for (int qy = 0; qy < 3; ++qy) {
        const double sy = kGaussNode[qy];
        const double y = (ey + sy) * h;
        for (int qx = 0; qx < 3; ++qx) {
          const double sx = kGaussNode[qx];
          const double x = (ex + sx) * h;
          const double fw = f(x, y, t) * kGaussWeight[qx] * kGaussWeight[qy] * h * h;
          const double wx[2] = {1.0 - sx, sx};
          const double wy[2] = {1.0 - sy, sy};
          for (int cy = 0; cy < 2; ++cy) {
            const int iy = ey + cy;
            if (iy < 1 || iy > m) continue;
            for (int cx = 0; cx < 2; ++cx) {
              const int ix = ex + cx;
              if (ix < 1 || ix > m) continue;
              F[idx(ix, iy)] += fw * wx[cx] * wy[cy];
            }
          }
        }
      }
    }
  }
  return F;
}

FieldVector interpolate(const SpaceFn& u, const MeshSpec& mesh) {
  require(static_cast<bool>(u), "interpolate: u must be callable");
  FieldVector values(static_cast<std::size_t>(mesh.M));
  const double h = mesh.h;
  if (mesh.dim == 1) {
    for (int i = 1; i <= mesh.m; ++i) values[static_cast<std::size_t>(i - 1)] = u(i * h, 0.0);
    return values;
  }
  std::size_t p = 0;
  for (int iy = 1; iy <= mesh.m; ++iy)
    for (int ix = 1; ix <= mesh.m; ++ix) values[p++] = u(ix * h, iy * h);
  return values;
}

double l2_error(const FieldVector& U, const SpaceFn& exact, const MeshSpec& mesh) {
  require(U.size() == static_cast<std::size_t>(mesh.M), "l2_error: field length mismatch");
  require(static_cast<bool>(exact), "l2_error: exact must be callable");
  const double h = mesh.h;
  double acc = 0.0;
  if (mesh.dim == 1) {
    auto nodal = [&](int i) {
      return (i >= 1 && i <= mesh.m) ? U[static_cast<std::size_t>(i - 1)] : 0.0;
    };
    for (int e = 0; e < mesh.cells; ++e) {
      const double ul = nodal(e), ur = nodal(e + 1);
      for (int q = 0; q < 3; ++q) {
        const double s = kGaussNode[q];
        const double x = (e + s) * h;
        const double d = ul * (1.0 - s) + ur * s - exact(x, 0.0);
        acc += kGaussWeight[q] * h * d * d;
      }
    }
    return std::sqrt(acc);
  }
  const int m = mesh.m;
  auto nodal = [&](int ix, int iy) {
    if (ix < 1 || ix > m || iy < 1 || iy > m) return 0.0;
    return U[static_cast<std::size_t>(iy - 1) * m + (ix - 1)];
  };
  for (int ey = 0; ey < mesh.cells; ++ey) {
    for (int ex = 0; ex < mesh.cells; ++ex) {
      const double u00 = nodal(ex, ey), u10 = nodal(ex + 1, ey);
      const double u01 = nodal(ex, ey + 1), u11 = nodal(ex + 1, ey + 1);
      for (int qy = 0; qy < 3; ++qy) {
        const double sy = kGaussNode[qy];
        const double y = (ey + sy) * h;
        for (int qx = 0; qx < 3; ++qx) {
          const double sx = kGaussNode[qx];
          const double x = (ex + sx) * h;
          const double uh = u00 * (1.0 - sx) * (1.0 - sy) + u10 * sx * (1.0 - sy) +
                            u01 * (1.0 - sx) * sy + u11 * sx * sy;
          const double d = uh - exact(x, y);
          acc += kGaussWeight[qx] * kGaussWeight[qy] * h * h * d * d;
        }
      }
    }
  }
  return std::sqrt(acc);
}

double grid_l2_diff(const MeshSpec& mesh_u, const FieldVector& U,
                    const MeshSpec& mesh_v, const FieldVector& V, GridWeight weight) {
  require(U.size() == static_cast<std::size_t>(mesh_u.M), "grid_l2_diff: U length mismatch");
  require(V.size() == static_cast<std::size_t>(mesh_v.M), "grid_l2_diff: V length mismatch");
  require(mesh_u.dim == mesh_v.dim, "grid_l2_diff: dimension mismatch");

  const bool same = mesh_v.cells == mesh_u.cells;
  const bool refined = mesh_v.cells == 2 * mesh_u.cells;
  require(same || refined, "grid_l2_diff: meshes must coincide or differ by one refinement");

  double acc = 0.0;
  if (mesh_u.dim == 1) {
    for (int i = 1; i <= mesh_u.m; ++i) {
      const double v = same ? V[static_cast<std::size_t>(i - 1)]
                            : V[static_cast<std::size_t>(2 * i - 1)];
      const double d = U[static_cast<std::size_t>(i - 1)] - v;
      acc += d * d;
    }
  } else {
    const int mu = mesh_u.m, mv = mesh_v.m;
    for (int iy = 1; iy <= mu; ++iy) {
      for (int ix = 1; ix <= mu; ++ix) {
        const double u = U[static_cast<std::size_t>(iy - 1) * mu + (ix - 1)];
        const double v = same ? V[static_cast<std::size_t>(iy - 1) * mv + (ix - 1)]
                              : V[static_cast<std::size_t>(2 * iy - 1) * mv + (2 * ix - 1)];
        const double d = u - v;
        acc += d * d;
      }
    }
  }
  const double w = weight == GridWeight::PaperH
                       ? mesh_u.h
                       : std::pow(mesh_u.h, static_cast<double>(mesh_u.dim));
  return std::sqrt(w * acc);
}

}  // namespace fracwave
