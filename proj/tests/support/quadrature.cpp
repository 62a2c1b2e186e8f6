#include "quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace vpfp::oracle {

GaussHermite::GaussHermite(int n_points) {
  if (n_points < 1) throw std::invalid_argument("GaussHermite: n_points >= 1");
  // Jacobi matrix of the orthonormal polynomials w.r.t. M: zero diagonal,
  // off-diagonal sqrt(k).
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n_points, n_points);
  for (int k = 1; k < n_points; ++k) {
    jacobi(k - 1, k) = std::sqrt(double(k));
    jacobi(k, k - 1) = std::sqrt(double(k));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("GaussHermite: eigensolver failed");
  }
  nodes = solver.eigenvalues();
  // Christoffel weights 1 / sum_k h_k(x_i)^2.  The eigenvector-based
  // weights lose all relative accuracy at extreme nodes (components
  // underflow toward the eigensolver noise floor); the upward recurrence
  // follows the dominant solution there and stays accurate.
  weights.resize(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double x = nodes[i];
    double hm = 0.0, hc = 1.0, sum = 1.0;
    for (int k = 1; k < n_points; ++k) {
      const double hn = (x * hc - std::sqrt(double(k - 1)) * hm) /
                        std::sqrt(double(k));
      hm = hc;
      hc = hn;
      sum += hc * hc;
    }
    weights[i] = 1.0 / sum;
  }
}

HermiteTable::HermiteTable(int n_polys, const Eigen::VectorXd& x)
    : HermiteTable(n_polys, x, Eigen::VectorXd::Ones(x.size())) {}

HermiteTable::HermiteTable(int n_polys, const Eigen::VectorXd& x,
                           const Eigen::VectorXd& scale) {
  const int m = int(x.size());
  h.resize(n_polys, m);
  hp.resize(n_polys, m);
  hpp.resize(n_polys, m);
  for (int i = 0; i < m; ++i) {
    h(0, i) = scale[i];
    hp(0, i) = 0.0;
    hpp(0, i) = 0.0;
    if (n_polys > 1) {
      h(1, i) = x[i] * scale[i];
      hp(1, i) = scale[i];
      hpp(1, i) = 0.0;
    }
    for (int n = 1; n + 1 < n_polys; ++n) {
      const double rn = std::sqrt(double(n));
      const double rn1 = std::sqrt(double(n + 1));
      h(n + 1, i) = (x[i] * h(n, i) - rn * h(n - 1, i)) / rn1;
      hp(n + 1, i) = (h(n, i) + x[i] * hp(n, i) - rn * hp(n - 1, i)) / rn1;
      hpp(n + 1, i) =
          (2.0 * hp(n, i) + x[i] * hpp(n, i) - rn * hpp(n - 1, i)) / rn1;
    }
  }
}

namespace {

// Entry (row, col) = sum_i w_i integrand(col at node i) h_row(x_i), with
// sqrt(w_i) folded into the polynomial tables so every summand stays O(1);
// plain tables overflow the cancellation budget for high modes.
template <class F>
Eigen::MatrixXd assemble(int n, int quad_points, F&& integrand) {
  const GaussHermite gh(quad_points);
  const HermiteTable table(n, gh.nodes, gh.weights.cwiseSqrt());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n, n);
  for (int col = 0; col < n; ++col) {
    for (int row = 0; row < n; ++row) {
      double acc = 0.0;
      for (int i = 0; i < gh.nodes.size(); ++i) {
        acc += integrand(table, gh.nodes[i], col, i) * table.h(row, i);
      }
      out(row, col) = acc;
    }
  }
  return out;
}

}  // namespace

Eigen::MatrixXd quad_v_matrix(int n, int quad_points) {
  return assemble(n, quad_points,
                  [](const HermiteTable& t, double x, int col, int i) {
                    return x * t.h(col, i);
                  });
}

Eigen::MatrixXd quad_dv_matrix(int n, int quad_points) {
  // d/dv (h sqrt(M)) = (h' - (v/2) h) sqrt(M)
  return assemble(n, quad_points,
                  [](const HermiteTable& t, double x, int col, int i) {
                    return t.hp(col, i) - 0.5 * x * t.h(col, i);
                  });
}

Eigen::MatrixXd quad_L_matrix(int n, int quad_points) {
  // L (h sqrt(M)) = (h'' - v h') sqrt(M)
  return assemble(n, quad_points,
                  [](const HermiteTable& t, double x, int col, int i) {
                    return t.hpp(col, i) - x * t.hp(col, i);
                  });
}

}  // namespace vpfp::oracle
