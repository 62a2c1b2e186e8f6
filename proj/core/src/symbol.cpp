#include "vpfp/symbol.hpp"

#include <cmath>
#include <stdexcept>

namespace vpfp {

namespace {

constexpr Complex kImag{0.0, 1.0};

void check_symbol_args(double s, double eps) {
  if (s <= 0.0) {
    throw std::invalid_argument("symbol: undefined at s <= 0");
  }
  if (eps < 0.0 || eps >= 1.0) {
    throw std::invalid_argument("symbol: eps must lie in [0, 1)");
  }
}

}  // namespace

SymbolMatrix assemble_B(double s, double eps, const HermiteBasis& basis) {
  check_symbol_args(s, eps);
  const int n = basis.n_modes();
  Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 0; k < n; ++k) b(k, k) = -double(k);
  b -= kImag * eps * s * ladder_v_matrix(n);
  b(1, 0) -= kImag * eps / s;
  return SymbolMatrix{std::move(b), s, eps, SymbolKind::FullB};
}

SymbolMatrix assemble_Q(double s, double eps, const HermiteBasis& basis) {
  if (s < 0.0) throw std::invalid_argument("assemble_Q: s must be >= 0");
  if (eps < 0.0 || eps >= 1.0) {
    throw std::invalid_argument("assemble_Q: eps must lie in [0, 1)");
  }
  const int n = basis.n_modes();
  Eigen::MatrixXcd q = Eigen::MatrixXcd::Zero(n, n);
  for (int k = 1; k < n; ++k) q(k, k) = -double(k);
  Eigen::MatrixXcd skew = kImag * eps * s * ladder_v_matrix(n);
  skew.row(0).setZero();
  skew.col(0).setZero();
  q -= skew;
  return SymbolMatrix{std::move(q), s, eps, SymbolKind::QOnP1Complement};
}

Complex weighted_inner(const VelocityCoeffs& f, const VelocityCoeffs& g,
                       double s) {
  if (s <= 0.0) throw std::invalid_argument("weighted_inner: s must be > 0");
  // Eigen's dot() conjugates its *first* argument; we conjugate g.
  return g.dot(f) + f[0] * std::conj(g[0]) / (s * s);
}

double weighted_norm(const VelocityCoeffs& f, double s) {
  return std::sqrt(std::real(weighted_inner(f, f, s)));
}

Complex bilinear_pair(const VelocityCoeffs& f, const VelocityCoeffs& g,
                      double s) {
  if (s <= 0.0) throw std::invalid_argument("bilinear_pair: s must be > 0");
  Complex acc = 0.0;
  for (Eigen::Index n = 0; n < f.size(); ++n) acc += f[n] * g[n];
  return acc + f[0] * g[0] / (s * s);
}

}  // namespace vpfp
