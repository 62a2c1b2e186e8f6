#pragma once

#include "vpfp/hermite.hpp"

namespace vpfp {

enum class SymbolKind { FullB, QOnP1Complement };

/// Dense truncated matrix of a Fourier-symbol operator on the Hermite chain.
struct SymbolMatrix {
  Eigen::MatrixXcd entries;
  double s = 0.0;
  double eps = 0.0;
  SymbolKind kind = SymbolKind::FullB;
};

/// Full linearized symbol at wavenumber magnitude s > 0:
///   B = diag(-n) - i*eps*s*V - (i*eps/s)*E10,
/// where V is the multiplication-by-v ladder and E10 is the rank-one
/// Poisson coupling sending the mode-0 coefficient into mode 1.
SymbolMatrix assemble_B(double s, double eps, const HermiteBasis& basis);

/// Microscopic symbol Q = L - i*eps*s*P1*V*P1, row/column 0 zeroed.
/// s = 0 is allowed here (the skew term vanishes).
SymbolMatrix assemble_Q(double s, double eps, const HermiteBasis& basis);

/// Weighted inner product (f,g)_s = <f,g> + s^{-2} f_0 conj(g_0);
/// conjugates the second argument.
Complex weighted_inner(const VelocityCoeffs& f, const VelocityCoeffs& g,
                       double s);

/// Weighted norm ||f||_s = sqrt((f,f)_s).
double weighted_norm(const VelocityCoeffs& f, double s);

/// Unconjugated pairing sum(f_n g_n) + s^{-2} f_0 g_0.  This is the pairing
/// that turns the leading eigenvector into a genuine rank-one spectral
/// projector for the non-self-adjoint symbol.
Complex bilinear_pair(const VelocityCoeffs& f, const VelocityCoeffs& g,
                      double s);

}  // namespace vpfp
