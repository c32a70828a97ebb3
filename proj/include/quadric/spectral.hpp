#pragma once

#include <array>
#include <variant>

#include "quadric/core.hpp"

namespace quadric {

/// Eigen-decomposition of a symmetric 3x3 matrix.
struct SpectralData {
  Vec3 eigenvalues;   ///< descending
  Mat3 frame;         ///< column i is the unit eigenvector of eigenvalue i; det = +1
  int rank = 0;       ///< count of |lambda| > rank_eps * max|lambda|
  int n_pos = 0;
  int n_neg = 0;
  int n_zero = 0;
  int sweeps = 0;     ///< Jacobi sweeps used
};

/// Cyclic Jacobi with the fixed pivot order (0,1), (0,2), (1,2).
///
/// Eigenvalues are sorted descending; exact ties are ordered by the
/// lexicographically larger eigenvector. The first two columns are signed so
/// that their first non-negligible component is positive and the third is
/// their cross product, so the frame is always a proper rotation.
///
/// Throws InvalidArgument if the input is not symmetric to 1e-12 relative,
/// NoConvergence if tol.iter_max sweeps do not suffice.
SpectralData eigen_symmetric3(const Mat3& sym, const Tolerance& tol = {});

/// Largest absolute eigenvalue of the symmetric 4x4 coefficient matrix of q.
double coefficient_matrix_norm(const Quadric& q, const Tolerance& tol = {});

/// c3 s^3 + c2 s^2 + c1 s + c0.
struct CubicCoeffs {
  double c3 = 0.0;
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 1.0;

  double operator()(double s) const { return ((c3 * s + c2) * s + c1) * s + c0; }
};

/// det(s Q + I) for the quadratic part Q; its roots are s = -1/lambda for the
/// nonzero eigenvalues lambda.
CubicCoeffs characteristic_cubic(const Quadric& q);

struct UniquePoint {
  Vec3 point;
};
struct LineOfCenters {
  Line3 line;
};
struct PlaneOfCenters {
  Plane3 plane;
};
struct NoCenter {};
/// Every point is a center; only reachable for a quadric whose quadratic and
/// linear parts both vanish.
struct EverywhereCenter {};

using CenterResult =
    std::variant<UniquePoint, LineOfCenters, PlaneOfCenters, NoCenter, EverywhereCenter>;

/// Solves Q c = -l by Gauss-Jordan elimination with partial pivoting. Pivots
/// below tol.rank_eps times the largest pivot count as zero.
CenterResult center(const Quadric& q, const Tolerance& tol = {});

namespace detail {

template <int N>
using SquareMatrix = std::array<std::array<double, N>, N>;

/// Cyclic Jacobi on an N x N symmetric matrix. On return `a` is (numerically)
/// diagonal and `v` holds the eigenvectors in its columns. Returns the number
/// of sweeps, or -1 if max_sweeps was exhausted.
template <int N>
int jacobi_sweeps(SquareMatrix<N>& a, SquareMatrix<N>& v, int max_sweeps);

}  // namespace detail
}  // namespace quadric
