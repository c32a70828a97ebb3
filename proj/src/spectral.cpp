#include "quadric/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace quadric {
namespace detail {

namespace {

template <int N>
double off_diagonal_norm(const SquareMatrix<N>& a) {
  double s = 0.0;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (i != j) s += a[i][j] * a[i][j];
  return std::sqrt(s);
}

template <int N>
double frobenius_norm(const SquareMatrix<N>& a) {
  double s = 0.0;
  for (const auto& row : a)
    for (double v : row) s += v * v;
  return std::sqrt(s);
}

// Annihilates a[p][q] with a plane rotation (Rutishauser's stable form).
template <int N>
void rotate(SquareMatrix<N>& a, SquareMatrix<N>& v, int p, int q) {
  const double apq = a[p][q];
  if (apq == 0.0) return;
  const double theta = (a[q][q] - a[p][p]) / (2.0 * apq);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  for (int k = 0; k < N; ++k) {
    const double akp = a[k][p];
    const double akq = a[k][q];
    a[k][p] = c * akp - s * akq;
    a[k][q] = s * akp + c * akq;
  }
  for (int k = 0; k < N; ++k) {
    const double apk = a[p][k];
    const double aqk = a[q][k];
    a[p][k] = c * apk - s * aqk;
    a[q][k] = s * apk + c * aqk;
  }
  a[p][q] = 0.0;
  a[q][p] = 0.0;

  for (int k = 0; k < N; ++k) {
    const double vkp = v[k][p];
    const double vkq = v[k][q];
    v[k][p] = c * vkp - s * vkq;
    v[k][q] = s * vkp + c * vkq;
  }
}

}  // namespace

template <int N>
int jacobi_sweeps(SquareMatrix<N>& a, SquareMatrix<N>& v, int max_sweeps) {
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) v[i][j] = (i == j) ? 1.0 : 0.0;

  const double scale = frobenius_norm<N>(a);
  if (scale == 0.0) return 0;
  const double target = std::numeric_limits<double>::epsilon() * 1e-2 * scale;

  double off = off_diagonal_norm<N>(a);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off <= target) return sweep;
    for (int p = 0; p < N - 1; ++p)
      for (int q = p + 1; q < N; ++q) rotate<N>(a, v, p, q);
    const double next = off_diagonal_norm<N>(a);
    // A sweep that fails to shrink the off-diagonal mass has hit rounding.
    if (!(next < off)) return sweep + 1;
    off = next;
  }
  return off <= target ? max_sweeps : -1;
}

template int jacobi_sweeps<2>(SquareMatrix<2>&, SquareMatrix<2>&, int);
template int jacobi_sweeps<3>(SquareMatrix<3>&, SquareMatrix<3>&, int);
template int jacobi_sweeps<4>(SquareMatrix<4>&, SquareMatrix<4>&, int);

}  // namespace detail

namespace {

Vec3 sign_normalized(Vec3 v) {
  for (int i = 0; i < 3; ++i) {
    if (std::fabs(v[i]) > 1e-12) {
      if (v[i] < 0.0) v = -v;
      break;
    }
  }
  return v;
}

bool lexicographically_greater(const Vec3& a, const Vec3& b) {
  for (int i = 0; i < 3; ++i) {
    if (a[i] != b[i]) return a[i] > b[i];
  }
  return false;
}

}  // namespace

SpectralData eigen_symmetric3(const Mat3& sym, const Tolerance& tol) {
  tol.validate();
  const double scale = max_abs(sym);
  if (!std::isfinite(scale)) fail(ErrorCode::NonFinite, "matrix is not finite");
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::fabs(sym(i, j) - sym(j, i)) > 1e-12 * scale)
        fail(ErrorCode::InvalidArgument, "matrix is not symmetric");

  detail::SquareMatrix<3> a{};
  detail::SquareMatrix<3> v{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = 0.5 * (sym(i, j) + sym(j, i));

  const int sweeps = detail::jacobi_sweeps<3>(a, v, tol.iter_max);
  if (sweeps < 0) fail(ErrorCode::NoConvergence, "Jacobi iteration did not converge");

  struct Pair {
    double value;
    Vec3 vec;
  };
  std::array<Pair, 3> pairs;
  for (int i = 0; i < 3; ++i)
    pairs[i] = {a[i][i], sign_normalized(Vec3{v[0][i], v[1][i], v[2][i]})};

  double max_lambda = 0.0;
  for (const auto& p : pairs) max_lambda = std::max(max_lambda, std::fabs(p.value));

  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    if (x.value != y.value) return x.value > y.value;
    return lexicographically_greater(x.vec, y.vec);
  });

  SpectralData out;
  out.sweeps = sweeps;
  out.eigenvalues = {pairs[0].value, pairs[1].value, pairs[2].value};
  const Vec3 e0 = normalized(pairs[0].vec);
  const Vec3 e1 = normalized(pairs[1].vec - dot(pairs[1].vec, e0) * e0);
  out.frame = Mat3::from_columns(e0, e1, cross(e0, e1));

  for (const auto& p : pairs) {
    if (max_lambda == 0.0 || std::fabs(p.value) <= tol.rank_eps * max_lambda) {
      ++out.n_zero;
    } else if (p.value > 0.0) {
      ++out.n_pos;
    } else {
      ++out.n_neg;
    }
  }
  out.rank = out.n_pos + out.n_neg;
  return out;
}

double coefficient_matrix_norm(const Quadric& q, const Tolerance& tol) {
  const Mat3 qq = q.quadratic_part();
  const Vec3 l = q.linear_part();
  detail::SquareMatrix<4> a{};
  detail::SquareMatrix<4> v{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) a[i][j] = qq(i, j);
    a[i][3] = l[i];
    a[3][i] = l[i];
  }
  a[3][3] = -q.k();
  if (detail::jacobi_sweeps<4>(a, v, tol.iter_max) < 0)
    fail(ErrorCode::NoConvergence, "Jacobi iteration did not converge");
  double r = 0.0;
  for (int i = 0; i < 4; ++i) r = std::max(r, std::fabs(a[i][i]));
  return r;
}

CubicCoeffs characteristic_cubic(const Quadric& q) {
  const Mat3 m = q.quadratic_part();
  const double minors = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)) +
                        (m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0)) +
                        (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1));
  return {m.determinant(), minors, m.trace(), 1.0};
}

CenterResult center(const Quadric& q, const Tolerance& tol) {
  tol.validate();
  // Augmented system [Q | -l], Gauss-Jordan with partial pivoting.
  std::array<std::array<double, 4>, 3> m{};
  const Mat3 qq = q.quadratic_part();
  const Vec3 l = q.linear_part();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i][j] = qq(i, j);
    m[i][3] = -l[i];
  }

  const double scale = std::max(max_abs(qq), max_abs(l));
  std::array<int, 3> pivot_col{-1, -1, -1};
  int row = 0;
  double largest_pivot = 0.0;
  for (int col = 0; col < 3 && row < 3; ++col) {
    int best = row;
    for (int r = row + 1; r < 3; ++r)
      if (std::fabs(m[r][col]) > std::fabs(m[best][col])) best = r;
    const double piv = std::fabs(m[best][col]);
    largest_pivot = std::max(largest_pivot, piv);
    if (piv == 0.0 || piv <= tol.rank_eps * largest_pivot) continue;
    std::swap(m[best], m[row]);
    const double inv = 1.0 / m[row][col];
    for (int j = 0; j < 4; ++j) m[row][j] *= inv;
    for (int r = 0; r < 3; ++r) {
      if (r == row) continue;
      const double f = m[r][col];
      if (f == 0.0) continue;
      for (int j = 0; j < 4; ++j) m[r][j] -= f * m[row][j];
    }
    pivot_col[row] = col;
    ++row;
  }
  const int rank = row;

  for (int r = rank; r < 3; ++r)
    if (std::fabs(m[r][3]) > tol.rank_eps * std::max(scale, 1e-300)) return NoCenter{};

  if (rank == 0) {
    if (max_abs(l) == 0.0) return EverywhereCenter{};
    return NoCenter{};
  }

  Vec3 particular{};
  std::array<bool, 3> is_pivot{false, false, false};
  for (int r = 0; r < rank; ++r) {
    particular[pivot_col[r]] = m[r][3];
    is_pivot[pivot_col[r]] = true;
  }
  if (rank == 3) return UniquePoint{particular};

  // Null-space basis from the free columns.
  std::array<Vec3, 2> null{};
  int n_null = 0;
  for (int free = 0; free < 3; ++free) {
    if (is_pivot[free]) continue;
    Vec3 v{};
    v[free] = 1.0;
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -m[r][free];
    null[n_null++] = v;
  }

  if (rank == 2) {
    const Vec3 dir = normalized(null[0]);
    // Closest point of the line to the origin.
    return LineOfCenters{Line3(particular - dot(particular, dir) * dir, dir)};
  }
  const Vec3 n = normalized(cross(null[0], null[1]));
  return PlaneOfCenters{Plane3(n, dot(n, particular))};
}

}  // namespace quadric
