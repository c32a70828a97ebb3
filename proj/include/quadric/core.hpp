#pragma once

#include <array>
#include <cmath>
#include <optional>

#include "quadric/error.hpp"

namespace quadric {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
  Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

  friend Vec3 operator+(Vec3 a, const Vec3& b) { return a += b; }
  friend Vec3 operator-(Vec3 a, const Vec3& b) { return a -= b; }
  friend Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
  friend Vec3 operator*(Vec3 a, double s) { return a *= s; }
  friend Vec3 operator*(double s, Vec3 a) { return a *= s; }
  friend Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double max_abs(const Vec3& a) {
  return std::fmax(std::fabs(a.x), std::fmax(std::fabs(a.y), std::fabs(a.z)));
}
inline bool is_finite(const Vec3& a) {
  return std::isfinite(a.x) && std::isfinite(a.y) && std::isfinite(a.z);
}
/// Throws InvalidArgument for the zero vector.
Vec3 normalized(const Vec3& a);

/// Row-major 3x3 matrix.
struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};

  static Mat3 identity();
  static Mat3 diagonal(const Vec3& d);
  static Mat3 from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2);

  double operator()(int r, int c) const { return m[r][c]; }
  double& operator()(int r, int c) { return m[r][c]; }

  Vec3 column(int c) const { return {m[0][c], m[1][c], m[2][c]}; }
  Vec3 row(int r) const { return {m[r][0], m[r][1], m[r][2]}; }

  Mat3 transposed() const;
  double determinant() const;
  double trace() const { return m[0][0] + m[1][1] + m[2][2]; }

  friend Vec3 operator*(const Mat3& a, const Vec3& v);
  friend Mat3 operator*(const Mat3& a, const Mat3& b);
  friend Mat3 operator+(const Mat3& a, const Mat3& b);
  friend Mat3 operator-(const Mat3& a, const Mat3& b);
  friend Mat3 operator*(double s, const Mat3& a);
};

/// Outer product a b^T.
Mat3 outer(const Vec3& a, const Vec3& b);
/// Largest absolute entry.
double max_abs(const Mat3& a);

/// Tolerance policy shared by every module.
///
/// rank_eps is relative to the largest eigenvalue (or pivot) of whatever is
/// being rank-tested; residual_eps bounds geometric residuals; iter_max caps
/// the number of Jacobi sweeps.
struct Tolerance {
  double rank_eps = 1e-9;
  double residual_eps = 1e-8;
  int iter_max = 64;

  /// Throws InvalidArgument unless 0 < rank_eps < 1e-3, residual_eps > 0 and
  /// iter_max >= 10.
  void validate() const;
};

/// Second-degree surface
///
///   a t^2 + a1 u^2 + a2 v^2 + 2 b u v + 2 b1 v t + 2 b2 u t
///     + 2 c t + 2 c1 u + 2 c2 v = k
///
/// stored as the ten scalars of the symmetric 4x4 coefficient matrix. The
/// value of the surface function at p is (left-hand side) - k, so a point is
/// on the surface iff evaluate() returns zero.
class Quadric {
 public:
  /// Throws NonFinite or AllZero.
  Quadric(double a, double a1, double a2, double b, double b1, double b2, double c,
          double c1, double c2, double k);

  /// Builds from the quadratic-part matrix (only the upper triangle is read),
  /// the linear part l (surface = p^T Q p + 2 l.p - k) and k.
  static Quadric from_parts(const Mat3& quadratic, const Vec3& linear, double k);

  double a() const { return a_; }
  double a1() const { return a1_; }
  double a2() const { return a2_; }
  double b() const { return b_; }
  double b1() const { return b1_; }
  double b2() const { return b2_; }
  double c() const { return c_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  double k() const { return k_; }

  /// Coefficients in storage order (a, a1, a2, b, b1, b2, c, c1, c2, k).
  std::array<double, 10> coefficients() const;
  static Quadric from_coefficients(const std::array<double, 10>& c);

  /// Symmetric matrix of the quadratic part, rows/columns ordered (t, u, v).
  Mat3 quadratic_part() const;
  /// Half the coefficients of the linear terms: (c, c1, c2).
  Vec3 linear_part() const { return {c_, c1_, c2_}; }

  double max_abs_coefficient() const;
  Quadric scaled(double s) const;
  /// Divides every coefficient by the largest absolute coefficient.
  Quadric normalized() const;

  friend bool operator==(const Quadric&, const Quadric&) = default;

 private:
  double a_, a1_, a2_, b_, b1_, b2_, c_, c1_, c2_, k_;
};

/// Converts the general equation
///   alpha z^2 + beta y z + gamma x z + delta y^2 + epsilon x y + zeta x^2
///     + eta x + theta y + iota z + kappa = 0
/// into the symmetric storage (x, y, z) -> (t, u, v).
Quadric quadric_from_general(double alpha, double beta, double gamma, double delta,
                             double epsilon, double zeta, double eta, double theta,
                             double iota, double kappa);

double evaluate(const Quadric& q, const Vec3& p);
Vec3 gradient(const Quadric& q, const Vec3& p);

/// |evaluate(q, p)| divided by max|coefficient| * (1 + |p|^2); the
/// scale-free residual used for every on-surface test in the library.
double relative_residual(const Quadric& q, const Vec3& p);

/// Plane { p : n.p = d } with unit normal n.
class Plane3 {
 public:
  /// Normalizes n (and scales d accordingly). Throws InvalidArgument for a
  /// zero or non-finite normal.
  Plane3(const Vec3& n, double d);
  static Plane3 through(const Vec3& point, const Vec3& normal);

  const Vec3& normal() const { return n_; }
  double offset() const { return d_; }
  double signed_distance(const Vec3& p) const { return dot(n_, p) - d_; }
  Vec3 project(const Vec3& p) const { return p - signed_distance(p) * n_; }

 private:
  Vec3 n_;
  double d_;
};

/// Line p0 + s u with unit direction u.
class Line3 {
 public:
  Line3(const Vec3& p0, const Vec3& u);

  const Vec3& point() const { return p0_; }
  const Vec3& direction() const { return u_; }
  Vec3 at(double s) const { return p0_ + s * u_; }
  double distance(const Vec3& p) const;

 private:
  Vec3 p0_;
  Vec3 u_;
};

/// p -> R p + t with R a proper rotation.
class RigidMotion {
 public:
  /// Throws InvalidArgument unless R is orthonormal to 1e-10 with det > 0.
  RigidMotion(const Mat3& rotation, const Vec3& translation);
  static RigidMotion identity();
  static RigidMotion translation(const Vec3& t);

  const Mat3& rotation() const { return r_; }
  const Vec3& translation() const { return t_; }

  Vec3 apply(const Vec3& p) const { return r_ * p + t_; }
  Vec3 apply_direction(const Vec3& d) const { return r_ * d; }
  RigidMotion inverse() const;
  /// (this * other)(p) = this(other(p)).
  RigidMotion then_after(const RigidMotion& other) const;

 private:
  Mat3 r_;
  Vec3 t_;
};

/// Pullback: returns q' with evaluate(q', p) == evaluate(q, m.apply(p)).
Quadric transform(const Quadric& q, const RigidMotion& m);

/// Image of a plane under the motion.
Plane3 transform(const Plane3& pl, const RigidMotion& m);
Line3 transform(const Line3& line, const RigidMotion& m);

struct Ellipse3 {
  Vec3 center;
  Vec3 major_dir;
  Vec3 minor_dir;
  double semi_major = 1.0;
  double semi_minor = 1.0;

  /// Throws InvalidArgument if the axes are not orthonormal or the
  /// semi-axes are not ordered and positive.
  void validate() const;
  Vec3 normal() const { return cross(major_dir, minor_dir); }
  Vec3 point(double angle) const;
};

struct RightConeData {
  Vec3 axis;
  double half_angle = 0.0;
};

/// Quadratic cone with a designated vertex. Right circular cones also carry
/// their axis and half-angle.
struct Cone3 {
  Vec3 vertex;
  Quadric surface;
  std::optional<RightConeData> right;
};

}  // namespace quadric
