#include "quadric/core.hpp"

#include <algorithm>
#include <string>

namespace quadric {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::DegenerateConic: return "DegenerateConic";
    case ErrorCode::InsufficientSections: return "InsufficientSections";
    case ErrorCode::NotCentral: return "NotCentral";
    case ErrorCode::NotOnSurface: return "NotOnSurface";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::NotConoid: return "NotConoid";
    case ErrorCode::AmbiguousRay: return "AmbiguousRay";
    case ErrorCode::NotTangent: return "NotTangent";
    case ErrorCode::NotEllipsoid: return "NotEllipsoid";
    case ErrorCode::NotRuled: return "NotRuled";
    case ErrorCode::NonPositiveParameter: return "NonPositiveParameter";
    case ErrorCode::NoRealBeta: return "NoRealBeta";
    case ErrorCode::CircularInput: return "CircularInput";
    case ErrorCode::NoValidChord: return "NoValidChord";
    case ErrorCode::DegenerateApex: return "DegenerateApex";
    case ErrorCode::ClauseMismatch: return "ClauseMismatch";
    case ErrorCode::NotOblique: return "NotOblique";
    case ErrorCode::OpenSection: return "OpenSection";
    case ErrorCode::GeneratorMiss: return "GeneratorMiss";
    case ErrorCode::RevolutionSpecial: return "RevolutionSpecial";
    case ErrorCode::NoParametrization: return "NoParametrization";
  }
  return "Unknown";
}

Vec3 normalized(const Vec3& a) {
  const double n = norm(a);
  if (!(n > 0.0) || !std::isfinite(n)) fail(ErrorCode::InvalidArgument, "cannot normalize a zero vector");
  return a / n;
}

// ---------------------------------------------------------------------------
// Mat3

Mat3 Mat3::identity() { return diagonal({1.0, 1.0, 1.0}); }

Mat3 Mat3::diagonal(const Vec3& d) {
  Mat3 r;
  r.m[0][0] = d.x;
  r.m[1][1] = d.y;
  r.m[2][2] = d.z;
  return r;
}

Mat3 Mat3::from_columns(const Vec3& c0, const Vec3& c1, const Vec3& c2) {
  Mat3 r;
  for (int i = 0; i < 3; ++i) {
    r.m[i][0] = c0[i];
    r.m[i][1] = c1[i];
    r.m[i][2] = c2[i];
  }
  return r;
}

Mat3 Mat3::transposed() const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
  return r;
}

double Mat3::determinant() const {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Vec3 operator*(const Mat3& a, const Vec3& v) {
  return {a.m[0][0] * v.x + a.m[0][1] * v.y + a.m[0][2] * v.z,
          a.m[1][0] * v.x + a.m[1][1] * v.y + a.m[1][2] * v.z,
          a.m[2][0] * v.x + a.m[2][1] * v.y + a.m[2][2] * v.z};
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r.m[i][j] = a.m[i][0] * b.m[0][j] + a.m[i][1] * b.m[1][j] + a.m[i][2] * b.m[2][j];
  return r;
}

Mat3 operator+(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] + b.m[i][j];
  return r;
}

Mat3 operator-(const Mat3& a, const Mat3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = a.m[i][j] - b.m[i][j];
  return r;
}

Mat3 operator*(double s, const Mat3& a) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = s * a.m[i][j];
  return r;
}

Mat3 outer(const Vec3& a, const Vec3& b) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r.m[i][j] = a[i] * b[j];
  return r;
}

double max_abs(const Mat3& a) {
  double r = 0.0;
  for (const auto& row : a.m)
    for (double v : row) r = std::max(r, std::fabs(v));
  return r;
}

// ---------------------------------------------------------------------------
// Tolerance

void Tolerance::validate() const {
  if (!(rank_eps > 0.0 && rank_eps < 1e-3))
    fail(ErrorCode::InvalidArgument, "rank_eps must lie in (0, 1e-3)");
  if (!(residual_eps > 0.0) || !std::isfinite(residual_eps))
    fail(ErrorCode::InvalidArgument, "residual_eps must be positive");
  if (iter_max < 10) fail(ErrorCode::InvalidArgument, "iter_max must be at least 10");
}

// ---------------------------------------------------------------------------
// Quadric

Quadric::Quadric(double a, double a1, double a2, double b, double b1, double b2, double c,
                 double c1, double c2, double k)
    : a_(a), a1_(a1), a2_(a2), b_(b), b1_(b1), b2_(b2), c_(c), c1_(c1), c2_(c2), k_(k) {
  const auto all = coefficients();
  if (!std::all_of(all.begin(), all.end(), [](double v) { return std::isfinite(v); }))
    fail(ErrorCode::NonFinite, "quadric coefficient is not finite");
  if (std::all_of(all.begin(), all.end(), [](double v) { return v == 0.0; }))
    fail(ErrorCode::AllZero, "all quadric coefficients are zero");
}

Quadric Quadric::from_parts(const Mat3& q, const Vec3& l, double k) {
  return Quadric(q(0, 0), q(1, 1), q(2, 2), q(1, 2), q(0, 2), q(0, 1), l.x, l.y, l.z, k);
}

std::array<double, 10> Quadric::coefficients() const {
  return {a_, a1_, a2_, b_, b1_, b2_, c_, c1_, c2_, k_};
}

Quadric Quadric::from_coefficients(const std::array<double, 10>& c) {
  return Quadric(c[0], c[1], c[2], c[3], c[4], c[5], c[6], c[7], c[8], c[9]);
}

Mat3 Quadric::quadratic_part() const {
  Mat3 q;
  q.m = {{{a_, b2_, b1_}, {b2_, a1_, b_}, {b1_, b_, a2_}}};
  return q;
}

double Quadric::max_abs_coefficient() const {
  double r = 0.0;
  for (double v : coefficients()) r = std::max(r, std::fabs(v));
  return r;
}

Quadric Quadric::scaled(double s) const {
  auto c = coefficients();
  for (double& v : c) v *= s;
  return from_coefficients(c);
}

Quadric Quadric::normalized() const { return scaled(1.0 / max_abs_coefficient()); }

Quadric quadric_from_general(double alpha, double beta, double gamma, double delta,
                             double epsilon, double zeta, double eta, double theta,
                             double iota, double kappa) {
  // x -> t, y -> u, z -> v; mixed and linear terms carry a factor 2 in storage.
  return Quadric(zeta, delta, alpha, beta / 2.0, gamma / 2.0, epsilon / 2.0, eta / 2.0,
                 theta / 2.0, iota / 2.0, -kappa);
}

double evaluate(const Quadric& q, const Vec3& p) {
  const double t = p.x, u = p.y, v = p.z;
  return q.a() * t * t + q.a1() * u * u + q.a2() * v * v +
         2.0 * (q.b() * u * v + q.b1() * v * t + q.b2() * u * t) +
         2.0 * (q.c() * t + q.c1() * u + q.c2() * v) - q.k();
}

Vec3 gradient(const Quadric& q, const Vec3& p) {
  return 2.0 * (q.quadratic_part() * p + q.linear_part());
}

double relative_residual(const Quadric& q, const Vec3& p) {
  return std::fabs(evaluate(q, p)) / (q.max_abs_coefficient() * (1.0 + dot(p, p)));
}

// ---------------------------------------------------------------------------
// Plane3 / Line3

Plane3::Plane3(const Vec3& n, double d) {
  if (!is_finite(n) || !std::isfinite(d)) fail(ErrorCode::NonFinite, "plane is not finite");
  const double len = norm(n);
  if (!(len > 0.0)) fail(ErrorCode::InvalidArgument, "plane normal is zero");
  n_ = n / len;
  d_ = d / len;
}

Plane3 Plane3::through(const Vec3& point, const Vec3& normal) {
  const Vec3 n = normalized(normal);
  return Plane3(n, dot(n, point));
}

Line3::Line3(const Vec3& p0, const Vec3& u) : p0_(p0), u_(normalized(u)) {
  if (!is_finite(p0)) fail(ErrorCode::NonFinite, "line point is not finite");
}

double Line3::distance(const Vec3& p) const { return norm(cross(p - p0_, u_)); }

// ---------------------------------------------------------------------------
// RigidMotion

RigidMotion::RigidMotion(const Mat3& rotation, const Vec3& translation)
    : r_(rotation), t_(translation) {
  const Mat3 err = r_.transposed() * r_ - Mat3::identity();
  if (!(max_abs(err) < 1e-10)) fail(ErrorCode::InvalidArgument, "rotation is not orthonormal");
  if (!(r_.determinant() > 0.0)) fail(ErrorCode::InvalidArgument, "rotation is a reflection");
  if (!is_finite(t_)) fail(ErrorCode::NonFinite, "translation is not finite");
}

RigidMotion RigidMotion::identity() { return {Mat3::identity(), {}}; }

RigidMotion RigidMotion::translation(const Vec3& t) { return {Mat3::identity(), t}; }

RigidMotion RigidMotion::inverse() const {
  const Mat3 rt = r_.transposed();
  return {rt, -(rt * t_)};
}

RigidMotion RigidMotion::then_after(const RigidMotion& other) const {
  return {r_ * other.r_, r_ * other.t_ + t_};
}

Quadric transform(const Quadric& q, const RigidMotion& m) {
  // q(x) = x^T Q x + 2 l.x - k with x = R p + t.
  const Mat3& r = m.rotation();
  const Vec3& t = m.translation();
  const Mat3 big_q = q.quadratic_part();
  const Vec3 l = q.linear_part();
  const Mat3 qn = r.transposed() * big_q * r;
  const Vec3 qt = big_q * t;
  const Vec3 ln = r.transposed() * (qt + l);
  const double kn = q.k() - dot(t, qt) - 2.0 * dot(l, t);
  Mat3 sym;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) sym(i, j) = 0.5 * (qn(i, j) + qn(j, i));
  return Quadric::from_parts(sym, ln, kn);
}

Plane3 transform(const Plane3& pl, const RigidMotion& m) {
  const Vec3 n = m.apply_direction(pl.normal());
  return Plane3(n, pl.offset() + dot(n, m.translation()));
}

Line3 transform(const Line3& line, const RigidMotion& m) {
  return Line3(m.apply(line.point()), m.apply_direction(line.direction()));
}

// ---------------------------------------------------------------------------
// Ellipse3

void Ellipse3::validate() const {
  if (std::fabs(norm(major_dir) - 1.0) > 1e-12 || std::fabs(norm(minor_dir) - 1.0) > 1e-12 ||
      std::fabs(dot(major_dir, minor_dir)) > 1e-12)
    fail(ErrorCode::InvalidArgument, "ellipse axes are not orthonormal");
  if (!(semi_minor > 0.0) || !(semi_major >= semi_minor))
    fail(ErrorCode::InvalidArgument, "ellipse semi-axes must satisfy major >= minor > 0");
}

Vec3 Ellipse3::point(double angle) const {
  return center + semi_major * std::cos(angle) * major_dir +
         semi_minor * std::sin(angle) * minor_dir;
}

}  // namespace quadric
