#include "quadric/tangency.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "quadric/random.hpp"
#include "quadric/sections.hpp"

namespace quadric {

namespace {

constexpr double kRevolutionEps = 1e-9;

bool nearly_equal(double x, double y) {
  return std::fabs(x - y) <= kRevolutionEps * std::fmax(std::fabs(x), std::fabs(y));
}

CanonicalForm require_ellipsoid(const Quadric& q, const Tolerance& tol) {
  CanonicalForm cf = reduce(q, tol);
  if (cf.cls != QuadricClass::Ellipsoid)
    fail(ErrorCode::NotEllipsoid, "surface is a " + std::string(to_string(cf.cls)));
  return cf;
}

// Axis of a surface of revolution, if it has a single one.
std::optional<Line3> revolution_axis(const Quadric& q, const Tolerance& tol) {
  const CanonicalForm cf = reduce(q, tol);
  const Vec3& s = cf.semi_axes;
  switch (cf.cls) {
    case QuadricClass::EllipticParaboloid:
      if (nearly_equal(cf.parabolic[0], cf.parabolic[1])) return Line3(cf.origin(), cf.axis(2));
      return std::nullopt;
    case QuadricClass::HyperboloidOneSheet:
    case QuadricClass::HyperboloidTwoSheets:
      if (nearly_equal(s.x, s.y)) return Line3(cf.origin(), cf.axis(2));
      return std::nullopt;
    case QuadricClass::Ellipsoid:
      if (nearly_equal(s.x, s.y) && nearly_equal(s.y, s.z)) return std::nullopt;
      if (nearly_equal(s.x, s.y)) return Line3(cf.origin(), cf.axis(2));
      if (nearly_equal(s.y, s.z)) return Line3(cf.origin(), cf.axis(0));
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

}  // namespace

Plane3 tangent_plane(const Quadric& q, const Vec3& p, const Tolerance& tol) {
  tol.validate();
  if (!is_finite(p)) fail(ErrorCode::NonFinite, "point is not finite");
  if (relative_residual(q, p) > tol.residual_eps) fail(ErrorCode::NotOnSurface, "point is not on the surface");
  const Vec3 g = gradient(q, p);
  if (norm(g) <= tol.rank_eps * q.max_abs_coefficient() * (1.0 + norm(p)))
    fail(ErrorCode::SingularPoint, "gradient vanishes at the point");
  return Plane3::through(p, g);
}

AxisRays axis_ray_classification(const CanonicalForm& cf, const Vec3& p, const Tolerance& tol) {
  tol.validate();
  const Vec3& s = cf.semi_axes;
  bool revolution = false;
  switch (cf.cls) {
    case QuadricClass::EllipticParaboloid:
      revolution = nearly_equal(cf.parabolic[0], cf.parabolic[1]);
      break;
    case QuadricClass::HyperboloidOneSheet:
    case QuadricClass::HyperboloidTwoSheets:
      revolution = nearly_equal(s.x, s.y);
      break;
    default:
      break;
  }
  if (!revolution) fail(ErrorCode::NotConoid, "not a conoid of revolution: " + std::string(to_string(cf.cls)));

  const Quadric qc = cf.canonical_quadric();
  const Vec3 pc = cf.motion.apply(p);
  if (relative_residual(qc, pc) > tol.residual_eps) fail(ErrorCode::NotOnSurface, "point is not on the surface");

  // A point of the solid on the axis fixes which sign of the surface function is "inside".
  Vec3 interior{};
  if (cf.cls == QuadricClass::EllipticParaboloid) interior = {0.0, 0.0, 1.0};
  if (cf.cls == QuadricClass::HyperboloidTwoSheets) interior = {0.0, 0.0, (pc.z >= 0.0 ? 2.0 : -2.0) * s.z};
  const double inside_sign = evaluate(qc, interior) > 0.0 ? 1.0 : -1.0;

  const Vec3 g = gradient(qc, pc);
  if (std::fabs(g.z) <= 1e-9 * norm(g)) fail(ErrorCode::AmbiguousRay, "axis direction is tangent at the point");

  const double inward = (g.z * inside_sign > 0.0) ? 1.0 : -1.0;
  const double qzz = qc.quadratic_part()(2, 2);

  AxisRays out;
  out.verified = true;
  for (double dir : {inward, -inward}) {
    // Second intersection of the ray with the surface: f(p + t d) = t (g.d + t d^T Q d).
    const double gd = dir * g.z;
    const double t_exit = (qzz != 0.0 && -gd / qzz > 0.0) ? -gd / qzz : std::numeric_limits<double>::infinity();
    const double scale = std::isfinite(t_exit) ? std::fmin(1.0, 0.45 * t_exit) : 1.0;
    const double expected = (dir == inward) ? inside_sign : -inside_sign;
    for (int i = 1; i <= 20; ++i) {
      const double t = 0.1 * i * scale;
      const double f = evaluate(qc, pc + Vec3{0.0, 0.0, dir * t});
      if (!(f * expected > 0.0)) out.verified = false;
    }
    if (dir == -inward) out.sample_scale = scale;
  }
  out.inside = inward * cf.axis(2);
  out.outside = -out.inside;
  return out;
}

TangencyReport plane_touches_at_one_point(const Quadric& q, const Plane3& pl, const Tolerance& tol) {
  const PlanarConic sec = plane_section(q, pl, tol);
  if (sec.cls != ConicClass::Point)
    fail(ErrorCode::NotTangent, "plane section is " + std::string(to_string(sec.cls)));

  TangencyReport rep{sec.lift(sec.shape.center), pl, 0.0, true, std::nullopt};
  rep.residual = relative_residual(q, rep.contact);

  const double h = 0.1 * std::fmax(1.0, norm(rep.contact));
  double sign = 0.0;
  for (int i = -5; i <= 5; ++i) {
    for (int j = -5; j <= 5; ++j) {
      if (i == 0 && j == 0) continue;
      const double f = evaluate(q, rep.contact + (i * h) * sec.e1 + (j * h) * sec.e2);
      if (f == 0.0 || (sign != 0.0 && f * sign < 0.0)) rep.unique = false;
      if (sign == 0.0) sign = f;
    }
  }

  if (const auto axis = revolution_axis(q, tol)) {
    const Vec3 radial = cross(axis->direction(), rep.contact - axis->point());
    if (norm(radial) <= 1e-9 * std::fmax(1.0, norm(rep.contact))) {
      rep.axial_plane_perpendicular = std::fabs(dot(axis->direction(), pl.normal())) <= 1e-9 ||
                                      std::fabs(std::fabs(dot(axis->direction(), pl.normal())) - 1.0) <= 1e-9;
    } else {
      rep.axial_plane_perpendicular = std::fabs(dot(normalized(radial), pl.normal())) <= 1e-9;
    }
  }
  return rep;
}

Sphere monge_sphere(const Quadric& q, const Tolerance& tol) {
  const CanonicalForm cf = require_ellipsoid(q, tol);
  return {cf.origin(), norm(cf.semi_axes)};
}

TangentTriple tangent_triple_from_frame(const Quadric& q, const Mat3& frame, const Tolerance& tol) {
  const CanonicalForm cf = require_ellipsoid(q, tol);
  const RigidMotion back = cf.motion.inverse();
  const Vec3& s = cf.semi_axes;
  TangentTriple out{{Plane3({1, 0, 0}, 0), Plane3({0, 1, 0}, 0), Plane3({0, 0, 1}, 0)}, {}, {}};
  Vec3 corner{};
  for (int i = 0; i < 3; ++i) {
    const Vec3 n = normalized(frame.column(i));
    const Vec3 scaled{s.x * s.x * n.x, s.y * s.y * n.y, s.z * s.z * n.z};
    const double h = std::sqrt(dot(n, scaled));
    corner += h * n;
    out.planes[i] = transform(Plane3(n, h), back);
    out.contacts[i] = back.apply(scaled / h);
  }
  out.point = back.apply(corner);
  return out;
}

TangentTriple perpendicular_tangent_triple(const Quadric& q, std::uint64_t seed, const Tolerance& tol) {
  CounterRng rng(seed);
  return tangent_triple_from_frame(q, random_rotation(rng), tol);
}

}  // namespace quadric
