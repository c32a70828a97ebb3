#include "quadric/ruled.hpp"

#include <cmath>
#include <string>

#include "quadric/spectral.hpp"

namespace quadric {

namespace {

// Unit vector orthogonal to n.
Vec3 any_orthogonal(const Vec3& n) {
  const Vec3 helper = std::fabs(n.x) <= std::fabs(n.y) && std::fabs(n.x) <= std::fabs(n.z)
                          ? Vec3{1, 0, 0}
                          : (std::fabs(n.y) <= std::fabs(n.z) ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
  return normalized(cross(n, helper));
}

}  // namespace

RulingPair rulings_through_point(const CanonicalForm& cf, const Vec3& p, const Tolerance& tol) {
  tol.validate();
  const bool one_sheet = cf.cls == QuadricClass::HyperboloidOneSheet;
  if (!one_sheet && cf.cls != QuadricClass::HyperbolicParaboloid)
    fail(ErrorCode::NotRuled, "not doubly ruled: " + std::string(to_string(cf.cls)));
  if (!is_finite(p)) fail(ErrorCode::NonFinite, "point is not finite");

  const Quadric qc = cf.canonical_quadric();
  const Vec3 pc = cf.motion.apply(p);
  if (relative_residual(qc, pc) > tol.residual_eps) fail(ErrorCode::NotOnSurface, "point is not on the surface");

  // A generator direction d satisfies g.d = 0 and d^T Q d = 0: an isotropic
  // direction of the quadratic form restricted to the tangent plane.
  const Mat3 Q = qc.quadratic_part();
  const Vec3 nrm = normalized(gradient(qc, pc));
  const Vec3 t1 = any_orthogonal(nrm);
  const Vec3 t2 = cross(nrm, t1);
  detail::SquareMatrix<2> m{{{dot(t1, Q * t1), dot(t1, Q * t2)}, {dot(t2, Q * t1), dot(t2, Q * t2)}}};
  detail::SquareMatrix<2> v{{{1.0, 0.0}, {0.0, 1.0}}};
  if (detail::jacobi_sweeps<2>(m, v, tol.iter_max) < 0) fail(ErrorCode::NoConvergence, "tangent form did not converge");
  int ip = m[0][0] >= m[1][1] ? 0 : 1;
  const double lp = m[ip][ip], ln = m[1 - ip][1 - ip];
  if (!(lp > 0.0 && ln < 0.0)) fail(ErrorCode::NotRuled, "tangent form is not indefinite at the point");
  const Vec3 vp = v[0][ip] * t1 + v[1][ip] * t2;
  const Vec3 vn = v[0][1 - ip] * t1 + v[1][1 - ip] * t2;

  Vec3 dirs[2] = {normalized(std::sqrt(-ln) * vp + std::sqrt(lp) * vn),
                  normalized(std::sqrt(-ln) * vp - std::sqrt(lp) * vn)};
  double label[2];
  for (int i = 0; i < 2; ++i) {
    Vec3& d = dirs[i];
    if (one_sheet) {
      if (d.z < 0.0) d = -d;
      const Vec3& s = cf.semi_axes;
      const Vec3 ps{pc.x / s.x, pc.y / s.y, pc.z / s.z};
      const Vec3 ds{d.x / s.x, d.y / s.y, d.z / s.z};
      label[i] = cross(ps, ds).z;
    } else {
      if (d.x < 0.0) d = -d;
      label[i] = d.x * d.y;
    }
  }
  const int a = label[0] > 0.0 ? 0 : 1;
  const RigidMotion back = cf.motion.inverse();
  return {Line3(p, back.apply_direction(dirs[a])), Line3(p, back.apply_direction(dirs[1 - a]))};
}

WrenConstruction wren_generator(double a, double b, double z0) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    fail(ErrorCode::NonPositiveParameter, "a and b must be positive");
  if (!std::isfinite(z0)) fail(ErrorCode::NonFinite, "z0 is not finite");
  const Vec3 center{0.0, 0.0, 0.0};
  const Vec3 g{a * z0 / b, 0.0, z0};
  // Line through G parallel to AN: (a^2 z0^2 / b^2 + y^2) / a^2 - z0^2 / b^2 = 1 gives y = a.
  const Vec3 h = g + Vec3{0.0, a, 0.0};
  const Vec3 n{0.0, a, 0.0};
  const Vec3 dir = z0 != 0.0 ? h - n : Vec3{a, 0.0, b};
  return {center, g, h, n, norm(h - g), Line3(n, dir)};
}

LinePairSection plane_section_line_pair(const CanonicalForm& cf, double alpha, const Tolerance& tol) {
  if (cf.cls != QuadricClass::HyperboloidOneSheet)
    fail(ErrorCode::NotRuled, "line-pair sections need a one-sheet hyperboloid, got " + std::string(to_string(cf.cls)));
  if (!std::isfinite(alpha)) fail(ErrorCode::NoRealBeta, "alpha is not finite");
  const double a = cf.semi_axes.x, b = cf.semi_axes.y;
  const double beta = std::sqrt(b * b + alpha * alpha * a * a);
  const Plane3 plane = transform(Plane3({-alpha, 1.0, 0.0}, beta), cf.motion.inverse());
  PlanarConic section = plane_section(cf.rebuild(), plane, tol);
  if (section.cls != ConicClass::TwoLines)
    fail(ErrorCode::DegenerateConic, "expected two lines, got " + std::string(to_string(section.cls)));
  return {beta, plane, section};
}

}  // namespace quadric
