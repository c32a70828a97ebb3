#include "quadric/archimedes.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace quadric {

namespace {

constexpr Vec3 kAxis{0.0, 0.0, 1.0};
constexpr int kEllipseSamples = 64;
constexpr int kRatioSamples = 16;
constexpr double kAngularEps = 1e-9;

// Parameters where p0 + t d meets the surface, ascending.
std::optional<std::pair<double, double>> line_hits(const Quadric& q, const Vec3& p0, const Vec3& d) {
  const double qa = dot(d, q.quadratic_part() * d);
  const double qb = dot(gradient(q, p0), d);
  const double qc = evaluate(q, p0);
  if (qa == 0.0) return std::nullopt;
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return std::nullopt;
  // Stable quadratic roots.
  const double s = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
  double t1 = s / qa, t2 = s != 0.0 ? qc / s : -t1;
  if (t1 > t2) std::swap(t1, t2);
  return std::make_pair(t1, t2);
}

double characteristic_length(const ConoidSpec& spec) {
  return spec.kind == ConoidKind::Ortoconoide ? spec.latus : spec.a;
}

// Line where pl meets the plane through the axis perpendicular to pl; empty
// when pl is perpendicular to the axis.
std::optional<Line3> axial_trace(const Plane3& pl) {
  const Vec3 n = pl.normal();
  const Vec3 m = cross(kAxis, n);
  if (norm(m) <= kAngularEps) return std::nullopt;
  return Line3(pl.offset() * n, cross(n, normalized(m)));
}

// Distance of the section's center from the trace plus the sine of the angle
// between the trace and the closest symmetry axis.
double axis_residual(const PlanarConic& c, const Line3& trace) {
  const Vec3 center = c.lift(c.shape.center);
  const double dist = trace.distance(center) / std::fmax(1.0, norm(center));
  double sine = norm(cross(normalized(c.lift_direction(c.shape.axis1)), trace.direction()));
  if (c.cls != ConicClass::Parabola)
    sine = std::fmin(sine, norm(cross(normalized(c.lift_direction(c.shape.axis2)), trace.direction())));
  return dist + sine;
}

bool is_curve(ConicClass c) {
  return c == ConicClass::Ellipse || c == ConicClass::Circle || c == ConicClass::Parabola ||
         c == ConicClass::Hyperbola;
}

void finish(SectionVerdict& v) {
  bool ok = v.class_ok && v.axis_location;
  for (const auto& flag : {v.similarity, v.latus, v.major_axis, v.minor_axis, v.ratio})
    if (flag) ok = ok && *flag;
  v.holds = ok;
}

// Major axis from the axial trace, minor axis from a second independent
// measure, and the ratio T(K Theta) : O(A Theta, Gamma Theta) at 16 points.
void check_oblique_ellipse(const Line3& trace, double minor_length, const Vec3& a_end,
                           const Vec3& g_end, SectionVerdict& v, const Tolerance& tol) {
  const PlanarConic& c = v.observed;
  const double major_length = norm(g_end - a_end);
  v.major_residual = std::fabs(2.0 * c.shape.semi1 - major_length) / major_length;
  v.major_axis = v.major_residual <= tol.residual_eps;
  v.minor_residual = std::fabs(2.0 * c.shape.semi2 - minor_length) / minor_length;
  v.minor_axis = v.minor_residual <= tol.residual_eps;

  const double expected = (minor_length * minor_length) / (major_length * major_length);
  const Vec3 u = normalized(g_end - a_end);
  double worst = 0.0;
  for (int k = 0; k < kRatioSamples; ++k) {
    const double th = (k + 0.5) * 2.0 * std::numbers::pi / kRatioSamples;
    const Vec2 local{c.shape.center.u + c.shape.semi1 * std::cos(th) * c.shape.axis1.u +
                         c.shape.semi2 * std::sin(th) * c.shape.axis2.u,
                     c.shape.center.v + c.shape.semi1 * std::cos(th) * c.shape.axis1.v +
                         c.shape.semi2 * std::sin(th) * c.shape.axis2.v};
    const Vec3 kp = c.lift(local);
    const double along = dot(kp - a_end, u);
    const Vec3 theta = a_end + along * u;
    const double square = dot(kp - theta, kp - theta);
    const double rect = along * (major_length - along);
    worst = std::fmax(worst, std::fabs(square / rect - expected) / expected);
  }
  v.ratio_residual = worst;
  v.ratio = worst <= tol.residual_eps;
  v.axis_residual = axis_residual(c, trace);
  v.axis_location = v.axis_residual <= tol.residual_eps;
}

// Intersection of p + s r with q + t w in 2D.
std::array<double, 2> meet2(std::array<double, 2> p, std::array<double, 2> r, std::array<double, 2> q,
                            std::array<double, 2> w) {
  const double den = r[0] * w[1] - r[1] * w[0];
  if (std::fabs(den) <= 1e-300) fail(ErrorCode::DegenerateApex, "construction lines are parallel");
  const double s = ((q[0] - p[0]) * w[1] - (q[1] - p[1]) * w[0]) / den;
  return {p[0] + s * r[0], p[1] + s * r[1]};
}

double max_ellipse_residual(const Quadric& cone, const Ellipse3& e) {
  double worst = 0.0;
  for (int k = 0; k < kEllipseSamples; ++k)
    worst = std::fmax(worst, relative_residual(cone, e.point(2.0 * std::numbers::pi * k / kEllipseSamples)));
  return worst;
}

Ellipse3 ordered_ellipse(const Vec3& center, const Vec3& d1, double s1, const Vec3& d2, double s2) {
  if (s1 >= s2) return {center, d1, d2, s1, s2};
  return {center, d2, d1, s2, s1};
}

}  // namespace

std::string_view to_string(ConoidKind k) {
  switch (k) {
    case ConoidKind::Ortoconoide: return "Ortoconoide";
    case ConoidKind::Ambliconoide: return "Ambliconoide";
    case ConoidKind::SpheroidProlate: return "SpheroidProlate";
    case ConoidKind::SpheroidOblate: return "SpheroidOblate";
  }
  return "?";
}

ConoidKind conoid_kind_from_string(std::string_view name) {
  for (ConoidKind k : {ConoidKind::Ortoconoide, ConoidKind::Ambliconoide, ConoidKind::SpheroidProlate,
                       ConoidKind::SpheroidOblate})
    if (to_string(k) == name) return k;
  fail(ErrorCode::InvalidArgument, "unknown conoid kind: " + std::string(name));
}

std::string_view to_string(Clause c) {
  switch (c) {
    case Clause::Axial: return "axial";
    case Clause::Parallel: return "parallel";
    case Clause::Vertex: return "vertex";
  }
  return "?";
}

Clause clause_from_string(std::string_view name) {
  for (Clause c : {Clause::Axial, Clause::Parallel, Clause::Vertex})
    if (to_string(c) == name) return c;
  fail(ErrorCode::InvalidArgument, "unknown clause: " + std::string(name));
}

void ConoidSpec::validate() const {
  auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
  if (kind == ConoidKind::Ortoconoide) {
    if (!positive(latus)) fail(ErrorCode::NonPositiveParameter, "latus must be positive");
    return;
  }
  if (!positive(a) || !positive(b)) fail(ErrorCode::NonPositiveParameter, "a and b must be positive");
  if ((kind == ConoidKind::SpheroidProlate || kind == ConoidKind::SpheroidOblate) && !(a > b))
    fail(ErrorCode::InvalidArgument, "spheroid needs a > b");
}

Quadric ConoidSpec::quadric() const {
  validate();
  const double ia = 1.0 / (a * a), ib = 1.0 / (b * b);
  switch (kind) {
    case ConoidKind::Ortoconoide: return Quadric(1, 1, 0, 0, 0, 0, 0, 0, -0.5 * latus, 0);
    case ConoidKind::Ambliconoide: return Quadric(-ia, -ia, ib, 0, 0, 0, 0, 0, 0, 1);
    case ConoidKind::SpheroidProlate: return Quadric(ib, ib, ia, 0, 0, 0, 0, 0, 0, 1);
    case ConoidKind::SpheroidOblate: return Quadric(ia, ia, ib, 0, 0, 0, 0, 0, 0, 1);
  }
  fail(ErrorCode::InvalidArgument, "unknown conoid kind");
}

PlanarConic ConoidSpec::meridian(const Tolerance& tol) const {
  return plane_section(quadric(), Plane3({1.0, 0.0, 0.0}, 0.0), tol);
}

SectionVerdict verify_cs11(const ConoidSpec& spec, const Plane3& pl, Clause clause, const Tolerance& tol) {
  tol.validate();
  const Quadric q = spec.quadric();
  const double len = characteristic_length(spec);
  const double nz = std::fabs(dot(pl.normal(), kAxis));
  const bool through_origin = std::fabs(pl.offset()) <= 1e-9 * len;

  switch (clause) {
    case Clause::Axial:
      if (nz > kAngularEps || !through_origin) fail(ErrorCode::ClauseMismatch, "plane does not contain the axis");
      break;
    case Clause::Parallel:
      if (nz > kAngularEps || through_origin)
        fail(ErrorCode::ClauseMismatch, "plane is not parallel to the axis off the axis");
      break;
    case Clause::Vertex:
      if (spec.kind != ConoidKind::Ambliconoide)
        fail(ErrorCode::ClauseMismatch, "vertex clause needs an ambliconoide");
      if (!through_origin || nz <= kAngularEps)
        fail(ErrorCode::ClauseMismatch, "plane is not an oblique plane through the envelope-cone vertex");
      break;
  }

  SectionVerdict v;
  switch (spec.kind) {
    case ConoidKind::Ortoconoide: v.predicted = ConicClass::Parabola; break;
    case ConoidKind::Ambliconoide: v.predicted = ConicClass::Hyperbola; break;
    default: v.predicted = ConicClass::Ellipse; break;
  }
  v.observed = plane_section(q, pl, tol);
  v.class_ok = v.observed.cls == v.predicted;

  if (v.class_ok) {
    const auto trace = axial_trace(pl);
    v.axis_residual = axis_residual(v.observed, *trace);
    v.axis_location = v.axis_residual <= tol.residual_eps;
    if (spec.kind == ConoidKind::Ortoconoide) {
      v.latus_residual = std::fabs(v.observed.shape.latus - spec.latus) / spec.latus;
      v.latus = v.latus_residual <= tol.residual_eps;
    } else {
      const SimilarityInvariant mer = similarity_invariant(spec.meridian(tol));
      const SimilarityInvariant obs = similarity_invariant(v.observed);
      v.similarity_residual = std::fabs(obs.ratio - mer.ratio);
      const bool similar = obs.family == mer.family && v.similarity_residual <= tol.residual_eps;
      v.similarity = clause == Clause::Vertex ? !similar : similar;
    }
  }
  finish(v);
  return v;
}

SectionVerdict verify_cs12(const ConoidSpec& spec, const Plane3& pl, const Tolerance& tol) {
  tol.validate();
  if (spec.kind != ConoidKind::Ortoconoide) fail(ErrorCode::InvalidArgument, "oblique sections need an ortoconoide");
  const Quadric q = spec.quadric();
  const auto trace = axial_trace(pl);
  if (!trace || std::fabs(dot(pl.normal(), kAxis)) <= kAngularEps)
    fail(ErrorCode::NotOblique, "plane is perpendicular or parallel to the axis");

  SectionVerdict v;
  v.predicted = ConicClass::Ellipse;
  v.observed = plane_section(q, pl, tol);
  v.class_ok = v.observed.cls == ConicClass::Ellipse;
  if (!v.class_ok) fail(ErrorCode::OpenSection, "section is " + std::string(to_string(v.observed.cls)));
  const auto hits = line_hits(q, trace->point(), trace->direction());
  if (!hits) fail(ErrorCode::OpenSection, "axial trace misses the surface");
  const Vec3 a_end = trace->at(hits->first), g_end = trace->at(hits->second);

  // Distance between the axis-parallel lines through the ends of the major axis.
  const Vec3 chord = g_end - a_end;
  const double minor_length = std::hypot(chord.x, chord.y);
  check_oblique_ellipse(*trace, minor_length, a_end, g_end, v, tol);
  finish(v);
  return v;
}

SectionVerdict verify_cs13(const ConoidSpec& spec, const Plane3& pl, const Tolerance& tol) {
  tol.validate();
  if (spec.kind != ConoidKind::Ambliconoide) fail(ErrorCode::InvalidArgument, "this proposition needs an ambliconoide");
  spec.validate();
  const Quadric q = spec.quadric();
  const double nz = std::fabs(dot(pl.normal(), kAxis));
  const double sin_phi = spec.a / std::hypot(spec.a, spec.b);
  if (nz <= sin_phi * (1.0 + 1e-12)) fail(ErrorCode::GeneratorMiss, "plane is parallel to a generator of the envelope cone");

  SectionVerdict v;
  v.observed = plane_section(q, pl, tol);
  const auto trace = axial_trace(pl);
  if (!trace) {
    v.circle_flag = true;
    v.predicted = ConicClass::Circle;
    v.class_ok = v.observed.cls == ConicClass::Circle;
    if (!v.class_ok && !is_curve(v.observed.cls))
      fail(ErrorCode::OpenSection, "section is " + std::string(to_string(v.observed.cls)));
    v.axis_location = true;
    finish(v);
    return v;
  }
  v.predicted = ConicClass::Ellipse;
  v.class_ok = v.observed.cls == ConicClass::Ellipse;
  if (!v.class_ok) fail(ErrorCode::OpenSection, "section is " + std::string(to_string(v.observed.cls)));
  const auto hits = line_hits(q, trace->point(), trace->direction());
  if (!hits) fail(ErrorCode::OpenSection, "axial trace misses the surface");
  const Vec3 a_end = trace->at(hits->first), g_end = trace->at(hits->second);

  // Chord through the middle of the major axis, perpendicular to the axial plane.
  const Vec3 mid = 0.5 * (a_end + g_end);
  const Vec3 across = normalized(cross(pl.normal(), trace->direction()));
  const auto cross_hits = line_hits(q, mid, across);
  if (!cross_hits) fail(ErrorCode::OpenSection, "minor chord misses the surface");
  const double minor_length = cross_hits->second - cross_hits->first;
  check_oblique_ellipse(*trace, minor_length, a_end, g_end, v, tol);
  finish(v);
  return v;
}

ParabolaSegment orthotome_segment(double latus, double y1, double y2) {
  if (!(latus > 0.0) || !std::isfinite(latus)) fail(ErrorCode::InvalidArgument, "latus must be positive");
  if (!(y1 != y2) || !std::isfinite(y1) || !std::isfinite(y2))
    fail(ErrorCode::InvalidArgument, "chord ends must differ");
  if (y2 < y1) std::swap(y1, y2);
  const double x1 = y1 * y1 / latus, x2 = y2 * y2 / latus;
  const double ym = 0.5 * (y1 + y2);
  const double diameter = 0.5 * (x1 + x2) - ym * ym / latus;
  const double dx = x2 - x1, dy = y2 - y1;
  // Angle between the diameter (direction +x) and the chord oriented upward.
  return {std::hypot(dx, dy), diameter, std::atan2(dy, dx)};
}

bool parabola_segments_similar(const ParabolaSegment& s1, const ParabolaSegment& s2, const Tolerance& tol) {
  tol.validate();
  for (const ParabolaSegment& s : {s1, s2}) {
    if (!(s.base > 0.0) || !(s.diameter > 0.0) || !std::isfinite(s.base) || !std::isfinite(s.diameter))
      fail(ErrorCode::InvalidArgument, "segment lengths must be positive");
    if (!(s.angle > 0.0 && s.angle < std::numbers::pi)) fail(ErrorCode::InvalidArgument, "angle must lie in (0, pi)");
  }
  const double r1 = s1.base / s1.diameter, r2 = s2.base / s2.diameter;
  return std::fabs(r1 - r2) <= tol.residual_eps * std::fmax(r1, r2) &&
         std::fabs(s1.angle - s2.angle) <= tol.residual_eps;
}

Quadric cone_from_vertex_and_ellipse(const Vec3& vertex, const Ellipse3& base) {
  base.validate();
  const Vec3 np = normalized(base.normal());
  const double delta = dot(np, base.center) - dot(np, vertex);
  if (std::fabs(delta) <= 1e-12 * std::fmax(1.0, norm(vertex - base.center)))
    fail(ErrorCode::DegenerateApex, "vertex lies in the plane of the ellipse");
  // A point x is on the cone iff the ray from the vertex through x meets the
  // plane inside-out on the ellipse: w^T (G^T A G - n n^T) w = 0, w = x - O.
  const Mat3 g = outer(vertex - base.center, np) + delta * Mat3::identity();
  const Mat3 a = (1.0 / (base.semi_major * base.semi_major)) * outer(base.major_dir, base.major_dir) +
                 (1.0 / (base.semi_minor * base.semi_minor)) * outer(base.minor_dir, base.minor_dir);
  const Mat3 m = g.transposed() * a * g - outer(np, np);
  const Vec3 mo = m * vertex;
  return Quadric::from_parts(m, -mo, -dot(vertex, mo)).normalized();
}

ConeConstruction cone_through_ellipse_perpendicular(const Ellipse3& e, double h, const Tolerance& tol) {
  tol.validate();
  e.validate();
  if (!std::isfinite(h) || !(h > 0.0)) fail(ErrorCode::NoValidChord, "apex height must be positive");
  const double big = e.semi_major, small = e.semi_minor;
  const Vec3 n = normalized(e.normal());
  const Vec3 apex = e.center + h * n;

  // In the plane OBB' with C at the origin, B = (b, 0), O = (0, h), E = (0, t):
  // BE.ED / EO^2 = (b^2 + t^2) / (h^2 - t^2) must equal a^2 / h^2.
  const double t = h * std::sqrt((big * big - small * small) / (h * h + big * big));
  const double dx = small * (t - h) / (h + t), dz = 2.0 * h * t / (h + t);
  const Vec3 b_pt = e.center + small * e.minor_dir;
  const Vec3 d_pt = e.center + dx * e.minor_dir + dz * n;

  ConeConstruction out{Cone3{apex, Quadric(1, 0, 0, 0, 0, 0, 0, 0, 0, 0), std::nullopt},
                       Ellipse3{}, b_pt, d_pt, false, true, 0.0};
  out.circular_input = big - small <= 1e-12 * big;
  const double radius = 0.5 * norm(d_pt - b_pt);
  out.base = Ellipse3{0.5 * (b_pt + d_pt), normalized(d_pt - b_pt), e.major_dir, radius, radius};
  out.cone.surface = cone_from_vertex_and_ellipse(apex, out.base);
  if (out.circular_input) out.cone.right = RightConeData{-n, std::atan(big / h)};
  out.max_residual = max_ellipse_residual(out.cone.surface, e);
  return out;
}

ConeConstruction cone_through_ellipse_oblique(const Ellipse3& e, const Vec3& apex, const Tolerance& tol) {
  tol.validate();
  e.validate();
  if (!is_finite(apex)) fail(ErrorCode::NonFinite, "apex is not finite");
  const Vec3 n = normalized(e.normal());
  const Vec3 w = apex - e.center;
  const double scale = std::fmax(e.semi_major, norm(w));
  if (std::fabs(dot(w, n)) <= 1e-9 * scale) fail(ErrorCode::DegenerateApex, "apex lies in the plane of the ellipse");
  if (std::fabs(dot(w, e.minor_dir)) > 1e-9 * scale)
    fail(ErrorCode::InvalidArgument, "apex is off the plane through the major axis");

  // Work in the axial plane: first coordinate along the major axis, second along n.
  using P2 = std::array<double, 2>;
  const double big = e.semi_major, small = e.semi_minor;
  const P2 o{dot(w, e.major_dir), dot(w, n)};
  const P2 a{big, 0.0}, a2{-big, 0.0};
  const double oa = std::hypot(a[0] - o[0], a[1] - o[1]);
  const double oa2 = std::hypot(a2[0] - o[0], a2[1] - o[1]);
  const P2 d{o[0] + oa / oa2 * (a2[0] - o[0]), o[1] + oa / oa2 * (a2[1] - o[1])};
  const P2 ad{d[0] - a[0], d[1] - a[1]};
  const P2 f = meet2({0.0, 0.0}, ad, o, {a[0] - o[0], a[1] - o[1]});
  const P2 g = meet2({0.0, 0.0}, ad, o, {d[0] - o[0], d[1] - o[1]});
  const double rect = std::hypot(f[0], f[1]) * std::hypot(g[0], g[1]);

  auto lift = [&](const P2& p) { return e.center + p[0] * e.major_dir + p[1] * n; };
  const Vec3 a_pt = lift(a), d_pt = lift(d);
  const double ad_len = std::hypot(ad[0], ad[1]);

  ConeConstruction out{Cone3{apex, Quadric(1, 0, 0, 0, 0, 0, 0, 0, 0, 0), std::nullopt},
                       Ellipse3{}, a_pt, d_pt, false, false, 0.0};
  out.circle_branch = std::fabs(small * small - rect) <= tol.residual_eps * small * small;
  const double conj = out.circle_branch ? ad_len : ad_len * small / std::sqrt(rect);
  const Vec3 dir = normalized(d_pt - a_pt);
  out.base = ordered_ellipse(0.5 * (a_pt + d_pt), dir, 0.5 * ad_len, e.minor_dir, 0.5 * conj);
  out.cone.surface = cone_from_vertex_and_ellipse(apex, out.base);
  out.max_residual = max_ellipse_residual(out.cone.surface, e);
  return out;
}

ConeCircularReport cone_circular_sections_on_ellipsoid(const CanonicalForm& cf, std::optional<Plane3> base_plane,
                                                       const Tolerance& tol) {
  tol.validate();
  if (cf.cls != QuadricClass::Ellipsoid) fail(ErrorCode::NotEllipsoid, "surface is a " + std::string(to_string(cf.cls)));
  const Vec3& s = cf.semi_axes;
  auto close = [](double x, double y) { return std::fabs(x - y) <= 1e-9 * std::fmax(x, y); };
  if (close(s.x, s.y) || close(s.y, s.z))
    fail(ErrorCode::RevolutionSpecial, "ellipsoid of revolution: circular sections are perpendicular to the axis");

  const Quadric q = cf.rebuild();
  const CircularFamilies fams = circular_section_planes(q, tol);
  const Vec3 nu = fams.families[0].normal;
  const Line3& centers = fams.families[0].centers;
  const auto ends = line_hits(q, centers.point(), centers.direction());
  if (!ends) fail(ErrorCode::DegenerateInput, "centers diameter misses the surface");
  Vec3 vertex = centers.at(ends->second);
  if (dot(nu, vertex - fams.center) < 0.0) vertex = centers.at(ends->first);
  const double support = dot(nu, vertex - fams.center);

  const Plane3 base = base_plane.value_or(Plane3::through(fams.center, fams.families[1].normal));
  const double pv = base.signed_distance(vertex);
  if (std::fabs(pv) <= 1e-9 * std::fmax(1.0, norm(vertex))) fail(ErrorCode::DegenerateApex, "base plane passes through the vertex");

  // K = E - pi(x) sigma(x) / pi(V): agrees with E on the base plane and has a
  // double point at V, sigma being the tangent-plane function at V.
  const Vec3 gv = gradient(q, vertex);
  const Vec3 bn = base.normal();
  const double bd = base.offset(), g_dot_v = dot(gv, vertex);
  const Mat3 qk = q.quadratic_part() - (0.5 / pv) * (outer(bn, gv) + outer(gv, bn));
  const Vec3 lk = q.linear_part() + (0.5 / pv) * (g_dot_v * bn + bd * gv);
  const double kk = q.k() + bd * g_dot_v / pv;

  ConeCircularReport rep{vertex, base, Quadric::from_parts(qk, lk, kk).normalized(), nu, {}, true};
  for (double f : {0.2, 0.5, 0.8}) {
    const Plane3 pl(nu, dot(nu, fams.center) + f * support);
    ConeSectionEntry entry{f, pl, plane_section(rep.cone, pl, tol), 0.0, false};
    if (entry.conic.cls == ConicClass::Ellipse || entry.conic.cls == ConicClass::Circle) {
      entry.ratio = similarity_invariant(entry.conic).ratio;
      entry.circle = std::fabs(1.0 - entry.ratio) <= 1e-8;
    }
    rep.holds = rep.holds && entry.circle;
    rep.entries.push_back(entry);
  }
  return rep;
}

}  // namespace quadric
