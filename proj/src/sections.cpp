#include "quadric/sections.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "quadric/canonical.hpp"
#include "quadric/spectral.hpp"

namespace quadric {

namespace {

constexpr double kCircleEps = 1e-9;

struct Eig2 {
  double mu1, mu2;  // mu1 >= mu2
  Vec2 v1, v2;
};

Eig2 eigen2(double a, double b, double c) {
  detail::SquareMatrix<2> m{{{a, b}, {b, c}}};
  detail::SquareMatrix<2> v{};
  detail::jacobi_sweeps<2>(m, v, 64);
  Eig2 r{m[0][0], m[1][1], {v[0][0], v[1][0]}, {v[0][1], v[1][1]}};
  if (r.mu1 < r.mu2) {
    std::swap(r.mu1, r.mu2);
    std::swap(r.v1, r.v2);
  }
  return r;
}

double dot2(const Vec2& a, const Vec2& b) { return a.u * b.u + a.v * b.v; }
Vec2 scale2(const Vec2& a, double s) { return {a.u * s, a.v * s}; }
Vec2 add2(const Vec2& a, const Vec2& b) { return {a.u + b.u, a.v + b.v}; }
Vec2 unit2(const Vec2& a) {
  const double n = std::hypot(a.u, a.v);
  return {a.u / n, a.v / n};
}

bool is_degenerate(ConicClass c) {
  return c != ConicClass::Ellipse && c != ConicClass::Circle && c != ConicClass::Parabola &&
         c != ConicClass::Hyperbola;
}

double conic_matrix_norm(double A, double B, double C, double D, double E, double F) {
  Mat3 m;
  m.m = {{{A, B, D}, {B, C, E}, {D, E, F}}};
  const SpectralData sp = eigen_symmetric3(m);
  return max_abs(sp.eigenvalues);
}

}  // namespace

std::string_view to_string(ConicClass c) {
  switch (c) {
    case ConicClass::Ellipse: return "Ellipse";
    case ConicClass::Circle: return "Circle";
    case ConicClass::Parabola: return "Parabola";
    case ConicClass::Hyperbola: return "Hyperbola";
    case ConicClass::TwoLines: return "TwoLines";
    case ConicClass::ParallelLines: return "ParallelLines";
    case ConicClass::OneLine: return "OneLine";
    case ConicClass::Point: return "Point";
    case ConicClass::Empty: return "Empty";
    case ConicClass::WholePlane: return "WholePlane";
  }
  return "Unknown";
}

PlanarConic make_planar_conic(const Vec3& origin, const Vec3& e1, const Vec3& e2, double A,
                              double B, double C, double D, double E, double F,
                              const Tolerance& tol) {
  tol.validate();
  PlanarConic out{origin, e1, e2, A, B, C, D, E, F, ConicClass::Empty, {}};
  const double eps = tol.rank_eps;
  const double s = conic_matrix_norm(A, B, C, D, E, F);
  if (s == 0.0) {
    out.cls = ConicClass::WholePlane;
    return out;
  }
  const double a = A / s, b = B / s, c = C / s, d = D / s, e = E / s, f = F / s;
  const Eig2 eg = eigen2(a, b, c);
  const double mu_max = std::max(std::fabs(eg.mu1), std::fabs(eg.mu2));
  ConicShape& sh = out.shape;

  if (mu_max <= eps) {
    const double g = std::hypot(d, e);
    if (g > eps) {
      // 2 d u + 2 e v + f = 0
      const Vec2 n{d / g, e / g};
      out.cls = ConicClass::OneLine;
      sh.center = scale2(n, -f / (2.0 * g));
      sh.axis1 = n;
      sh.axis2 = {-n.v, n.u};
    } else {
      out.cls = std::fabs(f) <= eps ? ConicClass::WholePlane : ConicClass::Empty;
    }
    return out;
  }

  const bool zero1 = std::fabs(eg.mu1) <= eps * mu_max;
  const bool zero2 = std::fabs(eg.mu2) <= eps * mu_max;
  const Vec2 de{d, e};

  if (!zero1 && !zero2) {
    const double l1 = dot2(eg.v1, de), l2 = dot2(eg.v2, de);
    sh.center = add2(scale2(eg.v1, -l1 / eg.mu1), scale2(eg.v2, -l2 / eg.mu2));
    const double fc = f - l1 * l1 / eg.mu1 - l2 * l2 / eg.mu2;
    if (eg.mu1 * eg.mu2 > 0.0) {
      if (std::fabs(fc) <= eps) {
        out.cls = ConicClass::Point;
      } else if (fc * eg.mu1 < 0.0) {
        const double r1 = std::sqrt(-fc / eg.mu1), r2 = std::sqrt(-fc / eg.mu2);
        const double ratio = std::min(std::fabs(eg.mu1), std::fabs(eg.mu2)) /
                             std::max(std::fabs(eg.mu1), std::fabs(eg.mu2));
        out.cls = ratio >= 1.0 - kCircleEps ? ConicClass::Circle : ConicClass::Ellipse;
        if (r1 >= r2) {
          sh.axis1 = eg.v1, sh.axis2 = eg.v2, sh.semi1 = r1, sh.semi2 = r2;
        } else {
          sh.axis1 = eg.v2, sh.axis2 = eg.v1, sh.semi1 = r2, sh.semi2 = r1;
        }
      } else {
        out.cls = ConicClass::Empty;
      }
    } else if (std::fabs(fc) <= eps) {
      out.cls = ConicClass::TwoLines;
      const double s1 = std::sqrt(std::fabs(eg.mu2)), s2 = std::sqrt(std::fabs(eg.mu1));
      sh.axis1 = unit2(add2(scale2(eg.v1, s1), scale2(eg.v2, s2)));
      sh.axis2 = unit2(add2(scale2(eg.v1, s1), scale2(eg.v2, -s2)));
    } else {
      out.cls = ConicClass::Hyperbola;
      const bool first_transverse = eg.mu1 * fc < 0.0;
      const double mt = first_transverse ? eg.mu1 : eg.mu2;
      const double mc = first_transverse ? eg.mu2 : eg.mu1;
      sh.axis1 = first_transverse ? eg.v1 : eg.v2;
      sh.axis2 = first_transverse ? eg.v2 : eg.v1;
      sh.semi1 = std::sqrt(-fc / mt);
      sh.semi2 = std::sqrt(fc / mc);
    }
    return out;
  }

  // Rank one.
  const double mu = zero1 ? eg.mu2 : eg.mu1;
  const Vec2 vi = zero1 ? eg.v2 : eg.v1;
  const Vec2 vj = zero1 ? eg.v1 : eg.v2;
  const double lv = dot2(vi, de), lw = dot2(vj, de);
  const double s0 = -lv / mu;
  const double g = f - lv * lv / mu;
  if (std::fabs(lw) > eps) {
    out.cls = ConicClass::Parabola;
    const double t0 = -g / (2.0 * lw);
    sh.center = add2(scale2(vi, s0), scale2(vj, t0));
    sh.axis1 = scale2(vj, -lw / mu > 0.0 ? 1.0 : -1.0);
    sh.axis2 = vi;
    sh.latus = std::fabs(2.0 * lw / mu);
    return out;
  }
  sh.center = scale2(vi, s0);
  sh.axis1 = vi;
  sh.axis2 = vj;
  const double h = -g / mu;
  if (std::fabs(g) <= eps) {
    out.cls = ConicClass::OneLine;
  } else if (h > 0.0) {
    out.cls = ConicClass::ParallelLines;
    sh.semi1 = std::sqrt(h);
  } else {
    out.cls = ConicClass::Empty;
  }
  return out;
}

PlaneFrame plane_frame(const Plane3& pl) {
  const Vec3& n = pl.normal();
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (std::fabs(n[i]) < std::fabs(n[best])) best = i;
  Vec3 axis{};
  axis[best] = 1.0;
  const Vec3 e1 = normalized(axis - n[best] * n);
  return {pl.offset() * n, e1, cross(n, e1)};
}

PlanarConic plane_section(const Quadric& q, const Plane3& pl, const Tolerance& tol) {
  const PlaneFrame fr = plane_frame(pl);
  const Mat3 qq = q.quadratic_part();
  const Vec3 g = qq * fr.origin + q.linear_part();
  const Vec3 qe1 = qq * fr.e1;
  const Vec3 qe2 = qq * fr.e2;
  return make_planar_conic(fr.origin, fr.e1, fr.e2, dot(fr.e1, qe1), dot(fr.e1, qe2),
                           dot(fr.e2, qe2), dot(fr.e1, g), dot(fr.e2, g), evaluate(q, fr.origin),
                           tol);
}

std::vector<Vec3> sample_conic(const PlanarConic& c, int n) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "need at least two samples");
  const ConicShape& sh = c.shape;
  std::vector<Vec3> out;
  out.reserve(static_cast<std::size_t>(n));
  const auto at = [&](const Vec2& base, const Vec2& dir1, double s1, const Vec2& dir2, double s2) {
    return c.lift(add2(base, add2(scale2(dir1, s1), scale2(dir2, s2))));
  };
  const auto param = [n](int i, double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  switch (c.cls) {
    case ConicClass::Ellipse:
    case ConicClass::Circle:
      for (int i = 0; i < n; ++i) {
        const double th = 2.0 * std::numbers::pi * i / n;
        out.push_back(at(sh.center, sh.axis1, sh.semi1 * std::cos(th), sh.axis2, sh.semi2 * std::sin(th)));
      }
      break;
    case ConicClass::Hyperbola:
      for (int i = 0; i < n; ++i) {
        const double side = (i % 2 == 0) ? 1.0 : -1.0;
        const double u = param(i, -1.5, 1.5);
        out.push_back(at(sh.center, sh.axis1, side * sh.semi1 * std::cosh(u), sh.axis2, sh.semi2 * std::sinh(u)));
      }
      break;
    case ConicClass::Parabola:
      for (int i = 0; i < n; ++i) {
        const double s = param(i, -sh.latus, sh.latus);
        out.push_back(at(sh.center, sh.axis1, s * s / sh.latus, sh.axis2, s));
      }
      break;
    case ConicClass::TwoLines:
      for (int i = 0; i < n; ++i)
        out.push_back(at(sh.center, i % 2 == 0 ? sh.axis1 : sh.axis2, param(i, -1.0, 1.0), sh.axis2, 0.0));
      break;
    case ConicClass::ParallelLines:
      for (int i = 0; i < n; ++i)
        out.push_back(at(sh.center, sh.axis1, (i % 2 == 0 ? 1.0 : -1.0) * sh.semi1, sh.axis2, param(i, -1.0, 1.0)));
      break;
    case ConicClass::OneLine:
      for (int i = 0; i < n; ++i) out.push_back(at(sh.center, sh.axis2, param(i, -1.0, 1.0), sh.axis1, 0.0));
      break;
    case ConicClass::Point:
      for (int i = 0; i < n; ++i) out.push_back(c.lift(sh.center));
      break;
    case ConicClass::Empty:
    case ConicClass::WholePlane:
      fail(ErrorCode::NoParametrization, std::string("cannot sample a conic of class ") +
                                             std::string(to_string(c.cls)));
  }
  return out;
}

SimilarityInvariant similarity_invariant(const PlanarConic& c) {
  if (is_degenerate(c.cls))
    fail(ErrorCode::DegenerateConic, std::string("conic is degenerate: ") + std::string(to_string(c.cls)));
  if (c.cls == ConicClass::Parabola) return {ConicClass::Parabola, 0.0};
  const double mean = 0.5 * (c.A + c.C);
  const double rad = std::hypot(0.5 * (c.A - c.C), c.B);
  const double big = std::fabs(mean) + rad;
  const double small = std::fabs(c.A * c.C - c.B * c.B) / big;
  const double ratio = small / big;
  if (c.cls == ConicClass::Hyperbola) return {ConicClass::Hyperbola, ratio};
  return {ConicClass::Ellipse, ratio};
}

bool conic_similar(const PlanarConic& c1, const PlanarConic& c2, const Tolerance& tol) {
  const SimilarityInvariant s1 = similarity_invariant(c1);
  const SimilarityInvariant s2 = similarity_invariant(c2);
  return s1.family == s2.family && std::fabs(s1.ratio - s2.ratio) <= tol.residual_eps;
}

ParallelSectionsReport parallel_sections_report(const Quadric& q, const Vec3& direction,
                                                std::vector<double> offsets,
                                                const Tolerance& tol) {
  ParallelSectionsReport rep;
  rep.direction = normalized(direction);
  std::sort(offsets.begin(), offsets.end());
  for (double off : offsets) {
    SectionEntry entry;
    entry.offset = off;
    entry.conic = plane_section(q, Plane3(rep.direction, off), tol);
    entry.degenerate = is_degenerate(entry.conic.cls);
    if (entry.degenerate) {
      rep.degenerate_offsets.push_back(off);
    } else {
      entry.invariant = similarity_invariant(entry.conic);
    }
    rep.sections.push_back(entry);
  }

  const SectionEntry* first = nullptr;
  int good = 0;
  for (const auto& e : rep.sections) {
    if (e.degenerate) continue;
    ++good;
    if (!first) first = &e;
  }
  if (good < 2) fail(ErrorCode::InsufficientSections, "fewer than two non-degenerate sections");

  rep.common = *first->invariant;
  rep.all_similar = true;
  for (const auto& e : rep.sections) {
    if (e.degenerate) continue;
    rep.all_similar = rep.all_similar && conic_similar(first->conic, e.conic, tol);
    rep.max_quadratic_deviation =
        std::max({rep.max_quadratic_deviation, std::fabs(e.conic.A - first->conic.A),
                  std::fabs(e.conic.B - first->conic.B), std::fabs(e.conic.C - first->conic.C)});
  }
  return rep;
}

CircularFamilies circular_section_planes(const Quadric& q, const Tolerance& tol) {
  const CanonicalForm cf = reduce(q, tol);
  switch (cf.cls) {
    case QuadricClass::Ellipsoid:
    case QuadricClass::HyperboloidOneSheet:
    case QuadricClass::HyperboloidTwoSheets:
    case QuadricClass::Cone:
      break;
    default:
      fail(ErrorCode::NotCentral, std::string("no circular sections computed for ") +
                                      std::string(to_string(cf.cls)));
  }
  const Quadric qn = q.normalized();
  const SpectralData sp = eigen_symmetric3(qn.quadratic_part(), tol);
  const double l1 = sp.eigenvalues.x, l2 = sp.eigenvalues.y, l3 = sp.eigenvalues.z;
  const double scale = max_abs(sp.eigenvalues);
  const Vec3 e1 = sp.frame.column(0), e3 = sp.frame.column(2);

  CircularFamilies out;
  out.center = cf.origin();

  const auto centers_direction = [&](const Vec3& n) {
    Vec3 d{};
    for (int i = 0; i < 3; ++i) {
      const Vec3 ei = sp.frame.column(i);
      d += (dot(ei, n) / sp.eigenvalues[i]) * ei;
    }
    return d;
  };
  const auto canonical_sign = [](Vec3 n) {
    for (int i = 0; i < 3; ++i) {
      if (std::fabs(n[i]) > 1e-12) {
        if (n[i] < 0.0) n = -n;
        break;
      }
    }
    return n;
  };
  const auto add_family = [&](const Vec3& normal) {
    const Vec3 n = canonical_sign(normalized(normal));
    out.families.push_back({n, Line3(out.center, centers_direction(n))});
  };

  const bool top_pair = (l1 - l2) <= kCircleEps * scale;
  const bool bottom_pair = (l2 - l3) <= kCircleEps * scale;
  if (top_pair && bottom_pair) {
    out.kind = CircularKind::Sphere;
    return out;
  }
  if (top_pair || bottom_pair) {
    out.kind = CircularKind::Revolution;
    add_family(top_pair ? e3 : e1);
    return out;
  }
  out.kind = CircularKind::TwoFamilies;
  const double s13 = std::sqrt(l1 - l2), s33 = std::sqrt(l2 - l3);
  add_family(s13 * e1 + s33 * e3);
  add_family(s13 * e1 - s33 * e3);
  return out;
}

}  // namespace quadric
