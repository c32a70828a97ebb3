#include "quadric/canonical.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace quadric {

namespace {

constexpr std::array<std::pair<QuadricClass, std::string_view>, 17> kClassNames{{
    {QuadricClass::Ellipsoid, "Ellipsoid"},
    {QuadricClass::ImaginaryEllipsoid, "ImaginaryEllipsoid"},
    {QuadricClass::HyperboloidOneSheet, "HyperboloidOneSheet"},
    {QuadricClass::HyperboloidTwoSheets, "HyperboloidTwoSheets"},
    {QuadricClass::EllipticParaboloid, "EllipticParaboloid"},
    {QuadricClass::HyperbolicParaboloid, "HyperbolicParaboloid"},
    {QuadricClass::Cone, "Cone"},
    {QuadricClass::ImaginaryCone, "ImaginaryCone"},
    {QuadricClass::EllipticCylinder, "EllipticCylinder"},
    {QuadricClass::ImaginaryEllipticCylinder, "ImaginaryEllipticCylinder"},
    {QuadricClass::HyperbolicCylinder, "HyperbolicCylinder"},
    {QuadricClass::ParabolicCylinder, "ParabolicCylinder"},
    {QuadricClass::IntersectingPlanes, "IntersectingPlanes"},
    {QuadricClass::ImaginaryIntersectingPlanes, "ImaginaryIntersectingPlanes"},
    {QuadricClass::ParallelPlanes, "ParallelPlanes"},
    {QuadricClass::ImaginaryParallelPlanes, "ImaginaryParallelPlanes"},
    {QuadricClass::CoincidentPlanes, "CoincidentPlanes"},
}};

struct Axis {
  Vec3 dir;
  bool free_sign;  // negating the axis leaves the canonical equation unchanged
};

// Motion original -> canonical for canonical axes given in original
// coordinates and the canonical origin x0. Flips a free axis if needed so the
// rotation is proper.
RigidMotion make_motion(std::array<Axis, 3> axes, const Vec3& x0) {
  Mat3 cols = Mat3::from_columns(axes[0].dir, axes[1].dir, axes[2].dir);
  if (cols.determinant() < 0.0) {
    for (auto& ax : axes) {
      if (ax.free_sign) {
        ax.dir = -ax.dir;
        break;
      }
    }
    cols = Mat3::from_columns(axes[0].dir, axes[1].dir, axes[2].dir);
  }
  const Mat3 rt = cols.transposed();
  return RigidMotion(rt, -(rt * x0));
}

struct Eig {
  double value;
  Vec3 vec;
};

}  // namespace

std::string_view to_string(QuadricClass c) {
  for (const auto& [cls, name] : kClassNames)
    if (cls == c) return name;
  return "Unknown";
}

QuadricClass quadric_class_from_string(std::string_view name) {
  for (const auto& [cls, n] : kClassNames)
    if (n == name) return cls;
  fail(ErrorCode::InvalidArgument, "unknown quadric class '" + std::string(name) + "'");
}

Quadric CanonicalForm::canonical_quadric() const {
  const auto inv2 = [](double s) { return 1.0 / (s * s); };
  const double a = semi_axes.x, b = semi_axes.y, c = semi_axes.z;
  const double p1 = parabolic[0], p2 = parabolic[1];
  switch (cls) {
    case QuadricClass::Ellipsoid: return {inv2(a), inv2(b), inv2(c), 0, 0, 0, 0, 0, 0, 1.0};
    case QuadricClass::ImaginaryEllipsoid: return {inv2(a), inv2(b), inv2(c), 0, 0, 0, 0, 0, 0, -1.0};
    case QuadricClass::HyperboloidOneSheet: return {inv2(a), inv2(b), -inv2(c), 0, 0, 0, 0, 0, 0, 1.0};
    case QuadricClass::HyperboloidTwoSheets: return {-inv2(a), -inv2(b), inv2(c), 0, 0, 0, 0, 0, 0, 1.0};
    case QuadricClass::Cone: return {inv2(a), inv2(b), -1.0, 0, 0, 0, 0, 0, 0, 0.0};
    case QuadricClass::ImaginaryCone: return {inv2(a), inv2(b), 1.0, 0, 0, 0, 0, 0, 0, 0.0};
    case QuadricClass::EllipticParaboloid: return {p1, p2, 0, 0, 0, 0, 0, 0, -0.5, 0.0};
    case QuadricClass::HyperbolicParaboloid: return {p1, -p2, 0, 0, 0, 0, 0, 0, -0.5, 0.0};
    case QuadricClass::EllipticCylinder: return {inv2(a), inv2(b), 0, 0, 0, 0, 0, 0, 0, 1.0};
    case QuadricClass::ImaginaryEllipticCylinder: return {inv2(a), inv2(b), 0, 0, 0, 0, 0, 0, 0, -1.0};
    case QuadricClass::HyperbolicCylinder: return {inv2(a), -inv2(b), 0, 0, 0, 0, 0, 0, 0, 1.0};
    case QuadricClass::ParabolicCylinder: return {p1, 0, 0, 0, 0, 0, 0, 0, -0.5, 0.0};
    case QuadricClass::IntersectingPlanes: return {inv2(a), -1.0, 0, 0, 0, 0, 0, 0, 0, 0.0};
    case QuadricClass::ImaginaryIntersectingPlanes: return {inv2(a), 1.0, 0, 0, 0, 0, 0, 0, 0, 0.0};
    case QuadricClass::ParallelPlanes:
      if (linear_only) return {0, 0, 0, 0, 0, 0, 0.5, 0, 0, 0.0};
      return {1.0, 0, 0, 0, 0, 0, 0, 0, 0, a * a};
    case QuadricClass::ImaginaryParallelPlanes: return {1.0, 0, 0, 0, 0, 0, 0, 0, 0, -a * a};
    case QuadricClass::CoincidentPlanes: return {1.0, 0, 0, 0, 0, 0, 0, 0, 0, 0.0};
  }
  fail(ErrorCode::InvalidArgument, "unknown quadric class");
}

Quadric CanonicalForm::rebuild() const { return transform(canonical_quadric(), motion); }

CanonicalForm reduce(const Quadric& input, const Tolerance& tol) {
  tol.validate();
  const double eps = tol.rank_eps;
  const Quadric q = input.scaled(1.0 / coefficient_matrix_norm(input, tol));
  const Vec3 l = q.linear_part();
  const SpectralData sp = eigen_symmetric3(q.quadratic_part(), tol);

  CanonicalForm out;
  const double lam_max = max_abs(sp.eigenvalues);

  if (lam_max <= eps) {
    const double ln = norm(l);
    if (ln <= eps) fail(ErrorCode::DegenerateInput, "quadratic and linear parts both vanish");
    // 2 l.x = k is a single plane.
    const Vec3 n = l / ln;
    const Vec3 helper = std::fabs(n.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
    const Vec3 e1 = normalized(cross(n, helper));
    out.cls = QuadricClass::ParallelPlanes;
    out.linear_only = true;
    out.motion = make_motion({{{n, false}, {e1, true}, {cross(n, e1), true}}}, n * (q.k() / (2.0 * ln)));
    return out;
  }

  std::vector<Eig> nonzero;
  std::vector<Eig> zero;
  for (int i = 0; i < 3; ++i) {
    const Eig e{sp.eigenvalues[i], sp.frame.column(i)};
    (std::fabs(e.value) <= eps * lam_max ? zero : nonzero).push_back(e);
  }

  // Complete the square along every nonzero direction.
  Vec3 xc{};
  double kp = q.k();
  for (const auto& e : nonzero) {
    const double li = dot(e.vec, l);
    xc += (-li / e.value) * e.vec;
    kp += li * li / e.value;
  }
  Vec3 residual_linear{};
  for (const auto& e : zero) residual_linear += dot(e.vec, l) * e.vec;
  const double m = norm(residual_linear);
  const bool parabolic = !zero.empty() && m > eps;

  const auto by_abs_ascending = [](std::vector<Eig> v) {
    std::stable_sort(v.begin(), v.end(),
                     [](const Eig& x, const Eig& y) { return std::fabs(x.value) < std::fabs(y.value); });
    return v;
  };
  const auto split_signs = [&](const std::vector<Eig>& v, double sign) {
    std::vector<Eig> pos, neg;
    for (const auto& e : v) (e.value * sign > 0.0 ? pos : neg).push_back(e);
    return std::pair{by_abs_ascending(pos), by_abs_ascending(neg)};
  };
  const auto semi = [](double lambda, double kk) { return 1.0 / std::sqrt(std::fabs(lambda / kk)); };

  if (nonzero.size() == 3) {
    if (std::fabs(kp) <= eps) {
      auto [pos, neg] = split_signs(nonzero, 1.0);
      if (pos.empty() || neg.empty()) {
        const auto s = by_abs_ascending(nonzero);
        const double top = std::fabs(s[2].value);
        out.cls = QuadricClass::ImaginaryCone;
        out.semi_axes = {semi(s[0].value, top), semi(s[1].value, top), 1.0};
        out.motion = make_motion({{{s[0].vec, true}, {s[1].vec, true}, {s[2].vec, true}}}, xc);
      } else {
        // The axis with the odd sign goes last.
        if (pos.size() == 1) std::swap(pos, neg);
        const double odd = std::fabs(neg[0].value);
        out.cls = QuadricClass::Cone;
        out.semi_axes = {semi(pos[0].value, odd), semi(pos[1].value, odd), 1.0};
        out.motion = make_motion({{{pos[0].vec, true}, {pos[1].vec, true}, {neg[0].vec, true}}}, xc);
      }
      return out;
    }
    auto [pos, neg] = split_signs(nonzero, kp);  // pos: lambda / k' > 0
    std::array<Axis, 3> axes{};
    if (neg.empty() || pos.empty()) {
      const auto& all = neg.empty() ? pos : neg;
      out.cls = neg.empty() ? QuadricClass::Ellipsoid : QuadricClass::ImaginaryEllipsoid;
      out.semi_axes = {semi(all[0].value, kp), semi(all[1].value, kp), semi(all[2].value, kp)};
      axes = {{{all[0].vec, true}, {all[1].vec, true}, {all[2].vec, true}}};
    } else if (pos.size() == 2) {
      out.cls = QuadricClass::HyperboloidOneSheet;
      out.semi_axes = {semi(pos[0].value, kp), semi(pos[1].value, kp), semi(neg[0].value, kp)};
      axes = {{{pos[0].vec, true}, {pos[1].vec, true}, {neg[0].vec, true}}};
    } else {
      out.cls = QuadricClass::HyperboloidTwoSheets;
      out.semi_axes = {semi(neg[0].value, kp), semi(neg[1].value, kp), semi(pos[0].value, kp)};
      axes = {{{neg[0].vec, true}, {neg[1].vec, true}, {pos[0].vec, true}}};
    }
    out.motion = make_motion(axes, xc);
    return out;
  }

  if (parabolic) {
    Vec3 w = residual_linear / m;
    const Vec3 vertex = xc + (kp / (2.0 * m)) * w;
    // sum lambda_i z_i^2 + 2 m t = 0  ->  sum p_i z_i^2 = t with p_i = -lambda_i / (2m).
    std::vector<Eig> p;
    for (const auto& e : nonzero) p.push_back({-e.value / (2.0 * m), e.vec});

    if (p.size() == 1) {
      if (p[0].value < 0.0) {
        w = -w;
        p[0].value = -p[0].value;
      }
      out.cls = QuadricClass::ParabolicCylinder;
      out.parabolic = {p[0].value, 0.0};
      out.motion = make_motion({{{p[0].vec, true}, {cross(w, p[0].vec), true}, {w, false}}}, vertex);
      return out;
    }
    if (p[0].value * p[1].value > 0.0) {
      if (p[0].value < 0.0) {
        w = -w;
        for (auto& e : p) e.value = -e.value;
      }
      if (p[0].value > p[1].value) std::swap(p[0], p[1]);
      out.cls = QuadricClass::EllipticParaboloid;
      out.parabolic = {p[0].value, p[1].value};
    } else {
      if (p[0].value < 0.0) std::swap(p[0], p[1]);
      // Reversing the opening direction swaps the roles; keep p1 <= p2.
      if (p[0].value > -p[1].value) {
        w = -w;
        for (auto& e : p) e.value = -e.value;
        std::swap(p[0], p[1]);
      }
      out.cls = QuadricClass::HyperbolicParaboloid;
      out.parabolic = {p[0].value, -p[1].value};
    }
    out.motion = make_motion({{{p[0].vec, true}, {p[1].vec, true}, {w, false}}}, vertex);
    return out;
  }

  if (nonzero.size() == 2) {
    const Vec3 free_axis = zero[0].vec;
    if (std::fabs(kp) <= eps) {
      auto [pos, neg] = split_signs(nonzero, 1.0);
      if (pos.empty() || neg.empty()) {
        const auto s = by_abs_ascending(nonzero);
        out.cls = QuadricClass::ImaginaryIntersectingPlanes;
        out.semi_axes = {semi(s[0].value, s[1].value), 1.0, 0.0};
        out.motion = make_motion({{{s[0].vec, true}, {s[1].vec, true}, {free_axis, true}}}, xc);
      } else {
        out.cls = QuadricClass::IntersectingPlanes;
        out.semi_axes = {semi(pos[0].value, neg[0].value), 1.0, 0.0};
        out.motion = make_motion({{{pos[0].vec, true}, {neg[0].vec, true}, {free_axis, true}}}, xc);
      }
      return out;
    }
    auto [pos, neg] = split_signs(nonzero, kp);
    if (pos.size() == 1) {
      out.cls = QuadricClass::HyperbolicCylinder;
      out.semi_axes = {semi(pos[0].value, kp), semi(neg[0].value, kp), 0.0};
      out.motion = make_motion({{{pos[0].vec, true}, {neg[0].vec, true}, {free_axis, true}}}, xc);
      return out;
    }
    const auto& all = neg.empty() ? pos : neg;
    out.cls = neg.empty() ? QuadricClass::EllipticCylinder : QuadricClass::ImaginaryEllipticCylinder;
    out.semi_axes = {semi(all[0].value, kp), semi(all[1].value, kp), 0.0};
    out.motion = make_motion({{{all[0].vec, true}, {all[1].vec, true}, {free_axis, true}}}, xc);
    return out;
  }

  // Rank one, no residual linear term: lambda x^2 = k'.
  const Eig& e = nonzero[0];
  const std::array<Axis, 3> axes{{{e.vec, true}, {zero[0].vec, true}, {zero[1].vec, true}}};
  out.motion = make_motion(axes, xc);
  if (std::fabs(kp) <= eps) {
    out.cls = QuadricClass::CoincidentPlanes;
  } else {
    out.cls = kp / e.value > 0.0 ? QuadricClass::ParallelPlanes : QuadricClass::ImaginaryParallelPlanes;
    out.semi_axes = {std::sqrt(std::fabs(kp / e.value)), 0.0, 0.0};
  }
  return out;
}

QuadricClass classify(const Quadric& q, const Tolerance& tol) { return reduce(q, tol).cls; }

Quadric asymptotic_cone(const Quadric& q) {
  return Quadric(q.a(), q.a1(), q.a2(), q.b(), q.b1(), q.b2(), 0.0, 0.0, 0.0, 0.0);
}

DefinitenessReport pairwise_definiteness_conditions(const Quadric& q, const Tolerance& tol) {
  // General-equation names: alpha z^2, beta yz, gamma xz, delta y^2, epsilon xy, zeta x^2.
  const double alpha = q.a2(), beta = 2.0 * q.b(), gamma = 2.0 * q.b1();
  const double delta = q.a1(), epsilon = 2.0 * q.b2(), zeta = q.a();
  DefinitenessReport r;
  r.pairwise = {4.0 * alpha * delta - beta * beta > 0.0, 4.0 * alpha * zeta - gamma * gamma > 0.0,
                4.0 * delta * zeta - epsilon * epsilon > 0.0};
  const SpectralData sp = eigen_symmetric3(q.quadratic_part(), tol);
  r.definite = sp.n_pos == 3 || sp.n_neg == 3;
  return r;
}

bool is_surface_of_revolution(const Quadric& q, const Tolerance& tol) {
  const SpectralData sp = eigen_symmetric3(q.quadratic_part(), tol);
  const double lam_max = max_abs(sp.eigenvalues);
  if (lam_max == 0.0) return false;
  constexpr double kRevolutionEps = 1e-9;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      const double li = sp.eigenvalues[i], lj = sp.eigenvalues[j];
      if (std::fabs(li) <= tol.rank_eps * lam_max || std::fabs(lj) <= tol.rank_eps * lam_max) continue;
      if (std::fabs(li - lj) <= kRevolutionEps * lam_max) return true;
    }
  }
  return false;
}

}  // namespace quadric
