#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "quadric/canonical.hpp"
#include "quadric/ruled.hpp"
#include "quadric/tangency.hpp"
#include "support.hpp"

using namespace quadric;
using testing_support::coefficient_distance;
using testing_support::random_motion;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const GeometryError& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

double line_residual(const Quadric& q, const Line3& l) {
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) worst = std::fmax(worst, relative_residual(q, l.at(-2.0 + 4.0 * i / 19)));
  return worst;
}

bool parallel(const Vec3& a, const Vec3& b) { return norm(cross(a, b)) < 1e-9; }

// Distance between two lines; zero when they meet or are parallel and coincide.
double line_gap(const Line3& l1, const Line3& l2) {
  const Vec3 n = cross(l1.direction(), l2.direction());
  if (norm(n) < 1e-12) return l2.distance(l1.point());
  return std::fabs(dot(l2.point() - l1.point(), normalized(n)));
}

struct Posed {
  Quadric q;
  RigidMotion pose;
  Vec3 semi;
  bool paraboloid;
};

Posed random_ruled(std::mt19937_64& rng, bool paraboloid) {
  std::uniform_real_distribution<double> u(0.4, 2.5);
  const Vec3 semi{u(rng), u(rng), u(rng)};
  const Quadric canon = paraboloid ? Quadric(semi.x, -semi.y, 0, 0, 0, 0, 0, 0, -0.5, 0)
                                   : Quadric(1 / (semi.x * semi.x), 1 / (semi.y * semi.y), -1 / (semi.z * semi.z), 0, 0, 0, 0, 0, 0, 1);
  const RigidMotion pose = random_motion(rng);
  return {transform(canon, pose.inverse()), pose, semi, paraboloid};
}

Vec3 random_point_on(std::mt19937_64& rng, const Posed& s) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const double a = u(rng), b = u(rng) * 2;
  Vec3 pc;
  if (s.paraboloid) {
    pc = {a, b, s.semi.x * a * a - s.semi.y * b * b};
  } else {
    pc = {s.semi.x * std::cosh(a) * std::cos(b), s.semi.y * std::cosh(a) * std::sin(b), s.semi.z * std::sinh(a)};
  }
  return s.pose.apply(pc);
}

}  // namespace

TEST_CASE("worked rulings") {
  const CanonicalForm h = reduce(Quadric(1, 1, -1, 0, 0, 0, 0, 0, 0, 1));
  const RulingPair r = rulings_through_point(h, {1, 0, 0});
  const Vec3 d1 = normalized({0, 1, 1}), d2 = normalized({0, 1, -1});
  CHECK(((parallel(r.family_a.direction(), d1) && parallel(r.family_b.direction(), d2)) ||
         (parallel(r.family_a.direction(), d2) && parallel(r.family_b.direction(), d1))));
  CHECK(norm(r.family_a.point() - Vec3{1, 0, 0}) == 0.0);

  const CanonicalForm hp = reduce(quadric_from_general(0, 0, 0, -1, 0, 1, 0, 0, -1, 0));
  const RulingPair s = rulings_through_point(hp, {0, 0, 0});
  const Vec3 e1 = normalized({1, 1, 0}), e2 = normalized({1, -1, 0});
  CHECK(((parallel(s.family_a.direction(), e1) && parallel(s.family_b.direction(), e2)) ||
         (parallel(s.family_a.direction(), e2) && parallel(s.family_b.direction(), e1))));

  CHECK(code_of([] { rulings_through_point(reduce(Quadric(1, 1, 1, 0, 0, 0, 0, 0, 0, 1)), {1, 0, 0}); }) == ErrorCode::NotRuled);
  CHECK(code_of([&] { rulings_through_point(h, {2, 0, 0}); }) == ErrorCode::NotOnSurface);
}

TEST_CASE("double ruling on random surfaces") {
  std::mt19937_64 rng(61);
  for (int surface = 0; surface < 20; ++surface) {
    const Posed s = random_ruled(rng, surface % 2 == 1);
    const CanonicalForm cf = reduce(s.q);
    std::vector<RulingPair> pairs;
    for (int i = 0; i < 10; ++i) {
      const Vec3 p = random_point_on(rng, s);
      const RulingPair r = rulings_through_point(cf, p);
      CHECK(line_residual(s.q, r.family_a) < 1e-9);
      CHECK(line_residual(s.q, r.family_b) < 1e-9);
      CHECK_FALSE(parallel(r.family_a.direction(), r.family_b.direction()));
      pairs.push_back(r);
    }
    for (size_t i = 0; i < pairs.size(); ++i) {
      for (size_t j = i + 1; j < pairs.size(); ++j) {
        // Same family: skew (or parallel, on the paraboloid never; distinct points here).
        CHECK(line_gap(pairs[i].family_a, pairs[j].family_a) > 1e-9);
        CHECK(line_gap(pairs[i].family_b, pairs[j].family_b) > 1e-9);
        // Opposite families meet (or are parallel on the hyperboloid).
        const Line3& la = pairs[i].family_a;
        const Line3& lb = pairs[j].family_b;
        const double scale = 1 + norm(la.point()) + norm(lb.point());
        CHECK(line_gap(la, lb) < 1e-8 * scale);
      }
    }
  }
}

TEST_CASE("family labels are constant along a line") {
  std::mt19937_64 rng(62);
  for (int surface = 0; surface < 10; ++surface) {
    const Posed s = random_ruled(rng, surface % 2 == 1);
    const CanonicalForm cf = reduce(s.q);
    const RulingPair r = rulings_through_point(cf, random_point_on(rng, s));
    for (double t : {-1.0, 0.7, 2.5}) {
      const RulingPair ra = rulings_through_point(cf, r.family_a.at(t));
      CHECK(parallel(ra.family_a.direction(), r.family_a.direction()));
      const RulingPair rb = rulings_through_point(cf, r.family_b.at(t));
      CHECK(parallel(rb.family_b.direction(), r.family_b.direction()));
    }
  }
}

TEST_CASE("three skew lines of one family determine the surface") {
  std::mt19937_64 rng(63);
  for (int surface = 0; surface < 10; ++surface) {
    const Posed s = random_ruled(rng, surface % 2 == 1);
    const CanonicalForm cf = reduce(s.q);
    std::vector<Vec3> pts;
    for (int i = 0; i < 3; ++i) {
      const Line3 l = rulings_through_point(cf, random_point_on(rng, s)).family_a;
      for (double t : {-1.0, 0.0, 1.0}) pts.push_back(l.at(t));
    }
    CHECK(coefficient_distance(testing_support::fit_quadric(pts), s.q) < 1e-6);
  }
}

TEST_CASE("Wren's construction") {
  const WrenConstruction w = wren_generator(1, 1, 0);
  CHECK(w.gh == doctest::Approx(1.0));
  const Quadric unit(1, 1, -1, 0, 0, 0, 0, 0, 0, 1);
  CHECK(line_residual(unit, w.line) < 1e-12);
  const double angle = std::acos(std::fabs(w.line.direction().z));
  CHECK(angle == doctest::Approx(M_PI / 4));

  const Quadric h23(0.25, 0.25, -1.0 / 9, 0, 0, 0, 0, 0, 0, 1);
  for (double z0 : {-3.0, -0.5, 0.0, 1.0, 4.0}) {
    const WrenConstruction c = wren_generator(2, 3, z0);
    CHECK(line_residual(h23, c.line) < 1e-9);
    CHECK(c.gh == doctest::Approx(2.0));
    CHECK(relative_residual(h23, c.h) < 1e-12);
    // Parallel to the asymptote x = a z / b of the meridian.
    const double dev = std::asin(std::fmin(1.0, norm(cross(c.line.direction(), normalized({2, 0, 3})))));
    CHECK(dev < 1e-10);
  }
  CHECK(code_of([] { wren_generator(0, 1, 0); }) == ErrorCode::NonPositiveParameter);
  CHECK(code_of([] { wren_generator(1, -1, 0); }) == ErrorCode::NonPositiveParameter);
}

TEST_CASE("line-pair sections") {
  const CanonicalForm h = reduce(Quadric(1, 1, -1, 0, 0, 0, 0, 0, 0, 1));
  const LinePairSection s0 = plane_section_line_pair(h, 0);
  CHECK(s0.beta == doctest::Approx(1.0));
  CHECK(s0.section.cls == ConicClass::TwoLines);
  const LinePairSection s1 = plane_section_line_pair(h, 1);
  CHECK(s1.beta == doctest::Approx(std::sqrt(2.0)));
  CHECK(s1.section.cls == ConicClass::TwoLines);

  // The plane touches the surface on its throat ellipse, where the two lines cross.
  std::mt19937_64 rng(64);
  for (int i = 0; i < 20; ++i) {
    const Posed s = random_ruled(rng, false);
    const CanonicalForm cf = reduce(s.q);
    const double alpha = std::uniform_real_distribution<double>(-3, 3)(rng);
    const LinePairSection lp = plane_section_line_pair(cf, alpha);
    CHECK(lp.section.cls == ConicClass::TwoLines);
    const Vec3 crossing = lp.section.lift(lp.section.shape.center);
    CHECK(std::fabs(cf.motion.apply(crossing).z) < 1e-9 * (1 + norm(crossing)));
    const Plane3 touch = tangent_plane(s.q, crossing);
    CHECK(std::fabs(std::fabs(dot(touch.normal(), lp.plane.normal())) - 1) < 1e-9);
  }
  CHECK(code_of([] { plane_section_line_pair(reduce(Quadric(-1, -1, 1, 0, 0, 0, 0, 0, 0, 1)), 0.5); }) == ErrorCode::NotRuled);
}
