#include "quadric/cli/samples.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>

namespace quadric::cli {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double spread(int i, int n, double lo, double hi) { return lo + (hi - lo) * i / (n - 1); }

// Row i of an n-row grid split into two pieces: (piece sign, parameter in [lo, hi]).
std::pair<double, double> split_row(int i, int n, double lo, double hi) {
  const int first = (n + 1) / 2;
  const int rows = i < first ? first : n - first;
  const int k = i < first ? i : i - first;
  const double t = rows > 1 ? lo + (hi - lo) * k / (rows - 1) : 0.5 * (lo + hi);
  return {i < first ? 1.0 : -1.0, t};
}

}  // namespace

std::vector<Vec3> surface_samples(const CanonicalForm& cf, int n) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "need at least 2 samples");
  const Vec3& s = cf.semi_axes;
  const double p1 = cf.parabolic[0], p2 = cf.parabolic[1];
  std::vector<Vec3> out;
  auto grid = [&](auto&& point) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.push_back(point(i, j));
  };
  auto angle = [&](int j) { return kTwoPi * j / n; };

  switch (cf.cls) {
    case QuadricClass::Ellipsoid:
      grid([&](int i, int j) {
        const double th = spread(i, n, 0.0, std::numbers::pi), ph = angle(j);
        return Vec3{s.x * std::sin(th) * std::cos(ph), s.y * std::sin(th) * std::sin(ph), s.z * std::cos(th)};
      });
      break;
    case QuadricClass::HyperboloidOneSheet:
      grid([&](int i, int j) {
        const double u = spread(i, n, -1.0, 1.0), ph = angle(j);
        return Vec3{s.x * std::cosh(u) * std::cos(ph), s.y * std::cosh(u) * std::sin(ph), s.z * std::sinh(u)};
      });
      break;
    case QuadricClass::HyperboloidTwoSheets:
      grid([&](int i, int j) {
        const auto [sheet, u] = split_row(i, n, 0.0, 1.5);
        const double ph = angle(j);
        return Vec3{s.x * std::sinh(u) * std::cos(ph), s.y * std::sinh(u) * std::sin(ph), sheet * s.z * std::cosh(u)};
      });
      break;
    case QuadricClass::Cone:
      grid([&](int i, int j) {
        const double t = spread(i, n, -1.0, 1.0), ph = angle(j);
        return Vec3{s.x * t * std::cos(ph), s.y * t * std::sin(ph), t};
      });
      break;
    case QuadricClass::EllipticParaboloid:
      grid([&](int i, int j) {
        const double r = spread(i, n, 0.0, 1.0), ph = angle(j);
        return Vec3{r * std::cos(ph) / std::sqrt(p1), r * std::sin(ph) / std::sqrt(p2), r * r};
      });
      break;
    case QuadricClass::HyperbolicParaboloid:
      grid([&](int i, int j) {
        const double u = spread(i, n, -1.0, 1.0), v = spread(j, n, -1.0, 1.0);
        return Vec3{u, v, p1 * u * u - p2 * v * v};
      });
      break;
    case QuadricClass::EllipticCylinder:
      grid([&](int i, int j) {
        const double t = spread(i, n, -1.0, 1.0), ph = angle(j);
        return Vec3{s.x * std::cos(ph), s.y * std::sin(ph), t};
      });
      break;
    case QuadricClass::HyperbolicCylinder:
      grid([&](int i, int j) {
        const auto [branch, u] = split_row(i, n, -1.0, 1.0);
        const double t = spread(j, n, -1.0, 1.0);
        return Vec3{branch * s.x * std::cosh(u), s.y * std::sinh(u), t};
      });
      break;
    case QuadricClass::ParabolicCylinder:
      grid([&](int i, int j) {
        const double u = spread(i, n, -1.0, 1.0), t = spread(j, n, -1.0, 1.0);
        return Vec3{u, t, p1 * u * u};
      });
      break;
    case QuadricClass::IntersectingPlanes:
      grid([&](int i, int j) {
        const auto [side, v] = split_row(i, n, -1.0, 1.0);
        const double t = spread(j, n, -1.0, 1.0);
        return Vec3{side * s.x * v, v, t};
      });
      break;
    case QuadricClass::ParallelPlanes:
      if (cf.linear_only) {
        grid([&](int i, int j) { return Vec3{0.0, spread(i, n, -1.0, 1.0), spread(j, n, -1.0, 1.0)}; });
      } else {
        grid([&](int i, int j) {
          const auto [side, u] = split_row(i, n, -1.0, 1.0);
          return Vec3{side * s.x, u, spread(j, n, -1.0, 1.0)};
        });
      }
      break;
    case QuadricClass::CoincidentPlanes:
      grid([&](int i, int j) { return Vec3{0.0, spread(i, n, -1.0, 1.0), spread(j, n, -1.0, 1.0)}; });
      break;
    case QuadricClass::ImaginaryIntersectingPlanes:
      for (int i = 0; i < n; ++i) out.push_back({0.0, 0.0, spread(i, n, -1.0, 1.0)});
      break;
    default:
      fail(ErrorCode::NoParametrization, "real locus of a " + std::string(to_string(cf.cls)) + " is empty or a point");
  }
  const RigidMotion back = cf.motion.inverse();
  for (Vec3& p : out) p = back.apply(p);
  return out;
}

std::vector<Vec3> line_samples(const Line3& line, int n) {
  if (n < 2) fail(ErrorCode::InvalidArgument, "need at least 2 samples");
  std::vector<Vec3> out;
  for (int i = 0; i < n; ++i) out.push_back(line.at(spread(i, n, -1.0, 1.0)));
  return out;
}

std::string format_csv(const std::vector<Vec3>& points) {
  std::string out = "x,y,z\n";
  char buf[96];
  for (const Vec3& p : points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", p.x, p.y, p.z);
    out += buf;
  }
  return out;
}

}  // namespace quadric::cli
