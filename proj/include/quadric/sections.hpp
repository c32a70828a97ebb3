#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "quadric/core.hpp"

namespace quadric {

enum class ConicClass {
  Ellipse,
  Circle,
  Parabola,
  Hyperbola,
  TwoLines,
  ParallelLines,
  OneLine,
  Point,
  Empty,
  WholePlane,  ///< the plane lies on the surface
};

std::string_view to_string(ConicClass c);

struct Vec2 {
  double u = 0.0;
  double v = 0.0;
};

/// Metric description of a planar conic in its own frame coordinates.
///
/// * Ellipse / Circle: `center`, `axis1` is the major axis, `semi1 >= semi2`.
/// * Hyperbola: `axis1` is the transverse axis, `semi1` the transverse and
///   `semi2` the conjugate semi-axis.
/// * Parabola: `center` is the vertex, `axis1` points into the opening,
///   `latus` is the latus rectum.
/// * Point: `center`. TwoLines: `center` and the line directions `axis1`,
///   `axis2`. ParallelLines: mid-line through `center` along `axis2`,
///   half-distance `semi1` along `axis1`. OneLine: through `center` along `axis2`.
struct ConicShape {
  Vec2 center;
  Vec2 axis1{1.0, 0.0};
  Vec2 axis2{0.0, 1.0};
  double semi1 = 0.0;
  double semi2 = 0.0;
  double latus = 0.0;
};

/// A conic A u^2 + 2B uv + C v^2 + 2D u + 2E v + F = 0 drawn in a plane with
/// orthonormal frame (origin, e1, e2).
struct PlanarConic {
  Vec3 origin;
  Vec3 e1;
  Vec3 e2;
  double A = 0.0, B = 0.0, C = 0.0, D = 0.0, E = 0.0, F = 0.0;
  ConicClass cls = ConicClass::Empty;
  ConicShape shape;

  Vec3 normal() const { return cross(e1, e2); }
  Vec3 lift(const Vec2& p) const { return origin + p.u * e1 + p.v * e2; }
  Vec3 lift_direction(const Vec2& d) const { return d.u * e1 + d.v * e2; }
  double evaluate(const Vec2& p) const {
    return A * p.u * p.u + 2.0 * B * p.u * p.v + C * p.v * p.v + 2.0 * D * p.u + 2.0 * E * p.v + F;
  }
};

/// Builds and classifies a conic from its 2D coefficients in a given frame.
PlanarConic make_planar_conic(const Vec3& origin, const Vec3& e1, const Vec3& e2, double A,
                              double B, double C, double D, double E, double F,
                              const Tolerance& tol = {});

/// Deterministic in-plane frame: e1 is the normalized projection onto the
/// plane of the global axis with the smallest |normal component| (lowest
/// index on ties), e2 = n x e1, origin = d n.
struct PlaneFrame {
  Vec3 origin;
  Vec3 e1;
  Vec3 e2;
};
PlaneFrame plane_frame(const Plane3& pl);

PlanarConic plane_section(const Quadric& q, const Plane3& pl, const Tolerance& tol = {});

/// n points on the real locus of the conic, spread by arc parameter (angle
/// for ellipses, hyperbolic parameter on both branches, abscissa for
/// parabolas and lines). Throws NoParametrization for Empty and WholePlane.
std::vector<Vec3> sample_conic(const PlanarConic& c, int n);

/// Similarity invariant: for ellipses the eigenvalue ratio
/// lambda_min / lambda_max = (minor / major)^2, 1 for circles; for hyperbolas
/// min(r, 1/r) with r = |lambda1 / lambda2| (a hyperbola and its conjugate
/// are identified); 0 for every parabola.
struct SimilarityInvariant {
  ConicClass family = ConicClass::Ellipse;  ///< Ellipse, Hyperbola or Parabola
  double ratio = 0.0;
};

/// Throws DegenerateConic for line, point, empty or whole-plane classes.
SimilarityInvariant similarity_invariant(const PlanarConic& c);

/// Same family and invariants equal within tol.residual_eps. Throws
/// DegenerateConic for degenerate inputs.
bool conic_similar(const PlanarConic& c1, const PlanarConic& c2, const Tolerance& tol = {});

struct SectionEntry {
  double offset = 0.0;
  PlanarConic conic;
  bool degenerate = false;
  std::optional<SimilarityInvariant> invariant;
};

struct ParallelSectionsReport {
  Vec3 direction;
  std::vector<SectionEntry> sections;  ///< ordered by offset
  std::vector<double> degenerate_offsets;
  SimilarityInvariant common;
  bool all_similar = false;
  /// Largest deviation of (A, B, C) between non-degenerate sections.
  double max_quadratic_deviation = 0.0;
};

/// Sections by the planes direction . p = offset. Throws InsufficientSections
/// if fewer than two are non-degenerate.
ParallelSectionsReport parallel_sections_report(const Quadric& q, const Vec3& direction,
                                                std::vector<double> offsets,
                                                const Tolerance& tol = {});

enum class CircularKind {
  TwoFamilies,  ///< general central quadric or cone
  Revolution,   ///< one family, perpendicular to the axis
  Sphere,       ///< every plane
};

struct CircularFamily {
  Vec3 normal;
  Line3 centers;  ///< diameter carrying the centers of the circles
};

struct CircularFamilies {
  CircularKind kind = CircularKind::TwoFamilies;
  Vec3 center;
  std::vector<CircularFamily> families;
};

/// Planes cutting circles from a central quadric: the normals
/// sqrt(l1 - l2) e1 +- sqrt(l2 - l3) e3 for eigenvalues l1 > l2 > l3.
/// Throws NotCentral for anything but ellipsoids, hyperboloids and cones.
CircularFamilies circular_section_planes(const Quadric& q, const Tolerance& tol = {});

}  // namespace quadric
