#pragma once

#include "quadric/canonical.hpp"
#include "quadric/core.hpp"
#include "quadric/sections.hpp"

namespace quadric {

/// The two generators through a point of a doubly ruled surface.
///
/// Family A on the one-sheet hyperboloid is the family whose canonical
/// direction, oriented to positive z, satisfies (P x D).z > 0 in the scaled
/// coordinates (x/a, y/b, z/c); on the hyperbolic paraboloid it is the family
/// with dx * dy > 0. Both labels are constant along each family.
struct RulingPair {
  Line3 family_a;
  Line3 family_b;
};

/// Throws NotRuled unless cf is a HyperboloidOneSheet or HyperbolicParaboloid,
/// NotOnSurface if p misses the surface by more than tol.residual_eps.
RulingPair rulings_through_point(const CanonicalForm& cf, const Vec3& p,
                                 const Tolerance& tol = {});

/// Construction on the hyperboloid (x^2 + y^2)/a^2 - z^2/b^2 = 1. G is the
/// point of the meridian asymptote x = a z / b at height z0, H the point where
/// the line through G parallel to AN meets the surface, A the center and N the
/// throat point (0, a, 0). The generator through N is parallel to AG.
struct WrenConstruction {
  Vec3 a_point;
  Vec3 g;
  Vec3 h;
  Vec3 n;
  double gh = 0.0;  ///< equals a
  Line3 line;       ///< through N, parallel to the asymptote
};

/// Throws NonPositiveParameter unless a, b > 0; NonFinite for a non-finite z0.
WrenConstruction wren_generator(double a, double b, double z0);

struct LinePairSection {
  double beta = 0.0;
  Plane3 plane;         ///< y = alpha x + beta in canonical coordinates, mapped back
  PlanarConic section;  ///< class TwoLines
};

/// For x^2/a^2 + y^2/b^2 - z^2/c^2 = 1 the plane y = alpha x + beta touches the
/// surface on its throat ellipse, and therefore cuts two generators, when
/// beta^2 = b^2 + alpha^2 a^2. The positive root is used. Throws NotRuled for
/// other classes, NoRealBeta for a non-finite alpha.
LinePairSection plane_section_line_pair(const CanonicalForm& cf, double alpha,
                                        const Tolerance& tol = {});

}  // namespace quadric
