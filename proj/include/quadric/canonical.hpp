#pragma once

#include <array>
#include <string_view>

#include "quadric/core.hpp"
#include "quadric/spectral.hpp"

namespace quadric {

/// Real affine classes of second-degree surfaces.
enum class QuadricClass {
  Ellipsoid,
  ImaginaryEllipsoid,
  HyperboloidOneSheet,
  HyperboloidTwoSheets,
  EllipticParaboloid,
  HyperbolicParaboloid,
  Cone,
  ImaginaryCone,
  EllipticCylinder,
  ImaginaryEllipticCylinder,
  HyperbolicCylinder,
  ParabolicCylinder,
  IntersectingPlanes,
  ImaginaryIntersectingPlanes,
  ParallelPlanes,
  ImaginaryParallelPlanes,
  CoincidentPlanes,
};

std::string_view to_string(QuadricClass c);
/// Inverse of to_string; throws InvalidArgument for an unknown name.
QuadricClass quadric_class_from_string(std::string_view name);

/// Canonical equations, in canonical coordinates (x, y, z):
///
///   Ellipsoid                    x2/a2 + y2/b2 + z2/c2 =  1   a >= b >= c
///   ImaginaryEllipsoid           x2/a2 + y2/b2 + z2/c2 = -1   a >= b >= c
///   HyperboloidOneSheet          x2/a2 + y2/b2 - z2/c2 =  1   a >= b
///   HyperboloidTwoSheets        -x2/a2 - y2/b2 + z2/c2 =  1   a >= b
///   Cone                         x2/a2 + y2/b2 - z2    =  0   a >= b
///   ImaginaryCone                x2/a2 + y2/b2 + z2    =  0   a >= b >= 1
///   EllipticParaboloid           p1 x2 + p2 y2         =  z   0 < p1 <= p2
///   HyperbolicParaboloid         p1 x2 - p2 y2         =  z   0 < p1 <= p2
///   EllipticCylinder             x2/a2 + y2/b2         =  1   a >= b
///   ImaginaryEllipticCylinder    x2/a2 + y2/b2         = -1   a >= b
///   HyperbolicCylinder           x2/a2 - y2/b2         =  1
///   ParabolicCylinder            p1 x2                 =  z   p1 > 0
///   IntersectingPlanes           x2/a2 - y2            =  0
///   ImaginaryIntersectingPlanes  x2/a2 + y2            =  0   a >= 1
///   ParallelPlanes               x2                    =  a2
///   ImaginaryParallelPlanes      x2                    = -a2
///   CoincidentPlanes             x2                    =  0
///
/// A first-degree equation (vanishing quadratic part) is reported as
/// ParallelPlanes with `linear_only` set: the plane x = 0 paired with the
/// plane at infinity.
struct CanonicalForm {
  QuadricClass cls = QuadricClass::Ellipsoid;
  Vec3 semi_axes;              ///< (a, b, c); unused entries are zero
  std::array<double, 2> parabolic{0.0, 0.0};  ///< (p1, p2); unused entries are zero
  RigidMotion motion = RigidMotion::identity();  ///< original -> canonical coordinates
  bool linear_only = false;

  /// The canonical equation as a quadric in canonical coordinates.
  Quadric canonical_quadric() const;
  /// canonical_quadric() pulled back to original coordinates; equals the
  /// input up to a nonzero factor.
  Quadric rebuild() const;
  /// Image of the canonical origin (center or vertex) in original coordinates.
  Vec3 origin() const { return motion.inverse().translation(); }
  /// Canonical axis i expressed in original coordinates.
  Vec3 axis(int i) const { return motion.rotation().row(i); }
};

/// Principal-axes reduction.
///
/// The input is scaled by the largest absolute eigenvalue of its 4x4
/// coefficient matrix before any rank decision. Throws DegenerateInput when
/// both the quadratic and linear parts vanish.
CanonicalForm reduce(const Quadric& q, const Tolerance& tol = {});

QuadricClass classify(const Quadric& q, const Tolerance& tol = {});

/// Same quadratic part, no linear part, no constant.
Quadric asymptotic_cone(const Quadric& q);

struct DefinitenessReport {
  /// 4 alpha delta - beta^2 > 0, 4 alpha zeta - gamma^2 > 0,
  /// 4 delta zeta - epsilon^2 > 0 for the general-equation coefficients.
  std::array<bool, 3> pairwise{false, false, false};
  bool definite = false;  ///< quadratic part strictly positive or negative definite
};

DefinitenessReport pairwise_definiteness_conditions(const Quadric& q, const Tolerance& tol = {});

/// Surface-of-revolution predicate on the quadratic part: two nonzero
/// eigenvalues agree within 1e-9 relative. For rank-3 parts the two equal
/// eigenvalues may belong to either end of the spectrum.
bool is_surface_of_revolution(const Quadric& q, const Tolerance& tol = {});

}  // namespace quadric
