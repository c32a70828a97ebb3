#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "quadric/canonical.hpp"
#include "quadric/core.hpp"

namespace quadric {

/// Plane through p with normal along the gradient. Throws NotOnSurface if the
/// relative residual of p exceeds tol.residual_eps, SingularPoint where the
/// gradient vanishes (cone vertex).
Plane3 tangent_plane(const Quadric& q, const Vec3& p, const Tolerance& tol = {});

struct AxisRays {
  Vec3 outside;  ///< axis-parallel direction whose ray leaves the solid
  Vec3 inside;   ///< opposite direction, entering the solid
  bool verified = false;  ///< sign sampling at t = 0.1 .. 2.0 (scaled) agreed
  double sample_scale = 1.0;
};

/// For a surface of revolution about canonical axis z (elliptic paraboloid
/// with p1 = p2, hyperboloids with a = b) labels the two rays from p parallel
/// to the axis. The solid is the side containing the axis (the nappe's
/// interior for two sheets). Throws NotConoid, NotOnSurface, or AmbiguousRay
/// when the axis direction is tangent at p.
AxisRays axis_ray_classification(const CanonicalForm& conoid, const Vec3& p,
                                 const Tolerance& tol = {});

struct TangencyReport {
  Vec3 contact;
  Plane3 plane;
  double residual = 0.0;      ///< relative residual of the contact point
  bool unique = false;        ///< no other grid point of the plane is on the surface
  /// For surfaces of revolution: the plane through the contact point and the
  /// axis is perpendicular to the touching plane.
  std::optional<bool> axial_plane_perpendicular;
};

/// Throws NotTangent when the plane section is not a single point.
TangencyReport plane_touches_at_one_point(const Quadric& q, const Plane3& pl,
                                          const Tolerance& tol = {});

struct Sphere {
  Vec3 center;
  double radius = 0.0;
};

/// Director sphere of an ellipsoid: same center, radius sqrt(a^2 + b^2 + c^2).
/// Throws NotEllipsoid.
Sphere monge_sphere(const Quadric& q, const Tolerance& tol = {});

struct TangentTriple {
  std::array<Plane3, 3> planes;
  std::array<Vec3, 3> contacts;
  Vec3 point;  ///< common point of the three planes
};

/// Three mutually perpendicular tangent planes whose canonical normals are the
/// columns of `frame`, each on the positive support side n.x = h(n) with
/// h(n) = sqrt(a^2 n1^2 + b^2 n2^2 + c^2 n3^2). Throws NotEllipsoid.
TangentTriple tangent_triple_from_frame(const Quadric& q, const Mat3& frame,
                                        const Tolerance& tol = {});

/// As above with a frame drawn from CounterRng(seed).
TangentTriple perpendicular_tangent_triple(const Quadric& q, std::uint64_t seed,
                                           const Tolerance& tol = {});

}  // namespace quadric
