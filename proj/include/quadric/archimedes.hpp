#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "quadric/canonical.hpp"
#include "quadric/core.hpp"
#include "quadric/sections.hpp"

namespace quadric {

/// Conoids and spheroids, all in canonical pose with axis z:
///
///   Ortoconoide      x^2 + y^2 = N z                  (latus N)
///   Ambliconoide     z^2/b^2 - (x^2 + y^2)/a^2 = 1
///   SpheroidProlate  (x^2 + y^2)/b^2 + z^2/a^2 = 1, a > b
///   SpheroidOblate   (x^2 + y^2)/a^2 + z^2/b^2 = 1, a > b
///
/// The ambliconoide is the upper sheet; its envelope cone is the asymptotic
/// cone z^2/b^2 = (x^2 + y^2)/a^2 with vertex at the origin.
enum class ConoidKind { Ortoconoide, Ambliconoide, SpheroidProlate, SpheroidOblate };

std::string_view to_string(ConoidKind k);
ConoidKind conoid_kind_from_string(std::string_view name);

struct ConoidSpec {
  ConoidKind kind = ConoidKind::Ortoconoide;
  double latus = 0.0;  ///< ortoconoide only
  double a = 0.0;
  double b = 0.0;

  /// Throws NonPositiveParameter, or InvalidArgument when a spheroid has a <= b.
  void validate() const;
  Quadric quadric() const;
  /// Meridian conic in the plane x = 0 (coordinates y, z).
  PlanarConic meridian(const Tolerance& tol = {}) const;
};

/// Proposition clause being checked:
/// Axial    plane contains the axis,
/// Parallel plane parallel to the axis, not containing it,
/// Vertex   (ambliconoide) plane through the envelope-cone vertex, oblique to the axis.
enum class Clause { Axial, Parallel, Vertex };

std::string_view to_string(Clause c);
Clause clause_from_string(std::string_view name);

struct SectionVerdict {
  ConicClass predicted = ConicClass::Ellipse;
  PlanarConic observed;
  bool class_ok = false;
  /// The section's axis lies on the line where the cutting plane meets the
  /// axial plane perpendicular to it.
  bool axis_location = false;
  double axis_residual = 0.0;
  /// Present where the proposition asserts similarity (or dissimilarity) with
  /// the meridian; true when the observed relation is the predicted one.
  std::optional<bool> similarity;
  double similarity_residual = 0.0;
  /// Latus rectum equality with the meridian (ortoconoide).
  std::optional<bool> latus;
  double latus_residual = 0.0;
  /// Axis-length clauses of the oblique propositions.
  std::optional<bool> major_axis;
  double major_residual = 0.0;
  std::optional<bool> minor_axis;
  double minor_residual = 0.0;
  /// T(K Theta) : O(A Theta, Gamma Theta) against the square ratio of the axes
  /// measured independently, at 16 section points.
  std::optional<bool> ratio;
  double ratio_residual = 0.0;
  bool circle_flag = false;  ///< plane perpendicular to the axis
  bool holds = false;        ///< every check present passed
};

/// Throws ClauseMismatch when the plane does not satisfy the clause.
SectionVerdict verify_cs11(const ConoidSpec& spec, const Plane3& pl, Clause clause,
                           const Tolerance& tol = {});

/// Oblique section of the ortoconoide: an ellipse whose major axis is the
/// chord cut from the axial plane perpendicular to pl, and whose minor axis is
/// the distance between the axis-parallel lines through its ends. Throws
/// NotOblique, OpenSection (plane misses or touches the surface).
SectionVerdict verify_cs12(const ConoidSpec& spec, const Plane3& pl, const Tolerance& tol = {});

/// Section of the ambliconoide by a plane meeting every generator of the
/// envelope cone. Throws GeneratorMiss, OpenSection; a plane perpendicular to
/// the axis sets circle_flag.
SectionVerdict verify_cs13(const ConoidSpec& spec, const Plane3& pl, const Tolerance& tol = {});

struct ParabolaSegment {
  double base = 0.0;
  double diameter = 0.0;
  double angle = 0.0;  ///< between diameter and base, in (0, pi)
};

/// Segment of y^2 = N x cut off by the chord between the points with
/// ordinates y1 and y2. Throws InvalidArgument for y1 == y2 or N <= 0.
ParabolaSegment orthotome_segment(double latus, double y1, double y2);

/// Equal base : diameter ratios and equal angles within tol.residual_eps
/// (relative for the ratio). Throws InvalidArgument for non-positive lengths
/// or angles outside (0, pi).
bool parabola_segments_similar(const ParabolaSegment& s1, const ParabolaSegment& s2,
                               const Tolerance& tol = {});

/// Cone with vertex O over a planar ellipse.
Quadric cone_from_vertex_and_ellipse(const Vec3& vertex, const Ellipse3& base);

struct ConeConstruction {
  Cone3 cone;
  Ellipse3 base;             ///< circle or auxiliary ellipse the cone is drawn on
  Vec3 chord_start;          ///< B (perpendicular case) or A (oblique case)
  Vec3 chord_end;            ///< D
  bool circular_input = false;
  bool circle_branch = false;  ///< the base is a circle
  double max_residual = 0.0;   ///< over 64 points of the given ellipse
};

/// Apex O = C + h n over the ellipse e. The chord BD of the triangle OBB'
/// through B meets CO in E with BE.ED : EO^2 = CA^2 : CO^2; the cone is drawn
/// on the circle with diameter BD perpendicular to the plane OBB'. A circular
/// e gives the right cone (circular_input set). Throws NoValidChord for
/// h <= 0.
ConeConstruction cone_through_ellipse_perpendicular(const Ellipse3& e, double h,
                                                    const Tolerance& tol = {});

/// Apex O in the plane through the major axis AA' perpendicular to the
/// ellipse. D on OA' with OD = OA; F and G where the line through C parallel
/// to AD meets OA and OD. The base on AD is a circle when CB^2 = FC.CG and
/// otherwise an ellipse with conjugate diameter d, d^2 : AD^2 = CB^2 : FC.CG.
/// Throws DegenerateApex for O in the ellipse plane, InvalidArgument for O
/// off the axial plane.
ConeConstruction cone_through_ellipse_oblique(const Ellipse3& e, const Vec3& apex,
                                              const Tolerance& tol = {});

struct ConeSectionEntry {
  double fraction = 0.0;  ///< plane offset from the center as a fraction of the support value
  Plane3 plane;
  PlanarConic conic;
  double ratio = 0.0;     ///< eigenvalue ratio of the cone section, 1 for a circle
  bool circle = false;
};

struct ConeCircularReport {
  Vec3 vertex;
  Plane3 base_plane;
  Quadric cone;
  Vec3 family_normal;
  std::vector<ConeSectionEntry> entries;
  bool holds = false;
};

/// Cone with vertex at the end V of the diameter carrying the centers of the
/// first circular family, through the ellipse cut by base_plane (default: the
/// central plane of the other circular family). Planes of the first family at
/// offsets 0.2, 0.5, 0.8 of the way from the center to V are checked to cut
/// circles (ratio within 1e-8 of 1). Throws NotEllipsoid, RevolutionSpecial.
ConeCircularReport cone_circular_sections_on_ellipsoid(const CanonicalForm& cf,
                                                       std::optional<Plane3> base_plane = std::nullopt,
                                                       const Tolerance& tol = {});

}  // namespace quadric
