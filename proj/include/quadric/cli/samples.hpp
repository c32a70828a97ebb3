#pragma once

#include <string>
#include <vector>

#include "quadric/canonical.hpp"
#include "quadric/core.hpp"

namespace quadric::cli {

/// n x n grid over a global parametrization of the canonical class, mapped
/// back to the original coordinates. Two-piece loci (two sheets, two branches,
/// plane pairs) give the first ceil(n/2) rows to one piece and the rest to the
/// other. Loci that are a single line (ImaginaryIntersectingPlanes) give n
/// points. Throws NoParametrization for empty and point loci; requires n >= 2.
std::vector<Vec3> surface_samples(const CanonicalForm& cf, int n);

/// n points at evenly spaced parameters in [-1, 1].
std::vector<Vec3> line_samples(const Line3& line, int n);

/// `x,y,z` header, then one row per point, 17 significant digits.
std::string format_csv(const std::vector<Vec3>& points);

}  // namespace quadric::cli
