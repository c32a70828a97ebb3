#pragma once

#include <string>

#include "json.hpp"
#include "quadric/archimedes.hpp"
#include "quadric/canonical.hpp"
#include "quadric/core.hpp"
#include "quadric/sections.hpp"
#include "quadric/spectral.hpp"

namespace quadric::cli {

using Json = nlohmann::ordered_json;

Json to_json(const Vec3& v);
Json to_json(const Plane3& pl);
Json to_json(const Line3& line);
Json to_json(const Ellipse3& e);
Json to_json(const RigidMotion& m);
Json to_json(const PlanarConic& c);
Json to_json(const CanonicalForm& cf);
Json to_json(const CenterResult& c);
Json to_json(const SectionVerdict& v);
Json to_json(const Tolerance& tol);

/// Indented JSON followed by a newline.
std::string render_json(const Json& report);

/// One `path: value` line per leaf; numeric arrays inline, numbers with 17
/// significant digits.
std::string render_text(const Json& report);

}  // namespace quadric::cli
