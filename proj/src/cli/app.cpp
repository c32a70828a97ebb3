#include "quadric/cli/app.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <variant>

#include "CLI11.hpp"
#include "quadric/archimedes.hpp"
#include "quadric/canonical.hpp"
#include "quadric/cli/parser.hpp"
#include "quadric/cli/samples.hpp"
#include "quadric/ruled.hpp"
#include "quadric/sections.hpp"
#include "quadric/spectral.hpp"
#include "quadric/tangency.hpp"
#include "report.hpp"

namespace quadric::cli {

namespace {

constexpr int kLineSamples = 20;
constexpr int kConicSamples = 100;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(const std::string& text, std::size_t count, const std::string& what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(',', start), text.size());
    const std::string item = text.substr(start, end - start);
    char* stop = nullptr;
    const double v = std::strtod(item.c_str(), &stop);
    if (item.empty() || stop == item.c_str() || *stop != '\0' || !std::isfinite(v))
      throw UsageError(what + ": '" + item + "' is not a finite number");
    out.push_back(v);
    start = end + 1;
  }
  if (count != 0 && out.size() != count)
    throw UsageError(what + " expects " + std::to_string(count) + " comma-separated numbers");
  return out;
}

Vec3 parse_vec(const std::string& text, const std::string& what) {
  const auto v = parse_numbers(text, 3, what);
  return {v[0], v[1], v[2]};
}

Plane3 parse_plane(const std::string& text) {
  const auto v = parse_numbers(text, 4, "--plane");
  if (v[0] == 0.0 && v[1] == 0.0 && v[2] == 0.0) throw UsageError("--plane: normal must be nonzero");
  return Plane3({v[0], v[1], v[2]}, v[3]);
}

double max_residual(const Quadric& q, const std::vector<Vec3>& pts) {
  double worst = 0.0;
  for (const Vec3& p : pts) worst = std::fmax(worst, relative_residual(q, p));
  return worst;
}

// Spread of the in-plane quadratic form; zero when the plane cuts circles.
double circle_defect(const PlanarConic& c) {
  const double scale = std::fmax(std::fabs(c.A), std::fmax(std::fabs(c.B), std::fabs(c.C)));
  return scale == 0.0 ? 0.0 : std::hypot(c.A - c.C, 2.0 * c.B) / scale;
}

bool has_real_points(ConicClass c) { return c != ConicClass::Empty && c != ConicClass::WholePlane; }

struct Options {
  std::string format = "text";
  double tol = 0.0;
  std::uint64_t seed = 1;
  int samples = 8;
  std::string expr;
  std::string plane, point, direction, offsets = "-0.5,0,0.5";
  std::string semi, apex, center = "0,0,0";
  std::string kind, clause, family = "a";
  double height = 0.0, a = 0.0, b = 0.0, z0 = 0.0, latus = 0.0;
};

struct Output {
  Json result;
  Json residuals = Json::object();
};

RunResult failure(int code, const std::string& category, const std::string& name, std::string message) {
  for (char& ch : message)
    if (ch == '\n' || ch == '\r') ch = ' ';
  while (!message.empty() && message.back() == ' ') message.pop_back();
  return {code, "", "error: " + category + ": " + name + ": " + message + "\n"};
}

}  // namespace

RunResult run(const std::vector<std::string>& args) {
  CLI::App app{"Quadric surface geometry: classification, sections, rulings and classical constructions",
               "quadric"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "json"}));
  auto* tol_opt = app.add_option("--tol", o.tol, "Override residual_eps")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "Seed for seeded operations");
  app.add_option("--samples", o.samples, "Sample count for the samples command")->check(CLI::Range(2, 100000));

  auto with_expr = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("quadric", o.expr, "Polynomial equation in x, y, z of degree <= 2")->required();
    return sub;
  };
  auto* c_classify = with_expr("classify", "Affine class of the surface");
  auto* c_reduce = with_expr("reduce", "Canonical form and the motion reaching it");
  auto* c_center = with_expr("center", "Center, line or plane of centers");
  auto* c_section = with_expr("section", "Section by a plane");
  c_section->add_option("--plane", o.plane, "nx,ny,nz,d for the plane n.p = d")->required();
  auto* c_parallel = with_expr("parallel-sections", "Sections by parallel planes and their similarity");
  c_parallel->add_option("--direction", o.direction, "Common plane normal x,y,z")->required();
  c_parallel->add_option("--offsets", o.offsets, "Comma-separated plane offsets");
  auto* c_circular = with_expr("circular", "Families of planes cutting circles");
  auto* c_rulings = with_expr("rulings", "The two generators through a surface point");
  c_rulings->add_option("--point", o.point, "x,y,z on the surface")->required();
  auto* c_tangent = with_expr("tangent", "Tangent plane at a point, or contact of a touching plane");
  auto* tangent_point = c_tangent->add_option("--point", o.point, "x,y,z on the surface");
  auto* tangent_plane_opt = c_tangent->add_option("--plane", o.plane, "nx,ny,nz,d of a touching plane");
  tangent_point->excludes(tangent_plane_opt);
  auto* c_monge = with_expr("monge", "Director sphere and a seeded perpendicular tangent triple");
  auto* c_samples = with_expr("samples", "CSV points on the surface, a plane section, or a ruling");
  auto* samples_plane = c_samples->add_option("--plane", o.plane, "sample the section by nx,ny,nz,d");
  auto* samples_point = c_samples->add_option("--point", o.point, "sample a ruling through x,y,z");
  samples_plane->excludes(samples_point);
  c_samples->add_option("--family", o.family, "ruling family")->check(CLI::IsMember({"a", "b"}));

  auto* c_wren = app.add_subcommand("wren", "Generator of (x^2+y^2)/a^2 - z^2/b^2 = 1 by the asymptote construction");
  c_wren->add_option("--a", o.a, "throat radius")->required();
  c_wren->add_option("--b", o.b, "axis parameter")->required();
  c_wren->add_option("--z0", o.z0, "height of G on the asymptote");

  auto* c_cone = app.add_subcommand("cone-ellipse", "Circular-base cone through an ellipse in the plane z = 0");
  c_cone->add_option("--semi", o.semi, "semi-axes a,b along x and y")->required();
  c_cone->add_option("--center", o.center, "ellipse center x,y,z");
  auto* cone_height = c_cone->add_option("--height", o.height, "apex on the perpendicular at this height");
  auto* cone_apex = c_cone->add_option("--apex", o.apex, "apex x,y,z in the axial plane of the major axis");
  cone_height->excludes(cone_apex);

  auto* c_cs11 = app.add_subcommand("verify-cs11", "Sections through or parallel to the axis of a conoid");
  c_cs11->add_option("--kind", o.kind, "Ortoconoide, Ambliconoide, SpheroidProlate or SpheroidOblate")->required();
  c_cs11->add_option("--latus", o.latus, "latus rectum of the ortoconoide");
  c_cs11->add_option("--a", o.a, "first conoid parameter");
  c_cs11->add_option("--b", o.b, "second conoid parameter");
  c_cs11->add_option("--plane", o.plane, "nx,ny,nz,d")->required();
  c_cs11->add_option("--clause", o.clause, "axial, parallel or vertex")->required();
  auto* c_cs12 = app.add_subcommand("verify-cs12", "Oblique section of an ortoconoide");
  c_cs12->add_option("--latus", o.latus, "latus rectum")->required();
  c_cs12->add_option("--plane", o.plane, "nx,ny,nz,d")->required();
  auto* c_cs13 = app.add_subcommand("verify-cs13", "Oblique section of an ambliconoide");
  c_cs13->add_option("--a", o.a, "radial parameter")->required();
  c_cs13->add_option("--b", o.b, "axial parameter")->required();
  c_cs13->add_option("--plane", o.plane, "nx,ny,nz,d")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream out, err;
    app.exit(e, out, err);
    return {kOk, out.str(), ""};
  } catch (const CLI::CallForAllHelp& e) {
    std::ostringstream out, err;
    app.exit(e, out, err);
    return {kOk, out.str(), ""};
  } catch (const CLI::ParseError& e) {
    return failure(kUsage, "usage", e.get_name(), e.what());
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  Tolerance tol;
  if (tol_opt->count() > 0) tol.residual_eps = o.tol;

  try {
    if (sub == c_tangent && tangent_point->count() + tangent_plane_opt->count() != 1)
      throw UsageError("tangent needs --point or --plane");
    if (sub == c_cone && cone_height->count() + cone_apex->count() != 1)
      throw UsageError("cone-ellipse needs --height or --apex");
    tol.validate();
    Json input = Json::object();
    std::optional<Quadric> q;
    if (sub->get_option_no_throw("quadric") != nullptr) {
      q = parse_quadric(o.expr);
      input["expression"] = o.expr;
      input["normalized"] = emit_polynomial(*q);
    }
    Output res;

    if (sub == c_classify) {
      res.result = {{"class", std::string(to_string(classify(*q, tol)))}};
    } else if (sub == c_reduce) {
      const CanonicalForm cf = reduce(*q, tol);
      res.result = to_json(cf);
      const Quadric posed = transform(q->normalized(), cf.motion.inverse());
      const double mixed = std::fmax(std::fabs(posed.b()), std::fmax(std::fabs(posed.b1()), std::fabs(posed.b2())));
      res.residuals["mixed_terms"] = mixed / posed.max_abs_coefficient();
    } else if (sub == c_center) {
      const CenterResult c = center(*q, tol);
      res.result = to_json(c);
      std::optional<Vec3> p;
      if (auto* u = std::get_if<UniquePoint>(&c)) p = u->point;
      if (auto* l = std::get_if<LineOfCenters>(&c)) p = l->line.point();
      if (auto* pl = std::get_if<PlaneOfCenters>(&c)) p = pl->plane.offset() * pl->plane.normal();
      if (p) res.residuals["center_equations"] = norm(gradient(*q, *p)) / (2.0 * q->max_abs_coefficient() * (1.0 + norm(*p)));
    } else if (sub == c_section) {
      const Plane3 pl = parse_plane(o.plane);
      input["plane"] = to_json(pl);
      const PlanarConic c = plane_section(*q, pl, tol);
      res.result = to_json(c);
      if (has_real_points(c.cls)) res.residuals["section_points"] = max_residual(*q, sample_conic(c, kConicSamples));
    } else if (sub == c_parallel) {
      const Vec3 dir = parse_vec(o.direction, "--direction");
      const std::vector<double> offsets = parse_numbers(o.offsets, 0, "--offsets");
      input["direction"] = to_json(dir);
      input["offsets"] = offsets;
      const ParallelSectionsReport rep = parallel_sections_report(*q, dir, offsets, tol);
      Json sections = Json::array();
      for (const SectionEntry& s : rep.sections) {
        Json e = {{"offset", s.offset}, {"class", std::string(to_string(s.conic.cls))}, {"degenerate", s.degenerate}};
        if (s.invariant)
          e["invariant"] = {{"family", std::string(to_string(s.invariant->family))}, {"ratio", s.invariant->ratio}};
        else
          e["invariant"] = nullptr;
        sections.push_back(e);
      }
      res.result = {{"direction", to_json(rep.direction)},
                    {"sections", sections},
                    {"degenerate_offsets", rep.degenerate_offsets},
                    {"common", {{"family", std::string(to_string(rep.common.family))}, {"ratio", rep.common.ratio}}},
                    {"all_similar", rep.all_similar}};
      res.residuals["max_quadratic_deviation"] = rep.max_quadratic_deviation;
    } else if (sub == c_circular) {
      const CircularFamilies fam = circular_section_planes(*q, tol);
      static constexpr const char* kKinds[] = {"TwoFamilies", "Revolution", "Sphere"};
      Json families = Json::array();
      Json defects = Json::array();
      for (const CircularFamily& f : fam.families) {
        families.push_back({{"normal", to_json(f.normal)}, {"centers", to_json(f.centers)}});
        defects.push_back(circle_defect(plane_section(*q, Plane3::through(fam.center, f.normal), tol)));
      }
      res.result = {{"kind", kKinds[static_cast<int>(fam.kind)]}, {"center", to_json(fam.center)}, {"families", families}};
      res.residuals["circle_defect"] = defects;
    } else if (sub == c_rulings) {
      const Vec3 p = parse_vec(o.point, "--point");
      input["point"] = to_json(p);
      const RulingPair rp = rulings_through_point(reduce(*q, tol), p, tol);
      res.result = {{"family_a", to_json(rp.family_a)}, {"family_b", to_json(rp.family_b)}};
      res.residuals["family_a"] = max_residual(*q, line_samples(rp.family_a, kLineSamples));
      res.residuals["family_b"] = max_residual(*q, line_samples(rp.family_b, kLineSamples));
    } else if (sub == c_tangent) {
      if (!o.point.empty()) {
        const Vec3 p = parse_vec(o.point, "--point");
        input["point"] = to_json(p);
        res.result = {{"plane", to_json(tangent_plane(*q, p, tol))}};
        res.residuals["point"] = relative_residual(*q, p);
      } else {
        const Plane3 pl = parse_plane(o.plane);
        input["plane"] = to_json(pl);
        const TangencyReport rep = plane_touches_at_one_point(*q, pl, tol);
        res.result = {{"contact", to_json(rep.contact)},
                      {"plane", to_json(rep.plane)},
                      {"unique", rep.unique},
                      {"axial_plane_perpendicular",
                       rep.axial_plane_perpendicular ? Json(*rep.axial_plane_perpendicular) : Json(nullptr)}};
        res.residuals["contact"] = rep.residual;
      }
    } else if (sub == c_monge) {
      input["seed"] = o.seed;
      const Sphere s = monge_sphere(*q, tol);
      const TangentTriple t = perpendicular_tangent_triple(*q, o.seed, tol);
      Json planes = Json::array(), contacts = Json::array();
      for (int i = 0; i < 3; ++i) {
        planes.push_back(to_json(t.planes[i]));
        contacts.push_back(to_json(t.contacts[i]));
      }
      const double dist = norm(t.point - s.center);
      res.result = {{"center", to_json(s.center)},
                    {"radius", s.radius},
                    {"triple", {{"planes", planes}, {"contacts", contacts}, {"point", to_json(t.point)}, {"distance", dist}}}};
      res.residuals["distance_vs_radius"] = std::fabs(dist - s.radius) / s.radius;
      std::vector<Vec3> pts(t.contacts.begin(), t.contacts.end());
      res.residuals["contacts"] = max_residual(*q, pts);
    } else if (sub == c_samples) {
      const CanonicalForm cf = reduce(*q, tol);
      std::vector<Vec3> pts;
      if (!o.plane.empty()) {
        pts = sample_conic(plane_section(*q, parse_plane(o.plane), tol), o.samples);
      } else if (!o.point.empty()) {
        const RulingPair rp = rulings_through_point(cf, parse_vec(o.point, "--point"), tol);
        pts = line_samples(o.family == "a" ? rp.family_a : rp.family_b, o.samples);
      } else {
        pts = surface_samples(cf, o.samples);
      }
      return {kOk, format_csv(pts), ""};
    } else if (sub == c_wren) {
      input["a"] = o.a;
      input["b"] = o.b;
      input["z0"] = o.z0;
      const WrenConstruction w = wren_generator(o.a, o.b, o.z0);
      res.result = {{"A", to_json(w.a_point)}, {"G", to_json(w.g)}, {"H", to_json(w.h)}, {"N", to_json(w.n)},
                    {"GH", w.gh},         {"line", to_json(w.line)}};
      const Quadric hyperboloid(1 / (o.a * o.a), 1 / (o.a * o.a), -1 / (o.b * o.b), 0, 0, 0, 0, 0, 0, 1);
      const Vec3 asymptote = normalized({o.a, 0.0, o.b});
      res.residuals["line"] = max_residual(hyperboloid, line_samples(w.line, kLineSamples));
      res.residuals["asymptote_angle"] =
          std::atan2(norm(cross(w.line.direction(), asymptote)), std::fabs(dot(w.line.direction(), asymptote)));
    } else if (sub == c_cone) {
      const auto semi = parse_numbers(o.semi, 2, "--semi");
      const Ellipse3 e{parse_vec(o.center, "--center"), {1, 0, 0}, {0, 1, 0}, semi[0], semi[1]};
      input["ellipse"] = to_json(e);
      ConeConstruction c = [&] {
        if (cone_height->count() > 0) {
          input["height"] = o.height;
          return cone_through_ellipse_perpendicular(e, o.height, tol);
        }
        const Vec3 apex = parse_vec(o.apex, "--apex");
        input["apex"] = to_json(apex);
        return cone_through_ellipse_oblique(e, apex, tol);
      }();
      Json right = nullptr;
      if (c.cone.right) right = {{"axis", to_json(c.cone.right->axis)}, {"half_angle", c.cone.right->half_angle}};
      res.result = {{"case", cone_height->count() > 0 ? "perpendicular" : "oblique"},
                    {"vertex", to_json(c.cone.vertex)},
                    {"cone", emit_polynomial(c.cone.surface.normalized())},
                    {"right", right},
                    {"base", to_json(c.base)},
                    {"chord_start", to_json(c.chord_start)},
                    {"chord_end", to_json(c.chord_end)},
                    {"circular_input", c.circular_input},
                    {"circle_branch", c.circle_branch}};
      res.residuals["ellipse_on_cone"] = c.max_residual;
    } else {
      ConoidSpec spec;
      Clause clause = Clause::Parallel;
      if (sub == c_cs11) {
        spec = {conoid_kind_from_string(o.kind), o.latus, o.a, o.b};
        clause = clause_from_string(o.clause);
      } else if (sub == c_cs12) {
        spec = {ConoidKind::Ortoconoide, o.latus, 0.0, 0.0};
      } else {
        spec = {ConoidKind::Ambliconoide, 0.0, o.a, o.b};
      }
      const Plane3 pl = parse_plane(o.plane);
      input["conoid"] = {{"kind", std::string(to_string(spec.kind))}, {"latus", spec.latus}, {"a", spec.a}, {"b", spec.b}};
      input["plane"] = to_json(pl);
      if (sub == c_cs11) input["clause"] = std::string(to_string(clause));
      const SectionVerdict v = sub == c_cs11   ? verify_cs11(spec, pl, clause, tol)
                               : sub == c_cs12 ? verify_cs12(spec, pl, tol)
                                               : verify_cs13(spec, pl, tol);
      res.result = to_json(v);
      res.residuals["axis_location"] = v.axis_residual;
      if (v.similarity) res.residuals["similarity"] = v.similarity_residual;
      if (v.latus) res.residuals["latus"] = v.latus_residual;
      if (v.major_axis) res.residuals["major_axis"] = v.major_residual;
      if (v.minor_axis) res.residuals["minor_axis"] = v.minor_residual;
      if (v.ratio) res.residuals["ratio"] = v.ratio_residual;
    }

    const Json report = {{"command", name},
                         {"input", input},
                         {"result", res.result},
                         {"residuals", res.residuals},
                         {"tolerance", to_json(tol)}};
    return {kOk, o.format == "json" ? render_json(report) : render_text(report), ""};
  } catch (const UsageError& e) {
    return failure(kUsage, "usage", "InvalidArgument", e.what());
  } catch (const ParseError& e) {
    return failure(kParse, "parse", std::string(to_string(e.kind())),
                   "position " + std::to_string(e.position()) + ": " + e.detail());
  } catch (const GeometryError& e) {
    return failure(kDomain, "domain", std::string(to_string(e.code())), e.what());
  }
}

}  // namespace quadric::cli
