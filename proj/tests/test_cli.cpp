#include <cmath>
#include <cstdlib>
#include <random>
#include <sys/wait.h>

#include "doctest.h"
#include "golden_support.hpp"
#include "json.hpp"
#include "quadric/canonical.hpp"
#include "quadric/cli/app.hpp"
#include "quadric/cli/parser.hpp"
#include "quadric/cli/samples.hpp"
#include "quadric/sections.hpp"
#include "support.hpp"

using namespace quadric;
using namespace quadric::cli;

namespace {

ParseErrorKind parse_kind(const std::string& text) {
  try {
    parse_quadric(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  FAIL("expected a parse error for " << text);
  return ParseErrorKind::SyntaxError;
}

std::size_t parse_position(const std::string& text) {
  try {
    parse_quadric(text);
  } catch (const ParseError& e) {
    return e.position();
  }
  return std::string::npos;
}

}  // namespace

TEST_CASE("parser examples") {
  CHECK(parse_quadric("x^2 + y^2 + z^2 = 1") == Quadric(1, 1, 1, 0, 0, 0, 0, 0, 0, 1));
  CHECK(classify(parse_quadric("x^2 + 2*x*y + y^2 + z - 1")) == QuadricClass::ParabolicCylinder);
  CHECK(parse_kind("x^3 + y") == ParseErrorKind::DegreeError);
}

TEST_CASE("parser grammar") {
  // Implicit products, fractions and division by numbers.
  CHECK(parse_quadric("3 x y") == Quadric(0, 0, 0, 0, 0, 1.5, 0, 0, 0, -0.0));
  CHECK(parse_quadric("2x") == Quadric(0, 0, 0, 0, 0, 0, 1, 0, 0, -0.0));
  CHECK(parse_quadric("x^2/9 = 1").a() == 1.0 / 9);
  CHECK(parse_quadric("3/4 z^2 = 0").a2() == 0.75);
  CHECK(parse_quadric("x*x").a() == 1.0);
  CHECK(parse_quadric("  x ^ 2  +y*  z=  -2 ") == parse_quadric("x^2+y*z=-2"));
  CHECK(parse_quadric("z = x^2").c2() == 0.5);
  CHECK(parse_quadric("1 = x").k() == -1.0);
  CHECK(parse_quadric("x^2 + x^2").a() == 2.0);
  CHECK(parse_quadric("1.5e-1 y^2").a1() == 0.15);
  CHECK(parse_quadric("y^0 x^2").a() == 1.0);

  CHECK(parse_kind("2xy") == ParseErrorKind::SyntaxError);
  CHECK(parse_kind("xy") == ParseErrorKind::SyntaxError);
  CHECK(parse_kind("x^2 + w") == ParseErrorKind::UnknownVariable);
  CHECK(parse_kind("sin x") == ParseErrorKind::UnknownVariable);
  CHECK(parse_kind("x y z") == ParseErrorKind::DegreeError);
  CHECK(parse_kind("x^2 y") == ParseErrorKind::DegreeError);
  CHECK(parse_kind("") == ParseErrorKind::SyntaxError);
  CHECK(parse_kind("x^2 = = 1") == ParseErrorKind::SyntaxError);
  CHECK(parse_kind("x^2 = 1 = 2") == ParseErrorKind::SyntaxError);
  CHECK(parse_kind("x / y") == ParseErrorKind::SyntaxError);
  CHECK(parse_kind("x / 0") == ParseErrorKind::SyntaxError);
  CHECK(parse_kind("1e400 x") == ParseErrorKind::SyntaxError);
  CHECK(parse_kind("2 3 x") == ParseErrorKind::SyntaxError);
  CHECK(parse_kind("x^y") == ParseErrorKind::SyntaxError);
  CHECK(parse_kind("(x)") == ParseErrorKind::SyntaxError);

  CHECK(parse_position("x^2 + w") == 6);
  CHECK(parse_position("x^2 + y^2 +") == 11);
  CHECK(parse_position("1 + 2xy") == 5);

  try {
    parse_quadric("x - x");
    FAIL("expected AllZero");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::AllZero);
  }
}

TEST_CASE("parser corpus round-trips exactly") {
  const auto corpus = golden::load_corpus(QUADRIC_CORPUS);
  REQUIRE(corpus.size() == 50);
  int ok = 0;
  for (const std::string& s : corpus) {
    const Quadric q = parse_quadric(s);
    const std::string emitted = emit_polynomial(q);
    const Quadric r = parse_quadric(emitted);
    CHECK_MESSAGE(q.coefficients() == r.coefficients(), s << " -> " << emitted);
    CHECK(emit_polynomial(r) == emitted);
    if (q.coefficients() == r.coefficients()) ++ok;
  }
  CHECK(ok == 50);
}

TEST_CASE("emitted polynomials round-trip random coefficients") {
  std::mt19937_64 rng(90);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 500; ++i) {
    std::array<double, 10> c;
    for (double& x : c) x = u(rng) * std::pow(10.0, std::uniform_int_distribution<int>(-12, 12)(rng));
    if (i % 3 == 0) c[i % 10] = 0.0;
    const Quadric q = Quadric::from_coefficients(c);
    CHECK(parse_quadric(emit_polynomial(q)).coefficients() == q.coefficients());
  }
}

TEST_CASE("documented command examples") {
  RunResult r = run({"classify", "x^2+y^2-z^2=1"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("result.class: HyperboloidOneSheet\n") != std::string::npos);

  r = run({"monge", "x^2/9+y^2/4+z^2=1", "--format", "json"});
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["result"]["radius"].get<double>() == doctest::Approx(std::sqrt(14.0)).epsilon(1e-12));

  r = run({"classify", "x^3"});
  CHECK(r.exit_code == 3);
  CHECK(r.out.empty());
}

TEST_CASE("exit codes and diagnostics") {
  for (const auto& [args, code] : golden::exit_code_table()) {
    const RunResult r = run(args);
    CHECK_MESSAGE(r.exit_code == code, (args.empty() ? std::string("<none>") : args[0]));
    if (code != 0) {
      // One line: "error: <category>: <Code>: <message>".
      CHECK(r.err.rfind("error: ", 0) == 0);
      CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
      const std::string category = code == 2 ? "usage" : code == 3 ? "parse" : "domain";
      CHECK(r.err.rfind("error: " + category + ": ", 0) == 0);
    }
  }
  const RunResult domain = run({"monge", "x^2+y^2-z^2=1"});
  CHECK(domain.err.rfind("error: domain: NotEllipsoid: ", 0) == 0);
  const RunResult help = run({"--help"});
  CHECK(help.exit_code == 0);
  CHECK(help.out.find("classify") != std::string::npos);
}

TEST_CASE("the executable returns the same exit codes") {
  const std::string exe = QUADRIC_EXE;
  const auto status = [&](const std::string& args) {
    const int raw = std::system((exe + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("classify 'x^2+y^2-z^2=1'") == 0);
  CHECK(status("") == 2);
  CHECK(status("classify 'x^3'") == 3);
  CHECK(status("monge 'x^2+y^2-z^2=1'") == 4);
}

TEST_CASE("json reports round-trip and text reports are stable") {
  for (const auto& c : golden::load_cases(QUADRIC_GOLDEN_DIR)) {
    std::vector<std::string> args = c.args;
    if (args.empty() || args[0] == "samples") continue;
    args.push_back("--format");
    args.push_back("json");
    const RunResult r = run(args);
    if (r.exit_code != 0) continue;
    const auto j = nlohmann::ordered_json::parse(r.out);
    CHECK_MESSAGE(j.dump(2) + "\n" == r.out, c.name);
    CHECK(nlohmann::ordered_json::parse(j.dump(2)) == j);
    // Numbers survive the text form too.
    CHECK(run(c.args).out == run(c.args).out);
  }
}

TEST_CASE("every numeric verdict carries its residual") {
  const RunResult r = run({"verify-cs13", "--a", "1", "--b", "1", "--plane=-0.2,0,1,2", "--format", "json"});
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"axis_location", "similarity", "latus", "major_axis", "minor_axis", "ratio"}) {
    const auto& v = j["result"][key];
    if (v.is_null()) continue;
    CHECK(v.contains("residual"));
    CHECK(j["residuals"].contains(key));
  }
}

TEST_CASE("sample emission") {
  // Unit circle section, n = 4.
  const PlanarConic circle = plane_section(parse_quadric("x^2 + y^2 + z^2 = 1"), Plane3({0, 0, 1}, 0));
  const auto pts = sample_conic(circle, 4);
  REQUIRE(pts.size() == 4);
  for (const Vec3& p : pts) {
    CHECK(std::fabs(p.x * p.x + p.y * p.y - 1) < 1e-12);
    CHECK(p.z == doctest::Approx(0.0));
  }

  // Ruling line, n = 2: two points on the surface.
  const RunResult ruling = run({"samples", "x^2+y^2-z^2=1", "--point", "1,0,0", "--samples", "2"});
  REQUIRE(ruling.exit_code == 0);
  std::istringstream rows(ruling.out);
  std::string line;
  std::getline(rows, line);
  CHECK(line == "x,y,z");
  int count = 0;
  while (std::getline(rows, line)) {
    double x, y, z;
    REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &y, &z) == 3);
    CHECK(std::fabs(x * x + y * y - z * z - 1) < 1e-12);
    ++count;
  }
  CHECK(count == 2);

  // Empty conic.
  const RunResult empty = run({"samples", "x^2+y^2+z^2=1", "--plane", "0,0,1,5"});
  CHECK(empty.exit_code == 4);
  CHECK(empty.err.find("NoParametrization") != std::string::npos);

  CHECK(format_csv({{0.1, -2, 1e-30}}) == "x,y,z\n0.10000000000000001,-2,1.0000000000000001e-30\n");
}

TEST_CASE("surface samples lie on the surface for every real class") {
  std::mt19937_64 rng(91);
  const std::vector<Quadric> canon = {
      Quadric(1.0 / 9, 0.25, 1, 0, 0, 0, 0, 0, 0, 1),   Quadric(1, 0.5, -2, 0, 0, 0, 0, 0, 0, 1),
      Quadric(-1, -0.5, 2, 0, 0, 0, 0, 0, 0, 1),         Quadric(1, 0.5, -2, 0, 0, 0, 0, 0, 0, 0),
      Quadric(1, 3, 0, 0, 0, 0, 0, 0, -0.5, 0),          Quadric(1, -3, 0, 0, 0, 0, 0, 0, -0.5, 0),
      Quadric(1, 0.25, 0, 0, 0, 0, 0, 0, 0, 1),          Quadric(1, -0.25, 0, 0, 0, 0, 0, 0, 0, 1),
      Quadric(2, 0, 0, 0, 0, 0, 0, 0, -0.5, 0),          Quadric(1, -4, 0, 0, 0, 0, 0, 0, 0, 0),
      Quadric(1, 4, 0, 0, 0, 0, 0, 0, 0, 0),             Quadric(1, 0, 0, 0, 0, 0, 0, 0, 0, 4),
      Quadric(1, 0, 0, 0, 0, 0, 0, 0, 0, 0),             Quadric(0, 0, 0, 0, 0, 0, 1, 2, 3, 1),
  };
  for (const Quadric& base : canon) {
    for (int rep = 0; rep < 5; ++rep) {
      const Quadric q = transform(base, testing_support::random_motion(rng));
      const CanonicalForm cf = reduce(q);
      const auto pts = surface_samples(cf, 7);
      CHECK(pts.size() >= 7);
      for (const Vec3& p : pts) CHECK_MESSAGE(relative_residual(q, p) < 1e-8, to_string(cf.cls));
    }
  }
  for (const Quadric& empty : {Quadric(1, 1, 1, 0, 0, 0, 0, 0, 0, -1), Quadric(1, 1, -1, 0, 0, 0, 0, 0, 0, 0) /*cone*/}) {
    const CanonicalForm cf = reduce(empty);
    if (cf.cls == QuadricClass::Cone) continue;
    try {
      surface_samples(cf, 4);
      FAIL("expected NoParametrization");
    } catch (const GeometryError& e) {
      CHECK(e.code() == ErrorCode::NoParametrization);
    }
  }
  try {
    surface_samples(reduce(Quadric(1, 1, 1, 0, 0, 0, 0, 0, 0, 0)), 4);
    FAIL("expected NoParametrization");
  } catch (const GeometryError& e) {
    CHECK(e.code() == ErrorCode::NoParametrization);
  }
}

TEST_CASE("golden reports") {
  const bool update = std::getenv("QUADRIC_UPDATE_GOLDEN") != nullptr;
  const golden::Outcome o = golden::check_all(QUADRIC_GOLDEN_DIR, update);
  CHECK(o.total >= 10);
  for (const std::string& name : o.mismatched) FAIL_CHECK("golden mismatch: " << name);
  for (const std::string& name : o.unstable) FAIL_CHECK("unstable output: " << name);
}
