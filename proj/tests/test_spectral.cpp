#include <algorithm>
#include <cmath>
#include <random>
#include <variant>

#include "doctest.h"
#include "quadric/spectral.hpp"
#include "support.hpp"

using namespace quadric;
using testing_support::random_quadric;
using testing_support::random_rotation;
using testing_support::random_vec;
using testing_support::to_eigen;

namespace {

double factorization_residual(const Mat3& m, const SpectralData& s) {
  const Mat3 rebuilt = s.frame * Mat3::diagonal(s.eigenvalues) * s.frame.transposed();
  return max_abs(rebuilt - m);
}

Mat3 symmetric_from(const Vec3& eig, const Mat3& r) { return r * Mat3::diagonal(eig) * r.transposed(); }

}  // namespace

TEST_CASE("diagonal input gives the identity frame") {
  const SpectralData s = eigen_symmetric3(Mat3::diagonal({3, 2, 1}));
  CHECK(s.eigenvalues == Vec3{3, 2, 1});
  CHECK(max_abs(s.frame - Mat3::identity()) < 1e-15);
  CHECK(s.rank == 3);
  CHECK(s.n_pos == 3);

  const SpectralData unsorted = eigen_symmetric3(Mat3::diagonal({1, 3, 2}));
  CHECK(unsorted.eigenvalues == Vec3{3, 2, 1});
  CHECK(unsorted.frame.determinant() == doctest::Approx(1.0));
}

TEST_CASE("rank-one block plus z") {
  Mat3 m{};
  m.m = {{{1, 1, 0}, {1, 1, 0}, {0, 0, 0}}};
  SpectralData s = eigen_symmetric3(m);
  CHECK(s.eigenvalues.x == doctest::Approx(2.0));
  CHECK(std::fabs(s.eigenvalues.y) < 1e-15);
  CHECK(std::fabs(s.eigenvalues.z) < 1e-15);
  CHECK(s.rank == 1);
  CHECK(s.n_zero == 2);

  m(2, 2) = 1.0;
  s = eigen_symmetric3(m);
  CHECK(s.eigenvalues.x == doctest::Approx(2.0));
  CHECK(s.eigenvalues.y == doctest::Approx(1.0));
  CHECK(std::fabs(s.eigenvalues.z) < 1e-15);
  CHECK(s.n_pos == 2);
  CHECK(s.n_zero == 1);
}

TEST_CASE("eigen decomposition agrees with an independent solver") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 300; ++trial) {
    Mat3 m{};
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) m(i, j) = m(j, i) = u(rng);
    const SpectralData s = eigen_symmetric3(m);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> oracle(to_eigen(m));
    const auto ev = oracle.eigenvalues();  // ascending
    CHECK(s.eigenvalues.x == doctest::Approx(ev(2)).epsilon(1e-12));
    CHECK(s.eigenvalues.y == doctest::Approx(ev(1)).epsilon(1e-12));
    CHECK(s.eigenvalues.z == doctest::Approx(ev(0)).epsilon(1e-12));
    CHECK(s.eigenvalues.x >= s.eigenvalues.y);
    CHECK(s.eigenvalues.y >= s.eigenvalues.z);
    CHECK(factorization_residual(m, s) < 1e-12);
    CHECK(s.frame.determinant() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(max_abs(s.frame.transposed() * s.frame - Mat3::identity()) < 1e-12);
    CHECK(s.n_pos + s.n_neg + s.n_zero == 3);
  }
}

TEST_CASE("construct then decompose") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 200; ++trial) {
    const Vec3 eig = random_vec(rng, -5, 5);
    const Mat3 r = random_rotation(rng);
    const SpectralData s = eigen_symmetric3(symmetric_from(eig, r));
    double sorted[3] = {eig.x, eig.y, eig.z};
    std::sort(sorted, sorted + 3, [](double a, double b) { return a > b; });
    for (int i = 0; i < 3; ++i) CHECK(std::fabs(s.eigenvalues[i] - sorted[i]) < 1e-10);

    // Rotation equivariance.
    const Mat3 r2 = random_rotation(rng);
    const SpectralData s2 = eigen_symmetric3(r2 * symmetric_from(eig, r) * r2.transposed());
    for (int i = 0; i < 3; ++i) CHECK(std::fabs(s2.eigenvalues[i] - s.eigenvalues[i]) < 1e-10);
  }
}

TEST_CASE("near-double eigenvalues still factor accurately") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const double base = std::uniform_real_distribution<double>(0.5, 2.0)(rng);
    const Vec3 eig{base, base + 1e-7, -0.3};
    const Mat3 m = symmetric_from(eig, random_rotation(rng));
    const SpectralData s = eigen_symmetric3(m);
    CHECK(factorization_residual(m, s) < 1e-9 * 2.0);
    CHECK(s.eigenvalues.x - s.eigenvalues.y == doctest::Approx(1e-7).epsilon(1e-6));
  }
}

TEST_CASE("frame sign convention is deterministic") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    const Mat3 m = symmetric_from(random_vec(rng, -3, 3), random_rotation(rng));
    const SpectralData s = eigen_symmetric3(m);
    for (int c = 0; c < 2; ++c) {
      const Vec3 col = s.frame.column(c);
      int first = 0;
      while (first < 3 && std::fabs(col[first]) <= 1e-12) ++first;
      REQUIRE(first < 3);
      CHECK(col[first] > 0.0);
    }
    const SpectralData again = eigen_symmetric3(m);
    CHECK(again.frame.m == s.frame.m);
  }
}

TEST_CASE("asymmetric input is rejected") {
  Mat3 m = Mat3::identity();
  m(0, 1) = 1e-3;
  CHECK_THROWS_AS(eigen_symmetric3(m), GeometryError);
}

TEST_CASE("iteration cap reports NoConvergence") {
  std::mt19937_64 rng(25);
  const Mat3 m = symmetric_from({3, 1, -2}, random_rotation(rng));
  Tolerance tight;
  tight.iter_max = 10;
  CHECK_NOTHROW(eigen_symmetric3(m, tight));
  detail::SquareMatrix<3> a{}, v{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = m(i, j);
  CHECK(detail::jacobi_sweeps<3>(a, v, 1) == -1);
}

TEST_CASE("characteristic cubic") {
  const CubicCoeffs sphere = characteristic_cubic(Quadric(1, 1, 1, 0, 0, 0, 0, 0, 0, 1));
  CHECK(sphere.c3 == 1.0);
  CHECK(sphere.c2 == 3.0);
  CHECK(sphere.c1 == 3.0);
  CHECK(sphere.c0 == 1.0);

  const CubicCoeffs d = characteristic_cubic(Quadric(1, 2, 3, 0, 0, 0, 0, 0, 0, 1));
  for (double root : {-1.0, -0.5, -1.0 / 3.0}) CHECK(std::fabs(d(root)) < 1e-14);

  const CubicCoeffs cyl = characteristic_cubic(Quadric(1, 1, 0, 0, 0, 0, 0, 0, 0, 1));
  CHECK(cyl.c3 == 0.0);

  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 200; ++trial) {
    const Quadric q = random_quadric(rng);
    const SpectralData s = eigen_symmetric3(q.quadratic_part());
    const CubicCoeffs c = characteristic_cubic(q);
    const double scale = std::fabs(c.c3) + std::fabs(c.c2) + std::fabs(c.c1) + 1.0;
    for (int i = 0; i < 3; ++i) {
      const double lam = s.eigenvalues[i];
      if (std::fabs(lam) < 1e-3) continue;
      const double root = -1.0 / lam;
      // Root times eigenvalue is -1 by construction; the cubic must vanish there.
      CHECK(root * lam == doctest::Approx(-1.0));
      const double mag = std::fmax(1.0, std::pow(std::fabs(root), 3));
      CHECK(std::fabs(c(root)) < 1e-8 * scale * mag);
    }
  }
}

TEST_CASE("centers") {
  const Quadric moved = transform(Quadric(1, 1, 1, 0, 0, 0, 0, 0, 0, 1), RigidMotion::translation({-1, -2, -3}));
  const CenterResult c = center(moved);
  REQUIRE(std::holds_alternative<UniquePoint>(c));
  CHECK(norm(std::get<UniquePoint>(c).point - Vec3{1, 2, 3}) < 1e-12);

  CHECK(std::holds_alternative<NoCenter>(center(Quadric(1, 1, 0, 0, 0, 0, 0, 0, -0.5, 0))));

  const CenterResult cyl = center(Quadric(1, 1, 0, 0, 0, 0, 0, 0, 0, 1));
  REQUIRE(std::holds_alternative<LineOfCenters>(cyl));
  const Line3& axis = std::get<LineOfCenters>(cyl).line;
  CHECK(axis.distance({0, 0, 0}) < 1e-12);
  CHECK(std::fabs(std::fabs(axis.direction().z) - 1.0) < 1e-12);

  const CenterResult planes = center(Quadric(1, 0, 0, 0, 0, 0, -2, 0, 0, 1));
  REQUIRE(std::holds_alternative<PlaneOfCenters>(planes));
  CHECK(std::get<PlaneOfCenters>(planes).plane.signed_distance({2, 5, -7}) == doctest::Approx(0.0));

  CHECK(std::holds_alternative<EverywhereCenter>(center(Quadric(0, 0, 0, 0, 0, 0, 0, 0, 0, 1))));
}

TEST_CASE("chord midpoints lie on the diametral plane") {
  std::mt19937_64 rng(27);
  int tested = 0;
  for (int trial = 0; trial < 40 && tested < 10; ++trial) {
    const Quadric q = random_quadric(rng);
    const CenterResult c = center(q);
    if (!std::holds_alternative<UniquePoint>(c)) continue;
    ++tested;
    const Vec3 ctr = std::get<UniquePoint>(c).point;
    const Vec3 dir = normalized(random_vec(rng));
    const Mat3 Q = q.quadratic_part();
    const double qa = dot(dir, Q * dir);
    if (std::fabs(qa) < 1e-3) continue;
    // Diametral plane conjugate to dir: (Q dir) . (x - center) = 0.
    const Vec3 qn = Q * dir;
    int chords = 0;
    for (int i = 0; i < 2000 && chords < 200; ++i) {
      const Vec3 p0 = random_vec(rng, -3, 3);
      const double qb = dot(gradient(q, p0), dir), qc = evaluate(q, p0);
      const double disc = qb * qb - 4 * qa * qc;
      if (disc <= 0) continue;
      ++chords;
      const Vec3 mid = p0 + (-qb / (2 * qa)) * dir;
      CHECK(std::fabs(dot(qn, mid - ctr)) / norm(qn) < 1e-7);
    }
  }
  CHECK(tested > 0);
}

TEST_CASE("coefficient matrix norm matches the 4x4 spectrum") {
  std::mt19937_64 rng(28);
  for (int trial = 0; trial < 100; ++trial) {
    const Quadric q = random_quadric(rng);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> oracle(testing_support::coefficient_matrix(q));
    const double expected = oracle.eigenvalues().cwiseAbs().maxCoeff();
    CHECK(coefficient_matrix_norm(q) == doctest::Approx(expected).epsilon(1e-12));
  }
}
