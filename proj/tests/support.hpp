#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <random>

#include "quadric/core.hpp"

namespace testing_support {

using quadric::Mat3;
using quadric::Quadric;
using quadric::RigidMotion;
using quadric::Vec3;

inline Vec3 random_vec(std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  return {u(rng), u(rng), u(rng)};
}

// Rotation from the QR factorization of a Gaussian matrix, sign-fixed to det +1.
inline Mat3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = g(rng);
  Eigen::HouseholderQR<Eigen::Matrix3d> qr(m);
  Eigen::Matrix3d q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) *= -1.0;
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = q(i, j);
  return r;
}

inline RigidMotion random_motion(std::mt19937_64& rng, double shift = 2.0) {
  return RigidMotion(random_rotation(rng), random_vec(rng, -shift, shift));
}

inline Quadric random_quadric(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::array<double, 10> c{};
  for (double& x : c) x = u(rng);
  return Quadric::from_coefficients(c);
}

// Ellipsoid with semi-axes a, b, c in a random pose (returned pose maps
// canonical coordinates to world coordinates).
inline Quadric posed_central(double pa, double pb, double pc, double k, const RigidMotion& pose) {
  const Quadric canon(pa, pb, pc, 0, 0, 0, 0, 0, 0, k);
  return quadric::transform(canon, pose.inverse());
}

inline Eigen::Matrix3d to_eigen(const Mat3& m) {
  Eigen::Matrix3d e;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e(i, j) = m(i, j);
  return e;
}

inline Eigen::Matrix4d coefficient_matrix(const Quadric& q) {
  Eigen::Matrix4d m;
  m << q.a(), q.b2(), q.b1(), q.c(), q.b2(), q.a1(), q.b(), q.c1(), q.b1(), q.b(), q.a2(), q.c2(), q.c(), q.c1(),
      q.c2(), -q.k();
  return m;
}

// Largest coefficient deviation after scaling both to unit max-abs and fixing
// the overall sign.
inline double coefficient_distance(const Quadric& p, const Quadric& q) {
  const auto a = p.normalized().coefficients();
  const auto b = q.normalized().coefficients();
  double plus = 0.0, minus = 0.0;
  for (int i = 0; i < 10; ++i) {
    plus = std::fmax(plus, std::fabs(a[i] - b[i]));
    minus = std::fmax(minus, std::fabs(a[i] + b[i]));
  }
  return std::fmin(plus, minus);
}

// Null vector of the design matrix of quadric monomials through the points.
template <class Points>
inline Quadric fit_quadric(const Points& pts) {
  Eigen::MatrixXd d(static_cast<int>(pts.size()), 10);
  int r = 0;
  for (const Vec3& p : pts) {
    d.row(r++) << p.x * p.x, p.y * p.y, p.z * p.z, 2 * p.y * p.z, 2 * p.z * p.x, 2 * p.x * p.y, 2 * p.x, 2 * p.y,
        2 * p.z, -1.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(d, Eigen::ComputeFullV);
  const Eigen::VectorXd v = svd.matrixV().col(9);
  std::array<double, 10> c{};
  for (int i = 0; i < 10; ++i) c[i] = v(i);
  return Quadric::from_coefficients(c);
}

}  // namespace testing_support
