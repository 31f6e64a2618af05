// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <complex>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cps {

using cplx = std::complex<double>;

inline constexpr double algebra_tolerance = 1e-10;

enum class GroupFamily { u1, su, so13, gl };

/// Matrix group label; n is the size of the defining matrices.
struct GroupTag {
  GroupFamily family = GroupFamily::u1;
  int n = 1;

  static GroupTag u1() { return {GroupFamily::u1, 1}; }
  static GroupTag su(int n) { return {GroupFamily::su, n}; }
  static GroupTag so13() { return {GroupFamily::so13, 4}; }
  static GroupTag gl4() { return {GroupFamily::gl, 4}; }
  static GroupTag parse(const std::string& name);

  std::string name() const;
  int algebra_dimension() const;
  bool operator==(const GroupTag&) const = default;
};

enum class RepTag { none, fundamental, phase };
RepTag parse_rep(const std::string& name);
std::string rep_name(RepTag rep);

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Lie algebra element in the defining representation.
struct AlgebraValue {
  GroupTag group;
  CMatrix matrix;

  static AlgebraValue zero(GroupTag g);
};

/// Group element in the defining representation.
struct GroupValue {
  GroupTag group;
  CMatrix matrix;

  static GroupValue identity(GroupTag g);
  GroupValue inverse() const;
};

AlgebraValue operator+(const AlgebraValue& a, const AlgebraValue& b);
AlgebraValue operator*(double s, const AlgebraValue& a);
GroupValue operator*(const GroupValue& a, const GroupValue& b);

/// XY - YX.
AlgebraValue bracket(const AlgebraValue& x, const AlgebraValue& y);
GroupValue group_exp(const AlgebraValue& x);

/// Scaling and squaring with a truncated Taylor series.
template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
matrix_exp(const Eigen::MatrixBase<Derived>& x);

/// Real basis of the algebra, orthonormal for -2 Re Tr(XY) on compact
/// families and the elementary basis otherwise.
std::vector<CMatrix> algebra_basis(GroupTag g);
bool in_algebra(GroupTag g, const CMatrix& m, double tol = algebra_tolerance);
bool in_group(GroupTag g, const CMatrix& m, double tol = algebra_tolerance);
/// Nearest algebra element: anti-hermitian (traceless) part, or the
/// eta-antisymmetric part for so(1,3).
CMatrix project_to_algebra(GroupTag g, const CMatrix& m);
AlgebraValue random_algebra(GroupTag g, std::mt19937_64& rng, double scale);

/// Minkowski metric diag(+1,-1,-1,-1).
Eigen::Matrix4d minkowski();

/// Full epsilon contraction A1^{ij} A2^{kl} eps_{ijkl} with the second index
/// of each argument raised by `raise` (eta^{-1} or g^{-1}), times weight.
template <class T>
T bullet(const Eigen::Matrix<T, 4, 4>& a1, const Eigen::Matrix<T, 4, 4>& a2,
         const Eigen::Matrix4d& raise, double weight = 1.0);
double bullet(const AlgebraValue& a1, const AlgebraValue& a2);

/// Levi-Civita symbol in four dimensions with eps_{0123} = +1.
int levi_civita4(int i, int j, int k, int l);

CVector rep_apply(RepTag rep, const GroupValue& g, const CVector& v);
CVector rep_apply(RepTag rep, const AlgebraValue& x, const CVector& v);
int rep_dimension(RepTag rep, GroupTag g);

// ---------------------------------------------------------------------------

template <class Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>
matrix_exp(const Eigen::MatrixBase<Derived>& x) {
  using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic,
                            Eigen::Dynamic>;
  const Mat a = x;
  const auto n = a.rows();
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  double scaled = norm;
  while (scaled > 0.5) {
    scaled *= 0.5;
    ++squarings;
  }
  const Mat s = a / std::ldexp(1.0, squarings);
  // 0.5^19 / 19! is far below double epsilon.
  Mat term = Mat::Identity(n, n);
  Mat sum = Mat::Identity(n, n);
  for (int k = 1; k <= 18; ++k) {
    term = term * s / static_cast<double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

template <class T>
T bullet(const Eigen::Matrix<T, 4, 4>& a1, const Eigen::Matrix<T, 4, 4>& a2,
         const Eigen::Matrix4d& raise, double weight) {
  const Eigen::Matrix<T, 4, 4> u1 = a1 * raise.template cast<T>();
  const Eigen::Matrix<T, 4, 4> u2 = a2 * raise.template cast<T>();
  // Antisymmetric parts only survive the contraction.
  T acc{};
  static constexpr int pairs[6][2] = {{0, 1}, {0, 2}, {0, 3},
                                      {1, 2}, {1, 3}, {2, 3}};
  for (const auto& p : pairs) {
    const T x = u1(p[0], p[1]) - u1(p[1], p[0]);
    for (const auto& q : pairs) {
      const int s = levi_civita4(p[0], p[1], q[0], q[1]);
      if (s == 0) continue;
      acc += static_cast<double>(s) * x * (u2(q[0], q[1]) - u2(q[1], q[0]));
    }
  }
  return weight * acc;
}

}  // namespace cps
