// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "cps/lie.hpp"

#include <cmath>
#include <stdexcept>

#include "cps/error.hpp"

namespace cps {

GroupTag GroupTag::parse(const std::string& name) {
  if (name == "u1" || name == "U1") return u1();
  if (name == "so13" || name == "SO13") return so13();
  if (name == "gl4" || name == "GL4") return gl4();
  if (name.size() >= 3 && (name.rfind("su", 0) == 0 || name.rfind("SU", 0) == 0)) {
    const int n = std::stoi(name.substr(2));
    if (n < 2 || n > 5) throw ConfigError("su(n) supported for 2 <= n <= 5");
    return su(n);
  }
  throw ConfigError("unknown group tag: " + name);
}

std::string GroupTag::name() const {
  switch (family) {
    case GroupFamily::u1: return "u1";
    case GroupFamily::su: return "su" + std::to_string(n);
    case GroupFamily::so13: return "so13";
    case GroupFamily::gl: return "gl4";
  }
  return "?";
}

int GroupTag::algebra_dimension() const {
  switch (family) {
    case GroupFamily::u1: return 1;
    case GroupFamily::su: return n * n - 1;
    case GroupFamily::so13: return 6;
    case GroupFamily::gl: return 16;
  }
  return 0;
}

RepTag parse_rep(const std::string& name) {
  if (name == "none" || name.empty()) return RepTag::none;
  if (name == "fundamental") return RepTag::fundamental;
  if (name == "phase") return RepTag::phase;
  throw ConfigError("unknown representation: " + name);
}

std::string rep_name(RepTag rep) {
  switch (rep) {
    case RepTag::none: return "none";
    case RepTag::fundamental: return "fundamental";
    case RepTag::phase: return "phase";
  }
  return "?";
}

AlgebraValue AlgebraValue::zero(GroupTag g) {
  return {g, CMatrix::Zero(g.n, g.n)};
}

GroupValue GroupValue::identity(GroupTag g) {
  return {g, CMatrix::Identity(g.n, g.n)};
}

GroupValue GroupValue::inverse() const { return {group, matrix.inverse()}; }

static void require_same(const GroupTag& a, const GroupTag& b) {
  if (!(a == b))
    throw PairingMismatch("group tags differ: " + a.name() + " vs " + b.name());
}

AlgebraValue operator+(const AlgebraValue& a, const AlgebraValue& b) {
  require_same(a.group, b.group);
  return {a.group, a.matrix + b.matrix};
}

AlgebraValue operator*(double s, const AlgebraValue& a) {
  return {a.group, s * a.matrix};
}

GroupValue operator*(const GroupValue& a, const GroupValue& b) {
  require_same(a.group, b.group);
  return {a.group, a.matrix * b.matrix};
}

AlgebraValue bracket(const AlgebraValue& x, const AlgebraValue& y) {
  require_same(x.group, y.group);
  return {x.group, x.matrix * y.matrix - y.matrix * x.matrix};
}

GroupValue group_exp(const AlgebraValue& x) {
  if (x.group.family == GroupFamily::u1)
    return {x.group, CMatrix::Constant(1, 1, std::exp(x.matrix(0, 0)))};
  return {x.group, matrix_exp(x.matrix)};
}

Eigen::Matrix4d minkowski() {
  return Eigen::Vector4d(1.0, -1.0, -1.0, -1.0).asDiagonal();
}

std::vector<CMatrix> algebra_basis(GroupTag g) {
  std::vector<CMatrix> out;
  const cplx I(0.0, 1.0);
  const int n = g.n;
  switch (g.family) {
    case GroupFamily::u1:
      out.push_back(CMatrix::Constant(1, 1, I));
      break;
    case GroupFamily::su: {
      // i/2 times the generalised Gell-Mann matrices.
      for (int j = 0; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          CMatrix s = CMatrix::Zero(n, n);
          s(j, k) = s(k, j) = 1.0;
          out.push_back(0.5 * I * s);
          CMatrix a = CMatrix::Zero(n, n);
          a(j, k) = -I;
          a(k, j) = I;
          out.push_back(0.5 * I * a);
        }
      for (int l = 1; l < n; ++l) {
        CMatrix d = CMatrix::Zero(n, n);
        const double c = std::sqrt(2.0 / (l * (l + 1.0)));
        for (int j = 0; j < l; ++j) d(j, j) = c;
        d(l, l) = -l * c;
        out.push_back(0.5 * I * d);
      }
      break;
    }
    case GroupFamily::so13: {
      const Eigen::Matrix4d eta = minkowski();
      for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
          Eigen::Matrix4d k = Eigen::Matrix4d::Zero();
          k(a, b) = 1.0;
          k(b, a) = -1.0;
          out.push_back((eta * k).cast<cplx>());
        }
      break;
    }
    case GroupFamily::gl:
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          CMatrix e = CMatrix::Zero(4, 4);
          e(a, b) = 1.0;
          out.push_back(e);
        }
      break;
  }
  return out;
}

CMatrix project_to_algebra(GroupTag g, const CMatrix& m) {
  switch (g.family) {
    case GroupFamily::u1:
      return CMatrix::Constant(1, 1, cplx(0.0, m(0, 0).imag()));
    case GroupFamily::su: {
      CMatrix a = 0.5 * (m - m.adjoint());
      a -= (a.trace() / static_cast<double>(g.n)) *
           CMatrix::Identity(g.n, g.n);
      return a;
    }
    case GroupFamily::so13: {
      const CMatrix eta = minkowski().cast<cplx>();
      const CMatrix k = eta * m;
      return eta * (0.5 * (k - k.transpose()));
    }
    case GroupFamily::gl:
      return m;
  }
  return m;
}

bool in_algebra(GroupTag g, const CMatrix& m, double tol) {
  if (m.rows() != g.n || m.cols() != g.n) return false;
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  const bool real_family =
      g.family == GroupFamily::so13 || g.family == GroupFamily::gl;
  if (real_family && m.imag().cwiseAbs().maxCoeff() > tol * scale) return false;
  return (m - project_to_algebra(g, m)).cwiseAbs().maxCoeff() <= tol * scale;
}

bool in_group(GroupTag g, const CMatrix& m, double tol) {
  if (m.rows() != g.n || m.cols() != g.n) return false;
  const CMatrix id = CMatrix::Identity(g.n, g.n);
  switch (g.family) {
    case GroupFamily::u1:
      return std::abs(std::abs(m(0, 0)) - 1.0) <= tol;
    case GroupFamily::su:
      return (m.adjoint() * m - id).cwiseAbs().maxCoeff() <= tol &&
             std::abs(m.determinant() - 1.0) <= tol;
    case GroupFamily::so13: {
      const CMatrix eta = minkowski().cast<cplx>();
      return m.imag().cwiseAbs().maxCoeff() <= tol &&
             (m.transpose() * eta * m - eta).cwiseAbs().maxCoeff() <=
                 tol * (1.0 + m.cwiseAbs2().sum());
    }
    case GroupFamily::gl:
      return std::abs(m.determinant()) > tol;
  }
  return false;
}

AlgebraValue random_algebra(GroupTag g, std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  AlgebraValue x = AlgebraValue::zero(g);
  for (const auto& b : algebra_basis(g)) x.matrix += scale * u(rng) * b;
  return x;
}

int levi_civita4(int i, int j, int k, int l) {
  if (i == j || i == k || i == l || j == k || j == l || k == l) return 0;
  int p[4] = {i, j, k, l};
  int sign = 1;
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      if (p[a] > p[b]) sign = -sign;
  return sign;
}

double bullet(const AlgebraValue& a1, const AlgebraValue& a2) {
  if (a1.matrix.rows() != 4 || a2.matrix.rows() != 4 ||
      a1.matrix.cols() != 4 || a2.matrix.cols() != 4)
    throw PairingMismatch("bullet needs 4x4 arguments");
  const Eigen::Matrix4d m1 = a1.matrix.real();
  const Eigen::Matrix4d m2 = a2.matrix.real();
  return bullet<double>(m1, m2, minkowski());
}

int rep_dimension(RepTag rep, GroupTag g) {
  switch (rep) {
    case RepTag::none: return 0;
    case RepTag::fundamental: return g.n;
    case RepTag::phase:
      if (g.family != GroupFamily::u1)
        throw PairingMismatch("phase representation needs u1");
      return 1;
  }
  return 0;
}

CVector rep_apply(RepTag rep, const GroupValue& g, const CVector& v) {
  if (v.size() != rep_dimension(rep, g.group))
    throw PairingMismatch("representation dimension mismatch");
  return g.matrix * v;
}

CVector rep_apply(RepTag rep, const AlgebraValue& x, const CVector& v) {
  if (v.size() != rep_dimension(rep, x.group))
    throw PairingMismatch("representation dimension mismatch");
  return x.matrix * v;
}

}  // namespace cps
