// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "cps/gauge.hpp"

namespace cps {

/// Field-space finite differences: symmetric difference with one
/// Richardson halving. step = eps (1 + |phi|) / (1 + |X|) unless given.
struct FDOptions {
  double eps = 1e-4;
  double step = 0.0;
  bool richardson = true;
};

template <class V>
struct FDResult {
  V value{};
  double step = 0.0;
  double error = 0.0;  // |D(h) - D(h/2)| / 3
};

inline double fd_norm(double v) { return std::abs(v); }
template <class T>
double fd_norm(const Form<T>& v) {
  return std::sqrt(v.norm_squared());
}
template <class T>
double fd_norm(const FieldTangent<T>& v) {
  return v.norm_rms() *
         std::sqrt(static_cast<double>(v.A.values().size()));
}

inline double fd_scaled(double v, double s) { return v * s; }
template <class T>
Form<T> fd_scaled(Form<T> v, double s) {
  return v *= T{s};
}
template <class T>
FieldTangent<T> fd_scaled(FieldTangent<T> v, double s) {
  return v *= s;
}

template <class T>
double fs_step(const FieldPoint<T>& phi, const FieldTangent<T>& x,
               double eps) {
  return eps * (1.0 + norm_rms(phi)) / (1.0 + x.norm_rms());
}

/// Directional derivative of fn along X at phi. fn may return a double, a
/// Form or a FieldTangent.
template <class T, class Fn>
auto fs_directional(Fn&& fn, const FieldPoint<T>& phi,
                    const FieldTangent<T>& x, FDOptions opt = {})
    -> FDResult<std::decay_t<decltype(fn(phi))>> {
  using V = std::decay_t<decltype(fn(phi))>;
  const double h = opt.step > 0.0 ? opt.step : fs_step(phi, x, opt.eps);
  auto central = [&](double s) -> V {
    V plus = fn(displaced(phi, x, s));
    V minus = fn(displaced(phi, x, -s));
    plus = plus - minus;
    return fd_scaled(std::move(plus), 1.0 / (2.0 * s));
  };
  FDResult<V> out;
  out.step = h;
  V coarse = central(h);
  if (!opt.richardson) {
    out.value = std::move(coarse);
    return out;
  }
  V fine = central(0.5 * h);
  V diff = coarse - fine;
  out.error = fd_norm(diff) / 3.0;
  // (4 fine - coarse) / 3 = fine - diff / 3
  out.value = fine - fd_scaled(std::move(diff), 1.0 / 3.0);
  return out;
}

/// A variational 1-form: (phi, X) -> real, already integrated.
template <class T>
using VariationalOneForm =
    std::function<double(const FieldPoint<T>&, const FieldTangent<T>&)>;
/// A field-dependent gauge parameter or group field.
template <class T>
using FieldDependentMap = std::function<Form<T>(const FieldPoint<T>&)>;

/// d alpha (X, Y) = X.alpha(Y) - Y.alpha(X) for constant X, Y.
template <class T>
FDResult<double> fs_two_form_kozsul(const VariationalOneForm<T>& alpha,
                                    const FieldPoint<T>& phi,
                                    const FieldTangent<T>& x,
                                    const FieldTangent<T>& y,
                                    FDOptions opt = {}) {
  auto along_x = fs_directional(
      [&](const FieldPoint<T>& p) { return alpha(p, y); }, phi, x, opt);
  auto along_y = fs_directional(
      [&](const FieldPoint<T>& p) { return alpha(p, x); }, phi, y, opt);
  return {along_x.value - along_y.value, along_x.step,
          along_x.error + along_y.error};
}

/// alpha(phi, chi^v).
template <class T>
double interior_vertical(const VariationalOneForm<T>& alpha,
                         const Form<T>& chi, const FieldPoint<T>& phi) {
  return alpha(phi, vertical_vector(chi, phi));
}

/// Variational connection: (phi, X) -> algebra-valued 0-form.
template <class T>
struct FieldSpaceConnection {
  std::string kind;
  std::function<Form<T>(const FieldPoint<T>&, const FieldTangent<T>&)> eval;

  Form<T> operator()(const FieldPoint<T>& phi,
                     const FieldTangent<T>& x) const {
    return eval(phi, x);
  }
};

/// X^h = X - (omega(X))^v.
template <class T>
FieldTangent<T> horizontal_project(const FieldTangent<T>& x,
                                   const FieldPoint<T>& phi,
                                   const FieldSpaceConnection<T>& omega) {
  return x - vertical_vector(omega(phi, x), phi);
}

/// omega' = omega + beta.
template <class T>
FieldSpaceConnection<T> shifted(
    FieldSpaceConnection<T> omega,
    std::function<Form<T>(const FieldPoint<T>&, const FieldTangent<T>&)> beta) {
  auto base = omega.eval;
  return {"shifted(" + omega.kind + ")",
          [base, beta](const FieldPoint<T>& p, const FieldTangent<T>& x) {
            Form<T> w = base(p, x);
            w += beta(p, x);
            return w;
          }};
}

/// Omega(X, Y) = X.omega(Y) - Y.omega(X) + [omega(X), omega(Y)].
template <class T>
FDResult<Form<T>> connection_curvature(const FieldSpaceConnection<T>& omega,
                                       const FieldPoint<T>& phi,
                                       const FieldTangent<T>& x,
                                       const FieldTangent<T>& y,
                                       FDOptions opt = {}) {
  auto dx = fs_directional(
      [&](const FieldPoint<T>& p) { return omega(p, y); }, phi, x, opt);
  auto dy = fs_directional(
      [&](const FieldPoint<T>& p) { return omega(p, x); }, phi, y, opt);
  FDResult<Form<T>> out{dx.value - dy.value, dx.step, dx.error + dy.error};
  out.value += algebra_commutator(omega(phi, x), omega(phi, y));
  return out;
}

// Singer-de Witt ------------------------------------------------------------

struct CGOptions {
  double tolerance = 1e-8;
  int max_iterations = 10000;
};

struct CGReport {
  int iterations = 0;
  double residual = 0.0;
  bool converged = false;
};

/// Solves D^dagger D w = D^dagger a for w vanishing on the grid boundary.
/// The adjoint is taken in the trapezoid-weighted Re Tr(x^dagger y) product.
template <class T>
Form<T> singer_dewitt_solve(const Form<T>& A, const Form<T>& a,
                            CGOptions opt = {}, CGReport* report = nullptr);

/// The adjoint of D^A in the weighted inner product.
template <class T>
Form<T> covariant_adjoint(const Form<T>& A, const Form<T>& v);

template <class T>
FieldSpaceConnection<T> singer_dewitt_connection(CGOptions opt = {});

/// omega(X) = -(du(X)) u^{-1} for a dressing extractor u(phi).
template <class T>
FieldSpaceConnection<T> flat_from_dressing(FieldDependentMap<T> extractor,
                                           FDOptions opt = {});

// Identity checks -----------------------------------------------------------

/// Field-space vector field phi -> (chi(phi))^v(phi).
template <class T>
FieldTangent<T> vertical_field(const FieldDependentMap<T>& chi,
                               const FieldPoint<T>& phi) {
  return vertical_vector(chi(phi), phi);
}

/// {chi, eta} = [chi, eta] + chi^v(eta) - eta^v(chi) at phi.
template <class T>
FDResult<Form<T>> extended_bracket(const FieldDependentMap<T>& chi,
                                   const FieldDependentMap<T>& eta,
                                   const FieldPoint<T>& phi,
                                   FDOptions opt = {});

struct RelationResidual {
  std::string relation;
  std::string applied_to;
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;  // absolute
  double scale = 0.0;     // magnitude used for relative comparisons
  double fd_error = 0.0;
};

struct BracketCheck {
  std::vector<RelationResidual> relations;
  double bracket_norm = 0.0;
  double pointwise_bracket_norm = 0.0;
  /// |{chi,eta} + [chi,eta]|, zero for equivariant parameters.
  double equivariant_deviation = 0.0;
};

/// The three commutation relations, applied to d phi (as tangent vectors)
/// and to the supplied 1-form alpha.
template <class T>
BracketCheck check_extended_bracket(const FieldDependentMap<T>& chi,
                                    const FieldDependentMap<T>& eta,
                                    const FieldPoint<T>& phi,
                                    const VariationalOneForm<T>& alpha,
                                    const FieldTangent<T>& probe,
                                    FDOptions opt = {});

struct Formula1Check {
  double lhs = 0.0;         // d alpha(X^h, Y^h)
  double rhs_exact = 0.0;   // d(alpha^h)(X, Y)
  double rhs_omega = 0.0;   // alpha(delta_Omega phi)
  double residual = 0.0;
  double fd_error = 0.0;
  double curvature_norm = 0.0;
};

template <class T>
Formula1Check check_formula1(const VariationalOneForm<T>& alpha,
                             const FieldSpaceConnection<T>& omega,
                             const FieldPoint<T>& phi,
                             const FieldTangent<T>& x,
                             const FieldTangent<T>& y, FDOptions opt = {});

/// |omega(chi^v) - chi| / |chi|.
template <class T>
double connection_vertical_residual(const FieldSpaceConnection<T>& omega,
                                    const FieldPoint<T>& phi,
                                    const Form<T>& chi);
/// |omega_{phi^g}(g_* X) - g^{-1} omega_phi(X) g| / |omega_phi(X)|.
template <class T>
double connection_equivariance_residual(const FieldSpaceConnection<T>& omega,
                                        const FieldPoint<T>& phi,
                                        const FieldTangent<T>& x,
                                        const Form<T>& gamma);

}  // namespace cps
