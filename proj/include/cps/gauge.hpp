// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cps/calculus.hpp"
#include "cps/form.hpp"
#include "cps/lie.hpp"

namespace cps {

/// A configuration: gauge potential, optional matter and optional tetrad.
/// The tetrad is a 4x4 0-form e^a_mu; ell and lambda_sign carry the
/// cosmological scale of the Cartan geometry.
template <class T>
struct FieldPoint {
  Form<T> A;
  std::optional<Form<T>> matter;
  std::optional<Form<T>> tetrad;
  double ell = 1.0;
  int lambda_sign = 1;

  const Grid& grid() const { return A.grid(); }
  GroupTag group() const { return A.space().group; }
};

template <class T>
struct FieldTangent {
  Form<T> A;
  std::optional<Form<T>> matter;
  std::optional<Form<T>> tetrad;

  FieldTangent& operator+=(const FieldTangent& o);
  FieldTangent& operator*=(double s);
  double norm_rms() const;
};

template <class T>
FieldTangent<T> operator+(FieldTangent<T> a, const FieldTangent<T>& b) {
  return a += b;
}
template <class T>
FieldTangent<T> operator-(FieldTangent<T> a, FieldTangent<T> b) {
  return a += (b *= -1.0);
}
template <class T>
FieldTangent<T> operator*(double s, FieldTangent<T> a) {
  return a *= s;
}

/// phi + s X, slot by slot.
template <class T>
FieldPoint<T> displaced(const FieldPoint<T>& phi, const FieldTangent<T>& x,
                        double s);
/// phi1 - phi0 as a tangent.
template <class T>
FieldTangent<T> difference(const FieldPoint<T>& phi1,
                           const FieldPoint<T>& phi0);
template <class T>
FieldTangent<T> zero_tangent(const FieldPoint<T>& phi);
template <class T>
double norm_rms(const FieldPoint<T>& phi);

// Nodewise helpers on 0-forms -------------------------------------------------

template <class T>
using DenseMatrix = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

template <class T>
Form<T> constant_field(const Grid& grid, ValueSpace space,
                       const DenseMatrix<T>& value);
/// Pointwise exponential of an algebra-valued 0-form.
template <class T>
Form<T> exp_field(const Form<T>& chi);
/// Pointwise inverse of a group- or matrix-valued 0-form.
template <class T>
Form<T> inverse_field(const Form<T>& g);
/// gamma^{-1} w gamma, with w of any degree.
template <class T>
Form<T> conjugate(const Form<T>& gamma, const Form<T>& w);
/// Pointwise commutator of algebra-valued forms [a ^ b].
template <class T>
Form<T> algebra_commutator(const Form<T>& a, const Form<T>& b);

// Gauge geometry -----------------------------------------------------------

/// F = dA + A ^ A.
template <class T>
Form<T> curvature(const Form<T>& A);
/// Tetrad as a vector-valued 1-form: component mu holds the column e^a_mu.
template <class T>
Form<T> tetrad_one_form(const Form<T>& tetrad);
/// T = de + A ^ e for the vector-valued tetrad 1-form.
template <class T>
Form<T> torsion(const Form<T>& A, const Form<T>& tetrad);

/// dw + [A ^ w] for algebra values, dw + A ^ w for representation vectors.
template <class T>
Form<T> covariant_derivative(const Form<T>& A, const Form<T>& w);

/// A -> g^{-1} A g + g^{-1} dg, matter -> g^{-1} matter, e -> g^{-1} e.
template <class T>
FieldPoint<T> gauge_transform(const FieldPoint<T>& phi, const Form<T>& gamma);
/// Pushforward of a tangent by a field-independent gauge transformation.
template <class T>
FieldTangent<T> gauge_pushforward(const FieldTangent<T>& x,
                                  const Form<T>& gamma);

/// (D chi, -chi matter, -chi e).
template <class T>
FieldTangent<T> vertical_vector(const Form<T>& chi, const FieldPoint<T>& phi);

/// Background/perturbation split of a potential. The background residual
/// |D0 *F0| is reported, not enforced, unless `strict` is set.
template <class T>
struct BackgroundSplit {
  Form<T> A0;
  Form<T> alpha;
  Form<T> F0;
  Form<T> f;
  Form<T> j;
  double background_residual = 0.0;
  std::vector<std::string> warnings;
};

template <class T>
BackgroundSplit<T> background_split(const Form<T>& A, const Form<T>& A0,
                                    const Region& region,
                                    double tolerance = 1e-6,
                                    bool strict = false);

}  // namespace cps
