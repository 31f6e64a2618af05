// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "cps/gauge.hpp"

#include <cmath>

namespace cps {

namespace {

template <class T>
void add_optional(std::optional<Form<T>>& a, const std::optional<Form<T>>& b,
                  double s) {
  if (a.has_value() != b.has_value())
    throw PairingMismatch("tangent slots differ");
  if (a) a->add_scaled(T{s}, *b);
}

template <class T>
double slot_norm(const std::optional<Form<T>>& f) {
  return f ? f->norm_squared() : 0.0;
}

template <class T>
std::size_t slot_size(const std::optional<Form<T>>& f) {
  return f ? f->values().size() : 0;
}

}  // namespace

template <class T>
FieldTangent<T>& FieldTangent<T>::operator+=(const FieldTangent& o) {
  A += o.A;
  add_optional(matter, o.matter, 1.0);
  add_optional(tetrad, o.tetrad, 1.0);
  return *this;
}

template <class T>
FieldTangent<T>& FieldTangent<T>::operator*=(double s) {
  A *= T{s};
  if (matter) *matter *= T{s};
  if (tetrad) *tetrad *= T{s};
  return *this;
}

template <class T>
double FieldTangent<T>::norm_rms() const {
  const double sq = A.norm_squared() + slot_norm(matter) + slot_norm(tetrad);
  const auto n = A.values().size() + slot_size(matter) + slot_size(tetrad);
  return n ? std::sqrt(sq / static_cast<double>(n)) : 0.0;
}

template <class T>
FieldPoint<T> displaced(const FieldPoint<T>& phi, const FieldTangent<T>& x,
                        double s) {
  FieldPoint<T> out = phi;
  out.A.add_scaled(T{s}, x.A);
  add_optional(out.matter, x.matter, s);
  add_optional(out.tetrad, x.tetrad, s);
  return out;
}

template <class T>
FieldTangent<T> difference(const FieldPoint<T>& phi1,
                           const FieldPoint<T>& phi0) {
  FieldTangent<T> out{phi1.A, phi1.matter, phi1.tetrad};
  out.A -= phi0.A;
  add_optional(out.matter, phi0.matter, -1.0);
  add_optional(out.tetrad, phi0.tetrad, -1.0);
  return out;
}

template <class T>
FieldTangent<T> zero_tangent(const FieldPoint<T>& phi) {
  FieldTangent<T> out{zero_like(phi.A), std::nullopt, std::nullopt};
  if (phi.matter) out.matter = zero_like(*phi.matter);
  if (phi.tetrad) out.tetrad = zero_like(*phi.tetrad);
  return out;
}

template <class T>
double norm_rms(const FieldPoint<T>& phi) {
  return FieldTangent<T>{phi.A, phi.matter, phi.tetrad}.norm_rms();
}

template <class T>
Form<T> constant_field(const Grid& grid, ValueSpace space,
                       const DenseMatrix<T>& value) {
  if (value.rows() != space.rows || value.cols() != space.cols)
    throw PairingMismatch("constant field: value shape mismatch");
  Form<T> out(grid, 0, space);
  for (std::size_t node = 0; node < grid.node_count(); ++node)
    out.matrix(node, 0) = value;
  return out;
}

template <class T>
Form<T> exp_field(const Form<T>& chi) {
  if (chi.degree() != 0) throw DegreeMismatch("exp_field needs a 0-form");
  ValueSpace s = chi.space();
  s.kind = ValueKind::group;
  Form<T> out(chi.grid(), 0, s);
  for (std::size_t node = 0; node < chi.nodes(); ++node)
    out.matrix(node, 0) = matrix_exp(chi.matrix(node, 0));
  return out;
}

template <class T>
Form<T> inverse_field(const Form<T>& g) {
  if (g.degree() != 0) throw DegreeMismatch("inverse_field needs a 0-form");
  Form<T> out = zero_like(g);
  for (std::size_t node = 0; node < g.nodes(); ++node) {
    const DenseMatrix<T> m = g.matrix(node, 0);
    Eigen::FullPivLU<DenseMatrix<T>> lu(m);
    if (!lu.isInvertible())
      throw SingularTetrad("group field not invertible at node " +
                           std::to_string(node));
    out.matrix(node, 0) = lu.inverse();
  }
  return out;
}

template <class T>
Form<T> conjugate(const Form<T>& gamma, const Form<T>& w) {
  if (gamma.degree() != 0) throw DegreeMismatch("conjugate: gamma not a 0-form");
  if (!(gamma.grid() == w.grid())) throw GridMismatch("conjugate: grids differ");
  if (gamma.space().rows != w.space().rows ||
      w.space().rows != w.space().cols)
    throw PairingMismatch("conjugate: shape mismatch");
  const Form<T> ginv = inverse_field(gamma);
  Form<T> out = zero_like(w);
  for (std::size_t node = 0; node < w.nodes(); ++node) {
    const DenseMatrix<T> gi = ginv.matrix(node, 0);
    const DenseMatrix<T> g = gamma.matrix(node, 0);
    for (int c = 0; c < w.components(); ++c)
      out.matrix(node, c) = gi * w.matrix(node, c) * g;
  }
  return out;
}

template <class T>
Form<T> algebra_commutator(const Form<T>& a, const Form<T>& b) {
  Form<T> out = graded_commutator(a, b);
  return out.retag(a.space());
}

template <class T>
Form<T> curvature(const Form<T>& A) {
  if (A.degree() != 1) throw DegreeMismatch("curvature needs a 1-form");
  Form<T> F = exterior_derivative(A);
  F += wedge(A, A, Pairing::product).retag(A.space());
  return F;
}

template <class T>
Form<T> tetrad_one_form(const Form<T>& tetrad) {
  if (tetrad.degree() != 0 || tetrad.space().rows != tetrad.grid().dim ||
      tetrad.space().cols != tetrad.grid().dim)
    throw PairingMismatch("tetrad must be a dim x dim 0-form");
  const int n = tetrad.grid().dim;
  ValueSpace vs{ValueKind::rep, GroupTag::so13(), RepTag::fundamental, n, 1};
  Form<T> out(tetrad.grid(), 1, vs);
  for (std::size_t node = 0; node < tetrad.nodes(); ++node)
    for (int mu = 0; mu < n; ++mu)
      for (int a = 0; a < n; ++a) out.at(node, mu)[a] = tetrad.at(node, 0)[a + mu * n];
  return out;
}

template <class T>
Form<T> torsion(const Form<T>& A, const Form<T>& tetrad) {
  return covariant_derivative(A, tetrad_one_form(tetrad));
}

template <class T>
Form<T> covariant_derivative(const Form<T>& A, const Form<T>& w) {
  if (A.degree() != 1) throw DegreeMismatch("connection must be a 1-form");
  Form<T> out = exterior_derivative(w);
  switch (w.space().kind) {
    case ValueKind::rep:
      if (w.space().rows != A.space().cols)
        throw PairingMismatch("representation dimension mismatch");
      out += wedge(A, w, Pairing::product).retag(w.space());
      break;
    case ValueKind::algebra:
    case ValueKind::matrix:
      if (w.space().rows != A.space().rows || w.space().cols != A.space().cols)
        throw PairingMismatch("adjoint value shape mismatch");
      out += graded_commutator(A, w).retag(w.space());
      break;
    default:
      throw PairingMismatch("covariant derivative of an unsupported value space");
  }
  return out;
}

template <class T>
FieldPoint<T> gauge_transform(const FieldPoint<T>& phi, const Form<T>& gamma) {
  if (gamma.space().rows != phi.A.space().rows)
    throw PairingMismatch("gauge_transform: group size mismatch");
  const Form<T> ginv = inverse_field(gamma);
  FieldPoint<T> out = phi;
  out.A = conjugate(gamma, phi.A);
  out.A += wedge(ginv, exterior_derivative(gamma), Pairing::product)
               .retag(phi.A.space());
  if (phi.matter)
    out.matter = wedge(ginv, *phi.matter, Pairing::product).retag(phi.matter->space());
  if (phi.tetrad)
    out.tetrad = wedge(ginv, *phi.tetrad, Pairing::product).retag(phi.tetrad->space());
  return out;
}

template <class T>
FieldTangent<T> gauge_pushforward(const FieldTangent<T>& x,
                                  const Form<T>& gamma) {
  const Form<T> ginv = inverse_field(gamma);
  FieldTangent<T> out = x;
  out.A = conjugate(gamma, x.A);
  if (x.matter)
    out.matter = wedge(ginv, *x.matter, Pairing::product).retag(x.matter->space());
  if (x.tetrad)
    out.tetrad = wedge(ginv, *x.tetrad, Pairing::product).retag(x.tetrad->space());
  return out;
}

template <class T>
FieldTangent<T> vertical_vector(const Form<T>& chi, const FieldPoint<T>& phi) {
  if (chi.degree() != 0) throw DegreeMismatch("gauge parameter must be a 0-form");
  FieldTangent<T> out{covariant_derivative(phi.A, chi).retag(phi.A.space()),
                      std::nullopt, std::nullopt};
  if (phi.matter) {
    out.matter = wedge(chi, *phi.matter, Pairing::product).retag(phi.matter->space());
    *out.matter *= T{-1.0};
  }
  if (phi.tetrad) {
    out.tetrad = wedge(chi, *phi.tetrad, Pairing::product).retag(phi.tetrad->space());
    *out.tetrad *= T{-1.0};
  }
  return out;
}

template <class T>
BackgroundSplit<T> background_split(const Form<T>& A, const Form<T>& A0,
                                    const Region& region, double tolerance,
                                    bool strict) {
  BackgroundSplit<T> s;
  s.A0 = A0;
  s.alpha = A - A0;
  s.F0 = curvature(A0);
  s.f = covariant_derivative(A0, s.alpha);
  const Form<T> star_F0 = hodge(s.F0, region);
  s.background_residual = covariant_derivative(A0, star_F0).norm_rms();
  if (s.background_residual > tolerance) {
    const std::string msg = "background residual " +
                            std::to_string(s.background_residual) +
                            " above tolerance";
    if (strict) throw BadBackground(msg);
    s.warnings.push_back(msg);
  }
  s.j = covariant_derivative(A0, hodge(s.f, region));
  s.j += algebra_commutator(s.alpha, star_F0);
  return s;
}

#define CPS_INSTANTIATE(T)                                                     \
  template struct FieldTangent<T>;                                             \
  template FieldPoint<T> displaced(const FieldPoint<T>&,                       \
                                   const FieldTangent<T>&, double);            \
  template FieldTangent<T> difference(const FieldPoint<T>&,                    \
                                      const FieldPoint<T>&);                   \
  template FieldTangent<T> zero_tangent(const FieldPoint<T>&);                 \
  template double norm_rms(const FieldPoint<T>&);                              \
  template Form<T> constant_field(const Grid&, ValueSpace,                     \
                                  const DenseMatrix<T>&);                      \
  template Form<T> exp_field(const Form<T>&);                                  \
  template Form<T> inverse_field(const Form<T>&);                              \
  template Form<T> conjugate(const Form<T>&, const Form<T>&);                  \
  template Form<T> algebra_commutator(const Form<T>&, const Form<T>&);         \
  template Form<T> curvature(const Form<T>&);                                  \
  template Form<T> tetrad_one_form(const Form<T>&);                            \
  template Form<T> torsion(const Form<T>&, const Form<T>&);                    \
  template Form<T> covariant_derivative(const Form<T>&, const Form<T>&);       \
  template FieldPoint<T> gauge_transform(const FieldPoint<T>&,                 \
                                         const Form<T>&);                      \
  template FieldTangent<T> gauge_pushforward(const FieldTangent<T>&,           \
                                             const Form<T>&);                  \
  template FieldTangent<T> vertical_vector(const Form<T>&,                     \
                                           const FieldPoint<T>&);              \
  template BackgroundSplit<T> background_split(const Form<T>&, const Form<T>&, \
                                               const Region&, double, bool);

CPS_INSTANTIATE(double)
CPS_INSTANTIATE(cplx)

#undef CPS_INSTANTIATE

}  // namespace cps
