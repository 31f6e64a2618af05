// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "cps/field_space.hpp"

#include <cmath>

namespace cps {

namespace {

template <class T>
double weighted_dot(const Form<T>& a, const Form<T>& b,
                    const std::vector<double>& w) {
  double s = 0.0;
  const int blk = a.block() * a.components();
  for (std::size_t node = 0; node < a.nodes(); ++node) {
    const T* x = a.at(node, 0);
    const T* y = b.at(node, 0);
    double local = 0.0;
    for (int e = 0; e < blk; ++e) local += real_of(conj_of(x[e]) * y[e]);
    s += w[node] * local;
  }
  return s;
}

template <class T>
void zero_boundary(Form<T>& f) {
  const Grid& g = f.grid();
  const int blk = f.block() * f.components();
  for (std::size_t node = 0; node < g.node_count(); ++node)
    if (g.on_boundary(node))
      for (int e = 0; e < blk; ++e) f.at(node, 0)[e] = T{};
}

std::vector<double> quadrature_weights(const Grid& g) {
  std::vector<double> w(g.node_count());
  for (std::size_t node = 0; node < w.size(); ++node)
    w[node] = g.quadrature_weight(node);
  return w;
}

}  // namespace

template <class T>
Form<T> covariant_adjoint(const Form<T>& A, const Form<T>& v) {
  if (v.degree() != 1) throw DegreeMismatch("adjoint acts on 1-forms");
  const Grid& g = v.grid();
  const std::vector<double> w = quadrature_weights(g);
  const int blk = v.block();
  Form<T> out(g, 0, v.space());
  std::vector<T> acc(g.node_count() * static_cast<std::size_t>(blk));
  for (int mu = 0; mu < g.dim; ++mu) {
    const auto stride = static_cast<std::ptrdiff_t>(g.stride(mu));
    const int n = g.nodes(mu);
    const double inv2h = 1.0 / (2.0 * g.spacing(mu));
    for (std::size_t m = 0; m < g.node_count(); ++m) {
      const int i = g.index_of(m)[mu];
      const T* vm = v.at(m, mu);
      auto scatter = [&](std::ptrdiff_t offset, double c) {
        const auto k = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(m) +
                                                offset * stride);
        for (int e = 0; e < blk; ++e)
          acc[k * blk + e] += (w[m] * c * inv2h) * vm[e];
      };
      if (i > 0 && i < n - 1) {
        scatter(1, 1.0);
        scatter(-1, -1.0);
      } else if (i == 0) {
        scatter(0, -3.0);
        scatter(1, 4.0);
        scatter(2, -1.0);
      } else {
        scatter(0, 3.0);
        scatter(-1, -4.0);
        scatter(-2, 1.0);
      }
    }
  }
  for (std::size_t k = 0; k < g.node_count(); ++k) {
    for (int e = 0; e < blk; ++e) out.at(k, 0)[e] = acc[k * blk + e] / w[k];
    // ad-adjoint part: v -> A^dagger v - v A^dagger
    for (int mu = 0; mu < g.dim; ++mu) {
      const DenseMatrix<T> ad = A.matrix(k, mu).adjoint();
      const DenseMatrix<T> vm = v.matrix(k, mu);
      out.matrix(k, 0) += ad * vm - vm * ad;
    }
  }
  return out;
}

template <class T>
Form<T> singer_dewitt_solve(const Form<T>& A, const Form<T>& a, CGOptions opt,
                            CGReport* report) {
  const Grid& g = A.grid();
  const std::vector<double> w = quadrature_weights(g);
  auto apply = [&](const Form<T>& x) {
    Form<T> y = covariant_adjoint(A, covariant_derivative(A, x));
    zero_boundary(y);
    return y;
  };
  Form<T> b = covariant_adjoint(A, a);
  zero_boundary(b);
  Form<T> x = zero_like(b);
  Form<T> r = b;
  Form<T> p = r;
  double rr = weighted_dot(r, r, w);
  const double bb = rr;
  CGReport rep;
  if (bb == 0.0) {
    rep.converged = true;
    if (report) *report = rep;
    return x;
  }
  const double target = opt.tolerance * opt.tolerance * bb;
  for (int it = 0; it < opt.max_iterations; ++it) {
    const Form<T> ap = apply(p);
    const double alpha = rr / weighted_dot(p, ap, w);
    x.add_scaled(T{alpha}, p);
    r.add_scaled(T{-alpha}, ap);
    const double rr_new = weighted_dot(r, r, w);
    rep.iterations = it + 1;
    if (rr_new <= target) {
      rr = rr_new;
      rep.converged = true;
      break;
    }
    p *= T{rr_new / rr};
    p += r;
    rr = rr_new;
  }
  rep.residual = std::sqrt(rr / bb);
  if (report) *report = rep;
  return x;
}

template <class T>
FieldSpaceConnection<T> singer_dewitt_connection(CGOptions opt) {
  return {"singer_dewitt",
          [opt](const FieldPoint<T>& phi, const FieldTangent<T>& x) {
            return singer_dewitt_solve(phi.A, x.A, opt).retag(phi.A.space());
          }};
}

template <class T>
FieldSpaceConnection<T> flat_from_dressing(FieldDependentMap<T> extractor,
                                           FDOptions opt) {
  return {"flat_from_dressing",
          [extractor, opt](const FieldPoint<T>& phi, const FieldTangent<T>& x) {
            const Form<T> u = extractor(phi);
            const Form<T> du = fs_directional(extractor, phi, x, opt).value;
            const Form<T> uinv = inverse_field(u);
            Form<T> out(phi.grid(), 0, phi.A.space());
            for (std::size_t node = 0; node < u.nodes(); ++node)
              out.matrix(node, 0) =
                  -(du.matrix(node, 0) * uinv.matrix(node, 0));
            return out;
          }};
}

template <class T>
FDResult<Form<T>> extended_bracket(const FieldDependentMap<T>& chi,
                                   const FieldDependentMap<T>& eta,
                                   const FieldPoint<T>& phi, FDOptions opt) {
  const Form<T> c = chi(phi);
  const Form<T> e = eta(phi);
  auto c_eta = fs_directional(eta, phi, vertical_vector(c, phi), opt);
  auto e_chi = fs_directional(chi, phi, vertical_vector(e, phi), opt);
  FDResult<Form<T>> out{algebra_commutator(c, e), c_eta.step,
                        c_eta.error + e_chi.error};
  out.value += c_eta.value;
  out.value -= e_chi.value;
  return out;
}

template <class T>
BracketCheck check_extended_bracket(const FieldDependentMap<T>& chi,
                                    const FieldDependentMap<T>& eta,
                                    const FieldPoint<T>& phi,
                                    const VariationalOneForm<T>& alpha,
                                    const FieldTangent<T>& probe,
                                    FDOptions opt) {
  BracketCheck out;
  const FieldTangent<T> X = vertical_field(chi, phi);
  const FieldTangent<T> Y = vertical_field(eta, phi);
  const auto ext = extended_bracket(chi, eta, phi, opt);
  out.bracket_norm = fd_norm(ext.value);
  const Form<T> pointwise = algebra_commutator(chi(phi), eta(phi));
  out.pointwise_bracket_norm = fd_norm(pointwise);
  out.equivariant_deviation = fd_norm(ext.value + pointwise);
  const FieldTangent<T> ext_v = vertical_vector(ext.value, phi);

  auto tangent_entry = [](std::string rel, const FieldTangent<T>& lhs,
                          const FieldTangent<T>& rhs, double err) {
    RelationResidual r{std::move(rel), "dphi"};
    r.lhs = fd_norm(lhs);
    r.rhs = fd_norm(rhs);
    r.residual = fd_norm(lhs - rhs);
    r.scale = std::max(r.lhs, r.rhs);
    r.fd_error = err;
    return r;
  };
  auto scalar_entry = [](std::string rel, double lhs, double rhs, double err) {
    RelationResidual r{std::move(rel), "theta"};
    r.lhs = lhs;
    r.rhs = rhs;
    r.residual = std::abs(lhs - rhs);
    r.scale = std::max(std::abs(lhs), std::abs(rhs));
    r.fd_error = err;
    return r;
  };

  // [i_X, i_{d eta^v}] = i_{[X(eta)]^v}
  {
    const auto x_eta = fs_directional(eta, phi, X, opt);
    const FieldTangent<T> rhs = vertical_vector(x_eta.value, phi);
    const auto lhs = fs_directional(
        [&](const FieldPoint<T>& p) { return vertical_vector(eta(p), phi); },
        phi, X, opt);
    out.relations.push_back(
        tangent_entry("i_X i_deta", lhs.value, rhs, lhs.error + x_eta.error));
    const auto lhs_a = fs_directional(
        [&](const FieldPoint<T>& p) {
          return alpha(phi, vertical_vector(eta(p), phi));
        },
        phi, X, opt);
    out.relations.push_back(scalar_entry("i_X i_deta", lhs_a.value,
                                         alpha(phi, rhs),
                                         lhs_a.error + x_eta.error));
  }

  // [L_X, i_Y] = i_{{chi,eta}^v}, the vector field bracket [X, Y].
  auto field_bracket = [&](const FieldPoint<T>& p) {
    const FieldTangent<T> xp = vertical_field(chi, p);
    const FieldTangent<T> yp = vertical_field(eta, p);
    const auto dy = fs_directional(
        [&](const FieldPoint<T>& q) { return vertical_field(eta, q); }, p, xp,
        opt);
    const auto dx = fs_directional(
        [&](const FieldPoint<T>& q) { return vertical_field(chi, q); }, p, yp,
        opt);
    return FDResult<FieldTangent<T>>{dy.value - dx.value, dy.step,
                                     dy.error + dx.error};
  };
  {
    const auto xy = field_bracket(phi);
    out.relations.push_back(
        tangent_entry("L_X i_Y", xy.value, ext_v, xy.error + ext.error));
    out.relations.push_back(scalar_entry("L_X i_Y", alpha(phi, xy.value),
                                         alpha(phi, ext_v),
                                         xy.error + ext.error));
  }

  // [L_X, L_Y] = L_{{chi,eta}^v}, on g = alpha(., probe) and on d phi
  // evaluated along the probe.
  {
    auto g = [&](const FieldPoint<T>& p) { return alpha(p, probe); };
    auto lie = [&](const FieldDependentMap<T>& par, const FieldPoint<T>& p) {
      return fs_directional(g, p, vertical_field(par, p), opt).value;
    };
    const auto xyg = fs_directional(
        [&](const FieldPoint<T>& p) { return lie(eta, p); }, phi, X, opt);
    const auto yxg = fs_directional(
        [&](const FieldPoint<T>& p) { return lie(chi, p); }, phi, Y, opt);
    const auto rhs = fs_directional(g, phi, ext_v, opt);
    out.relations.push_back(scalar_entry(
        "L_X L_Y", xyg.value - yxg.value, rhs.value,
        xyg.error + yxg.error + rhs.error + ext.error));

    const auto lhs_v = fs_directional(
        [&](const FieldPoint<T>& p) { return field_bracket(p).value; }, phi,
        probe, opt);
    const auto rhs_v = fs_directional(
        [&](const FieldPoint<T>& p) {
          return vertical_vector(extended_bracket(chi, eta, p, opt).value, p);
        },
        phi, probe, opt);
    out.relations.push_back(tangent_entry("L_X L_Y", lhs_v.value, rhs_v.value,
                                          lhs_v.error + rhs_v.error));
  }
  return out;
}

template <class T>
Formula1Check check_formula1(const VariationalOneForm<T>& alpha,
                             const FieldSpaceConnection<T>& omega,
                             const FieldPoint<T>& phi,
                             const FieldTangent<T>& x,
                             const FieldTangent<T>& y, FDOptions opt) {
  Formula1Check out;
  const FieldTangent<T> xh = horizontal_project(x, phi, omega);
  const FieldTangent<T> yh = horizontal_project(y, phi, omega);
  const auto lhs = fs_two_form_kozsul(alpha, phi, xh, yh, opt);
  const VariationalOneForm<T> alpha_h = [&](const FieldPoint<T>& p,
                                            const FieldTangent<T>& z) {
    return alpha(p, horizontal_project(z, p, omega));
  };
  const auto rhs = fs_two_form_kozsul(alpha_h, phi, x, y, opt);
  const auto Omega = connection_curvature(omega, phi, x, y, opt);
  out.lhs = lhs.value;
  out.rhs_exact = rhs.value;
  out.rhs_omega = alpha(phi, vertical_vector(Omega.value, phi));
  out.curvature_norm = fd_norm(Omega.value);
  out.residual = std::abs(out.lhs - out.rhs_exact - out.rhs_omega);
  out.fd_error = lhs.error + rhs.error + Omega.error;
  return out;
}

template <class T>
double connection_vertical_residual(const FieldSpaceConnection<T>& omega,
                                    const FieldPoint<T>& phi,
                                    const Form<T>& chi) {
  const Form<T> w = omega(phi, vertical_vector(chi, phi));
  return fd_norm(w - chi) / std::max(fd_norm(chi), 1e-300);
}

template <class T>
double connection_equivariance_residual(const FieldSpaceConnection<T>& omega,
                                        const FieldPoint<T>& phi,
                                        const FieldTangent<T>& x,
                                        const Form<T>& gamma) {
  const Form<T> lhs =
      omega(gauge_transform(phi, gamma), gauge_pushforward(x, gamma));
  const Form<T> rhs = conjugate(gamma, omega(phi, x));
  return fd_norm(lhs - rhs) / std::max(fd_norm(rhs), 1e-300);
}

#define CPS_INSTANTIATE(T)                                                     \
  template Form<T> covariant_adjoint(const Form<T>&, const Form<T>&);          \
  template Form<T> singer_dewitt_solve(const Form<T>&, const Form<T>&,         \
                                       CGOptions, CGReport*);                  \
  template FieldSpaceConnection<T> singer_dewitt_connection(CGOptions);        \
  template FieldSpaceConnection<T> flat_from_dressing(FieldDependentMap<T>,    \
                                                      FDOptions);              \
  template FDResult<Form<T>> extended_bracket(const FieldDependentMap<T>&,     \
                                              const FieldDependentMap<T>&,     \
                                              const FieldPoint<T>&,            \
                                              FDOptions);                      \
  template BracketCheck check_extended_bracket(                                \
      const FieldDependentMap<T>&, const FieldDependentMap<T>&,                \
      const FieldPoint<T>&, const VariationalOneForm<T>&,                      \
      const FieldTangent<T>&, FDOptions);                                      \
  template Formula1Check check_formula1(                                       \
      const VariationalOneForm<T>&, const FieldSpaceConnection<T>&,            \
      const FieldPoint<T>&, const FieldTangent<T>&, const FieldTangent<T>&,    \
      FDOptions);                                                              \
  template double connection_vertical_residual(                                \
      const FieldSpaceConnection<T>&, const FieldPoint<T>&, const Form<T>&);   \
  template double connection_equivariance_residual(                            \
      const FieldSpaceConnection<T>&, const FieldPoint<T>&,                    \
      const FieldTangent<T>&, const Form<T>&);

CPS_INSTANTIATE(double)
CPS_INSTANTIATE(cplx)

#undef CPS_INSTANTIATE

}  // namespace cps
