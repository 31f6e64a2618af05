// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "cps/calculus.hpp"

#include <bit>
#include <cmath>

namespace cps {

namespace detail {

std::vector<WedgeTerm> wedge_terms(int n, int p, int q) {
  std::vector<WedgeTerm> terms;
  const auto& out_masks = component_masks(n, p + q);
  for (std::size_t k = 0; k < out_masks.size(); ++k) {
    const unsigned K = out_masks[k];
    for (unsigned I : component_masks(n, p)) {
      if ((I & K) != I) continue;
      const unsigned J = K & ~I;
      terms.push_back({static_cast<int>(k), component_index(n, p, I),
                       component_index(n, q, J), merge_sign(I, J)});
    }
  }
  return terms;
}

// Inserts a zero bit at position `axis`.
static unsigned lift_mask(unsigned sub_mask, int axis) {
  const unsigned low = sub_mask & ((1u << axis) - 1u);
  const unsigned high = (sub_mask >> axis) << (axis + 1);
  return low | high;
}

template <class T>
void derivative_accumulate(const Grid& g, int axis, const T* in, int in_ncomp,
                           int in_comp, T* out, int out_ncomp, int out_comp,
                           int block, double sign) {
  const std::size_t stride = g.stride(axis);
  const int n = g.nodes(axis);
  const double inv2h = sign / (2.0 * g.spacing(axis));
  const std::size_t nodes = g.node_count();
  const auto in_step = static_cast<std::size_t>(in_ncomp * block);
  const auto out_step = static_cast<std::size_t>(out_ncomp * block);
  for (std::size_t node = 0; node < nodes; ++node) {
    const int i = static_cast<int>((node / stride) % static_cast<std::size_t>(n));
    const T* f = in + node * in_step + in_comp * block;
    T* d = out + node * out_step + out_comp * block;
    const std::ptrdiff_t s = static_cast<std::ptrdiff_t>(stride * in_step);
    if (i > 0 && i < n - 1) {
      for (int k = 0; k < block; ++k) d[k] += inv2h * (f[k + s] - f[k - s]);
    } else if (i == 0) {
      for (int k = 0; k < block; ++k)
        d[k] += inv2h * (-3.0 * f[k] + 4.0 * f[k + s] - f[k + 2 * s]);
    } else {
      for (int k = 0; k < block; ++k)
        d[k] += inv2h * (3.0 * f[k] - 4.0 * f[k - s] + f[k - 2 * s]);
    }
  }
}

}  // namespace detail

template <class T>
Form<T> exterior_derivative(const Form<T>& w) {
  const Grid& g = w.grid();
  const int n = g.dim, p = w.degree();
  if (p >= n)
    throw DegreeOverflow("exterior derivative of a top-degree form");
  Form<T> out(g, p + 1, w.space());
  const auto& out_masks = component_masks(n, p + 1);
  const T* in = w.values().data();
  T* o = out.values().data();
  for (std::size_t k = 0; k < out_masks.size(); ++k) {
    const unsigned J = out_masks[k];
    int position = 0;
    for (int axis : mask_axes(J)) {
      const unsigned I = J & ~(1u << axis);
      const double sign = (position % 2) ? -1.0 : 1.0;
      detail::derivative_accumulate(g, axis, in, w.components(),
                                    component_index(n, p, I), o,
                                    out.components(), static_cast<int>(k),
                                    w.block(), sign);
      ++position;
    }
  }
  return out;
}

template <class T>
Form<T> partial(const Form<T>& w, int axis) {
  Form<T> out = zero_like(w);
  for (int c = 0; c < w.components(); ++c)
    detail::derivative_accumulate(w.grid(), axis, w.values().data(),
                                  w.components(), c, out.values().data(),
                                  out.components(), c, w.block(), 1.0);
  return out;
}

template <class T>
Form<T> wedge(const Form<T>& a, const Form<T>& b, Pairing pairing) {
  const Grid& g = a.grid();
  const int deg = a.degree() + b.degree();
  if (deg > g.dim) throw DegreeOverflow("wedge degree exceeds dimension");
  const ValueSpace& sa = a.space();
  const ValueSpace& sb = b.space();
  switch (pairing) {
    case Pairing::scalar: {
      if (sa.size() != 1 || sb.size() != 1)
        throw PairingMismatch("scalar pairing needs 1x1 values");
      Form<T> out(g, deg, ValueSpace::scalar());
      wedge_accumulate(a, b, out,
                       [](std::size_t, const T* x, const T* y, T* o, T f) {
                         o[0] += f * x[0] * y[0];
                       });
      return out;
    }
    case Pairing::trace: {
      if (sa.rows != sa.cols || sb.rows != sb.cols || sa.rows != sb.rows)
        throw PairingMismatch("trace pairing needs equal square blocks");
      const int r = sa.rows;
      Form<T> out(g, deg, ValueSpace::scalar());
      wedge_accumulate(a, b, out,
                       [r](std::size_t, const T* x, const T* y, T* o, T f) {
                         T acc{};
                         for (int i = 0; i < r; ++i)
                           for (int j = 0; j < r; ++j)
                             acc += x[i + j * r] * y[j + i * r];
                         o[0] += f * acc;
                       });
      return out;
    }
    case Pairing::inner: {
      if (sa.rows != sb.rows || sa.cols != sb.cols)
        throw PairingMismatch("inner pairing needs equal shapes");
      const int s = sa.size();
      Form<T> out(g, deg, ValueSpace::scalar());
      wedge_accumulate(a, b, out,
                       [s](std::size_t, const T* x, const T* y, T* o, T f) {
                         double acc = 0.0;
                         for (int i = 0; i < s; ++i)
                           acc += real_of(conj_of(x[i]) * y[i]);
                         o[0] += f * acc;
                       });
      return out;
    }
    case Pairing::bullet: {
      if (sa.rows != 4 || sa.cols != 4 || sb.rows != 4 || sb.cols != 4)
        throw PairingMismatch("bullet pairing needs 4x4 values");
      const Eigen::Matrix4d eta = minkowski();
      Form<T> out(g, deg, ValueSpace::scalar());
      wedge_accumulate(a, b, out,
                       [&eta](std::size_t, const T* x, const T* y, T* o, T f) {
                         using M4 = Eigen::Matrix<T, 4, 4>;
                         const M4 mx = Eigen::Map<const M4>(x);
                         const M4 my = Eigen::Map<const M4>(y);
                         o[0] += f * bullet<T>(mx, my, eta);
                       });
      return out;
    }
    case Pairing::product: {
      if (sa.cols != sb.rows)
        throw PairingMismatch("product pairing: inner dimensions differ");
      ValueSpace os = ValueSpace::matrix(sa.rows, sb.cols);
      if (sb.kind == ValueKind::rep) os = sb;
      const int r = sa.rows, m = sa.cols, c = sb.cols;
      Form<T> out(g, deg, os);
      wedge_accumulate(a, b, out,
                       [r, m, c](std::size_t, const T* x, const T* y, T* o,
                                 T f) {
                         for (int j = 0; j < c; ++j)
                           for (int k = 0; k < m; ++k) {
                             const T yk = f * y[k + j * m];
                             for (int i = 0; i < r; ++i)
                               o[i + j * r] += x[i + k * r] * yk;
                           }
                       });
      return out;
    }
  }
  throw PairingMismatch("unknown pairing");
}

template <class T>
Form<T> graded_commutator(const Form<T>& a, const Form<T>& b) {
  Form<T> out = wedge(a, b, Pairing::product);
  const double s = ((a.degree() * b.degree()) % 2) ? 1.0 : -1.0;
  out.add_scaled(T{s}, wedge(b, a, Pairing::product));
  if (a.space().kind == ValueKind::algebra && a.space() == b.space())
    out.retag(a.space());
  return out;
}

template <class T>
Form<T> hodge(const Form<T>& w, const Region& region) {
  const Grid& g = w.grid();
  if (!(g == region.grid())) throw GridMismatch("hodge: region/grid mismatch");
  const int n = g.dim, p = w.degree(), q = n - p;
  const auto& in_masks = component_masks(n, p);
  const auto& out_masks = component_masks(n, q);
  const unsigned full = (1u << n) - 1u;
  const int nin = static_cast<int>(in_masks.size());
  const int nout = static_cast<int>(out_masks.size());
  Form<T> out(g, q, w.space());
  std::vector<double> coef(static_cast<std::size_t>(nin * nout));

  auto build = [&](std::size_t node) {
    const MetricMatrix gm = region.metric_at(node);
    const double det = gm.determinant();
    if (std::abs(det) < metric_det_floor)
      throw DegenerateMetric("hodge: |det g| below floor at node " +
                             std::to_string(node));
    const MetricMatrix gi = gm.inverse();
    const double vol = std::sqrt(std::abs(det));
    for (int j = 0; j < nout; ++j) {
      const unsigned J = out_masks[j];
      const unsigned I = full & ~J;
      const auto rows = mask_axes(I);
      const double s = vol * merge_sign(I, J);
      for (int k = 0; k < nin; ++k) {
        const auto cols = mask_axes(in_masks[k]);
        MetricMatrix sub(p, p);
        for (int x = 0; x < p; ++x)
          for (int y = 0; y < p; ++y) sub(x, y) = gi(rows[x], cols[y]);
        coef[static_cast<std::size_t>(j * nin + k)] =
            s * (p == 0 ? 1.0 : sub.determinant());
      }
    }
  };

  const bool constant = region.constant_metric();
  if (constant) build(0);
  const int b = w.block();
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    if (!constant) build(node);
    for (int j = 0; j < nout; ++j) {
      T* o = out.at(node, j);
      for (int k = 0; k < nin; ++k) {
        const double c = coef[static_cast<std::size_t>(j * nin + k)];
        if (c == 0.0) continue;
        const T* x = w.at(node, k);
        for (int e = 0; e < b; ++e) o[e] += c * x[e];
      }
    }
  }
  return out;
}

template <class T>
T pairwise_sum(std::span<const T> v) {
  if (v.size() <= 16) {
    T s{};
    for (const auto& x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

template <class T>
std::vector<T> integrate(const Form<T>& w) {
  const Grid& g = w.grid();
  if (w.degree() != g.dim)
    throw DegreeMismatch("integrate needs a top-degree form, got degree " +
                         std::to_string(w.degree()));
  const std::size_t nodes = g.node_count();
  std::vector<T> terms(nodes);
  std::vector<T> result(static_cast<std::size_t>(w.block()));
  for (int e = 0; e < w.block(); ++e) {
    for (std::size_t node = 0; node < nodes; ++node)
      terms[node] = g.quadrature_weight(node) * w.at(node, 0)[e];
    result[static_cast<std::size_t>(e)] =
        pairwise_sum(std::span<const T>(terms));
  }
  return result;
}

template <class T>
Form<T> restrict_to_slice(const Form<T>& w, Slice s) {
  const Grid& g = w.grid();
  if (s.axis < 0 || s.axis >= g.dim || s.index < 0 || s.index > g.cells[s.axis])
    throw NoSlice("slice outside the grid");
  if (w.degree() > g.dim - 1)
    throw DegreeMismatch("cannot pull back a top-degree form to a slice");
  const Grid sub = g.without_axis(s.axis);
  Form<T> out(sub, w.degree(), w.space());
  const int b = w.block();
  std::vector<int> source(static_cast<std::size_t>(out.components()));
  for (int c = 0; c < out.components(); ++c)
    source[static_cast<std::size_t>(c)] =
        w.component_of(detail::lift_mask(out.mask(c), s.axis));
  for (std::size_t k = 0; k < sub.node_count(); ++k) {
    const auto si = sub.index_of(k);
    std::array<int, max_dim> full{};
    for (int a = 0, bb = 0; a < g.dim; ++a)
      full[a] = (a == s.axis) ? s.index : si[bb++];
    const std::size_t node = g.node_of(full);
    for (int c = 0; c < out.components(); ++c) {
      const T* x = w.at(node, source[static_cast<std::size_t>(c)]);
      T* o = out.at(k, c);
      for (int e = 0; e < b; ++e) o[e] = x[e];
    }
  }
  return out;
}

template <class T>
std::vector<T> integrate_boundary(const Form<T>& w, FaceSet faces) {
  const Grid& g = w.grid();
  const int m = g.dim;
  if (w.degree() != m - 1)
    throw DegreeMismatch("boundary integral needs degree dim-1");
  std::vector<T> total(static_cast<std::size_t>(w.block()));
  if (m == 1) {
    if (faces.has(0, true))
      for (int e = 0; e < w.block(); ++e)
        total[static_cast<std::size_t>(e)] +=
            w.at(static_cast<std::size_t>(g.cells[0]), 0)[e];
    if (faces.has(0, false))
      for (int e = 0; e < w.block(); ++e)
        total[static_cast<std::size_t>(e)] -= w.at(0, 0)[e];
    return total;
  }
  for (int axis = 0; axis < m; ++axis)
    for (int side = 0; side < 2; ++side) {
      if (!faces.has(axis, side == 1)) continue;
      const double sign = (side == 1 ? 1.0 : -1.0) * ((axis % 2) ? -1.0 : 1.0);
      const auto face = restrict_to_slice(w, Slice{axis, side ? g.cells[axis] : 0});
      const auto v = integrate(face);
      for (std::size_t e = 0; e < v.size(); ++e) total[e] += sign * v[e];
    }
  return total;
}

Form<double> real_part(const Form<cplx>& f) {
  Form<double> out(f.grid(), f.degree(), f.space());
  auto src = f.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i].real();
  return out;
}

Form<cplx> to_complex(const Form<double>& f) {
  Form<cplx> out(f.grid(), f.degree(), f.space());
  auto src = f.values();
  auto dst = out.values();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i];
  return out;
}

#define CPS_INSTANTIATE(T)                                                   \
  template Form<T> exterior_derivative(const Form<T>&);                      \
  template Form<T> partial(const Form<T>&, int);                             \
  template Form<T> wedge(const Form<T>&, const Form<T>&, Pairing);           \
  template Form<T> graded_commutator(const Form<T>&, const Form<T>&);        \
  template Form<T> hodge(const Form<T>&, const Region&);                     \
  template T pairwise_sum(std::span<const T>);                               \
  template std::vector<T> integrate(const Form<T>&);                         \
  template Form<T> restrict_to_slice(const Form<T>&, Slice);                 \
  template std::vector<T> integrate_boundary(const Form<T>&, FaceSet);

CPS_INSTANTIATE(double)
CPS_INSTANTIATE(cplx)

#undef CPS_INSTANTIATE

}  // namespace cps
