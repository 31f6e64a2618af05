// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

#include "cps/form.hpp"
#include "cps/grid.hpp"

namespace cps::test {

inline Grid unit_box(int dim, int cells, double lo = 0.0, double hi = 1.0) {
  std::vector<double> l(dim, lo), h(dim, hi);
  std::vector<int> c(dim, cells);
  return Grid::box(l, h, c);
}

using Point = std::array<double, max_dim>;

/// Scalar-valued form with component c given by fn(c, x).
template <class T = double>
Form<T> scalar_form(const Grid& g, int degree,
                    const std::function<double(int, const Point&)>& fn) {
  return sample_form<T>(g, degree, ValueSpace::scalar(),
                        [&](std::size_t, const Point& x, int c, T* v) {
                          *v = fn(c, x);
                        });
}

/// Sign of the permutation taking `idx` to sorted order, 0 on repeats.
inline int permutation_sign(std::vector<int> idx) {
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (idx[i] == idx[j]) return 0;
      if (idx[i] > idx[j]) sign = -sign;
    }
  return sign;
}

/// Fully antisymmetric component w_{i1..ip} from increasing-order storage.
template <class T>
T antisym_component(const Form<T>& w, std::size_t node, int entry,
                    const std::vector<int>& idx) {
  const int s = permutation_sign(idx);
  if (s == 0) return T{};
  unsigned mask = 0;
  for (int i : idx) mask |= 1u << i;
  return static_cast<double>(s) * w.at(node, w.component_of(mask))[entry];
}

/// Least-squares slope of log(err) against log(h).
inline double slope(const std::vector<double>& h, const std::vector<double>& err) {
  const double n = static_cast<double>(h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double x = std::log(h[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Max-abs difference of two same-shape forms.
template <class T>
double max_diff(const Form<T>& a, const Form<T>& b) {
  double m = 0.0;
  const auto va = a.values();
  const auto vb = b.values();
  for (std::size_t i = 0; i < va.size(); ++i)
    m = std::max(m, std::abs(va[i] - vb[i]));
  return m;
}

/// Max-abs difference restricted to nodes at least `margin` away from
/// every face.
template <class T>
double interior_max_diff(const Form<T>& a, const Form<T>& b, int margin = 1) {
  const Grid& g = a.grid();
  double m = 0.0;
  for (std::size_t node = 0; node < g.node_count(); ++node) {
    const auto idx = g.index_of(node);
    bool inner = true;
    for (int ax = 0; ax < g.dim; ++ax)
      inner = inner && idx[ax] >= margin && idx[ax] <= g.cells[ax] - margin;
    if (!inner) continue;
    for (int c = 0; c < a.components(); ++c)
      for (int e = 0; e < a.block(); ++e)
        m = std::max(m, std::abs(a.at(node, c)[e] - b.at(node, c)[e]));
  }
  return m;
}

}  // namespace cps::test
