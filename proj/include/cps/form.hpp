// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cps/error.hpp"
#include "cps/grid.hpp"
#include "cps/lie.hpp"

namespace cps {

enum class ValueKind { scalar, algebra, group, rep, matrix };

/// What each component of a form holds: a rows x cols block, column-major.
struct ValueSpace {
  ValueKind kind = ValueKind::scalar;
  GroupTag group{};
  RepTag rep = RepTag::none;
  int rows = 1;
  int cols = 1;

  static ValueSpace scalar() { return {}; }
  static ValueSpace algebra(GroupTag g) {
    return {ValueKind::algebra, g, RepTag::none, g.n, g.n};
  }
  static ValueSpace group_valued(GroupTag g) {
    return {ValueKind::group, g, RepTag::none, g.n, g.n};
  }
  static ValueSpace rep_vector(GroupTag g, RepTag r) {
    const int d = rep_dimension(r, g);
    return {ValueKind::rep, g, r, d, 1};
  }
  static ValueSpace matrix(int rows, int cols) {
    return {ValueKind::matrix, GroupTag{}, RepTag::none, rows, cols};
  }

  int size() const { return rows * cols; }
  bool operator==(const ValueSpace&) const = default;
};

inline double real_of(double x) { return x; }
inline double real_of(const cplx& x) { return x.real(); }
inline double abs2_of(double x) { return x * x; }
inline double abs2_of(const cplx& x) { return std::norm(x); }
inline double conj_of(double x) { return x; }
inline cplx conj_of(const cplx& x) { return std::conj(x); }

/// Degree-p differential form on a grid. Storage index:
/// (node * components + component) * block + entry.
template <class T>
class Form {
 public:
  using value_type = T;
  using Block = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;

  Form() = default;
  Form(const Grid& grid, int degree, ValueSpace space)
      : grid_(grid), degree_(degree), space_(space) {
    if (degree < 0 || degree > grid.dim)
      throw DegreeOverflow("form degree " + std::to_string(degree) +
                           " outside [0, " + std::to_string(grid.dim) + "]");
    ncomp_ = binomial(grid.dim, degree);
    data_.assign(grid.node_count() * static_cast<std::size_t>(ncomp_) *
                     static_cast<std::size_t>(space.size()),
                 T{});
  }

  const Grid& grid() const { return grid_; }
  int degree() const { return degree_; }
  const ValueSpace& space() const { return space_; }
  int components() const { return ncomp_; }
  int block() const { return space_.size(); }
  std::size_t nodes() const { return grid_.node_count(); }
  bool empty() const { return data_.empty(); }
  unsigned mask(int comp) const {
    return component_masks(grid_.dim, degree_)[comp];
  }
  int component_of(unsigned mask) const {
    return component_index(grid_.dim, degree_, mask);
  }

  T* at(std::size_t node, int comp) {
    return data_.data() + (node * ncomp_ + comp) * block();
  }
  const T* at(std::size_t node, int comp) const {
    return data_.data() + (node * ncomp_ + comp) * block();
  }
  Eigen::Map<Block> matrix(std::size_t node, int comp) {
    return {at(node, comp), space_.rows, space_.cols};
  }
  Eigen::Map<const Block> matrix(std::size_t node, int comp) const {
    return {at(node, comp), space_.rows, space_.cols};
  }

  std::span<T> values() { return data_; }
  std::span<const T> values() const { return data_; }

  /// Relabel the value space without touching data; sizes must agree.
  Form& retag(ValueSpace space) {
    if (space.size() != space_.size())
      throw PairingMismatch("retag changes block size");
    space_ = space;
    return *this;
  }

  Form& operator+=(const Form& o) {
    require_compatible(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Form& operator-=(const Form& o) {
    require_compatible(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Form& operator*=(T s) {
    for (auto& v : data_) v *= s;
    return *this;
  }
  /// this += s * o
  Form& add_scaled(T s, const Form& o) {
    require_compatible(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * o.data_[i];
    return *this;
  }

  double norm_squared() const {
    double s = 0.0;
    for (const auto& v : data_) s += abs2_of(v);
    return s;
  }
  /// Root-mean-square over all stored entries.
  double norm_rms() const {
    return data_.empty() ? 0.0
                         : std::sqrt(norm_squared() /
                                     static_cast<double>(data_.size()));
  }
  double max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::sqrt(abs2_of(v)));
    return m;
  }

  void require_compatible(const Form& o) const {
    if (!(grid_ == o.grid_)) throw GridMismatch("forms live on different grids");
    if (degree_ != o.degree_)
      throw DegreeMismatch("degree " + std::to_string(degree_) + " vs " +
                           std::to_string(o.degree_));
    if (space_.rows != o.space_.rows || space_.cols != o.space_.cols)
      throw PairingMismatch("value spaces differ");
  }

 private:
  Grid grid_;
  int degree_ = 0;
  ValueSpace space_;
  int ncomp_ = 0;
  std::vector<T> data_;
};

template <class T>
Form<T> operator+(Form<T> a, const Form<T>& b) {
  return a += b;
}
template <class T>
Form<T> operator-(Form<T> a, const Form<T>& b) {
  return a -= b;
}
template <class T>
Form<T> operator*(T s, Form<T> a) {
  return a *= s;
}

/// Zero form with the same shape.
template <class T>
Form<T> zero_like(const Form<T>& f) {
  return Form<T>(f.grid(), f.degree(), f.space());
}

/// Fill a form nodewise: fn(node, coords, comp, T* block).
template <class T, class Fn>
Form<T> sample_form(const Grid& grid, int degree, ValueSpace space, Fn&& fn) {
  Form<T> out(grid, degree, space);
  std::array<double, max_dim> x{};
  for (std::size_t node = 0; node < grid.node_count(); ++node) {
    const auto idx = grid.index_of(node);
    for (int a = 0; a < grid.dim; ++a) x[a] = grid.coord(a, idx[a]);
    for (int c = 0; c < out.components(); ++c) fn(node, x, c, out.at(node, c));
  }
  return out;
}

Form<double> real_part(const Form<cplx>& f);
Form<cplx> to_complex(const Form<double>& f);

}  // namespace cps
