// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <array>
#include <span>
#include <vector>

#include "cps/form.hpp"
#include "cps/grid.hpp"

namespace cps {

/// Second-order central differences inside, second-order one-sided on the
/// two boundary planes of each axis.
template <class T>
Form<T> exterior_derivative(const Form<T>& w);
template <class T>
Form<T> exterior_derivative(const Form<T>& w, const Region&) {
  return exterior_derivative(w);
}

/// Componentwise partial derivative along one axis (same degree).
template <class T>
Form<T> partial(const Form<T>& w, int axis);

enum class Pairing {
  scalar,   // 1x1 times 1x1
  trace,    // Tr(a b)
  inner,    // Re(a^dagger b)
  bullet,   // epsilon contraction of 4x4 blocks, eta-raised
  product,  // matrix product, also the action on representation vectors
};

template <class T>
Form<T> wedge(const Form<T>& a, const Form<T>& b, Pairing pairing);

/// out += scale * (a wedge b) with a caller-supplied block pairing
/// op(node, const T* a, const T* b, T* out, T factor).
template <class T, class Op>
void wedge_accumulate(const Form<T>& a, const Form<T>& b, Form<T>& out, Op&& op,
                      T scale = T{1});

/// Graded commutator [a ^ b] = a^b - (-1)^{pq} b^a of matrix-valued forms.
template <class T>
Form<T> graded_commutator(const Form<T>& a, const Form<T>& b);

template <class T>
Form<T> hodge(const Form<T>& w, const Region& region);

/// Trapezoid rule on the top component. Returns one value per block entry.
template <class T>
std::vector<T> integrate(const Form<T>& w);
template <class T>
std::vector<T> integrate(const Form<T>& w, const Region&) {
  return integrate(w);
}
template <class T>
T integrate_scalar(const Form<T>& w) {
  if (w.block() != 1) throw PairingMismatch("integrand is not scalar");
  return integrate(w)[0];
}

/// Pullback to the plane x^axis = const; drops components along axis.
template <class T>
Form<T> restrict_to_slice(const Form<T>& w, Slice s);
template <class T>
Form<T> restrict_to_slice(const Form<T>& w, const Region& region) {
  if (!region.slice()) throw NoSlice("region has no slice");
  return restrict_to_slice(w, *region.slice());
}

/// Faces of a box: bit (2*axis + side), side 1 being the upper face.
struct FaceSet {
  unsigned bits = ~0u;
  static FaceSet all() { return {}; }
  static FaceSet only(int axis, bool upper) {
    return {1u << (2 * axis + (upper ? 1 : 0))};
  }
  bool has(int axis, bool upper) const {
    return (bits >> (2 * axis + (upper ? 1 : 0))) & 1u;
  }
};

/// Integral of a degree (m-1) form over the boundary of the m-box it lives
/// on, outward orientation. For m = 1 this is the signed endpoint sum.
template <class T>
std::vector<T> integrate_boundary(const Form<T>& w, FaceSet faces = {});
template <class T>
T integrate_boundary_scalar(const Form<T>& w, FaceSet faces = {}) {
  if (w.block() != 1) throw PairingMismatch("integrand is not scalar");
  return integrate_boundary(w, faces)[0];
}

/// Deterministic pairwise summation.
template <class T>
T pairwise_sum(std::span<const T> v);

// ---------------------------------------------------------------------------

namespace detail {

struct WedgeTerm {
  int out_comp;
  int a_comp;
  int b_comp;
  int sign;
};

std::vector<WedgeTerm> wedge_terms(int n, int p, int q);

}  // namespace detail

template <class T, class Op>
void wedge_accumulate(const Form<T>& a, const Form<T>& b, Form<T>& out, Op&& op,
                      T scale) {
  if (!(a.grid() == b.grid()) || !(a.grid() == out.grid()))
    throw GridMismatch("wedge of forms on different grids");
  const int n = a.grid().dim;
  if (a.degree() + b.degree() > n)
    throw DegreeOverflow("wedge degree exceeds dimension");
  if (out.degree() != a.degree() + b.degree())
    throw DegreeMismatch("wedge output has the wrong degree");
  const auto terms = detail::wedge_terms(n, a.degree(), b.degree());
  const std::size_t nodes = a.nodes();
  for (std::size_t node = 0; node < nodes; ++node)
    for (const auto& t : terms)
      op(node, a.at(node, t.a_comp), b.at(node, t.b_comp),
         out.at(node, t.out_comp), scale * static_cast<double>(t.sign));
}

}  // namespace cps
