// Distributed under the MIT License.
// See LICENSE.txt for details.

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cps {

inline constexpr int max_dim = 4;
inline constexpr double metric_det_floor = 1e-12;

using MetricMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::ColMajor, max_dim, max_dim>;

/// Node-centred structured grid on a box. Axis 0 varies slowest.
struct Grid {
  int dim = 0;
  std::array<double, max_dim> lower{};
  std::array<double, max_dim> upper{};
  std::array<int, max_dim> cells{};

  static Grid box(std::span<const double> lo, std::span<const double> hi,
                  std::span<const int> cell_counts);

  int nodes(int axis) const { return cells[axis] + 1; }
  double spacing(int axis) const {
    return (upper[axis] - lower[axis]) / cells[axis];
  }
  double coord(int axis, int i) const {
    return lower[axis] + i * spacing(axis);
  }
  std::size_t node_count() const;
  std::size_t stride(int axis) const;
  std::array<int, max_dim> index_of(std::size_t node) const;
  std::size_t node_of(const std::array<int, max_dim>& idx) const;
  bool on_boundary(std::size_t node) const;
  /// Trapezoid weight of a node including the cell volume.
  double quadrature_weight(std::size_t node) const;
  /// The grid with one axis removed.
  Grid without_axis(int axis) const;

  bool operator==(const Grid&) const = default;
};

/// Sign pattern of the flat reference metric, e.g. (+,-,-,-).
struct Signature {
  int dim = 0;
  std::array<int, max_dim> signs{1, 1, 1, 1};

  static Signature euclidean(int n);
  /// (+,-,...,-) with the first axis timelike.
  static Signature lorentzian(int n);
  static Signature parse(const std::string& text, int n);
  std::string str() const;
  int determinant_sign() const;
  Eigen::MatrixXd matrix() const;
  bool operator==(const Signature&) const = default;
};

/// Sigma is the grid plane x^axis = coord(axis, index).
struct Slice {
  int axis = 0;
  int index = 0;
};

/// Lexicographic list of strictly increasing index tuples as bitmasks.
const std::vector<unsigned>& component_masks(int n, int p);
int component_index(int n, int p, unsigned mask);
/// Sign of the permutation that sorts the concatenation (I, J).
int merge_sign(unsigned first, unsigned second);
int binomial(int n, int k);
std::vector<int> mask_axes(unsigned mask);

/// Grid plus a nodal metric, its signature label, and an optional slice.
class Region {
 public:
  Region() = default;
  /// Constant metric equal to the signature matrix.
  static Region flat(const Grid& grid, const Signature& signature);
  /// Nodal metric, n*n row-major entries per node.
  static Region with_metric(const Grid& grid, const Signature& signature,
                            std::vector<double> metric);

  const Grid& grid() const { return grid_; }
  int dim() const { return grid_.dim; }
  const Signature& signature() const { return signature_; }
  bool constant_metric() const { return metric_.size() == stride(); }
  MetricMatrix metric_at(std::size_t node) const;

  Region& set_slice(Slice s);
  const std::optional<Slice>& slice() const { return slice_; }
  /// Sigma as a region of dimension n-1 with the induced metric.
  Region slice_region() const;

 private:
  std::size_t stride() const {
    return static_cast<std::size_t>(grid_.dim * grid_.dim);
  }
  void validate() const;

  Grid grid_;
  Signature signature_;
  std::vector<double> metric_;
  std::optional<Slice> slice_;
};

}  // namespace cps
