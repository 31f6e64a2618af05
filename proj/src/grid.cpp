// Distributed under the MIT License.
// See LICENSE.txt for details.

#include "cps/grid.hpp"

#include <bit>
#include <cmath>

#include "cps/error.hpp"

namespace cps {

Grid Grid::box(std::span<const double> lo, std::span<const double> hi,
               std::span<const int> cell_counts) {
  if (lo.size() != hi.size() || lo.size() != cell_counts.size() ||
      lo.empty() || lo.size() > max_dim)
    throw std::invalid_argument("grid: inconsistent extents");
  Grid g;
  g.dim = static_cast<int>(lo.size());
  for (int a = 0; a < g.dim; ++a) {
    if (!(hi[a] > lo[a])) throw std::invalid_argument("grid: empty extent");
    if (cell_counts[a] < 2)
      throw std::invalid_argument("grid: need at least 2 cells per axis");
    g.lower[a] = lo[a];
    g.upper[a] = hi[a];
    g.cells[a] = cell_counts[a];
  }
  return g;
}

std::size_t Grid::node_count() const {
  std::size_t n = 1;
  for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(nodes(a));
  return n;
}

std::size_t Grid::stride(int axis) const {
  std::size_t s = 1;
  for (int a = dim - 1; a > axis; --a) s *= static_cast<std::size_t>(nodes(a));
  return s;
}

std::array<int, max_dim> Grid::index_of(std::size_t node) const {
  std::array<int, max_dim> idx{};
  for (int a = dim - 1; a >= 0; --a) {
    const auto n = static_cast<std::size_t>(nodes(a));
    idx[a] = static_cast<int>(node % n);
    node /= n;
  }
  return idx;
}

std::size_t Grid::node_of(const std::array<int, max_dim>& idx) const {
  std::size_t node = 0;
  for (int a = 0; a < dim; ++a)
    node = node * static_cast<std::size_t>(nodes(a)) +
           static_cast<std::size_t>(idx[a]);
  return node;
}

bool Grid::on_boundary(std::size_t node) const {
  const auto idx = index_of(node);
  for (int a = 0; a < dim; ++a)
    if (idx[a] == 0 || idx[a] == cells[a]) return true;
  return false;
}

double Grid::quadrature_weight(std::size_t node) const {
  const auto idx = index_of(node);
  double w = 1.0;
  for (int a = 0; a < dim; ++a) {
    w *= spacing(a);
    if (idx[a] == 0 || idx[a] == cells[a]) w *= 0.5;
  }
  return w;
}

Grid Grid::without_axis(int axis) const {
  Grid g;
  g.dim = dim - 1;
  for (int a = 0, b = 0; a < dim; ++a) {
    if (a == axis) continue;
    g.lower[b] = lower[a];
    g.upper[b] = upper[a];
    g.cells[b] = cells[a];
    ++b;
  }
  return g;
}

Signature Signature::euclidean(int n) {
  Signature s;
  s.dim = n;
  return s;
}

Signature Signature::lorentzian(int n) {
  Signature s;
  s.dim = n;
  for (int a = 1; a < n; ++a) s.signs[a] = -1;
  return s;
}

Signature Signature::parse(const std::string& text, int n) {
  if (text == "euclidean") return euclidean(n);
  if (text == "lorentzian") return lorentzian(n);
  Signature s;
  s.dim = n;
  int a = 0;
  for (char c : text) {
    if (c != '+' && c != '-') continue;
    if (a >= n) throw ConfigError("signature has too many entries: " + text);
    s.signs[a++] = (c == '+') ? 1 : -1;
  }
  if (a != n) throw ConfigError("signature length mismatch: " + text);
  return s;
}

std::string Signature::str() const {
  std::string out = "(";
  for (int a = 0; a < dim; ++a) {
    if (a) out += ',';
    out += signs[a] > 0 ? '+' : '-';
  }
  return out + ")";
}

int Signature::determinant_sign() const {
  int s = 1;
  for (int a = 0; a < dim; ++a) s *= signs[a];
  return s;
}

Eigen::MatrixXd Signature::matrix() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) m(a, a) = signs[a];
  return m;
}

namespace {

struct MaskTables {
  std::array<std::array<std::vector<unsigned>, max_dim + 1>, max_dim + 1> lists;
  std::array<std::array<std::array<int, 16>, max_dim + 1>, max_dim + 1> index{};

  MaskTables() {
    for (int n = 0; n <= max_dim; ++n)
      for (int p = 0; p <= n; ++p) {
        auto& list = lists[n][p];
        // Lexicographic order of sorted tuples.
        std::vector<int> tuple(p);
        for (int i = 0; i < p; ++i) tuple[i] = i;
        while (true) {
          unsigned m = 0;
          for (int v : tuple) m |= 1u << v;
          list.push_back(m);
          int k = p - 1;
          while (k >= 0 && tuple[k] == n - p + k) --k;
          if (k < 0) break;
          ++tuple[k];
          for (int j = k + 1; j < p; ++j) tuple[j] = tuple[j - 1] + 1;
        }
        index[n][p].fill(-1);
        for (std::size_t i = 0; i < list.size(); ++i)
          index[n][p][list[i]] = static_cast<int>(i);
      }
  }
};

const MaskTables& tables() {
  static const MaskTables t;
  return t;
}

}  // namespace

const std::vector<unsigned>& component_masks(int n, int p) {
  if (n < 0 || n > max_dim || p < 0 || p > n)
    throw DegreeOverflow("no components for degree " + std::to_string(p) +
                         " in dimension " + std::to_string(n));
  return tables().lists[n][p];
}

int component_index(int n, int p, unsigned mask) {
  return tables().index[n][p][mask];
}

int merge_sign(unsigned first, unsigned second) {
  int inversions = 0;
  for (unsigned m = first; m; m &= m - 1) {
    const int i = std::countr_zero(m);
    inversions += std::popcount(second & ((1u << i) - 1u));
  }
  return (inversions & 1) ? -1 : 1;
}

int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::vector<int> mask_axes(unsigned mask) {
  std::vector<int> out;
  for (unsigned m = mask; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

Region Region::flat(const Grid& grid, const Signature& signature) {
  if (signature.dim != grid.dim)
    throw std::invalid_argument("region: signature dimension mismatch");
  Region r;
  r.grid_ = grid;
  r.signature_ = signature;
  const auto m = signature.matrix();
  r.metric_.resize(r.stride());
  for (int i = 0; i < grid.dim; ++i)
    for (int j = 0; j < grid.dim; ++j) r.metric_[i * grid.dim + j] = m(i, j);
  r.validate();
  return r;
}

Region Region::with_metric(const Grid& grid, const Signature& signature,
                           std::vector<double> metric) {
  Region r;
  r.grid_ = grid;
  r.signature_ = signature;
  if (metric.size() != r.stride() &&
      metric.size() != r.stride() * grid.node_count())
    throw std::invalid_argument("region: metric array has wrong size");
  r.metric_ = std::move(metric);
  r.validate();
  return r;
}

MetricMatrix Region::metric_at(std::size_t node) const {
  const int n = grid_.dim;
  const std::size_t off = constant_metric() ? 0 : node * stride();
  MetricMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = metric_[off + i * n + j];
  return g;
}

void Region::validate() const {
  const std::size_t count = constant_metric() ? 1 : grid_.node_count();
  for (std::size_t k = 0; k < count; ++k) {
    const auto g = metric_at(k);
    if ((g - g.transpose()).cwiseAbs().maxCoeff() >
        1e-12 * (1.0 + g.cwiseAbs().maxCoeff()))
      throw std::invalid_argument("region: metric not symmetric");
    if (std::abs(g.determinant()) < metric_det_floor)
      throw DegenerateMetric("region: |det g| below floor at node " +
                             std::to_string(k));
  }
}

Region& Region::set_slice(Slice s) {
  if (s.axis < 0 || s.axis >= grid_.dim || s.index < 0 ||
      s.index > grid_.cells[s.axis])
    throw NoSlice("slice outside the grid");
  slice_ = s;
  return *this;
}

Region Region::slice_region() const {
  if (!slice_) throw NoSlice("region has no slice");
  const Slice s = *slice_;
  const Grid sub = grid_.without_axis(s.axis);
  Signature sig;
  sig.dim = sub.dim;
  for (int a = 0, b = 0; a < grid_.dim; ++a)
    if (a != s.axis) sig.signs[b++] = signature_.signs[a];
  const int n = grid_.dim, m = sub.dim;
  auto restrict_one = [&](std::size_t node, double* out) {
    const auto g = metric_at(node);
    for (int i = 0, bi = 0; i < n; ++i) {
      if (i == s.axis) continue;
      for (int j = 0, bj = 0; j < n; ++j) {
        if (j == s.axis) continue;
        out[bi * m + bj] = g(i, j);
        ++bj;
      }
      ++bi;
    }
  };
  std::vector<double> metric;
  if (constant_metric()) {
    metric.resize(static_cast<std::size_t>(m * m));
    restrict_one(0, metric.data());
  } else {
    metric.resize(static_cast<std::size_t>(m * m) * sub.node_count());
    for (std::size_t k = 0; k < sub.node_count(); ++k) {
      const auto si = sub.index_of(k);
      std::array<int, max_dim> full{};
      for (int a = 0, b = 0; a < n; ++a)
        full[a] = (a == s.axis) ? s.index : si[b++];
      restrict_one(grid_.node_of(full), metric.data() + k * m * m);
    }
  }
  return with_metric(sub, sig, std::move(metric));
}

}  // namespace cps
