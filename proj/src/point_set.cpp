#include "wenoshep/point_set.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "wenoshep/csv.hpp"
#include "wenoshep/errors.hpp"

namespace wenoshep {

// ---------------------------------------------------------------------------
// Points / Box

Points::Points(std::size_t dim, std::vector<double> coords)
    : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw std::invalid_argument("Points: dim must be positive");
  if (coords_.size() % dim_ != 0) {
    throw std::invalid_argument("Points: coordinate count not a multiple of dim");
  }
}

void Points::push_back(std::span<const double> p) {
  if (p.size() != dim_) throw std::invalid_argument("Points: dimension mismatch");
  coords_.insert(coords_.end(), p.begin(), p.end());
}

Box Box::unit(std::size_t dim) {
  return {std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0)};
}

Box Box::bounding(const Points& pts) {
  const std::size_t d = pts.dim();
  Box b{std::vector<double>(d, std::numeric_limits<double>::infinity()),
        std::vector<double>(d, -std::numeric_limits<double>::infinity())};
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto p = pts[i];
    for (std::size_t k = 0; k < d; ++k) {
      b.lower[k] = std::min(b.lower[k], p[k]);
      b.upper[k] = std::max(b.upper[k], p[k]);
    }
  }
  if (pts.empty()) {
    b.lower.assign(d, 0.0);
    b.upper.assign(d, 0.0);
  }
  return b;
}

bool Box::contains(std::span<const double> p) const noexcept {
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (p[k] < lower[k] || p[k] > upper[k]) return false;
  }
  return true;
}

double Box::diameter() const noexcept {
  double s = 0.0;
  for (std::size_t k = 0; k < lower.size(); ++k) {
    s += (upper[k] - lower[k]) * (upper[k] - lower[k]);
  }
  return std::sqrt(s);
}

// ---------------------------------------------------------------------------
// SpatialIndex

SpatialIndex::SpatialIndex(std::shared_ptr<const Points> shared, double cell_size)
    : nodes_(std::move(shared)), cell_size_(cell_size) {
  if (!nodes_) throw std::invalid_argument("SpatialIndex: null node set");
  const Points& nodes = *nodes_;
  if (!(cell_size > 0.0) || !std::isfinite(cell_size)) {
    throw std::invalid_argument("SpatialIndex: cell size must be positive");
  }
  const std::size_t d = nodes.dim();
  const Box bb = Box::bounding(nodes);
  origin_ = bb.lower;

  // Keep the dense cell array proportional to the node count.
  const double max_cells = std::max<double>(64.0, 4.0 * static_cast<double>(nodes.size()));
  while (true) {
    double total = 1.0;
    cells_per_axis_.assign(d, 1);
    for (std::size_t k = 0; k < d; ++k) {
      const double extent = bb.upper[k] - bb.lower[k];
      const double n = std::floor(extent / cell_size_) + 1.0;
      cells_per_axis_[k] = static_cast<std::size_t>(n);
      total *= n;
    }
    if (total <= max_cells) break;
    cell_size_ *= 2.0;
  }

  const std::size_t ncells =
      std::accumulate(cells_per_axis_.begin(), cells_per_axis_.end(),
                      std::size_t{1}, std::multiplies<>());
  std::vector<std::size_t> cell_of(nodes.size());
  std::vector<std::size_t> counts(ncells + 1, 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto p = nodes[i];
    std::size_t c = 0;
    for (std::size_t k = d; k-- > 0;) c = c * cells_per_axis_[k] + axis_cell(k, p[k]);
    cell_of[i] = c;
    ++counts[c + 1];
  }
  std::partial_sum(counts.begin(), counts.end(), counts.begin());
  cell_start_ = counts;
  items_.resize(nodes.size());
  std::vector<std::size_t> fill = counts;
  for (std::size_t i = 0; i < nodes.size(); ++i) items_[fill[cell_of[i]]++] = i;
}

std::size_t SpatialIndex::axis_cell(std::size_t axis, double coord) const noexcept {
  const double t = std::floor((coord - origin_[axis]) / cell_size_);
  if (!(t > 0.0)) return 0;
  const auto n = cells_per_axis_[axis];
  if (t >= static_cast<double>(n - 1)) return n - 1;
  return static_cast<std::size_t>(t);
}

void SpatialIndex::within(std::span<const double> center, double radius,
                          std::vector<std::size_t>& out) const {
  out.clear();
  if (nodes_ == nullptr || nodes_->empty()) return;
  const std::size_t d = nodes_->dim();
  std::vector<std::size_t> lo(d), hi(d), cur(d);
  for (std::size_t k = 0; k < d; ++k) {
    lo[k] = axis_cell(k, center[k] - radius);
    hi[k] = axis_cell(k, center[k] + radius);
  }
  cur = lo;
  while (true) {
    std::size_t c = 0;
    for (std::size_t k = d; k-- > 0;) c = c * cells_per_axis_[k] + cur[k];
    for (std::size_t s = cell_start_[c]; s < cell_start_[c + 1]; ++s) {
      const std::size_t i = items_[s];
      if (euclidean_distance((*nodes_)[i], center) < radius) out.push_back(i);
    }
    std::size_t k = 0;
    while (k < d && cur[k] == hi[k]) {
      cur[k] = lo[k];
      ++k;
    }
    if (k == d) break;
    ++cur[k];
  }
  std::sort(out.begin(), out.end());
}

std::vector<std::size_t> SpatialIndex::within(std::span<const double> center,
                                              double radius) const {
  std::vector<std::size_t> out;
  within(center, radius, out);
  return out;
}

std::size_t SpatialIndex::nearest(std::span<const double> center) const {
  if (nodes_ == nullptr || nodes_->empty()) {
    throw std::invalid_argument("SpatialIndex::nearest on empty node set");
  }
  std::vector<std::size_t> cand;
  double r = cell_size_;
  while (true) {
    within(center, r, cand);
    if (!cand.empty()) break;
    r *= 2.0;
  }
  std::size_t best = cand.front();
  double best_d = euclidean_distance((*nodes_)[best], center);
  for (const auto i : cand) {
    const double dd = euclidean_distance((*nodes_)[i], center);
    if (dd < best_d) {
      best = i;
      best_d = dd;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// PointSet

PointSet::PointSet(Points nodes, std::vector<double> values)
    : nodes_(std::make_shared<const Points>(std::move(nodes))),
      values_(std::move(values)) {
  box_ = Box::bounding(*nodes_);
  validate();
  build_index();
}

PointSet::PointSet(Points nodes, std::vector<double> values, Box box)
    : nodes_(std::make_shared<const Points>(std::move(nodes))),
      values_(std::move(values)),
      box_(std::move(box)) {
  validate();
  for (std::size_t i = 0; i < size(); ++i) {
    if (!box_.contains(node(i))) {
      throw std::invalid_argument("PointSet: node outside the declared box");
    }
  }
  build_index();
}

void PointSet::validate() const {
  const Points& nodes = *nodes_;
  if (nodes.dim() == 0) throw std::invalid_argument("PointSet: dim must be positive");
  if (values_.size() != nodes.size()) {
    throw std::invalid_argument("PointSet: values and nodes differ in length");
  }
  if (box_.lower.size() != nodes.dim() || box_.upper.size() != nodes.dim()) {
    throw std::invalid_argument("PointSet: box dimension mismatch");
  }
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  auto less = [&](std::size_t a, std::size_t b) {
    const auto pa = nodes[a];
    const auto pb = nodes[b];
    return std::lexicographical_compare(pa.begin(), pa.end(), pb.begin(), pb.end());
  };
  std::sort(order.begin(), order.end(), less);
  for (std::size_t k = 1; k < order.size(); ++k) {
    const auto pa = nodes[order[k - 1]];
    const auto pb = nodes[order[k]];
    if (std::equal(pa.begin(), pa.end(), pb.begin())) {
      std::ostringstream os;
      os << "PointSet: duplicate nodes " << order[k - 1] << " and " << order[k];
      throw std::invalid_argument(os.str());
    }
  }
}

void PointSet::build_index() {
  // About one node per cell for quasi-uniform sets.
  const Box bb = Box::bounding(*nodes_);
  double extent = 0.0;
  for (std::size_t k = 0; k < dim(); ++k) extent = std::max(extent, bb.upper[k] - bb.lower[k]);
  const double per_axis =
      std::max(1.0, std::ceil(std::pow(static_cast<double>(std::max<std::size_t>(size(), 1)),
                                       1.0 / static_cast<double>(dim()))));
  const double cell = extent > 0.0 ? extent / per_axis : 1.0;
  index_ = std::make_shared<const SpatialIndex>(nodes_, cell);
}

PointSet PointSet::with_values(std::vector<double> values) const {
  if (values.size() != size()) {
    throw std::invalid_argument("PointSet::with_values: length mismatch");
  }
  PointSet out = *this;
  out.values_ = std::move(values);
  return out;
}

// ---------------------------------------------------------------------------
// Generators

PointSet regular_grid(int level, const Field& field) {
  if (level < 1) throw std::invalid_argument("regular_grid: level must be >= 1");
  if (level > 24) throw std::invalid_argument("regular_grid: level too large");
  const std::size_t m = (std::size_t{1} << level) + 1;
  const double scale = static_cast<double>(std::size_t{1} << level);
  Points nodes(2);
  nodes.reserve(m * m);
  std::vector<double> values;
  values.reserve(m * m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t i = 0; i < m; ++i) {
      const double p[2] = {static_cast<double>(i) / scale, static_cast<double>(j) / scale};
      nodes.push_back(p);
      values.push_back(field(p));
    }
  }
  return PointSet(std::move(nodes), std::move(values), Box::unit(2));
}

double radical_inverse(unsigned long long k, unsigned base) {
  if (base < 2) throw std::invalid_argument("radical_inverse: base must be >= 2");
  unsigned long long num = 0;
  unsigned long long den = 1;
  // Exact integer digit reversal while it fits; one rounding at the end.
  while (k > 0 && den <= (std::numeric_limits<unsigned long long>::max() / base) / base) {
    num = num * base + k % base;
    den *= base;
    k /= base;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

PointSet halton_points(std::size_t count, const Field& field,
                       unsigned long long start) {
  if (count < 1) throw std::invalid_argument("halton_points: count must be >= 1");
  Points nodes(2);
  nodes.reserve(count);
  std::vector<double> values;
  values.reserve(count);
  for (std::size_t n = 0; n < count; ++n) {
    const unsigned long long k = start + n;
    const double p[2] = {radical_inverse(k, 2), radical_inverse(k, 3)};
    nodes.push_back(p);
    values.push_back(field(p));
  }
  return PointSet(std::move(nodes), std::move(values), Box::unit(2));
}

// ---------------------------------------------------------------------------
// Fill distance and queries

FillDistanceEstimate fill_distance(const PointSet& ps, int probe_resolution) {
  if (ps.size() == 0) throw std::invalid_argument("fill_distance: empty point set");
  if (probe_resolution < 2) {
    throw std::invalid_argument("fill_distance: probe_resolution must be >= 2");
  }
  const std::size_t d = ps.dim();
  const auto res = static_cast<std::size_t>(probe_resolution);
  std::vector<std::size_t> cur(d, 0);
  std::vector<double> probe(d);
  double h = 0.0;
  while (true) {
    for (std::size_t k = 0; k < d; ++k) {
      const double t = static_cast<double>(cur[k]) / static_cast<double>(res - 1);
      probe[k] = ps.box().lower[k] + t * (ps.box().upper[k] - ps.box().lower[k]);
    }
    const auto i = ps.index().nearest(probe);
    h = std::max(h, euclidean_distance(ps.node(i), probe));
    std::size_t k = 0;
    while (k < d && cur[k] == res - 1) {
      cur[k] = 0;
      ++k;
    }
    if (k == d) break;
    ++cur[k];
  }
  return {h, probe_resolution};
}

std::vector<std::size_t> neighbors_within(const PointSet& ps,
                                          std::span<const double> center,
                                          double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("neighbors_within: radius must be positive");
  if (center.size() != ps.dim()) throw std::invalid_argument("neighbors_within: dimension mismatch");
  return ps.index().within(center, radius);
}

// ---------------------------------------------------------------------------
// CSV

PointSet read_point_set_csv(const std::string& path) {
  const auto lines = csv::read_lines(path);
  if (lines.empty() || lines.front() != "x,y,f") {
    throw MalformedInputError(path + ": expected header 'x,y,f'");
  }
  Points nodes(2);
  std::vector<double> values;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    const std::string ctx = path + ":" + std::to_string(ln + 1);
    const auto fields = csv::split(lines[ln]);
    if (fields.size() != 3) throw MalformedInputError(ctx + ": expected 3 fields");
    const double p[2] = {csv::parse_double(fields[0], ctx), csv::parse_double(fields[1], ctx)};
    nodes.push_back(p);
    values.push_back(csv::parse_double(fields[2], ctx));
  }
  try {
    return PointSet(std::move(nodes), std::move(values));
  } catch (const std::invalid_argument& e) {
    throw MalformedInputError(path + ": " + e.what());
  }
}

void write_point_set_csv(const PointSet& ps, const std::string& path) {
  if (ps.dim() != 2) throw std::invalid_argument("write_point_set_csv: only 2-D sets");
  std::string out = "x,y,f\n";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto p = ps.node(i);
    out += csv::format_double(p[0]) + ',' + csv::format_double(p[1]) + ',' +
           csv::format_double(ps.values()[i]) + '\n';
  }
  csv::write_file(path, out);
}

Points read_query_csv(const std::string& path) {
  const auto lines = csv::read_lines(path);
  if (lines.empty()) throw MalformedInputError(path + ": empty file");
  const auto header = csv::split(lines.front());
  if (header.size() < 2 || header[0] != "x" || header[1] != "y") {
    throw MalformedInputError(path + ": header must start with 'x,y'");
  }
  Points pts(2);
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    const std::string ctx = path + ":" + std::to_string(ln + 1);
    const auto fields = csv::split(lines[ln]);
    if (fields.size() != header.size()) throw MalformedInputError(ctx + ": wrong field count");
    const double p[2] = {csv::parse_double(fields[0], ctx), csv::parse_double(fields[1], ctx)};
    pts.push_back(p);
  }
  return pts;
}

}  // namespace wenoshep
