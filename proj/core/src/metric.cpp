#include "seqends/metric.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

#include "seqends/error.hpp"

namespace seqends {

std::string_view to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::euclidean:
      return "euclidean";
    case MetricKind::max:
      return "max";
    case MetricKind::explicit_matrix:
      return "explicit-matrix";
  }
  return "unknown";
}

MetricKind parse_metric_kind(std::string_view text) {
  if (text == "euclidean") return MetricKind::euclidean;
  if (text == "max") return MetricKind::max;
  if (text == "explicit-matrix" || text == "matrix") return MetricKind::explicit_matrix;
  throw PreconditionError("unknown metric kind '" + std::string(text) + "'");
}

std::string_view to_string(SpaceFamily family) {
  switch (family) {
    case SpaceFamily::line:
      return "line";
    case SpaceFamily::euclidean_n:
      return "euclidean-n";
    case SpaceFamily::t_shape:
      return "t-shape";
    case SpaceFamily::tangent_circles:
      return "tangent-circles";
    case SpaceFamily::comb:
      return "comb";
    case SpaceFamily::csv_import:
      return "csv-import";
  }
  return "unknown";
}

SpaceFamily parse_space_family(std::string_view text) {
  if (text == "line") return SpaceFamily::line;
  if (text == "euclidean-n" || text == "plane") return SpaceFamily::euclidean_n;
  if (text == "t-shape") return SpaceFamily::t_shape;
  if (text == "tangent-circles") return SpaceFamily::tangent_circles;
  if (text == "comb") return SpaceFamily::comb;
  if (text == "csv-import" || text == "csv") return SpaceFamily::csv_import;
  throw PreconditionError("unknown space family '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// MetricSpaceSample

namespace {

void check_scalars(double window_radius, double resolution) {
  if (!(window_radius > 0.0) || !std::isfinite(window_radius)) {
    throw PreconditionError("window radius must be positive and finite");
  }
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw PreconditionError("resolution must be positive and finite");
  }
}

}  // namespace

MetricSpaceSample MetricSpaceSample::from_coordinates(std::size_t dimension, std::vector<double> coords,
                                                      MetricKind kind, PointId basepoint,
                                                      double window_radius, double resolution) {
  if (kind == MetricKind::explicit_matrix) {
    throw PreconditionError("explicit-matrix samples must be built from a distance matrix");
  }
  if (dimension == 0) throw PreconditionError("dimension must be at least 1");
  if (coords.size() % dimension != 0) {
    throw PreconditionError("coordinate count is not a multiple of the dimension");
  }
  check_scalars(window_radius, resolution);
  for (double c : coords) {
    if (!std::isfinite(c)) throw PreconditionError("non-finite coordinate");
  }

  MetricSpaceSample sample;
  sample.size_ = coords.size() / dimension;
  sample.dimension_ = dimension;
  sample.kind_ = kind;
  sample.basepoint_ = basepoint;
  sample.window_radius_ = window_radius;
  sample.resolution_ = resolution;
  sample.coords_ = std::move(coords);
  if (sample.size_ > 0 && basepoint >= sample.size_) {
    throw PreconditionError("basepoint id " + std::to_string(basepoint) + " is out of range");
  }
  sample.check_window();
  return sample;
}

MetricSpaceSample MetricSpaceSample::from_matrix(std::vector<double> matrix, std::size_t dimension,
                                                 std::vector<double> coords, PointId basepoint,
                                                 double window_radius, double resolution) {
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(matrix.size()))));
  if (n * n != matrix.size()) throw PreconditionError("distance matrix is not square");
  check_scalars(window_radius, resolution);
  for (double d : matrix) {
    if (!std::isfinite(d)) throw PreconditionError("non-finite distance in matrix");
  }
  if (!coords.empty() && (dimension == 0 || coords.size() != n * dimension)) {
    throw PreconditionError("coordinate rows do not match the distance matrix size");
  }

  MetricSpaceSample sample;
  sample.size_ = n;
  sample.dimension_ = coords.empty() ? 0 : dimension;
  sample.kind_ = MetricKind::explicit_matrix;
  sample.basepoint_ = basepoint;
  sample.window_radius_ = window_radius;
  sample.resolution_ = resolution;
  sample.coords_ = std::move(coords);
  sample.matrix_ = std::move(matrix);
  if (n > 0 && basepoint >= n) {
    throw PreconditionError("basepoint id " + std::to_string(basepoint) + " is out of range");
  }
  sample.check_window();
  return sample;
}

void MetricSpaceSample::check_window() const {
  std::vector<PointId> offenders;
  for (PointId id = 0; id < size_; ++id) {
    if (!within(distance_from_basepoint(id), window_radius_)) offenders.push_back(id);
  }
  if (offenders.empty()) return;
  std::ostringstream msg;
  msg << offenders.size() << " point(s) lie outside the window radius " << window_radius_ << ":";
  const std::size_t shown = std::min<std::size_t>(offenders.size(), 20);
  for (std::size_t i = 0; i < shown; ++i) {
    msg << " " << offenders[i] << " (distance " << distance_from_basepoint(offenders[i]) << ")";
  }
  if (shown < offenders.size()) msg << " ...";
  throw PreconditionError(msg.str());
}

std::span<const double> MetricSpaceSample::coords(PointId id) const {
  if (!has_coordinates()) return {};
  return std::span<const double>(coords_).subspan(id * dimension_, dimension_);
}

Point MetricSpaceSample::point(PointId id) const {
  const auto c = coords(id);
  return Point{id, std::vector<double>(c.begin(), c.end())};
}

double MetricSpaceSample::coordinate_distance(std::span<const double> a, std::span<const double> b) const {
  double acc = 0.0;
  if (kind_ == MetricKind::max) {
    for (std::size_t i = 0; i < a.size(); ++i) acc = std::max(acc, std::abs(a[i] - b[i]));
    return acc;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return std::sqrt(acc);
}

double MetricSpaceSample::distance(PointId a, PointId b) const {
  if (kind_ == MetricKind::explicit_matrix) return matrix_[a * size_ + b];
  return coordinate_distance(coords(a), coords(b));
}

std::pair<PointId, double> MetricSpaceSample::nearest(std::span<const double> target) const {
  if (kind_ == MetricKind::explicit_matrix || !has_coordinates()) {
    throw PreconditionError("nearest-point search needs a coordinate metric");
  }
  if (size_ == 0) throw PreconditionError("nearest-point search on an empty sample");
  if (target.size() != dimension_) throw PreconditionError("coordinate dimension mismatch");
  PointId best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (PointId id = 0; id < size_; ++id) {
    const double d = coordinate_distance(coords(id), target);
    if (d < best_d) {
      best_d = d;
      best = id;
    }
  }
  return {best, best_d};
}

std::optional<PointId> MetricSpaceSample::find(std::span<const double> target) const {
  if (!has_coordinates() || target.size() != dimension_) return std::nullopt;
  for (PointId id = 0; id < size_; ++id) {
    const auto c = coords(id);
    bool same = true;
    for (std::size_t i = 0; i < dimension_ && same; ++i) same = std::abs(c[i] - target[i]) <= kDistanceTolerance;
    if (same) return id;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Generators

namespace {

using Coords = std::vector<double>;

// Sorts lexicographically, merges coincident points, clips to the window and
// locates the basepoint by its exact coordinates.
MetricSpaceSample assemble(std::vector<Coords> points, std::size_t dimension, MetricKind kind,
                           const Coords& basepoint, double window_radius, double resolution) {
  std::sort(points.begin(), points.end());
  auto same = [](const Coords& a, const Coords& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::abs(a[i] - b[i]) > 1e-12) return false;
    }
    return true;
  };
  points.erase(std::unique(points.begin(), points.end(), same), points.end());

  // The window test has to use the sample's metric; build a scratch sample
  // holding only the basepoint to evaluate it.
  const auto probe = MetricSpaceSample::from_coordinates(dimension, basepoint, kind, 0,
                                                         window_radius, resolution);
  std::vector<double> flat;
  flat.reserve(points.size() * dimension);
  std::optional<PointId> base_id;
  PointId next = 0;
  for (const auto& p : points) {
    if (!within(probe.coordinate_distance(p, basepoint), window_radius)) continue;
    if (!base_id && same(p, basepoint)) base_id = next;
    flat.insert(flat.end(), p.begin(), p.end());
    ++next;
  }
  if (!base_id) throw PreconditionError("generator did not produce the basepoint");
  return MetricSpaceSample::from_coordinates(dimension, std::move(flat), kind, *base_id, window_radius,
                                             resolution);
}

MetricSpaceSample make_line(const SpaceSpec& spec) {
  const double h = spec.resolution;
  const auto steps = static_cast<long long>(std::floor(spec.window_radius / h + 1e-9));
  std::vector<Coords> pts;
  for (long long k = -steps; k <= steps; ++k) pts.push_back({static_cast<double>(k) * h});
  return assemble(std::move(pts), 1, MetricKind::euclidean, {0.0}, spec.window_radius, spec.resolution);
}

MetricSpaceSample make_grid(const SpaceSpec& spec) {
  const double h = spec.resolution;
  const auto steps = static_cast<long long>(std::floor(spec.window_radius / h + 1e-9));
  const std::size_t d = spec.dimension;
  std::vector<long long> idx(d, -steps);
  std::vector<Coords> pts;
  while (true) {
    Coords p(d);
    for (std::size_t i = 0; i < d; ++i) p[i] = static_cast<double>(idx[i]) * h;
    pts.push_back(std::move(p));
    std::size_t axis = d;
    while (axis > 0) {
      --axis;
      if (++idx[axis] <= steps) break;
      idx[axis] = -steps;
      if (axis == 0) {
        axis = d + 1;
        break;
      }
    }
    if (axis == d + 1) break;
  }
  return assemble(std::move(pts), d, MetricKind::max, Coords(d, 0.0), spec.window_radius, spec.resolution);
}

MetricSpaceSample make_t_shape(const SpaceSpec& spec) {
  const double h = spec.resolution;
  std::vector<Coords> pts;
  // Rays: y = 1 + k*h; the window clip in assemble() trims the top.
  const auto ray_steps = static_cast<long long>(std::ceil((spec.window_radius + 1.0) / h));
  for (long long k = 0; k <= ray_steps; ++k) {
    const double y = 1.0 + static_cast<double>(k) * h;
    pts.push_back({-1.0, y});
    pts.push_back({1.0, y});
  }
  // Bar with an even number of segments so that (0,1) is sampled.
  const auto half = static_cast<long long>(std::ceil(1.0 / h - 1e-12));
  const long long segments = 2 * half;
  for (long long i = 0; i <= segments; ++i) {
    pts.push_back({-1.0 + (2.0 * static_cast<double>(i)) / static_cast<double>(segments), 1.0});
  }
  return assemble(std::move(pts), 2, MetricKind::euclidean, {0.0, 1.0}, spec.window_radius, spec.resolution);
}

MetricSpaceSample make_tangent_circles(const SpaceSpec& spec) {
  const Coords base{0.0, 2.0};
  std::size_t count = spec.circle_count;
  if (count == 0) {
    // Farthest point of circle n from (0,2) is its top (0, 4*2^n).
    count = 1;
    while (4.0 * std::ldexp(1.0, static_cast<int>(count - 1)) - 2.0 <= spec.window_radius) ++count;
  }
  std::vector<Coords> pts;
  for (std::size_t n = 0; n < count; ++n) {
    const double r = std::ldexp(1.0, static_cast<int>(n));
    const double cy = 3.0 * r;
    // Even segment count keeps both tangency points (bottom, top) exact.
    auto segments = static_cast<long long>(std::ceil(2.0 * std::numbers::pi * r / spec.resolution));
    if (segments % 2 != 0) ++segments;
    segments = std::max<long long>(segments, 4);
    for (long long k = 0; k < segments; ++k) {
      if (k == 0) {
        pts.push_back({0.0, cy - r});
      } else if (2 * k == segments) {
        pts.push_back({0.0, cy + r});
      } else {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(segments);
        pts.push_back({r * std::sin(theta), cy - r * std::cos(theta)});
      }
    }
  }
  return assemble(std::move(pts), 2, MetricKind::euclidean, base, spec.window_radius, spec.resolution);
}

MetricSpaceSample make_comb(const SpaceSpec& spec) {
  const double h = spec.resolution;
  const double w = spec.window_radius;
  std::vector<Coords> pts;
  const auto x_steps = static_cast<long long>(std::floor(w / h + 1e-9));
  for (int n = 0;; ++n) {
    const double height = std::ldexp(1.0, n);
    if (height - 1.0 > w + kDistanceTolerance) break;
    for (long long k = -x_steps; k <= x_steps; ++k) pts.push_back({static_cast<double>(k) * h, height});
  }
  for (long long k = 0; k <= x_steps; ++k) pts.push_back({0.0, 1.0 + static_cast<double>(k) * h});
  return assemble(std::move(pts), 2, MetricKind::max, {0.0, 1.0}, w, spec.resolution);
}

}  // namespace

void validate(const SpaceSpec& spec) {
  if (spec.family == SpaceFamily::csv_import) {
    if (spec.points_path.empty() && spec.matrix_path.empty()) {
      throw PreconditionError("csv-import needs a points file or a matrix file");
    }
    check_scalars(spec.window_radius, spec.resolution);
    return;
  }
  check_scalars(spec.window_radius, spec.resolution);
  if (!(spec.resolution < spec.window_radius)) {
    throw PreconditionError("resolution must be smaller than the window radius");
  }
  if (spec.family == SpaceFamily::euclidean_n && spec.dimension < 2) {
    throw PreconditionError("euclidean-n requires dimension >= 2");
  }
  if (spec.family == SpaceFamily::tangent_circles && spec.circle_count > 60) {
    throw PreconditionError("tangent-circles supports at most 60 circles");
  }
}

MetricSpaceSample generate_space(const SpaceSpec& spec) {
  validate(spec);
  switch (spec.family) {
    case SpaceFamily::line:
      return make_line(spec);
    case SpaceFamily::euclidean_n:
      return make_grid(spec);
    case SpaceFamily::t_shape:
      return make_t_shape(spec);
    case SpaceFamily::tangent_circles:
      return make_tangent_circles(spec);
    case SpaceFamily::comb:
      return make_comb(spec);
    case SpaceFamily::csv_import: {
      LoadOptions options;
      options.metric = spec.metric;
      options.basepoint = spec.basepoint;
      options.window_radius = spec.window_radius;
      options.resolution = spec.resolution;
      options.matrix_path = spec.matrix_path;
      return load_points(spec.points_path, options);
    }
  }
  throw PreconditionError("unsupported space family");
}

// ---------------------------------------------------------------------------
// CSV ingestion

std::vector<std::vector<double>> parse_csv_rows(std::string_view text, std::string_view source) {
  std::vector<std::vector<double>> rows;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (eol == text.size()) break;
      continue;
    }

    std::vector<double> row;
    std::size_t col = 0;
    std::size_t field_start = 0;
    while (true) {
      ++col;
      const std::size_t comma = std::min(line.find(',', field_start), line.size());
      std::string_view field = line.substr(field_start, comma - field_start);
      while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
      while (!field.empty() && (field.back() == ' ' || field.back() == '\t')) field.remove_suffix(1);
      if (!field.empty() && field.front() == '+') field.remove_prefix(1);
      double value = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
      if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(value)) {
        std::ostringstream msg;
        msg << source << ": parse error at row " << line_no << ", column " << col << ": '" << field << "'";
        throw PreconditionError(msg.str());
      }
      row.push_back(value);
      if (comma == line.size()) break;
      field_start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      std::ostringstream msg;
      msg << source << ": row " << line_no << " has " << row.size() << " columns, expected "
          << rows.front().size();
      throw PreconditionError(msg.str());
    }
    rows.push_back(std::move(row));
    if (eol == text.size()) break;
  }
  return rows;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

MetricSpaceSample load_points(const std::string& path, const LoadOptions& options) {
  std::vector<std::vector<double>> rows;
  if (!path.empty()) rows = parse_csv_rows(read_file(path), path);
  const std::size_t dimension = rows.empty() ? 0 : rows.front().size();
  std::vector<double> flat;
  for (const auto& row : rows) flat.insert(flat.end(), row.begin(), row.end());

  MetricSpaceSample sample;
  if (options.metric == MetricKind::explicit_matrix) {
    if (options.matrix_path.empty()) throw PreconditionError("explicit-matrix input needs a matrix file");
    const auto matrix_rows = parse_csv_rows(read_file(options.matrix_path), options.matrix_path);
    const std::size_t n = matrix_rows.size();
    std::vector<double> matrix;
    matrix.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
      if (matrix_rows[i].size() != n) {
        throw PreconditionError(options.matrix_path + ": matrix is not square (row " + std::to_string(i + 1) +
                                " has " + std::to_string(matrix_rows[i].size()) + " columns)");
      }
      matrix.insert(matrix.end(), matrix_rows[i].begin(), matrix_rows[i].end());
    }
    if (!rows.empty() && rows.size() != n) {
      throw PreconditionError("points file has " + std::to_string(rows.size()) + " rows but the matrix has " +
                              std::to_string(n));
    }
    // Check the axioms before the window test so that asymmetric input is
    // reported as such rather than as a window overrun.
    const auto scratch = MetricSpaceSample::from_matrix(matrix, dimension, flat, 0,
                                                        std::numeric_limits<double>::max(), options.resolution);
    const auto report = validate_metric(scratch, 20000, 0);
    if (!report.ok()) {
      const auto& v = report.violations.front();
      std::ostringstream msg;
      msg << options.matrix_path << ": metric axiom violation (" << v.kind << ") at ids";
      for (auto id : v.ids) msg << " " << id;
      if (report.violations.size() > 1) msg << " and " << report.violations.size() - 1 << " more";
      throw PreconditionError(msg.str());
    }
    sample = MetricSpaceSample::from_matrix(std::move(matrix), dimension, std::move(flat), options.basepoint,
                                            options.window_radius, options.resolution);
  } else {
    if (rows.empty()) throw PreconditionError(path + ": no points");
    sample = MetricSpaceSample::from_coordinates(dimension, std::move(flat), options.metric, options.basepoint,
                                                 options.window_radius, options.resolution);
  }
  return sample;
}

// ---------------------------------------------------------------------------
// Validation

ValidationReport validate_metric(const MetricSpaceSample& sample, std::size_t triple_budget, std::uint64_t seed,
                                 std::size_t pair_budget) {
  ValidationReport report;
  const std::size_t n = sample.size();
  auto tol = [](double a, double b) { return kDistanceTolerance + 1e-12 * (std::abs(a) + std::abs(b)); };

  for (PointId a = 0; a < n; ++a) {
    const double d = sample.distance(a, a);
    if (std::abs(d) > kDistanceTolerance) report.violations.push_back({"identity", {a}, {d}});
  }
  for (PointId a = 0; a < n && report.pairs_checked < pair_budget; ++a) {
    for (PointId b = a + 1; b < n && report.pairs_checked < pair_budget; ++b) {
      ++report.pairs_checked;
      const double ab = sample.distance(a, b);
      const double ba = sample.distance(b, a);
      if (ab < -kDistanceTolerance || ba < -kDistanceTolerance) {
        report.violations.push_back({"negative", {a, b}, {ab, ba}});
      }
      if (std::abs(ab - ba) > tol(ab, ba)) report.violations.push_back({"symmetry", {a, b}, {ab, ba}});
    }
  }

  if (n < 3 || triple_budget == 0) return report;

  std::set<std::tuple<PointId, PointId, PointId>> seen;
  auto check = [&](PointId a, PointId b, PointId c) {
    ++report.triples_checked;
    // (x, via, y): d(x,y) <= d(x,via) + d(via,y)
    const std::array<std::array<PointId, 3>, 3> orientations{{{a, b, c}, {a, c, b}, {b, a, c}}};
    for (const auto& [x, via, y] : orientations) {
      const double direct = sample.distance(x, y);
      const double left = sample.distance(x, via);
      const double right = sample.distance(via, y);
      if (direct > left + right + tol(direct, left + right) && seen.emplace(x, via, y).second) {
        report.violations.push_back({"triangle", {x, via, y}, {direct, left, right}});
      }
    }
  };

  const long double total = static_cast<long double>(n) * (n - 1) * (n - 2) / 6.0L;
  if (total <= static_cast<long double>(triple_budget)) {
    for (PointId a = 0; a < n; ++a)
      for (PointId b = a + 1; b < n; ++b)
        for (PointId c = b + 1; c < n; ++c) check(a, b, c);
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<PointId> pick(0, n - 1);
    for (std::size_t i = 0; i < triple_budget; ++i) {
      std::array<PointId, 3> t{pick(rng), pick(rng), pick(rng)};
      if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2]) {
        --i;
        continue;
      }
      std::sort(t.begin(), t.end());
      check(t[0], t[1], t[2]);
    }
  }
  return report;
}

std::vector<PointId> ball_complement(const MetricSpaceSample& sample, double radius) {
  if (!(radius >= 0.0)) throw PreconditionError("radius must be non-negative");
  if (radius > sample.window_radius() + kDistanceTolerance) {
    std::ostringstream msg;
    msg << "radius " << radius << " exceeds the window radius " << sample.window_radius();
    throw PreconditionError(msg.str());
  }
  std::vector<PointId> out;
  for (PointId id = 0; id < sample.size(); ++id) {
    if (sample.distance_from_basepoint(id) > radius + kDistanceTolerance) out.push_back(id);
  }
  return out;
}

RebasedSample rebase(const MetricSpaceSample& sample, PointId new_basepoint) {
  if (new_basepoint >= sample.size()) throw PreconditionError("basepoint id is out of range");
  const double offset = sample.distance(sample.basepoint(), new_basepoint);
  const double window = sample.window_radius() - offset;
  if (!(window > sample.resolution())) {
    std::ostringstream msg;
    msg << "basepoint " << new_basepoint << " is " << offset << " from the window centre; the remaining window "
        << window << " is too small";
    throw PreconditionError(msg.str());
  }

  RebasedSample out;
  out.offset = offset;
  std::optional<PointId> base;
  for (PointId id = 0; id < sample.size(); ++id) {
    if (!within(sample.distance(new_basepoint, id), window)) continue;
    if (id == new_basepoint) base = out.original_ids.size();
    out.original_ids.push_back(id);
  }

  if (sample.metric_kind() == MetricKind::explicit_matrix) {
    const std::size_t m = out.original_ids.size();
    std::vector<double> matrix(m * m);
    std::vector<double> coords;
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) matrix[i * m + j] = sample.distance(out.original_ids[i], out.original_ids[j]);
      if (sample.has_coordinates()) {
        const auto c = sample.coords(out.original_ids[i]);
        coords.insert(coords.end(), c.begin(), c.end());
      }
    }
    out.sample = MetricSpaceSample::from_matrix(std::move(matrix), sample.dimension(), std::move(coords), *base,
                                                window, sample.resolution());
  } else {
    std::vector<double> coords;
    for (auto id : out.original_ids) {
      const auto c = sample.coords(id);
      coords.insert(coords.end(), c.begin(), c.end());
    }
    out.sample = MetricSpaceSample::from_coordinates(sample.dimension(), std::move(coords), sample.metric_kind(),
                                                     *base, window, sample.resolution());
  }
  return out;
}

}  // namespace seqends
