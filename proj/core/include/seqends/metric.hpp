#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace seqends {

using PointId = std::size_t;

/// Absolute slack used for every "d <= bound" comparison. Grid spaces produce
/// distances exactly equal to K, so a strict comparison would disconnect them.
inline constexpr double kDistanceTolerance = 1e-9;

inline bool within(double distance, double bound) { return distance <= bound + kDistanceTolerance; }

enum class MetricKind { euclidean, max, explicit_matrix };

std::string_view to_string(MetricKind kind);
MetricKind parse_metric_kind(std::string_view text);

struct Point {
  PointId id = 0;
  std::vector<double> coords;
};

/// A finite window X ∩ B(x0, window_radius) of an (unbounded) metric space.
///
/// Points are numbered 0..size()-1. Coordinate-backed samples evaluate the
/// euclidean or max metric on demand; matrix-backed samples look distances up
/// in a dense n×n table (coordinates, when present, are informational only).
/// `resolution` records the generator's density promise: every omitted point
/// of the intended space inside the window lies within `resolution` of a
/// sampled point.
class MetricSpaceSample {
 public:
  MetricSpaceSample() = default;

  static MetricSpaceSample from_coordinates(std::size_t dimension, std::vector<double> coords,
                                            MetricKind kind, PointId basepoint,
                                            double window_radius, double resolution);

  /// `coords` may be empty; otherwise it holds size()*dimension values.
  static MetricSpaceSample from_matrix(std::vector<double> matrix, std::size_t dimension,
                                       std::vector<double> coords, PointId basepoint,
                                       double window_radius, double resolution);

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  std::size_t dimension() const { return dimension_; }
  MetricKind metric_kind() const { return kind_; }
  PointId basepoint() const { return basepoint_; }
  double window_radius() const { return window_radius_; }
  double resolution() const { return resolution_; }
  bool has_coordinates() const { return dimension_ > 0 && coords_.size() == size_ * dimension_; }

  std::span<const double> coords(PointId id) const;
  Point point(PointId id) const;

  double distance(PointId a, PointId b) const;
  double distance_from_basepoint(PointId id) const { return distance(basepoint_, id); }

  /// Metric evaluated on raw coordinate vectors. Only for coordinate metrics.
  double coordinate_distance(std::span<const double> a, std::span<const double> b) const;

  /// Nearest sampled point to an arbitrary coordinate vector (brute force,
  /// ties to the smaller id). Requires a coordinate metric and a non-empty sample.
  std::pair<PointId, double> nearest(std::span<const double> coords) const;

  /// Exact (tolerance 1e-9) coordinate lookup.
  std::optional<PointId> find(std::span<const double> coords) const;

 private:
  std::size_t size_ = 0;
  std::size_t dimension_ = 0;
  MetricKind kind_ = MetricKind::euclidean;
  PointId basepoint_ = 0;
  double window_radius_ = 1.0;
  double resolution_ = 1.0;
  std::vector<double> coords_;
  std::vector<double> matrix_;

  void check_window() const;
};

using SamplePtr = std::shared_ptr<const MetricSpaceSample>;

inline SamplePtr share(MetricSpaceSample sample) {
  return std::make_shared<const MetricSpaceSample>(std::move(sample));
}

enum class SpaceFamily { line, euclidean_n, t_shape, tangent_circles, comb, csv_import };

std::string_view to_string(SpaceFamily family);
SpaceFamily parse_space_family(std::string_view text);

struct SpaceSpec {
  SpaceFamily family = SpaceFamily::line;
  std::size_t dimension = 1;
  double window_radius = 10.0;
  double resolution = 1.0;
  /// tangent-circles only; 0 adds circles until one leaves the window.
  std::size_t circle_count = 0;

  // csv-import only
  std::string points_path;
  std::string matrix_path;
  MetricKind metric = MetricKind::euclidean;
  PointId basepoint = 0;
};

void validate(const SpaceSpec& spec);

/// Samples one of the built-in families (or loads a CSV). Deterministic.
///  line             {k*h : |k*h| <= W}, basepoint 0
///  euclidean-n      cubic grid of spacing h under the max metric, basepoint 0
///  t-shape          rays x = ±1 (y >= 1) joined by the bar y = 1, basepoint (0,1)
///  tangent-circles  circles centred (0, 3*2^n) of radius 2^n, basepoint (0,2)
///  comb             teeth y = 2^n plus spine x = 0 (y >= 1), max metric, basepoint (0,1)
MetricSpaceSample generate_space(const SpaceSpec& spec);

struct LoadOptions {
  MetricKind metric = MetricKind::euclidean;
  PointId basepoint = 0;
  double window_radius = 1.0;
  double resolution = 1.0;
  /// Required for explicit-matrix; the points file may then be empty.
  std::string matrix_path;
};

/// Reads comma-separated coordinates, one point per line, no header.
MetricSpaceSample load_points(const std::string& path, const LoadOptions& options);

/// Parses CSV text into rows of reals. Errors carry 1-based row and column.
std::vector<std::vector<double>> parse_csv_rows(std::string_view text, std::string_view source);

struct Violation {
  std::string kind;  // identity | negative | symmetry | triangle
  std::vector<PointId> ids;
  std::vector<double> values;
};

struct ValidationReport {
  std::size_t pairs_checked = 0;
  std::size_t triples_checked = 0;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
};

/// Checks identity/symmetry/non-negativity on up to `pair_budget` pairs and the
/// triangle inequality on `triple_budget` triples. When the sample has no more
/// than `triple_budget` triples they are enumerated exhaustively; otherwise
/// triples are drawn from a generator seeded with `seed`.
ValidationReport validate_metric(const MetricSpaceSample& sample, std::size_t triple_budget,
                                 std::uint64_t seed = 0,
                                 std::size_t pair_budget = std::numeric_limits<std::size_t>::max());

/// Sampled points strictly outside the closed ball B(x0, radius), ascending.
std::vector<PointId> ball_complement(const MetricSpaceSample& sample, double radius);

struct RebasedSample {
  MetricSpaceSample sample;
  std::vector<PointId> original_ids;  // new id -> id in the source sample
  double offset = 0.0;                // dist(old basepoint, new basepoint)
};

/// Moves the basepoint to `new_basepoint` and shrinks the window by the offset
/// so that the new ball is still covered by the old one. Points outside the new
/// window are dropped and ids are renumbered.
RebasedSample rebase(const MetricSpaceSample& sample, PointId new_basepoint);

}  // namespace seqends
