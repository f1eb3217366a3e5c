#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "seqends/chains.hpp"
#include "seqends/metric.hpp"
#include "seqends/sequences.hpp"

namespace seqends {

/// Throws PreconditionError("<what> must be increasing") and friends.
void check_grid(std::span<const double> values, std::string_view what, bool require_positive);

// ---------------------------------------------------------------------------
// End-equivalence decisions

enum class EndVerdict { same_end, distinct_up_to_kmax, undetermined };

std::string_view to_string(EndVerdict verdict);

/// At `radius`, s[s_index] and t[t_index] lie outside B(x0, radius) and are
/// joined there by `chain`.
struct EndWitness {
  double radius = 0.0;
  std::size_t s_index = 0;
  std::size_t t_index = 0;
  KChain chain;
};

struct KAttempt {
  double K = 0.0;
  bool skipped = false;                 // K below the sequences' chain bounds
  std::optional<double> failed_radius;  // first radius without a joining chain
};

struct EndDecision {
  EndVerdict verdict = EndVerdict::undetermined;
  std::optional<double> K_used;
  std::vector<EndWitness> witnesses;  // one per radius when same-end
  std::vector<KAttempt> attempts;
  std::string note;
};

/// One-point criterion: for each K of the sweep that is at least both chain
/// bounds, and for every radius of the grid, look for s_i and t_j in the same
/// K-chain component of X - B(x0, R). The first K that works for all radii
/// gives same-end. Sequences that do not clear the largest radius in the
/// final quarter of their prefix give undetermined.
EndDecision same_end(const CoarseSequencePrefix& s, const CoarseSequencePrefix& t, std::span<const double> K_sweep,
                     std::span<const double> radius_grid);

/// Replays a same-end decision in level-chain form: each witness becomes a
/// stitch s[i*] ~ t[j*] with strictly increasing indices, extending the
/// witness chain along s and t where needed.
std::vector<Stitch> harvest_stitches(const CoarseSequencePrefix& s, const CoarseSequencePrefix& t,
                                     const EndDecision& decision);

// ---------------------------------------------------------------------------
// Filtration and end counting

struct EndFiltration {
  double K = 0.0;
  double window_radius = 0.0;
  std::vector<double> radii;
  std::vector<ChainPartition> levels;
  /// reach[j][c]: max dist(x0, p) over the members of component c at level j.
  std::vector<std::vector<double>> reach;
  /// thread_maps[j][c]: component at level j containing component c of level j+1.
  std::vector<std::vector<int>> thread_maps;
};

/// `margin` defaults to K: the largest radius must stay K inside the window.
EndFiltration build_filtration(const MetricSpaceSample& sample, double K, std::span<const double> radius_grid,
                               std::optional<double> margin = std::nullopt);

/// Components at the largest radius that reach within `live_margin` of the
/// window edge.
int count_ends(const EndFiltration& filtration, double live_margin);

inline double default_live_margin(double K) { return 2.0 * K; }

struct SigmaEntry {
  double K = 0.0;
  int count = 0;
  double live_margin = 0.0;
};

struct SigmaReport {
  std::vector<double> K_sweep;
  std::vector<double> radii;
  std::vector<SigmaEntry> entries;
  std::optional<int> stabilized;  // set when the last ceil(n/3) counts agree
  std::vector<EndFiltration> filtrations;
};

SigmaReport sigma_estimate(const MetricSpaceSample& sample, std::span<const double> K_sweep,
                           std::span<const double> radius_grid, std::optional<double> live_margin = std::nullopt);

// ---------------------------------------------------------------------------
// Maps between samples

struct SampledMap {
  SamplePtr domain;
  SamplePtr codomain;
  std::vector<PointId> image;  // domain id -> codomain id
};

SampledMap make_sampled_map(SamplePtr domain, SamplePtr codomain, std::vector<PointId> image);
SampledMap identity_map(const SamplePtr& sample);

/// Sends each domain point to the codomain point nearest to transform(coords).
/// Rejects snaps farther than the codomain resolution.
SampledMap map_by_coordinates(SamplePtr domain, SamplePtr codomain,
                              const std::function<std::vector<double>(std::span<const double>)>& transform);

/// g ∘ f; requires f.codomain == g.domain.
SampledMap compose(const SampledMap& f, const SampledMap& g);

struct ModuliReport {
  std::vector<std::pair<double, double>> bornologous;  // (N, M(N))
  std::vector<std::pair<double, double>> properness;   // (r, max dist(x0, p) over f(p) in B(f(x0), r))
  bool properness_suspect = false;
};

/// Empirical moduli of a sampled map. `radii` defaults to `N_list`.
ModuliReport check_bornologous_proper(const SampledMap& map, std::span<const double> N_list,
                                      std::span<const double> radii = {});

/// Pointwise image f(s), based when f(x0) is the codomain basepoint.
CoarseSequencePrefix induced_map(const SampledMap& map, const CoarseSequencePrefix& s);

// ---------------------------------------------------------------------------
// Basepoint independence

struct BasepointRun {
  PointId basepoint = 0;  // id in the original sample
  std::vector<double> coords;
  double offset = 0.0;
  std::vector<double> radii;  // grid shifted by the offset
  SigmaReport sigma;
};

struct BasepointReport {
  std::vector<BasepointRun> runs;
  bool consistent = true;
};

/// Reruns sigma_estimate around each basepoint, shrinking the window and the
/// radius grid by its offset from the original basepoint.
BasepointReport basepoint_invariance_check(const MetricSpaceSample& sample, std::span<const PointId> basepoints,
                                           std::span<const double> K_sweep, std::span<const double> radius_grid,
                                           std::optional<double> live_margin = std::nullopt);

}  // namespace seqends
