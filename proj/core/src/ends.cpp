#include "seqends/ends.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "seqends/error.hpp"

namespace seqends {

void check_grid(std::span<const double> values, std::string_view what, bool require_positive) {
  if (values.empty()) throw PreconditionError(std::string(what) + " must be nonempty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) throw PreconditionError(std::string(what) + " must be finite");
    if (require_positive ? !(values[i] > 0.0) : !(values[i] >= 0.0)) {
      throw PreconditionError(std::string(what) + (require_positive ? " must be positive" : " must be non-negative"));
    }
    if (i > 0 && !(values[i] > values[i - 1])) throw PreconditionError(std::string(what) + " must be increasing");
  }
}

std::string_view to_string(EndVerdict verdict) {
  switch (verdict) {
    case EndVerdict::same_end:
      return "same-end";
    case EndVerdict::distinct_up_to_kmax:
      return "distinct-up-to-Kmax";
    case EndVerdict::undetermined:
      return "undetermined";
  }
  return "unknown";
}

namespace {

void check_margin(const MetricSpaceSample& sample, double max_radius, double margin) {
  if (max_radius > sample.window_radius() - margin + kDistanceTolerance) {
    std::ostringstream msg;
    msg << "largest radius " << max_radius << " exceeds window radius " << sample.window_radius() << " minus margin "
        << margin;
    throw PreconditionError(msg.str());
  }
}

// Smallest (i, j) in lexicographic order with s_i, t_j in one component.
std::optional<std::pair<std::size_t, std::size_t>> find_joined_pair(const ChainPartition& partition,
                                                                    const CoarseSequencePrefix& s,
                                                                    const CoarseSequencePrefix& t) {
  std::map<int, std::size_t> first_t;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (auto c = partition.component_of(t[j])) first_t.emplace(*c, j);
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (auto c = partition.component_of(s[i])) {
      if (auto it = first_t.find(*c); it != first_t.end()) return std::pair{i, it->second};
    }
  }
  return std::nullopt;
}

}  // namespace

EndDecision same_end(const CoarseSequencePrefix& s, const CoarseSequencePrefix& t, std::span<const double> K_sweep,
                     std::span<const double> radius_grid) {
  if (s.sample() != t.sample()) throw PreconditionError("sequences live in different samples");
  check_grid(K_sweep, "K sweep", true);
  check_grid(radius_grid, "radius grid", false);
  const auto& sample = s.space();
  check_margin(sample, radius_grid.back(), K_sweep.back());

  EndDecision decision;
  const double r_max = radius_grid.back();
  for (const auto* seq : {&s, &t}) {
    const auto check = check_coarse(*seq, r_max);
    if (check.verdict != CoarseVerdict::coarse) {
      std::ostringstream msg;
      msg << (seq == &s ? "s" : "t") << " is " << to_string(check.verdict) << " at radius " << r_max
          << " (final-quarter distance " << check.escape_radius_reached << ")";
      decision.note = msg.str();
      return decision;
    }
    const auto& terms = seq->terms();
    if (std::none_of(terms.begin(), terms.end(),
                     [&](PointId p) { return sample.distance_from_basepoint(p) > r_max + kDistanceTolerance; })) {
      decision.note = std::string(seq == &s ? "s" : "t") + " has no term outside the largest radius";
      return decision;
    }
  }

  std::vector<std::vector<PointId>> complements;
  complements.reserve(radius_grid.size());
  for (double R : radius_grid) complements.push_back(ball_complement(sample, R));

  const double min_K = std::max(s.chain_bound(), t.chain_bound());
  for (double K : K_sweep) {
    KAttempt attempt{K, false, std::nullopt};
    if (!within(min_K, K)) {
      attempt.skipped = true;
      decision.attempts.push_back(attempt);
      continue;
    }
    std::vector<EndWitness> witnesses;
    for (std::size_t r = 0; r < radius_grid.size(); ++r) {
      const auto partition = k_chain_components(sample, complements[r], K);
      const auto pair = find_joined_pair(partition, s, t);
      if (!pair) {
        attempt.failed_radius = radius_grid[r];
        break;
      }
      auto chain = k_chain_path(sample, complements[r], K, s[pair->first], t[pair->second]);
      if (!chain) throw std::logic_error("component members without a connecting chain");
      witnesses.push_back({radius_grid[r], pair->first, pair->second, std::move(*chain)});
    }
    decision.attempts.push_back(attempt);
    if (!attempt.failed_radius) {
      decision.verdict = EndVerdict::same_end;
      decision.K_used = K;
      decision.witnesses = std::move(witnesses);
      return decision;
    }
  }

  const bool all_skipped =
      std::all_of(decision.attempts.begin(), decision.attempts.end(), [](const KAttempt& a) { return a.skipped; });
  if (all_skipped) {
    std::ostringstream msg;
    msg << "every K in the sweep is below the chain bound " << min_K;
    decision.note = msg.str();
    return decision;
  }
  decision.verdict = EndVerdict::distinct_up_to_kmax;
  return decision;
}

std::vector<Stitch> harvest_stitches(const CoarseSequencePrefix& s, const CoarseSequencePrefix& t,
                                     const EndDecision& decision) {
  if (decision.verdict != EndVerdict::same_end) throw PreconditionError("only same-end decisions carry stitches");
  const double K = std::max({*decision.K_used, s.chain_bound(), t.chain_bound()});
  std::vector<Stitch> stitches;
  for (const auto& w : decision.witnesses) {
    if (w.s_index >= s.size() || w.t_index >= t.size()) throw PreconditionError("witness index out of range");
    std::size_t i = w.s_index;
    std::size_t j = w.t_index;
    if (!stitches.empty()) {
      i = std::max(i, stitches.back().s_index + 1);
      j = std::max(j, stitches.back().t_index + 1);
    }
    if (i >= s.size() || j >= t.size()) continue;

    Stitch st{i, j, KChain{K, {}}};
    auto& pts = st.chain.points;
    for (std::size_t k = i; k > w.s_index; --k) pts.push_back(s[k]);
    pts.insert(pts.end(), w.chain.points.begin(), w.chain.points.end());
    for (std::size_t k = w.t_index + 1; k <= j; ++k) pts.push_back(t[k]);
    stitches.push_back(std::move(st));
  }
  return stitches;
}

EndFiltration build_filtration(const MetricSpaceSample& sample, double K, std::span<const double> radius_grid,
                               std::optional<double> margin) {
  if (!(K > 0.0)) throw PreconditionError("K must be positive");
  check_grid(radius_grid, "radius grid", false);
  check_margin(sample, radius_grid.back(), margin.value_or(K));

  EndFiltration f;
  f.K = K;
  f.window_radius = sample.window_radius();
  f.radii.assign(radius_grid.begin(), radius_grid.end());
  for (double R : radius_grid) {
    const auto complement = ball_complement(sample, R);
    auto partition = k_chain_components(sample, complement, K);
    std::vector<double> reach(partition.count(), 0.0);
    for (const auto& comp : partition.components) {
      for (auto id : comp.members) {
        reach[static_cast<std::size_t>(comp.id)] =
            std::max(reach[static_cast<std::size_t>(comp.id)], sample.distance_from_basepoint(id));
      }
    }
    f.levels.push_back(std::move(partition));
    f.reach.push_back(std::move(reach));
  }

  for (std::size_t j = 0; j + 1 < f.levels.size(); ++j) {
    const auto& inner = f.levels[j];
    const auto& outer = f.levels[j + 1];
    std::vector<int> map(outer.count(), -1);
    for (const auto& comp : outer.components) {
      const auto parent = inner.component_of(comp.representative);
      if (!parent) throw std::logic_error("filtration level is not nested in the previous one");
      for (auto id : comp.members) {
        if (inner.component_of(id) != parent) throw std::logic_error("thread map is not well defined");
      }
      map[static_cast<std::size_t>(comp.id)] = *parent;
    }
    f.thread_maps.push_back(std::move(map));
  }
  return f;
}

int count_ends(const EndFiltration& filtration, double live_margin) {
  if (filtration.levels.empty()) return 0;
  const double threshold = filtration.window_radius - live_margin;
  const auto& reach = filtration.reach.back();
  return static_cast<int>(
      std::count_if(reach.begin(), reach.end(), [&](double d) { return d >= threshold - kDistanceTolerance; }));
}

SigmaReport sigma_estimate(const MetricSpaceSample& sample, std::span<const double> K_sweep,
                           std::span<const double> radius_grid, std::optional<double> live_margin) {
  check_grid(K_sweep, "K sweep", true);
  check_grid(radius_grid, "radius grid", false);
  check_margin(sample, radius_grid.back(), K_sweep.back());

  SigmaReport report;
  report.K_sweep.assign(K_sweep.begin(), K_sweep.end());
  report.radii.assign(radius_grid.begin(), radius_grid.end());
  for (double K : K_sweep) {
    auto filtration = build_filtration(sample, K, radius_grid);
    const double margin = live_margin.value_or(default_live_margin(K));
    report.entries.push_back({K, count_ends(filtration, margin), margin});
    report.filtrations.push_back(std::move(filtration));
  }

  const std::size_t tail = (report.entries.size() + 2) / 3;
  const int last = report.entries.back().count;
  const bool constant = std::all_of(report.entries.end() - static_cast<std::ptrdiff_t>(tail), report.entries.end(),
                                    [&](const SigmaEntry& e) { return e.count == last; });
  if (constant) report.stabilized = last;
  return report;
}

// ---------------------------------------------------------------------------
// Maps

SampledMap make_sampled_map(SamplePtr domain, SamplePtr codomain, std::vector<PointId> image) {
  if (!domain || !codomain) throw PreconditionError("map needs a domain and a codomain");
  if (image.size() != domain->size()) throw PreconditionError("map must be total on the domain");
  for (auto y : image) {
    if (y >= codomain->size()) throw PreconditionError("map image " + std::to_string(y) + " is not a codomain point");
  }
  return SampledMap{std::move(domain), std::move(codomain), std::move(image)};
}

SampledMap identity_map(const SamplePtr& sample) {
  std::vector<PointId> image(sample->size());
  for (PointId i = 0; i < image.size(); ++i) image[i] = i;
  return make_sampled_map(sample, sample, std::move(image));
}

SampledMap map_by_coordinates(SamplePtr domain, SamplePtr codomain,
                              const std::function<std::vector<double>(std::span<const double>)>& transform) {
  std::vector<PointId> image;
  image.reserve(domain->size());
  for (PointId x = 0; x < domain->size(); ++x) {
    const auto target = transform(domain->coords(x));
    const auto [y, err] = codomain->nearest(target);
    if (!within(err, codomain->resolution())) {
      std::ostringstream msg;
      msg << "image of domain point " << x << " is " << err << " from the codomain sample";
      throw PreconditionError(msg.str());
    }
    image.push_back(y);
  }
  return make_sampled_map(std::move(domain), std::move(codomain), std::move(image));
}

SampledMap compose(const SampledMap& f, const SampledMap& g) {
  if (f.codomain != g.domain) throw PreconditionError("maps do not compose: f's codomain is not g's domain");
  std::vector<PointId> image(f.image.size());
  for (std::size_t x = 0; x < image.size(); ++x) image[x] = g.image[f.image[x]];
  return make_sampled_map(f.domain, g.codomain, std::move(image));
}

ModuliReport check_bornologous_proper(const SampledMap& map, std::span<const double> N_list,
                                      std::span<const double> radii) {
  check_grid(N_list, "N list", true);
  if (radii.empty()) radii = N_list;
  check_grid(radii, "radius list", false);
  const auto& X = *map.domain;
  const auto& Y = *map.codomain;

  std::vector<PointId> all(X.size());
  for (PointId i = 0; i < all.size(); ++i) all[i] = i;

  ModuliReport report;
  for (double N : N_list) {
    double M = 0.0;
    for_each_close_pair(X, all, N, [&](PointId a, PointId b) { M = std::max(M, Y.distance(map.image[a], map.image[b])); });
    report.bornologous.emplace_back(N, M);
  }

  const PointId fx0 = map.image[X.basepoint()];
  for (double r : radii) {
    double far = 0.0;
    for (PointId p = 0; p < X.size(); ++p) {
      if (within(Y.distance(fx0, map.image[p]), r)) far = std::max(far, X.distance_from_basepoint(p));
    }
    report.properness.emplace_back(r, far);
  }
  // A preimage of the smallest ball that already reaches the edge of the
  // domain window is the sampled signature of a non-proper map.
  const auto& [r0, far0] = report.properness.front();
  report.properness_suspect =
      far0 >= X.window_radius() - X.resolution() - kDistanceTolerance && r0 < Y.window_radius() - Y.resolution();
  return report;
}

CoarseSequencePrefix induced_map(const SampledMap& map, const CoarseSequencePrefix& s) {
  if (s.sample() != map.domain) throw PreconditionError("sequence does not live in the map's domain");
  std::vector<PointId> terms;
  terms.reserve(s.size());
  for (auto id : s.terms()) terms.push_back(map.image[id]);
  const bool based = terms.front() == map.codomain->basepoint();
  return CoarseSequencePrefix::make(map.codomain, std::move(terms), based);
}

// ---------------------------------------------------------------------------
// Basepoints

BasepointReport basepoint_invariance_check(const MetricSpaceSample& sample, std::span<const PointId> basepoints,
                                           std::span<const double> K_sweep, std::span<const double> radius_grid,
                                           std::optional<double> live_margin) {
  if (basepoints.empty()) throw PreconditionError("at least one basepoint is required");
  check_grid(K_sweep, "K sweep", true);
  check_grid(radius_grid, "radius grid", false);
  check_margin(sample, radius_grid.back(), K_sweep.back());

  BasepointReport report;
  for (auto b : basepoints) {
    auto rebased = rebase(sample, b);
    BasepointRun run;
    run.basepoint = b;
    run.coords = sample.point(b).coords;
    run.offset = rebased.offset;
    for (double R : radius_grid) {
      if (R - rebased.offset >= 0.0) run.radii.push_back(R - rebased.offset);
    }
    if (run.radii.empty()) {
      std::ostringstream msg;
      msg << "basepoint " << b << " is " << rebased.offset << " from the window centre; the shifted radius grid is empty";
      throw PreconditionError(msg.str());
    }
    run.sigma = sigma_estimate(rebased.sample, K_sweep, run.radii, live_margin);
    report.runs.push_back(std::move(run));
  }
  const auto& first = report.runs.front().sigma.stabilized;
  report.consistent = std::all_of(report.runs.begin(), report.runs.end(), [&](const BasepointRun& r) {
    return r.sigma.stabilized.has_value() && r.sigma.stabilized == first;
  });
  return report;
}

}  // namespace seqends
