#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "seqends/chains.hpp"
#include "seqends/metric.hpp"

namespace seqends {

/// Finite prefix s_0..s_L of a sequence of sample points.
///
/// `chain_bound` is the largest consecutive distance (the N of an
/// N-sequence). A based prefix starts at the sample's basepoint. An optional
/// declared bound records the N the caller claims; check_coarse() reports
/// not-bornologous when the prefix exceeds it.
class CoarseSequencePrefix {
 public:
  static CoarseSequencePrefix make(SamplePtr sample, std::vector<PointId> terms, bool based = true,
                                   std::optional<double> declared_bound = std::nullopt);

  const SamplePtr& sample() const { return sample_; }
  const MetricSpaceSample& space() const { return *sample_; }
  const std::vector<PointId>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  PointId operator[](std::size_t i) const { return terms_[i]; }
  PointId front() const { return terms_.front(); }
  PointId back() const { return terms_.back(); }

  double chain_bound() const { return chain_bound_; }
  std::optional<double> declared_bound() const { return declared_bound_; }
  bool based() const { return based_; }

  /// escape_profile()[i] = min over j >= i of dist(x0, s_j).
  const std::vector<double>& escape_profile() const { return escape_profile_; }

 private:
  SamplePtr sample_;
  std::vector<PointId> terms_;
  double chain_bound_ = 0.0;
  std::optional<double> declared_bound_;
  bool based_ = true;
  std::vector<double> escape_profile_;
};

/// index_map[k] is the position of s_k inside t.
struct SubsequenceWitness {
  std::vector<std::size_t> index_map;
};

bool is_valid_witness(const CoarseSequencePrefix& sub, const CoarseSequencePrefix& super,
                      const SubsequenceWitness& witness);

/// Witness for a ⊑ c from a ⊑ b (`inner`) and b ⊑ c (`outer`).
SubsequenceWitness compose(const SubsequenceWitness& outer, const SubsequenceWitness& inner);

enum class CoarseVerdict { coarse, not_bornologous, not_escaping, undetermined };

std::string_view to_string(CoarseVerdict verdict);

struct CoarseCheck {
  CoarseVerdict verdict = CoarseVerdict::undetermined;
  double n_min = 0.0;
  double escape_radius_reached = 0.0;  // min distance from x0 over the final quarter
};

/// Prefixes shorter than this are always undetermined.
inline constexpr std::size_t kMinDecidablePrefix = 8;

/// Coarse when the final quarter of the prefix stays at distance at least
/// `escape_threshold` from x0 (and within any declared bound).
CoarseCheck check_coarse(const CoarseSequencePrefix& seq, double escape_threshold);

/// Greedy leftmost embedding of s into t by point identity.
std::optional<SubsequenceWitness> is_subsequence(const CoarseSequencePrefix& s, const CoarseSequencePrefix& t);

struct Supersequence {
  CoarseSequencePrefix sequence;
  SubsequenceWitness first;   // embedding of the first input
  SubsequenceWitness second;  // embedding of the second input
};

/// Given t ⊑ s and t ⊑ r, builds an N-sequence containing both s and r.
/// Between consecutive terms t_k, t_{k+1} it emits the s-block removed there,
/// then returns to t_k and emits the r-block added there. An empty s-block
/// skips the detour; an empty r-block skips the return trip. Terms after the
/// last t-term are appended as s-tail, back to the last t-term, r-tail.
Supersequence merge_supersequence(const CoarseSequencePrefix& s, const CoarseSequencePrefix& t,
                                  const CoarseSequencePrefix& r, const SubsequenceWitness& t_in_s,
                                  const SubsequenceWitness& t_in_r);

/// Folds a zig-zag chain s_1, ..., s_n (each adjacent pair related by ⊑ in
/// one direction) into one sequence containing s_1 and s_n.
Supersequence common_supersequence(std::span<const CoarseSequencePrefix> chain);

/// A K-chain joining s[s_index] to t[t_index].
struct Stitch {
  std::size_t s_index = 0;
  std::size_t t_index = 0;
  KChain chain;
};

struct Interleaving {
  CoarseSequencePrefix sequence;
  SubsequenceWitness s_embedding;
  std::optional<SubsequenceWitness> t_embedding;  // absent only without stitches
  double K = 0.0;                                 // max of both chain bounds and stitch Ks
};

/// Builds one sequence containing s and t from stitches with strictly
/// increasing indices: x0 -> t to t_{j1} -> back to x0 -> s to s_{i1}; then for
/// each stitch k: along c_k to t_{jk}, t forward to t_{j(k+1)} and back, c_k
/// reversed, s forward to s_{i(k+1)}. The last stage runs both to their ends.
/// Without stitches the result is s itself.
Interleaving interleave_from_chains(const CoarseSequencePrefix& s, const CoarseSequencePrefix& t,
                                    std::span<const Stitch> stitches);

using RaySampler = std::function<std::vector<double>(double)>;

/// Discretizes a continuous ray r: [0, horizon] -> X. Every unit interval is
/// bisected until consecutive images are within distance 1; images are
/// snapped to their nearest sample point (error <= resolution), so the
/// resulting chain bound is at most 1 + 2*resolution. Sampling stops at the
/// first image outside the window.
CoarseSequencePrefix ray_to_sequence(const RaySampler& ray, SamplePtr sample, std::size_t horizon,
                                     int max_depth = 40);

/// Piecewise-linear ray through `vertices`, parametrized by euclidean arc
/// length; constant after the last vertex.
RaySampler polyline_ray(std::vector<std::vector<double>> vertices);
double polyline_length(const std::vector<std::vector<double>>& vertices);

/// Sample points nearest to x0 + k*direction for k = 0, 1, ... while the
/// target stays inside the window and snaps within the resolution.
CoarseSequencePrefix straight_sequence(SamplePtr sample, std::span<const double> direction);

}  // namespace seqends
