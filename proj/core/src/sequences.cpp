#include "seqends/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "seqends/error.hpp"

namespace seqends {

CoarseSequencePrefix CoarseSequencePrefix::make(SamplePtr sample, std::vector<PointId> terms, bool based,
                                                std::optional<double> declared_bound) {
  if (!sample) throw PreconditionError("sequence needs a sample");
  if (terms.empty()) throw PreconditionError("sequence prefix must be nonempty");
  for (auto id : terms) {
    if (id >= sample->size()) throw PreconditionError("sequence term " + std::to_string(id) + " is not a sample point");
  }
  if (based && terms.front() != sample->basepoint()) {
    throw PreconditionError("based sequence must start at the basepoint " + std::to_string(sample->basepoint()));
  }

  CoarseSequencePrefix seq;
  seq.sample_ = std::move(sample);
  seq.terms_ = std::move(terms);
  seq.based_ = based;
  seq.declared_bound_ = declared_bound;
  for (std::size_t i = 0; i + 1 < seq.terms_.size(); ++i) {
    seq.chain_bound_ = std::max(seq.chain_bound_, seq.sample_->distance(seq.terms_[i], seq.terms_[i + 1]));
  }
  seq.escape_profile_.resize(seq.terms_.size());
  double running = std::numeric_limits<double>::infinity();
  for (std::size_t i = seq.terms_.size(); i-- > 0;) {
    running = std::min(running, seq.sample_->distance_from_basepoint(seq.terms_[i]));
    seq.escape_profile_[i] = running;
  }
  return seq;
}

bool is_valid_witness(const CoarseSequencePrefix& sub, const CoarseSequencePrefix& super,
                      const SubsequenceWitness& witness) {
  if (witness.index_map.size() != sub.size()) return false;
  for (std::size_t k = 0; k < sub.size(); ++k) {
    const auto pos = witness.index_map[k];
    if (pos >= super.size() || super[pos] != sub[k]) return false;
    if (k > 0 && pos <= witness.index_map[k - 1]) return false;
  }
  return true;
}

SubsequenceWitness compose(const SubsequenceWitness& outer, const SubsequenceWitness& inner) {
  SubsequenceWitness out;
  out.index_map.reserve(inner.index_map.size());
  for (auto pos : inner.index_map) {
    if (pos >= outer.index_map.size()) throw PreconditionError("witnesses do not compose");
    out.index_map.push_back(outer.index_map[pos]);
  }
  return out;
}

std::string_view to_string(CoarseVerdict verdict) {
  switch (verdict) {
    case CoarseVerdict::coarse:
      return "coarse";
    case CoarseVerdict::not_bornologous:
      return "not-bornologous";
    case CoarseVerdict::not_escaping:
      return "not-escaping";
    case CoarseVerdict::undetermined:
      return "undetermined";
  }
  return "unknown";
}

CoarseCheck check_coarse(const CoarseSequencePrefix& seq, double escape_threshold) {
  if (seq.size() == 0) throw PreconditionError("check_coarse needs a nonempty sequence");
  CoarseCheck check;
  check.n_min = seq.chain_bound();
  const std::size_t tail_start = (3 * seq.size()) / 4;
  check.escape_radius_reached = seq.escape_profile()[std::min(tail_start, seq.size() - 1)];

  if (seq.size() < kMinDecidablePrefix) {
    check.verdict = CoarseVerdict::undetermined;
  } else if (seq.declared_bound() && !within(check.n_min, *seq.declared_bound())) {
    check.verdict = CoarseVerdict::not_bornologous;
  } else if (check.escape_radius_reached >= escape_threshold - kDistanceTolerance) {
    check.verdict = CoarseVerdict::coarse;
  } else {
    check.verdict = CoarseVerdict::not_escaping;
  }
  return check;
}

namespace {

void require_same_sample(const CoarseSequencePrefix& a, const CoarseSequencePrefix& b) {
  if (a.sample() != b.sample()) throw PreconditionError("sequences live in different samples");
}

void require_based(const CoarseSequencePrefix& seq, const char* name) {
  if (!seq.based()) throw PreconditionError(std::string(name) + " must be based at x0");
}

}  // namespace

std::optional<SubsequenceWitness> is_subsequence(const CoarseSequencePrefix& s, const CoarseSequencePrefix& t) {
  require_same_sample(s, t);
  SubsequenceWitness w;
  w.index_map.reserve(s.size());
  std::size_t pos = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    while (pos < t.size() && t[pos] != s[k]) ++pos;
    if (pos == t.size()) return std::nullopt;
    w.index_map.push_back(pos++);
  }
  return w;
}

Supersequence merge_supersequence(const CoarseSequencePrefix& s, const CoarseSequencePrefix& t,
                                  const CoarseSequencePrefix& r, const SubsequenceWitness& t_in_s,
                                  const SubsequenceWitness& t_in_r) {
  require_same_sample(s, t);
  require_same_sample(t, r);
  require_based(s, "s");
  require_based(t, "t");
  require_based(r, "r");
  if (!is_valid_witness(t, s, t_in_s)) throw PreconditionError("invalid witness for t ⊑ s");
  if (!is_valid_witness(t, r, t_in_r)) throw PreconditionError("invalid witness for t ⊑ r");
  if (t_in_s.index_map.front() != 0 || t_in_r.index_map.front() != 0) {
    throw PreconditionError("witnesses must map t_0 to the shared basepoint");
  }

  const auto& ws = t_in_s.index_map;
  const auto& wr = t_in_r.index_map;
  std::vector<PointId> out{t[0]};
  std::vector<std::size_t> s_pos{0};
  std::vector<std::size_t> r_pos{0};
  auto emit = [&out](PointId id) {
    out.push_back(id);
    return out.size() - 1;
  };

  for (std::size_t k = 0; k + 1 < t.size(); ++k) {
    const bool s_removed = ws[k + 1] > ws[k] + 1;
    const bool r_added = wr[k + 1] > wr[k] + 1;
    if (s_removed) {
      for (auto i = ws[k] + 1; i < ws[k + 1]; ++i) s_pos.push_back(emit(s[i]));
      const auto at = emit(t[k + 1]);
      if (!r_added) {
        s_pos.push_back(at);
        r_pos.push_back(at);
        continue;
      }
      s_pos.push_back(at);
      emit(t[k]);
    }
    for (auto i = wr[k] + 1; i < wr[k + 1]; ++i) r_pos.push_back(emit(r[i]));
    const auto at = emit(t[k + 1]);
    if (!s_removed) s_pos.push_back(at);
    r_pos.push_back(at);
  }

  // Prefix tails beyond the last shared term.
  const bool s_tail = ws.back() + 1 < s.size();
  const bool r_tail = wr.back() + 1 < r.size();
  for (auto i = ws.back() + 1; i < s.size(); ++i) s_pos.push_back(emit(s[i]));
  if (s_tail && r_tail) {
    for (auto i = s.size() - 1; i-- > ws.back() + 1;) emit(s[i]);
    emit(t[t.size() - 1]);
  }
  for (auto i = wr.back() + 1; i < r.size(); ++i) r_pos.push_back(emit(r[i]));

  const double bound = std::max({s.chain_bound(), t.chain_bound(), r.chain_bound()});
  auto seq = CoarseSequencePrefix::make(s.sample(), std::move(out), true);
  if (!within(seq.chain_bound(), bound)) {
    throw std::logic_error("merge_supersequence produced a step above the shared bound");
  }
  return Supersequence{std::move(seq), SubsequenceWitness{std::move(s_pos)}, SubsequenceWitness{std::move(r_pos)}};
}

Supersequence common_supersequence(std::span<const CoarseSequencePrefix> chain) {
  if (chain.empty()) throw PreconditionError("common_supersequence needs at least one sequence");
  for (std::size_t i = 1; i < chain.size(); ++i) require_same_sample(chain[0], chain[i]);
  for (const auto& seq : chain) require_based(seq, "every chain member");

  const auto identity = [](std::size_t n) {
    SubsequenceWitness w;
    w.index_map.resize(n);
    for (std::size_t i = 0; i < n; ++i) w.index_map[i] = i;
    return w;
  };

  // Invariant: acc contains chain[0] (first_in_acc) and chain[k] (cur_in_acc).
  CoarseSequencePrefix acc = chain[0];
  SubsequenceWitness first_in_acc = identity(acc.size());
  SubsequenceWitness cur_in_acc = first_in_acc;
  for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
    const auto& cur = chain[k];
    const auto& next = chain[k + 1];
    if (auto down = is_subsequence(next, cur)) {
      cur_in_acc = compose(cur_in_acc, *down);
      continue;
    }
    if (auto up = is_subsequence(cur, next)) {
      auto merged = merge_supersequence(acc, cur, next, cur_in_acc, *up);
      first_in_acc = compose(merged.first, first_in_acc);
      cur_in_acc = std::move(merged.second);
      acc = std::move(merged.sequence);
      continue;
    }
    throw PreconditionError("chain members " + std::to_string(k) + " and " + std::to_string(k + 1) +
                            " are not related by the subsequence relation");
  }
  return Supersequence{std::move(acc), std::move(first_in_acc), std::move(cur_in_acc)};
}

Interleaving interleave_from_chains(const CoarseSequencePrefix& s, const CoarseSequencePrefix& t,
                                    std::span<const Stitch> stitches) {
  require_same_sample(s, t);
  require_based(s, "s");
  require_based(t, "t");
  const auto& sample = s.space();

  double K = std::max(s.chain_bound(), t.chain_bound());
  for (std::size_t k = 0; k < stitches.size(); ++k) {
    const auto& st = stitches[k];
    std::ostringstream where;
    where << "stitch " << k << ": ";
    if (st.s_index >= s.size() || st.t_index >= t.size()) {
      throw PreconditionError(where.str() + "index beyond the sequence prefix");
    }
    if (k > 0 && (st.s_index <= stitches[k - 1].s_index || st.t_index <= stitches[k - 1].t_index)) {
      throw PreconditionError(where.str() + "indices must be strictly increasing");
    }
    if (!is_valid_chain(sample, st.chain)) throw PreconditionError(where.str() + "not a valid K-chain");
    if (st.chain.points.front() != s[st.s_index] || st.chain.points.back() != t[st.t_index]) {
      throw PreconditionError(where.str() + "chain endpoints do not match the sequence terms");
    }
    K = std::max(K, st.chain.K);
  }

  if (stitches.empty()) {
    SubsequenceWitness id;
    for (std::size_t i = 0; i < s.size(); ++i) id.index_map.push_back(i);
    return Interleaving{s, std::move(id), is_subsequence(t, s), K};
  }

  std::vector<PointId> out;
  std::vector<std::size_t> s_pos;
  std::vector<std::size_t> t_pos;
  auto emit = [&out](PointId id) {
    out.push_back(id);
    return out.size() - 1;
  };

  // Stage 0: out along t, back to x0, out along s.
  const auto j1 = stitches.front().t_index;
  const auto i1 = stitches.front().s_index;
  for (std::size_t j = 0; j <= j1; ++j) t_pos.push_back(emit(t[j]));
  std::size_t at_base = out.size() - 1;
  for (std::size_t j = j1; j-- > 0;) at_base = emit(t[j]);
  s_pos.push_back(at_base);
  for (std::size_t i = 1; i <= i1; ++i) s_pos.push_back(emit(s[i]));

  for (std::size_t k = 0; k < stitches.size(); ++k) {
    const auto& st = stitches[k];
    const bool last = k + 1 == stitches.size();
    const auto j_next = last ? t.size() - 1 : stitches[k + 1].t_index;
    const auto i_next = last ? s.size() - 1 : stitches[k + 1].s_index;
    const auto& c = st.chain.points;

    for (std::size_t m = 1; m < c.size(); ++m) emit(c[m]);
    for (auto j = st.t_index + 1; j <= j_next; ++j) t_pos.push_back(emit(t[j]));
    for (auto j = j_next; j-- > st.t_index;) emit(t[j]);
    for (std::size_t m = c.size() - 1; m-- > 0;) emit(c[m]);
    for (auto i = st.s_index + 1; i <= i_next; ++i) s_pos.push_back(emit(s[i]));
  }

  auto seq = CoarseSequencePrefix::make(s.sample(), std::move(out), true);
  if (!within(seq.chain_bound(), K)) {
    throw std::logic_error("interleave_from_chains produced a step above K");
  }
  return Interleaving{std::move(seq), SubsequenceWitness{std::move(s_pos)}, SubsequenceWitness{std::move(t_pos)},
                      K};
}

CoarseSequencePrefix ray_to_sequence(const RaySampler& ray, SamplePtr sample, std::size_t horizon, int max_depth) {
  if (!sample || sample->empty()) throw PreconditionError("ray_to_sequence needs a nonempty sample");
  if (sample->metric_kind() == MetricKind::explicit_matrix) {
    throw PreconditionError("ray_to_sequence needs a coordinate metric");
  }
  const auto& space = *sample;
  std::vector<PointId> terms;
  const auto base = space.coords(space.basepoint());
  bool left_window = false;
  auto snap = [&](const std::vector<double>& image, double tau) {
    if (image.size() != space.dimension()) throw PreconditionError("ray image has the wrong dimension");
    if (!within(space.coordinate_distance(image, base), space.window_radius())) {
      left_window = true;
      return;
    }
    const auto [id, err] = space.nearest(image);
    if (!within(err, space.resolution())) {
      std::ostringstream msg;
      msg << "ray image at tau=" << tau << " is " << err << " from the sample (resolution " << space.resolution()
          << ")";
      throw PreconditionError(msg.str());
    }
    if (terms.empty() || terms.back() != id) terms.push_back(id);
  };

  auto start = ray(0.0);
  snap(start, 0.0);
  if (terms.front() != space.basepoint()) throw PreconditionError("ray must start at the basepoint");

  struct Piece {
    double a, b;
    std::vector<double> pa, pb;
    int depth;
  };
  std::vector<Piece> stack;
  std::vector<double> prev = start;
  for (std::size_t n = 0; n < horizon && !left_window; ++n) {
    const double a = static_cast<double>(n);
    auto pb = ray(a + 1.0);
    stack.push_back({a, a + 1.0, prev, pb, 0});
    // Depth-first with the left half on top keeps emissions in parameter order.
    while (!stack.empty() && !left_window) {
      Piece p = std::move(stack.back());
      stack.pop_back();
      if (within(space.coordinate_distance(p.pa, p.pb), 1.0)) {
        snap(p.pb, p.b);
        continue;
      }
      if (p.depth >= max_depth) {
        std::ostringstream msg;
        msg << "ray subdivision exceeded depth " << max_depth << " near tau=" << p.a << " (discontinuous sampler?)";
        throw PreconditionError(msg.str());
      }
      const double mid = 0.5 * (p.a + p.b);
      auto pm = ray(mid);
      stack.push_back({mid, p.b, pm, std::move(p.pb), p.depth + 1});
      stack.push_back({p.a, mid, std::move(p.pa), std::move(pm), p.depth + 1});
    }
    prev = std::move(pb);
  }
  return CoarseSequencePrefix::make(std::move(sample), std::move(terms), true);
}

namespace {

double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc);
}

}  // namespace

double polyline_length(const std::vector<std::vector<double>>& vertices) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) total += euclid(vertices[i], vertices[i + 1]);
  return total;
}

RaySampler polyline_ray(std::vector<std::vector<double>> vertices) {
  if (vertices.empty()) throw PreconditionError("polyline needs at least one vertex");
  for (const auto& v : vertices) {
    if (v.size() != vertices.front().size()) throw PreconditionError("polyline vertices differ in dimension");
  }
  return [vertices = std::move(vertices)](double tau) {
    double remaining = std::max(tau, 0.0);
    for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
      const double len = euclid(vertices[i], vertices[i + 1]);
      if (remaining <= len && len > 0.0) {
        const double f = remaining / len;
        std::vector<double> p(vertices[i].size());
        for (std::size_t a = 0; a < p.size(); ++a) p[a] = vertices[i][a] + f * (vertices[i + 1][a] - vertices[i][a]);
        return p;
      }
      remaining -= len;
    }
    return vertices.back();
  };
}

CoarseSequencePrefix straight_sequence(SamplePtr sample, std::span<const double> direction) {
  if (!sample || sample->empty()) throw PreconditionError("straight_sequence needs a nonempty sample");
  if (sample->metric_kind() == MetricKind::explicit_matrix) {
    throw PreconditionError("straight_sequence needs a coordinate metric");
  }
  const auto& space = *sample;
  if (direction.size() != space.dimension()) throw PreconditionError("direction has the wrong dimension");
  const auto origin = space.coords(space.basepoint());
  const std::vector<double> zero(space.dimension(), 0.0);
  const std::vector<double> dir(direction.begin(), direction.end());
  if (!(space.coordinate_distance(dir, zero) > 0.0)) throw PreconditionError("direction must be nonzero");

  std::vector<PointId> terms{space.basepoint()};
  std::vector<double> target(space.dimension());
  for (std::size_t k = 1;; ++k) {
    for (std::size_t a = 0; a < target.size(); ++a) target[a] = origin[a] + static_cast<double>(k) * dir[a];
    if (!within(space.coordinate_distance(target, {origin.begin(), origin.end()}), space.window_radius())) break;
    const auto [id, err] = space.nearest(target);
    if (!within(err, space.resolution())) break;
    if (terms.back() != id) terms.push_back(id);
  }
  return CoarseSequencePrefix::make(std::move(sample), std::move(terms), true);
}

}  // namespace seqends
