#include "seqends/report.hpp"

#include <charconv>
#include <sstream>

#include "seqends/version.hpp"

namespace seqends {

namespace {

std::string format_real(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

Json optional_real(const std::optional<double>& value) { return value ? Json(*value) : Json(nullptr); }

}  // namespace

void to_json(Json& j, const MetricSpaceSample& sample) {
  j = Json{{"size", sample.size()},
           {"dimension", sample.dimension()},
           {"metric", std::string(to_string(sample.metric_kind()))},
           {"basepoint", sample.basepoint()},
           {"window_radius", sample.window_radius()},
           {"resolution", sample.resolution()}};
  if (sample.has_coordinates()) {
    Json points = Json::array();
    for (PointId i = 0; i < sample.size(); ++i) {
      const auto c = sample.coords(i);
      points.push_back(std::vector<double>(c.begin(), c.end()));
    }
    j["points"] = std::move(points);
  }
}

void to_json(Json& j, const Violation& violation) {
  j = Json{{"kind", violation.kind}, {"ids", violation.ids}, {"values", violation.values}};
}

void to_json(Json& j, const ValidationReport& report) {
  j = Json{{"pairs_checked", report.pairs_checked},
           {"triples_checked", report.triples_checked},
           {"violations", report.violations},
           {"ok", report.ok()}};
}

void to_json(Json& j, const KChain& chain) { j = chain.points; }

void to_json(Json& j, const ChainPartition& partition) {
  Json comps = Json::array();
  for (const auto& c : partition.components) comps.push_back(c.members);
  j = Json{{"K", partition.K}, {"components", std::move(comps)}};
}

void to_json(Json& j, const CoarseSequencePrefix& seq) {
  j = Json{{"terms", seq.terms()}, {"chain_bound", seq.chain_bound()}, {"based", seq.based()}};
  if (seq.declared_bound()) j["declared_bound"] = *seq.declared_bound();
}

void to_json(Json& j, const SubsequenceWitness& witness) { j = witness.index_map; }

void to_json(Json& j, const CoarseCheck& check) {
  j = Json{{"verdict", std::string(to_string(check.verdict))},
           {"n_min", check.n_min},
           {"escape_radius_reached", check.escape_radius_reached}};
}

void to_json(Json& j, const Stitch& stitch) {
  j = Json{{"s_index", stitch.s_index}, {"t_index", stitch.t_index}, {"K", stitch.chain.K}, {"chain", stitch.chain}};
}

void to_json(Json& j, const Interleaving& interleaving) {
  j = Json{{"sequence", interleaving.sequence},
           {"s_embedding", interleaving.s_embedding},
           {"t_embedding", interleaving.t_embedding ? Json(*interleaving.t_embedding) : Json(nullptr)},
           {"K", interleaving.K}};
}

void to_json(Json& j, const EndWitness& witness) {
  j = Json{{"radius", witness.radius},
           {"s_index", witness.s_index},
           {"t_index", witness.t_index},
           {"K", witness.chain.K},
           {"chain", witness.chain}};
}

void to_json(Json& j, const KAttempt& attempt) {
  j = Json{{"K", attempt.K}, {"skipped", attempt.skipped}, {"failed_radius", optional_real(attempt.failed_radius)}};
}

void to_json(Json& j, const EndDecision& decision) {
  j = Json{{"verdict", std::string(to_string(decision.verdict))},
           {"K_used", optional_real(decision.K_used)},
           {"witnesses", decision.witnesses},
           {"attempts", decision.attempts},
           {"note", decision.note}};
}

void to_json(Json& j, const EndFiltration& filtration) {
  Json levels = Json::array();
  for (std::size_t l = 0; l < filtration.levels.size(); ++l) {
    Json level = filtration.levels[l];
    level["radius"] = filtration.radii[l];
    level["reach"] = filtration.reach[l];
    levels.push_back(std::move(level));
  }
  j = Json{{"K", filtration.K},
           {"window_radius", filtration.window_radius},
           {"radii", filtration.radii},
           {"levels", std::move(levels)},
           {"thread_maps", filtration.thread_maps}};
}

void to_json(Json& j, const SigmaReport& report) {
  Json entries = Json::array();
  for (const auto& e : report.entries) {
    entries.push_back(Json{{"K", e.K}, {"count", e.count}, {"live_margin", e.live_margin}});
  }
  j = Json{{"K_sweep", report.K_sweep},
           {"radii", report.radii},
           {"entries", std::move(entries)},
           {"stabilized", report.stabilized ? Json(*report.stabilized) : Json(nullptr)},
           {"filtrations", report.filtrations}};
}

void to_json(Json& j, const ModuliReport& report) {
  Json born = Json::array();
  for (const auto& [N, M] : report.bornologous) born.push_back(Json{{"N", N}, {"M", M}});
  Json prop = Json::array();
  for (const auto& [r, far] : report.properness) prop.push_back(Json{{"r", r}, {"preimage_reach", far}});
  j = Json{{"bornologous", std::move(born)},
           {"properness", std::move(prop)},
           {"properness_suspect", report.properness_suspect},
           {"empirical", true}};
}

void to_json(Json& j, const BasepointReport& report) {
  Json runs = Json::array();
  for (const auto& run : report.runs) {
    runs.push_back(Json{{"basepoint", run.basepoint},
                        {"coords", run.coords},
                        {"offset", run.offset},
                        {"radii", run.radii},
                        {"sigma", run.sigma}});
  }
  j = Json{{"runs", std::move(runs)}, {"consistent", report.consistent}};
}

Json make_report(Json config, Json result) {
  return Json{{"schema", kReportSchema},
              {"tool", kToolName},
              {"version", kVersion},
              {"config", std::move(config)},
              {"result", std::move(result)}};
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

std::string filtration_to_dot(const EndFiltration& filtration) {
  std::ostringstream out;
  out << "digraph filtration {\n";
  out << "  rankdir=LR;\n";
  out << "  label=\"K=" << format_real(filtration.K) << "\";\n";
  for (std::size_t l = 0; l < filtration.levels.size(); ++l) {
    out << "  subgraph cluster_L" << l << " {\n";
    out << "    label=\"R=" << format_real(filtration.radii[l]) << "\";\n";
    for (const auto& c : filtration.levels[l].components) {
      out << "    L" << l << "_C" << c.id << " [label=\"" << c.members.size() << " pts\\nreach "
          << format_real(filtration.reach[l][static_cast<std::size_t>(c.id)]) << "\"];\n";
    }
    out << "  }\n";
  }
  for (std::size_t l = 0; l < filtration.thread_maps.size(); ++l) {
    const auto& map = filtration.thread_maps[l];
    for (std::size_t c = 0; c < map.size(); ++c) {
      out << "  L" << (l + 1) << "_C" << c << " -> L" << l << "_C" << map[c] << ";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string sigma_to_csv(const SigmaReport& report) {
  std::ostringstream out;
  out << "K,count,live_margin,stabilized\n";
  const std::string stable = report.stabilized ? std::to_string(*report.stabilized) : "";
  for (const auto& e : report.entries) {
    out << format_real(e.K) << ',' << e.count << ',' << format_real(e.live_margin) << ',' << stable << '\n';
  }
  return out.str();
}

std::string partition_to_csv(const ChainPartition& partition) {
  std::ostringstream out;
  out << "point_id,component\n";
  for (std::size_t i = 0; i < partition.point_ids.size(); ++i) {
    out << partition.point_ids[i] << ',' << partition.component_index[i] << '\n';
  }
  return out.str();
}

std::string points_to_csv(const MetricSpaceSample& sample) {
  std::ostringstream out;
  out << "id";
  const std::size_t d = sample.has_coordinates() ? sample.dimension() : 0;
  for (std::size_t a = 0; a < d; ++a) out << ",x" << a;
  out << ",dist_from_basepoint\n";
  for (PointId i = 0; i < sample.size(); ++i) {
    out << i;
    if (d > 0) {
      for (double c : sample.coords(i)) out << ',' << format_real(c);
    }
    out << ',' << format_real(sample.distance_from_basepoint(i)) << '\n';
  }
  return out.str();
}

}  // namespace seqends
