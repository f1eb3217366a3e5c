#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string_view>

#include "seqends/ends.hpp"
#include "seqends/error.hpp"
#include "seqends/report.hpp"
#include "seqends/version.hpp"

namespace seqends::cli {

namespace {

struct SpaceOptions {
  std::string family = "line";
  std::size_t dim = 2;
  double window = 10.0;
  double resolution = 1.0;
  std::size_t circles = 0;
  std::string input;
  std::string matrix;
  std::string metric = "euclidean";
  std::size_t basepoint = 0;
};

struct Options {
  std::string command;
  SpaceOptions space;
  SpaceOptions to_space;  // induced only
  std::string k_sweep = "1,2,3";
  std::string radii;
  std::string to_k_sweep;
  std::string to_radii;
  std::uint64_t seed = 0;
  std::string output;
  std::string format = "json";
  std::optional<double> live_margin;
  std::size_t triple_budget = 20000;
  double K = 1.0;
  std::optional<double> radius;
  std::string s_spec;
  std::string t_spec;
  std::string basepoints;
  std::string basepoint_ids;
  std::string map = "identity";
};

std::string_view trim(std::string_view text) {
  const auto b = text.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = text.find_last_not_of(" \t\r\n");
  return text.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_real(std::string_view token, std::string_view what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw PreconditionError("malformed number '" + std::string(token) + "' in " + std::string(what));
  }
  return value;
}

std::size_t parse_index(std::string_view token, std::string_view what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || token.empty()) {
    throw PreconditionError("malformed id '" + std::string(token) + "' in " + std::string(what));
  }
  return value;
}

std::vector<double> parse_reals(std::string_view text, std::string_view what) {
  if (trim(text).empty()) throw PreconditionError(std::string(what) + " is empty");
  std::vector<double> values;
  for (auto token : split(text, ',')) values.push_back(parse_real(token, what));
  return values;
}

std::vector<std::vector<double>> parse_point_list(std::string_view text, std::string_view what) {
  std::vector<std::vector<double>> points;
  for (auto token : split(text, ';')) points.push_back(parse_reals(token, what));
  return points;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SamplePtr build_space(const SpaceOptions& o) {
  SpaceSpec spec;
  spec.family = parse_space_family(o.family);
  if (!o.input.empty() || !o.matrix.empty()) spec.family = SpaceFamily::csv_import;
  spec.dimension = spec.family == SpaceFamily::line ? 1 : o.dim;
  spec.window_radius = o.window;
  spec.resolution = o.resolution;
  spec.circle_count = o.circles;
  spec.points_path = o.input;
  spec.matrix_path = o.matrix;
  spec.metric = parse_metric_kind(o.metric);
  spec.basepoint = o.basepoint;
  return share(generate_space(spec));
}

Json space_config(const SpaceOptions& o) {
  Json j{{"space", o.family},    {"dim", o.dim},       {"window", o.window}, {"resolution", o.resolution},
         {"circles", o.circles}, {"input", o.input},   {"matrix", o.matrix}, {"metric", o.metric},
         {"basepoint", o.basepoint}};
  return j;
}

Json config_json(const Options& o) {
  Json j = space_config(o.space);
  j["command"] = o.command;
  j["k_sweep"] = o.k_sweep;
  j["radii"] = o.radii;
  j["seed"] = o.seed;
  j["format"] = o.format;
  j["live_margin"] = o.live_margin ? Json(*o.live_margin) : Json(nullptr);
  if (o.command == "validate") j["triple_budget"] = o.triple_budget;
  if (o.command == "components") {
    j["K"] = o.K;
    j["radius"] = o.radius ? Json(*o.radius) : Json(nullptr);
  }
  if (o.command == "same-end" || o.command == "witness" || o.command == "induced") {
    j["s"] = o.s_spec;
    j["t"] = o.t_spec;
  }
  if (o.command == "basepoint-check") {
    j["basepoints"] = o.basepoints;
    j["basepoint_ids"] = o.basepoint_ids;
  }
  if (o.command == "induced") {
    j["to"] = space_config(o.to_space);
    j["to_k_sweep"] = o.to_k_sweep;
    j["to_radii"] = o.to_radii;
    j["map"] = o.map;
  }
  return j;
}

PointId lookup(const MetricSpaceSample& sample, const std::vector<double>& coords, std::string_view what) {
  if (coords.size() != sample.dimension()) {
    throw PreconditionError(std::string(what) + ": point has " + std::to_string(coords.size()) +
                            " coordinates, the sample has dimension " + std::to_string(sample.dimension()));
  }
  if (auto id = sample.find(coords)) return *id;
  throw PreconditionError(std::string(what) + ": point is not in the sample");
}

// ids:0,1,2 | file:path | coords:x,y;x,y | ray:dx,dy | polyline:x,y;x,y
CoarseSequencePrefix parse_sequence(const SamplePtr& sample, const std::string& spec, std::string_view what) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) {
    throw PreconditionError(std::string(what) + " must look like ids:..., file:..., coords:..., ray:... or polyline:...");
  }
  const std::string_view kind = std::string_view(spec).substr(0, colon);
  const std::string_view body = std::string_view(spec).substr(colon + 1);
  std::vector<PointId> ids;
  if (kind == "ids" || kind == "file") {
    std::string text = kind == "file" ? read_file(std::string(body)) : std::string(body);
    std::replace(text.begin(), text.end(), '\n', ',');
    for (auto token : split(text, ',')) {
      if (!token.empty()) ids.push_back(parse_index(token, what));
    }
  } else if (kind == "coords") {
    for (const auto& p : parse_point_list(body, what)) ids.push_back(lookup(*sample, p, what));
  } else if (kind == "ray") {
    const auto direction = parse_reals(body, what);
    return straight_sequence(sample, direction);
  } else if (kind == "polyline") {
    auto vertices = parse_point_list(body, what);
    const auto length = polyline_length(vertices);
    return ray_to_sequence(polyline_ray(std::move(vertices)), sample, static_cast<std::size_t>(std::floor(length)));
  } else {
    throw PreconditionError("unknown sequence kind '" + std::string(kind) + "' in " + std::string(what));
  }
  for (auto id : ids) {
    if (id >= sample->size()) throw PreconditionError(std::string(what) + ": id " + std::to_string(id) + " is out of range");
  }
  return CoarseSequencePrefix::make(sample, std::move(ids));
}

std::function<std::vector<double>(std::span<const double>)> parse_map(const std::string& spec) {
  double factor = 1.0;
  if (spec == "identity" || spec == "inclusion") {
    factor = 1.0;
  } else if (spec.rfind("scale:", 0) == 0) {
    factor = parse_real(std::string_view(spec).substr(6), "--map");
  } else {
    throw PreconditionError("unknown map '" + spec + "' (identity, inclusion, scale:F)");
  }
  return [factor](std::span<const double> x) {
    std::vector<double> y(x.begin(), x.end());
    for (auto& v : y) v *= factor;
    return y;
  };
}

void require_format(const Options& o, std::initializer_list<std::string_view> allowed) {
  if (std::find(allowed.begin(), allowed.end(), o.format) == allowed.end()) {
    throw PreconditionError("format '" + o.format + "' is not available for " + o.command);
  }
}

std::vector<double> radii_or_throw(const std::string& text) {
  if (text.empty()) throw PreconditionError("--radii is required");
  return parse_reals(text, "--radii");
}

Json decision_with_inputs(const CoarseSequencePrefix& s, const CoarseSequencePrefix& t, const EndDecision& d) {
  return Json{{"s", s}, {"t", t}, {"decision", d}};
}

std::string execute(const Options& o) {
  const auto config = config_json(o);
  const auto sample = build_space(o.space);

  if (o.command == "generate") {
    require_format(o, {"json", "csv"});
    if (o.format == "csv") return points_to_csv(*sample);
    return dump_report(make_report(config, Json(*sample)));
  }

  if (o.command == "validate") {
    require_format(o, {"json", "csv"});
    const auto report = validate_metric(*sample, o.triple_budget, o.seed);
    if (o.format == "csv") {
      std::ostringstream csv;
      csv << "kind,ids,values\n";
      for (const auto& v : report.violations) {
        csv << v.kind << ",\"" << Json(v.ids).dump() << "\",\"" << Json(v.values).dump() << "\"\n";
      }
      return csv.str();
    }
    return dump_report(make_report(config, Json(report)));
  }

  if (o.command == "components") {
    require_format(o, {"json", "csv"});
    std::vector<PointId> subset;
    if (o.radius) {
      subset = ball_complement(*sample, *o.radius);
    } else {
      subset.resize(sample->size());
      for (PointId i = 0; i < subset.size(); ++i) subset[i] = i;
    }
    const auto partition = k_chain_components(*sample, subset, o.K);
    if (o.format == "csv") return partition_to_csv(partition);
    Json result = partition;
    result["count"] = partition.count();
    return dump_report(make_report(config, std::move(result)));
  }

  const auto K_sweep = parse_reals(o.k_sweep, "--k-sweep");

  if (o.command == "sigma") {
    require_format(o, {"json", "dot", "csv"});
    const auto report = sigma_estimate(*sample, K_sweep, radii_or_throw(o.radii), o.live_margin);
    if (o.format == "csv") return sigma_to_csv(report);
    if (o.format == "dot") {
      std::string dot;
      for (const auto& f : report.filtrations) dot += filtration_to_dot(f);
      return dot;
    }
    return dump_report(make_report(config, Json(report)));
  }

  if (o.command == "basepoint-check") {
    require_format(o, {"json"});
    std::vector<PointId> ids;
    if (!o.basepoint_ids.empty()) {
      for (auto token : split(o.basepoint_ids, ',')) ids.push_back(parse_index(token, "--basepoint-ids"));
    }
    if (!o.basepoints.empty()) {
      for (const auto& p : parse_point_list(o.basepoints, "--basepoints")) ids.push_back(lookup(*sample, p, "--basepoints"));
    }
    if (ids.empty()) throw PreconditionError("basepoint-check needs --basepoints or --basepoint-ids");
    for (auto id : ids) {
      if (id >= sample->size()) throw PreconditionError("basepoint id " + std::to_string(id) + " is out of range");
    }
    const auto report = basepoint_invariance_check(*sample, ids, K_sweep, radii_or_throw(o.radii), o.live_margin);
    return dump_report(make_report(config, Json(report)));
  }

  if (o.s_spec.empty() || o.t_spec.empty()) throw PreconditionError(o.command + " needs --s and --t");
  const auto s = parse_sequence(sample, o.s_spec, "--s");
  const auto t = parse_sequence(sample, o.t_spec, "--t");
  const auto radii = radii_or_throw(o.radii);

  if (o.command == "same-end") {
    require_format(o, {"json"});
    const auto decision = same_end(s, t, K_sweep, radii);
    return dump_report(make_report(config, decision_with_inputs(s, t, decision)));
  }

  if (o.command == "witness") {
    require_format(o, {"json"});
    const auto decision = same_end(s, t, K_sweep, radii);
    Json result = decision_with_inputs(s, t, decision);
    if (decision.verdict == EndVerdict::same_end) {
      const auto stitches = harvest_stitches(s, t, decision);
      const auto merged = interleave_from_chains(s, t, stitches);
      result["stitches"] = stitches;
      result["interleaving"] = merged;
      result["interleaving_check"] = check_coarse(merged.sequence, radii.front());
    }
    return dump_report(make_report(config, std::move(result)));
  }

  if (o.command == "induced") {
    require_format(o, {"json"});
    const auto codomain = build_space(o.to_space);
    const auto f = map_by_coordinates(sample, codomain, parse_map(o.map));
    const auto fs = induced_map(f, s);
    const auto ft = induced_map(f, t);
    const auto to_K = o.to_k_sweep.empty() ? K_sweep : parse_reals(o.to_k_sweep, "--to-k-sweep");
    const auto to_radii = o.to_radii.empty() ? radii : parse_reals(o.to_radii, "--to-radii");
    const auto before = same_end(s, t, K_sweep, radii);
    const auto after = same_end(fs, ft, to_K, to_radii);
    Json result{{"moduli", check_bornologous_proper(f, K_sweep)},
                {"domain", decision_with_inputs(s, t, before)},
                {"codomain", decision_with_inputs(fs, ft, after)},
                {"verdict_preserved", before.verdict == after.verdict}};
    return dump_report(make_report(config, std::move(result)));
  }

  throw PreconditionError("unknown command '" + o.command + "'");
}

void add_space_options(CLI::App* cmd, SpaceOptions& s, const std::string& prefix) {
  const std::string p = "--" + prefix;
  cmd->add_option(p + "space", s.family, "line | euclidean-n | t-shape | tangent-circles | comb | csv-import");
  cmd->add_option(p + "dim", s.dim, "dimension for euclidean-n");
  cmd->add_option(p + "window", s.window, "window radius around the basepoint");
  cmd->add_option(p + "resolution", s.resolution, "sampling resolution");
  cmd->add_option(p + "circles", s.circles, "tangent-circles count (0 = fill the window)");
  cmd->add_option(p + "input", s.input, "CSV point file (one point per line)");
  cmd->add_option(p + "matrix", s.matrix, "CSV distance matrix for explicit-matrix inputs");
  cmd->add_option(p + "metric", s.metric, "euclidean | max | explicit-matrix (CSV inputs)");
  cmd->add_option(p + "basepoint", s.basepoint, "basepoint id (CSV inputs)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Sequential ends of sampled metric spaces", std::string(kToolName)};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"generate", "sample a space and print its points"},
      {"validate", "check the metric axioms on a sample"},
      {"components", "K-chain components of the sample or of a ball complement"},
      {"same-end", "decide whether two sequences define the same end"},
      {"sigma", "estimate the number of sequential ends"},
      {"witness", "same-end decision plus an interleaved sequence containing both inputs"},
      {"induced", "push two sequences through a sampled map and compare verdicts"},
      {"basepoint-check", "rerun sigma from several basepoints"},
  };
  for (const auto& [name, help] : commands) {
    auto* cmd = app.add_subcommand(name, help);
    add_space_options(cmd, o.space, "");
    cmd->add_option("--k-sweep", o.k_sweep, "increasing list of K values");
    cmd->add_option("--radii", o.radii, "increasing list of radii");
    cmd->add_option("--seed", o.seed, "seed for randomized checks");
    cmd->add_option("--output,-o", o.output, "write the report here instead of stdout");
    cmd->add_option("--format", o.format, "json | dot | csv")->check(CLI::IsMember({"json", "dot", "csv"}));
    cmd->add_option("--live-margin", o.live_margin, "distance from the window edge that keeps a component live");
    if (name == "validate") cmd->add_option("--triples", o.triple_budget, "triangle-inequality triple budget");
    if (name == "components") {
      cmd->add_option("--K", o.K, "chain scale");
      cmd->add_option("--radius", o.radius, "restrict to the complement of this ball");
    }
    if (name == "same-end" || name == "witness" || name == "induced") {
      cmd->add_option("--s", o.s_spec, "ids:..|file:..|coords:x,y;..|ray:dx,dy|polyline:x,y;..");
      cmd->add_option("--t", o.t_spec, "second sequence, same syntax");
    }
    if (name == "basepoint-check") {
      cmd->add_option("--basepoints", o.basepoints, "coordinates, e.g. \"0,1;0,4\"");
      cmd->add_option("--basepoint-ids", o.basepoint_ids, "sample ids, e.g. 0,7");
    }
    if (name == "induced") {
      add_space_options(cmd, o.to_space, "to-");
      cmd->add_option("--to-k-sweep", o.to_k_sweep, "K sweep in the codomain (default: --k-sweep)");
      cmd->add_option("--to-radii", o.to_radii, "radii in the codomain (default: --radii)");
      cmd->add_option("--map", o.map, "identity | inclusion | scale:F");
    }
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kPrecondition;
  }
  for (const auto* sub : app.get_subcommands()) o.command = sub->get_name();

  try {
    const auto text = execute(o);
    if (o.output.empty()) {
      out << text;
    } else {
      std::ofstream file(o.output, std::ios::binary);
      if (!file) throw PreconditionError("cannot write '" + o.output + "'");
      file << text;
    }
    return kOk;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kPrecondition;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace seqends::cli
