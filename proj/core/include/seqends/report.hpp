#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "seqends/chains.hpp"
#include "seqends/ends.hpp"
#include "seqends/metric.hpp"
#include "seqends/sequences.hpp"

namespace seqends {

using Json = nlohmann::json;

// Conversions picked up by nlohmann::json through ADL, so `Json j = value;` works.
void to_json(Json& j, const MetricSpaceSample& sample);
void to_json(Json& j, const Violation& violation);
void to_json(Json& j, const ValidationReport& report);
void to_json(Json& j, const KChain& chain);
void to_json(Json& j, const ChainPartition& partition);
void to_json(Json& j, const CoarseSequencePrefix& seq);
void to_json(Json& j, const SubsequenceWitness& witness);
void to_json(Json& j, const CoarseCheck& check);
void to_json(Json& j, const Stitch& stitch);
void to_json(Json& j, const Interleaving& interleaving);
void to_json(Json& j, const EndWitness& witness);
void to_json(Json& j, const KAttempt& attempt);
void to_json(Json& j, const EndDecision& decision);
void to_json(Json& j, const EndFiltration& filtration);
void to_json(Json& j, const SigmaReport& report);
void to_json(Json& j, const ModuliReport& report);
void to_json(Json& j, const BasepointReport& report);

/// {schema, tool, version, config, result}.
Json make_report(Json config, Json result);

/// Pretty-printed with a trailing newline. Key order is sorted, so equal
/// inputs give byte-identical text.
std::string dump_report(const Json& report);

/// One node per component per level (`L<level>_C<component>`), one edge per
/// thread-map entry pointing from the outer level to the inner one.
std::string filtration_to_dot(const EndFiltration& filtration);

std::string sigma_to_csv(const SigmaReport& report);
std::string partition_to_csv(const ChainPartition& partition);  // point_id,component
std::string points_to_csv(const MetricSpaceSample& sample);     // id,x0,x1,...,dist_from_basepoint

}  // namespace seqends
