#pragma once

#include "rainbow/danger.hpp"
#include "rainbow/experiments.hpp"
#include "rainbow/recolor.hpp"
#include "rainbow/two_round.hpp"

#include <json.hpp>

#include <string>

namespace rainbow {

using Json = nlohmann::json;

inline constexpr int output_schema_version = 1;

Json to_json(const MAuditReport& r);
Json to_json(const LemmaAudit& a);
Json to_json(const RecolorTrace& t);
Json to_json(const CertificationRecord& r);
Json fix_log_json(const TwoRoundOutput& out);

/// {"config", "records", "summary", "version"} documents. `kind` names the
/// experiment; the worker-thread count is deliberately absent.
Json experiment_document(const std::string& kind, const ExperimentConfig& cfg, const CorollaryStats& s);
Json experiment_document(const std::string& kind, const ExperimentConfig& cfg, const KColoringStats& s);
Json experiment_document(const std::string& kind, const ExperimentConfig& cfg, const HittingStats& s);

/// One record per row under a fixed header.
std::string to_csv(const CorollaryStats& s);
std::string to_csv(const KColoringStats& s);
std::string to_csv(const HittingStats& s);

} // namespace rainbow
