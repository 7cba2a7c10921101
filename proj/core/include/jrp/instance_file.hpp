#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "jrp/model.hpp"
#include "jrp/pipeline.hpp"

namespace jrp {

// Instance documents are JSON:
//
//   {
//     "priority_mode": "discrete" | "continuous",
//     "weights": {"c_priority": 1.0, "c_affinity": 0.5},
//     "assigned": [{"job": "a1", "agent": "w1", "priority": 0.3}, ...],
//     "vacants": [{"job": "v1", "priority": 0.9}, ...],
//     "affinity_counts": [{"job": "v1", "agent": "w1", "count": 2}, ...]
//   }
//
// Errors are InputError with either a line/column (syntax) or a field path
// such as "assigned[2].priority" (content).
JrpInstance parse_instance(std::string_view text);
JrpInstance load_instance(const std::filesystem::path& path);

std::string serialize_instance(const JrpInstance& instance);
void save_instance(const std::filesystem::path& path, const JrpInstance& instance);

// Machine-readable pipeline report.
std::string serialize_report(const PipelineReport& report, const JrpInstance& instance);

}  // namespace jrp
