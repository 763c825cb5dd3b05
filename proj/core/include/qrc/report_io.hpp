#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "qrc/linearity.hpp"
#include "qrc/reservoir.hpp"

namespace qrc {

inline constexpr int kReportSchemaVersion = 1;

nlohmann::json report_to_json(const LinearityReport& report);
LinearityReport report_from_json(const nlohmann::json& j);

// Per-node sample table with header u_0..u_{N-1},node_index,value,residual.
std::string nodes_csv(const LinearityReport& report);

std::string stm_csv(const StmResult& result);              // delay,r2
std::string sine_csv(const SineResult& result, const UGrid& grid);  // param,nmse

// Writes via a temp file in the same directory plus an atomic rename, so a
// failed run leaves no partial outputs.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string format_double(double v);

}  // namespace qrc
