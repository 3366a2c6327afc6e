// export.hpp: JSON and CSV cone documents

#pragma once

#include "thermops/cones.hpp"

#include "json.hpp"

#include <string>
#include <string_view>

namespace thermops {

inline constexpr std::string_view kSchemaVersion = "thermops/1";

enum class ExportFormat { json, csv };

// Throws std::invalid_argument for anything but "json" or "csv".
ExportFormat parse_export_format(std::string_view name);

// {"base", "gibbs", "supports": [{"direction", "value"}], "points": [{"provenance", "x"}]}
nlohmann::json cone_to_json(const ConeApprox& cone);
ConeApprox cone_from_json(const nlohmann::json& doc);

// One row per support direction and one per point, under the fixed header kConeCsvHeader.
inline constexpr std::string_view kConeCsvHeader = "row_type,provenance,x0,x1,x2,c0,c1,c2,support";
std::string cone_to_csv(const ConeApprox& cone);

// JSON (pretty, trailing newline) or CSV text of a bare cone document.
std::string cone_export(const ConeApprox& cone, ExportFormat format);

// {"schema": "thermops/1", "command", "config", "results"}
nlohmann::json envelope(std::string_view command, nlohmann::json config, nlohmann::json results);

// RFC 4180 field: quoted when it contains a comma, quote, CR or LF.
std::string csv_field(std::string_view s);
// Shortest text that reads back to the same double.
std::string format_double(double v);

}  // namespace thermops
