#include "thermops/export.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace thermops {

namespace {

nlohmann::json to_array(const Vector& v) {
    nlohmann::json a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
    return a;
}

Vector from_array(const nlohmann::json& a) {
    if (!a.is_array()) throw std::invalid_argument("cone document: expected an array of numbers");
    Vector v(static_cast<Eigen::Index>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
    return v;
}

void append_vector(std::string& row, const Vector& v, int width) {
    for (int i = 0; i < width; ++i) {
        row += ',';
        if (i < v.size()) row += format_double(v(i));
    }
}

}  // namespace

ExportFormat parse_export_format(std::string_view name) {
    if (name == "json") return ExportFormat::json;
    if (name == "csv") return ExportFormat::csv;
    throw std::invalid_argument("unsupported export format: " + std::string(name));
}

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

nlohmann::json cone_to_json(const ConeApprox& cone) {
    nlohmann::json doc;
    doc["base"] = to_array(cone.base);
    doc["gibbs"] = to_array(cone.gibbs);
    doc["supports"] = nlohmann::json::array();
    for (const auto& s : cone.supports) doc["supports"].push_back({{"direction", to_array(s.direction)}, {"value", s.value}});
    doc["points"] = nlohmann::json::array();
    for (const auto& p : cone.points)
        doc["points"].push_back({{"provenance", std::string(to_string(p.provenance))}, {"x", to_array(p.x)}});
    return doc;
}

ConeApprox cone_from_json(const nlohmann::json& doc) {
    ConeApprox cone;
    cone.base = from_array(doc.at("base"));
    cone.gibbs = from_array(doc.at("gibbs"));
    for (const auto& s : doc.at("supports")) cone.supports.push_back({from_array(s.at("direction")), s.at("value").get<double>()});
    for (const auto& p : doc.at("points"))
        cone.points.push_back({from_array(p.at("x")), provenance_from_string(p.at("provenance").get<std::string>())});
    return cone;
}

std::string cone_to_csv(const ConeApprox& cone) {
    std::string out(kConeCsvHeader);
    out += "\r\n";
    for (const auto& s : cone.supports) {
        std::string row = "support,";
        append_vector(row, Vector(), 3);
        append_vector(row, s.direction, 3);
        row += ',' + format_double(s.value);
        out += row + "\r\n";
    }
    for (const auto& p : cone.points) {
        std::string row = "point," + csv_field(to_string(p.provenance));
        append_vector(row, p.x, 3);
        row += ",,,,";
        out += row + "\r\n";
    }
    return out;
}

std::string cone_export(const ConeApprox& cone, ExportFormat format) {
    if (format == ExportFormat::csv) return cone_to_csv(cone);
    return cone_to_json(cone).dump(2) + "\n";
}

nlohmann::json envelope(std::string_view command, nlohmann::json config, nlohmann::json results) {
    nlohmann::json doc;
    doc["schema"] = std::string(kSchemaVersion);
    doc["command"] = std::string(command);
    doc["config"] = std::move(config);
    doc["results"] = std::move(results);
    return doc;
}

}  // namespace thermops
