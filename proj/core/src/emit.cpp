#include "spinom/emit.hpp"

#include "spinom/errors.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

namespace spinom {

Format format_from_string(std::string_view s) {
    if (s == "csv") return Format::csv;
    if (s == "json") return Format::json;
    throw ConfigError("unknown output format '" + std::string(s) + "' (expected csv or json)");
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v == 0.0 ? 0.0 : v);  // no "-0"
    return buf;
}

namespace {

const char* const kRecordColumns[] = {"P", "Delta_c", "Omega_r", "J", "T_bath", "Q",
                                      "stable", "converged", "iterations", "ss_residual"};

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

void write_record_fields(const ResultRecord& r, std::ostream& out) {
    out << ',' << format_double(r.P) << ',' << format_double(r.Delta_c) << ','
        << format_double(r.Omega_r) << ',' << format_double(r.J) << ',' << format_double(r.T_bath)
        << ',' << format_double(r.Q) << ',' << (r.stable ? 1 : 0) << ',' << (r.converged ? 1 : 0)
        << ',' << r.iterations << ',' << format_double(r.ss_residual);
    for (const auto& v : r.values) {
        out << ',';
        if (v) out << format_double(*v);
    }
    out << ',' << csv_field(r.error);
}

std::string suffix(Direction d) { return d == Direction::left_input ? "_left" : "_right"; }

}  // namespace

void write_csv(const Table& table, std::ostream& out) {
    const bool pivot = table.directions.size() > 1;
    bool first = true;
    auto col = [&](const std::string& name) {
        if (!first) out << ',';
        out << csv_field(name);
        first = false;
    };
    for (const auto& a : table.axis_names) col(a);
    if (!pivot) col("direction");
    for (Direction d : table.directions) {
        const std::string sfx = pivot ? suffix(d) : "";
        for (const char* c : kRecordColumns) col(c + sfx);
        for (const auto& o : table.outputs) col(o + sfx);
        col("error" + sfx);
    }
    out << '\n';

    const std::size_t per_point = std::max<std::size_t>(table.directions.size(), 1);
    for (std::size_t i = 0; i < table.rows.size(); i += per_point) {
        const ResultRecord& head = table.rows[i];
        bool first_field = true;
        for (double v : head.axis_values) {
            if (!first_field) out << ',';
            out << format_double(v);
            first_field = false;
        }
        if (!pivot) {
            if (!first_field) out << ',';
            out << to_string(head.direction);
            first_field = false;
        }
        for (std::size_t k = 0; k < per_point && i + k < table.rows.size(); ++k) {
            std::ostringstream rec;
            write_record_fields(table.rows[i + k], rec);
            // write_record_fields always starts with a separator.
            const std::string s = rec.str();
            out << (first_field ? s.substr(1) : s);
            first_field = false;
        }
        out << '\n';
    }
}

nlohmann::json table_to_json(const Table& table) {
    nlohmann::json records = nlohmann::json::array();
    for (const auto& r : table.rows) {
        nlohmann::json values = nlohmann::json::array();
        for (const auto& v : r.values) values.push_back(v ? nlohmann::json(*v) : nlohmann::json(nullptr));
        records.push_back({
            {"axis_values", r.axis_values},
            {"direction", std::string(to_string(r.direction))},
            {"P", r.P}, {"Delta_c", r.Delta_c}, {"Omega_r", r.Omega_r}, {"J", r.J},
            {"T_bath", r.T_bath}, {"Q", r.Q},
            {"stable", r.stable}, {"converged", r.converged}, {"iterations", r.iterations},
            {"ss_residual", r.ss_residual}, {"error", r.error},
            {"values", std::move(values)},
        });
    }
    nlohmann::json dirs = nlohmann::json::array();
    for (auto d : table.directions) dirs.push_back(std::string(to_string(d)));
    return {
        {"metadata", table.metadata},
        {"axis_names", table.axis_names},
        {"outputs", table.outputs},
        {"directions", dirs},
        {"records", records},
    };
}

Table table_from_json(const nlohmann::json& j) {
    try {
        Table t;
        t.metadata = j.at("metadata");
        t.axis_names = j.at("axis_names").get<std::vector<std::string>>();
        t.outputs = j.at("outputs").get<std::vector<std::string>>();
        for (const auto& d : j.at("directions")) t.directions.push_back(direction_from_string(d.get<std::string>()));
        for (const auto& r : j.at("records")) {
            ResultRecord rec;
            rec.axis_values = r.at("axis_values").get<std::vector<double>>();
            rec.direction = direction_from_string(r.at("direction").get<std::string>());
            rec.P = r.at("P").get<double>();
            rec.Delta_c = r.at("Delta_c").get<double>();
            rec.Omega_r = r.at("Omega_r").get<double>();
            rec.J = r.at("J").get<double>();
            rec.T_bath = r.at("T_bath").get<double>();
            rec.Q = r.at("Q").get<double>();
            rec.stable = r.at("stable").get<bool>();
            rec.converged = r.at("converged").get<bool>();
            rec.iterations = r.at("iterations").get<int>();
            rec.ss_residual = r.at("ss_residual").get<double>();
            rec.error = r.at("error").get<std::string>();
            for (const auto& v : r.at("values")) {
                rec.values.push_back(v.is_null() ? std::nullopt : std::optional<double>(v.get<double>()));
            }
            t.rows.push_back(std::move(rec));
        }
        return t;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed result table: ") + e.what());
    }
}

void emit(const Table& table, Format format, std::ostream& out) {
    if (format == Format::csv) {
        write_csv(table, out);
    } else {
        out << table_to_json(table).dump(1) << '\n';
    }
}

namespace {

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string(), std::string("cannot open for writing: ") + std::strerror(errno));
    body(out);
    out.flush();
    if (!out) throw IoError(path.string(), "write failed");
}

}  // namespace

void emit(const Table& table, Format format, const std::filesystem::path& path) {
    write_file(path, [&](std::ostream& out) { emit(table, format, out); });
    if (format == Format::csv) {
        std::filesystem::path meta = path;
        meta += ".meta.json";
        write_file(meta, [&](std::ostream& out) { out << table.metadata.dump(1) << '\n'; });
    }
}

}  // namespace spinom
