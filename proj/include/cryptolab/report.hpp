#pragma once

#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cryptolab {

// Column-ordered text table rendered as CSV or markdown with identical values.
struct ReportTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

inline std::string to_csv(const ReportTable& table) {
    std::ostringstream os;
    for (std::size_t i = 0; i < table.header.size(); ++i) os << (i ? "," : "") << table.header[i];
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << '\n';
    }
    return os.str();
}

inline std::string to_markdown(const ReportTable& table) {
    std::ostringstream os;
    os << '|';
    for (const auto& h : table.header) os << ' ' << h << " |";
    os << "\n|";
    for (std::size_t i = 0; i < table.header.size(); ++i) os << " --- |";
    os << '\n';
    for (const auto& row : table.rows) {
        os << '|';
        for (const auto& cell : row) os << ' ' << cell << " |";
        os << '\n';
    }
    return os.str();
}

inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (const char c : data) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001B3ull;
    }
    return h;
}

// One manifest per CLI run: the subcommand, every effective parameter, the
// seed, and a digest of each produced output. Equal manifests (ignoring the
// wall clock) imply byte-identical outputs.
struct RunManifest {
    std::string tool_version;
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> parameters;
    std::uint64_t seed = 0;
    bool seeded = false;
    double wall_seconds = 0.0;
    std::vector<std::pair<std::string, std::uint64_t>> output_digests;

    void add_param(std::string key, std::string value) { parameters.emplace_back(std::move(key), std::move(value)); }

    void print(std::ostream& os) const {
        os << "manifest.version=" << tool_version << '\n';
        os << "manifest.subcommand=" << subcommand << '\n';
        for (const auto& [k, v] : parameters) os << "manifest.param." << k << '=' << v << '\n';
        if (seeded) os << "manifest.seed=" << seed << '\n';
        os << "manifest.wall_seconds=" << wall_seconds << '\n';
        for (const auto& [name, digest] : output_digests) {
            os << "manifest.output." << name << ".fnv1a64=";
            os.setf(std::ios::hex, std::ios::basefield);
            os << digest << '\n';
            os.setf(std::ios::dec, std::ios::basefield);
        }
    }
};

}  // namespace cryptolab
