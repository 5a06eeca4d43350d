#pragma once

#include <map>
#include <string>
#include <vector>

#include "escortlab/escort.hpp"

// Serialization: bit-exact PointSequence CSV, line-oriented key-value config
// with sections, JSON-lines records with sorted keys, run records with a
// reorder-stable digest, and atomic file writes.

namespace escortlab {

// Shortest round-trip decimal form of a double (std::to_chars).
std::string format_double(double v);
double parse_double(const std::string& s);

// CSV schema: header `t,c1,c2[,c3...]`, one row per sample.
std::string sequence_to_csv(const PointSequence& seq);
PointSequence sequence_from_csv(const ModelId& model, const std::string& csv);

// Sectioned key-value config: `[section]` headers, `key = value` lines,
// `#` comments.  Keys are reported as "section.key" (no section: bare key).
using Config = std::map<std::string, std::string>;
Config parse_config(const std::string& text);
Config load_config(const std::string& path);

// Throws ConfigError when cfg contains a key outside `allowed`.
void reject_unknown_keys(const Config& cfg, const std::vector<std::string>& allowed);

double config_number(const Config& cfg, const std::string& key, double fallback);
std::string config_string(const Config& cfg, const std::string& key,
                          const std::string& fallback);

// One JSON object per line, keys sorted; values: numbers, strings, arrays.
std::string json_line(const std::map<std::string, std::string>& str_fields,
                      const std::map<std::string, double>& num_fields);

struct RunRecord {
    std::string command;
    Config config;
    std::string tool_version;
    double wall_seconds = 0.0;
    std::vector<std::string> outputs;

    std::string digest() const;  // FNV-1a over sorted key=value lines
    std::string to_json_line() const;
};

std::string read_file(const std::string& path);
// temp-file + rename
void atomic_write(const std::string& path, const std::string& content);

}  // namespace escortlab
