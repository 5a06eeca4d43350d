#include "escortlab/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace escortlab {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError("bad number: '" + s + "'");
    return v;
}

std::string sequence_to_csv(const PointSequence& seq) {
    seq.validate();
    std::string out = "t";
    int dim = model_dim(seq.model);
    for (int c = 1; c <= dim; ++c) out += ",c" + std::to_string(c);
    out += "\n";
    for (std::size_t i = 0; i < seq.points.size(); ++i) {
        out += format_double(seq.times[i]);
        for (double x : seq.points[i].x) {
            out += ',';
            out += format_double(x);
        }
        out += '\n';
    }
    return out;
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

PointSequence sequence_from_csv(const ModelId& model, const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("csv: empty input");
    int dim = model_dim(model);
    std::string want = "t";
    for (int c = 1; c <= dim; ++c) want += ",c" + std::to_string(c);
    if (trim(line) != want) throw ConfigError("csv: bad header '" + line + "'");
    std::vector<ModelPoint> points;
    std::vector<double> times;
    while (std::getline(in, line)) {
        if (trim(line).empty()) continue;
        auto cells = split(trim(line), ',');
        if ((int)cells.size() != dim + 1) throw ConfigError("csv: bad row '" + line + "'");
        times.push_back(parse_double(cells[0]));
        std::vector<double> x(dim);
        for (int c = 0; c < dim; ++c) x[c] = parse_double(cells[c + 1]);
        points.emplace_back(model, std::move(x));
    }
    return make_sequence(model, std::move(points), std::move(times));
}

Config parse_config(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        std::string t = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (t.empty()) continue;
        if (t.front() == '[' && t.back() == ']') {
            section = trim(t.substr(1, t.size() - 2));
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        std::string full = section.empty() ? key : section + "." + key;
        if (cfg.count(full))
            throw ConfigError("config: duplicate key '" + full + "'");
        cfg[full] = val;
    }
    return cfg;
}

Config load_config(const std::string& path) { return parse_config(read_file(path)); }

void reject_unknown_keys(const Config& cfg, const std::vector<std::string>& allowed) {
    for (const auto& [k, v] : cfg) {
        (void)v;
        if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
            throw ConfigError("config: unknown key '" + k + "'");
    }
}

double config_number(const Config& cfg, const std::string& key, double fallback) {
    auto it = cfg.find(key);
    return it == cfg.end() ? fallback : parse_double(it->second);
}

std::string config_string(const Config& cfg, const std::string& key,
                          const std::string& fallback) {
    auto it = cfg.find(key);
    return it == cfg.end() ? fallback : it->second;
}

std::string json_line(const std::map<std::string, std::string>& str_fields,
                      const std::map<std::string, double>& num_fields) {
    nlohmann::json j;  // nlohmann::json object keys are kept sorted
    for (const auto& [k, v] : str_fields) j[k] = v;
    for (const auto& [k, v] : num_fields) j[k] = v;
    return j.dump();
}

std::string RunRecord::digest() const {
    // FNV-1a over sorted key=value lines (Config is an ordered map)
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        h ^= '\n';
        h *= 1099511628211ull;
    };
    mix("command=" + command);
    for (const auto& [k, v] : config) mix(k + "=" + v);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

std::string RunRecord::to_json_line() const {
    nlohmann::json j;
    j["command"] = command;
    j["config"] = nlohmann::json::object();
    for (const auto& [k, v] : config) j["config"][k] = v;
    j["digest"] = digest();
    j["outputs"] = outputs;
    j["tool_version"] = tool_version;
    j["wall_seconds"] = wall_seconds;
    return j.dump();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read file: " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write file: " + tmp);
        out << content;
        if (!out.good()) throw ConfigError("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw ConfigError("rename failed: " + path);
}

}  // namespace escortlab
