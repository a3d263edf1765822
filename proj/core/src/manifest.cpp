#include "hvlab/manifest.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "hvlab/table.hpp"

namespace hvlab {

std::string format_double_exact(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

void RunManifest::set(const std::string& key, const std::string& value) {
    for (auto& entry : config) {
        if (entry.first == key) {
            entry.second = value;
            return;
        }
    }
    config.emplace_back(key, value);
}

void RunManifest::set(const std::string& key, double value) { set(key, format_double_exact(value)); }

void RunManifest::set(const std::string& key, std::int64_t value) { set(key, std::to_string(value)); }

std::string RunManifest::hash() const {
    std::vector<std::pair<std::string, std::string>> sorted = config;
    std::sort(sorted.begin(), sorted.end());
    std::string canonical = "subcommand=" + subcommand + "\nseed=" + std::to_string(seed) + "\n";
    for (const auto& [key, value] : sorted) canonical += key + "=" + value + "\n";
    return hex64(fnv1a64(canonical));
}

std::string RunManifest::to_file_text() const {
    std::string out;
    out += "# subcommand = " + subcommand + "\n";
    out += "# version = " + version + "\n";
    out += "# manifest_hash = " + hash() + "\n";
    out += "# duration_ms = " + format_double_exact(duration_ms) + "\n";
    out += "seed = " + std::to_string(seed) + "\n";
    out += "partitions = " + std::to_string(partitions) + "\n";
    for (const auto& [key, value] : config) out += key + " = " + value + "\n";
    return out;
}

namespace {

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = text.find_last_not_of(" \t\r");
    return text.substr(begin, end - begin + 1);
}

}  // namespace

std::map<std::string, std::string> RunManifest::parse_text(const std::string& text) {
    std::map<std::string, std::string> entries;
    std::istringstream stream(text);
    std::string line;
    while (std::getline(stream, line)) {
        std::string body = trim(line);
        if (body.empty()) continue;
        if (body.front() == '#') {
            body = trim(body.substr(1));
            if (body.find('=') == std::string::npos) continue;  // plain comment
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) continue;
        std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"')
            value = value.substr(1, value.size() - 2);
        if (!key.empty()) entries[key] = value;
    }
    return entries;
}

}  // namespace hvlab
