#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hvlab {

/// Fully resolved description of one tool invocation.
///
/// The `config` entries are the physics-relevant resolved settings and are
/// what the manifest hash covers (together with subcommand and seed), so the
/// hash -- and any CSV stamped with it -- is invariant under partition count,
/// tool version and wall-clock. Metadata fields are recorded in the manifest
/// file as comments and ignored when the file is replayed as a config file.
struct RunManifest {
    std::string subcommand;
    std::string version;
    std::uint64_t seed = 0;
    int partitions = 1;
    double duration_ms = 0.0;
    std::vector<std::pair<std::string, std::string>> config;

    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, const char* value) { set(key, std::string(value)); }
    void set(const std::string& key, double value);
    void set(const std::string& key, std::int64_t value);
    void set(const std::string& key, int value) { set(key, static_cast<std::int64_t>(value)); }

    /// Hex FNV-1a over subcommand, seed and the sorted config entries.
    std::string hash() const;

    /// TOML-style key = value text, loadable with --config; metadata lines
    /// are written as comments.
    std::string to_file_text() const;

    /// Parses manifest/config text back into key -> value (metadata comments
    /// of the form `# key = value` included).
    static std::map<std::string, std::string> parse_text(const std::string& text);
};

/// Exact decimal round-trip formatting for manifest values.
std::string format_double_exact(double value);

}  // namespace hvlab
