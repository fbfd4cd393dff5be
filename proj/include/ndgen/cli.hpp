#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ndgen/error.hpp"

namespace ndgen::cli {

/// Malformed command line or configuration file. Maps to exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

enum class Provenance { Default, File, Cli };

struct OptionSpec {
    enum class Kind {
        Value,  // -key value, last occurrence wins
        Multi,  // -key value, repeatable, values accumulate
        Switch, // -key, no value (config files use "key 0|1")
    };
    std::string key;
    Kind kind = Kind::Value;
    std::string defaultValue;
    std::string help;
};

struct ConfigEntry {
    std::vector<std::string> values;
    Provenance source = Provenance::Default;
    /// File name for Provenance::File.
    std::string origin;
};

/// Effective key -> value map with the source of every value.
class CliConfig {
public:
    bool helpRequested = false;

    bool has(const std::string& key) const { return entries_.count(key) != 0; }
    const ConfigEntry& entry(const std::string& key) const;
    const std::string& value(const std::string& key) const;
    const std::vector<std::string>& values(const std::string& key) const { return entry(key).values; }
    Provenance provenance(const std::string& key) const { return entry(key).source; }
    const std::map<std::string, ConfigEntry>& entries() const noexcept { return entries_; }

    std::string text(const std::string& key) const { return value(key); }
    long long integer(const std::string& key) const;
    unsigned long long unsignedInteger(const std::string& key) const;
    double real(const std::string& key) const;
    bool flag(const std::string& key) const;

    void set(const std::string& key, std::vector<std::string> values, Provenance source, std::string origin = {});

    /// One "key = value [source]" line per key.
    void echo(std::ostream& os) const;

private:
    std::map<std::string, ConfigEntry> entries_;
};

/// Maps a flag name (without the leading '-') to its table key, or "" when unknown.
using KeyNormalizer = std::string (*)(const std::string& name);

/// Applies defaults, then every "+F <file>" in order, then the remaining flags. "-help" sets
/// helpRequested. Throws UsageError for unknown flags, missing values and unreadable files.
CliConfig resolve_config(const std::vector<OptionSpec>& table, const std::vector<std::string>& args,
                         KeyNormalizer normalize = nullptr);

/// Parses "key value" lines ('#' starts a comment) into the table's keys.
std::map<std::string, std::vector<std::string>> parse_config_text(const std::vector<OptionSpec>& table,
                                                                  const std::string& text, const std::string& origin,
                                                                  KeyNormalizer normalize = nullptr);

void print_usage(std::ostream& os, const std::string& program, const std::vector<OptionSpec>& table);

const std::vector<OptionSpec>& detgen_options();
const std::vector<OptionSpec>& stogen_options();

/// Canonical key for stogen flags: "XAD" and "XDA" both become the family-ordered "XDA".
std::string stogen_key(const std::string& name);

int run_detgen(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_stogen(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ndgen::cli
