#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace inspde {

/// Flat key/value config text: one `dotted.key = value` per line, `#`
/// comments, values either a scalar token, a quoted string, or a bracketed
/// list `[a, b, c]`. Typed getters collect problems into an error list
/// instead of failing fast, and consumed keys are tracked so validation can
/// flag unknown ones.
class KvFile {
public:
    static KvFile parse_text(const std::string& text, std::vector<std::string>& errors);
    static KvFile parse_file(const std::string& path, std::vector<std::string>& errors);

    bool has(const std::string& key) const { return raw_.count(key) > 0; }

    std::optional<std::string> get_string(const std::string& key, std::vector<std::string>& errors) const;
    std::optional<double> get_double(const std::string& key, std::vector<std::string>& errors) const;
    std::optional<std::int64_t> get_int(const std::string& key, std::vector<std::string>& errors) const;
    std::optional<std::uint64_t> get_uint64(const std::string& key, std::vector<std::string>& errors) const;
    std::optional<std::vector<double>> get_double_list(const std::string& key,
                                                       std::vector<std::string>& errors) const;

    /// Keys present in the file but never requested by any getter.
    std::vector<std::string> unconsumed_keys() const;

    /// Sorted `key = value` lines, used for hashing the effective config.
    /// `output.*` keys are excluded: the output location and worker count
    /// never change results, so they stay outside the identity of a run.
    std::string canonical_text() const;

    void set(const std::string& key, const std::string& raw_value);

private:
    std::map<std::string, std::string> raw_;
    std::map<std::string, int> line_of_;
    mutable std::set<std::string> consumed_;
};

/// FNV-1a 64 over the canonical text, rendered as 16 hex digits.
std::string config_hash(const std::string& canonical_text);

} // namespace inspde
