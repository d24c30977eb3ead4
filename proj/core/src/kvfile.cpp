#include "inspde/kvfile.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace inspde {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string strip_comment(const std::string& line) {
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] == '"') quoted = !quoted;
        if (line[i] == '#' && !quoted) return line.substr(0, i);
    }
    return line;
}

bool parse_double_token(const std::string& tok, double& out) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    out = std::strtod(begin, &end);
    return end == begin + tok.size() && !tok.empty();
}

} // namespace

KvFile KvFile::parse_text(const std::string& text, std::vector<std::string>& errors) {
    KvFile kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        const std::size_t eq = body.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(lineno) + ": expected `key = value`");
            continue;
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (key.empty()) {
            errors.push_back("line " + std::to_string(lineno) + ": empty key");
            continue;
        }
        if (kv.raw_.count(key)) {
            errors.push_back("line " + std::to_string(lineno) + ": duplicate key `" + key + "`");
            continue;
        }
        kv.raw_[key] = value;
        kv.line_of_[key] = lineno;
    }
    return kv;
}

KvFile KvFile::parse_file(const std::string& path, std::vector<std::string>& errors) {
    std::ifstream in(path);
    if (!in) {
        errors.push_back("config file unreadable: " + path);
        return KvFile{};
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str(), errors);
}

std::optional<std::string> KvFile::get_string(const std::string& key,
                                              std::vector<std::string>& errors) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return std::nullopt;
    consumed_.insert(key);
    std::string v = it->second;
    if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
    if (v.empty()) {
        errors.push_back(key + ": empty value");
        return std::nullopt;
    }
    return v;
}

std::optional<double> KvFile::get_double(const std::string& key,
                                         std::vector<std::string>& errors) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return std::nullopt;
    consumed_.insert(key);
    double v = 0.0;
    if (!parse_double_token(it->second, v) || !std::isfinite(v)) {
        errors.push_back(key + ": expected a finite number, got `" + it->second + "`");
        return std::nullopt;
    }
    return v;
}

std::optional<std::int64_t> KvFile::get_int(const std::string& key,
                                            std::vector<std::string>& errors) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return std::nullopt;
    consumed_.insert(key);
    std::int64_t v = 0;
    const auto& s = it->second;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        errors.push_back(key + ": expected an integer, got `" + s + "`");
        return std::nullopt;
    }
    return v;
}

std::optional<std::uint64_t> KvFile::get_uint64(const std::string& key,
                                                std::vector<std::string>& errors) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return std::nullopt;
    consumed_.insert(key);
    std::uint64_t v = 0;
    const auto& s = it->second;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
        errors.push_back(key + ": expected an unsigned integer, got `" + s + "`");
        return std::nullopt;
    }
    return v;
}

std::optional<std::vector<double>> KvFile::get_double_list(const std::string& key,
                                                           std::vector<std::string>& errors) const {
    auto it = raw_.find(key);
    if (it == raw_.end()) return std::nullopt;
    consumed_.insert(key);
    const std::string& s = it->second;
    if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
        errors.push_back(key + ": expected a bracketed list, got `" + s + "`");
        return std::nullopt;
    }
    std::vector<double> vals;
    std::string inner = s.substr(1, s.size() - 2);
    std::istringstream in(inner);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) {
            if (vals.empty() && trim(inner).empty()) break; // empty list []
            errors.push_back(key + ": empty list element");
            return std::nullopt;
        }
        double v = 0.0;
        if (!parse_double_token(tok, v) || !std::isfinite(v)) {
            errors.push_back(key + ": bad list element `" + tok + "`");
            return std::nullopt;
        }
        vals.push_back(v);
    }
    return vals;
}

std::vector<std::string> KvFile::unconsumed_keys() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : raw_)
        if (!consumed_.count(k)) out.push_back(k);
    return out;
}

std::string KvFile::canonical_text() const {
    std::ostringstream os;
    for (const auto& [k, v] : raw_) {
        if (k.rfind("output.", 0) == 0) continue;
        os << k << " = " << v << "\n";
    }
    return os.str();
}

void KvFile::set(const std::string& key, const std::string& raw_value) {
    raw_[key] = raw_value;
}

std::string config_hash(const std::string& canonical_text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xf];
        h >>= 4;
    }
    return out;
}

} // namespace inspde
