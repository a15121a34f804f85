#include "csram/keyval.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>
#include <string_view>

#include "csram/errors.hpp"

namespace csram {
namespace {

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-') return false;
    }
    return true;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ConfigError("line " + std::to_string(line) + ": " + msg);
}

} // namespace

KeyValueMap parse_keyval(std::istream& in) {
    KeyValueMap kv;
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        if (s[0] == '[') {
            if (s.back() != ']') fail(lineno, "unterminated section header");
            section = trim(s.substr(1, s.size() - 2));
            if (!valid_name(section)) fail(lineno, "bad section name '" + section + "'");
            continue;
        }
        size_t eq = s.find('=');
        if (eq == std::string::npos) fail(lineno, "expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string value = trim(s.substr(eq + 1));
        if (key.empty()) fail(lineno, "empty key");
        size_t dot = key.find('.');
        if (dot != std::string::npos) {
            if (!section.empty()) fail(lineno, "dotted key inside a section");
            std::string pre = key.substr(0, dot);
            std::string post = key.substr(dot + 1);
            if (!valid_name(pre) || !valid_name(post)) fail(lineno, "bad key '" + key + "'");
        } else if (!valid_name(key)) {
            fail(lineno, "bad key '" + key + "'");
        }
        std::string full = section.empty() || dot != std::string::npos ? key : section + "." + key;
        kv[full] = value;
    }
    return kv;
}

KeyValueMap parse_keyval_text(const std::string& text) {
    std::istringstream in(text);
    return parse_keyval(in);
}

KeyValueMap parse_keyval_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open config file: " + file.string());
    return parse_keyval(in);
}

std::string emit_keyval(const KeyValueMap& kv) {
    std::ostringstream out;
    for (const auto& [key, value] : kv) {
        if (key.find('.') == std::string::npos) out << key << " = " << value << "\n";
    }
    // Dotted keys sharing a section prefix are contiguous in map order, so a
    // single pass groups them under one header each.
    std::string section;
    for (const auto& [key, value] : kv) {
        size_t dot = key.find('.');
        if (dot == std::string::npos) continue;
        std::string sec = key.substr(0, dot);
        if (sec != section) {
            if (out.tellp() != std::streampos(0)) out << "\n";
            out << "[" << sec << "]\n";
            section = sec;
        }
        out << key.substr(dot + 1) << " = " << value << "\n";
    }
    return out.str();
}

bool kv_has(const KeyValueMap& kv, const std::string& key) {
    return kv.find(key) != kv.end();
}

std::string kv_require(const KeyValueMap& kv, const std::string& key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError("missing required key '" + key + "'");
    return it->second;
}

std::string kv_get(const KeyValueMap& kv, const std::string& key, const std::string& fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

int64_t kv_parse_int(const std::string& key, const std::string& value) {
    int64_t out = 0;
    const char* b = value.data();
    const char* e = b + value.size();
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || p != e) {
        throw ConfigError("key '" + key + "': '" + value + "' is not an integer");
    }
    return out;
}

double kv_parse_double(const std::string& key, const std::string& value) {
    double out = 0;
    const char* b = value.data();
    const char* e = b + value.size();
    auto [p, ec] = std::from_chars(b, e, out);
    if (ec != std::errc() || p != e) {
        throw ConfigError("key '" + key + "': '" + value + "' is not a number");
    }
    return out;
}

bool kv_parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw ConfigError("key '" + key + "': '" + value + "' is not a boolean");
}

int64_t kv_get_int(const KeyValueMap& kv, const std::string& key, int64_t fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : kv_parse_int(key, it->second);
}

double kv_get_double(const KeyValueMap& kv, const std::string& key, double fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : kv_parse_double(key, it->second);
}

bool kv_get_bool(const KeyValueMap& kv, const std::string& key, bool fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : kv_parse_bool(key, it->second);
}

} // namespace csram
