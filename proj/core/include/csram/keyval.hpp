#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

namespace csram {

// Flat "key = value" text with [section] headers and # comments. Parsed keys
// are namespaced as "section.key"; keys before any header (or written with an
// explicit dot) keep their full name. Last assignment wins. A '#' starts a
// comment only as the first non-blank character of a line, so values may
// contain '#'.
using KeyValueMap = std::map<std::string, std::string>;

KeyValueMap parse_keyval(std::istream& in);
KeyValueMap parse_keyval_text(const std::string& text);
KeyValueMap parse_keyval_file(const std::filesystem::path& file);

// Canonical form: unsectioned keys first, then one [section] block per prefix,
// keys sorted. Re-parses to the same map.
std::string emit_keyval(const KeyValueMap& kv);

bool kv_has(const KeyValueMap& kv, const std::string& key);

// Typed lookups. The *_or forms substitute a fallback when the key is absent;
// all forms throw ConfigError naming the key when a value fails to parse.
std::string kv_require(const KeyValueMap& kv, const std::string& key);
std::string kv_get(const KeyValueMap& kv, const std::string& key, const std::string& fallback);
int64_t kv_get_int(const KeyValueMap& kv, const std::string& key, int64_t fallback);
double kv_get_double(const KeyValueMap& kv, const std::string& key, double fallback);
bool kv_get_bool(const KeyValueMap& kv, const std::string& key, bool fallback);

int64_t kv_parse_int(const std::string& key, const std::string& value);
double kv_parse_double(const std::string& key, const std::string& value);
bool kv_parse_bool(const std::string& key, const std::string& value);

} // namespace csram
