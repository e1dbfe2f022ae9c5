#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace hypagg::config {

/// Flat `key = value` file. `#` starts a comment; keys are normalized to lowercase with
/// '_' read as '-', so `t_final` and `t-final` name the same setting.
using Entries = std::vector<std::pair<std::string, std::string>>;

/// Throws std::invalid_argument (with the line number) on malformed lines or repeated keys.
Entries parse(std::istream& in);
Entries load(const std::string& path);

std::string normalize_key(std::string key);

}  // namespace hypagg::config
