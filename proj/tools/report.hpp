#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pcheb/serialize.hpp"

namespace pcheb::report {

enum Exit : int { ok = 0, usage = 1, partial = 2, failed = 3 };

std::string sha256_hex(const std::string& data);
std::string utc_timestamp();
std::string read_file(const std::string& path);

// q = p^f with p prime
std::pair<long, int> prime_power(long q);

// config and input digest first, timestamp isolated in the last field
json envelope(const std::string& command, const json& config, const std::vector<std::string>& inputs,
              json result, const std::string& status);

void emit(const json& doc, const std::string& path, bool pretty);

}  // namespace pcheb::report
