#pragma once

#include <filesystem>
#include <string>

#include "binomcoll/sieve.hpp"

namespace binomcoll {

inline constexpr int kCheckpointVersion = 1;

// JSON document: format tag, version, plan (k, l, max_value as a decimal
// string, prime_bound), m range, primes_done and the survivor bitmap as
// lowercase hex of little-endian 64-bit words.
std::string checkpoint_to_string(const SieveState& state);
SieveState checkpoint_from_string(const std::string& text);

// Writes to "<path>.tmp" and renames over `path`.
void write_checkpoint(const std::filesystem::path& path, const SieveState& state);
SieveState read_checkpoint(const std::filesystem::path& path);

} // namespace binomcoll
