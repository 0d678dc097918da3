#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace vtr {

/// 32-byte SHA-256 digest of the input bytes.
std::array<uint8_t, 32> sha256(const std::string& data);

/// Lowercase hex SHA-256 of the input bytes.
std::string sha256_hex(const std::string& data);

/// Hex SHA-256 of a file's contents. Throws Error if unreadable.
std::string sha256_file_hex(const std::string& path);

/// FNV-1a 64-bit hash.
uint64_t fnv1a64(const void* data, size_t len);
uint64_t fnv1a64(const std::string& data);

}  // namespace vtr
