#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

namespace conduit {

/// FNV-1a 64 content hash, hex encoded. Identifies inputs in run manifests;
/// not cryptographic.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::string file_hash_hex(const std::filesystem::path& path); // throws ParseError

} // namespace conduit
