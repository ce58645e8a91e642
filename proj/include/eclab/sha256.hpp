#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace eclab {

/// Plain SHA-256. Used as the keyed bit/byte source behind the pseudorandom
/// phase oracle and the toy one-way functions. Not performance critical.
std::array<std::uint8_t, 32> sha256(const std::uint8_t* data, std::size_t len);
std::array<std::uint8_t, 32> sha256(const std::string& s);

/// First bit of SHA256(key || msg).
int keyed_hash_bit(std::uint64_t key, std::uint64_t msg);

/// First 64 bits of SHA256(key || msg), big-endian.
std::uint64_t keyed_hash_word(std::uint64_t key, std::uint64_t msg);

}  // namespace eclab
