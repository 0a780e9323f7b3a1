#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "trapfree/bytes.hpp"

namespace trapfree::testing {

inline Seed random_seed(std::mt19937_64& rng) {
  Seed s;
  for (auto& b : s.bytes) b = static_cast<std::uint8_t>(rng());
  return s;
}

inline Bytes random_bytes(std::mt19937_64& rng, std::size_t len) {
  Bytes out(len);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng());
  return out;
}

inline Bytes random_message(std::mt19937_64& rng) {
  return random_bytes(rng, 1 + rng() % 96);
}

inline Seed counting_seed() {
  Seed s;
  for (std::size_t i = 0; i < s.bytes.size(); ++i) s.bytes[i] = static_cast<std::uint8_t>(i);
  return s;
}

inline Digest256 digest_from_hex(const std::string& hex) {
  return Digest256::from_bytes(from_hex(hex));
}

inline void flip_bit(Bytes& data, std::size_t bit) {
  data[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
}

}  // namespace trapfree::testing
