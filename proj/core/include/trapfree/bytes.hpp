#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace trapfree {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Fixed 32-byte value. Used for hash outputs (Digest256) and seeds (Seed).
template <typename Tag>
struct Block32 {
  static constexpr std::size_t kSize = 32;
  std::array<std::uint8_t, kSize> bytes{};

  ByteView view() const noexcept { return bytes; }
  friend bool operator==(const Block32&, const Block32&) = default;

  static Block32 from_bytes(ByteView data);
};

struct DigestTag {};
struct SeedTag {};
using Digest256 = Block32<DigestTag>;
using Seed = Block32<SeedTag>;

std::string to_hex(ByteView data);
Bytes from_hex(std::string_view hex);

inline ByteView as_bytes(std::string_view s) noexcept {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

/// Bit i of a digest, most significant bit of byte 0 first.
inline int digest_bit(const Digest256& d, std::size_t i) noexcept {
  return (d.bytes[i / 8] >> (7 - i % 8)) & 1;
}

void put_u16_be(Bytes& out, std::uint16_t v);
void put_u32_be(Bytes& out, std::uint32_t v);
void put_u64_be(Bytes& out, std::uint64_t v);
std::uint16_t get_u16_be(ByteView in, std::size_t offset);
std::uint32_t get_u32_be(ByteView in, std::size_t offset);
std::uint64_t get_u64_be(ByteView in, std::size_t offset);

void append(Bytes& out, ByteView data);

}  // namespace trapfree
