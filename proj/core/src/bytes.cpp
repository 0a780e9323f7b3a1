#include "trapfree/bytes.hpp"

#include <algorithm>

#include "trapfree/errors.hpp"

namespace trapfree {

template <typename Tag>
Block32<Tag> Block32<Tag>::from_bytes(ByteView data) {
  if (data.size() != kSize) {
    throw InvalidInput("expected 32 bytes, got " + std::to_string(data.size()));
  }
  Block32 out;
  std::copy(data.begin(), data.end(), out.bytes.begin());
  return out;
}

template struct Block32<DigestTag>;
template struct Block32<SeedTag>;

std::string to_hex(ByteView data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (std::uint8_t b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0x0F]);
  }
  return out;
}

namespace {

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

Bytes from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw InvalidInput("hex string has odd length");
  Bytes out;
  out.reserve(hex.size() / 2);
  for (std::size_t i = 0; i < hex.size(); i += 2) {
    const int hi = hex_value(hex[i]);
    const int lo = hex_value(hex[i + 1]);
    if (hi < 0 || lo < 0) throw InvalidInput("invalid hex digit");
    out.push_back(static_cast<std::uint8_t>(hi << 4 | lo));
  }
  return out;
}

void put_u16_be(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

void put_u32_be(Bytes& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_u64_be(Bytes& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

namespace {

std::uint64_t get_be(ByteView in, std::size_t offset, std::size_t width) {
  if (offset > in.size() || in.size() - offset < width) {
    throw InvalidInput("truncated integer field");
  }
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < width; ++i) v = v << 8 | in[offset + i];
  return v;
}

}  // namespace

std::uint16_t get_u16_be(ByteView in, std::size_t offset) {
  return static_cast<std::uint16_t>(get_be(in, offset, 2));
}
std::uint32_t get_u32_be(ByteView in, std::size_t offset) {
  return static_cast<std::uint32_t>(get_be(in, offset, 4));
}
std::uint64_t get_u64_be(ByteView in, std::size_t offset) { return get_be(in, offset, 8); }

void append(Bytes& out, ByteView data) { out.insert(out.end(), data.begin(), data.end()); }

}  // namespace trapfree
