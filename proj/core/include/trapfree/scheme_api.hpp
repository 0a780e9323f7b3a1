#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "trapfree/bytes.hpp"

namespace trapfree {

/// Values are the on-wire scheme tag bytes.
enum class SchemeId : std::uint8_t {
  kRsa = 0x01,
  kLamport = 0x02,
  kWots = 0x03,
  kWotsChecksum = 0x04,
  kMerkle = 0x05,
  kLatticeFs = 0x06,
};

inline constexpr SchemeId kAllSchemes[] = {SchemeId::kRsa,          SchemeId::kLamport,
                                           SchemeId::kWots,         SchemeId::kWotsChecksum,
                                           SchemeId::kMerkle,       SchemeId::kLatticeFs};

std::string_view scheme_token(SchemeId id) noexcept;
/// Throws InvalidInput for anything but the six lowercase tokens.
SchemeId parse_scheme_token(std::string_view token);
/// Throws InvalidInput for an unknown tag byte.
SchemeId scheme_from_tag(std::uint8_t tag);
inline std::uint8_t scheme_tag(SchemeId id) noexcept { return static_cast<std::uint8_t>(id); }

struct UsageState {
  std::uint64_t consumed = 0;
  std::optional<std::uint64_t> max;  // nullopt: unbounded

  bool exhausted() const noexcept { return max && consumed >= *max; }
  friend bool operator==(const UsageState&, const UsageState&) = default;
};

struct KeyRecord {
  SchemeId scheme = SchemeId::kLamport;
  Bytes public_blob;
  Bytes secret_blob;
  UsageState usage;

  friend bool operator==(const KeyRecord&, const KeyRecord&) = default;
};

/// Parameters that only some schemes accept. Supplying one to a scheme that
/// does not use it is a ParameterError.
struct SchemeParams {
  std::optional<int> height;  // merkle; default 8
  std::optional<int> bits;    // rsa; default 512
  bool checksum = false;      // wots, merkle
};

/// Tag byte followed by the scheme's signature payload.
struct SignatureBlob {
  SchemeId scheme = SchemeId::kLamport;
  Bytes payload;

  Bytes encode() const;
  /// Throws InvalidInput on an empty blob or unknown tag.
  static SignatureBlob decode(ByteView data);

  friend bool operator==(const SignatureBlob&, const SignatureBlob&) = default;
};

KeyRecord keygen(SchemeId scheme, const SchemeParams& params, const Seed& seed);

struct SignResult {
  SignatureBlob signature;
  KeyRecord updated;
};

/// Throws KeysExhausted, without producing a signature, once a bounded key
/// has no uses left.
SignResult sign(const KeyRecord& record, ByteView message);

/// Throws InvalidInput if the blob's tag is not `scheme` or the public key or
/// payload is malformed; returns false for a well-formed but invalid signature.
bool verify(SchemeId scheme, ByteView public_blob, ByteView message, const SignatureBlob& sig);

}  // namespace trapfree
