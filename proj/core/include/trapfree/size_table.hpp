#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "trapfree/scheme_api.hpp"

namespace trapfree::sizes {

struct SizeTableRow {
  std::string method_name;
  std::uint64_t public_key_bytes = 0;
  std::uint64_t secret_key_bytes = 0;
  std::uint64_t signature_bytes = 0;
  std::string security_level;
  std::string source;

  friend bool operator==(const SizeTableRow&, const SizeTableRow&) = default;
};

inline constexpr const char* kReferenceSource = "reference (Table 1)";
inline constexpr const char* kMeasuredSource = "measured";

/// Published SPHINCS+ SHA-256 sizes. Reference data only; this library does
/// not implement SPHINCS+.
std::vector<SizeTableRow> sphincs_reference_rows();

/// Sizes of freshly generated keys and one signature, from a fixed seed, at
/// the CLI defaults (rsa 512 bits, merkle height 8, default lattice params).
/// Sizes exclude the 1-byte signature tag and key-file framing.
SizeTableRow measure(SchemeId scheme);

/// Measured rows for `schemes` (all schemes if empty), then the reference rows.
std::vector<SizeTableRow> build_table(std::span<const SchemeId> schemes);

std::string render_aligned(const std::vector<SizeTableRow>& rows);
/// One "name, pk, sk, sig, level, source" line per row.
std::string render_csv(const std::vector<SizeTableRow>& rows);

}  // namespace trapfree::sizes
