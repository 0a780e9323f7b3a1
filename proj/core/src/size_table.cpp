#include "trapfree/size_table.hpp"

#include <algorithm>
#include <array>
#include <iomanip>
#include <sstream>

namespace trapfree::sizes {
namespace {

constexpr std::string_view kProbeMessage = "size table probe message";

Seed fixed_seed() {
  Seed s;
  for (std::size_t i = 0; i < s.bytes.size(); ++i) s.bytes[i] = static_cast<std::uint8_t>(i);
  return s;
}

std::string method_label(SchemeId scheme) {
  switch (scheme) {
    case SchemeId::kRsa: return "rsa (512-bit, textbook)";
    case SchemeId::kLamport: return "lamport";
    case SchemeId::kWots: return "wots";
    case SchemeId::kWotsChecksum: return "wots-checksum";
    case SchemeId::kMerkle: return "merkle (h=8)";
    case SchemeId::kLatticeFs: return "lattice-fs (q=3329,n=16,m=24)";
  }
  return "unknown";
}

std::string security_label(SchemeId scheme) {
  switch (scheme) {
    case SchemeId::kLamport:
    case SchemeId::kWotsChecksum:
    case SchemeId::kMerkle: return "demo (256-bit hash)";
    case SchemeId::kWots: return "demo (malleable)";
    case SchemeId::kRsa:
    case SchemeId::kLatticeFs: return "demo (insecure)";
  }
  return "";
}

}  // namespace

std::vector<SizeTableRow> sphincs_reference_rows() {
  return {
      {"SPHINCS+ SHA-256 128-bit", 32, 64, 17088, "1 (128-bit)", kReferenceSource},
      {"SPHINCS+ SHA-256 192-bit", 48, 96, 35664, "3 (192-bit)", kReferenceSource},
      {"SPHINCS+ SHA-256 256-bit", 64, 128, 49856, "5 (256-bit)", kReferenceSource},
  };
}

SizeTableRow measure(SchemeId scheme) {
  const KeyRecord record = keygen(scheme, SchemeParams{}, fixed_seed());
  const SignResult signed_probe = sign(record, as_bytes(kProbeMessage));
  return SizeTableRow{method_label(scheme),
                      record.public_blob.size(),
                      record.secret_blob.size(),
                      signed_probe.signature.payload.size(),
                      security_label(scheme),
                      kMeasuredSource};
}

std::vector<SizeTableRow> build_table(std::span<const SchemeId> schemes) {
  std::vector<SizeTableRow> rows;
  if (schemes.empty()) schemes = kAllSchemes;
  for (SchemeId s : schemes) rows.push_back(measure(s));
  for (auto& r : sphincs_reference_rows()) rows.push_back(std::move(r));
  return rows;
}

std::string render_aligned(const std::vector<SizeTableRow>& rows) {
  const std::array<std::string, 6> headers = {"method", "public_key", "secret_key",
                                              "signature", "security_level", "source"};
  std::vector<std::array<std::string, 6>> cells;
  cells.push_back(headers);
  for (const auto& r : rows) {
    cells.push_back({r.method_name, std::to_string(r.public_key_bytes),
                     std::to_string(r.secret_key_bytes), std::to_string(r.signature_bytes),
                     r.security_level, r.source});
  }
  std::array<std::size_t, 6> width{};
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      const bool numeric = c >= 1 && c <= 3;
      if (c > 0) out << "  ";
      if (c + 1 == row.size()) {
        out << row[c];
      } else {
        out << (numeric ? std::right : std::left) << std::setw(static_cast<int>(width[c])) << row[c];
      }
    }
    out << '\n';
  }
  return out.str();
}

std::string render_csv(const std::vector<SizeTableRow>& rows) {
  std::ostringstream out;
  out << "method, public_key, secret_key, signature, security_level, source\n";
  for (const auto& r : rows) {
    out << r.method_name << ", " << r.public_key_bytes << ", " << r.secret_key_bytes << ", "
        << r.signature_bytes << ", " << r.security_level << ", " << r.source << '\n';
  }
  return out.str();
}

}  // namespace trapfree::sizes
