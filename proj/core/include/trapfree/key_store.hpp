#pragma once

#include <filesystem>

#include "trapfree/bytes.hpp"
#include "trapfree/scheme_api.hpp"

// Key-store files:
//
//   "TFKS" | scheme tag (1) | version (1)
//   | u32 length | public section
//   | u32 length | secret section      (empty for exported public keys)
//   | u32 length (16) | u64 uses consumed | u64 uses max (all ones: unbounded)
//
// Integers are big-endian. The state section is last and fixed-size so a sign
// can rewrite it in place.
namespace trapfree::store {

inline constexpr std::uint8_t kMagic[4] = {'T', 'F', 'K', 'S'};
inline constexpr std::uint8_t kVersion = 1;
inline constexpr std::size_t kStateBytes = 16;

Bytes encode(const KeyRecord& record);
/// Throws InvalidInput on bad magic, version, tag or framing.
KeyRecord decode(ByteView data);

/// Copy of `record` without its secret section.
KeyRecord public_only(const KeyRecord& record);

/// Writes via a temporary file and rename. Throws StoreError if the file
/// exists and `overwrite` is false.
void write_file(const std::filesystem::path& path, const KeyRecord& record, bool overwrite);
KeyRecord read_file(const std::filesystem::path& path);

Bytes read_bytes(const std::filesystem::path& path);
void write_bytes(const std::filesystem::path& path, ByteView data);

/// Exclusive handle on a key-store file: holds an flock for its lifetime so at
/// most one signer advances a key at a time.
class ExclusiveKeyFile {
 public:
  explicit ExclusiveKeyFile(const std::filesystem::path& path);
  ~ExclusiveKeyFile();
  ExclusiveKeyFile(const ExclusiveKeyFile&) = delete;
  ExclusiveKeyFile& operator=(const ExclusiveKeyFile&) = delete;

  const KeyRecord& record() const noexcept { return record_; }

  /// Rewrites the usage state in place and fsyncs before returning.
  void persist_usage(const UsageState& usage);

 private:
  int fd_ = -1;
  std::size_t state_offset_ = 0;
  KeyRecord record_;
};

}  // namespace trapfree::store
