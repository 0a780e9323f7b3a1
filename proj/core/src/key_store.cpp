#include "trapfree/key_store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <sys/stat.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <limits>

#include "trapfree/errors.hpp"

namespace trapfree::store {
namespace {

constexpr std::uint64_t kUnbounded = std::numeric_limits<std::uint64_t>::max();
constexpr std::size_t kHeaderBytes = 6;

std::string errno_text(const std::string& what, const std::filesystem::path& path) {
  return what + " " + path.string() + ": " + std::strerror(errno);
}

Bytes encode_state(const UsageState& usage) {
  Bytes out;
  put_u64_be(out, usage.consumed);
  put_u64_be(out, usage.max.value_or(kUnbounded));
  return out;
}

void put_section(Bytes& out, ByteView section) {
  put_u32_be(out, static_cast<std::uint32_t>(section.size()));
  append(out, section);
}

ByteView take_section(ByteView data, std::size_t& offset) {
  const std::uint32_t len = get_u32_be(data, offset);
  offset += 4;
  if (data.size() - offset < len) throw InvalidInput("key file section overruns the file");
  ByteView section = data.subspan(offset, len);
  offset += len;
  return section;
}

void write_all(int fd, ByteView data, const std::filesystem::path& path) {
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw StoreError(errno_text("write failed for", path));
    }
    done += static_cast<std::size_t>(n);
  }
}

void fsync_dir(const std::filesystem::path& path) {
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  const int fd = ::open(dir.c_str(), O_RDONLY | O_DIRECTORY);
  if (fd >= 0) {
    ::fsync(fd);
    ::close(fd);
  }
}

}  // namespace

Bytes encode(const KeyRecord& record) {
  Bytes out(std::begin(kMagic), std::end(kMagic));
  out.push_back(scheme_tag(record.scheme));
  out.push_back(kVersion);
  put_section(out, record.public_blob);
  put_section(out, record.secret_blob);
  put_section(out, encode_state(record.usage));
  return out;
}

KeyRecord decode(ByteView data) {
  if (data.size() < kHeaderBytes || !std::equal(std::begin(kMagic), std::end(kMagic), data.begin())) {
    throw InvalidInput("not a key-store file (bad magic)");
  }
  KeyRecord record;
  record.scheme = scheme_from_tag(data[4]);
  if (data[5] != kVersion) throw InvalidInput("unsupported key-store version " + std::to_string(data[5]));
  std::size_t offset = kHeaderBytes;
  const ByteView pub = take_section(data, offset);
  const ByteView sec = take_section(data, offset);
  const ByteView state = take_section(data, offset);
  if (offset != data.size()) throw InvalidInput("trailing bytes after key-store state section");
  if (state.size() != kStateBytes) throw InvalidInput("key-store state section has wrong length");
  record.public_blob.assign(pub.begin(), pub.end());
  record.secret_blob.assign(sec.begin(), sec.end());
  record.usage.consumed = get_u64_be(state, 0);
  const std::uint64_t max = get_u64_be(state, 8);
  if (max != kUnbounded) record.usage.max = max;
  if (record.usage.max && record.usage.consumed > *record.usage.max) {
    throw InvalidInput("key-store usage counter exceeds its bound");
  }
  return record;
}

KeyRecord public_only(const KeyRecord& record) {
  KeyRecord copy = record;
  copy.secret_blob.clear();
  return copy;
}

Bytes read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreError("cannot open " + path.string());
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_bytes(const std::filesystem::path& path, ByteView data) {
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) throw StoreError(errno_text("cannot create", path));
  try {
    write_all(fd, data, path);
    if (::fsync(fd) != 0) throw StoreError(errno_text("fsync failed for", path));
  } catch (...) {
    ::close(fd);
    throw;
  }
  ::close(fd);
}

void write_file(const std::filesystem::path& path, const KeyRecord& record, bool overwrite) {
  if (!overwrite && std::filesystem::exists(path)) {
    throw StoreError("refusing to overwrite existing key file " + path.string());
  }
  auto tmp = path;
  tmp += ".tmp";
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0600);
  if (fd < 0) throw StoreError(errno_text("cannot create", tmp));
  try {
    write_all(fd, encode(record), tmp);
    if (::fsync(fd) != 0) throw StoreError(errno_text("fsync failed for", tmp));
  } catch (...) {
    ::close(fd);
    ::unlink(tmp.c_str());
    throw;
  }
  ::close(fd);
  if (::rename(tmp.c_str(), path.c_str()) != 0) {
    ::unlink(tmp.c_str());
    throw StoreError(errno_text("cannot rename into", path));
  }
  fsync_dir(path);
}

KeyRecord read_file(const std::filesystem::path& path) { return decode(read_bytes(path)); }

ExclusiveKeyFile::ExclusiveKeyFile(const std::filesystem::path& path) {
  fd_ = ::open(path.c_str(), O_RDWR | O_CLOEXEC);
  if (fd_ < 0) throw StoreError(errno_text("cannot open", path));
  if (::flock(fd_, LOCK_EX) != 0) {
    ::close(fd_);
    throw StoreError(errno_text("cannot lock", path));
  }
  try {
    struct stat st {};
    if (::fstat(fd_, &st) != 0) throw StoreError(errno_text("cannot stat", path));
    Bytes data(static_cast<std::size_t>(st.st_size));
    std::size_t done = 0;
    while (done < data.size()) {
      const ssize_t n = ::pread(fd_, data.data() + done, data.size() - done, static_cast<off_t>(done));
      if (n <= 0) {
        if (n < 0 && errno == EINTR) continue;
        throw StoreError(errno_text("cannot read", path));
      }
      done += static_cast<std::size_t>(n);
    }
    record_ = decode(data);
    state_offset_ = data.size() - kStateBytes;
  } catch (...) {
    ::close(fd_);
    throw;
  }
}

ExclusiveKeyFile::~ExclusiveKeyFile() {
  if (fd_ >= 0) ::close(fd_);  // releases the flock
}

void ExclusiveKeyFile::persist_usage(const UsageState& usage) {
  const Bytes state = encode_state(usage);
  if (::pwrite(fd_, state.data(), state.size(), static_cast<off_t>(state_offset_)) !=
      static_cast<ssize_t>(state.size())) {
    throw StoreError(std::string("cannot persist key usage: ") + std::strerror(errno));
  }
  if (::fdatasync(fd_) != 0) {
    throw StoreError(std::string("cannot sync key usage: ") + std::strerror(errno));
  }
  record_.usage = usage;
}

}  // namespace trapfree::store
