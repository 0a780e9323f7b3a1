#include "trapfree/key_store.hpp"

#include <gtest/gtest.h>

#include <filesystem>

#include "test_util.hpp"
#include "trapfree/errors.hpp"

namespace trapfree {
namespace {

namespace fs = std::filesystem;
using testing::counting_seed;

class KeyStoreTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("trapfree_store_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path dir_;
};

TEST_F(KeyStoreTest, EncodeLayout) {
  KeyRecord record{SchemeId::kMerkle, Bytes{1, 2}, Bytes{3}, UsageState{5, 8}};
  const Bytes bytes = store::encode(record);
  const Bytes expected = {'T', 'F', 'K', 'S', 0x05, 0x01,
                          0, 0, 0, 2, 1, 2,
                          0, 0, 0, 1, 3,
                          0, 0, 0, 16,
                          0, 0, 0, 0, 0, 0, 0, 5,
                          0, 0, 0, 0, 0, 0, 0, 8};
  EXPECT_EQ(bytes, expected);
  EXPECT_EQ(store::decode(bytes), record);
}

TEST_F(KeyStoreTest, UnboundedUsageRoundtrips) {
  const auto record = keygen(SchemeId::kLatticeFs, {}, counting_seed());
  EXPECT_EQ(store::decode(store::encode(record)), record);
}

TEST_F(KeyStoreTest, DecodeRejectsMalformed) {
  Bytes bytes = store::encode(keygen(SchemeId::kWots, {}, counting_seed()));
  Bytes bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(store::decode(bad_magic), InvalidInput);
  Bytes bad_version = bytes;
  bad_version[5] = 9;
  EXPECT_THROW(store::decode(bad_version), InvalidInput);
  Bytes truncated(bytes.begin(), bytes.end() - 3);
  EXPECT_THROW(store::decode(truncated), InvalidInput);
  Bytes trailing = bytes;
  trailing.push_back(0);
  EXPECT_THROW(store::decode(trailing), InvalidInput);
  EXPECT_THROW(store::decode(Bytes{}), InvalidInput);

  KeyRecord over{SchemeId::kLamport, {}, {}, UsageState{2, 1}};
  EXPECT_THROW(store::decode(store::encode(over)), InvalidInput);
}

TEST_F(KeyStoreTest, FileRoundtripAndNoOverwrite) {
  const auto path = dir_ / "k.key";
  const auto record = keygen(SchemeId::kLamport, {}, counting_seed());
  store::write_file(path, record, false);
  EXPECT_EQ(store::read_file(path), record);
  EXPECT_THROW(store::write_file(path, record, false), StoreError);
  EXPECT_NO_THROW(store::write_file(path, record, true));
  EXPECT_FALSE(fs::exists(dir_ / "k.key.tmp"));
}

TEST_F(KeyStoreTest, PersistUsageRewritesStateInPlace) {
  const auto path = dir_ / "m.key";
  SchemeParams p;
  p.height = 2;
  store::write_file(path, keygen(SchemeId::kMerkle, p, counting_seed()), false);
  const auto size_before = fs::file_size(path);
  {
    store::ExclusiveKeyFile handle(path);
    auto result = sign(handle.record(), as_bytes("m"));
    handle.persist_usage(result.updated.usage);
    EXPECT_EQ(handle.record().usage.consumed, 1u);
  }
  EXPECT_EQ(fs::file_size(path), size_before);
  EXPECT_EQ(store::read_file(path).usage.consumed, 1u);
}

TEST_F(KeyStoreTest, PublicOnlyDropsSecret) {
  const auto record = keygen(SchemeId::kLamport, {}, counting_seed());
  const auto pub = store::public_only(record);
  EXPECT_TRUE(pub.secret_blob.empty());
  EXPECT_EQ(pub.public_blob, record.public_blob);
}

TEST_F(KeyStoreTest, MissingFileIsStoreError) {
  EXPECT_THROW(store::read_file(dir_ / "absent"), StoreError);
  EXPECT_THROW(store::ExclusiveKeyFile(dir_ / "absent"), StoreError);
}

}  // namespace
}  // namespace trapfree
