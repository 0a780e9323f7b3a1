#include "commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "trapfree/errors.hpp"
#include "trapfree/key_store.hpp"
#include "trapfree/scheme_api.hpp"
#include "trapfree/size_table.hpp"

namespace trapfree::cli {
namespace {

struct KeygenArgs {
  std::string scheme;
  std::optional<int> height;
  std::optional<int> bits;
  bool checksum = false;
  std::string seed_hex;
  std::string out;
  std::string public_out;
  bool force = false;
};

struct SignArgs {
  std::string key_file;
  std::string message_file;
  std::string out;
};

struct VerifyArgs {
  std::string key_file;
  std::string message_file;
  std::string signature_file;
};

struct SizesArgs {
  std::vector<std::string> schemes;
  bool csv = false;
};

Seed system_seed() {
  std::random_device rd;
  Seed s;
  for (std::size_t i = 0; i < s.bytes.size(); i += 4) {
    const std::uint32_t word = rd();
    for (std::size_t j = 0; j < 4; ++j) s.bytes[i + j] = static_cast<std::uint8_t>(word >> (8 * j));
  }
  return s;
}

Seed parse_seed(const std::string& hex) {
  const Bytes bytes = from_hex(hex);
  if (bytes.size() != Seed::kSize) throw InvalidInput("--seed must be 64 hex digits (32 bytes)");
  return Seed::from_bytes(bytes);
}

Bytes read_input(const std::string& path) {
  try {
    return store::read_bytes(path);
  } catch (const StoreError& e) {
    throw InvalidInput(e.what());
  }
}

int cmd_keygen(const KeygenArgs& args, std::ostream& out) {
  const SchemeId scheme = parse_scheme_token(args.scheme);
  SchemeParams params;
  params.height = args.height;
  params.bits = args.bits;
  params.checksum = args.checksum;
  const Seed seed = args.seed_hex.empty() ? system_seed() : parse_seed(args.seed_hex);

  const KeyRecord record = keygen(scheme, params, seed);
  store::write_file(args.out, record, args.force);
  if (!args.public_out.empty()) store::write_file(args.public_out, store::public_only(record), args.force);
  out << to_hex(record.public_blob) << '\n';
  return kOk;
}

int cmd_sign(const SignArgs& args, std::ostream& out, std::ostream& err) {
  const Bytes message = read_input(args.message_file);
  store::ExclusiveKeyFile key(args.key_file);
  if (key.record().secret_blob.empty()) {
    throw InvalidInput(args.key_file + " holds no secret key");
  }
  if (key.record().usage.exhausted()) {
    err << "error: key exhausted: all " << *key.record().usage.max
        << " signatures of this key have been used\n";
    return kExhausted;
  }
  const SignResult result = sign(key.record(), message);
  key.persist_usage(result.updated.usage);

  if (const char* fault = std::getenv(kFaultEnv); fault && std::string(fault) == "after-persist") {
    std::_Exit(kCrashExit);
  }

  store::write_bytes(args.out, result.signature.encode());
  const auto& usage = result.updated.usage;
  if (usage.max) {
    out << "signed; " << (*usage.max - usage.consumed) << " of " << *usage.max << " uses left\n";
  } else {
    out << "signed\n";
  }
  return kOk;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  const KeyRecord record = store::decode(read_input(args.key_file));
  const Bytes message = read_input(args.message_file);
  const SignatureBlob sig = SignatureBlob::decode(read_input(args.signature_file));
  if (verify(record.scheme, record.public_blob, message, sig)) {
    out << "OK\n";
    return kOk;
  }
  out << "FAIL\n";
  return kVerifyFailed;
}

int cmd_sizes(const SizesArgs& args, std::ostream& out) {
  std::vector<SchemeId> filter;
  for (const auto& token : args.schemes) filter.push_back(parse_scheme_token(token));
  const auto rows = sizes::build_table(filter);
  out << (args.csv ? sizes::render_csv(rows) : sizes::render_aligned(rows));
  return kOk;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hash-based, lattice and textbook RSA signature workbench"};
  app.require_subcommand(1);

  KeygenArgs keygen_args;
  auto* keygen_cmd = app.add_subcommand("keygen", "Generate a key-store file");
  keygen_cmd->add_option("--scheme", keygen_args.scheme,
                         "rsa | lamport | wots | wots-checksum | merkle | lattice-fs")
      ->required();
  keygen_cmd->add_option("--height", keygen_args.height, "Merkle tree height (1-20, default 8)");
  keygen_cmd->add_option("--bits", keygen_args.bits, "RSA modulus bits (default 512)");
  keygen_cmd->add_flag("--checksum", keygen_args.checksum, "Winternitz checksum chains");
  keygen_cmd->add_option("--seed", keygen_args.seed_hex, "32-byte seed as hex (default: system entropy)");
  keygen_cmd->add_option("--out", keygen_args.out, "Key-store file to write")->required();
  keygen_cmd->add_option("--public-out", keygen_args.public_out, "Also write a public-only key file");
  keygen_cmd->add_flag("--force", keygen_args.force, "Overwrite existing files");

  SignArgs sign_args;
  auto* sign_cmd = app.add_subcommand("sign", "Sign a file, consuming one use of the key");
  sign_cmd->add_option("key", sign_args.key_file, "Key-store file")->required();
  sign_cmd->add_option("message", sign_args.message_file, "File to sign")->required();
  sign_cmd->add_option("--out", sign_args.out, "Signature file to write")->required();

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Verify a signature; prints OK or FAIL");
  verify_cmd->add_option("key", verify_args.key_file, "Key-store or public key file")->required();
  verify_cmd->add_option("message", verify_args.message_file, "Signed file")->required();
  verify_cmd->add_option("signature", verify_args.signature_file, "Signature file")->required();

  SizesArgs sizes_args;
  auto* sizes_cmd = app.add_subcommand("sizes", "Print key and signature sizes");
  sizes_cmd->add_option("schemes", sizes_args.schemes, "Restrict measured rows to these schemes");
  sizes_cmd->add_flag("--csv", sizes_args.csv, "Comma-separated output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*keygen_cmd) return cmd_keygen(keygen_args, out);
    if (*sign_cmd) return cmd_sign(sign_args, out, err);
    if (*verify_cmd) return cmd_verify(verify_args, out);
    if (*sizes_cmd) return cmd_sizes(sizes_args, out);
  } catch (const KeysExhausted& e) {
    err << "error: key exhausted: " << e.what() << '\n';
    return kExhausted;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace trapfree::cli
