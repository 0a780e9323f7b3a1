#pragma once

#include <iosfwd>

namespace trapfree::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kVerifyFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kExhausted = 3;

/// Environment variable naming an injected fault. "after-persist" makes sign
/// exit with kCrashExit once the usage state is on disk but before the
/// signature is written, simulating a crash at the worst moment.
inline constexpr const char* kFaultEnv = "TRAPFREE_FAULT_INJECT";
inline constexpr int kCrashExit = 70;

int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace trapfree::cli
