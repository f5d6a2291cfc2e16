#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace g5 {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

// Enumeration budget exhausted; callers must size their request down or
// raise the budget explicitly. Never silently truncate.
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Result cannot be decided at the requested precision; retry with more.
struct IndeterminateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CheckpointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string to_string_u128(u128 v);
std::string to_string_i128(i128 v);

// FNV-1a 64-bit. Content fingerprint for determinism checks and checkpoint
// corruption detection; equality comparisons only, not security.
struct Fnv64 {
    u64 h = 1469598103934665603ull;
    void bytes(const void* p, std::size_t n) {
        auto* b = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; i++) {
            h ^= b[i];
            h *= 1099511628211ull;
        }
    }
    void word(u64 v) {
        unsigned char b[8];
        for (int i = 0; i < 8; i++) b[i] = static_cast<unsigned char>(v >> (8 * i));
        bytes(b, 8);
    }
    u64 value() const { return h; }
};

std::string hex64(u64 v);

}  // namespace g5
