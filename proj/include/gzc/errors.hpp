#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gzc {

// enumeration guard shared by every module
inline constexpr std::uint64_t kEnumGuard = 10'000'000ULL;

// bad input; the message names the failed condition
struct ValidationError : std::runtime_error {
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// a guard refused the computation
struct ResourceError : std::runtime_error {
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

// internal invariant broken
struct ConsistencyError : std::logic_error {
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

inline void guard(std::uint64_t n, const char* what, std::uint64_t limit = kEnumGuard) {
  if (n > limit)
    throw ResourceError(std::string(what) + ": " + std::to_string(n) +
                        " exceeds guard " + std::to_string(limit));
}

inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * std::uint64_t(n - k + i) / std::uint64_t(i);
  return r;
}

}  // namespace gzc
