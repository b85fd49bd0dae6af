#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>

#include "leechps/error.hpp"

namespace leechps {

// Limits shared by every enumeration kernel. A default-constructed budget
// matches the command-line defaults: 2^25 cosets, no deadline.
struct Budget {
  std::uint64_t max_cosets = std::uint64_t{1} << 25;
  std::uint64_t max_vectors = std::uint64_t{1} << 31;
  std::optional<std::chrono::steady_clock::time_point> deadline;

  static Budget with_seconds(double seconds) {
    Budget b;
    b.deadline = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                     std::chrono::duration<double>(seconds));
    return b;
  }

  bool expired() const {
    return deadline && std::chrono::steady_clock::now() > *deadline;
  }

  void check_time(std::uint64_t progress, const std::string& what) const {
    if (expired()) throw ResourceError(what + ": time budget exhausted", progress);
  }
};

}  // namespace leechps
