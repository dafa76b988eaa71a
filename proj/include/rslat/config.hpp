#pragma once

#include <cstdint>

namespace rslat {

// Selects between the serial reference kernels and their OpenMP versions.
enum class ExecPolicy { Serial, Parallel };

struct WorkLimits {
  // Cap on abstract work units (DP state-visits, enumeration nodes).
  std::uint64_t max_work = 4'000'000'000ULL;
};

}  // namespace rslat
