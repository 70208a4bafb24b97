#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "slo/error.hpp"

namespace slo {

/// Resource caps. `from_env` reads SLO_MAX_CARRIER, SLO_MAX_SUBSETS,
/// SLO_MAX_TABLES and SLO_MAX_POWER_BASE.
struct Limits {
  std::size_t max_carrier = 4096;
  std::uint64_t max_subsets = std::uint64_t{1} << 20;
  std::uint64_t max_tables = std::uint64_t{1} << 24;
  std::size_t max_power_base = 12;
  std::size_t max_cdis_generators = 4;

  static Limits from_env() {
    Limits l;
    read("SLO_MAX_CARRIER", l.max_carrier);
    read("SLO_MAX_SUBSETS", l.max_subsets);
    read("SLO_MAX_TABLES", l.max_tables);
    read("SLO_MAX_POWER_BASE", l.max_power_base);
    return l;
  }

private:
  template <typename T>
  static void read(const char* name, T& slot) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(raw, &end, 10);
    if (end == raw || *end != '\0') throw ResourceError(std::string("bad value for ") + name);
    slot = static_cast<T>(v);
  }
};

inline const Limits& default_limits() {
  static const Limits limits = Limits::from_env();
  return limits;
}

} // namespace slo
