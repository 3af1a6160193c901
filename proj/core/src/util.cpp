#include "liplab/util.hpp"

#include <charconv>
#include <cstdlib>
#include <limits>

namespace liplab {

std::uint64_t power_u64(std::uint64_t base, int exp) {
  std::uint64_t result = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && result > std::numeric_limits<std::uint64_t>::max() / base) {
      throw SizeError("profile space overflows 64 bits");
    }
    result *= base;
  }
  return result;
}

std::uint64_t enumeration_limit() {
  static const std::uint64_t limit = [] {
    if (const char* env = std::getenv("LIPLAB_MAX_ENUM")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::uint64_t>(v);
    }
    return std::uint64_t{1} << 24;
  }();
  return limit;
}

std::uint64_t require_enumerable(int n, int m) {
  std::uint64_t space = 0;
  try {
    space = power_u64(static_cast<std::uint64_t>(m), n);
  } catch (const SizeError&) {
    throw SizeError("instance with " + std::to_string(n) + " players and " + std::to_string(m) +
                    " actions is too large to enumerate");
  }
  if (space > enumeration_limit()) {
    throw SizeError("profile space " + std::to_string(space) +
                    " exceeds the enumeration limit " + std::to_string(enumeration_limit()));
  }
  return space;
}

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 1));
}

double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int uniform_int_below(Rng& rng, int bound) {
  return static_cast<int>(rng() % static_cast<std::uint64_t>(bound));
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace liplab
