#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace liplab {

// Absolute tolerance used for exact-arithmetic comparisons throughout.
inline constexpr double kTol = 1e-12;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed arguments: bad profiles, parameters out of range, kind mismatches.
struct InputError : Error {
  using Error::Error;
};
// Instance too large for exhaustive enumeration.
struct SizeError : Error {
  using Error::Error;
};
// A query budget was exhausted.
struct BudgetError : Error {
  using Error::Error;
};
// A (delta, gamma)-promise does not hold for the queried profile.
struct PromiseError : Error {
  using Error::Error;
};
// An internal component misbehaved, e.g. an adversary left the delta envelope.
struct ContractError : Error {
  using Error::Error;
};
// Unreadable or malformed file / document.
struct ParseError : Error {
  using Error::Error;
};

// base^exp, throwing SizeError on uint64 overflow.
std::uint64_t power_u64(std::uint64_t base, int exp);

// Cap for exhaustive operations.  Defaults to 2^24 profiles; the environment
// variable LIPLAB_MAX_ENUM overrides it (read once per process).
std::uint64_t enumeration_limit();

// Returns m^n, or throws SizeError if it exceeds the enumeration cap.
std::uint64_t require_enumerable(int n, int m);

using Rng = std::mt19937_64;

// splitmix64-style mixing; derives independent per-trial seeds from one seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Uniform in [0,1) with 53 random bits; avoids distribution objects so the
// stream is identical across standard library implementations.
double uniform_unit(Rng& rng);

int uniform_int_below(Rng& rng, int bound);

// Neumaier-compensated accumulation.  Exhaustive expectations can run to
// millions of terms and still have to honour 1e-12 identities.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Shortest decimal form that round-trips; used by every emitter so that
// identical runs produce identical bytes.
std::string format_double(double v);

}  // namespace liplab
