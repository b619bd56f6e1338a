#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace polab {

using cplx = std::complex<double>;

// Default tolerance for algebraic identities (Hermiticity, positivity,
// round trips).  Operations that need a different scale take an explicit
// tolerance parameter.
inline constexpr double kDefaultTol = 1e-10;

// Constructors of states with indefinite photon number never renormalize
// away truncation loss; they record it as leakage and reject anything
// above this threshold unless told otherwise.
inline constexpr double kLeakageThreshold = 1e-12;

enum class ErrorKind {
  physical,  // input violates a physical constraint
  schema,    // malformed file / JSON input
  argument,  // parameter out of range, dimension mismatch
  internal,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail_physical(const std::string& msg) {
  throw Error(ErrorKind::physical, msg);
}

// std::to_string is useless for tiny magnitudes; errors quote scalars in
// scientific form instead.
std::string format_scalar(double value);
[[noreturn]] inline void fail_schema(const std::string& msg) {
  throw Error(ErrorKind::schema, msg);
}
[[noreturn]] inline void fail_argument(const std::string& msg) {
  throw Error(ErrorKind::argument, msg);
}

// SplitMix64 (Steele, Lea, Flood 2014).  Counter-based: output k of stream
// `seed` is a pure function of (seed, k), so every stream is reproducible
// and seekable.  Parallel tasks derive their stream as seed ^ task index.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  static SplitMix64 stream(std::uint64_t seed, std::uint64_t task_index) {
    return SplitMix64(seed ^ task_index);
  }

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace polab
