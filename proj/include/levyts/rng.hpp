#pragma once

#include <cmath>
#include <cstdint>

namespace levyts {

namespace detail {

// splitmix64 finalizer; also used to key streams
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace detail

/// Stateless-keyed random stream: the (seed, path, cell) triple fully
/// determines every draw, so path batches can run on any thread layout
/// and replay bit-identically.
class counter_rng {
 public:
  counter_rng(std::uint64_t seed, std::uint64_t path, std::uint64_t cell) {
    std::uint64_t h = detail::mix64(seed + 0x9E3779B97F4A7C15ull);
    h = detail::mix64(h ^ (path + 0xBF58476D1CE4E5B9ull));
    state_ = detail::mix64(h ^ (cell + 0x94D049BB133111EBull));
  }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return detail::mix64(state_);
  }

  /// Uniform draw in the open interval (0, 1).
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; the second member of each pair is
  /// cached so draw order stays deterministic.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_ = 0;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Inverse-Gaussian draw with the given mean and shape, by the
/// Michael-Schucany-Haas transformation. The smaller root is computed in
/// a cancellation-free form so tiny shapes (short time steps) stay exact.
inline double sample_inverse_gaussian(counter_rng& rng, double mean, double shape) {
  const double z = rng.normal();
  const double nu = z * z;
  if (nu < 1e-300) return mean;
  const double w = mean * nu / (2.0 * shape);
  const double x = mean * (1.0 - 2.0 / (1.0 + std::sqrt(1.0 + 2.0 / w)));
  const double u = rng.uniform();
  return (u <= mean / (mean + x)) ? x : mean * mean / x;
}

}  // namespace levyts
