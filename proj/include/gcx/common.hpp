#pragma once

// Small shared utilities: tolerance, deterministic sampling, bitmask helpers.

#include <bit>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcx {

// Tolerance for all real comparisons (lengths, Gram entries, angles).
inline constexpr double kTol = 1e-9;

inline bool near(double a, double b, double tol = kTol) {
  return a > b ? a - b <= tol : b - a <= tol;
}

// mt19937_64 output is pinned by the standard; the std:: distributions are
// not, so we map raw draws to values ourselves to keep reports byte-identical.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t next() { return eng_(); }

  // uniform in [lo, hi) with 53-bit resolution
  double real(double lo, double hi) {
    double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  }

  // uniform in [0, n); modulo bias is irrelevant at these sizes
  int integer(int n) {
    if (n <= 0) throw std::invalid_argument("Rng::integer: n must be positive");
    return static_cast<int>(next() % static_cast<uint64_t>(n));
  }

 private:
  std::mt19937_64 eng_;
};

template <typename Mask>
std::vector<int> bits_of(Mask m) {
  std::vector<int> out;
  while (m) {
    int b = std::countr_zero(m);
    out.push_back(b);
    m &= m - 1;
  }
  return out;
}

template <typename Mask>
int popcount(Mask m) {
  return std::popcount(m);
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace gcx
