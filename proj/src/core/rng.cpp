#include "core/rng.hpp"

#include <cmath>

namespace erbm {

namespace {

constexpr std::uint64_t kPhiloxM = 0xD2B74407B1CE6E93ULL;
constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ULL;

inline void philox_round(std::uint64_t& x0, std::uint64_t& x1,
                         std::uint64_t key) {
  __uint128_t prod = static_cast<__uint128_t>(x0) * kPhiloxM;
  std::uint64_t hi = static_cast<std::uint64_t>(prod >> 64);
  std::uint64_t lo = static_cast<std::uint64_t>(prod);
  x0 = hi ^ key ^ x1;
  x1 = lo;
}

// Philox-2x64 with 10 rounds: bijection of (c0, c1) keyed by `key`.
inline void philox2x64(std::uint64_t c0, std::uint64_t c1, std::uint64_t key,
                       std::uint64_t& out0, std::uint64_t& out1) {
  std::uint64_t x0 = c0, x1 = c1, k = key;
  for (int r = 0; r < 10; ++r) {
    philox_round(x0, x1, k);
    k += kWeyl;
  }
  out0 = x0;
  out1 = x1;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

RngStream RngStream::derive(std::uint64_t child) const {
  std::uint64_t s = splitmix64(stream_ ^ splitmix64(child ^ 0xA5A5A5A5DEADBEEFULL));
  return RngStream(seed_, s);
}

RngStream RngStream::derive(const std::string& name) const {
  return derive(hash64(name));
}

std::uint64_t RngStream::next_u64() {
  if (has_spare_word_) {
    has_spare_word_ = false;
    return spare_word_;
  }
  std::uint64_t a, b;
  philox2x64(counter_++, stream_, seed_, a, b);
  spare_word_ = b;
  has_spare_word_ = true;
  return a;
}

double RngStream::uniform() {
  // 53-bit mantissa shifted into (0,1); never returns exactly 0 or 1.
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  return lo + (hi - lo) * uniform();
}

double RngStream::gaussian() {
  if (has_spare_gauss_) {
    has_spare_gauss_ = false;
    return spare_gauss_;
  }
  double u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_gauss_ = r * std::sin(a);
  has_spare_gauss_ = true;
  return r * std::cos(a);
}

double RngStream::cauchy() {
  return std::tan(M_PI * (uniform() - 0.5));
}

std::uint64_t hash64(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return splitmix64(h);
}

}  // namespace erbm
