#pragma once

#include <cstdint>
#include <string>

namespace erbm {

/// Counter-based random stream (Philox-2x64-10). Identical (seed, stream_id)
/// reproduces an identical sample sequence bit-for-bit, independent of any
/// other stream; streams can be derived hierarchically for parallel fan-out.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_(stream_id) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  /// Child stream; deterministic function of (seed, stream_id, child).
  RngStream derive(std::uint64_t child) const;
  /// Child stream keyed by a name (used to give every verify check its own
  /// randomness so adding a check never perturbs the others).
  RngStream derive(const std::string& name) const;

  std::uint64_t next_u64();
  double uniform();                        // (0,1)
  double uniform(double lo, double hi);    // (lo,hi)
  double gaussian();                       // standard normal
  double cauchy();                         // standard Cauchy

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::uint64_t spare_word_ = 0;
  bool has_spare_word_ = false;
  double spare_gauss_ = 0.0;
  bool has_spare_gauss_ = false;
};

/// 64-bit FNV-1a, used for stream derivation from names.
std::uint64_t hash64(const std::string& s);

}  // namespace erbm
