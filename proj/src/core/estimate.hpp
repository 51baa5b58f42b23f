#pragma once

#include <cstdint>
#include <string>

namespace erbm {

enum class Backend { analytic, series, chain, mc, grid };

std::string backend_name(Backend b);
Backend backend_from_name(const std::string& s);

/// A numerical value with its uncertainty. Monte Carlo backends carry a
/// standard error; the series backend carries its rigorous truncation bound
/// in the same slot; analytic and grid values report 0.
struct KernelEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  Backend method = Backend::analytic;
  std::uint64_t n_samples = 0;
};

inline KernelEstimate analytic_estimate(double v) {
  return KernelEstimate{v, 0.0, Backend::analytic, 0};
}

}  // namespace erbm
