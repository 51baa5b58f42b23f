#pragma once

#include <cstddef>
#include <vector>

namespace erbm {

/// Mean / standard-error accumulator.
struct RunningStat {
  double sum = 0.0, sumsq = 0.0;
  std::size_t n = 0;
  void add(double x) {
    sum += x;
    sumsq += x * x;
    ++n;
  }
  void merge(const RunningStat& o) {
    sum += o.sum;
    sumsq += o.sumsq;
    n += o.n;
  }
  double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
  double variance() const;
  double stderr_mean() const;
};

/// P(chi2 with k dof > x): regularized upper incomplete gamma Q(k/2, x/2).
double chi2_sf(double x, int dof);

/// Asymptotic Kolmogorov-Smirnov p-value for statistic d at sample size n.
double ks_pvalue(double d, std::size_t n);

/// One-sample KS statistic of `samples` against the uniform law on [0, hi).
double ks_statistic_uniform(std::vector<double> samples, double hi);

/// Two-sample chi-square test on histogram counts; returns the p-value.
/// Bins where both counts are below `min_count` are pooled together.
double chi2_two_sample_pvalue(const std::vector<double>& a,
                              const std::vector<double>& b,
                              double min_count = 5.0);

/// Gauss-Legendre nodes/weights on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& x,
                    std::vector<double>& w);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace erbm
