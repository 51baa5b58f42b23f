#include "core/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace erbm {

double RunningStat::variance() const {
  if (n < 2) return 0.0;
  double m = mean();
  double v = (sumsq - static_cast<double>(n) * m * m) / (static_cast<double>(n) - 1.0);
  return v > 0.0 ? v : 0.0;
}

double RunningStat::stderr_mean() const {
  if (n < 2) return 0.0;
  return std::sqrt(variance() / static_cast<double>(n));
}

namespace {

// Regularized incomplete gamma Q(a,x) by series / continued fraction.
double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q domain");
  if (x == 0.0) return 1.0;
  double lg = std::lgamma(a);
  if (x < a + 1.0) {
    // P(a,x) series
    double ap = a, sum = 1.0 / a, del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    double p = sum * std::exp(-x + a * std::log(x) - lg);
    return 1.0 - p;
  }
  // Q(a,x) continued fraction (Lentz)
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - lg) * h;
}

}  // namespace

double chi2_sf(double x, int dof) {
  if (dof <= 0) throw std::invalid_argument("chi2_sf dof");
  if (x <= 0.0) return 1.0;
  return gamma_q(0.5 * dof, 0.5 * x);
}

double ks_pvalue(double d, std::size_t n) {
  double sn = std::sqrt(static_cast<double>(n));
  double lam = (sn + 0.12 + 0.11 / sn) * d;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    double term = std::exp(-2.0 * lam * lam * k * k);
    sum += (k % 2 == 1 ? 2.0 : -2.0) * term;
    if (term < 1e-16) break;
  }
  return std::min(1.0, std::max(0.0, sum));
}

double ks_statistic_uniform(std::vector<double> s, double hi) {
  std::sort(s.begin(), s.end());
  double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    double f = s[i] / hi;
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

double chi2_two_sample_pvalue(const std::vector<double>& a,
                              const std::vector<double>& b, double min_count) {
  if (a.size() != b.size()) throw std::invalid_argument("chi2: bin mismatch");
  double na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    na += a[i];
    nb += b[i];
  }
  if (na == 0.0 || nb == 0.0) throw std::invalid_argument("chi2: empty sample");
  double ka = std::sqrt(nb / na), kb = std::sqrt(na / nb);
  double chi2 = 0.0;
  int bins = 0;
  double pa = 0.0, pb = 0.0;  // pooled small bins
  for (std::size_t i = 0; i < a.size(); ++i) {
    double x = a[i], y = b[i];
    if (x + y < min_count) {
      pa += x;
      pb += y;
      continue;
    }
    double d = ka * x - kb * y;
    chi2 += d * d / (x + y);
    ++bins;
  }
  if (pa + pb >= min_count) {
    double d = ka * pa - kb * pb;
    chi2 += d * d / (pa + pb);
    ++bins;
  }
  if (bins < 2) return 1.0;
  return chi2_sf(chi2, bins - 1);
}

void gauss_legendre(int n, double a, double b, std::vector<double>& x,
                    std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) < 1e-15) break;
    }
    double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
    x[i] = xm - xl * z;
    x[n - 1 - i] = xm + xl * z;
    w[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_slope: need >= 2 points");
  double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace erbm
