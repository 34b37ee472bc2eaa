#include "degdiff/special_functions.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace degdiff::sf {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = std::numbers::ln2;

// 10-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 5> kGLNodes = {
    0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
    0.8650633666889845, 0.9739065285171717};
constexpr std::array<double, 5> kGLWeights = {
    0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
    0.1494513491505806, 0.0666713443086881};

// Continued fraction for erfc, evaluated with the modified Lentz method:
//   erfc(z) = exp(-z^2)/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
double erfcx_continued_fraction(double z) {
  constexpr double tiny = 1e-300;
  double f = z;
  double c = f;
  double d = 0.0;
  for (int j = 1; j < 2000; ++j) {
    const double aj = 0.5 * j;
    d = z + aj * d;
    if (d == 0.0) d = tiny;
    d = 1.0 / d;
    c = z + aj / c;
    if (c == 0.0) c = tiny;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 / (std::sqrt(std::numbers::pi) * f);
}

// Asymptotic Gaussian-tail series, used beyond z = 20 (|x| > 40 in F units).
double erfcx_asymptotic(double z) {
  const double inv2z2 = 1.0 / (2.0 * z * z);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 30; ++k) {
    term *= -(2.0 * k - 1.0) * inv2z2;
    sum += term;
    if (std::abs(term) < 1e-17) break;
  }
  return sum / (z * std::sqrt(std::numbers::pi));
}

// ln int_{m-h}^{m+h} F'(s) ds for a short interval, (|m| + 1) h <= 1.
// Substituting s = m + t gives F'(m) * int exp(-m t/2 - t^2/4) dt, whose
// integrand varies by less than one e-fold.
double log_F_diff_short(double m, double h) {
  double sum = 0.0;
  for (std::size_t i = 0; i < kGLNodes.size(); ++i) {
    const double t = h * kGLNodes[i];
    sum += kGLWeights[i] * (std::exp(-m * t / 2.0 - t * t / 4.0) +
                            std::exp(m * t / 2.0 - t * t / 4.0));
  }
  return log_F_prime(m) + std::log(h * sum);
}

}  // namespace

double erfcx(double z) {
  if (std::isnan(z)) return z;
  if (z < 0.0) throw std::domain_error("erfcx: negative argument");
  if (z == kInf) return 0.0;
  if (z < 3.0) return std::exp(z * z) * std::erfc(z);
  if (z < 20.0) return erfcx_continued_fraction(z);
  return erfcx_asymptotic(z);
}

double F(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) return 0.5 * std::erfc(-x / 2.0);
  return 1.0 - 0.5 * std::erfc(x / 2.0);
}

double F_prime(double x) { return std::exp(log_F_prime(x)); }

double log_F_prime(double x) { return -x * x / 4.0 - kLogTwoSqrtPi; }

double log_F_upper(double x) {
  if (std::isnan(x)) return x;
  if (x == kInf) return -kInf;
  if (x < 0.0) return std::log(0.5 * std::erfc(x / 2.0));
  const double z = x / 2.0;
  return std::log(erfcx(z)) - z * z - kLn2;
}

double log_F_diff(double x, double y) {
  if (std::isnan(x) || std::isnan(y)) return std::numeric_limits<double>::quiet_NaN();
  if (!(x > y)) throw std::domain_error("log_F_diff: requires x > y");
  if (x == kInf) return log_F_upper(y);
  if (y == -kInf) return log_F_upper(-x);

  const double m = 0.5 * x + 0.5 * y;
  const double h = 0.5 * x - 0.5 * y;
  if ((std::abs(m) + 1.0) * h <= 1.0) return log_F_diff_short(m, h);

  if (y >= 0.0) {
    // Both in the upper tail: F(x) - F(y) = Q(y) - Q(x) with Q = 1 - F.
    const double zx = x / 2.0;
    const double zy = y / 2.0;
    const double log_cx = std::log(erfcx(zx));
    const double log_cy = std::log(erfcx(zy));
    const double log_ratio = log_cx - log_cy - (zx - zy) * (zx + zy);
    return log_cy - zy * zy - kLn2 + std::log(-std::expm1(log_ratio));
  }
  if (x <= 0.0) return log_F_diff(-y, -x);

  // y < 0 < x with a wide gap: both tail masses are below one half.
  const double tails = 0.5 * std::erfc(x / 2.0) + 0.5 * std::erfc(-y / 2.0);
  return std::log1p(-tails);
}

double F_inverse_log(double log_p) {
  if (std::isnan(log_p)) return log_p;
  if (!(log_p < 0.0)) throw std::domain_error("F_inverse_log: requires log_p < 0");
  if (log_p == -kInf) return -kInf;

  // ln F is concave and increasing, so Newton iterates approach the root
  // from the left after the first step; the bracket catches the rest.
  double hi = 0.0;
  double lo = -2.0 * std::sqrt(-log_p) - 2.0;
  while (log_F_upper(-lo) > log_p) lo *= 2.0;
  if (log_F_upper(-hi) <= log_p) {
    hi = 1.0;
    while (log_F_upper(-hi) <= log_p) hi *= 2.0;
  }

  double x = log_p > -kLn2 ? 0.5 * (lo + hi) : -2.0 * std::sqrt(-log_p);
  if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double log_fx = log_F_upper(-x);
    const double g = log_fx - log_p;
    if (g == 0.0) return x;
    if (g > 0.0) hi = x; else lo = x;
    const double slope = std::exp(log_F_prime(x) - log_fx);
    double next = x - g / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= 1e-16 * (1.0 + std::abs(x))) return next;
    x = next;
    if (hi - lo <= 1e-16 * (1.0 + std::abs(x))) break;
  }
  return x;
}

double F_inverse(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("F_inverse: requires 0 < p < 1");
  if (p == 0.5) return 0.0;
  if (p > 0.5) return -F_inverse_log(std::log(1.0 - p));
  return F_inverse_log(std::log(p));
}

}  // namespace degdiff::sf
