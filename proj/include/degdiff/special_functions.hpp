#ifndef DEGDIFF_SPECIAL_FUNCTIONS_HPP
#define DEGDIFF_SPECIAL_FUNCTIONS_HPP

// Error-function kernel used by the entropy and the profile.
//
// F is the Gaussian distribution function with variance 2,
//
//     F(x) = 1/(2 sqrt(pi)) * int_{-inf}^{x} exp(-s^2/4) ds = (1 + erf(x/2)) / 2,
//
// so F(-inf) = 0, F(+inf) = 1 and F'(x) = exp(-x^2/4) / (2 sqrt(pi)).
// Everything that divides by a difference of F values goes through
// log_F_diff, which stays finite far into both tails.

namespace degdiff::sf {

/// ln(2 sqrt(pi)), the normalization of F'.
inline constexpr double kLogTwoSqrtPi = 1.2655121234846453;

double F(double x);
double F_prime(double x);
double log_F_prime(double x);

/// ln(1 - F(x)), accurate for large positive x.
double log_F_upper(double x);

/// ln(F(x) - F(y)) for x > y; either argument may be infinite on its side.
/// Throws std::domain_error when x <= y.
double log_F_diff(double x, double y);

/// Inverse of F on (0, 1). Throws std::domain_error outside.
double F_inverse(double p);

/// x with ln F(x) = log_p, for log_p < 0. Reaches quantiles far below
/// the smallest representable p.
double F_inverse_log(double log_p);

/// Scaled complementary error function exp(z^2) erfc(z) for z >= 0.
double erfcx(double z);

}  // namespace degdiff::sf

#endif  // DEGDIFF_SPECIAL_FUNCTIONS_HPP
