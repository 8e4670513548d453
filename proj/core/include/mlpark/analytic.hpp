#pragma once

// Exact closed forms for the three-site multilayer parking model with
// screening: one center column x = 0 flanked by two border columns, each
// receiving rate-1 Poisson arrivals.
//
// Terminology used below:
//   psi      vertical distance between consecutive center-column particles,
//            psi = 1 + max(border arrivals at x=-1, at x=+1) during one
//            exponential(1) center interarrival window.
//   S        max of the two border counts over that window; psi = 1 + S.
//   X        empty run between consecutive center particles; X = psi - 1.
//   N        total border arrivals during the window (geometric).

#include <cstdint>
#include <utility>
#include <vector>

#include "mlpark/exactmath.hpp"

namespace mlpark {

/// Tabulated distribution of psi on 1..max_d. The tail beyond max_d is
/// strictly positive for every finite table.
class PsiPmf {
 public:
  explicit PsiPmf(std::uint32_t max_d);

  std::uint32_t max_d() const { return static_cast<std::uint32_t>(probs_.size()); }

  /// P(psi = d); d outside [1, max_d] throws std::out_of_range.
  const Rational& operator()(std::uint32_t d) const;

  /// Sum of P(psi = d) for d = 1..max_d.
  Rational partial_sum() const;

 private:
  std::vector<Rational> probs_;  // probs_[d - 1]
};

/// w_i(r) for i = 1..r: the probability that the i-th center particle lands
/// exactly at layer r.
struct RenewalWeights {
  std::uint32_t layer = 0;
  std::vector<Rational> w;  // w[i - 1]

  const Rational& operator[](std::uint32_t i) const { return w.at(i - 1); }
  Rational total() const;

  friend bool operator==(const RenewalWeights&, const RenewalWeights&) = default;
};

/// rho_t(0, r) = constant - exp(-t) * sum_l coeffs[l] * t^l / l!.
struct DensityProfile {
  std::uint32_t layer = 0;
  Rational constant;
  std::vector<Rational> coeffs;  // b_0..b_r

  /// Floating-point value at time t >= 0.
  double operator()(double t) const;
};

/// (numerator_integer - sqrt(radicand)) / denominator, kept symbolic because
/// the value is irrational.
struct LimitDensity {
  int numerator_integer = 10;
  int radicand = 5;
  int denominator = 19;

  double value() const;
};

inline constexpr LimitDensity kLimitDensity{};

// --- psi distribution -------------------------------------------------------

/// P(psi = d), d >= 1. Throws std::invalid_argument for d == 0.
Rational psi_pmf(std::uint32_t d);

/// P(S = d), d >= 0. Equals psi_pmf(d + 1).
Rational s_pmf(std::uint32_t d);

// --- renewal structure ------------------------------------------------------

/// Layer weights by iterated convolution of the psi pmf. r >= 1.
RenewalWeights renewal_weights(std::uint32_t r);

inline constexpr std::uint32_t kNaiveWeightsMaxLayer = 14;

/// Same contract as renewal_weights, computed by enumerating all 2^(r-1)
/// compositions of r. Throws std::length_error for r > kNaiveWeightsMaxLayer.
RenewalWeights renewal_weights_naive(std::uint32_t r);

// --- densities --------------------------------------------------------------

DensityProfile density_profile(std::uint32_t r);

/// Evaluates density_profile(r) at t. Throws std::invalid_argument for
/// negative or non-finite t.
double density_at(std::uint32_t r, double t);

/// rho_inf(0, r), exact. r >= 1.
Rational end_density(std::uint32_t r);

/// rho_inf(0, r) for r = 1..r_max in one pass of the renewal recursion
/// u_r = sum_{d=1}^{r} P(psi = d) u_{r-d}, u_0 = 1. Element [r - 1] is layer r.
std::vector<Rational> end_densities(std::uint32_t r_max);

/// High-layer limit of the center end-density, (10 - sqrt 5) / 19.
double limit_density();

// --- empty-run statistics ---------------------------------------------------

/// P(N = n) = (1/3)(2/3)^n.
Rational run_count_pmf(std::uint32_t n);

/// E(X | N = n) from the even/odd closed forms.
Rational cond_expected_run(std::uint32_t n);

/// E(X) = 1 + 1/sqrt(5) by summing the conditional-expectation series with
/// exact partial sums, stopping once a rigorous geometric tail bound falls
/// below tolerance. Throws std::invalid_argument for tolerance <= 0.
double expected_run(double tolerance);

/// Exact partial sums over k = 0..k_max of
///   sum C(2k,k) x^k        -> 1/sqrt(1 - 4x)
///   sum k C(2k,k) x^k      -> 2x/(1 - 4x)^(3/2)
/// Requires 0 <= x < 1/4 (std::invalid_argument otherwise).
std::pair<Rational, Rational> central_binomial_series(const Rational& x, std::uint32_t k_max);

}  // namespace mlpark
