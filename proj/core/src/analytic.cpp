#include "mlpark/analytic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mlpark {
namespace {

BigInt pow3(std::uint64_t exp) {
  return boost::multiprecision::pow(BigInt(3), static_cast<unsigned>(exp));
}

void require_layer(std::uint32_t r, const char* what) {
  if (r == 0) {
    throw std::invalid_argument(std::string(what) + ": layer must be >= 1");
  }
}

// P(psi = d) = psi_numerator(d) / 3^(2d - 1).
//
// (2/3) C(d+k-1, k) (1/3)^(d+k-1) = 2 C(d+k-1, k) 3^(d-1-k) / 3^(2d-1), and the
// diagonal term C(2d-2, d-1) (1/3)^(2d-1) already has that denominator.
BigInt psi_numerator(std::uint32_t d) {
  BigInt num = binomial(2ULL * d - 2, d - 1ULL);
  if (d < 2) {
    return num;
  }
  // Walk k upward: C(d+k, k+1) = C(d+k-1, k) (d+k) / (k+1), and the power
  // of three drops by one each step.
  BigInt choose = 1;
  BigInt power = pow3(d - 1ULL);
  for (std::uint32_t k = 0; k + 2 <= d; ++k) {
    num += 2 * choose * power;
    choose = choose * (std::uint64_t{d} + k) / (k + 1ULL);
    power /= 3;
  }
  return num;
}

std::vector<BigInt> psi_numerators(std::uint32_t max_d) {
  std::vector<BigInt> out;
  out.reserve(max_d);
  for (std::uint32_t d = 1; d <= max_d; ++d) {
    out.push_back(psi_numerator(d));
  }
  return out;
}

}  // namespace

// --- PsiPmf -----------------------------------------------------------------

PsiPmf::PsiPmf(std::uint32_t max_d) {
  probs_.reserve(max_d);
  for (std::uint32_t d = 1; d <= max_d; ++d) {
    probs_.push_back(psi_pmf(d));
  }
}

const Rational& PsiPmf::operator()(std::uint32_t d) const {
  if (d == 0 || d > probs_.size()) {
    throw std::out_of_range("PsiPmf: distance " + std::to_string(d) + " outside table");
  }
  return probs_[d - 1];
}

Rational PsiPmf::partial_sum() const {
  Rational sum = 0;
  for (const auto& p : probs_) {
    sum += p;
  }
  return sum;
}

Rational RenewalWeights::total() const {
  Rational sum = 0;
  for (const auto& x : w) {
    sum += x;
  }
  return sum;
}

double DensityProfile::operator()(double t) const {
  if (!std::isfinite(t) || t < 0.0) {
    throw std::invalid_argument("density profile: time must be finite and >= 0");
  }
  const double c = to_double(constant);
  double envelope = to_double(coeffs.at(0)) * std::exp(-t);
  if (t > 0.0) {
    const double log_t = std::log(t);
    for (std::size_t l = 1; l < coeffs.size(); ++l) {
      const double dl = static_cast<double>(l);
      envelope += to_double(coeffs[l]) * std::exp(-t + dl * log_t - std::lgamma(dl + 1.0));
    }
  }
  return std::clamp(c - envelope, 0.0, c);
}

double LimitDensity::value() const {
  return (numerator_integer - std::sqrt(static_cast<double>(radicand))) / denominator;
}

// --- psi distribution -------------------------------------------------------

Rational psi_pmf(std::uint32_t d) {
  if (d == 0) {
    throw std::invalid_argument("psi_pmf: distance must be >= 1");
  }
  return Rational(psi_numerator(d), pow3(2ULL * d - 1));
}

Rational s_pmf(std::uint32_t d) {
  // 2/3 sum_{k<d} C(d+k, k) (1/3)^(d+k) + C(2d, d) (1/3)^(2d+1), evaluated
  // on the common denominator 3^(2d+1).
  BigInt num = binomial(2ULL * d, d);
  for (std::uint32_t k = 0; k < d; ++k) {
    num += 2 * binomial(std::uint64_t{d} + k, k) * pow3(d - k);
  }
  return Rational(num, pow3(2ULL * d + 1));
}

// --- renewal structure ------------------------------------------------------

// A product of i psi probabilities whose distances sum to s has denominator
// 3^(2s - i), so w_i(s) = A_i(s) / 3^(2s - i) with
//   A_i(s) = sum_d a_d A_{i-1}(s - d),   a_d = psi_numerator(d),
// and the whole convolution runs on integers.
RenewalWeights renewal_weights(std::uint32_t r) {
  require_layer(r, "renewal_weights");
  const auto a = psi_numerators(r);

  // prev[s] = A_{i-1}(s); only s >= i - 1 can be nonzero.
  std::vector<BigInt> prev(r + 1, BigInt(0));
  std::vector<BigInt> next(r + 1, BigInt(0));
  prev[0] = 1;

  RenewalWeights out;
  out.layer = r;
  out.w.reserve(r);
  for (std::uint32_t i = 1; i <= r; ++i) {
    for (std::uint32_t s = 0; s <= r; ++s) {
      next[s] = 0;
    }
    for (std::uint32_t s = i; s <= r; ++s) {
      BigInt acc = 0;
      for (std::uint32_t d = 1; d + (i - 1) <= s; ++d) {
        acc += a[d - 1] * prev[s - d];
      }
      next[s] = std::move(acc);
    }
    out.w.emplace_back(next[r], pow3(2ULL * r - i));
    std::swap(prev, next);
  }
  return out;
}

RenewalWeights renewal_weights_naive(std::uint32_t r) {
  require_layer(r, "renewal_weights_naive");
  if (r > kNaiveWeightsMaxLayer) {
    throw std::length_error("renewal_weights_naive: layer " + std::to_string(r) +
                            " exceeds enumeration limit " +
                            std::to_string(kNaiveWeightsMaxLayer));
  }
  std::vector<Rational> pmf;
  for (std::uint32_t d = 1; d <= r; ++d) {
    pmf.push_back(psi_pmf(d));
  }

  RenewalWeights out;
  out.layer = r;
  out.w.assign(r, Rational(0));
  // Bit j of the mask set means a part boundary after unit j + 1.
  const std::uint32_t cuts = r - 1;
  for (std::uint32_t mask = 0; mask < (1U << cuts); ++mask) {
    Rational product = 1;
    std::uint32_t part_start = 0;
    for (std::uint32_t j = 0; j <= cuts; ++j) {
      if (j == cuts || ((mask >> j) & 1U) != 0) {
        product *= pmf[j - part_start];
        part_start = j + 1;
      }
    }
    out.w[static_cast<std::uint32_t>(std::popcount(mask))] += product;
  }
  return out;
}

// --- densities --------------------------------------------------------------

DensityProfile density_profile(std::uint32_t r) {
  const RenewalWeights weights = renewal_weights(r);

  DensityProfile profile;
  profile.layer = r;
  profile.coeffs.assign(r + 1, Rational(0));
  // b_l = w_l + ... + w_r for l >= 1, accumulated from the top.
  Rational tail = 0;
  for (std::uint32_t l = r; l >= 1; --l) {
    tail += weights[l];
    profile.coeffs[l] = tail;
  }
  profile.constant = tail;
  profile.coeffs[0] = tail;
  return profile;
}

double density_at(std::uint32_t r, double t) {
  if (!std::isfinite(t) || t < 0.0) {
    throw std::invalid_argument("density_at: time must be finite and >= 0");
  }
  return density_profile(r)(t);
}

// With u_s = U_s / 3^(2s), the recursion u_r = sum_d P(psi = d) u_{r-d}
// becomes U_r = 3 sum_d a_d U_{r-d}.
std::vector<Rational> end_densities(std::uint32_t r_max) {
  require_layer(r_max, "end_densities");
  const auto a = psi_numerators(r_max);
  std::vector<BigInt> scaled(r_max + 1);
  scaled[0] = 1;

  std::vector<Rational> out;
  out.reserve(r_max);
  for (std::uint32_t r = 1; r <= r_max; ++r) {
    BigInt acc = 0;
    for (std::uint32_t d = 1; d <= r; ++d) {
      acc += a[d - 1] * scaled[r - d];
    }
    scaled[r] = 3 * acc;
    out.emplace_back(scaled[r], pow3(2ULL * r));
  }
  return out;
}

Rational end_density(std::uint32_t r) {
  require_layer(r, "end_density");
  return end_densities(r).back();
}

double limit_density() { return kLimitDensity.value(); }

// --- empty-run statistics ---------------------------------------------------

Rational run_count_pmf(std::uint32_t n) {
  return Rational(1, 3) * rational_pow(Rational(2, 3), n);
}

Rational cond_expected_run(std::uint32_t n) {
  const std::uint32_t k = n / 2;
  const Rational central = Rational(binomial(2ULL * k, k), BigInt(1) << (2 * k));
  if (n % 2 == 0) {
    return k + k * central;
  }
  const Rational half_n(n, 2);
  return half_n + half_n * central;
}

double expected_run(double tolerance) {
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
    throw std::invalid_argument("expected_run: tolerance must be positive and finite");
  }
  // Each piece of the k-th even+odd pair shrinks by at most
  // q_k = (4/9)(1 + 1/k) from k to k + 1, and q_k decreases in k, so the
  // remainder after pair k is at most term_k * q_k / (1 - q_k).
  Rational sum = 0;
  for (std::uint32_t k = 0;; ++k) {
    const Rational term = cond_expected_run(2 * k) * run_count_pmf(2 * k) +
                          cond_expected_run(2 * k + 1) * run_count_pmf(2 * k + 1);
    sum += term;
    if (k == 0) {
      continue;
    }
    const Rational q = Rational(4, 9) * Rational(k + 1, k);
    const Rational tail_bound = term * q / (1 - q);
    const double term_d = to_double(term);
    if (term_d < tolerance / 10.0 && to_double(tail_bound) < tolerance) {
      break;
    }
  }
  return to_double(sum);
}

std::pair<Rational, Rational> central_binomial_series(const Rational& x, std::uint32_t k_max) {
  if (x < 0 || x >= Rational(1, 4)) {
    throw std::invalid_argument("central_binomial_series: need 0 <= x < 1/4");
  }
  Rational plain = 0;
  Rational weighted = 0;
  Rational x_pow = 1;
  for (std::uint32_t k = 0; k <= k_max; ++k) {
    const Rational term = Rational(binomial(2ULL * k, k)) * x_pow;
    plain += term;
    weighted += k * term;
    x_pow *= x;
  }
  return {plain, weighted};
}

}  // namespace mlpark
