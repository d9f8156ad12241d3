#include "curvecount/ff.hpp"

#include <algorithm>
#include <numeric>

namespace curvecount {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::CompositeModulus: return "CompositeModulus";
    case ErrorCode::ModulusOutOfRange: return "ModulusOutOfRange";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::NotADivisor: return "NotADivisor";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::NotIrreducible: return "NotIrreducible";
    case ErrorCode::ExtensionTooLarge: return "ExtensionTooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::DegenerateInX: return "DegenerateInX";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NotASolution: return "NotASolution";
    case ErrorCode::DegreeTooLarge: return "DegreeTooLarge";
    case ErrorCode::ModulusTooLarge: return "ModulusTooLarge";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::DegreeCapExceeded: return "DegreeCapExceeded";
    case ErrorCode::PowerFormExcluded: return "PowerFormExcluded";
    case ErrorCode::NoCompletePath: return "NoCompletePath";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / std::gcd(a, b) * b; }

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic below 3.3 * 10^24.
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

namespace {

std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t m = 128;
    std::uint64_t r = 1;
    auto f = [&](std::uint64_t v) { return (mul_mod(v, v, n) + c) % n; };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_rec(std::uint64_t n, std::vector<std::uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_brent(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

}  // namespace

std::vector<PrimePower> factor_u64(std::uint64_t n) {
  std::vector<std::uint64_t> primes;
  if (n > 1) {
    constexpr std::uint64_t kTrialLimit = std::uint64_t{1} << 20;
    for (std::uint64_t q = 2; q <= kTrialLimit && q * q <= n; q += (q == 2 ? 1 : 2)) {
      while (n % q == 0) {
        primes.push_back(q);
        n /= q;
      }
    }
    factor_rec(n, primes);
  }
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> result;
  for (std::uint64_t q : primes) {
    if (!result.empty() && result.back().prime == q) {
      ++result.back().exponent;
    } else {
      result.push_back({q, 1});
    }
  }
  return result;
}

FieldContext FieldContext::make(std::uint64_t p) {
  if (p < 3 || p >= (std::uint64_t{1} << 63)) {
    throw Error(ErrorCode::ModulusOutOfRange, "modulus must satisfy 3 <= p < 2^63, got " + std::to_string(p));
  }
  if (!is_prime_u64(p)) {
    throw Error(ErrorCode::CompositeModulus, std::to_string(p) + " is not prime");
  }
  FieldContext ctx;
  ctx.p_ = p;
  ctx.factorization_ = factor_u64(p - 1);
  for (std::uint64_t g = 2; g < p; ++g) {
    const bool generator = std::all_of(ctx.factorization_.begin(), ctx.factorization_.end(),
                                       [&](const PrimePower& q) { return pow_mod(g, (p - 1) / q.prime, p) != 1; });
    if (generator) {
      ctx.primitive_root_ = g;
      return ctx;
    }
  }
  throw Error(ErrorCode::CompositeModulus, "no primitive root found for " + std::to_string(p));
}

FieldContext::Elem FieldContext::pow(Elem a, const BigInt& e) const {
  if (e < 0) throw Error(ErrorCode::InvalidArgument, "negative exponent");
  // Fermat reduces the exponent into 64 bits.
  if (a == 0) return e == 0 ? 1 : 0;
  BigInt r = e % BigInt(static_cast<unsigned long>(p_ - 1));
  return pow_mod(a, r.get_ui(), p_);
}

FieldContext::Elem FieldContext::inv(Elem a) const {
  if (a == 0) throw Error(ErrorCode::ZeroElement, "inverse of zero");
  // Extended Euclid on signed 128-bit values.
  __int128 t = 0, new_t = 1;
  __int128 r = p_, new_r = a;
  while (new_r != 0) {
    const __int128 q = r / new_r;
    const __int128 tmp_t = t - q * new_t;
    t = new_t;
    new_t = tmp_t;
    const __int128 tmp_r = r - q * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  if (t < 0) t += p_;
  return static_cast<Elem>(t);
}

FieldContext::Elem FieldContext::from_int(std::int64_t v) const noexcept {
  const auto p = static_cast<std::int64_t>(p_);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return static_cast<Elem>(r);
}

FieldContext::Elem FieldContext::from_big(const BigInt& v) const {
  BigInt r = v % BigInt(static_cast<unsigned long>(p_));
  if (r < 0) r += static_cast<unsigned long>(p_);
  return r.get_ui();
}

std::uint64_t FieldContext::element_order(Elem x) const {
  x %= p_;
  if (x == 0) throw Error(ErrorCode::ZeroElement, "element_order of zero");
  std::uint64_t t = p_ - 1;
  for (const PrimePower& q : factorization_) {
    for (unsigned i = 0; i < q.exponent; ++i) {
      if (pow_mod(x, t / q.prime, p_) != 1) break;
      t /= q.prime;
    }
  }
  return t;
}

Subgroup::Subgroup(const FieldContext& ctx, std::uint64_t order, std::uint64_t cap)
    : p_(ctx.modulus()), order_(order) {
  if (order == 0 || (p_ - 1) % order != 0) {
    throw Error(ErrorCode::NotADivisor,
                std::to_string(order) + " does not divide p-1 = " + std::to_string(p_ - 1));
  }
  generator_ = ctx.pow(ctx.primitive_root(), (p_ - 1) / order);
  if (order <= cap) {
    std::vector<std::uint64_t> elems;
    elems.reserve(order);
    std::uint64_t x = 1;
    for (std::uint64_t i = 0; i < order; ++i) {
      elems.push_back(x);
      x = ctx.mul(x, generator_);
    }
    std::sort(elems.begin(), elems.end());
    elements_ = std::move(elems);
  }
}

bool Subgroup::contains(std::uint64_t x) const {
  if (x == 0 || x >= p_) return false;
  if (elements_) return std::binary_search(elements_->begin(), elements_->end(), x);
  return pow_mod(x, order_, p_) == 1;
}

Subgroup subgroup_of_order(const FieldContext& ctx, std::uint64_t e, std::uint64_t cap) {
  return Subgroup(ctx, e, cap);
}

std::uint64_t generated_subgroup_order(const FieldContext& ctx, std::span<const std::uint64_t> gens) {
  std::uint64_t order = 1;
  for (std::uint64_t g : gens) {
    if (g % ctx.modulus() == 0) throw Error(ErrorCode::ZeroElement, "zero generator");
    order = lcm_u64(order, ctx.element_order(g));
  }
  return order;
}

}  // namespace curvecount
