#include "curvecount/poly.hpp"

#include <algorithm>
#include <vector>

namespace curvecount {

const FieldContext& CoeffDomain::field() const {
  if (!field_) throw Error(ErrorCode::DomainMismatch, "integer domain has no field context");
  return *field_;
}

BivariatePoly::BivariatePoly(CoeffDomain domain, TermMap terms) : domain_(std::move(domain)), terms_(std::move(terms)) {
  canonicalize();
}

void BivariatePoly::canonicalize() {
  if (domain_.is_modular()) {
    const BigInt p(static_cast<unsigned long>(domain_.modulus()));
    for (auto& [e, c] : terms_) {
      c %= p;
      if (c < 0) c += p;
    }
  }
  std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
  deg_ = deg_x_ = deg_y_ = -1;
  for (const auto& [e, c] : terms_) {
    deg_ = std::max(deg_, static_cast<int>(e.x + e.y));
    deg_x_ = std::max(deg_x_, static_cast<int>(e.x));
    deg_y_ = std::max(deg_y_, static_cast<int>(e.y));
  }
}

BivariatePoly BivariatePoly::monomial(const CoeffDomain& d, const BigInt& c, unsigned i, unsigned j) {
  return BivariatePoly(d, TermMap{{Exponent{i, j}, c}});
}

BivariatePoly BivariatePoly::from_field(const CoeffDomain& d, const BiPoly<FieldContext>& f) {
  TermMap t;
  for (const auto& [e, c] : f.terms) t.emplace(e, BigInt(static_cast<unsigned long>(c)));
  return BivariatePoly(d, std::move(t));
}

BigInt BivariatePoly::coefficient(Exponent e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? BigInt(0) : it->second;
}

BivariatePoly BivariatePoly::operator+(const BivariatePoly& o) const {
  if (!(domain_ == o.domain_)) throw Error(ErrorCode::DomainMismatch, "adding polynomials over different domains");
  TermMap t = terms_;
  for (const auto& [e, c] : o.terms_) t[e] += c;
  return BivariatePoly(domain_, std::move(t));
}

BivariatePoly BivariatePoly::operator-(const BivariatePoly& o) const { return *this + (-o); }

BivariatePoly BivariatePoly::operator-() const {
  TermMap t = terms_;
  for (auto& [e, c] : t) c = -c;
  return BivariatePoly(domain_, std::move(t));
}

BivariatePoly BivariatePoly::operator*(const BivariatePoly& o) const {
  if (!(domain_ == o.domain_)) throw Error(ErrorCode::DomainMismatch, "multiplying polynomials over different domains");
  TermMap t;
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) t[Exponent{ea.x + eb.x, ea.y + eb.y}] += ca * cb;
  }
  return BivariatePoly(domain_, std::move(t));
}

BivariatePoly BivariatePoly::pow(unsigned e) const {
  BivariatePoly result = constant(domain_, 1);
  BivariatePoly base = *this;
  while (e != 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e != 0) base = base * base;
  }
  return result;
}

BivariatePoly BivariatePoly::scaled(const BigInt& c) const {
  TermMap t = terms_;
  for (auto& [e, v] : t) v *= c;
  return BivariatePoly(domain_, std::move(t));
}

BigInt BivariatePoly::eval(const BigInt& x, const BigInt& y) const {
  BigInt acc = 0;
  for (const auto& [e, c] : terms_) {
    BigInt xi, yj;
    mpz_pow_ui(xi.get_mpz_t(), x.get_mpz_t(), e.x);
    mpz_pow_ui(yj.get_mpz_t(), y.get_mpz_t(), e.y);
    acc += c * xi * yj;
  }
  if (domain_.is_modular()) {
    const BigInt p(static_cast<unsigned long>(domain_.modulus()));
    acc %= p;
    if (acc < 0) acc += p;
  }
  return acc;
}

std::uint64_t BivariatePoly::eval_mod(std::uint64_t x, std::uint64_t y) const {
  const FieldContext& f = domain_.field();
  std::uint64_t acc = 0;
  for (const auto& [e, c] : terms_) {
    acc = f.add(acc, f.mul(c.get_ui(), f.mul(f.pow(x, std::uint64_t{e.x}), f.pow(y, std::uint64_t{e.y}))));
  }
  return acc;
}

BivariatePoly BivariatePoly::swap_xy() const {
  TermMap t;
  for (const auto& [e, c] : terms_) t.emplace(Exponent{e.y, e.x}, c);
  return BivariatePoly(domain_, std::move(t));
}

BiPoly<FieldContext> BivariatePoly::to_field() const {
  domain_.field();
  BiPoly<FieldContext> r;
  for (const auto& [e, c] : terms_) r.terms.emplace(e, c.get_ui());
  return r;
}

std::string BivariatePoly::to_string(const char* x_name, const char* y_name) const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponent, BigInt>> ordered(terms_.begin(), terms_.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    const unsigned da = a.first.x + a.first.y, db = b.first.x + b.first.y;
    if (da != db) return da > db;
    return a.first.x > b.first.x;
  });
  std::string out;
  bool first = true;
  for (const auto& [e, c] : ordered) {
    BigInt mag = c;
    const bool negative = c < 0;
    if (negative) mag = -mag;
    if (first) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono;
    auto append = [&mono](const char* name, unsigned k) {
      if (k == 0) return;
      if (!mono.empty()) mono += "*";
      mono += name;
      if (k > 1) mono += "^" + std::to_string(k);
    };
    append(x_name, e.x);
    append(y_name, e.y);
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

std::size_t delta(const BivariatePoly& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "delta of the zero polynomial");
  const auto w = static_cast<std::size_t>(f.degree_x()) + 1;
  const auto h = static_cast<std::size_t>(f.degree_y()) + 1;
  std::vector<std::vector<bool>> grid(w, std::vector<bool>(h, false));
  for (const auto& [e, c] : f.terms()) {
    for (unsigned k = 0; k <= e.x; ++k) {
      for (unsigned l = 0; l <= e.y; ++l) grid[k][l] = true;
    }
  }
  std::size_t count = 0;
  for (const auto& col : grid) count += static_cast<std::size_t>(std::count(col.begin(), col.end(), true));
  return count;
}

BivariatePoly shift(const BivariatePoly& f, std::uint64_t a, std::uint64_t b) {
  if (!f.domain().is_modular()) throw Error(ErrorCode::DomainMismatch, "shift requires a modular polynomial");
  const FieldContext& field = f.domain().field();
  BiPolyRing<FieldContext> ring(field);
  a %= field.modulus();
  b %= field.modulus();
  const BiPoly<FieldContext> src = f.to_field();
  const auto dx = static_cast<unsigned>(std::max(f.degree_x(), 0));
  const auto dy = static_cast<unsigned>(std::max(f.degree_y(), 0));
  std::vector<BiPoly<FieldContext>> px(dx + 1), py(dy + 1);
  const auto lin_x = ring.add(ring.monomial(1, 1, 0), ring.constant(a));
  const auto lin_y = ring.add(ring.monomial(1, 0, 1), ring.constant(b));
  px[0] = py[0] = ring.constant(1);
  for (unsigned i = 1; i <= dx; ++i) px[i] = ring.mul(px[i - 1], lin_x);
  for (unsigned j = 1; j <= dy; ++j) py[j] = ring.mul(py[j - 1], lin_y);
  BiPoly<FieldContext> out;
  for (const auto& [e, c] : src.terms) out = ring.add(std::move(out), ring.scale(ring.mul(px[e.x], py[e.y]), c));
  return BivariatePoly::from_field(f.domain(), out);
}

BivariatePoly substitute_y_power(const BivariatePoly& f, unsigned n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "substitute_y_power needs n >= 1");
  BivariatePoly::TermMap t;
  for (const auto& [e, c] : f.terms()) t.emplace(Exponent{e.x, e.y * n}, c);
  return BivariatePoly(f.domain(), std::move(t));
}

}  // namespace curvecount
