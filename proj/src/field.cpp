#include "frobent/field.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

#include "frobent/error.hpp"

namespace frobent {

namespace {

std::uint32_t mod_reduce(std::int64_t c, std::uint32_t p) {
  std::int64_t r = c % static_cast<std::int64_t>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

std::uint32_t mod_mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p);
}

std::uint32_t mod_pow(std::uint32_t a, std::uint64_t n, std::uint32_t p) {
  std::uint32_t r = 1 % p;
  while (n > 0) {
    if (n & 1U) r = mod_mul(r, a, p);
    a = mod_mul(a, a, p);
    n >>= 1U;
  }
  return r;
}

std::uint32_t mod_inv(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw DomainError("division by zero in F_" + std::to_string(p));
  return mod_pow(a, p - 2, p);
}

// Monic irreducible polynomials, low degree first.
const std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>>&
irreducible_table() {
  static const std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>>
      table = {
          {{2, 2}, {1, 1, 1}},
          {{2, 3}, {1, 1, 0, 1}},
          {{2, 4}, {1, 1, 0, 0, 1}},
          {{2, 5}, {1, 0, 1, 0, 0, 1}},
          {{2, 8}, {1, 1, 0, 1, 1, 0, 0, 0, 1}},
          {{3, 2}, {1, 0, 1}},
          {{3, 3}, {1, 2, 0, 1}},
          {{5, 2}, {2, 0, 1}},
          {{7, 2}, {1, 0, 1}},
      };
  return table;
}

// Coefficient vectors of F_p[x]/(f): multiplication then reduction.
std::vector<std::uint32_t> finite_mul(const std::vector<std::uint32_t>& a,
                                      const std::vector<std::uint32_t>& b,
                                      const FieldSpec& k) {
  const std::uint32_t p = k.characteristic();
  const std::size_t s = k.extension_degree();
  std::vector<std::uint32_t> prod(2 * s, 0);
  for (std::size_t i = 0; i < s; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < s; ++j) {
      prod[i + j] = (prod[i + j] + mod_mul(a[i], b[j], p)) % p;
    }
  }
  const auto& f = k.modulus();
  for (std::size_t deg = prod.size(); deg-- > s;) {
    const std::uint32_t c = prod[deg];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= s; ++j) {
      // subtract c * x^{deg-s} * f; f is monic
      prod[deg - s + j] = (prod[deg - s + j] + p - mod_mul(c, f[j], p)) % p;
    }
  }
  prod.resize(s);
  return prod;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::uint32_t p) {
  if (!is_prime(p)) throw ConfigError("field characteristic " + std::to_string(p) + " is not prime");
  FieldSpec k;
  k.kind_ = FieldKind::Prime;
  k.p_ = p;
  return k;
}

FieldSpec FieldSpec::finite(std::uint32_t p, std::uint32_t s) {
  if (!is_prime(p)) throw ConfigError("field characteristic " + std::to_string(p) + " is not prime");
  if (s < 1) throw ConfigError("finite field degree must be at least 1");
  FieldSpec k;
  k.kind_ = FieldKind::Finite;
  k.p_ = p;
  k.s_ = s;
  if (s == 1) {
    k.modulus_ = {0, 1};
  } else {
    const auto it = irreducible_table().find({p, s});
    if (it == irreducible_table().end()) {
      throw ConfigError("no built-in irreducible polynomial for F_" + std::to_string(p) + "^" +
                        std::to_string(s));
    }
    k.modulus_ = it->second;
  }
  return k;
}

FieldSpec FieldSpec::rational(std::uint32_t p, std::uint32_t m, std::uint32_t degree_cap) {
  if (!is_prime(p)) throw ConfigError("field characteristic " + std::to_string(p) + " is not prime");
  FieldSpec k;
  k.kind_ = FieldKind::Rational;
  k.p_ = p;
  k.m_ = m;
  k.degree_cap_ = degree_cap;
  return k;
}

std::string FieldSpec::to_string() const {
  std::ostringstream os;
  switch (kind_) {
    case FieldKind::Prime:
      os << "F_" << p_;
      break;
    case FieldKind::Finite: {
      std::uint64_t q = 1;
      for (std::uint32_t i = 0; i < s_; ++i) q *= p_;
      os << "F_" << q;
      break;
    }
    case FieldKind::Rational:
      os << "F_" << p_ << "(";
      for (std::uint32_t i = 0; i < m_; ++i) os << (i ? "," : "") << "u" << (i + 1);
      os << ")";
      break;
  }
  return os.str();
}

std::uint64_t p_degree(const FieldSpec& k) {
  std::uint64_t r = 1;
  for (std::uint32_t i = 0; i < k.transcendence_count(); ++i) r *= k.characteristic();
  return r;
}

// ---------------------------------------------------------------------------------------
// Poly

Poly Poly::constant(std::uint32_t p, std::uint32_t nvars, std::int64_t c) {
  Poly r(p, nvars);
  r.add_term(Exponent(nvars, 0), mod_reduce(c, p));
  return r;
}

Poly Poly::monomial(std::uint32_t p, Exponent exponent, std::uint32_t coefficient) {
  Poly r(p, static_cast<std::uint32_t>(exponent.size()));
  r.add_term(exponent, coefficient % p);
  return r;
}

Poly Poly::variable(std::uint32_t p, std::uint32_t nvars, std::uint32_t index) {
  Exponent e(nvars, 0);
  e.at(index) = 1;
  return monomial(p, std::move(e), 1);
}

void Poly::add_term(const Exponent& e, std::uint32_t c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second = (it->second + c) % p_;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; });
}

std::uint32_t Poly::degree(std::uint32_t var) const {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

std::uint32_t Poly::leading_coefficient() const {
  return terms_.empty() ? 0 : terms_.rbegin()->second;
}

Poly Poly::operator-() const {
  Poly r(p_, nvars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, (p_ - c) % p_);
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, (p_ - c) % p_);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r(a.p_, a.nvars_);
  Poly::Exponent e(a.nvars_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::uint32_t i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, mod_mul(ca, cb, a.p_));
    }
  }
  return r;
}

Poly Poly::scaled(std::uint32_t c) const {
  Poly r(p_, nvars_);
  c %= p_;
  if (c == 0) return r;
  for (const auto& [e, x] : terms_) r.terms_.emplace(e, mod_mul(x, c, p_));
  return r;
}

Poly Poly::divexact(const Poly& d) const {
  if (d.is_zero()) throw DomainError("polynomial division by zero");
  Poly q(p_, nvars_);
  Poly r = *this;
  const auto& [ed, cd] = *d.terms_.rbegin();
  const std::uint32_t inv = mod_inv(cd, p_);
  while (!r.is_zero()) {
    const auto [er, cr] = *r.terms_.rbegin();
    Exponent et(nvars_);
    for (std::uint32_t i = 0; i < nvars_; ++i) {
      if (er[i] < ed[i]) throw DomainError("inexact polynomial division");
      et[i] = er[i] - ed[i];
    }
    Poly t = monomial(p_, et, mod_mul(cr, inv, p_));
    q += t;
    r -= t * d;
  }
  return q;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(mod_inv(leading_coefficient(), p_));
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    if (!first) os << " + ";
    first = false;
    bool any = false;
    if (c != 1) {
      os << c;
      any = true;
    }
    for (std::uint32_t i = 0; i < nvars_; ++i) {
      if (e[i] == 0) continue;
      if (any) os << "*";
      os << "u" << (i + 1);
      if (e[i] > 1) os << "^" << e[i];
      any = true;
    }
    if (!any) os << c;
  }
  return os.str();
}

namespace {

// Coefficients of a polynomial viewed as univariate in `var`; the var exponent is zeroed.
std::map<std::uint32_t, Poly> coefficients_in(const Poly& a, std::uint32_t var) {
  std::map<std::uint32_t, Poly> out;
  for (const auto& [e, c] : a.terms()) {
    auto ez = e;
    ez[var] = 0;
    auto [it, inserted] = out.try_emplace(e[var], Poly(a.characteristic(), a.nvars()));
    it->second += Poly::monomial(a.characteristic(), ez, c);
  }
  return out;
}

Poly var_power(std::uint32_t p, std::uint32_t nvars, std::uint32_t var, std::uint32_t k) {
  Poly::Exponent e(nvars, 0);
  e[var] = k;
  return Poly::monomial(p, std::move(e), 1);
}

Poly content_in(const Poly& a, std::uint32_t var) {
  Poly g(a.characteristic(), a.nvars());
  for (const auto& [k, c] : coefficients_in(a, var)) g = gcd(g, c);
  return g;
}

Poly primitive_part(const Poly& a, std::uint32_t var) {
  if (a.is_zero()) return a;
  return a.divexact(content_in(a, var));
}

// Pseudo-remainder of a by b with respect to var (up to a power of lc(b)).
Poly pseudo_remainder(Poly r, const Poly& b, std::uint32_t var) {
  const std::uint32_t db = b.degree(var);
  const Poly lb = coefficients_in(b, var).rbegin()->second;
  while (!r.is_zero() && r.degree(var) >= db) {
    const std::uint32_t dr = r.degree(var);
    const Poly lr = coefficients_in(r, var).rbegin()->second;
    r = lb * r - lr * var_power(r.characteristic(), r.nvars(), var, dr - db) * b;
  }
  return r;
}

std::optional<std::uint32_t> main_variable(const Poly& a, const Poly& b) {
  std::optional<std::uint32_t> v;
  for (const Poly* x : {&a, &b}) {
    for (std::uint32_t i = 0; i < x->nvars(); ++i) {
      if (x->degree(i) > 0 && (!v || i < *v)) v = i;
    }
  }
  return v;
}

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  const auto var = main_variable(a, b);
  if (!var) return Poly::constant(a.characteristic(), a.nvars(), 1);
  const std::uint32_t v = *var;

  const Poly c = gcd(content_in(a, v), content_in(b, v));
  Poly pa = primitive_part(a, v);
  Poly pb = primitive_part(b, v);
  if (pa.degree(v) < pb.degree(v)) std::swap(pa, pb);
  while (!pb.is_zero() && pb.degree(v) > 0) {
    Poly r = pseudo_remainder(pa, pb, v);
    pa = std::move(pb);
    pb = primitive_part(r, v);
  }
  Poly g = pb.is_zero() ? primitive_part(pa, v) : Poly::constant(a.characteristic(), a.nvars(), 1);
  return (c * g).monic();
}

// ---------------------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(const FieldSpec& k, std::int64_t c) {
  *this = FieldElement(c).typed_as(k);
}

FieldElement FieldElement::generator(const FieldSpec& k, std::uint32_t index) {
  switch (k.kind()) {
    case FieldKind::Prime:
      throw DomainError("prime fields have no polynomial generator");
    case FieldKind::Finite: {
      std::vector<std::uint32_t> c(k.extension_degree(), 0);
      if (k.extension_degree() == 1) {
        throw DomainError("F_p viewed as a degree-one extension has no generator");
      }
      c[1] = 1;
      return {k, Rep(std::move(c))};
    }
    case FieldKind::Rational: {
      if (index >= k.transcendence_count()) throw DomainError("transcendental index out of range");
      const auto p = k.characteristic();
      const auto m = k.transcendence_count();
      return {k, Rep(canonical(k, Poly::variable(p, m, index), Poly::constant(p, m, 1)))};
    }
  }
  return {};
}

FieldElement FieldElement::from_coefficients(const FieldSpec& k, std::vector<std::uint32_t> coeffs) {
  if (k.kind() != FieldKind::Finite) throw DomainError("coefficient vectors need a finite field");
  if (coeffs.size() > k.extension_degree()) throw DomainError("too many coefficients");
  coeffs.resize(k.extension_degree(), 0);
  for (auto& c : coeffs) c %= k.characteristic();
  return {k, Rep(std::move(coeffs))};
}

FieldElement FieldElement::fraction(const FieldSpec& k, Poly num, Poly den) {
  if (k.kind() != FieldKind::Rational) throw DomainError("fractions need a rational-function field");
  if (num.nvars() != k.transcendence_count() || den.nvars() != k.transcendence_count() ||
      num.characteristic() != k.characteristic() || den.characteristic() != k.characteristic()) {
    throw DomainError("polynomial ring does not match " + k.to_string());
  }
  if (den.is_zero()) throw DomainError("division by zero in " + k.to_string());
  return {k, Rep(canonical(k, std::move(num), std::move(den)))};
}

FieldElement::Fraction FieldElement::canonical(const FieldSpec& k, Poly num, Poly den) {
  const auto p = k.characteristic();
  const auto m = k.transcendence_count();
  if (num.is_zero()) return {Poly(p, m), Poly::constant(p, m, 1)};
  const Poly g = gcd(num, den);
  num = num.divexact(g);
  den = den.divexact(g);
  const std::uint32_t inv = mod_inv(den.leading_coefficient(), p);
  num = num.scaled(inv);
  den = den.scaled(inv);
  for (std::uint32_t i = 0; i < m; ++i) {
    if (num.degree(i) > k.degree_cap() || den.degree(i) > k.degree_cap()) {
      throw ResourceError("degree cap " + std::to_string(k.degree_cap()) + " exceeded in " +
                          k.to_string());
    }
  }
  return {std::move(num), std::move(den)};
}

FieldElement FieldElement::typed_as(const FieldSpec& k) const {
  if (field_) {
    if (!(*field_ == k)) throw DomainError("mixed fields: " + field_->to_string() + " and " + k.to_string());
    return *this;
  }
  const std::int64_t c = std::get<std::int64_t>(rep_);
  const std::uint32_t r = mod_reduce(c, k.characteristic());
  switch (k.kind()) {
    case FieldKind::Prime:
      return {k, Rep(r)};
    case FieldKind::Finite: {
      std::vector<std::uint32_t> v(k.extension_degree(), 0);
      v[0] = r;
      return {k, Rep(std::move(v))};
    }
    case FieldKind::Rational: {
      const auto p = k.characteristic();
      const auto m = k.transcendence_count();
      return {k, Rep(canonical(k, Poly::constant(p, m, r), Poly::constant(p, m, 1)))};
    }
  }
  return {};
}

const FieldSpec& FieldElement::common_field(const FieldElement& a, const FieldElement& b) {
  if (a.field_ && b.field_ && !(*a.field_ == *b.field_)) {
    throw DomainError("mixed fields: " + a.field_->to_string() + " and " + b.field_->to_string());
  }
  return a.field_ ? *a.field_ : *b.field_;
}

bool FieldElement::is_zero() const {
  return std::visit(
      [](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, std::int64_t> || std::is_same_v<T, std::uint32_t>) {
          return r == 0;
        } else if constexpr (std::is_same_v<T, std::vector<std::uint32_t>>) {
          return std::all_of(r.begin(), r.end(), [](std::uint32_t c) { return c == 0; });
        } else {
          return r.num.is_zero();
        }
      },
      rep_);
}

std::uint32_t FieldElement::residue() const {
  if (const auto* r = std::get_if<std::uint32_t>(&rep_)) return *r;
  return 0;
}

std::vector<std::uint32_t> FieldElement::coefficients() const {
  if (const auto* r = std::get_if<std::vector<std::uint32_t>>(&rep_)) return *r;
  return {};
}

const Poly& FieldElement::numerator() const {
  static const Poly empty;
  if (const auto* r = std::get_if<Fraction>(&rep_)) return r->num;
  return empty;
}

const Poly& FieldElement::denominator() const {
  static const Poly empty;
  if (const auto* r = std::get_if<Fraction>(&rep_)) return r->den;
  return empty;
}

FieldElement FieldElement::operator-() const {
  return FieldElement(0) - *this;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) { return *this = arith(*this, o, FieldOp::Add); }
FieldElement& FieldElement::operator-=(const FieldElement& o) { return *this = arith(*this, o, FieldOp::Sub); }
FieldElement& FieldElement::operator*=(const FieldElement& o) { return *this = arith(*this, o, FieldOp::Mul); }
FieldElement& FieldElement::operator/=(const FieldElement& o) { return *this = arith(*this, o, FieldOp::Div); }

FieldElement FieldElement::inverse() const {
  return FieldElement(1) / *this;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  if (!a.field_ && !b.field_) return std::get<std::int64_t>(a.rep_) == std::get<std::int64_t>(b.rep_);
  if (a.field_ && b.field_ && !(*a.field_ == *b.field_)) return false;
  const FieldSpec& k = a.field_ ? *a.field_ : *b.field_;
  return a.typed_as(k).rep_ == b.typed_as(k).rep_;
}

std::string FieldElement::to_string() const {
  return std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, std::int64_t> || std::is_same_v<T, std::uint32_t>) {
          return std::to_string(r);
        } else if constexpr (std::is_same_v<T, std::vector<std::uint32_t>>) {
          std::string s = "[";
          for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + std::to_string(r[i]);
          return s + "]";
        } else {
          if (r.den.is_constant()) return r.num.to_string();
          return "(" + r.num.to_string() + ")/(" + r.den.to_string() + ")";
        }
      },
      rep_);
}

FieldElement arith(const FieldElement& a, const FieldElement& b, FieldOp op) {
  if (!a.field() && !b.field()) {
    const std::int64_t x = std::get<std::int64_t>(a.rep_);
    const std::int64_t y = std::get<std::int64_t>(b.rep_);
    switch (op) {
      case FieldOp::Add: return FieldElement(x + y);
      case FieldOp::Sub: return FieldElement(x - y);
      case FieldOp::Mul: return FieldElement(x * y);
      case FieldOp::Div:
        if (y == 0) throw DomainError("division by zero");
        if (x % y != 0) throw DomainError("untyped integer division is inexact");
        return FieldElement(x / y);
    }
  }
  const FieldSpec& k = FieldElement::common_field(a, b);
  const FieldElement x = a.typed_as(k);
  const FieldElement y = b.typed_as(k);
  const std::uint32_t p = k.characteristic();
  if (op == FieldOp::Div && y.is_zero()) throw DomainError("division by zero in " + k.to_string());

  switch (k.kind()) {
    case FieldKind::Prime: {
      const std::uint32_t u = std::get<std::uint32_t>(x.rep_);
      const std::uint32_t v = std::get<std::uint32_t>(y.rep_);
      std::uint32_t r = 0;
      switch (op) {
        case FieldOp::Add: r = (u + v) % p; break;
        case FieldOp::Sub: r = (u + p - v) % p; break;
        case FieldOp::Mul: r = mod_mul(u, v, p); break;
        case FieldOp::Div: r = mod_mul(u, mod_inv(v, p), p); break;
      }
      return {k, FieldElement::Rep(r)};
    }
    case FieldKind::Finite: {
      const auto& u = std::get<std::vector<std::uint32_t>>(x.rep_);
      auto v = std::get<std::vector<std::uint32_t>>(y.rep_);
      std::vector<std::uint32_t> r(u.size());
      switch (op) {
        case FieldOp::Add:
          for (std::size_t i = 0; i < u.size(); ++i) r[i] = (u[i] + v[i]) % p;
          break;
        case FieldOp::Sub:
          for (std::size_t i = 0; i < u.size(); ++i) r[i] = (u[i] + p - v[i]) % p;
          break;
        case FieldOp::Mul:
          r = finite_mul(u, v, k);
          break;
        case FieldOp::Div: {
          // v^{q-2} is the inverse in the multiplicative group of order q-1
          std::uint64_t n = 1;
          for (std::uint32_t i = 0; i < k.extension_degree(); ++i) n *= p;
          n -= 2;
          std::vector<std::uint32_t> inv(u.size(), 0);
          inv[0] = 1;
          while (n > 0) {
            if (n & 1U) inv = finite_mul(inv, v, k);
            v = finite_mul(v, v, k);
            n >>= 1U;
          }
          r = finite_mul(u, inv, k);
          break;
        }
      }
      return {k, FieldElement::Rep(std::move(r))};
    }
    case FieldKind::Rational: {
      const auto& u = std::get<FieldElement::Fraction>(x.rep_);
      const auto& v = std::get<FieldElement::Fraction>(y.rep_);
      switch (op) {
        case FieldOp::Add:
          return {k, FieldElement::Rep(FieldElement::canonical(k, u.num * v.den + v.num * u.den, u.den * v.den))};
        case FieldOp::Sub:
          return {k, FieldElement::Rep(FieldElement::canonical(k, u.num * v.den - v.num * u.den, u.den * v.den))};
        case FieldOp::Mul:
          return {k, FieldElement::Rep(FieldElement::canonical(k, u.num * v.num, u.den * v.den))};
        case FieldOp::Div:
          return {k, FieldElement::Rep(FieldElement::canonical(k, u.num * v.den, u.den * v.num))};
      }
    }
  }
  return {};
}

std::vector<FieldElement> frobenius_basis(const FieldSpec& k, int e) {
  if (e < 1) throw DomainError("frobenius_basis needs e >= 1");
  if (k.kind() != FieldKind::Rational || k.transcendence_count() == 0) return {FieldElement(k, 1)};
  const std::uint32_t p = k.characteristic();
  const std::uint32_t m = k.transcendence_count();
  std::uint64_t q = 1;
  for (int i = 0; i < e; ++i) q *= p;
  std::vector<FieldElement> basis;
  Poly::Exponent a(m, 0);
  while (true) {
    basis.push_back(FieldElement::fraction(k, Poly::monomial(p, a, 1), Poly::constant(p, m, 1)));
    std::uint32_t i = 0;
    while (i < m && ++a[i] == q) a[i++] = 0;
    if (i == m) break;
  }
  return basis;
}

}  // namespace frobent
