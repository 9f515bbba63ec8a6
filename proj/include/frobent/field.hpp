#pragma once

// Exact base fields of prime characteristic and their Frobenius-degree data.
//
// Three kinds are supported: the prime field F_p, finite fields F_{p^s} in a fixed
// polynomial basis, and purely transcendental extensions F_p(u_1, ..., u_m). The last kind
// is the only imperfect one, so it is what makes [k : k^p] = p^m larger than one.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace frobent {

enum class FieldKind { Prime, Finite, Rational };

bool is_prime(std::uint64_t n);

class FieldSpec {
 public:
  static constexpr std::uint32_t kDefaultDegreeCap = 64;

  static FieldSpec prime(std::uint32_t p);
  static FieldSpec finite(std::uint32_t p, std::uint32_t s);
  static FieldSpec rational(std::uint32_t p, std::uint32_t m,
                            std::uint32_t degree_cap = kDefaultDegreeCap);

  FieldKind kind() const { return kind_; }
  std::uint32_t characteristic() const { return p_; }
  std::uint32_t extension_degree() const { return s_; }
  std::uint32_t transcendence_count() const { return m_; }
  std::uint32_t degree_cap() const { return degree_cap_; }
  /// Monic irreducible modulus of a finite field, coefficients from low to high degree.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec() = default;

  FieldKind kind_ = FieldKind::Prime;
  std::uint32_t p_ = 2;
  std::uint32_t s_ = 1;
  std::uint32_t m_ = 0;
  std::uint32_t degree_cap_ = kDefaultDegreeCap;
  std::vector<std::uint32_t> modulus_;
};

/// [k : k^p]; equals 1 exactly for perfect fields.
std::uint64_t p_degree(const FieldSpec& k);

/// Multivariate polynomial over F_p with sparse lexicographically ordered terms.
class Poly {
 public:
  using Exponent = std::vector<std::uint32_t>;

  Poly() = default;
  Poly(std::uint32_t p, std::uint32_t nvars) : p_(p), nvars_(nvars) {}

  static Poly constant(std::uint32_t p, std::uint32_t nvars, std::int64_t c);
  static Poly monomial(std::uint32_t p, Exponent exponent, std::uint32_t coefficient);
  static Poly variable(std::uint32_t p, std::uint32_t nvars, std::uint32_t index);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t nvars() const { return nvars_; }
  const std::map<Exponent, std::uint32_t>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::uint32_t degree(std::uint32_t var) const;
  /// Coefficient of the lexicographically largest term.
  std::uint32_t leading_coefficient() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(std::uint32_t c) const;

  /// Exact quotient; throws DomainError when d does not divide *this.
  Poly divexact(const Poly& d) const;
  /// Scaled so the leading coefficient is 1 (zero stays zero).
  Poly monic() const;

  std::string to_string() const;

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void add_term(const Exponent& e, std::uint32_t c);

  std::uint32_t p_ = 2;
  std::uint32_t nvars_ = 0;
  std::map<Exponent, std::uint32_t> terms_;
};

/// Monic greatest common divisor (zero only when both inputs are zero).
Poly gcd(const Poly& a, const Poly& b);

enum class FieldOp { Add, Sub, Mul, Div };

/// An exact element of a FieldSpec.
///
/// Elements constructed from a bare integer carry no field yet; they adopt the field of the
/// other operand on first use. This lets dense matrix containers zero-initialize entries.
class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(long long c) : rep_(static_cast<std::int64_t>(c)) {}  // NOLINT: literal promotion
  FieldElement(const FieldSpec& k, std::int64_t c);

  /// u_i for rational kinds, the basis generator x for finite kinds.
  static FieldElement generator(const FieldSpec& k, std::uint32_t index = 0);
  static FieldElement from_coefficients(const FieldSpec& k, std::vector<std::uint32_t> coeffs);
  static FieldElement fraction(const FieldSpec& k, Poly num, Poly den);

  const std::optional<FieldSpec>& field() const { return field_; }
  bool is_zero() const;
  FieldElement inverse() const;

  /// Representation accessors; empty or zero when the kind does not match.
  std::uint32_t residue() const;
  std::vector<std::uint32_t> coefficients() const;
  const Poly& numerator() const;
  const Poly& denominator() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b);

  std::string to_string() const;

 private:
  friend FieldElement arith(const FieldElement& a, const FieldElement& b, FieldOp op);

  struct Fraction {
    Poly num;
    Poly den;
    friend bool operator==(const Fraction&, const Fraction&) = default;
  };
  using Rep = std::variant<std::int64_t, std::uint32_t, std::vector<std::uint32_t>, Fraction>;

  FieldElement(FieldSpec k, Rep rep) : field_(std::move(k)), rep_(std::move(rep)) {}
  FieldElement typed_as(const FieldSpec& k) const;
  static const FieldSpec& common_field(const FieldElement& a, const FieldElement& b);
  static Fraction canonical(const FieldSpec& k, Poly num, Poly den);

  std::optional<FieldSpec> field_;
  Rep rep_ = std::int64_t{0};
};

/// Exact arithmetic on two elements of the same field.
FieldElement arith(const FieldElement& a, const FieldElement& b, FieldOp op);

/// Basis of k over k^{p^e}: the monomials u^a with 0 <= a_i < p^e, or {1} for perfect k.
std::vector<FieldElement> frobenius_basis(const FieldSpec& k, int e);

}  // namespace frobent
