#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>

#include "ecnoc/error.hpp"
#include "ecnoc/wide_uint.hpp"

namespace ecnoc {

enum class FieldKind { Prime, Binary };

std::string_view to_string(FieldKind kind);

class FieldSpec;
using FieldPtr = std::shared_ptr<const FieldSpec>;

/// Descriptor of GF(p) or GF(2^m) in polynomial basis.
///
/// Parameters are validated at construction: p must be a prime > 3, and a
/// binary reduction polynomial must have degree m >= 2, constant term 1 and be
/// irreducible over GF(2). Instances are immutable and shared by every element
/// of the field.
class FieldSpec {
 public:
  /// Largest supported binary degree; f(z) must fit in four limbs.
  static constexpr unsigned kMaxDegree = 255;

  static FieldPtr prime(const U256& p);
  static FieldPtr binary(unsigned degree, const U256& reduction_poly);

  FieldKind kind() const { return kind_; }
  bool is_prime() const { return kind_ == FieldKind::Prime; }
  bool is_binary() const { return kind_ == FieldKind::Binary; }

  /// Prime kind: p. Zero for binary fields.
  const U256& modulus() const { return modulus_; }
  /// Binary kind: m. Zero for prime fields.
  unsigned degree() const { return degree_; }
  /// Binary kind: f(z), bit i = coefficient of z^i.
  const U256& reduction_poly() const { return poly_; }

  /// Bits needed to hold a canonical element: bitlen(p - 1) or m.
  std::size_t element_bits() const { return element_bits_; }
  /// 64-bit limbs actually used by elements of this field.
  std::size_t limbs() const { return (element_bits_ + 63) / 64; }

  /// Number of field elements when it fits in 64 bits.
  std::uint64_t order_u64() const;

  /// True when v is a canonical representative.
  bool contains(const U256& v) const;

  /// Short human description, e.g. "GF(0x11)" or "GF(2^4) mod 13".
  std::string describe() const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind_ == b.kind_ && a.modulus_ == b.modulus_ && a.degree_ == b.degree_ &&
           a.poly_ == b.poly_;
  }

 private:
  FieldSpec() = default;

  FieldKind kind_ = FieldKind::Prime;
  U256 modulus_;
  unsigned degree_ = 0;
  U256 poly_;
  std::size_t element_bits_ = 0;
};

bool same_field(const FieldSpec& a, const FieldSpec& b);
bool same_field(const FieldPtr& a, const FieldPtr& b);

/// Canonical element of a FieldSpec.
class FieldElement {
 public:
  /// Throws InvalidParameter when v is not already canonical.
  FieldElement(FieldPtr field, const U256& v);

  static FieldElement zero(FieldPtr field) { return FieldElement(std::move(field), U256{}); }
  static FieldElement one(FieldPtr field) { return FieldElement(std::move(field), U256{1}); }
  /// Reduces an arbitrary integer (prime kind) or polynomial (binary kind).
  static FieldElement reduce(FieldPtr field, const U256& v);
  static FieldElement from_u64(FieldPtr field, std::uint64_t v) {
    return reduce(std::move(field), U256{v});
  }

  const FieldPtr& field() const { return field_; }
  const FieldSpec& spec() const { return *field_; }
  const U256& value() const { return value_; }

  bool is_zero() const { return value_.is_zero(); }
  bool is_one() const { return value_ == U256{1}; }

  std::string to_hex() const { return value_.to_hex(); }

  /// Throws FieldMismatch when the fields differ.
  friend bool operator==(const FieldElement& a, const FieldElement& b);

 private:
  struct Trusted {};
  FieldElement(FieldPtr field, const U256& v, Trusted) : field_(std::move(field)), value_(v) {}

  friend FieldElement ff_add(const FieldElement&, const FieldElement&);
  friend FieldElement ff_sub(const FieldElement&, const FieldElement&);
  friend FieldElement ff_mul(const FieldElement&, const FieldElement&);
  friend FieldElement ff_sqr(const FieldElement&);
  friend FieldElement ff_inv(const FieldElement&);
  friend FieldElement ff_neg(const FieldElement&);

  FieldPtr field_;
  U256 value_;
};

FieldElement ff_add(const FieldElement& a, const FieldElement& b);
FieldElement ff_sub(const FieldElement& a, const FieldElement& b);
FieldElement ff_mul(const FieldElement& a, const FieldElement& b);
FieldElement ff_sqr(const FieldElement& a);
/// Extended Euclid over Z (prime) or GF(2)[z] (binary). Throws DivisionByZero.
FieldElement ff_inv(const FieldElement& a);
FieldElement ff_neg(const FieldElement& a);

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return ff_add(a, b); }
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return ff_sub(a, b); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return ff_mul(a, b); }
inline FieldElement operator-(const FieldElement& a) { return ff_neg(a); }

// Number-theoretic helpers used by FieldSpec validation.

/// Miller-Rabin; deterministic for n < 3.3e24, probabilistic (error < 4^-25) above.
bool is_probable_prime(const U256& n);

/// Rabin's irreducibility test for a GF(2)[z] polynomial of degree >= 1.
bool is_irreducible_gf2(const U256& f);

/// Degree of a GF(2)[z] polynomial; -1 for the zero polynomial.
int poly_degree(const U256& f);

}  // namespace ecnoc
