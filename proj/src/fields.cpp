#include "ecnoc/fields.hpp"

#include <array>
#include <utility>

namespace ecnoc {

namespace {

// ---- GF(p) integer helpers ----

// Reduces a wide value modulo p by binary long division.
template <std::size_t N>
U256 mod_p(const WideUint<N>& v, const U256& p) {
  U256 r;
  for (std::size_t i = v.bit_length(); i-- > 0;) {
    const bool top = r.bit(255);
    r = r << 1;
    if (v.bit(i)) r.limb[0] |= 1u;
    if (top || r >= p) r = r - p;
  }
  return r;
}

U256 add_mod(const U256& a, const U256& b, const U256& p) {
  U256 s = a;
  const bool carry = add_with_carry(s, b);
  if (carry || s >= p) s = s - p;
  return s;
}

U256 sub_mod(const U256& a, const U256& b, const U256& p) {
  U256 d = a;
  if (sub_with_borrow(d, b)) d = d + p;
  return d;
}

U256 mul_mod(const U256& a, const U256& b, const U256& p) {
  if (p.fits_u64()) {
    const unsigned __int128 prod = static_cast<unsigned __int128>(a.low()) * b.low();
    return U256{static_cast<std::uint64_t>(prod % p.low())};
  }
  return mod_p(mul_wide(a, b), p);
}

U256 pow_mod(U256 base, const U256& e, const U256& p) {
  U256 r{1};
  const std::size_t bl = e.bit_length();
  for (std::size_t i = bl; i-- > 0;) {
    r = mul_mod(r, r, p);
    if (e.bit(i)) r = mul_mod(r, base, p);
  }
  return r;
}

// Quotient and remainder of a / b, b != 0.
std::pair<U256, U256> divmod(const U256& a, const U256& b) {
  U256 q, r;
  for (std::size_t i = a.bit_length(); i-- > 0;) {
    const bool top = r.bit(255);
    r = r << 1;
    if (a.bit(i)) r.limb[0] |= 1u;
    if (top || r >= b) {
      r = r - b;
      q.set_bit(i);
    }
  }
  return {q, r};
}

// Classical extended Euclid on (p, a); returns a^-1 mod p.
U256 inv_mod(const U256& a, const U256& p) {
  U256 r0 = p, r1 = a;
  U256 t0{0}, t1{1};
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = r1;
    r1 = r;
    const U256 t = sub_mod(t0, mul_mod(q, t1, p), p);
    t0 = t1;
    t1 = t;
  }
  return t0;
}

// ---- GF(2)[z] helpers ----

template <std::size_t N>
int degree_of(const WideUint<N>& f) {
  return static_cast<int>(f.bit_length()) - 1;
}

// Reduces a polynomial modulo f of degree m.
template <std::size_t N>
U256 mod_f(WideUint<N> v, const U256& f, unsigned m) {
  const WideUint<N> wf = resize<N>(f);
  for (int d = degree_of(v); d >= static_cast<int>(m); d = degree_of(v))
    v ^= wf << static_cast<std::size_t>(d - static_cast<int>(m));
  return resize<4>(v);
}

U256 mul_f(const U256& a, const U256& b, const U256& f, unsigned m) {
  return mod_f(clmul_wide(a, b), f, m);
}

U256 sqr_f(const U256& a, const U256& f, unsigned m) {
  // Squaring in characteristic 2 spreads bit i to bit 2i.
  U512 s;
  const std::size_t bl = a.bit_length();
  for (std::size_t i = 0; i < bl; ++i)
    if (a.bit(i)) s.set_bit(2 * i);
  return mod_f(s, f, m);
}

U256 gcd_gf2(U256 a, U256 b) {
  while (!b.is_zero()) {
    // a mod b
    const int db = degree_of(b);
    for (int da = degree_of(a); da >= db; da = degree_of(a))
      a ^= b << static_cast<std::size_t>(da - db);
    std::swap(a, b);
  }
  return a;
}

// Extended Euclid over GF(2)[z]: returns a^-1 mod f.
U256 inv_f(const U256& a, const U256& f) {
  U256 u = a, v = f;
  U256 g1{1}, g2{0};
  const U256 one{1};
  while (u != one) {
    int j = degree_of(u) - degree_of(v);
    if (j < 0) {
      std::swap(u, v);
      std::swap(g1, g2);
      j = -j;
    }
    u ^= v << static_cast<std::size_t>(j);
    g1 ^= g2 << static_cast<std::size_t>(j);
  }
  return g1;
}

void require_same(const FieldElement& a, const FieldElement& b) {
  if (!same_field(a.field(), b.field()))
    throw Error(ErrorCode::FieldMismatch,
                "operands from " + a.spec().describe() + " and " + b.spec().describe());
}

}  // namespace

std::string_view to_string(FieldKind kind) {
  return kind == FieldKind::Prime ? "prime" : "binary";
}

// ---- number theory ----

bool is_probable_prime(const U256& n) {
  static constexpr std::array<std::uint64_t, 25> kBases = {
      2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  if (n < U256{2}) return false;
  for (auto b : kBases) {
    if (n == U256{b}) return true;
    if (divmod(n, U256{b}).second.is_zero()) return false;
  }
  const U256 n1 = n - U256{1};
  std::size_t s = 0;
  while (!n1.bit(s)) ++s;
  const U256 d = n1 >> s;
  // First 12 bases are deterministic below 3.317e24 (~81.4 bits).
  const std::size_t rounds = n.bit_length() <= 81 ? 12 : kBases.size();
  for (std::size_t i = 0; i < rounds; ++i) {
    U256 x = pow_mod(U256{kBases[i]}, d, n);
    if (x == U256{1} || x == n1) continue;
    bool composite = true;
    for (std::size_t r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int poly_degree(const U256& f) { return degree_of(f); }

bool is_irreducible_gf2(const U256& f) {
  const int deg = degree_of(f);
  if (deg < 1) return false;
  const auto m = static_cast<unsigned>(deg);
  if (m == 1) return true;
  const U256 z{2};
  // h = z^(2^i) mod f for i = 1..m; f is irreducible iff
  // gcd(h_i - z, f) = 1 for every i <= m/2 and h_m = z.
  U256 h = z;
  for (unsigned i = 1; i <= m; ++i) {
    h = sqr_f(h, f, m);
    if (i <= m / 2) {
      if (gcd_gf2(f, h ^ z) != U256{1}) return false;
    }
  }
  return h == z;
}

// ---- FieldSpec ----

FieldPtr FieldSpec::prime(const U256& p) {
  if (p <= U256{3})
    throw Error(ErrorCode::InvalidParameter, "prime modulus must exceed 3, got 0x" + p.to_hex());
  if (!is_probable_prime(p))
    throw Error(ErrorCode::InvalidParameter, "modulus 0x" + p.to_hex() + " is not prime");
  auto spec = std::shared_ptr<FieldSpec>(new FieldSpec());
  spec->kind_ = FieldKind::Prime;
  spec->modulus_ = p;
  spec->element_bits_ = (p - U256{1}).bit_length();
  return spec;
}

FieldPtr FieldSpec::binary(unsigned degree, const U256& reduction_poly) {
  if (degree < 2 || degree > kMaxDegree)
    throw Error(ErrorCode::InvalidParameter,
                "binary degree must be in [2, 255], got " + std::to_string(degree));
  if (poly_degree(reduction_poly) != static_cast<int>(degree))
    throw Error(ErrorCode::InvalidParameter, "reduction polynomial 0x" + reduction_poly.to_hex() +
                                                 " does not have degree " + std::to_string(degree));
  if (!reduction_poly.is_odd())
    throw Error(ErrorCode::InvalidParameter,
                "reduction polynomial 0x" + reduction_poly.to_hex() + " has zero constant term");
  if (!is_irreducible_gf2(reduction_poly))
    throw Error(ErrorCode::InvalidParameter,
                "reduction polynomial 0x" + reduction_poly.to_hex() + " is reducible");
  auto spec = std::shared_ptr<FieldSpec>(new FieldSpec());
  spec->kind_ = FieldKind::Binary;
  spec->degree_ = degree;
  spec->poly_ = reduction_poly;
  spec->element_bits_ = degree;
  return spec;
}

std::uint64_t FieldSpec::order_u64() const {
  if (is_prime()) {
    if (!modulus_.fits_u64()) throw Error(ErrorCode::InvalidParameter, "field order exceeds 64 bits");
    return modulus_.low();
  }
  if (degree_ >= 64) throw Error(ErrorCode::InvalidParameter, "field order exceeds 64 bits");
  return std::uint64_t{1} << degree_;
}

bool FieldSpec::contains(const U256& v) const {
  if (is_prime()) return v < modulus_;
  return v.bit_length() <= degree_;
}

std::string FieldSpec::describe() const {
  if (is_prime()) return "GF(0x" + modulus_.to_hex() + ")";
  return "GF(2^" + std::to_string(degree_) + ") mod 0x" + poly_.to_hex();
}

bool same_field(const FieldSpec& a, const FieldSpec& b) { return &a == &b || a == b; }

bool same_field(const FieldPtr& a, const FieldPtr& b) {
  return a == b || (a && b && *a == *b);
}

// ---- FieldElement ----

FieldElement::FieldElement(FieldPtr field, const U256& v) : field_(std::move(field)), value_(v) {
  if (!field_) throw Error(ErrorCode::InvalidParameter, "null field");
  if (!field_->contains(v))
    throw Error(ErrorCode::InvalidParameter,
                "0x" + v.to_hex() + " is not a canonical element of " + field_->describe());
}

FieldElement FieldElement::reduce(FieldPtr field, const U256& v) {
  if (!field) throw Error(ErrorCode::InvalidParameter, "null field");
  U256 r = field->is_prime() ? mod_p(v, field->modulus())
                             : mod_f(v, field->reduction_poly(), field->degree());
  return FieldElement(std::move(field), r, Trusted{});
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  return a.value_ == b.value_;
}

FieldElement ff_add(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  const FieldSpec& f = a.spec();
  U256 r = f.is_prime() ? add_mod(a.value_, b.value_, f.modulus()) : a.value_ ^ b.value_;
  return FieldElement(a.field_, r, FieldElement::Trusted{});
}

FieldElement ff_sub(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  const FieldSpec& f = a.spec();
  U256 r = f.is_prime() ? sub_mod(a.value_, b.value_, f.modulus()) : a.value_ ^ b.value_;
  return FieldElement(a.field_, r, FieldElement::Trusted{});
}

FieldElement ff_mul(const FieldElement& a, const FieldElement& b) {
  require_same(a, b);
  const FieldSpec& f = a.spec();
  U256 r = f.is_prime() ? mul_mod(a.value_, b.value_, f.modulus())
                        : mul_f(a.value_, b.value_, f.reduction_poly(), f.degree());
  return FieldElement(a.field_, r, FieldElement::Trusted{});
}

FieldElement ff_sqr(const FieldElement& a) {
  const FieldSpec& f = a.spec();
  U256 r = f.is_prime() ? mul_mod(a.value_, a.value_, f.modulus())
                        : sqr_f(a.value_, f.reduction_poly(), f.degree());
  return FieldElement(a.field_, r, FieldElement::Trusted{});
}

FieldElement ff_inv(const FieldElement& a) {
  if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero in " + a.spec().describe());
  const FieldSpec& f = a.spec();
  U256 r = f.is_prime() ? inv_mod(a.value_, f.modulus()) : inv_f(a.value_, f.reduction_poly());
  return FieldElement(a.field_, r, FieldElement::Trusted{});
}

FieldElement ff_neg(const FieldElement& a) {
  const FieldSpec& f = a.spec();
  if (f.is_binary() || a.is_zero()) return a;
  return FieldElement(a.field_, f.modulus() - a.value_, FieldElement::Trusted{});
}

}  // namespace ecnoc
