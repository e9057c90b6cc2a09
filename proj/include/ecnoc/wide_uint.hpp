#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ecnoc {

/// Fixed-width unsigned integer stored as N little-endian 64-bit limbs.
///
/// Doubles as a GF(2) polynomial (bit i = coefficient of z^i) for binary
/// fields. All arithmetic is modulo 2^(64N); callers that need carries use the
/// explicit add_with_carry / sub_with_borrow forms.
template <std::size_t N>
struct WideUint {
  static constexpr std::size_t kLimbs = N;
  static constexpr std::size_t kBits = 64 * N;

  std::array<std::uint64_t, N> limb{};

  constexpr WideUint() = default;
  constexpr explicit WideUint(std::uint64_t v) { limb[0] = v; }

  constexpr bool is_zero() const {
    for (auto w : limb)
      if (w != 0) return false;
    return true;
  }
  constexpr bool is_odd() const { return (limb[0] & 1u) != 0; }

  constexpr bool bit(std::size_t i) const {
    return i < kBits && ((limb[i / 64] >> (i % 64)) & 1u) != 0;
  }
  constexpr void set_bit(std::size_t i, bool v = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (v)
      limb[i / 64] |= mask;
    else
      limb[i / 64] &= ~mask;
  }

  /// Number of significant bits; 0 for zero.
  constexpr std::size_t bit_length() const {
    for (std::size_t i = N; i-- > 0;)
      if (limb[i] != 0) return 64 * i + (64 - std::countl_zero(limb[i]));
    return 0;
  }

  constexpr std::size_t popcount() const {
    std::size_t n = 0;
    for (auto w : limb) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

  /// Low 64 bits.
  constexpr std::uint64_t low() const { return limb[0]; }

  /// True when the value fits into a single 64-bit word.
  constexpr bool fits_u64() const {
    for (std::size_t i = 1; i < N; ++i)
      if (limb[i] != 0) return false;
    return true;
  }

  friend constexpr bool operator==(const WideUint&, const WideUint&) = default;

  friend constexpr std::strong_ordering operator<=>(const WideUint& a, const WideUint& b) {
    for (std::size_t i = N; i-- > 0;)
      if (a.limb[i] != b.limb[i]) return a.limb[i] <=> b.limb[i];
    return std::strong_ordering::equal;
  }

  friend constexpr WideUint operator^(WideUint a, const WideUint& b) {
    for (std::size_t i = 0; i < N; ++i) a.limb[i] ^= b.limb[i];
    return a;
  }
  constexpr WideUint& operator^=(const WideUint& b) {
    for (std::size_t i = 0; i < N; ++i) limb[i] ^= b.limb[i];
    return *this;
  }

  friend constexpr WideUint operator<<(const WideUint& a, std::size_t s) {
    WideUint r;
    if (s >= kBits) return r;
    const std::size_t words = s / 64, bits = s % 64;
    for (std::size_t i = N; i-- > words;) {
      std::uint64_t v = a.limb[i - words] << bits;
      if (bits != 0 && i > words) v |= a.limb[i - words - 1] >> (64 - bits);
      r.limb[i] = v;
    }
    return r;
  }

  friend constexpr WideUint operator>>(const WideUint& a, std::size_t s) {
    WideUint r;
    if (s >= kBits) return r;
    const std::size_t words = s / 64, bits = s % 64;
    for (std::size_t i = 0; i + words < N; ++i) {
      std::uint64_t v = a.limb[i + words] >> bits;
      if (bits != 0 && i + words + 1 < N) v |= a.limb[i + words + 1] << (64 - bits);
      r.limb[i] = v;
    }
    return r;
  }

  friend constexpr WideUint operator+(WideUint a, const WideUint& b) {
    add_with_carry(a, b);
    return a;
  }
  friend constexpr WideUint operator-(WideUint a, const WideUint& b) {
    sub_with_borrow(a, b);
    return a;
  }

  /// a += b; returns the carry out of the top limb.
  friend constexpr bool add_with_carry(WideUint& a, const WideUint& b) {
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < N; ++i) {
      const std::uint64_t s = a.limb[i] + b.limb[i];
      const std::uint64_t c1 = s < a.limb[i] ? 1 : 0;
      const std::uint64_t t = s + carry;
      const std::uint64_t c2 = t < s ? 1 : 0;
      a.limb[i] = t;
      carry = c1 | c2;
    }
    return carry != 0;
  }

  /// a -= b; returns the borrow out of the top limb.
  friend constexpr bool sub_with_borrow(WideUint& a, const WideUint& b) {
    std::uint64_t borrow = 0;
    for (std::size_t i = 0; i < N; ++i) {
      const std::uint64_t d = a.limb[i] - b.limb[i];
      const std::uint64_t b1 = a.limb[i] < b.limb[i] ? 1 : 0;
      const std::uint64_t t = d - borrow;
      const std::uint64_t b2 = d < borrow ? 1 : 0;
      a.limb[i] = t;
      borrow = b1 | b2;
    }
    return borrow != 0;
  }

  /// Lowercase big-endian hex without prefix; "0" for zero.
  std::string to_hex() const {
    static constexpr char kDigits[] = "0123456789abcdef";
    const std::size_t bits = bit_length();
    if (bits == 0) return "0";
    std::string out;
    for (std::size_t nib = (bits + 3) / 4; nib-- > 0;) {
      const unsigned d = static_cast<unsigned>((limb[nib / 16] >> (4 * (nib % 16))) & 0xfu);
      out.push_back(kDigits[d]);
    }
    return out;
  }

  std::string to_dec() const {
    if (is_zero()) return "0";
    std::string out;
    WideUint v = *this;
    while (!v.is_zero()) {
      // Divide by 10 limb-wise from the top.
      unsigned __int128 rem = 0;
      for (std::size_t i = N; i-- > 0;) {
        const unsigned __int128 cur = (rem << 64) | v.limb[i];
        v.limb[i] = static_cast<std::uint64_t>(cur / 10);
        rem = cur % 10;
      }
      out.push_back(static_cast<char>('0' + static_cast<int>(rem)));
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

  /// Parses hex digits (optional 0x prefix). Returns nullopt on a bad digit,
  /// empty input, or overflow.
  static std::optional<WideUint> from_hex(std::string_view s) {
    if (s.starts_with("0x") || s.starts_with("0X")) s.remove_prefix(2);
    if (s.empty()) return std::nullopt;
    WideUint r;
    for (char c : s) {
      unsigned d;
      if (c >= '0' && c <= '9')
        d = static_cast<unsigned>(c - '0');
      else if (c >= 'a' && c <= 'f')
        d = static_cast<unsigned>(c - 'a' + 10);
      else if (c >= 'A' && c <= 'F')
        d = static_cast<unsigned>(c - 'A' + 10);
      else
        return std::nullopt;
      if ((r.limb[N - 1] >> 60) != 0) return std::nullopt;
      r = r << 4;
      r.limb[0] |= d;
    }
    return r;
  }

  static std::optional<WideUint> from_dec(std::string_view s) {
    if (s.empty()) return std::nullopt;
    WideUint r;
    for (char c : s) {
      if (c < '0' || c > '9') return std::nullopt;
      // r = r * 10 + d with overflow detection.
      unsigned __int128 carry = static_cast<unsigned>(c - '0');
      for (std::size_t i = 0; i < N; ++i) {
        const unsigned __int128 cur = static_cast<unsigned __int128>(r.limb[i]) * 10 + carry;
        r.limb[i] = static_cast<std::uint64_t>(cur);
        carry = cur >> 64;
      }
      if (carry != 0) return std::nullopt;
    }
    return r;
  }
};

/// Zero-extends or truncates to M limbs.
template <std::size_t M, std::size_t N>
constexpr WideUint<M> resize(const WideUint<N>& a) {
  WideUint<M> r;
  for (std::size_t i = 0; i < std::min(M, N); ++i) r.limb[i] = a.limb[i];
  return r;
}

/// Full 2N-limb integer product.
template <std::size_t N>
constexpr WideUint<2 * N> mul_wide(const WideUint<N>& a, const WideUint<N>& b) {
  WideUint<2 * N> r;
  for (std::size_t i = 0; i < N; ++i) {
    unsigned __int128 carry = 0;
    for (std::size_t j = 0; j < N; ++j) {
      const unsigned __int128 cur =
          static_cast<unsigned __int128>(a.limb[i]) * b.limb[j] + r.limb[i + j] + carry;
      r.limb[i + j] = static_cast<std::uint64_t>(cur);
      carry = cur >> 64;
    }
    r.limb[i + N] = static_cast<std::uint64_t>(carry);
  }
  return r;
}

/// Carry-free (GF(2)[z]) product of two polynomials.
template <std::size_t N>
constexpr WideUint<2 * N> clmul_wide(const WideUint<N>& a, const WideUint<N>& b) {
  WideUint<2 * N> r;
  const WideUint<2 * N> wa = resize<2 * N>(a);
  const std::size_t bl = b.bit_length();
  for (std::size_t i = 0; i < bl; ++i)
    if (b.bit(i)) r ^= wa << i;
  return r;
}

using U256 = WideUint<4>;
using U512 = WideUint<8>;

}  // namespace ecnoc
