#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace rpmc {

/// A four-bit robust truth value b1b2b3b4.
///
/// The five canonical values 1111, 0111, 0011, 0001, 0000 form a chain; they
/// are exactly the vectors with nondecreasing bits. Other vectors can be
/// produced by probability operators with a comparison in {<, <=, =}; they are
/// represented as-is and reported through canonical().
///
/// The order is bitwise dominance, which coincides with the chain order on
/// canonical values.
class TruthValue {
 public:
  constexpr TruthValue() = default;

  static constexpr TruthValue from_bits(bool b1, bool b2, bool b3, bool b4) {
    return TruthValue(static_cast<std::uint8_t>((b1 ? 8 : 0) | (b2 ? 4 : 0) | (b3 ? 2 : 0) | (b4 ? 1 : 0)));
  }

  /// Mask with b1 as the most significant of the low four bits.
  static constexpr TruthValue from_mask(std::uint8_t mask) { return TruthValue(mask & 0xF); }

  /// Accepts exactly four '0'/'1' characters.
  static std::optional<TruthValue> parse(std::string_view text);

  /// t[k] for k in 1..4.
  constexpr bool bit(int k) const { return ((mask_ >> (4 - k)) & 1) != 0; }

  constexpr std::uint8_t mask() const { return mask_; }

  constexpr bool canonical() const {
    return mask_ == 0x0 || mask_ == 0x1 || mask_ == 0x3 || mask_ == 0x7 || mask_ == 0xF;
  }

  std::string to_string() const;

  friend constexpr bool operator==(TruthValue, TruthValue) = default;

 private:
  constexpr explicit TruthValue(std::uint8_t mask) : mask_(mask) {}

  std::uint8_t mask_ = 0;
};

inline constexpr TruthValue kTrue1111 = TruthValue::from_mask(0xF);
inline constexpr TruthValue kTrue0111 = TruthValue::from_mask(0x7);
inline constexpr TruthValue kTrue0011 = TruthValue::from_mask(0x3);
inline constexpr TruthValue kTrue0001 = TruthValue::from_mask(0x1);
inline constexpr TruthValue kFalse0000 = TruthValue::from_mask(0x0);

/// Canonical values from the top of the chain downwards.
inline constexpr std::array<TruthValue, 5> kChain = {kTrue1111, kTrue0111, kTrue0011, kTrue0001, kFalse0000};

/// The four levels above 0000; level k (1-based) is the least canonical value
/// whose k-th bit is set.
inline constexpr std::array<TruthValue, 4> kLevels = {kTrue1111, kTrue0111, kTrue0011, kTrue0001};

constexpr bool leq(TruthValue a, TruthValue b) { return (a.mask() & ~b.mask() & 0xF) == 0; }

constexpr TruthValue meet(TruthValue a, TruthValue b) { return TruthValue::from_mask(a.mask() & b.mask()); }

constexpr TruthValue join(TruthValue a, TruthValue b) { return TruthValue::from_mask(a.mask() | b.mask()); }

constexpr TruthValue robust_not(TruthValue a) { return a == kTrue1111 ? kFalse0000 : kTrue1111; }

constexpr TruthValue robust_implies(TruthValue a, TruthValue b) { return leq(a, b) ? kTrue1111 : b; }

/// Index of a canonical level in kChain (0 for 1111, 4 for 0000).
std::size_t chain_index(TruthValue canonical_value);

}  // namespace rpmc
