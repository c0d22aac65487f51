#include "rpmc/truth_value.hpp"

#include <stdexcept>

namespace rpmc {

std::optional<TruthValue> TruthValue::parse(std::string_view text) {
  if (text.size() != 4) {
    return std::nullopt;
  }
  std::uint8_t mask = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      return std::nullopt;
    }
    mask = static_cast<std::uint8_t>((mask << 1) | (c == '1' ? 1 : 0));
  }
  return from_mask(mask);
}

std::string TruthValue::to_string() const {
  std::string out(4, '0');
  for (int k = 1; k <= 4; ++k) {
    out[k - 1] = bit(k) ? '1' : '0';
  }
  return out;
}

std::size_t chain_index(TruthValue canonical_value) {
  for (std::size_t i = 0; i < kChain.size(); ++i) {
    if (kChain[i] == canonical_value) {
      return i;
    }
  }
  throw std::invalid_argument("truth value " + canonical_value.to_string() + " is not canonical");
}

}  // namespace rpmc
