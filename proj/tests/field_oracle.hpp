#pragma once

// Reference GF(2^8) arithmetic for tests: schoolbook polynomial product into
// 15 bits followed by long division by 0x11B. Shares no code with the library.

#include <cstdint>
#include <vector>

namespace oracle {

inline std::uint8_t mul(std::uint8_t x, std::uint8_t y) {
  std::uint16_t prod = 0;
  for (int i = 0; i < 8; ++i) {
    if ((y >> i) & 1) prod ^= static_cast<std::uint16_t>(x) << i;
  }
  for (int bit = 14; bit >= 8; --bit) {
    if ((prod >> bit) & 1) prod ^= static_cast<std::uint16_t>(0x11B << (bit - 8));
  }
  return static_cast<std::uint8_t>(prod);
}

inline std::uint8_t inv(std::uint8_t x) {
  for (int c = 1; c < 256; ++c) {
    if (mul(x, static_cast<std::uint8_t>(c)) == 1) return static_cast<std::uint8_t>(c);
  }
  return 0;
}

// Naive rank: forward elimination on a vector-of-rows copy.
inline std::size_t rank(std::vector<std::vector<std::uint8_t>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    const auto pinv = inv(m[r][c]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const auto f = mul(m[i][c], pinv);
      for (std::size_t k = 0; k < cols; ++k) m[i][k] ^= mul(f, m[r][k]);
    }
    ++r;
  }
  return r;
}

}  // namespace oracle
