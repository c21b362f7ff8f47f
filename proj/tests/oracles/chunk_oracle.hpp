#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace oracle {

// Reference sliding-window enumeration: every window [s, s+size) clipped to
// n, for s = 0, stride, 2*stride, ... as long as the previous window did
// not already reach n. Written as a plain scan over candidate starts rather
// than the chunker's loop.
inline std::vector<std::pair<std::size_t, std::size_t>> windows(std::size_t n, std::size_t size,
                                                                 std::size_t overlap) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  if (n == 0) return out;
  const std::size_t stride = size - overlap;
  for (std::size_t s = 0; s < n; ++s) {
    if (s % stride != 0) continue;
    if (s > 0 && (s - stride) + size >= n) break;
    out.emplace_back(s, s + size < n ? s + size : n);
  }
  return out;
}

}  // namespace oracle
