#pragma once

#include <cstddef>
#include <vector>

namespace gml {

// Visits every size-k combination of `pool` in lexicographic order. The
// visitor receives the chosen elements and may return false to stop early;
// the function returns false iff it was stopped.
template <typename Fn>
bool for_each_combination(const std::vector<int>& pool, std::size_t k, Fn&& fn) {
  if (k > pool.size()) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<int> chosen(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) chosen[i] = pool[idx[i]];
    if (!fn(static_cast<const std::vector<int>&>(chosen))) return false;
    bool advanced = false;
    for (std::size_t i = k; i-- > 0;) {
      if (idx[i] != i + pool.size() - k) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        advanced = true;
        break;
      }
    }
    if (!advanced) return true;
  }
}

}  // namespace gml
