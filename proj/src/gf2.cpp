#include "solspace/gf2.hpp"

#include <bit>

namespace solspace {

long BitMatrix::first_set(size_t r) const {
  const uint64_t* row = &words_[r * words_per_row_];
  for (size_t w = 0; w < words_per_row_; ++w) {
    if (row[w]) return static_cast<long>(w * 64 + std::countr_zero(row[w]));
  }
  return -1;
}

size_t BitMatrix::rank_destructive() {
  // pivot_of[c] = row holding the pivot whose leading bit is column c
  std::vector<long> pivot_of(cols_, -1);
  size_t rank = 0;
  for (size_t r = 0; r < rows_; ++r) {
    long lead = first_set(r);
    while (lead >= 0 && pivot_of[lead] >= 0) {
      xor_row_into(static_cast<size_t>(pivot_of[lead]), r);
      lead = first_set(r);
    }
    if (lead >= 0) {
      pivot_of[lead] = static_cast<long>(r);
      ++rank;
    }
  }
  return rank;
}

size_t gf2_rank(BitMatrix m) { return m.rank_destructive(); }

}  // namespace solspace
