#ifndef SOLSPACE_GF2_HPP
#define SOLSPACE_GF2_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace solspace {

// Row-major bit matrix over GF(2), 64 columns per word.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(size_t rows, size_t cols)
      : rows_(rows),
        cols_(cols),
        words_per_row_((cols + 63) / 64),
        words_(rows * words_per_row_, 0) {}

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  void set(size_t r, size_t c) {
    words_[r * words_per_row_ + (c >> 6)] |= 1ull << (c & 63);
  }

  bool get(size_t r, size_t c) const {
    return (words_[r * words_per_row_ + (c >> 6)] >> (c & 63)) & 1;
  }

  void xor_row_into(size_t src, size_t dst) {
    const uint64_t* s = &words_[src * words_per_row_];
    uint64_t* d = &words_[dst * words_per_row_];
    for (size_t w = 0; w < words_per_row_; ++w) d[w] ^= s[w];
  }

  // Column index of the first set bit in row r, or -1 if the row is zero.
  long first_set(size_t r) const;

  // Rank by Gaussian elimination; destroys the matrix contents.
  size_t rank_destructive();

 private:
  size_t rows_ = 0;
  size_t cols_ = 0;
  size_t words_per_row_ = 0;
  std::vector<uint64_t> words_;
};

// Convenience: rank of a copy.
size_t gf2_rank(BitMatrix m);

}  // namespace solspace

#endif
