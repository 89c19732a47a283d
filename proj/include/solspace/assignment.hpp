#ifndef SOLSPACE_ASSIGNMENT_HPP
#define SOLSPACE_ASSIGNMENT_HPP

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace solspace {

// A point of {0,1}^n, packed 64 coordinates per word. Coordinate i
// (0-based) corresponds to variable i+1 of a formula.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(int n) : n_(n), words_((n + 63) / 64, 0) {}

  static Assignment from_word(int n, uint64_t bits);
  static Assignment from_string(const std::string& bits);  // "0110..."

  int size() const { return n_; }

  bool get(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  void set(int i, bool v) {
    uint64_t m = 1ull << (i & 63);
    if (v)
      words_[i >> 6] |= m;
    else
      words_[i >> 6] &= ~m;
  }

  void flip(int i) { words_[i >> 6] ^= 1ull << (i & 63); }

  int hamming(const Assignment& other) const {
    int d = 0;
    for (size_t w = 0; w < words_.size(); ++w)
      d += std::popcount(words_[w] ^ other.words_[w]);
    return d;
  }

  int popcount() const {
    int c = 0;
    for (uint64_t w : words_) c += std::popcount(w);
    return c;
  }

  Assignment operator^(const Assignment& other) const {
    Assignment r(n_);
    for (size_t w = 0; w < words_.size(); ++w)
      r.words_[w] = words_[w] ^ other.words_[w];
    return r;
  }

  bool operator==(const Assignment& other) const {
    return n_ == other.n_ && words_ == other.words_;
  }

  // Value order: the n-bit integer with variable n as most significant bit.
  bool operator<(const Assignment& other) const {
    if (n_ != other.n_) return n_ < other.n_;
    for (size_t w = words_.size(); w-- > 0;)
      if (words_[w] != other.words_[w]) return words_[w] < other.words_[w];
    return false;
  }

  uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

  const std::vector<uint64_t>& words() const { return words_; }

  std::string to_string() const;

 private:
  int n_ = 0;
  std::vector<uint64_t> words_;
};

struct AssignmentHash {
  size_t operator()(const Assignment& a) const {
    uint64_t h = 0x2545f4914f6cdd1dull ^ static_cast<uint64_t>(a.size());
    for (uint64_t w : a.words()) {
      h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return static_cast<size_t>(h);
  }
};

}  // namespace solspace

#endif
