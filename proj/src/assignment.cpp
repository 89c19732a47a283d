#include "solspace/assignment.hpp"

#include "solspace/errors.hpp"

namespace solspace {

Assignment Assignment::from_word(int n, uint64_t bits) {
  Assignment a(n);
  if (n > 0) a.words_[0] = (n >= 64) ? bits : (bits & ((1ull << n) - 1));
  return a;
}

Assignment Assignment::from_string(const std::string& bits) {
  Assignment a(static_cast<int>(bits.size()));
  for (size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != '0' && bits[i] != '1')
      throw InvalidParameter("assignment string must be 0/1");
    a.set(static_cast<int>(i), bits[i] == '1');
  }
  return a;
}

std::string Assignment::to_string() const {
  std::string s(n_, '0');
  for (int i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

}  // namespace solspace
