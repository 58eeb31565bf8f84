#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace fermatlab {

/// A partial-derivative operator d^k / dz_{i1} ... dz_{ik}, stored as its
/// letters i1 <= ... <= ik over the alphabet {1, ..., p}. The empty word is
/// the identity. Ordered by (length, lexicographic).
class DiffWord {
 public:
  DiffWord() = default;
  /// Letters are 1-based and sorted on construction.
  explicit DiffWord(std::vector<int> letters);
  /// "" or "e" is the identity; otherwise a string of digits "1", "12", "113".
  static DiffWord parse(std::string_view text);

  const std::vector<int>& letters() const noexcept { return letters_; }
  int order() const noexcept { return static_cast<int>(letters_.size()); }
  bool is_identity() const noexcept { return letters_.empty(); }
  int max_letter() const noexcept { return letters_.empty() ? 0 : letters_.back(); }

  /// Exponent vector (alpha_1, ..., alpha_p) of the operator.
  std::vector<int> exponent(int nvars) const;
  DiffWord extended(int letter) const;
  /// Words obtained by deleting one letter, deduplicated.
  std::vector<DiffWord> immediate_subwords() const;

  /// "e" for the identity, else the digit string.
  std::string to_string() const;

  friend bool operator==(const DiffWord&, const DiffWord&) = default;
  friend std::strong_ordering operator<=>(const DiffWord& a, const DiffWord& b);

 private:
  std::vector<int> letters_;
};

}  // namespace fermatlab
