#include "fermatlab/diff_word.hpp"

#include <algorithm>
#include <cctype>

#include "fermatlab/errors.hpp"

namespace fermatlab {

DiffWord::DiffWord(std::vector<int> letters) : letters_(std::move(letters)) {
  for (int l : letters_)
    if (l < 1) throw PreconditionError("derivative letters are 1-based");
  std::sort(letters_.begin(), letters_.end());
}

DiffWord DiffWord::parse(std::string_view text) {
  if (text.empty() || text == "e") return {};
  std::vector<int> letters;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (!std::isdigit(static_cast<unsigned char>(ch)) || ch == '0')
      throw ParseError("invalid derivative letter", 1, i + 1, std::string(1, ch));
    letters.push_back(ch - '0');
  }
  return DiffWord(std::move(letters));
}

std::vector<int> DiffWord::exponent(int nvars) const {
  std::vector<int> e(static_cast<std::size_t>(nvars), 0);
  for (int l : letters_) {
    if (l > nvars) throw PreconditionError("derivative letter " + std::to_string(l) + " exceeds p");
    ++e[static_cast<std::size_t>(l - 1)];
  }
  return e;
}

DiffWord DiffWord::extended(int letter) const {
  std::vector<int> next = letters_;
  next.push_back(letter);
  return DiffWord(std::move(next));
}

std::vector<DiffWord> DiffWord::immediate_subwords() const {
  std::vector<DiffWord> out;
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (i > 0 && letters_[i] == letters_[i - 1]) continue;
    std::vector<int> sub = letters_;
    sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(i));
    out.emplace_back(std::move(sub));
  }
  return out;
}

std::string DiffWord::to_string() const {
  if (letters_.empty()) return "e";
  std::string s;
  for (int l : letters_) s += std::to_string(l);
  return s;
}

std::strong_ordering operator<=>(const DiffWord& a, const DiffWord& b) {
  if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
  return a.letters_ <=> b.letters_;
}

}  // namespace fermatlab
