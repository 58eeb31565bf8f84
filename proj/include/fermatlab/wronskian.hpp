#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fermatlab/diff_word.hpp"
#include "fermatlab/linalg.hpp"
#include "fermatlab/multipoly.hpp"
#include "fermatlab/projective_map.hpp"

namespace fermatlab::wronskian {

enum class FamilyKind { admissible, full };

/// Ordered list of distinct derivative words indexing the rows of a
/// generalized Wronskian.
class OperatorFamily {
 public:
  /// Row s must have order <= s, row 0 must be the identity.
  static OperatorFamily admissible(std::vector<DiffWord> words);
  /// Subword-closed word set; stored sorted by (length, lex).
  static OperatorFamily full(std::vector<DiffWord> words);
  /// Words separated by spaces, e.g. "e 1 2 12".
  static OperatorFamily parse_full(const std::string& text);

  const std::vector<DiffWord>& words() const noexcept { return words_; }
  std::size_t size() const noexcept { return words_.size(); }
  FamilyKind kind() const noexcept { return kind_; }
  int total_order() const;
  /// Number of words of the given order.
  int count_of_order(int order) const;
  bool satisfies_admissible_bound() const;
  std::string to_string() const;

  friend bool operator==(const OperatorFamily& a, const OperatorFamily& b) { return a.words_ == b.words_; }

 private:
  OperatorFamily(std::vector<DiffWord> words, FamilyKind kind) : words_(std::move(words)), kind_(kind) {}
  std::vector<DiffWord> words_;
  FamilyKind kind_;
};

bool is_subword_closed(std::span<const DiffWord> words);

inline constexpr std::size_t kDefaultEnumerationBudget = 10'000;

/// Every subword-closed set of exactly `size` words over {1..p}, ordered by
/// total order and then lexicographically by word list. Throws BudgetError
/// past `budget` families.
std::vector<OperatorFamily> enumerate_full_sets(int p, int size, std::size_t budget = kDefaultEnumerationBudget);

struct WronskianResult {
  MultiPoly value;
  OperatorFamily family;
  bool vanished;
};

/// Matrix with entry (s, j) = Delta^{word_s}(f_j).
PolyMatrix wronskian_matrix(const OperatorFamily& family, std::span<const MultiPoly> fs);
WronskianResult generalized_wronskian(const OperatorFamily& family, std::span<const MultiPoly> fs);

/// Rank of the coefficient matrix (rows: monomials, columns: functions).
struct CoefficientOracle {
  bool independent;
  std::vector<CycloNumber> kernel_vector;  // empty when independent
};
CoefficientOracle coefficient_rank_oracle(std::span<const MultiPoly> fs);

struct IndependenceOptions {
  std::size_t budget = kDefaultEnumerationBudget;
  std::uint64_t seed = 0x3a11'0c8eULL;
};

struct IndependenceVerdict {
  bool independent;
  /// Full set with nonvanishing Wronskian, present iff independent.
  std::optional<OperatorFamily> witness;
  /// Nonzero c with sum c_i f_i = 0, present iff dependent.
  std::vector<CycloNumber> kernel_vector;
  /// Number of full sets whose Wronskian was examined.
  std::size_t families_examined = 0;
};

/// Decides linear independence over C by searching geometric generalized
/// Wronskians and cross-checks the verdict against the coefficient-matrix
/// rank. Throws InconsistencyError if the two disagree.
IndependenceVerdict is_linearly_independent(std::span<const MultiPoly> fs, const IndependenceOptions& options = {});

/// Admissible (full) family containing at least generic_rank(f) order-1
/// operators whose Wronskian of the components does not vanish.
OperatorFamily first_order_witness(const ProjectiveMap& f, std::size_t budget = kDefaultEnumerationBudget);

}  // namespace fermatlab::wronskian
