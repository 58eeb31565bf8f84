#include "fermatlab/wronskian.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "fermatlab/errors.hpp"
#include "fermatlab/linalg.hpp"

namespace fermatlab::wronskian {

OperatorFamily OperatorFamily::admissible(std::vector<DiffWord> words) {
  if (words.empty()) throw PreconditionError("operator family must be nonempty");
  if (!words.front().is_identity()) throw PreconditionError("row 0 of an admissible family must be the identity");
  std::set<DiffWord> seen(words.begin(), words.end());
  if (seen.size() != words.size()) throw PreconditionError("operator family has repeated words");
  OperatorFamily family(std::move(words), FamilyKind::admissible);
  if (!family.satisfies_admissible_bound()) throw PreconditionError("family violates |Delta_s| <= s");
  return family;
}

OperatorFamily OperatorFamily::full(std::vector<DiffWord> words) {
  std::sort(words.begin(), words.end());
  if (std::adjacent_find(words.begin(), words.end()) != words.end())
    throw PreconditionError("operator family has repeated words");
  if (words.empty() || !words.front().is_identity()) throw PreconditionError("a full set must contain the identity");
  if (!is_subword_closed(words)) throw PreconditionError("word set is not closed under subwords");
  return OperatorFamily(std::move(words), FamilyKind::full);
}

OperatorFamily OperatorFamily::parse_full(const std::string& text) {
  std::istringstream in(text);
  std::vector<DiffWord> words;
  std::string token;
  while (in >> token) words.push_back(DiffWord::parse(token));
  return full(std::move(words));
}

int OperatorFamily::total_order() const {
  int total = 0;
  for (const auto& w : words_) total += w.order();
  return total;
}

int OperatorFamily::count_of_order(int order) const {
  return static_cast<int>(std::count_if(words_.begin(), words_.end(), [order](const DiffWord& w) { return w.order() == order; }));
}

bool OperatorFamily::satisfies_admissible_bound() const {
  for (std::size_t s = 0; s < words_.size(); ++s)
    if (words_[s].order() > static_cast<int>(s)) return false;
  return !words_.empty() && words_.front().is_identity();
}

std::string OperatorFamily::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (i > 0) s += ",";
    s += words_[i].to_string();
  }
  return s + "}";
}

bool is_subword_closed(std::span<const DiffWord> words) {
  const std::set<DiffWord> set(words.begin(), words.end());
  for (const auto& w : words)
    for (const auto& sub : w.immediate_subwords())
      if (!set.contains(sub)) return false;
  return true;
}

std::vector<OperatorFamily> enumerate_full_sets(int p, int size, std::size_t budget) {
  if (p < 1 || size < 1) throw PreconditionError("enumerate_full_sets needs p >= 1 and size >= 1");
  // A subword-closed set listed in (length, lex) order has every prefix
  // subword-closed, so growing by strictly larger words visits each set once.
  std::vector<OperatorFamily> out;
  std::vector<DiffWord> current{DiffWord()};
  std::set<DiffWord> members{DiffWord()};
  auto grow = [&](auto&& self) -> void {
    if (static_cast<int>(current.size()) == size) {
      if (out.size() >= budget)
        throw BudgetError("full-set enumeration exceeded budget of " + std::to_string(budget));
      out.push_back(OperatorFamily::full(current));
      return;
    }
    std::set<DiffWord> candidates;
    for (const auto& w : current) {
      for (int letter = 1; letter <= p; ++letter) {
        DiffWord next = w.extended(letter);
        if (!(current.back() < next) || members.contains(next)) continue;
        const auto subs = next.immediate_subwords();
        if (std::all_of(subs.begin(), subs.end(), [&](const DiffWord& s) { return members.contains(s); }))
          candidates.insert(std::move(next));
      }
    }
    for (const auto& c : candidates) {
      current.push_back(c);
      members.insert(c);
      self(self);
      members.erase(c);
      current.pop_back();
    }
  };
  grow(grow);
  std::stable_sort(out.begin(), out.end(), [](const OperatorFamily& a, const OperatorFamily& b) {
    if (a.total_order() != b.total_order()) return a.total_order() < b.total_order();
    return a.words() < b.words();
  });
  return out;
}

namespace {

int shared_nvars(std::span<const MultiPoly> fs) {
  if (fs.empty()) throw PreconditionError("function family must be nonempty");
  const int p = fs.front().nvars();
  for (const auto& f : fs)
    if (f.nvars() != p) throw PreconditionError("functions disagree on the number of variables");
  return p;
}

bool has_zero_line(const PolyMatrix& m) {
  for (const auto& row : m)
    if (std::all_of(row.begin(), row.end(), [](const MultiPoly& e) { return e.is_zero(); })) return true;
  for (std::size_t j = 0; j < m.front().size(); ++j)
    if (std::all_of(m.begin(), m.end(), [j](const auto& row) { return row[j].is_zero(); })) return true;
  return false;
}

// Exact test of W != 0: a nonzero value at one point certifies it; otherwise
// the symbolic determinant decides.
bool wronskian_nonzero(const PolyMatrix& m, std::mt19937_64& rng) {
  if (has_zero_line(m)) return false;
  const int p = m.front().front().nvars();
  std::uniform_int_distribution<long> coord(-1000, 1000);
  std::vector<CycloNumber> point;
  for (int v = 0; v < p; ++v) point.emplace_back(coord(rng));
  if (!determinant(evaluate(m, point)).is_zero()) return true;
  return !determinant(m).is_zero();
}

}  // namespace

PolyMatrix wronskian_matrix(const OperatorFamily& family, std::span<const MultiPoly> fs) {
  const int p = shared_nvars(fs);
  if (family.size() != fs.size())
    throw PreconditionError("family has " + std::to_string(family.size()) + " operators for " +
                            std::to_string(fs.size()) + " functions");
  PolyMatrix m;
  for (const auto& word : family.words()) {
    if (word.max_letter() > p) throw PreconditionError("word " + word.to_string() + " uses a letter beyond p");
    std::vector<MultiPoly> row;
    for (const auto& f : fs) row.push_back(f.diff(word));
    m.push_back(std::move(row));
  }
  return m;
}

WronskianResult generalized_wronskian(const OperatorFamily& family, std::span<const MultiPoly> fs) {
  const PolyMatrix m = wronskian_matrix(family, fs);
  MultiPoly value = has_zero_line(m) ? MultiPoly(fs.front().nvars()) : determinant(m);
  const bool vanished = value.is_zero();
  return {std::move(value), family, vanished};
}

CoefficientOracle coefficient_rank_oracle(std::span<const MultiPoly> fs) {
  shared_nvars(fs);
  std::set<Exponent> monomials;
  for (const auto& f : fs)
    for (const auto& [e, c] : f.terms()) monomials.insert(e);
  FieldMatrix m;
  for (const auto& e : monomials) {
    std::vector<CycloNumber> row;
    for (const auto& f : fs) row.push_back(f.coeff(e));
    m.push_back(std::move(row));
  }
  if (m.empty()) {
    // Every function is zero.
    std::vector<CycloNumber> v(fs.size());
    v[0] = CycloNumber(1L);
    return {false, v};
  }
  auto kernel = kernel_basis(m, fs.size());
  if (kernel.empty()) return {true, {}};
  return {false, kernel.front()};
}

IndependenceVerdict is_linearly_independent(std::span<const MultiPoly> fs, const IndependenceOptions& options) {
  const int p = shared_nvars(fs);
  const CoefficientOracle oracle = coefficient_rank_oracle(fs);

  std::vector<OperatorFamily> families;
  try {
    families = enumerate_full_sets(p, static_cast<int>(fs.size()), options.budget);
  } catch (const BudgetError&) {
    if (oracle.independent)
      throw InconsistencyError("enumeration budget exhausted before a nonvanishing Wronskian was found");
    throw;
  }

  IndependenceVerdict verdict{false, std::nullopt, {}, 0};
  std::mt19937_64 rng(options.seed);
  for (const auto& family : families) {
    ++verdict.families_examined;
    if (wronskian_nonzero(wronskian_matrix(family, fs), rng)) {
      verdict.independent = true;
      verdict.witness = family;
      break;
    }
  }
  if (verdict.independent != oracle.independent) {
    throw InconsistencyError(std::string("Wronskian verdict ") + (verdict.independent ? "independent" : "dependent") +
                             " disagrees with coefficient rank");
  }
  verdict.kernel_vector = oracle.kernel_vector;
  return verdict;
}

OperatorFamily first_order_witness(const ProjectiveMap& f, std::size_t budget) {
  const auto& comps = f.components();
  if (!is_linearly_independent(comps, {budget}).independent)
    throw PreconditionError("map is linearly degenerate; no generalized Wronskian is nonzero");
  const int s = f.generic_rank();
  std::mt19937_64 rng(0xf0'71'0a'0eULL);
  for (const auto& family : enumerate_full_sets(f.p(), f.n() + 1, budget)) {
    if (family.count_of_order(1) < s) continue;
    if (wronskian_nonzero(wronskian_matrix(family, comps), rng)) return OperatorFamily::admissible(family.words());
  }
  throw InconsistencyError("theorem violation: no nonvanishing admissible family with " + std::to_string(s) +
                           " first-order operators for " + f.to_string());
}

}  // namespace fermatlab::wronskian
