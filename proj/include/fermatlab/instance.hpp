#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fermatlab/multipoly.hpp"

namespace fermatlab::report {

/// One block of an instance file:
///
///   instance pairs_n3
///     task fermat-compact
///     p 1
///     d 9
///     component 1@0
///     component -1@0
///     component 1@1
///     component -1@1
///     expect dimension 1
///   end
///
/// Polynomials are whitespace-separated terms "coef@e1,...,ep" with exact
/// coefficients ("3/7", "z14^3", "1/2+z4"); "0" is the zero polynomial.
/// Lines starting with '#' are comments.
struct Instance {
  std::string name;
  std::string task;
  std::optional<int> field;  // conductor N; the run's --field-order when absent
  int p = 1;
  std::optional<int> d;
  std::optional<std::string> kind;  // corollary: compact | logarithmic
  std::optional<int> n;             // corollary without a map
  std::vector<MultiPoly> components;
  std::vector<MultiPoly> divisors;    // homogeneous in n+1 variables
  std::vector<std::vector<CycloNumber>> hyperplanes;
  std::optional<std::string> family;  // operator words, e.g. "e 1 2 11"
  std::vector<int> mu;                // kInfinity for "inf"
  std::optional<int> rank;
  std::optional<int> truncation;      // kInfinity for "inf"
  std::vector<std::pair<std::string, std::string>> expectations;

  int field_order(int fallback) const { return field.value_or(fallback); }
  /// Target dimension: components - 1, or the explicit n.
  int target_dimension() const;
};

/// Parses every block of `text`; `default_field_order` applies to blocks
/// without a field line. Throws ParseError with the 1-based line and column of the offending token.
std::vector<Instance> parse_instances(std::string_view text, int default_field_order = 1);
std::vector<Instance> parse_instance_file(const std::string& path, int default_field_order = 1);

/// Canonical text of one block; parse_instances(serialize(x)) reproduces x.
std::string serialize(const Instance& instance);
std::string serialize(const std::vector<Instance>& instances);

}  // namespace fermatlab::report
