#include "fermatlab/instance.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "fermatlab/errors.hpp"
#include "fermatlab/nevanlinna.hpp"

namespace fermatlab::report {
namespace {

const std::set<std::string, std::less<>> kTasks{"wronskian",       "independence",       "fmt",
                                                "smt",             "defect",             "ramification",
                                                "fermat-compact",  "fermat-logarithmic", "corollary"};

struct Token {
  std::string text;
  std::size_t line;
  std::size_t column;
};

[[noreturn]] void fail(const std::string& message, const Token& t) {
  throw ParseError(message, t.line, t.column, t.text);
}

std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    out.push_back({std::string(line.substr(start, i - start)), line_no, start + 1});
  }
  return out;
}

int parse_int(const Token& t, int lo) {
  int value = 0;
  const char* end = t.text.data() + t.text.size();
  auto [ptr, ec] = std::from_chars(t.text.data(), end, value);
  if (ec != std::errc() || ptr != end) fail("expected an integer", t);
  if (value < lo) fail("integer below " + std::to_string(lo), t);
  return value;
}

int parse_int_or_inf(const Token& t) { return t.text == "inf" ? nevanlinna::kInfinity : parse_int(t, 1); }

std::string int_or_inf(int v) { return v == nevanlinna::kInfinity ? "inf" : std::to_string(v); }

CycloNumber parse_coeff(const Token& t, std::string_view text, std::size_t offset, int order) {
  try {
    return CycloNumber::parse(text, order);
  } catch (const ParseError& e) {
    throw ParseError(e.message(), t.line, t.column + offset + e.column() - 1, e.token());
  } catch (const DomainError& e) {
    fail(e.what(), t);
  }
}

MultiPoly parse_poly(std::span<const Token> terms, int nvars, int order) {
  MultiPoly poly(nvars);
  if (terms.size() == 1 && terms[0].text == "0") return poly;
  for (const Token& t : terms) {
    const auto at = t.text.find('@');
    if (at == std::string::npos) fail("term must have the form coef@e1,...,ep", t);
    const CycloNumber c = parse_coeff(t, std::string_view(t.text).substr(0, at), 0, order);
    Exponent e;
    std::size_t pos = at + 1;
    while (true) {
      const std::size_t comma = t.text.find(',', pos);
      const std::size_t stop = comma == std::string::npos ? t.text.size() : comma;
      Token part{t.text.substr(pos, stop - pos), t.line, t.column + pos};
      e.push_back(parse_int(part, 0));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (static_cast<int>(e.size()) != nvars) {
      fail("exponent has " + std::to_string(e.size()) + " entries, expected " + std::to_string(nvars), t);
    }
    poly.add_term(e, c);
  }
  return poly;
}

std::string join(std::span<const Token> tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out += ' ';
    out += t.text;
  }
  return out;
}

struct Line {
  std::vector<Token> tokens;
};

Instance build(const Token& header, const std::vector<Line>& body, const Token& end, int default_order) {
  Instance inst;
  inst.name = header.text;
  // Scalars first: polynomials depend on p, n and the field.
  std::set<std::string> seen;
  auto once = [&](const Line& l) {
    if (!seen.insert(l.tokens[0].text).second) fail("duplicate key", l.tokens[0]);
  };
  auto single = [&](const Line& l) -> const Token& {
    if (l.tokens.size() != 2) fail("expected exactly one value", l.tokens[0]);
    return l.tokens[1];
  };
  const Token* task_token = nullptr;
  for (const auto& l : body) {
    const std::string& key = l.tokens[0].text;
    if (key == "task") {
      once(l);
      task_token = &single(l);
      if (!kTasks.contains(task_token->text)) fail("unknown task", *task_token);
      inst.task = task_token->text;
    } else if (key == "field") {
      once(l);
      inst.field = parse_int(single(l), 1);
    } else if (key == "p") {
      once(l);
      inst.p = parse_int(single(l), 1);
    } else if (key == "n") {
      once(l);
      inst.n = parse_int(single(l), 1);
    } else if (key == "d") {
      once(l);
      inst.d = parse_int(single(l), 1);
    } else if (key == "kind") {
      once(l);
      const Token& t = single(l);
      if (t.text != "compact" && t.text != "logarithmic") fail("kind must be compact or logarithmic", t);
      inst.kind = t.text;
    } else if (key == "rank") {
      once(l);
      inst.rank = parse_int(single(l), 1);
    } else if (key == "truncation") {
      once(l);
      inst.truncation = parse_int_or_inf(single(l));
    } else if (key == "family") {
      once(l);
      if (l.tokens.size() < 2) fail("empty operator family", l.tokens[0]);
      inst.family = join(std::span(l.tokens).subspan(1));
    } else if (key == "mu") {
      once(l);
      if (l.tokens.size() < 2) fail("empty multiplicity list", l.tokens[0]);
      for (std::size_t i = 1; i < l.tokens.size(); ++i) inst.mu.push_back(parse_int_or_inf(l.tokens[i]));
    } else if (key == "expect") {
      if (l.tokens.size() < 3) fail("expect needs a key and a value", l.tokens[0]);
      inst.expectations.emplace_back(l.tokens[1].text, join(std::span(l.tokens).subspan(2)));
    } else if (key != "component" && key != "divisor" && key != "hyperplane") {
      fail("unknown key", l.tokens[0]);
    }
  }
  if (!task_token) fail("instance has no task", header);

  const int order = inst.field_order(default_order);
  try {
    (void)CycloField::get(order);
  } catch (const DomainError& e) {
    fail(e.what(), header);
  }
  for (const auto& l : body) {
    if (l.tokens[0].text != "component") continue;
    if (l.tokens.size() < 2) fail("empty component", l.tokens[0]);
    inst.components.push_back(parse_poly(std::span(l.tokens).subspan(1), inst.p, order));
  }
  if (inst.components.empty() && !(inst.task == "corollary" && inst.n)) fail("empty component list", end);
  if (!inst.components.empty() && inst.n && *inst.n + 1 != static_cast<int>(inst.components.size())) {
    fail("n disagrees with the number of components", end);
  }
  if (inst.components.size() == 1) fail("a map needs at least two components", end);
  const int nvars = inst.target_dimension() + 1;
  for (const auto& l : body) {
    const std::string& key = l.tokens[0].text;
    if (key == "divisor") {
      if (l.tokens.size() < 2) fail("empty divisor", l.tokens[0]);
      MultiPoly q = parse_poly(std::span(l.tokens).subspan(1), nvars, order);
      if (q.is_zero() || !q.is_homogeneous()) fail("divisor must be a nonzero homogeneous polynomial", l.tokens[1]);
      inst.divisors.push_back(std::move(q));
    } else if (key == "hyperplane") {
      if (static_cast<int>(l.tokens.size()) != nvars + 1) {
        fail("hyperplane needs " + std::to_string(nvars) + " coefficients", l.tokens[0]);
      }
      std::vector<CycloNumber> a;
      bool nonzero = false;
      for (std::size_t i = 1; i < l.tokens.size(); ++i) {
        a.push_back(parse_coeff(l.tokens[i], l.tokens[i].text, 0, order));
        nonzero = nonzero || !a.back().is_zero();
      }
      if (!nonzero) fail("hyperplane coefficients are all zero", l.tokens[0]);
      inst.hyperplanes.push_back(std::move(a));
    }
  }
  if (inst.task == "corollary" && !inst.kind) fail("corollary needs a kind", end);
  if (inst.task == "corollary" && !inst.d) fail("corollary needs d", end);
  if (inst.task.starts_with("fermat-") && !inst.d) fail("fermat task needs d", end);
  if (!inst.mu.empty() && inst.mu.size() != inst.hyperplanes.size()) {
    fail("mu needs one entry per hyperplane", end);
  }
  if (inst.family) {
    try {
      for (std::istringstream in(*inst.family); in;) {
        std::string w;
        if (in >> w) (void)DiffWord::parse(w);
      }
    } catch (const std::exception& e) {
      fail(std::string("bad operator word: ") + e.what(), end);
    }
  }
  return inst;
}

}  // namespace

int Instance::target_dimension() const {
  return components.empty() ? n.value_or(0) : static_cast<int>(components.size()) - 1;
}

std::vector<Instance> parse_instances(std::string_view text, int default_field_order) {
  std::vector<Instance> out;
  std::set<std::string> names;
  std::optional<Token> header;
  std::vector<Line> body;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string_view::npos) stop = text.size();
    std::string_view raw = text.substr(start, stop - start);
    start = stop + 1;
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    auto tokens = tokenize(raw, line_no);
    if (tokens.empty() || tokens[0].text.starts_with('#')) continue;
    const Token& key = tokens[0];
    if (!header) {
      if (key.text != "instance") fail("expected 'instance'", key);
      if (tokens.size() != 2) fail("instance needs exactly one name", key);
      const bool clean = std::all_of(tokens[1].text.begin(), tokens[1].text.end(), [](char ch) {
        return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.';
      });
      if (!clean) fail("instance names may only use letters, digits, '_', '-' and '.'", tokens[1]);
      if (!names.insert(tokens[1].text).second) fail("duplicate instance name", tokens[1]);
      header = tokens[1];
      body.clear();
    } else if (key.text == "end") {
      if (tokens.size() != 1) fail("unexpected token after 'end'", tokens[1]);
      out.push_back(build(*header, body, key, default_field_order));
      header.reset();
    } else if (key.text == "instance") {
      fail("missing 'end' before next instance", key);
    } else {
      body.push_back({std::move(tokens)});
    }
  }
  if (header) fail("missing 'end'", *header);
  return out;
}

std::vector<Instance> parse_instance_file(const std::string& path, int default_field_order) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw PreconditionError("cannot open instance file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instances(buf.str(), default_field_order);
}

std::string serialize(const Instance& x) {
  std::ostringstream out;
  out << "instance " << x.name << '\n';
  out << "  task " << x.task << '\n';
  if (x.field) out << "  field " << *x.field << '\n';
  out << "  p " << x.p << '\n';
  if (x.n) out << "  n " << *x.n << '\n';
  if (x.d) out << "  d " << *x.d << '\n';
  if (x.kind) out << "  kind " << *x.kind << '\n';
  if (x.rank) out << "  rank " << *x.rank << '\n';
  if (x.truncation) out << "  truncation " << int_or_inf(*x.truncation) << '\n';
  if (x.family) out << "  family " << *x.family << '\n';
  for (const auto& c : x.components) out << "  component " << c.to_string() << '\n';
  for (const auto& q : x.divisors) out << "  divisor " << q.to_string() << '\n';
  for (const auto& h : x.hyperplanes) {
    out << "  hyperplane";
    for (const auto& a : h) out << ' ' << a.to_string();
    out << '\n';
  }
  if (!x.mu.empty()) {
    out << "  mu";
    for (int m : x.mu) out << ' ' << int_or_inf(m);
    out << '\n';
  }
  for (const auto& [k, v] : x.expectations) out << "  expect " << k << ' ' << v << '\n';
  out << "end\n";
  return out.str();
}

std::string serialize(const std::vector<Instance>& instances) {
  std::string out;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (i > 0) out += '\n';
    out += serialize(instances[i]);
  }
  return out;
}

}  // namespace fermatlab::report
