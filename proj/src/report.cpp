#include "fermatlab/report.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <thread>

#include "fermatlab/errors.hpp"
#include "fermatlab/fermat.hpp"
#include "fermatlab/wronskian.hpp"
#include "json.hpp"

namespace fermatlab::report {
namespace {

namespace fs = std::filesystem;
namespace nv = fermatlab::nevanlinna;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string boolean(bool b) { return b ? "true" : "false"; }

std::string int_or_inf(int v) { return v == nv::kInfinity ? "inf" : std::to_string(v); }

class Facts {
 public:
  explicit Facts(InstanceResult& r) : r_(r) {}
  void add(std::string key, std::string value) { r_.facts.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
  void add(std::string key, bool value) { add(std::move(key), boolean(value)); }
  void add(std::string key, int value) { add(std::move(key), std::to_string(value)); }
  void add(std::string key, std::size_t value) { add(std::move(key), std::to_string(value)); }
  void add(std::string key, double value) { add(std::move(key), num(value)); }

 private:
  InstanceResult& r_;
};

std::vector<nv::Divisor> divisors_of(const Instance& x) {
  std::vector<nv::Divisor> out;
  for (const auto& q : x.divisors) out.push_back(nv::Divisor::make(q));
  for (const auto& h : x.hyperplanes) out.push_back(nv::Divisor::hyperplane(h));
  return out;
}

std::vector<nv::Divisor> hyperplanes_of(const Instance& x) {
  if (x.hyperplanes.empty()) throw PreconditionError("task needs hyperplane lines");
  std::vector<nv::Divisor> out;
  for (const auto& h : x.hyperplanes) out.push_back(nv::Divisor::hyperplane(h));
  return out;
}

void attach_profile(InstanceResult& r, const ProjectiveMap& f, std::span<const nv::Divisor> ds, int truncation,
                    const RunConfig& cfg, const std::vector<double>* slack) {
  const auto prof = nv::profile(f, ds, truncation, cfg.radii, cfg.quadrature());
  r.quadrature = QuadratureMeta{nv::to_string(prof.method), prof.nodes, prof.seed, prof.quadrature_error};
  std::string csv = "r,T";
  for (std::size_t j = 0; j < ds.size(); ++j) {
    const std::string s = std::to_string(j);
    csv += ",m_" + s + ",N_" + s + ",N_trunc_" + s + ",residual_" + s;
  }
  if (slack) csv += ",slack";
  csv += '\n';
  for (std::size_t i = 0; i < prof.radii.size(); ++i) {
    csv += num(prof.radii[i]) + ',' + num(prof.order[i]);
    for (std::size_t j = 0; j < ds.size(); ++j) {
      const double residual = prof.proximity[j][i] + prof.counting[j][i] - ds[j].degree() * prof.order[i];
      csv += ',' + num(prof.proximity[j][i]) + ',' + num(prof.counting[j][i]) + ',' +
             num(prof.counting_truncated[j][i]) + ',' + num(residual);
    }
    if (slack) csv += ',' + num((*slack)[i]);
    csv += '\n';
  }
  r.csv = std::move(csv);
}

std::string words_of(const wronskian::OperatorFamily& fam) { return fam.to_string(); }

std::string vector_string(const std::vector<CycloNumber>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].to_string();
  return s + ")";
}

std::string classes_string(const fermat::RatioPartition& p) {
  std::string s;
  for (const auto& cls : p.classes) {
    if (!s.empty()) s += ' ';
    s += '{';
    for (std::size_t i = 0; i < cls.size(); ++i) s += (i ? "," : "") + std::to_string(cls[i]);
    s += '}';
  }
  return s;
}

fermat::FermatKind kind_of(const std::string& k) {
  return k == "logarithmic" ? fermat::FermatKind::logarithmic : fermat::FermatKind::compact;
}

void run_wronskian(const Instance& x, InstanceResult& r, Facts& facts) {
  if (x.family) {
    const auto fam = wronskian::OperatorFamily::parse_full(*x.family);
    const auto w = wronskian::generalized_wronskian(fam, x.components);
    facts.add("family", words_of(fam));
    facts.add("vanished", w.vanished);
    facts.add("value", w.value.to_string());
    r.verdict = "pass";
    return;
  }
  const auto f = ProjectiveMap::make(x.components);
  const auto fam = wronskian::first_order_witness(f);
  const int order1 = fam.count_of_order(1);
  facts.add("rank", f.generic_rank());
  facts.add("witness", words_of(fam));
  facts.add("order_one_operators", order1);
  r.verdict = order1 >= f.generic_rank() ? "pass" : "fail";
}

void run_independence(const Instance& x, InstanceResult& r, Facts& facts) {
  const auto v = wronskian::is_linearly_independent(x.components);
  facts.add("independent", v.independent);
  if (v.witness) facts.add("witness", words_of(*v.witness));
  if (!v.kernel_vector.empty()) facts.add("kernel", vector_string(v.kernel_vector));
  facts.add("families_examined", v.families_examined);
  r.verdict = "pass";
}

void run_fmt(const Instance& x, const RunConfig& cfg, InstanceResult& r, Facts& facts) {
  const auto f = ProjectiveMap::make(x.components);
  const auto ds = divisors_of(x);
  if (ds.empty()) throw PreconditionError("fmt needs at least one divisor or hyperplane");
  bool all = true;
  for (std::size_t j = 0; j < ds.size(); ++j) {
    const auto rep = nv::fmt_check(f, ds[j], cfg.radii, cfg.quadrature(), cfg.tolerance);
    const std::string s = std::to_string(j);
    facts.add("residual_variation_" + s, rep.residual_variation);
    facts.add("exact_counting_" + s, rep.exact_counting);
    facts.add("passed_" + s, rep.passed());
    all = all && rep.passed();
  }
  r.verdict = all ? "pass" : "fail";
  attach_profile(r, f, ds, x.truncation.value_or(nv::kInfinity), cfg, nullptr);
}

void run_smt(const Instance& x, const RunConfig& cfg, InstanceResult& r, Facts& facts) {
  const auto f = ProjectiveMap::make(x.components);
  const auto hs = hyperplanes_of(x);
  const auto rep = nv::smt_check(f, hs, cfg.radii, cfg.quadrature(), cfg.tolerance);
  facts.add("q", rep.q);
  facts.add("rank", rep.rank);
  facts.add("truncation", rep.truncation);
  facts.add("fitted_constant", rep.fitted_constant);
  double min_slack = rep.rows.front().slack;
  std::vector<double> slack;
  for (const auto& row : rep.rows) {
    slack.push_back(row.slack);
    min_slack = std::min(min_slack, row.slack);
  }
  facts.add("min_slack", min_slack);
  if (!rep.caveat.empty()) r.diagnostic = rep.caveat;
  r.verdict = rep.passed ? "pass" : "fail";
  attach_profile(r, f, hs, rep.exact_counting ? rep.truncation : nv::kInfinity, cfg, &slack);
}

void run_defect(const Instance& x, const RunConfig& cfg, InstanceResult& r, Facts& facts) {
  const auto f = ProjectiveMap::make(x.components);
  const auto hs = hyperplanes_of(x);
  const int m = x.truncation.value_or(nv::kInfinity);
  const auto rep = nv::defect_relation_check(f, hs, m, cfg.radii, cfg.quadrature());
  for (std::size_t j = 0; j < rep.defects.size(); ++j) facts.add("defect_" + std::to_string(j), rep.defects[j].value);
  facts.add("sum", rep.sum);
  facts.add("bound", rep.bound);
  r.verdict = rep.holds ? "pass" : "fail";
  attach_profile(r, f, hs, m, cfg, nullptr);
}

void run_ramification(const Instance& x, const RunConfig& cfg, InstanceResult& r, Facts& facts) {
  const auto f = ProjectiveMap::make(x.components);
  const auto hs = hyperplanes_of(x);
  if (x.mu.empty()) throw PreconditionError("ramification needs a mu line");
  std::vector<nv::RamificationDatum> data;
  for (std::size_t i = 0; i < x.mu.size(); ++i) data.push_back({i, x.mu[i]});
  const auto rep = nv::ramification_check(f, hs, data, x.rank.value_or(f.generic_rank()), cfg.seed);
  std::string observed;
  for (const auto& t : rep.terms) observed += (observed.empty() ? "" : " ") + int_or_inf(t.observed_mu);
  facts.add("kappa", rep.kappa);
  facts.add("observed_mu", observed);
  facts.add("sum", rep.sum.get_str());
  facts.add("bound", rep.bound);
  r.verdict = rep.holds ? "pass" : "fail";
}

void run_fermat(const Instance& x, const RunConfig& cfg, InstanceResult& r, Facts& facts) {
  const auto f = ProjectiveMap::make(x.components);
  const auto kind = x.task == "fermat-compact" ? fermat::FermatKind::compact : fermat::FermatKind::logarithmic;
  const fermat::FermatInstance inst{f.n(), *x.d, kind};
  const auto rep = fermat::degeneracy_subspace(f, inst, x.field_order(cfg.field_order));
  r.verdict = fermat::to_string(rep.verdict);
  r.diagnostic = rep.diagnostic;
  if (rep.appended_component) facts.add("mu", rep.appended_component->to_string());
  if (rep.partition) facts.add("classes", classes_string(*rep.partition));
  std::string eqs;
  for (const auto& e : rep.equations) eqs += (eqs.empty() ? "" : "; ") + e.to_string();
  if (rep.verdict != fermat::Verdict::not_applicable) {
    facts.add("equations", eqs);
    facts.add("dimension", rep.dimension);
    facts.add("bound", rep.bound);
    facts.add("class_sums_vanish", rep.class_sums_vanish);
    facts.add("generic_rank", rep.generic_rank);
    facts.add("rank_within_dimension", rep.rank_within_dimension);
  }
  for (const auto& note : rep.notes) r.diagnostic += (r.diagnostic.empty() ? "" : "; ") + note;
}

void run_corollary(const Instance& x, const RunConfig& cfg, InstanceResult& r, Facts& facts) {
  const auto kind = kind_of(*x.kind);
  fermat::CorollaryReport rep;
  if (x.components.empty()) {
    rep = fermat::corollary_verdict(x.p, *x.n, *x.d, kind);
  } else {
    rep = fermat::corollary_verdict(ProjectiveMap::make(x.components), *x.d, kind, x.field_order(cfg.field_order));
  }
  facts.add("kappa", rep.kappa_value);
  facts.add("degree_threshold", rep.degree_threshold);
  facts.add("degree_condition", rep.degree_condition);
  facts.add("dimension_condition", rep.dimension_condition);
  facts.add("nonexistence", rep.nonexistence);
  if (rep.map_rank) facts.add("map_rank", *rep.map_rank);
  if (rep.subspace_dimension) facts.add("subspace_dimension", *rep.subspace_dimension);
  if (rep.rank_consistent) facts.add("rank_consistent", *rep.rank_consistent);
  r.verdict = rep.rank_consistent.value_or(true) ? "pass" : "fail";
}

void check_expectations(const Instance& x, InstanceResult& r) {
  bool verdict_stated = false;
  bool ok = true;
  for (const auto& [key, expected] : x.expectations) {
    ExpectationResult e{key, expected, "<missing>", false};
    if (key == "verdict") {
      verdict_stated = true;
      e.actual = r.verdict;
    } else {
      for (const auto& [k, v] : r.facts) {
        if (k == key) e.actual = v;
      }
    }
    e.ok = e.actual == expected;
    ok = ok && e.ok;
    r.expectations.push_back(std::move(e));
  }
  r.passed = ok && (verdict_stated || r.verdict == "pass");
}

}  // namespace

const std::vector<std::string>& task_names() {
  static const std::vector<std::string> names{"all",         "wronskian",      "independence",       "fmt",
                                              "smt",         "defect",         "ramification",       "fermat-compact",
                                              "fermat-logarithmic", "corollary"};
  return names;
}

void RunConfig::validate() const {
  const auto& names = task_names();
  if (std::find(names.begin(), names.end(), task) == names.end()) throw PreconditionError("unknown task " + task);
  nv::validate_radii(radii);
  if (samples < 1000) throw PreconditionError("sample count must be at least 1000");
  if (!(tolerance > 0)) throw PreconditionError("tolerance must be positive");
  if (field_order < 1) throw PreconditionError("field order must be positive");
  if (jobs < 1) throw PreconditionError("jobs must be positive");
  if (inputs.empty()) throw PreconditionError("no input given");
}

nv::QuadratureConfig RunConfig::quadrature() const {
  nv::QuadratureConfig q;
  q.samples = samples;
  q.seed = seed;
  return q;
}

InstanceResult evaluate(const Instance& x, const RunConfig& cfg) {
  InstanceResult r;
  r.name = x.name;
  r.task = x.task;
  Facts facts(r);
  try {
    if (x.task == "wronskian") {
      run_wronskian(x, r, facts);
    } else if (x.task == "independence") {
      run_independence(x, r, facts);
    } else if (x.task == "fmt") {
      run_fmt(x, cfg, r, facts);
    } else if (x.task == "smt") {
      run_smt(x, cfg, r, facts);
    } else if (x.task == "defect") {
      run_defect(x, cfg, r, facts);
    } else if (x.task == "ramification") {
      run_ramification(x, cfg, r, facts);
    } else if (x.task == "fermat-compact" || x.task == "fermat-logarithmic") {
      run_fermat(x, cfg, r, facts);
    } else if (x.task == "corollary") {
      run_corollary(x, cfg, r, facts);
    } else {
      throw PreconditionError("unknown task " + x.task);
    }
  } catch (const std::exception& e) {
    r.verdict = "error";
    r.diagnostic = e.what();
    r.csv.clear();
    r.quadrature.reset();
  }
  check_expectations(x, r);
  return r;
}

std::vector<Instance> load_inputs(const RunConfig& cfg) {
  std::vector<std::string> files;
  for (const auto& in : cfg.inputs) {
    if (fs::is_directory(in)) {
      std::vector<std::string> found;
      for (const auto& entry : fs::directory_iterator(in)) {
        if (entry.is_regular_file() && entry.path().extension() == ".inst") found.push_back(entry.path().string());
      }
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else if (fs::is_regular_file(in)) {
      files.push_back(in);
    } else {
      throw PreconditionError("input not found: " + in);
    }
  }
  std::vector<Instance> out;
  std::set<std::string> names;
  for (const auto& file : files) {
    std::vector<Instance> batch;
    try {
      batch = parse_instance_file(file, cfg.field_order);
    } catch (const ParseError& e) {
      throw PreconditionError("parse error: " + file + ":" + e.what());
    }
    for (auto& x : batch) {
      if (!names.insert(x.name).second) throw PreconditionError("duplicate instance name " + x.name + " in " + file);
      if (cfg.task == "all" || cfg.task == x.task) out.push_back(std::move(x));
    }
  }
  return out;
}

std::vector<InstanceResult> evaluate_all(const std::vector<Instance>& instances, const RunConfig& cfg) {
  std::vector<InstanceResult> results(instances.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) results[i] = evaluate(instances[i], cfg);
  };
  const std::size_t threads = std::min<std::size_t>(cfg.jobs, instances.size());
  if (threads <= 1) {
    worker();
    return results;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  return results;
}

std::string verdicts_json(const std::vector<InstanceResult>& results, const RunConfig& cfg) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["config"] = {{"task", cfg.task},         {"field_order", cfg.field_order}, {"radii", cfg.radii},
                   {"samples", cfg.samples},   {"seed", cfg.seed},               {"tolerance", cfg.tolerance}};
  std::size_t passed = 0;
  ordered_json list = ordered_json::array();
  for (const auto& r : results) {
    passed += r.passed ? 1 : 0;
    ordered_json item;
    item["name"] = r.name;
    item["task"] = r.task;
    item["verdict"] = r.verdict;
    item["passed"] = r.passed;
    item["diagnostic"] = r.diagnostic;
    ordered_json facts = ordered_json::object();
    for (const auto& [k, v] : r.facts) facts[k] = v;
    item["facts"] = facts;
    ordered_json exps = ordered_json::array();
    for (const auto& e : r.expectations) {
      exps.push_back({{"key", e.key}, {"expected", e.expected}, {"actual", e.actual}, {"ok", e.ok}});
    }
    item["expectations"] = exps;
    if (r.quadrature) {
      item["quadrature"] = {{"method", r.quadrature->method},
                            {"nodes", r.quadrature->nodes},
                            {"seed", r.quadrature->seed},
                            {"error", r.quadrature->error}};
    }
    item["csv"] = r.csv.empty() ? ordered_json(nullptr) : ordered_json(r.name + ".csv");
    list.push_back(std::move(item));
  }
  doc["summary"] = {{"instances", results.size()}, {"passed", passed}, {"failed", results.size() - passed}};
  doc["results"] = std::move(list);
  return doc.dump(2) + "\n";
}

std::string summary_text(const std::vector<InstanceResult>& results) {
  std::string out;
  std::size_t passed = 0;
  for (const auto& r : results) {
    passed += r.passed ? 1 : 0;
    out += r.passed ? "PASS " : "FAIL ";
    out += r.name + " [" + r.task + "] " + r.verdict;
    if (!r.diagnostic.empty()) out += ": " + r.diagnostic;
    out += '\n';
    for (const auto& e : r.expectations) {
      if (!e.ok) out += "  expected " + e.key + " = " + e.expected + ", got " + e.actual + '\n';
    }
  }
  out += std::to_string(passed) + "/" + std::to_string(results.size()) + " instances passed\n";
  return out;
}

int run(const RunConfig& cfg, std::ostream& err) {
  std::vector<Instance> instances;
  try {
    cfg.validate();
    instances = load_inputs(cfg);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (instances.empty()) {
    err << "error: no instances for task " << cfg.task << '\n';
    return kExitUsage;
  }
  const auto results = evaluate_all(instances, cfg);
  try {
    const fs::path dir(cfg.out_dir.empty() ? "." : cfg.out_dir);
    fs::create_directories(dir);
    auto write = [&](const fs::path& p, const std::string& text) {
      std::ofstream out(p, std::ios::binary);
      out << text;
      if (!out) throw std::runtime_error("cannot write " + p.string());
    };
    write(dir / "verdicts.json", verdicts_json(results, cfg));
    write(dir / "summary.txt", summary_text(results));
    for (const auto& r : results) {
      if (!r.csv.empty()) write(dir / (r.name + ".csv"), r.csv);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const bool all = std::all_of(results.begin(), results.end(), [](const auto& r) { return r.passed; });
  return all ? kExitPass : kExitCheckFailure;
}

}  // namespace fermatlab::report
