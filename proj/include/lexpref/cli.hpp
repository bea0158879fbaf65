#pragma once

// Command-line front end. Exit codes: 0 success, 1 inconsistent or negative
// verdict, 2 usage error, 3 input error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lexpref/generator.hpp"
#include "lexpref/oracle.hpp"

namespace lexpref::cli {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2, kInputError = 3 };

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline Instance load(const std::string& path) {
  try {
    return parse_instance(read_file(path));
  } catch (const ParseError& e) {
    throw InvalidInput(path + ":" + e.what());
  }
}

inline std::vector<std::string> alt_names(const Instance& inst, const IndexSet& set) {
  std::vector<std::string> out;
  for (auto i : set) out.push_back(inst.outcome_names[inst.alternatives[i]]);
  return out;
}

inline std::string brace(const std::vector<std::string>& names) {
  std::string s = "{";
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? ", " : "") + names[i];
  return s + "}";
}

inline nlohmann::json model_json(const VariableSpace& space, const LexModel& pi) {
  auto arr = nlohmann::json::array();
  for (const auto& st : pi.stages()) {
    auto order = nlohmann::json::array();
    for (auto v : st.ranking()) order.push_back(space.value_name(st.variable(), v));
    arr.push_back({{"variable", space.name(st.variable())}, {"order", order}});
  }
  return arr;
}

inline nlohmann::json var_set_json(const VariableSpace& space, const VarSet& vars) {
  auto arr = nlohmann::json::array();
  vars.for_each([&](VarId x) { arr.push_back(space.name(x)); });
  return arr;
}

inline int cmd_check(const std::string& file, bool json, std::ostream& out) {
  const auto inst = load(file);
  const auto res = consistent(inst.space, inst.statements);
  if (json) {
    auto failures = nlohmann::json::array();
    for (const auto& f : res.failures)
      failures.push_back({{"statement", inst.statement_names[f.index]}, {"reason", reason_text(f.reason)}});
    nlohmann::json j = {{"consistent", res.consistent},
                        {"witness", model_json(inst.space, res.witness)},
                        {"v_gamma", var_set_json(inst.space, res.v_gamma)},
                        {"failures", failures},
                        {"satisfaction_tests", res.stats.satisfaction_tests}};
    out << j.dump(2) << "\n";
  } else {
    out << (res.consistent ? "consistent" : "inconsistent") << "\n";
    out << "witness: " << format_model(inst.space, res.witness) << "\n";
    if (res.consistent) out << "V^Gamma: " << format_set(inst.space, res.v_gamma) << "\n";
    for (const auto& f : res.failures)
      out << "failed " << inst.statement_names[f.index] << ": " << reason_text(f.reason) << "\n";
  }
  return res.consistent ? kOk : kNegative;
}

inline int cmd_infer(const std::string& file, const std::string& query, bool max_models, std::ostream& out) {
  const auto inst = load(file);
  Query q;
  try {
    q = parse_query(inst, query);
  } catch (const ParseError& e) {
    throw InvalidInput(std::string("query:") + e.what());
  }
  bool verdict = false;
  if (const auto* oq = std::get_if<OutcomeQuery>(&q)) {
    if (!max_models || oq->op == QueryOp::Equivalent) {
      verdict = entails(inst.space, inst.statements, oq->a, oq->op, oq->b);
    } else {
      const auto kind = oq->op == QueryOp::AtLeast ? StatementKind::NonStrict : StatementKind::WeaklyStrict;
      verdict = entails_max(inst.space, inst.statements, outcome_statement(inst.space, oq->a, oq->b, kind));
    }
  } else {
    const auto& phi = std::get<PrefStatement>(q);
    verdict = max_models ? entails_max(inst.space, inst.statements, phi)
                         : entails_general(inst.space, inst.statements, phi);
  }
  out << (verdict ? "entailed" : "not entailed") << "\n";
  return verdict ? kOk : kNegative;
}

inline int cmd_optimal(const std::string& file, const std::string& which, bool oracle, bool json, std::ostream& out) {
  const auto inst = load(file);
  if (inst.alternatives.empty()) throw InvalidInput("the instance declares no alternatives");
  const auto alts = inst.alternative_set();
  if (!is_consistent(inst.space, inst.statements)) {
    if (json) out << nlohmann::json({{"consistent", false}}).dump(2) << "\n";
    else out << "inconsistent\n";
    return kNegative;
  }
  const Equivalence eq(inst.space, inst.statements, alts);
  const std::vector<std::pair<std::string, OptimalKind>> all = {
      {"po", OptimalKind::PO}, {"pso", OptimalKind::PSO}, {"csd", OptimalKind::CSD}, {"no", OptimalKind::NO}};
  std::vector<std::pair<std::string, IndexSet>> computed;
  for (const auto& [name, kind] : all)
    if (which == "all" || which == name) computed.emplace_back(name, compute_set(inst.space, inst.statements, alts, eq, kind));

  nlohmann::json j = {{"consistent", true}};
  for (const auto& [name, set] : computed) {
    j["sets"][name] = alt_names(inst, set);
    if (!json) {
      std::string upper = name;
      for (auto& ch : upper) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      out << upper << ": " << brace(alt_names(inst, set)) << "\n";
    }
  }
  auto classes = nlohmann::json::array();
  std::string class_line;
  for (const auto& cls : eq.classes()) {
    classes.push_back(alt_names(inst, cls));
    class_line += (class_line.empty() ? "" : " ") + brace(alt_names(inst, cls));
  }
  j["classes"] = classes;
  if (!json) out << "classes: " << class_line << "\n";

  int code = kOk;
  if (oracle && model_count(inst.space) <= kDefaultModelCap) {
    const auto brute = brute_optimal_sets(inst.space, inst.statements, alts);
    const std::vector<std::pair<std::string, const IndexSet*>> expected = {
        {"po", &brute.po}, {"pso", &brute.pso}, {"csd", &brute.csd}, {"no", &brute.no}};
    std::vector<std::string> differs;
    for (const auto& [name, set] : computed)
      for (const auto& [bname, bset] : expected)
        if (name == bname && set != *bset) differs.push_back(name);
    if (brute.pso != brute.mpo) differs.push_back("mpo");
    if (brute.pso != brute.pom) differs.push_back("pom");
    j["oracle"] = {{"agrees", differs.empty()}, {"differs", differs},
                   {"mpo", alt_names(inst, brute.mpo)}, {"pom", alt_names(inst, brute.pom)}};
    if (!json) {
      if (differs.empty()) out << "oracle: agrees (MPO = POM = PSO)\n";
      for (const auto& name : differs) out << "oracle: differs on " << name << "\n";
    }
    if (!differs.empty()) code = kNegative;
  }
  if (json) out << j.dump(2) << "\n";
  return code;
}

inline int cmd_gen(const GenConfig& cfg, const std::string& path, std::ostream& out) {
  const auto gen = gen_instance(cfg);
  const auto text = write_generated(gen, cfg);
  if (path.empty() || path == "-") {
    out << text;
    return kOk;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write '" + path + "'");
  f << text;
  return kOk;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Seed of one benchmark instance, derived from the run seed and its cell.
inline std::uint64_t bench_seed(std::uint64_t seed, std::size_t n, std::size_t g, std::size_t rep) {
  return splitmix64(splitmix64(splitmix64(splitmix64(seed) ^ n) ^ g) ^ rep);
}

inline constexpr const char* kBenchHeader = "n,g,m,rep,|NO|,|PO|,|PSO|,|CSD|,t_check_ms,t_po_ms,t_pso_ms,t_csd_ms,t_no_ms";

struct BenchOptions {
  std::vector<std::size_t> vars, stmts;
  std::size_t alts = 100, reps = 10, dmin = 2, dmax = 3;
  std::uint64_t seed = 1;
  bool deterministic = false;
};

// One CSV row per (n, g, rep). With `deterministic`, timing columns are 0.
inline void run_bench(const BenchOptions& opt, std::ostream& csv) {
  using clock = std::chrono::steady_clock;
  auto ms = [&](clock::time_point a, clock::time_point b) {
    if (opt.deterministic) return std::string("0");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", std::chrono::duration<double, std::milli>(b - a).count());
    return std::string(buf);
  };
  csv << kBenchHeader << "\n";
  for (auto n : opt.vars)
    for (auto g : opt.stmts)
      for (std::size_t rep = 0; rep < opt.reps; ++rep) {
        GenConfig cfg;
        cfg.n = n;
        cfg.g = g;
        cfg.m = opt.alts;
        cfg.dmin = opt.dmin;
        cfg.dmax = opt.dmax;
        cfg.seed = bench_seed(opt.seed, n, g, rep);
        const auto gen = gen_instance(cfg);
        const auto& inst = gen.instance;
        const auto alts = inst.alternative_set();

        const auto t0 = clock::now();
        const Equivalence eq(inst.space, inst.statements, alts);
        const auto t1 = clock::now();
        const auto po = compute_set(inst.space, inst.statements, alts, eq, OptimalKind::PO);
        const auto t2 = clock::now();
        const auto pso = compute_set(inst.space, inst.statements, alts, eq, OptimalKind::PSO);
        const auto t3 = clock::now();
        const auto csd = compute_set(inst.space, inst.statements, alts, eq, OptimalKind::CSD);
        const auto t4 = clock::now();
        const auto no = compute_set(inst.space, inst.statements, alts, eq, OptimalKind::NO);
        const auto t5 = clock::now();

        csv << n << ',' << g << ',' << opt.alts << ',' << rep << ',' << no.size() << ',' << po.size() << ','
            << pso.size() << ',' << csd.size() << ',' << ms(t0, t1) << ',' << ms(t1, t2) << ',' << ms(t2, t3) << ','
            << ms(t3, t4) << ',' << ms(t4, t5) << "\n";
      }
}

inline int cmd_bench(const BenchOptions& opt, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    run_bench(opt, out);
    return kOk;
  }
  std::ostringstream buf;
  run_bench(opt, buf);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput("cannot write '" + path + "'");
  f << buf.str();
  return kOk;
}

inline int cmd_oracle(const std::string& file, std::ostream& out) {
  const auto inst = load(file);
  const auto total = model_count(inst.space);
  if (total > kDefaultModelCap) throw CapExceeded("the space has more than " + std::to_string(kDefaultModelCap) + " lex models");
  const auto brute = brute_consistent(inst.space, inst.statements);
  out << "models: " << total << "\n";
  out << "satisfying: " << brute.models.size() << "\n";
  out << (brute.consistent ? "consistent" : "inconsistent") << "\n";
  if (!brute.consistent) return kNegative;
  for (const auto& pi : brute_maximal_models(brute.models)) out << "maximal: " << format_model(inst.space, pi) << "\n";
  if (!inst.alternatives.empty()) {
    const auto sets = brute_optimal_sets(inst.space, inst.statements, inst.alternative_set());
    out << "PO: " << brace(alt_names(inst, sets.po)) << "\n";
    out << "PSO: " << brace(alt_names(inst, sets.pso)) << "\n";
    out << "CSD: " << brace(alt_names(inst, sets.csd)) << "\n";
    out << "NO: " << brace(alt_names(inst, sets.no)) << "\n";
    out << "MPO: " << brace(alt_names(inst, sets.mpo)) << "\n";
    out << "POM: " << brace(alt_names(inst, sets.pom)) << "\n";
  }
  return kOk;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Consistency, inference and optimality for lexicographic preference statements", "lexpref"};
  app.require_subcommand(1);

  std::string file, query, set = "all", output;
  bool json = false, oracle = false, max_models = false;

  auto* check = app.add_subcommand("check", "Decide consistency and print a witness model");
  check->add_option("file", file, "Instance file")->required();
  check->add_flag("--json", json, "JSON output");

  auto* infer = app.add_subcommand("infer", "Decide whether the statements entail a query");
  infer->add_option("file", file, "Instance file")->required();
  infer->add_option("--query,-q", query, "e.g. \"g > d\", \"[x=a] >= [x=b] || {y}\"")->required();
  infer->add_flag("--max", max_models, "Entailment over maximal models only");

  auto* optimal = app.add_subcommand("optimal", "Optimal alternatives");
  optimal->add_option("file", file, "Instance file")->required();
  optimal->add_option("--set", set, "po, pso, csd, no or all")->check(CLI::IsMember({"po", "pso", "csd", "no", "all"}));
  optimal->add_flag("--oracle", oracle, "Cross-check against brute-force enumeration when small enough");
  optimal->add_flag("--json", json, "JSON output");

  GenConfig cfg;
  auto* gen = app.add_subcommand("gen", "Generate a random consistent instance");
  gen->add_option("--vars", cfg.n, "Variables")->required();
  gen->add_option("--stmts", cfg.g, "Statements")->required();
  gen->add_option("--alts", cfg.m, "Alternatives")->required();
  gen->add_option("--seed", cfg.seed, "Seed")->required();
  gen->add_option("--dmin", cfg.dmin, "Smallest domain size")->capture_default_str();
  gen->add_option("--dmax", cfg.dmax, "Largest domain size")->capture_default_str();
  gen->add_option("-o,--output", output, "Output file (default stdout)");

  BenchOptions bench_opt;
  auto* bench = app.add_subcommand("bench", "Optimal-set sizes and timings on generated instances, as CSV");
  bench->add_option("--vars", bench_opt.vars, "Comma-separated variable counts")->required()->delimiter(',');
  bench->add_option("--stmts", bench_opt.stmts, "Comma-separated statement counts")->required()->delimiter(',');
  bench->add_option("--alts", bench_opt.alts, "Alternatives per instance")->capture_default_str();
  bench->add_option("--reps", bench_opt.reps, "Instances per cell")->capture_default_str();
  bench->add_option("--seed", bench_opt.seed, "Seed")->required();
  bench->add_option("--dmin", bench_opt.dmin, "Smallest domain size")->capture_default_str();
  bench->add_option("--dmax", bench_opt.dmax, "Largest domain size")->capture_default_str();
  bench->add_option("-o,--output", output, "CSV file (default stdout)");
  bench->add_flag("--deterministic", bench_opt.deterministic, "Write 0 in the timing columns");

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force enumeration of every lex model");
  oracle_cmd->add_option("file", file, "Instance file")->required();

  std::vector<const char*> argv;
  argv.push_back("lexpref");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*check) return cmd_check(file, json, out);
    if (*infer) return cmd_infer(file, query, max_models, out);
    if (*optimal) return cmd_optimal(file, set, oracle, json, out);
    if (*gen) return cmd_gen(cfg, output, out);
    if (*bench) return cmd_bench(bench_opt, output, out);
    if (*oracle_cmd) return cmd_oracle(file, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kUsage;
}

}  // namespace lexpref::cli
