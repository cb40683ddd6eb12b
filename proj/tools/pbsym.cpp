#include "pbsym/benchgen.hpp"
#include "pbsym/checker.hpp"
#include "pbsym/symlog.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

using namespace pbsym;
using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kSchema = "pbsym.report.v1";

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json counters_json(const Counters& c, uint64_t proof_bytes) {
  return {{"spec_materializations", c.spec_materializations},
          {"rup_calls", c.rup_calls},
          {"hinted_rups", c.hinted_rups},
          {"pol_steps", c.pol_steps},
          {"goals_syntactic", c.goals_syntactic},
          {"goals_tautology", c.goals_tautology},
          {"goals_rup", c.goals_rup},
          {"goals_explicit", c.goals_explicit},
          {"propagations", c.propagations},
          {"proof_bytes", proof_bytes}};
}

struct CheckResult {
  bool accepted = false;
  std::string verdict;
  std::optional<Rejection> rejection;
  double parse_s = 0, check_s = 0;
  Counters counters;
  std::vector<std::string> trace;
  uint64_t proof_bytes = 0;
};

// Throws Error/ParseError for unreadable or malformed input.
CheckResult run_check(const std::string& formula_text, const std::string& proof_text, bool trace) {
  CheckResult r;
  r.proof_bytes = proof_text.size();
  auto t0 = std::chrono::steady_clock::now();
  VarTable vt;
  Formula f = parse_formula(formula_text, vt);
  ProofDocument doc = parse_proof(proof_text, vt);
  r.parse_s = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  std::optional<Checker> ch;
  try {
    ch.emplace(vt, f, trace);
    ch->run(doc);
    r.accepted = true;
    r.verdict = verdict_str(ch->verdict());
  } catch (const Rejection& e) {
    r.rejection = e;
    r.verdict = "REJECTED";
  }
  r.check_s = seconds_since(t0);
  if (ch) {
    r.counters = ch->counters();
    r.trace = ch->trace();
  }
  return r;
}

json check_json(const CheckResult& r) {
  json j{{"schema", kSchema}, {"command", "check"}, {"verdict", r.verdict}, {"accepted", r.accepted}};
  if (r.rejection)
    j["rejection"] = {{"line", r.rejection->line},
                      {"goal", r.rejection->goal.empty() ? "-" : r.rejection->goal},
                      {"reason", r.rejection->reason},
                      {"detail", r.rejection->detail}};
  else
    j["rejection"] = nullptr;
  j["timing"] = {{"parse_s", r.parse_s}, {"check_s", r.check_s}, {"propagate_s", r.counters.propagate_ns * 1e-9}};
  j["counters"] = counters_json(r.counters, r.proof_bytes);
  return j;
}

void print_human(const CheckResult& r, std::ostream& os) {
  if (r.rejection) os << "rejected: " << r.rejection->what() << "\n";
  os << "verdict: " << r.verdict << "\n";
  os << "timing: parse " << r.parse_s << " s, check " << r.check_s << " s, propagate "
     << r.counters.propagate_ns * 1e-9 << " s\n";
  const auto& c = r.counters;
  os << "counters: spec_materializations=" << c.spec_materializations << " rup_calls=" << c.rup_calls
     << " hinted_rups=" << c.hinted_rups << " pol_steps=" << c.pol_steps << " propagations=" << c.propagations
     << " proof_bytes=" << r.proof_bytes << "\n";
  os << "goals: syntactic=" << c.goals_syntactic << " tautology=" << c.goals_tautology << " rup=" << c.goals_rup
     << " explicit=" << c.goals_explicit << "\n";
}

int cmd_check(const std::string& formula, const std::string& proof, bool trace, bool as_json) {
  CheckResult r;
  try {
    r = run_check(read_file(formula), read_file(proof), trace);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (trace)
    for (const auto& t : r.trace) (as_json ? std::cerr : std::cout) << "trace: " << t << "\n";
  if (as_json) std::cout << check_json(r).dump(2) << "\n";
  else print_human(r, std::cout);
  return r.accepted ? 0 : 1;
}

std::vector<Var> parse_order(const std::string& spec, VarTable& vt) {
  std::string text = spec;
  if (!text.empty() && text[0] == '@') text = read_file(text.substr(1));
  std::replace(text.begin(), text.end(), ',', ' ');
  std::istringstream is(text);
  std::vector<Var> out;
  for (std::string t; is >> t;) {
    auto v = vt.find(t);
    if (!v) throw Error("order names unknown variable " + t);
    out.push_back(*v);
  }
  return out;
}

struct BreakArgs {
  std::string formula, syms, proof_out, broken_out, method = "new", order;
  bool cp = false, selfcheck = false, as_json = false;
};

int cmd_break(const BreakArgs& a) {
  std::string ftext, stext;
  VarTable vt;
  Formula f;
  std::vector<Symmetry> syms;
  BreakOptions opt;
  try {
    ftext = read_file(a.formula);
    stext = read_file(a.syms);
    f = parse_formula(ftext, vt);
    syms = parse_symmetries(stext, vt);
    opt.method = a.method == "old" ? Method::OLD : Method::NEW;
    opt.cp_variant = a.cp;
    if (!a.order.empty()) opt.order = parse_order(a.order, vt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::string stem = fs::path(a.formula).stem().string();
  std::string proof_path = a.proof_out.empty() ? stem + ".pbp" : a.proof_out;
  std::string broken_path = a.broken_out.empty() ? stem + ".broken.opb" : a.broken_out;
  BreakReport rep;
  auto t0 = std::chrono::steady_clock::now();
  {
    std::ofstream out(proof_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << proof_path << "\n";
      return 2;
    }
    std::vector<char> buf(1 << 20);
    out.rdbuf()->pubsetbuf(buf.data(), static_cast<std::streamsize>(buf.size()));
    try {
      rep = emit_break(out, vt, f, syms, opt);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
    out.flush();
  }
  double emit_s = seconds_since(t0);
  {
    std::ofstream bo(broken_path);
    std::vector<Constraint> all = f.constraints;
    all.insert(all.end(), rep.breaking.begin(), rep.breaking.end());
    write_opb(bo, all, vt);
  }
  json j{{"schema", kSchema},
         {"command", "break"},
         {"method", a.method},
         {"cp_variant", a.cp},
         {"proof", proof_path},
         {"broken_formula", broken_path},
         {"symmetries", syms.size()},
         {"breaking_constraints", rep.breaking.size()},
         {"proof_bytes", rep.bytes},
         {"proof_lines", rep.lines},
         {"order_bytes", rep.order_bytes},
         {"order_lines", rep.order_lines},
         {"emit_s", emit_s}};
  json frags = json::array();
  for (const auto& fr : rep.fragments) frags.push_back({{"support", fr.support}, {"lines", fr.lines}, {"bytes", fr.bytes}});
  j["fragments"] = frags;
  int code = 0;
  if (a.selfcheck) {
    CheckResult r;
    try {
      r = run_check(ftext, read_file(proof_path), false);
    } catch (const std::exception& e) {
      std::cerr << "error: selfcheck: " << e.what() << "\n";
      return 1;
    }
    j["selfcheck"] = check_json(r);
    if (!r.accepted) code = 1;
  }
  if (a.as_json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "proof: " << proof_path << " (" << rep.lines << " lines, " << rep.bytes << " bytes)\n";
    std::cout << "broken formula: " << broken_path << " (+" << rep.breaking.size() << " constraints)\n";
    std::cout << "emit: " << emit_s << " s\n";
    if (a.selfcheck) {
      const auto& sc = j["selfcheck"];
      std::cout << "selfcheck: " << sc["verdict"].get<std::string>();
      if (!sc["rejection"].is_null())
        std::cout << " line:" << sc["rejection"]["line"] << " reason:" << sc["rejection"]["reason"].get<std::string>();
      std::cout << "\n";
    }
  }
  return code;
}

std::string param_stem(const Instance& in) {
  std::string s = family_name(in.family);
  for (int p : in.params) s += "_" + std::to_string(p);
  return s;
}

int cmd_gen(const std::string& family, const std::vector<int>& params, std::string prefix) {
  Instance in;
  try {
    in = generate(parse_family(family), params);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (prefix.empty()) prefix = param_stem(in);
  std::ofstream(prefix + ".cnf") << to_dimacs(in);
  std::ofstream(prefix + ".json") << sidecar_json(in);
  std::ofstream(prefix + ".sym") << symmetry_text(in);
  std::cout << prefix << ".cnf: " << in.num_vars << " variables, " << in.clauses.size() << " clauses, "
            << in.generators.size() << " generators\n";
  return 0;
}

struct Cell {
  int n;
  std::string method;
  uint64_t bytes = 0;
  double emit_s = 0, check_s = -1;
  bool accepted = true;
};

Cell run_cell(Family fam, int n, bool old, bool check) {
  Cell c{n, old ? "old" : "new"};
  Instance in = generate(fam, {n});
  std::string cnf = to_dimacs(in);
  VarTable vt;
  Formula f = parse_formula(cnf, vt);
  auto syms = parse_symmetries(symmetry_text(in), vt);
  BreakOptions opt;
  opt.method = old ? Method::OLD : Method::NEW;
  std::ostringstream os;
  auto t0 = std::chrono::steady_clock::now();
  BreakReport rep = emit_break(os, vt, f, syms, opt);
  c.emit_s = seconds_since(t0);
  c.bytes = rep.bytes;
  if (check) {
    t0 = std::chrono::steady_clock::now();
    CheckResult r = run_check(cnf, os.str(), false);
    c.check_s = seconds_since(t0);
    c.accepted = r.accepted;
  }
  return c;
}

int cmd_compare(const std::string& family, const std::string& range, int step, bool check, const std::string& out) {
  Family fam;
  int lo, hi;
  try {
    fam = parse_family(family);
    auto dots = range.find("..");
    if (dots == std::string::npos) {
      lo = hi = std::stoi(range);
    } else {
      lo = std::stoi(range.substr(0, dots));
      hi = std::stoi(range.substr(dots + 2));
    }
    if (step < 1 || lo > hi) throw Error("bad range");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  int workers = 1;
  if (const char* w = std::getenv("PBSYM_WORKERS")) workers = std::max(1, std::atoi(w));
  std::vector<std::pair<int, bool>> jobs;
  for (int n = lo; n <= hi; n += step) {
    jobs.push_back({n, false});
    jobs.push_back({n, true});
  }
  std::vector<Cell> cells(jobs.size());
  try {
    for (size_t i = 0; i < jobs.size(); i += workers) {
      std::vector<std::future<Cell>> fut;
      for (size_t j = i; j < std::min(jobs.size(), i + workers); ++j)
        fut.push_back(std::async(std::launch::async, run_cell, fam, jobs[j].first, jobs[j].second, check));
      for (size_t j = 0; j < fut.size(); ++j) cells[i + j] = fut[j].get();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::ofstream file;
  if (!out.empty()) file.open(out);
  std::ostream& os = out.empty() ? std::cout : file;
  os << "n,method,proof_bytes,emit_seconds,check_seconds\n";
  bool ok = true;
  for (const auto& c : cells) {
    os << c.n << ',' << c.method << ',' << c.bytes << ',' << c.emit_s << ',';
    if (c.check_s >= 0) os << c.check_s;
    os << '\n';
    ok = ok && c.accepted;
  }
  if (!ok) std::cerr << "error: some emitted proofs were rejected\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pbsym: proof-logged symmetry breaking and proof checking"};
  app.require_subcommand(1);

  std::string formula, proof;
  bool trace = false, as_json = false;
  auto* check = app.add_subcommand("check", "Check a proof against a formula (exit 0 accepted, 1 rejected, 2 error)");
  check->add_option("formula", formula, "OPB or DIMACS formula")->required();
  check->add_option("proof", proof, "proof file")->required();
  check->add_flag("--trace", trace, "print goal discharge decisions");
  check->add_flag("--json", as_json, "print the report as JSON");

  BreakArgs ba;
  auto* brk = app.add_subcommand("break", "Emit breaking constraints and their proof");
  brk->add_option("formula", ba.formula, "OPB or DIMACS formula")->required();
  brk->add_option("symmetries", ba.syms, "symmetry file")->required();
  brk->add_option("-o,--proof", ba.proof_out, "proof output path");
  brk->add_option("--broken", ba.broken_out, "augmented formula output path (OPB)");
  brk->add_option("--method", ba.method, "new (auxiliary variables) or old (big coefficients)")
      ->check(CLI::IsMember({"new", "old"}));
  brk->add_flag("--cp-variant", ba.cp, "derive the order goals with cutting planes only");
  brk->add_option("--order", ba.order, "lex variable order, space separated or @file");
  brk->add_flag("--selfcheck", ba.selfcheck, "check the emitted proof immediately");
  brk->add_flag("--json", ba.as_json, "print the report as JSON");

  std::string family, prefix;
  std::vector<int> params;
  auto* gen = app.add_subcommand("gen", "Generate a crafted instance with its known symmetries");
  gen->add_option("family", family, "php | rphp | clqcl | count | tseitin")->required();
  gen->add_option("params", params, "family parameters")->required();
  gen->add_option("-o,--prefix", prefix, "output prefix (writes .cnf .json .sym)");

  std::string range, csv;
  int step = 1;
  bool no_check = false;
  auto* cmp = app.add_subcommand("compare", "Proof size and timing for both methods over a size range (CSV)");
  cmp->add_option("family", family, "instance family")->required();
  cmp->add_option("range", range, "sizes as lo..hi")->required();
  cmp->add_option("--step", step, "size increment");
  cmp->add_flag("--no-check", no_check, "skip checking the emitted proofs");
  cmp->add_option("-o,--output", csv, "CSV output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  if (*check) return cmd_check(formula, proof, trace, as_json);
  if (*brk) return cmd_break(ba);
  if (*gen) return cmd_gen(family, params, prefix);
  if (*cmp) return cmd_compare(family, range, step, !no_check, csv);
  return 2;
}
