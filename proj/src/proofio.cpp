#include "pbsym/proofio.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace pbsym {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

namespace {

struct Stmt {
  int line = 0;
  std::vector<std::string> toks;
};

bool is_int(const std::string& s) {
  size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

Int to_int(const std::string& s, int line) {
  if (!is_int(s)) throw ParseError(line, "expected integer, got '" + s + "'");
  return Int(s[0] == '+' ? s.substr(1) : s);
}

int64_t to_id(const std::string& s, int line) {
  if (!is_int(s) || s.size() > 18) throw ParseError(line, "expected constraint id, got '" + s + "'");
  return std::stoll(s);
}

void split_line(const std::string& ln, int no, std::vector<Stmt>& out) {
  std::vector<std::string> toks;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) return;
    size_t p = cur.find(">=");
    if (p != std::string::npos && cur.size() > 2) {
      if (p > 0) toks.push_back(cur.substr(0, p));
      toks.push_back(">=");
      if (p + 2 < cur.size()) toks.push_back(cur.substr(p + 2));
    } else {
      toks.push_back(cur);
    }
    cur.clear();
  };
  for (char ch : ln) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      flush();
    } else if (ch == ';') {
      flush();
      if (!toks.empty()) out.push_back({no, std::move(toks)});
      toks.clear();
    } else if (ch == ':') {
      flush();
      toks.push_back(":");
    } else {
      cur += ch;
    }
  }
  flush();
  if (!toks.empty()) out.push_back({no, std::move(toks)});
}

std::vector<Stmt> lex(const std::string& text) {
  std::vector<Stmt> out;
  std::istringstream in(text);
  std::string ln;
  int no = 0;
  while (std::getline(in, ln)) {
    ++no;
    size_t f = ln.find_first_not_of(" \t\r");
    if (f == std::string::npos || ln[f] == '*') continue;
    split_line(ln, no, out);
  }
  return out;
}

// Parses "<coef> <lit> ... >= <deg>" from toks[b, e).
Constraint parse_constraint(const std::vector<std::string>& t, size_t b, size_t e, int line,
                            VarTable& vt) {
  std::vector<std::pair<Int, Lit>> raw;
  size_t i = b;
  while (i < e && t[i] != ">=") {
    if (i + 1 >= e) throw ParseError(line, "dangling term '" + t[i] + "'");
    Int a = to_int(t[i], line);
    try {
      raw.emplace_back(std::move(a), vt.parse_lit(t[i + 1]));
    } catch (const Error& ex) {
      throw ParseError(line, ex.what());
    }
    i += 2;
  }
  if (i >= e) throw ParseError(line, "missing '>='");
  if (i + 2 != e) throw ParseError(line, "expected a single degree after '>='");
  return normalize(raw, to_int(t[i + 1], line));
}

Witness parse_witness(const std::vector<std::string>& t, size_t b, size_t e, int line, VarTable& vt) {
  Witness w;
  auto image = [&](const std::string& s) -> Image {
    if (s == "0") return {Image::ZERO, {}};
    if (s == "1") return {Image::ONE, {}};
    try {
      return {Image::LIT, vt.parse_lit(s)};
    } catch (const Error&) {
      throw ParseError(line, "malformed witness image '" + s + "'");
    }
  };
  auto var = [&](const std::string& s) -> Var {
    if (s.empty() || s[0] == '~' || is_int(s)) throw ParseError(line, "malformed witness variable '" + s + "'");
    try {
      return vt.parse_lit(s).var();
    } catch (const Error&) {
      throw ParseError(line, "malformed witness variable '" + s + "'");
    }
  };
  std::set<Var> seen;
  auto put = [&](Var v, Image img) {
    if (!seen.insert(v).second) throw ParseError(line, "witness maps a variable twice");
    w.set(v, img);
  };
  bool arrow = (e - b >= 2 && t[b + 1] == "->");
  if (arrow) {
    if ((e - b) % 3 != 0) throw ParseError(line, "malformed witness");
    for (size_t i = b; i < e; i += 3) {
      if (t[i + 1] != "->") throw ParseError(line, "malformed witness");
      put(var(t[i]), image(t[i + 2]));
    }
  } else {
    if ((e - b) % 2 != 0) throw ParseError(line, "malformed witness");
    for (size_t i = b; i < e; i += 2) put(var(t[i]), image(t[i + 1]));
  }
  return w;
}

std::vector<PolToken> parse_pol(const std::vector<std::string>& t, size_t b, size_t e, int line,
                                VarTable& vt) {
  std::vector<PolToken> out;
  for (size_t i = b; i < e; ++i) {
    const std::string& s = t[i];
    const std::string* nx = i + 1 < e ? &t[i + 1] : nullptr;
    PolToken p{};
    if (s == "+") p.kind = PolToken::ADD;
    else if (s == "*") p.kind = PolToken::MUL;
    else if (s == "s") p.kind = PolToken::SAT;
    else if (s == "d") p.kind = PolToken::DIV;
    else if (s == "w") p.kind = PolToken::WEAKEN;
    else if (is_int(s)) {
      if (nx && (*nx == "*" || *nx == "d")) {
        p.kind = PolToken::SCALAR;
        p.scalar = to_int(s, line);
      } else {
        p.kind = PolToken::ID;
        p.id = to_id(s, line);
        if (p.id == 0) throw ParseError(line, "constraint id 0");
      }
    } else {
      try {
        p.lit = vt.parse_lit(s);
      } catch (const Error&) {
        throw ParseError(line, "bad pol token '" + s + "'");
      }
      p.kind = (nx && *nx == "w") ? PolToken::WVAR : PolToken::AXIOM;
      if (p.kind == PolToken::WVAR && p.lit.neg()) throw ParseError(line, "weakening needs a variable");
    }
    out.push_back(std::move(p));
  }
  if (out.empty()) throw ParseError(line, "empty pol");
  return out;
}

size_t find_colon(const std::vector<std::string>& t, size_t from) {
  for (size_t i = from; i < t.size(); ++i)
    if (t[i] == ":") return i;
  return t.size();
}

class Parser {
 public:
  Parser(std::vector<Stmt> st, VarTable& vt) : st_(std::move(st)), vt_(vt) {}

  ProofDocument document() {
    ProofDocument doc;
    if (st_.empty()) throw ParseError(1, "missing header");
    const Stmt& h = st_[0];
    if (h.toks.size() != 4 || h.toks[0] != "pseudo-Boolean" || h.toks[1] != "proof" || h.toks[2] != "version")
      throw ParseError(h.line, "missing header 'pseudo-Boolean proof version ...'");
    doc.version = h.toks[3];
    pos_ = 1;
    while (pos_ < st_.size()) doc.steps.push_back(top_step());
    return doc;
  }

 private:
  const Stmt& cur() {
    if (pos_ >= st_.size()) throw ParseError(st_.empty() ? 1 : st_.back().line, "unexpected end of proof");
    return st_[pos_];
  }
  bool at(const std::string& a, const std::string& b = "") {
    if (pos_ >= st_.size()) return false;
    const auto& t = st_[pos_].toks;
    if (t.empty() || t[0] != a) return false;
    return b.empty() || (t.size() >= 2 && t[1] == b);
  }
  void expect(const std::string& a, const std::string& b = "") {
    if (!at(a, b)) throw ParseError(cur().line, "expected '" + a + (b.empty() ? "" : " " + b) + "'");
    ++pos_;
  }

  Step inner_step() {
    const Stmt& s = cur();
    const auto& t = s.toks;
    Step out;
    out.line = s.line;
    if (t[0] == "pol") {
      out.kind = Step::POL;
      out.pol = parse_pol(t, 1, t.size(), s.line, vt_);
    } else if (t[0] == "rup") {
      out.kind = Step::RUP;
      size_t c = find_colon(t, 1);
      out.c = parse_constraint(t, 1, c, s.line, vt_);
      if (c < t.size()) {
        std::vector<int64_t> h;
        for (size_t i = c + 1; i < t.size(); ++i) h.push_back(to_id(t[i], s.line));
        out.hints = std::move(h);
      }
    } else if (t[0] == "del") {
      del(out, t, s.line);
    } else {
      throw ParseError(s.line, "unknown keyword '" + t[0] + "'");
    }
    ++pos_;
    return out;
  }

  void del(Step& out, const std::vector<std::string>& t, int line) {
    if (t.size() == 4 && t[1] == "range") {
      out.kind = Step::DEL_RANGE;
      out.ids = {to_id(t[2], line), to_id(t[3], line)};
    } else if (t.size() >= 2 && t[1] == "id") {
      out.kind = Step::DEL_ID;
      for (size_t i = 2; i < t.size(); ++i) out.ids.push_back(to_id(t[i], line));
    } else {
      throw ParseError(line, "malformed del");
    }
  }

  GoalKey goal_key(const std::string& s, int line) {
    GoalKey k;
    if (!s.empty() && s[0] == '#') {
      k.order = true;
      k.k = to_id(s.substr(1), line);
    } else {
      k.k = to_id(s, line);
    }
    return k;
  }

  ProofGoal proofgoal() {
    const Stmt& s = cur();
    if (s.toks.size() != 2) throw ParseError(s.line, "malformed proofgoal");
    ProofGoal g;
    g.key = goal_key(s.toks[1], s.line);
    g.line = s.line;
    ++pos_;
    while (!at("qed")) g.steps.push_back(inner_step());
    const Stmt& q = cur();
    if (q.toks.size() < 2 || !(goal_key(q.toks[1], q.line) == g.key))
      throw ParseError(q.line, "qed does not match proofgoal");
    if (q.toks.size() == 4 && q.toks[2] == ":")
      g.qed_id = to_id(q.toks[3], q.line);
    else if (q.toks.size() != 2)
      throw ParseError(q.line, "malformed qed");
    g.qed_line = q.line;
    ++pos_;
    return g;
  }

  std::vector<ProofGoal> goals_until(const std::string& a, const std::string& b) {
    std::vector<ProofGoal> gs;
    while (!at(a, b)) {
      if (!at("proofgoal")) throw ParseError(cur().line, "expected proofgoal or '" + a + " " + b + "'");
      gs.push_back(proofgoal());
      for (size_t i = 0; i + 1 < gs.size(); ++i)
        if (gs[i].key == gs.back().key) throw ParseError(gs.back().line, "proofgoal referenced twice");
    }
    return gs;
  }

  Step top_step() {
    const Stmt& s = cur();
    const auto& t = s.toks;
    Step out;
    out.line = s.line;
    const std::string& k = t[0];
    if (k == "pol" || k == "rup" || k == "del") return inner_step();
    if (k == "red" || k == "dom") {
      out.kind = k == "red" ? Step::RED : Step::DOM;
      size_t c1 = find_colon(t, 1);
      if (c1 == t.size()) throw ParseError(s.line, "missing witness");
      out.c = parse_constraint(t, 1, c1, s.line, vt_);
      size_t c2 = find_colon(t, c1 + 1);
      out.w = parse_witness(t, c1 + 1, c2, s.line, vt_);
      bool sub = false;
      if (c2 < t.size()) {
        if (c2 + 2 != t.size() || t[c2 + 1] != "subproof") throw ParseError(s.line, "expected ': subproof'");
        sub = true;
      }
      ++pos_;
      if (out.kind == Step::DOM && !sub) throw ParseError(s.line, "dom requires a subproof");
      if (sub) {
        out.sub = std::make_shared<Subproof>();
        if (out.kind == Step::DOM) {
          std::set<bool> kinds;
          while (!at("qed", "dom")) {
            if (!at("scope")) throw ParseError(cur().line, "expected scope or 'qed dom'");
            const Stmt& sc = cur();
            if (sc.toks.size() != 2 || (sc.toks[1] != "leq" && sc.toks[1] != "geq"))
              throw ParseError(sc.line, "expected 'scope leq' or 'scope geq'");
            ScopeBlock blk;
            blk.leq = sc.toks[1] == "leq";
            blk.line = sc.line;
            if (!kinds.insert(blk.leq).second) throw ParseError(sc.line, "scope repeated");
            ++pos_;
            blk.goals = goals_until("end", "scope");
            expect("end", "scope");
            out.sub->scopes.push_back(std::move(blk));
          }
          out.sub->end_line = cur().line;
          expect("qed", "dom");
        } else {
          out.sub->goals = goals_until("qed", "red");
          out.sub->end_line = cur().line;
          expect("qed", "red");
        }
      }
      return out;
    }
    if (k == "def_order") return order_block();
    ++pos_;
    if (k == "load_order") {
      if (t.size() < 2) throw ParseError(s.line, "load_order needs a name");
      out.kind = Step::LOAD_ORDER;
      out.name = t[1];
      for (size_t i = 2; i < t.size(); ++i) out.vars.push_back(var_tok(t[i], s.line));
    } else if (k == "f") {
      out.kind = Step::FCOUNT;
      if (t.size() > 2) throw ParseError(s.line, "malformed f");
      if (t.size() == 2) out.ids = {to_id(t[1], s.line)};
    } else if (k == "output" || k == "conclusion") {
      out.kind = k == "output" ? Step::OUTPUT : Step::CONCLUSION;
      for (size_t i = 1; i < t.size(); ++i) out.name += (i > 1 ? " " : "") + t[i];
    } else if (k == "end" && t.size() == 3 && t[1] == "pseudo-Boolean" && t[2] == "proof") {
      out.kind = Step::END;
    } else {
      throw ParseError(s.line, "unknown keyword '" + k + "'");
    }
    return out;
  }

  Var var_tok(const std::string& s, int line) {
    if (s.empty() || s[0] == '~') throw ParseError(line, "expected variable, got '" + s + "'");
    try {
      return vt_.parse_lit(s).var();
    } catch (const Error&) {
      throw ParseError(line, "expected variable, got '" + s + "'");
    }
  }

  std::vector<Var> var_list(const std::string& kw) {
    const Stmt& s = cur();
    if (s.toks.empty() || s.toks[0] != kw) throw ParseError(s.line, "expected '" + kw + "'");
    std::vector<Var> v;
    for (size_t i = 1; i < s.toks.size(); ++i) v.push_back(var_tok(s.toks[i], s.line));
    ++pos_;
    return v;
  }

  OrderProof order_proof(const std::string& section) {
    OrderProof p;
    p.present = true;
    p.line = cur().line;
    expect(section);
    if (at("vars")) {
      ++pos_;
      p.fresh_right = var_list("fresh_right");
      p.fresh_aux1 = var_list("fresh_aux_1");
      p.fresh_aux2 = var_list("fresh_aux_2");
      expect("end", "vars");
    }
    expect("proof");
    p.goals = goals_until("qed", "proof");
    expect("qed", "proof");
    expect("end", section);
    return p;
  }

  Step order_block() {
    const Stmt& s = cur();
    if (s.toks.size() != 2) throw ParseError(s.line, "def_order needs a name");
    Step out;
    out.kind = Step::DEF_ORDER;
    out.line = s.line;
    auto ob = std::make_shared<OrderBlock>();
    ob->name = s.toks[1];
    ob->line = s.line;
    ++pos_;
    expect("vars");
    ob->left = var_list("left");
    ob->right = var_list("right");
    ob->aux = var_list("aux");
    expect("end", "vars");
    if (at("spec")) {
      ++pos_;
      while (!at("end", "spec")) {
        const Stmt& r = cur();
        const auto& t = r.toks;
        if (t[0] != "red") throw ParseError(r.line, "expected red in spec");
        size_t c1 = find_colon(t, 1);
        if (c1 == t.size()) throw ParseError(r.line, "missing witness");
        Constraint c = parse_constraint(t, 1, c1, r.line, vt_);
        Witness w = parse_witness(t, c1 + 1, t.size(), r.line, vt_);
        ob->spec.emplace_back(std::move(c), std::move(w));
        ob->spec_lines.push_back(r.line);
        ++pos_;
      }
      ++pos_;
    }
    if (at("def")) {
      ++pos_;
      while (!at("end", "def")) {
        const Stmt& r = cur();
        ob->defs.push_back(parse_constraint(r.toks, 0, r.toks.size(), r.line, vt_));
        ++pos_;
      }
      ++pos_;
    }
    if (at("transitivity")) ob->trans = order_proof("transitivity");
    if (at("reflexivity")) ob->refl = order_proof("reflexivity");
    ob->end_line = cur().line;
    expect("end", "def_order");
    out.order = ob;
    return out;
  }

  std::vector<Stmt> st_;
  VarTable& vt_;
  size_t pos_ = 0;
};

}  // namespace

ProofDocument parse_proof(const std::string& text, VarTable& vt) {
  Parser p(lex(text), vt);
  return p.document();
}

Formula parse_opb(const std::string& text, VarTable& vt) {
  Formula f;
  std::set<Var> seen;
  std::istringstream in(text);
  std::string ln;
  int no = 0;
  std::vector<std::string> toks;
  int start = 0;
  auto finish = [&](int line) {
    size_t rel = toks.size();
    for (size_t i = 0; i < toks.size(); ++i)
      if (toks[i] == ">=" || toks[i] == "<=" || toks[i] == "=") rel = i;
    if (rel == toks.size() || rel + 2 != toks.size()) throw ParseError(line, "expected '<terms> >= <int> ;'");
    if ((rel % 2) != 0) throw ParseError(line, "dangling term");
    std::vector<std::pair<Int, Lit>> raw;
    for (size_t i = 0; i < rel; i += 2) {
      Int a = to_int(toks[i], line);
      Lit l;
      try {
        l = vt.parse_lit(toks[i + 1]);
      } catch (const Error& ex) {
        throw ParseError(line, std::string(ex.what()) + " (column " + std::to_string(i + 1) + ")");
      }
      if (seen.insert(l.var()).second) f.vars.push_back(l.var());
      raw.emplace_back(std::move(a), l);
    }
    Int d = to_int(toks[rel + 1], line);
    const std::string& op = toks[rel];
    if (op == ">=" || op == "=") f.constraints.push_back(normalize(raw, d));
    if (op == "<=" || op == "=") {
      for (auto& r : raw) r.first = -r.first;
      f.constraints.push_back(normalize(raw, -d));
    }
    toks.clear();
  };
  while (std::getline(in, ln)) {
    ++no;
    size_t b = ln.find_first_not_of(" \t\r");
    if (b == std::string::npos || ln[b] == '*') continue;
    std::string cur;
    for (char ch : ln) {
      if (std::isspace(static_cast<unsigned char>(ch)) || ch == ';') {
        if (!cur.empty()) toks.push_back(cur), cur.clear();
        if (ch == ';') {
          if (toks.empty()) throw ParseError(no, "duplicate ';'");
          finish(no);
        }
      } else {
        if (toks.empty() && cur.empty()) start = no;
        cur += ch;
      }
    }
    if (!cur.empty()) toks.push_back(cur);
  }
  if (!toks.empty()) throw ParseError(start, "constraint not terminated by ';'");
  return f;
}

Formula parse_cnf(const std::string& text, VarTable& vt) {
  Formula f;
  std::istringstream in(text);
  std::string ln;
  int no = 0;
  long nv = -1, nc = -1;
  std::vector<std::pair<Int, Lit>> cl;
  int start = 0;
  while (std::getline(in, ln)) {
    ++no;
    std::istringstream ls(ln);
    std::string tok;
    if (!(ls >> tok) || tok == "c" || tok[0] == 'c' || tok == "%") continue;
    if (tok == "p") {
      std::string fmt;
      if (!(ls >> fmt >> nv >> nc) || fmt != "cnf" || nv < 0 || nc < 0) throw ParseError(no, "bad header");
      for (long i = 1; i <= nv; ++i) f.vars.push_back(vt.intern("x" + std::to_string(i)));
      continue;
    }
    if (nv < 0) throw ParseError(no, "clause before 'p cnf' header");
    do {
      if (!is_int(tok)) throw ParseError(no, "bad literal '" + tok + "'");
      long x = std::stol(tok);
      if (x == 0) {
        f.constraints.push_back(normalize(cl, 1));
        cl.clear();
        continue;
      }
      if (std::labs(x) > nv) throw ParseError(no, "literal index exceeds header");
      if (cl.empty()) start = no;
      cl.emplace_back(1, Lit::make(f.vars[std::labs(x) - 1], x < 0));
    } while (ls >> tok);
  }
  if (nv < 0) throw ParseError(no, "missing 'p cnf' header");
  if (!cl.empty()) throw ParseError(start, "clause missing terminating 0");
  return f;
}

Formula parse_formula(const std::string& text, VarTable& vt) {
  std::istringstream in(text);
  std::string ln;
  while (std::getline(in, ln)) {
    size_t b = ln.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    if (ln[b] == 'c' || ln[b] == '*') continue;
    if (ln.compare(b, 2, "p ") == 0) return parse_cnf(text, vt);
    break;
  }
  return parse_opb(text, vt);
}

std::string format_constraint(const Constraint& c, const VarTable& vt) {
  std::string s;
  for (const auto& t : c.terms) {
    s += '+';
    s += t.coef.str();
    s += ' ';
    s += vt.lit_str(t.lit);
    s += ' ';
  }
  s += ">= ";
  s += c.degree.str();
  return s;
}

void write_opb(std::ostream& os, const std::vector<Constraint>& cs, const VarTable& vt) {
  std::set<Var> vars;
  for (const auto& c : cs)
    for (const auto& t : c.terms) vars.insert(t.lit.var());
  os << "* #variable= " << vars.size() << " #constraint= " << cs.size() << "\n";
  for (const auto& c : cs) os << format_constraint(c, vt) << " ;\n";
}

std::string format_witness(const Witness& w, const VarTable& vt) {
  std::string s;
  for (const auto& [v, img] : w.entries()) {
    if (!s.empty()) s += ' ';
    s += vt.name(v);
    s += " -> ";
    s += img.kind == Image::ZERO ? "0" : img.kind == Image::ONE ? "1" : vt.lit_str(img.lit);
  }
  return s;
}

std::string format_pol(const std::vector<PolToken>& toks, const VarTable& vt) {
  std::string s;
  for (const auto& p : toks) {
    if (!s.empty()) s += ' ';
    switch (p.kind) {
      case PolToken::ID: s += std::to_string(p.id); break;
      case PolToken::SCALAR: s += p.scalar.str(); break;
      case PolToken::AXIOM:
      case PolToken::WVAR: s += vt.lit_str(p.lit); break;
      case PolToken::MUL: s += '*'; break;
      case PolToken::ADD: s += '+'; break;
      case PolToken::SAT: s += 's'; break;
      case PolToken::DIV: s += 'd'; break;
      case PolToken::WEAKEN: s += 'w'; break;
    }
  }
  return s;
}

static std::string key_str(const GoalKey& k) {
  return k.order ? "#" + std::to_string(k.k) : std::to_string(k.k);
}

static void format_goal(const ProofGoal& g, const VarTable& vt, std::vector<std::string>& out) {
  out.push_back("proofgoal " + key_str(g.key));
  for (const auto& s : g.steps) {
    auto l = format_step(s, vt);
    out.insert(out.end(), l.begin(), l.end());
  }
  out.push_back("qed " + key_str(g.key) + (g.qed_id ? " : " + std::to_string(*g.qed_id) : "") + ";");
}

static std::string var_names(const std::vector<Var>& vs, const VarTable& vt) {
  std::string s;
  for (Var v : vs) s += ' ' + vt.name(v);
  return s;
}

std::vector<std::string> format_step(const Step& s, const VarTable& vt) {
  std::vector<std::string> out;
  switch (s.kind) {
    case Step::POL: out.push_back("pol " + format_pol(s.pol, vt) + ";"); break;
    case Step::RUP: {
      std::string l = "rup " + format_constraint(s.c, vt);
      if (s.hints) {
        l += " :";
        for (int64_t h : *s.hints) l += ' ' + std::to_string(h);
      }
      out.push_back(l + ";");
      break;
    }
    case Step::RED:
    case Step::DOM: {
      std::string l = (s.kind == Step::RED ? "red " : "dom ") + format_constraint(s.c, vt) + " : " +
                      format_witness(s.w, vt);
      if (!s.sub) {
        out.push_back(l + ";");
        break;
      }
      out.push_back(l + " : subproof");
      if (s.kind == Step::DOM) {
        for (const auto& sc : s.sub->scopes) {
          out.push_back(sc.leq ? "scope leq" : "scope geq");
          for (const auto& g : sc.goals) format_goal(g, vt, out);
          out.push_back("end scope;");
        }
        out.push_back("qed dom;");
      } else {
        for (const auto& g : s.sub->goals) format_goal(g, vt, out);
        out.push_back("qed red;");
      }
      break;
    }
    case Step::DEF_ORDER: {
      const OrderBlock& o = *s.order;
      out.push_back("def_order " + o.name);
      out.push_back("vars");
      out.push_back("left" + var_names(o.left, vt) + ";");
      out.push_back("right" + var_names(o.right, vt) + ";");
      out.push_back("aux" + var_names(o.aux, vt) + ";");
      out.push_back("end vars;");
      out.push_back("spec");
      for (const auto& [c, w] : o.spec) out.push_back("red " + format_constraint(c, vt) + " : " + format_witness(w, vt) + ";");
      out.push_back("end spec;");
      out.push_back("def");
      for (const auto& c : o.defs) out.push_back(format_constraint(c, vt) + ";");
      out.push_back("end def;");
      auto proof = [&](const OrderProof& p, const char* name, bool vars) {
        if (!p.present) return;
        out.push_back(name);
        if (vars) {
          out.push_back("vars");
          out.push_back("fresh_right" + var_names(p.fresh_right, vt) + ";");
          out.push_back("fresh_aux_1" + var_names(p.fresh_aux1, vt) + ";");
          out.push_back("fresh_aux_2" + var_names(p.fresh_aux2, vt) + ";");
          out.push_back("end vars;");
        }
        out.push_back("proof");
        for (const auto& g : p.goals) format_goal(g, vt, out);
        out.push_back("qed proof;");
        out.push_back(std::string("end ") + name + ";");
      };
      proof(o.trans, "transitivity", true);
      proof(o.refl, "reflexivity", false);
      out.push_back("end def_order;");
      break;
    }
    case Step::LOAD_ORDER: out.push_back("load_order " + s.name + var_names(s.vars, vt) + ";"); break;
    case Step::DEL_RANGE:
      out.push_back("del range " + std::to_string(s.ids[0]) + " " + std::to_string(s.ids[1]) + ";");
      break;
    case Step::DEL_ID: {
      std::string l = "del id";
      for (int64_t i : s.ids) l += ' ' + std::to_string(i);
      out.push_back(l + ";");
      break;
    }
    case Step::FCOUNT: out.push_back(s.ids.empty() ? "f;" : "f " + std::to_string(s.ids[0]) + ";"); break;
    case Step::OUTPUT: out.push_back("output " + s.name + ";"); break;
    case Step::CONCLUSION: out.push_back("conclusion " + s.name + ";"); break;
    case Step::END: out.push_back("end pseudo-Boolean proof;"); break;
  }
  return out;
}

std::string serialize_proof(const ProofDocument& doc, const VarTable& vt) {
  std::ostringstream os;
  ProofWriter w(os, vt);
  w.header(doc.version);
  for (const auto& s : doc.steps) w.step(s);
  return os.str();
}

void ProofWriter::put(const std::string& s) {
  os_ << s << '\n';
  bytes_ += s.size() + 1;
  ++lines_;
}

void ProofWriter::header(const std::string& version) { put("pseudo-Boolean proof version " + version); }

void ProofWriter::step(const Step& s) {
  for (const auto& l : format_step(s, vt_)) put(l);
}

void ProofWriter::line(const std::string& raw) { put(raw); }

bool ProofGoal::operator==(const ProofGoal& o) const {
  return key == o.key && steps == o.steps && qed_id == o.qed_id;
}

bool ScopeBlock::operator==(const ScopeBlock& o) const { return leq == o.leq && goals == o.goals; }

bool Subproof::operator==(const Subproof& o) const { return scopes == o.scopes && goals == o.goals; }

bool OrderProof::operator==(const OrderProof& o) const {
  return present == o.present && fresh_right == o.fresh_right && fresh_aux1 == o.fresh_aux1 &&
         fresh_aux2 == o.fresh_aux2 && goals == o.goals;
}

bool OrderBlock::operator==(const OrderBlock& o) const {
  if (name != o.name || left != o.left || right != o.right || aux != o.aux || defs != o.defs) return false;
  if (spec.size() != o.spec.size()) return false;
  for (size_t i = 0; i < spec.size(); ++i)
    if (!(spec[i].first == o.spec[i].first) || !(spec[i].second == o.spec[i].second)) return false;
  return trans == o.trans && refl == o.refl;
}

bool Step::operator==(const Step& o) const {
  if (kind != o.kind || pol != o.pol || !(c == o.c) || hints != o.hints || !(w == o.w) || name != o.name ||
      vars != o.vars || ids != o.ids)
    return false;
  if (bool(sub) != bool(o.sub) || (sub && !(*sub == *o.sub))) return false;
  if (bool(order) != bool(o.order) || (order && !(*order == *o.order))) return false;
  return true;
}

}  // namespace pbsym
