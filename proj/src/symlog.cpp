#include "pbsym/symlog.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace pbsym {

Witness Symmetry::witness() const {
  Witness w;
  for (const auto& [v, l] : map) w.set(v, Image{Image::LIT, l});
  return w;
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string t; is >> t;) out.push_back(t);
  return out;
}

void map_lit(Symmetry& s, std::unordered_map<Var, Lit>& seen, Lit from, Lit to, int line, const VarTable& vt) {
  if (from.neg()) {
    from = ~from;
    to = ~to;
  }
  auto [it, fresh] = seen.emplace(from.var(), to);
  if (!fresh) {
    if (it->second == to) return;
    throw ParseError(line, "variable mapped twice: " + vt.name(from.var()));
  }
  if (to != from) s.map.emplace_back(from.var(), to);
}

}  // namespace

std::vector<Symmetry> parse_symmetries(const std::string& text, VarTable& vt) {
  std::vector<Symmetry> out;
  std::istringstream is(text);
  int lineno = 0;
  for (std::string raw; std::getline(is, raw);) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    Symmetry s;
    s.line = lineno;
    std::unordered_map<Var, Lit> seen;
    if (raw.find("->") != std::string::npos) {
      auto toks = split_ws(raw);
      if (toks.size() % 3) throw ParseError(lineno, "expected `a -> b` pairs");
      for (size_t i = 0; i < toks.size(); i += 3) {
        if (toks[i + 1] != "->") throw ParseError(lineno, "expected `->`");
        map_lit(s, seen, vt.parse_lit(toks[i]), vt.parse_lit(toks[i + 2]), lineno, vt);
      }
    } else {
      std::string body = raw;
      size_t pos = 0;
      while (true) {
        size_t a = body.find('(', pos);
        if (a == std::string::npos) {
          if (body.find_first_not_of(" \t\r", pos) != std::string::npos) throw ParseError(lineno, "text outside cycle");
          break;
        }
        if (body.find_first_not_of(" \t\r", pos) < a) throw ParseError(lineno, "text outside cycle");
        size_t b = body.find(')', a);
        if (b == std::string::npos) throw ParseError(lineno, "unclosed cycle");
        std::string inner = body.substr(a + 1, b - a - 1);
        std::replace(inner.begin(), inner.end(), ',', ' ');
        auto toks = split_ws(inner);
        if (toks.empty()) throw ParseError(lineno, "empty cycle");
        std::vector<Lit> cyc;
        for (auto& t : toks) cyc.push_back(vt.parse_lit(t));
        for (size_t i = 0; i < cyc.size(); ++i) map_lit(s, seen, cyc[i], cyc[(i + 1) % cyc.size()], lineno, vt);
        pos = b + 1;
      }
    }
    std::vector<Var> dom, img;
    for (const auto& [v, l] : s.map) {
      dom.push_back(v);
      img.push_back(l.var());
    }
    std::sort(dom.begin(), dom.end());
    std::sort(img.begin(), img.end());
    if (dom != img || std::adjacent_find(img.begin(), img.end()) != img.end())
      throw ParseError(lineno, "not a permutation of literals");
    for (Var v : dom)
      if (vt.is_aux(v)) throw ParseError(lineno, "aux variable in symmetry");
    out.push_back(std::move(s));
  }
  return out;
}

std::string format_symmetry(const Symmetry& s, const VarTable& vt) {
  std::string out;
  for (const auto& [v, l] : s.map) {
    if (!out.empty()) out += ' ';
    out += vt.name(v) + " -> " + vt.lit_str(l);
  }
  return out;
}

std::optional<size_t> verify_symmetry(const std::vector<Constraint>& f, const Symmetry& s) {
  std::unordered_multimap<size_t, size_t> pool;
  for (size_t i = 0; i < f.size(); ++i) pool.emplace(f[i].hash(), i);
  Witness w = s.witness();
  for (size_t i = 0; i < f.size(); ++i) {
    if (!touches(f[i], w)) continue;
    Constraint img = substitute(f[i], w);
    auto [a, b] = pool.equal_range(img.hash());
    bool found = false;
    for (auto it = a; it != b; ++it)
      if (f[it->second] == img) {
        found = true;
        break;
      }
    if (!found) return i;
  }
  return std::nullopt;
}

namespace {

std::string num(int64_t x) { return std::to_string(x); }

// Emits text lines and mirrors the checker's ID allocation.
class Emitter {
 public:
  Emitter(ProofWriter& w, VarTable& vt, int64_t next) : w_(w), vt_(vt), next_(next) {}

  int64_t id(const std::string& line) {
    w_.line(line);
    return next_++;
  }
  void raw(const std::string& line) { w_.line(line); }
  int64_t reserve() { return next_++; }
  int64_t next() const { return next_; }

  std::string lit(Lit l) const { return vt_.lit_str(l); }
  std::string var(Lit l) const { return vt_.name(l.var()); }
  Lit pos(const std::string& name) { return Lit::make(vt_.intern(name), false); }

  struct T {
    int coef;
    Lit lit;
  };
  std::string terms(const std::vector<T>& ts, int degree) const {
    std::string s;
    for (const auto& t : ts) s += "+" + std::to_string(t.coef) + " " + lit(t.lit) + " ";
    return s + ">= " + std::to_string(degree);
  }
  int64_t rup(const std::vector<T>& ts, int degree, const std::vector<int64_t>& hints) {
    std::string s = "rup " + terms(ts, degree) + " :";
    for (int64_t h : hints) s += " " + num(h);
    return id(s + ";");
  }
  int64_t red(const std::vector<T>& ts, int degree, Lit v, bool one) {
    return id("red " + terms(ts, degree) + " : " + var(v) + " -> " + (one ? "1" : "0") + ";");
  }

 private:
  ProofWriter& w_;
  VarTable& vt_;
  int64_t next_;
};

using T = Emitter::T;

// Lex spec layout: A(i) at offsets 1+2(i-1), D(i) after the n-1 A pairs.
struct Spec {
  int64_t base;
  int64_t n;
  int64_t A1(int64_t i) const { return base + 2 * (i - 1); }
  int64_t A2(int64_t i) const { return A1(i) + 1; }
  int64_t D1(int64_t i) const { return base + 2 * (n - 1) + 2 * (i - 1); }
  int64_t D2(int64_t i) const { return D1(i) + 1; }
  int64_t size() const { return 4 * n - 2; }
  std::vector<int64_t> sa1(int64_t lo, int64_t hi) const { return seq(lo, hi, &Spec::A1); }
  std::vector<int64_t> sa2(int64_t lo, int64_t hi) const { return seq(lo, hi, &Spec::A2); }
  std::vector<int64_t> sd1(int64_t lo, int64_t hi) const { return seq(lo, hi, &Spec::D1); }
  std::vector<int64_t> sd2(int64_t lo, int64_t hi) const { return seq(lo, hi, &Spec::D2); }
  std::vector<int64_t> seq(int64_t lo, int64_t hi, int64_t (Spec::*f)(int64_t) const) const {
    std::vector<int64_t> out;
    for (int64_t i = lo; i <= hi; ++i) out.push_back((this->*f)(i));
    return out;
  }
};

std::vector<int64_t> cat(std::initializer_list<std::vector<int64_t>> parts) {
  std::vector<int64_t> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

std::string idx(const std::string& p, int64_t i) { return p + std::to_string(i); }

}  // namespace

void emit_lex_order(ProofWriter& w, VarTable& vt, size_t nn, const std::string& name) {
  const int64_t n = static_cast<int64_t>(nn);
  Emitter e(w, vt, 1);
  auto L = [&](const std::string& s) { return e.pos(s); };
  auto names = [&](const std::string& p) {
    std::string s;
    for (int64_t i = 1; i <= n; ++i) s += " " + idx(p, i);
    return s;
  };
  auto aux_names = [&](const std::string& a, const std::string& d) {
    std::string s;
    for (int64_t i = 1; i < n; ++i) s += " " + idx(a, i);
    for (int64_t i = 1; i <= n; ++i) s += " " + idx(d, i);
    return s;
  };
  e.raw("def_order " + name);
  e.raw("vars");
  e.raw("left" + names("u") + ";");
  e.raw("right" + names("v") + ";");
  e.raw("aux" + aux_names("$a", "$d") + ";");
  e.raw("end vars;");
  e.raw("spec");
  auto spec_lines = [&](const std::string& u, const std::string& v, const std::string& a, const std::string& d) {
    for (int64_t i = 1; i < n; ++i) {
      Lit ai = L(idx(a, i)), ui = L(idx(u, i)), vi = L(idx(v, i));
      if (i == 1) {
        e.red({{1, ~ai}, {1, ui}, {1, ~vi}}, 1, ai, false);
        e.red({{2, ai}, {1, ~ui}, {1, vi}}, 2, ai, true);
      } else {
        Lit ap = L(idx(a, i - 1));
        e.red({{3, ~ai}, {2, ap}, {1, ui}, {1, ~vi}}, 3, ai, false);
        e.red({{2, ai}, {2, ~ap}, {1, ~ui}, {1, vi}}, 2, ai, true);
      }
    }
    for (int64_t i = 1; i <= n; ++i) {
      Lit di = L(idx(d, i)), ui = L(idx(u, i)), vi = L(idx(v, i));
      if (i == 1) {
        e.red({{1, ~di}, {1, ~ui}, {1, vi}}, 1, di, false);
        e.red({{2, di}, {1, ui}, {1, ~vi}}, 2, di, true);
      } else {
        Lit dp = L(idx(d, i - 1)), ap = L(idx(a, i - 1));
        e.red({{4, ~di}, {3, dp}, {1, ~ap}, {1, ~ui}, {1, vi}}, 4, di, false);
        e.red({{3, di}, {3, ~dp}, {1, ap}, {1, ui}, {1, ~vi}}, 3, di, true);
      }
    }
  };
  spec_lines("u", "v", "$a", "$d");
  e.raw("end spec;");
  e.raw("def");
  e.raw("+1 " + idx("$d", n) + " >= 1;");
  e.raw("end def;");

  // Transitivity. IDs: S(u,v) | S(v,w) | S(u,w) | O(u,v) O(v,w) | negated goal.
  const int64_t S = 4 * n - 2;
  Spec s1{1, n}, s2{1 + S, n}, s3{1 + 2 * S, n};
  const int64_t ouv = 3 * S + 1, ovw = 3 * S + 2, neg = 3 * S + 3;
  e.raw("transitivity");
  e.raw("vars");
  e.raw("fresh_right" + names("w") + ";");
  e.raw("fresh_aux_1" + aux_names("$b", "$e") + ";");
  e.raw("fresh_aux_2" + aux_names("$c", "$f") + ";");
  e.raw("end vars;");
  e.raw("proof");
  e.raw("proofgoal #1");
  Emitter t(w, vt, neg + 1);
  // bound[i]: 3 d_i + (stuff) folded; first: d_1 bound with the last d chain step.
  auto chain = [&](int64_t o, const Spec& sp, const std::string& d, std::vector<int64_t>& bound) -> int64_t {
    bound.assign(n + 1, 0);
    if (n == 1) return t.id("pol " + num(o) + " " + num(sp.D1(1)) + " +;");
    t.id("pol " + num(o) + " 4 * " + num(sp.D1(n)) + " +;");
    t.id("rup +1 " + idx(d, n - 1) + " >= 1 : -1;");
    bound[n - 1] = t.id("pol -2 " + idx(d, n - 1) + " w;");
    for (int64_t i = n - 2; i >= 1; --i) {
      t.id("pol -2 4 * " + num(sp.D1(i + 1)) + " +;");
      t.id("rup +1 " + idx(d, i) + " >= 1 : -1;");
      bound[i] = t.id("pol -2 " + idx(d, i) + " w;");
    }
    return t.id("pol -2 " + num(sp.D1(1)) + " +;");
  };
  std::vector<int64_t> bA, bB;
  int64_t firstA = chain(ouv, s1, "$d", bA);
  int64_t firstB = chain(ovw, s2, "$e", bB);
  if (n >= 2) {
    std::vector<int64_t> A(n), B(n);
    A[1] = t.id("pol " + num(s1.A2(1)) + " " + num(s3.A1(1)) + " + -1 + s;");
    B[1] = t.id("pol " + num(s2.A2(1)) + " " + num(s3.A1(1)) + " + " + num(firstA) + " + s;");
    for (int64_t i = 1; i <= n - 2; ++i) {
      std::string ca = num(s3.A1(i + 1));
      t.id("pol " + ca + " " + idx("u", i + 1) + " w " + idx("w", i + 1) + " w s;");
      t.id("pol -1 -3 +;");
      t.id("pol -2 -3 +;");
      t.id("pol " + ca + " " + idx("$c", i) + " w s;");
      A[i + 1] = t.id("pol -2 " + num(bB[i]) + " + -1 + -3 2 * + " + num(s1.A2(i + 1)) + " + s;");
      B[i + 1] = t.id("pol -4 " + num(bA[i]) + " + -2 + -3 2 * + " + num(s2.A2(i + 1)) + " + s;");
    }
    t.id("pol " + num(firstA) + " " + num(firstB) + " +;");
    t.id("pol -1 " + num(s3.D2(1)) + " + s;");
    for (int64_t i = 1; i <= n - 1; ++i) {
      t.id("pol " + num(bA[i]) + " " + num(bB[i]) + " + " + num(A[i]) + " + " + num(B[i]) + " + s -1 3 * +;");
      t.id("pol -1 " + num(s3.D2(i + 1)) + " + s;");
    }
  } else {
    t.id("pol " + num(firstA) + " " + num(firstB) + " +;");
    t.id("pol -1 " + num(s3.D2(1)) + " + s;");
  }
  t.id("pol -1 " + num(neg) + " +;");
  t.raw("qed #1 : -1;");
  t.raw("qed proof;");
  t.raw("end transitivity;");
  t.raw("reflexivity");
  t.raw("proof");
  t.raw("proofgoal #1");
  t.raw("rup >= 1;");
  t.raw("qed #1 : -1;");
  t.raw("qed proof;");
  t.raw("end reflexivity;");
  t.raw("end def_order;");
}

void emit_big_order(ProofWriter& w, VarTable&, size_t nn, const std::string& name) {
  const int64_t n = static_cast<int64_t>(nn);
  auto names = [&](const std::string& p) {
    std::string s;
    for (int64_t i = 1; i <= n; ++i) s += " " + idx(p, i);
    return s;
  };
  w.line("def_order " + name);
  w.line("vars");
  w.line("left" + names("u") + ";");
  w.line("right" + names("v") + ";");
  w.line("aux;");
  w.line("end vars;");
  w.line("spec");
  w.line("end spec;");
  w.line("def");
  std::string d;
  for (int64_t i = 1; i <= n; ++i) {
    Int c = Int(1) << (n - i);
    std::string cs = c.str();
    d += "+" + cs + " " + idx("v", i) + " -" + cs + " " + idx("u", i) + " ";
  }
  w.line(d + ">= 0;");
  w.line("end def;");
  w.line("transitivity");
  w.line("vars");
  w.line("fresh_right" + names("w") + ";");
  w.line("fresh_aux_1;");
  w.line("fresh_aux_2;");
  w.line("end vars;");
  w.line("proof");
  w.line("proofgoal #1");
  w.line("pol 1 2 + 3 +;");
  w.line("qed #1 : -1;");
  w.line("qed proof;");
  w.line("end transitivity;");
  w.line("reflexivity");
  w.line("proof");
  w.line("proofgoal #1");
  w.line("rup >= 1;");
  w.line("qed #1 : -1;");
  w.line("qed proof;");
  w.line("end reflexivity;");
  w.line("end def_order;");
}

namespace {

struct Support {
  std::vector<int64_t> p;  // 1-based positions in the order, increasing
  std::vector<Lit> x, y;   // z_{p_j} and its image
  int64_t k() const { return static_cast<int64_t>(p.size()); }
};

// Positive-literal rewritings of the spec at the support positions.
struct Rewrite {
  std::vector<int64_t> RA1, RA2, RD1, RD2;  // indexed 1..k
};

class Breaker {
 public:
  Breaker(Emitter& e, VarTable& vt, int64_t n, bool cp) : e_(e), vt_(vt), n_(n), cp_(cp) {}

  std::string a(int64_t i) { return idx("$a", i); }
  std::string d(int64_t i) { return idx("$d", i); }
  Lit L(const std::string& s) { return e_.pos(s); }

  // Derives RA*/RD* so each support constraint refers to the previous support.
  Rewrite rewrite(const Spec& sp, const Support& su) {
    const int64_t k = su.k(), n = n_;
    Rewrite r;
    r.RA1.assign(k + 1, 0);
    r.RA2 = r.RD1 = r.RD2 = r.RA1;
    std::vector<int64_t> ga1(k + 1, 0), ga2(k + 1, 0), pre_a(k + 1, 0);
    for (int64_t j = 1; j <= k; ++j) {
      int64_t p = su.p[j - 1];
      if (j == 1) {
        if (p > 1) {
          pre_a[1] = e_.rup({{1, L(a(p - 1))}}, 1, sp.sa2(1, p - 1));
          if (p <= n - 1) {
            r.RA1[1] = e_.id("pol " + num(sp.A1(p)) + " ~" + a(p - 1) + " 2 * + s;");
            r.RA2[1] = e_.id("pol " + num(sp.A2(p)) + " " + num(pre_a[1]) + " 2 * +;");
          }
        } else if (n >= 2) {
          r.RA1[1] = sp.A1(1);
          r.RA2[1] = sp.A2(1);
        }
        continue;
      }
      int64_t rr = su.p[j - 2], q = p - 1;
      if (q > rr) {
        ga1[j] = e_.rup({{1, ~L(a(q))}, {1, L(a(rr))}}, 1, sp.sa1(rr + 1, q));
        ga2[j] = e_.rup({{1, L(a(q))}, {1, ~L(a(rr))}}, 1, sp.sa2(rr + 1, q));
        if (p <= n - 1) {
          r.RA1[j] = e_.id("pol " + num(sp.A1(p)) + " " + num(ga1[j]) + " 2 * +;");
          r.RA2[j] = e_.id("pol " + num(sp.A2(p)) + " " + num(ga2[j]) + " 2 * +;");
        }
      } else if (p <= n - 1) {
        r.RA1[j] = sp.A1(p);
        r.RA2[j] = sp.A2(p);
      }
    }
    for (int64_t j = 1; j <= k; ++j) {
      int64_t p = su.p[j - 1];
      if (j == 1) {
        if (p > 1) {
          int64_t pre_d = e_.rup({{1, L(d(p - 1))}}, 1, sp.sd2(1, p - 1));
          r.RD1[1] = e_.id("pol " + num(sp.D1(p)) + " ~" + d(p - 1) + " 3 * + " + num(pre_a[1]) + " + s;");
          r.RD2[1] = e_.id("pol " + num(sp.D2(p)) + " " + num(pre_d) + " 3 * + ~" + a(p - 1) + " +;");
        } else {
          r.RD1[1] = sp.D1(1);
          r.RD2[1] = sp.D2(1);
        }
        continue;
      }
      int64_t rr = su.p[j - 2], q = p - 1;
      if (q > rr) {
        int64_t g1 = e_.rup({{1, ~L(d(q))}, {1, L(d(rr))}}, 1, sp.sd1(rr + 1, q));
        int64_t g2 = e_.rup({{1, L(d(q))}, {1, ~L(d(rr))}}, 1, sp.sd2(rr + 1, q));
        r.RD1[j] = e_.id("pol " + num(sp.D1(p)) + " " + num(g1) + " 3 * + " + num(ga2[j]) + " +;");
        r.RD2[j] = e_.id("pol " + num(sp.D2(p)) + " " + num(g2) + " 3 * + " + num(ga1[j]) + " +;");
      } else {
        r.RD1[j] = sp.D1(p);
        r.RD2[j] = sp.D2(p);
      }
    }
    return r;
  }

  void fragment(const Support& su, const std::string& sym_text, std::vector<Constraint>& kept,
                std::unordered_set<std::string>& taken, int64_t& s_counter) {
    const int64_t k = su.k(), n = n_;
    // Fresh circuit variables: s counter is global, t restarts per symmetry.
    std::vector<std::string> sn(k, ""), tn(k + 1, "");
    for (int64_t j = 1; j < k; ++j) sn[j] = fresh("s", s_counter, taken);
    int64_t tc = 0;
    for (int64_t j = 1; j <= k; ++j) tn[j] = fresh_local("t", tc, taken);
    auto X = [&](int64_t j) { return su.x[j - 1]; };
    auto Y = [&](int64_t j) { return su.y[j - 1]; };
    auto s = [&](int64_t j) { return L(sn[j]); };
    auto t = [&](int64_t j) { return L(tn[j]); };

    const int64_t circ = e_.next();
    for (int64_t j = 1; j < k; ++j) {
      if (j == 1) {
        e_.red({{1, ~s(1)}, {1, X(1)}, {1, ~Y(1)}}, 1, s(1), false);
        e_.red({{2, s(1)}, {1, ~X(1)}, {1, Y(1)}}, 2, s(1), true);
      } else {
        e_.red({{3, ~s(j)}, {2, s(j - 1)}, {1, X(j)}, {1, ~Y(j)}}, 3, s(j), false);
        e_.red({{2, s(j)}, {2, ~s(j - 1)}, {1, ~X(j)}, {1, Y(j)}}, 2, s(j), true);
      }
    }
    for (int64_t j = 1; j <= k; ++j) {
      if (j == 1) {
        e_.red({{1, ~t(1)}, {1, ~X(1)}, {1, Y(1)}}, 1, t(1), false);
        e_.red({{2, t(1)}, {1, X(1)}, {1, ~Y(1)}}, 2, t(1), true);
      } else {
        e_.red({{4, ~t(j)}, {3, t(j - 1)}, {1, ~s(j - 1)}, {1, ~X(j)}, {1, Y(j)}}, 4, t(j), false);
        e_.red({{3, t(j)}, {3, ~t(j - 1)}, {1, s(j - 1)}, {1, X(j)}, {1, ~Y(j)}}, 3, t(j), true);
      }
    }
    auto CS1 = [&](int64_t j) { return circ + 2 * (j - 1); };
    auto CS2 = [&](int64_t j) { return CS1(j) + 1; };
    auto CT1 = [&](int64_t j) { return circ + 2 * (k - 1) + 2 * (j - 1); };
    auto CT2 = [&](int64_t j) { return CT1(j) + 1; };
    auto xv = [&](int64_t j) { return e_.var(X(j)); };
    auto yv = [&](int64_t j) { return e_.var(Y(j)); };
    auto ids = [](std::initializer_list<int64_t> l) { return std::vector<int64_t>(l); };
    auto xy = [&](int64_t j) { return " " + xv(j) + " w " + yv(j) + " w"; };

    e_.raw("dom +1 " + tn[k] + " >= 1 : " + sym_text + " : subproof");
    const int64_t negC = e_.reserve();

    // leq: u = sigma(z), v = z.
    e_.raw("scope leq");
    {
      Spec sp{e_.next(), n};
      for (int64_t i = 0; i < sp.size(); ++i) e_.reserve();
      e_.raw("proofgoal #1");
      const int64_t g = e_.reserve();
      Rewrite r = rewrite(sp, su);
      std::vector<int64_t> L1(k, 0), L2(k, 0), L3(k, 0), L4(k, 0);
      for (int64_t j = 1; j < k; ++j) {
        int64_t p = su.p[j - 1];
        if (cp_) {
          L1[j] = j == 1 ? e_.id("pol " + num(CS1(1)) + " " + num(r.RD2[1]) + " +" + xy(1) + " s;")
                         : e_.id("pol " + num(CS1(j)) + " 3 * " + num(r.RD2[j]) + " 2 * + " + a(su.p[j - 2]) + " w " +
                                 yv(j) + " w " + xv(j) + " w " + num(L1[j - 1]) + " 6 * + s;");
          L2[j] = j == 1 ? e_.id("pol " + num(r.RA1[1]) + " " + num(CT2(1)) + " +" + xy(1) + " s;")
                         : e_.id("pol " + num(r.RA1[j]) + " 3 * " + num(CT2(j)) + " 2 * + " + sn[j - 1] + " w " +
                                 yv(j) + " w " + xv(j) + " w " + num(L2[j - 1]) + " 6 * + s;");
        } else {
          L1[j] = j == 1 ? e_.rup({{1, L(d(p))}, {1, ~s(1)}}, 1, ids({r.RD2[1], CS1(1)}))
                         : e_.rup({{1, L(d(p))}, {1, ~s(j)}}, 1, ids({L1[j - 1], r.RD2[j], CS1(j)}));
          L2[j] = j == 1 ? e_.rup({{1, t(1)}, {1, ~L(a(p))}}, 1, ids({r.RA1[1], CT2(1)}))
                         : e_.rup({{1, t(j)}, {1, ~L(a(p))}}, 1, ids({r.RA1[j], L2[j - 1], CT2(j)}));
        }
      }
      for (int64_t j = 1; j < k; ++j) {
        int64_t p = su.p[j - 1], p2 = su.p[j];
        if (cp_) {
          L3[j] = e_.id("pol " + num(CT2(j + 1)) + " " + num(L1[j]) + " + " + yv(j + 1) + " w " + xv(j + 1) + " w s;");
          L4[j] = e_.id("pol " + num(r.RD2[j + 1]) + " " + num(L2[j]) + " + " + yv(j + 1) + " w " + xv(j + 1) + " w s;");
        } else {
          L3[j] = e_.rup({{1, t(j + 1)}, {1, ~t(j)}, {1, L(d(p))}}, 1, ids({CT2(j + 1), L1[j]}));
          L4[j] = e_.rup({{1, L(d(p2))}, {1, ~L(d(p))}, {1, t(j)}}, 1, ids({r.RD2[j + 1], L2[j]}));
        }
      }
      int64_t prev = cp_ ? e_.id("pol " + num(CT2(1)) + " " + num(r.RD2[1]) + " +" + xy(1) + " s 2 d;")
                         : e_.rup({{1, L(d(su.p[0]))}, {1, t(1)}}, 1, ids({r.RD2[1], CT2(1)}));
      for (int64_t j = 1; j < k; ++j) {
        int64_t p = su.p[j - 1], p2 = su.p[j];
        if (cp_) {
          int64_t l6 = e_.id("pol " + num(prev) + " " + num(L3[j]) + " + s;");
          int64_t l7 = e_.id("pol " + num(prev) + " " + num(L4[j]) + " + s;");
          prev = e_.id("pol " + num(CT2(j + 1)) + " " + num(r.RD2[j + 1]) + " +" + xy(j + 1) + " " + sn[j] + " w " + a(p) + " w " +
                       num(l6) + " 3 * + " + num(l7) + " 3 * + s 2 d;");
        } else {
          int64_t l6 = e_.rup({{1, L(d(p))}, {1, t(j + 1)}}, 1, ids({prev, L3[j]}));
          int64_t l7 = e_.rup({{1, L(d(p2))}, {1, t(j)}}, 1, ids({prev, L4[j]}));
          prev = e_.rup({{1, L(d(p2))}, {1, t(j + 1)}}, 1, ids({l6, l7, r.RD2[j + 1], CT2(j + 1)}));
        }
      }
      e_.rup({}, 1, cat({ids({g, negC, prev}), sp.sd2(su.p[k - 1] + 1, n)}));
      e_.raw("qed #1 : -1;");
      e_.raw("end scope;");
    }

    // geq: u = z, v = sigma(z); the order constraint is in the database.
    e_.raw("scope geq");
    {
      Spec sp{e_.next(), n};
      for (int64_t i = 0; i < sp.size(); ++i) e_.reserve();
      const int64_t o = e_.reserve();
      e_.raw("proofgoal #2");
      std::vector<int64_t> dl(k + 1, 0), sa(k, 0), tl(k + 1, 0);
      for (int64_t j = k; j >= 1; --j) {
        int64_t p = su.p[j - 1];
        if (p == n) {
          dl[j] = o;
          continue;
        }
        int64_t upper = j == k ? n : su.p[j];
        dl[j] = e_.rup({{1, L(d(p))}}, 1, cat({ids({j == k ? o : dl[j + 1]}), sp.sd1(p + 1, upper)}));
      }
      if (cp_) {
        Rewrite r = rewrite(sp, su);
        for (int64_t j = 1; j < k; ++j)
          sa[j] = j == 1 ? e_.id("pol " + num(r.RA2[1]) + " " + num(CS1(1)) + " +" + xy(1) + " s;")
                         : e_.id("pol " + num(r.RA2[j]) + " " + num(CS1(j)) + " + " + num(sa[j - 1]) + " 2 * +" + xy(j) + " s;");
        for (int64_t j = 1; j <= k; ++j)
          tl[j] = j == 1 ? e_.id("pol " + num(CT2(1)) + " " + num(r.RD1[1]) + " + " + num(dl[1]) + " +" + xy(1) + " s;")
                         : e_.id("pol " + num(r.RD1[j]) + " " + num(CT2(j)) + " + " + num(sa[j - 1]) + " + " +
                                 num(dl[j]) + " 4 * + " + num(tl[j - 1]) + " 3 * + " + d(su.p[j - 2]) + " w" + xy(j) + " s;");
        e_.id("pol " + num(tl[k]) + " " + num(negC) + " +;");
      } else {
        for (int64_t j = 1; j < k; ++j) {
          int64_t p = su.p[j - 1];
          Lit ap = L(a(p));
          sa[j] = j == 1 ? e_.rup({{1, ~s(1)}, {1, ap}}, 1, cat({sp.sa2(1, p), ids({CS1(1)})}))
                         : e_.rup({{1, ~s(j)}, {1, ap}}, 1,
                                  cat({ids({sa[j - 1]}), sp.sa2(su.p[j - 2] + 1, p), ids({CS1(j)})}));
        }
        auto t_hints = [&](int64_t j) {
          int64_t p = su.p[j - 1];
          if (j == 1) return cat({ids({dl[1]}), ids({sp.D1(p)}), sp.sa2(1, p - 1), ids({CT2(1)})});
          return cat({ids({tl[j - 1], sa[j - 1]}), sp.sa2(su.p[j - 2] + 1, p - 1), ids({dl[j], sp.D1(p), CT2(j)})});
        };
        for (int64_t j = 1; j < k; ++j) tl[j] = e_.rup({{1, t(j)}}, 1, t_hints(j));
        e_.rup({}, 1, cat({ids({negC}), t_hints(k)}));
      }
      e_.raw("qed #2 : -1;");
      e_.raw("end scope;");
    }
    e_.raw("qed dom;");
    const int64_t C = e_.reserve();

    // Unfold t_k into the breaking clauses, then drop the circuit.
    std::vector<int64_t> tid(k + 1, 0);
    tid[k] = C;
    for (int64_t j = k - 1; j >= 1; --j) tid[j] = e_.rup({{1, t(j)}}, 1, ids({tid[j + 1], CT1(j + 1)}));
    const int64_t keep_from = e_.next();
    auto clause = [&](std::vector<Lit> ls) {
      std::vector<std::pair<Int, Lit>> raw;
      for (Lit l : ls) raw.emplace_back(1, l);
      kept.push_back(normalize(raw, 1));
    };
    for (int64_t j = 1; j < k; ++j) {
      e_.id("pol " + num(CS2(j)) + " " + e_.lit(X(j)) + " + s;");
      if (j == 1) clause({s(1), Y(1)});
      else clause({s(j), ~s(j - 1), Y(j)});
    }
    for (int64_t j = 1; j < k; ++j) {
      e_.id("pol " + num(CS2(j)) + " " + e_.lit(~Y(j)) + " + s;");
      if (j == 1) clause({s(1), ~X(1)});
      else clause({s(j), ~s(j - 1), ~X(j)});
    }
    e_.id("pol " + num(CT1(1)) + " " + num(tid[1]) + " + s;");
    clause({~X(1), Y(1)});
    for (int64_t j = 1; j < k; ++j) {
      e_.id("pol " + num(CT1(j + 1)) + " ~" + tn[j] + " 3 * + " + num(tid[j + 1]) + " 4 * + s;");
      clause({~s(j), ~X(j + 1), Y(j + 1)});
    }
    e_.raw("del range " + num(circ) + " " + num(keep_from) + ";");
  }

  void old_fragment(const Support& su, const std::vector<Int>& weight, const std::string& sym_text,
                    std::vector<Constraint>& kept, std::unordered_set<std::string>& taken, int64_t& s_counter) {
    const int64_t k = su.k();
    auto X = [&](int64_t j) { return su.x[j - 1]; };
    auto Y = [&](int64_t j) { return su.y[j - 1]; };
    std::vector<std::pair<Int, Lit>> raw;
    for (int64_t j = 1; j <= k; ++j) {
      raw.emplace_back(weight[j - 1], Y(j));
      raw.emplace_back(weight[j - 1], ~X(j));
    }
    Int total = 0;
    for (int64_t j = 1; j <= k; ++j) total += weight[j - 1];
    Constraint B = normalize(raw, total);
    e_.raw("dom " + format_constraint(B, vt_) + " : " + sym_text + " : subproof");
    const int64_t negC = e_.reserve();
    e_.raw("scope leq");
    e_.raw("proofgoal #1");
    const int64_t g = e_.reserve();
    e_.id("pol " + num(negC) + " " + num(g) + " +;");
    e_.raw("qed #1 : -1;");
    e_.raw("end scope;");
    e_.raw("scope geq");
    const int64_t o = e_.reserve();
    e_.raw("proofgoal #2");
    e_.id("pol " + num(negC) + " " + num(o) + " +;");
    e_.raw("qed #2 : -1;");
    e_.raw("end scope;");
    e_.raw("qed dom;");
    const int64_t b = e_.reserve();
    kept.push_back(B);

    std::vector<std::string> sn(k, "");
    for (int64_t j = 1; j < k; ++j) sn[j] = fresh("s", s_counter, taken);
    auto s = [&](int64_t j) { return L(sn[j]); };
    auto clause = [&](std::vector<T> ts) {
      std::vector<std::pair<Int, Lit>> r;
      for (auto& t : ts) r.emplace_back(t.coef, t.lit);
      kept.push_back(normalize(r, 1));
    };
    std::vector<int64_t> scratch;
    int64_t Lprev = b;
    Int M = 0;
    for (int64_t j = 1; j <= k; ++j) {
      std::vector<T> tc;
      if (j > 1) tc.push_back({1, ~s(j - 1)});
      tc.push_back({1, ~X(j)});
      tc.push_back({1, Y(j)});
      e_.rup(tc, 1, {Lprev});
      clause(tc);
      if (j == k) break;
      int64_t d1 = 0;
      if (j > 1) d1 = e_.red({{1, ~s(j)}, {1, s(j - 1)}}, 1, s(j), false);
      int64_t d2 = e_.red({{1, ~s(j)}, {1, X(j)}, {1, ~Y(j)}}, 1, s(j), false);
      std::vector<T> e1{{1, s(j)}}, e2{{1, s(j)}};
      if (j > 1) {
        e1.push_back({1, ~s(j - 1)});
        e2.push_back({1, ~s(j - 1)});
      }
      e1.push_back({1, ~X(j)});
      e2.push_back({1, Y(j)});
      e_.red(e1, 1, s(j), true);
      clause(e1);
      e_.red(e2, 1, s(j), true);
      clause(e2);
      std::string pol = "pol " + num(Lprev);
      if (j > 1) pol += " " + num(d1) + " " + M.str() + " * +";
      pol += " " + num(d2) + " " + weight[j - 1].str() + " * +;";
      int64_t Lj = e_.id(pol);
      M += weight[j - 1];
      if (d1) scratch.push_back(d1);
      scratch.push_back(d2);
      if (Lprev != b) scratch.push_back(Lprev);
      Lprev = Lj;
    }
    if (Lprev != b) scratch.push_back(Lprev);
    if (!scratch.empty()) {
      std::sort(scratch.begin(), scratch.end());
      std::string del = "del id";
      for (int64_t id : scratch) del += " " + num(id);
      e_.raw(del + ";");
    }
  }

 private:
  std::string fresh(const std::string& p, int64_t& ctr, std::unordered_set<std::string>& taken) {
    std::string name;
    do name = idx(p, ++ctr);
    while (taken.count(name));
    return name;
  }
  std::string fresh_local(const std::string& p, int64_t& ctr, std::unordered_set<std::string>& taken) {
    return fresh(p, ctr, taken);
  }

  Emitter& e_;
  VarTable& vt_;
  int64_t n_;
  bool cp_;
};

}  // namespace

BreakReport emit_break(std::ostream& out, VarTable& vt, const Formula& f, const std::vector<Symmetry>& syms,
                       const BreakOptions& opt) {
  std::vector<Var> z = opt.order.empty() ? f.vars : opt.order;
  {
    std::vector<Var> a = z, b = f.vars;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b || std::adjacent_find(a.begin(), a.end()) != a.end())
      throw Error("order must list every formula variable exactly once");
  }
  const int64_t n = static_cast<int64_t>(z.size());
  if (n == 0) throw Error("formula has no variables");
  std::unordered_map<Var, int64_t> pos;
  for (int64_t i = 0; i < n; ++i) pos[z[i]] = i + 1;
  // Names used by the formula; fresh circuit variables avoid them.
  std::unordered_set<std::string> taken;
  for (Var v : f.vars) taken.insert(vt.name(v));

  std::vector<Support> supports;
  for (const auto& sym : syms) {
    if (auto bad = verify_symmetry(f.constraints, sym))
      throw Error("line " + std::to_string(sym.line) + ": not a symmetry, image of constraint " +
                  std::to_string(*bad + 1) + " is missing: " + format_symmetry(sym, vt));
    Support su;
    std::vector<std::pair<int64_t, Lit>> sorted;
    for (const auto& [v, l] : sym.map) {
      auto it = pos.find(v);
      if (it == pos.end())
        throw Error("line " + std::to_string(sym.line) + ": symmetry moves a variable outside the order");
      sorted.emplace_back(it->second, l);
    }
    std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.first < b.first; });
    for (auto& [p, l] : sorted) {
      su.p.push_back(p);
      su.x.push_back(Lit::make(z[p - 1], false));
      su.y.push_back(l);
    }
    supports.push_back(std::move(su));
  }
  const bool any = std::any_of(supports.begin(), supports.end(), [](const Support& s) { return s.k() > 0; });

  ProofWriter w(out, vt);
  BreakReport rep;
  w.header();
  if (any) {
    const std::string oname = (opt.method == Method::NEW ? "lex" : "lexbig") + std::to_string(n);
    uint64_t b0 = w.bytes(), l0 = w.lines();
    if (opt.method == Method::NEW) emit_lex_order(w, vt, n, oname);
    else emit_big_order(w, vt, n, oname);
    rep.order_bytes = w.bytes() - b0;
    rep.order_lines = w.lines() - l0;
    std::string load = "load_order " + oname;
    for (Var v : z) load += " " + vt.name(v);
    w.line(load + ";");
  }

  Emitter e(w, vt, static_cast<int64_t>(f.constraints.size()) + 1);
  Breaker br(e, vt, n, opt.cp_variant);
  int64_t s_counter = 0;
  for (size_t i = 0; i < syms.size(); ++i) {
    const Support& su = supports[i];
    if (su.k() == 0) {
      rep.fragments.push_back({0, 0, 0});
      continue;
    }
    uint64_t fb = w.bytes(), fl = w.lines();
    std::string text = format_symmetry(syms[i], vt);
    if (opt.method == Method::NEW) {
      br.fragment(su, text, rep.breaking, taken, s_counter);
    } else {
      std::vector<Int> wt;
      for (int64_t p : su.p) wt.push_back(Int(1) << (n - p));
      br.old_fragment(su, wt, text, rep.breaking, taken, s_counter);
    }
    rep.fragments.push_back({su.p.size(), w.lines() - fl, w.bytes() - fb});
  }
  w.line("output NONE;");
  w.line("conclusion NONE;");
  w.line("end pseudo-Boolean proof;");
  rep.bytes = w.bytes();
  rep.lines = w.lines();
  return rep;
}

}  // namespace pbsym
