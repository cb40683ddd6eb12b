#include "pbsym/benchgen.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <sstream>

namespace pbsym {

Family parse_family(const std::string& s) {
  std::string l = s;
  std::transform(l.begin(), l.end(), l.begin(), [](unsigned char c) { return std::tolower(c); });
  if (l == "php") return Family::PHP;
  if (l == "rphp") return Family::RPHP;
  if (l == "clqcl") return Family::CLQCL;
  if (l == "count") return Family::COUNT;
  if (l == "tseitin" || l == "tseitingrid") return Family::TSEITIN;
  throw Error("unknown family: " + s);
}

std::string family_name(Family f) {
  switch (f) {
    case Family::PHP: return "php";
    case Family::RPHP: return "rphp";
    case Family::CLQCL: return "clqcl";
    case Family::COUNT: return "count";
    case Family::TSEITIN: return "tseitin";
  }
  return "";
}

namespace {

class Builder {
 public:
  explicit Builder(Instance& inst) : inst_(inst) { inst_.names.assign(1, ""); }
  int var(const std::string& name) {
    inst_.names.push_back(name);
    return ++inst_.num_vars;
  }
  void clause(std::vector<int> c) { inst_.clauses.push_back(std::move(c)); }
  // Generator induced by a permutation of variable indices.
  void perm(const std::string& label, const std::vector<int>& image) {
    Generator g{label, {}};
    for (int v = 1; v <= inst_.num_vars; ++v)
      if (image[v] != v) g.map.emplace_back(v, image[v]);
    inst_.generators.push_back(std::move(g));
  }
  std::vector<int> identity() const {
    std::vector<int> p(inst_.num_vars + 1);
    for (int v = 0; v <= inst_.num_vars; ++v) p[v] = v;
    return p;
  }

 private:
  Instance& inst_;
};

std::string nm(const std::string& p, std::initializer_list<int> ix) {
  std::string s = p;
  bool first = true;
  for (int i : ix) {
    if (!first) s += '_';
    s += std::to_string(i);
    first = false;
  }
  return s;
}

void need(bool ok, const std::string& msg) {
  if (!ok) throw Error(msg);
}

void php(Instance& in, int n) {
  need(n >= 2, "php needs n >= 2");
  Builder b(in);
  const int h = n - 1;
  std::vector<std::vector<int>> x(n + 1, std::vector<int>(h + 1));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= h; ++j) x[i][j] = b.var(nm("p", {i, j}));
  for (int i = 1; i <= n; ++i) {
    std::vector<int> c;
    for (int j = 1; j <= h; ++j) c.push_back(x[i][j]);
    b.clause(c);
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = 1; k <= h; ++k) b.clause({-x[i][k], -x[j][k]});
  for (int i = 1; i < n; ++i) {
    auto p = b.identity();
    for (int k = 1; k <= h; ++k) std::swap(p[x[i][k]], p[x[i + 1][k]]);
    b.perm("pigeons " + std::to_string(i) + " " + std::to_string(i + 1), p);
  }
  for (int k = 1; k + 1 <= h; ++k) {
    auto p = b.identity();
    for (int i = 1; i <= n; ++i) std::swap(p[x[i][k]], p[x[i][k + 1]]);
    b.perm("holes " + std::to_string(k) + " " + std::to_string(k + 1), p);
  }
}

// p_i_j: pigeon i rests at place j; r_j: place j is used; q_j_k: used place j maps to hole k.
void rphp(Instance& in, int n) {
  need(n >= 2, "rphp needs n >= 2");
  Builder b(in);
  const int m = 2 * n, h = n - 1;
  std::vector<std::vector<int>> p(n + 1, std::vector<int>(m + 1)), q(m + 1, std::vector<int>(h + 1));
  std::vector<int> r(m + 1);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j) p[i][j] = b.var(nm("p", {i, j}));
  for (int j = 1; j <= m; ++j) r[j] = b.var(nm("r", {j}));
  for (int j = 1; j <= m; ++j)
    for (int k = 1; k <= h; ++k) q[j][k] = b.var(nm("q", {j, k}));
  for (int i = 1; i <= n; ++i) {
    std::vector<int> c;
    for (int j = 1; j <= m; ++j) c.push_back(p[i][j]);
    b.clause(c);
  }
  for (int j = 1; j <= m; ++j)
    for (int i = 1; i <= n; ++i)
      for (int i2 = i + 1; i2 <= n; ++i2) b.clause({-p[i][j], -p[i2][j]});
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j) b.clause({-p[i][j], r[j]});
  for (int j = 1; j <= m; ++j) {
    std::vector<int> c{-r[j]};
    for (int k = 1; k <= h; ++k) c.push_back(q[j][k]);
    b.clause(c);
  }
  for (int j = 1; j <= m; ++j)
    for (int j2 = j + 1; j2 <= m; ++j2)
      for (int k = 1; k <= h; ++k) b.clause({-r[j], -r[j2], -q[j][k], -q[j2][k]});
  for (int i = 1; i < n; ++i) {
    auto s = b.identity();
    for (int j = 1; j <= m; ++j) std::swap(s[p[i][j]], s[p[i + 1][j]]);
    b.perm("pigeons " + std::to_string(i) + " " + std::to_string(i + 1), s);
  }
  for (int j = 1; j < m; ++j) {
    auto s = b.identity();
    for (int i = 1; i <= n; ++i) std::swap(s[p[i][j]], s[p[i][j + 1]]);
    std::swap(s[r[j]], s[r[j + 1]]);
    for (int k = 1; k <= h; ++k) std::swap(s[q[j][k]], s[q[j + 1][k]]);
    b.perm("rests " + std::to_string(j) + " " + std::to_string(j + 1), s);
  }
  for (int k = 1; k + 1 <= h; ++k) {
    auto s = b.identity();
    for (int j = 1; j <= m; ++j) std::swap(s[q[j][k]], s[q[j][k + 1]]);
    b.perm("holes " + std::to_string(k) + " " + std::to_string(k + 1), s);
  }
}

// e_u_v: edge; q_i_v: vertex v is the i-th clique member; c_v_l: vertex v has colour l.
// A k-clique in a properly c-coloured graph is impossible for k > c.
void clqcl(Instance& in, int n, int k, int c) {
  need(n >= 2 && c >= 1 && k > c, "clqcl needs n >= 2, c >= 1 and k > c");
  Builder b(in);
  std::vector<std::vector<int>> e(n + 1, std::vector<int>(n + 1)), q(k + 1, std::vector<int>(n + 1)),
      col(n + 1, std::vector<int>(c + 1));
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v) e[u][v] = e[v][u] = b.var(nm("e", {u, v}));
  for (int i = 1; i <= k; ++i)
    for (int v = 1; v <= n; ++v) q[i][v] = b.var(nm("q", {i, v}));
  for (int v = 1; v <= n; ++v)
    for (int l = 1; l <= c; ++l) col[v][l] = b.var(nm("c", {v, l}));
  for (int i = 1; i <= k; ++i) {
    std::vector<int> cl;
    for (int v = 1; v <= n; ++v) cl.push_back(q[i][v]);
    b.clause(cl);
  }
  for (int v = 1; v <= n; ++v)
    for (int i = 1; i <= k; ++i)
      for (int j = i + 1; j <= k; ++j) b.clause({-q[i][v], -q[j][v]});
  for (int i = 1; i <= k; ++i)
    for (int j = i + 1; j <= k; ++j)
      for (int u = 1; u <= n; ++u)
        for (int v = 1; v <= n; ++v)
          if (u != v) b.clause({-q[i][u], -q[j][v], e[u][v]});
  for (int v = 1; v <= n; ++v) {
    std::vector<int> cl;
    for (int l = 1; l <= c; ++l) cl.push_back(col[v][l]);
    b.clause(cl);
  }
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      for (int l = 1; l <= c; ++l) b.clause({-e[u][v], -col[u][l], -col[v][l]});
  for (int a = 1; a < n; ++a) {
    std::vector<int> pi(n + 1);
    for (int v = 1; v <= n; ++v) pi[v] = v;
    std::swap(pi[a], pi[a + 1]);
    auto s = b.identity();
    for (int u = 1; u <= n; ++u)
      for (int v = u + 1; v <= n; ++v) s[e[u][v]] = e[pi[u]][pi[v]];
    for (int i = 1; i <= k; ++i)
      for (int v = 1; v <= n; ++v) s[q[i][v]] = q[i][pi[v]];
    for (int v = 1; v <= n; ++v)
      for (int l = 1; l <= c; ++l) s[col[v][l]] = col[pi[v]][l];
    b.perm("vertices " + std::to_string(a) + " " + std::to_string(a + 1), s);
  }
}

void count(Instance& in, int n, int k) {
  need(k >= 1 && n >= k, "count needs n >= k >= 1");
  Builder b(in);
  std::vector<std::vector<int>> sets;
  std::map<std::vector<int>, int> id;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      sets.push_back(cur);
      return;
    }
    for (int e = start; e <= n; ++e) {
      cur.push_back(e);
      self(self, e + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  for (const auto& s : sets) {
    std::string name = "s";
    for (size_t i = 0; i < s.size(); ++i) name += (i ? "_" : "") + std::to_string(s[i]);
    id[s] = b.var(name);
  }
  for (int e = 1; e <= n; ++e) {
    std::vector<int> cl;
    for (const auto& s : sets)
      if (std::find(s.begin(), s.end(), e) != s.end()) cl.push_back(id[s]);
    b.clause(cl);
  }
  for (size_t i = 0; i < sets.size(); ++i)
    for (size_t j = i + 1; j < sets.size(); ++j) {
      std::vector<int> common;
      std::set_intersection(sets[i].begin(), sets[i].end(), sets[j].begin(), sets[j].end(),
                            std::back_inserter(common));
      if (!common.empty()) b.clause({-id[sets[i]], -id[sets[j]]});
    }
  for (int a = 1; a < n; ++a) {
    auto s = b.identity();
    for (const auto& set : sets) {
      std::vector<int> img;
      for (int e : set) img.push_back(e == a ? a + 1 : e == a + 1 ? a : e);
      std::sort(img.begin(), img.end());
      s[id[set]] = id[img];
    }
    b.perm("elements " + std::to_string(a) + " " + std::to_string(a + 1), s);
  }
}

void tseitin(Instance& in, int n) {
  need(n >= 2, "tseitin needs n >= 2");
  Builder b(in);
  std::vector<std::vector<int>> hz(n + 1, std::vector<int>(n + 1)), vt(n + 1, std::vector<int>(n + 1));
  for (int r = 1; r <= n; ++r)
    for (int c = 1; c < n; ++c) hz[r][c] = b.var(nm("h", {r, c}));
  for (int r = 1; r < n; ++r)
    for (int c = 1; c <= n; ++c) vt[r][c] = b.var(nm("v", {r, c}));
  for (int r = 1; r <= n; ++r)
    for (int c = 1; c <= n; ++c) {
      std::vector<int> es;
      if (c > 1) es.push_back(hz[r][c - 1]);
      if (c < n) es.push_back(hz[r][c]);
      if (r > 1) es.push_back(vt[r - 1][c]);
      if (r < n) es.push_back(vt[r][c]);
      // Forbid every odd-parity assignment to the incident edges.
      for (unsigned m = 0; m < (1u << es.size()); ++m) {
        if (__builtin_popcount(m) % 2 == 0) continue;
        std::vector<int> cl;
        for (size_t i = 0; i < es.size(); ++i) cl.push_back((m >> i) & 1 ? -es[i] : es[i]);
        b.clause(cl);
      }
    }
  for (int r = 1; r < n; ++r)
    for (int c = 1; c < n; ++c) {
      Generator g{"face " + std::to_string(r) + " " + std::to_string(c), {}};
      for (int v : {hz[r][c], vt[r][c], vt[r][c + 1], hz[r + 1][c]}) g.map.emplace_back(v, -v);
      std::sort(g.map.begin(), g.map.end());
      in.generators.push_back(std::move(g));
    }
}

}  // namespace

Instance generate(Family f, std::vector<int> params) {
  Instance in;
  in.family = f;
  auto need_params = [&](size_t lo, std::vector<int> defaults) {
    if (params.size() < lo) throw Error(family_name(f) + ": missing parameters");
    for (size_t i = params.size(); i < lo + defaults.size(); ++i) params.push_back(defaults[i - lo]);
    if (params.size() > lo + defaults.size()) throw Error(family_name(f) + ": too many parameters");
  };
  switch (f) {
    case Family::PHP: need_params(1, {}); break;
    case Family::RPHP: need_params(1, {}); break;
    case Family::CLQCL: need_params(1, {6, 5}); break;
    case Family::COUNT: need_params(1, {3}); break;
    case Family::TSEITIN: need_params(1, {}); break;
  }
  in.params = params;
  switch (f) {
    case Family::PHP: php(in, params[0]); break;
    case Family::RPHP: rphp(in, params[0]); break;
    case Family::CLQCL: clqcl(in, params[0], params[1], params[2]); break;
    case Family::COUNT: count(in, params[0], params[1]); break;
    case Family::TSEITIN: tseitin(in, params[0]); break;
  }
  return in;
}

std::string to_dimacs(const Instance& in) {
  std::ostringstream os;
  os << "c " << family_name(in.family);
  for (int p : in.params) os << ' ' << p;
  os << "\np cnf " << in.num_vars << ' ' << in.clauses.size() << '\n';
  for (const auto& c : in.clauses) {
    for (int l : c) os << l << ' ';
    os << "0\n";
  }
  return os.str();
}

namespace {

std::string lit_name(int l) { return (l < 0 ? "~x" : "x") + std::to_string(std::abs(l)); }

std::string cycles(const Generator& g) {
  std::map<int, int> img(g.map.begin(), g.map.end());
  auto apply = [&](int l) {
    auto it = img.find(std::abs(l));
    int i = it == img.end() ? std::abs(l) : it->second;
    return l < 0 ? -i : i;
  };
  std::string out;
  std::map<int, bool> seen;
  for (const auto& [v, _] : g.map) {
    if (seen[v]) continue;
    std::vector<int> cyc{v};
    seen[v] = true;
    for (int l = apply(v); l != v; l = apply(l)) {
      cyc.push_back(l);
      seen[std::abs(l)] = true;
    }
    out += "(";
    for (size_t i = 0; i < cyc.size(); ++i) out += (i ? " " : "") + lit_name(cyc[i]);
    out += ")";
  }
  return out;
}

}  // namespace

std::string symmetry_text(const Instance& in) {
  std::string out;
  for (const auto& g : in.generators) out += "# " + g.label + "\n" + cycles(g) + "\n";
  return out;
}

std::string sidecar_json(const Instance& in) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["family"] = family_name(in.family);
  j["params"] = in.params;
  j["num_vars"] = in.num_vars;
  j["num_clauses"] = in.clauses.size();
  nlohmann::ordered_json vars = nlohmann::ordered_json::object();
  for (int v = 1; v <= in.num_vars; ++v) vars["x" + std::to_string(v)] = in.names[v];
  j["variables"] = vars;
  nlohmann::ordered_json syms = nlohmann::ordered_json::array();
  for (const auto& g : in.generators) syms.push_back({{"label", g.label}, {"cycles", cycles(g)}});
  j["symmetries"] = syms;
  return j.dump(2) + "\n";
}

bool brute_sat(const std::vector<Constraint>& cs) {
  std::map<Var, int> index;
  for (const auto& c : cs)
    for (const auto& t : c.terms) index.emplace(t.lit.var(), 0);
  if (index.size() > 20) throw Error("brute force limited to 20 variables");
  int k = 0;
  for (auto& [v, i] : index) i = k++;
  struct Row {
    std::vector<std::pair<int64_t, uint32_t>> pos, neg;  // coefficient, bit mask
    int64_t degree;
  };
  const Int cap = Int(1) << 58;
  std::vector<Row> rows;
  for (const auto& c : cs) {
    Row r;
    Int d = c.degree;
    if (d > cap) throw Error("coefficient too large for brute force");
    r.degree = static_cast<int64_t>(d);
    for (const auto& t : c.terms) {
      Int a = t.coef;
      if (a > cap) a = cap;  // saturation keeps the semantics once a >= degree
      (t.lit.neg() ? r.neg : r.pos).emplace_back(static_cast<int64_t>(a), 1u << index[t.lit.var()]);
    }
    rows.push_back(std::move(r));
  }
  for (uint32_t a = 0; a < (1u << k); ++a) {
    bool ok = true;
    for (const auto& r : rows) {
      int64_t s = 0;
      for (const auto& [c, m] : r.pos)
        if (a & m) s += c;
      for (const auto& [c, m] : r.neg)
        if (!(a & m)) s += c;
      if (s < r.degree) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

bool oracle_equisat(const std::vector<Constraint>& f, const std::vector<Constraint>& b) {
  std::vector<Constraint> both = f;
  both.insert(both.end(), b.begin(), b.end());
  return brute_sat(f) == brute_sat(both);
}

bool oracle_lex(const std::vector<bool>& alpha, const std::vector<bool>& beta) {
  if (alpha.size() != beta.size()) throw Error("length mismatch");
  Int a = 0, b = 0;
  for (size_t i = 0; i < alpha.size(); ++i) {
    a = a * 2 + (alpha[i] ? 1 : 0);
    b = b * 2 + (beta[i] ? 1 : 0);
  }
  return a <= b;
}

}  // namespace pbsym
