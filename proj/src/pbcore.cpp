#include "pbsym/pbcore.hpp"

#include <algorithm>
#include <variant>

namespace pbsym {

Var VarTable::intern(std::string_view name) {
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  Var v = static_cast<Var>(names_.size());
  names_.emplace_back(name);
  ids_.emplace(names_.back(), v);
  return v;
}

std::optional<Var> VarTable::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

static bool valid_name(std::string_view s) {
  if (s.empty()) return false;
  size_t i = s[0] == '$' ? 1 : 0;
  if (i >= s.size()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_')) return false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '[' || c == ']' ||
          c == '.' || c == '#' || c == '{' || c == '}' || c == '^' || c == '-'))
      return false;
  }
  return true;
}

Lit VarTable::parse_lit(std::string_view tok) {
  bool neg = false;
  if (!tok.empty() && tok[0] == '~') {
    neg = true;
    tok.remove_prefix(1);
  }
  if (!valid_name(tok)) throw Error("bad literal '" + std::string(tok) + "'");
  return Lit::make(intern(tok), neg);
}

Int Constraint::coef_sum() const {
  Int s = 0;
  for (const auto& t : terms) s += t.coef;
  return s;
}

bool Constraint::mentions(Var v) const {
  for (const auto& t : terms)
    if (t.lit.var() == v) return true;
  return false;
}

static uint64_t int_hash(const Int& x) {
  if (x <= Int(UINT64_MAX)) return x.convert_to<uint64_t>();
  return std::hash<std::string>{}(x.str());
}

static uint64_t mix(uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdULL;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ULL;
  h ^= h >> 33;
  return h;
}

size_t Constraint::hash() const {
  uint64_t h = mix(int_hash(degree) + 0x9e3779b97f4a7c15ULL);
  for (const auto& t : terms) h += mix((uint64_t(t.lit.code) << 20) ^ int_hash(t.coef));
  return static_cast<size_t>(h);
}

bool Constraint::operator==(const Constraint& o) const {
  if (degree != o.degree || terms.size() != o.terms.size()) return false;
  auto key = [](const Constraint& c) {
    std::vector<std::pair<uint32_t, const Int*>> v;
    v.reserve(c.terms.size());
    for (const auto& t : c.terms) v.emplace_back(t.lit.code, &t.coef);
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
    return v;
  };
  auto a = key(*this), b = key(o);
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].first != b[i].first || *a[i].second != *b[i].second) return false;
  return true;
}

Constraint normalize(const std::vector<std::pair<Int, Lit>>& raw, const Int& degree) {
  struct Acc {
    Var v;
    Int c;
  };
  std::vector<Acc> acc;
  acc.reserve(raw.size());
  std::unordered_map<Var, size_t> where;
  const bool big = raw.size() > 16;
  Int deg = degree;
  for (const auto& [a, l] : raw) {
    if (a == 0) continue;
    size_t idx = acc.size();
    if (big) {
      auto [it, fresh] = where.emplace(l.var(), acc.size());
      idx = it->second;
      if (fresh) acc.push_back({l.var(), 0});
    } else {
      for (size_t i = 0; i < acc.size(); ++i)
        if (acc[i].v == l.var()) {
          idx = i;
          break;
        }
      if (idx == acc.size()) acc.push_back({l.var(), 0});
    }
    if (l.neg()) {
      acc[idx].c -= a;
      deg -= a;
    } else {
      acc[idx].c += a;
    }
  }
  Constraint out;
  out.terms.reserve(acc.size());
  for (auto& x : acc) {
    if (x.c > 0) {
      out.terms.push_back({std::move(x.c), Lit::make(x.v, false)});
    } else if (x.c < 0) {
      Int m = -x.c;
      deg += m;
      out.terms.push_back({std::move(m), Lit::make(x.v, true)});
    }
  }
  out.degree = deg < 0 ? Int(0) : deg;
  return out;
}

Constraint negate(const Constraint& c) {
  Constraint out;
  out.terms.reserve(c.terms.size());
  Int sum = 0;
  for (const auto& t : c.terms) {
    out.terms.push_back({t.coef, ~t.lit});
    sum += t.coef;
  }
  Int d = sum - c.degree + 1;
  out.degree = d < 0 ? Int(0) : d;
  return out;
}

Constraint add(const Constraint& a, const Constraint& b) {
  std::vector<std::pair<Int, Lit>> raw;
  raw.reserve(a.terms.size() + b.terms.size());
  for (const auto& t : a.terms) raw.emplace_back(t.coef, t.lit);
  for (const auto& t : b.terms) raw.emplace_back(t.coef, t.lit);
  return normalize(raw, a.degree + b.degree);
}

Constraint multiply(const Constraint& c, const Int& k) {
  if (k <= 0) throw Error("non-positive multiplier");
  Constraint out = c;
  for (auto& t : out.terms) t.coef *= k;
  out.degree *= k;
  return out;
}

static Int ceil_div(const Int& a, const Int& k) { return (a + k - 1) / k; }

Constraint divide(const Constraint& c, const Int& k) {
  if (k <= 0) throw Error("non-positive divisor");
  Constraint out;
  out.terms.reserve(c.terms.size());
  for (const auto& t : c.terms) out.terms.push_back({ceil_div(t.coef, k), t.lit});
  out.degree = ceil_div(c.degree, k);
  return out;
}

Constraint saturate(const Constraint& c) {
  Constraint out;
  out.degree = c.degree;
  for (const auto& t : c.terms) {
    Int a = t.coef < c.degree ? t.coef : c.degree;
    if (a > 0) out.terms.push_back({std::move(a), t.lit});
  }
  return out;
}

Constraint weaken(const Constraint& c, Var v) {
  Constraint out;
  out.degree = c.degree;
  for (const auto& t : c.terms) {
    if (t.lit.var() == v)
      out.degree -= t.coef;
    else
      out.terms.push_back(t);
  }
  if (out.degree < 0) out.degree = 0;
  return out;
}

Constraint literal_axiom(Lit l) {
  Constraint c;
  c.terms.push_back({Int(1), l});
  c.degree = 0;
  return c;
}

Constraint falsum() {
  Constraint c;
  c.degree = 1;
  return c;
}

void Witness::set(Var v, Image img) {
  auto it = index_.find(v);
  if (it != index_.end()) {
    entries_[it->second].second = img;
    return;
  }
  index_.emplace(v, entries_.size());
  entries_.emplace_back(v, img);
}

const Image* Witness::get(Var v) const {
  auto it = index_.find(v);
  return it == index_.end() ? nullptr : &entries_[it->second].second;
}

Image Witness::apply(Lit l) const {
  const Image* img = get(l.var());
  if (!img) return {Image::LIT, l};
  if (!l.neg()) return *img;
  switch (img->kind) {
    case Image::ZERO: return {Image::ONE, {}};
    case Image::ONE: return {Image::ZERO, {}};
    default: return {Image::LIT, ~img->lit};
  }
}

Constraint substitute(const Constraint& c, const Witness& w) {
  std::vector<std::pair<Int, Lit>> raw;
  raw.reserve(c.terms.size());
  Int deg = c.degree;
  for (const auto& t : c.terms) {
    Image img = w.apply(t.lit);
    if (img.kind == Image::LIT)
      raw.emplace_back(t.coef, img.lit);
    else if (img.kind == Image::ONE)
      deg -= t.coef;
  }
  return normalize(raw, deg);
}

bool touches(const Constraint& c, const Witness& w) {
  for (const auto& t : c.terms)
    if (w.get(t.lit.var())) return true;
  return false;
}

Constraint evaluate_polish(const std::vector<PolToken>& prog, const Lookup& db) {
  using Item = std::variant<Constraint, Int, Var>;
  std::vector<Item> st;
  auto pop_constraint = [&]() {
    if (st.empty() || !std::holds_alternative<Constraint>(st.back()))
      throw Error("pol: stack underflow (constraint expected)");
    Constraint c = std::move(std::get<Constraint>(st.back()));
    st.pop_back();
    return c;
  };
  auto pop_scalar = [&]() {
    if (st.empty() || !std::holds_alternative<Int>(st.back()))
      throw Error("pol: stack underflow (integer expected)");
    Int k = std::move(std::get<Int>(st.back()));
    st.pop_back();
    return k;
  };
  for (const auto& tok : prog) {
    switch (tok.kind) {
      case PolToken::ID: {
        CPtr c = db(tok.id);
        if (!c) throw Error("pol: unknown constraint id " + std::to_string(tok.id));
        st.emplace_back(*c);
        break;
      }
      case PolToken::AXIOM: st.emplace_back(literal_axiom(tok.lit)); break;
      case PolToken::SCALAR: st.emplace_back(tok.scalar); break;
      case PolToken::WVAR: st.emplace_back(tok.lit.var()); break;
      case PolToken::MUL: {
        Int k = pop_scalar();
        st.emplace_back(multiply(pop_constraint(), k));
        break;
      }
      case PolToken::DIV: {
        Int k = pop_scalar();
        st.emplace_back(divide(pop_constraint(), k));
        break;
      }
      case PolToken::ADD: {
        Constraint b = pop_constraint();
        Constraint a = pop_constraint();
        st.emplace_back(add(a, b));
        break;
      }
      case PolToken::SAT: st.emplace_back(saturate(pop_constraint())); break;
      case PolToken::WEAKEN: {
        if (st.empty() || !std::holds_alternative<Var>(st.back()))
          throw Error("pol: stack underflow (variable expected)");
        Var v = std::get<Var>(st.back());
        st.pop_back();
        st.emplace_back(weaken(pop_constraint(), v));
        break;
      }
    }
  }
  if (st.size() != 1 || !std::holds_alternative<Constraint>(st.back()))
    throw Error("pol: stack must end with exactly one constraint");
  return std::move(std::get<Constraint>(st.back()));
}

// ---- propagation ----

int Propagator::push_slot(const Constraint* raw, CPtr owner) {
  uint32_t s = static_cast<uint32_t>(slots_.size());
  Slot sl;
  sl.c = std::move(owner);
  sl.raw = raw;
  sl.slack0 = -raw->degree;
  sl.maxcoef = 0;
  for (const auto& t : raw->terms) {
    sl.slack0 += t.coef;
    if (t.coef > sl.maxcoef) sl.maxcoef = t.coef;
  }
  sl.active = true;
  slots_.push_back(std::move(sl));
  slack_.emplace_back();
  stamp_.push_back(0);
  index(s);
  if (slots_[s].maxcoef > slots_[s].slack0) unit_.push_back(s);
  live_terms_ += raw->terms.size();
  ++live_;
  return static_cast<int>(s);
}

void Propagator::index(uint32_t s) {
  const Constraint* c = slots_[s].raw;
  for (uint32_t i = 0; i < c->terms.size(); ++i) {
    Lit l = c->terms[i].lit;
    if (l.code >= occ_.size()) {
      size_t n = std::max<size_t>((l.code | 1) + 1, occ_.size() * 2);
      occ_.resize(n);
      listed_.resize(n, 0);
    }
    if (l.var() >= val_.size()) val_.resize(std::max<size_t>(l.var() + 1, val_.size() * 2), -1);
    if (!listed_[l.code]) {
      listed_[l.code] = 1;
      touched_lits_.push_back(l.code);
    }
    occ_[l.code].push_back({s, i});
  }
}

int Propagator::add(CPtr c) {
  const Constraint* raw = c.get();
  return push_slot(raw, std::move(c));
}

void Propagator::remove(int slot) {
  Slot& s = slots_[slot];
  if (!s.active) return;
  s.active = false;
  dead_terms_ += s.raw->terms.size();
  live_terms_ -= s.raw->terms.size();
  --live_;
  s.c.reset();
  s.raw = nullptr;
  if (dead_terms_ > live_terms_ + 4096) compact();
}

void Propagator::compact() {
  for (uint32_t code : touched_lits_) {
    occ_[code].clear();
    listed_[code] = 0;
  }
  touched_lits_.clear();
  std::vector<uint32_t> units;
  for (uint32_t s = 0; s < slots_.size(); ++s) {
    if (!slots_[s].active) continue;
    index(s);
    if (slots_[s].maxcoef > slots_[s].slack0) units.push_back(s);
  }
  unit_.swap(units);
  dead_terms_ = 0;
}

void Propagator::clear() {
  for (uint32_t code : touched_lits_) {
    occ_[code].clear();
    listed_[code] = 0;
  }
  touched_lits_.clear();
  slots_.clear();
  slack_.clear();
  stamp_.clear();
  unit_.clear();
  dead_terms_ = live_terms_ = live_ = 0;
}

Int& Propagator::slack_of(uint32_t s) {
  if (stamp_[s] != epoch_) {
    stamp_[s] = epoch_;
    slack_[s] = slots_[s].slack0;
  }
  return slack_[s];
}

void Propagator::assign(Lit l) {
  val_[l.var()] = l.neg() ? 0 : 1;
  trail_.push_back(l);
  ++props_;
}

bool Propagator::scan(uint32_t s) {
  const Int& sl = slack_of(s);
  if (sl < 0) return true;
  if (!(slots_[s].maxcoef > sl)) return false;
  for (const auto& t : slots_[s].raw->terms) {
    if (t.coef > sl && val_[t.lit.var()] < 0) assign(t.lit);
  }
  return false;
}

bool Propagator::conflict(const std::vector<const Constraint*>& extra) {
  const size_t base = slots_.size();
  for (const Constraint* c : extra) push_slot(c, nullptr);
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  trail_.clear();
  bool bad = false;
  for (size_t i = 0; i < unit_.size() && !bad; ++i) {
    uint32_t s = unit_[i];
    if (slots_[s].active && scan(s)) bad = true;
  }
  for (size_t q = 0; q < trail_.size() && !bad; ++q) {
    Lit f = ~trail_[q];
    if (f.code >= occ_.size()) continue;
    for (const Occ& o : occ_[f.code]) {
      const Slot& sl = slots_[o.slot];
      if (!sl.active) continue;
      Int& sk = slack_of(o.slot);
      sk -= sl.raw->terms[o.term].coef;
      if (sk < 0) {
        bad = true;
        break;
      }
      if (sl.maxcoef > sk && scan(o.slot)) {
        bad = true;
        break;
      }
    }
  }
  for (Lit l : trail_) val_[l.var()] = -1;
  trail_.clear();
  // temporary slots are the newest entries everywhere, so pop them off the back
  while (slots_.size() > base) {
    uint32_t s = static_cast<uint32_t>(slots_.size() - 1);
    const Constraint* c = slots_[s].raw;
    for (const auto& t : c->terms) occ_[t.lit.code].pop_back();
    live_terms_ -= c->terms.size();
    --live_;
    if (!unit_.empty() && unit_.back() == s) unit_.pop_back();
    slots_.pop_back();
    slack_.pop_back();
    stamp_.pop_back();
  }
  return bad;
}

bool rup_check(const std::vector<const Constraint*>& db, const Constraint& goal) {
  thread_local Propagator p;
  p.clear();
  for (const Constraint* c : db) p.add(CPtr(std::shared_ptr<const Constraint>(), c));
  Constraint ng = negate(goal);
  bool ok = p.conflict({&ng});
  p.clear();
  return ok;
}

std::string to_string(const Constraint& c, const VarTable& vt) {
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

}  // namespace pbsym
