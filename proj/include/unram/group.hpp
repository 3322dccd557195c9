#pragma once

// Finite group arithmetic on dense index tables, built from permutation
// generators or a polycyclic (power-commutator) presentation.  Element 0 is
// always the identity and indexing is deterministic for a fixed presentation.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "unram/zmatrix.hpp"

namespace unram {

using Elt = std::uint32_t;

// Minimal group interface used by the resolution layer.  Concrete groups are
// dense-table FiniteGroups; direct products used by tensor resolutions are
// virtual pair views and never materialize a table.
struct GroupOps {
  virtual ~GroupOps() = default;
  virtual Elt order() const = 0;
  virtual Elt mul(Elt a, Elt b) const = 0;
  virtual Elt inv(Elt a) const = 0;
};

struct PairOps final : GroupOps {
  std::shared_ptr<const GroupOps> left, right;
  PairOps(std::shared_ptr<const GroupOps> l, std::shared_ptr<const GroupOps> r)
      : left(std::move(l)), right(std::move(r)) {}
  Elt order() const override { return left->order() * right->order(); }
  Elt encode(Elt a, Elt b) const { return a * right->order() + b; }
  Elt first(Elt x) const { return x / right->order(); }
  Elt second(Elt x) const { return x % right->order(); }
  Elt mul(Elt a, Elt b) const override {
    return encode(left->mul(first(a), first(b)), right->mul(second(a), second(b)));
  }
  Elt inv(Elt a) const override { return encode(left->inv(first(a)), right->inv(second(a))); }
};

// Presentation descriptor: either permutation generators (as images arrays)
// or a power-commutator presentation.
struct PcPresentation {
  std::vector<unsigned> orders;                      // relative orders o_i >= 2
  // power[i]   : normal-form word for g_i^{o_i} over generators j > i
  // comm[j][i] : normal-form word for [g_j, g_i] (j > i) over generators > i
  // words are exponent vectors of full length k (entries for idx <= i must be 0)
  std::vector<std::vector<unsigned>> power;
  std::vector<std::vector<std::vector<unsigned>>> comm;
};

struct Presentation {
  std::vector<std::vector<unsigned>> perms;  // non-empty for permutation input
  std::optional<PcPresentation> pc;
  std::string source_text;
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

inline std::vector<unsigned> unit(std::size_t k, unsigned g) {
  std::vector<unsigned> w(k, 0);
  w[g] = 1;
  return w;
}

class FiniteGroup final : public GroupOps, public std::enable_shared_from_this<FiniteGroup> {
 public:
  Elt order() const override { return n_; }
  Elt mul(Elt a, Elt b) const override { return table_[std::size_t(a) * n_ + b]; }
  Elt inv(Elt a) const override { return inv_[a]; }
  Elt conj(Elt x, Elt g) const { return mul(mul(inv(g), x), g); }        // g^-1 x g
  Elt commutator(Elt a, Elt b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  unsigned element_order(Elt a) const { return ord_[a]; }
  unsigned exponent() const {
    unsigned e = 1;
    for (Elt x = 0; x < n_; ++x) e = std::lcm(e, ord_[x]);
    return e;
  }
  Elt power(Elt a, long long e) const {
    long long m = element_order(a);
    e %= m;
    if (e < 0) e += m;
    Elt r = 0;
    for (long long i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }
  const std::vector<Elt>& generators() const { return gens_; }
  const Presentation& presentation() const { return pres_; }

  bool is_abelian() const {
    for (Elt a : gens_)
      for (Elt b : gens_)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  // --- construction ----------------------------------------------------

  static GroupPtr from_table(std::vector<Elt> table, Elt n, std::vector<Elt> gens,
                             Presentation pres = {}) {
    auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    g->n_ = n;
    g->table_ = std::move(table);
    g->gens_ = std::move(gens);
    g->pres_ = std::move(pres);
    g->finish();
    return g;
  }

  static GroupPtr from_permutations(const std::vector<std::vector<unsigned>>& perms,
                                    std::size_t order_cap = 100000);
  static GroupPtr from_pc(const PcPresentation& pc, std::size_t order_cap = 100000);
  static GroupPtr cyclic(unsigned m);

  // exhaustive check of the group axioms (tests only; quadratic/cubic)
  bool check_axioms(bool full_associativity = false) const {
    for (Elt a = 0; a < n_; ++a) {
      if (mul(0, a) != a || mul(a, 0) != a) return false;
      if (mul(a, inv(a)) != 0 || mul(inv(a), a) != 0) return false;
    }
    if (full_associativity)
      for (Elt a = 0; a < n_; ++a)
        for (Elt b = 0; b < n_; ++b)
          for (Elt c = 0; c < n_; ++c)
            if (mul(mul(a, b), c) != mul(a, mul(b, c))) return false;
    return true;
  }

 private:
  FiniteGroup() = default;
  void finish() {
    inv_.assign(n_, 0);
    ord_.assign(n_, 0);
    for (Elt a = 0; a < n_; ++a) {
      Elt x = a;
      unsigned o = 1;
      while (x != 0) {
        if (mul(x, a) == 0) inv_[a] = x;
        x = mul(x, a);
        ++o;
      }
      if (a == 0) inv_[0] = 0;
      ord_[a] = (a == 0) ? 1 : o;
    }
  }

  Elt n_ = 0;
  std::vector<Elt> table_;
  std::vector<Elt> inv_;
  std::vector<unsigned> ord_;
  std::vector<Elt> gens_;
  Presentation pres_;
};

// --- permutation construction ------------------------------------------

namespace detail {

inline std::vector<unsigned> perm_compose(const std::vector<unsigned>& a,
                                          const std::vector<unsigned>& b) {
  // (a then b): x -> b[a[x]]
  std::vector<unsigned> c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = b[a[i]];
  return c;
}

}  // namespace detail

inline GroupPtr FiniteGroup::from_permutations(const std::vector<std::vector<unsigned>>& perms,
                                               std::size_t order_cap) {
  if (perms.empty()) throw std::invalid_argument("from_permutations: no generators");
  std::size_t deg = 0;
  for (const auto& p : perms) deg = std::max(deg, p.size());
  std::vector<std::vector<unsigned>> gens;
  for (auto p : perms) {
    std::size_t old = p.size();
    p.resize(deg);
    for (std::size_t i = old; i < deg; ++i) p[i] = unsigned(i);
    gens.push_back(std::move(p));
  }
  std::vector<unsigned> id(deg);
  for (std::size_t i = 0; i < deg; ++i) id[i] = unsigned(i);

  std::vector<std::vector<unsigned>> elems{id};
  std::map<std::vector<unsigned>, Elt> index{{id, 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& g : gens) {
      auto w = detail::perm_compose(elems[head], g);
      if (index.emplace(w, Elt(elems.size())).second) {
        elems.push_back(std::move(w));
        if (elems.size() > order_cap) throw std::runtime_error("group order cap exceeded");
      }
    }
  }
  Elt n = Elt(elems.size());
  std::vector<Elt> table(std::size_t(n) * n);
  for (Elt a = 0; a < n; ++a)
    for (Elt b = 0; b < n; ++b) table[std::size_t(a) * n + b] = index.at(detail::perm_compose(elems[a], elems[b]));
  std::vector<Elt> gen_idx;
  for (const auto& g : gens) gen_idx.push_back(index.at(g));
  Presentation pres;
  pres.perms = perms;
  return from_table(std::move(table), n, std::move(gen_idx), std::move(pres));
}

// --- polycyclic construction (collection from the left) ------------------

namespace detail {

struct Collector {
  const PcPresentation& pc;
  std::size_t k;
  explicit Collector(const PcPresentation& p) : pc(p), k(p.orders.size()) {}

  using Letter = std::pair<unsigned, long long>;  // (generator, exponent)

  // collect an arbitrary letter word into normal-form exponents
  std::vector<unsigned> collect(std::vector<Letter> word) const {
    std::vector<unsigned> nf(k, 0);
    // process letters left to right, merging one copy at a time; the pending
    // corrections produced by a merge precede the letter's remaining copies
    for (std::size_t pos = 0; pos < word.size(); ++pos) {
      auto [g, e] = word[pos];
      if (e == 0) continue;
      if (e < 0) {
        // g^-1 = g^(o-1) * (g^o)^-1
        std::vector<Letter> expand;
        for (long long t = 0; t < -e; ++t) {
          expand.emplace_back(g, pc.orders[g] - 1);
          append_word_inverse(expand, pc.power[g]);
        }
        word.erase(word.begin() + pos);
        word.insert(word.begin() + pos, expand.begin(), expand.end());
        --pos;
        continue;
      }
      std::vector<Letter> pending = merge_one(nf, g);
      if (e > 1) pending.emplace_back(g, e - 1);
      if (!pending.empty()) word.insert(word.begin() + pos + 1, pending.begin(), pending.end());
    }
    return nf;
  }

  // multiply normal form nf by a single copy of g on the right; returns the
  // letters that must still be merged afterwards
  std::vector<Letter> merge_one(std::vector<unsigned>& nf, unsigned g) const {
    // move g leftwards past generators with larger index; using
    // g_j^e g = g (g_j [g_j,g])^e, blocks re-emerge in ascending j order
    std::vector<Letter> pending;
    for (unsigned j = g + 1; j < k; ++j) {
      unsigned ej = nf[j];
      if (ej == 0) continue;
      for (unsigned t = 0; t < ej; ++t) {
        pending.emplace_back(j, 1);
        append_word(pending, pc.comm[j][g]);
      }
      nf[j] = 0;
    }
    nf[g] += 1;
    if (nf[g] == pc.orders[g]) {
      nf[g] = 0;
      std::vector<Letter> pw;
      append_word(pw, pc.power[g]);
      pw.insert(pw.end(), pending.begin(), pending.end());
      pending = std::move(pw);
    }
    return pending;
  }

  static void append_word(std::vector<Letter>& out, const std::vector<unsigned>& nfword) {
    for (std::size_t i = 0; i < nfword.size(); ++i)
      if (nfword[i]) out.emplace_back(unsigned(i), (long long)nfword[i]);
  }
  static void append_word_inverse(std::vector<Letter>& out, const std::vector<unsigned>& nfword) {
    for (std::size_t i = nfword.size(); i-- > 0;)
      if (nfword[i]) out.emplace_back(unsigned(i), -(long long)nfword[i]);
  }

  std::vector<unsigned> mul_nf(const std::vector<unsigned>& a, const std::vector<unsigned>& b) const {
    std::vector<Letter> w;
    append_word(w, a);
    append_word(w, b);
    return collect(std::move(w));
  }
};

}  // namespace detail

inline GroupPtr FiniteGroup::from_pc(const PcPresentation& pc, std::size_t order_cap) {
  const std::size_t k = pc.orders.size();
  if (k == 0) throw std::invalid_argument("from_pc: empty presentation");
  for (unsigned o : pc.orders)
    if (o < 2) throw std::invalid_argument("from_pc: relative orders must be >= 2");
  if (pc.power.size() != k || pc.comm.size() != k)
    throw std::invalid_argument("from_pc: malformed relation tables");
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t t = 0; t <= i && t < pc.power[i].size(); ++t)
      if (pc.power[i][t]) throw std::invalid_argument("from_pc: power word must use higher generators");
    for (std::size_t j = 0; j < pc.comm[i].size() && j < i; ++j)
      for (std::size_t t = 0; t <= j && t < pc.comm[i][j].size(); ++t)
        if (pc.comm[i][j][t])
          throw std::invalid_argument("from_pc: commutator word must avoid small generators");
  }
  std::size_t n = 1;
  for (unsigned o : pc.orders) {
    n *= o;
    if (n > order_cap) throw std::runtime_error("group order cap exceeded");
  }

  detail::Collector col(pc);

  // Sims overlap conditions: collect each ambiguous word after the two
  // possible first rewrites and compare
  {
    using L = detail::Collector::Letter;
    auto nf_of = [&](std::vector<L> w) { return col.collect(std::move(w)); };
    auto word_letters = [&](const std::vector<unsigned>& w) {
      std::vector<L> out;
      detail::Collector::append_word(out, w);
      return out;
    };
    auto cat = [](std::vector<L> a, const std::vector<L>& b) {
      a.insert(a.end(), b.begin(), b.end());
      return a;
    };
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = i + 1; j < k; ++j) {
        const auto cji = word_letters(pc.comm[j][i]);
        for (unsigned l = j + 1; l < k; ++l) {
          // g_l (g_j g_i) vs (g_l g_j) g_i
          auto r1 = nf_of(cat(cat({{l, 1}, {i, 1}, {j, 1}}, cji), {}));
          auto r2 = nf_of(cat(cat(cat({{j, 1}, {l, 1}}, word_letters(pc.comm[l][j])), {{i, 1}}), {}));
          if (r1 != r2) throw std::invalid_argument("from_pc: inconsistent presentation (overlap)");
        }
        // g_j^{o_j} g_i two ways
        auto p1 = nf_of(cat(word_letters(pc.power[j]), {{i, 1}}));
        auto p2 = nf_of(cat(cat({{j, (long long)pc.orders[j] - 1}, {i, 1}, {j, 1}}, cji), {}));
        if (p1 != p2) throw std::invalid_argument("from_pc: inconsistent presentation (power overlap)");
        // g_j g_i^{o_i} two ways
        auto q1 = nf_of(cat({{j, 1}}, word_letters(pc.power[i])));
        auto q2 = nf_of(cat(cat({{i, 1}, {j, 1}}, cji), {{i, (long long)pc.orders[i] - 1}}));
        if (q1 != q2) throw std::invalid_argument("from_pc: inconsistent presentation (power overlap)");
      }
    for (unsigned i = 0; i < k; ++i) {
      // g_i g_i^{o_i} vs g_i^{o_i} g_i
      auto a = nf_of(cat({{i, 1}}, word_letters(pc.power[i])));
      auto b = nf_of(cat(word_letters(pc.power[i]), {{i, 1}}));
      if (a != b) throw std::invalid_argument("from_pc: inconsistent presentation (power overlap)");
    }
  }

  // element index = mixed-radix rank of the normal form, g1 most significant
  auto rank = [&](const std::vector<unsigned>& nf) {
    std::size_t r = 0;
    for (std::size_t i = 0; i < k; ++i) r = r * pc.orders[i] + nf[i];
    return Elt(r);
  };
  std::vector<std::vector<unsigned>> nfs(n, std::vector<unsigned>(k, 0));
  for (std::size_t x = 0; x < n; ++x) {
    std::size_t r = x;
    for (std::size_t i = k; i-- > 0;) {
      nfs[x][i] = unsigned(r % pc.orders[i]);
      r /= pc.orders[i];
    }
  }

  // right-multiplication by each generator, then full table by word application
  std::vector<std::vector<Elt>> rgen(k, std::vector<Elt>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (unsigned g = 0; g < k; ++g) {
      auto nf = col.mul_nf(nfs[x], nfs[rank(unit(k, g))]);
      rgen[g][x] = rank(nf);
    }
  std::vector<Elt> table(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      Elt cur = Elt(x);
      for (std::size_t i = 0; i < k; ++i)
        for (unsigned t = 0; t < nfs[y][i]; ++t) cur = rgen[i][cur];
      table[x * n + y] = cur;
    }
  std::vector<Elt> gens;
  for (unsigned g = 0; g < k; ++g) gens.push_back(rank(unit(k, g)));
  Presentation pres;
  pres.pc = pc;
  return from_table(std::move(table), Elt(n), std::move(gens), std::move(pres));
}

inline GroupPtr FiniteGroup::cyclic(unsigned m) {
  if (m == 0) throw std::invalid_argument("cyclic: order must be positive");
  std::vector<Elt> table(std::size_t(m) * m);
  for (Elt a = 0; a < m; ++a)
    for (Elt b = 0; b < m; ++b) table[std::size_t(a) * m + b] = (a + b) % m;
  std::vector<Elt> gens;
  if (m > 1) gens.push_back(1);
  return from_table(std::move(table), m, std::move(gens));
}

// --- subgroups ------------------------------------------------------------

// Dynamic bitset keyed by element index; doubles as a canonical set key.
struct EltSet {
  std::vector<std::uint64_t> bits;
  explicit EltSet(Elt n = 0) : bits((n + 63) / 64, 0) {}
  void insert(Elt x) { bits[x >> 6] |= (std::uint64_t(1) << (x & 63)); }
  bool contains(Elt x) const { return (bits[x >> 6] >> (x & 63)) & 1; }
  bool operator==(const EltSet& o) const { return bits == o.bits; }
  bool operator<(const EltSet& o) const {
    // lexicographic on the element list = reversed-bit comparison per word
    for (std::size_t i = 0; i < bits.size(); ++i)
      if (bits[i] != o.bits[i]) {
        std::uint64_t diff = bits[i] ^ o.bits[i];
        std::uint64_t low = diff & (~diff + 1);
        return bits[i] & low;  // the set owning the smaller differing element is smaller
      }
    return false;
  }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : bits) c += std::size_t(__builtin_popcountll(w));
    return c;
  }
};

struct EltSetHash {
  std::size_t operator()(const EltSet& s) const {
    std::size_t h = 1469598103934665603ull;
    for (auto w : s.bits) {
      h ^= std::size_t(w);
      h *= 1099511628211ull;
    }
    return h;
  }
};

struct Subgroup {
  GroupPtr parent;
  std::vector<Elt> elements;  // sorted
  std::vector<Elt> generators;
  EltSet mask;

  Elt order() const { return Elt(elements.size()); }
  bool contains(Elt x) const { return mask.contains(x); }
  bool contains(const Subgroup& other) const {
    for (Elt x : other.elements)
      if (!contains(x)) return false;
    return true;
  }
  bool is_whole_group() const { return elements.size() == parent->order(); }
};

inline Subgroup subgroup_closure(const GroupPtr& g, std::vector<Elt> gens) {
  Subgroup s;
  s.parent = g;
  s.mask = EltSet(g->order());
  std::vector<Elt> stack{0};
  s.mask.insert(0);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Elt> kept;
  for (Elt x : gens)
    if (x != 0) kept.push_back(x);
  while (!stack.empty()) {
    Elt x = stack.back();
    stack.pop_back();
    for (Elt h : kept) {
      Elt y = g->mul(x, h);
      if (!s.mask.contains(y)) {
        s.mask.insert(y);
        stack.push_back(y);
      }
    }
  }
  for (Elt x = 0; x < g->order(); ++x)
    if (s.mask.contains(x)) s.elements.push_back(x);
  s.generators = kept.empty() ? std::vector<Elt>{} : kept;
  return s;
}

inline Subgroup trivial_subgroup(const GroupPtr& g) { return subgroup_closure(g, {}); }

inline Subgroup whole_group(const GroupPtr& g) {
  std::vector<Elt> gens = g->generators();
  Subgroup s = subgroup_closure(g, gens);
  if (!s.is_whole_group()) throw std::logic_error("whole_group: generators do not generate");
  return s;
}

inline Subgroup conjugate_subgroup(const Subgroup& s, Elt g) {
  Subgroup t;
  t.parent = s.parent;
  t.mask = EltSet(s.parent->order());
  t.elements.reserve(s.elements.size());
  for (Elt x : s.elements) t.mask.insert(s.parent->conj(x, g));
  for (Elt x = 0; x < s.parent->order(); ++x)
    if (t.mask.contains(x)) t.elements.push_back(x);
  t.generators.reserve(s.generators.size());
  for (Elt x : s.generators) t.generators.push_back(s.parent->conj(x, g));
  return t;
}

// --- structural queries -----------------------------------------------------

inline Subgroup derived_subgroup(const Subgroup& h) {
  const auto& g = h.parent;
  // commutators of generators, then normal closure inside h
  std::vector<Elt> seed;
  for (Elt a : h.generators)
    for (Elt b : h.generators) {
      Elt c = g->commutator(a, b);
      if (c != 0) seed.push_back(c);
    }
  Subgroup d = subgroup_closure(g, seed);
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Elt> extra;
    for (Elt x : d.generators)
      for (Elt t : h.generators) {
        Elt y = g->conj(x, t);
        if (!d.contains(y)) extra.push_back(y);
      }
    if (!extra.empty()) {
      std::vector<Elt> gens = d.generators;
      gens.insert(gens.end(), extra.begin(), extra.end());
      d = subgroup_closure(g, gens);
      grew = true;
    }
  }
  return d;
}

inline Subgroup derived_subgroup(const GroupPtr& g) { return derived_subgroup(whole_group(g)); }

inline Subgroup centralizer(const GroupPtr& g, const std::vector<Elt>& subset) {
  for (Elt x : subset)
    if (x >= g->order()) throw std::invalid_argument("centralizer: element outside group");
  std::vector<Elt> elems;
  for (Elt x = 0; x < g->order(); ++x) {
    bool ok = true;
    for (Elt s : subset)
      if (g->mul(x, s) != g->mul(s, x)) {
        ok = false;
        break;
      }
    if (ok) elems.push_back(x);
  }
  Subgroup c;
  c.parent = g;
  c.mask = EltSet(g->order());
  for (Elt x : elems) c.mask.insert(x);
  c.elements = std::move(elems);
  c.generators = c.elements;  // refined below
  // thin generator set
  Subgroup span = trivial_subgroup(g);
  std::vector<Elt> gens;
  for (Elt x : c.elements) {
    if (span.contains(x)) continue;
    gens.push_back(x);
    std::vector<Elt> all = gens;
    span = subgroup_closure(g, all);
    if (span.order() == c.elements.size()) break;
  }
  c.generators = gens;
  return c;
}

inline Subgroup center(const GroupPtr& g) {
  std::vector<Elt> all(g->order());
  for (Elt i = 0; i < g->order(); ++i) all[i] = i;
  return centralizer(g, g->generators().empty() ? all : g->generators());
}

inline Subgroup normalizer(const GroupPtr& g, const Subgroup& s) {
  std::vector<Elt> elems;
  for (Elt x = 0; x < g->order(); ++x) {
    bool ok = true;
    for (Elt t : s.generators)
      if (!s.contains(g->conj(t, x))) {
        ok = false;
        break;
      }
    if (ok) elems.push_back(x);
  }
  // elems is a subgroup; reconstruct with a thin generating set
  Subgroup nrm;
  nrm.parent = g;
  nrm.mask = EltSet(g->order());
  for (Elt x : elems) nrm.mask.insert(x);
  nrm.elements = elems;
  Subgroup span = trivial_subgroup(g);
  std::vector<Elt> gens;
  for (Elt x : elems) {
    if (span.contains(x)) continue;
    gens.push_back(x);
    span = subgroup_closure(g, gens);
    if (span.order() == elems.size()) break;
  }
  nrm.generators = gens;
  return nrm;
}

inline std::vector<Subgroup> lower_central_series(const GroupPtr& g) {
  std::vector<Subgroup> series{whole_group(g)};
  while (true) {
    const Subgroup& prev = series.back();
    std::vector<Elt> seed;
    for (Elt a : prev.generators)
      for (Elt b : g->generators()) {
        Elt c = g->commutator(a, b);
        if (c != 0) seed.push_back(c);
      }
    Subgroup next = subgroup_closure(g, seed);
    // normal closure under G
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Elt> extra;
      for (Elt x : next.generators)
        for (Elt t : g->generators()) {
          Elt y = g->conj(x, t);
          if (!next.contains(y)) extra.push_back(y);
        }
      if (!extra.empty()) {
        std::vector<Elt> gens = next.generators;
        gens.insert(gens.end(), extra.begin(), extra.end());
        next = subgroup_closure(g, gens);
        grew = true;
      }
    }
    if (next.order() == prev.order()) break;
    series.push_back(next);
    if (next.order() == 1) break;
  }
  return series;
}

inline bool is_nilpotent(const GroupPtr& g) { return lower_central_series(g).back().order() == 1; }

// abelian invariants of G/[G,G] in divisibility order, via primary counting
inline std::vector<Int> abelian_invariants(const GroupPtr& g);

// --- quotients and re-indexed subgroups ------------------------------------

// A subgroup re-indexed as a standalone FiniteGroup, with maps in both directions.
struct ReindexedGroup {
  GroupPtr group;                 // abstract copy of the subgroup
  std::vector<Elt> to_parent;     // element of the copy -> element of parent
  std::unordered_map<Elt, Elt> from_parent;
};

inline ReindexedGroup reindex_subgroup(const Subgroup& s) {
  ReindexedGroup r;
  const auto& g = s.parent;
  const Elt m = s.order();
  r.to_parent = s.elements;  // sorted; identity (index 0 of parent) is first
  if (r.to_parent.empty() || r.to_parent[0] != 0)
    throw std::logic_error("reindex_subgroup: identity missing");
  r.from_parent.reserve(m * 2);
  for (Elt i = 0; i < m; ++i) r.from_parent.emplace(r.to_parent[i], i);
  std::vector<Elt> table(std::size_t(m) * m);
  for (Elt a = 0; a < m; ++a)
    for (Elt b = 0; b < m; ++b)
      table[std::size_t(a) * m + b] = r.from_parent.at(g->mul(r.to_parent[a], r.to_parent[b]));
  std::vector<Elt> gens;
  for (Elt x : s.generators) gens.push_back(r.from_parent.at(x));
  r.group = FiniteGroup::from_table(std::move(table), m, std::move(gens));
  return r;
}

// Quotient G/N with canonical (minimal) coset representatives.
struct QuotientGroup {
  GroupPtr group;                  // the quotient as a FiniteGroup
  std::vector<Elt> coset_of;       // parent element -> quotient element
  std::vector<Elt> section;        // quotient element -> minimal coset representative
};

inline QuotientGroup quotient_group(const GroupPtr& g, const Subgroup& n) {
  for (Elt t : n.generators)
    for (Elt x : g->generators())
      if (!n.contains(g->conj(t, x))) throw std::invalid_argument("quotient_group: subgroup not normal");
  QuotientGroup q;
  const Elt ord = g->order();
  q.coset_of.assign(ord, Elt(-1));
  for (Elt x = 0; x < ord; ++x) {
    if (q.coset_of[x] != Elt(-1)) continue;
    Elt id = Elt(q.section.size());
    q.section.push_back(x);  // x is minimal in its coset by scan order
    for (Elt h : n.elements) q.coset_of[g->mul(x, h)] = id;
  }
  const Elt m = Elt(q.section.size());
  std::vector<Elt> table(std::size_t(m) * m);
  for (Elt a = 0; a < m; ++a)
    for (Elt b = 0; b < m; ++b) table[std::size_t(a) * m + b] = q.coset_of[g->mul(q.section[a], q.section[b])];
  std::vector<Elt> gens;
  for (Elt x : g->generators()) {
    Elt c = q.coset_of[x];
    if (c != 0) gens.push_back(c);
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  q.group = FiniteGroup::from_table(std::move(table), m, std::move(gens));
  return q;
}

inline std::vector<Int> abelian_invariants(const GroupPtr& g) {
  Subgroup d = derived_subgroup(g);
  QuotientGroup q = quotient_group(g, d);
  GroupPtr a = q.group;
  // primary decomposition by counting elements of order dividing p^k
  std::vector<Int> inv;
  Elt n = a->order();
  std::vector<unsigned> primes;
  {
    Elt m = n;
    for (unsigned p = 2; (Elt)p * p <= m; ++p)
      while (m % p == 0) {
        if (primes.empty() || primes.back() != p) primes.push_back(p);
        m /= p;
      }
    if (m > 1) primes.push_back(unsigned(m));
  }
  std::vector<std::vector<unsigned>> primary;  // per prime: exponents of invariant factors
  for (unsigned p : primes) {
    std::vector<std::size_t> cnt;  // cnt[k] = #elements with order dividing p^k
    cnt.push_back(1);
    while (true) {
      std::size_t c = 0;
      Elt pk = 1;
      for (std::size_t t = 0; t < cnt.size(); ++t) pk *= p;
      for (Elt x = 0; x < n; ++x)
        if (pk % a->element_order(x) == 0) ++c;
      cnt.push_back(c);
      if (c == cnt[cnt.size() - 2]) break;
    }
    // multiplicity of p^k factors from successive quotients
    std::vector<unsigned> exps;
    for (std::size_t k = 1; k + 1 < cnt.size(); ++k) {
      // #cyclic factors of order >= p^k is log_p(cnt[k]/cnt[k-1])
      std::size_t ratio = cnt[k] / cnt[k - 1];
      unsigned r = 0;
      while (ratio > 1) {
        ratio /= p;
        ++r;
      }
      exps.push_back(r);
    }
    // exps[k-1] = number of factors of order >= p^k; convert to factor list
    std::vector<unsigned> factors;
    for (std::size_t k = 0; k < exps.size(); ++k) {
      unsigned here = exps[k] - (k + 1 < exps.size() ? exps[k + 1] : 0);
      for (unsigned t = 0; t < here; ++t) factors.push_back(unsigned(k + 1));
    }
    std::sort(factors.begin(), factors.end());
    primary.push_back(factors);
  }
  // combine primary parts into a divisibility chain
  std::size_t len = 0;
  for (auto& f : primary) len = std::max(len, f.size());
  std::vector<Int> chain(len, 1);
  for (std::size_t pi = 0; pi < primary.size(); ++pi) {
    const auto& f = primary[pi];
    for (std::size_t t = 0; t < f.size(); ++t) {
      Int pk = 1;
      for (unsigned e = 0; e < f[f.size() - 1 - t]; ++e) pk *= primes[pi];
      chain[len - 1 - t] *= pk;
    }
  }
  std::vector<Int> out;
  for (auto& x : chain)
    if (x > 1) out.push_back(x);
  return out;
}

struct GroupHomomorphism {
  GroupPtr source, target;
  std::vector<Elt> image;  // image of every source element

  Elt operator()(Elt x) const { return image[x]; }
  bool verify() const {
    for (Elt a = 0; a < source->order(); ++a)
      for (Elt b = 0; b < source->order(); ++b)
        if (image[source->mul(a, b)] != target->mul(image[a], image[b])) return false;
    return true;
  }
};

inline GroupHomomorphism identity_hom(const GroupPtr& g) {
  GroupHomomorphism h;
  h.source = h.target = g;
  h.image.resize(g->order());
  for (Elt i = 0; i < g->order(); ++i) h.image[i] = i;
  return h;
}

}  // namespace unram
