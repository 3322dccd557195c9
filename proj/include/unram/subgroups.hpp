#pragma once

// Subgroup conjugacy classes, maximal subgroups and double cosets.
//
// p-groups use the cyclic-extension method (extend each class by a
// normalizer element with p-th power inside); other groups build the lattice
// by one-element extensions from the trivial subgroup, which reaches every
// subgroup including perfect ones.  Classes come out in a canonical order:
// by order, then by the lexicographically smallest conjugate element set.

#include <unordered_map>

#include "unram/group.hpp"

namespace unram {

struct SubgroupClass {
  Subgroup rep;                    // representative with the minimal element-set key
  std::vector<Subgroup> conjugates;  // full conjugation orbit, rep first
};

namespace detail {

struct ClassCollector {
  GroupPtr g;
  std::vector<SubgroupClass> classes;
  std::unordered_map<EltSet, std::size_t, EltSetHash> seen;  // any conjugate -> class index

  explicit ClassCollector(GroupPtr grp) : g(std::move(grp)) {}

  bool known(const Subgroup& s) const { return seen.find(s.mask) != seen.end(); }

  // registers the class of s (if new) and returns its index; the orbit is
  // the closure of s under conjugation by group generators
  std::size_t add(const Subgroup& s) {
    auto it = seen.find(s.mask);
    if (it != seen.end()) return it->second;
    SubgroupClass cls;
    std::unordered_map<EltSet, std::size_t, EltSetHash> orbit;
    cls.conjugates.push_back(s);
    orbit.emplace(s.mask, 0);
    std::size_t best = 0;
    for (std::size_t head = 0; head < cls.conjugates.size(); ++head) {
      for (Elt t : g->generators()) {
        Subgroup c = conjugate_subgroup(cls.conjugates[head], t);
        auto [oit, fresh] = orbit.emplace(c.mask, cls.conjugates.size());
        if (fresh) {
          if (c.mask < cls.conjugates[best].mask) best = cls.conjugates.size();
          cls.conjugates.push_back(std::move(c));
        }
      }
    }
    std::swap(cls.conjugates[0], cls.conjugates[best]);
    cls.rep = cls.conjugates[0];
    std::size_t idx = classes.size();
    for (const auto& c : cls.conjugates) seen.emplace(c.mask, idx);
    classes.push_back(std::move(cls));
    return idx;
  }

  void sort_canonically() {
    std::sort(classes.begin(), classes.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
      if (a.rep.order() != b.rep.order()) return a.rep.order() < b.rep.order();
      return a.rep.mask < b.rep.mask;
    });
  }
};

inline bool is_prime_power(Elt n, unsigned& p) {
  if (n < 2) return false;
  for (unsigned q = 2; (Elt)q * q <= n; ++q)
    if (n % q == 0) {
      while (n % q == 0) n /= q;
      p = q;
      return n == 1;
    }
  p = unsigned(n);
  return true;
}

inline void enumerate_p_group(ClassCollector& col, unsigned p) {
  const GroupPtr& g = col.g;
  col.add(trivial_subgroup(g));
  std::size_t level_begin = 0;
  while (level_begin < col.classes.size()) {
    std::size_t level_end = col.classes.size();
    for (std::size_t ci = level_begin; ci < level_end; ++ci) {
      Subgroup s = col.classes[ci].rep;  // copy: classes vector may grow
      if (s.order() == g->order()) continue;
      Subgroup nrm = normalizer(g, s);
      std::vector<char> coset_done(g->order(), 0);
      for (Elt x : nrm.elements) {
        if (s.contains(x) || coset_done[x]) continue;
        for (Elt a : s.elements) coset_done[g->mul(a, x)] = 1;
        if (!s.contains(g->power(x, p))) continue;
        std::vector<Elt> gens = s.generators;
        gens.push_back(x);
        Subgroup t = subgroup_closure(g, gens);
        col.add(t);
      }
    }
    level_begin = level_end;
  }
  col.sort_canonically();
}

inline void enumerate_by_extension(ClassCollector& col) {
  const GroupPtr& g = col.g;
  col.add(trivial_subgroup(g));
  for (std::size_t ci = 0; ci < col.classes.size(); ++ci) {
    Subgroup s = col.classes[ci].rep;
    if (s.order() == g->order()) continue;
    for (Elt x = 0; x < g->order(); ++x) {
      if (s.contains(x)) continue;
      std::vector<Elt> gens = s.generators;
      gens.push_back(x);
      Subgroup t = subgroup_closure(g, gens);
      col.add(t);
    }
  }
  col.sort_canonically();
}

}  // namespace detail

// One representative per conjugacy class of subgroups, canonical order,
// together with the full conjugation orbits.
inline std::vector<SubgroupClass> subgroup_conjugacy_classes(const GroupPtr& g) {
  detail::ClassCollector col(g);
  unsigned p = 0;
  if (detail::is_prime_power(g->order(), p) || g->order() == 1) {
    if (g->order() == 1) {
      col.add(trivial_subgroup(g));
      col.sort_canonically();
    } else {
      detail::enumerate_p_group(col, p);
    }
  } else {
    detail::enumerate_by_extension(col);
  }
  return std::move(col.classes);
}

// Maximal subgroups, one per conjugacy class.
inline std::vector<Subgroup> maximal_subgroup_classes(const GroupPtr& g,
                                                      const std::vector<SubgroupClass>* classes = nullptr) {
  std::vector<SubgroupClass> own;
  if (!classes) {
    own = subgroup_conjugacy_classes(g);
    classes = &own;
  }
  std::vector<Subgroup> maximal;
  for (std::size_t i = 0; i < classes->size(); ++i) {
    const Subgroup& s = (*classes)[i].rep;
    if (s.order() == g->order()) continue;
    bool is_max = true;
    for (std::size_t j = 0; j < classes->size() && is_max; ++j) {
      const auto& big = (*classes)[j];
      if (big.rep.order() <= s.order() || big.rep.order() == g->order()) continue;
      for (const Subgroup& c : big.conjugates)
        if (c.contains(s)) {
          is_max = false;
          break;
        }
    }
    if (is_max) maximal.push_back(s);
  }
  return maximal;
}

// Double cosets H\G/K as lists of element indices, ordered by minimal element.
inline std::vector<std::vector<Elt>> double_cosets(const GroupPtr& g, const Subgroup& h,
                                                   const Subgroup& k) {
  std::vector<char> markd(g->order(), 0);
  std::vector<std::vector<Elt>> out;
  for (Elt x = 0; x < g->order(); ++x) {
    if (markd[x]) continue;
    std::vector<Elt> coset;
    for (Elt a : h.elements) {
      Elt ax = g->mul(a, x);
      for (Elt b : k.elements) {
        Elt y = g->mul(ax, b);
        if (!markd[y]) {
          markd[y] = 1;
          coset.push_back(y);
        }
      }
    }
    std::sort(coset.begin(), coset.end());
    out.push_back(std::move(coset));
  }
  return out;
}

// |H\G/K| consistency helper for tests: the sizes must sum to |G|
inline std::size_t double_coset_size_sum(const std::vector<std::vector<Elt>>& dc) {
  std::size_t s = 0;
  for (const auto& c : dc) s += c.size();
  return s;
}

// Right cosets Hx contained in a double coset, as their minimal representatives.
inline std::vector<Elt> right_coset_reps_in(const GroupPtr& g, const Subgroup& h,
                                            const std::vector<Elt>& double_coset) {
  std::vector<char> used(g->order(), 0);
  std::vector<Elt> reps;
  for (Elt x : double_coset) {
    if (used[x]) continue;
    Elt rep = x;  // minimal: double_coset sorted, h-coset scan marks all members
    for (Elt a : h.elements) used[g->mul(a, x)] = 1;
    reps.push_back(rep);
  }
  return reps;
}

}  // namespace unram
