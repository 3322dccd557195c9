#pragma once

// Twisted tensor product resolutions for group extensions 1 -> N -> G -> Q -> 1
// and their iteration along a normal series with abelian factors.
//
// The differential starts from the tensor-product differential lifted through
// a set-theoretic section Q -> G and is corrected bidegree by bidegree with
// the column homotopy (Wall's method); the correction components d_k lower the
// Q-degree by k.  The contracting homotopy composes the column contraction
// with the quotient resolution's homotopy through the standard perturbation
// series, which terminates because every correction lowers the Q-degree.

#include "unram/resolution.hpp"
#include "unram/subgroups.hpp"

namespace unram {

struct ExtensionData {
  GroupPtr g;            // the whole group
  Subgroup n;            // normal subgroup
  QuotientGroup q;       // G/N with minimal coset representatives (section(1)=1)
  ReindexedGroup n_re;   // N as a standalone group

  Elt section(Elt qelt) const { return q.section[qelt]; }
  // factor set: s(a) s(b) = s(ab) * f(a,b) with f(a,b) in N
  Elt cocycle(Elt a, Elt b) const {
    Elt lhs = g->mul(q.section[a], q.section[b]);
    Elt rep = q.section[q.coset_of[lhs]];
    return n_re.from_parent.at(g->mul(g->inv(rep), lhs));
  }
  // conjugation action of Q on N: n -> s(a)^-1 n s(a)
  Elt action(Elt a, Elt n_idx) const {
    return n_re.from_parent.at(g->conj(n_re.to_parent[n_idx], q.section[a]));
  }
};

inline ExtensionData make_extension(const GroupPtr& g, const Subgroup& n) {
  ExtensionData e;
  e.g = g;
  e.n = n;
  e.q = quotient_group(g, n);
  e.n_re = reindex_subgroup(n);
  return e;
}

class TwistedExtensionResolution final : public FreeResolution {
 public:
  // rn: resolution over ext.n_re.group; rq: resolution over ext.q.group
  TwistedExtensionResolution(ResolutionPtr rn, ResolutionPtr rq, ExtensionData ext, int len)
      : rn_(std::move(rn)), rq_(std::move(rq)), ext_(std::move(ext)) {
    if (rn_->length < len || rq_->length < len)
      throw std::invalid_argument("extension_resolution: factor resolutions too short");
    group = ext_.g;
    length = len;
    strategy = "extension(" + rq_->strategy + "," + rn_->strategy + ")";
    offsets_.resize(length + 2);
    dims_.resize(length + 2);
    for (int m = 0; m <= length + 1; ++m) {
      int total = 0;
      for (int p = m; p >= 0; --p) {
        offsets_[m].push_back(total);
        int qd = m - p;
        if (p <= rq_->length && qd <= rn_->length) total += rq_->dim(p) * rn_->dim(qd);
      }
      dims_[m] = total;
    }
    build();
  }

  int dim(int n) const override { return dims_[n]; }
  const Word& boundary(int n, int i) const override { return total_[n][i]; }

  Word homotopy(int n, Elt g, int i) const override {
    return memoized_homotopy(n, g, i, [&] {
      // h' = sum htilde (-delta htilde)^k  +  eta' h_Q eps'
      Word acc;
      Word u = htilde(n, Word{Term{1, std::uint32_t(i), g}});
      while (!u.empty()) {
        add_scaled(acc, u);
        u = htilde(n, apply_delta(n + 1, u));
        for (Term& t : u) t.coef = -t.coef;
        normalize_word(u);
      }
      // eps'
      Word v{Term{1, std::uint32_t(i), g}};
      Word qword = eps(n, v);
      while (true) {
        v = apply_delta(n + 1, htilde(n, v));
        for (Term& t : v) t.coef = -t.coef;
        normalize_word(v);
        if (v.empty()) break;
        add_scaled(qword, eps(n, v));
      }
      if (!qword.empty()) {
        Word qh = rq_->apply_homotopy(n, qword);
        // eta'
        Word z = eta(n + 1, qh);
        while (!z.empty()) {
          add_scaled(acc, z);
          z = htilde(n, apply_delta(n + 1, z));
          for (Term& t : z) t.coef = -t.coef;
          normalize_word(z);
        }
      }
      return acc;
    });
  }

  std::uint32_t encode(int m, int p, int iq, int jn) const {
    return std::uint32_t(offsets_[m][m - p] + iq * rn_->dim(m - p) + jn);
  }
  std::tuple<int, int, int> decode(int m, int i) const {
    for (int blk = 0; blk < int(offsets_[m].size()); ++blk) {
      int next = (blk + 1 < int(offsets_[m].size())) ? offsets_[m][blk + 1] : dims_[m];
      if (i < next) {
        int p = m - blk;
        int off = i - offsets_[m][blk];
        int nd = rn_->dim(m - p);
        return {p, off / nd, off % nd};
      }
    }
    throw std::logic_error("TwistedExtensionResolution: bad generator index");
  }

 private:
  // column homotopy: (-1)^p s(gbar) (iq x h_N(n-part))
  Word htilde(int m, const Word& w) const {
    Word out;
    for (const Term& t : w) {
      auto [p, iq, jn] = decode(m, int(t.gen));
      Elt gbar = ext_.q.coset_of[t.elt];
      Elt rep = ext_.q.section[gbar];
      Elt npart = ext_.n_re.from_parent.at(ext_.g->mul(ext_.g->inv(rep), t.elt));
      Word hn = rn_->homotopy(m - p, npart, jn);
      long long sign = (p % 2 == 0) ? 1 : -1;
      for (const Term& s : hn)
        out.push_back(Term{sign * t.coef * s.coef, encode(m + 1, p, iq, int(s.gen)),
                           ext_.g->mul(rep, ext_.n_re.to_parent[s.elt])});
    }
    normalize_word(out);
    return out;
  }

  // column augmentation: kill q > 0 blocks, project q = 0 terms to Q-words
  Word eps(int m, const Word& w) const {
    Word out;
    for (const Term& t : w) {
      auto [p, iq, jn] = decode(m, int(t.gen));
      if (p != m) continue;
      out.push_back(Term{t.coef, std::uint32_t(iq), ext_.q.coset_of[t.elt]});
    }
    normalize_word(out);
    return out;
  }
  // column section: Q-word in degree m -> word in the (m, 0) block
  Word eta(int m, const Word& qw) const {
    Word out;
    for (const Term& t : qw)
      out.push_back(Term{t.coef, encode(m, m, int(t.gen), 0), ext_.q.section[t.elt]});
    normalize_word(out);
    return out;
  }

  Word apply_component(int m, int k, const Word& w) const {
    Word out;
    for (const Term& t : w) {
      const Word& b = comp_[m][k][t.gen];
      for (const Term& s : b) out.push_back(Term{t.coef * s.coef, s.gen, ext_.g->mul(t.elt, s.elt)});
    }
    normalize_word(out);
    return out;
  }
  Word apply_delta(int m, const Word& w) const {
    Word out;
    for (const Term& t : w) {
      const Word& b = delta_[m][t.gen];
      for (const Term& s : b) out.push_back(Term{t.coef * s.coef, s.gen, ext_.g->mul(t.elt, s.elt)});
    }
    normalize_word(out);
    return out;
  }

  void build() {
    comp_.assign(length + 1, {});
    total_.assign(length + 1, {});
    delta_.assign(length + 1, {});
    for (int m = 1; m <= length; ++m) {
      comp_[m].assign(std::size_t(m) + 1, std::vector<Word>(dims_[m]));
      total_[m].resize(dims_[m]);
      delta_[m].resize(dims_[m]);
      // bidegrees by ascending N-degree (descending p); component index ascending
      for (int p = m; p >= 0; --p) {
        int qd = m - p;
        for (int iq = 0; iq < rq_->dim(p); ++iq)
          for (int jn = 0; jn < rn_->dim(qd); ++jn) {
            std::uint32_t x = encode(m, p, iq, jn);
            Word self{Term{1, x, 0}};
            // d_0: vertical, sign (-1)^p
            if (qd >= 1) {
              Word d0;
              long long sign = (p % 2 == 0) ? 1 : -1;
              for (const Term& s : rn_->boundary(qd, jn))
                d0.push_back(Term{sign * s.coef, encode(m - 1, p, iq, int(s.gen)),
                                  ext_.n_re.to_parent[s.elt]});
              normalize_word(d0);
              comp_[m][0][x] = std::move(d0);
            }
            // d_1: section-lifted horizontal, corrected so d0 d1 + d1 d0 = 0
            if (p >= 1) {
              Word guess;
              for (const Term& s : rq_->boundary(p, iq))
                guess.push_back(Term{s.coef, encode(m - 1, p - 1, int(s.gen), jn),
                                     ext_.q.section[s.elt]});
              normalize_word(guess);
              if (qd >= 1) {
                Word defect = apply_component(m - 1, 0, guess);
                add_scaled(defect, apply_component(m - 1, 1, comp_[m][0][x]));
                if (!defect.empty()) {
                  Word corr = htilde(m - 2, defect);
                  add_scaled(guess, corr, -1);
                }
              }
              comp_[m][1][x] = std::move(guess);
            }
            // d_k for k >= 2
            for (int k = 2; k <= p; ++k) {
              Word rk;
              for (int a = 1; a < k; ++a)
                add_scaled(rk, apply_component(m - 1, a, comp_[m][k - a][x]));
              if (qd >= 1) add_scaled(rk, apply_component(m - 1, k, comp_[m][0][x]));
              if (rk.empty()) continue;
              comp_[m][k][x] = htilde(m - 2, rk);
              for (Term& t : comp_[m][k][x]) t.coef = -t.coef;
            }
            Word tot;
            for (int k = 0; k <= m; ++k) add_scaled(tot, comp_[m][k][x]);
            total_[m][x] = tot;
            Word del = tot;
            add_scaled(del, comp_[m][0][x], -1);
            delta_[m][x] = std::move(del);
          }
      }
      // the construction must square to zero against the previous degree
      if (m >= 2)
        for (int i = 0; i < dims_[m]; ++i)
          if (!apply_boundary(m - 1, total_[m][i]).empty())
            throw std::logic_error("extension_resolution: differential correction failed");
    }
  }

  ResolutionPtr rn_, rq_;
  ExtensionData ext_;
  std::vector<std::vector<int>> offsets_;
  std::vector<int> dims_;
  std::vector<std::vector<std::vector<Word>>> comp_;  // comp_[m][k][gen]
  std::vector<std::vector<Word>> total_, delta_;
};

inline ResolutionPtr extension_resolution(ResolutionPtr rn, ResolutionPtr rq, ExtensionData ext,
                                          int len) {
  return std::make_shared<TwistedExtensionResolution>(std::move(rn), std::move(rq), std::move(ext), len);
}

// --- abelian groups: tensor products of cyclic norm resolutions --------------

// deterministic cyclic decomposition of an abelian group: per prime ascending,
// factor orders descending, with explicit generators
inline std::vector<std::pair<Elt, unsigned>> abelian_basis(const GroupPtr& a) {
  if (!a->is_abelian()) throw std::invalid_argument("abelian_basis: group not abelian");
  std::vector<std::pair<Elt, unsigned>> basis;  // (generator, order)
  Elt n = a->order();
  std::vector<unsigned> primes;
  {
    Elt m = n;
    for (unsigned p = 2; Elt(p) * p <= m; ++p)
      while (m % p == 0) {
        if (primes.empty() || primes.back() != p) primes.push_back(p);
        m /= p;
      }
    if (m > 1) primes.push_back(unsigned(m));
  }
  for (unsigned p : primes) {
    // primary component
    std::vector<Elt> prim;
    for (Elt x = 0; x < n; ++x) {
      unsigned o = a->element_order(x);
      while (o % p == 0) o /= p;
      if (o == 1) prim.push_back(x);
    }
    Subgroup comp = subgroup_closure(a, prim);
    ReindexedGroup pg = reindex_subgroup(comp);
    // greedy basis with maximal orders, corrected lifts
    std::vector<std::pair<Elt, unsigned>> pbasis;  // in pg coordinates
    std::unordered_map<Elt, std::vector<unsigned>> tuple_of{{0, {}}};
    Subgroup span = trivial_subgroup(pg.group);
    while (span.order() < pg.group->order()) {
      QuotientGroup q = quotient_group(pg.group, span);
      Elt best = 0;
      for (Elt x = 0; x < q.group->order(); ++x)
        if (q.group->element_order(x) > q.group->element_order(best)) best = x;
      unsigned f = q.group->element_order(best);
      Elt lift = q.section[best];
      Elt z = pg.group->power(lift, f);
      auto it = tuple_of.find(z);
      if (it == tuple_of.end()) throw std::logic_error("abelian_basis: lift landed outside span");
      Elt fix = 0;
      for (std::size_t i = 0; i < pbasis.size(); ++i) {
        unsigned c = i < it->second.size() ? it->second[i] : 0;
        if (c % f != 0) throw std::logic_error("abelian_basis: non-divisible lift correction");
        fix = pg.group->mul(fix, pg.group->power(pbasis[i].first, pbasis[i].second - c / f));
      }
      Elt x = pg.group->mul(lift, fix);
      if (pg.group->element_order(x) != f) throw std::logic_error("abelian_basis: corrected lift order");
      // extend the exponent-tuple dictionary
      std::unordered_map<Elt, std::vector<unsigned>> bigger;
      for (const auto& [elt, tup] : tuple_of)
        for (unsigned e = 0; e < f; ++e) {
          std::vector<unsigned> t2 = tup;
          t2.resize(pbasis.size() + 1, 0);
          t2[pbasis.size()] = e;
          bigger.emplace(pg.group->mul(elt, pg.group->power(x, e)), std::move(t2));
        }
      tuple_of = std::move(bigger);
      pbasis.emplace_back(x, f);
      std::vector<Elt> gens;
      for (auto& [b, o] : pbasis) gens.push_back(b);
      span = subgroup_closure(pg.group, gens);
    }
    for (auto& [x, o] : pbasis) basis.emplace_back(pg.to_parent[x], o);
  }
  return basis;
}

// resolution of an abelian group as a relabeled tensor of norm resolutions
inline ResolutionPtr abelian_resolution(const GroupPtr& a, int len) {
  if (a->order() == 1 || a->element_order(a->order() > 1 ? 1 : 0) == a->order()) {
    // cyclic groups (including the trivial group) take the norm resolution;
    // probe for a full-order element properly below
  }
  for (Elt x = 0; x < a->order(); ++x)
    if (a->element_order(x) == a->order()) return norm_resolution_cyclic(a, len);
  auto basis = abelian_basis(a);
  std::vector<ResolutionPtr> factors;
  for (auto& [gen, ord] : basis) factors.push_back(norm_resolution_cyclic(FiniteGroup::cyclic(ord), len));
  ResolutionPtr r = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) r = tensor_product_resolution(r, factors[i], len);
  // element of the nested pair group -> product of basis powers in a
  Elt total = a->order();
  std::vector<Elt> to_target(total);
  for (Elt x = 0; x < total; ++x) {
    Elt rest = x, img = 0;
    for (std::size_t i = basis.size(); i-- > 0;) {
      unsigned e = unsigned(rest % basis[i].second);
      rest /= basis[i].second;
      img = a->mul(a->power(basis[i].first, e), img);
    }
    to_target[x] = img;
  }
  return std::make_shared<RelabeledResolution>(std::move(r), a, std::move(to_target));
}

// --- normal series ------------------------------------------------------------

// iterated twisted tensor along a descending normal series with abelian
// factors; series[0] must be the whole group and series.back() trivial
inline ResolutionPtr normal_series_resolution(const GroupPtr& g, const std::vector<Subgroup>& series,
                                              int len) {
  if (series.empty() || series.front().order() != g->order() || series.back().order() != 1)
    throw std::invalid_argument("normal_series_resolution: series must run from G to 1");
  if (g->order() == 1) return norm_resolution_cyclic(g, len);
  if (series.size() == 2) return abelian_resolution(g, len);
  const Subgroup& n = series[1];
  if (n.order() == 1) return abelian_resolution(g, len);
  ExtensionData ext = make_extension(g, n);
  if (!ext.q.group->is_abelian())
    throw std::invalid_argument("normal_series_resolution: non-abelian factor in series");
  ResolutionPtr rq = abelian_resolution(ext.q.group, len);
  // reindex the series tail inside N
  std::vector<Subgroup> tail;
  for (std::size_t i = 1; i < series.size(); ++i) {
    std::vector<Elt> elems;
    for (Elt x : series[i].elements) elems.push_back(ext.n_re.from_parent.at(x));
    std::vector<Elt> gens;
    for (Elt x : series[i].generators) gens.push_back(ext.n_re.from_parent.at(x));
    Subgroup s = subgroup_closure(ext.n_re.group, gens);
    if (s.order() != series[i].order())
      throw std::invalid_argument("normal_series_resolution: series member not inside predecessor");
    tail.push_back(std::move(s));
  }
  ResolutionPtr rn = normal_series_resolution(ext.n_re.group, tail, len);
  return extension_resolution(std::move(rn), std::move(rq), std::move(ext), len);
}

inline ResolutionPtr normal_series_resolution(const GroupPtr& g, int len) {
  return normal_series_resolution(g, lower_central_series(g), len);
}

}  // namespace unram
