#pragma once

// Free resolutions of Z over the integral group ring, with contracting
// homotopies.  A boundary value is a Word: an integer combination of
// (group element) * (free-module generator) pairs.
//
// Conventions used throughout:
//   * dim(0) == 1 for every resolution; the augmentation sends a degree-0
//     word to its signed coefficient sum and its section is e_0.
//   * homotopy(n, g, i) is h_n applied to the basis element g*e_i and lands
//     in degree n+1; it satisfies d h + h d = 1 - (section o augmentation)
//     in degree 0 and d h + h d = 1 in degrees 1 .. length-1.
//   * tensor products list blocks by left-factor degree, descending.

#include <cassert>
#include <mutex>

#include "unram/group.hpp"

namespace unram {

struct Term {
  long long coef;
  std::uint32_t gen;
  Elt elt;
};

using Word = std::vector<Term>;  // sorted by (gen, elt), coalesced, no zeros

inline void normalize_word(Word& w) {
  std::sort(w.begin(), w.end(), [](const Term& a, const Term& b) {
    return a.gen != b.gen ? a.gen < b.gen : a.elt < b.elt;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < w.size();) {
    std::size_t j = i;
    long long c = 0;
    while (j < w.size() && w[j].gen == w[i].gen && w[j].elt == w[i].elt) c += w[j++].coef;
    if (c != 0) w[out++] = Term{c, w[i].gen, w[i].elt};
    i = j;
  }
  w.resize(out);
}

inline void add_scaled(Word& dst, const Word& src, long long scale = 1) {
  if (scale == 0) return;
  dst.reserve(dst.size() + src.size());
  for (const Term& t : src) dst.push_back(Term{t.coef * scale, t.gen, t.elt});
  normalize_word(dst);
}

// left action of a group element on a word
inline Word act(const GroupOps& g, Elt x, const Word& w) {
  Word out;
  out.reserve(w.size());
  for (const Term& t : w) out.push_back(Term{t.coef, t.gen, g.mul(x, t.elt)});
  normalize_word(out);
  return out;
}

class FreeResolution {
 public:
  virtual ~FreeResolution() = default;

  std::shared_ptr<const GroupOps> group;
  int length = 0;
  std::string strategy;

  virtual int dim(int n) const = 0;
  virtual const Word& boundary(int n, int i) const = 0;  // 1 <= n <= length
  virtual Word homotopy(int n, Elt g, int i) const = 0;  // 0 <= n < length

  // extend the boundary equivariantly to a word in degree n
  Word apply_boundary(int n, const Word& w) const {
    Word out;
    for (const Term& t : w) {
      const Word& b = boundary(n, int(t.gen));
      for (const Term& s : b) out.push_back(Term{t.coef * s.coef, s.gen, group->mul(t.elt, s.elt)});
    }
    normalize_word(out);
    return out;
  }

  // extend the homotopy Z-linearly to a word in degree n
  Word apply_homotopy(int n, const Word& w) const {
    Word out;
    for (const Term& t : w) {
      Word h = homotopy(n, t.elt, int(t.gen));
      for (Term& s : h) {
        s.coef *= t.coef;
        out.push_back(s);
      }
    }
    normalize_word(out);
    return out;
  }

  // signed coefficient sum (the augmentation in degree 0)
  static long long augmentation(const Word& w) {
    long long s = 0;
    for (const Term& t : w) s += t.coef;
    return s;
  }

  // Z-dual boundary matrix: entry [j][i] is the signed count of generator j
  // in boundary(n, i); a cochain row-vector u maps to u * M.
  IntMat z_boundary_matrix(int n) const {
    IntMat m(dim(n - 1), IntVec(dim(n)));
    for (int i = 0; i < dim(n); ++i)
      for (const Term& t : boundary(n, i)) m[t.gen][i] += t.coef;
    return m;
  }

  // d o d = 0 in all degrees <= length (word expansion); used by tests and `verify`
  bool check_d_squared() const {
    for (int n = 2; n <= length; ++n)
      for (int i = 0; i < dim(n); ++i) {
        Word w = boundary(n, i);
        if (!apply_boundary(n - 1, w).empty()) return false;
      }
    return true;
  }

  // d h + h d = 1 (minus section*augmentation in degree 0) on sampled basis
  // elements; pass sample = 0 to check every group element
  bool check_homotopy(std::size_t sample = 0) const {
    const Elt n_elts = group->order();
    std::vector<Elt> elts;
    if (sample == 0 || sample >= n_elts) {
      for (Elt g = 0; g < n_elts; ++g) elts.push_back(g);
    } else {
      for (std::size_t k = 0; k < sample; ++k) elts.push_back(Elt((k * 2654435761u) % n_elts));
      std::sort(elts.begin(), elts.end());
      elts.erase(std::unique(elts.begin(), elts.end()), elts.end());
    }
    for (int n = 0; n < length; ++n)
      for (int i = 0; i < dim(n); ++i)
        for (Elt g : elts) {
          Word x{Term{1, std::uint32_t(i), g}};
          Word lhs = apply_boundary(n + 1, homotopy(n, g, i));
          if (n >= 1) add_scaled(lhs, apply_homotopy(n - 1, apply_boundary(n, x)));
          Word want = x;
          if (n == 0) add_scaled(want, Word{Term{1, 0, 0}}, -1);  // 1 - eta eps on g*e_0
          add_scaled(lhs, want, -1);
          if (!lhs.empty()) return false;
        }
    return true;
  }

 protected:
  mutable std::mutex mu_;
  mutable std::map<std::tuple<int, Elt, int>, Word> homotopy_memo_;

  Word memoized_homotopy(int n, Elt g, int i, const std::function<Word()>& compute) const {
    auto key = std::make_tuple(n, g, i);
    {
      std::lock_guard<std::mutex> lk(mu_);
      auto it = homotopy_memo_.find(key);
      if (it != homotopy_memo_.end()) return it->second;
    }
    Word w = compute();
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, fresh] = homotopy_memo_.emplace(key, std::move(w));
    return it->second;
  }
};

using ResolutionPtr = std::shared_ptr<const FreeResolution>;

// --- norm resolution of a cyclic group --------------------------------------

// ... -> ZC -(g-1)-> ZC -(norm)-> ZC -(g-1)-> ZC -> Z -> 0 with the standard
// contraction h(g^j e) = (1+...+g^{j-1}) e in even degrees, h(g^j e) =
// [j = m-1] e in odd degrees.
class NormResolution final : public FreeResolution {
 public:
  NormResolution(std::shared_ptr<const GroupOps> cyclic, Elt generator, int len) : gen_(generator) {
    group = std::move(cyclic);
    length = len;
    strategy = "norm";
    const Elt m = group->order();
    // check cyclic with the given generator
    Elt x = 0;
    for (Elt k = 0; k < m; ++k) {
      x = group->mul(x, gen_);
      if (x == 0 && k + 1 != m && m > 1)
        throw std::invalid_argument("NormResolution: generator does not have full order");
    }
    Word odd, even;
    x = gen_;
    odd.push_back(Term{1, 0, gen_});
    odd.push_back(Term{-1, 0, 0});
    normalize_word(odd);
    Elt y = 0;
    for (Elt k = 0; k < m; ++k) {
      even.push_back(Term{1, 0, y});
      y = group->mul(y, gen_);
    }
    normalize_word(even);
    odd_ = std::move(odd);
    even_ = std::move(even);
    // powers table: power_[j] = gen^j, log_[elt] = j
    power_.resize(m);
    log_.resize(m);
    Elt cur = 0;
    for (Elt j = 0; j < m; ++j) {
      power_[j] = cur;
      log_[cur] = j;
      cur = group->mul(cur, gen_);
    }
  }

  int dim(int) const override { return 1; }

  const Word& boundary(int n, int i) const override {
    assert(i == 0);
    (void)i;
    return (n % 2 == 1) ? odd_ : even_;
  }

  Word homotopy(int n, Elt g, int i) const override {
    assert(i == 0);
    (void)i;
    const Elt m = group->order();
    Elt j = log_[g];
    Word out;
    if (n % 2 == 0) {
      for (Elt t = 0; t < j; ++t) out.push_back(Term{1, 0, power_[t]});
      normalize_word(out);
    } else if (j == m - 1) {
      out.push_back(Term{1, 0, 0});
    }
    return out;
  }

  Elt generator() const { return gen_; }

 private:
  Elt gen_;
  Word odd_, even_;
  std::vector<Elt> power_, log_;
};

inline ResolutionPtr norm_resolution_cyclic(const GroupPtr& g, int len) {
  if (g->order() > 1) {
    // locate a generator of full order
    for (Elt x = 1; x < g->order(); ++x)
      if (g->element_order(x) == g->order()) return std::make_shared<NormResolution>(g, x, len);
    throw std::invalid_argument("norm_resolution_cyclic: group is not cyclic");
  }
  return std::make_shared<NormResolution>(g, 0, len);
}

// --- tensor product ---------------------------------------------------------

// Resolution of Z over Z[A x B] from resolutions over A and B.  Generators in
// degree n are blocks (p, q = n-p) with p descending from n to 0; within a
// block the left generator index is major.  d(a@b) = da@b + (-1)^p a@db and
// h = h_A @ 1 + (eta eps)_A @ h_B.
class TensorResolution final : public FreeResolution {
 public:
  TensorResolution(ResolutionPtr left, ResolutionPtr right, int len)
      : a_(std::move(left)), b_(std::move(right)) {
    if (a_->length < len || b_->length < len)
      throw std::invalid_argument("TensorResolution: factors shorter than requested length");
    pair_ = std::make_shared<PairOps>(a_->group, b_->group);
    group = pair_;
    length = len;
    strategy = "tensor(" + a_->strategy + "," + b_->strategy + ")";
    offsets_.resize(length + 2);
    dims_.resize(length + 2);
    for (int n = 0; n <= length + 1; ++n) {
      offsets_[n].clear();
      int total = 0;
      for (int p = n; p >= 0; --p) {
        offsets_[n].push_back(total);
        int q = n - p;
        if (p <= a_->length && q <= b_->length) total += a_->dim(p) * b_->dim(q);
      }
      dims_[n] = total;
    }
    boundary_.assign(length + 1, {});
    for (int n = 1; n <= length; ++n) {
      boundary_[n].resize(dims_[n]);
      for (int i = 0; i < dims_[n]; ++i) boundary_[n][i] = make_boundary(n, i);
    }
  }

  int dim(int n) const override { return dims_[n]; }

  const Word& boundary(int n, int i) const override { return boundary_[n][i]; }

  Word homotopy(int n, Elt g, int i) const override {
    return memoized_homotopy(n, g, i, [&] {
      auto [p, ia, ib] = decode(n, i);
      int q = n - p;
      Elt ga = pair_->first(g), gb = pair_->second(g);
      Word out;
      Word ha = a_->homotopy(p, ga, ia);
      for (const Term& t : ha)
        out.push_back(Term{t.coef, encode(n + 1, p + 1, int(t.gen), ib), pair_->encode(t.elt, gb)});
      if (p == 0) {
        Word hb = b_->homotopy(q, gb, ib);
        for (const Term& t : hb)
          out.push_back(Term{t.coef, encode(n + 1, 0, 0, int(t.gen)), pair_->encode(0, t.elt)});
      }
      normalize_word(out);
      return out;
    });
  }

  // generator index <-> (p, left gen, right gen)
  std::uint32_t encode(int n, int p, int ia, int ib) const {
    int q = n - p;
    return std::uint32_t(offsets_[n][n - p] + ia * b_->dim(q) + ib);
  }
  std::tuple<int, int, int> decode(int n, int i) const {
    int p = n;
    for (int blk = 0; blk < int(offsets_[n].size()); ++blk) {
      int next = (blk + 1 < int(offsets_[n].size())) ? offsets_[n][blk + 1] : dims_[n];
      if (i < next) {
        p = n - blk;
        int off = i - offsets_[n][blk];
        int q = n - p;
        return {p, off / b_->dim(q), off % b_->dim(q)};
      }
    }
    throw std::logic_error("TensorResolution: bad generator index");
  }

  const ResolutionPtr& left() const { return a_; }
  const ResolutionPtr& right() const { return b_; }

 private:
  Word make_boundary(int n, int i) const {
    auto [p, ia, ib] = decode(n, i);
    int q = n - p;
    Word out;
    if (p >= 1) {
      for (const Term& t : a_->boundary(p, ia))
        out.push_back(Term{t.coef, encode(n - 1, p - 1, int(t.gen), ib), pair_->encode(t.elt, 0)});
    }
    if (q >= 1) {
      long long sign = (p % 2 == 0) ? 1 : -1;
      for (const Term& t : b_->boundary(q, ib))
        out.push_back(Term{sign * t.coef, encode(n - 1, p, ia, int(t.gen)), pair_->encode(0, t.elt)});
    }
    normalize_word(out);
    return out;
  }

  ResolutionPtr a_, b_;
  std::shared_ptr<const PairOps> pair_;
  std::vector<std::vector<int>> offsets_;  // offsets_[n][n-p]
  std::vector<int> dims_;
  std::vector<std::vector<Word>> boundary_;
};

inline ResolutionPtr tensor_product_resolution(ResolutionPtr a, ResolutionPtr b, int len) {
  return std::make_shared<TensorResolution>(std::move(a), std::move(b), len);
}

// --- relabeling adapter ------------------------------------------------------

// The same resolution with group elements renamed along an isomorphism; used
// to present a tensor resolution over an abstract product as a resolution
// over a concrete FiniteGroup.
class RelabeledResolution final : public FreeResolution {
 public:
  RelabeledResolution(ResolutionPtr base, std::shared_ptr<const GroupOps> target,
                      std::vector<Elt> base_to_target)
      : base_(std::move(base)), to_target_(std::move(base_to_target)) {
    group = std::move(target);
    length = base_->length;
    strategy = base_->strategy;
    from_target_.assign(to_target_.size(), 0);
    for (Elt x = 0; x < to_target_.size(); ++x) from_target_[to_target_[x]] = x;
    boundary_.assign(length + 1, {});
    for (int n = 1; n <= length; ++n) {
      boundary_[n].resize(base_->dim(n));
      for (int i = 0; i < base_->dim(n); ++i) {
        Word w = base_->boundary(n, i);
        for (Term& t : w) t.elt = to_target_[t.elt];
        normalize_word(w);
        boundary_[n][i] = std::move(w);
      }
    }
  }

  int dim(int n) const override { return base_->dim(n); }
  const Word& boundary(int n, int i) const override { return boundary_[n][i]; }
  Word homotopy(int n, Elt g, int i) const override {
    Word w = base_->homotopy(n, from_target_[g], i);
    for (Term& t : w) t.elt = to_target_[t.elt];
    normalize_word(w);
    return w;
  }

 private:
  ResolutionPtr base_;
  std::vector<Elt> to_target_, from_target_;
  std::vector<std::vector<Word>> boundary_;
};

// --- restriction to a subgroup ----------------------------------------------

// The same chain complex viewed over Z[H]: free on (generator, coset) pairs,
// generator-major, using minimal right-coset representatives.
class SubgroupResolution final : public FreeResolution {
 public:
  SubgroupResolution(ResolutionPtr big, const Subgroup& h) : big_(std::move(big)) {
    auto parent = std::dynamic_pointer_cast<const FiniteGroup>(big_->group);
    if (!parent) throw std::invalid_argument("SubgroupResolution: parent resolution must be over a FiniteGroup");
    parent_ = parent;
    for (Elt x : h.elements)
      if (x >= parent->order()) throw std::invalid_argument("SubgroupResolution: not a subgroup of the parent");
    re_ = reindex_subgroup(h);
    group = re_.group;
    length = big_->length;
    strategy = "restrict(" + big_->strategy + ")";
    // right cosets H t: representative = minimal element
    const Elt n = parent->order();
    coset_of_.assign(n, Elt(-1));
    for (Elt x = 0; x < n; ++x) {
      if (coset_of_[x] != Elt(-1)) continue;
      Elt r = Elt(reps_.size());
      reps_.push_back(x);
      for (Elt a : h.elements) coset_of_[parent->mul(re_.to_parent[re_.from_parent.at(a)], x)] = r;
    }
    index_ = Elt(reps_.size());
    hpart_.assign(n, 0);
    for (Elt x = 0; x < n; ++x) {
      // x = h * rep: h = x * rep^-1
      Elt rep = reps_[coset_of_[x]];
      hpart_[x] = re_.from_parent.at(parent->mul(x, parent->inv(rep)));
    }
    boundary_.assign(length + 1, {});
    for (int n2 = 1; n2 <= length; ++n2) {
      boundary_[n2].resize(dim(n2));
      for (int i = 0; i < big_->dim(n2); ++i)
        for (Elt r = 0; r < index_; ++r) {
          Word w;
          for (const Term& t : big_->boundary(n2, i)) {
            Elt y = parent->mul(reps_[r], t.elt);
            w.push_back(Term{t.coef, encode(int(t.gen), coset_of_[y]), hpart_[y]});
          }
          normalize_word(w);
          boundary_[n2][encode(i, r)] = std::move(w);
        }
    }
  }

  Elt index() const { return index_; }
  std::uint32_t encode(int big_gen, Elt coset) const { return std::uint32_t(big_gen) * index_ + coset; }

  int dim(int n) const override { return big_->dim(n) * int(index_); }
  const Word& boundary(int n, int i) const override { return boundary_[n][i]; }

  Word homotopy(int n, Elt g, int i) const override {
    return memoized_homotopy(n, g, i, [&] {
      int big_gen = i / int(index_);
      Elt r = Elt(i % index_);
      Elt x = parent_->mul(re_.to_parent[g], reps_[r]);
      Word hw = big_->homotopy(n, x, big_gen);
      Word out;
      for (const Term& t : hw) {
        out.push_back(Term{t.coef, encode(int(t.gen), coset_of_[t.elt]), hpart_[t.elt]});
      }
      normalize_word(out);
      return out;
    });
  }

  const ReindexedGroup& reindexing() const { return re_; }
  const ResolutionPtr& parent_resolution() const { return big_; }
  const std::vector<Elt>& coset_reps() const { return reps_; }

 private:
  ResolutionPtr big_;
  GroupPtr parent_;
  ReindexedGroup re_;
  std::vector<Elt> reps_;
  std::vector<Elt> coset_of_, hpart_;
  Elt index_ = 0;
  std::vector<std::vector<Word>> boundary_;
};

inline std::shared_ptr<const SubgroupResolution> restrict_to_subgroup(ResolutionPtr big,
                                                                      const Subgroup& h) {
  return std::make_shared<SubgroupResolution>(std::move(big), h);
}

}  // namespace unram
