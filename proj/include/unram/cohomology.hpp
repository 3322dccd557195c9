#pragma once

// Cohomology of a free resolution with Z coefficients: cocycle/coboundary
// bases, torsion coefficients in Smith order, class <-> cocycle converters,
// and the degree shift between H^n(G,Z) and H^(n-1)(G,Q/Z).

#include "unram/resolution.hpp"

namespace unram {

class CohomologyData {
 public:
  CohomologyData(ResolutionPtr r, int degree) : res_(std::move(r)), n_(degree) {
    if (degree < 0 || degree + 1 > res_->length)
      throw std::invalid_argument("cocycles_and_coboundaries: degree out of range");
    const int d = res_->dim(n_);
    IntMat out_matrix = n_ + 1 <= res_->length ? res_->z_boundary_matrix(n_ + 1) : IntMat(d, IntVec(0));
    cocycles_ = left_kernel(out_matrix);  // rows: basis of Z^n
    IntMat cob;
    if (n_ >= 1) {
      IntMat in_matrix = res_->z_boundary_matrix(n_);  // dim(n-1) x dim(n)
      cob = lattice_basis(in_matrix);
    }
    coboundaries_ = cob;
    // coordinates of the coboundary lattice in the cocycle basis
    IntMat bcoords;
    for (const auto& row : coboundaries_) {
      auto x = solve_left(row, cocycles_);
      if (!x) throw std::logic_error("CohomologyData: coboundary outside cocycle lattice");
      bcoords.push_back(*x);
    }
    const std::size_t z = cocycles_.size();
    if (n_ >= 1 && bcoords.size() < z) {
      // free rank would be positive; for finite groups and n >= 1 this
      // signals a broken resolution
      auto s0 = smith_normal_form(bcoords);
      if (s0.rank < z) throw std::logic_error("CohomologyData: nonzero free rank");
    }
    if (bcoords.empty()) bcoords.assign(1, IntVec(z, 0));
    auto s = smith_normal_form(bcoords);
    rank_ = s.rank;
    coltrans_ = s.coltrans;
    coltrans_inv_ = unimodular_inverse(coltrans_);
    diag_.assign(z, 0);
    for (std::size_t i = 0; i < z; ++i) diag_[i] = (i < s.rank) ? s.normal[i][i] : 0;
    for (std::size_t i = 0; i < z; ++i)
      if (diag_[i] == 0 || diag_[i] > 1) keep_.push_back(i);
    if (n_ >= 1)
      for (std::size_t i : keep_)
        if (diag_[i] == 0) throw std::logic_error("CohomologyData: nonzero free rank");
    for (std::size_t i : keep_) torsion_.push_back(diag_[i]);
  }

  int degree() const { return n_; }
  const ResolutionPtr& resolution() const { return res_; }
  const std::vector<Int>& torsion_coefficients() const { return torsion_; }
  const IntMat& cocycle_basis() const { return cocycles_; }
  const IntMat& coboundary_basis() const { return coboundaries_; }

  // class vector (one coordinate per torsion coefficient) -> cocycle
  IntVec class_to_cocycle(const IntVec& cls) const {
    if (cls.size() != torsion_.size()) throw std::invalid_argument("class_to_cocycle: wrong length");
    IntVec w(diag_.size(), 0);
    for (std::size_t t = 0; t < keep_.size(); ++t) w[keep_[t]] = cls[t];
    IntVec x = vec_mat(w, coltrans_inv_);
    return vec_mat(x, cocycles_);
  }

  // cocycle -> class vector, reduced mod the torsion coefficients; returns
  // nullopt if the vector is not a cocycle
  std::optional<IntVec> cocycle_to_class(const IntVec& cocycle) const {
    auto x = solve_left(cocycle, cocycles_);
    if (!x) return std::nullopt;
    IntVec w = vec_mat(*x, coltrans_);
    IntVec cls;
    cls.reserve(keep_.size());
    for (std::size_t t = 0; t < keep_.size(); ++t) {
      Int v = w[keep_[t]];
      const Int& m = torsion_[t];
      v %= m;
      if (v < 0) v += m;
      cls.push_back(v);
    }
    return cls;
  }

  bool is_zero_class(const IntVec& cls) const {
    for (const auto& c : cls)
      if (c != 0) return false;
    return true;
  }

 private:
  ResolutionPtr res_;
  int n_;
  IntMat cocycles_, coboundaries_;
  IntMat coltrans_, coltrans_inv_;
  std::vector<Int> diag_;
  std::vector<std::size_t> keep_;
  std::vector<Int> torsion_;
};

using CohomologyPtr = std::shared_ptr<const CohomologyData>;

inline CohomologyPtr cocycles_and_coboundaries(ResolutionPtr r, int degree) {
  return std::make_shared<CohomologyData>(std::move(r), degree);
}

// H^n(G,Z) -> H^(n-1)(G,Q/Z): solve u * M = v over Q with u supported on the
// given generator prefix (all generators when empty).  Returns nullopt when
// no preimage exists on the selected columns, mirroring a failed prefix solve.
inline std::optional<RatVec> shift_z_to_qz(const IntVec& v, const FreeResolution& r, int n,
                                           const std::vector<std::size_t>* prefix = nullptr) {
  IntMat m = r.z_boundary_matrix(n);  // dim(n-1) x dim(n)
  auto sol = solve_left_rational(v, m, prefix);
  if (!sol) return std::nullopt;
  for (auto& x : *sol) {
    // reduce mod 1 into [0,1)
    Int num = numerator(x), den = denominator(x);
    Int q = num / den;
    if (num - q * den < 0) q -= 1;
    x -= Rat(q);
  }
  return sol;
}

// H^(n-1)(G,Q/Z) -> H^n(G,Z): multiply by the boundary matrix; the result of
// a genuine Q/Z cocycle is integral, anything else is a malformed input.
inline IntVec shift_qz_to_z(const RatVec& u, const FreeResolution& r, int n) {
  IntMat m = r.z_boundary_matrix(n);
  if (u.size() != m.size()) throw std::invalid_argument("shift_qz_to_z: length mismatch");
  const int cols = r.dim(n);
  IntVec out(cols);
  for (int j = 0; j < cols; ++j) {
    Rat s = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
      if (u[i] != 0 && m[i][j] != 0) s += u[i] * Rat(m[i][j]);
    if (denominator(s) != 1) throw std::invalid_argument("shift_qz_to_z: non-integral result");
    out[j] = numerator(s);
  }
  return out;
}

}  // namespace unram
