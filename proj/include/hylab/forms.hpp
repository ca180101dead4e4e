#pragma once
// Pointwise exterior algebra for Lie-algebra-valued forms expressed in an
// orthonormal coframe.  A FormContext fixes the fiber basis, the list of
// coframe slots (optionally including a collar slot "dr"), the translation
// generator paired with each slot, and the orientation.  Forms of degree d
// are flat coefficient vectors indexed by (fiber basis element, sorted slot
// subset of size d).

#include <hylab/algebra.hpp>
#include <hylab/linalg.hpp>
#include <hylab/minkowski.hpp>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hylab {

struct FormContext {
  LieBasis basis;
  int slots = 0;
  int dr_slot = -1;  // index of the collar slot, -1 when absent
  std::vector<std::string> slot_names;
  std::vector<int> slot_gen;  // slot -> fiber index of its translation generator
  // Sign of the permutation taking slot-index order to the oriented order,
  // so that (oriented volume form) = orient_sign * w_{0} ^ w_{1} ^ ... .
  int orient_sign = 1;

  // subsets[d] enumerates the sorted slot subsets of size d in lex order.
  std::vector<std::vector<std::vector<int>>> subsets;
  std::vector<std::map<std::vector<int>, int>> subset_index;

  void finalize() {
    subsets.assign(slots + 1, {});
    subset_index.assign(slots + 1, {});
    std::vector<int> cur;
    build(0, cur);
    for (int d = 0; d <= slots; ++d) {
      auto& lvl = subsets[d];
      std::sort(lvl.begin(), lvl.end());
      for (size_t k = 0; k < lvl.size(); ++k) subset_index[d][lvl[k]] = static_cast<int>(k);
    }
  }

  int n_subsets(int deg) const { return static_cast<int>(subsets[deg].size()); }
  int dim(int deg) const { return basis.dim() * n_subsets(deg); }
  int coeff_index(int deg, int a, int kpos) const { return a * n_subsets(deg) + kpos; }

  int slot_index(const std::string& name) const {
    for (int s = 0; s < slots; ++s)
      if (slot_names[s] == name) return s;
    throw std::invalid_argument("unknown slot " + name);
  }
  int subset_pos(int deg, const std::vector<int>& K) const {
    auto it = subset_index[deg].find(K);
    if (it == subset_index[deg].end()) throw std::invalid_argument("bad subset");
    return it->second;
  }
  int orientation_sign() const { return orient_sign; }

 private:
  void build(int next, std::vector<int>& cur) {
    subsets[cur.size()].push_back(cur);
    for (int s = next; s < slots; ++s) {
      cur.push_back(s);
      build(s + 1, cur);
      cur.pop_back();
    }
  }
};

template <class S>
struct EForm {
  int deg = 0;
  Vec<S> c;
  EForm() = default;
  EForm(const FormContext& ctx, int d) : deg(d), c(ctx.dim(d)) {}
};

namespace detail {
// Sign of merging sorted disjoint subsets K and L into one sorted subset:
// w_K ^ w_L = sign * w_{sorted(K u L)}.  Returns 0 if they intersect.
inline int shuffle_sign(const std::vector<int>& K, const std::vector<int>& L) {
  int inv = 0;
  for (int l : L)
    for (int k : K) {
      if (k == l) return 0;
      if (k > l) ++inv;
    }
  return (inv % 2 == 0) ? 1 : -1;
}

inline std::vector<int> merged(std::vector<int> K, const std::vector<int>& L) {
  K.insert(K.end(), L.begin(), L.end());
  std::sort(K.begin(), K.end());
  return K;
}

inline std::vector<int> complement_of(const FormContext& ctx, const std::vector<int>& K) {
  std::vector<int> c;
  for (int s = 0; s < ctx.slots; ++s)
    if (std::find(K.begin(), K.end(), s) == K.end()) c.push_back(s);
  return c;
}
}  // namespace detail

// Interior product with the frame vector of one slot, as coefficients.
template <class S>
EForm<S> contract_slot(const FormContext& ctx, const EForm<S>& f, int slot) {
  EForm<S> out(ctx, f.deg - 1);
  for (int a = 0; a < ctx.basis.dim(); ++a)
    for (int kp = 0; kp < ctx.n_subsets(f.deg); ++kp) {
      const auto& K = ctx.subsets[f.deg][kp];
      auto it = std::find(K.begin(), K.end(), slot);
      if (it == K.end()) continue;
      int pos = static_cast<int>(it - K.begin());
      std::vector<int> rest;
      for (int s : K)
        if (s != slot) rest.push_back(s);
      S sgn = (pos % 2 == 0) ? scalar_traits<S>::one() : -scalar_traits<S>::one();
      out.c.a[ctx.coeff_index(f.deg - 1, a, ctx.subset_pos(f.deg - 1, rest))] +=
          sgn * f.c.a[ctx.coeff_index(f.deg, a, kp)];
    }
  return out;
}

// Wedging by the coframe of one slot, as a matrix on coefficients (acts
// diagonally over fiber indices).
inline Mat<Rat> mat_wedge_slot(const FormContext& ctx, int slot, int deg) {
  Mat<Rat> M(ctx.dim(deg + 1), ctx.dim(deg));
  for (int kp = 0; kp < ctx.n_subsets(deg); ++kp) {
    const auto& K = ctx.subsets[deg][kp];
    int sgn = detail::shuffle_sign({slot}, K);
    if (sgn == 0) continue;
    int pos = ctx.subset_pos(deg + 1, detail::merged({slot}, K));
    for (int a = 0; a < ctx.basis.dim(); ++a)
      M(ctx.coeff_index(deg + 1, a, pos), ctx.coeff_index(deg, a, kp)) = sgn;
  }
  return M;
}

// Interior product with the frame vector of one slot, as a matrix.
inline Mat<Rat> mat_contract_slot(const FormContext& ctx, int slot, int deg) {
  Mat<Rat> M(ctx.dim(deg - 1), ctx.dim(deg));
  for (int kp = 0; kp < ctx.n_subsets(deg); ++kp) {
    const auto& K = ctx.subsets[deg][kp];
    auto it = std::find(K.begin(), K.end(), slot);
    if (it == K.end()) continue;
    int pos = static_cast<int>(it - K.begin());
    std::vector<int> rest;
    for (int s : K)
      if (s != slot) rest.push_back(s);
    int sgn = (pos % 2 == 0) ? 1 : -1;
    int rp = ctx.subset_pos(deg - 1, rest);
    for (int a = 0; a < ctx.basis.dim(); ++a)
      M(ctx.coeff_index(deg - 1, a, rp), ctx.coeff_index(deg, a, kp)) = sgn;
  }
  return M;
}

// Hodge star on slot subsets for the orthonormal coframe, as a matrix in the
// coefficient basis (acts diagonally over fiber indices).
inline Mat<Rat> mat_star(const FormContext& ctx, int deg) {
  int cdeg = ctx.slots - deg;
  Mat<Rat> M(ctx.dim(cdeg), ctx.dim(deg));
  for (int kp = 0; kp < ctx.n_subsets(deg); ++kp) {
    const auto& K = ctx.subsets[deg][kp];
    auto Kc = detail::complement_of(ctx, K);
    int sgn = detail::shuffle_sign(K, Kc) * ctx.orient_sign;
    int cp = ctx.subset_pos(cdeg, Kc);
    for (int a = 0; a < ctx.basis.dim(); ++a)
      M(ctx.coeff_index(cdeg, a, cp), ctx.coeff_index(deg, a, kp)) = sgn;
  }
  return M;
}

// Wedge of two fiber-valued forms, pairing the fibers with the (pointwise
// orthonormal) bundle metric; the result is a scalar form given by its
// coefficients over slot subsets of the combined degree.
template <class S>
Vec<S> wedge_pair(const FormContext& ctx, const EForm<S>& f, const EForm<S>& g) {
  int deg = f.deg + g.deg;
  Vec<S> out(ctx.n_subsets(deg));
  for (int a = 0; a < ctx.basis.dim(); ++a)
    for (int kp = 0; kp < ctx.n_subsets(f.deg); ++kp) {
      const S& x = f.c.a[ctx.coeff_index(f.deg, a, kp)];
      if (scalar_traits<S>::is_zero(x)) continue;
      const auto& K = ctx.subsets[f.deg][kp];
      for (int lp = 0; lp < ctx.n_subsets(g.deg); ++lp) {
        const S& y = g.c.a[ctx.coeff_index(g.deg, a, lp)];
        if (scalar_traits<S>::is_zero(y)) continue;
        const auto& L = ctx.subsets[g.deg][lp];
        int sgn = detail::shuffle_sign(K, L);
        if (sgn == 0) continue;
        S prod = x * y;
        if (sgn < 0) prod = -prod;
        out.a[ctx.subset_pos(deg, detail::merged(K, L))] += prod;
      }
    }
  return out;
}

// Collar context: coframe (dr, w_1..w_m) over the boundary-adapted algebra
// of so(1, m+1); dr pairs with N, w_i with E_i.  Oriented volume form is
// w_1 ^ ... ^ w_m ^ dr.
inline FormContext warped_context(int m) {
  FormContext ctx;
  ctx.basis = boundary_basis(m + 1);
  ctx.slots = m + 1;
  ctx.dr_slot = 0;
  ctx.slot_names.push_back("dr");
  ctx.slot_gen.push_back(ctx.basis.index_of("N"));
  for (int i = 1; i <= m; ++i) {
    ctx.slot_names.push_back("w" + std::to_string(i));
    ctx.slot_gen.push_back(ctx.basis.index_of("E" + std::to_string(i)));
  }
  // Moving dr from the front past m spatial slots.
  ctx.orient_sign = (m % 2 == 0) ? 1 : -1;
  ctx.finalize();
  return ctx;
}

// Slice context: coframe (w_1..w_m) only, fiber still the full
// boundary-adapted algebra of so(1, m+1).
inline FormContext core_context(int m) {
  FormContext ctx;
  ctx.basis = boundary_basis(m + 1);
  ctx.slots = m;
  ctx.dr_slot = -1;
  for (int i = 1; i <= m; ++i) {
    ctx.slot_names.push_back("w" + std::to_string(i));
    ctx.slot_gen.push_back(ctx.basis.index_of("E" + std::to_string(i)));
  }
  ctx.orient_sign = 1;
  ctx.finalize();
  return ctx;
}

// Closed-manifold context: n slots w_1..w_n over the plain basis of so(1, n).
inline FormContext closed_context(int n) {
  FormContext ctx;
  ctx.basis = plain_basis(n);
  ctx.slots = n;
  ctx.dr_slot = -1;
  for (int i = 1; i <= n; ++i) {
    ctx.slot_names.push_back("w" + std::to_string(i));
    ctx.slot_gen.push_back(ctx.basis.index_of("E" + std::to_string(i)));
  }
  ctx.orient_sign = 1;
  ctx.finalize();
  return ctx;
}

}  // namespace hylab
