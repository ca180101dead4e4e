#pragma once
// The algebraic (zeroth-order) operators acting on Lie-algebra-valued forms
// at a point: the bracketing operator T and its adjoint T*, the curvature
// operator H = T*T + TT*, the block decomposition of collar 1-forms, the
// normal-contraction table, the boundary integrand in both its star-wedge
// and block forms, and exact spectrum certification.

#include <hylab/forms.hpp>

#include <cstdlib>
#include <utility>
#include <vector>

namespace hylab {

// T(B_a (x) w_K) = sum over slots s of [gen_s, B_a] (x) w_s ^ w_K.
inline Mat<Rat> mat_T(const FormContext& ctx, int deg) {
  Mat<Rat> M(ctx.dim(deg + 1), ctx.dim(deg));
  for (int a = 0; a < ctx.basis.dim(); ++a)
    for (int kp = 0; kp < ctx.n_subsets(deg); ++kp) {
      const auto& K = ctx.subsets[deg][kp];
      for (int s = 0; s < ctx.slots; ++s) {
        int sgn = detail::shuffle_sign({s}, K);
        if (sgn == 0) continue;
        auto br = ctx.basis.coords(bracket(ctx.basis.B[ctx.slot_gen[s]], ctx.basis.B[a]));
        int pos = ctx.subset_pos(deg + 1, detail::merged({s}, K));
        for (int b = 0; b < ctx.basis.dim(); ++b)
          if (br.a[b] != 0)
            M(ctx.coeff_index(deg + 1, b, pos), ctx.coeff_index(deg, a, kp)) +=
                Rat(sgn) * br.a[b];
      }
    }
  return M;
}

// T*(B_a (x) w_K) = sum over slots s of [gen_s, B_a] (x) i(e_s) w_K.
inline Mat<Rat> mat_Tstar(const FormContext& ctx, int deg) {
  Mat<Rat> M(ctx.dim(deg - 1), ctx.dim(deg));
  for (int a = 0; a < ctx.basis.dim(); ++a)
    for (int kp = 0; kp < ctx.n_subsets(deg); ++kp) {
      const auto& K = ctx.subsets[deg][kp];
      for (size_t pos = 0; pos < K.size(); ++pos) {
        int s = K[pos];
        int sgn = (pos % 2 == 0) ? 1 : -1;
        std::vector<int> rest;
        for (int t : K)
          if (t != s) rest.push_back(t);
        auto br = ctx.basis.coords(bracket(ctx.basis.B[ctx.slot_gen[s]], ctx.basis.B[a]));
        int rp = ctx.subset_pos(deg - 1, rest);
        for (int b = 0; b < ctx.basis.dim(); ++b)
          if (br.a[b] != 0)
            M(ctx.coeff_index(deg - 1, b, rp), ctx.coeff_index(deg, a, kp)) +=
                Rat(sgn) * br.a[b];
      }
    }
  return M;
}

// Curvature operator H = T*T + TT* in a given degree.
inline Mat<Rat> mat_H(const FormContext& ctx, int deg) {
  Mat<Rat> M(ctx.dim(deg), ctx.dim(deg));
  if (deg < ctx.slots) M = M + mat_Tstar(ctx, deg + 1) * mat_T(ctx, deg);
  if (deg > 0) M = M + mat_T(ctx, deg - 1) * mat_Tstar(ctx, deg);
  return M;
}

// Block decomposition of a collar 1-form.  Letters name the blocks by
// (fiber family, slot family):
//   F: N (x) dr          G: N (x) w_j
//   E: E_i (x) dr        A: E_i (x) w_j
//   D: R_ab (x) dr       H: R_ab (x) w_j     (rows in lex order of a<b)
//   C: Rn_i (x) dr       B: Rn_i (x) w_j
struct Blocks {
  Mat<Rat> F, G, E, A, D, H, C, B;
};

namespace detail {
struct BlockIndex {
  int m = 0, k = 0;
  std::vector<int> iN, iE, iR, iRn;  // fiber indices by family
  int dr_pos = 0;                    // subset position of {dr} in degree 1
  std::vector<int> w_pos;            // subset positions of {w_j}
};

inline BlockIndex block_index(const FormContext& ctx) {
  BlockIndex bi;
  bi.m = ctx.slots - 1;
  bi.k = bi.m * (bi.m - 1) / 2;
  bi.iN = {ctx.basis.index_of("N")};
  for (int i = 1; i <= bi.m; ++i)
    bi.iE.push_back(ctx.basis.index_of("E" + std::to_string(i)));
  for (int a = 1; a <= bi.m; ++a)
    for (int b = a + 1; b <= bi.m; ++b)
      bi.iR.push_back(ctx.basis.index_of("R" + std::to_string(a) + std::to_string(b)));
  for (int i = 1; i <= bi.m; ++i)
    bi.iRn.push_back(ctx.basis.index_of("Rn" + std::to_string(i)));
  bi.dr_pos = ctx.subset_pos(1, {ctx.dr_slot});
  for (int j = 1; j <= bi.m; ++j)
    bi.w_pos.push_back(ctx.subset_pos(1, {ctx.slot_index("w" + std::to_string(j))}));
  return bi;
}
}  // namespace detail

inline Blocks block_decompose(const FormContext& ctx, const EForm<Rat>& w) {
  auto bi = detail::block_index(ctx);
  Blocks out;
  auto fill = [&](const std::vector<int>& fam, bool dr) {
    Mat<Rat> M(static_cast<int>(fam.size()), dr ? 1 : bi.m);
    for (size_t r = 0; r < fam.size(); ++r) {
      if (dr)
        M(static_cast<int>(r), 0) = w.c.a[ctx.coeff_index(1, fam[r], bi.dr_pos)];
      else
        for (int j = 0; j < bi.m; ++j)
          M(static_cast<int>(r), j) = w.c.a[ctx.coeff_index(1, fam[r], bi.w_pos[j])];
    }
    return M;
  };
  out.F = fill(bi.iN, true);
  out.G = fill(bi.iN, false);
  out.E = fill(bi.iE, true);
  out.A = fill(bi.iE, false);
  out.D = fill(bi.iR, true);
  out.H = fill(bi.iR, false);
  out.C = fill(bi.iRn, true);
  out.B = fill(bi.iRn, false);
  return out;
}

inline EForm<Rat> block_compose(const FormContext& ctx, const Blocks& blk) {
  auto bi = detail::block_index(ctx);
  EForm<Rat> w(ctx, 1);
  auto put = [&](const std::vector<int>& fam, const Mat<Rat>& M, bool dr) {
    for (size_t r = 0; r < fam.size(); ++r) {
      if (dr)
        w.c.a[ctx.coeff_index(1, fam[r], bi.dr_pos)] = M(static_cast<int>(r), 0);
      else
        for (int j = 0; j < bi.m; ++j)
          w.c.a[ctx.coeff_index(1, fam[r], bi.w_pos[j])] = M(static_cast<int>(r), j);
    }
  };
  put(bi.iN, blk.F, true);
  put(bi.iN, blk.G, false);
  put(bi.iE, blk.E, true);
  put(bi.iE, blk.A, false);
  put(bi.iR, blk.D, true);
  put(bi.iR, blk.H, false);
  put(bi.iRn, blk.C, true);
  put(bi.iRn, blk.B, false);
  return w;
}

// The skew matrix built from the R_ab (x) dr column: entry (a, b) = +d_ab,
// entry (b, a) = -d_ab for a < b.
inline Mat<Rat> skew_of(const Mat<Rat>& D, int m) {
  Mat<Rat> M(m, m);
  int r = 0;
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b, ++r) {
      M(a - 1, b - 1) = D(r, 0);
      M(b - 1, a - 1) = -D(r, 0);
    }
  return M;
}

// The rotational image of the E_i (x) dr column: row (a<b), column j gets
// e_a if j = b and -e_b if j = a.
inline Mat<Rat> rot_of(const Mat<Rat>& E, int m) {
  int k = m * (m - 1) / 2;
  Mat<Rat> M(k, m);
  int r = 0;
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b, ++r) {
      M(r, b - 1) += E(a - 1, 0);
      M(r, a - 1) -= E(b - 1, 0);
    }
  return M;
}

// The normal contraction i(n) T(omega) written directly from the blocks of
// omega: the table reads (rows = fiber families, dr column zero)
//   N row:   C^T        E rows:  B + skew(D)
//   R rows:  rot(E)     Rn rows: A + F Id.
inline EForm<Rat> normal_contraction(const FormContext& ctx, const Blocks& blk) {
  auto bi = detail::block_index(ctx);
  Blocks t;
  t.F = Mat<Rat>(1, 1);
  t.E = Mat<Rat>(bi.m, 1);
  t.D = Mat<Rat>(bi.k, 1);
  t.C = Mat<Rat>(bi.m, 1);
  t.G = blk.C.transposed();
  t.A = blk.B + skew_of(blk.D, bi.m);
  t.H = rot_of(blk.E, bi.m);
  t.B = blk.A + Mat<Rat>::identity(bi.m) * blk.F(0, 0);
  return block_compose(ctx, t);
}

namespace detail {
inline Rat frob(const Mat<Rat>& X, const Mat<Rat>& Y) {
  Rat s = 0;
  for (size_t i = 0; i < X.a.size(); ++i) s += X.a[i] * Y.a[i];
  return s;
}
}  // namespace detail

// Boundary integrand of the basic identity, as the fiber pairing of the
// tangential part of omega with the normal contraction of T(omega):
//   G.C^T + A.B + A.skew(D) + H.rot(E) + B.A + B.F Id    (Frobenius dots).
inline Rat boundary_integrand_blocks(const FormContext& ctx, const Blocks& blk) {
  auto bi = detail::block_index(ctx);
  Rat s = 0;
  s += detail::frob(blk.G, blk.C.transposed());
  s += detail::frob(blk.A, blk.B);
  s += detail::frob(blk.A, skew_of(blk.D, bi.m));
  s += detail::frob(blk.H, rot_of(blk.E, bi.m));
  s += detail::frob(blk.B, blk.A);
  s += detail::frob(blk.B, Mat<Rat>::identity(bi.m) * blk.F(0, 0));
  return s;
}

// The same integrand computed as the coefficient of omega ^ *T(omega) on the
// slice volume form (the spatial top subset, oriented as i(d/dr) of the
// collar volume form).
inline Rat boundary_integrand_forms(const FormContext& ctx, const EForm<Rat>& w) {
  EForm<Rat> Tw(ctx, 2);
  Tw.c = mat_T(ctx, 1).apply(w.c);
  EForm<Rat> sTw(ctx, ctx.slots - 2);
  sTw.c = mat_star(ctx, 2).apply(Tw.c);
  auto top = wedge_pair(ctx, w, sTw);
  std::vector<int> spatial;
  for (int s = 0; s < ctx.slots; ++s)
    if (s != ctx.dr_slot) spatial.push_back(s);
  int m = ctx.slots - 1;
  Rat coeff = top.a[ctx.subset_pos(m, spatial)];
  return (m % 2 == 0) ? coeff : -coeff;
}

// Exactly certified spectrum of a symmetric rational matrix: candidate
// eigenvalues come from a float eigensolve, are rationalized, and are then
// proven by exact rank computations; certification further requires the
// multiplicities to sum to the dimension and the product of (M - lambda I)
// over all eigenvalues to vanish identically.
struct Spectrum {
  bool certified = false;
  std::vector<Rat> eigenvalues;      // ascending
  std::vector<int> multiplicities;   // matching entries
};

inline Spectrum certify_spectrum(const Mat<Rat>& M) {
  Spectrum out;
  int n = M.rows;
  auto [ev, V] = sym_eigen(to_double_mat(M));
  (void)V;
  std::vector<Rat> cands;
  for (double x : ev) {
    Rat r = rationalize(x, 1000000);
    bool seen = false;
    for (const auto& c : cands)
      if (c == r) seen = true;
    if (!seen) cands.push_back(r);
  }
  std::sort(cands.begin(), cands.end());
  int total = 0;
  for (const auto& lam : cands) {
    Mat<Rat> shifted = M - Mat<Rat>::identity(n) * lam;
    int mult = n - rank_bareiss(shifted);
    if (mult <= 0) continue;
    out.eigenvalues.push_back(lam);
    out.multiplicities.push_back(mult);
    total += mult;
  }
  if (total != n) return out;
  Mat<Rat> prod = Mat<Rat>::identity(n);
  for (const auto& lam : out.eigenvalues)
    prod = prod * (M - Mat<Rat>::identity(n) * lam);
  out.certified = prod.is_zero();
  return out;
}

}  // namespace hylab
