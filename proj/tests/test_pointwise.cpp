// Unit tests for the pointwise algebra of Lie-algebra-valued forms:
// the multi-index coframe machinery, the algebraic operators T and T*,
// the curvature operator H = T*T + TT* with exactly certified spectra,
// the block decomposition of 1-forms, the normal contraction table, and
// the two routes to the boundary integrand.

#include <catch2/catch_amalgamated.hpp>

#include <hylab/forms.hpp>
#include <hylab/pointwise.hpp>
#include <hylab/rng.hpp>

#include <map>
#include <string>
#include <vector>

using namespace hylab;

namespace {

// Builds a form from (basis name, slot names, coefficient) triples.
EForm<Rat> make_form(const FormContext& ctx, int deg,
                     const std::vector<std::tuple<std::string, std::vector<std::string>, Rat>>& terms) {
  EForm<Rat> f(ctx, deg);
  for (const auto& [gname, slots, c] : terms) {
    std::vector<int> K;
    for (const auto& s : slots) K.push_back(ctx.slot_index(s));
    std::sort(K.begin(), K.end());
    f.c.a[ctx.coeff_index(deg, ctx.basis.index_of(gname), ctx.subset_pos(deg, K))] += c;
  }
  return f;
}

EForm<Rat> random_form(const FormContext& ctx, int deg, Rng& rng) {
  EForm<Rat> f(ctx, deg);
  for (auto& x : f.c.a) x = rng.rat(4, 4);
  return f;
}

}  // namespace

TEST_CASE("coframe subset bookkeeping") {
  auto ctx = warped_context(3);  // slots: dr, w1, w2, w3
  CHECK(ctx.slots == 4);
  CHECK(ctx.n_subsets(0) == 1);
  CHECK(ctx.n_subsets(1) == 4);
  CHECK(ctx.n_subsets(2) == 6);
  CHECK(ctx.dim(1) == ctx.basis.dim() * 4);
  CHECK(ctx.slot_names[ctx.dr_slot] == "dr");
  // The generator paired with dr is N; with w_i it is E_i.
  CHECK(ctx.basis.names[ctx.slot_gen[ctx.dr_slot]] == "N");
  CHECK(ctx.basis.names[ctx.slot_gen[ctx.slot_index("w2")]] == "E2");
}

TEST_CASE("T on sections hits the expected blocks (m = 2)") {
  auto ctx = warped_context(2);
  auto T0 = mat_T(ctx, 0);

  auto apply_to = [&](const std::string& gname) {
    EForm<Rat> s(ctx, 0);
    s.c.a[ctx.basis.index_of(gname)] = 1;
    EForm<Rat> out(ctx, 1);
    out.c = T0.apply(s.c);
    return out;
  };

  // T(N) = -sum_i Rn_i (x) w_i.
  auto tn = apply_to("N");
  auto want_tn = make_form(ctx, 1, {{"Rn1", {"w1"}, -1}, {"Rn2", {"w2"}, -1}});
  CHECK((tn.c - want_tn.c).is_zero());

  // T(E_1) = Rn_1 (x) dr + R_21 (x) w_2 = Rn1 (x) dr - R12 (x) w2.
  auto te = apply_to("E1");
  auto want_te = make_form(ctx, 1, {{"Rn1", {"dr"}, 1}, {"R12", {"w2"}, -1}});
  CHECK((te.c - want_te.c).is_zero());

  // T(R_12) = E_2 (x) w_1 - E_1 (x) w_2.
  auto tr = apply_to("R12");
  auto want_tr = make_form(ctx, 1, {{"E2", {"w1"}, 1}, {"E1", {"w2"}, -1}});
  CHECK((tr.c - want_tr.c).is_zero());

  // T(Rn_1) = E_1 (x) dr - N (x) w_1.
  auto trn = apply_to("Rn1");
  auto want_trn = make_form(ctx, 1, {{"E1", {"dr"}, 1}, {"N", {"w1"}, -1}});
  CHECK((trn.c - want_trn.c).is_zero());
}

TEST_CASE("T* on 1-forms is bracketing with the paired generator") {
  auto ctx = warped_context(3);
  auto Ts1 = mat_Tstar(ctx, 1);
  auto apply_to = [&](const std::string& g, const std::string& slot) {
    auto f = make_form(ctx, 1, {{g, {slot}, 1}});
    EForm<Rat> out(ctx, 0);
    out.c = Ts1.apply(f.c);
    return out;
  };
  // T*(E_1 (x) w_2) = [E_2, E_1] = R_21 = -R12.
  auto a = apply_to("E1", "w2");
  EForm<Rat> want(ctx, 0);
  want.c.a[ctx.basis.index_of("R12")] = -1;
  CHECK((a.c - want.c).is_zero());
  // T*(E_1 (x) dr) = [N, E_1] = Rn1.
  auto b = apply_to("E1", "dr");
  EForm<Rat> want_b(ctx, 0);
  want_b.c.a[ctx.basis.index_of("Rn1")] = 1;
  CHECK((b.c - want_b.c).is_zero());
  // T* annihilates the symmetric translational combination E_1 w_2 + E_2 w_1.
  auto f = make_form(ctx, 1, {{"E1", {"w2"}, 1}, {"E2", {"w1"}, 1}});
  CHECK(Ts1.apply(f.c).is_zero());
}

TEST_CASE("T and T* are exactly adjoint") {
  for (auto mk : {warped_context, core_context}) {
    for (int m : {2, 3}) {
      auto ctx = mk(m);
      Rng rng(900 + m + (ctx.dr_slot >= 0 ? 10 : 0));
      for (int deg = 0; deg + 1 <= ctx.slots && deg <= 2; ++deg) {
        auto T = mat_T(ctx, deg);
        auto Ts = mat_Tstar(ctx, deg + 1);
        // <T a, b> = <a, T* b> for 25 random pairs per degree (exact).
        for (int k = 0; k < 25; ++k) {
          auto a = random_form(ctx, deg, rng);
          auto b = random_form(ctx, deg + 1, rng);
          CHECK(T.apply(a.c).dot(b.c) == a.c.dot(Ts.apply(b.c)));
        }
        // Equivalently the matrices are transposes (orthonormal basis).
        CHECK((Ts - T.transposed()).is_zero());
      }
    }
  }
}

TEST_CASE("section-level T*T eigenvalues over the collar") {
  for (int m : {2, 3, 4}) {
    auto ctx = warped_context(m);
    auto TsT = mat_Tstar(ctx, 1) * mat_T(ctx, 0);
    // m on every translation (N and E_i), 2 on every rotation.
    for (int a = 0; a < ctx.basis.dim(); ++a) {
      Vec<Rat> e(ctx.basis.dim());
      e.a[a] = 1;
      auto out = TsT.apply(e);
      Rat want = (a <= m) ? Rat(m) : Rat(2);
      CHECK((out - e * want).is_zero());
    }
  }
}

TEST_CASE("curvature operator on boundary-algebra 1-forms over the slice") {
  // Over the slice (no dr slot) the curvature operator preserves the
  // subspace of forms with values in the span of N and the Rn_i.
  // Frozen spectra: N-block contributes m with multiplicity m;
  // the Rn-block contributes m on the identity, 2 on skews, 0 on
  // traceless symmetrics.
  std::map<int, std::vector<std::pair<Rat, int>>> frozen = {
      {2, {{0, 2}, {2, 4}}},
      {3, {{0, 5}, {2, 3}, {3, 4}}},
      {4, {{0, 9}, {2, 6}, {4, 5}}},
  };
  for (int m : {2, 3, 4}) {
    auto ctx = core_context(m);
    auto H = mat_H(ctx, 1);

    // Invariance of the normal-valued subspace.
    std::vector<int> sub;
    for (int a = 0; a < ctx.basis.dim(); ++a) {
      const auto& name = ctx.basis.names[a];
      if (name == "N" || name.rfind("Rn", 0) == 0)
        for (int k = 0; k < ctx.n_subsets(1); ++k)
          sub.push_back(ctx.coeff_index(1, a, k));
    }
    std::vector<bool> in_sub(H.rows, false);
    for (int i : sub) in_sub[i] = true;
    for (int j : sub)
      for (int i = 0; i < H.rows; ++i)
        if (!in_sub[i]) CHECK(H(i, j) == Rat(0));

    // Exact certified spectrum of the restriction.
    Mat<Rat> Hs(static_cast<int>(sub.size()), static_cast<int>(sub.size()));
    for (size_t i = 0; i < sub.size(); ++i)
      for (size_t j = 0; j < sub.size(); ++j)
        Hs(static_cast<int>(i), static_cast<int>(j)) = H(sub[i], sub[j]);
    auto spec = certify_spectrum(Hs);
    REQUIRE(spec.certified);
    std::vector<std::pair<Rat, int>> got;
    for (size_t i = 0; i < spec.eigenvalues.size(); ++i)
      got.emplace_back(spec.eigenvalues[i], spec.multiplicities[i]);
    CHECK(got == frozen[m]);

    // The split of the N-block value: T*T gives m-1, TT* gives 1.
    auto TsT = mat_Tstar(ctx, 2) * mat_T(ctx, 1);
    auto TTs = mat_T(ctx, 0) * mat_Tstar(ctx, 1);
    int iN = ctx.coeff_index(1, ctx.basis.index_of("N"), 0);
    Vec<Rat> e(H.cols);
    e.a[iN] = 1;
    CHECK((TsT.apply(e) - e * Rat(m - 1)).is_zero());
    CHECK((TTs.apply(e) - e * Rat(1)).is_zero());
  }
}

TEST_CASE("curvature operator over a closed manifold: certified spectrum") {
  // Frozen spectra of H on full-algebra-valued 1-forms with all n frame
  // directions present, derived by hand from the bracket relations:
  // translations give n-2 (traceless symmetric), n (skew), 2n-2 (trace);
  // rotations give 1 (hook part), n (vector part), 4 (fully alternating).
  std::map<int, std::vector<std::pair<Rat, int>>> frozen = {
      {3, {{1, 10}, {3, 6}, {4, 2}}},
      {4, {{1, 16}, {2, 9}, {4, 14}, {6, 1}}},
      {5, {{1, 35}, {3, 14}, {4, 10}, {5, 15}, {8, 1}}},
  };
  for (int n : {3, 4, 5}) {
    auto ctx = closed_context(n);
    auto H = mat_H(ctx, 1);
    CHECK((H - H.transposed()).is_zero());
    auto spec = certify_spectrum(H);
    REQUIRE(spec.certified);
    std::vector<std::pair<Rat, int>> got;
    for (size_t i = 0; i < spec.eigenvalues.size(); ++i)
      got.emplace_back(spec.eigenvalues[i], spec.multiplicities[i]);
    CHECK(got == frozen[n]);
    // Strict positivity.
    CHECK(spec.eigenvalues.front() > 0);
    // Cross-check the certified values against a float eigensolve.
    auto [ev, V] = sym_eigen(to_double_mat(H));
    CHECK(std::abs(ev.front() - to_double(spec.eigenvalues.front())) < 1e-9);
    CHECK(std::abs(ev.back() - to_double(spec.eigenvalues.back())) < 1e-9);
  }
}

TEST_CASE("block decomposition round trip and shapes") {
  for (int m : {2, 3}) {
    auto ctx = warped_context(m);
    Rng rng(40 + m);
    int k = m * (m - 1) / 2;
    for (int i = 0; i < 10; ++i) {
      auto w = random_form(ctx, 1, rng);
      auto blocks = block_decompose(ctx, w);
      CHECK(blocks.A.rows == m);
      CHECK(blocks.A.cols == m);
      CHECK(blocks.B.rows == m);
      CHECK(blocks.C.rows == m);
      CHECK(blocks.C.cols == 1);
      CHECK(blocks.D.rows == k);
      CHECK(blocks.E.rows == m);
      CHECK(blocks.F.rows == 1);
      CHECK(blocks.G.cols == m);
      CHECK(blocks.H.rows == k);
      CHECK(blocks.H.cols == m);
      auto back = block_compose(ctx, blocks);
      CHECK((back.c - w.c).is_zero());
    }
  }
}

TEST_CASE("normal contraction of T(omega) matches the block table") {
  for (int m : {2, 3, 4}) {
    auto ctx = warped_context(m);
    Rng rng(50 + m);
    auto T1 = mat_T(ctx, 1);
    for (int i = 0; i < 20; ++i) {
      auto w = random_form(ctx, 1, rng);
      auto blocks = block_decompose(ctx, w);

      // Route A: contract dr into T(omega) with the exact matrices.
      EForm<Rat> Tw(ctx, 2);
      Tw.c = T1.apply(w.c);
      auto inTw = contract_slot(ctx, Tw, ctx.dr_slot);

      // Route B: the table built from the blocks of omega.
      auto table = normal_contraction(ctx, blocks);

      // The table is itself a (dr-free) 1-form; compare coefficients.
      CHECK((inTw.c - table.c).is_zero());

      // And its blocks are C^T, B + skew(D), rot(E), A + F Id.
      auto tb = block_decompose(ctx, table);
      CHECK((tb.G - blocks.C.transposed()).is_zero());
      CHECK((tb.A - (blocks.B + skew_of(blocks.D, m))).is_zero());
      CHECK((tb.H - rot_of(blocks.E, m)).is_zero());
      auto FId = Mat<Rat>::identity(m) * blocks.F(0, 0);
      CHECK((tb.B - (blocks.A + FId)).is_zero());
      // Normal-column blocks of the contraction vanish.
      CHECK(tb.C.is_zero());
      CHECK(tb.D.is_zero());
      CHECK(tb.E.is_zero());
      CHECK(tb.F.is_zero());
    }
  }
}

TEST_CASE("boundary integrand: star-wedge route equals block route") {
  for (int m : {2, 3, 4}) {
    auto ctx = warped_context(m);
    Rng rng(60 + m);
    for (int i = 0; i < 50; ++i) {
      auto w = random_form(ctx, 1, rng);
      Rat via_blocks = boundary_integrand_blocks(ctx, block_decompose(ctx, w));
      Rat via_star = boundary_integrand_forms(ctx, w);
      CHECK(via_blocks == via_star);
      // Float backend agrees to well below 1e-10.
      double d = to_double(via_blocks) - to_double(via_star);
      CHECK(std::abs(d) < 1e-12);
    }
  }
}

TEST_CASE("Hodge star squares with the right sign") {
  for (int m : {2, 3}) {
    auto ctx = warped_context(m);
    int C = ctx.slots;
    for (int deg = 0; deg <= C; ++deg) {
      auto s1 = mat_star(ctx, deg);
      auto s2 = mat_star(ctx, C - deg);
      auto ss = s2 * s1;
      // ** = (-1)^{deg (C-deg)} in Euclidean signature.
      int sign = ((deg * (C - deg)) % 2 == 0) ? 1 : -1;
      CHECK((ss - Mat<Rat>::identity(ss.rows) * Rat(sign)).is_zero());
    }
    // alpha wedge *alpha recovers the squared norm times the volume form.
    Rng rng(70 + m);
    auto a = random_form(ctx, 1, rng);
    EForm<Rat> sa(ctx, ctx.slots - 1);
    sa.c = mat_star(ctx, 1).apply(a.c);
    auto top = wedge_pair(ctx, a, sa);
    // Top-degree coefficient with respect to the oriented volume slot order.
    Rat vol_coeff = top.a[0] * ctx.orientation_sign();
    CHECK(vol_coeff == a.c.dot(a.c));
  }
}
