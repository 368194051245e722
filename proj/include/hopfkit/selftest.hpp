#pragma once

// Built-in verification suites behind the CLI's `selftest` command.  The fast
// level runs the invariant suites on the small corpus; full adds the
// dimension-144 dihedral computations and the 1152 headline number.

#include "hopfkit/drinfeld.hpp"
#include "hopfkit/presets.hpp"

#include <chrono>
#include <functional>

namespace hopfkit {

struct SelftestReport {
  struct Suite {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
  };
  std::vector<Suite> suites;
  bool all_pass = true;
};

enum class SelftestLevel { Fast, Full };

inline SelftestReport selftest(SelftestLevel level, bool inject_fault = false, int jobs = 1) {
  SelftestReport report;
  auto run = [&](const std::string& name, const std::function<bool(std::string&)>& fn) {
    SelftestReport::Suite suite;
    suite.name = name;
    auto t0 = std::chrono::steady_clock::now();
    try {
      suite.pass = fn(suite.detail);
    } catch (const std::exception& e) {
      suite.pass = false;
      suite.detail = std::string("exception: ") + e.what();
    }
    suite.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    report.all_pass = report.all_pass && suite.pass;
    report.suites.push_back(std::move(suite));
  };

  run("cyclotomic-field", [&](std::string& detail) {
    for (long n = 1; n <= 24; ++n) {
      const auto& p = cyclotomic_polynomial(n);
      if (static_cast<long>(p.size()) - 1 != euler_phi(n)) {
        detail = "degree mismatch at n=" + std::to_string(n);
        return false;
      }
    }
    Cyc i4 = Cyc::root_of_unity(4, 1);
    if (!(i4 * i4 == Cyc(Rat(-1), 4))) {
      detail = "zeta_4^2 != -1";
      return false;
    }
    for (long n : {3L, 5L, 6L, 8L, 12L}) {
      Cyc z = Cyc::root_of_unity(n, 1) + Cyc(Rat(2), n);
      if (!(z * z.inv()).is_one()) {
        detail = "inverse fails in Q(zeta_" + std::to_string(n) + ")";
        return false;
      }
    }
    return true;
  });

  run("exact-linalg", [&](std::string& detail) {
    // deterministic pseudo-random rational matrices
    long seed = 12345;
    auto next = [&seed]() {
      seed = (seed * 1103515245 + 12345) % 2147483648L;
      return seed;
    };
    for (int trial = 0; trial < 10; ++trial) {
      Mat m(5, 7);
      for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 7; ++c) {
          long v = next() % 7 - 3;
          if (v != 0) m.set(r, c, Cyc(Rat(v, 1 + next() % 3)));
        }
      if (m.rank() + m.kernel().cols() != 7) {
        detail = "rank-nullity fails";
        return false;
      }
      if (!(m * m.kernel()).is_zero_mat()) {
        detail = "kernel is not annihilated";
        return false;
      }
    }
    Mat a(2, 2), b(2, 2);
    a.set(0, 1, Cyc(1));
    a.set(1, 0, Cyc(1));
    b.set(0, 0, Cyc(2));
    b.set(1, 1, Cyc(Rat(1, 3)));
    if (!(Mat::kron(a, b) * Mat::kron(b, a) == Mat::kron(a * b, b * a))) {
      detail = "kron functoriality fails";
      return false;
    }
    return true;
  });

  run("group-corpus", [&](std::string& detail) {
    for (const auto& g : preset_corpus(6)) {
      auto inv = group_invariants(g);
      if (static_cast<long>(linear_characters(g).size()) != inv.abelianization.group.n) {
        detail = "character count mismatch for " + g.name;
        return false;
      }
      auto rd = remak_decompose(g);
      size_t prod = 1;
      for (const auto& f : rd.factors) prod *= static_cast<size_t>(f.group.n);
      if (prod != static_cast<size_t>(g.n)) {
        detail = "Remak factors do not multiply up for " + g.name;
        return false;
      }
    }
    return true;
  });

  run("hopf-axioms", [&](std::string& detail) {
    for (const auto& g : preset_corpus(6)) {
      long ord = g.exponent();
      std::vector<HopfPtr> algebras{build_group_algebra(g, ord), build_dual_group_algebra(g, ord),
                                    build_tensor_form(g, ord), build_drinfeld_double(g, ord)};
      if (inject_fault && g.n == 6 && !g.is_abelian()) {
        auto broken = std::make_shared<FinHopf>(*algebras[0]);
        broken->antipode = Mat::identity(broken->dim, broken->order);
        algebras.push_back(broken);
      }
      for (const auto& h : algebras) {
        if (!verify_hopf_axioms(*h).all_ok()) {
          detail = "axioms fail for " + h->name;
          return false;
        }
      }
    }
    return true;
  });

  run("convolution-and-normality", [&](std::string& detail) {
    for (const auto& g : preset_corpus(6)) {
      auto kg = build_group_algebra(g);
      HopfMap s = make_map(kg, kg, kg->antipode);
      std::vector<HopfMap> endos;
      for (const auto& hom : enumerate_homs(g, g)) {
        Mat m(g.n, g.n, kg->order);
        for (int x = 0; x < g.n; ++x) m.set(hom.apply(x), x, Cyc::one(kg->order));
        endos.push_back(make_map(kg, kg, m));
      }
      for (const auto& f : endos) {
        if (!(convolution(f, make_map(kg, kg, kg->antipode * f.mat)).mat == trivial_map(kg, kg).mat)) {
          detail = "f * (S f) != unit on " + g.name;
          return false;
        }
        bool lemma = normality(f, NormalityKind::Normal) ==
                     morphism_check(convolution(compose(f, s), identity_map(kg))).is_algebra;
        if (!lemma) {
          detail = "normality equivalence fails on " + g.name;
          return false;
        }
      }
    }
    return true;
  });

  run("radford-fitting", [&](std::string& detail) {
    for (const auto& g : preset_corpus(6)) {
      auto kg = build_group_algebra(g);
      for (const auto& hom : enumerate_homs(g, g)) {
        Mat m(g.n, g.n, kg->order);
        for (int x = 0; x < g.n; ++x) m.set(hom.apply(x), x, Cyc::one(kg->order));
        HopfMap f = make_map(kg, kg, m);
        FittingResult r = radford_decompose(f);
        if (r.image_basis.cols() * r.coinv_basis.cols() != kg->dim) {
          detail = "Radford dimensions fail on " + g.name;
          return false;
        }
      }
    }
    return true;
  });

  run("tensor-endomorphism-calculus", [&](std::string& detail) {
    auto k2 = build_group_algebra(make_cyclic(2));
    auto t = tensor_hopf(k2, build_group_algebra(make_cyclic(2)));
    FiniteGroup v4 = make_product({make_cyclic(2), make_cyclic(2)});
    auto homs = enumerate_homs(v4, v4);
    if (homs.size() != 16) {
      detail = "|End(Z2^2)| != 16";
      return false;
    }
    for (const auto& hom : homs) {
      Mat m(4, 4, t->order);
      for (int x = 0; x < 4; ++x) m.set(hom.apply(x), x, Cyc::one(t->order));
      HopfMap f = make_map(t, t, m);
      EndoMatrix em = endo_matrix_split(f);
      if (!(endo_matrix_join(em, t).mat == f.mat)) {
        detail = "split/join round trip fails";
        return false;
      }
      if (!matrix_normality_check(em, t).agree) {
        detail = "normality characterizations disagree";
        return false;
      }
    }
    return true;
  });

  if (level == SelftestLevel::Full) {
    run("axioms-dim-144", [&](std::string& detail) {
      FiniteGroup d12 = make_dihedral(12);
      for (const auto& h : {build_drinfeld_double(d12), build_tensor_form(d12)}) {
        if (!verify_hopf_axioms(*h).all_ok()) {
          detail = "axioms fail for " + h->name;
          return false;
        }
      }
      return true;
    });

    run("krs-uniqueness", [&](std::string& detail) {
      KrsOptions fwd, rev;
      rev.reverse_order = true;
      for (const auto& h :
           {build_group_algebra(make_product({make_cyclic(2), make_cyclic(2), make_cyclic(3)})),
            build_tensor_form(make_product({make_cyclic(2), make_symmetric(3)}))}) {
        KrsMatch match = krs_match(krs_decompose(h, fwd), krs_decompose(h, rev));
        if (!match.matched || !match.mixed_maps_bijective) {
          detail = "KRS matching fails for " + h->name;
          return false;
        }
      }
      return true;
    });

    run("headline-1152", [&](std::string& detail) {
      BlockOptions opt;
      opt.jobs = jobs;
      BlockAutOrder b = block_aut_order(make_cyclic(2), make_dihedral(6), opt);
      if (b.total != 1152 || b.total != dihedral_aut_order(6)) {
        detail = "expected 1152, computed " + std::to_string(b.total);
        return false;
      }
      return true;
    });
  }
  return report;
}

}  // namespace hopfkit
