// Acceptance suite: runs every acceptance criterion exactly as pinned and
// prints one pass/fail line per criterion.  All comparisons are exact.

#include "hopfkit/drinfeld.hpp"
#include "hopfkit/presets.hpp"

#include <chrono>
#include <iostream>
#include <sstream>

using namespace hopfkit;

namespace {

int failures = 0;

void report(int criterion, const std::string& label, bool pass, const std::string& detail,
            double seconds) {
  std::ostringstream line;
  line << (pass ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << label;
  if (!detail.empty()) line << " -- " << detail;
  line << " (" << static_cast<long>(seconds * 1000) << " ms)";
  std::cout << line.str() << std::endl;
  if (!pass) ++failures;
}

template <class Fn>
void criterion(int number, const std::string& label, Fn&& fn) {
  auto t0 = std::chrono::steady_clock::now();
  bool pass = false;
  std::string detail;
  try {
    pass = fn(detail);
  } catch (const std::exception& e) {
    pass = false;
    detail = std::string("exception: ") + e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  report(number, label, pass, detail, secs);
}

std::vector<HopfMap> group_endos(const HopfPtr& kg, const FiniteGroup& g) {
  std::vector<HopfMap> out;
  for (const auto& hom : enumerate_homs(g, g)) {
    Mat m(g.n, g.n, kg->order);
    for (int x = 0; x < g.n; ++x) m.set(hom.apply(x), x, Cyc::one(kg->order));
    out.push_back(make_map(kg, kg, m));
  }
  return out;
}

std::vector<HopfMap> dual_endos(const HopfPtr& dug, const FiniteGroup& g) {
  std::vector<HopfMap> out;
  for (const auto& hom : enumerate_homs(g, g)) {
    Mat m(g.n, g.n, dug->order);
    for (int x = 0; x < g.n; ++x) m.set(x, hom.apply(x), Cyc::one(dug->order));
    out.push_back(make_map(dug, dug, m));
  }
  return out;
}

bool group_normal_oracle(const FiniteGroup& g, const std::vector<int>& images) {
  for (int a = 0; a < g.n; ++a)
    for (int x = 0; x < g.n; ++x)
      if (images[static_cast<size_t>(g.conj(a, x))] != g.conj(a, images[static_cast<size_t>(x)])) return false;
  return true;
}

}  // namespace

int main() {
  std::cout << "hopfkit acceptance suite" << std::endl;

  criterion(1, "|Hopfaut(D(D12))| = 1152 with breakdown 6*4*4*12", [&](std::string& detail) {
    BlockAutOrder b = block_aut_order(make_cyclic(2), make_dihedral(6));
    std::ostringstream ss;
    ss << b.aut_gamma_c << "*" << b.zenthom_h_to_c << "*" << b.hom_gamma_c_to_z << "*" << b.aut_double_h
       << " = " << b.total;
    detail = ss.str();
    return b.aut_gamma_c == 6 && b.zenthom_h_to_c == 4 && b.hom_gamma_c_to_z == 4 &&
           b.aut_double_h == 12 && b.total == 1152;
  });

  criterion(2, "formula consistency: 1152 for n=6, 3840 for n=10, block path for D10", [&](std::string& detail) {
    bool formula = dihedral_aut_order(6) == 1152 && dihedral_aut_order(10) == 3840;
    BlockAutOrder b = block_aut_order(make_cyclic(2), make_dihedral(10));
    std::ostringstream ss;
    ss << "block(Z2, D10) = " << b.aut_gamma_c << "*" << b.zenthom_h_to_c << "*" << b.hom_gamma_c_to_z
       << "*" << b.aut_double_h << " = " << b.total;
    detail = ss.str();
    return formula && b.total == 3840;
  });

  criterion(3, "enumerate_double_auts(S3): exactly 12 verified automorphisms forming a group",
            [&](std::string& detail) {
    EnumerationReport rep = enumerate_double_auts(make_symmetric(3));
    if (rep.elements.size() != 12) {
      detail = "count " + std::to_string(rep.elements.size());
      return false;
    }
    // group closure + inverses under matrix composition
    auto member = [&](const Mat& m) {
      for (const auto& e : rep.elements)
        if (e.mat == m) return true;
      return false;
    };
    Mat id = Mat::identity(36, rep.scalar_order);
    for (const auto& e1 : rep.elements) {
      bool has_inverse = false;
      for (const auto& e2 : rep.elements) {
        if (!member(e1.mat * e2.mat)) {
          detail = "not closed under composition";
          return false;
        }
        if (e1.mat * e2.mat == id) has_inverse = true;
      }
      if (!has_inverse) {
        detail = "missing inverse";
        return false;
      }
    }
    detail = "12 automorphisms, closed with inverses; |Z2 x Aut(D6)| = 12";
    return true;
  });

  criterion(4, "Zenthom counts for (D(D6), D(Z2)) with completeness certificate", [&](std::string& detail) {
    EnumerationReport homs = enumerate_double_homs(make_dihedral(6), make_cyclic(2));
    ZenthomDoublesReport z = zenthom_doubles(make_dihedral(6), make_cyclic(2));
    FiniteGroup gamma_c = gamma_group(make_cyclic(2));
    FiniteGroup gamma_h = gamma_group(make_dihedral(6));
    SubgroupView zc = subgroup_as_group(gamma_h, center_mask(gamma_h));
    long gamma_homs = static_cast<long>(enumerate_homs(gamma_c, zc.group).size());
    std::ostringstream ss;
    ss << "|Hopfmor| = " << homs.elements.size() << ", |Zenthom| = " << z.enumeration.elements.size()
       << ", complete = " << (homs.complete ? "yes" : "no") << ", |Hom(Gamma_C, Z(Gamma_H))| = " << gamma_homs;
    detail = ss.str();
    return homs.elements.size() == 4 && z.enumeration.elements.size() == 4 && homs.complete &&
           z.enumeration.complete && gamma_homs == 4;
  });

  criterion(5, "structural property suites (a-g)", [&](std::string& detail) {
    std::ostringstream log;

    // (a) normality-equivalence lemma on kG and du(G) for all |G| <= 8
    {
      int disagreements = 0;
      for (const auto& g : preset_corpus(8)) {
        auto kg = build_group_algebra(g);
        auto dug = build_dual_group_algebra(g);
        HopfMap sk = make_map(kg, kg, kg->antipode);
        HopfMap sd = make_map(dug, dug, dug->antipode);
        for (const auto& f : group_endos(kg, g)) {
          bool lemma = morphism_check(convolution(compose(f, sk), identity_map(kg))).is_algebra;
          if (normality(f, NormalityKind::Normal) != lemma) ++disagreements;
        }
        for (const auto& f : dual_endos(dug, g)) {
          bool lemma = morphism_check(convolution(compose(f, sd), identity_map(dug))).is_algebra;
          if (normality(f, NormalityKind::Normal) != lemma) ++disagreements;
        }
      }
      log << "a: " << disagreements << " disagreements";
      if (disagreements != 0) {
        detail = log.str();
        return false;
      }
    }

    // (b) Fitting: binormal corpus endomorphisms split as verified Hopf
    // factorizations; on indecomposable kS3 every binormal endo is nilpotent
    // or bijective
    {
      int checked = 0;
      for (const auto& g : preset_corpus(8)) {
        auto kg = build_group_algebra(g);
        for (const auto& f : group_endos(kg, g)) {
          if (!normality(f, NormalityKind::Binormal)) continue;
          FittingDecomposition fd = fitting_decompose(f, NormalityKind::Binormal);
          std::string why;
          if (!fd.tensor || !verify_factorization_system(*fd.tensor, &why)) {
            detail = "b: factorization failed: " + why;
            return false;
          }
          ++checked;
        }
      }
      FiniteGroup s3 = make_symmetric(3);
      auto ks3 = build_group_algebra(s3);
      for (const auto& f : group_endos(ks3, s3)) {
        if (!normality(f, NormalityKind::Binormal)) continue;
        bool nil = is_nilpotent_endo(f).nilpotent;
        bool bij = f.mat.rank() == ks3->dim;
        if (nil == bij) {
          detail = "b: kS3 binormal endo neither/both nilpotent and bijective";
          return false;
        }
      }
      log << "; b: " << checked << " binormal splittings verified";
    }

    // (c) Radford: Img(p) = coinvariants and bijective decomposition for the
    // corpus idempotents (radford_decompose asserts both internally)
    {
      int idempotents = 0;
      for (const auto& g : preset_corpus(8)) {
        auto kg = build_group_algebra(g);
        for (const auto& f : group_endos(kg, g)) {
          if (!(f.mat * f.mat == f.mat)) continue;
          FittingResult r = radford_decompose(f);
          if (r.image_basis.cols() * r.coinv_basis.cols() != kg->dim) {
            detail = "c: decomposition dimensions wrong";
            return false;
          }
          ++idempotents;
        }
      }
      log << "; c: " << idempotents << " idempotents decomposed";
    }

    // (d) KRS uniqueness for the three pinned algebras
    {
      KrsOptions fwd, rev;
      rev.reverse_order = true;
      std::vector<HopfPtr> targets{
          build_group_algebra(make_product({make_cyclic(2), make_cyclic(2), make_cyclic(3)})),
          build_tensor_form(make_product({make_cyclic(2), make_symmetric(3)})),
          build_drinfeld_double(make_product({make_cyclic(2), make_symmetric(3)}))};
      for (const auto& h : targets) {
        TensorFactorization f1 = krs_decompose(h, fwd);
        TensorFactorization f2 = krs_decompose(h, rev);
        std::string why;
        if (!verify_factorization_system(f1, &why) || !verify_factorization_system(f2, &why)) {
          detail = "d: system verification failed for " + h->name + ": " + why;
          return false;
        }
        KrsMatch match = krs_match(f1, f2);
        if (!match.matched || !match.mixed_maps_bijective) {
          detail = "d: matching failed for " + h->name + ": " + match.note;
          return false;
        }
      }
      log << "; d: 3 factorizations permutation-unique";
    }

    // (e) endomorphism matrix calculus, exhaustively on kZ2 (x) kZ2 and kZ2 (x) kZ3
    {
      for (int second : {2, 3}) {
        auto t = tensor_hopf(build_group_algebra(make_cyclic(2)), build_group_algebra(make_cyclic(second)));
        FiniteGroup prod = make_product({make_cyclic(2), make_cyclic(second)});
        std::vector<HopfMap> endos;
        for (const auto& hom : enumerate_homs(prod, prod)) {
          Mat m(t->dim, t->dim, t->order);
          for (int x = 0; x < t->dim; ++x) m.set(hom.apply(x), x, Cyc::one(t->order));
          endos.push_back(make_map(t, t, m));
        }
        size_t expected = second == 2 ? 16 : 6;
        if (endos.size() != expected) {
          detail = "e: endomorphism count wrong";
          return false;
        }
        for (const auto& f : endos) {
          EndoMatrix m = endo_matrix_split(f);
          if (!endo_matrix_invariants(m) || !(endo_matrix_join(m, t).mat == f.mat)) {
            detail = "e: split/join bijection failed";
            return false;
          }
          if (!matrix_normality_check(m, t).agree) {
            detail = "e: normality characterizations disagree";
            return false;
          }
          for (const auto& g2 : endos) {
            EndoMatrix mc = endo_matrix_compose(endo_matrix_split(g2), m);
            if (!(endo_matrix_join(mc, t).mat == g2.mat * f.mat)) {
              detail = "e: composition law failed";
              return false;
            }
          }
        }
      }
      log << "; e: 16 + 6 endomorphisms, bijection/composition/normality agree";
    }

    // (f) |Hopfaut(kS3 (x) kS3)| = 72 = |A_2| * 2
    {
      auto ks3 = build_group_algebra(make_symmetric(3));
      TensorAutReport rep = hopfaut_tensor(ks3, build_group_algebra(make_symmetric(3)));
      if (rep.aut_indices.size() != 72 || rep.a_set_size != 36 ||
          rep.aut_indices.size() != rep.a_set_size * 2) {
        detail = "f: |Hopfaut| = " + std::to_string(rep.aut_indices.size()) +
                 ", |A| = " + std::to_string(rep.a_set_size);
        return false;
      }
      log << "; f: 72 = 36*2";
    }

    // (g) purely-non-abelian five-way equivalence
    {
      for (const auto& g : {make_symmetric(3), make_dihedral(8), make_cyclic(6),
                            make_product({make_cyclic(2), make_symmetric(3)})}) {
        PnaReport rep = purely_non_abelian_equivalences(g);
        if (!rep.agree) {
          detail = "g: five-way equivalence disagrees for " + g.name;
          return false;
        }
      }
      log << "; g: 4 groups agree";
    }

    detail = log.str();
    return true;
  });

  criterion(6, "Hopf axioms for kG, du(G), tensor_form(G), D(G) over the corpus up to order 12",
            [&](std::string& detail) {
    int verified = 0;
    for (const auto& g : preset_corpus(12)) {
      long ord = g.exponent();
      for (const auto& h : {build_group_algebra(g, ord), build_dual_group_algebra(g, ord),
                            build_tensor_form(g, ord), build_drinfeld_double(g, ord)}) {
        if (!verify_hopf_axioms(*h).all_ok()) {
          detail = "axioms fail for " + h->name;
          return false;
        }
        ++verified;
      }
    }
    detail = std::to_string(verified) + " algebras verified (largest dimension 144)";
    return true;
  });

  std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES PRESENT")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
