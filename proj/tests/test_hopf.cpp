#include "hopfkit/hopf.hpp"

#include <catch_amalgamated.hpp>

#include "corpus.hpp"

using namespace hopfkit;

TEST_CASE("group algebra and dual group algebra") {
  SECTION("kZ2 passes all axioms") {
    auto h = build_group_algebra(make_cyclic(2));
    CHECK(verify_hopf_axioms(*h).all_ok());
  }
  SECTION("du(S3) is commutative but not cocommutative") {
    auto d = build_dual_group_algebra(make_symmetric(3));
    CHECK(d->dim == 6);
    CHECK(verify_hopf_axioms(*d).all_ok());
    CHECK(d->is_commutative());
    CHECK_FALSE(d->is_cocommutative());
  }
  SECTION("dualize(kG) has the same structure tensors as du(G)") {
    FiniteGroup g = make_symmetric(3);
    auto kg = build_group_algebra(g);
    auto du = build_dual_group_algebra(g);
    auto dd = dualize(kg);
    CHECK(same_hopf(*dd, *du));
    CHECK(dd->origin.kind == HopfOrigin::Kind::DualGroupAlgebra);
  }
  SECTION("double dual is the identity on structure") {
    auto kg = build_group_algebra(make_symmetric(3));
    CHECK(same_hopf(*dualize(dualize(kg)), *kg));
  }
}

TEST_CASE("tensor product Hopf algebra") {
  auto k2 = build_group_algebra(make_cyclic(2));
  auto k3 = build_group_algebra(make_cyclic(3));
  auto t = tensor_hopf(k2, k3);
  SECTION("dimensions multiply and axioms hold") {
    CHECK(t->dim == 6);
    CHECK(verify_hopf_axioms(*t).all_ok());
  }
  SECTION("kZ2 (x) kZ3 equals k(Z2 x Z3) on the canonical basis bijection") {
    auto kp = build_group_algebra(make_product({make_cyclic(2), make_cyclic(3)}), 6);
    CHECK(same_hopf(*t, *kp));
  }
  SECTION("injections and projections are Hopf maps with the splitting laws") {
    for (size_t i = 0; i < 2; ++i) {
      HopfMap iota = tensor_injection(t, i);
      HopfMap pi = tensor_projection(t, i);
      CHECK(morphism_check(iota).is_hopf);
      CHECK(morphism_check(pi).is_hopf);
      CHECK(compose(pi, iota).mat == Mat::identity(t->origin.factors[i]->dim, t->order));
      CHECK(compose(tensor_projection(t, 1 - i), iota).mat ==
            trivial_map(t->origin.factors[i], t->origin.factors[1 - i]).mat);
    }
  }
}

TEST_CASE("axiom verification catches corruption") {
  auto h = build_group_algebra(make_symmetric(3));
  CHECK(verify_hopf_axioms(*h).all_ok());
  FinHopf broken = *h;
  broken.antipode = Mat::identity(h->dim, h->order);  // identity is not the inverse map here
  AxiomReport rep = verify_hopf_axioms(broken);
  CHECK_FALSE(rep.antipode_left);
  CHECK_FALSE(rep.all_ok());
}

TEST_CASE("convolution") {
  FiniteGroup s3 = make_symmetric(3);
  auto h = build_group_algebra(s3);
  SECTION("id * S is the convolution unit") {
    HopfMap s = make_map(h, h, h->antipode);
    HopfMap conv = convolution(identity_map(h), s);
    CHECK(conv.mat == trivial_map(h, h).mat);
  }
  SECTION("the convolution unit is neutral") {
    for (const auto& f : corpus::group_endo_corpus(h, s3)) {
      CHECK(convolution(trivial_map(h, h), f).mat == f.mat);
      CHECK(convolution(f, trivial_map(h, h)).mat == f.mat);
    }
  }
  SECTION("on kZ3, (x->x) * (x->x^2) is the convolution unit") {
    FiniteGroup z3 = make_cyclic(3);
    auto k3 = build_group_algebra(z3);
    auto endos = enumerate_homs(z3, z3);
    REQUIRE(endos.size() == 3);
    // endos sorted by image vector: [0,0,0], [0,1,2] (=id), [0,2,1] (=squaring)
    HopfMap f = corpus::group_algebra_map(k3, k3, endos[1]);
    HopfMap g = corpus::group_algebra_map(k3, k3, endos[2]);
    CHECK(convolution(f, g).mat == trivial_map(k3, k3).mat);
  }
}

TEST_CASE("commuting and cocommuting morphisms") {
  auto h = build_group_algebra(make_symmetric(3));
  auto k = build_group_algebra(make_cyclic(2));
  auto t = tensor_hopf(h, k);
  SECTION("tensor injections commute in both orders in the symmetric setting") {
    HopfMap ih = tensor_injection(t, 0);
    HopfMap ik = tensor_injection(t, 1);
    CHECK(comm_check(ih, ik));
    CHECK(comm_check(ik, ih));
    CHECK(cocomm_check(tensor_projection(t, 0), tensor_projection(t, 1)));
  }
  SECTION("id does not commute with itself on a non-abelian group algebra") {
    CHECK_FALSE(comm_check(identity_map(h), identity_map(h)));
  }
  SECTION("anything commutes and cocommutes with the trivial map") {
    CHECK(comm_check(identity_map(h), trivial_map(h, h)));
    CHECK(cocomm_check(identity_map(h), trivial_map(h, h)));
  }
}

TEST_CASE("convolution closure lemmas on the endomorphism corpus") {
  for (const auto& grp : {make_cyclic(6), make_symmetric(3), make_dihedral(8)}) {
    auto h = build_group_algebra(grp);
    auto endos = corpus::group_endo_corpus(h, grp);
    for (const auto& f : endos)
      for (const auto& g : endos) {
        // symmetry of multiplication-commuting (antipodes are bijective here)
        CHECK(comm_check(f, g) == comm_check(g, f));
        for (const auto& e : endos) {
          if (comm_check(f, g) && comm_check(f, e)) CHECK(comm_check(f, convolution(g, e)));
        }
        if (comm_check(f, g) && cocomm_check(f, g)) {
          HopfMap conv = convolution(f, g);
          MorphismFlags flags = morphism_check(conv);
          CHECK(flags.is_algebra);
          CHECK(flags.is_coalgebra);
        }
        if (comm_check(f, g) && cocomm_check(g, f))
          CHECK(convolution(f, g).mat == convolution(g, f).mat);
      }
  }
}

TEST_CASE("adjoint action") {
  FiniteGroup s3 = make_symmetric(3);
  auto h = build_group_algebra(s3);
  Mat ad = adjoint_action(*h);
  SECTION("on a group algebra the adjoint action is conjugation") {
    for (int g = 0; g < s3.n; ++g)
      for (int x = 0; x < s3.n; ++x) {
        const SVec& col = ad.col(g * s3.n + x);
        REQUIRE(col.size() == 1);
        CHECK(col[0].row == s3.conj(g, x));
        CHECK(col[0].val.is_one());
      }
  }
  SECTION("on an abelian group algebra it degenerates to eps (x) id") {
    FiniteGroup z6 = make_cyclic(6);
    auto k6 = build_group_algebra(z6);
    Mat ad6 = adjoint_action(*k6);
    for (int g = 0; g < 6; ++g)
      for (int x = 0; x < 6; ++x) {
        const SVec& col = ad6.col(g * 6 + x);
        REQUIRE(col.size() == 1);
        CHECK(col[0].row == x);
      }
  }
  SECTION("twisted commutativity characterization") {
    // mult . (ad (x) id) . (id (x) swap) . (Delta (x) id) == mult
    for (int i = 0; i < s3.n; ++i)
      for (int j = 0; j < s3.n; ++j) {
        SVec lhs;
        for (const auto& e : h->comult.col(i)) {
          int a = e.row / s3.n, b = e.row % s3.n;
          SVec adpart = ad.col(a * s3.n + j);
          for (const auto& p : adpart) {
            Cyc c = e.val * p.val;
            lhs = svec_axpy(lhs, c, h->mult_pair(p.row, b));
          }
        }
        CHECK(FinHopf::svec_equal(lhs, h->mult_pair(i, j)));
      }
  }
}

TEST_CASE("coadjoint coaction") {
  SECTION("on a group algebra: g -> 1 (x) g") {
    FiniteGroup s3 = make_symmetric(3);
    auto h = build_group_algebra(s3);
    Mat coad = coadjoint_coaction(*h);
    for (int g = 0; g < s3.n; ++g) {
      const SVec& col = coad.col(g);
      REQUIRE(col.size() == 1);
      CHECK(col[0].row == s3.identity * s3.n + g);
      CHECK(col[0].val.is_one());
    }
  }
  SECTION("dual to the adjoint action of the dual algebra") {
    FiniteGroup s3 = make_symmetric(3);
    auto h = build_group_algebra(s3);
    auto d = build_dual_group_algebra(s3);
    // coad_H = (ad_{H*})^T up to the fixed tensor index pairing
    Mat ad_dual = adjoint_action(*d);
    Mat coad = coadjoint_coaction(*h);
    CHECK(coad == ad_dual.transpose());
  }
}

TEST_CASE("invariant quotients are quotient coalgebras") {
  FiniteGroup s3 = make_symmetric(3);
  auto h = build_group_algebra(s3);
  for (const auto& f : corpus::group_endo_corpus(h, s3)) {
    for (Side side : {Side::Left, Side::Right}) {
      auto q = invariant_quotient(f, side);
      if (q.relations.cols() == 0) continue;
      // Delta descends: (proj (x) proj) Delta kills the relation subspace
      Mat descended = Mat::kron_apply(q.proj, q.proj, h->comult * q.relations);
      CHECK(descended.is_zero_mat());
    }
  }
}

TEST_CASE("normality agrees with the group-theory oracle") {
  for (const auto& grp : {make_symmetric(3), make_cyclic(6), make_dihedral(8)}) {
    auto kg = build_group_algebra(grp);
    auto dug = build_dual_group_algebra(grp);
    for (const auto& hom : enumerate_homs(grp, grp)) {
      bool oracle = corpus::oracle_group_normal_endo(grp, hom);
      HopfMap f = corpus::group_algebra_map(kg, kg, hom);
      CHECK(normality(f, NormalityKind::Normal) == oracle);
      // group algebras are cocommutative: conormality is automatic
      CHECK(normality(f, NormalityKind::Conormal));
      CHECK(normality(f, NormalityKind::Binormal) == oracle);
      // the dual endomorphism is conormal exactly when the hom oracle is normal
      HopfMap fd = corpus::dual_algebra_map(dug, dug, hom);
      CHECK(normality(fd, NormalityKind::Conormal) == oracle);
      CHECK(normality(fd, NormalityKind::Normal));  // du(G) commutative
    }
  }
}

TEST_CASE("specific normality values from the group oracle") {
  FiniteGroup s3 = make_symmetric(3);
  auto kg = build_group_algebra(s3);
  // conjugation by a transposition: an inner automorphism; S3 has trivial
  // center, so the group oracle classifies it as NOT normal
  int transposition = -1;
  for (int x = 0; x < s3.n; ++x)
    if (s3.element_order(x) == 2) {
      transposition = x;
      break;
    }
  REQUIRE(transposition >= 0);
  GroupHom conj_hom{s3, s3, {}};
  conj_hom.images.resize(static_cast<size_t>(s3.n));
  for (int x = 0; x < s3.n; ++x) conj_hom.images[static_cast<size_t>(x)] = s3.conj(transposition, x);
  REQUIRE(conj_hom.is_valid());
  CHECK_FALSE(corpus::oracle_group_normal_endo(s3, conj_hom));
  CHECK_FALSE(normality(corpus::group_algebra_map(kg, kg, conj_hom), NormalityKind::Normal));

  // the sign projection onto <transposition> has non-normal image
  GroupHom sign_proj{s3, s3, {}};
  sign_proj.images.resize(static_cast<size_t>(s3.n));
  for (int x = 0; x < s3.n; ++x)
    sign_proj.images[static_cast<size_t>(x)] = s3.element_order(x) == 2 ? transposition : s3.identity;
  REQUIRE(sign_proj.is_valid());
  CHECK_FALSE(corpus::oracle_group_normal_endo(s3, sign_proj));
  CHECK_FALSE(normality(corpus::group_algebra_map(kg, kg, sign_proj), NormalityKind::Normal));

  // every endomorphism of an abelian group algebra is binormal
  FiniteGroup z6 = make_cyclic(6);
  auto k6 = build_group_algebra(z6);
  for (const auto& hom : enumerate_homs(z6, z6))
    CHECK(normality(corpus::group_algebra_map(k6, k6, hom), NormalityKind::Binormal));
}

TEST_CASE("normality equivalence lemma: f normal iff (fS)*id is an algebra morphism") {
  for (const auto& grp : {make_symmetric(3), make_cyclic(4), make_dihedral(8)}) {
    auto kg = build_group_algebra(grp);
    auto dug = build_dual_group_algebra(grp);
    HopfMap s_k = make_map(kg, kg, kg->antipode);
    HopfMap s_d = make_map(dug, dug, dug->antipode);
    for (const auto& hom : enumerate_homs(grp, grp)) {
      HopfMap f = corpus::group_algebra_map(kg, kg, hom);
      HopfMap fs_conv_id = convolution(compose(f, s_k), identity_map(kg));
      CHECK(normality(f, NormalityKind::Normal) == morphism_check(fs_conv_id).is_algebra);
      HopfMap fd = corpus::dual_algebra_map(dug, dug, hom);
      HopfMap fds_conv_id = convolution(compose(fd, s_d), identity_map(dug));
      CHECK(normality(fd, NormalityKind::Normal) == morphism_check(fds_conv_id).is_algebra);
    }
  }
}

TEST_CASE("coinvariants") {
  FiniteGroup s3 = make_symmetric(3);
  auto h = build_group_algebra(s3);
  SECTION("of the trivial map: everything") {
    auto sb = coinvariants(trivial_map(h, h), Side::Left);
    CHECK(sb.basis.cols() == 6);
  }
  SECTION("of the identity: the unit line") {
    auto sb = coinvariants(identity_map(h), Side::Left);
    REQUIRE(sb.basis.cols() == 1);
    CHECK(FinHopf::svec_equal(sb.basis.col(0), h->unit_vec()));
  }
  SECTION("of the sign projection: the alternating subgroup algebra") {
    int transposition = -1;
    for (int x = 0; x < s3.n; ++x)
      if (s3.element_order(x) == 2) {
        transposition = x;
        break;
      }
    GroupHom sign_proj{s3, s3, {}};
    sign_proj.images.resize(static_cast<size_t>(s3.n));
    for (int x = 0; x < s3.n; ++x)
      sign_proj.images[static_cast<size_t>(x)] = s3.element_order(x) == 2 ? transposition : s3.identity;
    auto sb = coinvariants(corpus::group_algebra_map(h, h, sign_proj), Side::Left);
    CHECK(sb.basis.cols() == 3);
    // the span is exactly the even permutations
    for (int c = 0; c < sb.basis.cols(); ++c)
      for (const auto& e : sb.basis.col(c)) CHECK(s3.element_order(e.row) != 2);
    CHECK(is_unital_subalgebra(*h, sb.basis));
    // and it carries an induced Hopf structure
    auto sub = subhopf_from_basis(h, sb.basis, "kA3");
    CHECK(sub->dim == 3);
    CHECK(verify_hopf_axioms(*sub).all_ok());
  }
  SECTION("trivial coinvariants iff injective, on the endomorphism corpus") {
    for (const auto& grp : {make_symmetric(3), make_cyclic(6)}) {
      auto kg = build_group_algebra(grp);
      for (const auto& f : corpus::group_endo_corpus(kg, grp)) {
        bool injective = f.mat.rank() == kg->dim;
        CHECK((coinvariants(f, Side::Left).basis.cols() == 1) == injective);
        CHECK((coinvariants(f, Side::Right).basis.cols() == 1) == injective);
      }
    }
  }
}

TEST_CASE("invariant quotients") {
  FiniteGroup s3 = make_symmetric(3);
  auto h = build_group_algebra(s3);
  SECTION("of the trivial map: everything survives") {
    auto q = invariant_quotient(trivial_map(h, h), Side::Left);
    CHECK(q.dim == 6);
    CHECK(q.relations.cols() == 0);
  }
  SECTION("of the identity: one dimension survives") {
    auto q = invariant_quotient(identity_map(h), Side::Left);
    CHECK(q.dim == 1);
    CHECK(q.proj * q.section == Mat::identity(1, q.proj.order()));
  }
  SECTION("projection and section compose to the identity on the quotient") {
    for (const auto& f : corpus::group_endo_corpus(h, s3)) {
      auto q = invariant_quotient(f, Side::Left);
      CHECK(q.proj * q.section == Mat::identity(q.dim, q.proj.order()));
      // relations die in the quotient
      if (q.relations.cols() > 0) CHECK((q.proj * q.relations).is_zero_mat());
    }
  }
}

TEST_CASE("grouplikes") {
  SECTION("kS3 has six grouplikes") {
    auto h = build_group_algebra(make_symmetric(3));
    auto gl = grouplikes(*h);
    REQUIRE(gl.supported);
    CHECK(gl.vectors.size() == 6);
  }
  SECTION("du(S3) has two grouplikes") {
    auto d = build_dual_group_algebra(make_symmetric(3));
    auto gl = grouplikes(*d);
    REQUIRE(gl.supported);
    CHECK(gl.vectors.size() == 2);
  }
  SECTION("tensor products multiply grouplike counts") {
    auto t = tensor_hopf(build_group_algebra(make_cyclic(2)), build_dual_group_algebra(make_symmetric(3)));
    auto gl = grouplikes(*t);
    REQUIRE(gl.supported);
    CHECK(gl.vectors.size() == 4);
  }
  SECTION("generic origin is reported unsupported") {
    auto h = build_group_algebra(make_cyclic(2));
    FinHopf generic = *h;
    generic.origin = {HopfOrigin::Kind::Generic, std::nullopt, {}};
    CHECK_FALSE(grouplikes(generic).supported);
  }
}

TEST_CASE("antipodes are bijective on all constructed algebras") {
  for (const auto& grp : {make_cyclic(6), make_symmetric(3), make_dihedral(8)}) {
    auto kg = build_group_algebra(grp);
    auto dug = build_dual_group_algebra(grp);
    CHECK(corpus::is_bijective_mat(kg->antipode));
    CHECK(corpus::is_bijective_mat(dug->antipode));
    // bialgebra morphisms intertwine antipodes
    for (const auto& f : corpus::group_endo_corpus(kg, grp)) CHECK(antipode_compatible(f));
  }
}
