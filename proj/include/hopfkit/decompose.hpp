#pragma once

// Tensor-factorization theory: Radford biproduct data attached to an
// endomorphism, Fitting decompositions for (bi)normal endomorphisms,
// Krull-Remak-Schmidt factorization with uniqueness matching, and the matrix
// calculus for endomorphisms and automorphisms of tensor products.

#include "hopfkit/hopf.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hopfkit {

// least n >= 1 with rank(f^n) = rank(f^(2n)); capped at dim (internal error beyond)
inline int fitting_power(const HopfMap& f) {
  if (f.dom->dim != f.cod->dim) throw std::invalid_argument("fitting_power: endomorphism required");
  Mat power = f.mat;
  for (int n = 1; n <= f.dom->dim + 1; ++n) {
    Mat doubled = power * power;
    if (power.rank() == doubled.rank()) return n;
    power = power * f.mat;
  }
  throw std::logic_error("fitting_power: no stabilization within dim (impossible)");
}

struct NilpotencyResult {
  bool nilpotent = false;
  int witness = 0;  // least n with f^n = eta.eps when nilpotent
};

// composition powers tested against eta.eps, up to dim+1
inline NilpotencyResult is_nilpotent_endo(const HopfMap& f) {
  if (f.dom->dim != f.cod->dim) throw std::invalid_argument("is_nilpotent_endo: endomorphism required");
  Mat target = trivial_map(f.dom, f.cod).mat;
  Mat power = f.mat;
  for (int n = 1; n <= f.dom->dim + 1; ++n) {
    if (power == target) return {true, n};
    power = power * f.mat;
  }
  return {false, 0};
}

struct FittingResult {
  int n = 1;                 // stabilization exponent
  HopfMap pi;                // idempotent Hopf endomorphism projecting onto Img(f^n)
  Mat image_basis;           // canonical basis of Img(pi)
  Mat coinv_basis;           // canonical basis of the left pi-coinvariants
  HopfMap p_map;             // (pi . S) * id
  Mat pi_corestriction;      // H -> Img coordinates (right inverse of image_basis)
  Mat coinv_corestriction;   // H -> Coinv coordinates of p
  Mat forward;               // H -> Img (x) Coinv
  Mat backward;              // Img (x) Coinv -> H
  bool plain_tensor = false; // backward is a Hopf isomorphism from the plain tensor product
};

namespace detail {

inline Mat solve_or_logic_error(const Mat& a, const Mat& rhs, const char* what) {
  auto x = a.solve(rhs);
  if (!x) throw std::logic_error(std::string("radford_decompose: unsolvable system: ") + what);
  return *x;
}

}  // namespace detail

inline FittingResult radford_decompose(const HopfMap& f) {
  const HopfPtr& hp = f.dom;
  const FinHopf& h = *hp;
  if (f.dom->dim != f.cod->dim || !same_hopf(*f.dom, *f.cod))
    throw std::invalid_argument("radford_decompose: endomorphism required");
  FittingResult r;
  r.n = fitting_power(f);
  Mat power = f.mat;
  for (int i = 1; i < r.n; ++i) power = power * f.mat;
  Mat b = power.image();
  Mat e = detail::solve_or_logic_error(b, power, "corestriction");
  Mat t = e * b;
  Mat tinv = t.inverse();  // stabilization makes t invertible
  r.pi_corestriction = tinv * e;
  Mat pi_mat = b * r.pi_corestriction;
  if (!(pi_mat * pi_mat == pi_mat)) throw std::logic_error("radford_decompose: projector is not idempotent");
  r.pi = make_map(hp, hp, pi_mat);
  if (!morphism_check(r.pi).is_hopf) throw std::logic_error("radford_decompose: projector is not a Hopf map");
  r.image_basis = b;
  HopfMap s = make_map(hp, hp, h.antipode);
  r.p_map = convolution(compose(r.pi, s), identity_map(hp));
  r.coinv_basis = coinvariants(r.pi, Side::Left).basis;
  if (!(r.p_map.mat.image() == r.coinv_basis))
    throw std::logic_error("radford_decompose: Img(p) differs from the left pi-coinvariants");
  r.coinv_corestriction = detail::solve_or_logic_error(r.coinv_basis, r.p_map.mat, "p corestriction");
  r.forward = comult_compose_pair(h, r.pi_corestriction, r.coinv_corestriction);
  r.backward = mult_compose_pair(h, r.image_basis, r.coinv_basis);
  int rs = r.image_basis.cols() * r.coinv_basis.cols();
  if (!(r.forward * r.backward == Mat::identity(rs, r.forward.order())) ||
      !(r.backward * r.forward == Mat::identity(h.dim, r.forward.order())))
    throw std::logic_error("radford_decompose: decomposition maps are not mutually inverse");
  // plain tensor iff both factors carry induced Hopf structures making
  // the recombination a Hopf isomorphism
  r.plain_tensor = false;
  try {
    HopfPtr img = subhopf_from_basis(hp, r.image_basis, "img");
    HopfPtr coi = subhopf_from_basis(hp, r.coinv_basis, "coinv");
    HopfPtr tp = tensor_hopf(img, coi);
    HopfMap bw = make_map(tp, hp, r.backward);
    r.plain_tensor = morphism_check(bw).is_hopf;
  } catch (const NotClosedError&) {
    r.plain_tensor = false;
  }
  return r;
}

// -- tensor factorizations -----------------------------------------------------

struct TensorFactorization {
  HopfPtr ambient;
  std::vector<HopfPtr> factors;
  std::vector<HopfMap> injections;   // factor -> ambient
  std::vector<HopfMap> projections;  // ambient -> factor
  bool certified_indecomposable = false;
  bool complete = true;
  std::string notes;
};

// checks the full system of splitting identities and the recombination maps
inline bool verify_factorization_system(const TensorFactorization& tf, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const size_t k = tf.factors.size();
  const FinHopf& h = *tf.ambient;
  for (size_t i = 0; i < k; ++i) {
    if (!morphism_check(tf.injections[i]).is_hopf) return fail("injection " + std::to_string(i) + " not Hopf");
    if (!morphism_check(tf.projections[i]).is_hopf) return fail("projection " + std::to_string(i) + " not Hopf");
    for (size_t j = 0; j < k; ++j) {
      Mat comp = tf.projections[i].mat * tf.injections[j].mat;
      Mat expect = i == j ? Mat::identity(tf.factors[i]->dim, h.order)
                          : (tf.factors[i]->unit * tf.factors[j]->counit).lifted_to(h.order);
      if (!(comp == expect)) return fail("pi_i iota_j law fails");
    }
  }
  for (size_t i = 0; i < k; ++i)
    for (size_t j = i + 1; j < k; ++j) {
      if (!comm_check(tf.injections[i], tf.injections[j]) || !comm_check(tf.injections[j], tf.injections[i]))
        return fail("injections do not commute");
      if (!cocomm_check(tf.projections[i], tf.projections[j]) ||
          !cocomm_check(tf.projections[j], tf.projections[i]))
        return fail("projections do not cocommute");
    }
  // iota_1 pi_1 * ... * iota_k pi_k = id
  HopfMap conv = trivial_map(tf.ambient, tf.ambient);
  for (size_t i = 0; i < k; ++i) conv = convolution(conv, compose(tf.injections[i], tf.projections[i]));
  if (!(conv.mat == Mat::identity(h.dim, h.order))) return fail("convolution identity fails");
  // recombination isomorphisms
  std::vector<Mat> inj_mats, proj_mats;
  for (size_t i = 0; i < k; ++i) {
    inj_mats.push_back(tf.injections[i].mat);
    proj_mats.push_back(tf.projections[i].mat);
  }
  Mat up = mult_fold(h, inj_mats);
  Mat down = comult_fold(h, proj_mats);
  if (!(up * down == Mat::identity(h.dim, h.order))) return fail("recombination is not inverse to splitting");
  if (!(down * up == Mat::identity(up.cols(), h.order))) return fail("splitting is not inverse to recombination");
  return true;
}

struct FittingDecomposition {
  FittingResult radford;
  std::optional<TensorFactorization> tensor;  // present in the binormal case
  bool algebra_iso_verified = false;
  bool coalgebra_iso_verified = false;
};

inline FittingDecomposition fitting_decompose(const HopfMap& f, NormalityKind require) {
  if (!normality(f, require)) throw std::invalid_argument("fitting_decompose: normality requirement unmet");
  FittingDecomposition out;
  out.radford = radford_decompose(f);
  const HopfPtr& hp = f.dom;
  const FinHopf& h = *hp;
  const Mat& b = out.radford.image_basis;
  const Mat& c = out.radford.coinv_basis;

  // algebra-level verification: both spans closed under products, inclusions
  // commute, so the recombination is an algebra isomorphism
  bool b_mult_closed = b.solve(mult_compose_pair(h, b, b)).has_value();
  bool c_mult_closed = c.solve(mult_compose_pair(h, c, c)).has_value();
  bool images_commute = true;
  for (int i = 0; i < b.cols() && images_commute; ++i)
    for (int j = 0; j < c.cols(); ++j)
      if (!FinHopf::svec_equal(h.product(b.col(i), c.col(j)), h.product(c.col(j), b.col(i)))) {
        images_commute = false;
        break;
      }
  out.algebra_iso_verified = b_mult_closed && c_mult_closed && images_commute;

  // coalgebra-level verification: spans closed under comultiplication and the
  // splitting map is a coalgebra morphism onto the tensor coalgebra
  bool b_comult_closed = Mat::kron(b, b).solve(h.comult * b).has_value();
  bool c_comult_closed = Mat::kron(c, c).solve(h.comult * c).has_value();
  out.coalgebra_iso_verified = b_comult_closed && c_comult_closed;

  if (require == NormalityKind::Normal && !out.algebra_iso_verified)
    throw std::logic_error("fitting_decompose: normal endomorphism without algebra splitting");
  if (require == NormalityKind::Conormal && !out.coalgebra_iso_verified)
    throw std::logic_error("fitting_decompose: conormal endomorphism without coalgebra splitting");

  if (require == NormalityKind::Binormal) {
    HopfPtr img = subhopf_from_basis(hp, b, "img");
    HopfPtr coi = subhopf_from_basis(hp, c, "coinv");
    TensorFactorization tf;
    tf.ambient = hp;
    tf.factors = {img, coi};
    tf.injections = {make_map(img, hp, b), make_map(coi, hp, c)};
    tf.projections = {make_map(hp, img, out.radford.pi_corestriction),
                      make_map(hp, coi, out.radford.coinv_corestriction)};
    std::string why;
    if (!verify_factorization_system(tf, &why))
      throw std::logic_error("fitting_decompose: factorization system failed: " + why);
    out.tensor = std::move(tf);
    out.algebra_iso_verified = out.coalgebra_iso_verified = true;
  }
  return out;
}

// -- Krull-Remak-Schmidt --------------------------------------------------------

struct KrsOptions {
  bool reverse_order = false;             // reverse the factor recursion order
  std::vector<HopfMap> generator_endos;   // for the generic semi-decision
  int monoid_cap = 64;
};

namespace detail {

struct SplitPiece {
  HopfPtr factor;
  Mat injection;   // factor -> parent
  Mat projection;  // parent -> factor
};

// one level of splitting for an origin-tagged algebra; empty when terminal
inline std::vector<SplitPiece> split_once(const HopfPtr& f, const KrsOptions& opt);

inline std::vector<SplitPiece> split_group_algebra(const HopfPtr& f, const FiniteGroup& g, bool dual,
                                                   const KrsOptions& opt) {
  RemakDecomposition rd = remak_decompose(g);
  if (rd.factors.size() <= 1) return {};
  std::vector<size_t> order_idx(rd.factors.size());
  for (size_t i = 0; i < order_idx.size(); ++i) order_idx[i] = opt.reverse_order ? order_idx.size() - 1 - i : i;
  std::vector<SplitPiece> out;
  for (size_t oi = 0; oi < order_idx.size(); ++oi) {
    size_t i = order_idx[oi];
    const RemakFactor& fac = rd.factors[i];
    HopfPtr piece = dual ? build_dual_group_algebra(fac.group, f->order) : build_group_algebra(fac.group, f->order);
    Mat inj(g.n, fac.group.n, f->order);
    Mat proj(fac.group.n, g.n, f->order);
    Cyc one = Cyc::one(f->order);
    if (!dual) {
      for (int a = 0; a < fac.group.n; ++a) inj.set(fac.embed[static_cast<size_t>(a)], a, one);
      for (int x = 0; x < g.n; ++x) proj.set(rd.proj[i][static_cast<size_t>(x)], x, one);
    } else {
      // dual maps: inj = (group proj)^T, proj = (group inj with trivial complement)^T
      for (int x = 0; x < g.n; ++x) inj.set(x, rd.proj[i][static_cast<size_t>(x)], one);
      for (int x = 0; x < g.n; ++x) {
        bool others_trivial = true;
        for (size_t j = 0; j < rd.factors.size() && others_trivial; ++j)
          if (j != i && rd.proj[j][static_cast<size_t>(x)] != rd.factors[j].group.identity) others_trivial = false;
        if (others_trivial) proj.set(rd.proj[i][static_cast<size_t>(x)], x, one);
      }
    }
    out.push_back({std::move(piece), std::move(inj), std::move(proj)});
  }
  return out;
}

inline std::vector<SplitPiece> split_double(const HopfPtr& f, const FiniteGroup& g, const KrsOptions& opt) {
  RemakDecomposition rd = remak_decompose(g);
  const int n = g.n;
  Cyc one = Cyc::one(f->order);
  if (rd.factors.size() > 1) {
    std::vector<size_t> order_idx(rd.factors.size());
    for (size_t i = 0; i < order_idx.size(); ++i) order_idx[i] = opt.reverse_order ? order_idx.size() - 1 - i : i;
    std::vector<SplitPiece> out;
    for (size_t oi = 0; oi < order_idx.size(); ++oi) {
      size_t i = order_idx[oi];
      const RemakFactor& fac = rd.factors[i];
      HopfPtr piece = build_drinfeld_double(fac.group, f->order);
      const int m = fac.group.n;
      Mat inj(n * n, m * m, f->order);
      Mat proj(m * m, n * n, f->order);
      // iota(delta_a # c) = sum_{g: proj_i(g)=a} delta_g # embed_i(c)
      for (int a = 0; a < m; ++a)
        for (int c = 0; c < m; ++c) {
          int hcomp = fac.embed[static_cast<size_t>(c)];
          for (int x = 0; x < n; ++x)
            if (rd.proj[i][static_cast<size_t>(x)] == a) inj.set(x * n + hcomp, a * m + c, one);
        }
      // pi(delta_x # y) = [other components of x trivial] delta_{proj_i x} # proj_i y
      for (int x = 0; x < n; ++x) {
        bool others_trivial = true;
        for (size_t j = 0; j < rd.factors.size() && others_trivial; ++j)
          if (j != i && rd.proj[j][static_cast<size_t>(x)] != rd.factors[j].group.identity) others_trivial = false;
        if (!others_trivial) continue;
        for (int y = 0; y < n; ++y)
          proj.set(rd.proj[i][static_cast<size_t>(x)] * m + rd.proj[i][static_cast<size_t>(y)], x * n + y, one);
      }
      out.push_back({std::move(piece), std::move(inj), std::move(proj)});
    }
    return out;
  }
  if (g.is_abelian() && g.n > 1) {
    // D(A) for abelian A is the plain tensor du(A) (x) kA
    HopfPtr dual = build_dual_group_algebra(g, f->order);
    HopfPtr ka = build_group_algebra(g, f->order);
    Mat inj_du(n * n, n, f->order), proj_du(n, n * n, f->order);
    Mat inj_k(n * n, n, f->order), proj_k(n, n * n, f->order);
    // iota_du(delta_a) = delta_a # 1 ; pi_du(delta_a # h) = delta_a
    for (int a = 0; a < n; ++a) {
      inj_du.set(a * n + g.identity, a, one);
      for (int h2 = 0; h2 < n; ++h2) proj_du.set(a, a * n + h2, one);
    }
    // iota_k(c) = sum_g delta_g # c ; pi_k(delta_g # h) = [g = 1] h
    for (int c = 0; c < n; ++c)
      for (int gg = 0; gg < n; ++gg) inj_k.set(gg * n + c, c, one);
    for (int h2 = 0; h2 < n; ++h2) proj_k.set(h2, g.identity * n + h2, one);
    std::vector<SplitPiece> out;
    SplitPiece du_piece{dual, std::move(inj_du), std::move(proj_du)};
    SplitPiece k_piece{ka, std::move(inj_k), std::move(proj_k)};
    if (opt.reverse_order) {
      out.push_back(std::move(k_piece));
      out.push_back(std::move(du_piece));
    } else {
      out.push_back(std::move(du_piece));
      out.push_back(std::move(k_piece));
    }
    return out;
  }
  return {};
}

inline std::vector<SplitPiece> split_once(const HopfPtr& f, const KrsOptions& opt) {
  switch (f->origin.kind) {
    case HopfOrigin::Kind::GroupAlgebra:
      return split_group_algebra(f, *f->origin.group, /*dual=*/false, opt);
    case HopfOrigin::Kind::DualGroupAlgebra:
      return split_group_algebra(f, *f->origin.group, /*dual=*/true, opt);
    case HopfOrigin::Kind::Double:
      return split_double(f, *f->origin.group, opt);
    case HopfOrigin::Kind::TensorProduct: {
      std::vector<SplitPiece> out;
      auto t = f;
      size_t k = f->origin.factors.size();
      for (size_t raw = 0; raw < k; ++raw) {
        size_t i = opt.reverse_order ? k - 1 - raw : raw;
        out.push_back({f->origin.factors[i], tensor_injection(t, i).mat, tensor_projection(t, i).mat});
      }
      return out;
    }
    case HopfOrigin::Kind::Generic:
      return {};
  }
  return {};
}

inline bool factor_certified_indecomposable(const HopfPtr& f, std::string& note) {
  switch (f->origin.kind) {
    case HopfOrigin::Kind::GroupAlgebra:
    case HopfOrigin::Kind::DualGroupAlgebra: {
      bool ind = remak_decompose(*f->origin.group).factors.size() <= 1;
      if (ind) note = "group-level: directly indecomposable group";
      return ind;
    }
    case HopfOrigin::Kind::Double: {
      RemakDecomposition rd = remak_decompose(*f->origin.group);
      bool ind = rd.factors.size() == 1 && !f->origin.group->is_abelian();
      if (ind) note = "group-level: indecomposable purely non-abelian group";
      return ind;
    }
    default:
      return false;
  }
}

}  // namespace detail

// Complete factorization into tensor-indecomposable factors for origin-tagged
// algebras.  For Generic origin this is a semi-decision over idempotents found
// in the monoid generated by the supplied endomorphisms.
inline TensorFactorization krs_decompose(const HopfPtr& h, const KrsOptions& opt = {}) {
  TensorFactorization tf;
  tf.ambient = h;
  tf.factors = {h};
  tf.injections = {identity_map(h)};
  tf.projections = {identity_map(h)};

  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t i = 0; i < tf.factors.size(); ++i) {
      auto pieces = detail::split_once(tf.factors[i], opt);
      if (pieces.empty()) continue;
      std::vector<HopfPtr> factors;
      std::vector<HopfMap> injections, projections;
      for (size_t j = 0; j < tf.factors.size(); ++j) {
        if (j != i) {
          factors.push_back(tf.factors[j]);
          injections.push_back(tf.injections[j]);
          projections.push_back(tf.projections[j]);
          continue;
        }
        for (auto& piece : pieces) {
          factors.push_back(piece.factor);
          injections.push_back(make_map(piece.factor, h, tf.injections[i].mat * piece.injection));
          projections.push_back(make_map(h, piece.factor, piece.projection * tf.projections[i].mat));
        }
      }
      tf.factors = std::move(factors);
      tf.injections = std::move(injections);
      tf.projections = std::move(projections);
      progress = true;
      break;
    }
  }

  // drop dimension-1 factors (they are the trivial tensor unit), unless the
  // whole algebra is trivial
  if (h->dim > 1) {
    std::vector<HopfPtr> factors;
    std::vector<HopfMap> injections, projections;
    for (size_t i = 0; i < tf.factors.size(); ++i) {
      if (tf.factors[i]->dim == 1) continue;
      factors.push_back(tf.factors[i]);
      injections.push_back(tf.injections[i]);
      projections.push_back(tf.projections[i]);
    }
    tf.factors = std::move(factors);
    tf.injections = std::move(injections);
    tf.projections = std::move(projections);
  }

  tf.certified_indecomposable = true;
  tf.complete = true;
  for (const auto& f : tf.factors) {
    std::string note;
    if (!detail::factor_certified_indecomposable(f, note)) {
      tf.certified_indecomposable = false;
      if (f->origin.kind == HopfOrigin::Kind::Generic) {
        tf.complete = false;
        tf.notes = "indecomposable relative to supplied generators";
      }
    }
  }

  // generic semi-decision: look for a proper binormal idempotent among the
  // composition/convolution monoid of the supplied generators
  if (h->origin.kind == HopfOrigin::Kind::Generic && !opt.generator_endos.empty()) {
    std::vector<Mat> pool;
    for (const auto& g : opt.generator_endos) pool.push_back(g.mat);
    size_t frontier_start = 0;
    while (pool.size() < static_cast<size_t>(opt.monoid_cap)) {
      size_t end = pool.size();
      bool grew = false;
      for (size_t i = frontier_start; i < end && pool.size() < static_cast<size_t>(opt.monoid_cap); ++i)
        for (size_t j = 0; j < end && pool.size() < static_cast<size_t>(opt.monoid_cap); ++j) {
          for (Mat cand : {pool[i] * pool[j],
                           convolution(make_map(h, h, pool[i]), make_map(h, h, pool[j])).mat}) {
            bool known = false;
            for (const auto& m : pool)
              if (m == cand) {
                known = true;
                break;
              }
            if (!known) {
              pool.push_back(cand);
              grew = true;
            }
          }
        }
      frontier_start = end;
      if (!grew) break;
    }
    for (const auto& m : pool) {
      if (!(m * m == m)) continue;
      if (m == Mat::identity(h->dim, h->order)) continue;
      HopfMap cand = make_map(h, h, m);
      if (cand.mat == trivial_map(h, h).mat) continue;
      if (!morphism_check(cand).is_hopf) continue;
      if (!normality(cand, NormalityKind::Binormal)) continue;
      FittingDecomposition fd = fitting_decompose(cand, NormalityKind::Binormal);
      tf = *fd.tensor;
      tf.complete = false;
      tf.notes = "split by a binormal idempotent from the supplied generators";
      break;
    }
  }
  return tf;
}

// factorization of kG induced by an internal direct decomposition of G
inline TensorFactorization factorization_from_group_split(const HopfPtr& kg, const std::vector<Subset>& masks) {
  const FiniteGroup& g = *kg->origin.group;
  TensorFactorization tf;
  tf.ambient = kg;
  std::vector<SubgroupView> views;
  for (Subset m : masks) views.push_back(subgroup_as_group(g, m));
  // componentwise projections from the unique product decomposition
  std::vector<std::vector<int>> proj(masks.size(), std::vector<int>(static_cast<size_t>(g.n), -1));
  std::vector<size_t> sizes;
  size_t total = 1;
  for (const auto& v : views) {
    sizes.push_back(static_cast<size_t>(v.group.n));
    total *= static_cast<size_t>(v.group.n);
  }
  if (total != static_cast<size_t>(g.n))
    throw std::invalid_argument("factorization_from_group_split: sizes do not multiply to |G|");
  for (size_t code = 0; code < total; ++code) {
    size_t rest = code;
    std::vector<int> comps(masks.size());
    for (size_t i = masks.size(); i-- > 0;) {
      comps[i] = static_cast<int>(rest % sizes[i]);
      rest /= sizes[i];
    }
    int prod = g.identity;
    for (size_t i = 0; i < masks.size(); ++i) prod = g.mul(prod, views[i].embed[static_cast<size_t>(comps[i])]);
    for (size_t i = 0; i < masks.size(); ++i) {
      if (proj[i][static_cast<size_t>(prod)] != -1)
        throw std::invalid_argument("factorization_from_group_split: not a direct decomposition");
      proj[i][static_cast<size_t>(prod)] = comps[i];
    }
  }
  Cyc one = Cyc::one(kg->order);
  for (size_t i = 0; i < masks.size(); ++i) {
    HopfPtr piece = build_group_algebra(views[i].group, kg->order);
    Mat inj(g.n, views[i].group.n, kg->order);
    Mat prj(views[i].group.n, g.n, kg->order);
    for (int a = 0; a < views[i].group.n; ++a) inj.set(views[i].embed[static_cast<size_t>(a)], a, one);
    for (int x = 0; x < g.n; ++x) prj.set(proj[i][static_cast<size_t>(x)], x, one);
    tf.factors.push_back(piece);
    tf.injections.push_back(make_map(piece, kg, std::move(inj)));
    tf.projections.push_back(make_map(kg, piece, std::move(prj)));
  }
  return tf;
}

// -- factor isomorphism testing and KRS matching --------------------------------

// Hopf isomorphism between two origin-tagged indecomposable factors, if any
inline std::optional<HopfMap> find_factor_isomorphism(const HopfPtr& a, const HopfPtr& b, int guard = 24) {
  using K = HopfOrigin::Kind;
  if (a->dim != b->dim) return std::nullopt;
  auto verify = [&](Mat m) -> std::optional<HopfMap> {
    HopfMap f = make_map(a, b, std::move(m));
    if (f.mat.rank() == a->dim && morphism_check(f).is_hopf) return f;
    return std::nullopt;
  };
  K ka = a->origin.kind, kb = b->origin.kind;
  if ((ka == K::GroupAlgebra && kb == K::GroupAlgebra) ||
      (ka == K::DualGroupAlgebra && kb == K::DualGroupAlgebra)) {
    const FiniteGroup& ga = *a->origin.group;
    const FiniteGroup& gb = *b->origin.group;
    bool dual = ka == K::DualGroupAlgebra;
    auto iso = dual ? find_isomorphism(gb, ga, guard) : find_isomorphism(ga, gb, guard);
    if (!iso) return std::nullopt;
    Mat m(b->dim, a->dim, lcm_long(a->order, b->order));
    Cyc one = Cyc::one(m.order());
    if (!dual) {
      for (int x = 0; x < ga.n; ++x) m.set(iso->apply(x), x, one);
    } else {
      for (int x = 0; x < gb.n; ++x) m.set(x, iso->apply(x), one);
    }
    return verify(std::move(m));
  }
  if (ka == K::Double && kb == K::Double) {
    const FiniteGroup& ga = *a->origin.group;
    const FiniteGroup& gb = *b->origin.group;
    auto iso = find_isomorphism(ga, gb, guard);
    if (!iso) return std::nullopt;
    Mat m(b->dim, a->dim, lcm_long(a->order, b->order));
    Cyc one = Cyc::one(m.order());
    for (int x = 0; x < ga.n; ++x)
      for (int y = 0; y < ga.n; ++y) m.set(iso->apply(x) * gb.n + iso->apply(y), x * ga.n + y, one);
    return verify(std::move(m));
  }
  // mixed group algebra vs dual: possible only in the abelian case, through characters
  if ((ka == K::GroupAlgebra && kb == K::DualGroupAlgebra) ||
      (ka == K::DualGroupAlgebra && kb == K::GroupAlgebra)) {
    const HopfPtr& grp_side = ka == K::GroupAlgebra ? a : b;
    const HopfPtr& dual_side = ka == K::GroupAlgebra ? b : a;
    const FiniteGroup& n = *grp_side->origin.group;   // kN
    const FiniteGroup& m_ = *dual_side->origin.group; // du(M)
    if (!n.is_abelian() || !m_.is_abelian()) return std::nullopt;
    CharacterGroup mhat = character_group(m_);
    auto iso = find_isomorphism(n, mhat.group, guard);
    if (!iso) return std::nullopt;
    long ord = lcm_long(lcm_long(a->order, b->order), static_cast<long>(mhat.chars.empty() ? 1 : mhat.chars[0].e));
    // kN -> du(M): x -> sum_m chi_x(m) delta_m
    Mat m(m_.n, n.n, ord);
    for (int x = 0; x < n.n; ++x) {
      const Character& chi = mhat.chars[static_cast<size_t>(iso->apply(x))];
      for (int y = 0; y < m_.n; ++y)
        m.set(y, x, Cyc::root_of_unity(chi.e, chi.vals[static_cast<size_t>(y)]).lifted_to(ord));
    }
    if (ka == K::GroupAlgebra) return verify(std::move(m));
    // want du(M) -> kN: invert
    Mat inv = m.inverse();
    return verify(std::move(inv));
  }
  if (same_hopf(*a, *b)) return verify(Mat::identity(a->dim, a->order));
  return std::nullopt;
}

struct KrsMatch {
  bool matched = false;
  std::vector<size_t> permutation;  // factor i of F1 matches factor permutation[i] of F2
  std::vector<HopfMap> isomorphisms;
  bool mixed_maps_bijective = false;  // every prefix recombination map in both fold directions
  std::string note;
};

inline KrsMatch krs_match(const TensorFactorization& f1, const TensorFactorization& f2, int guard = 24) {
  KrsMatch out;
  if (!same_hopf(*f1.ambient, *f2.ambient)) {
    out.note = "different ambient algebras";
    return out;
  }
  const size_t k = f1.factors.size();
  if (k != f2.factors.size()) {
    out.note = "factor counts differ (would falsify Krull-Remak-Schmidt)";
    return out;
  }
  const FinHopf& h = *f1.ambient;
  auto mixed_maps_ok = [&](const std::vector<size_t>& perm) {
    for (size_t m = 0; m <= k; ++m) {
      std::vector<Mat> ups, downs;
      for (size_t i = 0; i < k; ++i) {
        if (i < m) {
          ups.push_back(f1.injections[i].mat);
          downs.push_back(f1.projections[i].mat);
        } else {
          ups.push_back(f2.injections[perm[i]].mat);
          downs.push_back(f2.projections[perm[i]].mat);
        }
      }
      if (mult_fold(h, ups).rank() != h.dim) return false;      // multiplicative fold
      if (comult_fold(h, downs).rank() != h.dim) return false;  // comultiplicative fold
    }
    return true;
  };
  // The theorem asserts that SOME numbering of matched factors makes every
  // prefix map bijective, so the matching search backtracks over all
  // isomorphism-compatible pairings until the mixed maps verify.
  std::vector<size_t> perm(k, SIZE_MAX);
  std::vector<char> used(k, 0);
  std::vector<std::optional<HopfMap>> isos(k);
  bool any_matching = false;
  std::function<bool(size_t)> match = [&](size_t i) -> bool {
    if (i == k) {
      any_matching = true;
      return mixed_maps_ok(perm);
    }
    for (size_t j = 0; j < k; ++j) {
      if (used[j]) continue;
      auto iso = find_factor_isomorphism(f1.factors[i], f2.factors[j], guard);
      if (!iso) continue;
      used[j] = 1;
      perm[i] = j;
      isos[i] = std::move(iso);
      if (match(i + 1)) return true;
      used[j] = 0;
      perm[i] = SIZE_MAX;
    }
    return false;
  };
  if (!match(0)) {
    out.note = any_matching
                   ? "factor matching exists but no numbering makes the mixed maps bijective "
                     "(would falsify Krull-Remak-Schmidt)"
                   : "no factor matching found (would falsify Krull-Remak-Schmidt)";
    return out;
  }
  out.matched = true;
  out.mixed_maps_bijective = true;
  out.permutation = perm;
  for (auto& iso : isos) out.isomorphisms.push_back(*iso);
  return out;
}

// -- nilpotent convolution lemma -------------------------------------------------

struct NilpotentConvolutionReport {
  bool preconditions_ok = false;
  bool both_nilpotent = false;
  bool convolution_nilpotent = false;
  int witness = 0;
  std::string note;
};

inline NilpotentConvolutionReport nilpotent_convolution_check(const HopfMap& f, const HopfMap& g) {
  NilpotentConvolutionReport rep;
  if (!bicommute(f, g)) {
    rep.note = "maps do not bicommute";
    return rep;
  }
  if (!normality(f, NormalityKind::Binormal) || !normality(g, NormalityKind::Binormal)) {
    rep.note = "maps are not binormal";
    return rep;
  }
  rep.preconditions_ok = true;
  NilpotencyResult nf = is_nilpotent_endo(f);
  NilpotencyResult ng = is_nilpotent_endo(g);
  rep.both_nilpotent = nf.nilpotent && ng.nilpotent;
  HopfMap conv = convolution(f, g);
  Mat target = trivial_map(f.dom, f.cod).mat;
  Mat power = conv.mat;
  int bound = rep.both_nilpotent ? 2 * std::max(nf.witness, ng.witness) : f.dom->dim + 1;
  for (int n = 1; n <= bound; ++n) {
    if (power == target) {
      rep.convolution_nilpotent = true;
      rep.witness = n;
      break;
    }
    power = power * conv.mat;
  }
  return rep;
}

// -- the tensor-product endomorphism matrix calculus ------------------------------

struct EndoMatrix {
  HopfPtr h, k;
  HopfMap a;  // endo of H
  HopfMap b;  // K -> H
  HopfMap c;  // H -> K
  HopfMap d;  // endo of K
};

inline bool endo_matrix_invariants(const EndoMatrix& m) {
  return comm_check(m.a, m.b) && comm_check(m.c, m.d) && cocomm_check(m.a, m.c) && cocomm_check(m.b, m.d);
}

// the composite endomorphism of H (x) K: h (x) k -> a(h1)b(k1) (x) c(h2)d(k2)
inline HopfMap endo_matrix_join(const EndoMatrix& m, const HopfPtr& t) {
  const FinHopf& h = *m.h;
  const FinHopf& k = *m.k;
  if (t->dim != h.dim * k.dim) throw std::invalid_argument("endo_matrix_join: tensor algebra mismatch");
  Mat out(t->dim, t->dim, t->order);
  for (int i = 0; i < h.dim; ++i)
    for (int j = 0; j < k.dim; ++j) {
      SVec acc;
      for (const auto& eh : h.comult.col(i)) {
        int h1 = eh.row / h.dim, h2 = eh.row % h.dim;
        for (const auto& ek : k.comult.col(j)) {
          int k1 = ek.row / k.dim, k2 = ek.row % k.dim;
          Cyc scale = eh.val * ek.val;
          SVec left = h.product(m.a.mat.col(h1), m.b.mat.col(k1));
          SVec right = k.product(m.c.mat.col(h2), m.d.mat.col(k2));
          for (const auto& el : left)
            for (const auto& er : right) {
              Cyc v = scale * el.val * er.val;
              if (!v.is_zero()) acc = svec_axpy(acc, v, basis_vec(el.row * k.dim + er.row, t->order));
            }
        }
      }
      out.col_mutable(i * k.dim + j) = std::move(acc);
    }
  return make_map(t, t, std::move(out));
}

// dissect an endomorphism of a two-factor tensor product
inline EndoMatrix endo_matrix_split(const HopfMap& f) {
  const HopfPtr& t = f.dom;
  if (t->origin.kind != HopfOrigin::Kind::TensorProduct || t->origin.factors.size() != 2)
    throw std::invalid_argument("endo_matrix_split: needs a two-factor tensor product origin");
  HopfMap ih = tensor_injection(t, 0), ik = tensor_injection(t, 1);
  HopfMap ph = tensor_projection(t, 0), pk = tensor_projection(t, 1);
  EndoMatrix m{t->origin.factors[0], t->origin.factors[1],
               compose(ph, compose(f, ih)), compose(ph, compose(f, ik)),
               compose(pk, compose(f, ih)), compose(pk, compose(f, ik))};
  return m;
}

// matrix of g . f (g applied second), by the composition-with-convolution law
inline EndoMatrix endo_matrix_compose(const EndoMatrix& g, const EndoMatrix& f) {
  EndoMatrix out{f.h, f.k,
                 convolution(compose(g.a, f.a), compose(g.b, f.c)),
                 convolution(compose(g.a, f.b), compose(g.b, f.d)),
                 convolution(compose(g.c, f.a), compose(g.d, f.c)),
                 convolution(compose(g.c, f.b), compose(g.d, f.d))};
  return out;
}

struct MatrixNormalityReport {
  bool direct = false;         // normality of the joined endomorphism
  bool componentwise = false;  // diagonal entries normal, off-diagonal central
  bool agree = false;
};

inline MatrixNormalityReport matrix_normality_check(const EndoMatrix& m, const HopfPtr& t) {
  MatrixNormalityReport rep;
  rep.direct = normality(endo_matrix_join(m, t), NormalityKind::Normal);
  rep.componentwise = normality(m.a, NormalityKind::Normal) && normality(m.d, NormalityKind::Normal) &&
                      comm_check(m.b, identity_map(m.h)) && comm_check(m.c, identity_map(m.k));
  rep.agree = rep.direct == rep.componentwise;
  if (!rep.agree) throw std::logic_error("matrix_normality_check: characterizations disagree (theorem violated)");
  return rep;
}

// -- morphism enumeration between origin-tagged algebras --------------------------

struct MorphismEnumeration {
  std::vector<HopfMap> maps;
  bool complete = false;
  std::string reason;
};

inline MorphismEnumeration enumerate_hopf_morphisms(const HopfPtr& src, const HopfPtr& dst, int guard = 24) {
  using K = HopfOrigin::Kind;
  MorphismEnumeration out;
  K ks = src->origin.kind, kd = dst->origin.kind;
  long ord = lcm_long(src->order, dst->order);
  if (ks == K::GroupAlgebra && kd == K::GroupAlgebra) {
    const FiniteGroup& g = *src->origin.group;
    const FiniteGroup& k = *dst->origin.group;
    for (const auto& hom : enumerate_homs(g, k, HomFilter::All, guard)) {
      Mat m(dst->dim, src->dim, ord);
      for (int x = 0; x < g.n; ++x) m.set(hom.apply(x), x, Cyc::one(ord));
      out.maps.push_back(make_map(src, dst, std::move(m)));
    }
    out.complete = true;
    out.reason = "Hopf maps kG -> kK are induced by group homomorphisms";
    return out;
  }
  if (ks == K::DualGroupAlgebra && kd == K::DualGroupAlgebra) {
    const FiniteGroup& g = *src->origin.group;
    const FiniteGroup& k = *dst->origin.group;
    for (const auto& hom : enumerate_homs(k, g, HomFilter::All, guard)) {
      Mat m(dst->dim, src->dim, ord);
      for (int x = 0; x < k.n; ++x) m.set(x, hom.apply(x), Cyc::one(ord));
      out.maps.push_back(make_map(src, dst, std::move(m)));
    }
    out.complete = true;
    out.reason = "Hopf maps du(G) -> du(K) are duals of group homomorphisms";
    return out;
  }
  if (ks == K::GroupAlgebra && kd == K::DualGroupAlgebra) {
    const FiniteGroup& g = *src->origin.group;
    const FiniteGroup& k = *dst->origin.group;
    CharacterGroup khat = character_group(k);
    long e = khat.chars.empty() ? 1 : khat.chars[0].e;
    long ord2 = lcm_long(ord, e);
    for (const auto& hom : enumerate_homs(g, khat.group, HomFilter::All, guard)) {
      Mat m(dst->dim, src->dim, ord2);
      for (int x = 0; x < g.n; ++x) {
        const Character& chi = khat.chars[static_cast<size_t>(hom.apply(x))];
        for (int y = 0; y < k.n; ++y)
          m.set(y, x, Cyc::root_of_unity(chi.e, chi.vals[static_cast<size_t>(y)]).lifted_to(ord2));
      }
      out.maps.push_back(make_map(src, dst, std::move(m)));
    }
    out.complete = true;
    out.reason = "grouplikes span kG and must map to characters";
    return out;
  }
  if (ks == K::DualGroupAlgebra && kd == K::GroupAlgebra) {
    // factor through du(A) ~ kB for abelian subgroups A of G, B of K
    const FiniteGroup& g = *src->origin.group;
    const FiniteGroup& k = *dst->origin.group;
    for (Subset am : all_subgroups(g)) {
      if (!is_abelian_subset(g, am)) continue;
      SubgroupView a_view = subgroup_as_group(g, am);
      CharacterGroup ahat = character_group(a_view.group);
      long a_exp = a_view.group.exponent();
      for (Subset bm : all_subgroups(k)) {
        if (subset_size(bm) != subset_size(am)) continue;
        if (!is_abelian_subset(k, bm)) continue;
        SubgroupView b_view = subgroup_as_group(k, bm);
        if (b_view.group.exponent() != a_exp) continue;
        for (const auto& iso : enumerate_homs(b_view.group, ahat.group, HomFilter::Isomorphisms, guard)) {
          long ord2 = lcm_long(ord, a_exp);
          Mat m(dst->dim, src->dim, ord2);
          Rat inv_size(1, b_view.group.n);
          for (size_t ai = 0; ai < a_view.embed.size(); ++ai) {
            int src_col = a_view.embed[ai];
            for (size_t bi = 0; bi < b_view.embed.size(); ++bi) {
              const Character& chi = ahat.chars[static_cast<size_t>(iso.apply(static_cast<int>(bi)))];
              Cyc coeff = Cyc(inv_size, ord2) *
                          Cyc::root_of_unity(chi.e, -chi.vals[ai]).lifted_to(ord2);
              m.set(b_view.embed[bi], src_col, coeff);
            }
          }
          HopfMap cand = make_map(src, dst, std::move(m));
          if (morphism_check(cand).is_hopf) out.maps.push_back(std::move(cand));
        }
      }
    }
    out.complete = true;
    out.reason = "Hopf maps du(G) -> kK factor through du(A) ~ kB for abelian subgroups";
    return out;
  }
  out.reason = "no enumeration available for this origin pair";
  return out;
}

// Zenthom(K, H): Hopf morphisms K -> H commuting and cocommuting with id_H
struct ZenthomResult {
  std::vector<HopfMap> maps;
  bool complete = false;
  bool abelian_group_under_convolution = false;
  std::string reason;
};

inline ZenthomResult zenthom(const HopfPtr& k, const HopfPtr& h, int guard = 24) {
  ZenthomResult out;
  MorphismEnumeration all = enumerate_hopf_morphisms(k, h, guard);
  out.complete = all.complete;
  out.reason = all.reason;
  // b commutes with the identity of the target, and cocommutes with the
  // identity of the source (the only well-typed identity on the coalgebra side;
  // equivalently b cocommutes with every automorphism of its domain)
  HopfMap idh = identity_map(h);
  HopfMap idk = identity_map(k);
  for (auto& f : all.maps)
    if (comm_check(f, idh) && cocomm_check(f, idk)) out.maps.push_back(std::move(f));
  // closure under convolution, commutativity, inverses
  out.abelian_group_under_convolution = true;
  auto find_in = [&](const Mat& m) {
    for (const auto& f : out.maps)
      if (f.mat == m) return true;
    return false;
  };
  for (const auto& f : out.maps)
    for (const auto& g : out.maps) {
      Mat fg = convolution(f, g).mat;
      if (!find_in(fg) || !(fg == convolution(g, f).mat)) out.abelian_group_under_convolution = false;
    }
  Mat unit = h->unit * k->counit;
  for (const auto& f : out.maps) {
    bool has_inverse = false;
    for (const auto& g : out.maps)
      if (convolution(f, g).mat == unit) has_inverse = true;
    if (!has_inverse) out.abelian_group_under_convolution = false;
  }
  return out;
}

// -- automorphisms of tensor products ----------------------------------------------

struct TensorAutReport {
  HopfPtr tensor;
  std::vector<EndoMatrix> endos;       // all Hopf endomorphisms found (matrix form)
  std::vector<size_t> aut_indices;     // indices of the bijective ones
  size_t a_set_size = 0;               // |A| matrix set
  bool a_group_equal = false;          // Hopfaut(H (x) K) == A
  bool a_subset_of_aut = false;        // A is contained in Hopfaut
  bool common_factor = false;          // H and K share a direct tensor factor
  bool common_abelian_factor = false;
  bool complete = false;
  std::string reason;
};

inline TensorAutReport hopfaut_tensor(const HopfPtr& h, const HopfPtr& k, int guard = 24) {
  TensorAutReport rep;
  rep.tensor = tensor_hopf(h, k);
  MorphismEnumeration end_h = enumerate_hopf_morphisms(h, h, guard);
  MorphismEnumeration end_k = enumerate_hopf_morphisms(k, k, guard);
  MorphismEnumeration mor_kh = enumerate_hopf_morphisms(k, h, guard);
  MorphismEnumeration mor_hk = enumerate_hopf_morphisms(h, k, guard);
  rep.complete = end_h.complete && end_k.complete && mor_kh.complete && mor_hk.complete;
  rep.reason = rep.complete ? "component morphism enumerations complete"
                            : "incomplete component enumeration";
  for (const auto& a : end_h.maps)
    for (const auto& b : mor_kh.maps)
      for (const auto& c : mor_hk.maps)
        for (const auto& d : end_k.maps) {
          EndoMatrix m{h, k, a, b, c, d};
          if (!endo_matrix_invariants(m)) continue;
          HopfMap joined = endo_matrix_join(m, rep.tensor);
          if (!morphism_check(joined).is_hopf)
            throw std::logic_error("hopfaut_tensor: quadruple join failed verification");
          if (joined.mat.rank() == rep.tensor->dim) rep.aut_indices.push_back(rep.endos.size());
          rep.endos.push_back(std::move(m));
        }
  // the A-matrix set: diagonal automorphisms, off-diagonal Zenthom entries
  ZenthomResult z_kh = zenthom(k, h, guard);
  ZenthomResult z_hk = zenthom(h, k, guard);
  std::vector<Mat> a_set;
  for (const auto& a : end_h.maps) {
    if (a.mat.rank() != h->dim) continue;
    for (const auto& d : end_k.maps) {
      if (d.mat.rank() != k->dim) continue;
      for (const auto& b : z_kh.maps)
        for (const auto& c : z_hk.maps) {
          EndoMatrix m{h, k, a, b, c, d};
          if (!endo_matrix_invariants(m)) continue;
          a_set.push_back(endo_matrix_join(m, rep.tensor).mat);
        }
    }
  }
  rep.a_set_size = a_set.size();
  // compare sets
  auto aut_mats = [&]() {
    std::vector<Mat> mats;
    for (size_t i : rep.aut_indices) mats.push_back(endo_matrix_join(rep.endos[i], rep.tensor).mat);
    return mats;
  }();
  auto contains = [](const std::vector<Mat>& set, const Mat& m) {
    for (const auto& x : set)
      if (x == m) return true;
    return false;
  };
  rep.a_subset_of_aut = true;
  for (const auto& m : a_set)
    if (!contains(aut_mats, m)) rep.a_subset_of_aut = false;
  rep.a_group_equal = rep.a_subset_of_aut && a_set.size() == aut_mats.size();
  // common-factor detection through the factor lattices
  TensorFactorization fh = krs_decompose(h);
  TensorFactorization fk = krs_decompose(k);
  for (const auto& fa : fh.factors)
    for (const auto& fb : fk.factors) {
      if (find_factor_isomorphism(fa, fb, guard)) {
        rep.common_factor = true;
        bool abelian = fa->is_commutative() && fa->is_cocommutative();
        if (abelian) rep.common_abelian_factor = true;
      }
    }
  return rep;
}

}  // namespace hopfkit
