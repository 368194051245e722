#pragma once

// Morphisms between Drinfeld doubles of finite groups: the (u, r, p, v)
// component calculus, its compatibility relations, enumeration of
// Hom(D(G), D(K)) and Hopfaut(D(G)), twisting between the double and the
// plain tensor-product structure on du(G) (x) kG, and the block-matrix
// order formula for Hopfaut(D(C x H)).

#include "hopfkit/decompose.hpp"
#include "hopfkit/parallel.hpp"

#include <atomic>
#include <optional>
#include <string>
#include <vector>

namespace hopfkit {

// everything needed to talk about one double; basis of D(G) is delta_g # h
// at index g*|G| + h
struct DoubleContext {
  FiniteGroup group;
  long order = 1;
  HopfPtr dual;           // du(G)
  HopfPtr kg;             // kG
  HopfPtr dbl;            // D(G)
  HopfPtr tprod;          // du(G) (x) kG, the untwisted form
  CharacterGroup ghat;    // linear characters with their group table
  FiniteGroup gamma;      // Gamma_G = Ghat x G
  std::vector<Mat> conj_du;  // conj_du[g]: delta_a -> delta_{g a g^-1}
  std::vector<Mat> conj_kg;  // conj_kg[g]: x -> g x g^-1
  std::vector<std::vector<int>> conj_perm;  // conj_perm[g][a] = g a g^-1
  std::vector<SVec> grouplike_vecs;  // grouplike of D(G) for gamma index chi*|G|+g
};

inline DoubleContext make_double_context(const FiniteGroup& g, long order = 0) {
  DoubleContext ctx;
  ctx.group = g;
  ctx.order = order == 0 ? g.exponent() : order;
  ctx.dual = build_dual_group_algebra(g, ctx.order);
  ctx.kg = build_group_algebra(g, ctx.order);
  ctx.dbl = build_drinfeld_double(g, ctx.order);
  ctx.tprod = build_tensor_form(g, ctx.order);
  ctx.ghat = character_group(g);
  ctx.gamma = make_product({ctx.ghat.group, g});
  Cyc one = Cyc::one(ctx.order);
  for (int x = 0; x < g.n; ++x) {
    Mat cd(g.n, g.n, ctx.order), ck(g.n, g.n, ctx.order);
    std::vector<int> perm(static_cast<size_t>(g.n));
    for (int a = 0; a < g.n; ++a) {
      perm[static_cast<size_t>(a)] = g.conj(x, a);
      cd.set(g.conj(x, a), a, one);
      ck.set(g.conj(x, a), a, one);
    }
    ctx.conj_du.push_back(std::move(cd));
    ctx.conj_kg.push_back(std::move(ck));
    ctx.conj_perm.push_back(std::move(perm));
  }
  GrouplikeSet gl = grouplikes(*ctx.dbl);
  if (!gl.supported) throw std::logic_error("make_double_context: grouplikes unavailable");
  ctx.grouplike_vecs = std::move(gl.vectors);
  return ctx;
}

namespace detail {

inline SVec permute_rows(const SVec& v, const std::vector<int>& perm) {
  SVec out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back({perm[static_cast<size_t>(e.row)], e.val});
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
  return out;
}

// relation (1): u(g -> a) = v(g) -> u(a), columnwise with early exit
inline bool rel1_ok(const Mat& u, const std::vector<int>& v, const DoubleContext& src,
                    const DoubleContext& dst) {
  for (int g = 0; g < src.group.n; ++g) {
    const auto& cg = src.conj_perm[static_cast<size_t>(g)];
    const auto& ck = dst.conj_perm[static_cast<size_t>(v[static_cast<size_t>(g)])];
    for (int a = 0; a < src.group.n; ++a) {
      if (!FinHopf::svec_equal(u.col(cg[static_cast<size_t>(a)]), permute_rows(u.col(a), ck))) return false;
    }
  }
  return true;
}

// relation (4): p(g -> a) = v(g) -> p(a)
inline bool rel4_ok(const Mat& p, const std::vector<int>& v, const DoubleContext& src,
                    const DoubleContext& dst) {
  for (int g = 0; g < src.group.n; ++g) {
    const auto& cg = src.conj_perm[static_cast<size_t>(g)];
    const auto& ck = dst.conj_perm[static_cast<size_t>(v[static_cast<size_t>(g)])];
    for (int a = 0; a < src.group.n; ++a) {
      if (!FinHopf::svec_equal(p.col(cg[static_cast<size_t>(a)]), permute_rows(p.col(a), ck))) return false;
    }
  }
  return true;
}

// relation (2): u cocommutes with p
inline bool rel2_ok(const Mat& u, const Mat& p, const DoubleContext& src, const DoubleContext& dst) {
  using Key = long long;
  const int n = src.group.n;
  const int m = dst.group.n;
  for (int a = 0; a < n; ++a) {
    std::map<Key, Cyc> diff;
    for (int x = 0; x < n; ++x) {
      int y = src.group.mul(src.group.inv[static_cast<size_t>(x)], a);
      for (const auto& eu : u.col(x))
        for (const auto& ep : p.col(y)) {
          Cyc cval = eu.val * ep.val;
          Key key = static_cast<Key>(eu.row) * m + ep.row;
          auto [it, fresh] = diff.emplace(key, cval);
          if (!fresh) it->second += cval;
        }
      for (const auto& eu : u.col(y))
        for (const auto& ep : p.col(x)) {
          Cyc cval = -(eu.val * ep.val);
          Key key = static_cast<Key>(eu.row) * m + ep.row;
          auto [it, fresh] = diff.emplace(key, cval);
          if (!fresh) it->second += cval;
        }
    }
    for (const auto& [k2, v2] : diff)
      if (!v2.is_zero()) return false;
  }
  return true;
}

// relation (3): u(ab) = u(a1) (p(a2) -> u(b)); du(G) multiplication is pointwise
inline bool rel3_ok(const Mat& u, const Mat& p, const DoubleContext& src, const DoubleContext& dst) {
  const int n = src.group.n;
  auto pointwise = [&](const SVec& s, const SVec& t) {
    SVec outv;
    for (const auto& es : s) {
      Cyc cval = es.val * svec_at(t, es.row);
      if (!cval.is_zero()) outv.push_back({es.row, std::move(cval)});
    }
    return outv;
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      SVec lhs = a == b ? u.col(a) : SVec{};
      SVec rhs;
      for (int x = 0; x < n; ++x) {
        int y = src.group.mul(src.group.inv[static_cast<size_t>(x)], a);
        const SVec& py = p.col(y);
        if (py.empty()) continue;
        for (const auto& ep : py) {
          SVec conj_ub = permute_rows(u.col(b), dst.conj_perm[static_cast<size_t>(ep.row)]);
          SVec term = pointwise(u.col(x), conj_ub);
          if (!term.empty()) rhs = svec_axpy(rhs, ep.val, term);
        }
      }
      if (!FinHopf::svec_equal(lhs, rhs)) return false;
    }
  return true;
}

}  // namespace detail

// character chi of K as a vector in du(K)
inline SVec character_as_dual_vector(const DoubleContext& k, int chi_index) {
  const Character& chi = k.ghat.chars[static_cast<size_t>(chi_index)];
  SVec v;
  for (int x = 0; x < k.group.n; ++x)
    v.push_back({x, Cyc::root_of_unity(chi.e, chi.vals[static_cast<size_t>(x)]).lifted_to(k.order)});
  return v;
}

// p = Fourier . restriction for a duality triple: delta_g -> 0 unless g in A,
// else (1/|B|) sum_b theta(b)(g)^-1 b
inline Mat build_p(const PTriple& triple, const DoubleContext& src, const DoubleContext& dst) {
  long ord = lcm_long(lcm_long(src.order, dst.order), static_cast<long>(triple.theta.e));
  Mat p(dst.group.n, src.group.n, ord);
  const auto& a_elems = triple.theta.a_elems;
  const auto& b_elems = triple.theta.b_elems;
  Rat inv_b(1, static_cast<long>(b_elems.size()));
  for (size_t ai = 0; ai < a_elems.size(); ++ai)
    for (size_t bi = 0; bi < b_elems.size(); ++bi) {
      Cyc coeff = Cyc(inv_b, ord) *
                  Cyc::root_of_unity(triple.theta.e, -triple.theta.pairing[ai][bi]).lifted_to(ord);
      p.set(b_elems[bi], a_elems[ai], coeff);
    }
  return p;
}

struct Quadruple {
  Mat u;                          // du(G) -> du(K)
  std::vector<int> r;             // r[g] = character index in the target's Ghat
  std::optional<PTriple> p_data;  // group-data form, when known
  Mat p;                          // du(G) -> kK, always materialized
  std::vector<int> v;             // v[g] in K
};

// a # g -> u(a1) r(g) # p(a2) v(g)
inline Mat quadruple_to_map(const Quadruple& q, const DoubleContext& src, const DoubleContext& dst) {
  const int n = src.group.n;
  const int m = dst.group.n;
  long ord = lcm_long(lcm_long(src.order, dst.order), lcm_long(q.u.order(), q.p.order()));
  Mat out(m * m, n * n, ord);
  // precompute character vectors
  std::vector<SVec> chars;
  for (size_t i = 0; i < dst.ghat.chars.size(); ++i) chars.push_back(character_as_dual_vector(dst, static_cast<int>(i)));
  for (int a = 0; a < n; ++a)
    for (int g = 0; g < n; ++g) {
      const SVec& chi = chars[static_cast<size_t>(q.r[static_cast<size_t>(g)])];
      int vg = q.v[static_cast<size_t>(g)];
      SVec acc;
      for (int x = 0; x < n; ++x) {
        int y = src.group.mul(src.group.inv[static_cast<size_t>(x)], a);
        // left leg: u(delta_x) * r(g), pointwise in du(K)
        // right leg: p(delta_y) translated by v(g) in kK
        const SVec& ux = q.u.col(x);
        const SVec& py = q.p.col(y);
        if (ux.empty() || py.empty()) continue;
        for (const auto& eu : ux) {
          Cyc left = eu.val * svec_at(chi, eu.row);
          if (left.is_zero()) continue;
          for (const auto& ep : py) {
            Cyc cval = left * ep.val;
            if (cval.is_zero()) continue;
            int row = eu.row * m + dst.group.mul(ep.row, vg);
            acc = svec_axpy(acc, cval, basis_vec(row, ord));
          }
        }
      }
      out.col_mutable(a * n + g) = std::move(acc);
    }
  return out;
}

struct QuadrupleExtraction {
  bool ok = false;
  std::string reason;
  Quadruple q;
};

inline int gamma_stride(const DoubleContext& ctx) { return ctx.group.n; }

// u = (id (x) eps) f(- # 1), p = (eps (x) id) f(- # 1), (r(g), v(g)) from the
// grouplike image f(1 # g)
inline QuadrupleExtraction map_to_quadruple(const Mat& f, const DoubleContext& src, const DoubleContext& dst) {
  const int n = src.group.n;
  const int m = dst.group.n;
  QuadrupleExtraction out;
  out.q.u = Mat(m, n, f.order());
  out.q.p = Mat(m, n, f.order());
  for (int a = 0; a < n; ++a) {
    const SVec& img = f.col(a * n + src.group.identity);
    for (const auto& e : img) {
      int k = e.row / m, h = e.row % m;
      // eps_kK(h) = 1
      out.q.u.add_to(k, a, e.val);
      if (k == dst.group.identity) out.q.p.add_to(h, a, e.val);
    }
  }
  out.q.r.resize(static_cast<size_t>(n));
  out.q.v.resize(static_cast<size_t>(n));
  for (int g = 0; g < n; ++g) {
    // f(1 # g) = sum_a f(delta_a # g)
    SVec acc;
    for (int a = 0; a < n; ++a) acc = svec_axpy(acc, Cyc::one(f.order()), f.col(a * n + g));
    int found = -1;
    for (size_t t = 0; t < dst.grouplike_vecs.size(); ++t) {
      SVec diff = svec_axpy(acc, -Cyc::one(f.order()), dst.grouplike_vecs[t]);
      if (diff.empty()) {
        found = static_cast<int>(t);
        break;
      }
    }
    if (found < 0) {
      out.reason = "image of a grouplike is not grouplike (not a morphism of doubles)";
      return out;
    }
    out.q.r[static_cast<size_t>(g)] = found / gamma_stride(dst);
    out.q.v[static_cast<size_t>(g)] = found % gamma_stride(dst);
  }
  out.ok = true;
  return out;
}

struct RelationReport {
  bool conj_equivariance_u = false;  // (1) u(g -> a) = v(g) -> u(a)
  bool u_cocomm_p = false;           // (2)
  bool twisted_multiplicativity = false;  // (3) u(ab) = u(a1)(p(a2) -> u(b))
  bool conj_equivariance_p = false;  // (4) p(g -> a) = v(g) -> p(a)
  bool all() const { return conj_equivariance_u && u_cocomm_p && twisted_multiplicativity && conj_equivariance_p; }
};

inline RelationReport verify_relations(const Quadruple& q, const DoubleContext& src, const DoubleContext& dst) {
  RelationReport rep;
  rep.conj_equivariance_u = detail::rel1_ok(q.u, q.v, src, dst);
  rep.u_cocomm_p = detail::rel2_ok(q.u, q.p, src, dst);
  rep.twisted_multiplicativity = detail::rel3_ok(q.u, q.p, src, dst);
  rep.conj_equivariance_p = detail::rel4_ok(q.p, q.v, src, dst);
  return rep;
}

// -- enumeration ------------------------------------------------------------------

struct DoubleMorphism {
  Quadruple q;
  Mat mat;
  bool bijective = false;
};

struct EnumerationReport {
  std::vector<DoubleMorphism> elements;
  bool complete = false;
  std::string completeness_reason;
  long scalar_order = 1;
};

struct DoubleEnumOptions {
  bool auts_only = false;
  int guard = 12;      // largest |G|, |K| for full enumeration
  int hom_guard = 24;  // guard for the underlying group searches
  int jobs = 1;
};

inline EnumerationReport enumerate_double_homs(const FiniteGroup& g, const FiniteGroup& k,
                                               const DoubleEnumOptions& opt = {}) {
  if (g.n > opt.guard || k.n > opt.guard)
    throw GuardExceededError("enumerate_double_homs: size guard exceeded");
  long ord = lcm_long(g.exponent(), k.exponent());
  DoubleContext src = make_double_context(g, ord);
  DoubleContext dst = make_double_context(k, ord);

  auto vs = enumerate_homs(g, k, HomFilter::All, opt.hom_guard);
  auto rs = enumerate_homs(g, dst.ghat.group, HomFilter::All, opt.hom_guard);
  auto triples = enumerate_p_triples(g, k, opt.hom_guard);
  auto sigmas = enumerate_homs(k, g, HomFilter::All, opt.hom_guard);

  bool nontrivial_p_possible = false;
  for (const auto& t : triples)
    if (!t.trivial()) nontrivial_p_possible = true;

  std::vector<Mat> p_mats;
  for (const auto& t : triples) p_mats.push_back(build_p(t, src, dst).lifted_to(ord));
  std::vector<Mat> u_mats;
  for (const auto& sigma : sigmas) {
    Mat u(k.n, g.n, ord);
    for (int x = 0; x < k.n; ++x) u.set(x, sigma.apply(x), Cyc::one(ord));
    u_mats.push_back(std::move(u));
  }

  // the relations constrain only the pairs (u,v), (u,p), (p,v); r is free
  std::vector<std::vector<char>> ok_uv(u_mats.size(), std::vector<char>(vs.size(), 0));
  std::vector<std::vector<char>> ok_up(u_mats.size(), std::vector<char>(p_mats.size(), 0));
  std::vector<std::vector<char>> ok_pv(p_mats.size(), std::vector<char>(vs.size(), 0));
  parallel_for(u_mats.size() * vs.size(), opt.jobs, [&](size_t idx) {
    size_t ui = idx / vs.size(), vi = idx % vs.size();
    ok_uv[ui][vi] = detail::rel1_ok(u_mats[ui], vs[vi].images, src, dst);
  });
  parallel_for(u_mats.size() * p_mats.size(), opt.jobs, [&](size_t idx) {
    size_t ui = idx / p_mats.size(), pi = idx % p_mats.size();
    ok_up[ui][pi] = detail::rel2_ok(u_mats[ui], p_mats[pi], src, dst) &&
                    detail::rel3_ok(u_mats[ui], p_mats[pi], src, dst);
  });
  parallel_for(p_mats.size() * vs.size(), opt.jobs, [&](size_t idx) {
    size_t pi = idx / vs.size(), vi = idx % vs.size();
    ok_pv[pi][vi] = detail::rel4_ok(p_mats[pi], vs[vi].images, src, dst);
  });

  struct Candidate {
    size_t vi, ri, pi, ui;
  };
  std::vector<Candidate> grid;
  for (size_t pi = 0; pi < triples.size(); ++pi)
    for (size_t vi = 0; vi < vs.size(); ++vi) {
      if (!ok_pv[pi][vi]) continue;
      for (size_t ri = 0; ri < rs.size(); ++ri)
        for (size_t ui = 0; ui < sigmas.size(); ++ui)
          if (ok_uv[ui][vi] && ok_up[ui][pi]) grid.push_back({vi, ri, pi, ui});
    }

  std::vector<std::optional<DoubleMorphism>> slots(grid.size());
  std::atomic<bool> verification_mismatch{false};
  parallel_for(grid.size(), opt.jobs, [&](size_t idx) {
    const Candidate& cand = grid[idx];
    Quadruple q;
    q.u = u_mats[cand.ui];
    q.p = p_mats[cand.pi];
    q.p_data = triples[cand.pi];
    q.r = rs[cand.ri].images;
    q.v = vs[cand.vi].images;
    Mat mat = quadruple_to_map(q, src, dst);
    // for automorphism enumeration, prune non-bijective candidates before the
    // expensive full verification
    bool bijective = mat.rows() == mat.cols() && mat.rank() == mat.rows();
    if (opt.auts_only && !bijective) return;
    HopfMap f = make_map(src.dbl, dst.dbl, mat);
    if (!morphism_check(f).is_hopf) {
      verification_mismatch = true;
      return;
    }
    DoubleMorphism dm{std::move(q), std::move(f.mat), bijective};
    slots[idx] = std::move(dm);
  });
  if (verification_mismatch)
    throw std::logic_error("enumerate_double_homs: relations passed but matrix verification failed");

  EnumerationReport rep;
  rep.scalar_order = ord;
  for (auto& s : slots)
    if (s) rep.elements.push_back(std::move(*s));
  bool surviving_nontrivial_p = false;
  for (const auto& e : rep.elements)
    if (e.q.p_data && !e.q.p_data->trivial()) surviving_nontrivial_p = true;
  if (!nontrivial_p_possible) {
    rep.complete = true;
    rep.completeness_reason =
        "complete: no admissible nontrivial (A,B,theta) triple exists, so p is forced trivial and u is "
        "forced to be the dual of a group homomorphism";
  } else {
    rep.complete = false;
    rep.completeness_reason =
        surviving_nontrivial_p
            ? "nontrivial-p morphisms found; the u-search is restricted to duals of group homomorphisms "
              "and may be incomplete for nontrivial p"
            : "admissible nontrivial (A,B,theta) triples exist; the u-search is restricted to duals of "
              "group homomorphisms and may be incomplete for nontrivial p";
  }
  return rep;
}

inline EnumerationReport enumerate_double_auts(const FiniteGroup& g, DoubleEnumOptions opt = {}) {
  opt.auts_only = true;
  return enumerate_double_homs(g, g, opt);
}

// materialized r: kG -> du(K) and v: kG -> kK component maps
inline Mat r_as_matrix(const Quadruple& q, const DoubleContext& src, const DoubleContext& dst) {
  Mat m(dst.group.n, src.group.n, lcm_long(src.order, dst.order));
  for (int g = 0; g < src.group.n; ++g) {
    SVec chi = character_as_dual_vector(dst, q.r[static_cast<size_t>(g)]);
    m.col_mutable(g) = std::move(chi);
  }
  return m;
}

inline Mat v_as_matrix(const Quadruple& q, const DoubleContext& src, const DoubleContext& dst) {
  Mat m(dst.group.n, src.group.n, lcm_long(src.order, dst.order));
  for (int g = 0; g < src.group.n; ++g) m.set(q.v[static_cast<size_t>(g)], g, Cyc::one(m.order()));
  return m;
}

// composition of morphisms-as-quadruples: the matrix product with
// entrywise composition and convolution.  q2 is applied second.
inline Quadruple quadruple_compose(const Quadruple& q2, const Quadruple& q1, const DoubleContext& src,
                                   const DoubleContext& mid, const DoubleContext& dst) {
  Mat r1 = r_as_matrix(q1, src, mid), r2 = r_as_matrix(q2, mid, dst);
  Mat v1 = v_as_matrix(q1, src, mid), v2 = v_as_matrix(q2, mid, dst);
  auto conv = [](const HopfPtr& dom, const HopfPtr& cod, const Mat& a, const Mat& b) {
    return convolution(make_map(dom, cod, a), make_map(dom, cod, b)).mat;
  };
  Quadruple out;
  out.u = conv(src.dual, dst.dual, q2.u * q1.u, r2 * q1.p);
  Mat r_new = conv(src.kg, dst.dual, q2.u * r1, r2 * v1);
  out.p = conv(src.dual, dst.kg, q2.p * q1.u, v2 * q1.p);
  Mat v_new = conv(src.kg, dst.kg, q2.p * r1, v2 * v1);
  // decode r and v from their matrix forms
  out.r.resize(static_cast<size_t>(src.group.n));
  out.v.resize(static_cast<size_t>(src.group.n));
  for (int g = 0; g < src.group.n; ++g) {
    int chi_found = -1;
    for (size_t t = 0; t < dst.ghat.chars.size(); ++t) {
      SVec chi = character_as_dual_vector(dst, static_cast<int>(t));
      SVec diff = svec_axpy(chi, -Cyc::one(r_new.order()), r_new.col(g));
      if (diff.empty()) {
        chi_found = static_cast<int>(t);
        break;
      }
    }
    if (chi_found < 0) throw std::logic_error("quadruple_compose: r entry is not a character");
    out.r[static_cast<size_t>(g)] = chi_found;
    const SVec& vcol = v_new.col(g);
    if (vcol.size() != 1 || !vcol[0].val.is_one())
      throw std::logic_error("quadruple_compose: v entry is not a group element");
    out.v[static_cast<size_t>(g)] = vcol[0].row;
  }
  return out;
}

// Zenthom(D(G), D(K)) with the group-algebra cross-check when D(G) is
// grouplike-spanned
struct ZenthomDoublesReport {
  EnumerationReport enumeration;  // the filtered elements
  bool abelian_group_under_convolution = false;
  std::optional<long> gamma_hom_count;  // |Hom(Gamma_G, Z(Gamma_K))| when G abelian
};

inline ZenthomDoublesReport zenthom_doubles(const FiniteGroup& g, const FiniteGroup& k,
                                            const DoubleEnumOptions& opt = {}) {
  ZenthomDoublesReport rep;
  EnumerationReport all = enumerate_double_homs(g, k, opt);
  long ord = all.scalar_order;
  DoubleContext src = make_double_context(g, ord);
  DoubleContext dst = make_double_context(k, ord);
  HopfMap id_dst = identity_map(dst.dbl);
  HopfMap id_src = identity_map(src.dbl);
  rep.enumeration.scalar_order = ord;
  rep.enumeration.complete = all.complete;
  rep.enumeration.completeness_reason = all.completeness_reason;
  for (auto& e : all.elements) {
    HopfMap f = make_map(src.dbl, dst.dbl, e.mat);
    if (comm_check(f, id_dst) && cocomm_check(f, id_src)) rep.enumeration.elements.push_back(std::move(e));
  }
  // abelian group under convolution
  rep.abelian_group_under_convolution = true;
  auto conv_mat = [&](const Mat& a, const Mat& b) {
    return convolution(make_map(src.dbl, dst.dbl, a), make_map(src.dbl, dst.dbl, b)).mat;
  };
  auto member = [&](const Mat& m2) {
    for (const auto& e : rep.enumeration.elements)
      if (e.mat == m2) return true;
    return false;
  };
  Mat conv_unit = trivial_map(src.dbl, dst.dbl).mat;
  for (const auto& e1 : rep.enumeration.elements) {
    bool has_inv = false;
    for (const auto& e2 : rep.enumeration.elements) {
      Mat c12 = conv_mat(e1.mat, e2.mat);
      if (!member(c12) || !(c12 == conv_mat(e2.mat, e1.mat))) rep.abelian_group_under_convolution = false;
      if (c12 == conv_unit) has_inv = true;
    }
    if (!has_inv) rep.abelian_group_under_convolution = false;
  }
  if (g.is_abelian()) {
    Subset zmask = center_mask(dst.gamma);
    SubgroupView z = subgroup_as_group(dst.gamma, zmask);
    rep.gamma_hom_count = static_cast<long>(enumerate_homs(src.gamma, z.group, HomFilter::All, 64).size());
  }
  return rep;
}

// -- twisting ---------------------------------------------------------------------

enum class TwistDirection { Untwist, Twist, Flip };

struct TwistReport {
  bool condition_holds = false;   // the group-level characterization
  bool transported_verifies = false;  // the same matrix is a morphism for the other structure
  bool agree = false;
  std::optional<Mat> dual_map;    // for Flip: the dual morphism's matrix
};

namespace detail {

// the self-duality pairing of the tensor form swaps the two legs
inline Mat tensor_form_pairing(const DoubleContext& ctx) {
  const int n = ctx.group.n;
  Mat p(n * n, n * n, ctx.order);
  Cyc one = Cyc::one(ctx.order);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) p.set(b * n + a, a * n + b, one);
  return p;
}

inline bool p_comm_v(const Quadruple& q, const DoubleContext& dst) {
  // images of p and v generate commuting elements of kK
  for (int col = 0; col < q.p.cols(); ++col)
    for (const auto& ep : q.p.col(col))
      for (int g = 0; g < static_cast<int>(q.v.size()); ++g) {
        int vg = q.v[static_cast<size_t>(g)];
        if (dst.group.mul(ep.row, vg) != dst.group.mul(vg, ep.row)) return false;
      }
  return true;
}

inline bool u_is_algebra_morphism(const Quadruple& q, const DoubleContext& src, const DoubleContext& dst) {
  HopfMap u = make_map(src.dual, dst.dual, q.u);
  return morphism_check(u).is_algebra;
}

inline bool a_central(const Quadruple& q, const DoubleContext& src) {
  // support of p = the subgroup A; centrality in G
  Subset zmask = center_mask(src.group);
  for (int a = 0; a < q.p.cols(); ++a)
    if (!q.p.col(a).empty() && !subset_contains(zmask, a)) return false;
  return true;
}

inline bool b_central(const Quadruple& q, const DoubleContext& dst) {
  Subset zmask = center_mask(dst.group);
  for (int a = 0; a < q.p.cols(); ++a)
    for (const auto& e : q.p.col(a))
      if (!subset_contains(zmask, e.row)) return false;
  return true;
}

inline bool u_star_v_normal(const Quadruple& q, const DoubleContext& src, const DoubleContext& dst) {
  // u*: kK -> kG is the transpose of u; v materialized kG -> kK
  Mat v_mat(dst.group.n, src.group.n, src.order);
  for (int x = 0; x < src.group.n; ++x) v_mat.set(q.v[static_cast<size_t>(x)], x, Cyc::one(src.order));
  Mat comp = q.u.transpose() * v_mat;  // kG -> kG
  return normality(make_map(src.kg, src.kg, comp), NormalityKind::Normal);
}

inline bool v_u_star_normal(const Quadruple& q, const DoubleContext& src, const DoubleContext& dst) {
  Mat v_mat(dst.group.n, src.group.n, src.order);
  for (int x = 0; x < src.group.n; ++x) v_mat.set(q.v[static_cast<size_t>(x)], x, Cyc::one(src.order));
  Mat comp = v_mat * q.u.transpose();  // kK -> kK
  return normality(make_map(dst.kg, dst.kg, comp), NormalityKind::Normal);
}

}  // namespace detail

// Checks whether a morphism transports between the double and tensor-form
// algebra structures.  The matrix itself is unchanged; only the structures
// against which it is a morphism differ.
inline TwistReport twistability(const Mat& f, const Quadruple& q, const DoubleContext& src,
                                const DoubleContext& dst, TwistDirection dir) {
  TwistReport rep;
  switch (dir) {
    case TwistDirection::Untwist: {
      rep.condition_holds = detail::p_comm_v(q, dst) && detail::u_is_algebra_morphism(q, src, dst);
      rep.transported_verifies = morphism_check(make_map(src.tprod, dst.tprod, f)).is_hopf;
      break;
    }
    case TwistDirection::Twist: {
      rep.condition_holds = detail::u_star_v_normal(q, src, dst) && detail::a_central(q, src);
      rep.transported_verifies = morphism_check(make_map(src.dbl, dst.dbl, f)).is_hopf;
      break;
    }
    case TwistDirection::Flip: {
      rep.condition_holds = detail::u_star_v_normal(q, src, dst) && detail::v_u_star_normal(q, src, dst) &&
                            detail::a_central(q, src) && detail::b_central(q, dst);
      Mat dual = detail::tensor_form_pairing(src) * f.transpose() * detail::tensor_form_pairing(dst);
      rep.transported_verifies = morphism_check(make_map(dst.dbl, src.dbl, dual)).is_hopf &&
                                 morphism_check(make_map(src.dbl, dst.dbl, f)).is_hopf;
      rep.dual_map = std::move(dual);
      break;
    }
  }
  rep.agree = rep.condition_holds == rep.transported_verifies;
  return rep;
}

// -- commutative-image properties ---------------------------------------------------

struct CommutativeImageReport {
  bool commutative_image = false;
  bool untwistable = false;
  bool conormal_double = false;
  bool conormal_tensor = false;
  bool conormal_preserved = false;        // (1)
  bool tensor_normal = false;
  bool v_normal_and_b_central = false;
  bool tensor_normal_characterized = false;  // (3)
  bool double_normal = false;
  bool g_trivial_on_img_u = false;
  bool double_normal_characterized = false;  // (4)
  bool psi_conormal = false;                 // (5)
  bool all() const {
    return commutative_image && untwistable && conormal_preserved && tensor_normal_characterized &&
           double_normal_characterized && psi_conormal;
  }
};

inline CommutativeImageReport commutative_image_properties(const Mat& f, const Quadruple& q,
                                                           const DoubleContext& ctx) {
  CommutativeImageReport rep;
  const FinHopf& dbl = *ctx.dbl;
  Mat img = f.image();
  rep.commutative_image = true;
  for (int i = 0; i < img.cols() && rep.commutative_image; ++i)
    for (int j = i + 1; j < img.cols(); ++j)
      if (!FinHopf::svec_equal(dbl.product(img.col(i), img.col(j)), dbl.product(img.col(j), img.col(i)))) {
        rep.commutative_image = false;
        break;
      }
  TwistReport tw = twistability(f, q, ctx, ctx, TwistDirection::Untwist);
  rep.untwistable = tw.condition_holds && tw.transported_verifies;
  if (!rep.commutative_image || !rep.untwistable) return rep;

  HopfMap as_double = make_map(ctx.dbl, ctx.dbl, f);
  HopfMap as_tensor = make_map(ctx.tprod, ctx.tprod, f);
  rep.conormal_double = normality(as_double, NormalityKind::Conormal);
  rep.conormal_tensor = normality(as_tensor, NormalityKind::Conormal);
  rep.conormal_preserved = rep.conormal_double == rep.conormal_tensor;

  rep.tensor_normal = normality(as_tensor, NormalityKind::Normal);
  GroupHom v_hom{ctx.group, ctx.group, q.v};
  rep.v_normal_and_b_central = detail::b_central(q, ctx) && [&]() {
    for (int a = 0; a < ctx.group.n; ++a)
      for (int x = 0; x < ctx.group.n; ++x)
        if (v_hom.apply(ctx.group.conj(a, x)) != ctx.group.conj(a, v_hom.apply(x))) return false;
    return true;
  }();
  rep.tensor_normal_characterized = rep.tensor_normal == rep.v_normal_and_b_central;

  rep.double_normal = normality(as_double, NormalityKind::Normal);
  rep.g_trivial_on_img_u = true;
  for (int g = 0; g < ctx.group.n && rep.g_trivial_on_img_u; ++g)
    if (!(ctx.conj_du[static_cast<size_t>(g)] * q.u == q.u)) rep.g_trivial_on_img_u = false;
  rep.double_normal_characterized = rep.double_normal == (rep.tensor_normal && rep.g_trivial_on_img_u);

  rep.psi_conormal = rep.conormal_double;
  return rep;
}

// -- purely-non-abelian equivalences -------------------------------------------------

struct PnaReport {
  bool group_pna = false;
  bool group_algebra_pna = false;
  bool dual_pna = false;
  bool tensor_form_pna = false;
  bool double_pna = false;
  bool agree = false;
};

namespace detail {

inline bool factorization_has_abelian_factor(const TensorFactorization& tf) {
  for (const auto& f : tf.factors)
    if (f->is_commutative() && f->is_cocommutative()) return true;
  return false;
}

}  // namespace detail

inline PnaReport purely_non_abelian_equivalences(const FiniteGroup& g, int guard = 12) {
  if (g.n > guard) throw GuardExceededError("purely_non_abelian_equivalences: size guard exceeded");
  PnaReport rep;
  rep.group_pna = remak_decompose(g).purely_non_abelian;
  long ord = g.exponent();
  rep.group_algebra_pna = !detail::factorization_has_abelian_factor(krs_decompose(build_group_algebra(g, ord)));
  rep.dual_pna = !detail::factorization_has_abelian_factor(krs_decompose(build_dual_group_algebra(g, ord)));
  rep.tensor_form_pna = !detail::factorization_has_abelian_factor(krs_decompose(build_tensor_form(g, ord)));
  rep.double_pna = !detail::factorization_has_abelian_factor(krs_decompose(build_drinfeld_double(g, ord)));
  rep.agree = rep.group_pna == rep.group_algebra_pna && rep.group_pna == rep.dual_pna &&
              rep.group_pna == rep.tensor_form_pna && rep.group_pna == rep.double_pna;
  return rep;
}

// -- the block order formula ----------------------------------------------------------

struct BlockAutOrder {
  long aut_gamma_c = 0;       // |Aut(Gamma_C)|
  long zenthom_h_to_c = 0;    // |Zenthom(D(H), D(C))|
  long hom_gamma_c_to_z = 0;  // |Hom(Gamma_C, Z(Gamma_H))|
  long aut_double_h = 0;      // |Hopfaut(D(H))|, computed or supplied
  bool aut_double_h_from_oracle = false;
  long total = 0;
  bool zenthom_complete = false;       // the Zenthom(D(H),D(C)) enumeration is certified complete
  bool aut_double_h_complete = false;  // the Hopfaut(D(H)) enumeration is certified complete
  std::string notes;
};

struct BlockOptions {
  std::optional<long> oracle_aut_h;
  int guard = 12;
  int gamma_guard = 36;  // Gamma_C can be |C|^2
  int jobs = 1;
};

inline BlockAutOrder block_aut_order(const FiniteGroup& c, const FiniteGroup& h, const BlockOptions& opt = {}) {
  if (!c.is_abelian()) throw std::invalid_argument("block_aut_order: C must be abelian");
  if (!remak_decompose(h).purely_non_abelian)
    throw std::invalid_argument("block_aut_order: H must be purely non-abelian");
  BlockAutOrder out;
  FiniteGroup gamma_c = gamma_group(c);
  out.aut_gamma_c =
      static_cast<long>(enumerate_homs(gamma_c, gamma_c, HomFilter::Isomorphisms, opt.gamma_guard).size());
  DoubleEnumOptions de;
  de.guard = opt.guard;
  de.jobs = opt.jobs;
  ZenthomDoublesReport z = zenthom_doubles(h, c, de);
  out.zenthom_h_to_c = static_cast<long>(z.enumeration.elements.size());
  out.zenthom_complete = z.enumeration.complete;
  out.notes = z.enumeration.completeness_reason;
  FiniteGroup gamma_h = gamma_group(h);
  SubgroupView zc = subgroup_as_group(gamma_h, center_mask(gamma_h));
  out.hom_gamma_c_to_z =
      static_cast<long>(enumerate_homs(gamma_c, zc.group, HomFilter::All, opt.gamma_guard).size());
  if (opt.oracle_aut_h) {
    out.aut_double_h = *opt.oracle_aut_h;
    out.aut_double_h_from_oracle = true;
    out.aut_double_h_complete = true;  // supplied as an oracle value
  } else {
    EnumerationReport auts = enumerate_double_auts(h, de);
    out.aut_double_h = static_cast<long>(auts.elements.size());
    out.aut_double_h_complete = auts.complete;
    if (!auts.complete) out.notes += "; aut count: " + auts.completeness_reason;
  }
  out.total = out.aut_gamma_c * out.zenthom_h_to_c * out.hom_gamma_c_to_z * out.aut_double_h;
  return out;
}

// |Hopfaut(D(D_{2n}))| = 2^5 * 3 * n * phi(n/2), valid for n = 2 mod 4, n > 2
inline long dihedral_aut_order(long n) {
  if (n % 4 != 2 || n <= 2)
    throw std::invalid_argument("dihedral_aut_order: requires n = 2 (mod 4) and n > 2");
  return 32L * 3L * n * euler_phi(n / 2);
}

}  // namespace hopfkit
