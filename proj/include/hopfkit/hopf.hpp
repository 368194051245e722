#pragma once

// Finite-dimensional Hopf algebras as exact structure tensors over Q(zeta_N),
// in the symmetric category of vector spaces (the braiding is always the
// plain swap).  Axiom and morphism verification stream over the sparse
// columns of the tensors, so dimension-144 doubles stay cheap; nothing of
// size dim^3 is ever materialized.

#include "hopfkit/group.hpp"
#include "hopfkit/matrix.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace hopfkit {

struct FinHopf;
using HopfPtr = std::shared_ptr<const FinHopf>;

struct HopfOrigin {
  enum class Kind { GroupAlgebra, DualGroupAlgebra, Double, TensorProduct, Generic };
  Kind kind = Kind::Generic;
  std::optional<FiniteGroup> group;  // for the first three kinds
  std::vector<HopfPtr> factors;      // for TensorProduct (flattened)
};

struct FinHopf {
  int dim = 1;
  long order = 1;
  Mat mult;      // dim x dim^2
  Mat unit;      // dim x 1
  Mat comult;    // dim^2 x dim
  Mat counit;    // 1 x dim
  Mat antipode;  // dim x dim
  HopfOrigin origin;
  std::vector<std::string> basis_labels;
  std::string name = "hopf";

  const SVec& mult_pair(int i, int j) const { return mult.col(i * dim + j); }

  SVec product(const SVec& u, const SVec& v) const {
    SVec acc;
    for (const auto& eu : u)
      for (const auto& ev : v) {
        Cyc c = eu.val * ev.val;
        if (!c.is_zero()) acc = svec_axpy(acc, c, mult_pair(eu.row, ev.row));
      }
    return acc;
  }

  SVec unit_vec() const { return unit.col(0); }

  Cyc counit_at(int i) const { return svec_at(counit.col(i), 0); }

  Cyc counit_of(const SVec& v) const {
    Cyc acc = Cyc::zero(order);
    for (const auto& e : v) acc += e.val * counit_at(e.row);
    return acc;
  }

  bool is_commutative() const {
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j)
        if (!svec_equal(mult_pair(i, j), mult_pair(j, i))) return false;
    return true;
  }

  bool is_cocommutative() const {
    Mat sw = swap_map(dim, dim, order);
    return sw * comult == comult;
  }

  static bool svec_equal(const SVec& a, const SVec& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i].row != b[i].row || !(a[i].val == b[i].val)) return false;
    return true;
  }
};

inline SVec basis_vec(int i, long order) { return SVec{{i, Cyc::one(order)}}; }

// -- structural composites (never materialize dim^3 objects) -----------------

// nabla . (f (x) g), one column per domain pair
inline Mat mult_compose_pair(const FinHopf& h, const Mat& f, const Mat& g) {
  Mat out(h.dim, f.cols() * g.cols(), lcm_long(h.order, lcm_long(f.order(), g.order())));
  for (int i = 0; i < f.cols(); ++i)
    for (int j = 0; j < g.cols(); ++j)
      out.col_mutable(i * g.cols() + j) = h.product(f.col(i), g.col(j));
  return out;
}

// (f (x) g) . Delta, one column per domain basis vector
inline Mat comult_compose_pair(const FinHopf& h, const Mat& f, const Mat& g) {
  Mat out(f.rows() * g.rows(), h.dim, lcm_long(h.order, lcm_long(f.order(), g.order())));
  for (int i = 0; i < h.dim; ++i) {
    SVec acc;
    for (const auto& e : h.comult.col(i)) {
      int a = e.row / h.dim, b = e.row % h.dim;
      SVec term;
      for (const auto& ef : f.col(a))
        for (const auto& eg : g.col(b)) {
          Cyc c = ef.val * eg.val;
          if (!c.is_zero()) term.push_back({ef.row * g.rows() + eg.row, std::move(c)});
        }
      std::sort(term.begin(), term.end(), [](const Entry& x, const Entry& y) { return x.row < y.row; });
      acc = svec_axpy(acc, e.val, term);
    }
    out.col_mutable(i) = std::move(acc);
  }
  return out;
}

// nabla^(k-1) . (m_1 (x) ... (x) m_k)
inline Mat mult_fold(const FinHopf& h, const std::vector<Mat>& maps) {
  if (maps.empty()) return h.unit;
  Mat acc = maps[0];
  for (size_t i = 1; i < maps.size(); ++i) acc = mult_compose_pair(h, acc, maps[i]);
  return acc;
}

// (m_1 (x) ... (x) m_k) . Delta^(k-1)
inline Mat comult_fold(const FinHopf& h, const std::vector<Mat>& maps) {
  if (maps.empty()) return h.counit;
  Mat acc = maps.back();
  for (size_t i = maps.size() - 1; i-- > 0;) acc = comult_compose_pair(h, maps[i], acc);
  return acc;
}

// -- builders ----------------------------------------------------------------

inline HopfPtr build_group_algebra(const FiniteGroup& g, long order = 0) {
  if (order == 0) order = g.exponent();
  auto h = std::make_shared<FinHopf>();
  h->dim = g.n;
  h->order = order;
  h->mult = Mat(g.n, g.n * g.n, order);
  h->unit = Mat(g.n, 1, order);
  h->comult = Mat(g.n * g.n, g.n, order);
  h->counit = Mat(1, g.n, order);
  h->antipode = Mat(g.n, g.n, order);
  Cyc one = Cyc::one(order);
  for (int a = 0; a < g.n; ++a) {
    for (int b = 0; b < g.n; ++b) h->mult.set(g.mul(a, b), a * g.n + b, one);
    h->comult.set(a * g.n + a, a, one);
    h->counit.set(0, a, one);
    h->antipode.set(g.inv[static_cast<size_t>(a)], a, one);
  }
  h->unit.set(g.identity, 0, one);
  h->origin = {HopfOrigin::Kind::GroupAlgebra, g, {}};
  h->basis_labels = g.labels;
  h->name = "group:" + g.name;
  return h;
}

inline HopfPtr build_dual_group_algebra(const FiniteGroup& g, long order = 0) {
  if (order == 0) order = g.exponent();
  auto h = std::make_shared<FinHopf>();
  h->dim = g.n;
  h->order = order;
  h->mult = Mat(g.n, g.n * g.n, order);
  h->unit = Mat(g.n, 1, order);
  h->comult = Mat(g.n * g.n, g.n, order);
  h->counit = Mat(1, g.n, order);
  h->antipode = Mat(g.n, g.n, order);
  Cyc one = Cyc::one(order);
  for (int a = 0; a < g.n; ++a) {
    h->mult.set(a, a * g.n + a, one);
    h->unit.set(a, 0, one);
    // Delta(delta_a) = sum_{xy=a} delta_x (x) delta_y
    for (int x = 0; x < g.n; ++x) {
      for (int y = 0; y < g.n; ++y)
        if (g.mul(x, y) == a) h->comult.set(x * g.n + y, a, one);
    }
    h->antipode.set(g.inv[static_cast<size_t>(a)], a, one);
  }
  h->counit.set(0, g.identity, one);
  h->origin = {HopfOrigin::Kind::DualGroupAlgebra, g, {}};
  h->basis_labels.resize(static_cast<size_t>(g.n));
  for (int a = 0; a < g.n; ++a) h->basis_labels[static_cast<size_t>(a)] = "d(" + g.labels[static_cast<size_t>(a)] + ")";
  h->name = "dual:" + g.name;
  return h;
}

inline HopfPtr dualize(const HopfPtr& h) {
  auto d = std::make_shared<FinHopf>();
  d->dim = h->dim;
  d->order = h->order;
  d->mult = h->comult.transpose();
  d->unit = h->counit.transpose();
  d->comult = h->mult.transpose();
  d->counit = h->unit.transpose();
  d->antipode = h->antipode.transpose();
  switch (h->origin.kind) {
    case HopfOrigin::Kind::GroupAlgebra:
      d->origin = {HopfOrigin::Kind::DualGroupAlgebra, h->origin.group, {}};
      break;
    case HopfOrigin::Kind::DualGroupAlgebra:
      d->origin = {HopfOrigin::Kind::GroupAlgebra, h->origin.group, {}};
      break;
    case HopfOrigin::Kind::TensorProduct: {
      d->origin.kind = HopfOrigin::Kind::TensorProduct;
      for (const auto& f : h->origin.factors) d->origin.factors.push_back(dualize(f));
      break;
    }
    default:
      d->origin = {HopfOrigin::Kind::Generic, std::nullopt, {}};
  }
  d->basis_labels.resize(static_cast<size_t>(h->dim));
  for (int i = 0; i < h->dim; ++i) d->basis_labels[static_cast<size_t>(i)] = h->basis_labels[static_cast<size_t>(i)] + "*";
  d->name = "dualof:" + h->name;
  return d;
}

inline HopfPtr tensor_hopf(const HopfPtr& a, const HopfPtr& b) {
  long order = lcm_long(a->order, b->order);
  auto t = std::make_shared<FinHopf>();
  const int da = a->dim, db = b->dim, d = da * db;
  t->dim = d;
  t->order = order;
  t->mult = Mat(d, d * d, order);
  t->unit = Mat::kron(a->unit, b->unit).lifted_to(order);
  t->comult = Mat(d * d, d, order);
  t->counit = Mat::kron(a->counit, b->counit).lifted_to(order);
  t->antipode = Mat::kron(a->antipode, b->antipode).lifted_to(order);
  // mult: (x1 (x) y1)(x2 (x) y2) = x1x2 (x) y1y2 (the middle swap is the plain one)
  for (int x1 = 0; x1 < da; ++x1)
    for (int y1 = 0; y1 < db; ++y1)
      for (int x2 = 0; x2 < da; ++x2)
        for (int y2 = 0; y2 < db; ++y2) {
          int colidx = (x1 * db + y1) * d + (x2 * db + y2);
          SVec& col = t->mult.col_mutable(colidx);
          for (const auto& ea : a->mult_pair(x1, x2))
            for (const auto& eb : b->mult_pair(y1, y2)) {
              Cyc c = ea.val * eb.val;
              if (!c.is_zero()) col.push_back({ea.row * db + eb.row, std::move(c)});
            }
          std::sort(col.begin(), col.end(), [](const Entry& x, const Entry& y) { return x.row < y.row; });
        }
  // comult: interleave legs
  for (int x = 0; x < da; ++x)
    for (int y = 0; y < db; ++y) {
      SVec& col = t->comult.col_mutable(x * db + y);
      for (const auto& ea : a->comult.col(x)) {
        int a1 = ea.row / da, a2 = ea.row % da;
        for (const auto& eb : b->comult.col(y)) {
          int b1 = eb.row / db, b2 = eb.row % db;
          Cyc c = ea.val * eb.val;
          if (!c.is_zero()) col.push_back({(a1 * db + b1) * d + (a2 * db + b2), std::move(c)});
        }
      }
      std::sort(col.begin(), col.end(), [](const Entry& x2, const Entry& y2) { return x2.row < y2.row; });
    }
  t->origin.kind = HopfOrigin::Kind::TensorProduct;
  auto push_factors = [&](const HopfPtr& p) {
    if (p->origin.kind == HopfOrigin::Kind::TensorProduct)
      for (const auto& f : p->origin.factors) t->origin.factors.push_back(f);
    else
      t->origin.factors.push_back(p);
  };
  push_factors(a);
  push_factors(b);
  t->basis_labels.resize(static_cast<size_t>(d));
  for (int x = 0; x < da; ++x)
    for (int y = 0; y < db; ++y)
      t->basis_labels[static_cast<size_t>(x * db + y)] =
          a->basis_labels[static_cast<size_t>(x)] + "|" + b->basis_labels[static_cast<size_t>(y)];
  t->name = "tensor:(" + a->name + "," + b->name + ")";
  return t;
}

// Drinfeld double D(G): basis delta_g # h indexed g*|G| + h, pointwise
// du(G)-part with G acting by conjugation.
inline HopfPtr build_drinfeld_double(const FiniteGroup& g, long order = 0) {
  if (order == 0) order = g.exponent();
  const int n = g.n;
  const int d = n * n;
  auto h = std::make_shared<FinHopf>();
  h->dim = d;
  h->order = order;
  h->mult = Mat(d, d * d, order);
  h->unit = Mat(d, 1, order);
  h->comult = Mat(d * d, d, order);
  h->counit = Mat(1, d, order);
  h->antipode = Mat(d, d, order);
  Cyc one = Cyc::one(order);
  auto idx = [n](int gg, int hh) { return gg * n + hh; };
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < n; ++x) {
      int col = idx(a, x);
      // (delta_a # x)(delta_b # y) = [a = x b x^-1] delta_a # xy
      for (int b = 0; b < n; ++b) {
        if (g.conj(x, b) != a) continue;
        for (int y = 0; y < n; ++y)
          h->mult.col_mutable(static_cast<size_t>(col) * d + idx(b, y)).push_back({idx(a, g.mul(x, y)), one});
      }
      // Delta(delta_a # x) = sum_{uv=a} (delta_u # x)(x)(delta_v # x)
      SVec& cocol = h->comult.col_mutable(col);
      for (int u = 0; u < n; ++u) {
        int v = g.mul(g.inv[static_cast<size_t>(u)], a);
        cocol.push_back({idx(u, x) * d + idx(v, x), one});
      }
      std::sort(cocol.begin(), cocol.end(), [](const Entry& p, const Entry& q) { return p.row < q.row; });
      if (a == g.identity) h->counit.set(0, col, one);
      h->antipode.set(idx(g.conj(g.inv[static_cast<size_t>(x)], g.inv[static_cast<size_t>(a)]), g.inv[static_cast<size_t>(x)]), col, one);
    }
  for (int a = 0; a < n; ++a) h->unit.set(idx(a, g.identity), 0, one);
  // mult columns were appended in row order already (single entries); sort defensively
  for (int c = 0; c < d * d; ++c) {
    SVec& col = h->mult.col_mutable(c);
    std::sort(col.begin(), col.end(), [](const Entry& p, const Entry& q) { return p.row < q.row; });
  }
  h->origin = {HopfOrigin::Kind::Double, g, {}};
  h->basis_labels.resize(static_cast<size_t>(d));
  for (int a = 0; a < n; ++a)
    for (int x = 0; x < n; ++x)
      h->basis_labels[static_cast<size_t>(idx(a, x))] =
          "d(" + g.labels[static_cast<size_t>(a)] + ")#" + g.labels[static_cast<size_t>(x)];
  h->name = "double:" + g.name;
  return h;
}

// du(G) (x) kG with the plain tensor algebra structure; same coalgebra (and
// basis indexing) as the double.
inline HopfPtr build_tensor_form(const FiniteGroup& g, long order = 0) {
  if (order == 0) order = g.exponent();
  auto t = tensor_hopf(build_dual_group_algebra(g, order), build_group_algebra(g, order));
  auto h = std::make_shared<FinHopf>(*t);
  h->name = "tensorform:" + g.name;
  return h;
}

// -- axiom verification ------------------------------------------------------

struct AxiomReport {
  bool associative = false;
  bool unital = false;
  bool coassociative = false;
  bool counital = false;
  bool comult_is_algebra_map = false;
  bool counit_is_algebra_map = false;
  bool antipode_left = false;
  bool antipode_right = false;

  bool all_ok() const {
    return associative && unital && coassociative && counital && comult_is_algebra_map &&
           counit_is_algebra_map && antipode_left && antipode_right;
  }
};

inline AxiomReport verify_hopf_axioms(const FinHopf& h) {
  AxiomReport rep;
  const int d = h.dim;
  using Key = long long;
  auto expand_pairs = [&](const SVec& v, std::map<Key, Cyc>& into, const Cyc& scale) {
    for (const auto& e : v) {
      Cyc c = e.val * scale;
      if (c.is_zero()) continue;
      auto [it, fresh] = into.emplace(e.row, c);
      if (!fresh) it->second += c;
    }
  };
  auto map_is_zero = [](const std::map<Key, Cyc>& m) {
    for (const auto& [k, v] : m)
      if (!v.is_zero()) return false;
    return true;
  };

  // associativity
  rep.associative = true;
  for (int i = 0; i < d && rep.associative; ++i)
    for (int j = 0; j < d && rep.associative; ++j) {
      const SVec& w = h.mult_pair(i, j);
      for (int k = 0; k < d; ++k) {
        SVec lhs;
        for (const auto& e : w) lhs = svec_axpy(lhs, e.val, h.mult_pair(e.row, k));
        SVec rhs;
        for (const auto& e : h.mult_pair(j, k)) rhs = svec_axpy(rhs, e.val, h.mult_pair(i, e.row));
        if (!FinHopf::svec_equal(lhs, rhs)) {
          rep.associative = false;
          break;
        }
      }
    }

  // unit laws
  rep.unital = true;
  SVec one = h.unit_vec();
  for (int i = 0; i < d && rep.unital; ++i) {
    SVec left, right;
    for (const auto& e : one) {
      left = svec_axpy(left, e.val, h.mult_pair(e.row, i));
      right = svec_axpy(right, e.val, h.mult_pair(i, e.row));
    }
    rep.unital = FinHopf::svec_equal(left, basis_vec(i, h.order)) &&
                 FinHopf::svec_equal(right, basis_vec(i, h.order));
  }

  // coassociativity
  rep.coassociative = true;
  for (int i = 0; i < d && rep.coassociative; ++i) {
    std::map<Key, Cyc> l2, r2;  // triple-index keyed expansions of both sides
    for (const auto& e : h.comult.col(i)) {
      int a = e.row / d, b = e.row % d;
      for (const auto& f : h.comult.col(a)) {
        int a1 = f.row / d, a2 = f.row % d;
        Cyc c = e.val * f.val;
        Key key = (static_cast<Key>(a1) * d + a2) * d + b;
        auto [it, fresh] = l2.emplace(key, c);
        if (!fresh) it->second += c;
      }
      for (const auto& f : h.comult.col(b)) {
        int b1 = f.row / d, b2 = f.row % d;
        Cyc c = e.val * f.val;
        Key key = (static_cast<Key>(a) * d + b1) * d + b2;
        auto [it, fresh] = r2.emplace(key, c);
        if (!fresh) it->second += c;
      }
    }
    for (const auto& [k, v] : r2) {
      auto it = l2.find(k);
      if (it == l2.end())
        l2.emplace(k, -v);
      else
        it->second -= v;
    }
    rep.coassociative = map_is_zero(l2);
  }

  // counit laws
  rep.counital = true;
  for (int i = 0; i < d && rep.counital; ++i) {
    SVec left, right;
    for (const auto& e : h.comult.col(i)) {
      int a = e.row / d, b = e.row % d;
      Cyc ca = e.val * h.counit_at(a);
      if (!ca.is_zero()) left = svec_axpy(left, ca, basis_vec(b, h.order));
      Cyc cb = e.val * h.counit_at(b);
      if (!cb.is_zero()) right = svec_axpy(right, cb, basis_vec(a, h.order));
    }
    rep.counital = FinHopf::svec_equal(left, basis_vec(i, h.order)) &&
                   FinHopf::svec_equal(right, basis_vec(i, h.order));
  }

  // Delta is an algebra morphism into the tensor-square algebra, and Delta(1) = 1(x)1
  rep.comult_is_algebra_map = true;
  {
    std::map<Key, Cyc> lhs;
    for (const auto& e : one)
      for (const auto& f : h.comult.col(e.row)) {
        Cyc c = e.val * f.val;
        auto [it, fresh] = lhs.emplace(f.row, c);
        if (!fresh) it->second += c;
      }
    for (const auto& ea : one)
      for (const auto& eb : one) {
        Cyc c = -(ea.val * eb.val);
        Key key = static_cast<Key>(ea.row) * d + eb.row;
        auto [it, fresh] = lhs.emplace(key, c);
        if (!fresh) it->second += c;
      }
    rep.comult_is_algebra_map = map_is_zero(lhs);
  }
  for (int i = 0; i < d && rep.comult_is_algebra_map; ++i)
    for (int j = 0; j < d && rep.comult_is_algebra_map; ++j) {
      std::map<Key, Cyc> diff;
      for (const auto& e : h.mult_pair(i, j))
        for (const auto& f : h.comult.col(e.row)) {
          Cyc c = e.val * f.val;
          auto [it, fresh] = diff.emplace(f.row, c);
          if (!fresh) it->second += c;
        }
      for (const auto& ei : h.comult.col(i)) {
        int a1 = ei.row / d, a2 = ei.row % d;
        for (const auto& ej : h.comult.col(j)) {
          int b1 = ej.row / d, b2 = ej.row % d;
          Cyc scale = ei.val * ej.val;
          for (const auto& p : h.mult_pair(a1, b1))
            for (const auto& q : h.mult_pair(a2, b2)) {
              Cyc c = -(scale * p.val * q.val);
              Key key = static_cast<Key>(p.row) * d + q.row;
              auto [it, fresh] = diff.emplace(key, c);
              if (!fresh) it->second += c;
            }
        }
      }
      rep.comult_is_algebra_map = map_is_zero(diff);
    }

  // counit is an algebra morphism
  rep.counit_is_algebra_map = h.counit_of(one).is_one();
  for (int i = 0; i < d && rep.counit_is_algebra_map; ++i)
    for (int j = 0; j < d; ++j) {
      if (!(h.counit_of(h.mult_pair(i, j)) == h.counit_at(i) * h.counit_at(j))) {
        rep.counit_is_algebra_map = false;
        break;
      }
    }

  // antipode axioms
  rep.antipode_left = rep.antipode_right = true;
  for (int i = 0; i < d && (rep.antipode_left || rep.antipode_right); ++i) {
    SVec left, right;
    for (const auto& e : h.comult.col(i)) {
      int a = e.row / d, b = e.row % d;
      left = svec_axpy(left, e.val, h.product(h.antipode.col(a), basis_vec(b, h.order)));
      right = svec_axpy(right, e.val, h.product(basis_vec(a, h.order), h.antipode.col(b)));
    }
    SVec expected = svec_scaled(one, h.counit_at(i));
    if (!FinHopf::svec_equal(left, expected)) rep.antipode_left = false;
    if (!FinHopf::svec_equal(right, expected)) rep.antipode_right = false;
    if (!rep.antipode_left && !rep.antipode_right) break;
  }
  return rep;
}

// -- morphisms ----------------------------------------------------------------

struct MorphismFlags {
  bool is_unital = false;
  bool is_counital = false;
  bool is_algebra = false;
  bool is_coalgebra = false;
  bool is_hopf = false;
};

struct HopfMap {
  HopfPtr dom, cod;
  Mat mat;
  std::optional<MorphismFlags> cached_flags;
};

inline HopfMap make_map(HopfPtr dom, HopfPtr cod, Mat m) {
  if (m.rows() != cod->dim || m.cols() != dom->dim) throw std::invalid_argument("make_map: dimension mismatch");
  return {std::move(dom), std::move(cod), std::move(m), std::nullopt};
}

inline HopfMap identity_map(const HopfPtr& h) { return make_map(h, h, Mat::identity(h->dim, h->order)); }

// eta . epsilon, the convolution unit
inline HopfMap trivial_map(const HopfPtr& dom, const HopfPtr& cod) {
  return make_map(dom, cod, cod->unit * dom->counit);
}

inline HopfMap compose(const HopfMap& second, const HopfMap& first) {
  if (second.dom->dim != first.cod->dim) throw std::invalid_argument("compose: dimension mismatch");
  return make_map(first.dom, second.cod, second.mat * first.mat);
}

inline MorphismFlags morphism_check(const HopfMap& f) {
  const FinHopf& h = *f.dom;
  const FinHopf& k = *f.cod;
  MorphismFlags flags;
  flags.is_unital = FinHopf::svec_equal(f.mat.apply(h.unit_vec()), k.unit_vec());
  flags.is_counital = true;
  for (int i = 0; i < h.dim; ++i)
    if (!(k.counit_of(f.mat.col(i)) == h.counit_at(i))) {
      flags.is_counital = false;
      break;
    }

  flags.is_algebra = flags.is_unital;
  for (int i = 0; i < h.dim && flags.is_algebra; ++i)
    for (int j = 0; j < h.dim; ++j) {
      SVec lhs = f.mat.apply(h.mult_pair(i, j));
      SVec rhs = k.product(f.mat.col(i), f.mat.col(j));
      if (!FinHopf::svec_equal(lhs, rhs)) {
        flags.is_algebra = false;
        break;
      }
    }

  flags.is_coalgebra = flags.is_counital;
  using Key = long long;
  for (int i = 0; i < h.dim && flags.is_coalgebra; ++i) {
    std::map<Key, Cyc> diff;
    for (const auto& e : f.mat.col(i))
      for (const auto& g : k.comult.col(e.row)) {
        Cyc c = e.val * g.val;
        auto [it, fresh] = diff.emplace(g.row, c);
        if (!fresh) it->second += c;
      }
    for (const auto& e : h.comult.col(i)) {
      int a = e.row / h.dim, b = e.row % h.dim;
      for (const auto& p : f.mat.col(a))
        for (const auto& q : f.mat.col(b)) {
          Cyc c = -(e.val * p.val * q.val);
          Key key = static_cast<Key>(p.row) * k.dim + q.row;
          auto [it, fresh] = diff.emplace(key, c);
          if (!fresh) it->second += c;
        }
    }
    for (const auto& [key, v] : diff)
      if (!v.is_zero()) {
        flags.is_coalgebra = false;
        break;
      }
  }
  flags.is_hopf = flags.is_algebra && flags.is_coalgebra;
  return flags;
}

inline const MorphismFlags& ensure_flags(HopfMap& f) {
  if (!f.cached_flags) f.cached_flags = morphism_check(f);
  return *f.cached_flags;
}

inline bool antipode_compatible(const HopfMap& f) {
  return f.mat * f.dom->antipode == f.cod->antipode * f.mat;
}

// f * g = nabla (f (x) g) Delta
inline HopfMap convolution(const HopfMap& f, const HopfMap& g) {
  if (f.dom->dim != g.dom->dim || f.cod->dim != g.cod->dim)
    throw std::invalid_argument("convolution: maps must share domain and codomain");
  const FinHopf& h = *f.dom;
  const FinHopf& k = *f.cod;
  Mat out(k.dim, h.dim, lcm_long(k.order, lcm_long(f.mat.order(), g.mat.order())));
  for (int i = 0; i < h.dim; ++i) {
    SVec acc;
    for (const auto& e : h.comult.col(i)) {
      int a = e.row / h.dim, b = e.row % h.dim;
      acc = svec_axpy(acc, e.val, k.product(f.mat.col(a), g.mat.col(b)));
    }
    out.col_mutable(i) = std::move(acc);
  }
  return make_map(f.dom, f.cod, std::move(out));
}

// convolution power f^(*n); n = 0 gives the convolution unit
inline HopfMap convolution_power(const HopfMap& f, int n) {
  HopfMap acc = trivial_map(f.dom, f.cod);
  for (int i = 0; i < n; ++i) acc = convolution(acc, f);
  return acc;
}

// f and g multiplication-commute: their images commute elementwise
inline bool comm_check(const HopfMap& f, const HopfMap& g) {
  if (f.cod->dim != g.cod->dim) throw std::invalid_argument("comm_check: codomain mismatch");
  const FinHopf& a = *f.cod;
  for (int i = 0; i < f.dom->dim; ++i)
    for (int j = 0; j < g.dom->dim; ++j) {
      if (!FinHopf::svec_equal(a.product(f.mat.col(i), g.mat.col(j)),
                               a.product(g.mat.col(j), f.mat.col(i))))
        return false;
    }
  return true;
}

// f and g comultiplication-commute
inline bool cocomm_check(const HopfMap& f, const HopfMap& g) {
  if (f.dom->dim != g.dom->dim) throw std::invalid_argument("cocomm_check: domain mismatch");
  const FinHopf& c = *f.dom;
  using Key = long long;
  for (int i = 0; i < c.dim; ++i) {
    std::map<Key, Cyc> diff;
    for (const auto& e : c.comult.col(i)) {
      int a = e.row / c.dim, b = e.row % c.dim;
      for (const auto& p : f.mat.col(a))
        for (const auto& q : g.mat.col(b)) {
          Cyc v = e.val * p.val * q.val;
          Key key = static_cast<Key>(p.row) * g.cod->dim + q.row;
          auto [it, fresh] = diff.emplace(key, v);
          if (!fresh) it->second += v;
        }
      for (const auto& p : f.mat.col(b))
        for (const auto& q : g.mat.col(a)) {
          Cyc v = -(e.val * p.val * q.val);
          Key key = static_cast<Key>(p.row) * g.cod->dim + q.row;
          auto [it, fresh] = diff.emplace(key, v);
          if (!fresh) it->second += v;
        }
    }
    for (const auto& [key, v] : diff)
      if (!v.is_zero()) return false;
  }
  return true;
}

inline bool bicommute(const HopfMap& f, const HopfMap& g) {
  return comm_check(f, g) && comm_check(g, f) && cocomm_check(f, g) && cocomm_check(g, f);
}

// -- adjoint action / normality ----------------------------------------------

// ad: H (x) H -> H, h (x) x -> h1 x S(h2)
inline Mat adjoint_action(const FinHopf& h) {
  Mat out(h.dim, h.dim * h.dim, h.order);
  for (int i = 0; i < h.dim; ++i)
    for (int j = 0; j < h.dim; ++j) {
      SVec acc;
      for (const auto& e : h.comult.col(i)) {
        int a = e.row / h.dim, b = e.row % h.dim;
        acc = svec_axpy(acc, e.val,
                        h.product(h.product(basis_vec(a, h.order), basis_vec(j, h.order)), h.antipode.col(b)));
      }
      out.col_mutable(i * h.dim + j) = std::move(acc);
    }
  return out;
}

// coad: H -> H (x) H, x -> x1 S(x3) (x) x2
inline Mat coadjoint_coaction(const FinHopf& h) {
  Mat out(h.dim * h.dim, h.dim, h.order);
  for (int i = 0; i < h.dim; ++i) {
    SVec acc;
    for (const auto& e : h.comult.col(i)) {
      int x1 = e.row / h.dim, rest = e.row % h.dim;
      for (const auto& f : h.comult.col(rest)) {
        int x2 = f.row / h.dim, x3 = f.row % h.dim;
        Cyc scale = e.val * f.val;
        SVec prod = h.product(basis_vec(x1, h.order), h.antipode.col(x3));
        for (const auto& p : prod) {
          Cyc v = scale * p.val;
          if (!v.is_zero()) acc = svec_axpy(acc, v, basis_vec(p.row * h.dim + x2, h.order));
        }
      }
    }
    out.col_mutable(i) = std::move(acc);
  }
  return out;
}

enum class NormalityKind { Normal, Conormal, Binormal };

inline bool same_hopf(const FinHopf& a, const FinHopf& b) {
  if (&a == &b) return true;
  return a.dim == b.dim && a.mult == b.mult && a.comult == b.comult && a.unit == b.unit &&
         a.counit == b.counit && a.antipode == b.antipode;
}

inline bool normality(const HopfMap& f, NormalityKind kind) {
  if (f.dom->dim != f.cod->dim || !same_hopf(*f.dom, *f.cod))
    throw std::invalid_argument("normality: endomorphism required");
  const FinHopf& h = *f.dom;
  if (kind == NormalityKind::Normal || kind == NormalityKind::Binormal) {
    Mat ad = adjoint_action(h);
    for (int i = 0; i < h.dim; ++i)
      for (int j = 0; j < h.dim; ++j) {
        SVec lhs = f.mat.apply(ad.col(i * h.dim + j));
        SVec rhs;
        for (const auto& e : f.mat.col(j)) rhs = svec_axpy(rhs, e.val, ad.col(i * h.dim + e.row));
        if (!FinHopf::svec_equal(lhs, rhs)) return false;
      }
    if (kind == NormalityKind::Normal) return true;
  }
  // conormal: coad . f == (id (x) f) . coad
  Mat coad = coadjoint_coaction(h);
  for (int i = 0; i < h.dim; ++i) {
    SVec lhs = coad.apply(f.mat.col(i));
    SVec rhs;
    for (const auto& e : coad.col(i)) {
      int a = e.row / h.dim, b = e.row % h.dim;
      for (const auto& p : f.mat.col(b)) {
        Cyc v = e.val * p.val;
        if (!v.is_zero()) rhs = svec_axpy(rhs, v, basis_vec(a * h.dim + p.row, h.order));
      }
    }
    if (!FinHopf::svec_equal(lhs, rhs)) return false;
  }
  return true;
}

// -- coinvariants and invariant quotients -------------------------------------

enum class Side { Left, Right };

struct SubobjectBasis {
  HopfPtr ambient;
  Mat basis;  // canonical echelon columns
  std::string kind;
};

// left:  kernel of (f (x) id)Delta - eta (x) id
// right: kernel of (id (x) f)Delta - id (x) eta
inline SubobjectBasis coinvariants(const HopfMap& f, Side side) {
  const FinHopf& h = *f.dom;
  const FinHopf& g = *f.cod;
  Mat m(side == Side::Left ? g.dim * h.dim : h.dim * g.dim, h.dim,
        lcm_long(h.order, lcm_long(g.order, f.mat.order())));
  SVec gunit = g.unit_vec();
  for (int i = 0; i < h.dim; ++i) {
    SVec acc;
    for (const auto& e : h.comult.col(i)) {
      int a = e.row / h.dim, b = e.row % h.dim;
      if (side == Side::Left) {
        for (const auto& p : f.mat.col(a)) {
          Cyc v = e.val * p.val;
          if (!v.is_zero()) acc = svec_axpy(acc, v, basis_vec(p.row * h.dim + b, m.order()));
        }
      } else {
        for (const auto& p : f.mat.col(b)) {
          Cyc v = e.val * p.val;
          if (!v.is_zero()) acc = svec_axpy(acc, v, basis_vec(a * g.dim + p.row, m.order()));
        }
      }
    }
    for (const auto& u : gunit) {
      int row = side == Side::Left ? u.row * h.dim + i : i * g.dim + u.row;
      acc = svec_axpy(acc, -u.val, basis_vec(row, m.order()));
    }
    m.col_mutable(i) = std::move(acc);
  }
  SubobjectBasis sb;
  sb.ambient = f.dom;
  sb.basis = m.kernel();
  sb.kind = side == Side::Left ? "coinvariant-left" : "coinvariant-right";
  return sb;
}

// the subspace contains 1 and is closed under multiplication
inline bool is_unital_subalgebra(const FinHopf& h, const Mat& basis) {
  Mat unit(h.dim, 1, h.order);
  unit.col_mutable(0) = h.unit_vec();
  if (!basis.solve(unit)) return false;
  Mat prods = mult_compose_pair(h, basis, basis);
  return basis.solve(prods).has_value();
}

struct QuotientData {
  HopfPtr ambient;           // the algebra being divided (the codomain of f)
  Mat relations;             // canonical basis of the subspace divided out
  int dim = 0;               // quotient dimension
  Mat proj;                  // ambient -> quotient coordinates
  Mat section;               // quotient -> ambient (complement from echelon pivots)
};

// left (H\G): coker of nabla(f (x) id) - eps (x) id; right (G/H) symmetric
inline QuotientData invariant_quotient(const HopfMap& f, Side side) {
  const FinHopf& h = *f.dom;
  const FinHopf& g = *f.cod;
  long ord = lcm_long(h.order, lcm_long(g.order, f.mat.order()));
  Mat delta(g.dim, h.dim * g.dim, ord);
  for (int i = 0; i < h.dim; ++i)
    for (int j = 0; j < g.dim; ++j) {
      SVec acc;
      if (side == Side::Left)
        acc = g.product(f.mat.col(i), basis_vec(j, ord));
      else
        acc = g.product(basis_vec(j, ord), f.mat.col(i));
      acc = svec_axpy(acc, -h.counit_at(i), basis_vec(j, ord));
      int colidx = side == Side::Left ? i * g.dim + j : j * h.dim + i;
      delta.col_mutable(colidx) = std::move(acc);
    }
  QuotientData q;
  q.ambient = f.cod;
  q.relations = delta.image();
  q.dim = g.dim - q.relations.cols();
  // pivot rows of the relation basis; quotient coordinates live on the others
  std::vector<int> pivots;
  {
    int c = 0;
    for (int r = 0; r < g.dim && c < q.relations.cols(); ++r)
      if (!q.relations.at(r, c).is_zero() && q.relations.at(r, c).is_one()) {
        bool is_pivot = true;
        for (int c2 = 0; c2 < q.relations.cols() && is_pivot; ++c2)
          if (c2 != c && !q.relations.at(r, c2).is_zero()) is_pivot = false;
        if (is_pivot) {
          pivots.push_back(r);
          ++c;
        }
      }
    if (static_cast<int>(pivots.size()) != q.relations.cols())
      throw std::logic_error("invariant_quotient: echelon pivots not found");
  }
  std::vector<int> nonpivots;
  {
    std::vector<char> isp(static_cast<size_t>(g.dim), 0);
    for (int p : pivots) isp[static_cast<size_t>(p)] = 1;
    for (int r = 0; r < g.dim; ++r)
      if (!isp[static_cast<size_t>(r)]) nonpivots.push_back(r);
  }
  q.proj = Mat(q.dim, g.dim, ord);
  q.section = Mat(g.dim, q.dim, ord);
  for (int t = 0; t < q.dim; ++t) q.section.set(nonpivots[static_cast<size_t>(t)], t, Cyc::one(ord));
  for (int x = 0; x < g.dim; ++x) {
    // residual of e_x modulo the relation span, read off the non-pivot rows
    SVec residual = basis_vec(x, ord);
    for (int c = 0; c < q.relations.cols(); ++c) {
      Cyc coeff = svec_at(residual, pivots[static_cast<size_t>(c)]);
      if (!coeff.is_zero()) residual = svec_axpy(residual, -coeff, q.relations.col(c));
    }
    for (int t = 0; t < q.dim; ++t) {
      Cyc v = svec_at(residual, nonpivots[static_cast<size_t>(t)]);
      if (!v.is_zero()) q.proj.set(t, x, v);
    }
  }
  return q;
}

// -- grouplikes ---------------------------------------------------------------

struct GrouplikeSet {
  bool supported = false;
  std::string reason;
  std::vector<SVec> vectors;
};

inline bool is_grouplike(const FinHopf& h, const SVec& x) {
  if (!h.counit_of(x).is_one()) return false;
  using Key = long long;
  std::map<Key, Cyc> diff;
  for (const auto& e : x)
    for (const auto& f : h.comult.col(e.row)) {
      Cyc c = e.val * f.val;
      auto [it, fresh] = diff.emplace(f.row, c);
      if (!fresh) it->second += c;
    }
  for (const auto& a : x)
    for (const auto& b : x) {
      Cyc c = -(a.val * b.val);
      Key key = static_cast<Key>(a.row) * h.dim + b.row;
      auto [it, fresh] = diff.emplace(key, c);
      if (!fresh) it->second += c;
    }
  for (const auto& [k, v] : diff)
    if (!v.is_zero()) return false;
  return true;
}

namespace detail {

inline SVec character_vector(const Character& chi, long order, int offset_stride, int fixed_offset, int n) {
  // sum_x chi(x) e_{x*stride + fixed_offset}
  SVec v;
  for (int x = 0; x < n; ++x) {
    Cyc c = Cyc::root_of_unity(chi.e, chi.vals[static_cast<size_t>(x)]).lifted_to(order);
    v.push_back({x * offset_stride + fixed_offset, std::move(c)});
  }
  std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
  return v;
}

}  // namespace detail

inline GrouplikeSet grouplikes(const FinHopf& h) {
  GrouplikeSet out;
  switch (h.origin.kind) {
    case HopfOrigin::Kind::GroupAlgebra: {
      out.supported = true;
      for (int i = 0; i < h.dim; ++i) out.vectors.push_back(basis_vec(i, h.order));
      break;
    }
    case HopfOrigin::Kind::DualGroupAlgebra: {
      const FiniteGroup& g = *h.origin.group;
      auto chars = linear_characters(g);
      if (!chars.empty() && h.order % chars[0].e != 0) {
        out.reason = "scalar order does not contain the character values";
        return out;
      }
      out.supported = true;
      for (const auto& chi : chars) out.vectors.push_back(detail::character_vector(chi, h.order, 1, 0, g.n));
      break;
    }
    case HopfOrigin::Kind::Double: {
      const FiniteGroup& g = *h.origin.group;
      auto chars = linear_characters(g);
      if (!chars.empty() && h.order % chars[0].e != 0) {
        out.reason = "scalar order does not contain the character values";
        return out;
      }
      out.supported = true;
      // basis index of delta_x # y is x*|G| + y; grouplikes are (chi, y)
      for (const auto& chi : chars)
        for (int y = 0; y < g.n; ++y) out.vectors.push_back(detail::character_vector(chi, h.order, g.n, y, g.n));
      break;
    }
    case HopfOrigin::Kind::TensorProduct: {
      std::vector<std::vector<SVec>> parts;
      int total = 1;
      for (const auto& f : h.origin.factors) {
        GrouplikeSet sub = grouplikes(*f);
        if (!sub.supported) {
          out.reason = "factor without grouplike support: " + sub.reason;
          return out;
        }
        parts.push_back(std::move(sub.vectors));
        total *= f->dim;
      }
      if (total != h.dim) throw std::logic_error("grouplikes: tensor factor dims inconsistent");
      out.supported = true;
      std::vector<SVec> acc{SVec{{0, Cyc::one(h.order)}}};
      for (size_t p = 0; p < parts.size(); ++p) {
        int fd = h.origin.factors[p]->dim;
        std::vector<SVec> next;
        for (const auto& base : acc)
          for (const auto& gl : parts[p]) {
            SVec v;
            for (const auto& eb : base)
              for (const auto& eg : gl) {
                Cyc c = eb.val * eg.val;
                if (!c.is_zero()) v.push_back({eb.row * fd + eg.row, std::move(c)});
              }
            std::sort(v.begin(), v.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
            next.push_back(std::move(v));
          }
        acc = std::move(next);
      }
      out.vectors = std::move(acc);
      break;
    }
    case HopfOrigin::Kind::Generic:
      out.reason = "generic origin: no grouplike solver";
      return out;
  }
  for (const auto& v : out.vectors)
    if (!is_grouplike(h, v)) throw std::logic_error("grouplikes: produced a non-grouplike vector");
  return out;
}

// tensor-factor injections/projections for a TensorProduct-origin algebra
inline HopfMap tensor_injection(const HopfPtr& t, size_t index) {
  if (t->origin.kind != HopfOrigin::Kind::TensorProduct) throw std::invalid_argument("tensor_injection: not a tensor product");
  const auto& factors = t->origin.factors;
  // iota = eta_1 (x) ... (x) id_index (x) ... (x) eta_k
  Mat acc(1, 1, t->order);
  acc.set(0, 0, Cyc::one(t->order));
  for (size_t i = 0; i < factors.size(); ++i) {
    Mat piece = (i == index) ? Mat::identity(factors[i]->dim, t->order) : factors[i]->unit.lifted_to(t->order);
    acc = Mat::kron(acc, piece);
  }
  return make_map(factors[index], t, acc);
}

inline HopfMap tensor_projection(const HopfPtr& t, size_t index) {
  if (t->origin.kind != HopfOrigin::Kind::TensorProduct) throw std::invalid_argument("tensor_projection: not a tensor product");
  const auto& factors = t->origin.factors;
  Mat acc(1, 1, t->order);
  acc.set(0, 0, Cyc::one(t->order));
  for (size_t i = 0; i < factors.size(); ++i) {
    Mat piece = (i == index) ? Mat::identity(factors[i]->dim, t->order) : factors[i]->counit.lifted_to(t->order);
    acc = Mat::kron(acc, piece);
  }
  return make_map(t, factors[index], acc);
}

// -- sub-Hopf extraction -------------------------------------------------------

struct NotClosedError : std::runtime_error {
  explicit NotClosedError(const std::string& what) : std::runtime_error(what) {}
};

// Builds the induced Hopf structure on the span of `basis`; throws if the
// subspace is not closed under the operations.
inline HopfPtr subhopf_from_basis(const HopfPtr& ambient, const Mat& basis, const std::string& name = "sub") {
  const FinHopf& h = *ambient;
  const int k = basis.cols();
  auto sub = std::make_shared<FinHopf>();
  sub->dim = k;
  sub->order = h.order;
  auto solve_or_throw = [&](const Mat& a, const Mat& rhs, const std::string& what) {
    auto x = a.solve(rhs);
    if (!x) throw NotClosedError("subhopf_from_basis: not closed under " + what);
    return *x;
  };
  sub->mult = solve_or_throw(basis, mult_compose_pair(h, basis, basis), "multiplication");
  Mat unit(h.dim, 1, h.order);
  unit.col_mutable(0) = h.unit_vec();
  sub->unit = solve_or_throw(basis, unit, "unit");
  sub->comult = solve_or_throw(Mat::kron(basis, basis), h.comult * basis, "comultiplication");
  sub->counit = h.counit * basis;
  sub->antipode = solve_or_throw(basis, h.antipode * basis, "antipode");
  sub->origin = {HopfOrigin::Kind::Generic, std::nullopt, {}};
  sub->basis_labels.resize(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) sub->basis_labels[static_cast<size_t>(i)] = "b" + std::to_string(i);
  sub->name = name + "<" + h.name;
  AxiomReport rep = verify_hopf_axioms(*sub);
  if (!rep.all_ok()) throw NotClosedError("subhopf_from_basis: induced structure fails the axioms");
  return sub;
}

}  // namespace hopfkit
