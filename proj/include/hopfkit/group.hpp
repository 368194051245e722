#pragma once

// Finite groups as verified multiplication tables, with the enumeration
// machinery the Hopf layers are built on: subgroup lattices, homomorphism
// and automorphism search, linear characters, Remak (direct factor)
// decompositions, and duality pairings between abelian subgroups.
//
// Subgroups are bitmasks over element indices, so the lattice operations
// require |G| <= 64; multiplication tables themselves may be a little larger
// (S5 is allowed).  Everything is deterministic: enumerations are returned
// in a canonical order independent of search order.

#include "hopfkit/cyclotomic.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hopfkit {

struct GuardExceededError : std::runtime_error {
  explicit GuardExceededError(const std::string& what) : std::runtime_error(what) {}
};

struct FiniteGroup {
  int n = 1;
  std::vector<int> table;  // table[a*n+b] = a*b
  std::vector<std::string> labels;
  int identity = 0;
  std::vector<int> inv;
  std::string name = "trivial";

  int mul(int a, int b) const { return table[static_cast<size_t>(a) * static_cast<size_t>(n) + static_cast<size_t>(b)]; }
  int conj(int g, int a) const { return mul(mul(g, a), inv[static_cast<size_t>(g)]); }

  int power(int a, long k) const {
    int r = identity;
    if (k < 0) {
      a = inv[static_cast<size_t>(a)];
      k = -k;
    }
    for (long i = 0; i < k; ++i) r = mul(r, a);
    return r;
  }

  int element_order(int a) const {
    int r = a, ord = 1;
    while (r != identity) {
      r = mul(r, a);
      ++ord;
    }
    return ord;
  }

  long exponent() const {
    long e = 1;
    for (int a = 0; a < n; ++a) e = std::lcm(e, static_cast<long>(element_order(a)));
    return e;
  }

  bool is_abelian() const {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  std::vector<int> element_order_histogram() const {
    std::vector<int> h(static_cast<size_t>(n) + 1, 0);
    for (int a = 0; a < n; ++a) ++h[static_cast<size_t>(element_order(a))];
    return h;
  }
};

namespace detail {

inline void verify_group_table(const FiniteGroup& g) {
  const int n = g.n;
  if (n < 1 || static_cast<int>(g.table.size()) != n * n) throw std::invalid_argument("group: bad table size");
  for (int v : g.table)
    if (v < 0 || v >= n) throw std::invalid_argument("group: table entry out of range");
  for (int a = 0; a < n; ++a)
    if (g.mul(g.identity, a) != a || g.mul(a, g.identity) != a)
      throw std::invalid_argument("group: identity law fails");
  // each row and column is a permutation, and two-sided inverses exist
  for (int a = 0; a < n; ++a) {
    std::vector<char> seen_row(static_cast<size_t>(n), 0), seen_col(static_cast<size_t>(n), 0);
    bool has_inv = false;
    for (int b = 0; b < n; ++b) {
      seen_row[static_cast<size_t>(g.mul(a, b))] = 1;
      seen_col[static_cast<size_t>(g.mul(b, a))] = 1;
      if (g.mul(a, b) == g.identity && g.mul(b, a) == g.identity) has_inv = true;
    }
    for (int b = 0; b < n; ++b)
      if (!seen_row[static_cast<size_t>(b)] || !seen_col[static_cast<size_t>(b)])
        throw std::invalid_argument("group: cancellation fails");
    if (!has_inv) throw std::invalid_argument("group: missing inverse");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw std::invalid_argument("group: associativity fails");
}

inline void finalize(FiniteGroup& g) {
  g.inv.assign(static_cast<size_t>(g.n), 0);
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b)
      if (g.mul(a, b) == g.identity && g.mul(b, a) == g.identity) {
        g.inv[static_cast<size_t>(a)] = b;
        break;
      }
  verify_group_table(g);
}

}  // namespace detail

inline FiniteGroup make_cyclic(int n) {
  if (n < 1) throw std::invalid_argument("make_cyclic: order must be positive");
  FiniteGroup g;
  g.n = n;
  g.table.resize(static_cast<size_t>(n) * static_cast<size_t>(n));
  g.labels.resize(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) {
    g.labels[static_cast<size_t>(a)] = "g" + std::to_string(a);
    for (int b = 0; b < n; ++b) g.table[static_cast<size_t>(a) * static_cast<size_t>(n) + static_cast<size_t>(b)] = (a + b) % n;
  }
  g.name = "cyclic:" + std::to_string(n);
  detail::finalize(g);
  return g;
}

// Dihedral group of the given ORDER (so make_dihedral(12) has 12 elements).
// Elements 0..m-1 are rotations, m..2m-1 reflections, with m = order/2.
inline FiniteGroup make_dihedral(int order) {
  if (order < 2 || order % 2 != 0) throw std::invalid_argument("make_dihedral: order must be even and >= 2");
  const int m = order / 2;
  FiniteGroup g;
  g.n = order;
  g.table.resize(static_cast<size_t>(order) * static_cast<size_t>(order));
  g.labels.resize(static_cast<size_t>(order));
  auto compose = [m](int x, int y) {
    if (x < m && y < m) return (x + y) % m;
    if (x < m && y >= m) return (y - m + x) % m + m;
    if (x >= m && y < m) return (x - m - y + m) % m + m;
    return (x - y + m) % m;
  };
  for (int a = 0; a < order; ++a) {
    g.labels[static_cast<size_t>(a)] = (a < m ? "r" : "s") + std::to_string(a % m);
    for (int b = 0; b < order; ++b)
      g.table[static_cast<size_t>(a) * static_cast<size_t>(order) + static_cast<size_t>(b)] = compose(a, b);
  }
  g.name = "dihedral:" + std::to_string(order);
  detail::finalize(g);
  return g;
}

inline FiniteGroup make_symmetric(int k) {
  if (k < 1 || k > 5) throw std::invalid_argument("make_symmetric: k must be in 1..5");
  std::vector<std::vector<int>> perms;
  std::vector<int> p(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) p[static_cast<size_t>(i)] = i;
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  const int n = static_cast<int>(perms.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < n; ++i) index[perms[static_cast<size_t>(i)]] = i;
  FiniteGroup g;
  g.n = n;
  g.table.resize(static_cast<size_t>(n) * static_cast<size_t>(n));
  g.labels.resize(static_cast<size_t>(n));
  for (int a = 0; a < n; ++a) {
    std::ostringstream lab;
    lab << "[";
    for (int i = 0; i < k; ++i) lab << perms[static_cast<size_t>(a)][static_cast<size_t>(i)];
    lab << "]";
    g.labels[static_cast<size_t>(a)] = lab.str();
    for (int b = 0; b < n; ++b) {
      std::vector<int> c(static_cast<size_t>(k));
      // composition: (a.b)(x) = a(b(x))
      for (int i = 0; i < k; ++i)
        c[static_cast<size_t>(i)] = perms[static_cast<size_t>(a)][static_cast<size_t>(perms[static_cast<size_t>(b)][static_cast<size_t>(i)])];
      g.table[static_cast<size_t>(a) * static_cast<size_t>(n) + static_cast<size_t>(b)] = index.at(c);
    }
  }
  g.name = "symmetric:" + std::to_string(k);
  detail::finalize(g);
  return g;
}

inline FiniteGroup make_product(const std::vector<FiniteGroup>& parts) {
  if (parts.empty()) throw std::invalid_argument("make_product: needs at least one factor");
  FiniteGroup g = parts[0];
  for (size_t i = 1; i < parts.size(); ++i) {
    const FiniteGroup& a = g;
    const FiniteGroup& b = parts[i];
    FiniteGroup p;
    p.n = a.n * b.n;
    p.table.resize(static_cast<size_t>(p.n) * static_cast<size_t>(p.n));
    p.labels.resize(static_cast<size_t>(p.n));
    for (int x = 0; x < a.n; ++x)
      for (int y = 0; y < b.n; ++y)
        p.labels[static_cast<size_t>(x * b.n + y)] = "(" + a.labels[static_cast<size_t>(x)] + "," + b.labels[static_cast<size_t>(y)] + ")";
    for (int x1 = 0; x1 < a.n; ++x1)
      for (int y1 = 0; y1 < b.n; ++y1)
        for (int x2 = 0; x2 < a.n; ++x2)
          for (int y2 = 0; y2 < b.n; ++y2)
            p.table[static_cast<size_t>((x1 * b.n + y1) * p.n + (x2 * b.n + y2))] = a.mul(x1, x2) * b.n + b.mul(y1, y2);
    p.identity = a.identity * b.n + b.identity;
    detail::finalize(p);
    g = std::move(p);
  }
  std::string nm = "product:(" + parts[0].name;
  for (size_t i = 1; i < parts.size(); ++i) nm += "," + parts[i].name;
  g.name = nm + ")";
  return g;
}

inline FiniteGroup make_from_table(int n, std::vector<int> table, int identity = 0,
                                   std::vector<std::string> labels = {}) {
  FiniteGroup g;
  g.n = n;
  g.table = std::move(table);
  g.identity = identity;
  if (labels.empty()) {
    g.labels.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) g.labels[static_cast<size_t>(i)] = "e" + std::to_string(i);
  } else {
    g.labels = std::move(labels);
  }
  g.name = "table:" + std::to_string(n);
  detail::finalize(g);
  return g;
}

// -- subgroup lattice (bitmask subsets, |G| <= 64) ---------------------------

using Subset = std::uint64_t;

inline void require_mask_capable(const FiniteGroup& g) {
  if (g.n > 64) throw GuardExceededError("subgroup machinery requires |G| <= 64");
}

inline bool subset_contains(Subset s, int a) { return (s >> a) & 1u; }

inline std::vector<int> subset_elements(Subset s, int n) {
  std::vector<int> out;
  for (int a = 0; a < n; ++a)
    if (subset_contains(s, a)) out.push_back(a);
  return out;
}

inline int subset_size(Subset s) { return __builtin_popcountll(s); }

inline Subset closure(const FiniteGroup& g, Subset s) {
  require_mask_capable(g);
  s |= Subset(1) << g.identity;
  bool changed = true;
  while (changed) {
    changed = false;
    auto elems = subset_elements(s, g.n);
    for (int a : elems) {
      for (int b : elems) {
        int c = g.mul(a, b);
        if (!subset_contains(s, c)) {
          s |= Subset(1) << c;
          changed = true;
        }
      }
      int ia = g.inv[static_cast<size_t>(a)];
      if (!subset_contains(s, ia)) {
        s |= Subset(1) << ia;
        changed = true;
      }
    }
  }
  return s;
}

inline bool is_subgroup(const FiniteGroup& g, Subset s) { return closure(g, s) == s && subset_contains(s, g.identity); }

inline bool is_normal_subgroup(const FiniteGroup& g, Subset s) {
  for (int x = 0; x < g.n; ++x)
    for (int a : subset_elements(s, g.n))
      if (!subset_contains(s, g.conj(x, a))) return false;
  return true;
}

inline bool is_abelian_subset(const FiniteGroup& g, Subset s) {
  auto elems = subset_elements(s, g.n);
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = i + 1; j < elems.size(); ++j)
      if (g.mul(elems[i], elems[j]) != g.mul(elems[j], elems[i])) return false;
  return true;
}

// every subgroup, canonically sorted by (size, mask)
inline std::vector<Subset> all_subgroups(const FiniteGroup& g, size_t cap = 200000) {
  require_mask_capable(g);
  std::set<Subset> found;
  Subset triv = Subset(1) << g.identity;
  found.insert(triv);
  std::vector<Subset> frontier{triv};
  while (!frontier.empty()) {
    std::vector<Subset> next;
    for (Subset s : frontier) {
      for (int a = 0; a < g.n; ++a) {
        if (subset_contains(s, a)) continue;
        Subset t = closure(g, s | (Subset(1) << a));
        if (found.insert(t).second) {
          next.push_back(t);
          if (found.size() > cap) throw GuardExceededError("subgroup lattice too large");
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<Subset> out(found.begin(), found.end());
  std::sort(out.begin(), out.end(), [](Subset a, Subset b) {
    int sa = subset_size(a), sb = subset_size(b);
    return sa != sb ? sa < sb : a < b;
  });
  return out;
}

inline Subset center_mask(const FiniteGroup& g) {
  require_mask_capable(g);
  Subset s = 0;
  for (int a = 0; a < g.n; ++a) {
    bool central = true;
    for (int b = 0; b < g.n && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) s |= Subset(1) << a;
  }
  return s;
}

inline Subset commutator_subgroup_mask(const FiniteGroup& g) {
  require_mask_capable(g);
  Subset s = Subset(1) << g.identity;
  for (int a = 0; a < g.n; ++a)
    for (int b = 0; b < g.n; ++b) {
      int c = g.mul(g.mul(a, b), g.mul(g.inv[static_cast<size_t>(a)], g.inv[static_cast<size_t>(b)]));
      s |= Subset(1) << c;
    }
  return closure(g, s);
}

struct SubgroupView {
  FiniteGroup group;
  std::vector<int> embed;  // element i of the subgroup, as an index of the ambient group
  std::vector<int> index_of_ambient;  // inverse lookup, -1 outside the subgroup
};

inline SubgroupView subgroup_as_group(const FiniteGroup& g, Subset mask, const std::string& name = "") {
  auto elems = subset_elements(mask, g.n);
  const int m = static_cast<int>(elems.size());
  std::vector<int> index(static_cast<size_t>(g.n), -1);
  for (int i = 0; i < m; ++i) index[static_cast<size_t>(elems[static_cast<size_t>(i)])] = i;
  FiniteGroup h;
  h.n = m;
  h.table.resize(static_cast<size_t>(m) * static_cast<size_t>(m));
  h.labels.resize(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    h.labels[static_cast<size_t>(i)] = g.labels[static_cast<size_t>(elems[static_cast<size_t>(i)])];
    for (int j = 0; j < m; ++j) {
      int prod = g.mul(elems[static_cast<size_t>(i)], elems[static_cast<size_t>(j)]);
      int pi = index[static_cast<size_t>(prod)];
      if (pi < 0) throw std::invalid_argument("subgroup_as_group: subset not closed");
      h.table[static_cast<size_t>(i) * static_cast<size_t>(m) + static_cast<size_t>(j)] = pi;
    }
  }
  h.identity = index[static_cast<size_t>(g.identity)];
  h.name = name.empty() ? ("sub:" + std::to_string(m) + "<" + g.name) : name;
  detail::finalize(h);
  return {std::move(h), std::move(elems), std::move(index)};
}

struct QuotientView {
  FiniteGroup group;
  std::vector<int> proj;  // ambient element -> coset index
};

inline QuotientView quotient_group(const FiniteGroup& g, Subset normal_mask) {
  if (!is_subgroup(g, normal_mask) || !is_normal_subgroup(g, normal_mask))
    throw std::invalid_argument("quotient_group: subset is not a normal subgroup");
  std::vector<int> coset_of(static_cast<size_t>(g.n), -1);
  std::vector<int> reps;
  for (int a = 0; a < g.n; ++a) {
    if (coset_of[static_cast<size_t>(a)] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(a);
    for (int h : subset_elements(normal_mask, g.n)) coset_of[static_cast<size_t>(g.mul(a, h))] = c;
  }
  const int m = static_cast<int>(reps.size());
  FiniteGroup q;
  q.n = m;
  q.table.resize(static_cast<size_t>(m) * static_cast<size_t>(m));
  q.labels.resize(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    q.labels[static_cast<size_t>(i)] = g.labels[static_cast<size_t>(reps[static_cast<size_t>(i)])] + "N";
    for (int j = 0; j < m; ++j)
      q.table[static_cast<size_t>(i) * static_cast<size_t>(m) + static_cast<size_t>(j)] =
          coset_of[static_cast<size_t>(g.mul(reps[static_cast<size_t>(i)], reps[static_cast<size_t>(j)]))];
  }
  q.identity = coset_of[static_cast<size_t>(g.identity)];
  q.name = g.name + "/N";
  detail::finalize(q);
  return {std::move(q), std::move(coset_of)};
}

struct GroupInvariants {
  Subset center;
  Subset commutator;
  QuotientView abelianization;
  long exponent;
  bool is_abelian;
};

inline GroupInvariants group_invariants(const FiniteGroup& g) {
  GroupInvariants inv{center_mask(g), commutator_subgroup_mask(g), {}, g.exponent(), g.is_abelian()};
  inv.abelianization = quotient_group(g, inv.commutator);
  return inv;
}

// -- homomorphism enumeration ------------------------------------------------

struct GroupHom {
  FiniteGroup dom, cod;
  std::vector<int> images;

  int apply(int g) const { return images[static_cast<size_t>(g)]; }
  bool is_injective() const {
    std::vector<char> seen(static_cast<size_t>(cod.n), 0);
    for (int v : images) {
      if (seen[static_cast<size_t>(v)]) return false;
      seen[static_cast<size_t>(v)] = 1;
    }
    return true;
  }
  bool is_surjective() const {
    std::vector<char> seen(static_cast<size_t>(cod.n), 0);
    for (int v : images) seen[static_cast<size_t>(v)] = 1;
    for (char c : seen)
      if (!c) return false;
    return true;
  }
  bool is_bijective() const { return dom.n == cod.n && is_injective(); }
  bool is_valid() const {
    if (images[static_cast<size_t>(dom.identity)] != cod.identity) return false;
    for (int a = 0; a < dom.n; ++a)
      for (int b = 0; b < dom.n; ++b)
        if (images[static_cast<size_t>(dom.mul(a, b))] != cod.mul(apply(a), apply(b))) return false;
    return true;
  }
};

inline GroupHom compose_homs(const GroupHom& second, const GroupHom& first) {
  GroupHom h{first.dom, second.cod, {}};
  h.images.resize(static_cast<size_t>(first.dom.n));
  for (int a = 0; a < first.dom.n; ++a) h.images[static_cast<size_t>(a)] = second.apply(first.apply(a));
  return h;
}

enum class HomFilter { All, Injective, Isomorphisms };

inline std::vector<int> generating_sequence(const FiniteGroup& g) {
  std::vector<int> gens;
  std::vector<char> in(static_cast<size_t>(g.n), 0);
  in[static_cast<size_t>(g.identity)] = 1;
  int covered = 1;
  while (covered < g.n) {
    int pick = -1;
    for (int a = 0; a < g.n; ++a)
      if (!in[static_cast<size_t>(a)]) {
        pick = a;
        break;
      }
    gens.push_back(pick);
    // close under products with the new generator
    std::vector<int> known;
    for (int a = 0; a < g.n; ++a)
      if (in[static_cast<size_t>(a)]) known.push_back(a);
    std::vector<int> frontier{pick};
    in[static_cast<size_t>(pick)] = 1;
    ++covered;
    while (!frontier.empty()) {
      std::vector<int> next;
      auto visit = [&](int x) {
        if (!in[static_cast<size_t>(x)]) {
          in[static_cast<size_t>(x)] = 1;
          ++covered;
          next.push_back(x);
        }
      };
      for (int f : frontier) {
        for (int a = 0; a < g.n; ++a) {
          if (!in[static_cast<size_t>(a)]) continue;
          visit(g.mul(f, a));
          visit(g.mul(a, f));
        }
      }
      frontier = std::move(next);
    }
  }
  return gens;
}

namespace detail {

struct HomSearch {
  const FiniteGroup& g;
  const FiniteGroup& k;
  HomFilter filter;
  bool first_only;
  std::vector<int> gens;
  std::vector<GroupHom> results;

  // partial[x] = image of x, or -1; gen is always unassigned on entry
  bool extend(std::vector<int> partial, std::vector<int> known, int gen, int image) {
    bool injective = filter != HomFilter::All;
    if (injective)
      for (int x : known)
        if (partial[static_cast<size_t>(x)] == image && x != gen) return false;
    partial[static_cast<size_t>(gen)] = image;
    known.push_back(gen);
    std::vector<int> frontier{gen};
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int f : frontier) {
        size_t sz = known.size();
        for (size_t i = 0; i < sz; ++i) {
          int a = known[i];
          int prods[2] = {g.mul(f, a), g.mul(a, f)};
          int imgs[2] = {k.mul(partial[static_cast<size_t>(f)], partial[static_cast<size_t>(a)]),
                         k.mul(partial[static_cast<size_t>(a)], partial[static_cast<size_t>(f)])};
          for (int t = 0; t < 2; ++t) {
            int p = prods[t], pi = imgs[t];
            if (partial[static_cast<size_t>(p)] >= 0) {
              if (partial[static_cast<size_t>(p)] != pi) return false;
            } else {
              if (injective)
                for (int x : known)
                  if (partial[static_cast<size_t>(x)] == pi) return false;
              partial[static_cast<size_t>(p)] = pi;
              known.push_back(p);
              next.push_back(p);
            }
          }
        }
      }
      frontier = std::move(next);
    }
    return descend(std::move(partial), std::move(known));
  }

  bool descend(std::vector<int> partial, std::vector<int> known) {
    int next_gen = -1;
    for (int ge : gens)
      if (partial[static_cast<size_t>(ge)] < 0) {
        next_gen = ge;
        break;
      }
    if (next_gen < 0) {
      if (static_cast<int>(known.size()) != g.n) return false;  // not all of G reached: impossible, but guard
      GroupHom h{g, k, partial};
      if (!h.is_valid()) return false;
      if (filter == HomFilter::Injective && !h.is_injective()) return false;
      if (filter == HomFilter::Isomorphisms && !(h.is_injective() && h.is_surjective())) return false;
      results.push_back(std::move(h));
      return first_only;
    }
    int gen_order = g.element_order(next_gen);
    for (int image = 0; image < k.n; ++image) {
      if (gen_order % k.element_order(image) != 0) continue;
      if (extend(partial, known, next_gen, image)) return true;
    }
    return false;
  }
};

}  // namespace detail

// Complete list of homomorphisms G -> K via generator-image backtracking,
// in canonical (lexicographic image vector) order.
inline std::vector<GroupHom> enumerate_homs(const FiniteGroup& g, const FiniteGroup& k,
                                            HomFilter filter = HomFilter::All, int guard = 24,
                                            bool first_only = false) {
  if (g.n > guard || k.n > guard)
    throw GuardExceededError("enumerate_homs: size guard exceeded (" + std::to_string(g.n) + "," +
                             std::to_string(k.n) + " > " + std::to_string(guard) + ")");
  if (filter == HomFilter::Isomorphisms && g.n != k.n) return {};
  detail::HomSearch search{g, k, filter, first_only, generating_sequence(g), {}};
  std::vector<int> partial(static_cast<size_t>(g.n), -1);
  partial[static_cast<size_t>(g.identity)] = k.identity;
  std::vector<int> known{g.identity};
  search.descend(std::move(partial), std::move(known));
  std::sort(search.results.begin(), search.results.end(),
            [](const GroupHom& a, const GroupHom& b) { return a.images < b.images; });
  return search.results;
}

inline std::optional<GroupHom> find_isomorphism(const FiniteGroup& g, const FiniteGroup& k, int guard = 24) {
  if (g.n != k.n) return std::nullopt;
  if (g.is_abelian() != k.is_abelian()) return std::nullopt;
  if (g.exponent() != k.exponent()) return std::nullopt;
  if (g.element_order_histogram() != k.element_order_histogram()) return std::nullopt;
  auto found = enumerate_homs(g, k, HomFilter::Isomorphisms, guard, /*first_only=*/true);
  if (found.empty()) return std::nullopt;
  return found.front();
}

inline bool are_isomorphic(const FiniteGroup& g, const FiniteGroup& k, int guard = 24) {
  return find_isomorphism(g, k, guard).has_value();
}

// -- linear characters -------------------------------------------------------

struct Character {
  int e = 1;              // values live in Z_e, e = exponent of the abelianization
  std::vector<int> vals;  // chi(g) = zeta_e^{vals[g]}
};

struct CharacterGroup {
  FiniteGroup group;               // Cayley table under pointwise addition
  std::vector<Character> chars;    // canonical (lexicographic) order; index 0 is trivial
};

inline std::vector<Character> linear_characters(const FiniteGroup& g) {
  GroupInvariants inv = group_invariants(g);
  const FiniteGroup& ab = inv.abelianization.group;
  const std::vector<int>& proj = inv.abelianization.proj;
  int e = static_cast<int>(ab.exponent());
  FiniteGroup ze = make_cyclic(e);
  auto homs = enumerate_homs(ab, ze, HomFilter::All, std::max(64, e));
  std::vector<Character> out;
  out.reserve(homs.size());
  for (const auto& h : homs) {
    Character c;
    c.e = e;
    c.vals.resize(static_cast<size_t>(g.n));
    for (int a = 0; a < g.n; ++a) c.vals[static_cast<size_t>(a)] = h.apply(proj[static_cast<size_t>(a)]);
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const Character& a, const Character& b) { return a.vals < b.vals; });
  return out;
}

inline CharacterGroup character_group(const FiniteGroup& g) {
  CharacterGroup cg;
  cg.chars = linear_characters(g);
  const int m = static_cast<int>(cg.chars.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < m; ++i) index[cg.chars[static_cast<size_t>(i)].vals] = i;
  FiniteGroup t;
  t.n = m;
  t.table.resize(static_cast<size_t>(m) * static_cast<size_t>(m));
  t.labels.resize(static_cast<size_t>(m));
  int e = cg.chars.empty() ? 1 : cg.chars[0].e;
  for (int i = 0; i < m; ++i) {
    t.labels[static_cast<size_t>(i)] = "chi" + std::to_string(i);
    for (int j = 0; j < m; ++j) {
      std::vector<int> sum(static_cast<size_t>(g.n));
      for (int a = 0; a < g.n; ++a)
        sum[static_cast<size_t>(a)] =
            (cg.chars[static_cast<size_t>(i)].vals[static_cast<size_t>(a)] + cg.chars[static_cast<size_t>(j)].vals[static_cast<size_t>(a)]) % e;
      t.table[static_cast<size_t>(i) * static_cast<size_t>(m) + static_cast<size_t>(j)] = index.at(sum);
    }
  }
  t.identity = index.at(std::vector<int>(static_cast<size_t>(g.n), 0));
  t.name = "dual:" + g.name;
  detail::finalize(t);
  cg.group = std::move(t);
  return cg;
}

// Gamma_G = Ghat x G, the group of grouplikes of the double
inline FiniteGroup gamma_group(const FiniteGroup& g) {
  FiniteGroup gamma = make_product({character_group(g).group, g});
  gamma.name = "gamma:" + g.name;
  return gamma;
}

// -- Remak decomposition -----------------------------------------------------

struct RemakFactor {
  FiniteGroup group;
  std::vector<int> embed;  // factor element -> ambient index
  Subset mask;
  bool abelian;
};

struct RemakDecomposition {
  std::vector<RemakFactor> factors;
  std::vector<std::vector<int>> proj;  // proj[i][g] = factor-i component of g
  SubgroupView abelian_part;           // product of the abelian factors (C)
  SubgroupView pna_part;               // product of the rest (H)
  std::vector<int> abelian_proj;       // g -> index in abelian_part.group
  std::vector<int> pna_proj;           // g -> index in pna_part.group
  bool purely_non_abelian = false;
};

namespace detail {

// first (N, M) with both normal, trivial intersection and |N||M| = |S|
inline std::optional<std::pair<Subset, Subset>> find_direct_split(const FiniteGroup& g, Subset s,
                                                                  const std::vector<Subset>& subgroups) {
  Subset triv = Subset(1) << g.identity;
  int size_s = subset_size(s);
  auto normal_in = [&](Subset nmask) {
    for (int x : subset_elements(s, g.n))
      for (int a : subset_elements(nmask, g.n))
        if (!subset_contains(nmask, g.conj(x, a))) return false;
    return true;
  };
  for (Subset nmask : subgroups) {
    if ((nmask & ~s) != 0 || nmask == triv || nmask == s) continue;
    if (!normal_in(nmask)) continue;
    int size_n = subset_size(nmask);
    if (size_s % size_n != 0) continue;
    for (Subset mmask : subgroups) {
      if ((mmask & ~s) != 0 || mmask == triv || mmask == s) continue;
      if (subset_size(mmask) * size_n != size_s) continue;
      if ((nmask & mmask) != triv) continue;
      if (!normal_in(mmask)) continue;
      return std::make_pair(nmask, mmask);
    }
  }
  return std::nullopt;
}

inline void decompose_mask(const FiniteGroup& g, Subset s, const std::vector<Subset>& subgroups,
                           std::vector<Subset>& out) {
  if (subset_size(s) == 1) return;
  auto split = find_direct_split(g, s, subgroups);
  if (!split) {
    out.push_back(s);
    return;
  }
  decompose_mask(g, split->first, subgroups, out);
  decompose_mask(g, split->second, subgroups, out);
}

}  // namespace detail

inline RemakDecomposition remak_decompose(const FiniteGroup& g, int guard = 64) {
  if (g.n > guard) throw GuardExceededError("remak_decompose: size guard exceeded");
  require_mask_capable(g);
  auto subgroups = all_subgroups(g);
  std::vector<Subset> factor_masks;
  Subset full = g.n == 64 ? ~Subset(0) : ((Subset(1) << g.n) - 1);
  detail::decompose_mask(g, full, subgroups, factor_masks);
  if (factor_masks.empty()) factor_masks.push_back(full);  // trivial group: keep one factor

  RemakDecomposition rd;
  for (Subset m : factor_masks) {
    SubgroupView sv = subgroup_as_group(g, m);
    bool ab = sv.group.is_abelian();
    rd.factors.push_back({std::move(sv.group), std::move(sv.embed), m, ab});
  }

  // unique mixed-radix decomposition g = f1 * f2 * ... * fk
  const size_t k = rd.factors.size();
  rd.proj.assign(k, std::vector<int>(static_cast<size_t>(g.n), -1));
  std::vector<size_t> sizes(k);
  size_t total = 1;
  for (size_t i = 0; i < k; ++i) {
    sizes[i] = static_cast<size_t>(rd.factors[i].group.n);
    total *= sizes[i];
  }
  if (total != static_cast<size_t>(g.n)) throw std::logic_error("remak_decompose: factor sizes do not multiply up");
  for (size_t code = 0; code < total; ++code) {
    size_t rest = code;
    int prod = g.identity;
    std::vector<int> comps(k);
    for (size_t i = k; i-- > 0;) {
      comps[i] = static_cast<int>(rest % sizes[i]);
      rest /= sizes[i];
    }
    for (size_t i = 0; i < k; ++i) prod = g.mul(prod, rd.factors[i].embed[static_cast<size_t>(comps[i])]);
    for (size_t i = 0; i < k; ++i) {
      if (rd.proj[i][static_cast<size_t>(prod)] != -1) throw std::logic_error("remak_decompose: non-unique decomposition");
      rd.proj[i][static_cast<size_t>(prod)] = comps[i];
    }
  }

  Subset cm = Subset(1) << g.identity, hm = Subset(1) << g.identity;
  for (const auto& f : rd.factors) (f.abelian ? cm : hm) |= f.mask;
  cm = closure(g, cm);
  hm = closure(g, hm);
  rd.abelian_part = subgroup_as_group(g, cm, "abelianpart");
  rd.pna_part = subgroup_as_group(g, hm, "pnapart");
  rd.abelian_proj.assign(static_cast<size_t>(g.n), -1);
  rd.pna_proj.assign(static_cast<size_t>(g.n), -1);
  for (int x = 0; x < g.n; ++x) {
    int c = g.identity, h = g.identity;
    for (size_t i = 0; i < k; ++i) {
      int comp = rd.factors[i].embed[static_cast<size_t>(rd.proj[i][static_cast<size_t>(x)])];
      if (rd.factors[i].abelian)
        c = g.mul(c, comp);
      else
        h = g.mul(h, comp);
    }
    rd.abelian_proj[static_cast<size_t>(x)] = rd.abelian_part.index_of_ambient[static_cast<size_t>(c)];
    rd.pna_proj[static_cast<size_t>(x)] = rd.pna_part.index_of_ambient[static_cast<size_t>(h)];
  }
  rd.purely_non_abelian = rd.abelian_part.group.n == 1;
  return rd;
}

// -- duality pairings --------------------------------------------------------

struct DualityPairing {
  std::vector<int> a_elems;  // elements of A (indices in G), ascending
  std::vector<int> b_elems;  // elements of B (indices in K), ascending
  int e = 1;                 // exponent of A (== exponent of B)
  std::vector<std::vector<int>> pairing;  // pairing[ai][bi] in Z_e: theta(b)(a) = zeta_e^pairing[ai][bi]
};

struct PTriple {
  Subset a_mask = 1, b_mask = 1;
  DualityPairing theta;
  bool trivial() const { return a_elems_size() == 1; }
  int a_elems_size() const { return static_cast<int>(theta.a_elems.size()); }
};

// All triples (A, B, theta): A abelian normal in G, B abelian in K,
// theta an isomorphism B -> Ahat.  The trivial triple comes first.
inline std::vector<PTriple> enumerate_p_triples(const FiniteGroup& g, const FiniteGroup& k, int guard = 24) {
  if (g.n > guard || k.n > guard) throw GuardExceededError("enumerate_p_triples: size guard exceeded");
  std::vector<PTriple> out;
  auto g_subs = all_subgroups(g);
  auto k_subs = all_subgroups(k);
  for (Subset am : g_subs) {
    if (!is_normal_subgroup(g, am) || !is_abelian_subset(g, am)) continue;
    SubgroupView a_view = subgroup_as_group(g, am);
    CharacterGroup ahat = character_group(a_view.group);
    long a_exp = a_view.group.exponent();
    for (Subset bm : k_subs) {
      if (subset_size(bm) != subset_size(am)) continue;
      if (!is_abelian_subset(k, bm)) continue;
      SubgroupView b_view = subgroup_as_group(k, bm);
      if (b_view.group.exponent() != a_exp) continue;
      auto isos = enumerate_homs(b_view.group, ahat.group, HomFilter::Isomorphisms, guard);
      for (const auto& iso : isos) {
        DualityPairing dp;
        dp.a_elems = a_view.embed;
        dp.b_elems = b_view.embed;
        dp.e = static_cast<int>(a_exp);
        dp.pairing.assign(dp.a_elems.size(), std::vector<int>(dp.b_elems.size(), 0));
        for (size_t ai = 0; ai < dp.a_elems.size(); ++ai)
          for (size_t bi = 0; bi < dp.b_elems.size(); ++bi) {
            const Character& chi = ahat.chars[static_cast<size_t>(iso.apply(static_cast<int>(bi)))];
            int val = chi.vals[ai];
            // character exponents live in Z_{e'} with e' = exponent of Ahat == e
            dp.pairing[ai][bi] = val % dp.e;
          }
        out.push_back({am, bm, std::move(dp)});
      }
    }
  }
  return out;
}

// -- classification helper ---------------------------------------------------

// Canonical family name for small groups ("cyclic:n" / "dihedral:n" /
// "symmetric:k"), falling back to "order:n".
inline std::string classify_group(const FiniteGroup& g, int guard = 24) {
  if (g.n <= guard) {
    if (are_isomorphic(g, make_cyclic(g.n), guard)) return "cyclic:" + std::to_string(g.n);
    if (g.n % 2 == 0 && g.n >= 2 && are_isomorphic(g, make_dihedral(g.n), guard))
      return "dihedral:" + std::to_string(g.n);
    for (int s = 3; s <= 4; ++s)
      if (g.n == 6 * (s == 3 ? 1 : 4) && are_isomorphic(g, make_symmetric(s), guard))
        return "symmetric:" + std::to_string(s);
  }
  return "order:" + std::to_string(g.n);
}

}  // namespace hopfkit
