#pragma once

// JSON interchange.  Matrices are dense row-major: every entry is a list of
// phi(N) [numerator, denominator] pairs.  Values that fit in a 53-bit integer
// are emitted as JSON numbers, anything larger as decimal strings (parsers
// accept both).

#include "hopfkit/hopf.hpp"

#include <json.hpp>

#include <string>

namespace hopfkit {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json integer_to_json(const mpz_class& z) {
  static const mpz_class big = mpz_class(1) << 53;
  if (z < big && z > -big) return Json(z.get_si());
  return Json(z.get_str());
}

inline mpz_class integer_from_json(const Json& j) {
  if (j.is_string()) return mpz_class(j.get<std::string>());
  if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<long long>()));
  throw std::invalid_argument("expected an integer or decimal string");
}

}  // namespace detail

inline Json mat_to_json(const Mat& m) {
  Json j;
  j["order"] = m.order();
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json entries = Json::array();
  long phi = euler_phi(m.order());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      Cyc v = m.at(r, c);
      Json entry = Json::array();
      for (long i = 0; i < phi; ++i) {
        const Rat& q = v.coeffs()[static_cast<size_t>(i)];
        entry.push_back(Json::array({detail::integer_to_json(q.get_num()), detail::integer_to_json(q.get_den())}));
      }
      entries.push_back(std::move(entry));
    }
  j["entries"] = std::move(entries);
  return j;
}

inline Mat mat_from_json(const Json& j) {
  long order = j.at("order").get<long>();
  int rows = j.at("rows").get<int>();
  int cols = j.at("cols").get<int>();
  long phi = euler_phi(order);
  const Json& entries = j.at("entries");
  if (static_cast<long>(entries.size()) != static_cast<long>(rows) * cols)
    throw std::invalid_argument("mat_from_json: wrong entry count");
  Mat m(rows, cols, order);
  size_t idx = 0;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c, ++idx) {
      const Json& entry = entries[idx];
      if (static_cast<long>(entry.size()) != phi)
        throw std::invalid_argument("mat_from_json: wrong coefficient count");
      Cyc v = Cyc::zero(order);
      for (long i = 0; i < phi; ++i) {
        mpz_class num = detail::integer_from_json(entry[static_cast<size_t>(i)][0]);
        mpz_class den = detail::integer_from_json(entry[static_cast<size_t>(i)][1]);
        Rat q(num, den);
        q.canonicalize();
        if (q != 0) v += Cyc(q, order) * Cyc::root_of_unity(order, i);
      }
      if (!v.is_zero()) m.set(r, c, v);
    }
  return m;
}

inline Json group_to_json(const FiniteGroup& g) {
  Json j;
  j["size"] = g.n;
  Json table = Json::array();
  for (int a = 0; a < g.n; ++a) {
    Json row = Json::array();
    for (int b = 0; b < g.n; ++b) row.push_back(g.mul(a, b));
    table.push_back(std::move(row));
  }
  j["table"] = std::move(table);
  j["identity"] = g.identity;
  j["labels"] = g.labels;
  j["name"] = g.name;
  return j;
}

inline FiniteGroup group_from_json(const Json& j) {
  int n = j.at("size").get<int>();
  std::vector<int> table;
  for (const auto& row : j.at("table"))
    for (const auto& v : row) table.push_back(v.get<int>());
  int identity = j.value("identity", 0);
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  FiniteGroup g = make_from_table(n, std::move(table), identity, std::move(labels));
  if (j.contains("name")) g.name = j.at("name").get<std::string>();
  return g;
}

inline Json hopf_to_json(const FinHopf& h) {
  Json j;
  j["dim"] = h.dim;
  j["order"] = h.order;
  j["mult"] = mat_to_json(h.mult);
  j["comult"] = mat_to_json(h.comult);
  j["unit"] = mat_to_json(h.unit);
  j["counit"] = mat_to_json(h.counit);
  j["antipode"] = mat_to_json(h.antipode);
  Json origin;
  switch (h.origin.kind) {
    case HopfOrigin::Kind::GroupAlgebra:
      origin["kind"] = "group";
      origin["group"] = group_to_json(*h.origin.group);
      break;
    case HopfOrigin::Kind::DualGroupAlgebra:
      origin["kind"] = "dual";
      origin["group"] = group_to_json(*h.origin.group);
      break;
    case HopfOrigin::Kind::Double:
      origin["kind"] = "double";
      origin["group"] = group_to_json(*h.origin.group);
      break;
    case HopfOrigin::Kind::TensorProduct: {
      origin["kind"] = "tensor";
      Json factors = Json::array();
      for (const auto& f : h.origin.factors) factors.push_back(hopf_to_json(*f));
      origin["factors"] = std::move(factors);
      break;
    }
    case HopfOrigin::Kind::Generic:
      origin["kind"] = "generic";
      break;
  }
  j["origin"] = std::move(origin);
  return j;
}

inline HopfPtr hopf_from_json(const Json& j) {
  auto h = std::make_shared<FinHopf>();
  h->dim = j.at("dim").get<int>();
  h->order = j.at("order").get<long>();
  h->mult = mat_from_json(j.at("mult"));
  h->comult = mat_from_json(j.at("comult"));
  h->unit = mat_from_json(j.at("unit"));
  h->counit = mat_from_json(j.at("counit"));
  h->antipode = mat_from_json(j.at("antipode"));
  h->basis_labels.resize(static_cast<size_t>(h->dim));
  for (int i = 0; i < h->dim; ++i) h->basis_labels[static_cast<size_t>(i)] = "b" + std::to_string(i);
  h->origin.kind = HopfOrigin::Kind::Generic;
  if (j.contains("origin")) {
    const Json& origin = j.at("origin");
    std::string kind = origin.value("kind", "generic");
    if (kind == "group" || kind == "dual" || kind == "double") {
      h->origin.group = group_from_json(origin.at("group"));
      h->origin.kind = kind == "group"   ? HopfOrigin::Kind::GroupAlgebra
                       : kind == "dual" ? HopfOrigin::Kind::DualGroupAlgebra
                                        : HopfOrigin::Kind::Double;
    } else if (kind == "tensor") {
      h->origin.kind = HopfOrigin::Kind::TensorProduct;
      for (const auto& f : origin.at("factors")) h->origin.factors.push_back(hopf_from_json(f));
    }
  }
  if (h->mult.rows() != h->dim || h->mult.cols() != h->dim * h->dim)
    throw std::invalid_argument("hopf_from_json: mult tensor has wrong shape");
  if (h->comult.rows() != h->dim * h->dim || h->comult.cols() != h->dim)
    throw std::invalid_argument("hopf_from_json: comult tensor has wrong shape");
  return h;
}

}  // namespace hopfkit
