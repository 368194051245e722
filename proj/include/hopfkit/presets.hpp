#pragma once

// Spec-string parsing for groups and algebras, and the preset corpus used by
// the selftest suites.
//
// Group specs:   "cyclic:n" | "dihedral:n" (n = order) | "symmetric:n"
//                | "product:(spec,spec,...)" | inline JSON Cayley table
//                | "@file.json"
// Algebra specs: "group:<gspec>" | "dual:<gspec>" | "double:<gspec>"
//                | "tensorform:<gspec>" | "tensor:(aspec,aspec,...)"
//                | inline JSON | "@file.json" | a path ending in .json

#include "hopfkit/serialize.hpp"

#include <fstream>
#include <sstream>

namespace hopfkit {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// split "a,b,c" at top level (no splitting inside parentheses)
inline std::vector<std::string> split_top_level(const std::string& s) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

}  // namespace detail

inline FiniteGroup parse_group_spec(const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("empty group spec");
  if (spec[0] == '@') return group_from_json(Json::parse(detail::read_file(spec.substr(1))));
  if (spec[0] == '{') return group_from_json(Json::parse(spec));
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("bad group spec: " + spec);
  std::string head = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);
  if (head == "cyclic") return make_cyclic(std::stoi(rest));
  if (head == "dihedral") return make_dihedral(std::stoi(rest));
  if (head == "symmetric") return make_symmetric(std::stoi(rest));
  if (head == "product") {
    if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')')
      throw std::invalid_argument("bad product spec: " + spec);
    std::vector<FiniteGroup> parts;
    for (const auto& p : detail::split_top_level(rest.substr(1, rest.size() - 2)))
      parts.push_back(parse_group_spec(p));
    return make_product(parts);
  }
  throw std::invalid_argument("bad group spec: " + spec);
}

inline HopfPtr parse_algebra_spec(const std::string& spec, long order = 0) {
  if (spec.empty()) throw std::invalid_argument("empty algebra spec");
  if (spec[0] == '@') return hopf_from_json(Json::parse(detail::read_file(spec.substr(1))));
  if (spec[0] == '{') return hopf_from_json(Json::parse(spec));
  if (spec.size() > 5 && spec.substr(spec.size() - 5) == ".json")
    return hopf_from_json(Json::parse(detail::read_file(spec)));
  auto colon = spec.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("bad algebra spec: " + spec);
  std::string head = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);
  if (head == "group") return build_group_algebra(parse_group_spec(rest), order);
  if (head == "dual") return build_dual_group_algebra(parse_group_spec(rest), order);
  if (head == "double") return build_drinfeld_double(parse_group_spec(rest), order);
  if (head == "tensorform") return build_tensor_form(parse_group_spec(rest), order);
  if (head == "tensor") {
    if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')')
      throw std::invalid_argument("bad tensor spec: " + spec);
    auto parts = detail::split_top_level(rest.substr(1, rest.size() - 2));
    if (parts.empty()) throw std::invalid_argument("empty tensor spec");
    HopfPtr acc = parse_algebra_spec(parts[0], order);
    for (size_t i = 1; i < parts.size(); ++i) acc = tensor_hopf(acc, parse_algebra_spec(parts[i], order));
    return acc;
  }
  throw std::invalid_argument("bad algebra spec: " + spec);
}

// the small-group corpus backing the selftest and acceptance suites
inline std::vector<FiniteGroup> preset_corpus(int max_order) {
  std::vector<FiniteGroup> out;
  for (int n = 1; n <= max_order; ++n) out.push_back(make_cyclic(n));
  for (int n = 4; n <= max_order; n += 2) out.push_back(make_dihedral(n));
  if (max_order >= 6) out.push_back(make_symmetric(3));
  if (max_order >= 4) out.push_back(make_product({make_cyclic(2), make_cyclic(2)}));
  if (max_order >= 8) {
    out.push_back(make_product({make_cyclic(2), make_cyclic(4)}));
    out.push_back(make_product({make_cyclic(2), make_cyclic(2), make_cyclic(2)}));
  }
  if (max_order >= 9) out.push_back(make_product({make_cyclic(3), make_cyclic(3)}));
  if (max_order >= 12) out.push_back(make_product({make_cyclic(2), make_symmetric(3)}));
  return out;
}

}  // namespace hopfkit
