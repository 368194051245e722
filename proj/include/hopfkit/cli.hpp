#pragma once

// Command-line front end.  Every run writes a single JSON document to stdout;
// reports are byte-identical across identical invocations (canonical key
// order, canonical enumeration order, no timestamps).  Exit codes: 0 success,
// 1 a mathematical verification failed, 2 usage error.

#include "hopfkit/selftest.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace hopfkit::cli {

namespace detail {

inline Json report_header(const std::string& command, long order) {
  Json j;
  j["tool"] = "hopfkit";
#ifdef HOPFKIT_VERSION
  j["version"] = HOPFKIT_VERSION;
#else
  j["version"] = "dev";
#endif
  j["command"] = command;
  j["order"] = order;
  return j;
}

inline void emit(std::ostream& out, const Json& j, bool pretty) {
  if (pretty)
    out << j.dump(2) << "\n";
  else
    out << j.dump() << "\n";
}

inline std::string factor_name(const HopfPtr& f) {
  switch (f->origin.kind) {
    case HopfOrigin::Kind::GroupAlgebra:
      return "group:" + classify_group(*f->origin.group);
    case HopfOrigin::Kind::DualGroupAlgebra:
      return "dual:" + classify_group(*f->origin.group);
    case HopfOrigin::Kind::Double:
      return "double:" + classify_group(*f->origin.group);
    case HopfOrigin::Kind::TensorProduct:
      return "tensor:dim" + std::to_string(f->dim);
    case HopfOrigin::Kind::Generic:
      return "generic:dim" + std::to_string(f->dim);
  }
  return "unknown";
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"hopfkit: exact computation with finite-dimensional Hopf algebras and Drinfeld doubles"};
  app.require_subcommand(1);

  long order_override = 0;
  int jobs = default_jobs();
  bool pretty = false;
  app.add_option("--order", order_override, "scalar order N for Q(zeta_N) (default: per computation)");
  app.add_option("--jobs", jobs, "worker threads for candidate verification");
  app.add_flag("--pretty", pretty, "indent the JSON report");

  // group -------------------------------------------------------------------
  CLI::App* group = app.add_subcommand("group", "finite group computations");
  CLI::App* group_decompose = group->add_subcommand("decompose", "Remak decomposition into direct factors");
  std::string gd_spec;
  group_decompose->add_option("--group", gd_spec, "group spec")->required();

  // hopf --------------------------------------------------------------------
  CLI::App* hopf = app.add_subcommand("hopf", "Hopf algebra computations");
  CLI::App* hopf_verify = hopf->add_subcommand("verify", "verify the Hopf axioms");
  std::string hv_algebra, hv_preset;
  hopf_verify->add_option("--algebra", hv_algebra, "algebra spec or JSON file");
  hopf_verify->add_option("--preset", hv_preset, "alias for --algebra");

  CLI::App* hopf_fitting = hopf->add_subcommand("fitting", "Radford/Fitting decomposition for an endomorphism");
  std::string hf_algebra, hf_endo;
  hopf_fitting->add_option("--algebra", hf_algebra, "algebra spec or JSON file")->required();
  hopf_fitting->add_option("--endo", hf_endo, "endomorphism matrix (JSON file or inline)")->required();

  CLI::App* hopf_krs = hopf->add_subcommand("krs", "Krull-Remak-Schmidt factorization");
  std::string hk_algebra;
  hopf_krs->add_option("--algebra", hk_algebra, "algebra spec or JSON file")->required();

  CLI::App* hopf_aut = hopf->add_subcommand("aut-tensor", "automorphisms of a tensor product");
  std::string ha_left, ha_right;
  hopf_aut->add_option("--left", ha_left, "left factor spec")->required();
  hopf_aut->add_option("--right", ha_right, "right factor spec")->required();

  // double ------------------------------------------------------------------
  CLI::App* dbl = app.add_subcommand("double", "Drinfeld double computations");
  CLI::App* dbl_order = dbl->add_subcommand("aut-order", "order of Hopfaut(D(G)) via the block formula");
  std::string do_group, do_block;
  long do_oracle = 0;
  dbl_order->add_option("--group", do_group, "group spec (split into C x H automatically)");
  dbl_order->add_option("--block", do_block, "explicit C,H pair of group specs");
  dbl_order->add_option("--oracle-aut-h", do_oracle, "use this value for |Hopfaut(D(H))| instead of enumerating");

  CLI::App* dbl_homs = dbl->add_subcommand("enumerate-homs", "enumerate Hopf morphisms between doubles");
  std::string dh_from, dh_to;
  bool dh_auts = false;
  dbl_homs->add_option("--from", dh_from, "source group spec")->required();
  dbl_homs->add_option("--to", dh_to, "target group spec")->required();
  dbl_homs->add_flag("--auts", dh_auts, "keep only automorphisms");

  CLI::App* dbl_zenthom = dbl->add_subcommand("zenthom", "central-image morphisms between doubles");
  std::string dz_from, dz_to;
  dbl_zenthom->add_option("--from", dz_from, "source group spec")->required();
  dbl_zenthom->add_option("--to", dz_to, "target group spec")->required();

  CLI::App* dbl_pna = dbl->add_subcommand("pna", "purely-non-abelian five-way equivalence");
  std::string dp_group;
  dbl_pna->add_option("--group", dp_group, "group spec")->required();

  // selftest ------------------------------------------------------------------
  CLI::App* st = app.add_subcommand("selftest", "run the built-in verification suites");
  std::string st_level = "fast";
  bool st_fault = false;
  st->add_option("--level", st_level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  st->add_flag("--inject-fault", st_fault, "corrupt a structure constant to prove failure detection");

  // allow the global flags after any subcommand
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* a) {
    a->fallthrough();
    for (CLI::App* sub : a->get_subcommands({})) enable_fallthrough(sub);
  };
  for (CLI::App* sub : app.get_subcommands({})) enable_fallthrough(sub);

  std::vector<const char*> argv;
  argv.push_back("hopfkit");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*group_decompose) {
      FiniteGroup g = parse_group_spec(gd_spec);
      RemakDecomposition rd = remak_decompose(g);
      Json j = detail::report_header("group decompose", g.exponent());
      j["group"] = gd_spec;
      Json factors = Json::array();
      for (const auto& f : rd.factors) factors.push_back(classify_group(f.group));
      j["factors"] = std::move(factors);
      j["purely_non_abelian"] = rd.purely_non_abelian;
      j["abelian_part"] = classify_group(rd.abelian_part.group);
      j["pna_part"] = classify_group(rd.pna_part.group);
      detail::emit(out, j, pretty);
      return 0;
    }

    if (*hopf_verify) {
      std::string spec = hv_algebra.empty() ? hv_preset : hv_algebra;
      if (spec.empty()) throw CLI::ValidationError("hopf verify", "--algebra or --preset required");
      HopfPtr h = parse_algebra_spec(spec, order_override);
      AxiomReport rep = verify_hopf_axioms(*h);
      Json j = detail::report_header("hopf verify", h->order);
      j["algebra"] = spec;
      j["dim"] = h->dim;
      Json ax;
      ax["associative"] = rep.associative;
      ax["unital"] = rep.unital;
      ax["coassociative"] = rep.coassociative;
      ax["counital"] = rep.counital;
      ax["comult_is_algebra_map"] = rep.comult_is_algebra_map;
      ax["counit_is_algebra_map"] = rep.counit_is_algebra_map;
      ax["antipode_left"] = rep.antipode_left;
      ax["antipode_right"] = rep.antipode_right;
      j["axioms"] = std::move(ax);
      j["all_pass"] = rep.all_ok();
      detail::emit(out, j, pretty);
      return rep.all_ok() ? 0 : 1;
    }

    if (*hopf_fitting) {
      HopfPtr h = parse_algebra_spec(hf_algebra, order_override);
      Mat endo = hf_endo[0] == '{' ? mat_from_json(Json::parse(hf_endo))
                                   : mat_from_json(Json::parse(hopfkit::detail::read_file(
                                         hf_endo[0] == '@' ? hf_endo.substr(1) : hf_endo)));
      HopfMap f = make_map(h, h, endo.lifted_to(lcm_long(endo.order(), h->order)));
      Json j = detail::report_header("hopf fitting", h->order);
      j["algebra"] = hf_algebra;
      if (!morphism_check(f).is_hopf) {
        j["verified"] = false;
        j["error"] = "the supplied matrix is not a Hopf endomorphism";
        detail::emit(out, j, pretty);
        return 1;
      }
      FittingResult r = radford_decompose(f);
      j["n"] = r.n;
      j["dims"] = Json::array({r.image_basis.cols(), r.coinv_basis.cols()});
      j["plain_tensor"] = r.plain_tensor;
      Json factors = Json::array();
      bool verified = true;
      bool complete = true;
      if (normality(f, NormalityKind::Binormal)) {
        FittingDecomposition fd = fitting_decompose(f, NormalityKind::Binormal);
        for (const auto& fac : fd.tensor->factors) factors.push_back(detail::factor_name(fac));
        std::string why;
        verified = verify_factorization_system(*fd.tensor, &why);
      } else {
        factors.push_back("image:dim" + std::to_string(r.image_basis.cols()));
        factors.push_back("coinvariants:dim" + std::to_string(r.coinv_basis.cols()));
        complete = false;  // object-level decomposition only
      }
      j["factors"] = std::move(factors);
      j["verified"] = verified;
      j["complete"] = complete;
      detail::emit(out, j, pretty);
      return verified ? 0 : 1;
    }

    if (*hopf_krs) {
      HopfPtr h = parse_algebra_spec(hk_algebra, order_override);
      TensorFactorization tf = krs_decompose(h);
      std::string why;
      bool verified = verify_factorization_system(tf, &why);
      Json j = detail::report_header("hopf krs", h->order);
      j["algebra"] = hk_algebra;
      j["dims"] = Json::array();
      j["factors"] = Json::array();
      for (const auto& f : tf.factors) {
        j["dims"].push_back(f->dim);
        j["factors"].push_back(detail::factor_name(f));
      }
      j["verified"] = verified;
      j["complete"] = tf.complete;
      j["certified_indecomposable"] = tf.certified_indecomposable;
      if (!why.empty()) j["failure"] = why;
      if (!tf.notes.empty()) j["notes"] = tf.notes;
      detail::emit(out, j, pretty);
      return verified ? 0 : 1;
    }

    if (*hopf_aut) {
      HopfPtr left = parse_algebra_spec(ha_left, order_override);
      HopfPtr right = parse_algebra_spec(ha_right, order_override);
      TensorAutReport rep = hopfaut_tensor(left, right);
      Json j = detail::report_header("hopf aut-tensor", rep.tensor->order);
      j["left"] = ha_left;
      j["right"] = ha_right;
      j["count"] = rep.aut_indices.size();
      j["a_set_size"] = rep.a_set_size;
      j["a_group_equal"] = rep.a_group_equal;
      j["a_subset_of_aut"] = rep.a_subset_of_aut;
      j["common_factor"] = rep.common_factor;
      j["common_abelian_factor"] = rep.common_abelian_factor;
      j["complete"] = rep.complete;
      // section-8 cross-check: equality iff no common factor
      bool theorem_ok = rep.a_group_equal == !rep.common_factor &&
                        rep.a_subset_of_aut == !rep.common_abelian_factor;
      j["verified"] = theorem_ok;
      detail::emit(out, j, pretty);
      return theorem_ok ? 0 : 1;
    }

    if (*dbl_order) {
      FiniteGroup c = make_cyclic(1), h = make_cyclic(1);
      Json j;
      if (!do_block.empty()) {
        auto parts = hopfkit::detail::split_top_level(do_block);
        if (parts.size() != 2) throw CLI::ValidationError("double aut-order", "--block needs C,H");
        c = parse_group_spec(parts[0]);
        h = parse_group_spec(parts[1]);
        j = detail::report_header("double aut-order", lcm_long(c.exponent(), h.exponent()));
        j["block"] = do_block;
      } else if (!do_group.empty()) {
        FiniteGroup g = parse_group_spec(do_group);
        RemakDecomposition rd = remak_decompose(g);
        c = rd.abelian_part.group;
        h = rd.pna_part.group;
        j = detail::report_header("double aut-order", g.exponent());
        j["group"] = do_group;
        j["split"] = Json::array({classify_group(c), classify_group(h)});
      } else {
        throw CLI::ValidationError("double aut-order", "--group or --block required");
      }
      BlockOptions opt;
      if (do_oracle > 0) opt.oracle_aut_h = do_oracle;
      opt.jobs = jobs;
      BlockAutOrder b = block_aut_order(c, h, opt);
      Json factors;
      factors["autGammaC"] = b.aut_gamma_c;
      factors["zenthomHC"] = b.zenthom_h_to_c;
      factors["homGammaCZ"] = b.hom_gamma_c_to_z;
      factors["autDoubleH"] = b.aut_double_h;
      factors["total"] = b.total;
      j["factors"] = std::move(factors);
      j["total"] = b.total;
      j["zenthom_complete"] = b.zenthom_complete;
      j["aut_double_h_complete"] = b.aut_double_h_complete;
      j["aut_double_h_from_oracle"] = b.aut_double_h_from_oracle;
      if (!b.notes.empty()) j["notes"] = b.notes;
      detail::emit(out, j, pretty);
      return 0;
    }

    if (*dbl_homs) {
      FiniteGroup g = parse_group_spec(dh_from);
      FiniteGroup k = parse_group_spec(dh_to);
      DoubleEnumOptions opt;
      opt.jobs = jobs;
      opt.auts_only = dh_auts;
      EnumerationReport rep = enumerate_double_homs(g, k, opt);
      Json j = detail::report_header("double enumerate-homs", rep.scalar_order);
      j["from"] = dh_from;
      j["to"] = dh_to;
      j["count"] = rep.elements.size();
      j["complete"] = rep.complete;
      j["reason"] = rep.completeness_reason;
      Json elems = Json::array();
      for (const auto& e : rep.elements) {
        Json el;
        el["v"] = e.q.v;
        el["r"] = e.q.r;
        el["p_trivial"] = e.q.p_data ? e.q.p_data->trivial() : false;
        el["bijective"] = e.bijective;
        elems.push_back(std::move(el));
      }
      j["elements"] = std::move(elems);
      detail::emit(out, j, pretty);
      return 0;
    }

    if (*dbl_zenthom) {
      FiniteGroup g = parse_group_spec(dz_from);
      FiniteGroup k = parse_group_spec(dz_to);
      DoubleEnumOptions opt;
      opt.jobs = jobs;
      ZenthomDoublesReport rep = zenthom_doubles(g, k, opt);
      Json j = detail::report_header("double zenthom", rep.enumeration.scalar_order);
      j["from"] = dz_from;
      j["to"] = dz_to;
      j["count"] = rep.enumeration.elements.size();
      j["abelian_group_under_convolution"] = rep.abelian_group_under_convolution;
      j["complete"] = rep.enumeration.complete;
      j["reason"] = rep.enumeration.completeness_reason;
      if (rep.gamma_hom_count) j["gamma_hom_cross_check"] = *rep.gamma_hom_count;
      detail::emit(out, j, pretty);
      bool ok = rep.abelian_group_under_convolution &&
                (!rep.gamma_hom_count || *rep.gamma_hom_count == static_cast<long>(rep.enumeration.elements.size()));
      return ok ? 0 : 1;
    }

    if (*dbl_pna) {
      FiniteGroup g = parse_group_spec(dp_group);
      PnaReport rep = purely_non_abelian_equivalences(g);
      Json j = detail::report_header("double pna", g.exponent());
      j["group"] = dp_group;
      Json eq;
      eq["group"] = rep.group_pna;
      eq["group_algebra"] = rep.group_algebra_pna;
      eq["dual"] = rep.dual_pna;
      eq["tensor_form"] = rep.tensor_form_pna;
      eq["double"] = rep.double_pna;
      j["equivalences"] = std::move(eq);
      j["purely_non_abelian"] = rep.group_pna;
      j["agree"] = rep.agree;
      detail::emit(out, j, pretty);
      return rep.agree ? 0 : 1;
    }

    if (*st) {
      SelftestReport rep = selftest(st_level == "full" ? SelftestLevel::Full : SelftestLevel::Fast,
                                    st_fault, jobs);
      Json j = detail::report_header("selftest", 0);
      j["level"] = st_level;
      Json suites = Json::array();
      for (const auto& s : rep.suites) {
        Json sj;
        sj["name"] = s.name;
        sj["pass"] = s.pass;
        if (!s.detail.empty()) sj["detail"] = s.detail;
        suites.push_back(std::move(sj));
      }
      j["suites"] = std::move(suites);
      j["all_pass"] = rep.all_pass;
      detail::emit(out, j, pretty);
      return rep.all_pass ? 0 : 1;
    }
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const GuardExceededError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "verification error: " << e.what() << "\n";
    return 1;
  }
  err << "usage error: no subcommand\n";
  return 2;
}

}  // namespace hopfkit::cli
