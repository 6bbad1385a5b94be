#pragma once

#include "trace_atlas/experiments.hpp"
#include "trace_atlas/report.hpp"
#include "trace_atlas/search.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace trace_atlas::cli {

namespace detail {

// Shortest round-trip decimal form; keeps CSV cells byte-stable.
inline std::string num(double v) { return ordered_json(v).dump(); }

inline ordered_json root_array(const RootMultiset& rm) {
  ordered_json arr = ordered_json::array();
  for (std::size_t i = 0; i < rm.roots.size(); ++i)
    arr.push_back({{"re", rm.roots[i].real()},
                   {"im", rm.roots[i].imag()},
                   {"radius", rm.radii[i]}});
  return arr;
}

inline ordered_json means_json(const MeansReport& mr) {
  ordered_json means;
  means["arithmetic_mean"] = report::rat_str(mr.arithmetic_mean);
  ordered_json sym = ordered_json::array();
  for (const auto& [m, v] : mr.symmetric)
    sym.push_back({{"m", m}, {"value", report::rat_str(v)}});
  means["symmetric"] = sym;
  ordered_json pow = ordered_json::array();
  for (const auto& [m, v] : mr.power_sum)
    pow.push_back({{"m", m}, {"value", report::rat_str(v)}});
  means["power_sum"] = pow;
  means["maclaurin_chain"] = mr.maclaurin;
  return means;
}

inline CountingMeasure atoms_from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open atoms file '" + path + "'");
  ordered_json j;
  try {
    f >> j;
  } catch (const std::exception& e) {
    throw std::invalid_argument("atoms file '" + path + "': " + e.what());
  }
  if (!j.is_array()) throw std::invalid_argument("atoms file must be a JSON array");
  CountingMeasure mu;
  for (const auto& a : j) {
    double re, im, w;
    try {
      re = a.at("re").get<double>();
      im = a.at("im").get<double>();
      w = a.at("w").get<double>();
    } catch (const std::exception& e) {
      throw std::invalid_argument(std::string("atoms file entry: ") + e.what());
    }
    if (!(w > 0)) throw std::domain_error("atom weights must be positive");
    mu.atoms.push_back({{re, im}, w});
    mu.total_mass += w;
  }
  return mu;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& errs) {
  const double pi = std::acos(-1.0);
  CLI::App app{"symmetric means, Mahler measures, and equilibrium diagnostics "
               "for integer polynomials",
               "atlas"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(TRACE_ATLAS_VERSION));

  auto* an = app.add_subcommand("analyze", "means, Mahler measures, and sector bound");
  std::string an_poly, an_set;
  std::vector<int> an_m;
  double an_gamma = pi / 4, an_eps = 0;
  an->add_option("--poly", an_poly, "coefficients a0,a1,...,an (degree-ascending)")->required();
  an->add_option("--m", an_m, "mean orders (default 1..min(n,4))")->delimiter(',');
  an->add_option("--set", an_set, "disk:cx,cy,r or interval:a,b (default disk:0,0,1)");
  an->add_option("--gamma", an_gamma, "sector half-angle (default pi/4)");
  an->add_option("--eps", an_eps, "root certification radius (default 1e-12, 1e-9 past degree 64)");

  auto* ch = app.add_subcommand("chebyshev", "per-n diagnostics for the shifted family on [0,4] (CSV)");
  std::vector<int> ch_n, ch_m;
  double ch_R = 5;
  ch->add_option("--n", ch_n, "degrees")->required()->delimiter(',');
  ch->add_option("--m", ch_m, "mean columns (default 1,2)")->delimiter(',');
  ch->add_option("--R", ch_R, "energy window radius (default 5)");

  auto* mo = app.add_subcommand("moments", "equilibrium-measure moments");
  std::string mo_set;
  std::vector<int> mo_m;
  mo->add_option("--set", mo_set, "disk:cx,cy,r or interval:a,b")->required();
  mo->add_option("--m", mo_m, "moment orders")->required()->delimiter(',');

  auto* en = app.add_subcommand("energy", "discrete pair energy and sandwich bounds");
  std::string en_poly;
  double en_R = 0;
  en->add_option("--poly", en_poly, "coefficients a0,a1,...,an")->required();
  en->add_option("--R", en_R, "window radius")->required();

  auto* es = app.add_subcommand("escape", "z^p - p! family mass/height table (CSV)");
  std::vector<int> es_p;
  double es_R = 2;
  es->add_option("--p", es_p, "exponents")->required()->delimiter(',');
  es->add_option("--R", es_R, "window radius (default 2)");

  auto* se = app.add_subcommand("search", "extremal totally positive records (JSON lines)");
  int se_n = 0, se_m = 0;
  long se_T = 0;
  bool se_csv = false;
  se->add_option("--degree", se_n, "degree (1..8)")->required();
  se->add_option("--trace-max", se_T, "trace budget")->required();
  se->add_option("--m", se_m, "also report the minimal S_m record");
  se->add_flag("--summary-csv", se_csv, "per-degree CSV summary instead of JSON lines");

  auto* di = app.add_subcommand("discretize", "rational-weight discretization of an atomic measure");
  std::string di_atoms;
  long di_L = 0;
  di->add_option("--atoms", di_atoms, "JSON file: [{\"re\":..,\"im\":..,\"w\":..},...]")->required();
  di->add_option("--L", di_L, "weight denominator")->required();

  std::vector<const char*> cargv;
  cargv.push_back("atlas");
  for (const auto& s : args) cargv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << TRACE_ATLAS_VERSION << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    errs << "usage error: " << e.what() << "\n";
    return 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (an->parsed()) {
      IntPolynomial p = parse_polynomial(an_poly);
      const int n = p.degree();
      std::vector<int> ms = an_m;
      if (ms.empty())
        for (int m = 1; m <= std::min(n, 4); ++m) ms.push_back(m);
      const double eps = an_eps > 0 ? an_eps : (n <= 64 ? 1e-12 : 1e-9);
      RootMultiset rm = all_roots(p, eps);
      MeansReport mr = means_report(p, ms);
      CompactSetModel set = an_set.empty() ? CompactSetModel::make_disk({0, 0}, 1.0)
                                           : parse_set_model(an_set);
      Measured mh = mahler(p, rm);
      Measured gm = generalized_mahler(p, rm, set);
      ordered_json sector;
      sector["gamma"] = an_gamma;
      try {
        SectorBound sb = sector_mean_bound(p, rm, an_gamma);
        sector["lhs"] = sb.lhs;
        sector["rhs"] = sb.rhs;
        sector["slack"] = sb.slack;
        sector["holds"] = sb.holds;
      } catch (const std::domain_error& e) {
        sector["status"] = "inapplicable";
        sector["reason"] = e.what();
      }
      ordered_json results;
      results["degree"] = n;
      results["means"] = detail::means_json(mr);
      results["roots"] = detail::root_array(rm);
      results["mahler"] = {{"value", mh.value}, {"error", mh.error}};
      results["generalized_mahler"] = {{"set", set.str()}, {"value", gm.value}, {"error", gm.error}};
      results["sector"] = sector;
      ordered_json inputs;
      inputs["poly"] = an_poly;
      inputs["m"] = ms;
      inputs["set"] = set.str();
      inputs["gamma"] = an_gamma;
      out << report::envelope(cmd, inputs, results, {{"root_eps", eps}}).dump(2) << "\n";
    } else if (ch->parsed()) {
      CompactSetModel E = CompactSetModel::make_interval(0, 4);
      std::vector<int> ms = ch_m.empty() ? std::vector<int>{1, 2} : ch_m;
      out << "n,ks,gap_m1,gap_m2,gap_m3,gap_m4,mass_R";
      for (int m : ms) out << ",s" << m;
      out << ",mahler_interval,energy\n";
      for (int n : ch_n) {
        IntPolynomial t = chebyshev_shifted(n);
        RootMultiset rm = all_roots(t);
        CountingMeasure mu = counting_measure(rm);
        WeakStarReport ws = weakstar_distance(mu, E);
        out << n << ',' << detail::num(ws.ks);
        for (double g : ws.moment_gap) out << ',' << detail::num(g);
        out << ',' << detail::num(measure_mass_in_disk(mu, ch_R));
        for (int m : ms) {
          out << ',';
          if (m >= 1 && m <= n) out << report::rat_str(symmetric_mean(t, m));
        }
        out << ',' << detail::num(generalized_mahler(t, rm, E).value);
        out << ',' << detail::num(discrete_energy(mu, ch_R)) << "\n";
      }
    } else if (mo->parsed()) {
      CompactSetModel set = parse_set_model(mo_set);
      ordered_json arr = ordered_json::array();
      for (int m : mo_m) {
        double v = equilibrium_moment(set, m);
        arr.push_back({{"m", m}, {"value", v}, {"error", std::fabs(v) * 8e-16 * (m + 1)}});
      }
      ordered_json results;
      results["set"] = set.str();
      results["capacity"] = set.capacity();
      results["moments"] = arr;
      ordered_json inputs;
      inputs["set"] = mo_set;
      inputs["m"] = mo_m;
      out << report::envelope(cmd, inputs, results, ordered_json::object()).dump(2) << "\n";
    } else if (en->parsed()) {
      IntPolynomial p = parse_polynomial(en_poly);
      RootMultiset rm = all_roots(p);
      CountingMeasure mu = counting_measure(rm);
      double energy = discrete_energy(mu, en_R);
      EnergySandwich sw = energy_sandwich({{p, rm}}, en_R);
      ordered_json results;
      results["degree"] = p.degree();
      results["R"] = en_R;
      results["energy"] = {{"value", energy}, {"error", discrete_energy_error(rm, en_R)}};
      results["tau"] = sw.tau;
      results["height"] = sw.height;
      results["lower"] = sw.lower;
      results["upper"] = sw.upper;
      results["holds"] = sw.holds;
      results["logplus_mass"] = logplus_mass(mu);
      ordered_json inputs;
      inputs["poly"] = en_poly;
      inputs["R"] = en_R;
      out << report::envelope(cmd, inputs, results, {{"cutoff_tol", 1e-9}}).dump(2) << "\n";
    } else if (es->parsed()) {
      out << "p,root_modulus,tau_R,energy,height,mahler,mahler_error\n";
      for (int p : es_p) {
        IntPolynomial P = escaping_family(p);
        RootMultiset rm = all_roots(P);
        Measured M = mahler(P, rm);
        EnergySandwich sw = energy_sandwich({{P, rm}}, es_R);
        double modulus =
            std::exp2(trace_atlas::detail::log2_zint(abs(P.coeff(0))) / double(p));
        out << p << ',' << detail::num(modulus) << ',' << detail::num(sw.tau) << ','
            << detail::num(sw.energy) << ',' << detail::num(sw.height) << ','
            << detail::num(M.value) << ',' << detail::num(M.error) << "\n";
      }
    } else if (se->parsed()) {
      auto recs = enumerate_totally_positive(se_n, se_T);
      if (se_csv) {
        out << "degree,records,min_trace,min_s1" << (se_m >= 1 ? ",min_s" + std::to_string(se_m) : "")
            << "\n";
        out << se_n << ',' << recs.size();
        if (recs.empty()) {
          out << ",,";
          if (se_m >= 1) out << ',';
          out << "\n";
        } else {
          zint min_trace = recs.front().trace;  // sorted by trace
          zrat min_s1 = recs.front().means[0].second;
          for (const auto& r : recs) min_s1 = std::min(min_s1, r.means[0].second);
          out << ',' << min_trace.str() << ',' << report::rat_str(min_s1);
          if (se_m >= 1) {
            if (se_m > se_n) throw std::domain_error("search: --m exceeds the degree");
            zrat min_sm = recs.front().means[static_cast<std::size_t>(se_m - 1)].second;
            for (const auto& r : recs)
              min_sm = std::min(min_sm, r.means[static_cast<std::size_t>(se_m - 1)].second);
            out << ',' << report::rat_str(min_sm);
          }
          out << "\n";
        }
      } else {
        for (const auto& r : recs) {
          ordered_json rec;
          rec["poly"] = r.poly.str();
          rec["degree"] = r.degree;
          rec["trace"] = r.trace.convert_to<long long>();
          ordered_json sm;
          for (const auto& [m, v] : r.means) sm[std::to_string(m)] = report::rat_str(v);
          rec["s"] = sm;
          rec["certified"] = r.certified;
          rec["rational_root"] = r.rational_root;
          out << rec.dump() << "\n";
        }
        if (se_m >= 1) {
          ExtremalRecord best = minimal_symmetric_mean(se_n, se_m, se_T);
          const zrat& val = best.means[static_cast<std::size_t>(se_m - 1)].second;
          ordered_json minj;
          minj["minimal_symmetric_mean"] = {{"m", se_m},
                                            {"poly", best.poly.str()},
                                            {"trace", best.trace.convert_to<long long>()},
                                            {"value", report::rat_str(val)},
                                            {"floor_attained", val == 1}};
          out << minj.dump() << "\n";
        }
      }
    } else if (di->parsed()) {
      CountingMeasure mu = detail::atoms_from_file(di_atoms);
      if (mu.total_mass > 1 + 1e-9)
        throw std::domain_error("discretize: total atom mass exceeds 1");
      CountingMeasure nu = discretize_measure(mu, di_L);
      double rho_max = 0;
      for (const auto& a : mu.atoms)
        rho_max = std::max(rho_max, std::exp2(-20.0) * (1.0 + std::abs(a.z)));
      ordered_json atoms = ordered_json::array();
      for (const auto& a : nu.atoms)
        atoms.push_back({{"re", a.z.real()}, {"im", a.z.imag()}, {"w", a.w}});
      ordered_json results;
      results["input_atoms"] = mu.atoms.size();
      results["input_mass"] = mu.total_mass;
      results["L"] = di_L;
      results["output_atoms"] = nu.atoms.size();
      results["output_mass"] = nu.total_mass;
      results["displacement_bound"] = rho_max + double(mu.atoms.size()) / double(di_L == 0 ? 1 : di_L);
      results["atoms"] = atoms;
      ordered_json inputs;
      inputs["atoms"] = di_atoms;
      inputs["L"] = di_L;
      out << report::envelope(cmd, inputs, results, {{"symmetry_tol", 1e-9}}).dump(2) << "\n";
    }
    return 0;
  } catch (const convergence_error& e) {
    out << report::error_json(cmd, "convergence", e.what()).dump(2) << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    out << report::error_json(cmd, "domain", e.what()).dump(2) << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    errs << "usage error: " << e.what() << "\n";
    return 2;
  }
}

inline int run_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace trace_atlas::cli
