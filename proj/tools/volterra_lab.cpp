// volterra-lab: command-line front end for the Volterra operator lab.
//
// Exit codes: 0 success, 2 invariant or check failure, 3 input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "volterra_lab/volterra_lab.hpp"

namespace {

using namespace vlab;
using json = nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kInvariant = 2;
constexpr int kInput = 3;

struct Common {
  std::string output;
  std::string format = "json";
  std::string config;
  std::string grid;
  std::vector<std::string> set;
};

LabConfig make_config(const Common& c) {
  LabConfig cfg;
  if (!c.config.empty()) load_config_file(cfg, c.config);
  for (const auto& kv : c.set) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw parse_error("--set expects key=value, got '" + kv + "'");
    cfg.set(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
  }
  if (!c.grid.empty()) cfg.set("grid", c.grid);
  return cfg;
}

void emit(const Common& c, const json& doc, const std::vector<json>& rows) {
  std::ostringstream os;
  if (c.format == "csv") {
    write_csv(os, rows);
  } else {
    os << doc.dump(2) << "\n";
  }
  if (c.output.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream out(c.output);
    if (!out) throw parse_error("cannot write " + c.output);
    out << os.str();
  }
}

SpaceId make_space(const std::string& name, double param) {
  const SpaceKind k = space_kind_from_string(name);
  SpaceId s{k, param};
  if (!s.has_param()) s.param = 0.0;
  s.validate();
  return s;
}

SymbolFamily family_or_file(const std::string& text) {
  if (text.find('(') != std::string::npos) return parse_family(text);
  SymbolFamily f;
  f.kind = FamilyKind::file;
  f.path = text;
  return f;
}

cplx parse_point(const std::string& s) {
  const auto comma = s.find(':');
  const double re = std::stod(s.substr(0, comma));
  const double im = comma == std::string::npos ? 0.0 : std::stod(s.substr(comma + 1));
  return {re, im};
}

std::vector<cplx> parse_zgrid(const std::string& spec, const Symbol& g, std::size_t depth) {
  if (spec == "auto") return default_zgrid(g, depth);
  if (spec == "axis") {
    std::vector<cplx> z;
    for (double x : dyadic_xgrid(1, depth)) z.emplace_back(x, 0.0);
    return z;
  }
  if (spec == "polar") return default_zgrid(Symbol(g.series(), false), depth);
  std::vector<cplx> z;
  std::istringstream in(spec);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      z.push_back(parse_point(trim(tok)));
    } catch (const std::exception&) {
      throw parse_error("zgrid: cannot parse point '" + tok + "' (use re or re:im)");
    }
  }
  if (z.empty()) throw parse_error("zgrid: no points");
  return z;
}

std::vector<double> parse_reals(const std::string& text) {
  std::vector<double> v;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    try {
      v.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw parse_error("cannot parse number '" + tok + "'");
    }
  }
  return v;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--output", c.output, "Write the report to this path instead of stdout");
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--config", c.config, "Config file of key = value lines");
  sub->add_option("--grid", c.grid, "Grid preset")->check(CLI::IsMember({"coarse", "default", "fine"}));
  sub->add_option("--set", c.set, "Override a config key (key=value), repeatable");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical lab for Volterra-type operators T_g on truncated power series"};
  app.require_subcommand(1);
  Common common;

  // criterion
  auto* crit = app.add_subcommand("criterion", "Evaluate a boundedness criterion for a symbol");
  std::string c_symbol, c_space = "HLp", c_kind = "verdict";
  double c_p = 2.0;
  std::size_t c_degree = 1024, c_kmax = 100000;
  crit->add_option("--symbol", c_symbol, "Family spec such as power(2) or a series file")->required();
  crit->add_option("--degree", c_degree, "Truncation degree for generated families");
  crit->add_option("--space", c_space, "Domain space X");
  crit->add_option("--p", c_p, "Space parameter (p or alpha)");
  crit->add_option("--kind", c_kind, "Criterion")->check(CLI::IsMember({"verdict", "qp", "q1", "qlogsum", "qlogint"}));
  crit->add_option("--K-max", c_kmax, "Truncation of the k sum");
  add_common(crit, common);

  // dual-test
  auto* dual = app.add_subcommand("dual-test", "sup_z of the dual-space norm of kernel slices");
  std::string d_symbol, d_space = "HLp", d_zgrid = "auto";
  double d_p = 2.0;
  std::size_t d_degree = 1024, d_K = 0;
  dual->add_option("--symbol", d_symbol, "Family spec or series file")->required();
  dual->add_option("--degree", d_degree, "Truncation degree for generated families");
  dual->add_option("--dual-space", d_space, "Target space Y");
  dual->add_option("--p", d_p, "Parameter of Y");
  dual->add_option("--zgrid", d_zgrid, "auto, axis, polar, or a list re[:im],...");
  dual->add_option("--K", d_K, "Kernel truncation (0: default)");
  add_common(dual, common);

  // norm
  auto* nrm = app.add_subcommand("norm", "Norm of a series in a space");
  std::string n_series, n_space = "Hp";
  double n_p = 2.0;
  nrm->add_option("--series", n_series, "Series file (JSON or whitespace format)")->required();
  nrm->add_option("--space", n_space, "Space");
  nrm->add_option("--p", n_p, "Space parameter (p or alpha)");
  add_common(nrm, common);

  // apply
  auto* apply = app.add_subcommand("apply", "Coefficients of T_g f");
  std::string a_symbol, a_series;
  std::size_t a_degree = 64;
  apply->add_option("--symbol", a_symbol, "Family spec or series file")->required();
  apply->add_option("--degree", a_degree, "Truncation degree for generated families");
  apply->add_option("--series", a_series, "Series file for f")->required();
  add_common(apply, common);

  // kernel-slice
  auto* slice = app.add_subcommand("kernel-slice", "Coefficients of the kernel slice G_{g,z}");
  std::string s_symbol, s_z = "0.5";
  std::size_t s_degree = 64, s_K = 64;
  slice->add_option("--symbol", s_symbol, "Family spec or series file")->required();
  slice->add_option("--degree", s_degree, "Truncation degree for generated families");
  slice->add_option("--z", s_z, "Anchor point re[:im]");
  slice->add_option("--K", s_K, "Truncation index");
  add_common(slice, common);

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run an experiment");
  std::string e_name;
  std::vector<std::string> e_families;
  std::string e_degrees = "256,512,1024", e_xgrid;
  double e_p = 2.0;
  exp->add_option("name", e_name, "Experiment")->required()->check(CLI::IsMember({"equivalence", "thm14", "inclusion", "plessone"}));
  exp->add_option("--family", e_families, "Symbol family, repeatable");
  exp->add_option("--degrees", e_degrees, "Comma-separated truncation degrees");
  exp->add_option("--p", e_p, "Exponent p");
  exp->add_option("--xgrid", e_xgrid, "Comma-separated points in (0,1) (plessone)");
  add_common(exp, common);

  // verify
  auto* ver = app.add_subcommand("verify", "Run the invariant suite");
  std::uint64_t v_seed = LabConfig{}.seed;
  ver->add_option("--seed", v_seed, "Random seed");
  add_common(ver, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    const LabConfig cfg = make_config(common);
    const GridSpec grid = cfg.grid_spec();

    if (*crit) {
      const Symbol g = family_or_file(c_symbol).symbol(c_degree);
      CriterionReport r;
      if (c_kind == "verdict") {
        r = verdict(g, make_space(c_space, c_p), c_kmax);
      } else if (c_kind == "qp") {
        r = q_p(g, c_p, c_kmax);
      } else if (c_kind == "q1") {
        r = q_one(g, c_kmax);
      } else if (c_kind == "qlogsum") {
        r = q_log_sum(g);
      } else {
        r = q_log_integral(g, grid);
      }
      json j = to_json(r);
      emit(common, j, {j});
      return kOk;
    }

    if (*dual) {
      const Symbol g = family_or_file(d_symbol).symbol(d_degree);
      const SpaceId Y = make_space(d_space, d_p);
      const std::size_t K = d_K ? d_K : (cfg.kernel_K ? cfg.kernel_K : default_kernel_K(g));
      const auto r = dual_test(g, Y, parse_zgrid(d_zgrid, g, cfg.zgrid_depth), K, grid);
      json j = to_json(r);
      j["K"] = K;
      std::vector<json> rows;
      for (std::size_t i = 0; i < r.zgrid.size(); ++i) {
        rows.push_back({{"z_re", r.zgrid[i].real()}, {"z_im", r.zgrid[i].imag()}, {"value", r.values[i]}});
      }
      emit(common, j, rows);
      return kOk;
    }

    if (*nrm) {
      const auto f = read_series_file(n_series);
      json j = to_json(norm(f, make_space(n_space, n_p), grid));
      emit(common, j, {{{"space", j["space"]}, {"param", j["param"]}, {"value", j["value"]}, {"exact", j["exact"]}}});
      return kOk;
    }

    if (*apply) {
      const Symbol g = family_or_file(a_symbol).symbol(a_degree);
      const auto h = apply_tg(g, read_series_file(a_series));
      json j = series_to_json(h);
      std::vector<json> rows;
      for (std::size_t k = 0; k < h.size(); ++k) rows.push_back({{"k", k}, {"re", h[k].real()}, {"im", h[k].imag()}});
      emit(common, j, rows);
      return kOk;
    }

    if (*slice) {
      const Symbol g = family_or_file(s_symbol).symbol(s_degree);
      const auto s = kernel_slice(g, parse_point(s_z), s_K);
      std::vector<json> rows;
      for (std::size_t k = 0; k < s.series.size(); ++k) {
        rows.push_back({{"k", k}, {"re", s.series[k].real()}, {"im", s.series[k].imag()}});
      }
      emit(common, to_json(s), rows);
      return kOk;
    }

    if (*exp) {
      std::vector<std::size_t> degrees;
      for (double d : parse_reals(e_degrees)) {
        if (d < 0.0 || d != std::floor(d)) throw parse_error("degrees must be nonnegative integers");
        degrees.push_back(static_cast<std::size_t>(d));
      }
      std::vector<SymbolFamily> fams;
      for (const auto& f : e_families) fams.push_back(family_or_file(f));
      ExperimentReport rep;
      if (e_name == "equivalence") {
        if (fams.empty()) fams.push_back(SymbolFamily::power(2.0));
        rep = run_equivalence(e_p, fams, degrees, cfg);
      } else if (e_name == "thm14") {
        if (fams.empty()) fams.push_back(SymbolFamily::power(2.0));
        rep = run_thm14(fams, degrees, cfg);
      } else if (e_name == "inclusion") {
        if (fams.size() > 1) throw parse_error("inclusion takes a single --family");
        rep = run_inclusion(fams.empty() ? SymbolFamily::power(1.0) : fams[0], e_p, degrees, cfg);
      } else {
        const auto xs = e_xgrid.empty() ? dyadic_xgrid(1, 12) : parse_reals(e_xgrid);
        rep = run_p_less_one(e_p, xs, cfg);
      }
      emit(common, to_json(rep), rep.rows);
      return rep.all_passed() ? kOk : kInvariant;
    }

    if (*ver) {
      const auto rep = run_verify(v_seed, cfg.grid);
      emit(common, to_json(rep), rep.rows);
      if (!rep.all_passed()) {
        for (const auto& c : rep.checks) {
          if (!c.passed) std::cerr << "FAILED: " << c.name << " " << c.detail << "\n";
        }
        return kInvariant;
      }
      return kOk;
    }
  } catch (const parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kInvariant;
  }
  return kOk;
}
