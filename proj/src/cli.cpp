#include "itres/cli.hpp"

#include "itres/acceptance.hpp"
#include "itres/error.hpp"
#include "itres/mdeg.hpp"
#include "itres/multipoint.hpp"
#include "itres/residue.hpp"
#include "itres/tauint.hpp"
#include "itres/thom.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <memory>
#include <sstream>

namespace itres::cli {

namespace {

enum class Format { text, latex, json };

struct Common {
  bool latex = false;
  bool json = false;
  Format format() const {
    if (latex && json) throw ValidationError("--latex and --json are mutually exclusive");
    return json ? Format::json : latex ? Format::latex : Format::text;
  }
};

void add_format(CLI::App* sub, Common& c) {
  sub->add_flag("--latex", c.latex, "LaTeX output");
  sub->add_flag("--json", c.json, "JSON output");
}

void emit(std::ostream& out, const GradedPoly& p, Format f) {
  switch (f) {
    case Format::text: out << to_string(p) << "\n"; break;
    case Format::latex: out << to_latex(p) << "\n"; break;
    case Format::json: out << to_json(p).dump(2) << "\n"; break;
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

long parse_long(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    long v = std::stol(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ValidationError("malformed integer '" + s + "' in " + what);
  }
}

Json read_json_arg(const std::string& arg) {
  try {
    if (!arg.empty() && arg[0] == '@') {
      std::ifstream in(arg.substr(1));
      if (!in) throw ValidationError("cannot open '" + arg.substr(1) + "'");
      Json j;
      in >> j;
      return j;
    }
    return Json::parse(arg);
  } catch (const Json::exception& ex) {
    throw ParseError(std::string("malformed JSON input: ") + ex.what());
  }
}

void warn(std::ostream& err, const std::string& msg) { err << "warning: " << msg << "\n"; }

QTable load_table(const std::string& path) {
  QTable t;
  if (!path.empty()) t.load_file(path);
  return t;
}

void check_geometry(int m, int n, std::ostream& err) {
  if (m < 1 || n < 1) throw ValidationError("dimensions m and n must be positive");
  if (n < m) warn(err, "n < m: the residue formulas are stated for maps of nonnegative codimension n - m");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Iterated residues for Thom polynomials, multipoint classes and tautological integrals", "itres"};
  app.require_subcommand(1);

  Common fmt;
  std::string qtable_path;

  // thom
  int t_k = 0, t_m = 0, t_n = 0, t_D = -1;
  auto* thom = app.add_subcommand("thom", "Thom polynomial of the Morin singularity A_{k-1}");
  thom->add_option("--k", t_k, "jet order k (A_{k-1})")->required();
  thom->add_option("--m", t_m, "source dimension")->required();
  thom->add_option("--n", t_n, "target dimension")->required();
  thom->add_option("--D", t_D, "truncation of c(f)");
  thom->add_option("--qtable", qtable_path, "Q-table JSON file");
  add_format(thom, fmt);

  // residual
  int r_q = 0, r_m = 0, r_n = 0, r_D = -1;
  auto* residual = app.add_subcommand("residual", "residual polynomial R_q");
  residual->add_option("--q", r_q, "q")->required();
  residual->add_option("--m", r_m, "source dimension")->required();
  residual->add_option("--n", r_n, "target dimension")->required();
  residual->add_option("--D", r_D, "truncation of c(f)");
  residual->add_option("--qtable", qtable_path, "Q-table JSON file");
  add_format(residual, fmt);

  // multipoint
  int mp_k = 0, mp_m = 0, mp_n = 0;
  std::string mp_side = "target", mp_conv = "sieve";
  bool mp_report = false;
  auto* multipoint = app.add_subcommand("multipoint", "multipoint classes n_k (target) or m_k (source)");
  multipoint->add_option("--k", mp_k, "number of points")->required();
  multipoint->add_option("--m", mp_m, "source dimension")->required();
  multipoint->add_option("--n", mp_n, "target dimension")->required();
  multipoint->add_option("--side", mp_side, "target | source");
  multipoint->add_option("--convention", mp_conv, "sieve | partition");
  multipoint->add_flag("--report", mp_report, "print the normalization conventions");
  multipoint->add_option("--qtable", qtable_path, "Q-table JSON file");
  add_format(multipoint, fmt);

  // tauint
  int ti_k = 0, ti_m = 0, ti_r = 0, ti_d = -1, ti_D = -1;
  bool ti_equivariant = false;
  std::string ti_pairing, ti_split;
  auto* tauint = app.add_subcommand("tauint", "tautological integral of c_d(V^[k+1]) over GHilb^{k+1}(M)");
  tauint->add_option("--k", ti_k, "k (integral over k+1 points)")->required();
  tauint->add_option("--m", ti_m, "dim M")->required();
  tauint->add_option("--r", ti_r, "rank V")->required();
  tauint->add_option("--d", ti_d, "Chern degree (default (k+1)m)");
  tauint->add_option("--D", ti_D, "Segre truncation (default (k+1)m)");
  tauint->add_flag("--equivariant", ti_equivariant, "equivariant integrand over C^m");
  auto* pair_opt = tauint->add_option("--pairing", ti_pairing, "JSON table of intersection numbers on M");
  tauint->add_option("--split-model", ti_split, "degrees a_1,..,a_r: M = P^m, V = O(a_1)+...+O(a_r)")
      ->excludes(pair_opt);
  tauint->add_option("--qtable", qtable_path, "Q-table JSON file");
  add_format(tauint, fmt);

  // mdeg
  std::vector<std::string> md_gens;
  std::string md_weights;
  auto* mdeg = app.add_subcommand("mdeg", "multidegree of a monomial ideal");
  mdeg->add_option("--gen", md_gens, "generator exponent vector, e.g. 2,0")->required();
  mdeg->add_option("--weights", md_weights, "comma-separated weights (default eta1,eta2,...)");
  add_format(mdeg, fmt);

  // residue
  std::string rs_form;
  bool rs_diag = false, rs_no_shortcut = false;
  auto* residue = app.add_subcommand("residue", "iterated residue at infinity of a rational form");
  residue->add_option("--form", rs_form, "@file.json or inline JSON")->required();
  residue->add_flag("--diagnostics", rs_diag, "print expansion diagnostics to stderr");
  residue->add_flag("--no-shortcut", rs_no_shortcut, "always expand fully");
  add_format(residue, fmt);

  // qtable
  int qt_k = 0;
  bool qt_source = false;
  auto* qtable = app.add_subcommand("qtable", "print Q_k");
  qtable->add_option("--k", qt_k, "k")->required();
  qtable->add_flag("--source", qt_source, "print the stored text instead of the expansion");
  qtable->add_option("--qtable", qtable_path, "Q-table JSON file");
  add_format(qtable, fmt);

  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    Format f = fmt.format();
    auto reg = make_registry();

    if (*thom) {
      if (t_k < 1) throw ValidationError("--k must be at least 1");
      check_geometry(t_m, t_n, err);
      QTable table = load_table(qtable_path);
      emit(out, thom_polynomial_morin(reg, t_k, MapGeometry{t_m, t_n, t_D, std::nullopt}, table), f);
    } else if (*residual) {
      if (r_q < 1) throw ValidationError("--q must be at least 1");
      check_geometry(r_m, r_n, err);
      QTable table = load_table(qtable_path);
      emit(out, residual_polynomial(reg, r_q, MapGeometry{r_m, r_n, r_D, std::nullopt}, table), f);
    } else if (*multipoint) {
      if (mp_k < 1) throw ValidationError("--k must be at least 1");
      check_geometry(mp_m, mp_n, err);
      if (mp_side != "target" && mp_side != "source") throw ValidationError("--side must be target or source");
      if (mp_conv != "sieve" && mp_conv != "partition") throw ValidationError("--convention must be sieve or partition");
      if (mp_report) {
        auto rep = conventions_report(mp_k);
        if (f == Format::json) {
          Json j;
          j["k"] = rep.k;
          j["target_normalization"] = rep.target_normalization.get_str();
          j["source_normalization"] = rep.source_normalization.get_str();
          j["entries"] = Json::array();
          for (const auto& e : rep.entries)
            j["entries"].push_back({{"sizes", e.sizes},
                                    {"sieve_coefficient", e.sieve_coefficient.get_str()},
                                    {"display_coefficient", e.display_coefficient.get_str()}});
          out << j.dump(2) << "\n";
        } else {
          out << to_string(rep);
        }
        return 0;
      }
      QTable table = load_table(qtable_path);
      MapGeometry geom{mp_m, mp_n, -1, std::nullopt};
      MultipointClass c = mp_side == "target"
                              ? multipoint_target_class(reg, mp_k, geom,
                                                        mp_conv == "sieve" ? TargetConvention::sieve : TargetConvention::partition,
                                                        table)
                              : multipoint_source_class(reg, mp_k, geom, table);
      if (f == Format::json) {
        out << to_json(c).dump(2) << "\n";
      } else {
        out << (f == Format::latex ? to_latex(c) : to_string(c)) << "\n";
      }
    } else if (*tauint) {
      IntegralSpec spec;
      if (ti_k < 0) throw ValidationError("--k must be nonnegative");
      spec.k_plus_1 = ti_k + 1;
      spec.m = ti_m;
      spec.r = ti_r;
      spec.d = ti_d;
      spec.D = ti_D;
      spec.mode = ti_equivariant ? IntegralMode::equivariant : IntegralMode::absolute;
      validate(spec);
      std::unique_ptr<Pairing> pairing;
      if (!ti_pairing.empty()) {
        pairing = std::make_unique<TablePairing>(TablePairing::from_file(ti_pairing));
      } else if (!ti_split.empty()) {
        std::vector<long> a;
        for (const auto& s : split(ti_split, ',')) a.push_back(parse_long(s, "--split-model"));
        if (static_cast<int>(a.size()) != ti_r) throw ValidationError("--split-model needs exactly r degrees");
        pairing = std::make_unique<SplitModelPairing>(a);
      }
      QTable table = load_table(qtable_path);
      for (const auto& w : hypothesis_warnings(spec)) warn(err, w);
      auto res = tautological_integral(reg, spec, pairing.get(), table);
      if (f == Format::json) {
        Json j;
        j["k"] = ti_k;
        j["m"] = spec.m;
        j["r"] = spec.r;
        j["d"] = spec.degree();
        j["D"] = spec.truncation();
        j["mode"] = ti_equivariant ? "equivariant" : "absolute";
        j["terms"] = Json::array();
        for (const auto& t : res.terms) {
          Json e{{"sizes", t.sizes}, {"multiplicity", t.multiplicity.get_str()}, {"integrand", to_json(t.integrand)}};
          if (t.value) e["value"] = to_string(*t.value);
          j["terms"].push_back(e);
        }
        if (res.value) j["value"] = to_string(*res.value);
        j["warnings"] = res.warnings;
        out << j.dump(2) << "\n";
      } else {
        for (const auto& t : res.terms) {
          out << "type {";
          for (std::size_t i = 0; i < t.sizes.size(); ++i) out << (i ? "," : "") << t.sizes[i];
          out << "} x " << t.multiplicity.get_str() << ": "
              << (f == Format::latex ? to_latex(t.integrand) : to_string(t.integrand));
          if (t.value) out << "  => " << to_string(*t.value);
          out << "\n";
        }
        if (res.value) out << "value: " << to_string(*res.value) << "\n";
      }
    } else if (*mdeg) {
      std::vector<ExponentVector> gens;
      for (const auto& g : md_gens) {
        ExponentVector e;
        for (const auto& s : split(g, ',')) {
          long v = parse_long(s, "--gen");
          if (v < 0) throw ValidationError("exponents must be nonnegative");
          e.push_back(static_cast<int>(v));
        }
        if (!gens.empty() && e.size() != gens.front().size()) throw ValidationError("generators differ in length");
        gens.push_back(e);
      }
      std::size_t n = gens.front().size();
      std::vector<GradedPoly> weights;
      if (md_weights.empty()) {
        for (std::size_t i = 1; i <= n; ++i) weights.push_back(GradedPoly::variable(reg, "eta" + std::to_string(i)));
      } else {
        for (const auto& w : split(md_weights, ',')) weights.push_back(parse_poly(reg, w));
      }
      if (weights.size() != n) throw ValidationError("--weights must list one weight per variable");
      for (const auto& w : weights)
        if (!w.is_homogeneous() || w.grade() != 1) throw ValidationError("weights must be homogeneous of grade 1");
      emit(out, multidegree(MonomialIdeal(gens, weights)), f);
    } else if (*residue) {
      RationalForm form = form_from_json(reg, read_json_arg(rs_form));
      ResidueOptions opts;
      opts.diagnostics = rs_diag;
      opts.degree_shortcut = !rs_no_shortcut;
      auto res = iterated_residue(form, opts);
      for (const auto& d : res.diagnostics) err << "# " << d << "\n";
      emit(out, res.value, f);
    } else if (*qtable) {
      if (qt_k < 1) throw ValidationError("--k must be at least 1");
      QTable table = load_table(qtable_path);
      if (qt_source) {
        out << table.source(qt_k) << "\n";
      } else {
        emit(out, table.polynomial(reg, qt_k), f);
      }
    } else if (*selftest) {
      return report_acceptance(run_acceptance(), out) ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace itres::cli
