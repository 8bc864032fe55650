// Command-line front end: every toolkit capability as a subcommand with a
// JSON report envelope and CSV side outputs. Exit codes: 0 success,
// 1 malformed input, 2 domain errors, 3 numerical-certificate failures.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "annulus/corpus.hpp"
#include "annulus/serialization.hpp"

namespace {

using namespace annulus;

struct RunConfig {
  double R = 2.0;
  int N = 64;
  int bits = 256;
  std::uint64_t seed = 42;
  std::map<std::string, double> tol;
  std::string out_path;
  bool timing = false;

  double tolerance(const std::string& name, double fallback) const {
    auto it = tol.find(name);
    return it == tol.end() ? fallback : it->second;
  }
};

std::uint64_t fnv1a(const std::string& bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

struct ReportBuilder {
  std::string command;
  RunConfig cfg;
  std::uint64_t digest = 0xcbf29ce484222325ULL;
  json result;
  json diagnostics = json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void ingest_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(in.good(), errc::parse, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    digest = fnv1a(path, digest);
    digest = fnv1a(ss.str(), digest);
  }

  int emit() {
    json report;
    report["command"] = command;
    json jc;
    jc["R"] = cfg.R;
    jc["N"] = cfg.N;
    jc["bits"] = cfg.bits;
    jc["seed"] = cfg.seed;
    jc["tolerances"] = cfg.tol;
    report["config"] = jc;
    report["inputs_digest"] = hex64(digest);
    report["result"] = result;
    report["diagnostics"] = diagnostics;
    long elapsed = 0;
    if (cfg.timing)
      elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    report["elapsed_ms"] = elapsed;
    const std::string text = report.dump(2) + "\n";
    if (cfg.out_path.empty()) {
      std::cout << text;
    } else {
      write_text_file(cfg.out_path, text);
    }
    return 0;
  }
};

cplx parse_complex(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
  } catch (const std::exception&) {
    fail(errc::parse, "cannot parse complex value '" + s + "' (expected re or re,im)");
  }
}

// unimodular parameter: either "re,im" or a number of turns t -> e^{2 pi i t}
cplx parse_unimodular(const std::string& value, const std::optional<double>& turns) {
  if (turns) return std::polar(1.0, kTwoPi * *turns);
  return parse_complex(value);
}

LaurentSeries load_series(ReportBuilder& rb, const std::string& path) {
  rb.ingest_file(path);
  return series_from_json(load_json_file(path));
}

OperatorMatrix load_matrix(ReportBuilder& rb, const std::string& path) {
  rb.ingest_file(path);
  return matrix_from_json(load_json_file(path));
}

BigFloat parse_xi(const std::string& token, int bits) {
  const mpfr_prec_t prec = bits;
  if (token == "sqrt2-1") return sqrt(BigFloat(2.0, prec), MPFR_RNDN) - BigFloat(1.0, prec);
  if (token == "sqrt3-1") return sqrt(BigFloat(3.0, prec), MPFR_RNDN) - BigFloat(1.0, prec);
  if (token == "sqrt5-2") return sqrt(BigFloat(5.0, prec), MPFR_RNDN) - BigFloat(2.0, prec);
  return BigFloat::from_string(token, prec);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical toolkit for holomorphic functions on symmetric annuli"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::vector<std::string> tol_args;
  app.add_option("--R", cfg.R, "outer radius of the annulus (inner is 1/R)");
  app.add_option("--N", cfg.N, "default truncation degree");
  app.add_option("--bits", cfg.bits, "binary precision for high-precision commands");
  app.add_option("--seed", cfg.seed, "seed for all randomness");
  app.add_option("--tol", tol_args, "tolerance override name=value")->take_all();
  app.add_option("--out", cfg.out_path, "write the JSON report here instead of stdout");
  app.add_flag("--timing", cfg.timing, "measure elapsed_ms (off keeps reports byte-identical)");

  // --- seminorm ---
  auto* c_semi = app.add_subcommand("seminorm", "||f||_{inf,n} on the exhaustion compact K_n");
  std::string semi_series;
  int semi_n = 2;
  c_semi->add_option("--series", semi_series)->required();
  c_semi->add_option("--n", semi_n)->required();

  // --- metric ---
  auto* c_metric = app.add_subcommand("metric", "Frechet distance between two series");
  std::string met_a, met_b, met_variant = "bounded";
  int met_kmax = 20;
  c_metric->add_option("--series", met_a)->required();
  c_metric->add_option("--series2", met_b)->required();
  c_metric->add_option("--variant", met_variant)->check(CLI::IsMember({"bounded", "ratio"}));
  c_metric->add_option("--kmax", met_kmax);

  // --- hadamard ---
  auto* c_had = app.add_subcommand("hadamard", "three-circle convexity residual");
  std::string had_series;
  double had_r1 = 0, had_r2 = 0, had_r3 = 0;
  c_had->add_option("--series", had_series)->required();
  c_had->add_option("--r1", had_r1)->required();
  c_had->add_option("--r2", had_r2)->required();
  c_had->add_option("--r3", had_r3)->required();

  // --- maxset ---
  auto* c_max = app.add_subcommand("maxset", "structure of the maximum-modulus set on a circle");
  std::string max_series;
  double max_r = 1.0;
  c_max->add_option("--series", max_series)->required();
  c_max->add_option("--r", max_r)->required();

  // --- rotation-test ---
  auto* c_rot = app.add_subcommand("rotation-test", "three-circle rotation characterisation");
  std::string rot_series;
  double rot_r1 = 0, rot_r2 = 0, rot_r3 = 0;
  c_rot->add_option("--series", rot_series)->required();
  c_rot->add_option("--r1", rot_r1)->required();
  c_rot->add_option("--r2", rot_r2)->required();
  c_rot->add_option("--r3", rot_r3)->required();

  // --- classify ---
  auto* c_cls = app.add_subcommand("classify", "isometry classification of an operator matrix");
  std::string cls_matrix;
  int cls_levels = 4, cls_probes = 12;
  c_cls->add_option("--matrix", cls_matrix)->required();
  c_cls->add_option("--levels", cls_levels);
  c_cls->add_option("--probes", cls_probes);

  // --- comptest ---
  auto* c_cmp = app.add_subcommand("comptest", "algebraic composition-operator test");
  std::string cmp_matrix;
  int cmp_nmax = 4;
  c_cmp->add_option("--matrix", cmp_matrix)->required();
  c_cmp->add_option("--nmax", cmp_nmax);

  // --- factorize ---
  auto* c_fac = app.add_subcommand("factorize", "canonical unimodular factorisation");
  std::string fac_series;
  double fac_shint = 0.0;
  c_fac->add_option("--series", fac_series)->required();
  c_fac->add_option("--s-hint", fac_shint);

  // --- winding ---
  auto* c_wnd = app.add_subcommand("winding", "argument-principle winding number");
  std::string wnd_series;
  double wnd_r = 1.0;
  c_wnd->add_option("--series", wnd_series)->required();
  c_wnd->add_option("--r", wnd_r);

  // --- spectrum ---
  auto* c_spec = app.add_subcommand("spectrum", "spectrum of a rotation/inversion isometry");
  std::string spec_kind = "rotation", spec_alpha = "1", spec_beta = "1";
  std::optional<double> spec_alpha_turns, spec_beta_turns;
  std::optional<long> spec_nroot;
  bool spec_aperiodic = false;
  c_spec->add_option("--kind", spec_kind)->check(CLI::IsMember({"rotation", "inversion"}));
  c_spec->add_option("--alpha", spec_alpha);
  c_spec->add_option("--beta", spec_beta);
  c_spec->add_option("--alpha-turns", spec_alpha_turns);
  c_spec->add_option("--beta-turns", spec_beta_turns);
  c_spec->add_option("--n-root", spec_nroot);
  c_spec->add_flag("--aperiodic", spec_aperiodic);

  // --- resolvent ---
  auto* c_res = app.add_subcommand("resolvent", "coefficientwise resolvent solve for rotations");
  std::string res_alpha = "1", res_beta = "1", res_lambda = "2", res_series;
  std::optional<double> res_alpha_turns, res_beta_turns;
  c_res->add_option("--alpha", res_alpha);
  c_res->add_option("--beta", res_beta);
  c_res->add_option("--alpha-turns", res_alpha_turns);
  c_res->add_option("--beta-turns", res_beta_turns);
  c_res->add_option("--lambda", res_lambda)->required();
  c_res->add_option("--series", res_series)->required();

  // --- eigencheck ---
  auto* c_eig = app.add_subcommand("eigencheck", "relative eigenpair residual");
  std::string eig_kind = "rotation", eig_alpha = "1", eig_beta = "1", eig_lambda = "1",
              eig_series;
  std::optional<double> eig_alpha_turns, eig_beta_turns;
  c_eig->add_option("--kind", eig_kind)->check(CLI::IsMember({"rotation", "inversion"}));
  c_eig->add_option("--alpha", eig_alpha);
  c_eig->add_option("--beta", eig_beta);
  c_eig->add_option("--alpha-turns", eig_alpha_turns);
  c_eig->add_option("--beta-turns", eig_beta_turns);
  c_eig->add_option("--lambda", eig_lambda)->required();
  c_eig->add_option("--series", eig_series)->required();

  // --- diophantine ---
  auto* c_dio = app.add_subcommand("diophantine", "small-divisor gap profile");
  std::string dio_xi = "sqrt2-1", dio_r = "1/3", dio_csv;
  long dio_K = 1000;
  std::optional<double> dio_gamma, dio_tau;
  c_dio->add_option("--xi", dio_xi, "irrational angle: sqrt2-1, sqrt3-1, sqrt5-2 or a decimal");
  c_dio->add_option("--r", dio_r, "rational angle p/q");
  c_dio->add_option("--K", dio_K);
  c_dio->add_option("--gamma", dio_gamma);
  c_dio->add_option("--tau", dio_tau);
  c_dio->add_option("--csv", dio_csv, "write the (k, gap, envelope, bound) profile here");

  // --- liouville ---
  auto* c_lio = app.add_subcommand("liouville", "fast-growth sequence and divisor collapse");
  int lio_N = 5;
  c_lio->add_option("--N", lio_N);

  // --- corpus ---
  auto* c_cor = app.add_subcommand("corpus", "deterministic fixture generation");
  std::string cor_out;
  c_cor->add_option("--dir", cor_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  ReportBuilder rb;
  rb.cfg = cfg;
  for (const std::string& t : tol_args) {
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      std::cerr << "ParseError: --tol expects name=value\n";
      return 1;
    }
    try {
      rb.cfg.tol[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    } catch (const std::exception&) {
      std::cerr << "ParseError: bad tolerance value in '" << t << "'\n";
      return 1;
    }
  }

  try {
    const AnnulusDomain dom(rb.cfg.R);
    if (*c_semi) {
      rb.command = "seminorm";
      const LaurentSeries f = load_series(rb, semi_series);
      const SeminormDetail d = seminorm_detail(f, dom, semi_n);
      rb.result = json{{"n", semi_n}, {"value", d.value}, {"sup_error_bound", d.error_bound}};
    } else if (*c_metric) {
      rb.command = "metric";
      const LaurentSeries f = load_series(rb, met_a);
      const LaurentSeries g = load_series(rb, met_b);
      const MetricVariant v =
          met_variant == "bounded" ? MetricVariant::bounded : MetricVariant::ratio;
      const FrechetDistance d = frechet_distance(f, g, dom, v, met_kmax);
      rb.result = json{{"variant", met_variant}, {"value", d.value}, {"tail_bound", d.tail}};
    } else if (*c_had) {
      rb.command = "hadamard";
      const LaurentSeries f = load_series(rb, had_series);
      const HadamardResult h = hadamard_residual(f, had_r1, had_r2, had_r3,
                                                 rb.cfg.tolerance("eq", 1e-8));
      rb.result = json{{"residual", h.residual},
                       {"equality", h.equality},
                       {"M", json::array({h.m1, h.m2, h.m3})}};
    } else if (*c_max) {
      rb.command = "maxset";
      const LaurentSeries f = load_series(rb, max_series);
      const MaxSetVerdict v = max_modulus_set(f, max_r);
      const char* kind = v.kind == MaxSetVerdict::Kind::full_circle ? "FullCircle"
                         : v.kind == MaxSetVerdict::Kind::finite    ? "Finite"
                                                                    : "Indeterminate";
      rb.result = json{{"kind", kind},
                       {"evidence", v.evidence},
                       {"cluster_angles", v.cluster_angles}};
      if (v.kind == MaxSetVerdict::Kind::indeterminate) {
        rb.emit();
        return 3;  // resolution insufficient: a certificate failure, not a result
      }
    } else if (*c_rot) {
      rb.command = "rotation-test";
      const LaurentSeries f = load_series(rb, rot_series);
      const RotationTest t = three_circle_rotation_test(f, rot_r1, rot_r2, rot_r3,
                                                        rb.cfg.tolerance("rotation", 1e-9));
      rb.result = json{{"is_rotation", t.is_rotation}};
      if (t.is_rotation) {
        rb.result["c"] = to_json(t.c);
      } else {
        rb.result["witness_circle"] = t.witness_circle;
        rb.result["witness_point"] = to_json(t.witness_point);
        rb.result["deviation"] = t.deviation;
        rb.result["structural"] = t.structural_failure;
      }
    } else if (*c_cls) {
      rb.command = "classify";
      const OperatorMatrix m = load_matrix(rb, cls_matrix);
      rb.result = to_json(isometry_classify(m, dom, cls_levels, cls_probes,
                                            rb.cfg.tolerance("classify", 1e-8), rb.cfg.seed));
    } else if (*c_cmp) {
      rb.command = "comptest";
      const OperatorMatrix m = load_matrix(rb, cmp_matrix);
      const CompositionTestResult r =
          composition_operator_test(m, cmp_nmax, rb.cfg.tolerance("comptest", 1e-9));
      rb.result = json{{"is_composition", r.is_composition}};
      if (r.is_composition)
        rb.result["symbol"] = to_json(r.symbol);
      else
        rb.result["first_failing_n"] = *r.first_failing_n;
    } else if (*c_fac) {
      rb.command = "factorize";
      const LaurentSeries f = load_series(rb, fac_series);
      FactorOptions opt;
      opt.domain_R = rb.cfg.R;
      opt.uni_tol = rb.cfg.tolerance("uni", 1e-8);
      std::optional<double> hint;
      if (fac_shint > 1.0) hint = fac_shint;
      rb.result = to_json(factor_unimodular(f, hint, opt));
    } else if (*c_wnd) {
      rb.command = "winding";
      const LaurentSeries f = load_series(rb, wnd_series);
      WindingOptions opt;
      opt.vanish_tol = rb.cfg.tolerance("vanish", 1e-8);
      opt.round_tol = rb.cfg.tolerance("round", 1e-3);
      rb.result = json{{"r", wnd_r}, {"winding", winding_number(f, wnd_r, opt)}};
    } else if (*c_spec) {
      rb.command = "spectrum";
      const WeightedComposition op(
          spec_kind == "rotation" ? CompositionKind::rotation : CompositionKind::inversion,
          parse_unimodular(spec_alpha, spec_alpha_turns),
          parse_unimodular(spec_beta, spec_beta_turns));
      std::optional<long> nroot = spec_nroot;
      if (spec_aperiodic) nroot.reset();
      SpectralOptions opt;
      opt.period_tol = rb.cfg.tolerance("period", 1e-12);
      rb.result = to_json(spectrum(op, nroot, opt));
    } else if (*c_res) {
      rb.command = "resolvent";
      const WeightedComposition op(CompositionKind::rotation,
                                   parse_unimodular(res_alpha, res_alpha_turns),
                                   parse_unimodular(res_beta, res_beta_turns));
      const LaurentSeries g = load_series(rb, res_series);
      const ResolventResult r =
          resolvent_solve(op, parse_complex(res_lambda), g, rb.cfg.tolerance("div", 1e-12));
      rb.result = json{{"f", to_json(r.f)},
                       {"min_divisor", r.min_divisor},
                       {"min_index", r.min_index},
                       {"verify_residual", r.verify_residual}};
    } else if (*c_eig) {
      rb.command = "eigencheck";
      const WeightedComposition op(
          eig_kind == "rotation" ? CompositionKind::rotation : CompositionKind::inversion,
          parse_unimodular(eig_alpha, eig_alpha_turns),
          parse_unimodular(eig_beta, eig_beta_turns));
      const LaurentSeries f = load_series(rb, eig_series);
      rb.result = json{{"residual", eigenvector_check(op, parse_complex(eig_lambda), f, dom)}};
    } else if (*c_dio) {
      rb.command = "diophantine";
      const auto slash = dio_r.find('/');
      require(slash != std::string::npos, errc::parse, "rational angle must look like p/q");
      long p0 = 0, q0 = 1;
      try {
        p0 = std::stol(dio_r.substr(0, slash));
        q0 = std::stol(dio_r.substr(slash + 1));
      } catch (const std::exception&) {
        fail(errc::parse, "cannot parse rational '" + dio_r + "'");
      }
      DiophantineOptions opt;
      if (dio_gamma && dio_tau) opt.gamma_tau = std::make_pair(*dio_gamma, *dio_tau);
      const BigFloat xi = parse_xi(dio_xi, rb.cfg.bits);
      const GapProfile prof = diophantine_gap_profile(xi, p0, q0, dio_K, opt);
      rb.result = to_json(prof);
      if (!dio_csv.empty()) {
        std::ostringstream csv;
        write_gap_profile_csv(csv, prof);
        write_text_file(dio_csv, csv.str());
        rb.diagnostics["csv"] = dio_csv;
      }
    } else if (*c_lio) {
      rb.command = "liouville";
      json entries = json::array();
      for (const LiouvilleEntry& e : liouville_sequence(lio_N)) {
        json je;
        je["n"] = e.n;
        je["p"] = to_json(e.p);
        je["q"] = e.q ? to_json(*e.q) : json{{"repr", "exact"}, {"value", 0}};
        je["eps_inv_lo"] = to_json(e.eps_inv_lo);
        je["eps_inv_hi"] = to_json(e.eps_inv_hi);
        je["ratio_integer_ok"] = e.ratio_integer_ok;
        je["ratio_bound_ok"] = e.ratio_bound_ok;
        je["power_bound_ok"] = e.power_bound_ok;
        je["liouville_witness_ok"] = e.liouville_witness_ok;
        entries.push_back(je);
      }
      json growth = json::array();
      for (int n = 2; n <= std::min(lio_N, 5); ++n) {
        const LiouvilleGrowth g = liouville_growth(n, rb.cfg.bits);
        json jg;
        jg["n"] = n;
        jg["neg_log_divisor"] = to_json(g.divisor_neg_log);
        jg["growth_exponent"] = to_json(g.growth_exponent);
        if (n == 2) jg["divisor_direct"] = g.divisor_direct;
        growth.push_back(jg);
      }
      rb.result = json{{"sequence", entries}, {"growth", growth}};
    } else if (*c_cor) {
      rb.command = "corpus";
      CorpusConfig cc;
      cc.seed = rb.cfg.seed;
      cc.R = rb.cfg.R;
      cc.N = rb.cfg.N;
      write_corpus(cor_out, cc);
      rb.result = json{{"dir", cor_out}};
    }
    return rb.emit();
  } catch (const small_divisor_error& e) {
    std::cerr << e.what() << "\n";
    return 3;
  } catch (const error& e) {
    std::cerr << e.what() << "\n";
    return errc_exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "ParseError: " << e.what() << "\n";
    return 1;
  }
}
