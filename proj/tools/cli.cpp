#include "simpsonbound/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "simpsonbound/campaign.hpp"
#include "simpsonbound/config.hpp"
#include "simpsonbound/errors.hpp"
#include "simpsonbound/means.hpp"
#include "simpsonbound/report.hpp"
#include "simpsonbound/simpson_core.hpp"

namespace simpsonbound {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string csv_pairs(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::string out = "quantity,value\n";
  for (const auto& [k, v] : rows) out += fmt::format("{},{}\n", k, v);
  return out;
}

std::string g17(double x) { return fmt::format("{:.17g}", x); }

void emit(std::ostream& out, const std::string& text, const std::optional<std::string>& path) {
  if (!path) {
    out << text;
    return;
  }
  std::ofstream file(*path);
  if (!file) throw ConfigError(fmt::format("cannot write report to '{}'", *path));
  file << text;
}

// ------------------------------------------------------------- subcommands

struct VerifyArgs {
  std::string config;
  std::optional<std::string> output;
  bool no_runtime = false;
  bool serial = false;
};

int run_verify(const VerifyArgs& args, std::optional<OutputFormat> format, std::ostream& out,
               std::ostream& err) {
  CampaignConfig cfg = load_campaign_config(args.config);
  if (args.serial) cfg.spec.policy = ExecutionPolicy::Serial;
  const OutputFormat fmt_choice = format.value_or(cfg.format.value_or(OutputFormat::Json));
  const bool runtime = cfg.include_runtime && !args.no_runtime;

  const CampaignReport report = run_campaign(cfg.spec);
  const std::string text = fmt_choice == OutputFormat::Json
                               ? render_json(to_json(report, runtime))
                               : to_csv(report.cases);
  emit(out, text, args.output ? args.output : cfg.output_path);

  const auto& s = report.summary;
  err << fmt::format(
      "{} cases: {} holds, {} numerical_slack, {} violated, {} inapplicable, "
      "{} hypothesis_refuted, {} hypothesis_inconclusive, {} errors\n",
      s.total, s.holds, s.numerical_slack, s.violated, s.inapplicable, s.hypothesis_refuted,
      s.hypothesis_inconclusive, s.errors);
  return campaign_exit_code(s);
}

struct BoundArgs {
  std::string theorem;
  std::string f;
  std::optional<std::string> h;
  double a = 0.0;
  double b = 1.0;
  std::optional<double> p;
  std::size_t grid = 64;
  double tol = 1e-9;
};

int run_bound(const BoundArgs& args, OutputFormat format, std::ostream& out) {
  const TheoremId id = parse_theorem(args.theorem);
  CaseKey key;
  key.theorem = id;
  key.f = args.f;
  key.a = args.a;
  key.b = args.b;
  if (uses_weight(id)) {
    if (!args.h) throw UsageError(fmt::format("{} needs --h", short_name(id)));
    key.h = *args.h;
  } else {
    key.h = fixed_weight(id).name();
  }
  if (uses_exponent(id)) {
    if (!args.p) throw UsageError(fmt::format("{} needs --p", short_name(id)));
    key.p = args.p;
  } else if (id == TheoremId::Cor23_p2q2) {
    key.p = 2.0;
  }

  BoundOptions opts;
  opts.certify.grid = args.grid;
  opts.certify.tol = args.tol;
  const CaseResult result = evaluate_case(key, opts);
  if (format == OutputFormat::Json) {
    out << render_json(to_json(result));
  } else {
    out << to_csv({result});
  }
  switch (result.status) {
    case CaseStatus::Violated: return kExitViolation;
    case CaseStatus::Error: return kExitError;
    default: return kExitOk;
  }
}

struct MeansArgs {
  double a = 1.0;
  double b = 2.0;
  int n = 2;
  double p = 2.0;
};

int run_means(const MeansArgs& args, OutputFormat format, std::ostream& out) {
  const double A = arithmetic_mean(args.a, args.b);
  const double L = logarithmic_mean(args.a, args.b);
  const double Ln = generalized_log_mean(args.a, args.b, args.n);
  std::optional<PropositionCheck> p31;
  if (args.n > 1) p31 = check_prop31(args.a, args.b, args.n, ConjugatePair::from_p(args.p));
  std::optional<PropositionCheck> p32;
  if (args.a < args.b) p32 = check_prop32(args.a, args.b);

  if (format == OutputFormat::Json) {
    json j;
    j["a"] = args.a;
    j["b"] = args.b;
    j["n"] = args.n;
    j["p"] = args.p;
    j["A"] = A;
    j["L"] = L;
    j[fmt::format("L_{}", args.n)] = Ln;
    j["L_n"] = Ln;
    j["prop31"] = p31 ? to_json(*p31) : json(nullptr);
    j["prop32"] = p32 ? to_json(*p32) : json(nullptr);
    out << render_json(j);
  } else {
    std::vector<std::pair<std::string, std::string>> rows = {
        {"A", g17(A)}, {"L", g17(L)}, {fmt::format("L_{}", args.n), g17(Ln)}};
    if (p31) {
      rows.emplace_back("prop31_lhs", g17(p31->means_lhs));
      rows.emplace_back("prop31_rhs", g17(p31->report.rhs));
      rows.emplace_back("prop31_printed_lhs", g17(*p31->printed_lhs));
      rows.emplace_back("prop31_printed_rhs", g17(*p31->printed_rhs));
    }
    if (p32) {
      rows.emplace_back("prop32_lhs", g17(p32->means_lhs));
      rows.emplace_back("prop32_rhs", g17(p32->report.rhs));
    }
    out << csv_pairs(rows);
  }
  return kExitOk;
}

struct LemmaArgs {
  std::string f;
  double a = 0.0;
  double b = 1.0;
};

inline constexpr double kLemmaTolerance = 1e-9;

int run_lemma(const LemmaArgs& args, OutputFormat format, std::ostream& out) {
  const Interval iv(args.a, args.b);
  const TestFunction f = FunctionFamily::parse(args.f).bind(iv);
  const DefectValue d = simpson_defect(f, iv);
  const double residual = kernel_identity_residual(f, iv);
  const bool holds = residual <= kLemmaTolerance;
  if (format == OutputFormat::Json) {
    json j{{"f", args.f},         {"a", args.a},
           {"b", args.b},         {"raw_defect", d.raw},
           {"defect", d.absolute}, {"residual", residual},
           {"tolerance", kLemmaTolerance}, {"holds", holds}};
    out << render_json(j);
  } else {
    out << csv_pairs({{"raw_defect", g17(d.raw)},
                      {"defect", g17(d.absolute)},
                      {"residual", g17(residual)},
                      {"holds", holds ? "true" : "false"}});
  }
  return holds ? kExitOk : kExitViolation;
}

struct CertifyArgs {
  std::string cls;
  std::string f;
  std::optional<std::string> h;
  double a = 0.0;
  double b = 1.0;
  bool derivative = false;
  std::size_t grid = 64;
  double tol = 1e-9;
};

int run_certify(const CertifyArgs& args, OutputFormat format, std::ostream& out) {
  const Interval iv(args.a, args.b);
  const TestFunction f = FunctionFamily::parse(args.f).bind(iv);
  const RealFunction g = args.derivative ? f.abs_derivative() : f.f();
  const std::string subject = fmt::format("{}{} on [{}, {}]", args.derivative ? "|f'| of " : "",
                                          args.f, args.a, args.b);
  CertifyOptions opts;
  opts.grid = args.grid;
  opts.tol = args.tol;

  Certificate cert;
  if (args.cls == "h-convex" || args.cls == "h-concave") {
    if (!args.h) throw UsageError(fmt::format("class {} needs --h", args.cls));
    const HFunction h = HFunction::parse(*args.h);
    cert = args.cls == "h-convex" ? certify_h_convex(g, h, iv, opts, subject)
                                  : certify_h_concave(g, h, iv, opts, subject);
  } else {
    ClassSpec spec;
    try {
      spec = ClassSpec::parse(args.cls);
    } catch (const ConfigError& e) {
      throw UsageError(e.what());
    }
    cert = certify_class(g, spec, iv, opts, subject);
  }

  if (format == OutputFormat::Json) {
    out << render_json(to_json(cert));
  } else {
    std::vector<std::pair<std::string, std::string>> rows = {
        {"class", std::string(to_string(cert.class_name))},
        {"verdict", std::string(to_string(cert.verdict))},
        {"worst_violation", g17(cert.worst_violation)},
        {"undecided_points", std::to_string(cert.undecided_points)}};
    if (cert.witness) {
      rows.emplace_back("witness_x", g17(cert.witness->x));
      rows.emplace_back("witness_y", g17(cert.witness->y));
      rows.emplace_back("witness_t", g17(cert.witness->t));
    }
    out << csv_pairs(rows);
  }
  return kExitOk;
}

struct FalsifyArgs {
  std::string theorem;
  std::size_t budget = 1000;
  std::uint64_t seed = 0;
  bool include_refuted = false;
  std::optional<std::string> h_override;
  std::size_t grid = 16;
};

int run_falsify(const FalsifyArgs& args, OutputFormat format, std::ostream& out) {
  FalsifyOptions opts;
  opts.mode = args.include_refuted ? FalsifyMode::IncludeRefuted : FalsifyMode::CertifiedOnly;
  opts.h_override = args.h_override;
  opts.certify_grid = args.grid;
  const TheoremId id = parse_theorem(args.theorem);
  const FalsifyResult r = falsify(id, args.budget, args.seed, opts);

  if (format == OutputFormat::Json) {
    json candidates = json::array();
    for (const auto& c : r.candidates) {
      json j = to_json(c.result);
      j["numeric_margin"] = c.numeric_margin;
      j["certificate_statuses"] = c.certificate_statuses;
      candidates.push_back(std::move(j));
    }
    json j{{"theorem_id", to_string(id)},
           {"budget", args.budget},
           {"seed", args.seed},
           {"mode", args.include_refuted ? "include_refuted" : "certified_only"},
           {"sampled", r.sampled},
           {"evaluated", r.evaluated},
           {"skipped_uncertified", r.skipped_uncertified},
           {"errors", r.errors},
           {"candidates", std::move(candidates)}};
    out << render_json(j);
  } else {
    std::vector<CaseResult> rows;
    for (const auto& c : r.candidates) rows.push_back(c.result);
    out << to_csv(rows);
  }
  const bool unexpected = !args.include_refuted && !r.candidates.empty();
  return unexpected ? kExitViolation : kExitOk;
}

}  // namespace

int campaign_exit_code(const CampaignSummary& s) {
  if (s.violated > 0) return kExitViolation;
  if (s.errors > 0) return kExitError;
  return kExitOk;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical checks of Simpson-type inequalities for h-convex functions",
               "simpsonbound"};
  app.require_subcommand(1);
  app.fallthrough();
  // --h names a weight family, so help stays long-form only
  app.set_help_flag("--help", "Print this help message and exit");
  std::string format_text = "json";
  bool format_given = false;
  app.add_option_function<std::string>(
         "--format",
         [&](const std::string& v) {
           format_text = v;
           format_given = true;
         },
         "Output format")
      ->check(CLI::IsMember({"json", "csv"}));

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run a campaign described by a YAML file");
  verify_cmd->add_option("config", verify.config, "Campaign file")->required();
  verify_cmd->add_option("-o,--output", verify.output, "Write the report here instead of stdout");
  verify_cmd->add_flag("--no-runtime", verify.no_runtime, "Omit the runtime field");
  verify_cmd->add_flag("--serial", verify.serial, "Evaluate cases on one thread");

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Evaluate one bound instance");
  bound_cmd->add_option("theorem", bound.theorem, "Theorem id (short or full name)")->required();
  bound_cmd->add_option("--f", bound.f, "Function family, e.g. monomial:4")->required();
  bound_cmd->add_option("--h", bound.h, "Weight family, e.g. identity or power:0.5");
  bound_cmd->add_option("--a", bound.a, "Left endpoint")->required();
  bound_cmd->add_option("--b", bound.b, "Right endpoint")->required();
  bound_cmd->add_option("--p", bound.p, "Hoelder exponent p > 1");
  bound_cmd->add_option("--grid", bound.grid, "Certification grid density")->capture_default_str();
  bound_cmd->add_option("--tol", bound.tol, "Certification tolerance")->capture_default_str();

  MeansArgs means;
  auto* means_cmd = app.add_subcommand("means", "Special means and the x^n, 1/x propositions");
  means_cmd->add_option("--a", means.a)->required();
  means_cmd->add_option("--b", means.b)->required();
  means_cmd->add_option("--n", means.n, "Order of the generalized log-mean")->required();
  means_cmd->add_option("--p", means.p, "Hoelder exponent for the x^n bound")->capture_default_str();

  LemmaArgs lemma;
  auto* lemma_cmd = app.add_subcommand("lemma", "Kernel identity residual for one function");
  lemma_cmd->add_option("--f", lemma.f)->required();
  lemma_cmd->add_option("--a", lemma.a)->required();
  lemma_cmd->add_option("--b", lemma.b)->required();

  CertifyArgs certify;
  auto* certify_cmd = app.add_subcommand("certify", "Grid check of a function class");
  certify_cmd
      ->add_option("--class", certify.cls,
                   "convex, godunova-levin, p-function, s-convex:<s>, h-convex, h-concave")
      ->required();
  certify_cmd->add_option("--f", certify.f)->required();
  certify_cmd->add_option("--h", certify.h, "Weight for h-convex / h-concave");
  certify_cmd->add_option("--a", certify.a)->capture_default_str();
  certify_cmd->add_option("--b", certify.b)->capture_default_str();
  certify_cmd->add_flag("--derivative", certify.derivative, "Check |f'| instead of f");
  certify_cmd->add_option("--grid", certify.grid)->capture_default_str();
  certify_cmd->add_option("--tol", certify.tol)->capture_default_str();

  FalsifyArgs falsify_args;
  auto* falsify_cmd = app.add_subcommand("falsify", "Randomized counterexample search");
  falsify_cmd->add_option("theorem", falsify_args.theorem)->required();
  falsify_cmd->add_option("--budget", falsify_args.budget)->capture_default_str();
  falsify_cmd->add_option("--seed", falsify_args.seed)->capture_default_str();
  falsify_cmd->add_flag("--include-refuted", falsify_args.include_refuted,
                        "Also sample outside the hypotheses");
  falsify_cmd->add_option("--h-override", falsify_args.h_override,
                          "Force this weight, e.g. power:2");
  falsify_cmd->add_option("--grid", falsify_args.grid)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  }

  const OutputFormat format = parse_output_format(format_text);
  const std::optional<OutputFormat> explicit_format =
      format_given ? std::optional<OutputFormat>(format) : std::nullopt;

  try {
    if (*verify_cmd) return run_verify(verify, explicit_format, out, err);
    if (*bound_cmd) return run_bound(bound, format, out);
    if (*means_cmd) return run_means(means, format, out);
    if (*lemma_cmd) return run_lemma(lemma, format, out);
    if (*certify_cmd) return run_certify(certify, format, out);
    if (*falsify_cmd) return run_falsify(falsify_args, format, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace simpsonbound
