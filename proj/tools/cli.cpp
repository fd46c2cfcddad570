#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "wecp/comparison.hpp"
#include "wecp/error.hpp"
#include "wecp/protocols.hpp"

namespace wecp::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20131017;

void emit_error(std::ostream& err, std::string_view kind,
                const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
}

std::string_view protocol_name(Protocol p) {
  return p == Protocol::kSinglePhoton ? "single-photon" : "polarization";
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ';';
    s += format_sig10(xs[i]);
  }
  return s;
}

}  // namespace

std::string format_sig10(double value) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  if (value == 0.0) return "0.000000000";
  const int exponent = static_cast<int>(std::floor(std::log10(std::abs(value))));
  int decimals = std::max(0, 9 - exponent);
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  // Rounding up to the next power of ten adds a digit; drop one decimal.
  if (decimals > 0 &&
      std::abs(std::strtod(buf, nullptr)) >= std::pow(10.0, exponent + 1)) {
    std::snprintf(buf, sizeof buf, "%.*f", decimals - 1, value);
  }
  return buf;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("ECP_SEED"); env && *env) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end && *end == '\0') return v;
  }
  return kDefaultSeed;
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::optional<WCoefficients> coeffs;
  try {
    coeffs = WCoefficients::from_weights(config.coeffs2, config.phases);
  } catch (const Error& e) {
    emit_error(err, to_string(e.kind()), e.what());
    return kExitUsage;
  }

  const RunReport report = config.protocol == Protocol::kSinglePhoton
                               ? run_single_photon_ecp(*coeffs)
                               : run_polarization_ecp(*coeffs);
  const double analytic = analytic_total_probability(*coeffs);
  const bool ok = std::abs(report.total_prob - analytic) <= kMatchTol &&
                  report.fidelity_to_target >= 1.0 - kMatchTol;

  switch (config.format) {
    case OutputFormat::kJson: {
      json j{{"protocol", protocol_name(config.protocol)},
             {"coeffs2", config.coeffs2},
             {"phases", config.phases.empty()
                            ? std::vector<double>(config.coeffs2.size(), 0.0)
                            : config.phases},
             {"step_probs", report.step_probs},
             {"total_prob", report.total_prob},
             {"analytic_prob", analytic},
             {"fidelity", report.fidelity_to_target}};
      out << j.dump(2) << '\n';
      break;
    }
    case OutputFormat::kCsv: {
      out << "field,value\n";
      out << "protocol," << protocol_name(config.protocol) << '\n';
      for (std::size_t i = 0; i < report.step_probs.size(); ++i) {
        out << "step_prob_" << i + 1 << ',' << format_sig10(report.step_probs[i])
            << '\n';
      }
      out << "total_prob," << format_sig10(report.total_prob) << '\n';
      out << "analytic_prob," << format_sig10(analytic) << '\n';
      out << "fidelity," << format_sig10(report.fidelity_to_target) << '\n';
      break;
    }
    case OutputFormat::kText: {
      out << "protocol:      " << protocol_name(config.protocol) << '\n';
      out << "coeffs2:       " << join(config.coeffs2) << '\n';
      for (std::size_t i = 0; i < report.steps.size(); ++i) {
        const auto& s = report.steps[i];
        out << "step " << i + 1 << ":        party " << s.party + 1
            << ", t=" << format_sig10(s.transmittance)
            << ", detector " << s.detector.name()
            << ", kept " << format_sig10(s.kept_probability) << '\n';
      }
      out << "total_prob:    " << format_sig10(report.total_prob) << '\n';
      out << "analytic_prob: " << format_sig10(analytic) << '\n';
      out << "fidelity:      " << format_sig10(report.fidelity_to_target) << '\n';
      out << "final_state:   " << report.final_state.to_string() << '\n';
      out << (ok ? "OK" : "MISMATCH") << '\n';
      break;
    }
  }
  return ok ? kExitOk : kExitViolation;
}

int cmd_compare(const CompareConfig& config, std::ostream& out,
                std::ostream& err) {
  std::vector<CurveSpec> curves;
  try {
    if (config.caps.empty()) {
      throw Error(ErrorKind::kDomainError, "at least one cap pair is required");
    }
    if (config.alphas.empty() && config.alpha_points == 0) {
      throw Error(ErrorKind::kDomainError, "alpha grid must not be empty");
    }
    curves = curves_for_caps(config.caps);
  } catch (const Error& e) {
    emit_error(err, to_string(e.kind()), e.what());
    return kExitUsage;
  }

  const auto grid = config.alphas.empty()
                        ? default_alpha_grid(config.alpha_points)
                        : config.alphas;
  const SweepTable table = figure3_sweep(grid, curves, /*skip_invalid=*/true);
  out << "alpha,curve,probability\n";
  for (const auto& row : table.rows) {
    out << format_sig10(row.alpha) << ',' << row.curve_id << ','
        << format_sig10(row.probability) << '\n';
  }
  if (table.omitted_points > 0) {
    out << "# omitted " << table.omitted_points
        << " alpha values outside the sweep domain (DomainError)\n";
  }
  return kExitOk;
}

int cmd_verify(const VerifyConfig& config, std::ostream& out,
               std::ostream& err) {
  if (config.trials < 1) {
    emit_error(err, "UsageError", "--trials must be >= 1");
    return kExitUsage;
  }
  if (config.n_min < 2 || config.n_max < config.n_min) {
    emit_error(err, "UsageError", "need 2 <= n-min <= n-max");
    return kExitUsage;
  }
  std::optional<WCoefficients> forced;
  if (!config.forced_coeffs2.empty()) {
    try {
      forced = WCoefficients::from_weights(config.forced_coeffs2);
    } catch (const Error& e) {
      emit_error(err, to_string(e.kind()), e.what());
      return kExitUsage;
    }
  }

  const std::uint64_t seed = resolve_seed(config.seed);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> n_dist(config.n_min, config.n_max);

  double max_error = 0.0;
  double min_fidelity = 1.0;
  double last_total = 0.0;
  std::vector<std::string> offenders;
  for (long long trial = 0; trial < config.trials; ++trial) {
    const WCoefficients c =
        forced ? *forced
               : sample_coefficients(static_cast<std::size_t>(n_dist(rng)), rng);
    const double analytic = analytic_total_probability(c);
    const RunReport single = run_single_photon_ecp(c);
    const RunReport polar = run_polarization_ecp(c);
    const double error = std::max(std::abs(single.total_prob - analytic),
                                  std::abs(polar.total_prob - analytic));
    const double fid =
        std::min(single.fidelity_to_target, polar.fidelity_to_target);
    max_error = std::max(max_error, error);
    min_fidelity = std::min(min_fidelity, fid);
    last_total = single.total_prob;
    if (!(error < kMatchTol) || !(fid > 1.0 - kMatchTol)) {
      offenders.push_back("trial " + std::to_string(trial) + ": coeffs2=" +
                          join(c.weights()) + " phases=" + join(c.phases()));
    }
  }

  const bool ok = offenders.empty();
  if (config.format == OutputFormat::kJson) {
    json j{{"trials", config.trials},
           {"n_range", {config.n_min, config.n_max}},
           {"seed", seed},
           {"max_abs_error", max_error},
           {"min_fidelity", min_fidelity},
           {"violations", offenders},
           {"ok", ok}};
    if (config.trials == 1) j["total_prob"] = last_total;
    out << j.dump(2) << '\n';
  } else {
    out << "trials:        " << config.trials << '\n';
    out << "n_range:       " << config.n_min << ".." << config.n_max << '\n';
    out << "seed:          " << seed << '\n';
    if (config.trials == 1) {
      out << "total_prob:    " << format_sig10(last_total) << '\n';
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", max_error);
    out << "max_abs_error: " << buf << '\n';
    out << "min_fidelity:  " << format_sig10(min_fidelity) << '\n';
    for (const auto& o : offenders) out << "VIOLATION " << o << '\n';
    out << (ok ? "OK" : "FAILED") << '\n';
  }
  return ok ? kExitOk : kExitViolation;
}

int main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"W-state entanglement concentration simulator"};
  app.require_subcommand(1);

  RunConfig run;
  std::string run_protocol = "single-photon";
  std::string run_format = "json";
  std::uint64_t run_seed = 0;
  auto* run_cmd = app.add_subcommand("run", "Run one concentration protocol");
  run_cmd->add_option("--protocol", run_protocol, "single-photon | polarization")
      ->check(CLI::IsMember({"single-photon", "polarization"}));
  run_cmd->add_option("--coeffs2", run.coeffs2, "Squared moduli, comma separated")
      ->delimiter(',')
      ->required();
  run_cmd->add_option("--phases", run.phases, "Phases in radians, comma separated")
      ->delimiter(',');
  run_cmd->add_option("--format", run_format, "json | csv | text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  auto* run_seed_opt = run_cmd->add_option("--seed", run_seed, "Unused by run");

  CompareConfig compare;
  std::vector<std::string> cap_strings;
  auto* cmp_cmd = app.add_subcommand("compare", "Emit the four-curve comparison CSV");
  cmp_cmd->add_option("--alpha-points", compare.alpha_points, "Grid size");
  cmp_cmd->add_option("--caps", cap_strings,
                      "Round caps per prior-ECP curve, e.g. 1:1,3:3,5:5")
      ->delimiter(',');
  cmp_cmd->add_option("--alphas", compare.alphas, "Explicit alpha values")
      ->delimiter(',');

  VerifyConfig verify;
  std::string verify_format = "text";
  std::uint64_t verify_seed = 0;
  auto* ver_cmd = app.add_subcommand("verify", "Randomized simulation-vs-closed-form check");
  ver_cmd->add_option("--trials", verify.trials, "Number of random instances");
  ver_cmd->add_option("--n-min", verify.n_min, "Smallest party count");
  ver_cmd->add_option("--n-max", verify.n_max, "Largest party count");
  auto* ver_seed_opt = ver_cmd->add_option("--seed", verify_seed, "RNG seed (default $ECP_SEED)");
  ver_cmd->add_option("--coeffs2", verify.forced_coeffs2,
                      "Use these squared moduli in every trial")
      ->delimiter(',');
  ver_cmd->add_option("--format", verify_format, "json | text")
      ->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    emit_error(err, "UsageError", e.what());
    return kExitUsage;
  }

  auto parse_format = [](const std::string& s) {
    if (s == "csv") return OutputFormat::kCsv;
    if (s == "text") return OutputFormat::kText;
    return OutputFormat::kJson;
  };

  if (run_cmd->parsed()) {
    run.protocol = run_protocol == "polarization" ? Protocol::kPolarization
                                                  : Protocol::kSinglePhoton;
    run.format = parse_format(run_format);
    if (run_seed_opt->count() > 0) run.seed = run_seed;
    return cmd_run(run, out, err);
  }
  if (cmp_cmd->parsed()) {
    if (!cap_strings.empty()) {
      compare.caps.clear();
      for (const auto& s : cap_strings) {
        int c1 = 0, c2 = 0;
        char sep = 0;
        std::istringstream is(s);
        if (!(is >> c1 >> sep >> c2) || sep != ':' || !is.eof()) {
          emit_error(err, "UsageError", "bad cap pair '" + s + "', expected N:M");
          return kExitUsage;
        }
        compare.caps.emplace_back(c1, c2);
      }
    }
    return cmd_compare(compare, out, err);
  }
  verify.format = parse_format(verify_format);
  if (ver_seed_opt->count() > 0) verify.seed = verify_seed;
  return cmd_verify(verify, out, err);
}

}  // namespace wecp::cli
