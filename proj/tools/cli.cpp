#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sgws/cmatrix.hpp"
#include "sgws/ent2q.hpp"
#include "sgws/errors.hpp"
#include "sgws/io.hpp"
#include "sgws/sep.hpp"
#include "sgws/sgws.hpp"

namespace sgws::cli {

namespace {

using json = io::json;

struct RunConfig {
  std::string command;
  std::optional<std::size_t> d;
  std::optional<std::size_t> N;
  std::optional<std::string> alpha;
  std::optional<double> theta;
  std::optional<double> qubit_theta;
  std::optional<std::string> v;
  std::optional<std::string> v_range;
  std::optional<std::string> output;
  std::optional<std::string> format;
  std::uint64_t seed = 0;
  std::size_t samples = 100;
  std::size_t theta_steps = 32;
  bool override_restriction2 = false;
};

std::string num(double x) { return fmt::format("{:.17g}", x); }

Error usage(const std::string& what) { return Error(ErrorKind::Validation, what); }

std::size_t require_N(const RunConfig& c) {
  if (!c.N) throw usage(c.command + ": --N is required");
  return *c.N;
}

std::string format_of(const RunConfig& c, const char* fallback) {
  const std::string f = c.format.value_or(fallback);
  if (f != "json" && f != "csv") throw usage("--format must be json or csv");
  return f;
}

void require_json(const RunConfig& c) {
  if (format_of(c, "json") != "json") throw usage(c.command + ": only --format json is supported");
}

std::string join_subset(const std::vector<std::size_t>& subset) {
  std::string out;
  for (std::size_t k = 0; k < subset.size(); ++k) out += (k ? ";" : "") + std::to_string(subset[k]);
  return out;
}

json nullable(const std::optional<double>& x) { return x ? json(*x) : json(nullptr); }

CoeffVector resolve_coeffs(const RunConfig& c, json& inputs) {
  const int sources = (c.alpha ? 1 : 0) + (c.theta ? 1 : 0) + (c.qubit_theta ? 1 : 0);
  if (sources != 1) throw usage(c.command + ": give exactly one of --alpha, --theta, --qubit-theta");
  CoeffVector coeffs;
  if (c.alpha) {
    const auto parsed = io::parse_coefficients(*c.alpha);
    if (c.d && *c.d != parsed.size()) {
      throw usage("--d " + std::to_string(*c.d) + " disagrees with " +
                  std::to_string(parsed.size()) + " coefficients");
    }
    coeffs = validate_coeffs(parsed, parsed.size());
  } else if (c.theta) {
    if (!c.d) throw usage(c.command + ": --theta needs --d");
    coeffs = family_coeffs(*c.d, *c.theta);
    inputs["theta"] = *c.theta;
  } else {
    if (c.d && *c.d != 2) throw usage("--qubit-theta is only defined for d = 2");
    const std::vector<cplx> alpha{std::sin(*c.qubit_theta), std::cos(*c.qubit_theta)};
    coeffs = validate_coeffs(alpha, 2);
    inputs["qubit_theta"] = *c.qubit_theta;
  }
  inputs["d"] = coeffs.d;
  inputs["alpha"] = io::coefficients_to_json(coeffs.alpha);
  return coeffs;
}

std::vector<double> resolve_vs(const RunConfig& c, json& inputs) {
  if (c.v && c.v_range) throw usage(c.command + ": give --v or --v-range, not both");
  if (c.v) {
    const double v = io::parse_real(*c.v);
    inputs["v"] = v;
    return {v};
  }
  if (!c.v_range) throw usage(c.command + ": --v is required");
  // lo:hi:steps, endpoints included
  std::vector<std::string> parts;
  std::stringstream ss(*c.v_range);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 3) throw usage("--v-range must look like lo:hi:steps");
  const double lo = io::parse_real(parts[0]);
  const double hi = io::parse_real(parts[1]);
  const auto steps = static_cast<std::size_t>(io::parse_real(parts[2]));
  if (steps < 2 || static_cast<double>(steps) != io::parse_real(parts[2])) {
    throw usage("--v-range needs an integer step count of at least 2");
  }
  std::vector<double> vs;
  for (std::size_t k = 0; k < steps; ++k) {
    vs.push_back(k + 1 == steps ? hi : lo + (hi - lo) * static_cast<double>(k) / (steps - 1));
  }
  inputs["v_range"] = {{"lo", lo}, {"hi", hi}, {"steps", steps}};
  return vs;
}

json envelope(const RunConfig& c, json inputs, json results, json witnesses) {
  return {{"command", c.command},
          {"inputs", std::move(inputs)},
          {"tolerances", io::to_json(sep::ToleranceRecord{})},
          {"results", std::move(results)},
          {"witnesses", std::move(witnesses)},
          {"version", kVersion}};
}

struct Emitted {
  std::string text;
  int status = kOk;
};

Emitted cmd_threshold(const RunConfig& c) {
  json inputs;
  const CoeffVector coeffs = resolve_coeffs(c, inputs);
  const std::size_t N = require_N(c);
  inputs["N"] = N;
  const double vc = critical_v(coeffs, N);
  json results = {{"critical_v", vc},
                  {"T", coeffs.T},
                  {"restriction2_ok", coeffs.restriction2_ok},
                  {"restriction2_min_eig", coeffs.restriction2_min_eig}};
  if (c.theta) results["family_critical_v"] = family_critical_v(coeffs.d, N, *c.theta);
  if (format_of(c, "json") == "csv") {
    return {"critical_v,T,restriction2_ok,restriction2_min_eig\n" + num(vc) + "," + num(coeffs.T) +
            "," + (coeffs.restriction2_ok ? "true" : "false") + "," +
            num(coeffs.restriction2_min_eig) + "\n"};
  }
  return {envelope(c, inputs, results, json::object()).dump(2) + "\n"};
}

Emitted cmd_certify(const RunConfig& c) {
  require_json(c);
  json inputs;
  CoeffVector coeffs = resolve_coeffs(c, inputs);
  const std::size_t N = require_N(c);
  inputs["N"] = N;
  const auto vs = resolve_vs(c, inputs);
  if (vs.size() != 1) throw usage("certify takes a single --v");
  inputs["override_restriction2"] = c.override_restriction2;
  const std::size_t d = coeffs.d;
  const SgwsSpec spec = make_spec(std::move(coeffs), N, vs.front());
  const sep::CertReport report = sep::certify(spec, {c.override_restriction2, true});

  json results = {{"verdict", sep::to_string(report.verdict)},
                  {"threshold_formula", report.threshold_formula},
                  {"threshold_numeric", nullable(report.threshold_numeric)},
                  {"restriction2_ok", spec.coeffs.restriction2_ok},
                  {"notes", report.notes}};
  json witnesses = json::object();
  if (report.verification) {
    witnesses["decomposition"] = {{"terms", *report.decomposition_terms},
                                  {"verification", io::to_json(*report.verification)}};
  }
  json ppt = json::array();
  for (const auto& r : report.ppt) ppt.push_back(io::to_json(r));
  witnesses["partial_transpose"] = std::move(ppt);
  witnesses["negative_partial_transpose"] =
      report.ppt_witness ? io::to_json(*report.ppt_witness) : json(nullptr);
  witnesses["cauchy_schwarz_violations"] = report.cs_violation_count;
  witnesses["cauchy_schwarz"] =
      report.cs_witness ? io::to_json(*report.cs_witness, d, N) : json(nullptr);
  return {envelope(c, inputs, results, witnesses).dump(2) + "\n"};
}

Emitted cmd_decompose(const RunConfig& c) {
  require_json(c);
  json inputs;
  CoeffVector coeffs = resolve_coeffs(c, inputs);
  const std::size_t N = require_N(c);
  inputs["N"] = N;
  const auto vs = resolve_vs(c, inputs);
  if (vs.size() != 1) throw usage("decompose takes a single --v");
  inputs["override_restriction2"] = c.override_restriction2;
  const SgwsSpec spec = make_spec(std::move(coeffs), N, vs.front());
  const auto decomposition = sep::decompose_sgws(spec, c.override_restriction2);
  const auto verification = sep::verify_decomposition(decomposition, build_sgws(spec));
  json results = {{"critical_v", critical_v(spec.coeffs, N)},
                  {"terms", decomposition.terms.size()},
                  {"decomposition", io::to_json(decomposition)}};
  json witnesses = {{"verification", io::to_json(verification)}};
  return {envelope(c, inputs, results, witnesses).dump(2) + "\n",
          verification.pass ? kOk : kNumericError};
}

Emitted cmd_ppt(const RunConfig& c) {
  json inputs;
  const CoeffVector coeffs = resolve_coeffs(c, inputs);
  const std::size_t N = require_N(c);
  inputs["N"] = N;
  if (N < 2) throw usage("ppt needs N >= 2");
  const auto vs = resolve_vs(c, inputs);
  const auto splits = sep::bipartitions(N);
  const std::vector<std::size_t> dims(N, coeffs.d);

  json rows = json::array();
  std::string csv = "v,subset,min_eigenvalue\n";
  for (double v : vs) {
    const ComplexDense w = build_sgws(make_spec(coeffs, N, v));
    for (const auto& subset : splits) {
      const double lowest = sep::ppt_min_eig(w, dims, subset);
      rows.push_back({{"v", v}, {"subset", subset}, {"min_eigenvalue", lowest}});
      csv += num(v) + "," + join_subset(subset) + "," + num(lowest) + "\n";
    }
  }
  if (format_of(c, "json") == "csv") return {csv};

  json thresholds = json::array();
  for (const auto& subset : splits) {
    const auto t = sep::ppt_threshold(coeffs, N, subset);
    thresholds.push_back({{"subset", subset}, {"v", t.v}, {"crossed", t.crossed}});
  }
  json results = {{"critical_v", critical_v(coeffs, N)},
                  {"ppt_thresholds", std::move(thresholds)},
                  {"rows", std::move(rows)}};
  return {envelope(c, inputs, results, json::object()).dump(2) + "\n"};
}

Emitted cmd_concurrence(const RunConfig& c) {
  json inputs;
  const CoeffVector coeffs = resolve_coeffs(c, inputs);
  if (coeffs.d != 2) throw usage("concurrence is defined for two qubits (d = 2)");
  if (c.N && *c.N != 2) throw usage("concurrence is defined for two qubits (N = 2)");
  inputs["N"] = 2;
  const auto vs = resolve_vs(c, inputs);
  // Local phases do not change the concurrence, so |alpha| fixes the angle.
  const double angle = std::atan2(std::abs(coeffs.alpha[0]), std::abs(coeffs.alpha[1]));

  json rows = json::array();
  std::string csv = "v,concurrence,eof,closed_form,closed_form_domain\n";
  for (double v : vs) {
    const SgwsSpec spec = make_spec(coeffs, 2, v);
    const double conc = ent2q::concurrence(ent2q::TwoQubitState(build_sgws(spec)));
    const double formation = ent2q::eof(conc);
    const auto closed = ent2q::concurrence_closed_form(v, angle);
    rows.push_back({{"v", v},
                    {"concurrence", conc},
                    {"eof", formation},
                    {"closed_form", closed.value},
                    {"closed_form_domain", closed.closed_form}});
    csv += num(v) + "," + num(conc) + "," + num(formation) + "," + num(closed.value) + "," +
           (closed.closed_form ? "true" : "false") + "\n";
  }
  if (format_of(c, "json") == "csv") return {csv};
  json results = {{"critical_v", critical_v(coeffs, 2)}, {"rows", std::move(rows)}};
  return {envelope(c, inputs, results, json::object()).dump(2) + "\n"};
}

Emitted cmd_family_scan(const RunConfig& c) {
  if (!c.d) throw usage("family-scan: --d is required");
  const std::size_t d = *c.d;
  const std::size_t N = require_N(c);
  if (c.theta_steps < 1) throw usage("family-scan: --theta-steps must be positive");
  json inputs = {{"d", d}, {"N", N}, {"theta_steps", c.theta_steps}};

  json rows = json::array();
  std::string csv = "theta,critical_v,eig_plus,eig_minus,zeros\n";
  for (std::size_t k = 0; k < c.theta_steps; ++k) {
    const double theta =
        0.5 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(c.theta_steps);
    const double vc = family_critical_v(d, N, theta);
    const auto eigs = family_rho_eigs(d, theta);
    rows.push_back({{"theta", theta},
                    {"critical_v", vc},
                    {"eig_plus", eigs[0]},
                    {"eig_minus", eigs[1]},
                    {"zeros", d - 2}});
    csv += num(theta) + "," + num(vc) + "," + num(eigs[0]) + "," + num(eigs[1]) + "," +
           std::to_string(d - 2) + "\n";
  }
  if (format_of(c, "csv") == "csv") return {csv};
  return {envelope(c, inputs, {{"rows", std::move(rows)}}, json::object()).dump(2) + "\n"};
}

Emitted cmd_conjecture_scan(const RunConfig& c) {
  if (!c.d) throw usage("conjecture-scan: --d is required");
  const std::size_t N = require_N(c);
  const auto report = sep::conjecture_scan(*c.d, N, c.samples, c.seed);
  json inputs = {{"d", *c.d}, {"N", N}, {"samples", c.samples}, {"seed", c.seed}};

  json rows = json::array();
  std::string csv = "sample,formula_v,ppt_threshold,difference,restriction2_min_eig,subset\n";
  for (const auto& row : report.rows) {
    rows.push_back({{"sample", row.sample},
                    {"alpha", io::coefficients_to_json(row.alpha)},
                    {"restriction2_min_eig", row.restriction2_min_eig},
                    {"formula_v", row.formula_v},
                    {"ppt_threshold", row.ppt_v},
                    {"subset", row.subset},
                    {"crossed", row.crossed},
                    {"difference", row.difference}});
    csv += std::to_string(row.sample) + "," + num(row.formula_v) + "," + num(row.ppt_v) + "," +
           num(row.difference) + "," + num(row.restriction2_min_eig) + "," +
           join_subset(row.subset) + "\n";
  }
  if (format_of(c, "json") == "csv") return {csv};
  json results = {{"drawn", report.samples}, {"kept", report.rows.size()}, {"rows", std::move(rows)}};
  return {envelope(c, inputs, results, json::object()).dump(2) + "\n"};
}

int status_for(ErrorKind kind) {
  return kind == ErrorKind::Numeric || kind == ErrorKind::NotPsd ? kNumericError : kValidationError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Separability certification for special generalized Werner states", "sgws"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RunConfig config;
  auto add_state = [&](CLI::App* sub, bool needs_v) {
    sub->add_option("--d", config.d, "local dimension (inferred from --alpha when omitted)");
    sub->add_option("--N", config.N, "number of parties");
    sub->add_option("--alpha", config.alpha, "coefficients as [[re,im],...]; entries may be \"p/q\"");
    sub->add_option("--theta", config.theta, "theta-family parameter");
    sub->add_option("--qubit-theta", config.qubit_theta, "d = 2 only: alpha = (sin, cos)");
    if (needs_v) {
      sub->add_option("--v", config.v, "mixing parameter in [0, 1] (\"p/q\" accepted)");
    }
    sub->add_option("--output", config.output, "write the report here instead of stdout");
    sub->add_option("--format", config.format, "json or csv");
  };

  auto* threshold = app.add_subcommand("threshold", "critical v of the separability threshold");
  add_state(threshold, false);
  auto* certify = app.add_subcommand("certify", "certify separability or entanglement at v");
  add_state(certify, true);
  certify->add_flag("--override-restriction2", config.override_restriction2,
                    "attempt the construction even when the PSD restriction fails");
  auto* decompose = app.add_subcommand("decompose", "emit a verified separable decomposition");
  add_state(decompose, true);
  decompose->add_flag("--override-restriction2", config.override_restriction2,
                      "attempt the construction even when the PSD restriction fails");
  auto* ppt = app.add_subcommand("ppt", "partial-transpose spectra and thresholds");
  add_state(ppt, true);
  ppt->add_option("--v-range", config.v_range, "sweep lo:hi:steps");
  auto* concurrence = app.add_subcommand("concurrence", "two-qubit concurrence and EoF");
  add_state(concurrence, true);
  concurrence->add_option("--v-range", config.v_range, "sweep lo:hi:steps");
  auto* family = app.add_subcommand("family-scan", "closed forms along the theta family");
  family->add_option("--d", config.d, "local dimension")->required();
  family->add_option("--N", config.N, "number of parties")->required();
  family->add_option("--theta-steps", config.theta_steps, "theta grid size on [0, pi/2)");
  family->add_option("--output", config.output, "write the report here instead of stdout");
  family->add_option("--format", config.format, "csv (default) or json");
  auto* conjecture = app.add_subcommand("conjecture-scan", "random alpha violating the PSD restriction");
  conjecture->add_option("--d", config.d, "local dimension")->required();
  conjecture->add_option("--N", config.N, "number of parties")->required();
  conjecture->add_option("--samples", config.samples, "number of alpha vectors drawn");
  conjecture->add_option("--seed", config.seed, "SplitMix64 seed");
  conjecture->add_option("--output", config.output, "write the report here instead of stdout");
  conjecture->add_option("--format", config.format, "json (default) or csv");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "sgws: " << e.what() << "\n" << app.help();
    return kValidationError;
  }

  const auto* chosen = app.get_subcommands().front();
  config.command = chosen->get_name();

  try {
    Emitted emitted;
    if (chosen == threshold) emitted = cmd_threshold(config);
    else if (chosen == certify) emitted = cmd_certify(config);
    else if (chosen == decompose) emitted = cmd_decompose(config);
    else if (chosen == ppt) emitted = cmd_ppt(config);
    else if (chosen == concurrence) emitted = cmd_concurrence(config);
    else if (chosen == family) emitted = cmd_family_scan(config);
    else emitted = cmd_conjecture_scan(config);

    if (config.output) {
      std::ofstream file(*config.output, std::ios::binary);
      if (!file) throw usage("cannot open output file " + *config.output);
      file << emitted.text;
    } else {
      out << emitted.text;
    }
    if (emitted.status != kOk) err << "sgws: " << config.command << ": verification failed\n";
    return emitted.status;
  } catch (const Error& e) {
    err << "sgws: " << config.command << ": " << to_string(e.kind()) << ": " << e.what() << "\n";
    const bool above_threshold = std::string_view(e.what()).find("critical value") != std::string_view::npos;
    if (e.kind() == ErrorKind::Refused && config.command == "decompose" && above_threshold) {
      err << "sgws: hint: run `certify` for an entanglement witness\n";
    }
    return status_for(e.kind());
  } catch (const std::exception& e) {
    err << "sgws: " << config.command << ": " << e.what() << "\n";
    return kNumericError;
  }
}

}  // namespace sgws::cli
