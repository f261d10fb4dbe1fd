#include "sgws/io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "sgws/errors.hpp"

namespace sgws::io {

namespace {

double parse_number(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::Validation, "cannot parse number '" + std::string(text) + "'");
  }
  return value;
}

double entry_value(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_real(j.get<std::string>());
  throw Error(ErrorKind::Validation, "coefficient entry must be a number or a \"p/q\" string");
}

std::vector<std::size_t> digits_of(std::size_t x, std::size_t d, std::size_t N) {
  std::vector<std::size_t> out(N);
  for (std::size_t r = N; r-- > 0;) {
    out[r] = x % d;
    x /= d;
  }
  return out;
}

}  // namespace

double parse_real(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_number(text);
  const double num = parse_number(text.substr(0, slash));
  const double den = parse_number(text.substr(slash + 1));
  if (den == 0.0) throw Error(ErrorKind::Validation, "zero denominator in '" + std::string(text) + "'");
  return num / den;
}

std::vector<cplx> parse_coefficients(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Validation, std::string("malformed coefficient list: ") + e.what());
  }
  if (!j.is_array() || j.empty()) {
    throw Error(ErrorKind::Validation, "coefficients must be a nonempty list of [re, im] pairs");
  }
  std::vector<cplx> out;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) {
      throw Error(ErrorKind::Validation, "each coefficient must be a [re, im] pair");
    }
    out.emplace_back(entry_value(pair[0]), entry_value(pair[1]));
  }
  return out;
}

json matrix_to_json(const ComplexDense& m) {
  json out = json::array();
  for (const cplx& x : m.data()) out.push_back({x.real(), x.imag()});
  return out;
}

ComplexDense matrix_from_json(const json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array() || j.size() != rows * cols) {
    throw Error(ErrorKind::Shape, "matrix must have " + std::to_string(rows * cols) + " entries");
  }
  std::vector<cplx> entries;
  entries.reserve(j.size());
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2) {
      throw Error(ErrorKind::Validation, "matrix entries must be [re, im] pairs");
    }
    entries.emplace_back(pair[0].get<double>(), pair[1].get<double>());
  }
  return ComplexDense(rows, cols, std::move(entries));
}

json to_json(const sep::ProductDecomposition& decomposition) {
  json terms = json::array();
  for (const auto& term : decomposition.terms) {
    json factors = json::array();
    for (const auto& f : term.factors) factors.push_back(matrix_to_json(f));
    terms.push_back({{"weight", term.weight}, {"factors", std::move(factors)}});
  }
  return {{"d", decomposition.d}, {"N", decomposition.N}, {"terms", std::move(terms)}};
}

sep::ProductDecomposition decomposition_from_json(const json& j) {
  sep::ProductDecomposition out;
  try {
    out.d = j.at("d").get<std::size_t>();
    out.N = j.at("N").get<std::size_t>();
    for (const auto& term : j.at("terms")) {
      sep::ProductTerm t;
      t.weight = term.at("weight").get<double>();
      for (const auto& f : term.at("factors")) t.factors.push_back(matrix_from_json(f, out.d, out.d));
      out.terms.push_back(std::move(t));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Validation, std::string("malformed decomposition: ") + e.what());
  }
  return out;
}

json to_json(const sep::Verification& v) {
  return {{"pass", v.pass},
          {"reconstruction_error", v.reconstruction_error},
          {"min_factor_eig", v.min_factor_eig},
          {"weight_sum_error", v.weight_sum_error},
          {"max_factor_trace_error", v.max_factor_trace_error},
          {"max_factor_hermitian_defect", v.max_factor_hermitian_defect},
          {"weights_in_range", v.weights_in_range},
          {"failure", v.failure}};
}

json to_json(const sep::ToleranceRecord& t) {
  return {{"hermitian", t.hermitian},
          {"psd", t.psd},
          {"reconstruction", t.reconstruction},
          {"weight_sum", t.weight_sum},
          {"cauchy_schwarz", t.cauchy_schwarz},
          {"critical_slack", t.critical_slack},
          {"jacobi_off_diagonal", t.jacobi_off_diagonal},
          {"bisection_iterations", t.bisection_iterations}};
}

json to_json(const sep::CsViolation& v, std::size_t d, std::size_t N) {
  return {{"n", digits_of(v.n, d, N)},   {"m", digits_of(v.m, d, N)},
          {"mu", digits_of(v.mu, d, N)}, {"nu", digits_of(v.nu, d, N)},
          {"sqrt_rho_nn_rho_mm", v.lhs}, {"abs_rho_mu_nu", v.rhs}};
}

json to_json(const sep::PptResult& result) {
  return {{"subset", result.subset}, {"min_eigenvalue", result.min_eigenvalue}};
}

json coefficients_to_json(const std::vector<cplx>& alpha) {
  json out = json::array();
  for (const cplx& a : alpha) out.push_back({a.real(), a.imag()});
  return out;
}

}  // namespace sgws::io
