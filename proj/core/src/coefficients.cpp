#include "hopfduet/coefficients.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "hopfduet/errors.hpp"

namespace hopfduet {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

NormalFormCoefficients NormalFormCoefficients::create(
    double omega, Complex alpha01, const std::array<Complex, 4>& alpha_eps,
    const std::array<Complex, 4>& beta_eps) {
  NormalFormCoefficients c;
  c.omega = omega;
  c.alpha01 = alpha01;
  c.alpha_eps = alpha_eps;
  c.beta_eps = beta_eps;
  c.validate();
  return c;
}

void NormalFormCoefficients::validate() const {
  if (!std::isfinite(omega) || !finite(alpha01)) {
    throw DomainError("NormalFormCoefficients: non-finite omega/alpha01");
  }
  for (int i = 0; i < 4; ++i) {
    if (!finite(alpha_eps[i]) || !finite(beta_eps[i])) {
      throw DomainError("NormalFormCoefficients: non-finite coupling coefficient");
    }
  }
  if (!(alpha01.real() < 0.0)) {
    throw DomainError("NormalFormCoefficients: Re(alpha01) must be negative (supercritical)");
  }
}

double NormalFormCoefficients::k_stb(int branch) const {
  const double sg = branch >= 0 ? 1.0 : -1.0;
  return alpha_eps[2].real() + alpha_eps[1].real() + beta_eps[3].real() +
         sg * (beta_eps[2].real() + beta_eps[1].real() + alpha_eps[3].real());
}

double NormalFormCoefficients::alpha_bar(double lambda, double eps, int branch) const {
  const double sg = branch >= 0 ? 1.0 : -1.0;
  return lambda + eps * (alpha_eps[0].real() + sg * beta_eps[0].real());
}

double NormalFormCoefficients::c_det() const {
  return beta_eps[0].imag() * alpha01.imag() / alpha01.real();
}

std::string to_json(const NormalFormCoefficients& c) {
  nlohmann::json j;
  j["omega"] = c.omega;
  j["alpha01_re"] = c.alpha01.real();
  j["alpha01_im"] = c.alpha01.imag();
  for (int i = 0; i < 4; ++i) {
    const std::string ai = "alpha_eps" + std::to_string(i);
    const std::string bi = "beta_eps" + std::to_string(i);
    j[ai + "_re"] = c.alpha_eps[i].real();
    j[ai + "_im"] = c.alpha_eps[i].imag();
    j[bi + "_re"] = c.beta_eps[i].real();
    j[bi + "_im"] = c.beta_eps[i].imag();
  }
  return j.dump(2);
}

NormalFormCoefficients coefficients_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("coefficients JSON parse error: ") + e.what());
  }
  auto get = [&](const std::string& key) -> double {
    if (!j.contains(key) || !j[key].is_number()) {
      throw ConfigError("coefficients JSON: missing or non-numeric key '" + key + "'");
    }
    return j[key].get<double>();
  };
  NormalFormCoefficients c;
  c.omega = get("omega");
  c.alpha01 = {get("alpha01_re"), get("alpha01_im")};
  for (int i = 0; i < 4; ++i) {
    const std::string ai = "alpha_eps" + std::to_string(i);
    const std::string bi = "beta_eps" + std::to_string(i);
    c.alpha_eps[i] = {get(ai + "_re"), get(ai + "_im")};
    c.beta_eps[i] = {get(bi + "_re"), get(bi + "_im")};
  }
  c.validate();
  return c;
}

}  // namespace hopfduet
