#include "mirrorsim/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mirrorsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_kappa(double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa))
    throw std::invalid_argument("kappa must be non-negative");
}

void check_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw std::invalid_argument(std::string(name) + " must be finite");
}

}  // namespace

BranchState evolve_state(double kappa, Complex beta, double theta) {
  check_kappa(kappa);
  check_finite(theta, "theta");
  const Complex rot = std::exp(Complex(0.0, -theta));
  BranchState out;
  out.beta_b = beta * rot;
  out.beta_a = beta * rot + kappa * (1.0 - rot);
  out.kerr_phase = kappa * kappa * (theta - std::sin(theta));
  return out;
}

OffDiagonal off_diagonal_coherent(double kappa, Complex beta, double theta) {
  check_kappa(kappa);
  check_finite(theta, "theta");
  const double modulus =
      0.5 * std::exp(-kappa * kappa * (1.0 - std::cos(theta)));
  // Kerr phase plus the drive-induced classical phase; the latter carries the
  // initial-condition dependence that averages out at full periods.
  const Complex rot = std::exp(Complex(0.0, -theta));
  const double phase = kappa * kappa * (theta - std::sin(theta)) +
                       2.0 * kappa * std::imag(beta * (1.0 - rot));
  return {std::polar(modulus, phase)};
}

OffDiagonal off_diagonal_thermal(double kappa, double nbar, double theta) {
  check_kappa(kappa);
  check_finite(theta, "theta");
  if (!(nbar >= 0.0)) throw std::invalid_argument("nbar must be non-negative");
  const double modulus =
      0.5 * std::exp(-kappa * kappa * (2.0 * nbar + 1.0) * (1.0 - std::cos(theta)));
  const double phase = kappa * kappa * (theta - std::sin(theta));
  return {std::polar(modulus, phase)};
}

VisibilityCurve visibility_curve(double kappa, double nbar,
                                 const std::vector<double>& thetas,
                                 const AttenuationFn& attenuation) {
  VisibilityCurve curve;
  curve.thetas = thetas;
  curve.visibility.reserve(thetas.size());
  curve.phase.reserve(thetas.size());
  for (double theta : thetas) {
    check_finite(theta, "theta");
    const OffDiagonal od = off_diagonal_thermal(kappa, nbar, theta);
    const double att = attenuation ? attenuation(theta) : 1.0;
    curve.visibility.push_back(od.visibility() * att);
    curve.phase.push_back(od.phase());
  }
  return curve;
}

double revival_width(double kappa, double omega_m, double nbar) {
  check_kappa(kappa);
  if (!(omega_m > 0.0)) throw std::invalid_argument("omega_m must be positive");
  if (!(nbar >= 0.0)) throw std::invalid_argument("nbar must be non-negative");
  const double period = kTwoPi / omega_m;
  if (nbar == 0.0 || kappa == 0.0) return period;  // ground-state regime
  return std::min(period, 2.0 / (kappa * omega_m * std::sqrt(nbar)));
}

std::vector<double> revival_theta_grid(double kappa, double nbar,
                                       int base_samples) {
  if (base_samples < 2) throw std::invalid_argument("need at least 2 samples");
  std::vector<double> grid;
  grid.reserve(base_samples + 1024);
  for (int i = 0; i <= base_samples; ++i)
    grid.push_back(kTwoPi * i / base_samples);

  // Local scale of the visibility structure near theta = 0 and 2 pi.
  const double scale = 1.0 / std::max(1.0, kappa * std::sqrt(2.0 * nbar + 1.0));
  if (scale < kTwoPi / base_samples) {
    const double step = scale / 25.0;
    const double span = 8.0 * scale;
    for (double d = step; d <= span; d += step) {
      grid.push_back(d);
      grid.push_back(kTwoPi - d);
    }
  }

  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             grid.end());
  grid.front() = 0.0;
  grid.back() = kTwoPi;
  return grid;
}

double revival_fwhm(const VisibilityCurve& curve) {
  const auto& t = curve.thetas;
  const auto& v = curve.visibility;
  if (t.size() < 2 || t.size() != v.size())
    throw std::invalid_argument("curve must hold at least two matched samples");
  const double half = 0.5 * v.back();
  for (std::size_t i = t.size() - 1; i-- > 0;) {
    if (v[i] < half) {
      const double frac = (half - v[i]) / (v[i + 1] - v[i]);
      const double theta_half = t[i] + frac * (t[i + 1] - t[i]);
      return 2.0 * (t.back() - theta_half);
    }
  }
  return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace mirrorsim
