#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace mirrorsim {

using Complex = std::complex<double>;

/// The two mirror branches of the entangled photon-mirror state at phase
/// theta, for an initial mirror coherent state beta. Branch B leaves the
/// mirror free, branch A drives it through the photon's radiation pressure.
struct BranchState {
  Complex beta_b;     // beta * exp(-i theta)
  Complex beta_a;     // beta * exp(-i theta) + kappa (1 - exp(-i theta))
  double kerr_phase;  // kappa^2 (theta - sin theta)
};

/// Off-diagonal element of the photon's reduced density matrix. Twice its
/// modulus is the maximum interference visibility.
struct OffDiagonal {
  Complex value;

  double modulus() const { return std::abs(value); }
  double phase() const { return std::arg(value); }
  double visibility() const { return 2.0 * std::abs(value); }
};

struct VisibilityCurve {
  std::vector<double> thetas;
  std::vector<double> visibility;
  std::vector<double> phase;  // arg of the off-diagonal element, wrapped
};

/// Optional per-theta attenuation in [0, 1] applied to the modulus.
using AttenuationFn = std::function<double(double)>;

BranchState evolve_state(double kappa, Complex beta, double theta);

/// Exact off-diagonal element for an initial coherent mirror state:
///   1/2 exp(-kappa^2 (1 - cos theta))
///       exp(i [kappa^2 (theta - sin theta) + 2 kappa Im(beta (1 - e^{-i theta}))]).
/// The modulus is independent of beta; the beta term is the classical phase
/// picked up from the photon-driven change of the cavity length.
OffDiagonal off_diagonal_coherent(double kappa, Complex beta, double theta);

/// Gaussian (thermal) average of the coherent-state element:
///   1/2 exp(-kappa^2 (2 nbar + 1)(1 - cos theta)) exp(i kappa^2 (theta - sin theta)).
OffDiagonal off_diagonal_thermal(double kappa, double nbar, double theta);

VisibilityCurve visibility_curve(double kappa, double nbar,
                                 const std::vector<double>& thetas,
                                 const AttenuationFn& attenuation = {});

/// Width of the revival peak, 2/(kappa omega_m sqrt(nbar)), in seconds.
/// In the ground-state regime (nbar = 0) the revival is not narrow; the
/// full period 2*pi/omega_m is returned as the cap.
double revival_width(double kappa, double omega_m, double nbar);

/// Theta grid over [0, 2*pi]: a uniform base plus local refinement around
/// theta = 0 and theta = 2*pi, where the visibility structure is orders of
/// magnitude narrower than the period for large nbar.
std::vector<double> revival_theta_grid(double kappa, double nbar,
                                       int base_samples);

/// Full width at half maximum of the revival peak at the trailing edge of a
/// curve sampled up to 2*pi, by linear interpolation of the half-crossing.
/// Returns NaN when the curve never drops below half of its final value.
double revival_fwhm(const VisibilityCurve& curve);

}  // namespace mirrorsim
