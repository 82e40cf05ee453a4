#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "hopfduet/coefficients.hpp"
#include "hopfduet/states.hpp"

namespace hopfduet::analysis {

enum class Branch : int { plus = +1, minus = -1 };
inline int sign_of(Branch b) { return static_cast<int>(b); }

/// Eigenvalues of the origin: mu+ = lambda + i omega + eps (ae0 + be0),
/// mu- with the minus sign, plus conjugates. Order: (mu+, conj mu+, mu-, conj mu-).
std::array<Complex, 4> origin_eigenvalues(const UnfoldingParams& p,
                                          const NormalFormCoefficients& c);

/// The explicit 4x4 origin Jacobian in (z1, conj z1, z2, conj z2) coordinates.
Eigen::Matrix4cd origin_jacobian(const UnfoldingParams& p, const NormalFormCoefficients& c);

/// lambda on the Hopf curve C^{+-}_HB at the given eps.
double hopf_curve_lambda(double eps, Branch branch, const NormalFormCoefficients& c);

struct HopfCurvePoint {
  Branch branch;
  double lambda;
  double eps;
  double alpha_bar;
};

struct OscBranchPoint {
  Branch branch;      // plus: dphi = 0 (IP), minus: dphi = pi (AP)
  double s_osc;       // amplitude of the reduced fixed point
  double lambda, eps;
  double k_stb;
};

/// Amplitude of the phase-locked branch:
/// s_osc = sqrt(-4 alpha_bar / (alpha01R + eps K_stb)).
/// Throws NotAdmissibleError when alpha_bar <= 0 and a supercriticality-lost
/// error (also NotAdmissibleError) when the denominator is >= 0.
OscBranchPoint s_osc(const UnfoldingParams& p, Branch branch, const NormalFormCoefficients& c);

/// Block-diagonal 3x3 Jacobian of the reduced system at the branch point,
/// entries in closed form evaluated at s = s_osc.
Eigen::Matrix3d jacobian_at_osc(const UnfoldingParams& p, Branch branch,
                                const NormalFormCoefficients& c);

/// Closed-form Jacobian entries at arbitrary s on the invariant subspace
/// (exposed for finite-difference cross-checks).
struct BlockTerms {
  double c_ss, c_dd, c_ddphi, c_dphid, c_dphidphi;
};
BlockTerms block_terms(double s, const UnfoldingParams& p, Branch branch,
                       const NormalFormCoefficients& c);

enum class NodeType {
  stable_node,
  stable_focus,
  saddle_1u,
  saddle_2u,
  saddle_focus,
  degenerate,
};
std::string to_string(NodeType t);

/// Stability data of the transverse 2x2 block at the branch point. The
/// tr/det/disc fields are exact values from the closed-form block; the
/// series_* fields are the second-order expressions in (lambda, eps).
struct StabilityReport {
  Branch branch;
  double tr, det, disc;          // exact; disc = tr^2 - 4 det
  Complex mu1, mu2, mu3;         // mu1 = c_ss; mu2,3 = (tr -+ sqrt(disc))/2
  double series_tr, series_det, series_disc;
  NodeType node_type;
};
StabilityReport tr_det_disc(const UnfoldingParams& p, Branch branch,
                            const NormalFormCoefficients& c);

// Second-order formulas on their own (also used by region boundaries).
double series_trace(const UnfoldingParams& p, Branch branch, const NormalFormCoefficients& c);
double series_determinant(const UnfoldingParams& p, Branch branch,
                         const NormalFormCoefficients& c);
double series_discriminant(const UnfoldingParams& p, Branch branch,
                          const NormalFormCoefficients& c);

enum class Sign { positive, negative, zero };
enum class HopfSubcase { hopf_possible, hopf_impossible, not_applicable };
enum class CaseLabel { case1, case2, case3, case1m, case2m, case3m };
std::string to_string(CaseLabel l);
std::string to_string(HopfSubcase h);

struct CaseClassification {
  Sign beta_eps0R_sign;
  double cdet;
  Sign cdet_plus_beta_sign;
  HopfSubcase hopf_subcase;
  CaseLabel case_label;
};

/// Sign taxonomy of section-4 type: which branch can lose stability and how.
/// |be0R| < 1e-6 (|be0I| + 1) counts as the degenerate case 3.
CaseClassification classify_case(const NormalFormCoefficients& c);

enum class CurveKind { HB, TR0, DET0, DISC0 };
std::string to_string(CurveKind k);

enum class CurveModel { series, exact };

struct CurvePoint {
  Branch branch;
  CurveKind curve;
  double eps;
  double lambda;
};

/// Solve each boundary condition for lambda over an eps grid. The series
/// model uses the second-order formulas (TR0 linear, DET0 linear, DISC0
/// quadratic in lambda); the exact model uses the closed-form block
/// (TR0 linear, DET0 and DISC0 quadratic). Missing real roots are simply
/// absent from the output. Rows ordered by (branch, curve, eps, lambda).
std::vector<CurvePoint> region_boundaries(const std::vector<double>& eps_grid, Branch branch,
                                          const NormalFormCoefficients& c,
                                          CurveModel model = CurveModel::series);

/// Bistability predicate for the classified case at a parameter point,
/// evaluated with the second-order trace/determinant.
bool bistable_region(const UnfoldingParams& p, const NormalFormCoefficients& c);

/// Bautin estimate eps_BT = -alpha01R / K-_stb (requires K-_stb > 0).
double bautin_estimate(const NormalFormCoefficients& c);

/// epsilon = 0 catalogue of invariant objects of the reduced system.
struct UncoupledObject {
  std::string name;        // "S0", "T0", "S2", "S3"
  double s, d;             // reduced coordinates (dphi free or drifting)
  std::vector<double> exponents;        // reduced-system characteristic exponents
  std::vector<Complex> exponents_4d;    // exponents seen in the full system
  bool stable;
};
std::vector<UncoupledObject> uncoupled_catalogue(double lambda,
                                                 const NormalFormCoefficients& c);

}  // namespace hopfduet::analysis
