#include "hopfduet/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "hopfduet/errors.hpp"

namespace hopfduet::analysis {

namespace {

// Relative sign tolerance for the degenerate case 3 classification.
constexpr double kBetaZeroTol = 1e-6;

double sq(double x) { return x * x; }

}  // namespace

std::array<Complex, 4> origin_eigenvalues(const UnfoldingParams& p,
                                          const NormalFormCoefficients& c) {
  const Complex base{p.lambda, c.omega};
  const Complex mu_p = base + p.eps * (c.alpha_eps[0] + c.beta_eps[0]);
  const Complex mu_m = base + p.eps * (c.alpha_eps[0] - c.beta_eps[0]);
  return {mu_p, std::conj(mu_p), mu_m, std::conj(mu_m)};
}

Eigen::Matrix4cd origin_jacobian(const UnfoldingParams& p, const NormalFormCoefficients& c) {
  // coordinates (z1, conj z1, z2, conj z2)
  const Complex diag{p.lambda + p.eps * c.alpha_eps[0].real(),
                     c.omega + p.eps * c.alpha_eps[0].imag()};
  const Complex cross = p.eps * c.beta_eps[0];
  Eigen::Matrix4cd j = Eigen::Matrix4cd::Zero();
  j(0, 0) = diag;
  j(1, 1) = std::conj(diag);
  j(2, 2) = diag;
  j(3, 3) = std::conj(diag);
  j(0, 2) = cross;
  j(2, 0) = cross;
  j(1, 3) = std::conj(cross);
  j(3, 1) = std::conj(cross);
  return j;
}

double hopf_curve_lambda(double eps, Branch branch, const NormalFormCoefficients& c) {
  return -eps * (c.alpha_eps[0].real() + sign_of(branch) * c.beta_eps[0].real());
}

OscBranchPoint s_osc(const UnfoldingParams& p, Branch branch,
                     const NormalFormCoefficients& c) {
  const double abar = c.alpha_bar(p.lambda, p.eps, sign_of(branch));
  const double k = c.k_stb(sign_of(branch));
  const double den = c.alpha01.real() + p.eps * k;
  if (den >= 0.0) {
    throw NotAdmissibleError("s_osc: supercriticality lost (alpha01R + eps K_stb >= 0)");
  }
  // The Hopf curve itself (alpha_bar = 0) is the branch-birth boundary and
  // yields s_osc = 0; beyond it the branch does not exist.
  if (abar < 0.0) {
    throw NotAdmissibleError("s_osc: branch not admissible (alpha_bar < 0)");
  }
  OscBranchPoint pt;
  pt.branch = branch;
  pt.s_osc = std::sqrt(-4.0 * abar / den);
  pt.lambda = p.lambda;
  pt.eps = p.eps;
  pt.k_stb = k;
  return pt;
}

BlockTerms block_terms(double s, const UnfoldingParams& p, Branch branch,
                       const NormalFormCoefficients& c) {
  const double sg = sign_of(branch);
  const auto& ae = c.alpha_eps;
  const auto& be = c.beta_eps;
  const double a01R = c.alpha01.real(), a01I = c.alpha01.imag();
  const double eps = p.eps, lam = p.lambda;
  const double s2 = s * s, s3 = s2 * s;
  BlockTerms t;
  t.c_ss = lam + eps * (ae[0].real() + sg * be[0].real()) +
           (3.0 * s2 / 4.0) *
               (a01R + eps * (ae[1].real() +
                              sg * (be[2].real() + be[1].real() + ae[3].real()) +
                              ae[2].real() + be[3].real()));
  t.c_dd = lam + eps * (ae[0].real() - sg * be[0].real()) +
           (s2 / 4.0) * (3.0 * a01R +
                         eps * (3.0 * (ae[1].real() - sg * be[2].real()) +
                                sg * (be[1].real() + ae[3].real()) - ae[2].real() -
                                be[3].real()));
  t.c_ddphi = eps * (-(s3 / 4.0) * (2.0 * be[3].imag() +
                                    sg * (be[1].imag() - ae[3].imag()) +
                                    sg * be[2].imag()) -
                     sg * be[0].imag() * s);
  t.c_dphid = -a01I * s +
              eps * (s * (ae[2].imag() - ae[1].imag() + be[3].imag() +
                          sg * 2.0 * be[2].imag()) +
                     sg * 4.0 * be[0].imag() / s);
  t.c_dphidphi = eps * ((s2 / 2.0) * (-sg * (be[1].real() - ae[3].real()) -
                                      2.0 * be[3].real() - sg * be[2].real()) -
                        sg * 2.0 * be[0].real());
  return t;
}

Eigen::Matrix3d jacobian_at_osc(const UnfoldingParams& p, Branch branch,
                                const NormalFormCoefficients& c) {
  const auto pt = s_osc(p, branch, c);
  const auto t = block_terms(pt.s_osc, p, branch, c);
  Eigen::Matrix3d j = Eigen::Matrix3d::Zero();
  j(0, 0) = t.c_ss;
  j(1, 1) = t.c_dd;
  j(1, 2) = t.c_ddphi;
  j(2, 1) = t.c_dphid;
  j(2, 2) = t.c_dphidphi;
  return j;
}

double series_trace(const UnfoldingParams& p, Branch branch, const NormalFormCoefficients& c) {
  const double sg = sign_of(branch);
  return -2.0 * (p.lambda + p.eps * (c.alpha_eps[0].real() + sg * 3.0 * c.beta_eps[0].real()));
}

double series_determinant(const UnfoldingParams& p, Branch branch,
                         const NormalFormCoefficients& c) {
  const double sg = sign_of(branch);
  const double abar = c.alpha_bar(p.lambda, p.eps, sign_of(branch));
  const double be0R = c.beta_eps[0].real(), be0I = c.beta_eps[0].imag();
  return sg * 4.0 * p.eps * abar * (c.c_det() + be0R) +
         4.0 * p.eps * p.eps * (be0I * be0I + be0R * be0R);
}

double series_discriminant(const UnfoldingParams& p, Branch branch,
                          const NormalFormCoefficients& c) {
  const double sg = sign_of(branch);
  const double abar = c.alpha_bar(p.lambda, p.eps, sign_of(branch));
  const double be0I = c.beta_eps[0].imag();
  return abar * (abar - sg * 4.0 * p.eps * c.c_det()) - 4.0 * sq(p.eps * be0I);
}

namespace {

NodeType classify_node(double tr, double det, double disc) {
  const double scale = std::max({std::abs(tr) * std::abs(tr), std::abs(det), 1e-300});
  const double tol = 1e-12 * scale;
  if (std::abs(det) <= tol || std::abs(tr) * std::abs(tr) <= tol * 1e-4) {
    return NodeType::degenerate;
  }
  if (det < 0.0) return NodeType::saddle_1u;
  if (disc < 0.0) return tr < 0.0 ? NodeType::stable_focus : NodeType::saddle_focus;
  return tr < 0.0 ? NodeType::stable_node : NodeType::saddle_2u;
}

}  // namespace

namespace {

// Exact 2x2 block trace/determinant written through s^2 only; the
// c_ddphi * c_dphid product is regular at s = 0 (branch birth) even though
// the individual entries are not.
struct BlockTrDet {
  double tr, det;
};

BlockTrDet exact_block_s2(double s2, const UnfoldingParams& p, Branch branch,
                          const NormalFormCoefficients& c) {
  const double sg = sign_of(branch);
  const auto& ae = c.alpha_eps;
  const auto& be = c.beta_eps;
  const double a01R = c.alpha01.real(), a01I = c.alpha01.imag();
  const double eps = p.eps;
  const double cdd = p.lambda + eps * (ae[0].real() - sg * be[0].real()) +
                     (s2 / 4.0) * (3.0 * a01R +
                                   eps * (3.0 * (ae[1].real() - sg * be[2].real()) +
                                          sg * (be[1].real() + ae[3].real()) -
                                          ae[2].real() - be[3].real()));
  const double cpp = eps * ((s2 / 2.0) * (-sg * (be[1].real() - ae[3].real()) -
                                          2.0 * be[3].real() - sg * be[2].real()) -
                            sg * 2.0 * be[0].real());
  const double xi =
      2.0 * be[3].imag() + sg * (be[1].imag() - ae[3].imag()) + sg * be[2].imag();
  const double yi =
      ae[2].imag() - ae[1].imag() + be[3].imag() + sg * 2.0 * be[2].imag();
  const double prod = (-sg * eps * be[0].imag() - eps * (s2 / 4.0) * xi) *
                      (-a01I * s2 + eps * s2 * yi + sg * 4.0 * eps * be[0].imag());
  return {cdd + cpp, cdd * cpp - prod};
}

}  // namespace

StabilityReport tr_det_disc(const UnfoldingParams& p, Branch branch,
                            const NormalFormCoefficients& c) {
  const auto pt = s_osc(p, branch, c);
  const auto t = block_terms(std::max(pt.s_osc, 1e-300), p, branch, c);
  const auto block = exact_block_s2(pt.s_osc * pt.s_osc, p, branch, c);
  StabilityReport r;
  r.branch = branch;
  r.tr = block.tr;
  r.det = block.det;
  r.disc = r.tr * r.tr - 4.0 * r.det;
  r.mu1 = Complex{t.c_ss, 0.0};
  const Complex root = std::sqrt(Complex{r.disc, 0.0});
  r.mu2 = (Complex{r.tr, 0.0} - root) / 2.0;
  r.mu3 = (Complex{r.tr, 0.0} + root) / 2.0;
  r.series_tr = series_trace(p, branch, c);
  r.series_det = series_determinant(p, branch, c);
  r.series_disc = series_discriminant(p, branch, c);
  r.node_type = classify_node(r.tr, r.det, r.disc);
  return r;
}

std::string to_string(NodeType t) {
  switch (t) {
    case NodeType::stable_node: return "stable-node";
    case NodeType::stable_focus: return "stable-focus";
    case NodeType::saddle_1u: return "saddle-1u";
    case NodeType::saddle_2u: return "saddle-2u";
    case NodeType::saddle_focus: return "saddle-focus";
    case NodeType::degenerate: return "degenerate";
  }
  return "?";
}

std::string to_string(CaseLabel l) {
  switch (l) {
    case CaseLabel::case1: return "case1";
    case CaseLabel::case2: return "case2";
    case CaseLabel::case3: return "case3";
    case CaseLabel::case1m: return "case1m";
    case CaseLabel::case2m: return "case2m";
    case CaseLabel::case3m: return "case3m";
  }
  return "?";
}

std::string to_string(HopfSubcase h) {
  switch (h) {
    case HopfSubcase::hopf_possible: return "hopf-possible";
    case HopfSubcase::hopf_impossible: return "hopf-impossible";
    case HopfSubcase::not_applicable: return "not-applicable";
  }
  return "?";
}

CaseClassification classify_case(const NormalFormCoefficients& c) {
  const double be0R = c.beta_eps[0].real();
  const double be0I = c.beta_eps[0].imag();
  const double cdet = c.c_det();
  CaseClassification out;
  out.cdet = cdet;
  const bool zero = std::abs(be0R) < kBetaZeroTol * (std::abs(be0I) + 1.0);
  out.beta_eps0R_sign = zero ? Sign::zero : (be0R > 0 ? Sign::positive : Sign::negative);
  out.cdet_plus_beta_sign = (cdet + be0R) > 0 ? Sign::positive : Sign::negative;

  if (zero) {
    out.case_label = cdet > 0 ? CaseLabel::case3 : CaseLabel::case3m;
    out.hopf_subcase = HopfSubcase::not_applicable;
    return out;
  }
  const bool cb_pos = (cdet + be0R) > 0.0;
  if (be0R > 0.0) {
    out.case_label = cb_pos ? CaseLabel::case1 : CaseLabel::case2m;
  } else {
    out.case_label = cb_pos ? CaseLabel::case2 : CaseLabel::case1m;
  }
  // The trace can vanish on the branch opposite to sign(be0R). A Hopf of
  // that branch point needs the discriminant negative at the Tr = 0 locus:
  // |be0R| < sigma * C_det + sqrt(C_det^2 + be0I^2), sigma = -sign(be0R).
  const double sigma = be0R > 0 ? -1.0 : 1.0;
  const double bound = sigma * cdet + std::sqrt(cdet * cdet + be0I * be0I);
  out.hopf_subcase =
      std::abs(be0R) < bound ? HopfSubcase::hopf_possible : HopfSubcase::hopf_impossible;
  return out;
}

std::string to_string(CurveKind k) {
  switch (k) {
    case CurveKind::HB: return "HB";
    case CurveKind::TR0: return "TR0";
    case CurveKind::DET0: return "DET0";
    case CurveKind::DISC0: return "DISC0";
  }
  return "?";
}

namespace {

// Block quantities as functions of lambda, extended polynomially to the
// inadmissible side (used to solve exact boundary conditions in lambda).
BlockTrDet exact_block_of_lambda(double lambda, double eps, Branch branch,
                                 const NormalFormCoefficients& c) {
  const double abar = c.alpha_bar(lambda, eps, sign_of(branch));
  const double den = c.alpha01.real() + eps * c.k_stb(sign_of(branch));
  const double s2 = -4.0 * abar / den;
  return exact_block_s2(s2, {lambda, eps}, branch, c);
}

// Exact quadratic interpolation of f on three nodes around lambda0.
std::array<double, 3> fit_quadratic(const std::function<double(double)>& f, double lambda0) {
  const double h = std::max(1.0, std::abs(lambda0));
  const double f0 = f(lambda0 - h), f1 = f(lambda0), f2 = f(lambda0 + h);
  const double a2 = (f2 - 2.0 * f1 + f0) / (2.0 * h * h);
  const double a1 = (f2 - f0) / (2.0 * h) - 2.0 * a2 * lambda0;
  const double a0 = f1 - a1 * lambda0 - a2 * lambda0 * lambda0;
  return {a0, a1, a2};
}

std::vector<double> real_roots(const std::array<double, 3>& poly, double scale) {
  const double a0 = poly[0], a1 = poly[1], a2 = poly[2];
  const double tol = 1e-12 * std::max(1.0, scale);
  std::vector<double> roots;
  if (std::abs(a2) <= tol * 1e-3) {
    if (std::abs(a1) > tol * 1e-3) roots.push_back(-a0 / a1);
    return roots;  // constant (or identically zero): boundary absent
  }
  const double disc = a1 * a1 - 4.0 * a2 * a0;
  if (disc < -tol) return roots;
  if (std::abs(disc) <= tol) {
    roots.push_back(-a1 / (2.0 * a2));  // double root reported once
    return roots;
  }
  const double sq_ = std::sqrt(std::max(0.0, disc));
  const double q = -0.5 * (a1 + (a1 >= 0 ? sq_ : -sq_));
  roots.push_back(q / a2);
  if (q != 0.0) roots.push_back(a0 / q);
  std::sort(roots.begin(), roots.end());
  if (roots.size() == 2 && std::abs(roots[1] - roots[0]) <= tol) roots.pop_back();
  return roots;
}

}  // namespace

std::vector<CurvePoint> region_boundaries(const std::vector<double>& eps_grid, Branch branch,
                                          const NormalFormCoefficients& c, CurveModel model) {
  const double sg = sign_of(branch);
  const double ae0R = c.alpha_eps[0].real(), be0R = c.beta_eps[0].real();
  const double be0I = c.beta_eps[0].imag();
  const double cdet = c.c_det();
  std::vector<CurvePoint> out;

  auto emit = [&](CurveKind k, double eps, double lambda) {
    out.push_back({branch, k, eps, lambda});
  };

  for (CurveKind kind :
       {CurveKind::HB, CurveKind::TR0, CurveKind::DET0, CurveKind::DISC0}) {
    for (double eps : eps_grid) {
      const double lam_hb = hopf_curve_lambda(eps, branch, c);
      if (kind == CurveKind::HB) {
        emit(kind, eps, lam_hb);
        continue;
      }
      if (model == CurveModel::series) {
        switch (kind) {
          case CurveKind::TR0:
            emit(kind, eps, -eps * (ae0R + sg * 3.0 * be0R));
            break;
          case CurveKind::DET0: {
            const double cb = cdet + be0R;
            if (cb == 0.0) break;
            const double abar = -sg * eps * (be0I * be0I + be0R * be0R) / cb;
            emit(kind, eps, abar + lam_hb);
            break;
          }
          case CurveKind::DISC0: {
            const double r = std::sqrt(cdet * cdet + be0I * be0I);
            const double a1 = 2.0 * eps * (sg * cdet - r) + lam_hb;
            const double a2 = 2.0 * eps * (sg * cdet + r) + lam_hb;
            emit(kind, eps, std::min(a1, a2));
            if (a2 != a1) emit(kind, eps, std::max(a1, a2));
            break;
          }
          default:
            break;
        }
        continue;
      }
      // exact model
      const double den = c.alpha01.real() + eps * c.k_stb(sign_of(branch));
      if (std::abs(den) < 1e-12) continue;
      const auto f_tr = [&](double l) { return exact_block_of_lambda(l, eps, branch, c).tr; };
      const auto f_det = [&](double l) { return exact_block_of_lambda(l, eps, branch, c).det; };
      std::function<double(double)> f;
      switch (kind) {
        case CurveKind::TR0:
          f = f_tr;
          break;
        case CurveKind::DET0:
          f = f_det;
          break;
        case CurveKind::DISC0:
          f = [&](double l) { return sq(f_tr(l)) - 4.0 * f_det(l); };
          break;
        default:
          break;
      }
      const auto poly = fit_quadratic(f, lam_hb);
      for (double root : real_roots(poly, std::abs(poly[0]) + std::abs(poly[1]))) {
        if (c.alpha_bar(root, eps, sign_of(branch)) >= -1e-15) {
          emit(kind, eps, root);  // only roots on the admissible side
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const CurvePoint& a, const CurvePoint& b) {
    if (a.branch != b.branch) return sign_of(a.branch) > sign_of(b.branch);
    if (a.curve != b.curve) return static_cast<int>(a.curve) < static_cast<int>(b.curve);
    if (a.eps != b.eps) return a.eps < b.eps;
    return a.lambda < b.lambda;
  });
  return out;
}

bool bistable_region(const UnfoldingParams& p, const NormalFormCoefficients& c) {
  // Both branch orbits must exist.
  if (c.alpha_bar(p.lambda, p.eps, +1) <= 0.0 || c.alpha_bar(p.lambda, p.eps, -1) <= 0.0) {
    return false;
  }
  const auto cls = classify_case(c);
  switch (cls.case_label) {
    case CaseLabel::case1:
      return series_trace(p, Branch::minus, c) < 0.0 &&
             series_determinant(p, Branch::minus, c) > 0.0;
    case CaseLabel::case1m:
      return series_trace(p, Branch::plus, c) < 0.0 &&
             series_determinant(p, Branch::plus, c) > 0.0;
    case CaseLabel::case2:
      return series_trace(p, Branch::plus, c) < 0.0 &&
             series_determinant(p, Branch::minus, c) > 0.0;
    case CaseLabel::case2m:
      return series_trace(p, Branch::minus, c) < 0.0 &&
             series_determinant(p, Branch::plus, c) > 0.0;
    case CaseLabel::case3:
      return series_determinant(p, Branch::minus, c) > 0.0;
    case CaseLabel::case3m:
      return series_determinant(p, Branch::plus, c) > 0.0;
  }
  return false;
}

double bautin_estimate(const NormalFormCoefficients& c) {
  const double k_minus = c.k_stb(-1);
  if (k_minus <= 0.0) {
    throw NotAdmissibleError("bautin_estimate: requires K-_stb > 0");
  }
  return -c.alpha01.real() / k_minus;
}

std::vector<UncoupledObject> uncoupled_catalogue(double lambda,
                                                 const NormalFormCoefficients& c) {
  std::vector<UncoupledObject> out;
  const double a01R = c.alpha01.real();
  const Complex iw{0.0, c.omega};
  UncoupledObject origin;
  origin.name = "S0";
  origin.s = 0.0;
  origin.d = 0.0;
  origin.exponents = {lambda, lambda};
  origin.exponents_4d = {Complex{lambda, c.omega}, Complex{lambda, -c.omega},
                         Complex{lambda, c.omega}, Complex{lambda, -c.omega}};
  origin.stable = lambda < 0.0;
  out.push_back(origin);
  if (lambda <= 0.0) return out;

  const double r = std::sqrt(-lambda / a01R);
  UncoupledObject torus;
  torus.name = "T0";
  torus.s = 2.0 * r;
  torus.d = 0.0;
  torus.exponents = {-2.0 * lambda, -2.0 * lambda};
  torus.exponents_4d = {Complex{-2.0 * lambda, 0}, Complex{-2.0 * lambda, 0}};
  torus.stable = true;
  out.push_back(torus);

  for (int sgn : {+1, -1}) {
    UncoupledObject s23;
    s23.name = sgn > 0 ? "S2" : "S3";
    s23.s = r;
    s23.d = sgn * r;
    s23.exponents = {lambda, -2.0 * lambda};
    s23.exponents_4d = {Complex{-2.0 * lambda, 0}, Complex{lambda, c.omega},
                        Complex{lambda, -c.omega}};
    s23.stable = false;
    out.push_back(s23);
  }
  return out;
}

}  // namespace hopfduet::analysis
