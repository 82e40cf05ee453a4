#pragma once

#include <vector>

#include <Eigen/Dense>

namespace hopfduet::ode {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct IntegratorConfig {
  enum class Method { fixed_rk4, adaptive_rk };
  Method method = Method::adaptive_rk;
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double max_step = 1.0;
  double max_time = 1e7;     // budget on integrated time span
  double initial_step = 1e-3;
  double fixed_step = 1e-3;  // for fixed_rk4
  void validate() const;
};

class DynamicalSystem {
 public:
  virtual ~DynamicalSystem() = default;
  virtual int dim() const = 0;
  virtual bool autonomous() const { return true; }
  virtual void rhs(double t, const Vec& x, Vec& dx) const = 0;
  /// Defaults to central finite differences of rhs.
  virtual void jacobian(double t, const Vec& x, Mat& j) const;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<Vec> x;
  std::vector<Vec> dx;  // derivatives at the nodes (cubic Hermite interpolation)

  /// Cubic Hermite interpolation inside the stored span.
  Vec at(double time) const;
  const Vec& back_state() const { return x.back(); }
};

/// Integrate over [t0, t1]. If sample_dt > 0 the output is re-sampled on a
/// uniform grid (endpoints included); otherwise nodes are the accepted steps.
Trajectory integrate(const DynamicalSystem& sys, const Vec& x0, double t0, double t1,
                     const IntegratorConfig& cfg, double sample_dt = 0.0);

/// Endpoint-only integration (no trajectory storage).
Vec integrate_to(const DynamicalSystem& sys, const Vec& x0, double t0, double t1,
                 const IntegratorConfig& cfg);

/// State + variational-flow propagation: returns the endpoint state and the
/// fundamental matrix solution dPhi/dx0 over [t0, t1].
struct FlowWithJacobian {
  Vec x;
  Mat monodromy;
};
FlowWithJacobian integrate_with_variational(const DynamicalSystem& sys, const Vec& x0,
                                            double t0, double t1,
                                            const IntegratorConfig& cfg);

}  // namespace hopfduet::ode
