#include "hopfduet/ode.hpp"

#include <algorithm>
#include <cmath>

#include "hopfduet/errors.hpp"

namespace hopfduet::ode {

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw DomainError("IntegratorConfig: tolerances must be positive");
  }
  if (!(max_step > 0.0) || !(max_time > 0.0) || !(fixed_step > 0.0)) {
    throw DomainError("IntegratorConfig: steps and max_time must be positive");
  }
}

void DynamicalSystem::jacobian(double t, const Vec& x, Mat& j) const {
  const int n = dim();
  j.resize(n, n);
  Vec xp = x, xm = x, fp(n), fm(n);
  for (int k = 0; k < n; ++k) {
    const double h = 1e-7 * std::max(1.0, std::abs(x(k)));
    xp(k) = x(k) + h;
    xm(k) = x(k) - h;
    rhs(t, xp, fp);
    rhs(t, xm, fm);
    j.col(k) = (fp - fm) / (2.0 * h);
    xp(k) = x(k);
    xm(k) = x(k);
  }
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// embedded 4th-order weights
constexpr double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                 e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

struct Stepper {
  const DynamicalSystem& sys;
  Vec k1, k2, k3, k4, k5, k6, k7, xtmp, x5, x4;

  explicit Stepper(const DynamicalSystem& s) : sys(s) {
    const int n = s.dim();
    for (Vec* v : {&k1, &k2, &k3, &k4, &k5, &k6, &k7, &xtmp, &x5, &x4}) v->resize(n);
  }

  // One Dormand-Prince step from (t, x) with k1 already holding f(t, x).
  // Returns the scaled error norm; on exit x5 is the 5th-order proposal
  // and k7 = f(t+h, x5) (FSAL).
  double attempt(double t, const Vec& x, double h) {
    xtmp = x + h * a21 * k1;
    sys.rhs(t + c2 * h, xtmp, k2);
    xtmp = x + h * (a31 * k1 + a32 * k2);
    sys.rhs(t + c3 * h, xtmp, k3);
    xtmp = x + h * (a41 * k1 + a42 * k2 + a43 * k3);
    sys.rhs(t + c4 * h, xtmp, k4);
    xtmp = x + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    sys.rhs(t + c5 * h, xtmp, k5);
    xtmp = x + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    sys.rhs(t + h, xtmp, k6);
    x5 = x + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    sys.rhs(t + h, x5, k7);
    x4 = x + h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    return 0.0;  // error computed by caller with tolerances
  }
};

}  // namespace

namespace {

template <typename Observer>
void integrate_impl(const DynamicalSystem& sys, const Vec& x0, double t0, double t1,
                    const IntegratorConfig& cfg, Observer&& observe) {
  cfg.validate();
  if (std::abs(t1 - t0) > cfg.max_time) {
    throw DomainError("integrate: requested span exceeds max_time budget");
  }
  const int n = sys.dim();
  if (x0.size() != n) throw DomainError("integrate: state dimension mismatch");
  const double dir = t1 >= t0 ? 1.0 : -1.0;

  Vec x = x0;
  double t = t0;
  Stepper st(sys);
  sys.rhs(t, x, st.k1);
  observe(t, x, st.k1);
  if (t1 == t0) return;

  if (cfg.method == IntegratorConfig::Method::fixed_rk4) {
    Vec k1(n), k2(n), k3(n), k4(n), xt(n);
    const double span = std::abs(t1 - t0);
    const long steps = std::max(1L, std::lround(std::ceil(span / cfg.fixed_step)));
    const double h = dir * span / static_cast<double>(steps);
    for (long i = 0; i < steps; ++i) {
      sys.rhs(t, x, k1);
      xt = x + 0.5 * h * k1;
      sys.rhs(t + 0.5 * h, xt, k2);
      xt = x + 0.5 * h * k2;
      sys.rhs(t + 0.5 * h, xt, k3);
      xt = x + h * k3;
      sys.rhs(t + h, xt, k4);
      x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t = t0 + (i + 1) * h;
      sys.rhs(t, x, k1);
      observe(t, x, k1);
    }
    return;
  }

  double h = dir * std::min(cfg.initial_step, cfg.max_step);
  const double hmin = 1e-14 * std::max(1.0, std::abs(t1 - t0));
  long rejected_in_row = 0;
  while (dir * (t1 - t) > 0.0) {
    if (dir * (t + h) > dir * t1) h = t1 - t;
    st.attempt(t, x, h);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      const double sc =
          cfg.abs_tol + cfg.rel_tol * std::max(std::abs(x(i)), std::abs(st.x5(i)));
      const double e = (st.x5(i) - st.x4(i)) / sc;
      err += e * e;
    }
    err = std::sqrt(err / n);
    if (err <= 1.0 || std::abs(h) <= hmin * 4.0) {
      t += h;
      x = st.x5;
      st.k1 = st.k7;  // FSAL
      observe(t, x, st.k1);
      rejected_in_row = 0;
    } else {
      ++rejected_in_row;
      if (rejected_in_row > 60) {
        throw ConvergenceError("integrate: step size underflow (too many rejections)");
      }
    }
    const double fac =
        err <= 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= fac;
    if (std::abs(h) > cfg.max_step) h = dir * cfg.max_step;
    if (std::abs(h) < hmin) h = dir * hmin;
  }
}

}  // namespace

Trajectory integrate(const DynamicalSystem& sys, const Vec& x0, double t0, double t1,
                     const IntegratorConfig& cfg, double sample_dt) {
  Trajectory raw;
  integrate_impl(sys, x0, t0, t1, cfg, [&](double t, const Vec& x, const Vec& dx) {
    raw.t.push_back(t);
    raw.x.push_back(x);
    raw.dx.push_back(dx);
  });
  if (sample_dt <= 0.0 || raw.t.size() < 3) return raw;
  Trajectory out;
  const double span = t1 - t0;
  const long m = std::max(1L, std::lround(std::floor(std::abs(span) / sample_dt)));
  for (long i = 0; i <= m; ++i) {
    const double tt = t0 + span * (static_cast<double>(i) / static_cast<double>(m));
    out.t.push_back(tt);
    out.x.push_back(raw.at(tt));
  }
  out.dx.reserve(out.t.size());
  Vec d(sys.dim());
  for (size_t i = 0; i < out.t.size(); ++i) {
    sys.rhs(out.t[i], out.x[i], d);
    out.dx.push_back(d);
  }
  return out;
}

Vec integrate_to(const DynamicalSystem& sys, const Vec& x0, double t0, double t1,
                 const IntegratorConfig& cfg) {
  Vec last = x0;
  integrate_impl(sys, x0, t0, t1, cfg,
                 [&](double, const Vec& x, const Vec&) { last = x; });
  return last;
}

Vec Trajectory::at(double time) const {
  if (t.empty()) throw DomainError("Trajectory::at: empty trajectory");
  if (time <= t.front()) return x.front();
  if (time >= t.back()) return x.back();
  const auto it = std::upper_bound(t.begin(), t.end(), time);
  const size_t i1 = static_cast<size_t>(it - t.begin());
  const size_t i0 = i1 - 1;
  const double h = t[i1] - t[i0];
  const double u = (time - t[i0]) / h;
  const double u2 = u * u, u3 = u2 * u;
  // cubic Hermite basis
  const double h00 = 2 * u3 - 3 * u2 + 1;
  const double h10 = u3 - 2 * u2 + u;
  const double h01 = -2 * u3 + 3 * u2;
  const double h11 = u3 - u2;
  return h00 * x[i0] + h10 * h * dx[i0] + h01 * x[i1] + h11 * h * dx[i1];
}

namespace {

/// Base system plus the n x n variational flow, flattened column-major.
class AugmentedSystem final : public DynamicalSystem {
 public:
  explicit AugmentedSystem(const DynamicalSystem& base) : base_(base), n_(base.dim()) {}
  int dim() const override { return n_ + n_ * n_; }
  bool autonomous() const override { return base_.autonomous(); }
  void rhs(double t, const Vec& x, Vec& dx) const override {
    dx.resize(dim());
    const Vec state = x.head(n_);
    Vec f(n_);
    base_.rhs(t, state, f);
    dx.head(n_) = f;
    Mat j(n_, n_);
    base_.jacobian(t, state, j);
    const Eigen::Map<const Mat> m(x.data() + n_, n_, n_);
    Eigen::Map<Mat>(dx.data() + n_, n_, n_) = j * m;
  }

 private:
  const DynamicalSystem& base_;
  int n_;
};

}  // namespace

FlowWithJacobian integrate_with_variational(const DynamicalSystem& sys, const Vec& x0,
                                            double t0, double t1,
                                            const IntegratorConfig& cfg) {
  const int n = sys.dim();
  AugmentedSystem aug(sys);
  Vec z0(n + n * n);
  z0.head(n) = x0;
  Eigen::Map<Mat>(z0.data() + n, n, n) = Mat::Identity(n, n);
  const Vec z1 = integrate_to(aug, z0, t0, t1, cfg);
  FlowWithJacobian out;
  out.x = z1.head(n);
  out.monodromy = Eigen::Map<const Mat>(z1.data() + n, n, n);
  return out;
}

}  // namespace hopfduet::ode
