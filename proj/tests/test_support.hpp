#pragma once

#include <complex>
#include <random>

#include "hopfduet/coefficients.hpp"
#include "hopfduet/wilson_cowan.hpp"

namespace testsupport {

using hopfduet::Complex;
using hopfduet::NormalFormCoefficients;

/// A generic, fully asymmetric coefficient set for property tests.
inline NormalFormCoefficients generic_coefficients() {
  return NormalFormCoefficients::create(
      1.3, {-0.8, 0.6},
      {Complex{0.11, -0.23}, Complex{-0.31, 0.17}, Complex{0.41, 0.29}, Complex{-0.13, -0.37}},
      {Complex{0.19, 0.07}, Complex{-0.29, 0.23}, Complex{0.37, -0.11}, Complex{0.17, 0.31}});
}

/// Table-2 coefficient sets as printed in the reference material
/// (b_sp = -0.03, +0.03, 0).
inline NormalFormCoefficients table_coefficients(double b_sp) {
  const Complex a01{-21.94, -20.94};
  if (b_sp < 0.0) {
    return NormalFormCoefficients::create(
        1.073, a01,
        {Complex{0, 0}, Complex{0, 0}, Complex{8.4, 6.34}, Complex{-24.02, -46.36}},
        {Complex{0.0047, 0.252}, Complex{-12.91, 19.36}, Complex{7.16, -5.56},
         Complex{14.29, 10.02}});
  }
  if (b_sp > 0.0) {
    return NormalFormCoefficients::create(
        1.073, a01,
        {Complex{0, 0}, Complex{0, 0}, Complex{9.02, 6.8}, Complex{-22.3, -44.92}},
        {Complex{-0.0047, 0.241}, Complex{-13.18, 16.76}, Complex{6.46, -5.47},
         Complex{13.33, 10.3}});
  }
  return NormalFormCoefficients::create(
      1.073, a01,
      {Complex{0, 0}, Complex{0, 0}, Complex{8.72, 6.57}, Complex{-23.2, -45.46}},
      {Complex{0.0, 0.246}, Complex{-13.05, 18.06}, Complex{6.52, -5.52},
       Complex{13.81, 10.16}});
}

inline std::mt19937& rng() {
  static std::mt19937 gen(20240517u);
  return gen;
}

inline double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng());
}

inline Complex random_complex(double scale = 1.0) {
  return {uniform(-scale, scale), uniform(-scale, scale)};
}

}  // namespace testsupport
