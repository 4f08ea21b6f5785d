// Random admissible inputs shared by the property tests and the acceptance run.
#pragma once

#include <utility>
#include <vector>

#include "oracles.hpp"
#include "pshe/qw_medium.hpp"
#include "pshe/strata.hpp"

namespace gen {

inline pshe::QwParams random_qw_params(oracle::Rng& rng) {
  pshe::QwParams p;
  // (0, 5] meV
  p.gamma_bl = 5.0 - rng.uniform(0.0, 5.0);
  p.gamma_bd = 5.0 - rng.uniform(0.0, 5.0);
  p.gamma_cl = 5.0 - rng.uniform(0.0, 5.0);
  p.gamma_cd = 5.0 - rng.uniform(0.0, 5.0);
  p.gamma_dl = 5.0 - rng.uniform(0.0, 5.0);
  p.gamma_dd = 5.0 - rng.uniform(0.0, 5.0);
  p.beta = rng.uniform(0.001, 0.1);
  p.delta = rng.uniform(-10.0, 10.0);
  p.omega_c = rng.uniform(0.0, 10.0);
  p.g = rng.integer(-2, 2);
  p.f = rng.integer(-2, 2);
  return p;
}

inline pshe::cplx random_eps(oracle::Rng& rng, bool lossless) {
  const double re = rng.uniform(1.0, 12.0);
  if (lossless) return {re, 0.0};
  // occasional metal-like negative real part and gain
  const double sign = rng.uniform(0.0, 1.0) < 0.2 ? -1.0 : 1.0;
  return {sign * re, rng.uniform(-0.5, 2.0)};
}

inline pshe::cplx random_dielectric(oracle::Rng& rng) {
  return {rng.uniform(1.0, 12.0), rng.uniform(-0.3, 0.3)};
}

inline pshe::Stack random_stack(oracle::Rng& rng, bool lossless, bool metals = true) {
  std::vector<pshe::Layer> layers(rng.integer(1, 6));
  for (pshe::Layer& l : layers) {
    l.epsilon = metals || lossless ? random_eps(rng, lossless) : random_dielectric(rng);
    l.thickness_um = rng.uniform(0.0, 3.0);
  }
  return pshe::Stack(std::move(layers));
}

}  // namespace gen
