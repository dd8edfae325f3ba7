/*
 * Copyright 2026 The pcong Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "pcong/congestion.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "pcong/error.hpp"

namespace pcong {

namespace {

constexpr double kResidueFailure = 1e-8;

void check_probs(std::span<const double> probs) {
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("presence probabilities must lie in [0, 1]");
  }
}

}  // namespace

double OccupancyDistribution::mean() const noexcept {
  double m = 0.0;
  for (std::size_t n = 0; n < pmf.size(); ++n) m += static_cast<double>(n) * pmf[n];
  return m;
}

double OccupancyDistribution::variance() const noexcept {
  const double m = mean();
  double v = 0.0;
  for (std::size_t n = 0; n < pmf.size(); ++n) {
    const double dn = static_cast<double>(n) - m;
    v += dn * dn * pmf[n];
  }
  return v;
}

OccupancyDistribution pb_pmf_dft(std::span<const double> probs) {
  check_probs(probs);
  const std::size_t n_flights = probs.size();
  const std::size_t size = n_flights + 1;
  const double w = 2.0 * std::numbers::pi / static_cast<double>(size);

  // Characteristic function at the roots of unity.
  std::vector<std::complex<double>> phi(size);
  for (std::size_t l = 0; l < size; ++l) {
    const std::complex<double> z = std::polar(1.0, w * static_cast<double>(l));
    std::complex<double> prod(1.0, 0.0);
    for (double p : probs) prod *= (1.0 - p) + p * z;
    phi[l] = prod;
  }

  OccupancyDistribution out;
  out.pmf.assign(size, 0.0);
  double total = 0.0;
  for (std::size_t n = 0; n < size; ++n) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t l = 0; l < size; ++l) {
      // Angle index l*n reduced mod size.
      const std::size_t idx = (l * n) % size;
      acc += phi[l] * std::polar(1.0, -w * static_cast<double>(idx));
    }
    acc /= static_cast<double>(size);
    if (std::abs(acc.imag()) > kResidueFailure || acc.real() < -kResidueFailure) {
      throw InternalError("Poisson-Binomial DFT residue exceeds 1e-8");
    }
    out.pmf[n] = std::max(0.0, acc.real());
    total += out.pmf[n];
  }
  for (double& v : out.pmf) v /= total;
  return out;
}

OccupancyDistribution pb_pmf_dp(std::span<const double> probs) {
  check_probs(probs);
  OccupancyDistribution out;
  out.pmf.assign(probs.size() + 1, 0.0);
  out.pmf[0] = 1.0;
  std::size_t len = 1;
  for (double p : probs) {
    for (std::size_t n = len; n > 0; --n) out.pmf[n] = out.pmf[n] * (1.0 - p) + out.pmf[n - 1] * p;
    out.pmf[0] *= (1.0 - p);
    ++len;
  }
  return out;
}

double overload_probability(const OccupancyDistribution& occ, std::size_t capacity) noexcept {
  double s = 0.0;
  for (std::size_t n = capacity + 1; n < occ.pmf.size(); ++n) s += occ.pmf[n];
  return s;
}

double expected_overload_cost(const OccupancyDistribution& occ, std::size_t capacity) noexcept {
  double s = 0.0;
  for (std::size_t n = capacity + 1; n < occ.pmf.size(); ++n) {
    const double excess = static_cast<double>(n - capacity);
    s += excess * excess * occ.pmf[n];
  }
  return s;
}

std::vector<double> presence_vector(std::span<const PresenceSource> sources, double t) {
  std::vector<double> probs;
  probs.reserve(sources.size());
  for (const auto& s : sources) {
    const double p = presence_probability(*s.entry, *s.exit, t);
    if (p > kPresenceThreshold) probs.push_back(p);
  }
  return probs;
}

OccupancyDistribution occupancy_at(std::span<const PresenceSource> sources, double t) {
  const std::vector<double> probs = presence_vector(sources, t);
  if (probs.size() <= kDirectConvolutionLimit) return pb_pmf_dp(probs);
  return pb_pmf_dft(probs);
}

}  // namespace pcong
