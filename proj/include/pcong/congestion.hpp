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

#ifndef PCONG_CONGESTION_HPP
#define PCONG_CONGESTION_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "pcong/flight.hpp"

namespace pcong {

/// Presence probabilities at or below this count as absent when sizing the
/// occupancy distribution.
inline constexpr double kPresenceThreshold = 1e-12;

/// Up to this many present flights occupancy_at() uses the convolution.
inline constexpr std::size_t kDirectConvolutionLimit = 64;

/// Law of the number of flights inside a sector: pmf[n] = Pr(K = n).
struct OccupancyDistribution {
  std::vector<double> pmf{1.0};

  std::size_t max_count() const noexcept { return pmf.size() - 1; }
  double mean() const noexcept;
  double variance() const noexcept;
};

/**
 * Poisson-Binomial pmf from the characteristic function evaluated at the
 * N+1 roots of unity, inverted by a direct DFT of size N+1.
 *
 * Imaginary residues are discarded and small negative residues clipped before
 * renormalizing; residues above 1e-8 in magnitude raise InternalError.
 * Throws ValidationError for probabilities outside [0, 1].
 */
OccupancyDistribution pb_pmf_dft(std::span<const double> probs);

/// Poisson-Binomial pmf by folding one Bernoulli at a time.
OccupancyDistribution pb_pmf_dp(std::span<const double> probs);

/// Pr(K > capacity).
double overload_probability(const OccupancyDistribution& occ, std::size_t capacity) noexcept;

/// E[((K - capacity)_+)^2], the instantaneous congestion cost.
double expected_overload_cost(const OccupancyDistribution& occ, std::size_t capacity) noexcept;

/// Entry/exit marginals of one flight's traversal of a sector.
struct PresenceSource {
  const MarginalCurve* entry = nullptr;
  const MarginalCurve* exit = nullptr;
};

/// Presence probabilities above kPresenceThreshold at time t.
std::vector<double> presence_vector(std::span<const PresenceSource> sources, double t);

/// Sector occupancy law at time t. Uses pb_pmf_dp for at most
/// kDirectConvolutionLimit present flights and pb_pmf_dft beyond.
OccupancyDistribution occupancy_at(std::span<const PresenceSource> sources, double t);

}  // namespace pcong

#endif  // PCONG_CONGESTION_HPP
