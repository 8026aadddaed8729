// Copyright 2026 The hetdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
// The optimal mechanism along a path graph seeded at its head vertex. The
// per-step recurrence applies edge_upper_bound greedily; the closed form
// evaluates the same values directly. Along the path the binding branch
// switches at most once, from multiplicative growth e^eps * x to the affine
// approach 1 - (1 - x) / e^eps; tau is the index of the first affine edge.

#ifndef HETDP_PATH_MECHANISM_HPP_
#define HETDP_PATH_MECHANISM_HPP_

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "hetdp/edge_bounds.hpp"
#include "hetdp/error.hpp"

namespace hetdp {

// Optimal mechanism values p*(v_0), ..., p*(v_n) along a path with query 1
// everywhere past the head. tau is the index of the first edge whose bound
// came from the affine branch; nullopt when the path never crosses over.
struct PathMechanism {
  std::vector<Probability> values;
  std::optional<std::size_t> tau;
};

namespace detail {

// Absolute slack, in the log domain, granted when deciding whether the
// crossover condition holds at an index. Keeps the closed form, the
// recurrence and the homogeneous ceiling formula consistent when the
// condition is met with equality up to rounding.
inline constexpr double kTauTieTolerance = 1e-12;

// log(e^eps + 1) without overflow for large eps.
inline double log_exp_eps_plus_one(double eps) {
  return eps + std::log1p(std::exp(-eps));
}

}  // namespace detail

// Iterates edge_upper_bound from alpha along eps_seq. tau is the first
// index at which the affine branch is strictly below the multiplicative
// one; once that happens with positive budgets it stays that way.
inline PathMechanism optimal_path_recurrence(Probability alpha,
                                             const EpsilonSeq& eps_seq) {
  PathMechanism result;
  result.values.reserve(eps_seq.size() + 1);
  result.values.push_back(alpha);
  for (std::size_t i = 0; i < eps_seq.size(); ++i) {
    const double eps = eps_seq[i];
    detail::require_nonnegative_epsilon(eps);
    const Probability current = result.values.back();
    if (!result.tau.has_value() && eps > 0.0) {
      const double grow = std::exp(eps);
      const double multiplicative = grow * current.value();
      const double affine = 1.0 - (1.0 - current.value()) / grow;
      if (affine < multiplicative) {
        result.tau = i;
      }
    }
    result.values.push_back(edge_upper_bound(current, eps));
  }
  return result;
}

// Direct evaluation of the two-regime form: multiplicative up to the
// crossover index, affine afterwards. Exponential sums stay in the log
// domain until the final exponentiation, so long paths cannot overflow.
// Requires strictly positive budgets and alpha > 0; agrees with
// optimal_path_recurrence to within rounding.
inline PathMechanism optimal_path_closed_form(Probability alpha,
                                              const EpsilonSeq& eps_seq) {
  if (alpha.value() <= 0.0) {
    throw Error(ErrorKind::ZeroAlpha, "closed form requires alpha > 0");
  }
  for (double eps : eps_seq) {
    if (!(std::isfinite(eps) && eps > 0.0)) {
      throw Error(ErrorKind::NonPositiveEpsilon,
                  "closed form requires every epsilon > 0, got " +
                      std::to_string(eps));
    }
  }
  const std::size_t n = eps_seq.size();
  const double log_alpha = std::log(alpha.value());

  // prefix[i] = eps_0 + ... + eps_{i-1}.
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    prefix[i + 1] = prefix[i] + eps_seq[i];
  }

  // Crossover: the smallest i with 1/alpha <= e^{prefix[i]} (e^{eps_i} + 1),
  // i.e. the first edge whose affine branch binds.
  std::optional<std::size_t> tau;
  for (std::size_t i = 0; i < n; ++i) {
    if (-log_alpha <= prefix[i] + detail::log_exp_eps_plus_one(eps_seq[i]) +
                          detail::kTauTieTolerance) {
      tau = i;
      break;
    }
  }

  PathMechanism result;
  result.tau = tau;
  result.values.reserve(n + 1);
  const std::size_t crossover = tau.value_or(n);
  for (std::size_t i = 0; i <= n; ++i) {
    if (i == 0) {
      result.values.push_back(alpha);
    } else if (i <= crossover) {
      result.values.push_back(
          Probability(detail::clamp01(std::exp(prefix[i] + log_alpha))));
    } else {
      // p*(v_i) = 1 - e^{-(prefix[i] - prefix[tau])} * (1 - p*(v_tau)).
      const double at_tau = std::exp(prefix[crossover] + log_alpha);
      const double decay = std::exp(-(prefix[i] - prefix[crossover]));
      result.values.push_back(
          Probability(detail::clamp01(1.0 - decay * (1.0 - at_tau))));
    }
  }
  return result;
}

// Crossover index for a constant budget: ceil((1/eps) log(1/(alpha (1 +
// e^eps)))) floored at zero. Matches the tau reported by
// optimal_path_closed_form on a constant-eps path that is long enough.
inline long homogeneous_tau(Probability alpha, double eps) {
  if (alpha.value() <= 0.0) {
    throw Error(ErrorKind::ZeroAlpha, "homogeneous tau requires alpha > 0");
  }
  if (!(std::isfinite(eps) && eps > 0.0)) {
    throw Error(ErrorKind::NonPositiveEpsilon,
                "homogeneous tau requires eps > 0");
  }
  const double t =
      (-std::log(alpha.value()) - detail::log_exp_eps_plus_one(eps)) / eps;
  // The same log-domain tie slack as the closed form, scaled into units of
  // whole edges.
  const long tau =
      static_cast<long>(std::ceil(t - detail::kTauTieTolerance / eps));
  return std::max(0L, tau);
}

}  // namespace hetdp

#endif  // HETDP_PATH_MECHANISM_HPP_
