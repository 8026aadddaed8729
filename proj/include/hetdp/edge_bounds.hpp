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
// Scalar bound calculus for binary mechanisms under a per-edge privacy
// budget. An edge with budget eps between datasets u and v constrains the
// probabilities p(u), p(v) of answering 1 by four inequalities; solving the
// two that bound p(v) from above gives the single-edge upper bound map
//
//   B_eps(x) = min{ e^eps * x, 1 - (1 - x) / e^eps },
//
// and the two lower bounds give its inverse L_eps. Everything the rest of
// the library does is composition and minimization of these maps.

#ifndef HETDP_EDGE_BOUNDS_HPP_
#define HETDP_EDGE_BOUNDS_HPP_

#include <algorithm>
#include <cmath>
#include <compare>
#include <span>
#include <vector>

#include "hetdp/error.hpp"

namespace hetdp {

// Shared additive tolerance for feasibility comparisons (compatibility
// checks, DP verification). Overridable per call; this is the one default.
inline constexpr double kDefaultTolerance = 1e-9;

// Slack allowed when constructing a Probability from a value that is out of
// [0, 1] by rounding only.
inline constexpr double kProbabilityTolerance = 1e-12;

// A probability value, the chance Pr[M(v) = 1] of a binary mechanism
// answering 1 at some dataset. Values outside [0, 1] by at most
// kProbabilityTolerance are clamped; anything further out is rejected.
class Probability {
 public:
  constexpr Probability() = default;

  explicit Probability(double value) : value_(value) {
    if (!(value >= -kProbabilityTolerance &&
          value <= 1.0 + kProbabilityTolerance)) {
      throw Error(ErrorKind::ProbabilityOutOfRange,
                  "value " + std::to_string(value) + " not in [0, 1]");
    }
    value_ = std::clamp(value_, 0.0, 1.0);
  }

  double value() const { return value_; }

  friend auto operator<=>(const Probability&, const Probability&) = default;

 private:
  double value_ = 0.0;
};

// Edge budgets along a path, eps[i] sitting between vertex i and i+1.
using EpsilonSeq = std::vector<double>;

namespace detail {

inline void require_nonnegative_epsilon(double eps) {
  if (!(std::isfinite(eps) && eps >= 0.0)) {
    throw Error(ErrorKind::NegativeEpsilon,
                "epsilon " + std::to_string(eps) +
                    " must be finite and nonnegative");
  }
}

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace detail

// Upper bound a neighbor with mechanism value x and edge budget eps imposes:
// B_eps(x) = min{ e^eps * x, (x - 1 + e^eps) / e^eps }, clamped to [0, 1].
// The affine branch is evaluated as 1 - (1 - x) / e^eps and the result is
// floored at x so that B_eps(x) >= x holds under rounding as it does
// exactly. eps = 0 is the identity.
inline Probability edge_upper_bound(Probability x, double eps) {
  detail::require_nonnegative_epsilon(eps);
  if (eps == 0.0) return x;
  const double grow = std::exp(eps);
  const double multiplicative = grow * x.value();
  const double affine = 1.0 - (1.0 - x.value()) / grow;
  const double bound = std::min(multiplicative, affine);
  return Probability(detail::clamp01(std::max(x.value(), bound)));
}

// Lower bound counterpart L_eps(x) = max{ e^-eps * x, 1 - e^eps * (1 - x) },
// clamped to [0, 1] and capped at x. For eps > 0 it is the functional
// inverse of edge_upper_bound.
inline Probability edge_lower_bound(Probability x, double eps) {
  detail::require_nonnegative_epsilon(eps);
  if (eps == 0.0) return x;
  const double grow = std::exp(eps);
  const double multiplicative = x.value() / grow;
  const double affine = 1.0 - grow * (1.0 - x.value());
  const double bound = std::max(multiplicative, affine);
  return Probability(detail::clamp01(std::min(x.value(), bound)));
}

// The value 1 / (e^eps + 1) separating the two branches of edge_upper_bound:
// below it the multiplicative branch is the minimum, above it the affine one.
inline Probability branch_threshold(double eps) {
  detail::require_nonnegative_epsilon(eps);
  return Probability(1.0 / (std::exp(eps) + 1.0));
}

// Upper bound imposed across a whole path: the left-to-right fold of
// edge_upper_bound over the path's budgets, starting from alpha. The empty
// path is the identity. Folding keeps every intermediate value in [0, 1],
// so no running product of exponentials can overflow.
inline Probability path_upper_bound(std::span<const double> eps_seq,
                                    Probability alpha) {
  Probability bound = alpha;
  for (double eps : eps_seq) {
    bound = edge_upper_bound(bound, eps);
  }
  return bound;
}

inline Probability path_upper_bound(const EpsilonSeq& eps_seq,
                                    Probability alpha) {
  return path_upper_bound(std::span<const double>(eps_seq), alpha);
}

}  // namespace hetdp

#endif  // HETDP_EDGE_BOUNDS_HPP_
