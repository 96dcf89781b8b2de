/*
 * Copyright 2026 The costgames Authors
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

#ifndef COSTGAMES_COST_HPP
#define COSTGAMES_COST_HPP

#include "costgames/game.hpp"

namespace costgames {

/**
 * Exact cost of an ultimately periodic play.
 *
 * On a lasso the limsup and liminf variants of the averaging objectives
 * coincide, so the same value serves as Min's cost and Max's gain.
 * Throws GameError for a ratio objective whose cycle has reward sum <= 0.
 */
ExtRational eval_lasso(const CostSpec& spec, const LassoPlay& play, const GameGraph& g);

/// cost(h . rho) = a + b * cost(rho), with b >= 0 and 0 * inf = 0.
struct PrefixCoefficients {
    Rational a;
    Rational b;

    [[nodiscard]] ExtRational apply(const ExtRational& cost) const;
    bool operator==(const PrefixCoefficients&) const = default;
};

/**
 * Coefficients for the history h = h_0 .. h_k (plays continue from h_k).
 * EnergySup is rejected with GameError: it is not prefix-linear.
 */
PrefixCoefficients prefix_decompose(const CostSpec& spec, const History& h, const GameGraph& g);

/// h_0 .. h_{k-1} followed by rho; rho must start at h_k.
LassoPlay concat(const History& h, const LassoPlay& rho);

/// Sum of edge prices along the path divided by its number of edges.
Rational partial_price_average(const History& path, const GameGraph& g);

}  // namespace costgames

#endif
