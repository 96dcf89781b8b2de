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

#ifndef COSTGAMES_CYCLES_HPP
#define COSTGAMES_CYCLES_HPP

#include "costgames/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace costgames {

struct WeightedArc {
    std::size_t to;
    Rational weight;
};

/// Adjacency lists; arc order is significant for tie-breaking.
using WeightedGraph = std::vector<std::vector<WeightedArc>>;

/// Tarjan SCCs; each component lists its vertices in increasing order.
std::vector<std::vector<std::size_t>> strongly_connected_components(const WeightedGraph& graph);

/// Minimum mean over all cycles of the graph, or nullopt when acyclic (Karp).
std::optional<Rational> min_cycle_mean(const WeightedGraph& graph);

/**
 * For every vertex, the optimum (min or max) mean over the cycles reachable
 * from it. Every vertex must have an outgoing arc.
 */
std::vector<Rational> reachable_cycle_mean(const WeightedGraph& graph, bool minimize);

struct CycleWitness {
    std::vector<std::size_t> path;   // start .. (excluding the cycle entry)
    std::vector<std::size_t> cycle;  // begins at the entry vertex
    Rational mean;
};

/// A reachable cycle of optimum mean, with a shortest path leading to it.
CycleWitness best_reachable_cycle(const WeightedGraph& graph, std::size_t start, bool minimize);

}  // namespace costgames

#endif
