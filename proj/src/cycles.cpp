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

#include "costgames/cycles.hpp"
#include "costgames/game.hpp"

#include <algorithm>
#include <deque>
#include <functional>

namespace costgames {

std::vector<std::vector<std::size_t>> strongly_connected_components(const WeightedGraph& graph)
{
    const std::size_t n = graph.size();
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unset), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stack;
    std::vector<std::vector<std::size_t>> components;
    std::size_t counter = 0;

    // iterative Tarjan: (vertex, next arc position)
    std::vector<std::pair<std::size_t, std::size_t>> call;
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unset) continue;
        call.emplace_back(root, 0);
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!call.empty()) {
            auto& [v, pos] = call.back();
            if (pos < graph[v].size()) {
                std::size_t w = graph[v][pos++].to;
                if (index[w] == unset) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    call.emplace_back(w, 0);
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            std::size_t done = v;
            call.pop_back();
            if (!call.empty()) {
                std::size_t parent = call.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
            if (low[done] == index[done]) {
                std::vector<std::size_t> comp;
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp.push_back(w);
                } while (w != done);
                std::sort(comp.begin(), comp.end());
                components.push_back(std::move(comp));
            }
        }
    }
    return components;
}

namespace {

bool has_cycle(const WeightedGraph& graph, const std::vector<std::size_t>& comp)
{
    if (comp.size() > 1) return true;
    for (const auto& arc : graph[comp.front()]) {
        if (arc.to == comp.front()) return true;
    }
    return false;
}

// Karp's theorem on one strongly connected component.
Rational karp_min_mean(const WeightedGraph& graph, const std::vector<std::size_t>& comp,
                       const std::vector<std::size_t>& local)
{
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    const std::size_t k = comp.size();
    std::vector<std::vector<std::optional<Rational>>> dist(k + 1, std::vector<std::optional<Rational>>(k));
    dist[0][0] = Rational(0);
    for (std::size_t step = 1; step <= k; ++step) {
        for (std::size_t i = 0; i < k; ++i) {
            if (!dist[step - 1][i]) continue;
            for (const auto& arc : graph[comp[i]]) {
                std::size_t j = local[arc.to];
                if (j == none) continue;
                Rational cand = *dist[step - 1][i] + arc.weight;
                auto& slot = dist[step][j];
                if (!slot || cand < *slot) slot = cand;
            }
        }
    }
    std::optional<Rational> best;
    for (std::size_t v = 0; v < k; ++v) {
        if (!dist[k][v]) continue;
        std::optional<Rational> worst;
        for (std::size_t j = 0; j < k; ++j) {
            if (!dist[j][v]) continue;
            Rational q = (*dist[k][v] - *dist[j][v]) / Rational(static_cast<long>(k - j));
            if (!worst || q > *worst) worst = q;
        }
        if (worst && (!best || *worst < *best)) best = worst;
    }
    if (!best) throw InternalError("karp: strongly connected component without a closed walk");
    best->canonicalize();
    return *best;
}

WeightedGraph negated(const WeightedGraph& graph)
{
    WeightedGraph out = graph;
    for (auto& arcs : out) {
        for (auto& arc : arcs) arc.weight = -arc.weight;
    }
    return out;
}

struct ComponentMeans {
    std::vector<std::vector<std::size_t>> components;
    std::vector<std::size_t> component_of;
    std::vector<std::optional<Rational>> mean;  // per component, min mean if cyclic
};

ComponentMeans component_means(const WeightedGraph& graph)
{
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    ComponentMeans cm;
    cm.components = strongly_connected_components(graph);
    cm.component_of.assign(graph.size(), none);
    for (std::size_t c = 0; c < cm.components.size(); ++c) {
        for (std::size_t v : cm.components[c]) cm.component_of[v] = c;
    }
    std::vector<std::size_t> local(graph.size(), none);
    for (const auto& comp : cm.components) {
        if (!has_cycle(graph, comp)) {
            cm.mean.emplace_back();
            continue;
        }
        for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = i;
        cm.mean.emplace_back(karp_min_mean(graph, comp, local));
        for (std::size_t v : comp) local[v] = none;
    }
    return cm;
}

}  // namespace

std::optional<Rational> min_cycle_mean(const WeightedGraph& graph)
{
    std::optional<Rational> best;
    for (const auto& m : component_means(graph).mean) {
        if (m && (!best || *m < *best)) best = m;
    }
    return best;
}

std::vector<Rational> reachable_cycle_mean(const WeightedGraph& graph, bool minimize)
{
    const WeightedGraph& work = minimize ? graph : negated(graph);
    ComponentMeans cm = component_means(work);
    // Tarjan emits components in reverse topological order: successors first.
    std::vector<std::optional<Rational>> best(cm.components.size());
    for (std::size_t c = 0; c < cm.components.size(); ++c) {
        std::optional<Rational> b = cm.mean[c];
        for (std::size_t v : cm.components[c]) {
            for (const auto& arc : work[v]) {
                std::size_t d = cm.component_of[arc.to];
                if (d == c || !best[d]) continue;
                if (!b || *best[d] < *b) b = best[d];
            }
        }
        best[c] = b;
    }
    std::vector<Rational> out(graph.size());
    for (std::size_t v = 0; v < graph.size(); ++v) {
        const auto& b = best[cm.component_of[v]];
        if (!b) throw InternalError("reachable_cycle_mean: vertex without outgoing arc");
        out[v] = minimize ? *b : Rational(-*b);
    }
    return out;
}

namespace {

// A cycle of mean exactly `mean` inside `comp`, where `mean` is the component's
// minimum: shift weights so that the minimum is 0, take shortest-path
// potentials, and search the subgraph of tight arcs, which contains every
// zero-weight cycle.
std::vector<std::size_t> cycle_with_mean(const WeightedGraph& graph, const std::vector<std::size_t>& comp,
                                         const Rational& mean)
{
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> local(graph.size(), none);
    for (std::size_t i = 0; i < comp.size(); ++i) local[comp[i]] = i;
    const std::size_t k = comp.size();

    std::vector<std::optional<Rational>> dist(k);
    dist[0] = Rational(0);
    for (std::size_t round = 0; round + 1 < k + 1; ++round) {
        bool changed = false;
        for (std::size_t i = 0; i < k; ++i) {
            if (!dist[i]) continue;
            for (const auto& arc : graph[comp[i]]) {
                std::size_t j = local[arc.to];
                if (j == none) continue;
                Rational cand = *dist[i] + arc.weight - mean;
                if (!dist[j] || cand < *dist[j]) {
                    dist[j] = cand;
                    changed = true;
                }
            }
        }
        if (!changed) break;
    }

    std::vector<std::vector<std::size_t>> tight(k);
    for (std::size_t i = 0; i < k; ++i) {
        for (const auto& arc : graph[comp[i]]) {
            std::size_t j = local[arc.to];
            if (j == none) continue;
            if (*dist[i] + arc.weight - mean == *dist[j]) tight[i].push_back(j);
        }
    }

    // DFS for a cycle among tight arcs.
    std::vector<int> colour(k, 0);
    std::vector<std::size_t> parent(k, none);
    for (std::size_t root = 0; root < k; ++root) {
        if (colour[root]) continue;
        std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
        colour[root] = 1;
        while (!frames.empty()) {
            auto& [v, pos] = frames.back();
            if (pos == tight[v].size()) {
                colour[v] = 2;
                frames.pop_back();
                continue;
            }
            std::size_t w = tight[v][pos++];
            if (colour[w] == 0) {
                colour[w] = 1;
                parent[w] = v;
                frames.emplace_back(w, 0);
            } else if (colour[w] == 1) {
                std::vector<std::size_t> cyc{comp[w]};
                std::vector<std::size_t> back;
                for (std::size_t u = v; u != w; u = parent[u]) back.push_back(comp[u]);
                cyc.insert(cyc.end(), back.rbegin(), back.rend());
                return cyc;
            }
        }
    }
    throw InternalError("cycle_with_mean: no tight cycle found");
}

}  // namespace

CycleWitness best_reachable_cycle(const WeightedGraph& graph, std::size_t start, bool minimize)
{
    constexpr std::size_t none = static_cast<std::size_t>(-1);
    const WeightedGraph& work = minimize ? graph : negated(graph);

    // BFS tree from start; restrict to the reachable part.
    std::vector<std::size_t> parent(graph.size(), none);
    std::vector<bool> seen(graph.size(), false);
    std::deque<std::size_t> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (const auto& arc : work[v]) {
            if (!seen[arc.to]) {
                seen[arc.to] = true;
                parent[arc.to] = v;
                queue.push_back(arc.to);
            }
        }
    }
    WeightedGraph reach(graph.size());
    for (std::size_t v = 0; v < graph.size(); ++v) {
        if (seen[v]) reach[v] = work[v];
    }
    ComponentMeans cm = component_means(reach);
    std::optional<std::size_t> pick;
    for (std::size_t c = 0; c < cm.components.size(); ++c) {
        if (!seen[cm.components[c].front()] || !cm.mean[c]) continue;
        if (!pick || *cm.mean[c] < *cm.mean[*pick]) pick = c;
    }
    if (!pick) throw InternalError("best_reachable_cycle: no reachable cycle");
    const Rational mean = *cm.mean[*pick];
    std::vector<std::size_t> cyc = cycle_with_mean(reach, cm.components[*pick], mean);

    // enter the cycle at its vertex closest to start
    std::vector<std::size_t> depth(graph.size(), none);
    depth[start] = 0;
    {
        std::deque<std::size_t> q{start};
        while (!q.empty()) {
            std::size_t v = q.front();
            q.pop_front();
            for (const auto& arc : work[v]) {
                if (depth[arc.to] == none) {
                    depth[arc.to] = depth[v] + 1;
                    q.push_back(arc.to);
                }
            }
        }
    }
    std::size_t entry_pos = 0;
    for (std::size_t i = 1; i < cyc.size(); ++i) {
        if (depth[cyc[i]] < depth[cyc[entry_pos]]) entry_pos = i;
    }
    std::rotate(cyc.begin(), cyc.begin() + static_cast<std::ptrdiff_t>(entry_pos), cyc.end());

    CycleWitness w;
    for (std::size_t v = parent[cyc.front()]; v != none; v = parent[v]) w.path.push_back(v);
    if (cyc.front() == start) w.path.clear();
    std::reverse(w.path.begin(), w.path.end());
    w.cycle = std::move(cyc);
    w.mean = minimize ? mean : Rational(-mean);
    return w;
}

}  // namespace costgames
