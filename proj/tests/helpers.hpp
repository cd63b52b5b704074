#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "pedcomb/pedigree.hpp"

namespace pedcomb::test {

// x1 and x2 share the founder pair {10, 11}.
inline Pedigree twin_pedigree() {
  PedigreeBuilder b;
  b.child(0, 10, 11).child(1, 10, 11).extant("x1", 0).extant("x2", 1);
  return b.build();
}

// Triangle-based pedigree: founders {a,b,c}, x_i's parents are the
// endpoints of edge e_i of K_3.
inline Pedigree k3_pedigree() {
  PedigreeBuilder b;
  b.child(0, 10, 11).child(1, 11, 12).child(2, 10, 12);
  b.extant("x1", 0).extant("x2", 1).extant("x3", 2);
  return b.build();
}

// Star-based pedigree: centre 13, leaves 10..12, x_i's parents are the
// endpoints of star edge e_i.
inline Pedigree k13_pedigree() {
  PedigreeBuilder b;
  b.child(0, 10, 13).child(1, 11, 13).child(2, 12, 13);
  b.extant("x1", 0).extant("x2", 1).extant("x3", 2);
  return b.build();
}

// Deterministic id scramble preserving structure and labels.
inline Pedigree relabel(const Pedigree& p, std::mt19937& rng) {
  RawPedigree raw = p.to_raw();
  std::vector<VertexId> fresh(raw.vertices.size());
  std::iota(fresh.begin(), fresh.end(), 0);
  std::shuffle(fresh.begin(), fresh.end(), rng);
  // Spread ids out so they stop being dense.
  std::uniform_int_distribution<VertexId> jitter(0, 3);
  VertexId offset = 0;
  std::vector<VertexId> sparse;
  for (std::size_t i = 0; i < fresh.size(); ++i) {
    offset += 1 + jitter(rng);
    sparse.push_back(offset);
  }
  std::map<VertexId, VertexId> rename;
  for (std::size_t i = 0; i < raw.vertices.size(); ++i)
    rename[raw.vertices[i]] = sparse[fresh[i]];
  RawPedigree out;
  for (VertexId v : raw.vertices) out.vertices.push_back(rename[v]);
  for (auto [c, q] : raw.arcs) out.arcs.push_back({rename[c], rename[q]});
  for (auto& [label, id] : raw.extant) out.extant.push_back({label, rename[id]});
  return Pedigree::from_raw(out);
}

// Brute-force labelled-isomorphism oracle: tries every bijection that fixes
// the extant labels. Only for small pedigrees; independent of the canonical
// labelling code.
inline bool brute_isomorphic(const Pedigree& p, const Pedigree& q) {
  if (p.vertex_count() != q.vertex_count()) return false;
  if (p.extant_labels() != q.extant_labels()) return false;
  int n = p.vertex_count();

  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);
  for (int pos = 0; pos < p.order(); ++pos) {
    image[p.extant_vertex(pos)] = q.extant_vertex(pos);
    used[q.extant_vertex(pos)] = true;
  }
  std::vector<int> free_p;
  for (int v = 0; v < n; ++v)
    if (image[v] < 0) free_p.push_back(v);

  auto arcs_match = [&]() {
    for (int v = 0; v < n; ++v) {
      int w = image[v];
      if (p.is_founder(v) != q.is_founder(w)) return false;
      if (p.is_founder(v)) continue;
      std::array<int, 2> a = {image[p.parents(v)[0]], image[p.parents(v)[1]]};
      std::sort(a.begin(), a.end());
      if (a != q.parents(w)) return false;
    }
    return true;
  };

  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == free_p.size()) return arcs_match();
    int v = free_p[i];
    for (int w = 0; w < n; ++w) {
      if (used[w] || q.label_pos(w) >= 0) continue;
      if (p.is_founder(v) != q.is_founder(w)) continue;
      if (p.children(v).size() != q.children(w).size()) continue;
      used[w] = true;
      image[v] = w;
      if (place(i + 1)) return true;
      used[w] = false;
      image[v] = -1;
    }
    return false;
  };
  return place(0);
}

// Random discrete generation pedigree: n extant, given upper layer sizes;
// every upper-layer vertex is forced to acquire a child so each vertex has
// an extant descendant and the pedigree is layered.
inline Pedigree random_dgp(std::mt19937& rng, int n, const std::vector<int>& layer_sizes) {
  RawPedigree raw;
  std::vector<std::vector<VertexId>> layers;
  VertexId next = 0;
  layers.push_back({});
  for (int j = 0; j < n; ++j) layers[0].push_back(next++);
  for (int size : layer_sizes) {
    layers.push_back({});
    for (int j = 0; j < size; ++j) layers.back().push_back(next++);
  }
  for (auto& layer : layers)
    for (VertexId v : layer) raw.vertices.push_back(v);

  for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
    const auto& upper = layers[i + 1];
    std::vector<std::pair<VertexId, VertexId>> pairs;
    for (std::size_t a = 0; a < upper.size(); ++a)
      for (std::size_t b = a + 1; b < upper.size(); ++b)
        pairs.push_back({upper[a], upper[b]});
    std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
    std::vector<std::pair<VertexId, VertexId>> chosen;
    for (std::size_t c = 0; c < layers[i].size(); ++c) chosen.push_back(pairs[pick(rng)]);

    // Patch uncovered upper vertices by displacing a doubly-covered parent;
    // endpoint counts sum to 2*children, so one always exists. Requires
    // |upper| <= 2*|lower|.
    std::map<VertexId, int> count;
    for (auto& pr : chosen) {
      count[pr.first]++;
      count[pr.second]++;
    }
    for (VertexId u : upper) {
      if (count[u] > 0) continue;
      bool patched = false;
      for (auto& pr : chosen) {
        VertexId keep, drop;
        if (count[pr.first] >= 2 && pr.second != u) {
          drop = pr.first;
          keep = pr.second;
        } else if (count[pr.second] >= 2 && pr.first != u) {
          drop = pr.second;
          keep = pr.first;
        } else {
          continue;
        }
        count[drop]--;
        count[u]++;
        pr = {std::min(keep, u), std::max(keep, u)};
        patched = true;
        break;
      }
      if (!patched) throw std::logic_error("random_dgp: layer too wide to cover");
    }
    for (std::size_t c = 0; c < layers[i].size(); ++c) {
      raw.arcs.push_back({layers[i][c], chosen[c].first});
      raw.arcs.push_back({layers[i][c], chosen[c].second});
    }
  }
  for (int j = 0; j < n; ++j)
    raw.extant.push_back({"x" + std::to_string(j + 1), layers[0][j]});
  return Pedigree::from_raw(raw);
}

// Random general pedigree: parents always at higher indices (acyclic by
// construction), founders where the coin says so, unused would-be founders
// dropped. Produces non-layered shapes and childless internal vertices.
inline Pedigree random_general(std::mt19937& rng, int n_extant, int extra) {
  int m = n_extant + extra;
  RawPedigree raw;
  std::vector<std::array<int, 2>> parents(m, {-1, -1});
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int v = 0; v < m; ++v) {
    bool founder = v >= n_extant && (coin(rng) < 0.4 || v >= m - 2);
    if (founder) continue;
    if (v >= m - 2) continue;  // not enough room above
    // Parents sit at higher non-extant indices; extant stay childless.
    std::uniform_int_distribution<int> above(std::max(v + 1, n_extant), m - 1);
    int a = above(rng), b = above(rng);
    int guard = 0;
    while (b == a && guard++ < 32) b = above(rng);
    if (a == b) continue;  // becomes a founder instead
    parents[v] = {std::min(a, b), std::max(a, b)};
  }
  std::vector<int> degree(m, 0);
  for (int v = 0; v < m; ++v) {
    if (parents[v][0] < 0) continue;
    degree[v] += 2;
    degree[parents[v][0]]++;
    degree[parents[v][1]]++;
  }
  // Extant vertices must have parents; give the coin another chance.
  for (int v = 0; v < n_extant; ++v) {
    if (parents[v][0] >= 0) continue;
    parents[v] = {m - 2, m - 1};
    degree[v] += 2;
    degree[m - 2]++;
    degree[m - 1]++;
  }
  for (int v = 0; v < m; ++v) {
    if (degree[v] == 0) continue;  // drop isolated leftovers
    raw.vertices.push_back(VertexId(v));
    if (parents[v][0] >= 0) {
      raw.arcs.push_back({VertexId(v), VertexId(parents[v][0])});
      raw.arcs.push_back({VertexId(v), VertexId(parents[v][1])});
    }
  }
  for (int v = 0; v < n_extant; ++v)
    raw.extant.push_back({"x" + std::to_string(v + 1), VertexId(v)});
  return Pedigree::from_raw(raw);
}

}  // namespace pedcomb::test
