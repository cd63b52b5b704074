#include "pedcomb/enumeration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace pedcomb {

BigInt stirling2(int n, int k) {
  if (n < 0 || k < 0 || k > n) throw std::invalid_argument("stirling2: need 0 <= k <= n");
  if (n == 0) return k == 0 ? 1 : 0;
  std::vector<BigInt> row(n + 1, 0);
  row[0] = 1;  // S(0,0)
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j >= 1; --j) row[j] = j * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[k];
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt out = 1;
  for (int i = 0; i < k; ++i) {
    out *= n - i;
    out /= i + 1;
  }
  return out;
}

bool SmallGraph::has_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  return std::find(edges.begin(), edges.end(), std::make_pair(a, b)) != edges.end();
}

namespace {

void for_each_automorphism(const SmallGraph& g, std::uint64_t node_budget,
                           const std::function<void(const std::vector<int>&)>& emit) {
  int n = g.n;
  std::vector<std::uint32_t> adj(n, 0);
  for (auto [a, b] : g.edges) {
    adj[a] |= 1u << b;
    adj[b] |= 1u << a;
  }
  std::vector<int> degree(n);
  for (int v = 0; v < n; ++v) degree[v] = __builtin_popcount(adj[v]);

  std::vector<int> image(n, -1);
  std::vector<bool> used(n, false);
  std::uint64_t nodes = 0;
  std::function<void(int)> place = [&](int v) {
    if (++nodes > node_budget)
      throw ResourceLimitError("automorphism search exceeded node budget");
    if (v == n) {
      emit(image);
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w] || degree[w] != degree[v]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u)
        if (((adj[v] >> u) & 1u) != ((adj[w] >> image[u]) & 1u)) ok = false;
      if (!ok) continue;
      used[w] = true;
      image[v] = w;
      place(v + 1);
      used[w] = false;
      image[v] = -1;
    }
  };
  place(0);
}

}  // namespace

std::uint64_t automorphism_count(const SmallGraph& g, std::uint64_t node_budget) {
  std::uint64_t count = 0;
  for_each_automorphism(g, node_budget, [&](const std::vector<int>&) { ++count; });
  return count;
}

std::uint64_t edge_automorphism_count(const SmallGraph& g, std::uint64_t node_budget) {
  std::set<std::vector<int>> induced;
  for_each_automorphism(g, node_budget, [&](const std::vector<int>& image) {
    std::vector<int> perm;
    perm.reserve(g.edges.size());
    for (auto [a, b] : g.edges) {
      int x = image[a], y = image[b];
      if (x > y) std::swap(x, y);
      auto it = std::find(g.edges.begin(), g.edges.end(), std::make_pair(x, y));
      perm.push_back(static_cast<int>(it - g.edges.begin()));
    }
    induced.insert(std::move(perm));
  });
  return induced.size();
}

BigRat depth1_count_from_graph(const SmallGraph& g, int n) {
  int k = g.edge_count();
  if (k < 1 || k > n)
    throw std::invalid_argument("depth1_count_from_graph: need 1 <= e(G) <= n");
  BigInt numer = stirling2(n, k);
  for (int i = 2; i <= k; ++i) numer *= i;
  return BigRat(numer, BigInt(edge_automorphism_count(g)));
}

BigInt big_pow(const BigInt& base, int exp) {
  BigInt out = 1;
  while (exp-- > 0) out *= base;
  return out;
}

namespace {

BigRat rat_power(const BigRat& base, int exp) {
  BigRat out = 1;
  while (exp-- > 0) out *= base;
  return out;
}

BigRat depth1_tree_lower(int n) {
  // (n-1) n^(n-2) / 2, the tree-class specialization.
  return BigRat(BigInt(n - 1) * big_pow(BigInt(n), n - 2), 2);
}

}  // namespace

namespace {

bool is_bipartite(const SmallGraph& g) {
  std::vector<int> colour(g.n, -1);
  std::vector<std::vector<int>> adj(g.n);
  for (auto [a, b] : g.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (int start = 0; start < g.n; ++start) {
    if (colour[start] >= 0) continue;
    colour[start] = 0;
    std::vector<int> stack = {start};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : adj[v]) {
        if (colour[w] < 0) {
          colour[w] = 1 - colour[v];
          stack.push_back(w);
        } else if (colour[w] == colour[v]) {
          return false;
        }
      }
    }
  }
  return true;
}

// Canonical edge mask: minimum over vertex permutations. Only for tiny n.
std::uint32_t canonical_mask(const SmallGraph& g,
                             const std::vector<std::pair<int, int>>& all_pairs) {
  std::vector<int> perm(g.n);
  for (int i = 0; i < g.n; ++i) perm[i] = i;
  std::uint32_t best = ~0u;
  do {
    std::uint32_t mask = 0;
    for (auto [a, b] : g.edges) {
      int x = perm[a], y = perm[b];
      if (x > y) std::swap(x, y);
      for (std::size_t e = 0; e < all_pairs.size(); ++e)
        if (all_pairs[e] == std::make_pair(x, y)) mask |= 1u << e;
    }
    best = std::min(best, mask);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

BigRat depth1_class_lower_bound(int n, bool bipartite_only) {
  if (n < 2 || n > 5)
    throw std::invalid_argument("depth1_class_lower_bound: exhaustive, needs 2 <= n <= 5");
  std::vector<std::pair<int, int>> all_pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) all_pairs.push_back({a, b});
  std::set<std::uint32_t> seen;
  BigRat total = 0;
  for (std::uint32_t mask = 1; mask < (1u << all_pairs.size()); ++mask) {
    SmallGraph g;
    g.n = n;
    for (std::size_t e = 0; e < all_pairs.size(); ++e)
      if (mask & (1u << e)) g.edges.push_back(all_pairs[e]);
    if (g.edge_count() < 1 || g.edge_count() > n) continue;
    std::vector<int> degree(n, 0);
    for (auto [a, b] : g.edges) {
      degree[a]++;
      degree[b]++;
    }
    int isolated = 0;
    bool isolated_edge = false;
    for (int v = 0; v < n; ++v)
      if (degree[v] == 0) isolated++;
    for (auto [a, b] : g.edges)
      if (degree[a] == 1 && degree[b] == 1) isolated_edge = true;
    if (isolated > 1 || isolated_edge) continue;
    if (bipartite_only && !is_bipartite(g)) continue;
    if (!seen.insert(canonical_mask(g, all_pairs)).second) continue;
    total += depth1_count_from_graph(g, n);
  }
  return total;
}

CountBounds bounds_N(int n, int d) {
  if (n < 2 || d < 1) throw std::invalid_argument("bounds_N: need n >= 2, d >= 1");
  CountBounds out;
  out.lower = rat_power(depth1_tree_lower(n), d);
  out.upper = big_pow(binomial(n, 2), n * d);
  return out;
}

CountBounds bounds_M(int n, int d) {
  if (n < 2 || d < 1) throw std::invalid_argument("bounds_M: need n >= 2, d >= 1");
  CountBounds out;
  out.upper = big_pow(binomial(n * d - 1, 2), n * d);
  if (n % 2 == 0) {
    BigRat lower = depth1_tree_lower(n);
    for (int k = 0; k <= d - 2; ++k)
      lower *= rat_power(BigRat(n, 2) * (d - 1 - k), n);
    out.lower = lower;
  }
  return out;
}

BigRat bounded_gap_lower_M(int n, int d, int t) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("bounded_gap_lower_M: n must be even");
  if (d < 1 || t < 1 || t > d - 1)
    throw std::invalid_argument("bounded_gap_lower_M: need 1 <= t <= d-1");
  BigRat out = depth1_tree_lower(n);
  for (int k = 0; k <= d - t - 1; ++k) out *= rat_power(BigRat(n * t, 2), n);
  for (int k = d - t; k <= d - 2; ++k) out *= rat_power(BigRat(n * (d - k - 1), 2), n);
  return out;
}

BigInt brute_count_N(int n, int d, bool strict_population,
                     std::uint64_t assignment_budget) {
  if (n < 2 || d < 1) throw std::invalid_argument("brute_count_N: need n >= 2, d >= 1");
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) pairs.push_back({a, b});
  int choices = static_cast<int>(pairs.size());
  int slots = n * d;  // one parent pick per vertex in layers 0..d-1

  double total = std::pow(double(choices), double(slots));
  if (total > double(assignment_budget))
    throw ResourceLimitError("brute_count_N: assignment space exceeds budget");

  std::set<std::string> codes;
  std::vector<int> pick(slots, 0);
  while (true) {
    // Layer i vertex j has id i*n + j; its slot is i*n + j for i < d.
    bool admissible = true;
    if (strict_population) {
      std::vector<int> kids(n * (d + 1), 0);
      for (int s = 0; s < slots; ++s) {
        int layer = s / n;
        kids[(layer + 1) * n + pairs[pick[s]].first]++;
        kids[(layer + 1) * n + pairs[pick[s]].second]++;
      }
      for (int v = n; v < n * (d + 1) && admissible; ++v)
        if (kids[v] == 0) admissible = false;
    }
    if (admissible) {
      RawPedigree raw;
      std::vector<int> kids(n * (d + 1), 0);
      for (int s = 0; s < slots; ++s) {
        int layer = s / n;
        int child = layer * n + (s % n);
        int pa = (layer + 1) * n + pairs[pick[s]].first;
        int pb = (layer + 1) * n + pairs[pick[s]].second;
        raw.arcs.push_back({VertexId(child), VertexId(pa)});
        raw.arcs.push_back({VertexId(child), VertexId(pb)});
        kids[pa]++;
        kids[pb]++;
      }
      for (int v = 0; v < n * (d + 1); ++v) {
        bool top = v >= n * d;
        if (top && kids[v] == 0) continue;  // childless founders drop
        raw.vertices.push_back(VertexId(v));
      }
      for (int pos = 0; pos < n; ++pos)
        raw.extant.push_back({"x" + std::to_string(pos + 1), VertexId(pos)});
      codes.insert(canonical_code(Pedigree::from_raw(raw)).bytes);
    }
    int s = slots - 1;
    while (s >= 0 && pick[s] == choices - 1) pick[s--] = 0;
    if (s < 0) break;
    pick[s]++;
  }
  return BigInt(codes.size());
}

double log4_big(const BigInt& v) {
  if (v <= 0) throw std::invalid_argument("log4_big: need a positive value");
  std::size_t bits = boost::multiprecision::msb(v);
  if (bits <= 52) return std::log2(v.convert_to<double>()) / 2.0;
  BigInt top = v >> (bits - 52);
  return (double(bits - 52) + std::log2(top.convert_to<double>())) / 2.0;
}

double log4_big(const BigRat& v) {
  if (v <= 0) throw std::invalid_argument("log4_big: need a positive value");
  return log4_big(boost::multiprecision::numerator(v)) -
         log4_big(boost::multiprecision::denominator(v));
}

double site_bound(const BigRat& count, int n) {
  if (n < 1) throw std::invalid_argument("site_bound: need n >= 1");
  if (count < 1) throw std::invalid_argument("site_bound: need count >= 1");
  double s = log4_big(count) / n;
  return s * (1.0 + 1e-12);  // round up so 4^(n*s) >= count
}

SiteBound site_bound_discrete(int n, int d) {
  return {n, d, std::nullopt, site_bound(*bounds_N(n, d).lower, n)};
}

SiteBound site_bound_general(int n, int d) {
  auto b = bounds_M(n, d);
  if (!b.lower)
    throw std::invalid_argument("site_bound_general: lower bound needs even n");
  return {n, d, std::nullopt, site_bound(*b.lower, n)};
}

SiteBound site_bound_gap(int n, int d, int t) {
  return {n, d, t, site_bound(bounded_gap_lower_M(n, d, t), n)};
}

double steel_hein_baseline(int n, int d) { return d / 3.0 * std::log2(double(n)) / 2.0; }
double reference_discrete(int n, int d) { return d / 2.0 * std::log2(double(n)) / 2.0; }
double reference_general(int n, int d) {
  return d / 2.0 * std::log2(double(n) * d) / 2.0;
}
double reference_gap(int n, int d, int t) {
  return d / 2.0 * std::log2(double(n) * t) / 2.0;
}

}  // namespace pedcomb
