#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pedcomb/isomorphism.hpp"

namespace pedcomb {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Partitions of an n-set into k nonempty blocks, by the standard recurrence.
BigInt stirling2(int n, int k);

BigInt binomial(int n, int k);

BigInt big_pow(const BigInt& base, int exp);

/// Simple undirected graph for the counting formulas.
struct SmallGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // a < b, no duplicates

  int edge_count() const { return static_cast<int>(edges.size()); }
  bool has_edge(int a, int b) const;
};

/// |aut G| by exhaustive permutation search with degree pruning.
std::uint64_t automorphism_count(const SmallGraph& g,
                                 std::uint64_t node_budget = 10'000'000);

/// Number of distinct edge permutations induced by vertex automorphisms.
/// Equals |aut G| exactly when G has no isolated edges and at most one
/// isolated vertex.
std::uint64_t edge_automorphism_count(const SmallGraph& g,
                                      std::uint64_t node_budget = 10'000'000);

/// S(n, e(G)) * e(G)! / edge_automorphism_count(G): the number of distinct
/// depth-1 pedigrees on n labelled children whose parent graph is G.
BigRat depth1_count_from_graph(const SmallGraph& g, int n);

struct CountBounds {
  std::optional<BigRat> lower;  // exact rational; absent for bounds_M with odd n
  BigInt upper;
  std::optional<BigInt> exact;
};

/// Sum of depth1_count_from_graph over all distinct graphs on n vertices
/// with 1..n edges, at most one isolated vertex and no isolated edge
/// (bipartite only by default): a lower bound on the depth-1 count that
/// refines the tree-only closed form. Exhaustive, so n <= 5.
BigRat depth1_class_lower_bound(int n, bool bipartite_only = true);

/// ((n-1) n^(n-2) / 2)^d  <=  N(n,d)  <=  C(n,2)^(nd).
CountBounds bounds_N(int n, int d);

/// ((n-1) n^(n-2) / 2) * prod_{k=0}^{d-2} ((n/2)(d-1-k))^n  <=  M(n,d)
/// <=  C(nd-1, 2)^(nd). The lower bound needs n even.
CountBounds bounds_M(int n, int d);

/// Lower bound on M(n,d) when no vertex at depth k has a parent deeper than
/// k+t+1. Reduces to bounds_M's lower bound at t = d-1.
BigRat bounded_gap_lower_M(int n, int d, int t);

/// Exact count of labelled-isomorphism classes of the assignment model:
/// each of the n children per generation picks an unordered pair of
/// distinct parents from the next layer; childless top-layer vertices drop.
/// With strict_population, every non-bottom layer vertex must be a parent.
BigInt brute_count_N(int n, int d, bool strict_population = false,
                     std::uint64_t assignment_budget = 4'000'000);

/// log4 with relative error below 1e-12 (exact inputs, floating output).
double log4_big(const BigInt& v);
double log4_big(const BigRat& v);

struct SiteBound {
  int n = 0;
  int d = 0;
  std::optional<int> t;
  double s = 0;  // minimum segregating sites, log4 units, upper-rounded
};

/// s with 4^(n*s) >= count; the result is rounded up within 1e-12 relative.
double site_bound(const BigRat& count, int n);

SiteBound site_bound_discrete(int n, int d);  // from bounds_N lower
SiteBound site_bound_general(int n, int d);   // from bounds_M lower (n even)
SiteBound site_bound_gap(int n, int d, int t);

/// Asymptotic reference values, all in log4 units.
double steel_hein_baseline(int n, int d);      // (d/3) log4 n
double reference_discrete(int n, int d);       // (d/2) log4 n
double reference_general(int n, int d);        // (d/2) log4 (n d)
double reference_gap(int n, int d, int t);     // (d/2) log4 (n t)

}  // namespace pedcomb
