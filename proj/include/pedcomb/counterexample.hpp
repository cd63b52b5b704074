#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "pedcomb/isomorphism.hpp"
#include "pedcomb/pedigree.hpp"

namespace pedcomb {

/// An n-digit binary string. Digits are counted from the right, 1-based.
struct BitString {
  int width = 0;
  std::uint32_t value = 0;

  int digit(int i) const { return (value >> (i - 1)) & 1u; }
  BitString with_digit(int i, int b) const {
    std::uint32_t mask = 1u << (i - 1);
    return {width, b ? (value | mask) : (value & ~mask)};
  }
  int ones() const { return __builtin_popcount(value); }
  int zeros() const { return width - ones(); }
  std::string str() const;
  auto operator<=>(const BitString&) const = default;
};

/// [2^n] split by parity of the number of ones: (even, odd), each sorted.
std::pair<std::vector<BitString>, std::vector<BitString>> parity_classes(int n);

/// Hypergraph with an ordered edge list; the edge order is part of the
/// identity, not just a labelling.
struct IndexedHypergraph {
  int width = 0;
  std::vector<BitString> vertices;             // sorted
  std::vector<std::vector<BitString>> edges;   // edges[i-1], each sorted

  /// Venn region sizes a(k): number of vertices lying in edge i exactly
  /// when k(i) = 1, for every k in [2^width].
  std::vector<std::int64_t> region_counts() const;
};

/// G on the even class with g_i = {k even : k(i)=1}, H on the odd class with
/// h_i = {k odd : k(i)=1}. The all-zeros vertex stays in G.
std::pair<IndexedHypergraph, IndexedHypergraph> build_hypergraphs(int n);

/// The digit-i flip restricted to the even class: the unique edge-order
/// preserving isomorphism G-g_i -> H-h_i. Verifies that every g_j (j != i)
/// maps onto h_j, and for n <= 4 confirms uniqueness exhaustively.
std::vector<std::pair<BitString, BitString>> edge_deleted_isomorphism(int n, int i);

/// 0/1 tuple indexing tree vertices; bit(j) is the j-th component, 1-based.
struct Tuple {
  int len = 0;
  std::uint32_t bits = 0;
  int bit(int j) const { return (bits >> (j - 1)) & 1u; }
  Tuple extended(int b) const {
    return {len + 1, b ? (bits | (1u << len)) : bits};
  }
  Tuple with(int j, int b) const {
    std::uint32_t mask = 1u << (j - 1);
    return {len, b ? (bits | mask) : (bits & ~mask)};
  }
  auto operator<=>(const Tuple&) const = default;
};

/// Balanced binary tree over a leaf set: the subtree at depth k splits its
/// leaves on digit ordering[k], left = 0, right = 1. Root at depth 0,
/// leaves at depth n-2.
struct TreeSpec {
  int n = 0;
  int root_digit = 0;            // i: the tree of extant vertex x_i
  std::vector<int> ordering;     // i_1 .. i_{n-1}
  std::vector<BitString> leaves;

  std::vector<BitString> leaves_under(const Tuple& t) const;
  BitString leaf_at(const Tuple& t) const;  // t.len == n-2
};

/// Checks the leaf set splits evenly at every level (UnevenSplit otherwise).
TreeSpec build_tree(int n, int root_digit, const std::vector<BitString>& leaves,
                    const std::vector<int>& ordering);

struct CounterexampleOptions {
  /// Digit ordering per extant index (1-based); a permutation of
  /// {1..n} minus the index. Missing entries default to ascending order.
  /// One ordering drives the corresponding tree in both pedigrees.
  std::map<int, std::vector<int>> orderings;
};

struct CounterexamplePair {
  int n = 0;
  std::vector<std::vector<int>> orderings;  // orderings[i-1]
  Pedigree t;
  Pedigree u;
};

/// The non-isomorphic, (n-1)-hypomorphic pair T(X0), U(X0). Trees share
/// founders exactly where bitstrings coincide; the all-zeros vertex never
/// enters the pedigrees.
CounterexamplePair build_counterexample(int n, const CounterexampleOptions& opt = {});

/// Explicit isomorphism T(X0 \ {x_j}) -> U(X0 \ {x_j}): the digit-j flip on
/// founders, extended through every tree by swapping L/R subtrees at the
/// level where j appears in that tree's ordering.
LabelledIsomorphism hypomorphism_witness(const CounterexamplePair& pair, int j);

/// Duplicates every vertex into a male/female couple; each copy of a child
/// is the child of both copies of one original parent, and each original
/// extant vertex gains a fresh extant child of its two copies.
Pedigree genderize(const Pedigree& p);

/// Lifts a witness between base pedigrees to their genderized versions by
/// following parent-couple attachment. Gender flips exactly where the base
/// witness swaps a vertex's two parents.
LabelledIsomorphism lift_witness(const Pedigree& p, const Pedigree& q,
                                 const LabelledIsomorphism& base,
                                 const Pedigree& gp, const Pedigree& gq);

}  // namespace pedcomb
