#include "pedcomb/counterexample.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace pedcomb {

std::string BitString::str() const {
  std::string s(width, '0');
  for (int i = 1; i <= width; ++i)
    if (digit(i)) s[width - i] = '1';
  return s;
}

namespace {

void check_n(int n) {
  if (n < 3 || n > 24)
    throw std::invalid_argument("n must be in [3, 24]");
}

}  // namespace

std::pair<std::vector<BitString>, std::vector<BitString>> parity_classes(int n) {
  check_n(n);
  std::vector<BitString> even, odd;
  for (std::uint32_t k = 0; k < (1u << n); ++k) {
    BitString b{n, k};
    (b.ones() % 2 == 0 ? even : odd).push_back(b);
  }
  return {even, odd};
}

std::vector<std::int64_t> IndexedHypergraph::region_counts() const {
  std::vector<std::int64_t> counts(std::size_t(1) << width, 0);
  std::vector<std::set<std::uint32_t>> members(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e)
    for (const BitString& v : edges[e]) members[e].insert(v.value);
  for (const BitString& v : vertices) {
    std::uint32_t pattern = 0;
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (members[e].count(v.value)) pattern |= 1u << e;
    counts[pattern]++;
  }
  return counts;
}

std::pair<IndexedHypergraph, IndexedHypergraph> build_hypergraphs(int n) {
  auto [even, odd] = parity_classes(n);
  IndexedHypergraph g{n, even, {}};
  IndexedHypergraph h{n, odd, {}};
  g.edges.resize(n);
  h.edges.resize(n);
  for (int i = 1; i <= n; ++i) {
    for (const BitString& k : even)
      if (k.digit(i)) g.edges[i - 1].push_back(k);
    for (const BitString& k : odd)
      if (k.digit(i)) h.edges[i - 1].push_back(k);
  }
  return {g, h};
}

std::vector<std::pair<BitString, BitString>> edge_deleted_isomorphism(int n, int i) {
  check_n(n);
  if (i < 1 || i > n) throw std::invalid_argument("edge index out of range");
  auto [g, h] = build_hypergraphs(n);

  std::vector<std::pair<BitString, BitString>> map;
  for (const BitString& k : g.vertices)
    map.push_back({k, k.with_digit(i, 1 - k.digit(i))});

  // The flip must carry g_j onto h_j for every j != i.
  for (int j = 1; j <= n; ++j) {
    if (j == i) continue;
    std::set<std::uint32_t> image, target;
    for (const BitString& k : g.edges[j - 1])
      image.insert(k.with_digit(i, 1 - k.digit(i)).value);
    for (const BitString& k : h.edges[j - 1]) target.insert(k.value);
    if (image != target)
      throw std::logic_error("digit flip does not preserve edge order");
  }

  // Any edge-order preserving isomorphism maps each Venn region of
  // {g_j : j != i} to the corresponding region of {h_j : j != i}. For small
  // n, confirm every region is a singleton, which forces the flip.
  if (n <= 4) {
    std::map<std::uint32_t, std::vector<std::uint32_t>> g_regions, h_regions;
    for (const BitString& k : g.vertices)
      g_regions[k.with_digit(i, 0).value].push_back(k.value);
    for (const BitString& k : h.vertices)
      h_regions[k.with_digit(i, 0).value].push_back(k.value);
    for (const auto& [pattern, members] : g_regions) {
      auto it = h_regions.find(pattern);
      if (members.size() != 1 || it == h_regions.end() || it->second.size() != 1)
        throw std::logic_error("edge-deleted isomorphism is not unique");
      if (it->second[0] != (members[0] ^ (1u << (i - 1))))
        throw std::logic_error("unique region bijection is not the digit flip");
    }
  }
  return map;
}

std::vector<BitString> TreeSpec::leaves_under(const Tuple& t) const {
  std::vector<BitString> out;
  for (const BitString& k : leaves) {
    bool match = true;
    for (int j = 1; j <= t.len && match; ++j)
      if (k.digit(ordering[j - 1]) != t.bit(j)) match = false;
    if (match) out.push_back(k);
  }
  return out;
}

BitString TreeSpec::leaf_at(const Tuple& t) const {
  if (t.len != n - 2) throw std::invalid_argument("leaf tuple must have length n-2");
  auto under = leaves_under(t);
  if (under.size() != 1) throw std::logic_error("tuple does not isolate a leaf");
  return under[0];
}

TreeSpec build_tree(int n, int root_digit, const std::vector<BitString>& leaves,
                    const std::vector<int>& ordering) {
  check_n(n);
  if (root_digit < 1 || root_digit > n)
    throw std::invalid_argument("root digit out of range");
  std::set<int> expected;
  for (int j = 1; j <= n; ++j)
    if (j != root_digit) expected.insert(j);
  if (std::set<int>(ordering.begin(), ordering.end()) != expected ||
      ordering.size() != expected.size())
    throw std::invalid_argument("ordering must permute the other digits");
  if (leaves.size() != (std::size_t(1) << (n - 2)))
    throw std::invalid_argument("leaf set must have 2^(n-2) elements");

  TreeSpec tree{n, root_digit, ordering, leaves};
  std::sort(tree.leaves.begin(), tree.leaves.end());
  // Every subtree must split its leaves evenly on the next digit.
  for (int len = 0; len < n - 2; ++len) {
    for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
      Tuple t{len, bits};
      auto under = tree.leaves_under(t);
      if (under.size() != (std::size_t(1) << (n - 2 - len)))
        throw std::invalid_argument("UnevenSplit: leaf set unbalanced under ordering");
    }
  }
  return tree;
}

namespace {

struct IdScheme {
  int n;
  VertexId per_tree;   // internal vertices per tree (levels 1..n-3)
  VertexId founder_base;

  explicit IdScheme(int n_)
      : n(n_),
        per_tree(n_ >= 4 ? (VertexId(1) << (n_ - 2)) - 2 : 0),
        founder_base(VertexId(n_) + VertexId(n_) * per_tree) {}

  VertexId extant(int i) const { return VertexId(i) - 1; }
  VertexId founder(const BitString& k) const { return founder_base + k.value; }
  VertexId internal(int i, const Tuple& t) const {
    return VertexId(n) + VertexId(i - 1) * per_tree +
           ((VertexId(1) << t.len) - 2) + t.bits;
  }
  VertexId node(int i, const Tuple& t, const TreeSpec& tree) const {
    if (t.len == 0) return extant(i);
    if (t.len == n - 2) return founder(tree.leaf_at(t));
    return internal(i, t);
  }
};

Pedigree assemble_side(int n, const std::vector<TreeSpec>& trees) {
  IdScheme ids(n);
  RawPedigree raw;
  std::set<VertexId> seen;
  auto add_vertex = [&](VertexId v) {
    if (seen.insert(v).second) raw.vertices.push_back(v);
  };
  for (int i = 1; i <= n; ++i) {
    const TreeSpec& tree = trees[i - 1];
    raw.extant.push_back({"x" + std::to_string(i), ids.extant(i)});
    for (int len = 0; len < n - 2; ++len) {
      for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
        Tuple t{len, bits};
        VertexId child = ids.node(i, t, tree);
        VertexId left = ids.node(i, t.extended(0), tree);
        VertexId right = ids.node(i, t.extended(1), tree);
        add_vertex(child);
        add_vertex(left);
        add_vertex(right);
        raw.arcs.push_back({child, left});
        raw.arcs.push_back({child, right});
      }
    }
  }
  std::sort(raw.vertices.begin(), raw.vertices.end());
  std::sort(raw.arcs.begin(), raw.arcs.end());
  return Pedigree::from_raw(raw);
}

}  // namespace

CounterexamplePair build_counterexample(int n, const CounterexampleOptions& opt) {
  check_n(n);
  auto [g, h] = build_hypergraphs(n);

  CounterexamplePair pair;
  pair.n = n;
  std::vector<TreeSpec> t_trees, u_trees;
  for (int i = 1; i <= n; ++i) {
    std::vector<int> ordering;
    auto it = opt.orderings.find(i);
    if (it != opt.orderings.end()) {
      ordering = it->second;
    } else {
      for (int j = 1; j <= n; ++j)
        if (j != i) ordering.push_back(j);
    }
    pair.orderings.push_back(ordering);
    t_trees.push_back(build_tree(n, i, g.edges[i - 1], ordering));
    u_trees.push_back(build_tree(n, i, h.edges[i - 1], ordering));
  }
  pair.t = assemble_side(n, t_trees);
  pair.u = assemble_side(n, u_trees);
  return pair;
}

LabelledIsomorphism hypomorphism_witness(const CounterexamplePair& pair, int j) {
  int n = pair.n;
  if (j < 1 || j > n) throw std::invalid_argument("witness index out of range");
  IdScheme ids(n);
  LabelledIsomorphism iso;

  // Founders: the digit-j flip. Every founder of T survives deleting x_j
  // (even weight >= 2 leaves a one outside digit j); on the U side only the
  // unit string at digit j disappears, which is not in the image.
  for (std::uint32_t k = 1; k < (1u << n); ++k) {
    BitString b{n, k};
    if (b.ones() % 2 != 0) continue;
    BitString flipped = b.with_digit(j, 1 - b.digit(j));
    iso.map.push_back({ids.founder(b), ids.founder(flipped)});
  }

  // Trees i != j: below the level of digit j the map is the identity on
  // tuples; from that level on, the tuple component at j's position flips,
  // i.e. L and R subtrees swap.
  for (int i = 1; i <= n; ++i) {
    if (i == j) continue;
    const std::vector<int>& ordering = pair.orderings[i - 1];
    int pos = 0;
    for (std::size_t q = 0; q < ordering.size(); ++q)
      if (ordering[q] == j) pos = static_cast<int>(q) + 1;
    iso.map.push_back({ids.extant(i), ids.extant(i)});
    for (int len = 1; len <= n - 3; ++len) {
      for (std::uint32_t bits = 0; bits < (1u << len); ++bits) {
        Tuple t{len, bits};
        Tuple image = len >= pos ? t.with(pos, 1 - t.bit(pos)) : t;
        iso.map.push_back({ids.internal(i, t), ids.internal(i, image)});
      }
    }
  }
  std::sort(iso.map.begin(), iso.map.end());
  iso.map.erase(std::unique(iso.map.begin(), iso.map.end()), iso.map.end());
  return iso;
}

Pedigree genderize(const Pedigree& p) {
  RawPedigree raw;
  VertexId base = 0;
  for (int v = 0; v < p.vertex_count(); ++v)
    base = std::max(base, p.id_of(v) + 1);
  base *= 2;

  for (int v = 0; v < p.vertex_count(); ++v) {
    VertexId m = 2 * p.id_of(v), f = m + 1;
    raw.vertices.push_back(m);
    raw.vertices.push_back(f);
    if (!p.is_founder(v)) {
      VertexId pa = p.id_of(p.parents(v)[0]);
      VertexId pb = p.id_of(p.parents(v)[1]);
      raw.arcs.push_back({m, 2 * pa});
      raw.arcs.push_back({m, 2 * pa + 1});
      raw.arcs.push_back({f, 2 * pb});
      raw.arcs.push_back({f, 2 * pb + 1});
    }
  }
  for (int pos = 0; pos < p.order(); ++pos) {
    VertexId fresh = base + VertexId(pos);
    VertexId e = p.id_of(p.extant_vertex(pos));
    raw.vertices.push_back(fresh);
    raw.arcs.push_back({fresh, 2 * e});
    raw.arcs.push_back({fresh, 2 * e + 1});
    raw.extant.push_back({p.extant_labels()[pos], fresh});
  }
  std::sort(raw.vertices.begin(), raw.vertices.end());
  std::sort(raw.arcs.begin(), raw.arcs.end());
  return Pedigree::from_raw(raw);
}

LabelledIsomorphism lift_witness(const Pedigree& p, const Pedigree& q,
                                 const LabelledIsomorphism& base,
                                 const Pedigree& gp, const Pedigree& gq) {
  if (!verify_isomorphism(p, q, base))
    throw std::invalid_argument("lift_witness: base map is not an isomorphism");
  std::map<VertexId, VertexId> m(base.map.begin(), base.map.end());

  // Attachment of a copy: the original parent whose couple it descends from.
  auto attachment = [](const Pedigree& g, int v) -> VertexId {
    return g.id_of(g.parents(v)[0]) / 2;
  };

  LabelledIsomorphism iso;
  for (int v = 0; v < gp.vertex_count(); ++v) {
    VertexId vid = gp.id_of(v);
    if (gp.label_pos(v) >= 0) {
      // Fresh extant vertices correspond by label.
      const std::string& label = gp.extant_labels()[gp.label_pos(v)];
      int pos = gq.label_position_of(label);
      if (pos < 0) throw std::invalid_argument("lift_witness: label mismatch");
      iso.map.push_back({vid, gq.id_of(gq.extant_vertex(pos))});
      continue;
    }
    VertexId orig = vid / 2;
    auto it = m.find(orig);
    if (it == m.end())
      throw std::invalid_argument("lift_witness: base map misses a vertex");
    VertexId target = it->second;
    if (gp.is_founder(v)) {
      // Founder copies are interchangeable; keep gender.
      iso.map.push_back({vid, 2 * target + (vid & 1)});
      continue;
    }
    VertexId want = m.at(attachment(gp, v));
    VertexId tm = 2 * target, tf = tm + 1;
    int wm = gq.index_of(tm);
    if (wm < 0) throw std::invalid_argument("lift_witness: image copy missing");
    VertexId tm_attach = attachment(gq, wm);
    iso.map.push_back({vid, tm_attach == want ? tm : tf});
  }
  std::sort(iso.map.begin(), iso.map.end());
  return iso;
}

}  // namespace pedcomb
