#include <doctest.h>

#include "helpers.hpp"
#include "pedcomb/io.hpp"
#include "pedcomb/isomorphism.hpp"
#include "pedcomb/pedigree.hpp"

using namespace pedcomb;
using namespace pedcomb::test;

namespace {

bool has_issue(const std::vector<ValidationIssue>& issues, IssueKind kind, VertexId v) {
  for (const auto& i : issues)
    if (i.kind == kind && i.vertex == v) return true;
  return false;
}

}  // namespace

TEST_CASE("validate rejects out-degree 1") {
  RawPedigree raw;
  raw.vertices = {0, 1};
  raw.arcs = {{0, 1}};
  raw.extant = {{"x1", 0}};
  auto issues = Pedigree::check(raw);
  CHECK(has_issue(issues, IssueKind::BadOutDegree, 0));
  CHECK_THROWS_AS(Pedigree::from_raw(raw), ValidationError);
}

TEST_CASE("twin pedigree is valid, order 2, depth 1") {
  Pedigree p = twin_pedigree();
  CHECK(p.order() == 2);
  CHECK(p.vertex_count() == 4);
  CHECK(p.depth() == 1);
}

TEST_CASE("triangle pedigree is valid") {
  Pedigree p = k3_pedigree();
  CHECK(p.order() == 3);
  CHECK(p.vertex_count() == 6);
  CHECK(p.depth() == 1);
}

TEST_CASE("validate reports each violated invariant") {
  SUBCASE("isolated vertex") {
    RawPedigree raw;
    raw.vertices = {0, 10, 11, 99};
    raw.arcs = {{0, 10}, {0, 11}};
    raw.extant = {{"x1", 0}};
    CHECK(has_issue(Pedigree::check(raw), IssueKind::IsolatedVertex, 99));
  }
  SUBCASE("extant with a child") {
    RawPedigree raw;
    raw.vertices = {0, 1, 10, 11};
    raw.arcs = {{0, 10}, {0, 11}, {1, 0}, {1, 10}};
    raw.extant = {{"x1", 0}, {"x2", 1}};
    CHECK(has_issue(Pedigree::check(raw), IssueKind::ExtantHasChild, 0));
  }
  SUBCASE("doubled parent") {
    RawPedigree raw;
    raw.vertices = {0, 10};
    raw.arcs = {{0, 10}, {0, 10}};
    raw.extant = {{"x1", 0}};
    CHECK(has_issue(Pedigree::check(raw), IssueKind::DuplicateParent, 0));
  }
  SUBCASE("cyclic ancestry") {
    RawPedigree raw;
    raw.vertices = {0, 1, 2, 3};
    raw.arcs = {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 1}, {2, 3}};
    raw.extant = {{"x1", 0}};
    auto issues = Pedigree::check(raw);
    bool cyclic = false;
    for (const auto& i : issues) cyclic |= i.kind == IssueKind::CyclicAncestry;
    CHECK(cyclic);
  }
  SUBCASE("non-extant in-degree-0 vertices are permitted") {
    // c has two parents and no children; valid, but depth is undefined (-1).
    RawPedigree raw;
    raw.vertices = {0, 5, 10, 11};
    raw.arcs = {{0, 10}, {0, 11}, {5, 10}, {5, 11}};
    raw.extant = {{"x1", 0}};
    Pedigree p = Pedigree::from_raw(raw);
    CHECK(p.depth_of(p.index_of(5)) == -1);
    CHECK(vertex_depth(p, 5) == -1);
  }
}

TEST_CASE("sub_pedigree of the full extant set is the identity") {
  for (const Pedigree& p : {twin_pedigree(), k3_pedigree(), k13_pedigree()}) {
    Pedigree s = sub_pedigree(p, p.extant_labels());
    RawPedigree a = p.to_raw(), b = s.to_raw();
    CHECK(a.vertices == b.vertices);
    CHECK(a.arcs == b.arcs);
  }
}

TEST_CASE("star pedigree restricted to two labels is the path pedigree") {
  Pedigree p = k13_pedigree();
  Pedigree s = sub_pedigree(p, {"x1", "x2"});
  CHECK(s.order() == 2);
  CHECK(s.vertex_count() == 5);  // two extant, three founders
  // The two extant share exactly one parent (the star centre).
  int a = s.extant_vertex(0), b = s.extant_vertex(1);
  int shared = 0;
  for (int x : s.parents(a))
    for (int y : s.parents(b))
      if (x == y) shared++;
  CHECK(shared == 1);
  // Matching restriction of the triangle pedigree is labelled-isomorphic.
  Pedigree t = sub_pedigree(k3_pedigree(), {"x1", "x2"});
  CHECK(brute_isomorphic(s, t));
}

TEST_CASE("twin pedigree restricted to one child") {
  Pedigree s = sub_pedigree(twin_pedigree(), {"x1"});
  CHECK(s.vertex_count() == 3);
  CHECK(s.order() == 1);
  CHECK(s.depth() == 1);
}

TEST_CASE("sub_pedigree rejects bad subsets") {
  Pedigree p = twin_pedigree();
  CHECK_THROWS_AS(sub_pedigree(p, {}), std::invalid_argument);
  CHECK_THROWS_AS(sub_pedigree(p, {"nope"}), std::invalid_argument);
}

TEST_CASE("vertex depth takes the longest path") {
  // Founder 10 is a parent of x1 and of x1's other parent 20.
  RawPedigree raw;
  raw.vertices = {0, 10, 20, 30};
  raw.arcs = {{0, 10}, {0, 20}, {20, 10}, {20, 30}};
  raw.extant = {{"x1", 0}};
  Pedigree p = Pedigree::from_raw(raw);
  CHECK(vertex_depth(p, 0) == 0);
  CHECK(vertex_depth(p, 20) == 1);
  CHECK(vertex_depth(p, 10) == 2);
  CHECK(vertex_depth(p, 30) == 2);
  CHECK_THROWS_AS(vertex_depth(p, 999), std::invalid_argument);
  CHECK(vertex_depth(twin_pedigree(), 10) == 1);  // twin founder
  // The same pedigree skips a generation, so it is not layered.
  CHECK(!as_discrete_generation(p));
}

TEST_CASE("twin pedigree layers as a discrete generation pedigree") {
  auto dgp = as_discrete_generation(twin_pedigree());
  REQUIRE(dgp);
  CHECK(dgp->depth() == 1);
  CHECK(dgp->layers[0].size() == 2);
  CHECK(dgp->layers[1].size() == 2);
  // Depth of a parent is one more than its child's, for every arc.
  const Pedigree& p = dgp->pedigree;
  for (int v = 0; v < p.vertex_count(); ++v) {
    if (p.is_founder(v)) continue;
    for (int par : p.parents(v)) CHECK(p.depth_of(par) == p.depth_of(v) + 1);
  }
}

TEST_CASE("gender labelling: triangle impossible, star possible") {
  GenderResult bad = find_gender_labelling(k3_pedigree());
  CHECK(!bad.assignment);
  CHECK(bad.odd_cycle.size() == 3);

  GenderResult good = find_gender_labelling(k13_pedigree());
  REQUIRE(good.assignment);
  CHECK(check_gender_labelling(k13_pedigree(), *good.assignment));

  GenderResult twins = find_gender_labelling(twin_pedigree());
  REQUIRE(twins.assignment);
  CHECK(check_gender_labelling(twin_pedigree(), *twins.assignment));
}

TEST_CASE("flipping all genders in a component stays valid") {
  Pedigree p = k13_pedigree();
  GenderResult res = find_gender_labelling(p);
  REQUIRE(res.assignment);
  GenderAssignment flipped = *res.assignment;
  for (auto& g : flipped.by_vertex)
    g = g == Gender::Male ? Gender::Female : Gender::Male;
  CHECK(check_gender_labelling(p, flipped));
}

TEST_CASE("parent graph shapes") {
  SUBCASE("twins give two parallel edges") {
    auto dgp = as_discrete_generation(twin_pedigree());
    REQUIRE(dgp);
    ParentGraph g = parent_graph(*dgp);
    CHECK(g.vertices.size() == 2);
    REQUIRE(g.edges.size() == 2);
    CHECK(g.edges[0] == g.edges[1]);
  }
  SUBCASE("triangle pedigree gives a labelled triangle") {
    auto dgp = as_discrete_generation(k3_pedigree());
    REQUIRE(dgp);
    ParentGraph g = parent_graph(*dgp);
    CHECK(g.vertices.size() == 3);
    CHECK(g.edges.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) CHECK(g.edges[i] != g.edges[j]);
  }
  SUBCASE("four extant on a 4-cycle") {
    PedigreeBuilder b;
    b.child(0, 10, 11).child(1, 11, 12).child(2, 12, 13).child(3, 13, 10);
    b.extant("x1", 0).extant("x2", 1).extant("x3", 2).extant("x4", 3);
    auto dgp = as_discrete_generation(b.build());
    REQUIRE(dgp);
    ParentGraph g = parent_graph(*dgp);
    CHECK(g.vertices.size() == 4);
    CHECK(g.edges.size() == 4);
    std::map<int, int> degree;
    for (auto& e : g.edges) {
      degree[e[0]]++;
      degree[e[1]]++;
    }
    for (auto& [v, deg] : degree) CHECK(deg == 2);
  }
}

TEST_CASE("sub_pedigree composes with further deletion") {
  std::mt19937 rng(7101);
  for (int trial = 0; trial < 40; ++trial) {
    Pedigree p = random_dgp(rng, 5, {4, 3});
    Pedigree ab = sub_pedigree(sub_pedigree(p, {"x1", "x2", "x4"}), {"x1", "x4"});
    Pedigree direct = sub_pedigree(p, {"x1", "x4"});
    CHECK(canonical_code(ab) == canonical_code(direct));
    CHECK(Pedigree::check(ab.to_raw()).empty());
  }
}

TEST_CASE("JSON round trip is byte stable") {
  Pedigree p = k13_pedigree();
  std::string once = pedigree_to_json(p);
  std::string twice = pedigree_to_json(pedigree_from_json(once));
  CHECK(once == twice);
  CHECK(once.find("\"extant\"") != std::string::npos);
}

TEST_CASE("DOT export labels only extant vertices") {
  std::string dot = pedigree_to_dot(twin_pedigree());
  CHECK(dot.find("label=\"x1\"") != std::string::npos);
  CHECK(dot.find("label=\"x2\"") != std::string::npos);
  CHECK(dot.find("v0 -> v10") != std::string::npos);
}
