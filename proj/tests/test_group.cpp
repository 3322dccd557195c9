#include <catch2/catch_amalgamated.hpp>

#include "unram/presentation.hpp"
#include "unram/subgroups.hpp"

using namespace unram;

namespace {

GroupPtr symmetric3() { return group_from_presentation(parse_presentation_text("perm: (1 2), (1 2 3)")); }

GroupPtr dihedral4() {
  return group_from_presentation(parse_presentation_text("perm: (1 2 3 4), (1 3)"));
}

GroupPtr quaternion8() {
  // pc presentation: a^2 = c, b^2 = c, c^2 = 1, [b,a] = c
  return group_from_presentation(
      parse_presentation_text("pc: n=[2,2,2]\ng1^2 = g3\ng2^2 = g3\n[g2,g1] = g3"));
}

GroupPtr heisenberg27() {
  return group_from_presentation(parse_presentation_text("pc: n=[3,3,3]\n[g2,g1] = g3"));
}

// extraspecial of order 27 and exponent 9
GroupPtr extraspecial27_exp9() {
  return group_from_presentation(parse_presentation_text("pc: n=[3,3,3]\ng1^3 = g3\n[g2,g1] = g3"));
}

// brute-force subgroup classes: all subsets closed under multiplication
std::size_t brute_subgroup_class_count(const GroupPtr& g) {
  std::vector<std::vector<Elt>> subgroups;
  const Elt n = g->order();
  for (std::uint64_t mask = 1; mask < (1ull << n); ++mask) {
    if (!(mask & 1)) continue;  // must contain identity
    std::vector<Elt> elems;
    for (Elt i = 0; i < n; ++i)
      if (mask & (1ull << i)) elems.push_back(i);
    bool closed = true;
    for (Elt a : elems)
      for (Elt b : elems)
        if (!(mask & (1ull << g->mul(a, b)))) {
          closed = false;
          break;
        }
    if (closed) subgroups.push_back(elems);
  }
  // conjugacy classes
  std::vector<std::vector<Elt>> reps;
  for (const auto& s : subgroups) {
    bool found = false;
    for (const auto& r : reps) {
      if (r.size() != s.size()) continue;
      for (Elt x = 0; x < n && !found; ++x) {
        std::vector<Elt> conj;
        for (Elt e : s) conj.push_back(g->conj(e, x));
        std::sort(conj.begin(), conj.end());
        found = conj == r;
      }
      if (found) break;
    }
    if (!found) reps.push_back(s);
  }
  return reps.size();
}

}  // namespace

TEST_CASE("from_presentation basics") {
  SECTION("smallest nontrivial group") {
    auto g = group_from_presentation(parse_presentation_text("pc: n=[2]"));
    CHECK(g->order() == 2);
    CHECK(g->check_axioms(true));
  }
  SECTION("A6 from the permutation generators") {
    auto g = group_from_presentation(parse_presentation_text("perm: (4 5 6), (1 2 3 4 5)"));
    CHECK(g->order() == 360);
  }
  SECTION("extraspecial group of order 27, exponent 3") {
    auto g = heisenberg27();
    REQUIRE(g->order() == 27);
    CHECK(g->exponent() == 3);
    CHECK(g->check_axioms(true));
    CHECK(!g->is_abelian());
  }
  SECTION("deterministic indexing") {
    auto g1 = symmetric3();
    auto g2 = symmetric3();
    for (Elt a = 0; a < 6; ++a)
      for (Elt b = 0; b < 6; ++b) REQUIRE(g1->mul(a, b) == g2->mul(a, b));
  }
  SECTION("inconsistent presentation rejected") {
    CHECK_THROWS_AS(group_from_presentation(parse_presentation_text("pc: n=[3,3]\n[g2,g1] = g2")),
                    std::invalid_argument);
  }
  SECTION("order cap") {
    CHECK_THROWS_AS(group_from_presentation(parse_presentation_text("perm: (1 2 3 4 5 6 7 8), (1 2)"), 100),
                    std::runtime_error);
  }
}

TEST_CASE("pc collection agrees with known groups") {
  SECTION("quaternion group") {
    auto q = quaternion8();
    REQUIRE(q->order() == 8);
    CHECK(q->check_axioms(true));
    CHECK(q->exponent() == 4);
    // Q8 has a unique element of order 2
    int order2 = 0;
    for (Elt x = 0; x < 8; ++x)
      if (q->element_order(x) == 2) ++order2;
    CHECK(order2 == 1);
  }
  SECTION("extraspecial 27 exponent 9") {
    auto g = extraspecial27_exp9();
    REQUIRE(g->order() == 27);
    CHECK(g->exponent() == 9);
    CHECK(g->check_axioms(true));
  }
  SECTION("solvable non-nilpotent: S3 as pc group") {
    auto s3 = group_from_presentation(parse_presentation_text("pc: n=[2,3]\n[g2,g1] = g2"));
    REQUIRE(s3->order() == 6);
    CHECK(s3->check_axioms(true));
    CHECK(!s3->is_abelian());
  }
}

TEST_CASE("subgroup conjugacy classes") {
  SECTION("cyclic group of prime order") {
    auto c5 = FiniteGroup::cyclic(5);
    auto classes = subgroup_conjugacy_classes(c5);
    CHECK(classes.size() == 2);
  }
  SECTION("S3 has 4 classes, matching brute force") {
    auto g = symmetric3();
    auto classes = subgroup_conjugacy_classes(g);
    CHECK(classes.size() == 4);
    CHECK(classes.size() == brute_subgroup_class_count(g));
  }
  SECTION("D4 and Q8 match brute force") {
    for (auto g : {dihedral4(), quaternion8()}) {
      auto classes = subgroup_conjugacy_classes(g);
      CHECK(classes.size() == brute_subgroup_class_count(g));
    }
  }
  SECTION("class representatives are canonical and orbits consistent") {
    auto g = dihedral4();
    auto classes = subgroup_conjugacy_classes(g);
    for (const auto& cls : classes) {
      for (const auto& c : cls.conjugates) REQUIRE(!(c.mask < cls.rep.mask));
      // conjugating the rep lands inside the stored orbit
      for (Elt x = 0; x < g->order(); ++x) {
        Subgroup conj = conjugate_subgroup(cls.rep, x);
        bool found = false;
        for (const auto& c : cls.conjugates) found = found || c.mask == conj.mask;
        REQUIRE(found);
      }
    }
  }
  SECTION("A6 maximal subgroups: S4, S4, (C3xC3):C4, A5, A5") {
    auto g = group_from_presentation(parse_presentation_text("perm: (4 5 6), (1 2 3 4 5)"));
    auto classes = subgroup_conjugacy_classes(g);
    auto maxes = maximal_subgroup_classes(g, &classes);
    std::vector<Elt> orders;
    for (auto& m : maxes) orders.push_back(m.order());
    std::sort(orders.begin(), orders.end());
    CHECK(orders == std::vector<Elt>{24, 24, 36, 60, 60});
  }
}

TEST_CASE("structural queries") {
  SECTION("center of abelian group is everything") {
    auto c12 = FiniteGroup::cyclic(12);
    CHECK(center(c12).order() == 12);
  }
  SECTION("derived subgroup of S3 is the 3-cycle subgroup") {
    auto g = symmetric3();
    auto d = derived_subgroup(g);
    CHECK(d.order() == 3);
    // brute force over all commutators
    EltSet want(g->order());
    want.insert(0);
    for (Elt a = 0; a < 6; ++a)
      for (Elt b = 0; b < 6; ++b) want.insert(g->commutator(a, b));
    // closure of all commutators has order 3 here
    std::vector<Elt> elems;
    for (Elt x = 0; x < 6; ++x)
      if (want.contains(x)) elems.push_back(x);
    CHECK(subgroup_closure(g, elems).order() == d.order());
  }
  SECTION("lower central series of nilpotent groups reaches 1") {
    auto g = heisenberg27();
    auto series = lower_central_series(g);
    REQUIRE(series.back().order() == 1);
    std::vector<Elt> orders;
    for (auto& s : series) orders.push_back(s.order());
    CHECK(orders == std::vector<Elt>{27, 3, 1});
    CHECK(is_nilpotent(g));
    CHECK(!is_nilpotent(symmetric3()));
  }
  SECTION("abelian invariants") {
    auto c12 = FiniteGroup::cyclic(12);
    CHECK(abelian_invariants(c12) == std::vector<Int>{12});
    auto g = quaternion8();  // Q8/[Q8,Q8] = C2 x C2
    CHECK(abelian_invariants(g) == std::vector<Int>{2, 2});
    auto s3 = symmetric3();
    CHECK(abelian_invariants(s3) == std::vector<Int>{2});
    // product of invariants = |G/[G,G]|
    for (auto grp : {dihedral4(), heisenberg27()}) {
      Int prod = 1;
      for (auto& x : abelian_invariants(grp)) prod *= x;
      CHECK(prod == Int(grp->order()) / derived_subgroup(grp).order());
    }
  }
  SECTION("double cosets partition the group") {
    auto g = group_from_presentation(parse_presentation_text("perm: (1 2 3 4), (1 2)"));  // S4
    auto classes = subgroup_conjugacy_classes(g);
    const Subgroup &h = classes[3].rep, &k = classes[5].rep;
    auto dc = double_cosets(g, h, k);
    CHECK(double_coset_size_sum(dc) == g->order());
  }
  SECTION("centralizer rejects foreign elements") {
    auto g = symmetric3();
    CHECK_THROWS_AS(centralizer(g, {99}), std::invalid_argument);
  }
}

TEST_CASE("quotients and reindexing") {
  auto g = quaternion8();
  auto z = center(g);
  REQUIRE(z.order() == 2);
  auto q = quotient_group(g, z);
  CHECK(q.group->order() == 4);
  CHECK(q.group->is_abelian());
  CHECK(q.section[0] == 0);
  auto r = reindex_subgroup(z);
  CHECK(r.group->order() == 2);
  CHECK(r.group->check_axioms(true));
  // non-normal subgroup rejected
  auto s3 = symmetric3();
  auto classes = subgroup_conjugacy_classes(s3);
  for (auto& cls : classes)
    if (cls.rep.order() == 2) CHECK_THROWS_AS(quotient_group(s3, cls.rep), std::invalid_argument);
}
