#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "aif/gog.hpp"
#include "aif/schreier.hpp"

using namespace aif;

namespace {

GroupPtr f2() { return std::make_shared<FreeGroup>("F2", std::vector<std::string>{"a", "b"}); }
GroupPtr z2() { return std::make_shared<FreeAbelian>("Z2", std::vector<std::string>{"x", "y"}); }
GroupPtr ladder() {
  std::vector<GroupPtr> factors{std::make_shared<FiniteCyclic>("C2s", "s", 2),
                                std::make_shared<FiniteCyclic>("C2t", "t", 2)};
  return std::make_shared<FreeProduct>("Z2*Z2", factors);
}
GroupPtr bs24() { return std::make_shared<BaumslagSolitar>("BS", "a", "t", 2, 4); }

// Independent ball oracle: plain breadth-first enumeration with a set.
std::size_t brute_ball_size(const GroupOracle& g, int radius) {
  std::set<Word> seen{Word{}};
  std::vector<Word> layer{Word{}};
  for (int r = 0; r < radius; ++r) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (int i = 0; i < g.rank(); ++i)
        for (int s : {1, -1}) {
          Word cand = g.mul(w, g.gen(i, s));
          if (seen.insert(cand).second) next.push_back(cand);
        }
    layer = next;
  }
  return seen.size();
}

}  // namespace

TEST_CASE("normalize: identity cases") {
  auto g = f2();
  CHECK(g->normalize(g->parse("a a^-1")).empty());
  auto z = z2();
  CHECK(z->str(z->normalize(z->parse("x y x^-1"))) == "y");
}

TEST_CASE("normalize: baumslag-solitar pinch") {
  auto g = bs24();
  CHECK(g->str(g->normalize(g->parse("t^-1 a^2 t"))) == "a^4");
  CHECK(g->str(g->normalize(g->parse("t a^4 t^-1"))) == "a^2");
  // t a t^-1 is Britton-irreducible
  Word w = g->normalize(g->parse("t a t^-1"));
  CHECK(!w.empty());
  CHECK(w != g->parse("a"));
}

TEST_CASE("normalize is idempotent and multiplicative on small balls") {
  Budget budget;
  for (auto g : {f2(), z2(), ladder(), bs24()}) {
    auto b2 = ball(*g, 2, budget);
    for (const auto& w : b2) CHECK(g->normalize(w) == w);
    // associativity spot checks on triples
    std::size_t step = std::max<std::size_t>(1, b2.size() / 6);
    for (std::size_t i = 0; i < b2.size(); i += step)
      for (std::size_t j = 0; j < b2.size(); j += step)
        for (std::size_t k = 0; k < b2.size(); k += step) {
          Word lhs = g->mul(g->mul(b2[i], b2[j]), b2[k]);
          Word rhs = g->mul(b2[i], g->mul(b2[j], b2[k]));
          CHECK(lhs == rhs);
        }
  }
}

TEST_CASE("ball sizes") {
  Budget budget;
  CHECK(ball(*f2(), 1, budget).size() == 5);
  CHECK(ball(*z2(), 2, budget).size() == 13);
  CHECK(ball(*z2(), 2, budget).size() == brute_ball_size(*z2(), 2));
  auto l = ladder();
  auto b3 = ball(*l, 3, budget);
  CHECK(b3.size() == 7);
  std::set<std::string> names;
  for (const auto& w : b3) names.insert(l->str(w));
  CHECK(names == std::set<std::string>{"1", "s", "t", "s t", "t s", "s t s", "t s t"});
  Budget tiny;
  tiny.max_ball = 10;
  CHECK_THROWS_AS(ball(*f2(), 4, tiny), BudgetExceeded);
}

TEST_CASE("subgroup oracle contracts") {
  Budget budget;
  auto z = z2();
  auto h = std::make_shared<CyclicSubgroup>("H", z, z->parse("x"));
  CHECK(h->member(z->parse("x^3")));
  CHECK(!h->member(z->parse("y")));
  for (const auto& g : ball(*z, 2, budget)) {
    Word hg = z->mul(z->parse("x"), g);
    CHECK(h->coset_rep(hg) == h->coset_rep(g));
    CHECK((h->member(g) == (h->coset_rep(g) == h->coset_rep(Word{}))));
  }
  auto lat = std::make_shared<LatticeSubgroup>("D", z, std::vector<std::vector<long long>>{{1, 1}});
  CHECK(lat->member(z->parse("x y")));
  CHECK(lat->member(z->parse("x^-2 y^-2")));
  CHECK(!lat->member(z->parse("x")));
  for (const auto& g : ball(*z, 2, budget))
    CHECK(lat->coset_rep(z->mul(z->parse("x y"), g)) == lat->coset_rep(g));
}

TEST_CASE("folded free subgroups") {
  auto g = f2();
  auto h = std::make_shared<FoldedFreeSubgroup>(
      "H", g, std::vector<Word>{g->parse("a"), g->parse("b a b^-1")});
  CHECK(h->member(g->parse("a")));
  CHECK(h->member(g->parse("b a b^-1")));
  CHECK(h->member(g->parse("a b a^2 b^-1 a")));
  CHECK(!h->member(g->parse("b")));
  CHECK(!h->member(g->parse("b^-1 a b")));
  CHECK(!h->member(g->parse("b^2 a b^-2")));
}

TEST_CASE("guirardel positive subgroup") {
  auto g = f2();
  auto h = std::make_shared<GuirardelPositive>("H", g);
  CHECK(h->member(g->parse("a")));
  CHECK(h->member(g->parse("b a b^-1")));
  CHECK(h->member(g->parse("b^2 a b^-2 a^-1")));
  CHECK(!h->member(g->parse("b^-1 a b")));
  CHECK(!h->member(g->parse("b")));
  // free reduction in the x basis: b a b^-1 a a^-1 b a^-1 b^-1 = x1 x0 x0^-1 x1^-1
  CHECK(h->member(g->parse("b a b^-1 b a^-1 b^-1")));
  Budget budget;
  for (const auto& w : ball(*g, 3, budget)) {
    for (const auto& hh : {g->parse("a"), g->parse("b a b^-1")}) {
      CHECK(h->coset_rep(g->mul(hh, w)) == h->coset_rep(w));
    }
    CHECK((h->member(w) == (h->coset_rep(w) == h->coset_rep(Word{}))));
  }
}

TEST_CASE("kernel subgroup closed-form reps") {
  auto g = f2();
  auto k = std::make_shared<KernelSubgroup>("K", g, std::vector<long long>{0, 1}, g->parse("b"));
  CHECK(k->member(g->parse("a")));
  CHECK(k->member(g->parse("b a b^-1")));
  CHECK(!k->member(g->parse("b")));
  CHECK(k->coset_rep(g->parse("a b^2 a")) == g->parse("b^2"));
}

TEST_CASE("schreier balls") {
  Budget budget;
  auto z = z2();
  auto h = std::make_shared<CyclicSubgroup>("H", z, z->parse("x"));
  auto sg = schreier_ball(h, 2, budget);
  CHECK(sg.vertices.size() == 5);  // line of cosets H y^k, |k| <= 2
  int loops = 0;
  for (const auto& e : sg.edges)
    if (e.from == e.to) ++loops;
  CHECK(loops == static_cast<int>(sg.vertices.size()));  // one x-loop each

  auto whole = std::make_shared<WholeGroup>("G", f2());
  auto sg2 = schreier_ball(whole, 3, budget);
  CHECK(sg2.vertices.size() == 1);

  // kernel of F2 -> Z: line of 5 cosets with a-loops everywhere
  auto g = f2();
  auto k = std::make_shared<KernelSubgroup>("K", g, std::vector<long long>{0, 1}, g->parse("b"));
  auto sg3 = schreier_ball(k, 2, budget);
  CHECK(sg3.vertices.size() == 5);
  int aloops = 0;
  for (const auto& e : sg3.edges)
    if (e.from == e.to && e.gen == 0) ++aloops;
  CHECK(aloops == 5);
}

namespace {
std::shared_ptr<GraphOfGroups> ladder_gog(GroupPtr l) {
  auto sA = std::make_shared<CyclicSubgroup>("A", l, l->parse("s"));
  auto sB = std::make_shared<CyclicSubgroup>("B", l, l->parse("t"));
  auto triv = std::make_shared<TrivialSubgroup>("C", l);
  std::vector<GogVertex> verts{{"A", sA}, {"B", sB}};
  std::vector<GogEdge> edges{{"e", 0, 1, triv, nullptr, Word{}}};
  return std::make_shared<GraphOfGroups>(l, verts, edges, 0);
}
}  // namespace

TEST_CASE("bass-serre ball of the infinite dihedral amalgam is a line") {
  Budget budget;
  auto l = ladder();
  auto gog = ladder_gog(l);
  auto tb = bass_serre_ball(gog, 2, budget);
  CHECK(tb.verts().size() == 5);  // path of 5 vertices
  // every vertex has at most 2 neighbours
  for (const auto& v : tb.verts()) CHECK(v.children.size() + (v.parent >= 0 ? 1 : 0) <= 2);
}

TEST_CASE("bass-serre ball of BS(1,2) has degree 1+2 at the base") {
  Budget budget;
  auto g = std::make_shared<BaumslagSolitar>("BS12", "a", "t", 1, 2);
  auto base = std::make_shared<CyclicSubgroup>("B", GroupPtr(g), g->parse("a"));
  auto edge = std::make_shared<CyclicSubgroup>("A", GroupPtr(g), g->parse("a"));
  std::vector<GogVertex> verts{{"B", base}};
  std::vector<GogEdge> edges{{"e", 0, 0, edge, nullptr, g->parse("t")}};
  auto gog = std::make_shared<GraphOfGroups>(GroupPtr(g), verts, edges, 0);
  auto tb = bass_serre_ball(gog, 1, budget, 4);
  CHECK(tb.verts()[0].children.size() == 3);  // 1 coset of <a> + 2 of <a^2>
}

TEST_CASE("edge halfspace on the ladder tree") {
  Budget budget;
  auto l = ladder();
  auto gog = ladder_gog(l);
  auto tb = std::make_shared<TreeBall>(bass_serre_ball(gog, 5, budget));
  // base edge: child = first B-vertex over the identity coset
  int child = -1;
  for (std::size_t i = 0; i < tb->verts().size(); ++i)
    if (tb->verts()[i].parent == 0 && tb->verts()[i].orbit == 1 && tb->verts()[i].g.empty())
      child = static_cast<int>(i);
  REQUIRE(child >= 0);
  TreeSideRule zs{tb, child, false, 0};  // basepoint = the <s> vertex
  std::set<std::string> in;
  for (const auto& w : ball(*l, 3, budget))
    if (zs.contains(w)) in.insert(l->str(w));
  CHECK(in == std::set<std::string>{"t", "t s", "t s t"});
  CHECK(!zs.contains(Word{}));  // identity on the initial side
}

TEST_CASE("cyclic index in BS(2,4) doubles along conjugates") {
  auto g = bs24();
  for (int n = 1; n <= 5; ++n) {
    Word conj = g->conj(g->normalize(word_pow(g->parse("t"), n)), g->parse("a^2"));
    auto idx = cyclic_index(*g, g->parse("a^2"), conj);
    REQUIRE(idx.has_value());
    CHECK(*idx == (1ll << n));
  }
}

TEST_CASE("amalgam star normal form") {
  auto center = z2();
  auto comp = std::make_shared<FreeAbelian>("Z2c", std::vector<std::string>{"u", "v"});
  auto s_in_center = std::make_shared<CyclicSubgroup>("S", center, center->parse("x"));
  auto s_in_comp = std::make_shared<CyclicSubgroup>("S'", GroupPtr(comp), comp->parse("u"));
  AmalgamStarGroup star("Gbar", center, {{comp, s_in_center, s_in_comp}});
  // the amalgamated generator is identified across the edge
  Word x = star.parse("x");
  Word u = star.parse("u");
  CHECK(star.normalize(word_concat(x, word_inverse(u))).empty());
  // v and y commute with x=u but not with each other
  Word vy = star.normalize(star.parse("v y"));
  Word yv = star.normalize(star.parse("y v"));
  CHECK(vy != yv);
  CHECK(star.normalize(star.parse("x v x^-1 v^-1")).empty());
  // idempotence on a ball
  Budget budget;
  budget.max_ball = 4000;
  for (const auto& w : ball(star, 3, budget)) CHECK(star.normalize(w) == w);
  // restriction and departure
  CHECK(star.restrict_to_center(star.parse("x y")).has_value());
  CHECK(!star.restrict_to_center(star.parse("v")).has_value());
  auto dep = star.first_departure(star.parse("y v x"));
  REQUIRE(dep.has_value());
  CHECK(dep->first == 0);
  CHECK(center->str(dep->second) == "y");
}
