#include "doctest.h"
#include "oracles.hpp"
#include "typovec/error.hpp"
#include "typovec/metrics.hpp"

using namespace typovec;

namespace {
TypologyTree nw(const char* s) { return parse_newick(s); }
}  // namespace

TEST_CASE("clades") {
  CHECK(clades(nw("((a,b),(c,d));")) == std::set<Clade>{{"a", "b"}, {"c", "d"}});
  CHECK(clades(nw("(a,b,c,d);")).empty());
  CHECK(clades(nw("((a,b),c);")) == std::set<Clade>{{"a", "b"}});
}

TEST_CASE("rf examples") {
  CHECK(rf_distance(nw("((a,b),(c,d));"), nw("((a,c),(b,d));")) == 4);
  CHECK(rf_distance(nw("((a,b),c);"), nw("(a,b,c);")) == 1);
  CHECK(rf_distance(nw("((a,b),c);"), nw("(c,(b,a));")) == 0);
  try {
    rf_distance(nw("(a,b);"), nw("(a,c);"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::mismatch);
    CHECK(std::string(e.what()).find("b") != std::string::npos);
  }
}

TEST_CASE("lca depth examples") {
  const auto t = nw("((a,b),c);");
  CHECK(lca_depth(t, "a", "b") == 1);
  CHECK(lca_depth(t, "a", "c") == 0);
  CHECK(lca_depth(t, "b", "a") == lca_depth(t, "a", "b"));
  CHECK(lca_depth(nw("(a,b,c,d);"), "b", "d") == 0);
  CHECK_THROWS_AS(lca_depth(t, "a", "zz"), Error);
  CHECK_THROWS_AS(lca_depth(t, "a", "a"), Error);
}

TEST_CASE("lca mae examples") {
  CHECK(lca_mae(nw("((a,b),c);"), nw("(a,(b,c));")) == doctest::Approx(2.0 / 3));
  CHECK(lca_mae(nw("((a,b),c);"), nw("((a,b),c);")) == 0.0);
  CHECK_THROWS_AS(lca_mae(nw("(a);"), nw("(a);")), Error);
}

TEST_CASE("unary chains: suppressed by default, counted when asked") {
  const auto base = nw("((a,b),(c,d));");
  // Every internal edge below the root deepened by a chain of length 2.
  const auto deep = nw("((((a,b)))X,(((c,d)))Y);");
  CHECK(lca_mae(base, deep) == 0.0);
  CHECK(rf_distance(base, deep) == 0);
  // Without suppression the two within-clade pairs (a,b) and (c,d) move by
  // exactly the chain length; the four cross pairs stay at the root.
  CHECK(lca_mae(base, deep, false) == doctest::Approx(2.0 * 2 / 6));
}

TEST_CASE("metrics are invariant to child order") {
  const auto a = nw("((a,(b,c)),(d,e),f);");
  const auto b = nw("(f,(e,d),((c,b),a));");
  const auto g = nw("((a,b),(c,d,e,f));");
  CHECK(rf_distance(a, g) == rf_distance(b, g));
  CHECK(lca_mae(a, g) == lca_mae(b, g));
}

TEST_CASE("tree enumeration counts") {
  const std::vector<std::size_t> expected{1, 1, 4, 26, 236};
  for (int n = 1; n <= 5; ++n) CHECK(oracle::all_trees(n).size() == expected[n - 1]);
}

TEST_CASE("rf and lca mae against oracles on all trees with 4 leaves") {
  const auto trees = oracle::all_trees(4);
  std::vector<TypologyTree> typed;
  std::vector<std::set<std::uint32_t>> masks;
  for (const auto& t : trees) {
    typed.push_back(oracle::to_typology(t));
    masks.push_back(oracle::clade_masks(t));
  }
  for (std::size_t i = 0; i < trees.size(); ++i) {
    for (std::size_t j = 0; j < trees.size(); ++j) {
      CHECK(rf_distance(typed[i], typed[j]) == oracle::rf_masks(masks[i], masks[j]));
      CHECK(lca_mae(typed[i], typed[j]) == doctest::Approx(oracle::naive_lca_mae(trees[i], trees[j])));
    }
  }
}

TEST_CASE("report json and tsv") {
  const auto gold = nw("((aaa,bbb),ccc);");
  const auto cand = nw("(aaa,(bbb,ccc));");
  const auto r = compare_trees(gold, cand);
  CHECK(r.rf == 2);
  CHECK(r.n_leaves == 3);
  CHECK(r.leaf_set_hash == leaf_set_hash(cand));
  const auto j = report_to_json(r, "gold.nwk", "tree.nwk");
  CHECK(j["metrics"].size() == 2);
  CHECK(j["metrics"]["rf"] == 2);
  CHECK(j["metrics"]["lca_mae"].get<double>() == doctest::Approx(2.0 / 3));
  CHECK(report_tsv_line(r, "gold.nwk", "tree.nwk") == "gold.nwk\ttree.nwk\t2\t0.666666667");
}
