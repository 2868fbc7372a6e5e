#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "spanparse/error.hpp"
#include "spanparse/tree.hpp"
#include "testutil.hpp"

using namespace spanparse;

namespace {
const char* kExample =
    "(S (NP (PRP I)) (VP (MD do) (VBP like) (S (VP (VBG eating) "
    "(NP (NN fish))))))";
}

TEST_CASE("read_trees parses the running example with spans") {
  auto trees = read_trees(kExample);
  REQUIRE(trees.size() == 1);
  const Tree& t = trees[0];
  CHECK(t.label() == "S");
  CHECK(t.num_leaves() == 5);
  CHECK(t.begin() == 0);
  CHECK(t.end() == 5);
  REQUIRE(t.children().size() == 2);
  CHECK(t.children()[0].label() == "NP");
  CHECK(t.children()[0].span() == Span{0, 1});
  CHECK(t.children()[1].span() == Span{1, 5});
  auto tokens = t.tokens();
  CHECK(tokens[0].word == "I");
  CHECK(tokens[0].tag == "PRP");
  CHECK(tokens[4].word == "fish");
}

TEST_CASE("read_trees handles single-node and multiple trees") {
  auto trees = read_trees("(NP (NN fish))\n(NP (NN dog))");
  REQUIRE(trees.size() == 2);
  CHECK(trees[0].span() == Span{0, 1});
  CHECK(trees[0].children()[0].is_leaf());
}

TEST_CASE("read_trees rejects unbalanced and empty input") {
  CHECK_THROWS_AS(read_trees("((S (NP (PRP I))"), TreeParseError);
  CHECK_THROWS_AS(read_trees("(S (NP (PRP I)))) extra )"), TreeParseError);
  CHECK_THROWS_AS(read_trees("()"), TreeParseError);
  try {
    read_trees("(S\n(NP");
  } catch (const TreeParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("read_trees is whitespace-insensitive") {
  auto a = read_trees("(S(NP(PRP I))(VP(MD do)))");
  auto b = read_trees("( S ( NP ( PRP I ) )\n  ( VP ( MD do ) ) )");
  REQUIRE(a.size() == 1);
  REQUIRE(b.size() == 1);
  CHECK(a[0].structurally_equal(b[0]));
}

TEST_CASE("normalize strips function tags and the root wrapper") {
  auto trees =
      read_trees("(TOP (S (NP-SBJ (PRP I)) (VP-2 (MD do) (NP=1 (NN x)))))");
  Tree t = normalize(trees[0]);
  CHECK(t.label() == "S");
  CHECK(t.children()[0].label() == "NP");
  CHECK(t.children()[1].label() == "VP");
  CHECK(t.children()[1].children()[1].label() == "NP");
}

TEST_CASE("normalize removes traces and emptied ancestors") {
  auto trees = read_trees(
      "(S (NP (-NONE- *T*)) (VP (MD do) (SBAR (S (NP (-NONE- *)) ))))");
  Tree t = normalize(trees[0]);
  CHECK(t.num_leaves() == 1);
  CHECK(t.tokens()[0].word == "do");
  // Indices recomputed after deletion.
  CHECK(t.span() == Span{0, 1});
}

TEST_CASE("normalize keeps punctuation-style labels beginning with a dash") {
  auto trees = read_trees("(S (-LRB- -lrb-) (NP (NN x)) (-RRB- -rrb-))");
  Tree t = normalize(trees[0]);
  CHECK(t.children()[0].label() == "-LRB-");
}

TEST_CASE("normalize is the identity on clean trees") {
  auto trees = read_trees("(S (NP (PRP I)) (VP (MD do)))");
  Tree t = normalize(trees[0]);
  CHECK(t.structurally_equal(trees[0]));
}

TEST_CASE("normalize errors when everything is a trace") {
  auto trees = read_trees("(S (NP (-NONE- *T*)))");
  CHECK_THROWS_AS(normalize(trees[0]), DataError);
}

TEST_CASE("collapse_unaries merges chains top-down") {
  auto trees = read_trees("(S (VP (VBG eating) (NP (NN fish))))");
  Tree t = collapse_unaries(normalize(trees[0]));
  CHECK(t.label() == "S-VP");
  REQUIRE(t.children().size() == 2);
  CHECK(t.children()[0].is_leaf());
  CHECK(t.children()[1].label() == "NP");
}

TEST_CASE("collapse_unaries merges a three-chain over a preterminal") {
  auto trees = read_trees("(X (Y (Z (NN a))))");
  Tree t = collapse_unaries(trees[0]);
  CHECK(t.label() == "X-Y-Z");
  REQUIRE(t.children().size() == 1);
  CHECK(t.children()[0].is_leaf());
}

TEST_CASE("collapse_unaries leaves chainless trees untouched") {
  auto trees = read_trees(kExample);
  Tree plain = normalize(
      read_trees("(S (NP (PRP I)) (VP (MD do) (VBP like)))")[0]);
  CHECK(collapse_unaries(plain).structurally_equal(plain));
  // Preterminals never join a chain.
  Tree t = collapse_unaries(normalize(trees[0]));
  CHECK(t.children()[0].label() == "NP");
  CHECK(t.children()[0].children()[0].is_leaf());
}

TEST_CASE("tree_to_brackets emits the running-example set") {
  BracketSet bs = testutil::example_brackets();
  CHECK(bs.size() == 6);
  CHECK(bs.contains(Bracket{"NP", 0, 1}));
  CHECK(bs.contains(Bracket{"NP", 4, 5}));
  CHECK(bs.contains(Bracket{"S", 3, 5}));
  CHECK(bs.contains(Bracket{"VP", 3, 5}));
  CHECK(bs.contains(Bracket{"VP", 1, 5}));
  CHECK(bs.contains(Bracket{"S", 0, 5}));
}

TEST_CASE("tree_to_brackets: single leaf and duplicate chain labels") {
  auto single = collapse_unaries(read_trees("(NP (NN fish))")[0]);
  BracketSet bs = tree_to_brackets(single);
  CHECK(bs.size() == 1);
  CHECK(bs.contains(Bracket{"NP", 0, 1}));

  auto dup = collapse_unaries(read_trees("(X (X (NN a) (NN b)))")[0]);
  CHECK(dup.label() == "X-X");
  CHECK(tree_to_brackets(dup).size() == 1);  // set semantics
}

TEST_CASE("assemble_tree inverts tree_to_span_chains") {
  Tree t = testutil::example_tree();
  Tree back = assemble_tree(tree_to_span_chains(t), t.tokens());
  CHECK(back.structurally_equal(t));
}

TEST_CASE("brackets_to_tree handles the single-bracket case") {
  BracketSet bs;
  bs.insert(Bracket{"NP", 0, 1});
  Tree t = brackets_to_tree(bs, {Token{"fish", "NN", {}}});
  CHECK(t.label() == "NP");
  CHECK(t.children()[0].is_leaf());
}

TEST_CASE("brackets_to_tree rejects crossing spans and missing roots") {
  std::vector<Token> toks = {Token{"a", "X", {}}, Token{"b", "X", {}},
                             Token{"c", "X", {}}};
  BracketSet crossing;
  crossing.insert(Bracket{"A", 0, 2});
  crossing.insert(Bracket{"B", 1, 3});
  crossing.insert(Bracket{"R", 0, 3});
  CHECK_THROWS_AS(brackets_to_tree(crossing, toks), DataError);

  BracketSet rootless;
  rootless.insert(Bracket{"A", 0, 2});
  CHECK_THROWS_AS(brackets_to_tree(rootless, toks), DataError);
}

TEST_CASE("write_tree expands chains and round-trips") {
  Tree t = testutil::example_tree();
  std::string s = write_tree(t);
  CHECK(s.find("(S (VP (VBG eating)") != std::string::npos);
  auto back = collapse_unaries(normalize(read_trees(s)[0]));
  CHECK(back.structurally_equal(t));
}

TEST_CASE("read-normalize-collapse-write round trip over a random corpus") {
  auto corpus = testutil::random_corpus(200, 9, /*seed=*/7);
  for (const Tree& t : corpus) {
    auto reread = read_trees(write_tree(t));
    REQUIRE(reread.size() == 1);
    Tree back = collapse_unaries(normalize(reread[0]));
    CHECK(back.structurally_equal(t));
    // Bracket sets from trees never cross.
    CHECK(tree_to_brackets(t).non_crossing());
    // Chains round-trip through the span-chain view as well.
    Tree assembled = assemble_tree(tree_to_span_chains(t), t.tokens());
    CHECK(assembled.structurally_equal(t));
  }
}

TEST_CASE("collapsed trees have no unary nonterminal productions") {
  auto corpus = testutil::random_corpus(100, 8, /*seed=*/11);
  struct Walk {
    static void check(const Tree& t) {
      if (t.is_leaf()) return;
      if (t.children().size() == 1) CHECK(t.children()[0].is_leaf());
      for (const Tree& c : t.children()) check(c);
    }
  };
  for (const Tree& t : corpus) Walk::check(t);
}

TEST_CASE("build_label_inventory follows static-oracle order") {
  auto inv = build_label_inventory({testutil::example_tree()});
  REQUIRE(inv.size() == 4);
  CHECK(inv.label_of(0) == "NP");
  CHECK(inv.label_of(1) == "S-VP");
  CHECK(inv.label_of(2) == "VP");
  CHECK(inv.label_of(3) == "S");
  CHECK(inv.id_of("S-VP") == 1);
  CHECK(inv.id_of("missing") == -1);
}

TEST_CASE("build_label_inventory is idempotent and rejects empty corpora") {
  Tree t = testutil::example_tree();
  auto once = build_label_inventory({t});
  auto twice = build_label_inventory({t, t});
  CHECK(once.labels() == twice.labels());
  CHECK_THROWS_AS(build_label_inventory({}), DataError);

  auto tiny = build_label_inventory(read_trees("(X (T a) (T b))"));
  CHECK(tiny.size() == 1);
}

TEST_CASE("parse_tagged_line splits on the last underscore") {
  auto toks = parse_tagged_line("I_PRP do_MD under_score_NN", 1);
  REQUIRE(toks.size() == 3);
  CHECK(toks[2].word == "under_score");
  CHECK(toks[2].tag == "NN");
  CHECK_THROWS_AS(parse_tagged_line("oops", 3), DataError);
}
