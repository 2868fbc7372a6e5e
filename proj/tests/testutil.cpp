#include "testutil.hpp"

#include <random>

namespace spanparse::testutil {

Tree example_tree() {
  auto trees = read_trees(
      "(S (NP (PRP I)) (VP (MD do) (VBP like) (S (VP (VBG eating) "
      "(NP (NN fish))))))");
  return collapse_unaries(normalize(trees.at(0)));
}

BracketSet example_brackets() { return tree_to_brackets(example_tree()); }

namespace {

struct Rng {
  std::mt19937_64 engine;
  explicit Rng(std::uint64_t seed) : engine(seed) {}
  int uniform(int lo, int hi) {  // inclusive
    return std::uniform_int_distribution<int>(lo, hi)(engine);
  }
  double real() { return std::uniform_real_distribution<double>(0, 1)(engine); }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[uniform(0, static_cast<int>(v.size()) - 1)];
  }
};

const std::vector<std::string> kTags = {"D", "A", "N", "V", "P"};
const std::vector<std::string> kWords = {
    "the", "a",    "big", "red",  "old",  "cat",  "dog",  "fish",
    "man", "bird", "saw", "likes", "eats", "near", "with", "finds"};

Token random_token(Rng& rng) {
  return Token{kWords[rng.uniform(0, static_cast<int>(kWords.size()) - 1)],
               rng.pick(kTags), {}};
}

Tree random_node(int width, Rng& rng, double chain_prob, bool root) {
  const std::vector<std::string> labels = {"S", "NP", "VP"};
  auto pick_label = [&]() {
    std::string label = rng.pick(labels);
    if (rng.real() < chain_prob) return std::string("S-VP");
    return label;
  };

  if (width == 1) {
    Tree leaf{random_token(rng)};
    if (!root && rng.real() > 0.5) return leaf;
    return Tree(pick_label(), {leaf});
  }
  int arity = rng.uniform(2, std::min(3, width));
  // Random composition of width into `arity` positive parts.
  std::vector<int> cuts;
  while (static_cast<int>(cuts.size()) < arity - 1) {
    int cut = rng.uniform(1, width - 1);
    bool dup = false;
    for (int c : cuts) dup = dup || c == cut;
    if (!dup) cuts.push_back(cut);
  }
  cuts.push_back(0);
  cuts.push_back(width);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Tree> kids;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k)
    kids.push_back(
        random_node(cuts[k + 1] - cuts[k], rng, chain_prob, false));
  return Tree(pick_label(), std::move(kids));
}

}  // namespace

std::vector<Tree> random_corpus(int count, int max_len, std::uint64_t seed,
                                double chain_prob) {
  Rng rng(seed);
  std::vector<Tree> corpus;
  corpus.reserve(count);
  for (int k = 0; k < count; ++k) {
    int n = rng.uniform(1, max_len);
    Tree t = random_node(n, rng, chain_prob, true);
    t.assign_spans(0);
    corpus.push_back(std::move(t));
  }
  return corpus;
}

namespace {

// Grammar pieces; every word list is keyed by its tag so structure is a
// function of the tag sequence.
Tree leaf(Rng& rng, const std::string& tag) {
  static const std::vector<std::string> d = {"the", "a"};
  static const std::vector<std::string> adj = {"big", "red", "old", "tame"};
  static const std::vector<std::string> n = {"cat",  "dog", "fish",
                                             "bird", "man", "cook"};
  static const std::vector<std::string> v = {"sees", "likes", "eats", "finds"};
  const std::vector<std::string>* words = &n;
  if (tag == "D") words = &d;
  if (tag == "A") words = &adj;
  if (tag == "V") words = &v;
  return Tree(Token{rng.pick(*words), tag, {}});
}

Tree make_np(Rng& rng, int max_extra) {
  std::vector<Tree> kids;
  int shape = rng.uniform(0, max_extra);
  if (shape >= 1) kids.push_back(leaf(rng, "D"));
  if (shape == 2) kids.push_back(leaf(rng, "A"));
  kids.push_back(leaf(rng, "N"));
  return Tree("NP", std::move(kids));
}

// S -> NP VP; VP -> V | V NP | V S (embedding only at the top level, with
// one-or-two-word NPs on the embedding path, so sentences stay within 8
// words).
Tree make_s(Rng& rng, bool allow_embed, int np_cap) {
  int vshape = rng.uniform(0, allow_embed ? 2 : 1);
  int np_size = vshape == 2 ? 1 : np_cap;
  std::vector<Tree> vkids;
  vkids.push_back(leaf(rng, "V"));
  if (vshape == 1) vkids.push_back(make_np(rng, np_size));
  if (vshape == 2) vkids.push_back(make_s(rng, false, 1));
  std::vector<Tree> skids;
  skids.push_back(make_np(rng, np_size));
  skids.push_back(Tree("VP", std::move(vkids)));
  return Tree("S", std::move(skids));
}

}  // namespace

std::vector<Tree> grammar_corpus(int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Tree> corpus;
  corpus.reserve(count);
  for (int k = 0; k < count; ++k) {
    Tree t = make_s(rng, true, 2);
    t.assign_spans(0);
    corpus.push_back(std::move(t));
  }
  return corpus;
}

std::string corpus_to_text(const std::vector<Tree>& corpus) {
  std::string out;
  for (const Tree& t : corpus) {
    out += write_tree(t);
    out += '\n';
  }
  return out;
}

}  // namespace spanparse::testutil
