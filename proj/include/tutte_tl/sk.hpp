#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "tutte_tl/common.hpp"

namespace ttl {

enum class GroupKind { SU, SLC, SLR };
enum class Field { Complex, Real };

struct Letter {
  int gen = 0;
  bool inv = false;
  bool operator==(const Letter&) const = default;
};
using Word = std::vector<Letter>;  // matrix product order: L_1 L_2 ... L_k

// Shared word tree; keeps recursive compiler output compact.
struct WordNode;
using WordPtr = std::shared_ptr<const WordNode>;
struct WordNode {
  enum class Kind { Leaf, Concat, Inverse };
  Kind kind = Kind::Leaf;
  Word letters;                // Leaf
  std::vector<WordPtr> parts;  // Concat: parts[0] * parts[1] * ...; Inverse: parts[0]^-1
  std::size_t length = 0;
};

WordPtr word_leaf(Word w);
WordPtr word_concat(std::vector<WordPtr> parts);
WordPtr word_inverse(const WordPtr& w);
WordPtr word_commutator(const WordPtr& a, const WordPtr& b);  // a b a^-1 b^-1
Word flatten(const WordPtr& w);
Word inverse_word(const Word& w);
// counts[2*g] = occurrences of g, counts[2*g+1] = occurrences of g^-1
std::vector<long long> letter_counts(const WordPtr& w, int ngens);
bool balanced(const Word& w, int ngens);

// Evaluates a word tree with caller-supplied letter matrices.
class WordEvaluator {
 public:
  WordEvaluator(std::vector<Mat> gens, std::vector<Mat> inverses) : gens_(std::move(gens)), inv_(std::move(inverses)) {}
  Mat eval(const WordPtr& w);
  Mat eval(const Word& w) const;
  int dim() const { return static_cast<int>(gens_.front().rows()); }

 private:
  Mat eval_node(const WordNode* n, bool inverted);
  std::vector<Mat> gens_, inv_;
  std::map<std::pair<const WordNode*, bool>, Mat> memo_;
};

struct NetOptions {
  int max_depth = 16;           // total word length; balanced words are A B^-1 with |A|,|B| <= max_depth/2
  double ball_radius = 0.0;     // SL kinds: keep entries with ||E - 1|| <= radius
  double half_radius = 0.0;     // SL kinds: prune half-words beyond this distance (0 = no pruning)
  double merge_tol = 1e-4;      // entries closer than this are merged
  std::size_t max_entries = 3000000;
  int probes = 2000;
  std::uint64_t seed = 7;
  bool balanced = true;
};

class Net {
 public:
  GroupKind kind = GroupKind::SU;
  std::vector<Mat> gens, inverses;
  int depth = 0;
  double covering_radius = 0.0;  // max over probes of the nearest-entry distance
  double ball_radius = 0.0;

  std::size_t size() const { return coords_.size() / std::max<std::size_t>(1, dim_); }
  Word word(std::size_t entry) const;
  Mat matrix(std::size_t entry) const;
  // Nearest entry to V in operator norm.
  std::pair<std::size_t, double> nearest(const Mat& V) const;
  // Random probe target in the covered region.
  Mat sample(std::uint64_t seed, std::uint64_t k) const;

 private:
  friend Net build_net(const std::vector<Mat>&, GroupKind, double, const NetOptions&);
  std::size_t dim_ = 0;
  int m_ = 2;
  std::vector<double> coords_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs_;  // entry = half[a] * half[b]^-1
  std::vector<Word> half_;
  std::vector<std::uint32_t> tree_;   // kd-tree permutation
  std::vector<std::uint8_t> split_;
  std::vector<double> coords_of(const Mat& V) const;
  void build_tree();
  void knn(const double* x, std::size_t k, std::vector<std::pair<double, std::uint32_t>>& best) const;
};

// Generators are normalized (det 1); inverses are taken exactly.
// errors: NetTooCoarse if the probed covering radius exceeds eps0.
Net build_net(const std::vector<Mat>& gens, GroupKind kind, double eps0, const NetOptions& opt = {});

struct SKResult {
  WordPtr tree;
  Mat matrix;                   // evaluated word
  cplx delta_factor{1.0, 0.0};  // product of odd weights / d (compile_gate)
  Scaled delta_scaled;
  double error_bound = 0.0;     // measured operator-norm distance
  std::size_t length = 0;
  int depth = 0;

  Word word() const { return flatten(tree); }
};

struct UnitaryPair {
  Mat V, W;
};
struct HermitianQuad {
  Mat Vo, Wo, Ve, We;
};

// A ~ [[V, W]] with ||V - 1||, ||W - 1|| = O(sqrt ||A - 1||).
UnitaryPair gc_unitary_approx(const Mat& A, Field field = Field::Complex, double max_dist = 1.0);
// P ~ [[Vo, Wo]] [[Ve, We]] for positive-definite P with det 1.
HermitianQuad gc_hermitian_approx(const Mat& P, double max_dist = 1.0);

SKResult sk_unitary_depth(const Mat& V, int depth, const Net& net);
SKResult sk_nonunitary_depth(const Mat& V, int depth, const Net& net);
// Smallest depth with measured error <= delta. errors: DepthExceeded.
SKResult sk_unitary(const Mat& V, double delta, const Net& net, int max_depth = 6);
SKResult sk_nonunitary(const Mat& V, double delta, const Net& net, int max_depth = 5);

// Matrix exponential / principal logarithm helpers.
Mat expm(const Mat& X);
Mat logm_normal(const Mat& A);

}  // namespace ttl
