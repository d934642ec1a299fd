#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rlab {

// Leaf A_e: either an edge-membership leaf over sampled indices e (1-based,
// stored ascending) or a shift leaf A[n] with an integer offset.
struct Leaf {
  enum class Kind { edge, shift };
  Kind kind = Kind::edge;
  std::vector<std::uint32_t> indices;  // edge leaves
  std::int64_t offset = 0;             // shift leaves

  bool operator==(const Leaf&) const = default;
  auto operator<=>(const Leaf&) const = default;
};

// Finite boolean formula over leaves.
//
// Grammar (whitespace between tokens is ignored):
//   expr  := term ('|' term)*
//   term  := unary ('&' unary)*
//   unary := '!' unary | '(' expr ')' | leaf
//   leaf  := 'A' '(' index (',' index)* ')' | 'A' '[' ['-'] digits ']'
//   index := positive decimal integer
// '&' binds tighter than '|'; both associate to the left.
class RegularEvent {
 public:
  enum class Op : std::uint8_t { leaf, negate, conj, disj };
  struct Node {
    Op op;
    std::uint32_t a = 0;  // leaf id, or left/only child
    std::uint32_t b = 0;  // right child
  };

  // Throws ParseError carrying the offending byte offset.
  static RegularEvent parse(std::string_view text);
  static RegularEvent edge_leaf(std::vector<std::uint32_t> indices);
  static RegularEvent shift_leaf(std::int64_t offset);

  friend RegularEvent operator&(const RegularEvent& x, const RegularEvent& y);
  friend RegularEvent operator|(const RegularEvent& x, const RegularEvent& y);
  RegularEvent operator!() const;

  // Canonical rendering; parse(to_string()) reproduces the same formula.
  std::string to_string() const;

  const std::vector<Leaf>& leaves() const noexcept { return leaves_; }
  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  std::uint32_t root() const noexcept { return root_; }

  // Largest sampled index among edge leaves (0 if none).
  std::uint32_t arity() const noexcept;
  // Common size of edge-leaf index sets; 0 if there are no edge leaves.
  // Throws InputError on mixed sizes.
  unsigned leaf_uniformity() const;
  bool has_edge_leaves() const noexcept;
  bool has_shift_leaves() const noexcept;

  bool evaluate(const std::vector<bool>& leaf_values) const;
  // Truth table over leaf-value masks (bit i = leaf i); at most 20 leaves.
  std::vector<std::uint8_t> truth_table() const;

  // Rewrites leaves (callers keep index sets sorted); identical leaves merge.
  template <class Fn>
  RegularEvent map_leaves(Fn&& fn) const {
    std::vector<Leaf> mapped;
    mapped.reserve(leaves_.size());
    for (const auto& l : leaves_) mapped.push_back(fn(l));
    return rebuilt(mapped);
  }

  bool operator==(const RegularEvent& other) const { return to_string() == other.to_string(); }

 private:
  RegularEvent rebuilt(const std::vector<Leaf>& replacement) const;
  std::uint32_t intern(const Leaf& leaf);
  std::uint32_t add(Node node);
  std::uint32_t graft(const RegularEvent& other);
  bool eval_node(std::uint32_t node, const std::vector<bool>& values) const;
  void render(std::uint32_t node, int parent_precedence, bool right_child, std::string& out) const;

  std::vector<Leaf> leaves_;
  std::vector<Node> nodes_;
  std::uint32_t root_ = 0;
  friend class EventParser;
};

// Finite-support bijection on {1..size}; indices beyond size are fixed.
class IndexPermutation {
 public:
  // image[i-1] = sigma(i). Throws InputError if not a bijection of {1..size}.
  explicit IndexPermutation(std::vector<std::uint32_t> image);
  static IndexPermutation swap(std::uint32_t i, std::uint32_t j);
  std::uint32_t operator()(std::uint32_t i) const;

 private:
  std::vector<std::uint32_t> image_;
};

// Relabels edge leaves A_e -> A_{sigma(e)} (then sorts); shift leaves are left alone.
RegularEvent permute_event(const RegularEvent& e, const IndexPermutation& sigma);
// A[k] -> A[k+n] for every shift leaf; edge leaves are left alone.
RegularEvent shift_event(const RegularEvent& e, std::int64_t n);

}  // namespace rlab
