#include "rlab/event.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "rlab/errors.hpp"

namespace rlab {

std::uint32_t RegularEvent::intern(const Leaf& leaf) {
  for (std::uint32_t i = 0; i < leaves_.size(); ++i)
    if (leaves_[i] == leaf) return i;
  leaves_.push_back(leaf);
  return static_cast<std::uint32_t>(leaves_.size() - 1);
}

std::uint32_t RegularEvent::add(Node node) {
  nodes_.push_back(node);
  return static_cast<std::uint32_t>(nodes_.size() - 1);
}

std::uint32_t RegularEvent::graft(const RegularEvent& other) {
  std::vector<std::uint32_t> remap(other.nodes_.size());
  for (std::uint32_t i = 0; i < other.nodes_.size(); ++i) {
    Node n = other.nodes_[i];
    switch (n.op) {
      case Op::leaf: n.a = intern(other.leaves_[n.a]); break;
      case Op::negate: n.a = remap[n.a]; break;
      case Op::conj:
      case Op::disj:
        n.a = remap[n.a];
        n.b = remap[n.b];
        break;
    }
    remap[i] = add(n);
  }
  return remap[other.root_];
}

RegularEvent RegularEvent::edge_leaf(std::vector<std::uint32_t> indices) {
  if (indices.empty()) throw InputError("edge leaf needs at least one index");
  std::sort(indices.begin(), indices.end());
  if (indices.front() == 0) throw InputError("sampled indices are 1-based");
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
    throw InputError("edge leaf repeats an index");
  RegularEvent e;
  e.root_ = e.add({Op::leaf, e.intern(Leaf{Leaf::Kind::edge, std::move(indices), 0}), 0});
  return e;
}

RegularEvent RegularEvent::shift_leaf(std::int64_t offset) {
  RegularEvent e;
  e.root_ = e.add({Op::leaf, e.intern(Leaf{Leaf::Kind::shift, {}, offset}), 0});
  return e;
}

RegularEvent operator&(const RegularEvent& x, const RegularEvent& y) {
  RegularEvent out = x;
  const auto r = out.graft(y);
  out.root_ = out.add({RegularEvent::Op::conj, x.root_, r});
  return out;
}

RegularEvent operator|(const RegularEvent& x, const RegularEvent& y) {
  RegularEvent out = x;
  const auto r = out.graft(y);
  out.root_ = out.add({RegularEvent::Op::disj, x.root_, r});
  return out;
}

RegularEvent RegularEvent::operator!() const {
  RegularEvent out = *this;
  out.root_ = out.add({Op::negate, root_, 0});
  return out;
}

RegularEvent RegularEvent::rebuilt(const std::vector<Leaf>& replacement) const {
  RegularEvent out;
  std::vector<std::uint32_t> ids(replacement.size());
  for (std::size_t i = 0; i < replacement.size(); ++i) ids[i] = out.intern(replacement[i]);
  out.nodes_ = nodes_;
  for (auto& n : out.nodes_)
    if (n.op == Op::leaf) n.a = ids[n.a];
  out.root_ = root_;
  return out;
}

std::uint32_t RegularEvent::arity() const noexcept {
  std::uint32_t k = 0;
  for (const auto& l : leaves_)
    if (l.kind == Leaf::Kind::edge) k = std::max(k, l.indices.back());
  return k;
}

unsigned RegularEvent::leaf_uniformity() const {
  unsigned d = 0;
  for (const auto& l : leaves_) {
    if (l.kind != Leaf::Kind::edge) continue;
    const auto s = static_cast<unsigned>(l.indices.size());
    if (d != 0 && s != d) throw InputError("edge leaves of different sizes in one event");
    d = s;
  }
  return d;
}

bool RegularEvent::has_edge_leaves() const noexcept {
  return std::any_of(leaves_.begin(), leaves_.end(), [](const Leaf& l) { return l.kind == Leaf::Kind::edge; });
}

bool RegularEvent::has_shift_leaves() const noexcept {
  return std::any_of(leaves_.begin(), leaves_.end(), [](const Leaf& l) { return l.kind == Leaf::Kind::shift; });
}

bool RegularEvent::eval_node(std::uint32_t node, const std::vector<bool>& values) const {
  const Node& n = nodes_[node];
  switch (n.op) {
    case Op::leaf: return values[n.a];
    case Op::negate: return !eval_node(n.a, values);
    case Op::conj: return eval_node(n.a, values) && eval_node(n.b, values);
    case Op::disj: return eval_node(n.a, values) || eval_node(n.b, values);
  }
  return false;
}

bool RegularEvent::evaluate(const std::vector<bool>& leaf_values) const {
  if (leaf_values.size() != leaves_.size()) throw InputError("leaf value count mismatch");
  return eval_node(root_, leaf_values);
}

std::vector<std::uint8_t> RegularEvent::truth_table() const {
  if (leaves_.size() > 20) throw InputError("too many distinct leaves for a truth table");
  const std::size_t rows = std::size_t{1} << leaves_.size();
  std::vector<std::uint8_t> table(rows);
  std::vector<bool> values(leaves_.size());
  for (std::size_t m = 0; m < rows; ++m) {
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = (m >> i) & 1u;
    table[m] = eval_node(root_, values) ? 1 : 0;
  }
  return table;
}

namespace {

int precedence(RegularEvent::Op op) {
  switch (op) {
    case RegularEvent::Op::disj: return 1;
    case RegularEvent::Op::conj: return 2;
    default: return 3;
  }
}

}  // namespace

void RegularEvent::render(std::uint32_t node, int parent_precedence, bool right_child, std::string& out) const {
  const Node& n = nodes_[node];
  const int p = precedence(n.op);
  const bool parens = p < parent_precedence || (right_child && p == parent_precedence && p < 3);
  if (parens) out += '(';
  switch (n.op) {
    case Op::leaf: {
      const Leaf& l = leaves_[n.a];
      if (l.kind == Leaf::Kind::shift) {
        out += "A[" + std::to_string(l.offset) + "]";
      } else {
        out += "A(";
        for (std::size_t i = 0; i < l.indices.size(); ++i) out += (i ? "," : "") + std::to_string(l.indices[i]);
        out += ')';
      }
      break;
    }
    case Op::negate:
      out += '!';
      render(n.a, 3, false, out);
      break;
    case Op::conj:
    case Op::disj:
      render(n.a, p, false, out);
      out += n.op == Op::conj ? '&' : '|';
      render(n.b, p, true, out);
      break;
  }
  if (parens) out += ')';
}

std::string RegularEvent::to_string() const {
  std::string out;
  if (!nodes_.empty()) render(root_, 0, false, out);
  return out;
}

class EventParser {
 public:
  explicit EventParser(std::string_view text) : s_(text) {}

  RegularEvent run() {
    if (s_.find_first_not_of(" \t\r\n") == std::string_view::npos) throw ParseError("empty event", 0);
    RegularEvent e = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= s_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  RegularEvent expr() {
    RegularEvent e = term();
    while (accept('|')) e = e | term();
    return e;
  }
  RegularEvent term() {
    RegularEvent e = unary();
    while (accept('&')) e = e & unary();
    return e;
  }
  RegularEvent unary() {
    if (accept('!')) return !unary();
    if (accept('(')) {
      RegularEvent e = expr();
      expect(')');
      return e;
    }
    return leaf();
  }

  std::int64_t integer(bool allow_sign) {
    skip();
    const std::size_t start = pos_;
    bool negative = false;
    if (allow_sign && pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
      negative = s_[pos_] == '-';
      ++pos_;
    }
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
      throw ParseError("expected an integer", pos_);
    std::int64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (v > (std::numeric_limits<std::int64_t>::max() - 9) / 10) throw ParseError("integer too large", start);
      v = v * 10 + (s_[pos_] - '0');
      ++pos_;
    }
    return negative ? -v : v;
  }

  RegularEvent leaf() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("expected a leaf but input ended", pos_);
    if (s_[pos_] != 'A') throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    const std::size_t leaf_pos = pos_;
    ++pos_;
    if (accept('[')) {
      const std::int64_t n = integer(true);
      expect(']');
      return RegularEvent::shift_leaf(n);
    }
    if (!accept('(')) throw ParseError("expected '(' or '[' after 'A'", pos_);
    std::vector<std::uint32_t> idx;
    do {
      skip();
      const std::size_t at = pos_;
      const std::int64_t v = integer(false);
      if (v < 1) throw ParseError("sampled indices are 1-based", at);
      if (v > 1'000'000) throw ParseError("index too large", at);
      if (std::find(idx.begin(), idx.end(), static_cast<std::uint32_t>(v)) != idx.end())
        throw ParseError("index repeated within a leaf", at);
      idx.push_back(static_cast<std::uint32_t>(v));
    } while (accept(','));
    expect(')');
    (void)leaf_pos;
    return RegularEvent::edge_leaf(std::move(idx));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

RegularEvent RegularEvent::parse(std::string_view text) { return EventParser(text).run(); }

IndexPermutation::IndexPermutation(std::vector<std::uint32_t> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size() + 1, false);
  for (auto v : image_) {
    if (v < 1 || v > image_.size() || seen[v]) throw InputError("not a bijection of {1..K}");
    seen[v] = true;
  }
}

IndexPermutation IndexPermutation::swap(std::uint32_t i, std::uint32_t j) {
  if (i < 1 || j < 1) throw InputError("sampled indices are 1-based");
  std::vector<std::uint32_t> image(std::max(i, j));
  for (std::uint32_t k = 0; k < image.size(); ++k) image[k] = k + 1;
  std::swap(image[i - 1], image[j - 1]);
  return IndexPermutation(std::move(image));
}

std::uint32_t IndexPermutation::operator()(std::uint32_t i) const {
  return i >= 1 && i <= image_.size() ? image_[i - 1] : i;
}

RegularEvent permute_event(const RegularEvent& e, const IndexPermutation& sigma) {
  return e.map_leaves([&](const Leaf& l) {
    if (l.kind != Leaf::Kind::edge) return l;
    Leaf out = l;
    for (auto& i : out.indices) i = sigma(i);
    std::sort(out.indices.begin(), out.indices.end());
    return out;
  });
}

RegularEvent shift_event(const RegularEvent& e, std::int64_t n) {
  return e.map_leaves([&](const Leaf& l) {
    if (l.kind != Leaf::Kind::shift) return l;
    Leaf out = l;
    out.offset += n;
    return out;
  });
}

}  // namespace rlab
