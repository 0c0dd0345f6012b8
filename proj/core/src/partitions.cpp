#include "ncfree/partitions.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>
#include <utility>

namespace ncfree {

// Grants the enumerators in-place access to the partner/color arrays so a
// single object can be mutated and handed to visitors without copying.
class PartitionBuilder {
 public:
  static std::vector<int>& partner(Partition12& p) { return p.partner_; }
  static std::vector<int>& partner(ColoredPartition& p) { return p.base_.partner_; }
  static std::vector<Color>& colors(ColoredPartition& p) { return p.colors_; }
};

namespace {

void validate_partner(const std::vector<int>& partner) {
  const int n = static_cast<int>(partner.size()) - 1;
  if (n < 0) throw std::invalid_argument("partner array must have an entry 0");
  std::vector<int> open;
  for (int i = 1; i <= n; ++i) {
    const int j = partner[static_cast<std::size_t>(i)];
    if (j < 1 || j > n) throw std::invalid_argument("partner index out of range");
    if (partner[static_cast<std::size_t>(j)] != i) {
      throw std::invalid_argument("partner array is not an involution");
    }
    if (j > i) {
      open.push_back(i);
    } else if (j < i) {
      if (open.empty() || open.back() != j) {
        throw std::invalid_argument("pairs cross");
      }
      open.pop_back();
    }
  }
}

std::vector<std::pair<int, int>> parse_blocks(std::string_view text, std::vector<char>* tags) {
  std::vector<std::pair<int, int>> out;
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  auto read_int = [&]() -> int {
    int value = 0;
    const char* begin = text.data() + pos;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) throw std::invalid_argument("expected an integer in partition text");
    pos += static_cast<std::size_t>(ptr - begin);
    return value;
  };
  skip_space();
  while (pos < text.size()) {
    if (text[pos] != '(') throw std::invalid_argument("expected '(' in partition text");
    ++pos;
    const int a = read_int();
    int b = a;
    if (pos < text.size() && text[pos] == ',') {
      ++pos;
      b = read_int();
    }
    if (pos >= text.size() || text[pos] != ')') throw std::invalid_argument("expected ')' in partition text");
    ++pos;
    char tag = 0;
    if (pos < text.size() && text[pos] == ':') {
      if (pos + 1 >= text.size()) throw std::invalid_argument("missing color tag");
      tag = text[pos + 1];
      if (tag != 'b' && tag != 'r') throw std::invalid_argument("color tag must be b or r");
      pos += 2;
    }
    if (tags != nullptr) tags->push_back(tag);
    out.emplace_back(a, b);
    skip_space();
  }
  return out;
}

}  // namespace

Partition12::Partition12(std::vector<int> partner) : partner_(std::move(partner)) {
  validate_partner(partner_);
}

Partition12 Partition12::from_blocks(int n, const std::vector<Block>& blocks) {
  if (n < 0) throw std::invalid_argument("negative partition size");
  std::vector<int> partner(static_cast<std::size_t>(n) + 1, 0);
  for (const Block& b : blocks) {
    if (b.first < 1 || b.last > n || b.first > b.last) throw std::invalid_argument("block out of range");
    if (partner[static_cast<std::size_t>(b.first)] != 0 || partner[static_cast<std::size_t>(b.last)] != 0) {
      throw std::invalid_argument("blocks overlap");
    }
    partner[static_cast<std::size_t>(b.first)] = b.last;
    partner[static_cast<std::size_t>(b.last)] = b.first;
  }
  return Partition12(std::move(partner));
}

std::vector<Block> Partition12::blocks() const {
  std::vector<Block> out;
  for (int i = 1; i <= size(); ++i) {
    const int j = partner(i);
    if (j >= i) out.push_back({i, j});
  }
  return out;
}

std::size_t Partition12::pair_count() const {
  std::size_t count = 0;
  for (int i = 1; i <= size(); ++i) count += partner(i) > i ? 1 : 0;
  return count;
}

bool Partition12::has_singletons() const {
  for (int i = 1; i <= size(); ++i) {
    if (partner(i) == i) return true;
  }
  return false;
}

std::string Partition12::to_string() const {
  std::string out;
  for (const Block& b : blocks()) {
    if (!out.empty()) out += ' ';
    out += '(' + std::to_string(b.first);
    if (b.is_pair()) out += ',' + std::to_string(b.last);
    out += ')';
  }
  return out;
}

Partition12 Partition12::parse(std::string_view text) {
  const auto raw = parse_blocks(text, nullptr);
  int n = 0;
  std::vector<Block> blocks;
  for (auto [a, b] : raw) {
    n = std::max({n, a, b});
    blocks.push_back({std::min(a, b), std::max(a, b)});
  }
  return from_blocks(n, blocks);
}

ColoredPartition::ColoredPartition(Partition12 base, std::vector<Color> position_colors)
    : base_(std::move(base)), colors_(std::move(position_colors)) {
  if (colors_.size() != base_.partner_array().size()) {
    throw std::invalid_argument("position colors must be indexed 1..n");
  }
  for (int i = 1; i <= base_.size(); ++i) {
    if (colors_[static_cast<std::size_t>(i)] != colors_[static_cast<std::size_t>(base_.partner(i))]) {
      throw std::invalid_argument("both ends of a pair must carry the same color");
    }
  }
}

ColoredPartition ColoredPartition::from_blocks(int n, const std::vector<Block>& blocks,
                                               const std::vector<Color>& block_colors) {
  if (blocks.size() != block_colors.size()) throw std::invalid_argument("one color per block required");
  auto base = Partition12::from_blocks(n, blocks);
  std::vector<Color> colors(static_cast<std::size_t>(n) + 1, Color::blue);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    colors[static_cast<std::size_t>(blocks[i].first)] = block_colors[i];
    colors[static_cast<std::size_t>(blocks[i].last)] = block_colors[i];
  }
  return ColoredPartition(std::move(base), std::move(colors));
}

std::vector<Color> ColoredPartition::block_colors() const {
  std::vector<Color> out;
  for (const Block& b : base_.blocks()) out.push_back(color_at(b.first));
  return out;
}

ColoredPartition ColoredPartition::recolored(Color c) const {
  ColoredPartition copy = *this;
  std::fill(copy.colors_.begin(), copy.colors_.end(), c);
  return copy;
}

std::string ColoredPartition::to_string() const {
  std::string out;
  for (const Block& b : base_.blocks()) {
    if (!out.empty()) out += ' ';
    out += '(' + std::to_string(b.first);
    if (b.is_pair()) out += ',' + std::to_string(b.last);
    out += "):";
    out += color_tag(color_at(b.first));
  }
  return out;
}

ColoredPartition ColoredPartition::parse(std::string_view text) {
  std::vector<char> tags;
  const auto raw = parse_blocks(text, &tags);
  int n = 0;
  std::vector<Block> blocks;
  std::vector<Color> colors;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto [a, b] = raw[i];
    if (tags[i] == 0) throw std::invalid_argument("colored partition text requires :b or :r tags");
    n = std::max({n, a, b});
    blocks.push_back({std::min(a, b), std::max(a, b)});
    colors.push_back(tags[i] == 'b' ? Color::blue : Color::red);
  }
  return from_blocks(n, blocks, colors);
}

DepthProfile block_depths(const Partition12& p) {
  DepthProfile profile;
  int open = 0;
  for (int i = 1; i <= p.size(); ++i) {
    const int j = p.partner(i);
    if (j < i) {
      --open;
      continue;
    }
    profile.absolute.push_back(open + 1);
    if (j > i) ++open;
  }
  profile.relative = profile.absolute;
  return profile;
}

DepthProfile block_depths(const ColoredPartition& p) {
  struct Open {
    Color color;
    int relative;
  };
  DepthProfile profile;
  std::vector<Open> stack;
  for (int i = 1; i <= p.size(); ++i) {
    const int j = p.base().partner(i);
    if (j < i) {
      stack.pop_back();
      continue;
    }
    const Color c = p.color_at(i);
    const int rel = (!stack.empty() && stack.back().color == c) ? stack.back().relative + 1 : 1;
    profile.absolute.push_back(static_cast<int>(stack.size()) + 1);
    profile.relative.push_back(rel);
    if (j > i) stack.push_back({c, rel});
  }
  return profile;
}

namespace {

class Nc12Walker {
 public:
  Nc12Walker(int n, const Nc12Options& options, const Nc12Visitor& visit)
      : n_(n), options_(options), visit_(visit) {
    PartitionBuilder::partner(current_).assign(static_cast<std::size_t>(n) + 1, 0);
  }

  void run() { step(1); }

 private:
  void step(int i) {
    auto& partner = PartitionBuilder::partner(current_);
    if (i > n_) {
      if (open_.empty()) visit_(current_);
      return;
    }
    const auto depth = static_cast<int>(open_.size());
    const int after = n_ - i;  // positions remaining after i
    if (!open_.empty()) {
      const int j = open_.back();
      open_.pop_back();
      partner[static_cast<std::size_t>(i)] = j;
      partner[static_cast<std::size_t>(j)] = i;
      step(i + 1);
      open_.push_back(j);
      partner[static_cast<std::size_t>(j)] = 0;
    }
    if (!options_.pairs_only && depth <= after) {
      partner[static_cast<std::size_t>(i)] = i;
      step(i + 1);
    }
    if (depth + 1 < options_.depth_bound && depth + 1 <= after) {
      open_.push_back(i);
      step(i + 1);
      open_.pop_back();
    }
    partner[static_cast<std::size_t>(i)] = 0;
  }

  int n_;
  const Nc12Options& options_;
  const Nc12Visitor& visit_;
  Partition12 current_;
  std::vector<int> open_;
};

class TcncWalker {
 public:
  TcncWalker(int n, const TcncOptions& options, const TcncVisitor& visit)
      : n_(n), options_(options), visit_(visit) {
    if (options.required_colors && static_cast<int>(options.required_colors->size()) != n + 1) {
      throw std::invalid_argument("required colors must be indexed 1..n");
    }
    PartitionBuilder::partner(current_).assign(static_cast<std::size_t>(n) + 1, 0);
    PartitionBuilder::colors(current_).assign(static_cast<std::size_t>(n) + 1, Color::blue);
  }

  void run() { step(1); }

 private:
  struct Open {
    int position;
    Color color;
    int relative;
  };

  int bound(Color c) const { return c == Color::blue ? options_.blue_bound : options_.red_bound; }

  bool allowed(int i, Color c) const {
    return !options_.required_colors || (*options_.required_colors)[static_cast<std::size_t>(i)] == c;
  }

  void step(int i) {
    auto& partner = PartitionBuilder::partner(current_);
    auto& colors = PartitionBuilder::colors(current_);
    if (i > n_) {
      if (open_.empty()) visit_(current_);
      return;
    }
    const auto depth = static_cast<int>(open_.size());
    const int after = n_ - i;
    if (!open_.empty() && allowed(i, open_.back().color)) {
      const Open top = open_.back();
      open_.pop_back();
      partner[static_cast<std::size_t>(i)] = top.position;
      partner[static_cast<std::size_t>(top.position)] = i;
      colors[static_cast<std::size_t>(i)] = top.color;
      step(i + 1);
      open_.push_back(top);
      partner[static_cast<std::size_t>(top.position)] = 0;
    }
    for (Color c : {Color::blue, Color::red}) {
      if (!allowed(i, c)) continue;
      colors[static_cast<std::size_t>(i)] = c;
      if (!options_.pairs_only && depth <= after) {
        partner[static_cast<std::size_t>(i)] = i;
        step(i + 1);
      }
      const int rel = (!open_.empty() && open_.back().color == c) ? open_.back().relative + 1 : 1;
      if (rel < bound(c) && depth + 1 <= after) {
        open_.push_back({i, c, rel});
        step(i + 1);
        open_.pop_back();
      }
    }
    partner[static_cast<std::size_t>(i)] = 0;
  }

  int n_;
  const TcncOptions& options_;
  const TcncVisitor& visit_;
  ColoredPartition current_;
  std::vector<Open> open_;
};

}  // namespace

void for_each_nc12(int n, const Nc12Options& options, const Nc12Visitor& visit) {
  if (n < 0) throw std::invalid_argument("partition size must be nonnegative");
  if (options.depth_bound < 1) throw std::invalid_argument("depth bound must be at least 1");
  Nc12Walker(n, options, visit).run();
}

void for_each_tcnc(int n, const TcncOptions& options, const TcncVisitor& visit) {
  if (n < 0) throw std::invalid_argument("partition size must be nonnegative");
  if (options.blue_bound < 1 || options.red_bound < 1) {
    throw std::invalid_argument("depth bounds must be at least 1");
  }
  TcncWalker(n, options, visit).run();
}

std::vector<Partition12> enumerate_nc12(int n) { return enumerate_nc12_depth(n, kUnbounded); }

std::vector<Partition12> enumerate_nc12_depth(int n, int k, bool pairs_only) {
  std::vector<Partition12> out;
  for_each_nc12(n, {pairs_only, k}, [&](const Partition12& p) { out.push_back(p); });
  return out;
}

std::vector<ColoredPartition> enumerate_tcnc(int n, bool pairs_only) {
  return enumerate_tcnc_depth(n, kUnbounded, kUnbounded, pairs_only);
}

std::vector<ColoredPartition> enumerate_tcnc_depth(int n, int k, int l, bool pairs_only) {
  std::vector<ColoredPartition> out;
  TcncOptions options;
  options.pairs_only = pairs_only;
  options.blue_bound = k;
  options.red_bound = l;
  for_each_tcnc(n, options, [&](const ColoredPartition& p) { out.push_back(p); });
  return out;
}

void for_each_odd_composition(int p, int q, const std::function<void(const std::vector<int>&)>& visit) {
  if (p < 0 || q < 0) throw std::invalid_argument("composition arguments must be nonnegative");
  if (p < q || (p - q) % 2 != 0) return;
  std::vector<int> parts;
  parts.reserve(static_cast<std::size_t>(q));
  std::function<void(int, int)> rec = [&](int remaining, int slots) {
    if (slots == 0) {
      if (remaining == 0) visit(parts);
      return;
    }
    // leave at least one unit for each later slot
    for (int part = 1; part <= remaining - (slots - 1); part += 2) {
      parts.push_back(part);
      rec(remaining - part, slots - 1);
      parts.pop_back();
    }
  };
  rec(p, q);
}

std::vector<OddComposition> odd_compositions(int p, int q) {
  std::vector<OddComposition> out;
  for_each_odd_composition(p, q, [&](const std::vector<int>& parts) { out.push_back({p, parts}); });
  return out;
}

std::string FamilyDescriptor::name() const {
  std::string out = kind == Kind::nc ? (pairs_only ? "NC2" : "NC12") : (pairs_only ? "TCNC2" : "TCNC12");
  if (kind == Kind::nc && k != kUnbounded) out += "^" + std::to_string(k);
  if (kind == Kind::tcnc && (k != kUnbounded || l != kUnbounded)) {
    auto show = [](int v) { return v == kUnbounded ? std::string("inf") : std::to_string(v); };
    out += "^{" + show(k) + "," + show(l) + "}";
  }
  return out;
}

namespace {

// Counts completions of a partial scan. The state is the stack of open pairs;
// for one color only its height matters, for two colors the full color
// sequence (relative depth of a new pair depends on the run at the top).
class FamilyCounter {
 public:
  FamilyCounter(const FamilyDescriptor& family, int n) : family_(family), n_(n) {}

  BigInt count() { return family_.kind == FamilyDescriptor::Kind::nc ? count_nc(1, 0) : count_tcnc(1, ""); }

 private:
  BigInt count_nc(int i, int depth) {
    if (i > n_) return depth == 0 ? 1 : 0;
    const int after = n_ - i;
    if (depth > after + 1) return 0;
    auto key = std::make_pair(i, std::to_string(depth));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    BigInt total = 0;
    if (depth > 0) total += count_nc(i + 1, depth - 1);
    if (!family_.pairs_only) total += count_nc(i + 1, depth);
    if (depth + 1 < family_.k) total += count_nc(i + 1, depth + 1);
    memo_.emplace(key, total);
    return total;
  }

  int top_run(const std::string& stack) const {
    if (stack.empty()) return 0;
    const char c = stack.back();
    int run = 0;
    for (auto it = stack.rbegin(); it != stack.rend() && *it == c; ++it) ++run;
    return run;
  }

  BigInt count_tcnc(int i, const std::string& stack) {
    const auto depth = static_cast<int>(stack.size());
    if (i > n_) return depth == 0 ? 1 : 0;
    const int after = n_ - i;
    if (depth > after + 1) return 0;
    auto key = std::make_pair(i, stack);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    BigInt total = 0;
    if (!stack.empty()) total += count_tcnc(i + 1, stack.substr(0, stack.size() - 1));
    if (!family_.pairs_only) total += 2 * count_tcnc(i + 1, stack);
    const int run = top_run(stack);
    for (char c : {'b', 'r'}) {
      const int rel = (!stack.empty() && stack.back() == c) ? run + 1 : 1;
      const int bound = c == 'b' ? family_.k : family_.l;
      if (rel < bound) total += count_tcnc(i + 1, stack + c);
    }
    memo_.emplace(key, total);
    return total;
  }

  const FamilyDescriptor& family_;
  int n_;
  std::map<std::pair<int, std::string>, BigInt> memo_;
};

}  // namespace

BigInt count_family(const FamilyDescriptor& family, int n) {
  if (n < 0) throw std::invalid_argument("family size must be nonnegative");
  if (family.k < 1 || family.l < 1) throw std::invalid_argument("depth bounds must be at least 1");
  return FamilyCounter(family, n).count();
}

BigInt count_by_enumeration(const FamilyDescriptor& family, int n) {
  BigInt count = 0;
  if (family.kind == FamilyDescriptor::Kind::nc) {
    for_each_nc12(n, {family.pairs_only, family.k}, [&](const Partition12&) { ++count; });
  } else {
    TcncOptions options;
    options.pairs_only = family.pairs_only;
    options.blue_bound = family.k;
    options.red_bound = family.l;
    for_each_tcnc(n, options, [&](const ColoredPartition&) { ++count; });
  }
  return count;
}

}  // namespace ncfree
