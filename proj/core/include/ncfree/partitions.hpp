#pragma once

// One- and two-color non-crossing partitions whose blocks are singletons or
// pairs, with depth bookkeeping and exact family counts.
//
// Positions are 1-based throughout. A partition is stored as a partner array:
// partner(i) == i for a singleton, otherwise the other end of i's pair. The
// canonical text form lists blocks sorted by minimum element.

#include "ncfree/numeric.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ncfree {

struct Block {
  int first = 0;
  int last = 0;

  bool is_pair() const noexcept { return first != last; }
  friend bool operator==(const Block&, const Block&) = default;
};

class PartitionBuilder;

class Partition12 {
 public:
  Partition12() = default;

  /// Builds from a partner array indexed 1..n (entry 0 ignored). Throws
  /// std::invalid_argument unless the array is a non-crossing {1,2}-partition.
  explicit Partition12(std::vector<int> partner);

  /// Builds from an explicit block list; blocks may come in any order.
  static Partition12 from_blocks(int n, const std::vector<Block>& blocks);

  int size() const noexcept { return static_cast<int>(partner_.size()) - 1; }
  int partner(int i) const { return partner_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& partner_array() const noexcept { return partner_; }

  /// Blocks sorted by minimum element.
  std::vector<Block> blocks() const;
  std::size_t pair_count() const;
  bool has_singletons() const;

  std::string to_string() const;
  /// Parses the canonical text form; the ground set is 1..max element.
  static Partition12 parse(std::string_view text);

  friend bool operator==(const Partition12&, const Partition12&) = default;

 private:
  friend class PartitionBuilder;
  std::vector<int> partner_{0};
};

enum class Color : std::uint8_t { blue = 1, red = 2 };

inline Color opposite(Color c) noexcept { return c == Color::blue ? Color::red : Color::blue; }
inline char color_tag(Color c) noexcept { return c == Color::blue ? 'b' : 'r'; }

class ColoredPartition {
 public:
  ColoredPartition() = default;

  /// colors is indexed by position 1..n; both ends of a pair must agree.
  ColoredPartition(Partition12 base, std::vector<Color> position_colors);

  static ColoredPartition from_blocks(int n, const std::vector<Block>& blocks,
                                      const std::vector<Color>& block_colors);

  const Partition12& base() const noexcept { return base_; }
  int size() const noexcept { return base_.size(); }
  Color color_at(int position) const { return colors_[static_cast<std::size_t>(position)]; }
  const std::vector<Color>& position_colors() const noexcept { return colors_; }

  /// Colors of blocks() in canonical order.
  std::vector<Color> block_colors() const;
  ColoredPartition recolored(Color c) const;

  std::string to_string() const;
  static ColoredPartition parse(std::string_view text);

  friend bool operator==(const ColoredPartition&, const ColoredPartition&) = default;

 private:
  friend class PartitionBuilder;
  Partition12 base_;
  std::vector<Color> colors_{Color::blue};
};

/// Per-block depths, aligned with blocks() order. The depth of a block is one
/// plus the number of pairs enclosing it.
struct DepthProfile {
  std::vector<int> absolute;
  /// Color-reset depth; equals `absolute` for uncolored partitions.
  std::vector<int> relative;
};

DepthProfile block_depths(const Partition12& p);
DepthProfile block_depths(const ColoredPartition& p);

inline constexpr int kUnbounded = std::numeric_limits<int>::max();

struct Nc12Options {
  bool pairs_only = false;
  /// Every pair block must have depth strictly less than this bound.
  int depth_bound = kUnbounded;
};

struct TcncOptions {
  bool pairs_only = false;
  int blue_bound = kUnbounded;
  int red_bound = kUnbounded;
  /// When set (indexed 1..n), only colorings matching these position colors
  /// are produced.
  std::optional<std::vector<Color>> required_colors;
};

using Nc12Visitor = std::function<void(const Partition12&)>;
using TcncVisitor = std::function<void(const ColoredPartition&)>;

/// Visits each partition once. The reference passed to the visitor is only
/// valid during the call.
void for_each_nc12(int n, const Nc12Options& options, const Nc12Visitor& visit);
void for_each_tcnc(int n, const TcncOptions& options, const TcncVisitor& visit);

std::vector<Partition12> enumerate_nc12(int n);
std::vector<Partition12> enumerate_nc12_depth(int n, int k, bool pairs_only = false);
std::vector<ColoredPartition> enumerate_tcnc(int n, bool pairs_only);
std::vector<ColoredPartition> enumerate_tcnc_depth(int n, int k, int l, bool pairs_only);

struct OddComposition {
  int total = 0;
  std::vector<int> parts;

  friend bool operator==(const OddComposition&, const OddComposition&) = default;
};

void for_each_odd_composition(int p, int q, const std::function<void(const std::vector<int>&)>& visit);
std::vector<OddComposition> odd_compositions(int p, int q);

struct FamilyDescriptor {
  enum class Kind { nc, tcnc };

  Kind kind = Kind::nc;
  bool pairs_only = false;
  int k = kUnbounded;  // depth bound (blue bound for two-color families)
  int l = kUnbounded;  // red bound, two-color families only

  static FamilyDescriptor nc12(int k = kUnbounded) { return {Kind::nc, false, k, kUnbounded}; }
  static FamilyDescriptor nc2(int k = kUnbounded) { return {Kind::nc, true, k, kUnbounded}; }
  static FamilyDescriptor tcnc12(int k = kUnbounded, int l = kUnbounded) {
    return {Kind::tcnc, false, k, l};
  }
  static FamilyDescriptor tcnc2(int k = kUnbounded, int l = kUnbounded) {
    return {Kind::tcnc, true, k, l};
  }

  std::string name() const;
};

/// Exact size of a family, by dynamic programming over open-pair stacks.
BigInt count_family(const FamilyDescriptor& family, int n);

/// Stream length of the matching enumerator.
BigInt count_by_enumeration(const FamilyDescriptor& family, int n);

}  // namespace ncfree
