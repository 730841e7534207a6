#pragma once

#include <compare>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace jtdet {

/// A weakly decreasing list of positive integers. Parts beyond the length
/// read as 0.
class Partition {
 public:
  Partition() = default;
  /// Throws InvalidArgument unless `parts` is weakly decreasing and positive.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  int length() const { return static_cast<int>(parts_.size()); }
  int size() const;
  bool empty() const { return parts_.empty(); }
  /// 1-based; 0 for i > length().
  int part(int i) const { return i >= 1 && i <= length() ? parts_[i - 1] : 0; }

  /// "7,4,1"; the empty partition prints as "".
  std::string to_string() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

/// Box (row, column), both 1-based.
using Box = std::pair<int, int>;

/// The skew shape outer/inner with inner contained in outer.
class SkewShape {
 public:
  SkewShape() = default;
  explicit SkewShape(Partition outer, Partition inner = {});

  const Partition& outer() const { return outer_; }
  const Partition& inner() const { return inner_; }
  /// Number of rows of the Jacobi-Trudi matrix, i.e. the length of outer.
  int rows() const { return outer_.length(); }
  int box_count() const { return outer_.size() - inner_.size(); }

  /// "8,6,4,4/5,3,3", or just "7,4,1" for a straight shape.
  std::string to_string() const;

  friend bool operator==(const SkewShape&, const SkewShape&) = default;
  friend auto operator<=>(const SkewShape&, const SkewShape&) = default;

 private:
  Partition outer_;
  Partition inner_;
};

/// Grammar: part (',' part)*, part = int | int '^' int. Whitespace is
/// ignored; the empty string is the empty partition.
Partition parse_partition(std::string_view text);
/// "outer/inner" or "outer".
SkewShape parse_skew(std::string_view text);

Partition conjugate(const Partition& lambda);
SkewShape conjugate_skew(const SkewShape& shape);

/// Sorted boxes of the skew diagram.
std::vector<Box> boxes(const SkewShape& shape);

/// Row-overlap criterion: occupied rows are contiguous and consecutive
/// occupied rows i, i+1 satisfy inner_i < outer_{i+1}. Shapes with no boxes
/// are not connected.
bool is_connected(const SkewShape& shape);
bool is_ribbon(const SkewShape& shape);

/// Translates a ribbon as far north-west as possible, so that
/// outer_1 > inner_1 and outer_l > inner_l = 0 with l the length of outer.
/// Throws InvalidArgument if the shape is not a ribbon.
SkewShape normalize_ribbon(const SkewShape& shape);

/// (p+(k-1)n, ..., p+n, p).
Partition shifted_staircase(int p, int n, int k);
/// (k^p, (k-1)^n, ..., 1^n), the conjugate of shifted_staircase(p, n, k).
Partition block_staircase(int p, int n, int k);
inline bool is_inward(int p, int n) { return p <= n; }

/// All partitions of `size`, in reverse lexicographic order.
std::vector<Partition> partitions_of(int size);
/// All partitions with size <= max_size.
std::vector<Partition> partitions_up_to(int max_size);
/// All partitions contained in `lambda` (including the empty one and lambda).
std::vector<Partition> subpartitions(const Partition& lambda);
/// Every skew shape outer/inner with |outer| <= max_size.
std::vector<SkewShape> skew_shapes_up_to(int max_size);
/// Every normalized ribbon with 1..max_boxes boxes, found by filtering all
/// skew shapes that fit the bounding box.
std::vector<SkewShape> ribbons_up_to(int max_boxes);

}  // namespace jtdet
