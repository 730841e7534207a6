#include "jtdet/partitions.hpp"

#include "jtdet/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <set>

namespace jtdet {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw InvalidArgument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw InvalidArgument("partition parts must be weakly decreasing");
  }
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

std::string Partition::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

SkewShape::SkewShape(Partition outer, Partition inner)
    : outer_(std::move(outer)), inner_(std::move(inner)) {
  if (inner_.length() > outer_.length())
    throw InvalidArgument("inner partition is longer than outer partition");
  for (int i = 1; i <= inner_.length(); ++i)
    if (inner_.part(i) > outer_.part(i))
      throw InvalidArgument("inner partition is not contained in outer partition");
}

std::string SkewShape::to_string() const {
  if (inner_.empty()) return outer_.to_string();
  return outer_.to_string() + "/" + inner_.to_string();
}

namespace {

int parse_int(std::string_view token, std::string_view whole) {
  int value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (token.empty()) throw ParseError("empty number in '" + std::string(whole) + "'");
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw ParseError("malformed number '" + std::string(token) + "' in '" + std::string(whole) + "'");
  return value;
}

}  // namespace

Partition parse_partition(std::string_view text) {
  std::string cleaned;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) cleaned += c;
  if (cleaned.empty()) return {};

  std::vector<int> parts;
  std::string_view rest(cleaned);
  while (true) {
    const auto comma = rest.find(',');
    std::string_view item = rest.substr(0, comma);
    const auto caret = item.find('^');
    int value = 0, repeat = 1;
    if (caret == std::string_view::npos) {
      value = parse_int(item, text);
    } else {
      value = parse_int(item.substr(0, caret), text);
      repeat = parse_int(item.substr(caret + 1), text);
      if (repeat < 1) throw ParseError("exponent must be positive in '" + std::string(text) + "'");
    }
    if (value <= 0) throw ParseError("partition parts must be positive: '" + std::string(text) + "'");
    if (!parts.empty() && value > parts.back())
      throw ParseError("partition is not weakly decreasing: '" + std::string(text) + "'");
    parts.insert(parts.end(), repeat, value);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return Partition(std::move(parts));
}

SkewShape parse_skew(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return SkewShape(parse_partition(text));
  if (text.find('/', slash + 1) != std::string_view::npos)
    throw ParseError("more than one '/' in skew shape '" + std::string(text) + "'");
  Partition outer = parse_partition(text.substr(0, slash));
  Partition inner = parse_partition(text.substr(slash + 1));
  try {
    return SkewShape(std::move(outer), std::move(inner));
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string(e.what()) + ": '" + std::string(text) + "'");
  }
}

Partition conjugate(const Partition& lambda) {
  std::vector<int> out;
  if (lambda.empty()) return {};
  for (int i = 1; i <= lambda.part(1); ++i) {
    int count = 0;
    while (count < lambda.length() && lambda.parts()[count] >= i) ++count;
    out.push_back(count);
  }
  return Partition(std::move(out));
}

SkewShape conjugate_skew(const SkewShape& shape) {
  return SkewShape(conjugate(shape.outer()), conjugate(shape.inner()));
}

std::vector<Box> boxes(const SkewShape& shape) {
  std::vector<Box> out;
  for (int i = 1; i <= shape.outer().length(); ++i)
    for (int j = shape.inner().part(i) + 1; j <= shape.outer().part(i); ++j) out.emplace_back(i, j);
  return out;
}

bool is_connected(const SkewShape& shape) {
  const auto& lam = shape.outer();
  const auto& mu = shape.inner();
  int first = 0, last = 0;
  for (int i = 1; i <= lam.length(); ++i) {
    if (lam.part(i) > mu.part(i)) {
      if (!first) first = i;
      last = i;
    }
  }
  if (!first) return false;
  for (int i = first; i <= last; ++i) {
    if (lam.part(i) == mu.part(i)) return false;
    if (i < last && !(mu.part(i) < lam.part(i + 1))) return false;
  }
  return true;
}

bool is_ribbon(const SkewShape& shape) {
  if (!is_connected(shape)) return false;
  const auto& lam = shape.outer();
  const auto& mu = shape.inner();
  // A 2x2 block in rows i, i+1 exists iff lambda_{i+1} >= mu_i + 2.
  for (int i = 1; i < lam.length(); ++i)
    if (lam.part(i + 1) > mu.part(i) + 1) return false;
  return true;
}

SkewShape normalize_ribbon(const SkewShape& shape) {
  if (!is_ribbon(shape)) throw InvalidArgument("'" + shape.to_string() + "' is not a ribbon");
  const auto& lam = shape.outer();
  const auto& mu = shape.inner();
  int first = 0, last = 0;
  for (int i = 1; i <= lam.length(); ++i) {
    if (lam.part(i) > mu.part(i)) {
      if (!first) first = i;
      last = i;
    }
  }
  const int shift = mu.part(last);
  std::vector<int> outer, inner;
  for (int i = first; i <= last; ++i) {
    outer.push_back(lam.part(i) - shift);
    const int m = mu.part(i) - shift;
    if (m > 0) inner.push_back(m);
  }
  return SkewShape(Partition(std::move(outer)), Partition(std::move(inner)));
}

Partition shifted_staircase(int p, int n, int k) {
  if (p < 1 || n < 1 || k < 0) throw InvalidArgument("shifted staircase needs p, n >= 1 and k >= 0");
  std::vector<int> parts;
  for (int i = k - 1; i >= 0; --i) parts.push_back(p + i * n);
  return Partition(std::move(parts));
}

Partition block_staircase(int p, int n, int k) {
  if (p < 1 || n < 1 || k < 0) throw InvalidArgument("block staircase needs p, n >= 1 and k >= 0");
  std::vector<int> parts;
  if (k == 0) return {};
  parts.insert(parts.end(), p, k);
  for (int v = k - 1; v >= 1; --v) parts.insert(parts.end(), n, v);
  return Partition(std::move(parts));
}

namespace {

void partitions_rec(int remaining, int max_part, std::vector<int>& cur, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(cur);
    return;
  }
  for (int v = std::min(remaining, max_part); v >= 1; --v) {
    cur.push_back(v);
    partitions_rec(remaining - v, v, cur, out);
    cur.pop_back();
  }
}

// Partitions with at most `rows` parts, each at most bound[i] (bound weakly
// decreasing), written into out.
void bounded_rec(const std::vector<int>& bound, std::size_t row, int max_part, std::vector<int>& cur,
                 std::vector<Partition>& out) {
  out.emplace_back(cur);
  if (row >= bound.size()) return;
  for (int v = std::min(max_part, bound[row]); v >= 1; --v) {
    cur.push_back(v);
    bounded_rec(bound, row + 1, v, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Partition> partitions_of(int size) {
  std::vector<Partition> out;
  std::vector<int> cur;
  if (size < 0) return out;
  partitions_rec(size, size, cur, out);
  return out;
}

std::vector<Partition> partitions_up_to(int max_size) {
  std::vector<Partition> out;
  for (int s = 0; s <= max_size; ++s) {
    auto ps = partitions_of(s);
    out.insert(out.end(), ps.begin(), ps.end());
  }
  return out;
}

std::vector<Partition> subpartitions(const Partition& lambda) {
  std::vector<Partition> out;
  std::vector<int> cur;
  bounded_rec(lambda.parts(), 0, lambda.part(1), cur, out);
  return out;
}

std::vector<SkewShape> skew_shapes_up_to(int max_size) {
  std::vector<SkewShape> out;
  for (const auto& lam : partitions_up_to(max_size))
    for (const auto& mu : subpartitions(lam)) out.emplace_back(lam, mu);
  return out;
}

std::vector<SkewShape> ribbons_up_to(int max_boxes) {
  // A normalized ribbon with c boxes fits in a c x c box.
  std::set<SkewShape> found;
  std::vector<int> square(max_boxes, max_boxes);
  std::vector<Partition> outers;
  std::vector<int> cur;
  bounded_rec(square, 0, max_boxes, cur, outers);
  for (const auto& lam : outers) {
    if (lam.empty()) continue;
    for (const auto& mu : subpartitions(lam)) {
      const int count = lam.size() - mu.size();
      if (count < 1 || count > max_boxes) continue;
      SkewShape s(lam, mu);
      if (!is_ribbon(s)) continue;
      if (normalize_ribbon(s) == s) found.insert(s);
    }
  }
  return {found.begin(), found.end()};
}

}  // namespace jtdet
