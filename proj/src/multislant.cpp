#include "jtdet/multislant.hpp"

#include "jtdet/error.hpp"
#include "jtdet/partitions.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace jtdet {

SymEntry SlantBlock::entry(int row, int col) const {
  const int d = row - col;
  const int m = rows - cols;
  if (d > m) return SymEntry::constant(0);
  if (d >= 0) return full[d];
  return attic[-d - 1];
}

SymEntry SlantBlock::level(int s) const {
  const int m = rows - cols;
  if (s < 0) return SymEntry::constant(0);
  if (s <= m) return full[m - s];
  if (s - m - 1 < static_cast<int>(attic.size())) return attic[s - m - 1];
  throw InvalidArgument("level " + std::to_string(s) + " is outside the block");
}

bool SlantBlock::is_strict() const {
  return std::none_of(attic.begin(), attic.end(), [](const SymEntry& e) { return e.is_var(); });
}

std::vector<int> SlantBlock::variables() const {
  std::set<int> vars;
  for (const auto& e : full)
    if (e.is_var()) vars.insert(e.var_index());
  for (const auto& e : attic)
    if (e.is_var()) vars.insert(e.var_index());
  return {vars.begin(), vars.end()};
}

void SlantBlock::validate() const {
  if (cols < 1) throw InvalidArgument("slant block needs at least one column");
  if (rows < cols)
    throw InvalidArgument("slant block is not tall (" + std::to_string(rows) + "x" + std::to_string(cols) + ")");
  if (static_cast<int>(full.size()) != rows - cols + 1)
    throw InvalidArgument("slant block " + std::to_string(rows) + "x" + std::to_string(cols) + " needs " +
                          std::to_string(rows - cols + 1) + " full paradiagonal entries");
  if (static_cast<int>(attic.size()) != cols - 1)
    throw InvalidArgument("slant block " + std::to_string(rows) + "x" + std::to_string(cols) + " needs " +
                          std::to_string(cols - 1) + " attic entries");
  std::set<int> full_vars;
  for (std::size_t d = 0; d + 1 < full.size(); ++d) {
    if (!full[d].is_var())
      throw InvalidArgument("full paradiagonals above the bottom one must hold indeterminates");
    if (!full_vars.insert(full[d].var_index()).second)
      throw InvalidArgument("full paradiagonal indeterminates must be distinct");
  }
  if (bottom().is_var() && !full_vars.insert(bottom().var_index()).second)
    throw InvalidArgument("bottom indeterminate repeats a full paradiagonal indeterminate");
  for (const auto& e : attic)
    if (e.is_var() && full_vars.count(e.var_index()))
      throw InvalidArgument("attic indeterminate appears on a full paradiagonal");
}

const char* to_string(SlantType t) {
  switch (t) {
    case SlantType::X:
      return "X";
    case SlantType::Zero:
      return "0";
    case SlantType::One:
      return "1";
  }
  return "?";
}

std::string Signature::to_string() const {
  return "(" + std::to_string(x) + "," + std::to_string(zero) + "," + std::to_string(one) + ")";
}

MultislantSpec::MultislantSpec(std::vector<SlantBlock> blocks, std::map<int, std::string> names)
    : blocks_(std::move(blocks)), names_(std::move(names)) {
  std::set<int> seen;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    blocks_[b].validate();
    if (blocks_[b].rows != blocks_.front().rows)
      throw InvalidArgument("blocks must have the same number of rows");
    for (int v : blocks_[b].variables())
      if (!seen.insert(v).second)
        throw InvalidArgument("blocks are not disjoint: indeterminate '" +
                              (names_.count(v) ? names_.at(v) : "h" + std::to_string(v)) +
                              "' appears in two blocks");
  }
}

int MultislantSpec::cols() const {
  int total = 0;
  for (const auto& b : blocks_) total += b.cols;
  return total;
}

bool MultislantSpec::is_strict() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const SlantBlock& b) { return b.is_strict(); });
}

std::vector<int> MultislantSpec::variables() const {
  std::vector<int> out;
  for (const auto& b : blocks_) {
    auto v = b.variables();
    out.insert(out.end(), v.begin(), v.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

SlantType classify_block(const SlantBlock& block, const Field& f) {
  const auto& u0 = block.bottom();
  if (u0.is_var()) return SlantType::X;
  return u0.const_value(f) == Field::zero() ? SlantType::Zero : SlantType::One;
}

Signature signature(const MultislantSpec& spec, const Field& f) {
  Signature sig;
  for (const auto& b : spec.blocks()) {
    switch (classify_block(b, f)) {
      case SlantType::X:
        ++sig.x;
        break;
      case SlantType::Zero:
        ++sig.zero;
        break;
      case SlantType::One:
        ++sig.one;
        break;
    }
  }
  return sig;
}

Rational gamma(int k, std::uint64_t q) {
  Rational g = 1;
  BigInt qi = 1;
  for (int i = 1; i <= k - 1; ++i) {
    qi *= q;
    g *= Rational(qi - 1, qi);
  }
  return g;
}

Rational theoretical_sipr(const Signature& sig, std::uint64_t q) {
  const int k = sig.blocks();
  if (k < 1) throw InvalidArgument("the singular probability formula needs at least one block");
  if (sig.one > 0) return 1 - gamma(k, q);
  return 1 - gamma(k, q) * (1 - Rational(1, big_pow(q, static_cast<unsigned>(sig.x))));
}

SymbolicMatrix to_symbolic(const MultislantSpec& spec) {
  if (!spec.is_square())
    throw InvalidArgument("multislant is not square (" + std::to_string(spec.rows()) + "x" +
                          std::to_string(spec.cols()) + ")");
  SymbolicMatrix m(spec.rows());
  int offset = 0;
  for (const auto& b : spec.blocks()) {
    for (int r = 0; r < b.rows; ++r)
      for (int c = 0; c < b.cols; ++c) m.at(r, offset + c) = b.entry(r, c);
    offset += b.cols;
  }
  for (const auto& [var, name] : spec.names()) m.set_name(var, name);
  return m;
}

StaircaseGrouping staircase_grouping(int p, int n, int k) {
  if (!(0 < p && p <= n && n <= k - 1))
    throw InvalidArgument("staircase grouping needs 0 < p <= n <= k-1");
  StaircaseGrouping out;
  std::vector<SlantBlock> blocks;
  for (int c = 1; c <= n + 1; ++c) {
    SlantBlock b;
    b.rows = k;
    b.cols = 0;
    for (int col = c; col <= k; col += n + 1) {
      out.column_order.push_back(col - 1);
      ++b.cols;
    }
    // Entry (i, t) of the block is h_{index(i - t)}.
    auto index = [&](int d) { return p + k * n + c - (n + 1) * (d + 1); };
    const int m = b.rows - b.cols;
    for (int d = 0; d <= m; ++d) b.full.push_back(SymEntry::h(index(d)));
    for (int a = 1; a <= b.cols - 1; ++a) b.attic.push_back(SymEntry::h(index(-a)));
    blocks.push_back(std::move(b));
  }
  out.spec = MultislantSpec(std::move(blocks));
  return out;
}

namespace {

SymEntry constant_entry(FieldElement v, const Field& f) {
  return f.in_prime_subfield(v) ? SymEntry::constant(v.index) : SymEntry::field_const(v);
}

void check_block_index(const MultislantSpec& spec, int b) {
  if (b < 0 || b >= static_cast<int>(spec.blocks().size()))
    throw InvalidArgument("block index " + std::to_string(b) + " out of range");
}

}  // namespace

MultislantSpec reduce_type1_pair(const MultislantSpec& spec, int i, int j, const Field& f) {
  check_block_index(spec, i);
  check_block_index(spec, j);
  if (i == j) throw InvalidArgument("reduce_type1_pair needs two distinct blocks");
  if (!spec.is_square()) throw InvalidArgument("reduce_type1_pair needs a square multislant");
  if (!spec.is_strict()) throw InvalidArgument("reduce_type1_pair needs a strict multislant");
  const auto& ai = spec.blocks()[i];
  const auto& aj = spec.blocks()[j];
  if (classify_block(ai, f) != SlantType::One || classify_block(aj, f) != SlantType::One)
    throw InvalidArgument("reduce_type1_pair needs two blocks of type 1");
  if (ai.cols < aj.cols) throw InvalidArgument("block i must have at least as many columns as block j");

  // Aligned by level: the bottom elements of both blocks sit in the same
  // rows, so column t-from-the-right of j pairs with column t of i level by level.
  const FieldElement factor = f.div(aj.bottom().const_value(f), ai.bottom().const_value(f));
  SlantBlock nb = aj;
  const int mj = aj.rows - aj.cols;
  for (int s = 0; s <= mj + aj.cols - 1; ++s) {
    const SymEntry ej = aj.level(s);
    const SymEntry ei = ai.level(s);
    SymEntry result;
    if (s == 0) {
      result = SymEntry::constant(0);
    } else if (ej.is_var()) {
      result = ej;  // ej - factor*ei is again a uniform indeterminate
    } else {
      // Strictness keeps ei constant here.
      result = constant_entry(f.sub(ej.const_value(f), f.mul(factor, ei.const_value(f))), f);
    }
    if (s <= mj)
      nb.full[mj - s] = result;
    else
      nb.attic[s - mj - 1] = result;
  }
  auto blocks = spec.blocks();
  blocks[j] = std::move(nb);
  return MultislantSpec(std::move(blocks), spec.names());
}

MultislantSpec specialize_bottom(const MultislantSpec& spec, int j, FieldElement v, const Field& f) {
  check_block_index(spec, j);
  if (!f.contains(v)) throw InvalidArgument("value is not an element of the field");
  if (classify_block(spec.blocks()[j], f) != SlantType::X)
    throw InvalidArgument("specialize_bottom needs a block of type X");
  auto blocks = spec.blocks();
  blocks[j].full.back() = constant_entry(v, f);
  return MultislantSpec(std::move(blocks), spec.names());
}

MultislantSpec strip_strange_block(const MultislantSpec& spec, const Field& f) {
  if (!spec.is_square()) throw InvalidArgument("strip_strange_block needs a square multislant");
  const Signature sig = signature(spec, f);
  if (sig.blocks() < 1 || sig.x != 0 || sig.one != 1)
    throw InvalidArgument("strip_strange_block needs signature (0,k-1,1), got " + sig.to_string());
  std::vector<SlantBlock> blocks;
  for (const auto& b : spec.blocks()) {
    SlantBlock nb = b;
    if (classify_block(b, f) == SlantType::One) {
      if (b.cols == 1) continue;
      nb.rows -= 1;
      nb.cols -= 1;
      nb.attic.pop_back();
    } else {
      nb.rows -= 1;
      nb.full.pop_back();
    }
    blocks.push_back(std::move(nb));
  }
  return MultislantSpec(std::move(blocks), spec.names());
}

namespace {

nlohmann::json entry_json(const SymEntry& e, const std::map<int, std::string>& names) {
  switch (e.kind()) {
    case SymEntry::Kind::Var: {
      auto it = names.find(e.var_index());
      return it != names.end() ? it->second : "h" + std::to_string(e.var_index());
    }
    case SymEntry::Kind::IntConst:
      return e.int_value();
    case SymEntry::Kind::FieldConst:
      return {{"elem", e.int_value()}};
  }
  return nullptr;
}

}  // namespace

nlohmann::json to_json(const MultislantSpec& spec) {
  auto blocks = nlohmann::json::array();
  for (const auto& b : spec.blocks()) {
    nlohmann::json jb;
    jb["rows"] = b.rows;
    jb["cols"] = b.cols;
    jb["full"] = nlohmann::json::array();
    for (const auto& e : b.full) jb["full"].push_back(entry_json(e, spec.names()));
    jb["attic"] = nlohmann::json::array();
    for (const auto& e : b.attic) jb["attic"].push_back(entry_json(e, spec.names()));
    blocks.push_back(std::move(jb));
  }
  return {{"blocks", std::move(blocks)}};
}

MultislantSpec multislant_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("blocks") || !j["blocks"].is_array())
    throw ParseError("multislant JSON needs a \"blocks\" array");
  std::map<std::string, int> ids;
  std::map<int, std::string> names;
  auto parse_entry = [&](const nlohmann::json& e) -> SymEntry {
    if (e.is_string()) {
      const auto name = e.get<std::string>();
      if (name.empty()) throw ParseError("empty indeterminate name");
      auto [it, inserted] = ids.emplace(name, static_cast<int>(ids.size()) + 1);
      if (inserted) names[it->second] = name;
      return SymEntry::var(it->second);
    }
    if (e.is_number_integer()) return SymEntry::constant(e.get<std::int64_t>());
    if (e.is_object() && e.contains("elem") && e["elem"].is_number_unsigned())
      return SymEntry::field_const({e["elem"].get<std::uint32_t>()});
    throw ParseError("entry must be a name, an integer or {\"elem\": n}: " + e.dump());
  };
  std::vector<SlantBlock> blocks;
  for (const auto& jb : j["blocks"]) {
    if (!jb.is_object()) throw ParseError("block must be an object");
    SlantBlock b;
    try {
      b.rows = jb.at("rows").get<int>();
      b.cols = jb.at("cols").get<int>();
      for (const auto& e : jb.at("full")) b.full.push_back(parse_entry(e));
      if (jb.contains("attic"))
        for (const auto& e : jb.at("attic")) b.attic.push_back(parse_entry(e));
    } catch (const nlohmann::json::exception& ex) {
      throw ParseError(std::string("malformed block: ") + ex.what());
    }
    blocks.push_back(std::move(b));
  }
  return MultislantSpec(std::move(blocks), std::move(names));
}

MultislantSpec random_multislant(const Signature& sig, const Field& f, std::mt19937_64& rng,
                                 const GeneratorOptions& options) {
  const int k = sig.blocks();
  if (k < 1) throw InvalidArgument("random multislant needs at least one block");
  if (k > options.dim_max) throw InvalidArgument("more blocks than the dimension limit");
  const std::int64_t p = f.characteristic();

  std::vector<SlantType> types;
  types.insert(types.end(), sig.x, SlantType::X);
  types.insert(types.end(), sig.zero, SlantType::Zero);
  types.insert(types.end(), sig.one, SlantType::One);

  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::shuffle(types.begin(), types.end(), rng);
    // Height u; widths are a uniform composition of u into k parts.
    const int u = std::uniform_int_distribution<int>(k, options.dim_max)(rng);
    std::vector<int> cuts(u - 1);
    std::iota(cuts.begin(), cuts.end(), 1);
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(k - 1);
    std::sort(cuts.begin(), cuts.end());
    std::vector<int> widths;
    int prev = 0;
    for (int c : cuts) {
      widths.push_back(c - prev);
      prev = c;
    }
    widths.push_back(u - prev);

    int next_var = 1;
    std::vector<SlantBlock> blocks;
    for (int b = 0; b < k; ++b) {
      SlantBlock blk;
      blk.rows = u;
      blk.cols = widths[b];
      const int m = u - blk.cols;
      for (int d = 0; d < m; ++d) blk.full.push_back(SymEntry::var(next_var++));
      switch (types[b]) {
        case SlantType::X:
          blk.full.push_back(SymEntry::var(next_var++));
          break;
        case SlantType::Zero:
          blk.full.push_back(SymEntry::constant(p * std::uniform_int_distribution<int>(-1, 2)(rng)));
          break;
        case SlantType::One: {
          std::int64_t c = 0;
          while (c % p == 0) c = std::uniform_int_distribution<std::int64_t>(-2 * p, 2 * p)(rng);
          blk.full.push_back(SymEntry::constant(c));
          break;
        }
      }
      std::vector<int> attic_vars;
      for (int a = 1; a < blk.cols; ++a) {
        if (!options.strict && coin(rng) < options.attic_var_prob) {
          if (options.reuse_attic_vars && !attic_vars.empty() && coin(rng) < 0.5) {
            blk.attic.push_back(SymEntry::var(attic_vars[rng() % attic_vars.size()]));
          } else {
            attic_vars.push_back(next_var);
            blk.attic.push_back(SymEntry::var(next_var++));
          }
        } else {
          blk.attic.push_back(SymEntry::constant(std::uniform_int_distribution<int>(-3, 5)(rng)));
        }
      }
      blocks.push_back(std::move(blk));
    }
    if (next_var - 1 > options.max_vars) continue;
    std::map<int, std::string> names;
    for (int v = 1; v < next_var; ++v) names[v] = "z" + std::to_string(v);
    return MultislantSpec(std::move(blocks), std::move(names));
  }
  throw InvalidArgument("no multislant with signature " + sig.to_string() + " fits the limits");
}

std::vector<Signature> signature_classes(int max_blocks) {
  std::vector<Signature> out;
  for (int k = 1; k <= max_blocks; ++k)
    for (int x = 0; x <= k; ++x)
      for (int zero = 0; x + zero <= k; ++zero) out.push_back({x, zero, k - x - zero});
  return out;
}

}  // namespace jtdet
