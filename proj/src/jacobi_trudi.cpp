#include "jtdet/jacobi_trudi.hpp"

#include "jtdet/error.hpp"

#include <algorithm>
#include <set>

namespace jtdet {

SymEntry SymEntry::var(int m) {
  if (m < 1) throw InvalidArgument("variable index must be positive, got " + std::to_string(m));
  return SymEntry(Kind::Var, m);
}

std::string SymbolicMatrix::name_of(int var) const {
  auto it = names_.find(var);
  return it != names_.end() ? it->second : "h" + std::to_string(var);
}

std::string SymbolicMatrix::entry_text(const SymEntry& e) const {
  switch (e.kind()) {
    case SymEntry::Kind::Var:
      return name_of(e.var_index());
    case SymEntry::Kind::IntConst:
      return std::to_string(e.int_value());
    case SymEntry::Kind::FieldConst:
      return "@" + std::to_string(e.int_value());
  }
  return {};
}

std::string SymbolicMatrix::to_text() const {
  std::string out;
  for (int i = 0; i < k_; ++i) {
    if (i) out += " / ";
    for (int j = 0; j < k_; ++j) {
      if (j) out += ' ';
      out += entry_text(at(i, j));
    }
  }
  return out;
}

nlohmann::json SymbolicMatrix::to_json() const {
  auto rows = nlohmann::json::array();
  for (int i = 0; i < k_; ++i) {
    auto row = nlohmann::json::array();
    for (int j = 0; j < k_; ++j) {
      const auto& e = at(i, j);
      if (e.is_var())
        row.push_back(name_of(e.var_index()));
      else if (e.kind() == SymEntry::Kind::IntConst)
        row.push_back(e.int_value());
      else
        row.push_back({{"elem", e.int_value()}});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

SymbolicMatrix build_jacobi_trudi(const SkewShape& shape) {
  const int k = shape.rows();
  SymbolicMatrix m(k);
  for (int i = 1; i <= k; ++i)
    for (int j = 1; j <= k; ++j)
      m.at(i - 1, j - 1) = SymEntry::h(shape.outer().part(i) - shape.inner().part(j) - i + j);
  return m;
}

std::vector<int> variables(const SymbolicMatrix& m) {
  std::set<int> vars;
  for (const auto& e : m.entries())
    if (e.is_var()) vars.insert(e.var_index());
  return {vars.begin(), vars.end()};
}

FieldElement determinant_in_place(std::span<FieldElement> a, int k, const Field& f) {
  switch (k) {
    case 0:
      return Field::one();
    case 1:
      return a[0];
    case 2:
      return f.sub(f.mul(a[0], a[3]), f.mul(a[1], a[2]));
    case 3: {
      auto minor = [&](int r0, int c0, int r1, int c1) {
        return f.sub(f.mul(a[r0 * 3 + c0], a[r1 * 3 + c1]), f.mul(a[r0 * 3 + c1], a[r1 * 3 + c0]));
      };
      FieldElement d = f.mul(a[0], minor(1, 1, 2, 2));
      d = f.sub(d, f.mul(a[1], minor(1, 0, 2, 2)));
      return f.add(d, f.mul(a[2], minor(1, 0, 2, 1)));
    }
    default:
      break;
  }
  bool negate = false;
  FieldElement det = Field::one();
  for (int c = 0; c < k; ++c) {
    int pivot = c;
    while (pivot < k && a[pivot * k + c].index == 0) ++pivot;
    if (pivot == k) return Field::zero();
    if (pivot != c) {
      for (int j = c; j < k; ++j) std::swap(a[pivot * k + j], a[c * k + j]);
      negate = !negate;
    }
    const FieldElement pv = a[c * k + c];
    det = f.mul(det, pv);
    const FieldElement pinv = f.inv(pv);
    for (int r = c + 1; r < k; ++r) {
      const FieldElement lead = a[r * k + c];
      if (lead.index == 0) continue;
      const FieldElement factor = f.mul(lead, pinv);
      for (int j = c + 1; j < k; ++j) a[r * k + j] = f.sub(a[r * k + j], f.mul(factor, a[c * k + j]));
    }
  }
  return negate ? f.neg(det) : det;
}

FieldElement eval_det(const SymbolicMatrix& m, const Assignment& assignment, const Field& f) {
  const int k = m.dim();
  std::vector<FieldElement> a(static_cast<std::size_t>(k) * k);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& e = m.entries()[i];
    if (e.is_var()) {
      auto it = assignment.find(e.var_index());
      if (it == assignment.end())
        throw InvalidArgument("assignment has no value for " + m.name_of(e.var_index()));
      a[i] = it->second;
    } else {
      a[i] = e.const_value(f);
    }
  }
  return determinant_in_place(a, k, f);
}

DetEvaluator::DetEvaluator(const SymbolicMatrix& m, const Field& f)
    : field_(f), k_(m.dim()), vars_(jtdet::variables(m)) {
  base_.resize(m.entries().size());
  for (std::size_t i = 0; i < base_.size(); ++i) {
    const auto& e = m.entries()[i];
    if (e.is_var()) {
      auto pos = std::lower_bound(vars_.begin(), vars_.end(), e.var_index()) - vars_.begin();
      slots_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(pos)});
    } else {
      base_[i] = e.const_value(f);
    }
  }
}

FieldElement DetEvaluator::evaluate(std::span<const FieldElement> values,
                                    std::vector<FieldElement>& scratch) const {
  scratch.assign(base_.begin(), base_.end());
  for (const auto& s : slots_) scratch[s.cell] = values[s.var];
  return determinant_in_place(scratch, k_, field_);
}

HessenbergProfile hessenberg_profile(const SymbolicMatrix& m) {
  const int k = m.dim();
  if (k == 0) throw InvalidArgument("hessenberg profile of an empty matrix");
  HessenbergProfile out;
  out.subdiag_ones = true;
  out.lower_zeros = true;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const auto& e = m.at(i, j);
      if (i == j + 1 && !(e.kind() == SymEntry::Kind::IntConst && e.int_value() == 1))
        out.subdiag_ones = false;
      if (i > j + 1 && !(e.kind() == SymEntry::Kind::IntConst && e.int_value() == 0))
        out.lower_zeros = false;
    }
  }
  const auto& corner = m.at(0, k - 1);
  out.top_right_index = corner.is_var() ? corner.var_index() : 0;
  out.top_right_max = corner.is_var();
  for (int i = 0; i < k && out.top_right_max; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i == 0 && j == k - 1) continue;
      const auto& e = m.at(i, j);
      if (e.is_var() && e.var_index() >= out.top_right_index) {
        out.top_right_max = false;
        break;
      }
    }
  }
  return out;
}

int top_right_index(const SkewShape& shape) {
  const int l = shape.rows();
  return shape.outer().part(1) - shape.inner().part(l) - 1 + l;
}

}  // namespace jtdet
