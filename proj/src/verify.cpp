#include "jtdet/verify.hpp"

#include "jtdet/error.hpp"
#include "jtdet/jacobi_trudi.hpp"
#include "jtdet/version.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <iomanip>
#include <map>
#include <mutex>
#include <thread>

namespace jtdet {

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Match:
      return "match";
    case CheckStatus::Mismatch:
      return "mismatch";
    case CheckStatus::Estimated:
      return "estimated";
  }
  return "?";
}

const char* to_string(StaircaseRegime r) {
  switch (r) {
    case StaircaseRegime::SmallK:
      return "small_k";
    case StaircaseRegime::Inward:
      return "inward";
    case StaircaseRegime::OutwardConjecture:
      return "outward_conjecture";
  }
  return "?";
}

nlohmann::json CheckResult::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["params"] = params;
  j["expected"] = to_fraction_string(expected);
  j["conjectural"] = conjectural;
  j["observed"] = to_fraction_string(observed);
  j["status"] = jtdet::to_string(status);
  j["match"] = match();
  j["evals"] = evals;
  j["elapsed_s"] = elapsed_seconds;
  if (estimate) {
    j["estimate"] = jtdet::to_json(*estimate);
    j["expected_in_3sigma_band"] = expected_in_band;
  }
  if (!note.empty()) j["note"] = note;
  return j;
}

StaircaseRegime StaircaseCase::regime() const {
  if (k < n + 1) return StaircaseRegime::SmallK;
  return p <= n ? StaircaseRegime::Inward : StaircaseRegime::OutwardConjecture;
}

namespace {

// prod_{i=1}^{m} (1 - q^-i)
Rational survival(int m, std::uint64_t q) { return gamma(m + 1, q); }

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::uint64_t assignments_of(const Distribution& d) { return d.total(); }

void check_case(const StaircaseCase& c) {
  if (c.p < 1 || c.n < 1 || c.k < 1) throw InvalidArgument("staircase checks need p, n, k >= 1");
}

void settle(CheckResult& r) { r.status = r.expected == r.observed ? CheckStatus::Match : CheckStatus::Mismatch; }

CheckResult staircase_check(const std::string& name, const Partition& lambda, const StaircaseCase& c,
                            const Field& f, std::uint64_t budget) {
  const auto start = Clock::now();
  CheckResult r;
  r.name = name;
  r.params = {{"p", c.p}, {"n", c.n}, {"k", c.k}, {"q", f.order()}, {"shape", lambda.to_string()},
              {"regime", to_string(c.regime())}};
  r.expected = staircase_formula(c, f.order());
  r.conjectural = c.regime() == StaircaseRegime::OutwardConjecture;
  const auto d = exact_distribution(build_jacobi_trudi(SkewShape(lambda)), f, budget);
  r.observed = prob_of(d, Field::zero());
  r.evals = assignments_of(d);
  settle(r);
  r.elapsed_seconds = seconds_since(start);
  return r;
}

}  // namespace

Rational staircase_formula(const StaircaseCase& c, std::uint64_t q) {
  check_case(c);
  switch (c.regime()) {
    case StaircaseRegime::SmallK:
      return 1 - survival(c.p <= c.k - 1 ? c.k - 1 : c.k, q);
    case StaircaseRegime::Inward:
      return 1 - survival(c.n, q);
    case StaircaseRegime::OutwardConjecture:
      return 1 - survival(c.n + 1, q);
  }
  return 0;
}

Rational singular_upper_bound(int k, std::uint64_t q) { return 1 - survival(k, q); }

CheckResult verify_staircase(const StaircaseCase& c, const Field& f, std::uint64_t budget) {
  check_case(c);
  return staircase_check("staircase", shifted_staircase(c.p, c.n, c.k), c, f, budget);
}

CheckResult verify_block_staircase(const StaircaseCase& c, const Field& f, std::uint64_t budget) {
  check_case(c);
  return staircase_check("block_staircase", block_staircase(c.p, c.n, c.k), c, f, budget);
}

std::vector<CheckResult> verify_transpose(const SkewShape& shape, const Field& f, std::uint64_t budget) {
  const auto start = Clock::now();
  const SkewShape conj = conjugate_skew(shape);
  const auto d = exact_distribution(build_jacobi_trudi(shape), f, budget);
  const auto dt = exact_distribution(build_jacobi_trudi(conj), f, budget);
  const double elapsed = seconds_since(start) / f.order();
  std::vector<CheckResult> out;
  for (const auto a : f.elements()) {
    CheckResult r;
    r.name = "transpose";
    r.params = {{"shape", shape.to_string()}, {"conjugate", conj.to_string()}, {"q", f.order()}, {"a", a.index}};
    r.expected = prob_of(d, a);
    r.observed = prob_of(dt, a);
    r.evals = assignments_of(d) + assignments_of(dt);
    settle(r);
    r.elapsed_seconds = elapsed;
    out.push_back(std::move(r));
  }
  return out;
}

CheckResult verify_ribbon(const SkewShape& shape, const Field& f, std::uint64_t budget) {
  if (!is_ribbon(shape)) throw InvalidArgument(shape.to_string() + " is not a ribbon");
  const auto start = Clock::now();
  const auto d = exact_distribution(build_jacobi_trudi(shape), f, budget);
  CheckResult r;
  r.name = "ribbon";
  r.params = {{"shape", shape.to_string()}, {"q", f.order()}, {"V", d.vars}};
  r.expected = Rational(1, f.order());
  r.observed = prob_of(d, Field::zero());
  for (const auto a : f.elements()) {
    const Rational pa = prob_of(d, a);
    if (abs(pa - r.expected) > abs(r.observed - r.expected)) r.observed = pa;
  }
  r.evals = assignments_of(d);
  settle(r);
  if (r.status == CheckStatus::Mismatch) r.note = "counts " + jtdet::to_json(d)["counts"].dump();
  r.elapsed_seconds = seconds_since(start);
  return r;
}

CheckResult verify_multislant(const MultislantSpec& spec, const Field& f, std::uint64_t budget) {
  const auto start = Clock::now();
  const Signature sig = signature(spec, f);
  CheckResult r;
  r.name = "multislant";
  r.params = {{"q", f.order()}, {"signature", sig.to_string()}, {"spec", to_json(spec)}};
  r.expected = theoretical_sipr(sig, f.order());
  const auto d = exact_distribution(to_symbolic(spec), f, budget);
  r.observed = prob_of(d, Field::zero());
  r.evals = assignments_of(d);
  settle(r);
  r.elapsed_seconds = seconds_since(start);
  return r;
}

std::vector<CheckResult> verify_multislant_class(const Signature& sig, const MultislantSweep& sweep, const Field& f) {
  std::seed_seq seq{sweep.seed, static_cast<std::uint64_t>(sig.x), static_cast<std::uint64_t>(sig.zero),
                    static_cast<std::uint64_t>(sig.one), static_cast<std::uint64_t>(f.order())};
  std::mt19937_64 rng(seq);
  std::vector<CheckResult> out;
  for (int i = 0; i < sweep.per_class; ++i) {
    auto r = verify_multislant(random_multislant(sig, f, rng, sweep.generator), f, sweep.budget);
    r.params["instance"] = i;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckResult> verify_multislant_random(const MultislantSweep& sweep, const Field& f) {
  std::vector<CheckResult> out;
  for (const auto& sig : signature_classes(sweep.max_blocks)) {
    auto part = verify_multislant_class(sig, sweep, f);
    std::move(part.begin(), part.end(), std::back_inserter(out));
  }
  return out;
}

MultislantSpec three_by_three_example() {
  // Variables: a=1, b=2, x=3, y=4.
  SlantBlock left{3, 2, {SymEntry::var(2), SymEntry::var(1)}, {SymEntry::constant(3)}};
  SlantBlock right{3, 1, {SymEntry::var(4), SymEntry::var(3), SymEntry::constant(1)}, {}};
  return MultislantSpec({left, right}, {{1, "a"}, {2, "b"}, {3, "x"}, {4, "y"}});
}

namespace {

Rational sipr(const MultislantSpec& spec, const Field& f, std::uint64_t budget, std::uint64_t& evals) {
  const auto d = exact_distribution(to_symbolic(spec), f, budget);
  evals += assignments_of(d);
  return prob_of(d, Field::zero());
}

Signature random_class(std::mt19937_64& rng, int min_blocks, int max_blocks, int min_x, int min_one) {
  std::vector<Signature> pool;
  for (const auto& s : signature_classes(max_blocks))
    if (s.blocks() >= min_blocks && s.x >= min_x && s.one >= min_one) pool.push_back(s);
  return pool[rng() % pool.size()];
}

int first_of_type(const MultislantSpec& spec, SlantType t, const Field& f) {
  for (std::size_t b = 0; b < spec.blocks().size(); ++b)
    if (classify_block(spec.blocks()[b], f) == t) return static_cast<int>(b);
  return -1;
}

}  // namespace

std::vector<CheckResult> verify_reductions(int count, const Field& f, std::uint64_t seed,
                                           const GeneratorOptions& options, std::uint64_t budget) {
  std::vector<CheckResult> out;
  std::seed_seq seq{seed, static_cast<std::uint64_t>(f.order())};
  std::mt19937_64 rng(seq);
  const int max_blocks = std::min(3, options.dim_max);

  for (int i = 0; i < count; ++i) {
    const auto start = Clock::now();
    const auto m = random_multislant(random_class(rng, 1, max_blocks, 1, 0), f, rng, options);
    const int j = first_of_type(m, SlantType::X, f);
    CheckResult r;
    r.name = "reduction.average_bottom";
    r.params = {{"q", f.order()}, {"instance", i}, {"block", j}, {"spec", to_json(m)}};
    r.expected = sipr(m, f, budget, r.evals);
    Rational sum = 0;
    for (const auto v : f.elements()) sum += sipr(specialize_bottom(m, j, v, f), f, budget, r.evals);
    r.observed = sum / f.order();
    settle(r);
    r.elapsed_seconds = seconds_since(start);
    out.push_back(std::move(r));
  }

  GeneratorOptions strict = options;
  strict.strict = true;
  for (int i = 0; i < count; ++i) {
    const auto start = Clock::now();
    const auto m = random_multislant(random_class(rng, 2, max_blocks, 0, 2), f, rng, strict);
    std::vector<int> ones;
    for (std::size_t b = 0; b < m.blocks().size(); ++b)
      if (classify_block(m.blocks()[b], f) == SlantType::One) ones.push_back(static_cast<int>(b));
    int bi = ones[0], bj = ones[1];
    if (m.blocks()[bi].cols < m.blocks()[bj].cols) std::swap(bi, bj);
    const auto reduced = reduce_type1_pair(m, bi, bj, f);
    CheckResult r;
    r.name = "reduction.type1_pair";
    r.params = {{"q", f.order()}, {"instance", i}, {"i", bi}, {"j", bj}, {"spec", to_json(m)}};
    r.expected = sipr(m, f, budget, r.evals);
    r.observed = sipr(reduced, f, budget, r.evals);
    settle(r);
    if (classify_block(reduced.blocks()[bj], f) != SlantType::Zero) {
      r.status = CheckStatus::Mismatch;
      r.note = "reduced block is not of type 0";
    }
    r.elapsed_seconds = seconds_since(start);
    out.push_back(std::move(r));
  }

  for (int i = 0; i < count; ++i) {
    const auto start = Clock::now();
    const int k = std::uniform_int_distribution<int>(1, max_blocks)(rng);
    const auto m = random_multislant({0, k - 1, 1}, f, rng, options);
    const auto stripped = strip_strange_block(m, f);
    CheckResult r;
    r.name = "reduction.strip_strange";
    r.params = {{"q", f.order()}, {"instance", i}, {"spec", to_json(m)}};
    r.expected = sipr(m, f, budget, r.evals);
    r.observed = stripped.blocks().empty() ? Rational(0) : sipr(stripped, f, budget, r.evals);
    settle(r);
    const int strange = first_of_type(m, SlantType::One, f);
    const Signature want{k - 1, 0, m.blocks()[strange].cols > 1 ? 1 : 0};
    const Signature got = signature(stripped, f);
    if (got != want) {
      r.status = CheckStatus::Mismatch;
      r.note = "stripped signature " + got.to_string() + ", expected " + want.to_string();
    }
    r.elapsed_seconds = seconds_since(start);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<CheckResult> sanity_fixtures(const Field& f, std::uint64_t budget) {
  static const char* const shapes[] = {"2,2", "3,3,3", "2,1", "3,2,1", "4,1", "3,1,1"};
  std::vector<CheckResult> out;
  for (const char* text : shapes) {
    const auto start = Clock::now();
    const SkewShape shape = parse_skew(text);
    const auto d = exact_distribution(build_jacobi_trudi(shape), f, budget);
    CheckResult r;
    r.name = "sanity";
    r.params = {{"shape", shape.to_string()}, {"q", f.order()}};
    r.expected = Rational(1, f.order());
    r.observed = prob_of(d, Field::zero());
    r.evals = assignments_of(d);
    settle(r);
    r.elapsed_seconds = seconds_since(start);
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

CheckResult conjecture_check(const std::string& name, const Partition& lambda, const ConjectureCell& cell,
                             const ConjectureOptions& options) {
  const Field f = Field::from_order(cell.q);
  const StaircaseCase c{cell.p, cell.n, cell.k};
  try {
    auto r = staircase_check(name, lambda, c, f, options.budget);
    r.conjectural = true;
    return r;
  } catch (const BudgetExceeded&) {
  }
  const auto start = Clock::now();
  CheckResult r;
  r.name = name;
  r.params = {{"p", c.p},      {"n", c.n}, {"k", c.k}, {"q", f.order()}, {"shape", lambda.to_string()},
              {"regime", to_string(c.regime())}};
  r.expected = staircase_formula(c, f.order());
  r.conjectural = true;
  const auto est = monte_carlo(build_jacobi_trudi(SkewShape(lambda)), f, Field::zero(), options.mc_samples,
                               options.seed, options.jobs);
  r.observed = est.estimate;
  r.evals = est.samples;
  r.status = CheckStatus::Estimated;
  const Interval band = wilson_interval(est.hits, est.samples, 3.0);
  const double e = to_double(r.expected);
  r.expected_in_band = band.low <= e && e <= band.high;
  r.estimate = est;
  r.note = "over budget; Monte-Carlo estimate";
  r.elapsed_seconds = seconds_since(start);
  return r;
}

}  // namespace

std::vector<CheckResult> conjecture_sweep(const std::vector<ConjectureCell>& cells, const ConjectureOptions& options) {
  std::vector<CheckResult> out;
  for (const auto& cell : cells) {
    if (cell.p < 1 || cell.n < 1 || cell.k < 1) throw InvalidArgument("conjecture cells need p, n, k >= 1");
    out.push_back(conjecture_check("conjecture.staircase", shifted_staircase(cell.p, cell.n, cell.k), cell, options));
    out.push_back(conjecture_check("conjecture.block_staircase", block_staircase(cell.p, cell.n, cell.k), cell,
                                   options));
  }
  return out;
}

void sort_results(std::vector<CheckResult>& results) {
  std::stable_sort(results.begin(), results.end(), [](const CheckResult& a, const CheckResult& b) {
    if (a.name != b.name) return a.name < b.name;
    return a.params.dump() < b.params.dump();
  });
}

std::vector<CheckResult> run_checks(const std::vector<std::function<std::vector<CheckResult>()>>& jobs,
                                    unsigned threads) {
  std::vector<std::vector<CheckResult>> parts(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= jobs.size()) return;
      try {
        parts[i] = jobs[i]();
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  std::vector<CheckResult> out;
  for (auto& p : parts) std::move(p.begin(), p.end(), std::back_inserter(out));
  sort_results(out);
  return out;
}

void write_json_lines(std::ostream& os, const std::vector<CheckResult>& results) {
  for (const auto& r : results) {
    nlohmann::json rec;
    rec["tool_version"] = kToolVersion;
    rec["q"] = r.params.value("q", nlohmann::json());
    if (r.params.contains("shape"))
      rec["shape"] = r.params["shape"];
    else
      rec["spec"] = r.params.value("spec", nlohmann::json());
    rec["result"] = r.to_json();
    os << rec.dump() << '\n';
  }
}

void write_summary(std::ostream& os, const std::vector<CheckResult>& results) {
  struct Row {
    int total = 0, match = 0, mismatch = 0, estimated = 0, conjectural = 0;
    double seconds = 0.0;
  };
  std::map<std::string, Row> rows;
  for (const auto& r : results) {
    auto& row = rows[r.name];
    ++row.total;
    if (r.conjectural) ++row.conjectural;
    switch (r.status) {
      case CheckStatus::Match:
        ++row.match;
        break;
      case CheckStatus::Mismatch:
        ++row.mismatch;
        break;
      case CheckStatus::Estimated:
        ++row.estimated;
        break;
    }
    row.seconds += r.elapsed_seconds;
  }
  os << std::left << std::setw(28) << "check" << std::right << std::setw(7) << "total" << std::setw(7) << "match"
     << std::setw(10) << "mismatch" << std::setw(11) << "estimated" << std::setw(13) << "conjectural"
     << std::setw(10) << "seconds" << '\n';
  for (const auto& [name, row] : rows) {
    os << std::left << std::setw(28) << name << std::right << std::setw(7) << row.total << std::setw(7) << row.match
       << std::setw(10) << row.mismatch << std::setw(11) << row.estimated << std::setw(13) << row.conjectural
       << std::setw(10) << std::fixed << std::setprecision(2) << row.seconds << '\n';
  }
  os.unsetf(std::ios::fixed);
  for (const auto& r : results) {
    if (r.status == CheckStatus::Match) continue;
    os << (r.conjectural ? "  conjecture " : "  FAILED ") << to_string(r.status) << ": " << r.name << ' '
       << r.params.value("shape", r.params.value("signature", std::string())) << " q=" << r.params.value("q", 0)
       << " expected " << to_fraction_string(r.expected) << " observed " << to_fraction_string(r.observed);
    if (r.estimate)
      os << " (95% CI [" << r.estimate->ci_low << ", " << r.estimate->ci_high << "], "
         << (r.expected_in_band ? "inside" : "outside") << " 3-sigma band)";
    os << '\n';
  }
}

int report_exit_code(const std::vector<CheckResult>& results) {
  return std::any_of(results.begin(), results.end(), [](const CheckResult& r) { return r.failed(); }) ? 1 : 0;
}

}  // namespace jtdet
