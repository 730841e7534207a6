#include "jtdet/probability.hpp"

#include "jtdet/error.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace jtdet {

std::uint64_t Distribution::total() const {
  std::uint64_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

std::uint64_t assignment_count(std::uint32_t q, unsigned vars) {
  std::uint64_t n = 1;
  for (unsigned i = 0; i < vars; ++i) {
    if (n > kMaxBudget / q) return kMaxBudget + 1;
    n *= q;
  }
  return n;
}

namespace {

// Odometer over values[from..end); values[0..from) stay fixed.
void enumerate_suffix(const DetEvaluator& eval, std::vector<FieldElement>& values, std::size_t from,
                      Distribution& out) {
  const std::uint32_t q = eval.field().order();
  std::vector<FieldElement> scratch;
  while (true) {
    ++out.counts[eval.evaluate(values, scratch).index];
    std::size_t pos = values.size();
    while (true) {
      if (pos == from) return;
      --pos;
      if (++values[pos].index < q) break;
      values[pos].index = 0;
    }
  }
}

Distribution empty_distribution(const DetEvaluator& eval) {
  Distribution d;
  d.q = eval.field().order();
  d.vars = static_cast<unsigned>(eval.variables().size());
  d.counts.assign(d.q, 0);
  return d;
}

}  // namespace

Distribution exact_distribution_shard(const DetEvaluator& eval, FieldElement first_value) {
  Distribution d = empty_distribution(eval);
  std::vector<FieldElement> values(eval.variables().size());
  if (values.empty()) {
    std::vector<FieldElement> scratch;
    ++d.counts[eval.evaluate(values, scratch).index];
    return d;
  }
  values[0] = first_value;
  enumerate_suffix(eval, values, 1, d);
  return d;
}

void merge_into(Distribution& into, const Distribution& part) {
  if (into.q != part.q || into.vars != part.vars || into.counts.size() != part.counts.size())
    throw InvalidArgument("merging distributions of different shape");
  for (std::size_t i = 0; i < into.counts.size(); ++i) into.counts[i] += part.counts[i];
}

Distribution exact_distribution(const SymbolicMatrix& m, const Field& f, std::uint64_t budget, unsigned jobs) {
  if (budget > kMaxBudget) budget = kMaxBudget;
  DetEvaluator eval(m, f);
  const auto vars = static_cast<unsigned>(eval.variables().size());
  if (assignment_count(f.order(), vars) > budget) throw BudgetExceeded(f.order(), vars, budget);

  if (vars == 0) return exact_distribution_shard(eval, Field::zero());

  const std::uint32_t shards = f.order();
  jobs = std::max(1u, std::min<unsigned>(jobs, shards));
  if (jobs == 1) {
    Distribution d = empty_distribution(eval);
    for (std::uint32_t s = 0; s < shards; ++s) merge_into(d, exact_distribution_shard(eval, {s}));
    return d;
  }
  std::vector<Distribution> partial(jobs, empty_distribution(eval));
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      for (std::uint32_t s = w; s < shards; s += jobs) merge_into(partial[w], exact_distribution_shard(eval, {s}));
    });
  }
  for (auto& t : workers) t.join();
  Distribution d = empty_distribution(eval);
  for (const auto& p : partial) merge_into(d, p);
  return d;
}

Rational prob_of(const Distribution& d, FieldElement a) {
  if (a.index >= d.counts.size()) throw InvalidArgument("value outside the field");
  return Rational(BigInt(d.counts[a.index]), big_pow(d.q, d.vars));
}

Rational sipr_exact(const MultislantSpec& spec, const Field& f, std::uint64_t budget, unsigned jobs) {
  return prob_of(exact_distribution(to_symbolic(spec), f, budget, jobs), Field::zero());
}

Interval wilson_interval(std::uint64_t hits, std::uint64_t n, double z) {
  if (n == 0) return {0.0, 1.0};
  const double nn = static_cast<double>(n);
  const double phat = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (phat + z2 / (2.0 * nn)) / denom;
  const double half = z / denom * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn));
  Interval out{std::max(0.0, center - half), std::min(1.0, center + half)};
  out.low = std::min(out.low, phat);
  out.high = std::max(out.high, phat);
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace

void CounterRng::draw(std::uint64_t sample, std::uint32_t q, std::span<FieldElement> out) const {
  std::uint64_t state = splitmix64(seed_ ^ splitmix64(sample));
  // Reject the top partial copy of [0, q) so the values are exactly uniform.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % q + 1) % q;
  for (auto& v : out) {
    std::uint64_t x;
    do {
      state += 0x9E3779B97F4A7C15ull;
      x = splitmix64(state);
    } while (x > limit);
    v.index = static_cast<std::uint32_t>(x % q);
  }
}

McEstimate monte_carlo(const SymbolicMatrix& m, const Field& f, FieldElement a, std::uint64_t samples,
                       std::uint64_t seed, unsigned jobs) {
  if (samples < 1) throw InvalidArgument("monte carlo needs at least one sample");
  if (!f.contains(a)) throw InvalidArgument("target value outside the field");
  DetEvaluator eval(m, f);
  const CounterRng rng(seed);
  const std::size_t nvars = eval.variables().size();

  auto run_range = [&](std::uint64_t begin, std::uint64_t end) {
    std::vector<FieldElement> values(nvars), scratch;
    std::uint64_t hits = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      rng.draw(i, f.order(), values);
      if (eval.evaluate(values, scratch) == a) ++hits;
    }
    return hits;
  };

  std::uint64_t hits = 0;
  jobs = std::max(1u, jobs);
  if (jobs == 1 || samples < jobs) {
    hits = run_range(0, samples);
  } else {
    std::vector<std::uint64_t> partial(jobs, 0);
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      const std::uint64_t begin = samples * w / jobs, end = samples * (w + 1) / jobs;
      workers.emplace_back([&, w, begin, end] { partial[w] = run_range(begin, end); });
    }
    for (auto& t : workers) t.join();
    for (auto h : partial) hits += h;
  }

  McEstimate out;
  out.samples = samples;
  out.hits = hits;
  out.estimate = Rational(BigInt(hits), BigInt(samples));
  const Interval ci = wilson_interval(hits, samples, kZ95);
  out.ci_low = ci.low;
  out.ci_high = ci.high;
  out.seed = seed;
  return out;
}

nlohmann::json to_json(const Distribution& d) {
  return {{"q", d.q}, {"V", d.vars}, {"counts", d.counts}};
}

Distribution distribution_from_json(const nlohmann::json& j) {
  try {
    Distribution d;
    d.q = j.at("q").get<std::uint32_t>();
    d.vars = j.at("V").get<unsigned>();
    d.counts = j.at("counts").get<std::vector<std::uint64_t>>();
    if (d.counts.size() != d.q) throw ParseError("distribution needs one count per field element");
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed distribution: ") + e.what());
  }
}

nlohmann::json to_json(const McEstimate& e) {
  return {{"samples", e.samples}, {"hits", e.hits},     {"estimate", to_fraction_string(e.estimate)},
          {"ci_low", e.ci_low},   {"ci_high", e.ci_high}, {"seed", e.seed}};
}

McEstimate mc_estimate_from_json(const nlohmann::json& j) {
  try {
    McEstimate e;
    e.samples = j.at("samples").get<std::uint64_t>();
    e.hits = j.at("hits").get<std::uint64_t>();
    e.estimate = parse_rational(j.at("estimate").get<std::string>());
    e.ci_low = j.at("ci_low").get<double>();
    e.ci_high = j.at("ci_high").get<double>();
    e.seed = j.at("seed").get<std::uint64_t>();
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed estimate: ") + ex.what());
  }
}

}  // namespace jtdet
