// jtdet: probabilities that Jacobi-Trudi determinants vanish over finite fields.

#include "jtdet/cache.hpp"
#include "jtdet/error.hpp"
#include "jtdet/finite_field.hpp"
#include "jtdet/jacobi_trudi.hpp"
#include "jtdet/multislant.hpp"
#include "jtdet/partitions.hpp"
#include "jtdet/probability.hpp"
#include "jtdet/verify.hpp"
#include "jtdet/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

using namespace jtdet;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

struct Globals {
  std::string budget = "2^28";
  unsigned jobs = 1;
  std::string out;
  std::string cache_dir;
  std::uint64_t seed = 1;
  bool json = false;
};

std::uint64_t parse_u64(const std::string& text, const char* what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + ": '" + text + "'");
  }
  if (used != text.size() || text.front() == '-') throw ParseError(std::string("bad ") + what + ": '" + text + "'");
  return v;
}

// "268435456" or "2^28".
std::uint64_t parse_budget(const std::string& text) {
  const auto caret = text.find('^');
  if (caret == std::string::npos) return std::min(parse_u64(text, "budget"), kMaxBudget);
  const auto base = parse_u64(text.substr(0, caret), "budget");
  const auto exp = parse_u64(text.substr(caret + 1), "budget");
  std::uint64_t v = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (base != 0 && v > kMaxBudget / base) return kMaxBudget;
    v *= base;
  }
  return v;
}

// "2,3", "1..3", "1..3,5".
std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(static_cast<int>(parse_u64(item, what)));
      continue;
    }
    const int lo = static_cast<int>(parse_u64(item.substr(0, dots), what));
    const int hi = static_cast<int>(parse_u64(item.substr(dots + 2), what));
    if (lo > hi) throw ParseError(std::string("empty range for ") + what + ": '" + item + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) throw ParseError(std::string("no values for ") + what);
  return out;
}

Field make_field(std::uint64_t q, const std::string& modulus) {
  if (modulus.empty()) return Field::from_order(q);
  std::vector<std::uint32_t> coeffs;
  for (int c : parse_int_list(modulus, "modulus")) coeffs.push_back(static_cast<std::uint32_t>(c));
  return Field::from_order(q, coeffs);
}

std::string field_key(const Field& f) {
  std::string s = "q=" + std::to_string(f.order()) + ";mod=";
  for (std::size_t i = 0; i < f.modulus().size(); ++i) s += (i ? "," : "") + std::to_string(f.modulus()[i]);
  return s;
}

void emit(const Globals& g, const json& record) {
  if (g.json) std::cout << record.dump() << '\n';
  if (!g.out.empty()) {
    std::ofstream out(g.out, std::ios::app);
    if (!out) throw InvalidArgument("cannot write " + g.out);
    out << record.dump() << '\n';
  }
}

std::unique_ptr<ResultCache> open_cache(const Globals& g) {
  if (auto dir = cache_dir_from(g.cache_dir)) return std::make_unique<ResultCache>(*dir);
  return nullptr;
}

std::string probability_line(FieldElement a, const Rational& p, const std::string& detail) {
  return "P(det=" + std::to_string(a.index) + ") = " + to_fraction_string(p) + " = " + to_decimal_string(p) + " (" +
         detail + ")";
}

// ---- prob / mc ----

struct ProbArgs {
  std::string shape;
  std::uint64_t q = 2;
  std::string modulus;
  std::uint32_t a = 0;
  bool all = false;
  std::uint64_t mc = 0;
};

int run_mc(const Globals& g, const SkewShape& shape, const Field& f, FieldElement a, std::uint64_t samples) {
  const auto m = build_jacobi_trudi(shape);
  auto cache = open_cache(g);
  const std::string key = ResultCache::make_key(field_key(f), "shape=" + shape.to_string(),
                                                "mc;a=" + std::to_string(a.index) + ";n=" + std::to_string(samples) +
                                                    ";seed=" + std::to_string(g.seed));
  McEstimate est;
  if (auto hit = cache ? cache->lookup(key) : std::nullopt) {
    est = mc_estimate_from_json(*hit);
  } else {
    est = monte_carlo(m, f, a, samples, g.seed, g.jobs);
    if (cache) cache->store(key, to_json(est));
  }
  if (!g.json) {
    std::cout << "P(det=" << a.index << ") ~ " << est.hits << "/" << est.samples << " = "
              << to_decimal_string(est.estimate) << " (95% CI [" << est.ci_low << ", " << est.ci_high
              << "], seed=" << est.seed << ")\n";
  }
  emit(g, {{"tool_version", kToolVersion},
           {"q", f.order()},
           {"shape", shape.to_string()},
           {"result", {{"a", a.index}, {"monte_carlo", to_json(est)}}}});
  return kExitOk;
}

int run_prob(const Globals& g, const ProbArgs& args) {
  const SkewShape shape = parse_skew(args.shape);
  const Field f = make_field(args.q, args.modulus);
  const FieldElement a{args.a};
  if (!f.contains(a)) throw InvalidArgument("--a must be below q = " + std::to_string(f.order()));
  if (args.mc > 0) return run_mc(g, shape, f, a, args.mc);

  const auto m = build_jacobi_trudi(shape);
  auto cache = open_cache(g);
  const std::string key = ResultCache::make_key(field_key(f), "shape=" + shape.to_string(), "distribution");
  Distribution d;
  if (auto hit = cache ? cache->lookup(key) : std::nullopt) {
    d = distribution_from_json(*hit);
  } else {
    d = exact_distribution(m, f, parse_budget(g.budget), g.jobs);
    if (cache) cache->store(key, to_json(d));
  }
  const std::string total = big_pow(d.q, d.vars).str();
  auto detail = [&](FieldElement v) {
    return "V=" + std::to_string(d.vars) + ", " + std::to_string(d.counts[v.index]) + "/" + total;
  };
  if (!g.json) {
    if (args.all) {
      for (const auto v : f.elements()) std::cout << probability_line(v, prob_of(d, v), detail(v)) << '\n';
    } else {
      std::cout << probability_line(a, prob_of(d, a), detail(a)) << '\n';
    }
  }
  json result = {{"a", a.index},
                 {"probability", to_fraction_string(prob_of(d, a))},
                 {"decimal", to_decimal_string(prob_of(d, a))},
                 {"V", d.vars},
                 {"count", d.counts[a.index]},
                 {"total", total}};
  if (args.all) result["distribution"] = to_json(d);
  emit(g, {{"tool_version", kToolVersion}, {"q", f.order()}, {"shape", shape.to_string()}, {"result", result}});
  return kExitOk;
}

// ---- classify ----

struct ClassifyArgs {
  std::string file;
  std::uint64_t q = 2;
  std::string modulus;
  bool check = false;
};

int run_classify(const Globals& g, const ClassifyArgs& args) {
  std::ifstream in(args.file);
  if (!in) throw ParseError("cannot open " + args.file);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(args.file + ": " + e.what());
  }
  const MultislantSpec spec = multislant_from_json(j);
  const Field f = make_field(args.q, args.modulus);
  const Signature sig = signature(spec, f);
  const int k = sig.blocks();
  const Rational formula = theoretical_sipr(sig, f.order());
  json result = {{"signature", {sig.x, sig.zero, sig.one}},
                 {"k", k},
                 {"rows", spec.rows()},
                 {"cols", spec.cols()},
                 {"square", spec.is_square()},
                 {"sipr_formula", to_fraction_string(formula)}};
  if (!g.json) {
    std::cout << "signature " << sig.to_string() << " over " << f.describe() << '\n';
    std::cout << "blocks k = " << k << ", size " << spec.rows() << "x" << spec.cols() << '\n';
    std::cout << "SiPr formula: 1 - gamma_" << k << (sig.one > 0 ? "" : " * (1 - q^-" + std::to_string(sig.x) + ")")
              << " = " << to_fraction_string(formula) << " = " << to_decimal_string(formula) << '\n';
    if (!spec.is_square()) std::cout << "note: not square; the formula applies to square multislants\n";
  }
  int code = kExitOk;
  if (args.check) {
    if (!spec.is_square()) throw InvalidArgument("--check needs a square multislant");
    const auto d = exact_distribution(to_symbolic(spec), f, parse_budget(g.budget), g.jobs);
    const Rational exact = prob_of(d, Field::zero());
    const bool ok = exact == formula;
    result["sipr_exact"] = to_fraction_string(exact);
    result["match"] = ok;
    if (!g.json)
      std::cout << "SiPr exact: " << to_fraction_string(exact) << " (V=" << d.vars << ") "
                << (ok ? "match" : "MISMATCH") << '\n';
    if (!ok) code = kExitMismatch;
  }
  emit(g, {{"tool_version", kToolVersion}, {"q", f.order()}, {"spec", to_json(spec)}, {"result", result}});
  return code;
}

// ---- verify ----

struct VerifyArgs {
  std::string suite;
  std::string q = "2,3";
  std::string p;
  std::string n;
  std::string k = "auto";
  int max_boxes = 7;
  int max_size = 6;
  int count = 0;
  int dim_max = 8;
  int max_blocks = 0;
  int max_vars = 0;
  std::uint64_t samples = 1'000'000;
};

using Job = std::function<std::vector<CheckResult>()>;

std::vector<int> k_values(const std::string& spec, int n, bool conjecture) {
  if (spec != "auto") return parse_int_list(spec, "k");
  if (conjecture) return {n + 1, n + 2};
  return {1, 2, 3, 4};
}

int run_verify(const Globals& g, const VerifyArgs& args) {
  static const std::vector<std::string> suites = {"staircase", "block",     "ribbon",    "transpose",
                                                  "multislant", "sanity", "conjecture", "reductions"};
  if (std::find(suites.begin(), suites.end(), args.suite) == suites.end()) {
    std::cerr << "unknown suite '" << args.suite << "'; expected one of:";
    for (const auto& s : suites) std::cerr << ' ' << s;
    std::cerr << '\n';
    return kExitUsage;
  }
  const std::uint64_t budget = parse_budget(g.budget);
  const auto qs = parse_int_list(args.q, "q");
  std::vector<Field> fields;
  for (int q : qs) fields.push_back(Field::from_order(static_cast<std::uint64_t>(q)));

  std::vector<Job> jobs;
  int skipped = 0;
  const bool conjecture = args.suite == "conjecture";
  const auto ps = parse_int_list(args.p.empty() ? (conjecture ? "2..3" : "1..3") : args.p, "p");
  const auto ns = parse_int_list(args.n.empty() ? (conjecture ? "1..2" : "1..3") : args.n, "n");

  auto within = [&](const SkewShape& s, const Field& f) {
    const auto vars = static_cast<unsigned>(variables(build_jacobi_trudi(s)).size());
    if (assignment_count(f.order(), vars) <= budget) return true;
    ++skipped;
    return false;
  };

  if (args.suite == "staircase" || args.suite == "block") {
    const bool block = args.suite == "block";
    for (const auto& f : fields)
      for (int p : ps)
        for (int n : ns)
          for (int k : k_values(args.k, n, false)) {
            const StaircaseCase c{p, n, k};
            const Partition lambda = block ? block_staircase(p, n, k) : shifted_staircase(p, n, k);
            if (!within(SkewShape(lambda), f)) continue;
            jobs.push_back([=] {
              return std::vector{block ? verify_block_staircase(c, f, budget) : verify_staircase(c, f, budget)};
            });
          }
  } else if (args.suite == "ribbon") {
    const auto ribbons = ribbons_up_to(args.max_boxes);
    for (const auto& f : fields)
      for (const auto& r : ribbons)
        if (within(r, f)) jobs.push_back([=] { return std::vector{verify_ribbon(r, f, budget)}; });
  } else if (args.suite == "transpose") {
    const auto shapes = skew_shapes_up_to(args.max_size);
    for (const auto& f : fields)
      for (const auto& s : shapes)
        if (within(s, f) && within(conjugate_skew(s), f))
          jobs.push_back([=] { return verify_transpose(s, f, budget); });
  } else if (args.suite == "multislant") {
    for (const auto& f : fields) {
      const bool binary = f.order() == 2;
      MultislantSweep sweep;
      sweep.per_class = args.count > 0 ? args.count : (binary ? 50 : 20);
      sweep.max_blocks = args.max_blocks > 0 ? args.max_blocks : (binary ? 4 : 3);
      sweep.generator.dim_max = args.dim_max;
      sweep.generator.max_vars = args.max_vars > 0 ? args.max_vars : (binary ? 16 : 10);
      sweep.seed = g.seed;
      sweep.budget = budget;
      for (const auto& sig : signature_classes(sweep.max_blocks))
        jobs.push_back([=] { return verify_multislant_class(sig, sweep, f); });
      jobs.push_back([=] { return std::vector{verify_multislant(three_by_three_example(), f, budget)}; });
    }
  } else if (args.suite == "sanity") {
    for (const auto& f : fields) jobs.push_back([=] { return sanity_fixtures(f, budget); });
  } else if (args.suite == "reductions") {
    const int count = args.count > 0 ? args.count : 10;
    for (const auto& f : fields) jobs.push_back([=] { return verify_reductions(count, f, g.seed); });
  } else {
    ConjectureOptions opts;
    opts.budget = budget;
    opts.mc_samples = args.samples;
    opts.seed = g.seed;
    for (int q : qs)
      for (int p : ps)
        for (int n : ns) {
          if (p <= n) continue;
          for (int k : k_values(args.k, n, true)) {
            const ConjectureCell cell{p, n, k, static_cast<std::uint64_t>(q)};
            jobs.push_back([=] { return conjecture_sweep({cell}, opts); });
          }
        }
  }

  const auto results = run_checks(jobs, g.jobs);
  if (g.json) {
    write_json_lines(std::cout, results);
  } else {
    write_summary(std::cout, results);
    if (skipped > 0) std::cout << "skipped " << skipped << " over-budget cases\n";
    std::cout << "seed " << g.seed << '\n';
  }
  if (!g.out.empty()) {
    std::ofstream out(g.out, std::ios::app);
    if (!out) throw InvalidArgument("cannot write " + g.out);
    write_json_lines(out, results);
  }
  return report_exit_code(results);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Probabilities that Jacobi-Trudi determinants vanish over finite fields"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--budget", g.budget, "Max assignments to enumerate (integer or b^e)")->capture_default_str();
  app.add_option("--jobs", g.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--out", g.out, "Append JSON-lines records to this file");
  app.add_option("--cache-dir", g.cache_dir, "Result cache directory (default: $JTDET_CACHE_DIR, else off)");
  app.add_option("--seed", g.seed, "Seed for every random choice")->capture_default_str();
  app.add_flag("--json", g.json, "Print JSON records instead of text");

  ProbArgs prob;
  auto* prob_cmd = app.add_subcommand("prob", "Exact P(det J = a) for a skew shape");
  prob_cmd->add_option("--shape", prob.shape, "Partition or skew shape, e.g. 6,4,2 or 8,6,4,4/5,3,3")->required();
  prob_cmd->add_option("--q", prob.q, "Field order")->capture_default_str();
  prob_cmd->add_option("--modulus", prob.modulus, "Defining polynomial, coefficients low-to-high, e.g. 1,1,1");
  prob_cmd->add_option("--a", prob.a, "Target value (element index)")->capture_default_str();
  prob_cmd->add_flag("--all", prob.all, "Print the whole distribution");
  prob_cmd->add_option("--mc", prob.mc, "Estimate from this many random samples instead");

  ProbArgs mc;
  auto* mc_cmd = app.add_subcommand("mc", "Monte-Carlo estimate of P(det J = a)");
  mc_cmd->add_option("--shape", mc.shape, "Partition or skew shape")->required();
  mc_cmd->add_option("--q", mc.q, "Field order")->capture_default_str();
  mc_cmd->add_option("--modulus", mc.modulus, "Defining polynomial, coefficients low-to-high");
  mc_cmd->add_option("--a", mc.a, "Target value (element index)")->capture_default_str();
  mc.mc = 100000;
  mc_cmd->add_option("--samples", mc.mc, "Number of samples")->capture_default_str()->check(CLI::PositiveNumber);

  ClassifyArgs classify;
  auto* classify_cmd = app.add_subcommand("classify", "Signature and predicted SiPr of a multislant JSON file");
  classify_cmd->add_option("file", classify.file, "Multislant JSON")->required();
  classify_cmd->add_option("--q", classify.q, "Field order")->capture_default_str();
  classify_cmd->add_option("--modulus", classify.modulus, "Defining polynomial, coefficients low-to-high");
  classify_cmd->add_flag("--check", classify.check, "Also enumerate exactly and compare");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Run a verification suite");
  verify_cmd
      ->add_option("suite", verify.suite,
                   "staircase | block | ribbon | transpose | multislant | sanity | conjecture | reductions")
      ->required();
  verify_cmd->add_option("--q", verify.q, "Field orders, e.g. 2,3")->capture_default_str();
  verify_cmd->add_option("--p", verify.p, "Shift values, e.g. 1..3 (conjecture default 2..3)");
  verify_cmd->add_option("--n", verify.n, "Step values, e.g. 1..3 (conjecture default 1..2)");
  verify_cmd->add_option("--k", verify.k, "Lengths, or auto (1..4; n+1..n+2 for conjecture)")->capture_default_str();
  verify_cmd->add_option("--max-boxes", verify.max_boxes, "Ribbon size limit")->capture_default_str();
  verify_cmd->add_option("--max-size", verify.max_size, "Transpose |lambda| limit")->capture_default_str();
  verify_cmd->add_option("--count", verify.count, "Instances per class (multislant 50 / 20, reductions 10)");
  verify_cmd->add_option("--dim-max", verify.dim_max, "Multislant dimension limit")->capture_default_str();
  verify_cmd->add_option("--max-blocks", verify.max_blocks, "Multislant block limit (default 4 for q=2, else 3)");
  verify_cmd->add_option("--max-vars", verify.max_vars, "Multislant variable limit (default 16 for q=2, else 10)");
  verify_cmd->add_option("--samples", verify.samples, "Monte-Carlo samples for over-budget conjecture cells")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*prob_cmd) return run_prob(g, prob);
    if (*mc_cmd) {
      const SkewShape shape = parse_skew(mc.shape);
      const Field f = make_field(mc.q, mc.modulus);
      if (!f.contains({mc.a})) throw InvalidArgument("--a must be below q = " + std::to_string(f.order()));
      return run_mc(g, shape, f, {mc.a}, mc.mc);
    }
    if (*classify_cmd) return run_classify(g, classify);
    if (*verify_cmd) return run_verify(g, verify);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "; raise --budget or use --mc\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
