// Copyright 2026 The pbwelfare Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pbwelfare/generators.h"

#include <limits>
#include <random>
#include <utility>

#include <nlohmann/json.hpp>
#include "pbwelfare/guarantees.h"

namespace pbwelfare {

namespace {

const std::map<ConstructionKind, std::string>& KindNames() {
  static const auto* names = new std::map<ConstructionKind, std::string>{
      {ConstructionKind::kBoundedSatWorstCase, "bounded_sat_worstcase"},
      {ConstructionKind::kVanishingSatWorstCase, "vanishing_sat_worstcase"},
      {ConstructionKind::kNonDnsWorstCase, "non_dns_worstcase"},
      {ConstructionKind::kGreedyTight, "greedy_tight"},
      {ConstructionKind::kEjr1Tight, "ejr1_tight"},
      {ConstructionKind::kMismatchTight, "mismatch_tight"},
      {ConstructionKind::kMultiwinner, "multiwinner"},
      {ConstructionKind::kRandom, "random"},
  };
  return *names;
}

// Parameter access with construction-specific error messages.
class Params {
 public:
  Params(const ConstructionSpec& spec)
      : name_(ConstructionName(spec.kind)), params_(spec.params) {}

  Rational Get(const std::string& key, std::optional<Rational> fallback =
                                           std::nullopt) const {
    auto it = params_.find(key);
    if (it != params_.end()) return it->second;
    if (fallback) return *fallback;
    Fail("missing parameter '" + key + "'");
  }

  bool Has(const std::string& key) const { return params_.count(key) > 0; }

  long GetInt(const std::string& key,
              std::optional<long> fallback = std::nullopt) const {
    const Rational value =
        Get(key, fallback ? std::optional<Rational>(Rational(*fallback))
                          : std::nullopt);
    if (value.get_den() != 1 || !value.get_num().fits_slong_p()) {
      Fail("parameter '" + key + "' must be an integer, got " +
           ToString(value));
    }
    return value.get_num().get_si();
  }

  void Require(bool condition, const std::string& what) const {
    if (!condition) Fail("constraint violated: " + what);
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw ValidationError(name_ + ": " + message);
  }

 private:
  std::string name_;
  const std::map<std::string, Rational>& params_;
};

std::string Id(long k) { return "p" + std::to_string(k); }

std::vector<std::string> Ids(long first, long last) {
  std::vector<std::string> ids;
  for (long k = first; k <= last; ++k) ids.push_back(Id(k));
  return ids;
}

// Uniform integer in [lo, hi] from raw engine output, so sequences are
// identical across standard library implementations.
std::int64_t UniformInt(std::mt19937_64& engine, std::int64_t lo,
                        std::int64_t hi) {
  const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t draw;
  do {
    draw = engine();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % range);
}

GeneratedConstruction Assemble(RawInstance raw, SatisfactionFunction fn,
                               SatisfactionFunction rule_fn,
                               ExpectedRecord expected) {
  return GeneratedConstruction{MakeInstance(std::move(raw)), std::move(fn),
                               std::move(rule_fn), std::move(expected)};
}

// Two projects: p1 (cost b) for everyone but voter 1, and a cheap p2 for
// voter 1 alone whose value beats p1's. Cardinality satisfaction.
GeneratedConstruction BoundedSatWorstCase(const Params& params) {
  const long n = params.GetInt("n");
  const Rational b = params.Get("b", Rational(100));
  const Rational eps = params.Get("eps", Rational(9, 10));
  const SatisfactionFunction fn = SatisfactionFunction::Cardinality();
  const Rational mu_p1 = fn.Value(b);
  params.Require(n >= 3, "n >= 3");
  params.Require(sgn(b) > 0, "b > 0");
  params.Require(sgn(eps) > 0 && eps < mu_p1, "0 < eps < mu(p1) = 1");

  RawInstance raw;
  raw.budget = b;
  raw.projects = {{"p1", b}, {"p2", Rational(eps * b / (n * mu_p1))}};
  raw.approvals.assign(n, {"p1"});
  raw.approvals[0] = {"p2"};

  ExpectedRecord expected;
  expected.rule = "mes-greedy";
  expected.rule_selection = {"p2"};
  expected.optimum = {"p1"};
  expected.ratio = Rational(1, n - 1);
  expected.ratio_upper = Rational(1, n - 1);
  expected.notes["greedy_selection"] = "p2";
  return Assemble(std::move(raw), fn, fn, std::move(expected));
}

// Cost satisfaction: p1 (cost b) for voter 1, tiny p2 for everybody else.
GeneratedConstruction VanishingSatWorstCase(const Params& params) {
  const long n = params.GetInt("n", 10);
  const Rational b = params.Get("b", Rational(100));
  const Rational delta = params.Get("delta", Rational(1, 1000));
  params.Require(n >= 3, "n >= 3");
  params.Require(sgn(b) > 0, "b > 0");
  params.Require(sgn(delta) > 0 && delta <= 1, "0 < delta <= 1");
  const Rational c2 =
      params.Get("c2", Rational(b * delta / (2 * Rational(n - 1))));
  params.Require(sgn(c2) > 0 && c2 <= b / Rational(n - 1),
                 "0 < c2 <= b/(n-1)");
  params.Require(c2 < b * delta / Rational(n - 1), "c2 < b*delta/(n-1)");

  RawInstance raw;
  raw.budget = b;
  raw.projects = {{"p1", b}, {"p2", c2}};
  raw.approvals.assign(n, {"p2"});
  raw.approvals[0] = {"p1"};

  ExpectedRecord expected;
  expected.rule = "mes-greedy";
  expected.rule_selection = {"p2"};
  expected.optimum = {"p1"};
  expected.ratio = Rational(n - 1) * c2 / b;
  expected.ratio_strict_upper = delta;
  expected.notes["greedy_selection"] = "p2";
  const SatisfactionFunction fn = SatisfactionFunction::Cost();
  return Assemble(std::move(raw), fn, fn, std::move(expected));
}

// k cheap projects for N \ {1} with tiny satisfaction and one expensive
// project for voter 1 with satisfaction n^2 (not DNS).
GeneratedConstruction NonDnsWorstCase(const Params& params) {
  const long n = params.GetInt("n");
  const Rational b = params.Get("b", Rational(100));
  const long k1 = params.GetInt("k1");
  const long k2 = params.GetInt("k2");
  const Rational eps = params.Get("eps", Rational(1, 1000));
  params.Require(1 <= k1 && k1 < k2, "1 <= k1 < k2");
  params.Require(sgn(b) > 0, "b > 0");
  params.Require(sgn(eps) > 0, "eps > 0");
  const Rational c_max = b / k1;
  const Rational c_min = b / k2;
  params.Require(n >= 2 && Rational(n) >= b / (c_max - c_min),
                 "n >= b/(c_max - c_min)");
  const Integer k_int = Floor(b * (n - 1) / (Rational(n) * c_min));
  params.Require(k_int >= 1 && k_int.fits_slong_p(),
                 "at least one cheap project");
  const long k = k_int.get_si();
  // The cheap projects alone must exhaust the budget...
  params.Require(k * c_min > b - c_max, "c(P_M) > b - c_max");
  // ...and their welfare (n-1) k eps must stay below n^2 eps.
  params.Require((n - 1) * k <= n * n, "(n-1) k <= n^2");

  RawInstance raw;
  raw.budget = b;
  for (long j = 1; j <= k; ++j) raw.projects.push_back({Id(j), c_min});
  raw.projects.push_back({Id(k + 1), c_max});
  raw.approvals.assign(n, Ids(1, k));
  raw.approvals[0] = {Id(k + 1)};

  const SatisfactionFunction fn = SatisfactionFunction::Table(
      {{c_min, eps}, {c_max, Rational(n * n)}});
  ExpectedRecord expected;
  expected.rule = "mes-greedy";
  expected.rule_selection = Ids(1, k);
  expected.ratio_upper = eps;
  expected.notes["cheap_projects"] = std::to_string(k);
  return Assemble(std::move(raw), fn, fn, std::move(expected));
}

// x-1 slightly expensive projects approved by all beat x cheaper ones that
// voter 1 does not approve.
GeneratedConstruction GreedyTight(const Params& params) {
  const long x = params.GetInt("x");
  const long n = params.GetInt("n");
  const Rational eps = params.Get("eps");
  const Rational b = params.Get("b", Rational(100));
  params.Require(x >= 2, "x >= 2");
  params.Require(n >= 2, "n >= 2");
  params.Require(sgn(b) > 0, "b > 0");
  params.Require(sgn(eps) > 0 && eps <= Rational(1, x - 1),
                 "0 < eps <= 1/(x-1)");
  // Keeps the x cheap projects optimal against every mixed selection.
  params.Require((x - 1) * (eps * n + 1) < Rational(n - 1),
                 "(x-1)(eps n + 1) < n - 1");
  const Rational big = (1 + eps) * b / x;
  const Rational small = b / x;

  RawInstance raw;
  raw.budget = b;
  for (long j = 1; j < x; ++j) raw.projects.push_back({Id(j), big});
  for (long j = x; j < 2 * x; ++j) raw.projects.push_back({Id(j), small});
  raw.approvals.assign(n, Ids(1, 2 * x - 1));
  raw.approvals[0] = Ids(1, x - 1);

  ExpectedRecord expected;
  expected.rule = "greedy";
  expected.rule_selection = Ids(1, x - 1);
  expected.optimum = Ids(x, 2 * x - 1);
  expected.optimum_welfare = b * (n - 1);
  expected.ratio = Rational(n, n - 1) * (1 + eps - big / b);
  const SatisfactionFunction fn = SatisfactionFunction::Cost();
  return Assemble(std::move(raw), fn, fn, std::move(expected));
}

// n = k2 voters; k1 projects of cost b/k1 shared by the first floor(sqrt(n))
// voters, and a singleton project of cost b/k2 for each other voter.
GeneratedConstruction Ejr1Tight(const Params& params) {
  const Rational b = params.Get("b", Rational(100));
  const long k1 = params.GetInt("k1");
  const long k2 = params.GetInt("k2");
  params.Require(sgn(b) > 0, "b > 0");
  params.Require(1 <= k1 && k1 <= k2, "1 <= k1 <= k2");
  params.Require(k2 >= 4, "k2 >= 4");
  const long n = k2;
  Integer root_int;
  mpz_sqrt(root_int.get_mpz_t(), Integer(n).get_mpz_t());
  const long root = root_int.get_si();
  const Rational c_max = b / k1;
  const Rational c_min = b / k2;

  RawInstance raw;
  raw.budget = b;
  for (long j = 1; j <= k1; ++j) raw.projects.push_back({Id(j), c_max});
  raw.approvals.assign(n, {});
  for (long voter = 0; voter < root; ++voter) {
    raw.approvals[voter] = Ids(1, k1);
  }
  long next = k1 + 1;
  for (long voter = root; voter < n; ++voter, ++next) {
    raw.projects.push_back({Id(next), c_min});
    raw.approvals[voter] = {Id(next)};
  }

  const GuaranteeReport bounds = ComputeGuaranteeBounds(b, c_min, c_max);
  ExpectedRecord expected;
  expected.rule = "mes-greedy";
  expected.optimum = Ids(1, k1);
  expected.optimum_welfare = root * b;
  expected.ratio_upper = bounds.ejr1_upper_bound;
  expected.notes["floor_sqrt_n"] = std::to_string(root);
  expected.notes["x"] = ToString(bounds.x);
  const SatisfactionFunction fn = SatisfactionFunction::Cost();
  return Assemble(std::move(raw), fn, fn, std::move(expected));
}

// Welfare measured by cost, greedy run by cardinality: k2 cheap projects with
// slightly more than n c_min / c_max supporters crowd out k1 expensive
// projects approved by everybody.
GeneratedConstruction MismatchTight(const Params& params) {
  const Rational b = params.Get("b", Rational(100));
  const long k1 = params.GetInt("k1");
  const long k2 = params.GetInt("k2");
  const Rational eps = params.Get("eps", Rational(1, 100));
  params.Require(sgn(b) > 0, "b > 0");
  params.Require(1 <= k1 && k1 < k2, "1 <= k1 < k2");
  const Rational c_max = b / k1;
  params.Require(sgn(eps) > 0 && eps < c_max, "0 < eps < c_max");
  const Rational c_min = (b - c_max + eps) / k2;
  params.Require(c_min < c_max, "c_min < c_max");
  const Rational r = c_min / c_max;

  // Smallest n with n r fractional and ceil(n r) <= (n + eps) r.
  long n_eps = 0;
  for (long n = 1; n <= 10000000; ++n) {
    const Rational nr = n * r;
    if (nr.get_den() != 1 && Ceil(nr) <= (n + eps) * r) {
      n_eps = n;
      break;
    }
  }
  params.Require(n_eps > 0, "an n with ceil(n r) <= (n + eps) r exists");
  const long n = params.GetInt("n", n_eps);
  const Rational nr = n * r;
  params.Require(nr.get_den() != 1, "n c_min / c_max is not an integer");
  const long supporters = Ceil(nr).get_si();
  params.Require(supporters < n, "ceil(n c_min / c_max) < n");

  RawInstance raw;
  raw.budget = b;
  for (long j = 1; j <= k1; ++j) raw.projects.push_back({Id(j), c_max});
  for (long j = k1 + 1; j <= k1 + k2; ++j) {
    raw.projects.push_back({Id(j), c_min});
  }
  raw.approvals.assign(n, Ids(1, k1));
  for (long voter = 0; voter < supporters; ++voter) {
    raw.approvals[voter] = Ids(1, k1 + k2);
  }

  ExpectedRecord expected;
  expected.rule = "greedy";
  expected.rule_selection = Ids(k1 + 1, k1 + k2);
  expected.optimum = Ids(1, k1);
  expected.optimum_welfare = b * n;
  expected.ratio = (b - c_max + eps) * supporters / (b * n);
  if (Ceil(nr) <= (n + eps) * r) {
    expected.ratio_upper =
        Rational(n + eps) / n * (b - c_max + eps) / b * r;
  }
  expected.notes["n_eps"] = std::to_string(n_eps);
  expected.notes["cheap_supporters"] = std::to_string(supporters);
  return Assemble(std::move(raw), SatisfactionFunction::Cost(),
                  SatisfactionFunction::Cardinality(), std::move(expected));
}

GeneratedConstruction Multiwinner(const Params& params) {
  const long k = params.GetInt("k");
  const Rational c = params.Get("c", Rational(1));
  const long n = params.GetInt("n", 2);
  const long m = params.GetInt("m", 2 * k);
  const long unanimous = params.GetInt("unanimous", 1);
  params.Require(k >= 1, "k >= 1");
  params.Require(sgn(c) > 0, "c > 0");
  params.Require(n >= 1, "n >= 1");
  params.Require(m >= 1, "m >= 1");

  RawInstance raw;
  raw.budget = k * c;
  for (long j = 1; j <= m; ++j) raw.projects.push_back({Id(j), c});
  raw.approvals.assign(n, {});
  if (unanimous != 0) {
    for (auto& ballot : raw.approvals) ballot = Ids(1, m);
  } else {
    std::mt19937_64 engine(
        static_cast<std::uint64_t>(params.GetInt("seed", 1)));
    for (auto& ballot : raw.approvals) {
      for (long j = 1; j <= m; ++j) {
        if (UniformInt(engine, 0, 1) == 1) ballot.push_back(Id(j));
      }
    }
  }

  ExpectedRecord expected;
  expected.rule = "mes-greedy";
  if (unanimous != 0) {
    expected.rule_selection = Ids(1, std::min(k, m));
    expected.ratio = Rational(1);
  }
  const SatisfactionFunction fn = SatisfactionFunction::Cost();
  return Assemble(std::move(raw), fn, fn, std::move(expected));
}

GeneratedConstruction RandomConstruction(const Params& params) {
  RandomInstanceConfig config;
  config.n_min = static_cast<int>(params.GetInt("n_min", config.n_min));
  config.n_max = static_cast<int>(params.GetInt("n_max", config.n_max));
  config.p_min = static_cast<int>(params.GetInt("p_min", config.p_min));
  config.p_max = static_cast<int>(params.GetInt("p_max", config.p_max));
  config.cost_denominator_bound =
      static_cast<int>(params.GetInt("den", config.cost_denominator_bound));
  const auto seed = static_cast<std::uint64_t>(params.GetInt("seed", 1));
  ExpectedRecord expected;
  const SatisfactionFunction fn = SatisfactionFunction::Cost();
  return GeneratedConstruction{GenerateRandomInstance(seed, config), fn, fn,
                               std::move(expected)};
}

}  // namespace

std::string ConstructionName(ConstructionKind kind) {
  return KindNames().at(kind);
}

ConstructionKind ConstructionFromName(const std::string& name) {
  for (const auto& [kind, kind_name] : KindNames()) {
    if (kind_name == name) return kind;
  }
  throw ValidationError("unknown construction '" + name + "'");
}

GeneratedConstruction Generate(const ConstructionSpec& spec) {
  const Params params(spec);
  switch (spec.kind) {
    case ConstructionKind::kBoundedSatWorstCase:
      return BoundedSatWorstCase(params);
    case ConstructionKind::kVanishingSatWorstCase:
      return VanishingSatWorstCase(params);
    case ConstructionKind::kNonDnsWorstCase:
      return NonDnsWorstCase(params);
    case ConstructionKind::kGreedyTight:
      return GreedyTight(params);
    case ConstructionKind::kEjr1Tight:
      return Ejr1Tight(params);
    case ConstructionKind::kMismatchTight:
      return MismatchTight(params);
    case ConstructionKind::kMultiwinner:
      return Multiwinner(params);
    case ConstructionKind::kRandom:
      return RandomConstruction(params);
  }
  throw ValidationError("unhandled construction kind");
}

Instance GenerateRandomInstance(std::uint64_t seed,
                                const RandomInstanceConfig& config) {
  if (config.n_min < 1 || config.n_min > config.n_max || config.p_min < 0 ||
      config.p_min > config.p_max || config.cost_denominator_bound < 1 ||
      config.budget_min < 1 || config.budget_min > config.budget_max) {
    throw ValidationError("empty or invalid random instance ranges");
  }
  std::mt19937_64 engine(seed);
  const auto n = UniformInt(engine, config.n_min, config.n_max);
  const auto m = UniformInt(engine, config.p_min, config.p_max);
  const auto budget = UniformInt(engine, config.budget_min, config.budget_max);

  RawInstance raw;
  raw.budget = Rational(budget);
  for (std::int64_t j = 1; j <= m; ++j) {
    const auto den = UniformInt(engine, 1, config.cost_denominator_bound);
    const auto num = UniformInt(engine, 1, budget * den);
    Rational cost(num, den);
    cost.canonicalize();
    raw.projects.push_back({Id(j), cost});
  }
  raw.approvals.assign(n, {});
  for (auto& ballot : raw.approvals) {
    for (std::int64_t j = 1; j <= m; ++j) {
      if (UniformInt(engine, 0, 1) == 1) ballot.push_back(Id(j));
    }
  }
  return MakeInstance(std::move(raw));
}

std::string ExpectedToJson(const ExpectedRecord& expected) {
  nlohmann::ordered_json out;
  out["rule"] = expected.rule;
  out["rule_selection"] = expected.rule_selection;
  out["optimum"] = expected.optimum;
  auto put = [&](const char* key, const std::optional<Rational>& value) {
    if (value) out[key] = ToString(*value);
  };
  put("optimum_welfare", expected.optimum_welfare);
  put("ratio", expected.ratio);
  put("ratio_upper", expected.ratio_upper);
  put("ratio_strict_upper", expected.ratio_strict_upper);
  out["notes"] = expected.notes;
  return out.dump(2) + "\n";
}

}  // namespace pbwelfare
