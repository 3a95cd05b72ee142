#include "compeq/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <tuple>

#include <CLI11.hpp>
#include <json.hpp>

#include "compeq/asymptotics.hpp"
#include "compeq/enumerate.hpp"
#include "compeq/error.hpp"
#include "compeq/llt.hpp"
#include "compeq/oracles.hpp"
#include "compeq/partset.hpp"
#include "compeq/sampler.hpp"

namespace compeq {
namespace {

using nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Inputs {
  std::string parts;
  std::optional<std::size_t> n;
  std::optional<unsigned> m;
  std::uint64_t seed = 1;
  std::optional<std::size_t> trials;
  long precision_bits = kDefaultPrecisionBits;
  std::size_t n_max_cap = 10000;
  std::string format = "json";
  bool allow_zero_part = false;
  std::size_t n_from = 100;
  std::size_t n_to = 1000;
  std::size_t n_step = 100;
};

struct Context {
  Inputs in;
  std::vector<PartSet> tuple;
  ordered_json inputs = ordered_json::object();
  ordered_json outputs = ordered_json::object();
  std::ostream* out = nullptr;
  bool csv_written = false;

  EnumerationOptions enumeration() const {
    EnumerationOptions options;
    options.n_max_cap = in.n_max_cap;
    options.allow_zero_part = in.allow_zero_part;
    return options;
  }

  std::size_t n() const {
    if (!in.n) throw UsageError("--n is required");
    return *in.n;
  }

  const PartSet& single() const {
    if (tuple.size() != 1 && !std::all_of(tuple.begin(), tuple.end(),
                                          [&](const PartSet& p) { return p == tuple[0]; })) {
      throw UsageError("--parts: this command takes a single part set");
    }
    return tuple[0];
  }

  unsigned m() const { return static_cast<unsigned>(tuple.size()); }

  int digits() const { return static_cast<int>(std::ceil(in.precision_bits * 0.30103)) + 2; }
  std::string interval(const Interval& x) const { return x.to_string(digits()); }
};

std::string rational(const mpq_class& q) { return q.get_str(); }

void need_parts(Context& ctx) {
  if (ctx.in.parts.empty()) throw UsageError("--parts is required");
  ParseOptions parse;
  parse.allow_zero_part = ctx.in.allow_zero_part;
  try {
    ctx.tuple = parse_tuple_spec(ctx.in.parts, parse);
  } catch (const Error& e) {
    throw UsageError("--parts: " + std::string(e.name()) + ": " + e.what());
  }
  if (ctx.in.m) {
    if (*ctx.in.m < 1) throw UsageError("--tuple-size must be >= 1");
    if (ctx.tuple.size() == 1) {
      ctx.tuple.assign(*ctx.in.m, ctx.tuple[0]);
    } else if (ctx.tuple.size() != *ctx.in.m) {
      throw UsageError("--tuple-size disagrees with the number of coordinates in --parts");
    }
  }
  ordered_json specs = ordered_json::array();
  for (const auto& ps : ctx.tuple) specs.push_back(ps.canonical());
  ctx.inputs["parts"] = specs;
  ctx.inputs["m"] = ctx.tuple.size();
}

void record_n(Context& ctx) { ctx.inputs["n"] = ctx.n(); }
void record_precision(Context& ctx) { ctx.inputs["precision_bits"] = ctx.in.precision_bits; }

void cmd_describe(Context& ctx) {
  need_parts(ctx);
  ordered_json sets = ordered_json::array();
  for (const auto& ps : ctx.tuple) {
    ordered_json s;
    s["canonical"] = ps.canonical();
    s["support_gcd"] = ps.support_gcd();
    s["aperiodic"] = ps.is_aperiodic();
    s["weight_sum_exceeds_one"] = ps.weight_sum_exceeds_one();
    s["min_part"] = ps.min_part();
    s["max_part"] = ps.max_part() ? ordered_json(*ps.max_part()) : ordered_json(nullptr);
    s["weight_denominator"] = ps.weight_denominator().get_str();
    sets.push_back(s);
  }
  ctx.outputs["part_sets"] = sets;
}

void cmd_count(Context& ctx) {
  need_parts(ctx);
  record_n(ctx);
  const auto r = equal_parts_count(ctx.tuple, ctx.n(), ctx.enumeration());
  ctx.outputs["d_n"] = rational(r.d_n);
}

void cmd_prob(Context& ctx) {
  need_parts(ctx);
  record_n(ctx);
  const auto r = equal_parts_probability(ctx.tuple, ctx.n(), ctx.enumeration());
  ctx.outputs["d_n"] = rational(r.d_n);
  ctx.outputs["pi_n"] = rational(*r.pi_n);
}

void cmd_dist(Context& ctx) {
  need_parts(ctx);
  record_n(ctx);
  const auto d = parts_distribution(ctx.single(), ctx.n(), ctx.enumeration());
  ordered_json pmf = ordered_json::object();
  for (const auto& [k, p] : d.pmf) pmf[std::to_string(k)] = rational(p);
  ctx.outputs["pmf"] = pmf;
  ctx.outputs["mean"] = rational(d.mean);
  ctx.outputs["variance"] = rational(d.variance);
}

void cmd_decreasing(Context& ctx) {
  need_parts(ctx);
  record_n(ctx);
  ctx.outputs["count"] = rational(decreasing_parts_count(ctx.tuple, ctx.n(), ctx.enumeration()));
}

void cmd_asym(Context& ctx) {
  need_parts(ctx);
  record_precision(ctx);
  const PartSet& ps = ctx.single();
  const auto profile = asymptotic_profile(ps, ctx.in.precision_bits);
  ctx.outputs["rho"] = ctx.interval(profile.rho);
  ctx.outputs["p1"] = ctx.interval(profile.p1);
  ctx.outputs["p2"] = ctx.interval(profile.p2);
  ctx.outputs["mean_coeff"] = ctx.interval(profile.mean_coeff);
  ctx.outputs["K"] = ctx.interval(profile.K);
  ctx.outputs["pn_prefactor"] = ctx.interval(profile.pn_prefactor);
  if (ctx.m() >= 2) {
    const auto c = constant_cm(ps, ctx.m(), ctx.in.precision_bits);
    ctx.outputs["c_m"] = ctx.interval(c.c_m);
    ctx.outputs["exponent"] = rational(c.exponent);
    if (ctx.in.n) {
      record_n(ctx);
      ctx.outputs["pi_asymptotic"] =
          ctx.interval(pi_asymptotic(ps, ctx.m(), ctx.n(), ctx.in.precision_bits));
    }
  } else if (ctx.in.n) {
    record_n(ctx);
    ctx.outputs["pn_asymptotic"] = ctx.interval(pn_asymptotic(ps, ctx.n(), ctx.in.precision_bits));
  }
}

void cmd_llt(Context& ctx) {
  need_parts(ctx);
  record_n(ctx);
  record_precision(ctx);
  const auto r = llt_deviation(ctx.single(), ctx.n(), ctx.in.precision_bits);
  ctx.outputs["mean"] = rational(r.mean);
  ctx.outputs["variance"] = rational(r.variance);
  ctx.outputs["mu_n"] = ctx.interval(r.mu_n);
  ctx.outputs["sigma_n"] = ctx.interval(r.sigma_n);
  ctx.outputs["deviation"] = ctx.interval(r.deviation);
  ctx.outputs["pairing_gap"] = ctx.interval(r.pairing_gap);
  ctx.outputs["degenerate"] = r.degenerate;
}

void cmd_sample(Context& ctx) {
  need_parts(ctx);
  record_n(ctx);
  const std::size_t count = ctx.in.trials.value_or(1);
  ctx.inputs["seed"] = ctx.in.seed;
  ctx.inputs["trials"] = count;
  SamplerState state(ctx.single(), ctx.n(), ctx.in.seed, ctx.in.n_max_cap);
  ordered_json samples = ordered_json::array();
  for (std::size_t i = 0; i < count; ++i) samples.push_back(sample_composition(state));
  ctx.outputs["compositions"] = samples;
  ctx.outputs["rng"] = kRngName;
}

void cmd_mc(Context& ctx) {
  need_parts(ctx);
  record_n(ctx);
  const std::size_t trials = ctx.in.trials.value_or(10000);
  ctx.inputs["seed"] = ctx.in.seed;
  ctx.inputs["trials"] = trials;
  if (ctx.n() > ctx.in.n_max_cap) {
    throw Error(ErrorKind::CapacityExceeded, "n exceeds --n-max-cap");
  }
  const auto r = monte_carlo_pi(ctx.tuple, ctx.n(), trials, ctx.in.seed);
  ctx.outputs["estimate"] = r.estimate;
  ctx.outputs["standard_error"] = r.standard_error;
  ctx.outputs["hits"] = r.hits;
  ctx.outputs["rng"] = r.rng;
}

int cmd_verify(Context& ctx) {
  const auto checks = run_oracle_battery();
  ordered_json rows = ordered_json::array();
  bool all = true;
  for (const auto& c : checks) {
    rows.push_back({{"name", c.name}, {"passed", c.passed}, {"terms", c.terms}, {"detail", c.detail}});
    all = all && c.passed;
  }
  ctx.outputs["checks"] = rows;
  ctx.outputs["all_passed"] = all;
  return all ? kExitOk : kExitDomainError;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

void cmd_table(Context& ctx) {
  need_parts(ctx);
  record_precision(ctx);
  if (ctx.in.n_step == 0) throw UsageError("--n-step must be positive");
  if (ctx.in.n_from < 1 || ctx.in.n_to < ctx.in.n_from) {
    throw UsageError("--n-from/--n-to must satisfy 1 <= from <= to");
  }
  if (ctx.in.n_to > ctx.in.n_max_cap) {
    throw Error(ErrorKind::CapacityExceeded, "--n-to exceeds --n-max-cap");
  }
  std::vector<std::size_t> ns;
  for (std::size_t n = ctx.in.n_from; n <= ctx.in.n_to; n += ctx.in.n_step) ns.push_back(n);
  ctx.inputs["n"] = ns;
  const auto rows = convergence_table(ctx.single(), ctx.m(), ns, ctx.in.precision_bits);
  if (ctx.in.format == "csv") {
    *ctx.out << "n,pi_exact,pi_asymptotic,ratio\n";
    for (const auto& r : rows) {
      *ctx.out << r.n << ',' << csv_field(rational(r.pi_exact)) << ','
               << csv_field(ctx.interval(r.pi_asymptotic)) << ',' << csv_field(ctx.interval(r.ratio))
               << '\n';
    }
    ctx.csv_written = true;
    return;
  }
  ordered_json out = ordered_json::array();
  for (const auto& r : rows) {
    out.push_back({{"n", r.n},
                   {"pi_exact", rational(r.pi_exact)},
                   {"pi_asymptotic", ctx.interval(r.pi_asymptotic)},
                   {"ratio", ctx.interval(r.ratio)}});
  }
  ctx.outputs["rows"] = out;
}

void add_common(CLI::App* sub, Inputs& in) {
  sub->add_option("--parts", in.parts, "tuple spec, ';'-separated coordinates");
  sub->add_option("--n", in.n, "composition size");
  sub->add_option("--m,--tuple-size", in.m, "replicate a single --parts set m times");
  sub->add_option("--seed", in.seed, "64-bit RNG seed");
  sub->add_option("--trials", in.trials, "number of draws");
  sub->add_option("--precision-bits", in.precision_bits, "certified precision in bits")
      ->check(CLI::Range(8L, 1L << 20));
  sub->add_option("--n-max-cap", in.n_max_cap, "capacity guard on n");
  sub->add_option("--format", in.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  sub->add_flag("--allow-zero-part", in.allow_zero_part, "admit part 0 in --parts");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx;
  ctx.out = &out;
  CLI::App app{"Equal-number-of-parts statistics for restricted integer compositions", "compeq"};
  app.require_subcommand(1);

  using Handler = std::function<int(Context&)>;
  auto wrap = [](void (*f)(Context&)) { return Handler([f](Context& c) { f(c); return kExitOk; }); };
  const std::vector<std::tuple<std::string, std::string, Handler>> commands = {
      {"describe", "canonical form and derived properties of each part set", wrap(cmd_describe)},
      {"count", "weighted count D_n of tuples with equal part counts", wrap(cmd_count)},
      {"prob", "exact probability pi_n that all part counts coincide", wrap(cmd_prob)},
      {"dist", "exact distribution of the number of parts", wrap(cmd_dist)},
      {"decreasing", "weighted count with k_1 >= k_2 >= ... >= k_m", wrap(cmd_decreasing)},
      {"asym", "certified asymptotic constants", wrap(cmd_asym)},
      {"llt", "local limit deviation and pairing gap", wrap(cmd_llt)},
      {"sample", "exact random compositions", wrap(cmd_sample)},
      {"mc", "Monte Carlo estimate of pi_n", wrap(cmd_mc)},
      {"verify", "run the oracle battery", Handler(cmd_verify)},
      {"table", "exact vs asymptotic pi_n over a range of n", wrap(cmd_table)},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, help, handler] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, ctx.in);
    if (name == "table") {
      sub->add_option("--n-from", ctx.in.n_from, "first n");
      sub->add_option("--n-to", ctx.in.n_to, "last n");
      sub->add_option("--n-step", ctx.in.n_step, "step in n");
    }
    subs.push_back(sub);
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  std::size_t index = 0;
  while (!subs[index]->parsed()) ++index;
  const auto& [name, help, handler] = commands[index];
  if (ctx.in.format == "csv" && name != "table") {
    err << "usage error: --format csv is only supported by table\n";
    return kExitUsage;
  }

  int code = kExitOk;
  const auto start = std::chrono::steady_clock::now();
  try {
    code = handler(ctx);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << e.name() << ": " << e.what() << '\n';
    return kExitDomainError;
  }
  if (ctx.csv_written) return code;

  const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
  ordered_json doc;
  doc["command"] = name;
  doc["inputs"] = ctx.inputs;
  doc["outputs"] = ctx.outputs;
  doc["timing_ms"] = elapsed.count();
  out << doc.dump(2) << '\n';
  return code;
}

}  // namespace compeq
