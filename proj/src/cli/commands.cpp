#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <json.hpp>
#include <sstream>

#include "sketchlab/cli/bench.hpp"
#include "sketchlab/cli/cli.hpp"
#include "sketchlab/core/combinatorics.hpp"
#include "sketchlab/core/error.hpp"
#include "sketchlab/core/io.hpp"
#include "sketchlab/core/random.hpp"
#include "sketchlab/estimator/pipeline.hpp"
#include "sketchlab/indicator/amplify.hpp"
#include "sketchlab/indicator/inner_product.hpp"
#include "sketchlab/indicator/unique_rows.hpp"
#include "sketchlab/shatter/shatter.hpp"
#include "sketchlab/sketch/builders.hpp"
#include "sketchlab/sketch/query.hpp"

namespace sketchlab {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitOther = 1;
constexpr int kExitRejected = 2;
constexpr int kExitDecode = 3;

using Json = nlohmann::ordered_json;

BitVector random_bits(std::size_t size, std::uint64_t seed) {
  CounterRng rng(seed);
  BitVector bits(size);
  for (std::size_t i = 0; i < size; ++i) bits.set(i, rng.coin());
  return bits;
}

SketchBuilder sketch_kind_builder(const std::string& kind) {
  if (kind == "exact") return builder_for(Algo::ReleaseDb);
  if (kind == "answers") return builder_for(Algo::ReleaseAnswers);
  if (kind == "subsample") return builder_for(Algo::Subsample);
  if (kind == "boost") {
    return [](const Database& db, const SketchParams& p, Semantics, std::uint64_t seed) {
      return build_median_boost(db, p, builder_for(Algo::Subsample), seed);
    };
  }
  throw InvalidArgument("unknown sketch kind '" + kind + "' (expected exact, answers, subsample or boost)");
}

// ---- gen -------------------------------------------------------------------

struct GenOptions {
  std::size_t n = 0;
  std::size_t d = 0;
  double density = 0.5;
  std::uint64_t seed = 1;
  std::string out;
  bool binary = false;
};

int run_gen(const GenOptions& o, std::ostream& out) {
  const Database db = random_database(o.n, o.d, o.density, o.seed);
  if (o.out.empty()) {
    if (o.binary) throw InvalidArgument("--binary needs --out");
    format_database(db, out);
  } else if (o.binary) {
    write_database_binary(db, o.out);
  } else {
    write_database(db, o.out);
  }
  return kExitOk;
}

// ---- sketch / query --------------------------------------------------------

struct SketchOptions {
  std::string db;
  std::string algo = "subsample";
  std::string semantics = "for-all-estimator";
  std::string base = "subsample";
  std::uint32_t k = 2;
  double epsilon = 0.1;
  double delta = 0.1;
  std::uint64_t seed = 1;
  std::uint64_t copies = 0;
  double factor = 10.0;
  std::string out;
};

int run_sketch(const SketchOptions& o, std::ostream& out) {
  const Database db = read_database(o.db);
  const SketchParams params = SketchParams::for_database(db, o.k, o.epsilon, o.delta);
  const Algo algo = parse_algo(o.algo);
  const Semantics semantics = parse_semantics(o.semantics);
  SketchBlob blob;
  if (algo == Algo::MedianBoost) {
    if (semantics != Semantics::ForAllEstimator) {
      throw InvalidArgument("median-boost produces for-all-estimator sketches");
    }
    const Algo base = parse_algo(o.base);
    blob = build_median_boost(db, params, builder_for(base), o.seed,
                              o.copies ? std::optional(o.copies) : std::nullopt, o.factor);
  } else {
    blob = builder_for(algo)(db, params, semantics, o.seed);
  }
  write_blob(blob, o.out);
  out << to_string(blob.algo) << ' ' << to_string(blob.semantics) << ": " << blob.size_bits()
      << " payload bits written to " << o.out << '\n';
  return kExitOk;
}

struct QueryOptions {
  std::string sketch;
  std::vector<std::string> itemsets;
  bool all = false;
  std::string semantics;
};

std::string format_answer(const Answer& a) {
  if (a.is_indicator) return a.bit ? "1" : "0";
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << a.estimate;
  return s.str();
}

Itemset parse_itemset(const std::string& text, std::size_t d) {
  std::vector<std::size_t> attrs;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    const auto first = part.find_first_not_of(" {}");
    const auto last = part.find_last_not_of(" {}");
    if (first == std::string::npos) continue;
    try {
      attrs.push_back(std::stoul(part.substr(first, last - first + 1)));
    } catch (const std::exception&) {
      throw InvalidArgument("itemset '" + text + "' must be comma-separated attributes 1..d");
    }
  }
  return Itemset::from_attributes(d, attrs);
}

int run_query(const QueryOptions& o, std::ostream& out) {
  const SketchBlob blob = read_blob(o.sketch);
  if (!o.semantics.empty() && parse_semantics(o.semantics) != blob.semantics) {
    throw InvalidArgument("sketch was built for " + to_string(blob.semantics));
  }
  if (o.all) {
    const auto answers = answer_all(blob);
    std::uint64_t rank = 0;
    for_each_k_subset(blob.params.d, blob.params.k, [&](std::span<const std::size_t> members) {
      out << Itemset::from_indices(blob.params.d, members).to_string() << ' '
          << format_answer(answers[rank++]) << '\n';
    });
    return kExitOk;
  }
  if (o.itemsets.empty()) throw InvalidArgument("give --itemset or --all");
  for (const std::string& text : o.itemsets) {
    const Itemset t = parse_itemset(text, blob.params.d);
    out << t.to_string() << ' ' << format_answer(query(blob, t)) << '\n';
  }
  return kExitOk;
}

// ---- shatter ---------------------------------------------------------------

struct ShatterOptions {
  std::size_t d = 8;
  std::size_t kprime = 2;
};

std::size_t adjusted_d(const ShatterOptions& o, std::ostream& err) {
  if (valid_family_shape(o.d, o.kprime)) return o.d;
  const std::size_t d = largest_valid_d(o.d, o.kprime);
  if (d == 0) throw InvalidArgument("d/k' must be a power of two >= 2 (d >= 2k')");
  err << "note: d adjusted from " << o.d << " to " << d << " so that d/k' is a power of two\n";
  return d;
}

int run_shatter(const ShatterOptions& o, std::ostream& out, std::ostream& err) {
  const ShatteredFamily family = build_family(adjusted_d(o, err), o.kprime);
  if (family.v > 20) throw InvalidArgument("v <= 20 for the s -> T_s table");
  format_database(family.vectors, out);
  out << '\n' << "s,attributes\n";
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << family.v); ++mask) {
    const auto attrs = itemset_for_string(family, mask).attributes();
    out << BitVector::from_uint(mask, family.v).to_string() << ",\"";
    for (std::size_t i = 0; i < attrs.size(); ++i) out << (i ? "," : "") << attrs[i];
    out << "\"\n";
  }
  return kExitOk;
}

int run_verify_shatter(const ShatterOptions& o, std::ostream& out, std::ostream& err) {
  const ShatteredFamily family = build_family(adjusted_d(o, err), o.kprime);
  const ShatterReport report = verify_shatter(family);
  out << "verify-shatter d=" << family.d << " k'=" << family.kprime << " v=" << family.v << ": ";
  if (report.ok) {
    out << "ok, " << report.strings_checked << " strings checked\n";
    return kExitOk;
  }
  out << "FAILED at s=" << report.counterexample->s << " row " << report.counterexample->row + 1
      << " after " << report.strings_checked << " strings checked\n";
  return kExitDecode;
}

// ---- attack indicator ------------------------------------------------------

struct IndicatorOptions {
  std::string mode = "unique-rows";
  std::size_t d = 16;
  std::size_t k = 2;
  double epsilon = 0.125;
  double delta = 0.1;
  std::uint64_t n = 0;
  std::string sketch = "exact";
  std::uint64_t seed = 1;
  std::uint64_t trials = 10;
};

struct TrialTally {
  std::uint64_t exact = 0;
  double frac_sum = 0.0;
  std::uint64_t sketch_bits = 0;
};

int finish_attack(Json report, const TrialTally& tally, std::uint64_t trials, std::ostream& out) {
  report["recovered_frac"] = tally.frac_sum / static_cast<double>(trials);
  report["exact_success_rate"] = static_cast<double>(tally.exact) / static_cast<double>(trials);
  report["trials"] = trials;
  out << report.dump(2) << '\n';
  return tally.exact == 0 ? kExitDecode : kExitOk;
}

int run_attack_indicator(const IndicatorOptions& o, std::ostream& out) {
  if (o.trials < 1) throw InvalidArgument("trials >= 1");
  const SketchBuilder builder = sketch_kind_builder(o.sketch);
  TrialTally tally;
  Json report;
  report["mode"] = o.mode;
  if (o.mode == "unique-rows") {
    const std::uint64_t m = inverse_epsilon(o.epsilon);
    const std::uint64_t n = o.n ? o.n : m;
    const std::size_t bits = (o.d / 2) * m;
    // Validate the shape before drawing messages.
    encode_unique_rows(BitVector(bits), o.d, o.k, o.epsilon, n);
    for (std::uint64_t t = 0; t < o.trials; ++t) {
      const std::uint64_t seed = derive_seed(o.seed, t);
      const BitVector message = random_bits(bits, derive_seed(seed, 0));
      const UniqueRowInstance inst = encode_unique_rows(message, o.d, o.k, o.epsilon, n);
      const SketchParams params = SketchParams::for_database(
          inst.db, static_cast<std::uint32_t>(o.k), o.epsilon, o.delta);
      const SketchBlob blob = builder(inst.db, params, Semantics::ForAllIndicator, derive_seed(seed, 1));
      tally.sketch_bits = blob.size_bits();
      const BitVector decoded = decode_unique_rows(o.d, o.k, o.epsilon, sketch_oracle(blob));
      tally.exact += decoded == message ? 1 : 0;
      tally.frac_sum += 1.0 - static_cast<double>(decoded.hamming_distance(message)) / static_cast<double>(bits);
    }
    report["message_bits"] = bits;
    report["epsilon"] = o.epsilon;
  } else if (o.mode == "inner-product") {
    const InnerProductAttack attack(o.d, o.k);
    for (std::uint64_t t = 0; t < o.trials; ++t) {
      const std::uint64_t seed = derive_seed(o.seed, t);
      const BitVector message = random_bits(attack.message_bits(), derive_seed(seed, 0));
      const AttackOutcome r = run_inner_product_attack(attack, message, o.delta, builder, derive_seed(seed, 1));
      tally.sketch_bits = r.sketch_bits;
      tally.exact += r.message && *r.message == message ? 1 : 0;
      tally.frac_sum += r.recovered_frac;
    }
    report["message_bits"] = attack.message_bits();
    report["codeword_bits"] = attack.codeword_bits();
    report["epsilon"] = InnerProductAttack::kEpsilon;
  } else if (o.mode == "amplified") {
    const std::uint64_t m = amplification_blocks(o.epsilon);
    if (o.k < 3 || o.k % 2 == 0) {
      throw InvalidArgument("amplification needs odd k >= 3 (try k = " + std::to_string(o.k + 1) + ")");
    }
    const InnerProductAttack inner(o.d, (o.k + 1) / 2);
    for (std::uint64_t t = 0; t < o.trials; ++t) {
      const std::uint64_t seed = derive_seed(o.seed, t);
      std::vector<BitVector> messages;
      for (std::uint64_t i = 0; i < m; ++i) {
        messages.push_back(random_bits(inner.message_bits(), derive_seed(seed, 2 + i)));
      }
      const AmplifiedOutcome r =
          attack_amplified(messages, o.d, o.k, o.epsilon, o.delta, builder, derive_seed(seed, 1));
      tally.sketch_bits = r.sketch_bits;
      bool all = true;
      for (std::size_t i = 0; i < m; ++i) all = all && r.messages[i] && *r.messages[i] == messages[i];
      tally.exact += all ? 1 : 0;
      tally.frac_sum += r.recovered_frac;
    }
    report["message_bits"] = m * inner.message_bits();
    report["blocks"] = m;
    report["epsilon"] = o.epsilon;
  } else {
    throw InvalidArgument("unknown mode '" + o.mode + "' (expected unique-rows, inner-product or amplified)");
  }
  report["sketch"] = o.sketch;
  report["sketch_bits"] = tally.sketch_bits;
  return finish_attack(std::move(report), tally, o.trials, out);
}

// ---- attack estimator ------------------------------------------------------

struct EstimatorOptions {
  std::size_t d0 = 4;
  std::size_t n = 4;
  std::size_t c = 2;
  std::size_t k = 3;
  double epsilon = 0.01;
  double delta = 0.1;
  std::string sketch = "exact";
  std::uint64_t seed = 1;
  std::uint64_t trials = 10;
  unsigned q = 1;
};

int run_attack_estimator(const EstimatorOptions& o, std::ostream& out) {
  if (o.trials < 1) throw InvalidArgument("trials >= 1");
  const SketchBuilder builder = sketch_kind_builder(o.sketch);
  const EstimatorAttack attack(o.d0, o.n, o.c, o.k, derive_seed(o.seed, 0xFAC7));
  const SpectralReport spectral = spectral_report(attack.stack(), 64, derive_seed(o.seed, 0x5EC7));
  const DecoderConfig config = DecoderConfig::defaults(o.n, o.q);
  TrialTally tally;
  std::uint64_t blocks = 0;
  for (std::uint64_t t = 0; t < o.trials; ++t) {
    const std::uint64_t seed = derive_seed(o.seed, t);
    const BitVector message = random_bits(attack.message_bits(), derive_seed(seed, 0));
    const EstimatorOutcome r =
        run_estimator_attack(attack, message, o.epsilon, o.delta, builder, derive_seed(seed, 1), config);
    tally.sketch_bits = r.sketch_bits;
    tally.exact += r.message && *r.message == message ? 1 : 0;
    blocks += r.blocks_recovered;
    tally.frac_sum += static_cast<double>(r.blocks_recovered) / static_cast<double>(attack.v());
  }
  Json report;
  report["sigma_min"] = spectral.sigma_min;
  report["section_ratio"] = spectral.section_ratio;
  report["blocks_recovered"] = blocks;
  report["blocks_total"] = attack.v() * o.trials;
  report["message_exact"] = tally.exact == o.trials;
  report["sketch_bits"] = tally.sketch_bits;
  report["message_bits"] = attack.message_bits();
  report["injective"] = attack.injective();
  report["sketch"] = o.sketch;
  report["exact_success_rate"] = static_cast<double>(tally.exact) / static_cast<double>(o.trials);
  report["trials"] = o.trials;
  out << report.dump(2) << '\n';
  return tally.exact == 0 ? kExitDecode : kExitOk;
}

// ---- bench -----------------------------------------------------------------

struct BenchOptions {
  std::vector<std::uint64_t> n{4};
  std::vector<std::uint32_t> d{8};
  std::vector<std::uint32_t> k{2};
  std::vector<double> epsilon{0.125};
  std::vector<double> delta{0.1};
  std::vector<std::string> semantics;
  std::vector<std::string> algos;
  std::uint64_t trials = 20;
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string out;
  bool timing = false;
};

int run_bench_command(const BenchOptions& o, std::ostream& out) {
  BenchGrid grid;
  grid.n = o.n;
  grid.d = o.d;
  grid.k = o.k;
  grid.epsilon = o.epsilon;
  grid.delta = o.delta;
  grid.trials = o.trials;
  grid.seed = o.seed;
  grid.timing = o.timing;
  if (!o.semantics.empty()) {
    grid.semantics.clear();
    for (const auto& s : o.semantics) grid.semantics.push_back(parse_semantics(s));
  }
  if (!o.algos.empty()) {
    grid.algos.clear();
    for (const auto& a : o.algos) grid.algos.push_back(parse_algo(a));
  }
  if (o.format != "csv" && o.format != "json") throw InvalidArgument("format must be csv or json");
  const auto records = run_bench(grid);
  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) throw InvalidArgument("cannot write " + o.out);
  }
  std::ostream& dest = o.out.empty() ? out : file;
  if (o.format == "csv") {
    write_bench_csv(dest, records);
  } else {
    write_bench_json(dest, records);
  }
  return kExitOk;
}

void add_indicator_options(CLI::App* app, IndicatorOptions& o) {
  app->add_option("--mode", o.mode, "unique-rows, inner-product or amplified")->capture_default_str();
  app->add_option("--d", o.d, "attributes")->capture_default_str();
  app->add_option("--k", o.k, "itemset size")->capture_default_str();
  app->add_option("--epsilon", o.epsilon, "sketch precision (inner-product fixes 1/50)")->capture_default_str();
  app->add_option("--delta", o.delta, "failure probability")->capture_default_str();
  app->add_option("--n", o.n, "rows for unique-rows (default 1/epsilon)");
  app->add_option("--sketch", o.sketch, "exact, answers or subsample")->capture_default_str();
  app->add_option("--seed", o.seed, "root seed")->capture_default_str();
  app->add_option("--trials", o.trials, "independent messages")->capture_default_str();
}

void add_estimator_options(CLI::App* app, EstimatorOptions& o) {
  app->add_option("--d0", o.d0, "rows per random factor")->capture_default_str();
  app->add_option("--n", o.n, "rows per sub-database")->capture_default_str();
  app->add_option("--c", o.c, "base itemset size")->capture_default_str();
  app->add_option("--k", o.k, "query itemset size")->capture_default_str();
  app->add_option("--epsilon", o.epsilon, "sketch precision")->capture_default_str();
  app->add_option("--delta", o.delta, "failure probability")->capture_default_str();
  app->add_option("--sketch", o.sketch, "exact, answers, subsample or boost")->capture_default_str();
  app->add_option("--seed", o.seed, "root seed")->capture_default_str();
  app->add_option("--trials", o.trials, "independent messages")->capture_default_str();
  app->add_option("--q", o.q, "iterated-log depth for zeta1")->capture_default_str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Itemset-frequency sketches and their lower-bound attacks", "sketchlab"};
  app.require_subcommand(1);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "random database in text or binary format");
  gen_cmd->add_option("--n", gen.n, "rows")->required();
  gen_cmd->add_option("--d", gen.d, "attributes")->required();
  gen_cmd->add_option("--density", gen.density, "probability of a 1")->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "seed")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "output file (default stdout)");
  gen_cmd->add_flag("--binary", gen.binary, "binary format");

  SketchOptions sk;
  auto* sketch_cmd = app.add_subcommand("sketch", "build a sketch file from a database");
  sketch_cmd->add_option("--db", sk.db, "database text file")->required();
  sketch_cmd->add_option("--algo", sk.algo, "release-db, release-answers, subsample or median-boost")->capture_default_str();
  sketch_cmd->add_option("--semantics", sk.semantics, "for-{all,each}-{indicator,estimator}")->capture_default_str();
  sketch_cmd->add_option("--base", sk.base, "median-boost base algorithm")->capture_default_str();
  sketch_cmd->add_option("--k", sk.k, "itemset size")->capture_default_str();
  sketch_cmd->add_option("--epsilon", sk.epsilon, "precision")->capture_default_str();
  sketch_cmd->add_option("--delta", sk.delta, "failure probability")->capture_default_str();
  sketch_cmd->add_option("--seed", sk.seed, "seed")->capture_default_str();
  sketch_cmd->add_option("--copies", sk.copies, "median-boost copies (default from factor)");
  sketch_cmd->add_option("--factor", sk.factor, "median-boost copy factor")->capture_default_str();
  sketch_cmd->add_option("--out", sk.out, "sketch file")->required();

  QueryOptions qo;
  auto* query_cmd = app.add_subcommand("query", "answer itemset queries from a sketch file");
  query_cmd->add_option("--sketch", qo.sketch, "sketch file")->required();
  query_cmd->add_option("--itemset", qo.itemsets, "attributes, e.g. 1,3 (repeatable)");
  query_cmd->add_flag("--all", qo.all, "answer every k-itemset");
  query_cmd->add_option("--semantics", qo.semantics, "reject sketches of other semantics");

  ShatterOptions sh;
  auto* shatter_cmd = app.add_subcommand("shatter", "print the shattered family and its s -> T_s table");
  ShatterOptions vs;
  auto* verify_cmd = app.add_subcommand("verify-shatter", "exhaustively check the shattering property");
  for (auto [cmd, opts] : {std::pair{shatter_cmd, &sh}, std::pair{verify_cmd, &vs}}) {
    cmd->add_option("--d", opts->d, "attributes")->capture_default_str();
    cmd->add_option("--kprime,--k", opts->kprime, "itemset size k'")->capture_default_str();
  }

  IndicatorOptions ind;
  EstimatorOptions est;
  auto* attack_cmd = app.add_subcommand("attack", "run an encoding attack");
  attack_cmd->require_subcommand(1);
  auto* ind_cmd = attack_cmd->add_subcommand("indicator", "indicator-sketch attacks");
  auto* est_cmd = attack_cmd->add_subcommand("estimator", "estimator-sketch attack");
  auto* ind_alias = app.add_subcommand("attack-indicator", "same as 'attack indicator'");
  auto* est_alias = app.add_subcommand("attack-estimator", "same as 'attack estimator'");
  add_indicator_options(ind_cmd, ind);
  add_indicator_options(ind_alias, ind);
  add_estimator_options(est_cmd, est);
  add_estimator_options(est_alias, est);

  BenchOptions bo;
  auto* bench_cmd = app.add_subcommand("bench", "sketch sizes and failure rates over a parameter grid");
  bench_cmd->add_option("--n", bo.n, "rows (comma list)")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--d", bo.d, "attributes (comma list)")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--k", bo.k, "itemset sizes (comma list)")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--epsilon", bo.epsilon, "precisions (comma list)")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--delta", bo.delta, "failure probabilities (comma list)")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--semantics", bo.semantics, "semantics (default all)")->delimiter(',');
  bench_cmd->add_option("--algos", bo.algos, "algorithms (default all)")->delimiter(',');
  bench_cmd->add_option("--trials", bo.trials, "sketches per cell")->capture_default_str();
  bench_cmd->add_option("--seed", bo.seed, "root seed")->capture_default_str();
  bench_cmd->add_option("--format", bo.format, "csv or json")->capture_default_str();
  bench_cmd->add_option("--out", bo.out, "report file (default stdout)");
  bench_cmd->add_flag("--timing", bo.timing, "measure wall time (output no longer deterministic)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitRejected;
  }

  try {
    if (*gen_cmd) return run_gen(gen, out);
    if (*sketch_cmd) return run_sketch(sk, out);
    if (*query_cmd) return run_query(qo, out);
    if (*shatter_cmd) return run_shatter(sh, out, err);
    if (*verify_cmd) return run_verify_shatter(vs, out, err);
    if (*ind_cmd || *ind_alias) return run_attack_indicator(ind, out);
    if (*est_cmd || *est_alias) return run_attack_estimator(est, out);
    if (*bench_cmd) return run_bench_command(bo, out);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitRejected;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitRejected;
  } catch (const DecodeFailure& e) {
    err << "decode failure: " << e.what() << '\n';
    return kExitDecode;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitOther;
  }
  return kExitOther;
}

}  // namespace sketchlab
