// sigpat — mines statistically significant high-order interactions between
// binary features under family-wise error rate control.
//
// Subcommands:
//   run       full pipeline: root-frequency search, testable-pattern
//             enumeration, Fisher exact tests at the corrected threshold
//   estimate  subsampling-based estimate of the root frequency and the
//             testable-pattern count (approximate, clearly labeled)
//   compare   Tarone correction factor next to naive Bonferroni factors

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sigpat/bigint.hpp"
#include "sigpat/lamp.hpp"
#include "sigpat/rng.hpp"
#include "sigpat/subsample.hpp"
#include "sigpat/transaction_db.hpp"

using json = nlohmann::json;
using namespace sigpat;

namespace {

constexpr const char* kVersion = "sigpat 0.1.0";

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  return in;
}

std::string format_sig12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct CommonOptions {
  std::string data_path;
  std::string labels_path;
  Count ratio = 0;
  double alpha = 0.05;
  std::string strategy = "inc";
  std::string tail = "one";
  std::string out_dir = ".";
  unsigned threads = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_strategy = true) {
  cmd->add_option("--data", opt.data_path, "transaction database (FIMI)")
      ->required();
  auto* labels =
      cmd->add_option("--labels", opt.labels_path, "label file, one 0/1 per line");
  auto* ratio = cmd->add_option(
      "--ratio", opt.ratio,
      "synthetic class ratio r (n = floor(N/r)); testability analysis only");
  labels->excludes(ratio);
  ratio->excludes(labels);
  cmd->add_option("--alpha", opt.alpha, "target FWER")->default_val(0.05);
  if (with_strategy) {
    cmd->add_option("--strategy", opt.strategy, "search strategy")
        ->check(CLI::IsMember({"inc", "dec", "brute"}))
        ->default_val("inc");
    cmd->add_option("--tail", opt.tail, "Fisher test tail")
        ->check(CLI::IsMember({"one", "two"}))
        ->default_val("one");
  }
  cmd->add_option("--out", opt.out_dir, "output directory")->default_val(".");
  cmd->add_option("--threads", opt.threads, "miner worker threads")
      ->default_val(1);
}

SearchStrategy parse_strategy(const std::string& s) {
  if (s == "inc") return SearchStrategy::incremental;
  if (s == "dec") return SearchStrategy::decremental;
  return SearchStrategy::brute_force;
}

struct LoadedData {
  TransactionDatabase db;
  std::optional<LabelVector> labels;  // empty in ratio mode
  LabelVector effective;              // real labels or the ratio placeholder
  std::string orientation;
};

LoadedData load(const CommonOptions& opt) {
  LoadedData data;
  auto in = open_or_throw(opt.data_path);
  data.db = TransactionDatabase::parse_fimi(in, /*remap_dense=*/true);
  if (!opt.labels_path.empty()) {
    auto lab_in = open_or_throw(opt.labels_path);
    data.labels = LabelVector::parse(lab_in, data.db.num_transactions());
    data.effective = *data.labels;
    data.orientation = data.labels->swapped() ? "swapped" : "as-given";
    if (data.labels->balanced_tie()) {
      std::cerr << "note: classes are exactly balanced (n = N - n); either "
                   "orientation is valid\n";
    }
  } else if (opt.ratio >= 2) {
    data.effective =
        LabelVector::synthetic_ratio(data.db.num_transactions(), opt.ratio);
    data.orientation = "ratio(r=" + std::to_string(opt.ratio) + ")";
  } else {
    throw std::runtime_error("either --labels or --ratio (>= 2) is required");
  }
  return data;
}

void write_patterns_tsv(const std::filesystem::path& path,
                        const TransactionDatabase& db,
                        const std::vector<SignificantPattern>& patterns) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "items\tsupport\ta\tp_value\tlog10_p\n";
  for (const auto& p : patterns) {
    std::string items;
    // External ids, ascending, to keep files meaningful for sparse inputs.
    std::vector<Count> ext;
    ext.reserve(p.items.size());
    for (Count item : p.items) ext.push_back(db.external_id(item));
    std::sort(ext.begin(), ext.end());
    for (std::size_t i = 0; i < ext.size(); ++i) {
      if (i != 0) items += ' ';
      items += std::to_string(ext[i]);
    }
    out << items << '\t' << p.support << '\t' << p.positive_count << '\t'
        << format_sig12(p.p_value.linear()) << '\t'
        << format_sig12(p.p_value.log10()) << '\n';
  }
}

json summary_json(const CommonOptions& opt, const LoadedData& data,
                  const TaroneResult& tarone, std::size_t num_significant,
                  double wall_ms) {
  json j;
  j["dataset"] = opt.data_path;
  j["N"] = data.db.num_transactions();
  j["P"] = data.db.num_items();
  j["n"] = data.effective.n();
  j["alpha"] = opt.alpha;
  j["strategy"] = to_string(tarone.strategy);
  j["tail"] = opt.tail;
  j["sigma_rt"] = tarone.sigma_rt;
  j["num_testable"] = tarone.num_testable;
  j["delta"] = tarone.delta.linear();
  j["log10_delta"] = tarone.delta.is_zero() ? json() : json(tarone.delta.log10());
  j["num_significant"] = num_significant;
  j["miner_invocations"] = tarone.miner_invocations;
  j["wall_time_ms"] = wall_ms;
  j["label_orientation"] = data.orientation;
  j["version"] = kVersion;
  return j;
}

int cmd_run(const CommonOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  LoadedData data = load(opt);
  std::filesystem::create_directories(opt.out_dir);

  TaroneResult tarone;
  std::vector<SignificantPattern> patterns;
  bool no_testable = false;
  if (data.labels.has_value()) {
    const auto report = find_significant(
        data.db, *data.labels, opt.alpha, parse_strategy(opt.strategy),
        opt.tail == "one" ? PValueTail::one_tailed : PValueTail::two_tailed,
        opt.threads);
    tarone = report.tarone;
    patterns = report.patterns;
    no_testable = report.no_testable_hypotheses;
  } else {
    // Ratio mode fixes only n; enumerate testability, skip p-values.
    tarone = run_search(data.db, data.effective.n(), opt.alpha,
                        parse_strategy(opt.strategy), opt.threads);
  }
  const double wall_ms = std::chrono::duration<double, std::milli>(
                             std::chrono::steady_clock::now() - t0)
                             .count();

  write_patterns_tsv(std::filesystem::path(opt.out_dir) / "patterns.tsv",
                     data.db, patterns);
  const json j =
      summary_json(opt, data, tarone, patterns.size(), wall_ms);
  std::ofstream js(std::filesystem::path(opt.out_dir) / "summary.json");
  js << j.dump(2) << '\n';

  std::cout << "sigma_rt=" << tarone.sigma_rt
            << " num_testable=" << tarone.num_testable
            << " num_significant=" << patterns.size()
            << " miner_invocations=" << tarone.miner_invocations << '\n';
  if (no_testable) {
    std::cout << "no testable hypotheses at this alpha; nothing was tested\n";
  }
  return 0;
}

int cmd_estimate(const CommonOptions& opt, Count K, Count reps,
                 std::uint64_t seed, bool no_resample) {
  LoadedData data = load(opt);
  std::filesystem::create_directories(opt.out_dir);
  const Count N = data.db.num_transactions();
  const Count n = data.effective.n();
  if (no_resample && K != 1) {
    throw std::runtime_error("--no-resample requires --K 1");
  }
  if (reps < 1) throw std::runtime_error("--reps must be >= 1");

  SplitMix64 master(seed);
  json runs = json::array();
  std::vector<double> sigma_hats;
  std::vector<double> estimates;
  for (Count rep = 0; rep < reps; ++rep) {
    const std::uint64_t rep_seed = master.next();
    const TransactionDatabase sub =
        no_resample ? data.db : draw_subsample(data.db, K, rep_seed);
    const SubsampleEstimate est =
        estimate_root(sub, K, n, N, opt.alpha, rep_seed, opt.threads);
    sigma_hats.push_back(est.sigma_hat);
    estimates.push_back(static_cast<double>(est.estimated_testable));
    runs.push_back({{"seed", est.seed},
                    {"sigma_prime", est.sigma_prime},
                    {"sigma_hat", est.sigma_hat},
                    {"estimated_testable", est.estimated_testable},
                    {"degenerate", est.degenerate}});
  }
  const auto mean = [](const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  const auto stddev = [&](const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double s = 0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(v.size() - 1));
  };

  json j;
  j["dataset"] = opt.data_path;
  j["N"] = N;
  j["P"] = data.db.num_items();
  j["n"] = n;
  j["alpha"] = opt.alpha;
  j["K"] = K;
  j["reps"] = reps;
  j["seed"] = seed;
  j["rng"] = kRngIdentity;
  j["resampled"] = !no_resample;
  j["approximate"] = true;  // estimates never feed the exact pipeline
  j["runs"] = runs;
  j["sigma_hat_mean"] = mean(sigma_hats);
  j["sigma_hat_std"] = stddev(sigma_hats);
  j["estimated_testable_mean"] = mean(estimates);
  j["estimated_testable_std"] = stddev(estimates);
  j["label_orientation"] = data.orientation;
  j["version"] = kVersion;

  std::ofstream js(std::filesystem::path(opt.out_dir) / "estimate.json");
  js << j.dump(2) << '\n';
  std::cout << "sigma_hat = " << mean(sigma_hats) << " +- "
            << stddev(sigma_hats) << " (APPROXIMATE, K=" << K
            << ", reps=" << reps << ")\n";
  return 0;
}

int cmd_compare(const CommonOptions& opt, const std::string& summary_path) {
  PatternCount lamp_factor = 0;
  Count P = 0;
  std::filesystem::create_directories(opt.out_dir);
  if (!summary_path.empty()) {
    auto in = open_or_throw(summary_path);
    json j;
    in >> j;
    lamp_factor = j.at("num_testable").get<PatternCount>();
    P = j.at("P").get<Count>();
  } else {
    LoadedData data = load(opt);
    const TaroneResult tarone =
        run_search(data.db, data.effective.n(), opt.alpha,
                   parse_strategy(opt.strategy), opt.threads);
    lamp_factor = tarone.num_testable;
    P = data.db.num_items();
  }
  if (P == 0) throw std::runtime_error("database has no items to compare");

  std::ofstream out(std::filesystem::path(opt.out_dir) / "compare.tsv");
  out << "method\tmax_arity\tfactor_sci\tfactor_exact\n";
  const BigUint lamp_big(lamp_factor);
  out << "tarone\tany\t" << lamp_big.to_scientific(3) << '\t'
      << lamp_big.to_decimal() << '\n';
  for (Count d : {3u, 5u, 7u, 9u}) {
    if (d > P) continue;
    const BigUint factor = naive_bonferroni_factor(P, d);
    out << "naive\t" << d << '\t' << factor.to_scientific(3) << '\t'
        << factor.to_decimal() << '\n';
  }
  const BigUint full = naive_bonferroni_factor(P, P);
  out << "naive\tany\t" << full.to_scientific(3) << '\t' << full.to_decimal()
      << '\n';
  std::cout << "tarone factor " << lamp_big.to_scientific(3)
            << " vs naive any-order " << full.to_scientific(3) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"significant high-order interaction mining under FWER control"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonOptions run_opt;
  auto* run = app.add_subcommand("run", "run the full significance pipeline");
  add_common(run, run_opt);

  CommonOptions est_opt;
  Count K = 2;
  Count reps = 10;
  std::uint64_t seed = 0;
  bool no_resample = false;
  auto* estimate = app.add_subcommand(
      "estimate", "estimate the root frequency from subsamples");
  add_common(estimate, est_opt, /*with_strategy=*/false);
  estimate->add_option("--K", K, "subsampling ratio (draws floor(N/K) rows)")
      ->default_val(2);
  estimate->add_option("--reps", reps, "independent repetitions")
      ->default_val(10);
  estimate->add_option("--seed", seed, "master RNG seed")->default_val(0);
  estimate->add_flag("--no-resample", no_resample,
                     "use the database verbatim (requires --K 1)");

  CommonOptions cmp_opt;
  std::string summary_path;
  auto* compare = app.add_subcommand(
      "compare", "Tarone factor vs naive Bonferroni factors");
  add_common(compare, cmp_opt);
  compare->add_option("--summary", summary_path,
                      "reuse num_testable from an existing summary.json");
  // --summary replaces the fresh run, so --data is no longer mandatory.
  compare->get_option("--data")->required(false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return cmd_run(run_opt);
    if (estimate->parsed()) {
      return cmd_estimate(est_opt, K, reps, seed, no_resample);
    }
    if (compare->parsed()) {
      if (summary_path.empty() && cmp_opt.data_path.empty()) {
        throw std::runtime_error("compare needs --data or --summary");
      }
      return cmd_compare(cmp_opt, summary_path);
    }
  } catch (const DegenerateDataError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
