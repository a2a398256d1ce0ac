// Command-line surface for the committee-selection simulation library:
// sampling, dominance checks, committee constructions, blocking
// certificates, Monte Carlo estimation, sweeps, exact tiny-universe values,
// and counterexample search. All randomized commands take --seed and are
// bit-reproducible given it.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "icc/blocking.hpp"
#include "icc/constructions.hpp"
#include "icc/dominance.hpp"
#include "icc/experiments.hpp"
#include "icc/io.hpp"
#include "icc/model.hpp"
#include "icc/rational.hpp"

namespace {

std::vector<int> parse_id_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      const int value = std::stoi(item, &pos);
      if (pos != item.size()) throw icc::Error::parse("bad candidate id '" + item + "'");
      out.push_back(value);
    } catch (const std::logic_error&) {
      throw icc::Error::parse("bad candidate id '" + item + "'");
    }
  }
  if (out.empty()) throw icc::Error::parse("empty id list");
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Data goes to --out when given, otherwise stdout; diagnostics always go to
// stderr.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw icc::Error::io("cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

icc::ScoreMatrix scores_from_options(const std::string& scores_path, int n, int m,
                                     std::uint64_t seed, bool seed_given) {
  if (!scores_path.empty()) return icc::load_score_matrix(scores_path);
  if (n <= 0 || m <= 0)
    throw icc::Error::invalid_argument("need --scores FILE or --n/--m/--seed to sample");
  if (!seed_given) throw icc::Error::invalid_argument("sampling needs --seed");
  icc::Rng rng(seed);
  return icc::sample_score_matrix(n, m, rng);
}

void print_verdict(std::ostream& out, const icc::DominanceVerdict& verdict) {
  out << "verdict: " << (verdict.holds ? "true" : "false");
  if (!verdict.holds && verdict.witness) out << " witness: " << *verdict.witness;
  out << '\n';
}

struct EstimateFlags {
  icc::ExperimentConfig cfg;
  std::string alpha_text = "0";
  std::string mode_text = "winning";
  std::string method_text = "bruteforce";
  double r_value = -1.0;
  std::string format = "csv";
  std::string out_path;
};

void add_estimate_flags(CLI::App* cmd, EstimateFlags& flags, bool need_trials) {
  cmd->add_option("--n", flags.cfg.n, "voter count")->required();
  cmd->add_option("--m", flags.cfg.m, "candidate count")->required();
  cmd->add_option("--k", flags.cfg.k, "committee size");
  cmd->add_option("--alpha", flags.alpha_text, "majority level, 'p/q' or decimal");
  cmd->add_option("--seed", flags.cfg.seed, "random seed")->required();
  auto* trials = cmd->add_option("--trials", flags.cfg.trials, "Monte Carlo trials");
  if (need_trials) trials->required();
  cmd->add_option("--mode", flags.mode_text, "winning|dominating|strong-winner");
  cmd->add_option("--method", flags.method_text, "bruteforce|best-per-group|cyclic");
  cmd->add_option("--r", flags.r_value, "cyclic construction parameter (default ln m)");
  cmd->add_option("--threads", flags.cfg.threads, "worker cap (default: available parallelism)");
  cmd->add_option("--budget", flags.cfg.budget, "enumeration budget for brute force");
  cmd->add_option("--format", flags.format, "csv|jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  cmd->add_option("--out", flags.out_path, "output file (default stdout)");
}

void finish_estimate_flags(EstimateFlags& flags) {
  flags.cfg.alpha = icc::Alpha::parse(flags.alpha_text);
  flags.cfg.mode = icc::parse_mode(flags.mode_text);
  flags.cfg.method = icc::parse_method(flags.method_text);
  if (flags.r_value > 0) flags.cfg.r = flags.r_value;
}

void emit_rows(const EstimateFlags& flags, const std::vector<icc::SweepRow>& rows) {
  OutputTarget target(flags.out_path);
  auto& out = target.stream();
  if (flags.format == "csv") {
    icc::write_csv_header(out);
    for (const auto& row : rows) icc::write_csv_row(out, row);
  } else {
    for (const auto& row : rows) icc::write_jsonl_row(out, row);
  }
}

int run(int argc, char** argv) {
  CLI::App app{"alpha-winning / alpha-dominating committee simulator under impartial culture"};
  app.require_subcommand(1);

  // ---- sample ----
  auto* sample = app.add_subcommand("sample", "draw an IC profile or score matrix");
  int sample_n = 0;
  int sample_m = 0;
  std::uint64_t sample_seed = 0;
  std::string sample_kind = "profile";
  std::string sample_out;
  sample->add_option("--n", sample_n, "voter count")->required();
  sample->add_option("--m", sample_m, "candidate count")->required();
  sample->add_option("--seed", sample_seed, "random seed")->required();
  sample->add_option("--kind", sample_kind, "profile|scores")
      ->check(CLI::IsMember({"profile", "scores"}));
  sample->add_option("--out", sample_out, "output file (default stdout)");

  // ---- check ----
  auto* check = app.add_subcommand("check", "check a committee against a profile");
  std::string check_profile;
  std::string check_committee;
  std::string check_alpha;
  std::string check_mode = "winning";
  check->add_option("--profile", check_profile, "profile file")->required();
  check->add_option("--committee", check_committee, "comma-separated candidate ids")->required();
  check->add_option("--alpha", check_alpha, "majority level, 'p/q' or decimal")->required();
  check->add_option("--mode", check_mode, "winning|dominating")
      ->check(CLI::IsMember({"winning", "dominating"}));

  // ---- construct ----
  auto* construct = app.add_subcommand("construct", "build a committee from scores");
  std::string construct_method;
  std::string construct_scores;
  int construct_n = 0;
  int construct_m = 0;
  int construct_k = 0;
  std::uint64_t construct_seed = 0;
  double construct_r = -1.0;
  std::string construct_alpha;
  std::string construct_mode = "dominating";
  construct->add_option("--method", construct_method, "best-per-group|cyclic")
      ->required()
      ->check(CLI::IsMember({"best-per-group", "cyclic"}));
  construct->add_option("--k", construct_k, "committee size")->required();
  construct->add_option("--scores", construct_scores, "score matrix file");
  construct->add_option("--n", construct_n, "voter count (to sample fresh scores)");
  construct->add_option("--m", construct_m, "candidate count (to sample fresh scores)");
  construct->add_option("--seed", construct_seed, "random seed (to sample fresh scores)");
  construct->add_option("--r", construct_r, "cyclic construction parameter (default ln m)");
  construct->add_option("--alpha", construct_alpha, "also check the verdict at this level");
  construct->add_option("--mode", construct_mode, "winning|dominating (for --alpha)")
      ->check(CLI::IsMember({"winning", "dominating"}));

  // ---- block ----
  auto* block = app.add_subcommand("block", "run the blocking-certificate pipeline");
  std::string block_scores;
  std::string block_committee;
  std::string block_construct;
  std::string block_verify;
  std::string block_profile;
  int block_n = 0;
  int block_m = 0;
  int block_k = 0;
  std::uint64_t block_seed = 0;
  std::string block_out;
  block->add_option("--scores", block_scores, "score matrix file");
  block->add_option("--n", block_n, "voter count (to sample fresh scores)");
  block->add_option("--m", block_m, "candidate count (to sample fresh scores)");
  block->add_option("--seed", block_seed, "random seed (sampling and rounding)");
  block->add_option("--committee", block_committee, "comma-separated candidate ids to block");
  block->add_option("--construct", block_construct,
                    "derive the committee from the scores: best-per-group|cyclic")
      ->check(CLI::IsMember({"best-per-group", "cyclic"}));
  block->add_option("--k", block_k, "committee size for --construct");
  block->add_option("--verify", block_verify, "verify a certificate JSON file instead");
  block->add_option("--profile", block_profile, "profile file for --verify");
  block->add_option("--out", block_out, "output file (default stdout)");

  // ---- estimate ----
  auto* estimate = app.add_subcommand("estimate", "Monte Carlo existence estimate");
  EstimateFlags estimate_flags;
  add_estimate_flags(estimate, estimate_flags, /*need_trials=*/true);

  // ---- sweep ----
  auto* sweep = app.add_subcommand("sweep", "estimates along an axis");
  EstimateFlags sweep_flags;
  std::string sweep_axis;
  std::string sweep_values;
  add_estimate_flags(sweep, sweep_flags, /*need_trials=*/true);
  sweep->add_option("--axis", sweep_axis, "alpha|m|n|k")->required();
  sweep->add_option("--values", sweep_values, "comma-separated axis values")->required();

  // ---- exact ----
  auto* exact = app.add_subcommand("exact", "exact existence probability by enumeration");
  int exact_n = 0;
  int exact_m = 0;
  int exact_k = 1;
  std::string exact_alpha;
  std::string exact_mode = "winning";
  exact->add_option("--n", exact_n, "voter count")->required();
  exact->add_option("--m", exact_m, "candidate count")->required();
  exact->add_option("--k", exact_k, "committee size");
  exact->add_option("--alpha", exact_alpha, "majority level")->required();
  exact->add_option("--mode", exact_mode, "winning|dominating|strong-winner");

  // ---- search-counterexample ----
  auto* search = app.add_subcommand("search-counterexample",
                                    "look for a profile with no alpha-dominating committee");
  int search_n = 0;
  int search_m = 0;
  int search_k = 0;
  std::string search_alpha;
  std::int64_t search_trials = 0;
  std::uint64_t search_seed = 0;
  std::int64_t search_budget = icc::kDefaultEnumerationBudget;
  std::string search_out;
  search->add_option("--n", search_n, "voter count")->required();
  search->add_option("--m", search_m, "candidate count")->required();
  search->add_option("--k", search_k, "committee size")->required();
  search->add_option("--alpha", search_alpha, "majority level, must exceed (k-1)/(2k)")->required();
  search->add_option("--trials", search_trials, "profiles to sample")->required();
  search->add_option("--seed", search_seed, "random seed")->required();
  search->add_option("--budget", search_budget, "enumeration budget");
  search->add_option("--out", search_out, "write the found profile here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*sample) {
      OutputTarget target(sample_out);
      icc::Rng rng(sample_seed);
      if (sample_kind == "profile") {
        icc::write_profile(target.stream(), icc::sample_profile(sample_n, sample_m, rng));
      } else {
        icc::write_score_matrix(target.stream(),
                                icc::sample_score_matrix(sample_n, sample_m, rng));
      }
      return 0;
    }

    if (*check) {
      const icc::Profile profile = icc::load_profile(check_profile);
      const icc::Committee committee(parse_id_list(check_committee));
      const icc::Alpha alpha = icc::Alpha::parse(check_alpha);
      const auto verdict =
          icc::check_dominance(profile, committee, alpha,
                               check_mode == "winning" ? icc::DominanceMode::winning
                                                       : icc::DominanceMode::dominating);
      print_verdict(std::cout, verdict);
      return 0;
    }

    if (*construct) {
      const icc::ScoreMatrix scores = scores_from_options(
          construct_scores, construct_n, construct_m, construct_seed,
          construct->count("--seed") > 0);
      std::optional<icc::CyclicCommittee> committee;
      if (construct_method == "best-per-group") {
        committee = icc::best_per_group_committee(scores, construct_k);
      } else {
        const double r =
            construct_r > 0 ? construct_r : std::log(static_cast<double>(scores.candidates()));
        committee = icc::find_cyclic_threshold_committee(scores, construct_k, r);
      }
      if (!committee) {
        std::cout << "constructed: false\n";
        return 0;
      }
      std::cout << "constructed: true\ntuple:";
      for (const int c : committee->tuple) std::cout << ' ' << c;
      std::cout << "\ncommittee:";
      for (const int c : committee->dedup.members()) std::cout << ' ' << c;
      std::cout << '\n';
      if (!construct_alpha.empty()) {
        const icc::Alpha alpha = icc::Alpha::parse(construct_alpha);
        const auto verdict = icc::check_dominance(
            icc::scores_to_profile(scores), committee->dedup, alpha,
            construct_mode == "winning" ? icc::DominanceMode::winning
                                        : icc::DominanceMode::dominating);
        print_verdict(std::cout, verdict);
      }
      return 0;
    }

    if (*block) {
      if (!block_verify.empty()) {
        std::ifstream in(block_verify);
        if (!in) throw icc::Error::io("cannot open '" + block_verify + "'");
        std::stringstream buffer;
        buffer << in.rdbuf();
        const icc::BlockCertificate cert = icc::certificate_from_json(buffer.str());
        std::optional<icc::Profile> profile;
        if (!block_profile.empty())
          profile = icc::load_profile(block_profile);
        else if (!block_scores.empty())
          profile = icc::scores_to_profile(icc::load_score_matrix(block_scores));
        else
          throw icc::Error::invalid_argument("--verify needs --profile or --scores");
        std::cout << "valid: " << (icc::verify_certificate(cert, *profile) ? "true" : "false")
                  << '\n';
        return 0;
      }
      const icc::ScoreMatrix scores = scores_from_options(block_scores, block_n, block_m,
                                                          block_seed, block->count("--seed") > 0);
      std::optional<icc::Committee> committee;
      if (!block_committee.empty()) {
        committee = icc::Committee(parse_id_list(block_committee));
      } else if (!block_construct.empty()) {
        if (block_k < 1) throw icc::Error::invalid_argument("--construct needs --k");
        if (block_construct == "best-per-group") {
          committee = icc::best_per_group_committee(scores, block_k).dedup;
        } else {
          const double r = std::log(static_cast<double>(scores.candidates()));
          auto cyclic = icc::find_cyclic_threshold_committee(scores, block_k, r);
          if (!cyclic) throw icc::Error::invalid_argument("cyclic construction found no committee");
          committee = cyclic->dedup;
        }
      } else {
        throw icc::Error::invalid_argument("need --committee or --construct");
      }
      if (block->count("--seed") == 0)
        throw icc::Error::invalid_argument("blocking needs --seed (rounding is randomized)");
      icc::Rng rng(block_seed, 1);  // stream 1: sampling (if any) used stream 0's default
      const icc::BlockResult result = icc::block_committee(scores, *committee, rng);
      OutputTarget target(block_out);
      if (result.certificate) {
        target.stream() << icc::certificate_to_json(*result.certificate) << '\n';
      } else {
        target.stream() << "blocked: false stage: " << icc::block_stage_name(*result.failed_stage)
                        << '\n';
      }
      return 0;
    }

    if (*estimate) {
      finish_estimate_flags(estimate_flags);
      icc::SweepRow row;
      row.config = estimate_flags.cfg;
      row.result = icc::estimate_existence(estimate_flags.cfg);
      emit_rows(estimate_flags, {row});
      return 0;
    }

    if (*sweep) {
      finish_estimate_flags(sweep_flags);
      const auto rows =
          icc::sweep(sweep_flags.cfg, icc::parse_axis(sweep_axis), split_list(sweep_values));
      emit_rows(sweep_flags, rows);
      return 0;
    }

    if (*exact) {
      const icc::Rational value = icc::exact_existence_small(
          exact_n, exact_m, exact_k, icc::Alpha::parse(exact_alpha), icc::parse_mode(exact_mode));
      std::cout << "exact: " << value.str() << " (" << icc::format_double(value.to_double())
                << ")\n";
      return 0;
    }

    if (*search) {
      const auto found = icc::search_counterexample(search_n, search_m, search_k,
                                                    icc::Alpha::parse(search_alpha), search_trials,
                                                    search_seed, search_budget);
      if (!found) {
        std::cout << "found: false\n";
        return 0;
      }
      std::cout << "found: true\n";
      if (!search_out.empty()) {
        icc::save_profile(search_out, *found);
      } else {
        icc::write_profile(std::cout, *found);
      }
      return 0;
    }
  } catch (const icc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
