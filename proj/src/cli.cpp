#include "ebfreq/cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ebfreq/error.hpp"
#include "ebfreq/estimate.hpp"
#include "ebfreq/evaluate.hpp"
#include "ebfreq/fit.hpp"
#include "ebfreq/model_io.hpp"
#include "ebfreq/simulate.hpp"
#include "ebfreq/table_io.hpp"

namespace ebfreq {

namespace {

// Writes to a file, or to the command's stdout for "-".
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
    } else {
      file_.open(path);
      if (!file_) throw io_error("cannot open '" + path + "' for writing");
      stream_ = &file_;
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

template <class T>
T read_table(const std::string& path, T (*reader)(std::istream&, const std::string&)) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  return reader(in, path);
}

struct FitArgs {
  std::string model;
  std::string input;
  std::string output_model;
  FitOptions options;
  bool asymmetric = false;
};

struct EstimateArgs {
  std::string model_file;
  std::string input;
  std::string output = "-";
  unsigned threads = 1;
};

struct EvaluateArgs {
  std::vector<std::string> estimates;
  std::string truth;
  std::string validation;
  int bins = kDefaultBins;
  std::string output;
  std::string profile_out;
  std::vector<Estimator> estimators{Estimator::mle, Estimator::pooled, Estimator::eb};
  std::string bias_convention = "pooled-bin";
};

struct SimulateArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n_markers;
  std::string output;
  std::string truth_out;
  std::string write_config;
  unsigned threads = 1;
};

struct SplitArgs {
  std::string input;
  double fraction = 0.5;
  std::uint64_t seed = 1;
  std::string out_a;
  std::string out_b;
  bool strip_boosters = false;
};

struct OrientArgs {
  std::string input_raw;
  std::string output = "-";
};

void run_fit(const FitArgs& args, std::ostream& out) {
  const MarkerDataset data = read_counts_tsv(args.input);
  FitOptions options = args.options;
  options.symmetric_spline = !args.asymmetric;
  const FitResult fit = fit_model(data, parse_model_family(args.model), options);
  write_model(args.output_model, fit);
  out << "variant " << variant_name(fit.model) << ", markers " << fit.n_markers << ", neg_log_lik "
      << format_number(fit.neg_log_lik, 10) << ", affinity " << format_number(affinity(fit.model), 4)
      << (affinity_is_extended(fit.model) ? " (extended definition)" : "")
      << (fit.converged ? "" : ", not converged") << '\n';
}

void run_estimate(const EstimateArgs& args, std::ostream& out) {
  const FitResult fit = read_model(args.model_file);
  const MarkerDataset data = read_counts_tsv(args.input);
  const auto estimates = estimate_all(fit.model, data, args.threads);
  Output dest(args.output, out);
  write_estimates_tsv(*dest, estimates);
}

void run_evaluate(const EvaluateArgs& args, std::ostream& out) {
  if (!args.profile_out.empty()) {
    if (args.truth.empty()) throw data_error("--profile-out needs --truth");
    if (args.estimates.size() < 2) {
      throw domain_error("bias/variance profile needs at least 2 replicates, got " +
                         std::to_string(args.estimates.size()));
    }
  }
  const BiasConvention convention = parse_bias_convention(args.bias_convention);

  std::vector<std::vector<EstimateRecord>> tables;
  for (const auto& path : args.estimates) tables.push_back(read_table(path, &read_estimates_tsv));

  std::vector<TruthRecord> truth;
  std::vector<ValidationRecord> validation;
  if (!args.truth.empty()) {
    truth = read_table(args.truth, &read_truth_tsv);
  } else {
    validation = validation_from(read_counts_tsv(args.validation));
  }

  std::vector<EvalReport> reports;
  for (std::size_t t = 0; t < tables.size(); ++t) {
    std::vector<EvalReport> file_reports;
    for (const Estimator e : args.estimators) {
      file_reports.push_back(truth.empty() ? mse_vs_validation(tables[t], validation, e, args.bins)
                                           : mse_vs_truth(tables[t], truth, e, args.bins));
    }
    if (tables.size() > 1) out << "# " << args.estimates[t] << '\n';
    write_eval_table(out, file_reports);
    reports.insert(reports.end(), file_reports.begin(), file_reports.end());
  }
  if (!args.output.empty()) {
    Output dest(args.output, out);
    write_eval_tsv(*dest, reports);
  }
  if (!args.profile_out.empty()) {
    Output dest(args.profile_out, out);
    for (const Estimator e : args.estimators) {
      write_profile_tsv(*dest, bias_variance_profile(tables, truth, e, args.bins, convention), e, convention,
                        tables.size());
    }
  }
}

void run_simulate(const SimulateArgs& args, std::ostream& out) {
  SimConfig config = args.config.empty() ? SimConfig{} : read_sim_config(args.config);
  if (args.seed) config.seed = *args.seed;
  if (args.n_markers) config.n_markers = *args.n_markers;
  if (!args.write_config.empty()) {
    Output dest(args.write_config, out);
    write_sim_config(*dest, config);
  }
  if (args.output.empty()) return;
  const SimulatedData sim = simulate_dataset(config, args.threads);
  write_counts_tsv(args.output, sim.data);
  if (!args.truth_out.empty()) {
    Output dest(args.truth_out, out);
    write_truth_tsv(*dest, sim.truth, sim.data.metadata().booster_names);
  }
}

void run_split(const SplitArgs& args) {
  const MarkerDataset data = read_counts_tsv(args.input);
  const auto [a, b] = split_dataset(data, args.fraction, args.seed, args.strip_boosters);
  write_counts_tsv(args.out_a, a);
  write_counts_tsv(args.out_b, b);
}

void run_orient(const OrientArgs& args, std::ostream& out) {
  const RawTable table = read_table(args.input_raw, &read_raw_tsv);
  const MarkerDataset data = orient_table(table, args.input_raw);
  Output dest(args.output, out);
  write_counts_tsv(*dest, data);
}

int report(std::ostream& err, const char* category, const std::string& detail) {
  std::string line = detail;
  for (char& c : line) {
    if (c == '\n') c = ' ';
  }
  err << "ebfreq: error[" << category << "]: " << line << '\n';
  return 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Empirical Bayes allele frequency estimation with booster samples", "ebfreq"};
  app.require_subcommand(1);

  FitArgs fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a prior model to a counts table");
  fit_cmd->add_option("--model", fit.model, "windowed, eb1, eb2 or spline")
      ->required()
      ->check(CLI::IsMember({"windowed", "eb1", "eb2", "eb3", "spline"}));
  fit_cmd->add_option("--input", fit.input, "counts-tsv file")->required();
  fit_cmd->add_option("--output-model", fit.output_model, "model document to write")->required();
  fit_cmd->add_option("--n-basis", fit.options.n_basis, "spline basis functions")
      ->capture_default_str()
      ->check(CLI::Range(4, 64));
  fit_cmd->add_option("--min-bin", fit.options.min_bin, "minimum markers per window")->capture_default_str();
  fit_cmd->add_option("--delta", fit.options.delta, "window half-width (0 = per-count windows)")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 0.5));
  fit_cmd->add_option("--starts", fit.options.n_starts, "perturbed restarts")->capture_default_str();
  fit_cmd->add_flag("--asymmetric", fit.asymmetric, "separate spline coefficients for b");
  fit_cmd->add_option("--threads", fit.options.threads, "worker threads")->capture_default_str();

  EstimateArgs est;
  auto* est_cmd = app.add_subcommand("estimate", "Posterior estimates for every marker");
  est_cmd->add_option("--model-file", est.model_file, "model document")->required();
  est_cmd->add_option("--input", est.input, "counts-tsv file")->required();
  est_cmd->add_option("--output", est.output, "estimates-tsv file, - for stdout")->capture_default_str();
  est_cmd->add_option("--threads", est.threads, "worker threads")->capture_default_str();

  EvaluateArgs eval;
  const std::map<std::string, Estimator> estimator_names{
      {"mle", Estimator::mle}, {"pooled", Estimator::pooled}, {"eb", Estimator::eb}};
  auto* eval_cmd = app.add_subcommand("evaluate", "Mean squared error of estimates");
  eval_cmd->add_option("--estimates", eval.estimates, "estimates-tsv file (repeat for replicates)")->required();
  auto* truth_opt = eval_cmd->add_option("--truth", eval.truth, "truth-tsv file");
  auto* val_opt = eval_cmd->add_option("--validation", eval.validation, "counts-tsv of held-out target counts");
  truth_opt->excludes(val_opt);
  eval_cmd->add_option("--bins", eval.bins, "profile bins on [0, 1]")
      ->capture_default_str()
      ->check(CLI::Range(1, 10000));
  eval_cmd->add_option("--output", eval.output, "eval-tsv file, - for stdout");
  eval_cmd->add_option("--profile-out", eval.profile_out, "bias/variance profile over replicates");
  eval_cmd->add_option("--estimator", eval.estimators, "mle, pooled, eb (default all)")
      ->transform(CLI::CheckedTransformer(estimator_names, CLI::ignore_case));
  eval_cmd->add_option("--bias-convention", eval.bias_convention, "pooled-bin or per-marker")
      ->capture_default_str()
      ->check(CLI::IsMember({"pooled-bin", "per-marker"}));

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate a counts table with known truth");
  sim_cmd->add_option("--config", sim.config, "simulation config (JSON); defaults if omitted");
  sim_cmd->add_option("--seed", sim.seed, "overrides the config seed");
  sim_cmd->add_option("--n-markers", sim.n_markers, "overrides the config marker count");
  sim_cmd->add_option("--output", sim.output, "counts-tsv file");
  sim_cmd->add_option("--truth-out", sim.truth_out, "truth-tsv file");
  sim_cmd->add_option("--write-config", sim.write_config, "write the effective config, - for stdout");
  sim_cmd->add_option("--threads", sim.threads, "worker threads")->capture_default_str();

  SplitArgs split;
  auto* split_cmd = app.add_subcommand("split", "Split target alleles into two parts");
  split_cmd->add_option("--input", split.input, "counts-tsv file")->required();
  split_cmd->add_option("--fraction", split.fraction, "share of alleles in the first part")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  split_cmd->add_option("--seed", split.seed, "random seed")->capture_default_str();
  split_cmd->add_option("--out-a", split.out_a, "first part")->required();
  split_cmd->add_option("--out-b", split.out_b, "second part")->required();
  split_cmd->add_flag("--strip-boosters", split.strip_boosters, "drop booster columns from both parts");

  OrientArgs orient_args;
  auto* orient_cmd = app.add_subcommand("orient", "Convert a raw allele table to counts-tsv");
  orient_cmd->add_option("--input-raw", orient_args.input_raw, "raw-tsv file")->required();
  orient_cmd->add_option("--output", orient_args.output, "counts-tsv file, - for stdout")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    if (eval_cmd->parsed() && eval.truth.empty() && eval.validation.empty()) {
      throw CLI::RequiredError("--truth or --validation");
    }
    if (sim_cmd->parsed() && sim.output.empty() && sim.write_config.empty()) {
      throw CLI::RequiredError("--output or --write-config");
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    report(err, "usage", e.what());
    CLI::App* failing = &app;
    for (CLI::App* sub : app.get_subcommands()) failing = sub;
    err << failing->help();
    return 2;
  }

  try {
    if (fit_cmd->parsed()) run_fit(fit, out);
    if (est_cmd->parsed()) run_estimate(est, out);
    if (eval_cmd->parsed()) run_evaluate(eval, out);
    if (sim_cmd->parsed()) run_simulate(sim, out);
    if (split_cmd->parsed()) run_split(split);
    if (orient_cmd->parsed()) run_orient(orient_args, out);
  } catch (const data_error& e) {
    return report(err, "data", e.what());
  } catch (const model_error& e) {
    return report(err, "model", e.what());
  } catch (const io_error& e) {
    return report(err, "io", e.what());
  } catch (const domain_error& e) {
    return report(err, "domain", e.what());
  } catch (const std::exception& e) {
    return report(err, "internal", e.what());
  }
  return 0;
}

}  // namespace ebfreq
