#include "ebfreq/model_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "ebfreq/bspline.hpp"
#include "ebfreq/error.hpp"

namespace ebfreq {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kModelFormat = "ebfreq-model";
constexpr const char* kConfigFormat = "ebfreq-simconfig";

Json coefficients_json(const WindowedModel& m) {
  Json bins = Json::array();
  for (const auto& bin : m.bins) {
    bins.push_back({{"lo", bin.lo},
                    {"hi", bin.hi},
                    {"a", bin.params.a()},
                    {"b", bin.params.b()},
                    {"n_markers", bin.n_markers},
                    {"converged", bin.converged},
                    {"boundary", bin.boundary}});
  }
  return {{"delta", m.delta}, {"bins", bins}};
}

Json coefficients_json(const Eb1Model& m) { return {{"beta0", m.beta0}, {"betas", m.betas}}; }

Json coefficients_json(const Eb2Model& m) {
  return {{"beta0", m.beta0}, {"beta1", m.beta1}, {"beta2", m.beta2}, {"beta3", m.beta3}};
}

Json coefficients_json(const SplineModel& m) {
  const CubicBSplineBasis basis(m.n_basis);
  return {{"knots", {{"kind", "clamped-uniform"}, {"degree", 3}, {"values", basis.knots()}}},
          {"n_basis", m.n_basis},
          {"symmetric", m.symmetric},
          {"theta", m.theta},
          {"gamma", m.gamma}};
}

Json model_json(const PriorModel& model) {
  Json doc;
  doc["format"] = kModelFormat;
  doc["format_version"] = kModelFormatVersion;
  doc["variant"] = variant_name(model);
  doc["boosters"] = booster_count(model);
  doc["coefficients"] = std::visit([](const auto& m) { return coefficients_json(m); }, model);
  doc["affinity"] = {{"value", affinity(model)},
                     {"definition", affinity_is_extended(model) ? "extended" : "standard"}};
  return doc;
}

// Field access with errors that name the document and key.
class Reader {
 public:
  explicit Reader(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const std::string& message) const { throw model_error(source_ + ": " + message); }

  const Json& at(const Json& obj, const char* key) const {
    if (!obj.is_object()) fail(std::string("expected an object holding '") + key + "'");
    const auto it = obj.find(key);
    if (it == obj.end()) fail(std::string("missing key '") + key + "'");
    return *it;
  }

  template <class T>
  T get(const Json& obj, const char* key) const {
    try {
      return at(obj, key).get<T>();
    } catch (const nlohmann::json::exception&) {
      fail(std::string("key '") + key + "' has the wrong type");
    }
  }

  template <class T>
  T get_or(const Json& obj, const char* key, T fallback) const {
    if (!obj.contains(key)) return fallback;
    return get<T>(obj, key);
  }

  Json parse(std::istream& in) const {
    try {
      return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      fail(std::string("not valid JSON (") + e.what() + ")");
    }
  }

  void check_format(const Json& doc, const char* format) const {
    if (!doc.is_object()) fail("expected a JSON object");
    const auto name = get<std::string>(doc, "format");
    if (name != format) fail("format is '" + name + "', expected '" + format + "'");
    const auto version = get<int>(doc, "format_version");
    if (version != kModelFormatVersion) {
      fail("unsupported format_version " + std::to_string(version));
    }
  }

 private:
  std::string source_;
};

PriorModel model_from_json(const Reader& r, const std::string& variant, const Json& c) {
  if (variant == "windowed") {
    WindowedModel m;
    m.delta = r.get<double>(c, "delta");
    for (const auto& bin : r.at(c, "bins")) {
      WindowBin w;
      w.lo = r.get<double>(bin, "lo");
      w.hi = r.get<double>(bin, "hi");
      try {
        w.params = BetaParams(r.get<double>(bin, "a"), r.get<double>(bin, "b"));
      } catch (const domain_error& e) {
        r.fail(std::string("windowed bin: ") + e.what());
      }
      w.n_markers = r.get_or<std::size_t>(bin, "n_markers", 0);
      w.converged = r.get_or<bool>(bin, "converged", true);
      w.boundary = r.get_or<bool>(bin, "boundary", false);
      m.bins.push_back(w);
    }
    return m;
  }
  if (variant == "eb1") {
    return Eb1Model{r.get<double>(c, "beta0"), r.get<std::vector<double>>(c, "betas")};
  }
  if (variant == "eb2") {
    return Eb2Model{r.get<double>(c, "beta0"), r.get<double>(c, "beta1"), r.get<double>(c, "beta2"),
                    r.get<double>(c, "beta3")};
  }
  if (variant == "spline") {
    SplineModel m;
    m.n_basis = r.get<int>(c, "n_basis");
    m.symmetric = r.get<bool>(c, "symmetric");
    m.theta = r.get<std::vector<std::vector<double>>>(c, "theta");
    m.gamma = r.get_or<std::vector<std::vector<double>>>(c, "gamma", {});
    if (c.contains("knots")) {
      const Json& knots = r.at(c, "knots");
      if (r.get<std::string>(knots, "kind") != "clamped-uniform" || r.get<int>(knots, "degree") != 3) {
        r.fail("only clamped-uniform cubic knots are supported");
      }
    }
    return m;
  }
  r.fail("unknown model variant '" + variant + "'");
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  return in;
}

}  // namespace

void write_model(std::ostream& out, const PriorModel& model) { out << model_json(model).dump(2) << '\n'; }

void write_model(std::ostream& out, const FitResult& fit) {
  Json doc = model_json(fit.model);
  doc["fit"] = {{"neg_log_lik", fit.neg_log_lik},
                {"iterations", fit.iterations},
                {"converged", fit.converged},
                {"gradient_norm", fit.gradient_norm},
                {"n_markers", fit.n_markers},
                {"dataset_hash", fit.dataset_hash}};
  out << doc.dump(2) << '\n';
}

void write_model(const std::string& path, const FitResult& fit) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  write_model(out, fit);
}

FitResult read_model(std::istream& in, const std::string& source) {
  const Reader r(source);
  const Json doc = r.parse(in);
  r.check_format(doc, kModelFormat);
  FitResult fit;
  fit.model = model_from_json(r, r.get<std::string>(doc, "variant"), r.at(doc, "coefficients"));
  try {
    validate(fit.model);
  } catch (const std::exception& e) {
    r.fail(e.what());
  }
  if (r.get<std::size_t>(doc, "boosters") != booster_count(fit.model)) {
    r.fail("'boosters' does not match the coefficients");
  }
  if (doc.contains("fit")) {
    const Json& f = r.at(doc, "fit");
    fit.neg_log_lik = r.get_or<double>(f, "neg_log_lik", 0.0);
    fit.iterations = r.get_or<int>(f, "iterations", 0);
    fit.converged = r.get_or<bool>(f, "converged", false);
    fit.gradient_norm = r.get_or<double>(f, "gradient_norm", 0.0);
    fit.n_markers = r.get_or<std::size_t>(f, "n_markers", 0);
    fit.dataset_hash = r.get_or<std::string>(f, "dataset_hash", "");
  }
  return fit;
}

FitResult read_model(const std::string& path) {
  auto in = open_input(path);
  return read_model(in, path);
}

void write_sim_config(std::ostream& out, const SimConfig& config) {
  Json doc;
  doc["format"] = kConfigFormat;
  doc["format_version"] = kModelFormatVersion;
  doc["n_markers"] = config.n_markers;
  doc["booster_marginal"] = {{"a", config.booster_marginal.a()}, {"b", config.booster_marginal.b()}};
  doc["conditional"] = {
      {"variant", variant_name(config.conditional)},
      {"coefficients", std::visit([](const auto& m) { return coefficients_json(m); }, config.conditional)}};
  doc["n_x"] = config.n_x;
  doc["n_y"] = config.n_y;
  doc["seed"] = config.seed;
  doc["mode"] = to_string(config.mode);
  doc["drift"] = config.drift;
  doc["id_prefix"] = config.id_prefix;
  out << doc.dump(2) << '\n';
}

SimConfig read_sim_config(std::istream& in, const std::string& source) {
  const Reader r(source);
  const Json doc = r.parse(in);
  if (!doc.is_object()) r.fail("expected a JSON object");
  if (r.get<std::string>(doc, "format") != kConfigFormat) r.fail(std::string("format must be '") + kConfigFormat + "'");
  if (r.get<int>(doc, "format_version") != kModelFormatVersion) r.fail("unsupported format_version");

  SimConfig config;
  config.n_markers = r.get_or<std::size_t>(doc, "n_markers", config.n_markers);
  if (doc.contains("booster_marginal")) {
    const Json& m = r.at(doc, "booster_marginal");
    try {
      config.booster_marginal = BetaParams(r.get<double>(m, "a"), r.get<double>(m, "b"));
    } catch (const domain_error& e) {
      r.fail(std::string("booster_marginal: ") + e.what());
    }
  }
  if (doc.contains("conditional")) {
    const Json& c = r.at(doc, "conditional");
    config.conditional = model_from_json(r, r.get<std::string>(c, "variant"), r.at(c, "coefficients"));
  }
  config.n_x = r.get_or<std::vector<std::int64_t>>(doc, "n_x", config.n_x);
  config.n_y = r.get_or<std::int64_t>(doc, "n_y", config.n_y);
  config.seed = r.get_or<std::uint64_t>(doc, "seed", config.seed);
  if (doc.contains("mode")) {
    try {
      config.mode = parse_sim_mode(r.get<std::string>(doc, "mode"));
    } catch (const std::exception& e) {
      r.fail(e.what());
    }
  }
  config.drift = r.get_or<std::vector<double>>(doc, "drift", config.drift);
  config.id_prefix = r.get_or<std::string>(doc, "id_prefix", config.id_prefix);
  try {
    validate(config);
  } catch (const std::exception& e) {
    r.fail(e.what());
  }
  return config;
}

SimConfig read_sim_config(const std::string& path) {
  auto in = open_input(path);
  return read_sim_config(in, path);
}

}  // namespace ebfreq
