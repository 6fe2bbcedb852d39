#include "ebfreq/table_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "ebfreq/error.hpp"

namespace ebfreq {

namespace {

std::string format_line(const std::string& name) {
  return "##format=" + name + ";version=" + std::to_string(kFormatVersion);
}

// Reads tab-separated lines and reports errors with 1-based line and column positions.
class TsvReader {
 public:
  TsvReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {}

  bool next(std::vector<std::string>& fields) {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      fields.clear();
      std::size_t start = 0;
      for (;;) {
        const std::size_t tab = line.find('\t', start);
        fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
        if (tab == std::string::npos) break;
        start = tab + 1;
      }
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& message, std::size_t column = 0) const {
    std::ostringstream out;
    out << source_ << ": line " << line_no_;
    if (column > 0) out << ", column " << column;
    out << ": " << message;
    throw data_error(out.str());
  }

  void expect_format(const std::string& name) {
    std::vector<std::string> fields;
    if (!next(fields)) fail("empty file; expected '" + format_line(name) + "'");
    if (fields.size() != 1 || fields[0].rfind("##format=", 0) != 0) {
      fail("missing format line '" + format_line(name) + "'");
    }
    if (fields[0] != format_line(name)) {
      fail("unsupported format '" + fields[0].substr(9) + "', expected '" + format_line(name).substr(9) + "'");
    }
  }

  // Skips '#' comment lines (used by eval summaries); returns false at end of input.
  bool next_data(std::vector<std::string>& fields) {
    while (next(fields)) {
      if (!fields.empty() && !fields[0].empty() && fields[0][0] == '#') continue;
      return true;
    }
    return false;
  }

  std::int64_t integer(const std::string& field, std::size_t column) const {
    if (field.empty()) fail("missing count", column);
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      fail("'" + field + "' is not an integer", column);
    }
    if (value < 0) fail("negative count " + field, column);
    return value;
  }

  double real(const std::string& field, std::size_t column) const {
    if (field.empty()) fail("missing value", column);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
      fail("'" + field + "' is not a number", column);
    }
    return value;
  }

  void expect_columns(const std::vector<std::string>& fields, std::size_t n) const {
    if (fields.size() != n) {
      fail("expected " + std::to_string(n) + " columns, found " + std::to_string(fields.size()));
    }
  }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_no_ = 0;
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  return out;
}

// Splits "<name>.<suffix>" and checks the suffix.
std::string sample_name(const TsvReader& reader, const std::string& column, const std::string& suffix,
                        std::size_t index) {
  const std::string tail = "." + suffix;
  if (column.size() <= tail.size() || column.compare(column.size() - tail.size(), tail.size(), tail) != 0) {
    reader.fail("header column '" + column + "' should end in '" + tail + "'", index);
  }
  return column.substr(0, column.size() - tail.size());
}

int nucleotide_rank(char c) {
  switch (c) {
    case 'A': return 0;
    case 'C': return 1;
    case 'G': return 2;
    case 'T': return 3;
    default: return -1;
  }
}

std::string opt_number(const std::optional<double>& v) { return v ? format_number(*v) : "NA"; }

}  // namespace

std::string format_number(double value, int significant_digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", significant_digits, value);
  return buf;
}

MarkerDataset read_counts_tsv(std::istream& in, const std::string& source) {
  TsvReader reader(in, source);
  reader.expect_format("counts-tsv");
  std::vector<std::string> fields;
  if (!reader.next(fields)) reader.fail("missing header row");
  if (fields.size() < 3 || fields.size() % 2 == 0 || fields[0] != "id") {
    reader.fail("header must be 'id' followed by <sample>.x / <sample>.n column pairs");
  }
  DatasetMetadata meta;
  meta.source = source;
  for (std::size_t c = 1; c < fields.size(); c += 2) {
    const std::string name = sample_name(reader, fields[c], "x", c + 1);
    if (sample_name(reader, fields[c + 1], "n", c + 2) != name) {
      reader.fail("columns '" + fields[c] + "' and '" + fields[c + 1] + "' name different samples", c + 2);
    }
    if (c == 1) {
      meta.target_name = name;
    } else {
      meta.booster_names.push_back(name);
    }
  }
  const std::size_t n_columns = fields.size();

  std::vector<MarkerRecord> records;
  std::unordered_set<std::string> seen;
  while (reader.next(fields)) {
    reader.expect_columns(fields, n_columns);
    if (fields[0].empty()) reader.fail("empty marker id", 1);
    if (!seen.insert(fields[0]).second) reader.fail("duplicate marker id '" + fields[0] + "'", 1);
    std::vector<CountPair> pairs;
    for (std::size_t c = 1; c < n_columns; c += 2) {
      const std::int64_t x = reader.integer(fields[c], c + 1);
      const std::int64_t n = reader.integer(fields[c + 1], c + 2);
      if (n == 0) reader.fail("marker " + fields[0] + ": total allele count must be positive", c + 2);
      if (x > n) {
        reader.fail("marker " + fields[0] + ": count " + std::to_string(x) + " exceeds total " + std::to_string(n),
                    c + 1);
      }
      pairs.emplace_back(x, n);
    }
    MarkerRecord r{fields[0], pairs.front(), std::vector<CountPair>(pairs.begin() + 1, pairs.end())};
    records.push_back(std::move(r));
  }
  return MarkerDataset(std::move(records), std::move(meta));
}

MarkerDataset read_counts_tsv(const std::string& path) {
  auto in = open_input(path);
  return read_counts_tsv(in, path);
}

void write_counts_tsv(std::ostream& out, const MarkerDataset& data) {
  const auto& meta = data.metadata();
  out << format_line("counts-tsv") << '\n';
  out << "id\t" << meta.target_name << ".x\t" << meta.target_name << ".n";
  for (const auto& name : meta.booster_names) out << '\t' << name << ".x\t" << name << ".n";
  out << '\n';
  for (const auto& r : data.records()) {
    out << r.id << '\t' << r.target.successes() << '\t' << r.target.trials();
    for (const auto& b : r.boosters) out << '\t' << b.successes() << '\t' << b.trials();
    out << '\n';
  }
}

void write_counts_tsv(const std::string& path, const MarkerDataset& data) {
  auto out = open_output(path);
  write_counts_tsv(out, data);
}

MarkerRecord orient(const RawMarkerLine& line) {
  const int r1 = nucleotide_rank(line.allele1);
  const int r2 = nucleotide_rank(line.allele2);
  if (r1 < 0 || r2 < 0) {
    throw data_error("marker " + line.id + ": unknown allele symbol (expected A, C, G or T)");
  }
  if (r1 == r2) throw data_error("marker " + line.id + ": both alleles are '" + std::string(1, line.allele1) + "'");
  if (line.counts.empty()) throw data_error("marker " + line.id + ": no sample counts");
  const std::size_t a_index = r1 < r2 ? 0 : 1;
  std::vector<CountPair> pairs;
  for (const auto& c : line.counts) {
    const std::int64_t total = c[0] + c[1];
    if (c[0] < 0 || c[1] < 0) throw data_error("marker " + line.id + ": negative allele count");
    if (total == 0) throw data_error("marker " + line.id + ": a sample has no observed alleles");
    pairs.emplace_back(c[a_index], total);
  }
  return MarkerRecord{line.id, pairs.front(), std::vector<CountPair>(pairs.begin() + 1, pairs.end())};
}

RawTable read_raw_tsv(std::istream& in, const std::string& source) {
  TsvReader reader(in, source);
  reader.expect_format("raw-tsv");
  std::vector<std::string> fields;
  if (!reader.next(fields)) reader.fail("missing header row");
  if (fields.size() < 5 || fields.size() % 2 == 0 || fields[0] != "id" || fields[1] != "allele1" ||
      fields[2] != "allele2") {
    reader.fail("header must be 'id allele1 allele2' followed by <sample>.c1 / <sample>.c2 column pairs");
  }
  RawTable table;
  for (std::size_t c = 3; c < fields.size(); c += 2) {
    const std::string name = sample_name(reader, fields[c], "c1", c + 1);
    if (sample_name(reader, fields[c + 1], "c2", c + 2) != name) {
      reader.fail("columns '" + fields[c] + "' and '" + fields[c + 1] + "' name different samples", c + 2);
    }
    table.sample_names.push_back(name);
  }
  const std::size_t n_columns = fields.size();
  while (reader.next(fields)) {
    reader.expect_columns(fields, n_columns);
    RawMarkerLine line;
    line.id = fields[0];
    if (line.id.empty()) reader.fail("empty marker id", 1);
    for (std::size_t c = 1; c <= 2; ++c) {
      if (fields[c].size() != 1) reader.fail("allele must be a single nucleotide", c + 1);
    }
    line.allele1 = fields[1][0];
    line.allele2 = fields[2][0];
    for (std::size_t c = 3; c < n_columns; c += 2) {
      line.counts.push_back({reader.integer(fields[c], c + 1), reader.integer(fields[c + 1], c + 2)});
    }
    try {
      (void)orient(line);
    } catch (const data_error& e) {
      reader.fail(e.what());
    }
    table.lines.push_back(std::move(line));
  }
  return table;
}

MarkerDataset orient_table(const RawTable& table, const std::string& source) {
  DatasetMetadata meta;
  meta.source = source;
  meta.oriented = true;
  meta.target_name = table.sample_names.front();
  meta.booster_names.assign(table.sample_names.begin() + 1, table.sample_names.end());
  std::vector<MarkerRecord> records;
  records.reserve(table.lines.size());
  for (const auto& line : table.lines) records.push_back(orient(line));
  return MarkerDataset(std::move(records), std::move(meta));
}

void write_estimates_tsv(std::ostream& out, const std::vector<EstimateRecord>& estimates) {
  out << format_line("estimates-tsv") << '\n';
  out << "id\tq_mle\tq_pooled\tq_eb\tvar_eb\tprior_a\tprior_b\tlocal_affinity\n";
  for (const auto& e : estimates) {
    out << e.id << '\t' << format_number(e.q_mle) << '\t' << format_number(e.q_pooled) << '\t'
        << format_number(e.q_eb) << '\t' << format_number(e.var_eb) << '\t' << format_number(e.prior.a()) << '\t'
        << format_number(e.prior.b()) << '\t' << format_number(e.local_affinity) << '\n';
  }
}

std::vector<EstimateRecord> read_estimates_tsv(std::istream& in, const std::string& source) {
  TsvReader reader(in, source);
  reader.expect_format("estimates-tsv");
  std::vector<std::string> fields;
  if (!reader.next(fields)) reader.fail("missing header row");
  const std::vector<std::string> header{"id",     "q_mle",   "q_pooled", "q_eb",
                                        "var_eb", "prior_a", "prior_b",  "local_affinity"};
  if (fields != header) reader.fail("unexpected header row");
  std::vector<EstimateRecord> out;
  while (reader.next(fields)) {
    reader.expect_columns(fields, header.size());
    EstimateRecord e;
    e.id = fields[0];
    e.q_mle = reader.real(fields[1], 2);
    e.q_pooled = reader.real(fields[2], 3);
    e.q_eb = reader.real(fields[3], 4);
    e.var_eb = reader.real(fields[4], 5);
    try {
      e.prior = BetaParams(reader.real(fields[5], 6), reader.real(fields[6], 7));
    } catch (const domain_error& err) {
      reader.fail(err.what(), 6);
    }
    e.local_affinity = reader.real(fields[7], 8);
    out.push_back(std::move(e));
  }
  return out;
}

void write_truth_tsv(std::ostream& out, const std::vector<TruthRecord>& truth,
                     const std::vector<std::string>& booster_names) {
  out << format_line("truth-tsv") << '\n';
  out << "id";
  for (const auto& name : booster_names) out << "\tp_true." << name;
  out << "\tq_true\n";
  for (const auto& t : truth) {
    if (t.p_true.size() != booster_names.size()) {
      throw data_error("marker " + t.id + ": truth record has the wrong number of booster frequencies");
    }
    out << t.id;
    for (double p : t.p_true) out << '\t' << format_number(p);
    out << '\t' << format_number(t.q_true) << '\n';
  }
}

std::vector<TruthRecord> read_truth_tsv(std::istream& in, const std::string& source) {
  TsvReader reader(in, source);
  reader.expect_format("truth-tsv");
  std::vector<std::string> fields;
  if (!reader.next(fields)) reader.fail("missing header row");
  if (fields.size() < 2 || fields.front() != "id" || fields.back() != "q_true") {
    reader.fail("header must be 'id', p_true.<booster> columns, then 'q_true'");
  }
  for (std::size_t c = 1; c + 1 < fields.size(); ++c) {
    if (fields[c].rfind("p_true.", 0) != 0) reader.fail("expected a p_true.<booster> column", c + 1);
  }
  const std::size_t n_columns = fields.size();
  std::vector<TruthRecord> out;
  while (reader.next(fields)) {
    reader.expect_columns(fields, n_columns);
    TruthRecord t;
    t.id = fields[0];
    for (std::size_t c = 1; c + 1 < n_columns; ++c) t.p_true.push_back(reader.real(fields[c], c + 1));
    t.q_true = reader.real(fields.back(), n_columns);
    if (!(t.q_true >= 0.0 && t.q_true <= 1.0)) reader.fail("q_true outside [0, 1]", n_columns);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<ValidationRecord> validation_from(const MarkerDataset& data) {
  std::vector<ValidationRecord> out;
  out.reserve(data.size());
  for (const auto& r : data.records()) out.push_back({r.id, r.target});
  return out;
}

void write_eval_tsv(std::ostream& out, const std::vector<EvalReport>& reports) {
  out << format_line("eval-tsv") << '\n';
  out << "#variance_convention=population\n";
  for (const auto& r : reports) {
    out << "#estimator=" << to_string(r.estimator) << ";mode=" << (r.validation_mode ? "validation" : "truth")
        << ";n_markers=" << r.n_markers << ";mse_raw=" << format_number(r.mse_raw)
        << ";mse_corrected=" << format_number(r.mse_corrected)
        << ";correction_term=" << format_number(r.correction_term) << '\n';
  }
  out << "estimator\tbin_lo\tbin_hi\tbin_center\tcount\tmse\tbias_sq\tvariance\n";
  for (const auto& r : reports) {
    for (const auto& bin : r.profile) {
      out << to_string(r.estimator) << '\t' << format_number(bin.lo) << '\t' << format_number(bin.hi) << '\t'
          << format_number(bin.center()) << '\t' << bin.count << '\t' << opt_number(bin.mse) << '\t'
          << opt_number(bin.bias_sq) << '\t' << opt_number(bin.variance) << '\n';
    }
  }
}

void write_profile_tsv(std::ostream& out, const std::vector<ProfileBin>& profile, Estimator estimator,
                       BiasConvention convention, std::size_t replicates) {
  out << format_line("profile-tsv") << '\n';
  out << "#variance_convention=population;bias_convention=" << to_string(convention)
      << ";replicates=" << replicates << ";estimator=" << to_string(estimator) << '\n';
  out << "bin_lo\tbin_hi\tbin_center\tcount\tmse\tbias_sq\tvariance\n";
  for (const auto& bin : profile) {
    out << format_number(bin.lo) << '\t' << format_number(bin.hi) << '\t' << format_number(bin.center()) << '\t'
        << bin.count << '\t' << opt_number(bin.mse) << '\t' << opt_number(bin.bias_sq) << '\t'
        << opt_number(bin.variance) << '\n';
  }
}

void write_eval_table(std::ostream& out, const std::vector<EvalReport>& reports) {
  out << std::left << std::setw(10) << "estimator" << std::setw(12) << "mode" << std::setw(10) << "markers"
      << std::setw(12) << "mse_raw" << std::setw(14) << "correction" << "mse_corrected\n";
  for (const auto& r : reports) {
    out << std::left << std::setw(10) << to_string(r.estimator) << std::setw(12)
        << (r.validation_mode ? "validation" : "truth") << std::setw(10) << r.n_markers << std::setw(12)
        << format_number(r.mse_raw, 4) << std::setw(14) << format_number(r.correction_term, 4)
        << format_number(r.mse_corrected, 4) << '\n';
  }
}

}  // namespace ebfreq
