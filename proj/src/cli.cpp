#include "eipvs/cli.hpp"

#include "eipvs/distances.hpp"
#include "eipvs/elastic_index.hpp"
#include "eipvs/eval.hpp"
#include "eipvs/format.hpp"
#include "eipvs/io.hpp"
#include "eipvs/kernels.hpp"
#include "eipvs/multiprecision.hpp"
#include "eipvs/orthogonal.hpp"
#include "eipvs/parallel.hpp"
#include "eipvs/seq_similarity.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <variant>

namespace eipvs {

namespace {

using Cell = std::variant<std::string, double, long long>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

std::string cell_text(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return csv_field(*s);
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  return std::to_string(std::get<long long>(c));
}

nlohmann::json cell_json(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) return *d;
  return std::get<long long>(c);
}

nlohmann::json table_json(const Table& t) {
  auto rows = nlohmann::json::array();
  for (const auto& r : t.rows) {
    nlohmann::json obj = nlohmann::json::object();
    for (std::size_t c = 0; c < t.columns.size(); ++c) obj[t.columns[c]] = cell_json(r[c]);
    rows.push_back(std::move(obj));
  }
  return rows;
}

/// CSV: tables separated by a blank line. JSON: an array of row objects for
/// a single table, an object keyed by table name otherwise.
void emit(std::ostream& out, const std::vector<Table>& tables, bool json) {
  if (json) {
    if (tables.size() == 1) {
      out << table_json(tables.front()).dump(2) << '\n';
    } else {
      nlohmann::ordered_json all = nlohmann::ordered_json::object();
      for (const auto& t : tables) all[t.name] = table_json(t);
      out << all.dump(2) << '\n';
    }
    return;
  }
  for (std::size_t k = 0; k < tables.size(); ++k) {
    if (k > 0) out << '\n';
    const auto& t = tables[k];
    for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << csv_field(t.columns[c]);
    out << '\n';
    for (const auto& r : t.rows) {
      for (std::size_t c = 0; c < r.size(); ++c) out << (c ? "," : "") << cell_text(r[c]);
      out << '\n';
    }
  }
}

struct Globals {
  double nu = 1.0;
  std::string kernel = "gaussian";
  double epsilon = kDefaultEpsilon;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  std::string format = "csv";

  TimeKernel time_kernel() const { return kernel == "laplace" ? TimeKernel::Laplace : TimeKernel::Gaussian; }
  ElasticParams params() const { return ElasticParams::eip(nu, time_kernel()); }
  bool json() const { return format == "json"; }
  UcrOptions ucr() const { return UcrOptions{epsilon, false}; }
};

LabeledDataset load_data(const std::string& path, const Globals& g, std::ostream& err, bool variable_length = false) {
  UcrOptions options = g.ucr();
  options.variable_length = variable_length;
  UcrData data = load_series_file(path, options);
  if (data.zero_repairs > 0)
    err << "warning: " << path << ": replaced " << data.zero_repairs << " zero value(s) by "
        << format_double(g.epsilon) << '\n';
  return std::move(data.dataset);
}

// ---------------------------------------------------------------------------

struct EipArgs {
  std::string a, b;
  std::string form = "expansion";
  bool variable_length = false;
};

int run_eip(const EipArgs& args, const Globals& g, std::ostream& out, std::ostream& err) {
  const LabeledDataset a = load_data(args.a, g, err, args.variable_length);
  const LabeledDataset b = load_data(args.b, g, err, args.variable_length);
  const DistanceForm form = args.form == "difference" ? DistanceForm::Difference : DistanceForm::Expansion;
  const ElasticParams params = g.params();
  std::vector<std::vector<double>> products(a.size(), std::vector<double>(b.size()));
  std::vector<std::vector<double>> distances(a.size(), std::vector<double>(b.size()));
  parallel_for(a.size(), g.threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      products[i][j] = eip(a.entries[i].series, b.entries[j].series, params);
      distances[i][j] = eip_distance(a.entries[i].series, b.entries[j].series, params, form);
    }
  });
  Table t{"eip", {"a", "b", "eip", "distance"}, {}};
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      t.rows.push_back({a.entries[i].id, b.entries[j].id, products[i][j], distances[i][j]});
  emit(out, {t}, g.json());
  return 0;
}

struct IndexBuildArgs {
  std::string corpus, output;
  Index grid_length = 0;
  double grid_start = 1.0;
  double grid_step = 1.0;
};

int run_index_build(const IndexBuildArgs& args, const Globals& g, std::ostream& out, std::ostream& err) {
  const LabeledDataset corpus = load_data(args.corpus, g, err);
  Timestamps grid = args.grid_length > 0 ? uniform_grid(args.grid_length, args.grid_start, args.grid_step)
                                         : infer_grid(corpus);
  const ElasticIndex index = index_corpus(corpus, std::move(grid), g.nu, g.time_kernel());
  save_index(index, args.output);
  Table t{"index", {"path", "items", "grid", "dim", "nu"}, {}};
  t.rows.push_back({args.output, static_cast<long long>(index.size()), static_cast<long long>(index.grid().size()),
                    static_cast<long long>(index.dim()), g.nu});
  emit(out, {t}, g.json());
  return 0;
}

struct IndexQueryArgs {
  std::string index, query;
  std::size_t k = 1;
};

int run_index_query(const IndexQueryArgs& args, const Globals& g, std::ostream& out, std::ostream& err) {
  const ElasticIndex index = load_index(args.index);
  const LabeledDataset queries = load_data(args.query, g, err);
  std::vector<std::vector<Neighbor>> results(queries.size());
  parallel_for(queries.size(), g.threads,
               [&](std::size_t q) { results[q] = query_knn(index, queries.entries[q].series, args.k); });
  Table t{"neighbors", {"query", "rank", "id", "label", "distance"}, {}};
  for (std::size_t q = 0; q < queries.size(); ++q)
    for (std::size_t r = 0; r < results[q].size(); ++r)
      t.rows.push_back({queries.entries[q].id, static_cast<long long>(r + 1), results[q][r].id, results[q][r].label,
                        results[q][r].distance});
  emit(out, {t}, g.json());
  return 0;
}

struct KnnArgs {
  std::string train, test;
  std::string distance = "eip";
  std::size_t k = 1;
  std::vector<double> nu_grid;
  bool fixed_nu = false;
};

int run_knn(const KnnArgs& args, const Globals& g, std::ostream& out, std::ostream& err) {
  LabeledDataset train = load_data(args.train, g, err);
  LabeledDataset test = load_data(args.test, g, err);
  train.split = Split::Train;
  test.split = Split::Test;
  DistanceSpec spec;
  spec.kind = parse_distance_kind(args.distance);
  double nu = g.nu;
  std::optional<double> loo;
  if (spec.kind == DistanceKind::Eip && !args.fixed_nu) {
    const std::vector<double> grid = args.nu_grid.empty() ? default_nu_grid() : args.nu_grid;
    const NuSelection sel = select_nu(train, grid, g.time_kernel(), g.threads);
    nu = sel.nu;
    loo = sel.loo_error;
  }
  spec.params = ElasticParams::eip(nu, g.time_kernel());
  if (!loo && train.size() >= 2) loo = loo_error(train, spec, g.threads);
  const ClassificationReport report = test_error(train, test, spec, args.k, g.threads);

  Table summary{"summary", {"distance", "nu", "k", "loo_error", "test_error", "errors", "total"}, {}};
  summary.rows.push_back({distance_kind_name(spec.kind), spec.kind == DistanceKind::Eip ? nu : std::nan(""),
                          static_cast<long long>(args.k), loo ? *loo : std::nan(""), report.error_rate(),
                          static_cast<long long>(report.errors), static_cast<long long>(report.total)});
  Table confusion{"confusion", {"true"}, {}};
  for (const auto& l : report.labels) confusion.columns.push_back(l);
  for (std::size_t i = 0; i < report.labels.size(); ++i) {
    std::vector<Cell> row{report.labels[i]};
    for (std::size_t c : report.confusion[i]) row.emplace_back(static_cast<long long>(c));
    confusion.rows.push_back(std::move(row));
  }
  emit(out, {summary, confusion}, g.json());
  return 0;
}

struct GramArgs {
  std::string data;
  std::string type = "gaussian_eip";
  double sigma = 1.0;
  double degree = 1.0;
  double rate = 1.0;
  std::string layout = "table";
  bool check = false;
};

int run_gram(const GramArgs& args, const Globals& g, std::ostream& out, std::ostream& err) {
  const LabeledDataset data = load_data(args.data, g, err, true);
  KernelSpec spec;
  spec.kind = parse_kernel_kind(args.type);
  spec.params = g.params();
  spec.sigma = args.sigma;
  spec.degree = args.degree;
  spec.rate = args.rate;
  spec.validate();
  const auto series = data.series();
  const Eigen::MatrixXd gram = gram_matrix(spec, series, g.threads);
  if (args.check) {
    const PsdReport r = check_psd(gram);
    err << "psd check: min eigenvalue " << format_double(r.min_eigenvalue) << ", max eigenvalue "
        << format_double(r.max_eigenvalue) << ", " << (r.psd ? "PSD" : "NOT PSD") << '\n';
  }
  if (args.layout == "precomputed") {
    std::vector<std::string> labels;
    for (const auto& e : data.entries) labels.push_back(e.label);
    write_precomputed_kernel(out, labels, gram);
    return 0;
  }
  Table t{"gram", {"id"}, {}};
  for (const auto& e : data.entries) t.columns.push_back(e.id);
  for (Index i = 0; i < gram.rows(); ++i) {
    std::vector<Cell> row{data.entries[static_cast<std::size_t>(i)].id};
    for (Index j = 0; j < gram.cols(); ++j) row.emplace_back(gram(i, j));
    t.rows.push_back(std::move(row));
  }
  emit(out, {t}, g.json());
  return 0;
}

struct OrthoArgs {
  std::string family;
  std::string basis = "spike";
  Index count = 11;
  Index pairs = 4;
  Index length = 128;
  std::string precision = "high";
};

template <typename Scalar>
std::vector<TimeSeries<Scalar>> convert_family(const LabeledDataset& data) {
  std::vector<TimeSeries<Scalar>> out;
  for (const auto& e : data.entries)
    out.emplace_back(e.series.values().template cast<Scalar>(), e.series.times());
  return out;
}

template <typename Scalar>
Table orthonormalize(const OrthoArgs& args, const Globals& g, const LabeledDataset* data) {
  std::vector<TimeSeries<Scalar>> family;
  if (data != nullptr)
    family = convert_family<Scalar>(*data);
  else if (args.basis == "spike")
    family = make_spike_basis<Scalar>(args.count, Scalar(g.epsilon));
  else if (args.basis == "sincos")
    family = make_sincos_basis<Scalar>(args.pairs, args.length, Scalar(g.epsilon));
  else
    throw std::invalid_argument("unknown basis '" + args.basis + "' (expected spike or sincos)");

  const auto basis = gram_schmidt(family, g.params());
  Table t{"family", {"series", "timestamp", "value"}, {}};
  const Index dim = basis.empty() ? 1 : basis.front().dim();
  for (Index c = 1; c < dim; ++c) t.columns.push_back("value" + std::to_string(c + 1));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const std::string id = "e" + std::to_string(k + 1);
    for (Index i = 0; i < basis[k].size(); ++i) {
      std::vector<Cell> row{id, basis[k].time(i)};
      for (Index c = 0; c < dim; ++c) row.emplace_back(static_cast<double>(basis[k].values()(c, i)));
      t.rows.push_back(std::move(row));
    }
  }
  return t;
}

int run_ortho(const OrthoArgs& args, const Globals& g, std::ostream& out, std::ostream& err) {
  std::optional<LabeledDataset> data;
  if (!args.family.empty()) data = load_data(args.family, g, err, true);
  const LabeledDataset* ptr = data ? &*data : nullptr;
  try {
    if (args.precision == "double")
      emit(out, {orthonormalize<double>(args, g, ptr)}, g.json());
    else
      emit(out, {orthonormalize<HighPrecision>(args, g, ptr)}, g.json());
  } catch (const DependenceError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

struct EcosArgs {
  std::string corpus;
  std::string a, b;
  bool characters = false;
  std::string weighting = "indicator";
};

int run_ecos(const EcosArgs& args, const Globals& g, std::ostream& out, std::ostream& err) {
  SequenceCorpus corpus;
  if (!args.corpus.empty()) {
    corpus = load_sequence_corpus(args.corpus, args.characters);
  } else {
    if (args.a.empty() || args.b.empty()) throw std::invalid_argument("ecos needs --corpus or both --a and --b");
    for (const auto* text : {&args.a, &args.b}) {
      corpus.sequences.push_back(args.characters ? from_characters(*text, corpus.vocabulary)
                                                 : tokenize(*text, corpus.vocabulary));
      corpus.labels.emplace_back();
    }
  }
  Weighting weighting = Weighting::indicator();
  if (args.weighting == "idf" || args.weighting == "idf-smoothed") {
    const IdfFormula formula = args.weighting == "idf" ? IdfFormula::Plain : IdfFormula::Smoothed;
    weighting = Weighting::inverse_document_frequency(compute_idf(corpus.sequences, formula));
    std::size_t dropped_total = 0;
    for (auto& s : corpus.sequences) {
      std::size_t dropped = 0;
      s = drop_zero_weight(s, weighting, &dropped);
      dropped_total += dropped;
    }
    if (dropped_total > 0)
      err << "warning: dropped " << dropped_total << " token(s) with zero idf (present in every sequence)\n";
  } else if (args.weighting != "indicator") {
    throw std::invalid_argument("unknown weighting '" + args.weighting + "'");
  }

  const std::size_t m = corpus.sequences.size();
  auto name = [&](std::size_t i) {
    return corpus.labels[i].empty() ? "s" + std::to_string(i + 1) : corpus.labels[i];
  };
  Table t{"ecos", {"a", "b", "eip", "ecos"}, {}};
  for (std::size_t i = 0; i < m; ++i) {
    if (corpus.sequences[i].empty()) {
      err << "warning: sequence " << name(i) << " is empty after weighting; skipped\n";
      continue;
    }
    for (std::size_t j = i + 1; j < m; ++j) {
      if (corpus.sequences[j].empty()) continue;
      const auto& x = corpus.sequences[i];
      const auto& y = corpus.sequences[j];
      t.rows.push_back({name(i), name(j), eip_tm(x, y, g.nu, weighting, g.time_kernel()),
                        ecos(x, y, g.nu, weighting, g.time_kernel())});
    }
  }
  emit(out, {t}, g.json());
  return 0;
}

struct BenchArgs {
  std::vector<Index> lengths{10, 100, 1000};
  std::vector<std::string> distances{"ed", "dtw", "eip", "ieip"};
  std::size_t series = 100;
  int repeats = 5;
  int warmups = 1;
};

int run_bench(const BenchArgs& args, const Globals& g, std::ostream& out, std::ostream& err) {
  TimingConfig config;
  config.lengths = args.lengths;
  config.distances.clear();
  for (const auto& d : args.distances) config.distances.push_back(parse_bench_distance(d));
  config.series = args.series;
  config.repeats = args.repeats;
  config.warmups = args.warmups;
  config.nu = g.nu;
  config.seed = g.seed;
  const auto rows = timing_bench(config);
  Table t{"timing", {"distance", "length", "seconds"}, {}};
  for (const auto& r : rows)
    t.rows.push_back({bench_distance_name(r.distance), static_cast<long long>(r.length), r.seconds});
  emit(out, {t}, g.json());
  if (config.lengths.size() >= 2) {
    for (BenchDistance d : config.distances) {
      std::vector<double> n, s;
      for (const auto& r : rows)
        if (r.distance == d) {
          n.push_back(static_cast<double>(r.length));
          s.push_back(r.seconds);
        }
      err << "log-log slope " << bench_distance_name(d) << ": " << format_double(loglog_slope(n, s)) << '\n';
    }
  }
  return 0;
}

struct CbfArgs {
  std::size_t per_class = 10;
  Index length = 128;
  std::string output;
};

int run_cbf(const CbfArgs& args, const Globals& g, std::ostream& out) {
  const LabeledDataset data = cbf_generate(args.per_class, args.length, g.seed);
  std::ofstream file;
  if (!args.output.empty()) {
    file.open(args.output);
    if (!file) throw std::runtime_error("cannot open '" + args.output + "' for writing");
  }
  std::ostream& sink = args.output.empty() ? out : file;
  if (g.json()) {
    auto rows = nlohmann::json::array();
    for (const auto& e : data.entries) {
      std::vector<double> values(e.series.values().data(), e.series.values().data() + e.series.size());
      rows.push_back({{"id", e.id}, {"label", e.label}, {"values", values}});
    }
    sink << rows.dump(2) << '\n';
  } else {
    write_ucr(sink, data);
  }
  return 0;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Elastic inner product toolkit for time series and symbol sequences", "eipvs"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--nu", g.nu, "Stiffness nu >= 0 (default 1)")->check(CLI::NonNegativeNumber);
  app.add_option("--kernel", g.kernel, "Time kernel: gaussian or laplace")
      ->check(CLI::IsMember({"gaussian", "laplace"}));
  app.add_option("--epsilon", g.epsilon, "Replacement for zero values (default 2^-52)")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--threads", g.threads, "Worker threads for batch computations")->check(CLI::Range(1u, 1024u));
  app.add_option("--format", g.format, "Output format: csv or json")->check(CLI::IsMember({"csv", "json"}));

  EipArgs eip_args;
  auto* eip_cmd = app.add_subcommand("eip", "Pairwise eip and eip distance between the series of two files");
  eip_cmd->add_option("--a", eip_args.a, "First series file")->required();
  eip_cmd->add_option("--b", eip_args.b, "Second series file")->required();
  eip_cmd->add_option("--form", eip_args.form, "Distance formula: expansion or difference")
      ->check(CLI::IsMember({"expansion", "difference"}));
  eip_cmd->add_flag("--variable-length", eip_args.variable_length, "Accept rows of different lengths");

  auto* index_cmd = app.add_subcommand("index", "Build or query an elastic index");
  index_cmd->require_subcommand(1);
  IndexBuildArgs build_args;
  auto* build_cmd = index_cmd->add_subcommand("build", "Index a corpus");
  build_cmd->add_option("--corpus", build_args.corpus, "Corpus series file")->required();
  build_cmd->add_option("--out", build_args.output, "Index file to write")->required();
  build_cmd->add_option("--grid-length", build_args.grid_length, "Explicit uniform grid size (default: union of timestamps)");
  build_cmd->add_option("--grid-start", build_args.grid_start, "First grid timestamp");
  build_cmd->add_option("--grid-step", build_args.grid_step, "Grid spacing");
  IndexQueryArgs query_args;
  auto* query_cmd = index_cmd->add_subcommand("query", "k nearest indexed items for each query series");
  query_cmd->add_option("--index", query_args.index, "Index file")->required();
  query_cmd->add_option("--query", query_args.query, "Query series file")->required();
  query_cmd->add_option("--k", query_args.k, "Neighbors per query")->check(CLI::PositiveNumber);

  KnnArgs knn_args;
  auto* knn_cmd = app.add_subcommand("knn", "k-NN classification with leave-one-out nu selection");
  knn_cmd->add_option("--train", knn_args.train, "Training set")->required();
  knn_cmd->add_option("--test", knn_args.test, "Test set")->required();
  knn_cmd->add_option("--distance", knn_args.distance, "eip, ed or dtw")->check(CLI::IsMember({"eip", "ed", "dtw"}));
  knn_cmd->add_option("--k", knn_args.k, "Neighbors")->check(CLI::PositiveNumber);
  knn_cmd->add_option("--nu-grid", knn_args.nu_grid, "Comma-separated nu candidates")->delimiter(',');

  GramArgs gram_args;
  auto* gram_cmd = app.add_subcommand("gram", "Export a kernel (Gram) matrix");
  gram_cmd->add_option("--data", gram_args.data, "Series file")->required();
  gram_cmd->add_option("--type", gram_args.type,
                       "gaussian_eip, gaussian_euclid, polynomial_eip, exp_eip or exp_neg_distance_p");
  gram_cmd->add_option("--sigma", gram_args.sigma, "Gaussian width");
  gram_cmd->add_option("--degree", gram_args.degree, "Polynomial degree or distance exponent p");
  gram_cmd->add_option("--rate", gram_args.rate, "Rate for exp_neg_distance_p");
  gram_cmd->add_option("--layout", gram_args.layout, "table or precomputed")
      ->check(CLI::IsMember({"table", "precomputed"}));
  gram_cmd->add_flag("--check-psd", gram_args.check, "Report the eigenvalue range on stderr");

  OrthoArgs ortho_args;
  auto* ortho_cmd = app.add_subcommand("ortho", "Gram-Schmidt orthonormalization of a family");
  ortho_cmd->add_option("--family", ortho_args.family, "Family file (default: a generated basis)");
  ortho_cmd->add_option("--basis", ortho_args.basis, "Generated basis: spike or sincos");
  ortho_cmd->add_option("--count", ortho_args.count, "Spike basis size")->check(CLI::PositiveNumber);
  ortho_cmd->add_option("--pairs", ortho_args.pairs, "Sine/cosine pairs")->check(CLI::PositiveNumber);
  ortho_cmd->add_option("--length", ortho_args.length, "Sine/cosine length")->check(CLI::Range(2, 1 << 20));
  ortho_cmd->add_option("--precision", ortho_args.precision, "high (100 digits) or double")
      ->check(CLI::IsMember({"high", "double"}));

  EcosArgs ecos_args;
  auto* ecos_cmd = app.add_subcommand("ecos", "Elastic cosine between symbol sequences");
  ecos_cmd->add_option("--corpus", ecos_args.corpus, "Corpus file, one sequence per line");
  ecos_cmd->add_option("--a", ecos_args.a, "First sequence text");
  ecos_cmd->add_option("--b", ecos_args.b, "Second sequence text");
  ecos_cmd->add_flag("--characters", ecos_args.characters, "One token per character");
  ecos_cmd->add_option("--weighting", ecos_args.weighting, "indicator, idf or idf-smoothed")
      ->check(CLI::IsMember({"indicator", "idf", "idf-smoothed"}));

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Timing curves of pairwise distance computation");
  bench_cmd->add_option("--lengths", bench_args.lengths, "Comma-separated series lengths")->delimiter(',');
  bench_cmd->add_option("--distances", bench_args.distances, "Comma-separated subset of ed,dtw,eip,ieip")
      ->delimiter(',');
  bench_cmd->add_option("--series", bench_args.series, "Series per length")->check(CLI::Range(2, 100000));
  bench_cmd->add_option("--repeats", bench_args.repeats, "Timed runs per point")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--warmups", bench_args.warmups, "Untimed runs per point")->check(CLI::NonNegativeNumber);

  CbfArgs cbf_args;
  auto* cbf_cmd = app.add_subcommand("cbf", "Generate a Cylinder-Bell-Funnel dataset");
  cbf_cmd->add_option("--per-class", cbf_args.per_class, "Series per class")->check(CLI::PositiveNumber);
  cbf_cmd->add_option("--length", cbf_args.length, "Series length")->check(CLI::Range(8, 1 << 20));
  cbf_cmd->add_option("--out", cbf_args.output, "Output file (default stdout)");

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return e.get_exit_code() != 0 ? e.get_exit_code() : 2;
  }

  try {
    if (*eip_cmd) return run_eip(eip_args, g, out, err);
    if (*build_cmd) return run_index_build(build_args, g, out, err);
    if (*query_cmd) return run_index_query(query_args, g, out, err);
    if (*knn_cmd) {
      knn_args.fixed_nu = app.get_option("--nu")->count() > 0;
      return run_knn(knn_args, g, out, err);
    }
    if (*gram_cmd) return run_gram(gram_args, g, out, err);
    if (*ortho_cmd) return run_ortho(ortho_args, g, out, err);
    if (*ecos_cmd) return run_ecos(ecos_args, g, out, err);
    if (*bench_cmd) return run_bench(bench_args, g, out, err);
    if (*cbf_cmd) return run_cbf(cbf_args, g, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << app.help();
  return 2;
}

}  // namespace eipvs
