#include "eipvs/io.hpp"

#include "eipvs/format.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <stdexcept>

namespace eipvs {

namespace {

double parse_number(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (field.empty() || ec != std::errc() || ptr != end)
    throw std::runtime_error("line " + std::to_string(line_no) + ": cannot parse number '" + std::string(field) + "'");
  return value;
}

// "1.0000000e+00" and "1" name the same class.
std::string normalize_label(std::string_view field) {
  double v = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (ec == std::errc() && ptr == end && std::isfinite(v) && v == std::floor(v) && std::abs(v) < 1e15)
    return std::to_string(static_cast<long long>(v));
  return std::string(field);
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return in;
}

std::string stem(const std::string& path) {
  const auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  const auto dot = base.find_last_of('.');
  return dot == std::string::npos || dot == 0 ? base : base.substr(0, dot);
}

bool is_blank(std::string_view line) { return line.find_first_not_of(" \t\r") == std::string_view::npos; }

constexpr std::string_view kFamilyHeader = "series,timestamp";

}  // namespace

UcrData parse_ucr(std::istream& in, const UcrOptions& options, const std::string& name) {
  if (!(options.epsilon > 0.0)) throw std::invalid_argument("zero-repair epsilon must be positive");
  UcrData out;
  out.dataset.name = name;
  std::string line;
  std::size_t line_no = 0;
  Index expected = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const auto fields = split_fields(line);
    if (fields.size() < 2) throw std::runtime_error("line " + std::to_string(line_no) + ": no values after the label");
    std::vector<double> values;
    values.reserve(fields.size() - 1);
    for (std::size_t k = 1; k < fields.size(); ++k) {
      const std::string_view f = fields[k];
      if (options.variable_length && (f == "NaN" || f == "nan" || f == "?" || f.empty())) {
        values.push_back(std::nan(""));
        continue;
      }
      values.push_back(parse_number(f, line_no));
    }
    if (options.variable_length)
      while (!values.empty() && std::isnan(values.back())) values.pop_back();
    for (double v : values)
      if (!std::isfinite(v))
        throw std::runtime_error("line " + std::to_string(line_no) + ": non-finite value inside the series");
    if (values.empty()) throw std::runtime_error("line " + std::to_string(line_no) + ": empty series");

    const auto length = static_cast<Index>(values.size());
    if (!options.variable_length) {
      if (expected < 0) expected = length;
      if (length != expected)
        throw std::runtime_error("line " + std::to_string(line_no) + ": ragged row (" + std::to_string(length) +
                                 " values, expected " + std::to_string(expected) + ")");
    }
    Series::Values v(1, length);
    for (Index i = 0; i < length; ++i) {
      double x = values[static_cast<std::size_t>(i)];
      if (x == 0.0) {
        x = options.epsilon;
        ++out.zero_repairs;
      }
      v(0, i) = x;
    }
    const std::string id = name + "-" + std::to_string(out.dataset.size());
    out.dataset.entries.push_back({id, normalize_label(fields[0]), Series(std::move(v), index_timestamps(length))});
  }
  if (out.dataset.empty()) throw std::runtime_error("no series found in " + name);
  return out;
}

UcrData load_ucr(const std::string& path, const UcrOptions& options) {
  auto in = open_input(path);
  return parse_ucr(in, options, stem(path));
}

void write_ucr(std::ostream& out, const LabeledDataset& dataset) {
  for (const auto& e : dataset.entries) {
    if (e.series.dim() != 1) throw std::invalid_argument("UCR layout holds univariate series only");
    out << e.label;
    for (Index i = 0; i < e.series.size(); ++i) out << ',' << format_double(e.series[i]);
    out << '\n';
  }
}

LabeledDataset parse_family_csv(std::istream& in, const std::string& name) {
  std::string line;
  if (!std::getline(in, line) || line.rfind(kFamilyHeader, 0) != 0)
    throw std::runtime_error("family CSV must start with a 'series,timestamp,value' header");
  const std::size_t columns = split_fields(line).size();
  if (columns < 3) throw std::runtime_error("family CSV header needs at least one value column");
  const auto dim = static_cast<Index>(columns - 2);

  std::vector<std::string> order;
  std::map<std::string, std::pair<std::vector<double>, Timestamps>> samples;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    const auto fields = split_fields(line);
    if (fields.size() != columns)
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected " + std::to_string(columns) + " fields");
    const std::string id(fields[0]);
    auto [it, inserted] = samples.try_emplace(id);
    if (inserted) order.push_back(id);
    it->second.second.push_back(parse_number(fields[1], line_no));
    for (std::size_t c = 2; c < columns; ++c) it->second.first.push_back(parse_number(fields[c], line_no));
  }
  LabeledDataset out;
  out.name = name;
  for (const auto& id : order) {
    auto& [values, times] = samples[id];
    Series::Values v(dim, static_cast<Index>(times.size()));
    for (Index i = 0; i < v.cols(); ++i)
      for (Index c = 0; c < dim; ++c) v(c, i) = values[static_cast<std::size_t>(i * dim + c)];
    Series s(std::move(v), std::move(times));
    if (validate(s).membership == Membership::Invalid)
      throw std::runtime_error("series '" + id + "': timestamps must strictly increase");
    out.entries.push_back({id, id, std::move(s)});
  }
  return out;
}

void write_family_csv(std::ostream& out, const LabeledDataset& family) {
  const Index dim = family.dim();
  out << "series,timestamp,value";
  for (Index c = 1; c < dim; ++c) out << ",value" << (c + 1);
  out << '\n';
  for (const auto& e : family.entries) {
    for (Index i = 0; i < e.series.size(); ++i) {
      out << e.id << ',' << format_double(e.series.time(i));
      for (Index c = 0; c < e.series.dim(); ++c) out << ',' << format_double(e.series.values()(c, i));
      out << '\n';
    }
  }
}

UcrData load_series_file(const std::string& path, const UcrOptions& options) {
  auto in = open_input(path);
  std::string first;
  std::getline(in, first);
  in.clear();
  in.seekg(0);
  if (first.rfind(kFamilyHeader, 0) == 0) return {parse_family_csv(in, stem(path)), 0};
  return parse_ucr(in, options, stem(path));
}

SequenceCorpus parse_sequence_corpus(std::istream& in, bool characters) {
  SequenceCorpus corpus;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (is_blank(line)) continue;
    std::string_view body = line;
    std::string label;
    if (const auto tab = body.find('\t'); tab != std::string_view::npos) {
      label = std::string(body.substr(0, tab));
      body.remove_prefix(tab + 1);
    }
    SymbolSequence s = characters ? from_characters(body, corpus.vocabulary) : tokenize(body, corpus.vocabulary);
    if (s.empty()) throw std::runtime_error("sequence corpus: empty sequence");
    corpus.labels.push_back(std::move(label));
    corpus.sequences.push_back(std::move(s));
  }
  if (corpus.sequences.empty()) throw std::runtime_error("sequence corpus is empty");
  return corpus;
}

SequenceCorpus load_sequence_corpus(const std::string& path, bool characters) {
  auto in = open_input(path);
  return parse_sequence_corpus(in, characters);
}

}  // namespace eipvs
