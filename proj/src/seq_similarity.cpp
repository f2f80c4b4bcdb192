#include "eipvs/seq_similarity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace eipvs {

SymbolId Vocabulary::intern(std::string_view token) {
  const std::string key(token);
  if (auto it = ids_.find(key); it != ids_.end()) return it->second;
  const SymbolId id = symbols_.size();
  symbols_.push_back(key);
  ids_.emplace(key, id);
  return id;
}

std::optional<SymbolId> Vocabulary::find(std::string_view token) const {
  if (auto it = ids_.find(std::string(token)); it != ids_.end()) return it->second;
  return std::nullopt;
}

SymbolSequence::SymbolSequence(std::vector<SymbolId> t) : tokens(std::move(t)) {
  positions = index_timestamps(static_cast<Index>(tokens.size()));
}

SymbolSequence::SymbolSequence(std::vector<SymbolId> t, Timestamps p) : tokens(std::move(t)), positions(std::move(p)) {
  if (tokens.size() != positions.size()) throw std::invalid_argument("symbol sequence: token/position count mismatch");
  for (std::size_t i = 1; i < positions.size(); ++i)
    if (!(positions[i] > positions[i - 1]))
      throw std::invalid_argument("symbol sequence: positions must strictly increase");
}

SymbolSequence tokenize(std::string_view text, Vocabulary& vocabulary) {
  std::vector<SymbolId> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t start = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > start) tokens.push_back(vocabulary.intern(text.substr(start, i - start)));
  }
  return SymbolSequence(std::move(tokens));
}

SymbolSequence from_characters(std::string_view text, Vocabulary& vocabulary) {
  std::vector<SymbolId> tokens;
  tokens.reserve(text.size());
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) tokens.push_back(vocabulary.intern(std::string_view(&c, 1)));
  return SymbolSequence(std::move(tokens));
}

double IdfTable::at(SymbolId id) const {
  if (!contains(id)) throw std::invalid_argument("symbol " + std::to_string(id) + " is not in the idf table");
  return values[id];
}

IdfTable compute_idf(std::span<const SymbolSequence> corpus, IdfFormula formula) {
  if (corpus.empty()) throw std::invalid_argument("compute_idf needs a non-empty corpus");
  std::vector<std::size_t> df;
  for (const auto& doc : corpus) {
    std::unordered_set<SymbolId> seen(doc.tokens.begin(), doc.tokens.end());
    for (SymbolId id : seen) {
      if (id >= df.size()) df.resize(id + 1, 0);
      ++df[id];
    }
  }
  IdfTable table;
  table.documents = corpus.size();
  table.values.assign(df.size(), 0.0);
  table.known.assign(df.size(), false);
  const double n = static_cast<double>(corpus.size());
  for (std::size_t id = 0; id < df.size(); ++id) {
    if (df[id] == 0) continue;
    const double d = static_cast<double>(df[id]);
    table.values[id] = formula == IdfFormula::Plain ? std::log(n / d) : std::log((n + 1.0) / (d + 1.0)) + 1.0;
    table.known[id] = true;
  }
  return table;
}

Weighting Weighting::inverse_document_frequency(IdfTable table) {
  Weighting w;
  w.kind = WeightingKind::Idf;
  w.idf = std::move(table);
  return w;
}

Weighting Weighting::embedded(std::vector<Eigen::VectorXd> vectors) {
  for (const auto& v : vectors)
    if (v.size() != vectors.front().size()) throw std::invalid_argument("embedded weighting: ragged vectors");
  Weighting w;
  w.kind = WeightingKind::Embedded;
  w.vectors = std::move(vectors);
  return w;
}

double Weighting::delta(SymbolId a, SymbolId b) const {
  switch (kind) {
    case WeightingKind::Indicator:
      return a == b ? 1.0 : 0.0;
    case WeightingKind::Idf: {
      if (a != b) return 0.0;
      const double w = idf.at(a);
      return w * w;
    }
    case WeightingKind::Embedded:
      if (a >= vectors.size() || b >= vectors.size())
        throw std::invalid_argument("embedded weighting: symbol without a vector");
      return vectors[a].dot(vectors[b]);
  }
  throw std::logic_error("unreachable weighting kind");
}

void Weighting::check_covers(const SymbolSequence& s) const {
  for (SymbolId id : s.tokens) {
    if (kind == WeightingKind::Idf && !idf.contains(id))
      throw std::invalid_argument("token id " + std::to_string(id) + " is out of the idf vocabulary");
    if (kind == WeightingKind::Embedded && id >= vectors.size())
      throw std::invalid_argument("token id " + std::to_string(id) + " has no embedding vector");
  }
}

namespace {

bool sequence_less(const SymbolSequence& a, const SymbolSequence& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.tokens != b.tokens) return a.tokens < b.tokens;
  return a.positions < b.positions;
}

}  // namespace

double eip_tm(const SymbolSequence& a, const SymbolSequence& b, double nu, const Weighting& weighting,
              TimeKernel kernel) {
  const ElasticParams params = ElasticParams::eip(nu, kernel);
  check_params(params);
  weighting.check_covers(a);
  weighting.check_covers(b);
  const bool swap = sequence_less(b, a);
  const auto& x = swap ? b : a;
  const auto& y = swap ? a : b;
  auto cell = [&](Index i, Index j) -> double {
    const auto ui = static_cast<std::size_t>(i);
    const auto uj = static_cast<std::size_t>(j);
    const double d = weighting.delta(x.tokens[ui], y.tokens[uj]);
    if (d == 0.0) return 0.0;
    return d * time_kernel<double>(kernel, nu, x.positions[ui], y.positions[uj]);
  };
  return detail::running_sum_recursion<double>(static_cast<Index>(x.size()), static_cast<Index>(y.size()), cell,
                                               0.0);
}

double ecos(const SymbolSequence& a, const SymbolSequence& b, double nu, const Weighting& weighting,
            TimeKernel kernel) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ecos needs non-empty sequences");
  const double aa = eip_tm(a, a, nu, weighting, kernel);
  const double bb = eip_tm(b, b, nu, weighting, kernel);
  if (!(aa > 0.0) || !(bb > 0.0)) throw std::invalid_argument("ecos: zero self-product");
  const double c = eip_tm(a, b, nu, weighting, kernel) / (std::sqrt(aa) * std::sqrt(bb));
  constexpr double slack = 1e-12;
  if (c < -slack || c > 1.0 + slack)
    throw std::logic_error("ecos: value " + std::to_string(c) + " outside [0, 1]");
  return std::clamp(c, 0.0, 1.0);
}

SymbolSequence drop_zero_weight(const SymbolSequence& s, const Weighting& weighting, std::size_t* dropped) {
  std::vector<SymbolId> tokens;
  Timestamps positions;
  std::size_t removed = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (weighting.delta(s.tokens[i], s.tokens[i]) == 0.0) {
      ++removed;
      continue;
    }
    tokens.push_back(s.tokens[i]);
    positions.push_back(s.positions[i]);
  }
  if (dropped != nullptr) *dropped = removed;
  return SymbolSequence(std::move(tokens), std::move(positions));
}

Series one_hot_series(const SymbolSequence& s, std::size_t symbols, const Weighting& weighting) {
  if (weighting.kind == WeightingKind::Embedded) throw std::invalid_argument("one_hot_series: embedded weighting");
  weighting.check_covers(s);
  Series::Values v = Series::Values::Zero(static_cast<Index>(symbols), static_cast<Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.tokens[i] >= symbols) throw std::invalid_argument("one_hot_series: symbol outside the vocabulary");
    const double w = weighting.kind == WeightingKind::Idf ? weighting.idf.at(s.tokens[i]) : 1.0;
    v(static_cast<Index>(s.tokens[i]), static_cast<Index>(i)) = w;
  }
  return Series(std::move(v), s.positions);
}

}  // namespace eipvs
