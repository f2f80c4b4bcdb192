#ifndef EIPVS_SEQ_SIMILARITY_HPP
#define EIPVS_SEQ_SIMILARITY_HPP

#include "eipvs/elastic_product.hpp"
#include "eipvs/series.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace eipvs {

using SymbolId = std::size_t;

/// Interns token strings to dense ids.
class Vocabulary {
 public:
  SymbolId intern(std::string_view token);
  std::optional<SymbolId> find(std::string_view token) const;
  const std::string& symbol(SymbolId id) const { return symbols_.at(id); }
  std::size_t size() const { return symbols_.size(); }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, SymbolId> ids_;
};

/// Token stream with one timestamp per token, 1..n unless given.
struct SymbolSequence {
  std::vector<SymbolId> tokens;
  Timestamps positions;

  SymbolSequence() = default;
  explicit SymbolSequence(std::vector<SymbolId> tokens);
  SymbolSequence(std::vector<SymbolId> tokens, Timestamps positions);

  std::size_t size() const { return tokens.size(); }
  bool empty() const { return tokens.empty(); }

  friend bool operator==(const SymbolSequence&, const SymbolSequence&) = default;
};

/// Whitespace-separated tokens.
SymbolSequence tokenize(std::string_view text, Vocabulary& vocabulary);
/// One token per non-space character, e.g. "abab".
SymbolSequence from_characters(std::string_view text, Vocabulary& vocabulary);

enum class IdfFormula {
  Plain,     ///< ln(N / df)
  Smoothed,  ///< ln((N + 1) / (df + 1)) + 1
};

/// IDF per symbol id; symbols never seen in the corpus have no entry.
struct IdfTable {
  std::vector<double> values;
  std::vector<bool> known;
  std::size_t documents = 0;

  bool contains(SymbolId id) const { return id < known.size() && known[id]; }
  double at(SymbolId id) const;
};

IdfTable compute_idf(std::span<const SymbolSequence> corpus, IdfFormula formula = IdfFormula::Plain);

enum class WeightingKind { Indicator, Idf, Embedded };

/// The symbol-level product delta(a, b) used in place of the sample dot product.
struct Weighting {
  WeightingKind kind = WeightingKind::Indicator;
  IdfTable idf;
  std::vector<Eigen::VectorXd> vectors;  ///< per-symbol embeddings

  static Weighting indicator() { return {}; }
  static Weighting inverse_document_frequency(IdfTable table);
  static Weighting embedded(std::vector<Eigen::VectorXd> vectors);

  /// Throws std::invalid_argument for a symbol the weighting does not cover.
  double delta(SymbolId a, SymbolId b) const;
  void check_covers(const SymbolSequence& s) const;
};

/// Elastic inner product of two symbol sequences with g = exp(-nu d(p, q)).
double eip_tm(const SymbolSequence& a, const SymbolSequence& b, double nu, const Weighting& weighting,
              TimeKernel kernel = TimeKernel::Gaussian);

/// Elastic cosine eip_tm(a, b) / sqrt(eip_tm(a, a) eip_tm(b, b)), in [0, 1].
double ecos(const SymbolSequence& a, const SymbolSequence& b, double nu, const Weighting& weighting,
            TimeKernel kernel = TimeKernel::Gaussian);

/// Removes tokens whose self-weight delta(a, a) is zero (IDF 0 terms), keeping
/// the remaining positions. `dropped` receives the number removed.
SymbolSequence drop_zero_weight(const SymbolSequence& s, const Weighting& weighting,
                                std::size_t* dropped = nullptr);

/// Builds the one-hot (or IDF-scaled one-hot) series of a sequence over a
/// vocabulary of `symbols` entries.
Series one_hot_series(const SymbolSequence& s, std::size_t symbols, const Weighting& weighting);

}  // namespace eipvs

#endif  // EIPVS_SEQ_SIMILARITY_HPP
