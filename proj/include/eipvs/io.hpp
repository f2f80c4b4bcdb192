#ifndef EIPVS_IO_HPP
#define EIPVS_IO_HPP

#include "eipvs/dataset.hpp"
#include "eipvs/orthogonal.hpp"
#include "eipvs/seq_similarity.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace eipvs {

struct UcrOptions {
  double epsilon = kDefaultEpsilon;  ///< replacement for exact zero values
  bool variable_length = false;      ///< accept ragged rows; trailing NaN padding is dropped
};

struct UcrData {
  LabeledDataset dataset;
  std::size_t zero_repairs = 0;
};

/// One series per line: label, then values, separated by commas or
/// whitespace. Timestamps are 1..L. Blank lines are skipped.
UcrData parse_ucr(std::istream& in, const UcrOptions& options = {}, const std::string& name = "data");
UcrData load_ucr(const std::string& path, const UcrOptions& options = {});
void write_ucr(std::ostream& out, const LabeledDataset& dataset);

/// Long-format family CSV with header "series,timestamp,value" (more value
/// columns for multivariate series), one sample per row. Series keep the
/// order of first appearance.
LabeledDataset parse_family_csv(std::istream& in, const std::string& name = "family");
void write_family_csv(std::ostream& out, const LabeledDataset& family);

/// Family CSV when the first line is the family header, UCR otherwise.
UcrData load_series_file(const std::string& path, const UcrOptions& options = {});

struct SequenceCorpus {
  Vocabulary vocabulary;
  std::vector<std::string> labels;  ///< empty string when a line has no label
  std::vector<SymbolSequence> sequences;
};

/// One sequence per line with whitespace-separated tokens and an optional
/// "label<TAB>" prefix. With `characters`, each character is a token.
SequenceCorpus parse_sequence_corpus(std::istream& in, bool characters = false);
SequenceCorpus load_sequence_corpus(const std::string& path, bool characters = false);

}  // namespace eipvs

#endif  // EIPVS_IO_HPP
