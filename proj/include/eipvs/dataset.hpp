#ifndef EIPVS_DATASET_HPP
#define EIPVS_DATASET_HPP

#include "eipvs/series.hpp"

#include <set>
#include <string>
#include <vector>

namespace eipvs {

enum class Split { Train, Test, Unspecified };

struct LabeledSeries {
  std::string id;
  std::string label;
  Series series;
};

/// Named collection of labeled series. All entries share one dimension.
struct LabeledDataset {
  std::string name;
  Split split = Split::Unspecified;
  std::vector<LabeledSeries> entries;

  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }

  Index dim() const { return entries.empty() ? 1 : entries.front().series.dim(); }

  std::vector<std::string> label_set() const {
    std::set<std::string> labels;
    for (const auto& e : entries) labels.insert(e.label);
    return {labels.begin(), labels.end()};
  }

  std::vector<Series> series() const {
    std::vector<Series> out;
    out.reserve(entries.size());
    for (const auto& e : entries) out.push_back(e.series);
    return out;
  }
};

}  // namespace eipvs

#endif  // EIPVS_DATASET_HPP
