#ifndef EIPVS_ELASTIC_INDEX_HPP
#define EIPVS_ELASTIC_INDEX_HPP

#include "eipvs/dataset.hpp"
#include "eipvs/elastic_product.hpp"
#include "eipvs/series.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace eipvs {

/// n x n matrix E[i][j] = g(t_i, t_j) over a fixed grid. For any two series
/// embedded on the grid, eip(a, b) = a^T E b.
struct ElasticMatrix {
  Timestamps grid;
  double nu = 0.0;
  TimeKernel kernel = TimeKernel::Gaussian;
  Eigen::MatrixXd entries;

  Index size() const { return entries.rows(); }
};

ElasticMatrix build_elastic_matrix(Timestamps grid, double nu, TimeKernel kernel = TimeKernel::Gaussian);

/// Applies E to every coordinate of an embedded (sample-major) vector.
Eigen::VectorXd apply_elastic_matrix(const ElasticMatrix& matrix, const Eigen::VectorXd& embedded, Index dim);

struct IndexedItem {
  std::string id;
  std::string label;
  Eigen::VectorXd transformed;  ///< E b, sample-major, n * dim entries
  double self_product = 0.0;    ///< b^T E b
};

/// Precomputed corpus: after the O(m n^2) build, each eip against a query
/// embedded on the grid costs one length-n*dim dot product.
class ElasticIndex {
 public:
  ElasticIndex(ElasticMatrix matrix, Index dim, std::vector<IndexedItem> items);

  const ElasticMatrix& matrix() const { return matrix_; }
  const Timestamps& grid() const { return matrix_.grid; }
  Index dim() const { return dim_; }
  const std::vector<IndexedItem>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }

 private:
  ElasticMatrix matrix_;
  Index dim_;
  std::vector<IndexedItem> items_;
};

/// Sorted union of all timestamps in the dataset.
Timestamps infer_grid(const LabeledDataset& dataset);

/// start, start + step, ..., n points.
Timestamps uniform_grid(Index n, double start = 1.0, double step = 1.0);

ElasticIndex index_corpus(const LabeledDataset& dataset, Timestamps grid, double nu,
                          TimeKernel kernel = TimeKernel::Gaussian);

struct ItemScore {
  std::string id;
  double score = 0.0;
};

std::vector<ItemScore> query_scores(const ElasticIndex& index, const Series& query);

/// Scores for a query already embedded on the index grid.
Eigen::VectorXd query_scores_embedded(const ElasticIndex& index, const Eigen::VectorXd& embedded);

struct Neighbor {
  std::string id;
  std::string label;
  double distance = 0.0;
};

/// k nearest items under the eip distance, ascending; ties by ascending id.
std::vector<Neighbor> query_knn(const ElasticIndex& index, const Series& query, std::size_t k);

/// Binary layout (little-endian): "EIPX", u32 version, u64 n, u64 dim,
/// f64 nu, u32 kernel, n x f64 grid, u64 item count, then per item:
/// u32 id length + id bytes, u32 label length + label bytes, n*dim x f64
/// transformed vector, f64 self-product.
inline constexpr std::uint32_t kIndexFormatVersion = 1;

void save_index(const ElasticIndex& index, std::ostream& out);
ElasticIndex load_index(std::istream& in);
void save_index(const ElasticIndex& index, const std::string& path);
ElasticIndex load_index(const std::string& path);

}  // namespace eipvs

#endif  // EIPVS_ELASTIC_INDEX_HPP
