#include "eipvs/elastic_index.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <stdexcept>

namespace eipvs {

ElasticMatrix build_elastic_matrix(Timestamps grid, double nu, TimeKernel kernel) {
  if (grid.empty()) throw std::invalid_argument("elastic matrix needs at least one grid point");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("elastic matrix grid must be strictly ascending");
  check_params(ElasticParams::eip(nu, kernel));

  ElasticMatrix m;
  m.grid = std::move(grid);
  m.nu = nu;
  m.kernel = kernel;
  const auto n = static_cast<Index>(m.grid.size());
  m.entries.resize(n, n);
  for (Index j = 0; j < n; ++j) {
    m.entries(j, j) = time_kernel<double>(kernel, nu, m.grid[j], m.grid[j]);
    for (Index i = j + 1; i < n; ++i) {
      const double g = time_kernel<double>(kernel, nu, m.grid[i], m.grid[j]);
      m.entries(i, j) = g;
      m.entries(j, i) = g;
    }
  }
  return m;
}

Eigen::VectorXd apply_elastic_matrix(const ElasticMatrix& matrix, const Eigen::VectorXd& embedded, Index dim) {
  const Index n = matrix.size();
  if (embedded.size() != n * dim) throw std::invalid_argument("embedded vector does not match the grid");
  Eigen::VectorXd out(n * dim);
  Eigen::Map<const Eigen::MatrixXd> x(embedded.data(), dim, n);
  Eigen::Map<Eigen::MatrixXd> y(out.data(), dim, n);
  // (E x_c)^T = x_c^T E for each coordinate row, since E is symmetric.
  y.noalias() = x * matrix.entries;
  return out;
}

ElasticIndex::ElasticIndex(ElasticMatrix matrix, Index dim, std::vector<IndexedItem> items)
    : matrix_(std::move(matrix)), dim_(dim), items_(std::move(items)) {
  if (dim_ < 1) throw std::invalid_argument("index dimension must be positive");
  for (const auto& item : items_)
    if (item.transformed.size() != matrix_.size() * dim_)
      throw std::invalid_argument("indexed item '" + item.id + "' has the wrong vector length");
}

Timestamps infer_grid(const LabeledDataset& dataset) {
  std::set<double> all;
  for (const auto& e : dataset.entries) all.insert(e.series.times().begin(), e.series.times().end());
  return {all.begin(), all.end()};
}

Timestamps uniform_grid(Index n, double start, double step) {
  Timestamps t(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = start + step * static_cast<double>(i);
  return t;
}

ElasticIndex index_corpus(const LabeledDataset& dataset, Timestamps grid, double nu, TimeKernel kernel) {
  ElasticMatrix matrix = build_elastic_matrix(std::move(grid), nu, kernel);
  const Index dim = dataset.dim();
  std::vector<IndexedItem> items;
  items.reserve(dataset.size());
  for (const auto& e : dataset.entries) {
    if (!e.series.empty() && e.series.dim() != dim)
      throw std::invalid_argument("index_corpus: item '" + e.id + "' has a different dimension");
    const Eigen::VectorXd b = embed_on_grid(e.series, matrix.grid);
    IndexedItem item{e.id, e.label, apply_elastic_matrix(matrix, b, dim), 0.0};
    item.self_product = b.dot(item.transformed);
    items.push_back(std::move(item));
  }
  return ElasticIndex(std::move(matrix), dim, std::move(items));
}

namespace {

Eigen::VectorXd embed_query(const ElasticIndex& index, const Series& query) {
  if (!query.empty() && query.dim() != index.dim())
    throw std::invalid_argument("query dimension does not match the index");
  return embed_on_grid(query, index.grid());
}

}  // namespace

Eigen::VectorXd query_scores_embedded(const ElasticIndex& index, const Eigen::VectorXd& embedded) {
  Eigen::VectorXd scores(static_cast<Index>(index.size()));
  for (std::size_t i = 0; i < index.size(); ++i)
    scores[static_cast<Index>(i)] = embedded.dot(index.items()[i].transformed);
  return scores;
}

std::vector<ItemScore> query_scores(const ElasticIndex& index, const Series& query) {
  const Eigen::VectorXd scores = query_scores_embedded(index, embed_query(index, query));
  std::vector<ItemScore> out;
  out.reserve(index.size());
  for (std::size_t i = 0; i < index.size(); ++i)
    out.push_back({index.items()[i].id, scores[static_cast<Index>(i)]});
  return out;
}

std::vector<Neighbor> query_knn(const ElasticIndex& index, const Series& query, std::size_t k) {
  if (k < 1) throw std::invalid_argument("query_knn: k must be at least 1");
  if (query.empty()) throw std::invalid_argument("query_knn: empty query");
  const Eigen::VectorXd a = embed_query(index, query);
  // Same code path as the indexed items, so a stored item queried against
  // itself lands at distance exactly zero.
  const double self = a.dot(apply_elastic_matrix(index.matrix(), a, index.dim()));
  const Eigen::VectorXd scores = query_scores_embedded(index, a);

  std::vector<Neighbor> all;
  all.reserve(index.size());
  for (std::size_t i = 0; i < index.size(); ++i) {
    const auto& item = index.items()[i];
    all.push_back({item.id, item.label,
                   distance_from_products(self, item.self_product, scores[static_cast<Index>(i)])});
  }
  const std::size_t keep = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(),
                    [](const Neighbor& x, const Neighbor& y) {
                      return x.distance != y.distance ? x.distance < y.distance : x.id < y.id;
                    });
  all.resize(keep);
  return all;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

constexpr std::array<char, 4> kMagic{'E', 'I', 'P', 'X'};

template <typename T>
void put_le(std::ostream& out, T value) {
  static_assert(std::is_unsigned_v<T>);
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

void put_f64(std::ostream& out, double value) { put_le(out, std::bit_cast<std::uint64_t>(value)); }

void put_string(std::ostream& out, const std::string& s) {
  put_le(out, static_cast<std::uint32_t>(s.size()));
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw std::runtime_error("index file truncated");
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(bytes[i]) << (8 * i);
  return value;
}

double get_f64(std::istream& in) { return std::bit_cast<double>(get_le<std::uint64_t>(in)); }

std::string get_string(std::istream& in) {
  const auto n = get_le<std::uint32_t>(in);
  std::string s(n, '\0');
  in.read(s.data(), n);
  if (!in) throw std::runtime_error("index file truncated");
  return s;
}

}  // namespace

void save_index(const ElasticIndex& index, std::ostream& out) {
  out.write(kMagic.data(), kMagic.size());
  put_le(out, kIndexFormatVersion);
  put_le(out, static_cast<std::uint64_t>(index.matrix().size()));
  put_le(out, static_cast<std::uint64_t>(index.dim()));
  put_f64(out, index.matrix().nu);
  put_le(out, static_cast<std::uint32_t>(index.matrix().kernel == TimeKernel::Gaussian ? 0 : 1));
  for (double t : index.grid()) put_f64(out, t);
  put_le(out, static_cast<std::uint64_t>(index.size()));
  for (const auto& item : index.items()) {
    put_string(out, item.id);
    put_string(out, item.label);
    for (Index i = 0; i < item.transformed.size(); ++i) put_f64(out, item.transformed[i]);
    put_f64(out, item.self_product);
  }
  if (!out) throw std::runtime_error("failed to write index");
}

ElasticIndex load_index(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw std::runtime_error("not an elastic index file (bad magic)");
  const auto version = get_le<std::uint32_t>(in);
  if (version != kIndexFormatVersion)
    throw std::runtime_error("unsupported index format version " + std::to_string(version));
  const auto n = get_le<std::uint64_t>(in);
  const auto dim = get_le<std::uint64_t>(in);
  const double nu = get_f64(in);
  const auto kernel_code = get_le<std::uint32_t>(in);
  if (kernel_code > 1) throw std::runtime_error("unknown time kernel code in index file");
  Timestamps grid(n);
  for (auto& t : grid) t = get_f64(in);
  ElasticMatrix matrix =
      build_elastic_matrix(std::move(grid), nu, kernel_code == 0 ? TimeKernel::Gaussian : TimeKernel::Laplace);

  const auto count = get_le<std::uint64_t>(in);
  std::vector<IndexedItem> items;
  items.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    IndexedItem item;
    item.id = get_string(in);
    item.label = get_string(in);
    item.transformed.resize(static_cast<Index>(n * dim));
    for (Index i = 0; i < item.transformed.size(); ++i) item.transformed[i] = get_f64(in);
    item.self_product = get_f64(in);
    items.push_back(std::move(item));
  }
  return ElasticIndex(std::move(matrix), static_cast<Index>(dim), std::move(items));
}

void save_index(const ElasticIndex& index, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  save_index(index, out);
}

ElasticIndex load_index(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return load_index(in);
}

}  // namespace eipvs
