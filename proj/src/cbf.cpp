#include "eipvs/eval.hpp"
#include "eipvs/orthogonal.hpp"

#include <random>
#include <stdexcept>

namespace eipvs {

LabeledDataset cbf_generate(std::size_t per_class, Index length, std::uint64_t seed) {
  if (length < 8) throw std::invalid_argument("cbf_generate: length must be at least 8");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double stretch = static_cast<double>(length) / 128.0;
  std::uniform_real_distribution<double> onset(16.0 * stretch, 32.0 * stretch);
  std::uniform_real_distribution<double> width(32.0 * stretch, 96.0 * stretch);

  LabeledDataset out;
  out.name = "cbf";
  const char* names[] = {"cylinder", "bell", "funnel"};
  const Timestamps t = index_timestamps(length);
  for (int cls = 0; cls < 3; ++cls) {
    for (std::size_t k = 0; k < per_class; ++k) {
      const double a = onset(rng);
      const double b = a + width(rng);
      const double height = 6.0 + normal(rng);
      Series::Values v(1, length);
      for (Index i = 0; i < length; ++i) {
        const double ti = t[static_cast<std::size_t>(i)];
        double shape = 0.0;
        if (ti >= a && ti <= b) {
          if (cls == 0) shape = 1.0;
          else if (cls == 1) shape = (ti - a) / (b - a);
          else shape = (b - ti) / (b - a);
        }
        double value = height * shape + normal(rng);
        if (value == 0.0) value = kDefaultEpsilon;
        v(0, i) = value;
      }
      out.entries.push_back({std::string(names[cls]) + "-" + std::to_string(k), names[cls], Series(std::move(v), t)});
    }
  }
  return out;
}

}  // namespace eipvs
