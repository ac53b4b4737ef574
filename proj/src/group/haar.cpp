#include "nillab/group/haar.hpp"

#include <boost/random/sobol.hpp>

#include <random>
#include <stdexcept>
#include <vector>

namespace nillab {

Matrix<double> haar_sample(int dim, std::size_t count, std::optional<std::uint64_t> seed) {
  if (dim < 1) throw std::invalid_argument("haar_sample: dimension must be positive");
  if (count < 1) throw std::invalid_argument("haar_sample: need at least one point");
  std::vector<std::uint64_t> shift(dim, 0);
  if (seed) {
    std::mt19937_64 words(*seed);
    for (auto& s : shift) s = words();
  }
  boost::random::sobol engine(static_cast<unsigned>(dim));
  Matrix<double> points(dim, static_cast<Eigen::Index>(count));
  constexpr double scale = 1.0 / 9007199254740992.0;  // 2^-53
  for (std::size_t n = 0; n < count; ++n)
    for (int i = 0; i < dim; ++i) {
      std::uint64_t word = static_cast<std::uint64_t>(engine()) ^ shift[i];
      points(i, static_cast<Eigen::Index>(n)) = static_cast<double>(word >> 11) * scale;
    }
  return points;
}

}  // namespace nillab
