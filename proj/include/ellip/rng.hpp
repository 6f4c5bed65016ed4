#pragma once

#include <cstdint>
#include <random>

#include "ellip/types.hpp"

namespace ellip {

// Seeded Gaussian stream used by every instance generator.
//
// Engine: std::mt19937_64 (its output sequence is fixed by the C++ standard).
// Uniforms take the top 53 bits of each draw, mapped to (0, 1]. Normals come
// from the Box-Muller transform, consumed in pairs (cosine branch first).
// std::normal_distribution is avoided because its algorithm differs between
// standard libraries.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    // (k + 1) / 2^53 lies in (0, 1], so log() below is finite.
    return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
  }

  double normal();

  Vector normal_vector(Eigen::Index n);
  Matrix normal_matrix(Eigen::Index rows, Eigen::Index cols);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ellip
