#pragma once

#include <cstddef>

namespace rmt {

// One row of a run trajectory. Field order matches the CSV schema.
struct IterateRecord {
  std::size_t k = 0;
  double consensus_error_sq = 0.0;
  double grad_norm_mean = 0.0;
  double f_gap = 0.0;
  double ds = 0.0;
  double s_norm_max = 0.0;
  double m_norm_max = 0.0;
  double tracking_residual = 0.0;
  bool tube_ok = true;
};

}  // namespace rmt
