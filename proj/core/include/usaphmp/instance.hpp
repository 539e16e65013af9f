#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "usaphmp/matrix.hpp"

namespace usaphmp {

/// Cost multipliers on the three legs of an origin-hub-hub-destination path.
struct CostFactors {
  double collection = 1.0;    ///< chi, spoke -> hub
  double transfer = 1.0;      ///< alpha, hub -> hub discount
  double distribution = 1.0;  ///< delta, hub -> spoke

  friend bool operator==(const CostFactors&, const CostFactors&) = default;
};

/// Immutable problem data for one single-allocation p-hub median instance.
///
/// Distances need not be symmetric nor metric; self-flows are allowed. The
/// constructor validates every entry and caches per-node outflow/inflow,
/// total flow and the centrality ranking used to pick middle nodes.
class Instance {
 public:
  /// Throws ParameterError if the matrices differ in size, are empty, hold a
  /// negative or non-finite entry, have a nonzero distance diagonal, if any
  /// factor is not finite and positive, or if p is outside [1, n].
  Instance(SquareMatrix dist, SquareMatrix flow, std::size_t hubs,
           CostFactors factors, std::string name = {});

  std::size_t size() const noexcept { return dist_.size(); }
  std::size_t hubs() const noexcept { return hubs_; }
  const SquareMatrix& dist() const noexcept { return dist_; }
  const SquareMatrix& flow() const noexcept { return flow_; }
  double dist(std::size_t i, std::size_t j) const noexcept { return dist_(i, j); }
  double flow(std::size_t i, std::size_t j) const noexcept { return flow_(i, j); }
  const CostFactors& factors() const noexcept { return factors_; }
  const std::string& name() const noexcept { return name_; }

  /// O_i = sum_j W_ij
  std::span<const double> out_flow() const noexcept { return out_flow_; }
  /// D_i = sum_j W_ji
  std::span<const double> in_flow() const noexcept { return in_flow_; }
  double total_flow() const noexcept { return total_flow_; }

  /// Row sums of the distance matrix, d_i = sum_j C_ij.
  std::span<const double> dist_row_sums() const noexcept { return row_sums_; }
  /// All nodes sorted by ascending d_i, ties by lowest index.
  std::span<const std::size_t> centrality_order() const noexcept {
    return centrality_;
  }

  /// Same data with a different hub count.
  Instance with_hubs(std::size_t hubs) const;
  /// Same data with different cost factors.
  Instance with_factors(CostFactors factors) const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.hubs_ == b.hubs_ && a.factors_ == b.factors_ &&
           a.dist_ == b.dist_ && a.flow_ == b.flow_;
  }

 private:
  SquareMatrix dist_;
  SquareMatrix flow_;
  std::size_t hubs_;
  CostFactors factors_;
  std::string name_;
  std::vector<double> out_flow_;
  std::vector<double> in_flow_;
  double total_flow_ = 0.0;
  std::vector<double> row_sums_;
  std::vector<std::size_t> centrality_;
};

}  // namespace usaphmp
