#include "usaphmp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "summation.hpp"
#include "usaphmp/error.hpp"

namespace usaphmp {

namespace {

void check_matrix(const SquareMatrix& m, const char* what) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = m(i, j);
      if (!std::isfinite(v) || v < 0.0) {
        throw ParameterError(std::string(what) + "[" + std::to_string(i + 1) +
                             "][" + std::to_string(j + 1) +
                             "] must be finite and nonnegative");
      }
    }
  }
}

void check_factor(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw ParameterError(std::string(what) + " must be finite and positive");
  }
}

}  // namespace

Instance::Instance(SquareMatrix dist, SquareMatrix flow, std::size_t hubs,
                   CostFactors factors, std::string name)
    : dist_(std::move(dist)),
      flow_(std::move(flow)),
      hubs_(hubs),
      factors_(factors),
      name_(std::move(name)) {
  const std::size_t n = dist_.size();
  if (n == 0) throw ParameterError("instance must have at least one node");
  if (flow_.size() != n) {
    throw ParameterError("distance and flow matrices differ in size");
  }
  if (hubs_ < 1 || hubs_ > n) {
    throw ParameterError("hub count " + std::to_string(hubs_) +
                         " outside [1, " + std::to_string(n) + "]");
  }
  check_factor(factors_.collection, "collection factor");
  check_factor(factors_.transfer, "transfer factor");
  check_factor(factors_.distribution, "distribution factor");
  check_matrix(dist_, "dist");
  check_matrix(flow_, "flow");
  for (std::size_t i = 0; i < n; ++i) {
    if (dist_(i, i) != 0.0) {
      throw ParameterError("dist[" + std::to_string(i + 1) + "][" +
                           std::to_string(i + 1) + "] must be zero");
    }
  }

  out_flow_.resize(n);
  in_flow_.resize(n);
  row_sums_.resize(n);
  std::vector<detail::CompensatedSum> in(n);
  detail::CompensatedSum total;
  for (std::size_t i = 0; i < n; ++i) {
    detail::CompensatedSum out, d;
    for (std::size_t j = 0; j < n; ++j) {
      out += flow_(i, j);
      in[j] += flow_(i, j);
      d += dist_(i, j);
    }
    out_flow_[i] = out.value();
    row_sums_[i] = d.value();
    total += out_flow_[i];
  }
  for (std::size_t j = 0; j < n; ++j) in_flow_[j] = in[j].value();
  total_flow_ = total.value();

  centrality_.resize(n);
  std::iota(centrality_.begin(), centrality_.end(), std::size_t{0});
  std::stable_sort(centrality_.begin(), centrality_.end(),
                   [this](std::size_t a, std::size_t b) {
                     return row_sums_[a] < row_sums_[b];
                   });
}

Instance Instance::with_hubs(std::size_t hubs) const {
  return Instance(dist_, flow_, hubs, factors_, name_);
}

Instance Instance::with_factors(CostFactors factors) const {
  return Instance(dist_, flow_, hubs_, factors, name_);
}

}  // namespace usaphmp
