#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "usaphmp/instance.hpp"
#include "usaphmp/solution.hpp"

namespace usaphmp {

/// Text layouts for instances. Both share the header
///   n p
///   chi alpha delta
/// followed by either n distance rows (canonical) or n `x y` lines
/// (coordinate), then n flow rows. Lines starting with '#' are comments.
enum class InstanceFormat { kCanonical, kCoordinate };

/// "canonical" / "coordinate"; throws ParameterError otherwise.
InstanceFormat parse_format(std::string_view name);
std::string_view format_name(InstanceFormat format);
/// `.coords` -> coordinate, anything else -> canonical.
InstanceFormat format_for_path(const std::filesystem::path& path);

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Euclidean distance matrix of `points`. Symmetric with zero diagonal.
SquareMatrix euclidean_distances(std::span<const Point> points);

/// Throws ParseError naming the offending line.
Instance parse_instance(std::istream& in, InstanceFormat format,
                        std::string name = {});
Instance parse_instance(std::string_view text, InstanceFormat format,
                        std::string name = {});
/// Reads a file; format inferred from the extension unless given. Throws
/// Error when the file cannot be opened.
Instance load_instance(const std::filesystem::path& path,
                       std::optional<InstanceFormat> format = std::nullopt);

/// Canonical text. Reals use the shortest representation that round-trips.
std::string serialize_instance(const Instance& inst);
void write_instance(std::ostream& out, const Instance& inst);

/// Raw data of a uniformly random Euclidean instance.
struct UrandData {
  std::vector<Point> points;
  SquareMatrix flow;
};

/// Coordinates uniform in [0, 100000)^2, flows uniform integers in [0, 100]
/// off the diagonal and 0 on it. Draws come from
/// resolve_rng(seed, 0, StreamRole::kInstance): all x, y pairs in node order,
/// then flows row by row.
UrandData generate_urand_data(std::size_t n, std::uint64_t seed);
Instance generate_urand(std::size_t n, std::size_t hubs, std::uint64_t seed,
                        CostFactors factors);

/// Solution file: `n p`, then the p hub indices, then n allocations, all
/// 1-based, one group per line.
Solution parse_solution(std::istream& in);
Solution parse_solution(std::string_view text);
std::string serialize_solution(const Solution& sol);

/// 64-bit FNV-1a of `bytes`, as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

}  // namespace usaphmp
