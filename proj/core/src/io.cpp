#include "usaphmp/io.hpp"

#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "usaphmp/error.hpp"
#include "usaphmp/rng.hpp"

namespace usaphmp {

namespace {

constexpr double kUrandExtent = 100000.0;
constexpr std::size_t kUrandMaxFlow = 100;

// Yields the tokens of each non-blank, non-comment line with its 1-based
// physical line number.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next() {
    std::string raw;
    while (std::getline(in_, raw)) {
      ++line_no_;
      const auto first = raw.find_first_not_of(" \t\r");
      if (first == std::string::npos || raw[first] == '#') continue;
      tokens_.clear();
      std::size_t pos = first;
      while (pos < raw.size()) {
        const auto end = raw.find_first_of(" \t\r", pos);
        const auto stop = end == std::string::npos ? raw.size() : end;
        tokens_.push_back(raw.substr(pos, stop - pos));
        pos = raw.find_first_not_of(" \t\r", stop);
        if (pos == std::string::npos) break;
      }
      return true;
    }
    return false;
  }

  // Next content line with exactly `count` tokens.
  const std::vector<std::string>& expect(std::size_t count, const char* what) {
    if (!next()) {
      throw ParseError(0, std::string("unexpected end of input, expected ") + what);
    }
    if (tokens_.size() != count) {
      throw ParseError(line_no_, std::string(what) + ": expected " +
                                     std::to_string(count) + " values, found " +
                                     std::to_string(tokens_.size()));
    }
    return tokens_;
  }

  void expect_end() {
    if (next()) throw ParseError(line_no_, "unexpected trailing content");
  }

  std::size_t line() const { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
  std::vector<std::string> tokens_;
};

double to_real(const std::string& tok, std::size_t line) {
  double v = 0.0;
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || ptr != end || !std::isfinite(v)) {
    throw ParseError(line, "invalid number '" + tok + "'");
  }
  return v;
}

std::size_t to_count(const std::string& tok, std::size_t line) {
  std::size_t v = 0;
  const auto* end = tok.data() + tok.size();
  const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line, "invalid integer '" + tok + "'");
  }
  return v;
}

void read_matrix_rows(LineReader& reader, SquareMatrix& m, const char* what,
                      bool zero_diagonal) {
  const std::size_t n = m.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& toks = reader.expect(n, what);
    for (std::size_t j = 0; j < n; ++j) {
      const double v = to_real(toks[j], reader.line());
      if (v < 0.0) {
        throw ParseError(reader.line(), std::string("negative ") + what +
                                            " entry '" + toks[j] + "'");
      }
      if (zero_diagonal && i == j && v != 0.0) {
        throw ParseError(reader.line(), "nonzero distance diagonal");
      }
      m(i, j) = v;
    }
  }
}

void append_real(std::string& out, double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

}  // namespace

InstanceFormat parse_format(std::string_view name) {
  if (name == "canonical") return InstanceFormat::kCanonical;
  if (name == "coordinate") return InstanceFormat::kCoordinate;
  throw ParameterError("unknown instance format '" + std::string(name) + "'");
}

std::string_view format_name(InstanceFormat format) {
  return format == InstanceFormat::kCanonical ? "canonical" : "coordinate";
}

InstanceFormat format_for_path(const std::filesystem::path& path) {
  return path.extension() == ".coords" ? InstanceFormat::kCoordinate
                                       : InstanceFormat::kCanonical;
}

SquareMatrix euclidean_distances(std::span<const Point> points) {
  const std::size_t n = points.size();
  SquareMatrix d(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double dx = points[i].x - points[j].x;
      const double dy = points[i].y - points[j].y;
      d(i, j) = std::sqrt(dx * dx + dy * dy);
    }
  }
  return d;
}

Instance parse_instance(std::istream& in, InstanceFormat format,
                        std::string name) {
  LineReader reader(in);
  const auto& head = reader.expect(2, "header 'n p'");
  const std::size_t header_line = reader.line();
  const std::size_t n = to_count(head[0], header_line);
  const std::size_t p = to_count(head[1], header_line);
  if (n == 0) throw ParseError(header_line, "node count must be positive");
  if (p < 1 || p > n) throw ParseError(header_line, "hub count outside [1, n]");

  const auto& fac = reader.expect(3, "factors 'chi alpha delta'");
  CostFactors factors;
  factors.collection = to_real(fac[0], reader.line());
  factors.transfer = to_real(fac[1], reader.line());
  factors.distribution = to_real(fac[2], reader.line());
  if (factors.collection <= 0.0 || factors.transfer <= 0.0 ||
      factors.distribution <= 0.0) {
    throw ParseError(reader.line(), "cost factors must be positive");
  }

  SquareMatrix dist(n);
  if (format == InstanceFormat::kCanonical) {
    read_matrix_rows(reader, dist, "distance", true);
  } else {
    std::vector<Point> points(n);
    for (auto& pt : points) {
      const auto& xy = reader.expect(2, "coordinate");
      pt = {to_real(xy[0], reader.line()), to_real(xy[1], reader.line())};
    }
    dist = euclidean_distances(points);
  }
  SquareMatrix flow(n);
  read_matrix_rows(reader, flow, "flow", false);
  reader.expect_end();
  return Instance(std::move(dist), std::move(flow), p, factors, std::move(name));
}

Instance parse_instance(std::string_view text, InstanceFormat format,
                        std::string name) {
  std::istringstream in{std::string(text)};
  return parse_instance(in, format, std::move(name));
}

Instance load_instance(const std::filesystem::path& path,
                       std::optional<InstanceFormat> format) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return parse_instance(in, format.value_or(format_for_path(path)),
                        path.stem().string());
}

std::string serialize_instance(const Instance& inst) {
  const std::size_t n = inst.size();
  std::string out;
  out.reserve(n * n * 16 + 64);
  if (!inst.name().empty()) {
    out += "# ";
    out += inst.name();
    out += '\n';
  }
  out += std::to_string(n) + ' ' + std::to_string(inst.hubs()) + '\n';
  append_real(out, inst.factors().collection);
  out += ' ';
  append_real(out, inst.factors().transfer);
  out += ' ';
  append_real(out, inst.factors().distribution);
  out += '\n';
  for (const SquareMatrix* m : {&inst.dist(), &inst.flow()}) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = m->row(i);
      for (std::size_t j = 0; j < n; ++j) {
        if (j) out += ' ';
        append_real(out, row[j]);
      }
      out += '\n';
    }
  }
  return out;
}

void write_instance(std::ostream& out, const Instance& inst) {
  out << serialize_instance(inst);
}

UrandData generate_urand_data(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw ParameterError("node count must be positive");
  auto rng = resolve_rng(seed, 0, StreamRole::kInstance);
  UrandData data;
  data.points.resize(n);
  for (auto& pt : data.points) {
    pt.x = rng.uniform_unit() * kUrandExtent;
    pt.y = rng.uniform_unit() * kUrandExtent;
  }
  data.flow = SquareMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      data.flow(i, j) = static_cast<double>(rng.uniform_index(kUrandMaxFlow + 1));
    }
  }
  return data;
}

Instance generate_urand(std::size_t n, std::size_t hubs, std::uint64_t seed,
                        CostFactors factors) {
  auto data = generate_urand_data(n, seed);
  return Instance(euclidean_distances(data.points), std::move(data.flow), hubs,
                  factors,
                  "urand-n" + std::to_string(n) + "-p" + std::to_string(hubs) +
                      "-s" + std::to_string(seed));
}

Solution parse_solution(std::istream& in) {
  LineReader reader(in);
  const auto& head = reader.expect(2, "header 'n p'");
  const std::size_t n = to_count(head[0], reader.line());
  const std::size_t p = to_count(head[1], reader.line());
  if (n == 0) throw ParseError(reader.line(), "node count must be positive");
  if (p < 1 || p > n) throw ParseError(reader.line(), "hub count outside [1, n]");

  auto node = [&](const std::string& tok) {
    const std::size_t v = to_count(tok, reader.line());
    if (v < 1 || v > n) {
      throw ParseError(reader.line(), "node index " + tok + " outside [1, n]");
    }
    return v - 1;
  };

  Solution sol;
  sol.hub.assign(n, 0);
  for (const auto& tok : reader.expect(p, "hub list")) {
    const std::size_t k = node(tok);
    if (sol.hub[k]) throw ParseError(reader.line(), "duplicate hub " + tok);
    sol.hub[k] = 1;
  }
  sol.alloc.resize(n);
  const auto& alloc = reader.expect(n, "allocation");
  for (std::size_t i = 0; i < n; ++i) sol.alloc[i] = node(alloc[i]);
  reader.expect_end();
  return sol;
}

Solution parse_solution(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_solution(in);
}

std::string serialize_solution(const Solution& sol) {
  const auto hubs = sol.hub_nodes();
  std::string out = std::to_string(sol.size()) + ' ' + std::to_string(hubs.size()) + '\n';
  for (std::size_t i = 0; i < hubs.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(hubs[i] + 1);
  }
  out += '\n';
  for (std::size_t i = 0; i < sol.alloc.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(sol.alloc[i] + 1);
  }
  out += '\n';
  return out;
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace usaphmp
