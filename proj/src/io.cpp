#include "deckit/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace deckit {

namespace {

[[noreturn]] void parse_error(const std::string& path, Index line,
                              const std::string& message) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + message);
}

/// Tokenized numeric rows with consistent width; blank lines skipped.
std::vector<std::vector<double>> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  std::vector<std::vector<double>> rows;
  std::string line;
  Index line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::vector<double> row;
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        row.push_back(v);
      } catch (const std::exception&) {
        parse_error(path, line_no, "cannot parse '" + tok + "' as a number");
      }
    }
    if (row.empty()) continue;
    if (!rows.empty() && row.size() != rows.front().size())
      parse_error(path, line_no,
                  "expected " + std::to_string(rows.front().size()) +
                      " columns, got " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error(path + ": file has no data rows");
  return rows;
}

Index integer_cell(const std::string& path, Index row, double v,
                   const std::string& what) {
  const Index i = static_cast<Index>(v);
  if (static_cast<double>(i) != v)
    parse_error(path, row, what + " '" + std::to_string(v) + "' is not an integer");
  return i;
}

}  // namespace

std::pair<Eigen::MatrixXd, SimplexArray> load_mesh(const MeshFiles& files) {
  const auto vrows = read_table(files.vertices);
  Eigen::MatrixXd vertices(static_cast<Index>(vrows.size()),
                           static_cast<Index>(vrows.front().size()));
  for (Index r = 0; r < vertices.rows(); ++r)
    for (Index c = 0; c < vertices.cols(); ++c) vertices(r, c) = vrows[r][c];

  const auto erows = read_table(files.elements);
  SimplexArray top;
  top.p = static_cast<Index>(erows.front().size()) - 1;
  top.rows.resize(static_cast<Index>(erows.size()), top.p + 1);
  for (Index r = 0; r < top.rows.rows(); ++r)
    for (Index c = 0; c < top.rows.cols(); ++c) {
      const Index v = integer_cell(files.elements, r + 1, erows[r][c], "index");
      if (v < 0 || v >= vertices.rows())
        parse_error(files.elements, r + 1,
                    "vertex index " + std::to_string(v) + " outside 0.." +
                        std::to_string(vertices.rows() - 1));
      top.rows(r, c) = v;
    }
  return {vertices, top};
}

Eigen::MatrixXd load_points(const std::string& path) {
  const auto rows = read_table(path);
  Eigen::MatrixXd points(static_cast<Index>(rows.size()),
                         static_cast<Index>(rows.front().size()));
  for (Index r = 0; r < points.rows(); ++r)
    for (Index c = 0; c < points.cols(); ++c) points(r, c) = rows[r][c];
  return points;
}

EdgeList load_edges(const std::string& path) {
  const auto rows = read_table(path);
  if (rows.front().size() != 3)
    throw std::runtime_error(path + ":1: edge rows must be 'i j value'");
  EdgeList out;
  out.edges.resize(static_cast<Index>(rows.size()), 2);
  out.values.resize(static_cast<Index>(rows.size()));
  for (Index r = 0; r < out.edges.rows(); ++r) {
    const Index i = integer_cell(path, r + 1, rows[r][0], "team id");
    const Index j = integer_cell(path, r + 1, rows[r][1], "team id");
    if (i < 0 || j < 0) parse_error(path, r + 1, "team ids must be nonnegative");
    if (i == j) parse_error(path, r + 1, "edge endpoints coincide");
    out.edges(r, 0) = i;
    out.edges(r, 1) = j;
    out.values[r] = rows[r][2];
  }
  return out;
}

Eigen::MatrixXi load_bitmap(const std::string& path) {
  const auto rows = read_table(path);
  Eigen::MatrixXi bits(static_cast<Index>(rows.size()),
                       static_cast<Index>(rows.front().size()));
  for (Index r = 0; r < bits.rows(); ++r)
    for (Index c = 0; c < bits.cols(); ++c) {
      const Index v = integer_cell(path, r + 1, rows[r][c], "bit");
      if (v != 0 && v != 1)
        parse_error(path, r + 1, "bit must be 0 or 1, got " + std::to_string(v));
      bits(r, c) = static_cast<int>(v);
    }
  return bits;
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_matrix(const std::string& path, const Eigen::MatrixXd& m) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) out << ' ';
      out << format_value(m(r, c));
    }
    out << '\n';
  }
}

void write_vector(const std::string& path, const DenseVector& v) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  for (Index r = 0; r < v.size(); ++r) out << format_value(v[r]) << '\n';
}

}  // namespace deckit
