#ifndef DECKIT_IO_HPP
#define DECKIT_IO_HPP

#include <string>
#include <utility>

#include "deckit/simplicial.hpp"

namespace deckit {

struct MeshFiles {
  std::string vertices;
  std::string elements;
};

struct EdgeList {
  IndexMatrix edges;   // rows (i, j) as given
  DenseVector values;  // third column
};

/// Text loaders: one record per line, whitespace separated. Malformed or
/// empty input raises std::runtime_error with "path:line: message".
std::pair<Eigen::MatrixXd, SimplexArray> load_mesh(const MeshFiles& files);
Eigen::MatrixXd load_points(const std::string& path);
EdgeList load_edges(const std::string& path);
Eigen::MatrixXi load_bitmap(const std::string& path);

/// Writers emit whitespace-separated text with 17 significant digits.
void write_matrix(const std::string& path, const Eigen::MatrixXd& m);
void write_vector(const std::string& path, const DenseVector& v);
std::string format_value(double v);

}  // namespace deckit

#endif  // DECKIT_IO_HPP
