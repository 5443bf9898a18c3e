#ifndef DECKIT_ABSTRACT_HPP
#define DECKIT_ABSTRACT_HPP

#include <string>
#include <vector>

#include "deckit/simplicial.hpp"

namespace deckit {

/// Purely combinatorial complex: cell arrays and boundary operators, no
/// vertex coordinates. Vertex labels are arbitrary nonnegative integers;
/// boundary rows at p = 0 are indexed by position in the sorted label array.
struct AbstractLevel {
  SimplexArray cells;
  std::vector<int> parity;  // orientation parity used for boundary entries
  SparseMatrixd boundary;
};

struct AbstractComplex {
  std::vector<AbstractLevel> levels;  // p = 0..n
  std::vector<std::string> report;    // notes, e.g. orientation conflicts

  Index dim() const { return static_cast<Index>(levels.size()) - 1; }
  Index count(Index p) const { return levels[p].cells.count(); }
};

/// Build from a list of simplex arrays of mixed dimensions. Rows of the
/// highest-dimension array keep their input orientation verbatim; lower
/// levels merge derived faces with user simplices (concatenate, sort
/// lexicographically, dedupe keeping the first occurrence) and boundary
/// matrices gain empty rows for user simplices that are not faces.
AbstractComplex build_abstract(const std::vector<SimplexArray>& simplex_lists);

}  // namespace deckit

#endif  // DECKIT_ABSTRACT_HPP
