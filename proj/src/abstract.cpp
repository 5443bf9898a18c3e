#include "deckit/abstract.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace deckit {

namespace {

std::string row_to_string(const std::vector<Index>& row) {
  std::string s = "(";
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(row[i]);
  }
  return s + ")";
}

struct MergeEntry {
  std::vector<Index> row;
  int origin = 0;  // 0 derived, 1 user
  Index pos = 0;
  int parity = 1;
};

/// Concatenate derived faces with user rows, lexicographically sort, dedupe
/// keeping the first occurrence. Returns the merged rows, the merged
/// position of every derived face, and appends notes for discarded
/// opposite orientations.
std::pair<IndexMatrix, std::vector<Index>> merge_level(
    const IndexMatrix& derived, const ParityTaggedSimplexArray& user, Index p,
    std::vector<std::string>& report) {
  std::vector<MergeEntry> entries;
  entries.reserve(derived.rows() + user.count());
  for (Index i = 0; i < derived.rows(); ++i) {
    MergeEntry e;
    e.row.assign(derived.row(i).begin(), derived.row(i).end());
    e.origin = 0;
    e.pos = i;
    entries.push_back(std::move(e));
  }
  for (Index j = 0; j < user.count(); ++j) {
    MergeEntry e;
    e.row.assign(user.rows.row(j).begin(), user.rows.row(j).end());
    e.origin = 1;
    e.pos = j;
    e.parity = user.parity[j];
    entries.push_back(std::move(e));
  }
  std::stable_sort(entries.begin(), entries.end(),
                   [](const MergeEntry& a, const MergeEntry& b) {
                     return a.row < b.row;
                   });

  std::vector<std::vector<Index>> merged;
  std::vector<Index> derived_pos(derived.rows(), 0);
  for (const MergeEntry& e : entries) {
    if (merged.empty() || merged.back() != e.row) {
      merged.push_back(e.row);
    } else if (e.origin == 1 && e.parity < 0) {
      report.push_back("simplex " + row_to_string(e.row) + " at dimension " +
                       std::to_string(p) +
                       ": input orientation discarded for the ascending one");
    }
    if (e.origin == 0) derived_pos[e.pos] = static_cast<Index>(merged.size()) - 1;
  }

  IndexMatrix rows(static_cast<Index>(merged.size()), p + 1);
  for (Index r = 0; r < rows.rows(); ++r)
    for (Index c = 0; c <= p; ++c) rows(r, c) = merged[r][c];
  return {std::move(rows), std::move(derived_pos)};
}

SparseMatrixd remap_rows(const SparseMatrixd& b, const std::vector<Index>& row_map,
                         Index new_rows) {
  SparseMatrixd out = SparseMatrixd::zero(new_rows, b.cols);
  out.indices = b.indices;
  out.data = b.data;
  for (Index r = 0; r < b.rows; ++r)
    out.ptr[row_map[r] + 1] = b.ptr[r + 1] - b.ptr[r];
  for (Index r = 0; r < new_rows; ++r) out.ptr[r + 1] += out.ptr[r];
  return out;
}

}  // namespace

AbstractComplex build_abstract(const std::vector<SimplexArray>& simplex_lists) {
  Index n = -1;
  for (const SimplexArray& s : simplex_lists) {
    if (s.count() == 0) continue;
    if (s.p + 1 != s.rows.cols())
      throw std::invalid_argument("build_abstract: declared dimension " +
                                  std::to_string(s.p) + " disagrees with width " +
                                  std::to_string(s.rows.cols()));
    if (s.rows.minCoeff() < 0)
      throw std::invalid_argument("build_abstract: negative vertex label");
    n = std::max(n, s.p);
  }
  if (n < 0) throw std::invalid_argument("build_abstract: no simplices");

  // One user array per dimension, same-dimension lists concatenated in order.
  std::vector<SimplexArray> user(n + 1);
  for (Index p = 0; p <= n; ++p) {
    user[p].p = p;
    user[p].rows.resize(0, p + 1);
  }
  for (const SimplexArray& s : simplex_lists) {
    if (s.count() == 0) continue;
    IndexMatrix& dst = user[s.p].rows;
    const Index old = dst.rows();
    dst.conservativeResize(old + s.count(), s.p + 1);
    dst.bottomRows(s.count()) = s.rows;
  }

  AbstractComplex out;
  out.levels.resize(n + 1);

  // Top level keeps the input rows verbatim; parity feeds the boundary.
  ParityTaggedSimplexArray current = canonical_format(user[n]);
  out.levels[n].cells = user[n];
  out.levels[n].parity = current.parity;

  for (Index q = n; q >= 1; --q) {
    BoundaryFaces bf = boundary_faces(current);
    ParityTaggedSimplexArray user_tagged = canonical_format(user[q - 1]);
    auto [merged, derived_pos] =
        merge_level(bf.faces.rows, user_tagged, q - 1, out.report);
    out.levels[q].boundary = remap_rows(bf.boundary, derived_pos, merged.rows());
    out.levels[q - 1].cells.p = q - 1;
    out.levels[q - 1].cells.rows = std::move(merged);
    out.levels[q - 1].parity.assign(out.levels[q - 1].cells.count(), 1);

    current.rows = out.levels[q - 1].cells.rows;
    current.parity.assign(current.rows.rows(), 1);
    current.source_index.resize(current.rows.rows());
    for (Index i = 0; i < current.rows.rows(); ++i) current.source_index[i] = i;
  }
  out.levels[0].boundary = SparseMatrixd::zero(1, out.levels[0].cells.count());
  return out;
}

}  // namespace deckit
