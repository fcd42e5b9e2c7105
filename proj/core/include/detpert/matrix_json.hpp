#pragma once

#include <filesystem>
#include <optional>

#include "json.hpp"

#include "detpert/block_ops.hpp"
#include "detpert/matrix.hpp"

namespace detpert {

// On-disk matrix format:
//   {"n": int, "data": [n*n reals, row-major], "partition": [ints]?}
// Entries are symmetrized on load, so round-off in the file cannot break the
// symmetry invariant.
struct MatrixFile {
  SymMatrix matrix;
  std::optional<BlockPartition> partition;
};

MatrixFile parse_matrix_json(const nlohmann::json& j);
MatrixFile load_matrix_json(const std::filesystem::path& path);

nlohmann::ordered_json matrix_to_json(const SymMatrix& m,
                                      const BlockPartition* partition = nullptr);

void save_matrix_json(const std::filesystem::path& path, const SymMatrix& m,
                      const BlockPartition* partition = nullptr);

}  // namespace detpert
