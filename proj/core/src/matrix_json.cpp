#include "detpert/matrix_json.hpp"

#include <fstream>
#include <vector>

namespace detpert {

MatrixFile parse_matrix_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("data")) {
    throw IoError("matrix JSON must be an object with \"n\" and \"data\"");
  }
  const int n = j.at("n").get<int>();
  if (n < 1) throw IoError("matrix JSON: \"n\" must be positive");
  const auto data = j.at("data").get<std::vector<double>>();
  if (data.size() != static_cast<std::size_t>(n) * n) {
    throw IoError("matrix JSON: \"data\" must hold n*n values");
  }
  MatrixFile out{SymMatrix(n, data), std::nullopt};
  if (j.contains("partition")) {
    const auto sizes = j.at("partition").get<std::vector<int>>();
    BlockPartition p(sizes);
    if (p.total() != n) {
      throw IoError("matrix JSON: partition does not sum to n");
    }
    out.partition = std::move(p);
  }
  return out;
}

MatrixFile load_matrix_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw IoError("cannot parse " + path.string() + ": " + e.what());
  }
  try {
    return parse_matrix_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw IoError("bad matrix JSON in " + path.string() + ": " + e.what());
  } catch (const DimensionMismatchError& e) {
    throw IoError("bad matrix JSON in " + path.string() + ": " + e.what());
  }
}

nlohmann::ordered_json matrix_to_json(const SymMatrix& m,
                                      const BlockPartition* partition) {
  nlohmann::ordered_json j;
  j["n"] = m.n();
  j["data"] = std::vector<double>(m.data().begin(), m.data().end());
  if (partition != nullptr) j["partition"] = partition->sizes();
  return j;
}

void save_matrix_json(const std::filesystem::path& path, const SymMatrix& m,
                      const BlockPartition* partition) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << matrix_to_json(m, partition).dump(2) << '\n';
}

}  // namespace detpert
