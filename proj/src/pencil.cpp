#include <random>
#include <string>

#include "rimc/errors.hpp"
#include "rimc/sparse_matrix.hpp"

namespace rimc {

Pencil::Pencil(SparseMatrix a, SparseMatrix b) : a_(std::move(a)), b_(std::move(b)) {
  if (!a_.square()) throw DimensionError("A must be square");
  if (!b_.square()) throw DimensionError("B must be square");
  if (a_.rows() != b_.rows()) {
    throw DimensionError("A is " + std::to_string(a_.rows()) + "x" + std::to_string(a_.cols()) +
                         " but B is " + std::to_string(b_.rows()) + "x" +
                         std::to_string(b_.cols()));
  }
}

Pencil make_pencil(SparseMatrix a, std::optional<SparseMatrix> b) {
  if (!a.square()) throw DimensionError("A must be square");
  if (!b) b = SparseMatrix::identity(a.rows());
  return Pencil(std::move(a), std::move(*b));
}

ProbeVector random_probe(Index n, std::uint64_t seed) {
  if (n <= 0) throw DimensionError("probe dimension must be positive");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ProbeVector probe{Vector(n), seed};
  for (Index i = 0; i < n; ++i) {
    const double re = normal(gen);
    const double im = normal(gen);
    probe.values[i] = Complex(re, im);
  }
  probe.values /= probe.values.norm();
  return probe;
}

}  // namespace rimc
