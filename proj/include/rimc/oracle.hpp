#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rimc/contour.hpp"
#include "rimc/sparse_matrix.hpp"

namespace rimc::oracle {

/// k random complex Givens rotations applied as a unitary similarity.
struct GivensSimilarity {
  std::uint64_t seed = 0;
  int rotation_count = 0;
};

/// Pencil with a prescribed spectrum: finite eigenvalues on the leading
/// diagonal, then `infinite_count` rows with A = 1, B = 0.
struct SyntheticSpec {
  std::vector<Complex> eigenvalues;
  Index infinite_count = 0;
  std::optional<GivensSimilarity> transform;

  Index n() const noexcept { return static_cast<Index>(eigenvalues.size()) + infinite_count; }
};

/// G acts on coordinates (p, q) as [[c, s], [-conj(s), c]].
struct Rotation {
  Index p;
  Index q;
  double c;
  Complex s;
};

/// The rotation sequence of spec.transform, regenerated deterministically.
std::vector<Rotation> rotations(const SyntheticSpec& spec);
/// Q v where Q = G_k ... G_1.
Vector apply_similarity(std::span<const Rotation> rots, const Vector& v);
/// Q^H v.
Vector apply_similarity_adjoint(std::span<const Rotation> rots, const Vector& v);

/// (Q A Q^H, Q B Q^H); the generalized spectrum is that of the diagonal pencil.
Pencil synth_pencil(const SyntheticSpec& spec);

/// Closed-form spectral projection: in the diagonal frame keep f_i for every
/// finite eigenvalue strictly inside the circle, zero the rest. Throws
/// OnContour when an eigenvalue lies within 1e-12 radius of the circle.
Vector exact_projection(const SyntheticSpec& spec, const Vector& f, Complex center, double radius);
Vector exact_projection(const SyntheticSpec& spec, const Vector& f, const Contour& c);

/// Trapezoidal projection with a direct factorization at every node; no
/// Krylov, no cache. n_large >= 64.
Vector brute_projection(const Pencil& p, const Vector& f, Complex center, double radius,
                        int n_large, int threads = 1);

}  // namespace rimc::oracle
