#pragma once

#include <memory>
#include <shared_mutex>
#include <vector>

#include "rimc/cayley_arnoldi.hpp"
#include "rimc/config.hpp"

namespace rimc {

using BasisPtr = std::shared_ptr<const KrylovBasis>;

/// Krylov bases keyed by shift. Reads may run concurrently; insertion is
/// serialized and the first writer for a given shift wins.
///
/// Every basis is started from one right-hand side f, so a cache must only be
/// used with the probe it was filled with.
class ShiftCache {
 public:
  explicit ShiftCache(std::size_t budget) : budget_(budget) {}

  std::size_t budget() const noexcept { return budget_; }
  std::size_t size() const;
  bool full() const { return size() >= budget_; }

  /// Basis stored under exactly this shift, or null.
  BasisPtr find(Complex sigma) const;
  /// Inserts unless an entry with the same shift exists; returns the stored entry.
  /// Throws ShiftBudgetExceeded when the cache is full.
  BasisPtr insert(BasisPtr basis);
  /// Entries in insertion order.
  std::vector<BasisPtr> snapshot() const;

 private:
  std::size_t budget_;
  mutable std::shared_mutex mutex_;
  std::vector<BasisPtr> entries_;
};

/// Nearest shift to z; ties go to the lexicographically smallest (Re, Im).
/// Throws CacheEmpty.
BasisPtr select_basis(const ShiftCache& cache, Complex z);
BasisPtr select_basis(const std::vector<BasisPtr>& entries, Complex z);

/// Returns the cached basis for sigma or builds one. A shift that hits the
/// spectrum is nudged by (1 + i) 1e-8 max(1, |sigma|), at most three times.
/// When `donor` holds a basis at the same shift its factorization is reused.
BasisPtr ensure_basis(ShiftCache& cache, const Pencil& p, const Vector& f, Complex sigma,
                      const Config& cfg, SearchStats* stats = nullptr,
                      const ShiftCache* donor = nullptr);

}  // namespace rimc
