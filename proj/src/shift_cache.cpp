#include "rimc/shift_cache.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>

#include "rimc/errors.hpp"

namespace rimc {

std::size_t ShiftCache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

BasisPtr ShiftCache::find(Complex sigma) const {
  std::shared_lock lock(mutex_);
  for (const auto& e : entries_) {
    if (e->sigma == sigma) return e;
  }
  return nullptr;
}

BasisPtr ShiftCache::insert(BasisPtr basis) {
  std::unique_lock lock(mutex_);
  for (const auto& e : entries_) {
    if (e->sigma == basis->sigma) return e;
  }
  if (entries_.size() >= budget_) {
    std::ostringstream os;
    os << "shift budget of " << budget_ << " Krylov bases exhausted";
    throw ShiftBudgetExceeded(os.str());
  }
  entries_.push_back(std::move(basis));
  return entries_.back();
}

std::vector<BasisPtr> ShiftCache::snapshot() const {
  std::shared_lock lock(mutex_);
  return entries_;
}

BasisPtr select_basis(const std::vector<BasisPtr>& entries, Complex z) {
  if (entries.empty()) throw CacheEmpty();
  BasisPtr best;
  double best_dist = 0.0;
  for (const auto& e : entries) {
    const double d = std::abs(e->sigma - z);
    if (!best || d < best_dist ||
        (d == best_dist &&
         std::pair(e->sigma.real(), e->sigma.imag()) <
             std::pair(best->sigma.real(), best->sigma.imag()))) {
      best = e;
      best_dist = d;
    }
  }
  return best;
}

BasisPtr select_basis(const ShiftCache& cache, Complex z) {
  return select_basis(cache.snapshot(), z);
}

BasisPtr ensure_basis(ShiftCache& cache, const Pencil& p, const Vector& f, Complex sigma,
                      const Config& cfg, SearchStats* stats, const ShiftCache* donor) {
  if (auto hit = cache.find(sigma)) return hit;
  if (cache.full()) {
    std::ostringstream os;
    os << "shift budget of " << cache.budget() << " Krylov bases exhausted at sigma = "
       << sigma;
    throw ShiftBudgetExceeded(os.str());
  }

  constexpr int kRetries = 3;
  Complex shift = sigma;
  for (int attempt = 0;; ++attempt) {
    try {
      std::shared_ptr<const ShiftedFactorization> fact;
      if (donor) {
        if (auto d = donor->find(shift)) fact = d->factorization;
      }
      if (!fact) {
        fact = std::make_shared<const ShiftedFactorization>(p, shift);
        if (stats) ++stats->factorizations_built;
      }
      auto basis = std::make_shared<const KrylovBasis>(build_basis(p, std::move(fact), f, cfg.m));
      if (stats) ++stats->bases_built;
      return cache.insert(std::move(basis));
    } catch (const ShiftIsEigenvalue&) {
      if (stats) ++stats->failed_factorizations;
      if (attempt == kRetries) {
        std::ostringstream os;
        os << "could not factorize near sigma = " << sigma << " after " << kRetries
           << " perturbations";
        throw ShiftConstructionFailed(os.str());
      }
      shift += Complex(1.0, 1.0) * 1e-8 * std::max(1.0, std::abs(shift));
      if (auto hit = cache.find(shift)) return hit;
    }
  }
}

}  // namespace rimc
