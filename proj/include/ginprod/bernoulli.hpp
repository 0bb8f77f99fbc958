#pragma once

#include <gmp.h>

#include <deque>
#include <mutex>
#include <vector>

#include "ginprod/real.hpp"

namespace ginprod {
namespace detail {

/// Exact Bernoulli numbers B_0, B_1, B_2, ... as GMP rationals, grown on
/// demand under a lock.  B_1 = -1/2 convention; odd B beyond B_1 vanish.
class BernoulliTable {
public:
    static BernoulliTable& instance() {
        static BernoulliTable t;
        return t;
    }

    /// Guarantees B_0..B_n are available.
    void ensure(std::size_t n) {
        std::lock_guard<std::mutex> lk(mu_);
        ensure_locked(n);
    }

    /// B_index converted to a Real at the given precision.  Call ensure()
    /// first; elements never move once created (deque storage).
    Real get(std::size_t index, int digits) const {
        Real r(digits);
        mpfr_set_q(r.raw(), b_[index].q, MPFR_RNDN);
        return r;
    }

    std::size_t size() const {
        std::lock_guard<std::mutex> lk(mu_);
        return b_.size();
    }

private:
    struct Rat {
        mpq_t q;
        Rat() { mpq_init(q); }
        ~Rat() { mpq_clear(q); }
        Rat(const Rat&) = delete;
        Rat& operator=(const Rat&) = delete;
    };

    BernoulliTable() { ensure(2); }
    BernoulliTable(const BernoulliTable&) = delete;

    // sum_{j=0}^{n} C(n+1, j) B_j = 0  =>  B_n = -(1/(n+1)) sum_{j<n} C(n+1,j) B_j
    void ensure_locked(std::size_t n) {
        if (b_.size() > n) return;
        if (b_.empty()) {
            b_.emplace_back();
            mpq_set_ui(b_.back().q, 1, 1); // B_0
        }
        mpz_t binom;
        mpz_init(binom);
        mpq_t term, acc, den;
        mpq_init(term);
        mpq_init(acc);
        mpq_init(den);
        for (std::size_t k = b_.size(); k <= n; ++k) {
            mpq_set_ui(acc, 0, 1);
            for (std::size_t j = 0; j < k; ++j) {
                mpz_bin_uiui(binom, static_cast<unsigned long>(k + 1), static_cast<unsigned long>(j));
                mpq_set_z(term, binom);
                mpq_mul(term, term, b_[j].q);
                mpq_add(acc, acc, term);
            }
            b_.emplace_back();
            mpq_neg(acc, acc);
            mpq_set_ui(den, static_cast<unsigned long>(k + 1), 1);
            mpq_div(b_.back().q, acc, den);
            mpq_canonicalize(b_.back().q);
        }
        mpq_clear(den);
        mpq_clear(acc);
        mpq_clear(term);
        mpz_clear(binom);
    }

    mutable std::mutex mu_;
    std::deque<Rat> b_;
};

/// Per-thread cache of the Stirling-series coefficients
/// B_{2r} / (2r (2r-1)), r = 1..count, converted at one precision.
inline const std::vector<Real>& stirling_coefficients(std::size_t count, int digits) {
    thread_local std::vector<Real> cache;
    thread_local int cache_digits = -1;
    if (cache_digits != digits || cache.size() < count) {
        auto& tab = BernoulliTable::instance();
        tab.ensure(2 * count + 2);
        cache.clear();
        cache.reserve(count);
        for (std::size_t r = 1; r <= count; ++r) {
            Real b = tab.get(2 * r, digits);
            cache.push_back(b / static_cast<long>(2 * r * (2 * r - 1)));
        }
        cache_digits = digits;
    }
    return cache;
}

/// Per-thread cache of B_{2r} / (2r), used by the digamma tail.
inline const std::vector<Real>& digamma_coefficients(std::size_t count, int digits) {
    thread_local std::vector<Real> cache;
    thread_local int cache_digits = -1;
    if (cache_digits != digits || cache.size() < count) {
        auto& tab = BernoulliTable::instance();
        tab.ensure(2 * count + 2);
        cache.clear();
        cache.reserve(count);
        for (std::size_t r = 1; r <= count; ++r) {
            Real b = tab.get(2 * r, digits);
            cache.push_back(b / static_cast<long>(2 * r));
        }
        cache_digits = digits;
    }
    return cache;
}

} // namespace detail
} // namespace ginprod
