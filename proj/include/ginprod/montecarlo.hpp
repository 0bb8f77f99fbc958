#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cstdint>
#include <map>
#include <thread>
#include <vector>

#include "ginprod/probability.hpp"
#include "ginprod/rng.hpp"

namespace ginprod {

struct MCConfig {
    EnsembleSpec spec;
    long trials = 100000;
    std::uint64_t seed = 1;
    int workers = 1;
    double schur_tolerance = 1e-9; ///< relative discriminant tolerance for 2x2 blocks
};

/// Histogram of the number of real eigenvalues over the trials, with
/// normal-approximation standard errors, the discard ledger, and the
/// histograms recomputed at tolerance/100 and tolerance*100 from the same
/// Schur forms (classification sensitivity probe).
struct MCResult {
    std::map<int, long> counts;
    long trials = 0;    ///< trials that produced a classification
    long requested = 0; ///< trials asked for
    long discarded = 0; ///< eigensolver non-convergence, logged not hidden
    std::map<int, double> p_hat;
    std::map<int, double> std_err;
    std::map<int, long> counts_tol_low;  ///< at schur_tolerance / 100
    std::map<int, long> counts_tol_high; ///< at schur_tolerance * 100
    std::uint64_t seed = 0;
};

namespace detail {

template <class Scalar>
using DenseMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// Diagonal-block summary of a real Schur form: enough to classify the
/// eigenvalue count at any tolerance without redoing the factorization.
struct SchurBlocks {
    int singles = 0;                                  // 1x1 blocks
    std::vector<std::pair<double, double>> pairs;     // (discriminant, scale) per 2x2 block
    double max_eig_sq = 0.0;                          // largest |eigenvalue|^2 seen

    int count_real(double tol) const {
        int k = singles;
        for (auto& [disc, scale] : pairs)
            if (disc >= -tol * scale) k += 2;
        return k;
    }
};

template <class Scalar>
SchurBlocks schur_blocks(const DenseMat<Scalar>& M) {
    Eigen::RealSchur<DenseMat<Scalar>> schur(M, /*computeU=*/false);
    if (schur.info() != Eigen::Success)
        throw numerical_error("schur_blocks: real Schur iteration did not converge");
    const auto& T = schur.matrixT();
    const int n = static_cast<int>(T.rows());
    SchurBlocks out;
    int i = 0;
    while (i < n) {
        if (i == n - 1 || T(i + 1, i) == Scalar(0)) {
            out.singles += 1;
            double lam = static_cast<double>(T(i, i));
            out.max_eig_sq = std::max(out.max_eig_sq, lam * lam);
            i += 1;
        } else {
            double a = static_cast<double>(T(i, i));
            double b = static_cast<double>(T(i, i + 1));
            double c = static_cast<double>(T(i + 1, i));
            double d = static_cast<double>(T(i + 1, i + 1));
            double disc = (a - d) * (a - d) + 4.0 * b * c;
            double scale = a * a + b * b + c * c + d * d;
            out.pairs.emplace_back(disc, scale);
            out.max_eig_sq = std::max(out.max_eig_sq, std::abs(a * d - b * c));
            i += 2;
        }
    }
    return out;
}

} // namespace detail

/// Draw the m factor matrices for one trial.
inline std::vector<Eigen::MatrixXd> sample_factors(const EnsembleSpec& spec, SplitStream& rng) {
    spec.validate();
    std::vector<Eigen::MatrixXd> xs;
    xs.reserve(static_cast<std::size_t>(spec.m));
    for (int l = 0; l < spec.m; ++l) {
        Eigen::MatrixXd X(spec.N, spec.N);
        for (int i = 0; i < spec.N; ++i)
            for (int j = 0; j < spec.N; ++j) X(i, j) = rng.next_gaussian();
        xs.push_back(std::move(X));
    }
    return xs;
}

/// P_m = X_m X_{m-1} ... X_1 with freshly sampled standard Gaussian factors.
inline Eigen::MatrixXd sample_product(const EnsembleSpec& spec, SplitStream& rng) {
    auto xs = sample_factors(spec, rng);
    Eigen::MatrixXd P = xs.front();
    for (std::size_t l = 1; l < xs.size(); ++l) P = xs[l] * P;
    return P;
}

/// Number of real eigenvalues of M, classified structurally from the real
/// Schur form: 1x1 diagonal blocks are real; a 2x2 block counts as a
/// numerically-real pair when its discriminant >= -tol * ||block||^2.
/// The result always has the parity of N.
inline int count_real_eigenvalues(const Eigen::MatrixXd& M, double tol = 1e-9) {
    if (!M.allFinite()) throw domain_error("count_real_eigenvalues: matrix must be finite");
    return detail::schur_blocks<double>(M).count_real(tol);
}

/// Monte Carlo estimate of the full {p_{N,k}} histogram.  Trial t draws its
/// own split stream from (seed, t), so the histogram is reproducible and
/// invariant under the worker count; workers share nothing and merge by
/// integer addition.  Trials whose Schur iteration fails are discarded and
/// counted; a discard rate above 0.1% aborts.  Trials with eigenvalues
/// beyond 10^12 in magnitude are recomputed in extended precision before
/// classification.
inline MCResult estimate_p(const MCConfig& cfg) {
    cfg.spec.validate();
    if (cfg.trials < 1) throw domain_error("estimate_p: trials >= 1");
    int workers = std::max(1, cfg.workers);

    struct Local {
        std::map<int, long> counts, lo, hi;
        long discarded = 0;
    };
    std::vector<Local> locals(static_cast<std::size_t>(workers));

    auto run_range = [&](long begin, long end, Local& out) {
        const double tol = cfg.schur_tolerance;
        for (long t = begin; t < end; ++t) {
            SplitStream rng(cfg.seed, static_cast<std::uint64_t>(t));
            auto xs = sample_factors(cfg.spec, rng);
            Eigen::MatrixXd P = xs.front();
            for (std::size_t l = 1; l < xs.size(); ++l) P = xs[l] * P;
            try {
                detail::SchurBlocks blocks = detail::schur_blocks<double>(P);
                if (blocks.max_eig_sq > 1e24) {
                    // rebuild the product in extended precision and redo
                    detail::DenseMat<long double> Pl = xs.front().cast<long double>();
                    for (std::size_t l = 1; l < xs.size(); ++l)
                        Pl = (xs[l].cast<long double>() * Pl).eval();
                    blocks = detail::schur_blocks<long double>(Pl);
                }
                out.counts[blocks.count_real(tol)] += 1;
                out.lo[blocks.count_real(tol / 100.0)] += 1;
                out.hi[blocks.count_real(tol * 100.0)] += 1;
            } catch (const numerical_error&) {
                out.discarded += 1;
            }
        }
    };

    if (workers == 1) {
        run_range(0, cfg.trials, locals[0]);
    } else {
        std::vector<std::thread> pool;
        long chunk = (cfg.trials + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            long b = w * chunk;
            long e = std::min(cfg.trials, b + chunk);
            if (b >= e) break;
            pool.emplace_back(run_range, b, e, std::ref(locals[static_cast<std::size_t>(w)]));
        }
        for (auto& th : pool) th.join();
    }

    MCResult res;
    res.requested = cfg.trials;
    res.seed = cfg.seed;
    for (auto& loc : locals) {
        for (auto& [k, c] : loc.counts) res.counts[k] += c;
        for (auto& [k, c] : loc.lo) res.counts_tol_low[k] += c;
        for (auto& [k, c] : loc.hi) res.counts_tol_high[k] += c;
        res.discarded += loc.discarded;
    }
    long valid = 0;
    for (auto& [k, c] : res.counts) {
        if ((k - cfg.spec.N) % 2 != 0)
            throw numerical_error("estimate_p: parity violation in eigenvalue count");
        valid += c;
    }
    res.trials = valid;
    if (res.discarded * 1000 > cfg.trials)
        throw numerical_error("estimate_p: discard rate exceeded 0.1%");
    for (auto& [k, c] : res.counts) {
        double ph = static_cast<double>(c) / static_cast<double>(valid);
        res.p_hat[k] = ph;
        res.std_err[k] = std::sqrt(ph * (1.0 - ph) / static_cast<double>(valid));
    }
    return res;
}

} // namespace ginprod
