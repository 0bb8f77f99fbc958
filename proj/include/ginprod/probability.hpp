#pragma once

#include <future>
#include <optional>
#include <string>
#include <vector>

#include "ginprod/linalg.hpp"
#include "ginprod/meijer.hpp"

namespace ginprod {

/// The ensemble: N x N matrices, product of m independent standard
/// Gaussian factors.
struct EnsembleSpec {
    int N = 1;
    int m = 1;
    void validate() const {
        if (N < 1 || m < 1) throw domain_error("EnsembleSpec: N >= 1 and m >= 1 required");
    }
};

enum class Method {
    determinant,
    closed_form_m1,
    closed_form_ratio,
    asymptotic,
    monte_carlo,
    product_formula,
};

inline const char* method_name(Method m) {
    switch (m) {
        case Method::determinant: return "determinant";
        case Method::closed_form_m1: return "closed_form_m1";
        case Method::closed_form_ratio: return "closed_form_ratio";
        case Method::asymptotic: return "asymptotic";
        case Method::monte_carlo: return "monte_carlo";
        case Method::product_formula: return "product_formula";
    }
    return "?";
}

/// A recognized constant p * pi^t / 2^q in reduced form (p odd unless q = 0).
struct PiRationalForm {
    long long p = 0;
    int pi_power = 0;
    int two_power = 0;

    std::string str() const {
        std::string s = std::to_string(p);
        if (pi_power == 1) s += "*pi";
        if (pi_power > 1) s += "*pi^" + std::to_string(pi_power);
        if (two_power > 0) s += "/2^" + std::to_string(two_power);
        return s;
    }
    friend bool operator==(const PiRationalForm& a, const PiRationalForm& b) {
        return a.p == b.p && a.pi_power == b.pi_power && a.two_power == b.two_power;
    }
};

struct ProbabilityResult {
    Real log_value;
    Real value;
    Method method = Method::determinant;
    Real error_estimate;
    std::optional<PiRationalForm> recognized_form;
};

/// Search for the smallest (t, q), t <= t_max, q <= q_max, such that
/// x 2^q / pi^t is within 10^{-(P-15)} of a positive integer, where P is
/// the precision the input carries.  Absence is a normal outcome.
inline std::optional<PiRationalForm> recognize_pi_rational(const Real& x, int t_max = 4,
                                                           int q_max = 64) {
    int P = x.precision_digits();
    if (P < 40)
        throw domain_error("recognize_pi_rational: needs x carrying >= 40 digits");
    if (x.sign() <= 0) throw domain_error("recognize_pi_rational: x > 0 required");
    Real tol = pow10(-(P - 15), P);
    Real pi = Real::pi(P + 5);
    for (int t = 0; t <= t_max; ++t) {
        Real base = x.to_digits(P + 5) / pow_long(pi, t);
        for (int q = 0; q <= q_max; ++q) {
            Real r = ldexp2(base, q);
            Real n = round_nearest(r);
            if (n.sign() < 1) continue;
            if (abs(r - n) <= tol && n.fits_long()) {
                long long p = n.to_long();
                int qq = q;
                while (p % 2 == 0 && qq > 0 && p != 0) { p /= 2; --qq; }
                return PiRationalForm{p, t, qq};
            }
        }
    }
    return std::nullopt;
}

/// Determinant input for p_{N,N}: the matrix A of Meijer-G entries (with a
/// trailing Gamma-moment column when N is odd) plus per-entry error bounds.
struct BuiltMatrix {
    SquareMatrix values;
    SquareMatrix errors;
    int alpha_columns = 0; ///< leading columns holding g(m,j,k); the rest are nu
};

/// Assemble the determinant matrix for p_{N,N} at the given entry accuracy.
/// N even: (N/2)x(N/2), entry (j,k) = g(m,j,k).  N odd: ((N+1)/2)^2 with
/// (N-1)/2 alpha columns and one trailing nu column.  Entries are
/// independent contour integrals and are evaluated concurrently.
inline BuiltMatrix build_matrix(const EnsembleSpec& spec, int entry_digits) {
    spec.validate();
    if (spec.N < 2) throw domain_error("build_matrix: N >= 2 required");
    bool even = spec.N % 2 == 0;
    int n = even ? spec.N / 2 : (spec.N + 1) / 2;
    int acols = even ? n : n - 1;

    BuiltMatrix out;
    out.values = SquareMatrix(n, entry_digits + 4);
    out.errors = SquareMatrix(n, entry_digits + 4);
    out.alpha_columns = acols;

    detail::stirling_coefficients(8, entry_digits + 24); // warm shared tables before forking

    struct Cell { int j, k; };
    std::vector<Cell> cells;
    for (int j = 1; j <= n; ++j)
        for (int k = 1; k <= acols; ++k) cells.push_back({j, k});

    auto eval = [&](Cell c) { return alpha_entry(spec.m, c.j, c.k, entry_digits); };

    std::vector<std::future<AlphaEntry>> futs;
    futs.reserve(cells.size());
    for (auto c : cells)
        futs.push_back(std::async(cells.size() > 1 ? std::launch::async : std::launch::deferred,
                                  eval, c));
    for (std::size_t i = 0; i < cells.size(); ++i) {
        AlphaEntry e = futs[i].get();
        out.values.at(cells[i].j - 1, cells[i].k - 1) = e.value;
        out.errors.at(cells[i].j - 1, cells[i].k - 1) = e.error_estimate;
    }
    if (!even) {
        for (int j = 1; j <= n; ++j) {
            Real nu = nu_entry(spec.m, j, entry_digits + 4);
            out.values.at(j - 1, n - 1) = nu;
            out.errors.at(j - 1, n - 1) = abs(nu) * pow10(-(entry_digits + 2), entry_digits);
        }
    }
    return out;
}

namespace detail {

inline Real log_gamma_half_product(int N, int wd) {
    Real s(wd);
    Real half = Real::from_string("0.5", wd);
    for (int j = 1; j <= N; ++j)
        s += log_gamma_real(Real::from_long(j, wd) * half, wd);
    return s;
}

} // namespace detail

/// Exact probability that every eigenvalue of the m-fold Gaussian product
/// is real:
///   p = (prod_{j=1}^N Gamma(j/2)^{-1})^m  det A,
/// combined in the log domain; det by pivoted LU; the entry error bounds
/// are pushed through the inverse for an a-posteriori estimate, and the
/// whole evaluation escalates entry precision until the estimate meets
/// 10^{-P_target}.  A non-positive determinant means an entry evaluation
/// broke down and is an error, never a value.
inline ProbabilityResult p_all_real_exact(const EnsembleSpec& spec, int target_digits = 60) {
    spec.validate();
    int P = std::max(target_digits, kMinDigits);
    if (spec.N == 1) {
        ProbabilityResult r;
        r.value = Real::from_long(1, P);
        r.log_value = Real(P);
        r.method = Method::determinant;
        r.error_estimate = Real(P);
        return r;
    }

    Real tol_target = pow10(-P, P);
    for (int attempt = 0; attempt < 3; ++attempt) {
        int entry_digits = P + 10 + 15 * attempt;
        int wd = entry_digits + 10;
        BuiltMatrix bm = build_matrix(spec, entry_digits);
        int n = bm.values.size();

        SquareMatrix work(n, wd);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) work.at(i, j) = bm.values.at(i, j).to_digits(wd);

        LogDet det = lu_logdet(work);
        if (det.sign <= 0)
            throw numerical_error("p_all_real_exact: determinant not positive; entry evaluation failed");

        // sensitivity: |d log det| <= sum_{jk} |A^{-1}_{kj}| err_jk
        Real dlog(wd);
        SquareMatrix inv = inverse(work);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                dlog += abs(inv.at(j, i)) * bm.errors.at(i, j).to_digits(wd);

        Real log_p = det.log_abs -
                     Real::from_long(spec.m, wd) * detail::log_gamma_half_product(spec.N, wd);
        Real value = exp(log_p);
        if (value > Real::from_long(1, wd) + pow10(-(P / 2), wd))
            throw numerical_error("p_all_real_exact: probability exceeded 1");

        if (dlog <= tol_target) {
            ProbabilityResult r;
            r.log_value = log_p.to_digits(P);
            r.value = value.to_digits(P);
            r.method = Method::determinant;
            r.error_estimate = dlog.to_digits(P);
            if (P >= 40) r.recognized_form = recognize_pi_rational(r.value);
            return r;
        }
    }
    throw convergence_error("p_all_real_exact: error estimate above 10^-P after precision escalation");
}

/// Single Gaussian matrix (m = 1) closed form p = 2^{-N(N-1)/4}.
inline ProbabilityResult p_all_real_single(int N, int digits = 60) {
    if (N < 1) throw domain_error("p_all_real_single: N >= 1");
    int P = std::max(digits, kMinDigits);
    int wd = P + 5;
    Real e = Real::from_long(static_cast<long>(N) * (N - 1), wd) / 4L;
    ProbabilityResult r;
    r.log_value = (-e * Real::log2_const(wd)).to_digits(P);
    r.value = pow(Real::from_long(2, wd), -e).to_digits(P);
    r.method = Method::closed_form_m1;
    r.error_estimate = pow10(-(P - 1), P);
    return r;
}

/// Closed form for the inverse-times-direct Gaussian pair,
/// p = Gamma((N+1)/2)^N / G(N+1) with G the Barnes function.
inline ProbabilityResult p_all_real_ratio(int N, int digits = 60) {
    if (N < 1) throw domain_error("p_all_real_ratio: N >= 1");
    int P = std::max(digits, kMinDigits);
    int wd = P + 10;
    Real half = Real::from_string("0.5", wd);
    Real log_p = Real::from_long(N, wd) * log_gamma_real((Real::from_long(N, wd) + 1L) * half, wd) -
                 log_barnes_g(N, wd);
    ProbabilityResult r;
    r.log_value = log_p.to_digits(P);
    r.value = exp(log_p).to_digits(P);
    r.method = Method::closed_form_ratio;
    r.error_estimate = pow10(-(P - 2), P);
    return r;
}

/// Leading large-N form of p_all_real_ratio:
///   N^{1/12} (e/4)^{N^2/4} exp(-zeta'(-1) - 1/12).
inline ProbabilityResult p_ratio_leading(int N, int digits = 60) {
    if (N < 1) throw domain_error("p_ratio_leading: N >= 1");
    int P = std::max(digits, kMinDigits);
    int wd = P + 10;
    Real n(wd);
    n = Real::from_long(N, wd);
    Real log_p = log(n) / 12L +
                 (n * n / 4L) * (Real::from_long(1, wd) - ldexp2(Real::log2_const(wd), 1)) -
                 zeta_prime_minus1(wd) - Real::from_long(1, wd) / 12L;
    ProbabilityResult r;
    r.log_value = log_p.to_digits(P);
    r.value = exp(log_p).to_digits(P);
    r.method = Method::asymptotic;
    r.error_estimate = abs(r.log_value) / Real::from_long(N, P); // O(1/N) term
    return r;
}

struct PfaffianCheck {
    Real pfaffian_value;
    Real reduced_determinant;
};

/// Cross-check of the Pfaffian-to-determinant reduction at oracle scale:
/// the full N x N antisymmetric moment matrix [alpha_{a,b}] is filled from
/// the independent quadrature oracle (checkerboard zeros enforced), its
/// Pfaffian expanded recursively, and compared against the determinant of
/// the half-size even-odd block.
inline PfaffianCheck pfaffian_check(const EnsembleSpec& spec, int digits = 12) {
    spec.validate();
    if (spec.N % 2 != 0 || spec.N > 8)
        throw domain_error("pfaffian_check: N must be even and <= 8");
    if (spec.m != 1 && spec.m != 2)
        throw domain_error("pfaffian_check: oracle-supported weights are m in {1, 2}");

    int n = spec.N;
    int h = n / 2;
    int wd = digits + 8;
    SquareMatrix reduced(h, wd);
    for (int a = 1; a <= h; ++a)
        for (int b = 1; b <= h; ++b)
            reduced.at(a - 1, b - 1) = alpha_oracle_quadrature(spec.m, a, b, digits).to_digits(wd);

    SquareMatrix full(n, wd);
    for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
            Real v(wd);
            if (a % 2 == 1 && b % 2 == 0)
                v = reduced.at((a + 1) / 2 - 1, b / 2 - 1);
            else if (a % 2 == 0 && b % 2 == 1)
                v = -reduced.at((b + 1) / 2 - 1, a / 2 - 1);
            // same parity: checkerboard zero stays
            full.at(a - 1, b - 1) = v;
            full.at(b - 1, a - 1) = -v;
        }
    }

    PfaffianCheck out;
    out.pfaffian_value = pfaffian(full).to_digits(digits + 4);
    LogDet ld = lu_logdet(reduced);
    Real d = exp(ld.log_abs);
    if (ld.sign < 0) d = -d;
    if (ld.sign == 0) d = Real(wd);
    out.reduced_determinant = d.to_digits(digits + 4);
    return out;
}

} // namespace ginprod
