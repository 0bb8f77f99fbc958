#pragma once

#include <map>
#include <vector>

#include "ginprod/errors.hpp"
#include "ginprod/real.hpp"

namespace ginprod {

struct QuadratureResult {
    Real value;
    Real error_estimate;
    long evaluations = 0;
};

namespace detail {

/// One tanh-sinh abscissa: returns the offset from the nearer endpoint and
/// the weight, for node parameter t and half-length hl = (b-a)/2.
/// x = midpoint + hl tanh(u), u = (pi/2) sinh t; the offset form
/// hl (1 - tanh u) = 2 hl / (e^{2u} + 1) stays accurate arbitrarily close
/// to the endpoint.
struct TanhSinhNode {
    Real offset;  // distance from the endpoint on the |t| side
    Real weight;  // hl * (pi/2) cosh t / cosh^2(u)
};

inline TanhSinhNode tanh_sinh_node(const Real& t, const Real& hl, int wd) {
    Real half_pi = ldexp2(Real::pi(wd), -1);
    Real u = half_pi * sinh(t);
    Real e2u = exp(ldexp2(u, 1));
    Real offset = ldexp2(hl, 1) / (e2u + 1L);
    Real ch = cosh(u);
    Real w = hl * half_pi * cosh(t) / (ch * ch);
    return {offset, w};
}

} // namespace detail

/// Tanh-sinh (double exponential) quadrature on a finite interval (a, b).
/// Endpoints are never evaluated, so integrable endpoint singularities are
/// fine.  The step is halved until two successive levels agree to
/// 10^-target relative; exceeding max_level raises convergence_error.
template <class F>
QuadratureResult tanh_sinh(F&& f, const Real& a, const Real& b, int target_digits,
                           int max_level = 12) {
    int wd = target_digits + 10;
    Real hl = ldexp2((b - a).to_digits(wd), -1);
    Real mid_tol = pow10(-(target_digits + 8), wd);

    double tmax_d = std::asinh((2.0 / 3.14159265358979) * ((target_digits + 8) * 2.302585 + 3.0));
    Real tol = pow10(-target_digits, wd);

    long evals = 0;
    auto node_term = [&](const Real& t) -> Real {
        auto nd = detail::tanh_sinh_node(t, hl, wd);
        if (nd.offset.is_zero() || nd.weight.is_zero()) return Real(wd);
        // skip a side once the offset rounds onto the endpoint itself;
        // for integrable singularities those contributions are below the
        // working precision anyway
        Real left = a + nd.offset;
        Real right = b - nd.offset;
        Real s(wd);
        if (left != a) {
            ++evals;
            s += f(left) * nd.weight;
        }
        if (right != b) {
            ++evals;
            s += f(right) * nd.weight;
        }
        return s;
    };

    Real h = Real::from_long(1, wd);
    // level 0
    Real sum(wd);
    {
        auto nd0 = detail::tanh_sinh_node(Real(wd), hl, wd);
        ++evals;
        sum = f(a + hl) * nd0.weight; // t = 0 gives the midpoint
        long kmax = static_cast<long>(tmax_d / 1.0) + 1;
        for (long k = 1; k <= kmax; ++k) sum += node_term(h * k);
    }
    Real prev = sum * h;

    for (int level = 1; level <= max_level; ++level) {
        h = ldexp2(h, -1);
        long kmax = static_cast<long>(tmax_d / h.to_double()) + 1;
        Real mids(wd);
        for (long k = 1; k <= kmax; k += 2) mids += node_term(h * k);
        Real cur = ldexp2(prev, -1) + mids * h;
        Real diff = abs(cur - prev);
        Real scale = max(abs(cur), mid_tol);
        if (diff <= tol * scale)
            return {cur.to_digits(target_digits), diff.to_digits(target_digits), evals};
        prev = cur;
    }
    throw convergence_error("tanh_sinh: level cap reached before meeting tolerance");
}

/// Exp-sinh quadrature on (a, infinity) for integrands decaying at least
/// exponentially.  Nodes are added outward in each direction until the
/// terms fall below the running scale; levels halve until agreement.
template <class F>
QuadratureResult exp_sinh(F&& f, const Real& a, int target_digits, int max_level = 12) {
    int wd = target_digits + 10;
    Real tol = pow10(-target_digits, wd);
    Real cutoff = pow10(-(target_digits + 8), wd);
    long evals = 0;

    Real half_pi = ldexp2(Real::pi(wd), -1);
    auto node_term = [&](const Real& t) -> Real {
        Real u = half_pi * sinh(t);
        Real x = exp(u);
        Real w = half_pi * cosh(t) * x;
        if (x.is_zero() || !w.is_finite()) return Real(wd);
        Real at = a + x;
        if (at == a && !a.is_zero()) return Real(wd); // node rounded onto the endpoint
        ++evals;
        return f(at) * w;
    };

    const double tcap = 6.5; // exp((pi/2) sinh 6.5) spans every representable scale

    auto sweep = [&](const Real& h, bool odd_only) -> Real {
        Real s(wd);
        Real peak(wd);
        long start = odd_only ? 1 : 0;
        long stride = odd_only ? 2 : 1;
        for (int dir = 0; dir < 2; ++dir) {
            int quiet = 0;
            for (long k = start; ; k += stride) {
                if (dir == 1 && k == 0) continue;
                Real t = h * (dir == 0 ? k : -k);
                if (abs(t) > Real::from_double(tcap, wd)) break;
                Real term = node_term(t);
                s += term;
                Real m = abs(term);
                if (m > peak) peak = m;
                if (!peak.is_zero() && m < cutoff * peak) {
                    if (++quiet >= 4) break;
                } else {
                    quiet = 0;
                }
                if (k > 100000) throw convergence_error("exp_sinh: node budget exhausted");
            }
        }
        return s;
    };

    Real h = Real::from_long(1, wd);
    Real prev = sweep(h, false) * h;
    for (int level = 1; level <= max_level; ++level) {
        h = ldexp2(h, -1);
        Real mids = sweep(h, true);
        Real cur = ldexp2(prev, -1) + mids * h;
        Real diff = abs(cur - prev);
        Real scale = max(abs(cur), cutoff);
        if (diff <= tol * scale)
            return {cur.to_digits(target_digits), diff.to_digits(target_digits), evals};
        prev = cur;
    }
    throw convergence_error("exp_sinh: level cap reached before meeting tolerance");
}

/// Gauss-Legendre rule on (-1, 1): nodes and weights at the requested
/// precision, cached per thread.
struct GaussLegendreRule {
    std::vector<Real> nodes;
    std::vector<Real> weights;
};

inline const GaussLegendreRule& gauss_legendre_rule(int n, int digits) {
    thread_local std::map<std::pair<int, int>, GaussLegendreRule> cache;
    auto key = std::make_pair(n, digits);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    int wd = digits + 10;
    GaussLegendreRule rule;
    rule.nodes.reserve(n);
    rule.weights.reserve(n);
    Real pi = Real::pi(wd);
    Real tol = pow10(-(digits + 4), wd);
    for (int i = 0; i < n; ++i) {
        // Chebyshev initial guess, then Newton on P_n
        Real x = cos(pi * Real::from_double(i + 0.75, wd) / Real::from_double(n + 0.5, wd));
        Real dp(wd);
        for (int iter = 0; iter < 200; ++iter) {
            Real p0 = Real::from_long(1, wd);
            Real p1 = x;
            for (int k = 2; k <= n; ++k) {
                Real p2 = ((2L * k - 1L) * x * p1 - (k - 1L) * p0) / static_cast<long>(k);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<long>(n) * (x * p1 - p0) / (x * x - 1L);
            Real dx = p1 / dp;
            x -= dx;
            if (abs(dx) < tol) break;
        }
        rule.nodes.push_back(x.to_digits(digits + 5));
        Real w = 2L / ((1L - x * x) * dp * dp);
        rule.weights.push_back(w.to_digits(digits + 5));
    }
    auto [pos, ok] = cache.emplace(key, std::move(rule));
    return pos->second;
}

/// Composite fixed-order Gauss-Legendre over (a, b).
template <class F>
Real gauss_legendre(F&& f, const Real& a, const Real& b, int n, int digits) {
    const auto& rule = gauss_legendre_rule(n, digits);
    Real mid = ldexp2(a + b, -1);
    Real hl = ldexp2(b - a, -1);
    Real s(digits + 10);
    for (int i = 0; i < n; ++i)
        s += rule.weights[i] * f(mid + hl * rule.nodes[i]);
    return s * hl;
}

} // namespace ginprod
