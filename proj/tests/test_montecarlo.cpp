#include "test_util.hpp"

#include "ginprod/montecarlo.hpp"

using namespace ginprod;

TEST_CASE("structural classification of simple matrices", "[montecarlo]") {
    Eigen::MatrixXd I3 = Eigen::MatrixXd::Identity(3, 3);
    CHECK(count_real_eigenvalues(I3) == 3);

    Eigen::MatrixXd rot(2, 2); // rotation by pi/2: eigenvalues +-i
    rot << 0, -1, 1, 0;
    CHECK(count_real_eigenvalues(rot) == 0);

    Eigen::MatrixXd d(2, 2);
    d << 1, 0, 0, 2;
    CHECK(count_real_eigenvalues(d) == 2);
}

TEST_CASE("count parity always matches N", "[montecarlo]") {
    for (int rep = 0; rep < 300; ++rep) {
        SplitStream rng(99, static_cast<std::uint64_t>(rep));
        int N = 2 + static_cast<int>(rng.next_u64() % 5);
        int m = 1 + static_cast<int>(rng.next_u64() % 3);
        Eigen::MatrixXd P = sample_product({N, m}, rng);
        int k = count_real_eigenvalues(P);
        INFO("N=" << N << " m=" << m << " k=" << k);
        CHECK((k - N) % 2 == 0);
        CHECK(k >= 0);
        CHECK(k <= N);
    }
}

TEST_CASE("classification is scale invariant", "[montecarlo]") {
    for (int rep = 0; rep < 100; ++rep) {
        SplitStream rng(5, static_cast<std::uint64_t>(rep));
        int N = 2 + static_cast<int>(rng.next_u64() % 4);
        Eigen::MatrixXd M = sample_product({N, 1}, rng);
        int k = count_real_eigenvalues(M);
        for (double c : {0.5, 2.0, 100.0}) {
            CHECK(count_real_eigenvalues(c * M) == k);
        }
    }
}

TEST_CASE("sampled factors have standard normal entries", "[montecarlo]") {
    const int N = 3;
    const long draws = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (long t = 0; t < draws; ++t) {
        SplitStream rng(2024, static_cast<std::uint64_t>(t));
        Eigen::MatrixXd X = sample_product({N, 1}, rng);
        sum += X.sum();
        sumsq += X.squaredNorm();
    }
    double n_entries = static_cast<double>(draws) * N * N;
    double mean = sum / n_entries;
    double var = sumsq / n_entries - mean * mean;
    CHECK(std::fabs(mean) <= 4.0 / std::sqrt(n_entries));
    CHECK(std::fabs(var - 1.0) <= 4.0 * std::sqrt(2.0 / n_entries));
}

TEST_CASE("product second moment E||P||_F^2 = N^3 for m = 2", "[montecarlo]") {
    const int N = 2;
    const long draws = 40000;
    double sum = 0.0, sumsq = 0.0;
    for (long t = 0; t < draws; ++t) {
        SplitStream rng(77, static_cast<std::uint64_t>(t));
        Eigen::MatrixXd P = sample_product({N, 2}, rng);
        double v = P.squaredNorm();
        sum += v;
        sumsq += v * v;
    }
    double mean = sum / draws;
    double se = std::sqrt((sumsq / draws - mean * mean) / draws);
    INFO("mean " << mean << " se " << se);
    CHECK(std::fabs(mean - 8.0) <= 5.0 * se);
}

TEST_CASE("histogram is reproducible and worker-count invariant", "[montecarlo]") {
    MCConfig cfg;
    cfg.spec = {3, 2};
    cfg.trials = 20000;
    cfg.seed = 424242;
    cfg.workers = 1;
    auto a = estimate_p(cfg);
    cfg.workers = 5;
    auto b = estimate_p(cfg);
    CHECK(a.counts == b.counts);
    CHECK(a.discarded == b.discarded);

    cfg.seed = 424243;
    auto c = estimate_p(cfg);
    CHECK(a.counts != c.counts);

    long total = 0;
    for (auto& [k, cnt] : a.counts) total += cnt;
    CHECK(total + a.discarded == a.requested);
    CHECK(a.trials == total);

    double psum = 0;
    for (auto& [k, p] : a.p_hat) psum += p;
    CHECK(std::fabs(psum - 1.0) < 1e-12);
}

TEST_CASE("estimator matches the exact path at 4 sigma", "[montecarlo]") {
    struct Row {
        int N, m;
        double expect;
    };
    const double pi = 3.14159265358979324;
    Row rows[] = {
        {2, 2, pi / 4},
        {2, 1, 1.0 / std::sqrt(2.0)},
        {4, 2, 201.0 * pi * pi / 8192.0},
    };
    for (auto& row : rows) {
        MCConfig cfg;
        cfg.spec = {row.N, row.m};
        cfg.trials = 100000;
        cfg.seed = 31337;
        cfg.workers = 4;
        auto r = estimate_p(cfg);
        double dev = std::fabs(r.p_hat[row.N] - row.expect);
        INFO("N=" << row.N << " m=" << row.m << " p_hat=" << r.p_hat[row.N]
                  << " expect=" << row.expect << " se=" << r.std_err[row.N]);
        CHECK(dev <= 4.0 * r.std_err[row.N]);
    }
}

TEST_CASE("classification tolerance sensitivity stays within noise", "[montecarlo]") {
    MCConfig cfg;
    cfg.spec = {4, 2};
    cfg.trials = 50000;
    cfg.seed = 8;
    cfg.workers = 4;
    auto r = estimate_p(cfg);
    for (auto& [k, c] : r.counts) {
        double se = std::max(1.0, std::sqrt(static_cast<double>(c)));
        double lo = static_cast<double>(r.counts_tol_low.count(k) ? r.counts_tol_low.at(k) : 0);
        double hi = static_cast<double>(r.counts_tol_high.count(k) ? r.counts_tol_high.at(k) : 0);
        INFO("k=" << k << " c=" << c << " lo=" << lo << " hi=" << hi);
        CHECK(std::fabs(lo - c) <= 3.0 * se);
        CHECK(std::fabs(hi - c) <= 3.0 * se);
    }
}

TEST_CASE("config validation", "[montecarlo]") {
    MCConfig bad;
    bad.spec = {2, 1};
    bad.trials = 0;
    CHECK_THROWS_AS(estimate_p(bad), domain_error);
    Eigen::MatrixXd nanm = Eigen::MatrixXd::Constant(2, 2, std::nan(""));
    CHECK_THROWS_AS(count_real_eigenvalues(nanm), domain_error);
}
