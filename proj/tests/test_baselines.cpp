#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <set>

#include "discrim/baselines.hpp"
#include "helpers.hpp"

using namespace discrim;

namespace {
bool no_duplicates(const std::vector<std::size_t>& v) {
    return std::set<std::size_t>(v.begin(), v.end()).size() == v.size();
}
} // namespace

TEST_CASE("random selection is seed-reproducible and exact-sized") {
    const BaselineResult a = select_random(10, 10, 99);
    CHECK(a.selected.size() == 10);
    CHECK(no_duplicates(a.selected));

    const BaselineResult b = select_random(50, 7, 1234);
    const BaselineResult c = select_random(50, 7, 1234);
    CHECK(b.selected == c.selected);
    CHECK(b.selected != select_random(50, 7, 1235).selected);
    CHECK_THROWS_AS(select_random(5, 6, 0), std::invalid_argument);
}

TEST_CASE("random selection includes each feature at the uniform rate") {
    const std::size_t d = 1000;
    const std::size_t budget = 100;
    const int draws = 10000;
    std::vector<int> hits(d, 0);
    for (int s = 0; s < draws; ++s) {
        for (std::size_t f : select_random(d, budget, static_cast<std::uint64_t>(s)).selected) {
            ++hits[f];
        }
    }
    for (std::size_t f = 0; f < d; ++f) {
        const double rate = static_cast<double>(hits[f]) / draws;
        CHECK(rate == doctest::Approx(0.1).epsilon(0.2));  // +-0.02 absolute
    }
}

TEST_CASE("variance baseline keeps the widest columns") {
    const DataMatrix m = DataMatrix::from_rows({{5, 0, 0}, {5, 1, 2}, {5, 3, 6}, {5, 7, 14}});
    CHECK(select_by_variance(m, 1).selected == std::vector<std::size_t>{2});  // var(2f) = 4 var(f)
    CHECK(select_by_variance(m, 2).selected == std::vector<std::size_t>{2, 1});
    CHECK(select_by_variance(m, 3).selected == std::vector<std::size_t>{2, 1, 0});
    CHECK_THROWS_AS(select_by_variance(m, 4), std::invalid_argument);
}

TEST_CASE("correlation baseline equals the prefilter survivors") {
    const DataMatrix m = DataMatrix::from_rows({{1, 2, 1}, {2, 4, 0}, {3, 6, 2}, {4, 8, 1}});
    CHECK(select_by_correlation(m, 2).selected == std::vector<std::size_t>{1, 2});
    CHECK(select_by_correlation(m, 3).selected == std::vector<std::size_t>{0, 1, 2});  // no-op

    std::mt19937_64 gen(79);
    const DataMatrix big = testutil::real_matrix(gen, 15, 9);
    const auto base = select_by_correlation(big, 4).selected;
    const auto pre = correlation_prefilter(big, 5).kept;
    CHECK(base == pre);
}

TEST_CASE("the duplicate pair is broken before anything else") {
    const DataMatrix m = DataMatrix::from_rows({{1, 1, 9}, {4, 4, 2}, {2, 2, 7}});
    const BaselineResult r = select_by_correlation(m, 2);
    CHECK(r.selected == std::vector<std::size_t>{0, 2});  // equal variances drop index 1
}

TEST_CASE("rrfs with a permissive threshold is the variance prefix") {
    std::mt19937_64 gen(83);
    const DataMatrix m = testutil::real_matrix(gen, 20, 6);
    const BaselineResult r = select_rrfs(m, 3, 1.0);
    const BaselineResult v = select_by_variance(m, 3);
    CHECK(r.selected == v.selected);
    CHECK(!r.rrfs_backfilled);
}

TEST_CASE("rrfs with a zero threshold backfills after the top feature") {
    std::mt19937_64 gen(89);
    const DataMatrix m = testutil::real_matrix(gen, 20, 5);
    const BaselineResult r = select_rrfs(m, 3, 0.0);
    const BaselineResult v = select_by_variance(m, 3);
    CHECK(r.selected == v.selected);  // backfill follows variance order
    CHECK(r.rrfs_backfilled);
    REQUIRE(r.rrfs_threshold.has_value());
    CHECK(*r.rrfs_threshold == 0.0);
}

TEST_CASE("rrfs skips the feature correlated with the last kept one") {
    // g = 2f has top variance, f is blocked by |rho| = 1, h passes (|rho| ~ 0.447)
    const DataMatrix m = DataMatrix::from_rows(
        {{1, 2, 0.0}, {2, 4, 1.0}, {3, 6, 0.0}, {4, 8, 1.0}});
    const BaselineResult r = select_rrfs(m, 2, 0.5);
    CHECK(r.selected == std::vector<std::size_t>{1, 2});
    CHECK(!r.rrfs_backfilled);
}

TEST_CASE("baselines return exactly the budget, duplicate-free") {
    std::mt19937_64 gen(97);
    const DataMatrix m = testutil::real_matrix(gen, 25, 10);
    for (std::size_t budget : {1UL, 4UL, 10UL}) {
        for (const BaselineResult& r :
             {select_random(m.cols(), budget, 5), select_by_variance(m, budget),
              select_by_correlation(m, budget), select_rrfs(m, budget, 0.8)}) {
            CHECK(r.selected.size() == budget);
            CHECK(no_duplicates(r.selected));
            for (std::size_t f : r.selected) {
                CHECK(f < m.cols());
            }
        }
    }
}

TEST_CASE("variance ranking and rrfs ignore column translations") {
    std::mt19937_64 gen(101);
    const std::size_t n = 30;
    const std::size_t d = 6;
    const DataMatrix m = testutil::integer_matrix(gen, n, d, 25);

    std::vector<std::vector<double>> cols(d);
    for (std::size_t j = 0; j < d; ++j) {
        const auto col = m.column(j);
        cols[j].assign(col.begin(), col.end());
        const double offset = static_cast<double>(
            static_cast<long long>(discrim::rng::below(gen, 100)) - 50);
        for (auto& v : cols[j]) {
            v += offset;
        }
    }
    const DataMatrix shifted(std::move(cols));

    CHECK(select_by_variance(m, 3).selected == select_by_variance(shifted, 3).selected);
    CHECK(select_rrfs(m, 3, 0.7).selected == select_rrfs(shifted, 3, 0.7).selected);
}
