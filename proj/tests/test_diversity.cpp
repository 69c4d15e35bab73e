#include "fixtures.hpp"
#include "oracles.hpp"

#include "idr/diversity.hpp"
#include "idr/error.hpp"
#include "idr/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace idr;
using idr::test::make_pub;
using idr::test::uniform_disparity;

namespace {

ScCountVector counts(std::initializer_list<std::uint64_t> xs)
{
    std::vector<ScCountVector::Entry> e;
    unsigned k = 0;
    for (auto x : xs) {
        e.push_back({ScId(k++), x});
    }
    return ScCountVector(std::move(e));
}

DisparityMatrix two_by_two(double d)
{
    return uniform_disparity(2, d);
}

} // namespace

TEST_CASE("variety")
{
    CHECK(variety(counts({2, 1, 1})) == 3);
    CHECK(variety(counts({10})) == 1);
    CHECK_THROWS_AS(variety(ScCountVector{}), InputError);

    // a paper citing 31 distinct categories
    Publication p = make_pub("p", {});
    for (unsigned sc = 0; sc < 31; ++sc) {
        for (unsigned r = 0; r <= sc % 3; ++r) {
            p.references.push_back({{ScId(sc)}});
        }
    }
    CHECK(variety(reference_sc_counts(p)) == 31);
    CHECK(score_publication(p, uniform_disparity(40, 0.5)).variety == 31);
}

TEST_CASE("balance")
{
    CHECK(balance(counts({5, 5, 5})) == 1.0);
    CHECK(balance(counts({7})) == 1.0);
    CHECK(balance(counts({1, 1, 8})) == doctest::Approx(8.0 / 15.0).epsilon(1e-15));
    CHECK(std::abs(balance(counts({1, 1, 8})) - (1.0 - test::gini_mean_abs_difference({1, 1, 8}))) <= 1e-15);
    CHECK(balance(counts({2, 1})) == doctest::Approx(5.0 / 6.0).epsilon(1e-15));
    CHECK_THROWS_AS(balance(ScCountVector{}), InputError);
}

TEST_CASE("average_disparity")
{
    SquareMatrix<double> m(3, 0.0);
    m(0, 1) = m(1, 0) = 0.2;
    m(0, 2) = m(2, 0) = 0.6;
    m(1, 2) = m(2, 1) = 1.0;
    DisparityMatrix d(m);
    const std::vector<ScId> one{ScId(0u)};
    const std::vector<ScId> two{ScId(0u), ScId(1u)};
    const std::vector<ScId> three{ScId(0u), ScId(1u), ScId(2u)};
    CHECK(average_disparity(one, d) == 0.0);
    CHECK(average_disparity(two, two_by_two(0.4)) == doctest::Approx(0.4));
    CHECK(std::abs(average_disparity(three, d) - 0.6) <= 1e-15);
    const std::vector<ScId> bad{ScId(0u), ScId(5u)};
    CHECK_THROWS_AS(average_disparity(bad, d), InputError);
}

TEST_CASE("rao_stirling and integrated_diversity")
{
    CHECK(rao_stirling(counts({4}), two_by_two(1.0)) == 0.0);
    CHECK(rao_stirling(counts({1, 1}), two_by_two(1.0)) == 0.5);
    CHECK(rao_stirling(counts({1, 1}), two_by_two(0.0)) == 0.0);
    CHECK(integrated_diversity(counts({12}), two_by_two(1.0)) == 1.0);
    CHECK(integrated_diversity(counts({1, 1}), two_by_two(1.0)) == 2.0);
    CHECK(integrated_diversity(counts({1, 1}), two_by_two(0.0)) == 1.0);
    CHECK_THROWS_AS(rao_stirling(counts({1, 1, 1}), two_by_two(1.0)), InputError);
}

TEST_CASE("score_publication examples")
{
    const auto d = two_by_two(1.0);
    SUBCASE("single category")
    {
        auto s = score_publication(make_pub("p", {{0}, {0}}), uniform_disparity(2, 0.7));
        CHECK(s.variety == 1);
        CHECK(s.balance == 1.0);
        CHECK(s.avg_disparity == 0.0);
        CHECK(s.rao_stirling == 0.0);
        CHECK(s.integrated_diversity == 1.0);
    }
    SUBCASE("{A},{B}")
    {
        auto s = score_publication(make_pub("p", {{0}, {1}}), d);
        CHECK(s.variety == 2);
        CHECK(s.balance == 1.0);
        CHECK(s.avg_disparity == 1.0);
        CHECK(s.rao_stirling == 0.5);
        CHECK(s.integrated_diversity == 2.0);
    }
    SUBCASE("{A},{A},{B}")
    {
        auto s = score_publication(make_pub("p", {{0}, {0}, {1}}), d);
        CHECK(s.variety == 2);
        CHECK(std::abs(s.balance - 5.0 / 6.0) <= 1e-15);
        CHECK(s.avg_disparity == 1.0);
        CHECK(std::abs(s.rao_stirling - 4.0 / 9.0) <= 1e-15);
        CHECK(std::abs(s.integrated_diversity - 1.8) <= 1e-14);
        CHECK(std::abs(s.integrated_diversity - 1.0 / (1.0 - s.rao_stirling)) <= 1e-14);
        REQUIRE(s.proportions.size() == 2);
        CHECK(std::abs(s.proportions[0].second - 2.0 / 3.0) <= 1e-15);
    }
}

TEST_CASE("indicator properties over random inputs")
{
    std::mt19937_64 rng(2024);
    for (int round = 0; round < 500; ++round) {
        const std::size_t dim = 2 + rng() % 30;
        SquareMatrix<double> m(dim, 0.0);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = i + 1; j < dim; ++j) {
                m(i, j) = m(j, i) = u(rng);
            }
        }
        DisparityMatrix d(m);
        std::vector<ScCountVector::Entry> e;
        std::vector<std::uint64_t> raw;
        for (std::size_t sc = 0; sc < dim; ++sc) {
            if (rng() % 2) {
                auto x = 1 + rng() % 100;
                e.push_back({ScId(sc), x});
                raw.push_back(x);
            }
        }
        if (e.empty()) {
            continue;
        }
        ScCountVector c(e);
        auto s = score_counts(c, d);
        const double v = static_cast<double>(s.variety);
        CHECK(s.balance >= 1.0 / v - 1e-15);
        CHECK(s.balance <= 1.0);
        CHECK(std::abs(s.balance - (1.0 - test::gini_mean_abs_difference(raw))) <= 1e-12);
        CHECK(s.avg_disparity >= 0.0);
        CHECK(s.avg_disparity <= 1.0);
        CHECK(s.integrated_diversity >= 1.0);
        CHECK(std::abs(s.integrated_diversity - 1.0 / (1.0 - s.rao_stirling)) <= 1e-9);

        // scaling all counts changes nothing
        std::vector<ScCountVector::Entry> scaled = e;
        for (auto& [sc, x] : scaled) {
            x *= 3;
        }
        auto s3 = score_counts(ScCountVector(scaled), d);
        CHECK(std::abs(s3.balance - s.balance) <= 1e-12);
        CHECK(std::abs(s3.rao_stirling - s.rao_stirling) <= 1e-12);

        // with maximal disparity, ID is the inverse Simpson index
        auto dmax = uniform_disparity(dim, 1.0);
        long double sum_sq = 0;
        for (auto x : raw) {
            long double p = static_cast<long double>(x) / static_cast<long double>(c.total());
            sum_sq += p * p;
        }
        CHECK(std::abs(integrated_diversity(c, dmax) - static_cast<double>(1.0L / sum_sq)) <= 1e-9);
    }
}

TEST_CASE("scores are invariant under reference order")
{
    auto d = uniform_disparity(5, 0.6);
    auto a = score_publication(make_pub("p", {{0}, {1, 2}, {2}, {4}, {0}}), d);
    auto b = score_publication(make_pub("p", {{4}, {0}, {2}, {0}, {1, 2}}), d);
    CHECK(score_json_line("p", a) == score_json_line("p", b));
}

TEST_CASE("score_corpus matches the brute-force evaluator and is thread-count independent")
{
    std::mt19937_64 rng(8);
    const std::size_t dim = 20;
    SquareMatrix<double> m(dim, 0.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) {
            m(i, j) = m(j, i) = u(rng);
        }
    }
    DisparityMatrix d(m);
    const std::vector<double> flat(m.values().begin(), m.values().end());

    std::vector<Publication> pubs;
    for (int k = 0; k < 300; ++k) {
        Publication p = make_pub("q" + std::to_string(1000 - k), {});
        for (auto r = 1 + rng() % 25; r > 0; --r) {
            Reference ref;
            ref.scs.push_back(ScId(static_cast<unsigned>(rng() % dim)));
            p.references.push_back(ref);
        }
        pubs.push_back(std::move(p));
    }

    auto one = score_corpus(pubs, d, 1);
    auto four = score_corpus(pubs, d, 4);
    REQUIRE(one.size() == pubs.size());
    CHECK(std::is_sorted(one.begin(), one.end(), [](const auto& a, const auto& b) { return a.pub_id < b.pub_id; }));
    for (std::size_t k = 0; k < one.size(); ++k) {
        CHECK(score_json_line(one[k].pub_id, one[k].score) == score_json_line(four[k].pub_id, four[k].score));
    }

    for (const auto& p : pubs) {
        std::vector<std::vector<std::size_t>> refs;
        for (const auto& r : p.references) {
            refs.push_back({r.scs[0].get()});
        }
        auto naive = oracle::naive_score(refs, flat, dim);
        auto s = score_publication(p, d);
        CHECK(naive.variety == s.variety);
        CHECK(std::abs(naive.balance - s.balance) <= 1e-9);
        CHECK(std::abs(naive.avg_disparity - s.avg_disparity) <= 1e-9);
        CHECK(std::abs(naive.rao_stirling - s.rao_stirling) <= 1e-9);
        CHECK(std::abs(naive.integrated_diversity - s.integrated_diversity) <= 1e-9);
    }

    std::vector<Publication> with_empty{make_pub("z", {})};
    CHECK_THROWS_AS(score_corpus(with_empty, d, 2), InputError);
}
