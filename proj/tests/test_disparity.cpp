#include "fixtures.hpp"

#include "idr/disparity.hpp"
#include "idr/error.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

using namespace idr;

namespace {

CrossCitationMatrix counts_from(std::initializer_list<std::initializer_list<std::uint64_t>> rows)
{
    CrossCitationMatrix m(rows.size());
    std::size_t i = 0;
    for (auto row : rows) {
        std::size_t j = 0;
        for (auto v : row) {
            m(i, j++) = v;
        }
        ++i;
    }
    return m;
}

DisparityMatrix random_disparity(std::size_t dim, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SquareMatrix<double> m(dim, 0.0);
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) {
            m(i, j) = m(j, i) = u(rng);
        }
    }
    return DisparityMatrix(std::move(m));
}

} // namespace

TEST_CASE("build_cross_citation_matrix")
{
    SUBCASE("one record A -> B")
    {
        std::vector<CitationRecord> recs{{{ScId(0u)}, {ScId(1u)}}};
        auto m = build_cross_citation_matrix(recs, 3);
        CHECK(m == counts_from({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}));
    }
    SUBCASE("full counting on the citing side")
    {
        std::vector<CitationRecord> recs{{{ScId(0u), ScId(1u)}, {ScId(2u)}}};
        auto m = build_cross_citation_matrix(recs, 3);
        CHECK(m == counts_from({{0, 0, 1}, {0, 0, 1}, {0, 0, 0}}));
    }
    SUBCASE("out-of-range category names the record")
    {
        std::vector<CitationRecord> recs{{{ScId(0u)}, {ScId(1u)}}, {{ScId(0u)}, {ScId(7u)}}};
        CHECK_THROWS_WITH_AS(build_cross_citation_matrix(recs, 3), doctest::Contains("2"), InputError);
    }
    SUBCASE("1000 random records: total equals the product sum; merge equals one pass")
    {
        std::mt19937_64 rng(17);
        std::vector<CitationRecord> recs;
        std::uint64_t expected = 0;
        for (int r = 0; r < 1000; ++r) {
            CitationRecord rec;
            std::vector<unsigned> all{0, 1, 2, 3, 4, 5, 6, 7};
            std::shuffle(all.begin(), all.end(), rng);
            for (auto k = 1 + rng() % 3; k > 0; --k) {
                rec.citing.push_back(ScId(all[k]));
            }
            std::shuffle(all.begin(), all.end(), rng);
            for (auto k = 1 + rng() % 4; k > 0; --k) {
                rec.cited.push_back(ScId(all[k]));
            }
            expected += rec.citing.size() * rec.cited.size();
            recs.push_back(std::move(rec));
        }
        auto m = build_cross_citation_matrix(recs, 8);
        std::uint64_t total = 0;
        for (auto v : m.values()) {
            total += v;
        }
        CHECK(total == expected);

        CrossCitationAccumulator a(8), b(8);
        for (std::size_t r = 0; r < recs.size(); ++r) {
            (r < 400 ? a : b).add(recs[r], r + 1);
        }
        a.merge(b);
        CHECK(std::move(a).take() == m);
    }
}

TEST_CASE("read_citation_records")
{
    const auto scheme = test::small_scheme();
    std::istringstream in("{\"citing\":[\"A\",\"A\"],\"cited\":[\"B\",\"C\"]}\n\n{\"citing\":[\"D\"],\"cited\":[\"E\"]}\n");
    auto recs = read_citation_records(in, scheme);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].citing.size() == 1);
    CHECK(recs[0].cited.size() == 2);

    std::istringstream bad("{\"citing\":[\"A\"],\"cited\":[\"ZZ\"]}\n");
    CHECK_THROWS_WITH_AS(read_citation_records(bad, scheme), doctest::Contains("ZZ"), InputError);
}

TEST_CASE("cosine_similarity and to_disparity")
{
    SUBCASE("orthogonal rows")
    {
        auto s = cosine_similarity(counts_from({{1, 0}, {0, 1}}));
        CHECK(s(0, 1) == 0.0);
        CHECK(s(0, 0) == 1.0);
        auto d = to_disparity(s);
        CHECK(d(0, 1) == 1.0);
        CHECK(d(0, 0) == 0.0);
    }
    SUBCASE("identical rows")
    {
        auto s = cosine_similarity(counts_from({{2, 3}, {2, 3}}));
        CHECK(s(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("1/sqrt(2)")
    {
        auto s = cosine_similarity(counts_from({{1, 1, 0}, {1, 0, 0}, {0, 0, 0}}));
        CHECK(std::abs(s(0, 1) - 0.70710678118654752) <= 1e-12);
        CHECK(s(0, 1) == s(1, 0));
        CHECK(s(2, 2) == 1.0);
        CHECK(s(0, 2) == 0.0);
        auto d = to_disparity(s);
        CHECK(std::abs(d(0, 1) - 0.29289321881345248) <= 1e-12);
    }
    SUBCASE("hand-computed 3x3")
    {
        // rows (1,2,0), (0,1,3), (2,0,1): dot products 2, 2, 3; norms sqrt5, sqrt10, sqrt5
        auto s = cosine_similarity(counts_from({{1, 2, 0}, {0, 1, 3}, {2, 0, 1}}));
        CHECK(std::abs(s(0, 1) - 2.0 / std::sqrt(50.0)) <= 1e-12);
        CHECK(std::abs(s(0, 2) - 2.0 / 5.0) <= 1e-12);
        CHECK(std::abs(s(1, 2) - 3.0 / std::sqrt(50.0)) <= 1e-12);
    }
    SUBCASE("scale and order invariance")
    {
        std::mt19937_64 rng(4);
        CrossCitationMatrix m(6);
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 6; ++j) {
                m(i, j) = rng() % 50;
            }
        }
        auto base = cosine_similarity(m);
        CrossCitationMatrix scaled = m;
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 6; ++j) {
                scaled(i, j) *= 7;
            }
        }
        auto s2 = cosine_similarity(scaled);
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 6; ++j) {
                CHECK(std::abs(base(i, j) - s2(i, j)) <= 1e-12);
                CHECK(base(i, j) >= 0.0);
                CHECK(base(i, j) <= 1.0);
            }
        }
    }
}

TEST_CASE("matrix validation")
{
    SquareMatrix<double> m(2, 0.0);
    m(0, 1) = 0.3;
    m(1, 0) = 0.4;
    CHECK_THROWS_AS(DisparityMatrix{m}, InputError);
    m(1, 0) = 0.3;
    m(0, 0) = 0.1;
    CHECK_THROWS_AS(DisparityMatrix{m}, InputError);
    m(0, 0) = 0.0;
    m(0, 1) = m(1, 0) = 1.2;
    CHECK_THROWS_AS(DisparityMatrix{m}, InputError);
}

TEST_CASE("save_matrix / load_matrix")
{
    SUBCASE("2x2 round-trip")
    {
        SquareMatrix<double> m(2, 0.0);
        m(0, 1) = m(1, 0) = 0.1 + 0.2;
        DisparityMatrix d(m);
        std::stringstream io;
        save_matrix(io, d);
        CHECK(load_matrix(io) == d);
    }
    SUBCASE("252x252 round-trip is exact")
    {
        auto d = random_disparity(252, 99);
        std::stringstream io;
        save_matrix(io, d);
        auto back = load_matrix(io);
        double max_delta = 0.0;
        for (std::size_t k = 0; k < d.values().values().size(); ++k) {
            max_delta = std::max(max_delta, std::abs(d.values().values()[k] - back.values().values()[k]));
        }
        CHECK(max_delta == 0.0);
        CHECK(back == d);
    }
    SUBCASE("counts and similarity round-trip")
    {
        auto counts = counts_from({{1, 2, 0}, {0, 1, 3}, {2, 0, 1}});
        std::stringstream io;
        save_matrix(io, counts);
        CHECK(load_count_matrix(io) == counts);
        auto s = cosine_similarity(counts);
        std::stringstream io2;
        save_matrix(io2, s);
        CHECK(load_similarity_matrix(io2) == s);
    }
    SUBCASE("load errors")
    {
        std::istringstream out_of_range("dim=2 kind=disparity\n0 1.2\n1.2 0\n");
        CHECK_THROWS_WITH_AS(load_matrix(out_of_range), doctest::Contains("entry out of range"), InputError);
        std::istringstream not_square("dim=2 kind=disparity\n0 0.5 0.1\n0.5 0\n");
        CHECK_THROWS_AS(load_matrix(not_square), InputError);
        std::istringstream wrong_dim("dim=3 kind=disparity\n0 0.5\n0.5 0\n");
        CHECK_THROWS_AS(load_matrix(wrong_dim), InputError);
        std::istringstream wrong_kind("dim=2 kind=similarity\n1 0.5\n0.5 1\n");
        CHECK_THROWS_AS(load_matrix(wrong_kind), InputError);
    }
}
