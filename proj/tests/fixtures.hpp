#pragma once

#include "idr/corpus.hpp"
#include "idr/disparity.hpp"

#include <initializer_list>
#include <string>
#include <vector>

namespace idr::test {

/// Scheme with SCs A..E, fields F1..F4, disciplines D1 (F1, F2) and D2 (F3, F4).
inline FieldScheme small_scheme()
{
    return FieldScheme(
        {{"A", "Alpha"}, {"B", "Beta"}, {"C", "Gamma"}, {"D", "Delta"}, {"E", "Epsilon"}},
        {{"F1", "Field 1", DisciplineId(0u)},
         {"F2", "Field 2", DisciplineId(0u)},
         {"F3", "Field 3", DisciplineId(1u)},
         {"F4", "Field 4", DisciplineId(1u)}},
        {{"D1", "Discipline 1"}, {"D2", "Discipline 2"}});
}

inline Publication make_pub(
    std::string id, std::initializer_list<std::initializer_list<unsigned>> refs,
    std::initializer_list<unsigned> author_fields = {0u})
{
    Publication pub;
    pub.pub_id = std::move(id);
    pub.year = 2010;
    unsigned k = 0;
    for (auto f : author_fields) {
        pub.authors.push_back({"a" + std::to_string(++k), FieldId(f)});
    }
    for (auto r : refs) {
        Reference ref;
        for (auto sc : r) {
            ref.scs.push_back(ScId(sc));
        }
        pub.references.push_back(std::move(ref));
    }
    return pub;
}

/// Disparity with the given off-diagonal value everywhere.
inline DisparityMatrix uniform_disparity(std::size_t dim, double off_diagonal)
{
    SquareMatrix<double> m(dim, off_diagonal);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = 0.0;
    }
    return DisparityMatrix(std::move(m));
}

} // namespace idr::test
