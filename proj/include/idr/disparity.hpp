#pragma once

#include "idr/corpus.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace idr {

/// Dense row-major square matrix.
template <typename T>
class SquareMatrix
{
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t dim, T fill = T{})
        : dim_(dim)
        , data_(dim * dim, fill)
    {
    }

    std::size_t dim() const noexcept { return dim_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * dim_ + j]; }

    std::span<const T> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
    std::span<const T> values() const noexcept { return data_; }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<T> data_;
};

/// counts(i, j): citations issued from category i to category j.
using CrossCitationMatrix = SquareMatrix<std::uint64_t>;

/// Cosine similarity of citing profiles. Symmetric, entries in [0,1], unit diagonal.
class SimilarityMatrix
{
public:
    SimilarityMatrix() = default;
    /// Throws InputError when the values break the invariants.
    explicit SimilarityMatrix(SquareMatrix<double> values);

    std::size_t dim() const noexcept { return values_.dim(); }
    double operator()(std::size_t i, std::size_t j) const { return values_(i, j); }
    const SquareMatrix<double>& values() const noexcept { return values_; }

    friend bool operator==(const SimilarityMatrix&, const SimilarityMatrix&) = default;

private:
    SquareMatrix<double> values_;
};

/// Pairwise cognitive distance between categories. Symmetric, entries in [0,1], zero
/// diagonal.
class DisparityMatrix
{
public:
    DisparityMatrix() = default;
    /// Throws InputError when the values break the invariants.
    explicit DisparityMatrix(SquareMatrix<double> values);

    std::size_t dim() const noexcept { return values_.dim(); }
    double operator()(std::size_t i, std::size_t j) const { return values_(i, j); }
    double operator()(ScId i, ScId j) const { return values_(i.get(), j.get()); }
    std::span<const double> row(std::size_t i) const { return values_.row(i); }
    const SquareMatrix<double>& values() const noexcept { return values_; }

    friend bool operator==(const DisparityMatrix&, const DisparityMatrix&) = default;

private:
    SquareMatrix<double> values_;
};

// -------------------------------------------------------------------------
//     Construction
// -------------------------------------------------------------------------

struct CitationRecord
{
    std::vector<ScId> citing;
    std::vector<ScId> cited;
};

/// Folds citation records into a count matrix. Every record adds one to each cell of
/// citing x cited. Accumulators built over disjoint slices of a stream can be merged.
class CrossCitationAccumulator
{
public:
    explicit CrossCitationAccumulator(std::size_t dim);

    /// `record_no` only labels the error for an out-of-range category.
    void add(const CitationRecord& record, std::size_t record_no = 0);
    void merge(const CrossCitationAccumulator& other);

    const CrossCitationMatrix& counts() const noexcept { return counts_; }
    CrossCitationMatrix take() && { return std::move(counts_); }

private:
    CrossCitationMatrix counts_;
};

CrossCitationMatrix build_cross_citation_matrix(std::span<const CitationRecord> records, std::size_t dim);

/// Reads `{"citing": [codes], "cited": [codes]}` per line, resolving codes against the
/// scheme's subject category registry. Duplicate codes within one side are collapsed.
std::vector<CitationRecord> read_citation_records(std::istream& source, const FieldScheme& scheme);

/// Cosine similarity between the rows of the count matrix. A row without citations has
/// similarity 0 to every other category and 1 to itself.
SimilarityMatrix cosine_similarity(const CrossCitationMatrix& counts);

DisparityMatrix to_disparity(const SimilarityMatrix& similarity);

// -------------------------------------------------------------------------
//     Persistence
// -------------------------------------------------------------------------

/// Text format: a `dim=<N> kind=<counts|similarity|disparity>` header, then N rows of N
/// space-separated values. Reals carry 17 significant digits.
void save_matrix(std::ostream& sink, const DisparityMatrix& matrix);
void save_matrix(std::ostream& sink, const SimilarityMatrix& matrix);
void save_matrix(std::ostream& sink, const CrossCitationMatrix& matrix);

DisparityMatrix load_matrix(std::istream& source);
SimilarityMatrix load_similarity_matrix(std::istream& source);
CrossCitationMatrix load_count_matrix(std::istream& source);

} // namespace idr
