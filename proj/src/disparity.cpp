#include "idr/disparity.hpp"

#include "idr/io.hpp"
#include "text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>

namespace idr {

namespace {

constexpr double symmetry_tolerance = 1e-12;

void check_unit_interval_symmetric(const SquareMatrix<double>& m, const char* what)
{
    const auto n = m.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double v = m(i, j);
            if (!(v >= 0.0 && v <= 1.0)) {
                throw InputError(
                    std::string(what) + " entry (" + std::to_string(i) + "," + std::to_string(j) +
                    ") out of range [0,1]");
            }
            if (j > i && std::abs(v - m(j, i)) > symmetry_tolerance) {
                throw InputError(
                    std::string(what) + " is not symmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    }
}

} // namespace

SimilarityMatrix::SimilarityMatrix(SquareMatrix<double> values)
    : values_(std::move(values))
{
    check_unit_interval_symmetric(values_, "similarity");
    for (std::size_t i = 0; i < values_.dim(); ++i) {
        if (values_(i, i) != 1.0) {
            throw InputError("similarity diagonal entry " + std::to_string(i) + " is not 1");
        }
    }
}

DisparityMatrix::DisparityMatrix(SquareMatrix<double> values)
    : values_(std::move(values))
{
    check_unit_interval_symmetric(values_, "disparity");
    for (std::size_t i = 0; i < values_.dim(); ++i) {
        if (values_(i, i) != 0.0) {
            throw InputError("disparity diagonal entry " + std::to_string(i) + " is not 0");
        }
    }
}

// =================================================================================================
//      Construction
// =================================================================================================

CrossCitationAccumulator::CrossCitationAccumulator(std::size_t dim)
    : counts_(dim, 0)
{
}

void CrossCitationAccumulator::add(const CitationRecord& record, std::size_t record_no)
{
    const auto dim = counts_.dim();
    auto check = [&](ScId id) {
        if (id.get() >= dim) {
            throw InputError(
                "citation record " + std::to_string(record_no) + ": SC index " + std::to_string(id.get()) +
                " out of range for dimension " + std::to_string(dim));
        }
    };
    std::for_each(record.citing.begin(), record.citing.end(), check);
    std::for_each(record.cited.begin(), record.cited.end(), check);

    for (auto from : record.citing) {
        for (auto to : record.cited) {
            ++counts_(from.get(), to.get());
        }
    }
}

void CrossCitationAccumulator::merge(const CrossCitationAccumulator& other)
{
    if (other.counts_.dim() != counts_.dim()) {
        throw InvariantViolation("merging accumulators of different dimension");
    }
    const auto n = counts_.dim();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            counts_(i, j) += other.counts_(i, j);
        }
    }
}

CrossCitationMatrix build_cross_citation_matrix(std::span<const CitationRecord> records, std::size_t dim)
{
    CrossCitationAccumulator acc(dim);
    for (std::size_t k = 0; k < records.size(); ++k) {
        acc.add(records[k], k + 1);
    }
    return std::move(acc).take();
}

std::vector<CitationRecord> read_citation_records(std::istream& source, const FieldScheme& scheme)
{
    using nlohmann::json;

    auto resolve = [&](const json& rec, const char* key, std::size_t line_no) {
        auto it = rec.find(key);
        if (it == rec.end() || !it->is_array()) {
            throw ParseError(line_no, std::string("'") + key + "' must be an array of SC codes");
        }
        std::vector<ScId> ids;
        for (const auto& code : *it) {
            if (!code.is_string()) {
                throw ParseError(line_no, "SC code must be a string");
            }
            auto id = scheme.find_sc(code.get_ref<const std::string&>());
            if (!id) {
                throw ParseError(line_no, "unknown SC code '" + code.get<std::string>() + "'");
            }
            ids.push_back(*id);
        }
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        return ids;
    };

    std::vector<CitationRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (detail::trim(line).empty()) {
            continue;
        }
        json rec = json::parse(line, nullptr, false);
        if (rec.is_discarded() || !rec.is_object()) {
            throw ParseError(line_no, "invalid JSON object");
        }
        records.push_back({resolve(rec, "citing", line_no), resolve(rec, "cited", line_no)});
    }
    return records;
}

SimilarityMatrix cosine_similarity(const CrossCitationMatrix& counts)
{
    const auto n = counts.dim();
    std::vector<double> norms(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double sq = 0.0;
        for (auto c : counts.row(i)) {
            sq += static_cast<double>(c) * static_cast<double>(c);
        }
        norms[i] = std::sqrt(sq);
    }

    SquareMatrix<double> s(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        s(i, i) = 1.0;
        if (norms[i] == 0.0) {
            continue;
        }
        auto row_i = counts.row(i);
        for (std::size_t j = i + 1; j < n; ++j) {
            if (norms[j] == 0.0) {
                continue;
            }
            auto row_j = counts.row(j);
            double dot = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                dot += static_cast<double>(row_i[k]) * static_cast<double>(row_j[k]);
            }
            // rounding can overshoot 1 for parallel rows
            double v = std::min(1.0, dot / (norms[i] * norms[j]));
            s(i, j) = v;
            s(j, i) = v;
        }
    }
    return SimilarityMatrix(std::move(s));
}

DisparityMatrix to_disparity(const SimilarityMatrix& similarity)
{
    const auto n = similarity.dim();
    SquareMatrix<double> d(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            d(i, j) = 1.0 - similarity(i, j);
        }
    }
    return DisparityMatrix(std::move(d));
}

// =================================================================================================
//      Persistence
// =================================================================================================

namespace {

template <typename T, typename Format>
void write_matrix(std::ostream& sink, const SquareMatrix<T>& m, const char* kind, Format format)
{
    const auto n = m.dim();
    std::string out = "dim=" + std::to_string(n) + " kind=" + kind + "\n";
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j > 0) {
                out += ' ';
            }
            out += format(m(i, j));
        }
        out += '\n';
    }
    sink << out;
}

template <typename T>
SquareMatrix<T> read_matrix(std::istream& source, std::string_view expected_kind)
{
    std::string line;
    if (!std::getline(source, line)) {
        throw ParseError(1, "missing matrix header");
    }
    detail::strip_cr(line);
    auto header = detail::split(detail::trim(line), ' ');
    if (header.size() != 2 || !header[0].starts_with("dim=") || !header[1].starts_with("kind=")) {
        throw ParseError(1, "header must read 'dim=<N> kind=<kind>'");
    }
    std::size_t dim = 0;
    auto dim_text = header[0].substr(4);
    auto [ptr, ec] = std::from_chars(dim_text.data(), dim_text.data() + dim_text.size(), dim);
    if (ec != std::errc{} || ptr != dim_text.data() + dim_text.size()) {
        throw ParseError(1, "invalid dim in header");
    }
    auto kind = header[1].substr(5);
    if (kind != expected_kind) {
        throw ParseError(1, "expected kind=" + std::string(expected_kind) + ", found kind=" + std::string(kind));
    }

    SquareMatrix<T> m(dim);
    std::size_t rows = 0;
    std::size_t line_no = 1;
    while (std::getline(source, line)) {
        ++line_no;
        detail::strip_cr(line);
        if (line.empty()) {
            continue;
        }
        if (rows == dim) {
            throw ParseError(line_no, "more rows than header dim=" + std::to_string(dim));
        }
        auto cells = detail::split(line, ' ');
        if (cells.size() != dim) {
            throw ParseError(
                line_no, "non-square matrix: row has " + std::to_string(cells.size()) + " values, expected " +
                             std::to_string(dim));
        }
        for (std::size_t j = 0; j < dim; ++j) {
            T value{};
            auto cell = cells[j];
            auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size()) {
                throw ParseError(line_no, "invalid value '" + std::string(cell) + "'");
            }
            if constexpr (std::is_floating_point_v<T>) {
                if (!(value >= 0.0 && value <= 1.0)) {
                    throw ParseError(line_no, "entry out of range: " + std::string(cell));
                }
            }
            m(rows, j) = value;
        }
        ++rows;
    }
    if (rows != dim) {
        throw ParseError(
            line_no, "header dim=" + std::to_string(dim) + " but found " + std::to_string(rows) + " rows");
    }
    return m;
}

} // namespace

void save_matrix(std::ostream& sink, const DisparityMatrix& matrix)
{
    write_matrix(sink, matrix.values(), "disparity", format_real);
}

void save_matrix(std::ostream& sink, const SimilarityMatrix& matrix)
{
    write_matrix(sink, matrix.values(), "similarity", format_real);
}

void save_matrix(std::ostream& sink, const CrossCitationMatrix& matrix)
{
    write_matrix(sink, matrix, "counts", [](std::uint64_t v) { return std::to_string(v); });
}

DisparityMatrix load_matrix(std::istream& source)
{
    return DisparityMatrix(read_matrix<double>(source, "disparity"));
}

SimilarityMatrix load_similarity_matrix(std::istream& source)
{
    return SimilarityMatrix(read_matrix<double>(source, "similarity"));
}

CrossCitationMatrix load_count_matrix(std::istream& source)
{
    return read_matrix<std::uint64_t>(source, "counts");
}

} // namespace idr
