#pragma once

#include "idr/classify.hpp"
#include "idr/corpus.hpp"
#include "idr/diversity.hpp"

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace idr {

// =================================================================================================
//      Input rows
// =================================================================================================

/// One scored paper with whatever byline attributes are known for it.
struct PaperRecord
{
    std::string pub_id;
    std::size_t variety = 0;
    double balance = 0.0;
    double avg_disparity = 0.0;
    double rao_stirling = 0.0;
    double integrated_diversity = 1.0;

    std::optional<Subpopulation> label;
    std::optional<std::size_t> n_authors;
    std::optional<std::size_t> n_fields;
    std::optional<std::size_t> n_disciplines;
    std::optional<std::string> discipline; ///< group label for per-discipline tables
};

/// Label rows as written by `classification_json_line`.
struct LabelRow
{
    std::string pub_id;
    Subpopulation label = Subpopulation::SingleAuthor;
    std::size_t n_authors = 0;
    std::size_t n_fields = 0;
    std::size_t n_disciplines = 0;
    std::optional<std::string> discipline;
};

/// Parses score JSONL. Throws ParseError on a malformed line.
std::vector<PaperRecord> read_score_lines(std::istream& source);
std::vector<LabelRow> read_label_lines(std::istream& source);

/// Attaches labels to scores by pub_id. Every score needs a label; labels without a score
/// are ignored. Disciplines are rendered through `scheme` names when one is given.
std::vector<PaperRecord> join_labels(
    std::vector<PaperRecord> scores, std::span<const LabelRow> labels, const FieldScheme* scheme = nullptr);

/// In-process equivalent of score -> classify -> join.
std::vector<PaperRecord> make_paper_records(
    std::span<const ScoredPublication> scores, std::span<const Publication> pubs, const FieldScheme& scheme,
    bool discipline_names = false);

// =================================================================================================
//      Grouped averages
// =================================================================================================

enum class GroupKey
{
    ByDiscipline,
    ByAuthorCount,
    ByFieldCount,
    ByDisciplineCount,
    /// Blocks by field count, rows by author count inside each block.
    ByFieldCountThenAuthorCount
};

struct GroupSpec
{
    GroupKey key = GroupKey::ByAuthorCount;
    /// Counts at or above the cap pool into one "<cap> or more" row. Applies to the row
    /// key, i.e. the author count for ByFieldCountThenAuthorCount.
    std::optional<std::size_t> bucket_cap;
};

struct SummaryRow
{
    std::string block; ///< empty unless the spec groups in blocks
    std::string group_label;
    std::size_t n_papers = 0;
    double share = 0.0; ///< of the block (or the whole table when unblocked)
    double avg_variety = 0.0;
    double avg_balance = 0.0;
    double avg_disparity = 0.0;
    double avg_id = 0.0;
};

/// Rows are ordered by block then group: numeric groups ascending with the capped bucket
/// last, discipline groups by label. Throws InputError naming a missing attribute.
std::vector<SummaryRow> summarize_by(std::span<const PaperRecord> papers, const GroupSpec& spec);

enum class Direction
{
    Up,
    Down,
    Equal
};

std::string_view to_string(Direction dir);

struct Arrow
{
    std::string block;
    std::string group_label;
    std::string indicator; ///< variety, balance, disparity or id
    Direction direction = Direction::Equal;
};

struct TableComparison
{
    std::vector<Arrow> arrows;
    std::vector<std::string> unmatched; ///< groups present in only one table
};

/// Sign of (other - base) per indicator; differences within 1e-12 are Equal.
TableComparison compare_tables(std::span<const SummaryRow> base, std::span<const SummaryRow> other);

// =================================================================================================
//      Distributions
// =================================================================================================

struct IndicatorStats
{
    double average = 0.0;
    double median = 0.0;
    double st_dev = 0.0; ///< population standard deviation (divisor N)
    double min = 0.0;
    double max = 0.0;
};

IndicatorStats indicator_stats(std::span<const double> values);

struct SubpopulationStats
{
    Subpopulation label = Subpopulation::SingleAuthor;
    std::size_t n_papers = 0;
    IndicatorStats variety;
    IndicatorStats balance;
    IndicatorStats disparity;
    IndicatorStats id;
};

struct DescriptiveStats
{
    std::vector<SubpopulationStats> rows; ///< in Subpopulation order
    std::vector<Subpopulation> omitted;   ///< empty subpopulations
};

DescriptiveStats descriptive_stats(std::span<const PaperRecord> papers);

struct Histogram
{
    std::vector<double> bin_edges; ///< strictly increasing, starts at 1
    std::vector<std::size_t> counts;
    std::size_t unity_count = 0; ///< papers with ID exactly 1, kept out of the bins
    std::size_t population = 0;
    double share_at_unity = 0.0;
    std::vector<double> shares;
};

/// Bins [1 + k w, 1 + (k+1) w); the last bin is closed and reaches at least `upper`.
Histogram id_histogram(std::span<const double> ids, double bin_width, double upper);

/// One histogram per non-empty subpopulation, sharing bin edges.
std::vector<std::pair<Subpopulation, Histogram>> id_distribution(std::span<const PaperRecord> papers, double bin_width);

struct RankedPaper
{
    std::string pub_id;
    double integrated_diversity = 1.0;
    std::size_t variety = 0;
};

/// Descending ID, then descending variety, then ascending pub_id.
std::vector<RankedPaper> top_k_by_id(std::span<const PaperRecord> papers, std::size_t k);

// =================================================================================================
//      Report
// =================================================================================================

struct ReportOptions
{
    double bin_width = 0.25;
    std::size_t top_k = 5;
    std::size_t author_cap = 5;
    std::size_t field_cap = 5;
    std::size_t discipline_cap = 3;
};

struct Provenance
{
    std::string corpus_digest = "none";
    std::string matrix_digest = "none";
    std::string version;
};

/// Renders every table, comparison, histogram and ranking as CSV and JSON documents,
/// keyed by file name. Throws InputError for an empty input.
std::map<std::string, std::string> render_report(
    std::span<const PaperRecord> papers, const ReportOptions& options, const Provenance& provenance);

/// A single summary table as `<name>.csv` and `<name>.json`.
std::map<std::string, std::string> render_summary(
    const std::string& name, std::span<const SummaryRow> rows, const Provenance& provenance);

} // namespace idr
