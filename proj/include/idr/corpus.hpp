#pragma once

#include "idr/error.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace idr {

// =================================================================================================
//      Identifiers
// =================================================================================================

/// Compact index into one of the registries of a FieldScheme. The tag keeps subject
/// categories, fields and disciplines from being mixed up.
template <typename Tag>
struct Index
{
    std::uint32_t value = 0;

    constexpr Index() = default;
    constexpr explicit Index(std::uint32_t v) : value(v) {}
    constexpr explicit Index(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}

    constexpr std::size_t get() const noexcept { return value; }
    friend constexpr auto operator<=>(Index, Index) = default;
};

struct ScTag {};
struct FieldTag {};
struct DisciplineTag {};

using ScId = Index<ScTag>;
using FieldId = Index<FieldTag>;
using DisciplineId = Index<DisciplineTag>;

// =================================================================================================
//      Field scheme
// =================================================================================================

struct Category
{
    std::string code;
    std::string name;
};

struct Field
{
    std::string code;
    std::string name;
    DisciplineId discipline;
};

/// Two-level author classification (fields grouped under disciplines) plus the subject
/// category registry used on the reference side. Immutable once constructed.
class FieldScheme
{
public:
    FieldScheme() = default;

    /// Validates that every code is unique within its list and every field points at an
    /// existing discipline. Throws InputError otherwise.
    FieldScheme(std::vector<Category> scs, std::vector<Field> fields, std::vector<Category> disciplines);

    const std::vector<Category>& scs() const noexcept { return scs_; }
    const std::vector<Field>& fields() const noexcept { return fields_; }
    const std::vector<Category>& disciplines() const noexcept { return disciplines_; }

    std::optional<ScId> find_sc(std::string_view code) const;
    std::optional<FieldId> find_field(std::string_view code) const;
    std::optional<DisciplineId> find_discipline(std::string_view code) const;

    const Category& sc(ScId id) const { return scs_.at(id.get()); }
    const Field& field(FieldId id) const { return fields_.at(id.get()); }
    const Category& discipline(DisciplineId id) const { return disciplines_.at(id.get()); }
    DisciplineId discipline_of(FieldId id) const { return field(id).discipline; }

    /// Same fields and disciplines, different subject category registry.
    FieldScheme with_scs(std::vector<Category> scs) const;

private:
    std::vector<Category> scs_;
    std::vector<Field> fields_;
    std::vector<Category> disciplines_;
    std::unordered_map<std::string, std::uint32_t> sc_index_;
    std::unordered_map<std::string, std::uint32_t> field_index_;
    std::unordered_map<std::string, std::uint32_t> discipline_index_;
};

/// Reads the registry format: a `[disciplines]` section of `code<TAB>name` lines and a
/// `[fields]` section of `code<TAB>name<TAB>discipline_code` lines. An optional `[scs]`
/// section of `code<TAB>name` lines fills the subject category registry. Blank lines and
/// lines starting with `#` are ignored.
FieldScheme load_field_scheme(std::istream& source);

/// Subject category registry file: `code<TAB>name` per line.
std::vector<Category> load_sc_registry(std::istream& source);

void write_field_scheme(std::ostream& sink, const FieldScheme& scheme);
void write_sc_registry(std::ostream& sink, const FieldScheme& scheme);

// =================================================================================================
//      Publications
// =================================================================================================

enum class DocKind
{
    Article,
    ProceedingsPaper,
    BookChapter,
    Other
};

struct DocType
{
    DocKind kind = DocKind::Article;
    std::string label; ///< Only meaningful for DocKind::Other.

    static DocType parse(std::string_view text);
    std::string str() const;

    friend bool operator==(const DocType& a, const DocType& b)
    {
        return a.kind == b.kind && (a.kind != DocKind::Other || a.label == b.label);
    }
};

struct AuthorRecord
{
    std::string author_id;
    std::optional<FieldId> field; ///< Empty for authors outside the classification system.

    friend bool operator==(const AuthorRecord&, const AuthorRecord&) = default;
};

/// The subject categories of one cited journal, sorted and duplicate-free.
struct Reference
{
    std::vector<ScId> scs;

    friend bool operator==(const Reference&, const Reference&) = default;
};

struct Publication
{
    std::string pub_id;
    std::int64_t year = 0;
    DocType doc_type;
    std::vector<AuthorRecord> authors;
    std::vector<Reference> references;

    friend bool operator==(const Publication&, const Publication&) = default;
};

/// Optional journal identifier to subject category lookup, for corpora whose references
/// name journals instead of carrying SC codes.
using JournalMap = std::unordered_map<std::string, std::vector<ScId>>;

/// `journal<TAB>code;code;...` per line.
JournalMap load_journal_map(std::istream& source, const FieldScheme& scheme);

struct RecordError
{
    std::size_t line = 0;
    std::string reason;
};

struct ParseResult
{
    std::vector<Publication> publications;
    std::vector<RecordError> errors;
    /// Non-fatal notes, such as references without any indexed subject category that
    /// were dropped from an otherwise valid record.
    std::vector<RecordError> notes;
    std::size_t dropped_references = 0;
};

/// Parses one JSON object per line. Invalid records are reported in `errors` and left out
/// of `publications`; the order of valid records is preserved.
ParseResult parse_corpus(std::istream& source, const FieldScheme& scheme, const JournalMap* journals = nullptr);

/// Serializes in the same line format parse_corpus reads.
std::string to_json_line(const Publication& pub, const FieldScheme& scheme);
void write_corpus(std::ostream& sink, std::span<const Publication> pubs, const FieldScheme& scheme);

// =================================================================================================
//      Filters
// =================================================================================================

struct FilterConfig
{
    std::vector<DocType> allowed_doc_types{
        {DocKind::Article, {}}, {DocKind::ProceedingsPaper, {}}, {DocKind::BookChapter, {}}};
    bool require_references = true;
    bool require_all_authors_classified = true;

    /// Comma-separated `key=value` list, e.g.
    /// `doc_types=article|proceedings,references=off,classified=on`.
    static FilterConfig parse(std::string_view text);
};

namespace exclusion {
inline constexpr std::string_view doc_type = "doc_type";
inline constexpr std::string_view unclassified_author = "unclassified_author";
inline constexpr std::string_view no_references = "no_references";
} // namespace exclusion

struct FilterResult
{
    std::vector<Publication> kept;
    std::map<std::string, std::size_t> exclusions;
};

/// Rules are checked in the order doc type, author classification, references; each
/// dropped record is attributed to the first rule it fails.
FilterResult apply_filters(std::span<const Publication> pubs, const FilterConfig& cfg);

// =================================================================================================
//      Reference counts
// =================================================================================================

/// Sparse per-category reference counts of one publication.
class ScCountVector
{
public:
    using Entry = std::pair<ScId, std::uint64_t>;

    ScCountVector() = default;

    /// Entries may come in any order; duplicates are an error, as are zero counts.
    explicit ScCountVector(std::vector<Entry> entries);

    std::span<const Entry> entries() const noexcept { return entries_; }
    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    std::uint64_t total() const noexcept { return total_; }

private:
    std::vector<Entry> entries_; // sorted by ScId
    std::uint64_t total_ = 0;
};

/// Full counting: every reference adds one to each of its journal's categories.
/// Throws InputError for a publication without references.
ScCountVector reference_sc_counts(const Publication& pub);

} // namespace idr
