#pragma once

#include "idr/corpus.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace idr {

/// Distinct authors, fields and disciplines on a byline.
struct BylineProfile
{
    std::size_t n_authors = 0;
    std::size_t n_fields = 0;
    std::size_t n_disciplines = 0;
    std::vector<FieldId> field_ids;           ///< sorted, unique
    std::vector<DisciplineId> discipline_ids; ///< sorted, unique

    /// The byline's discipline when all authors share one, otherwise empty.
    std::optional<DisciplineId> single_discipline() const
    {
        if (discipline_ids.size() == 1) {
            return discipline_ids.front();
        }
        return std::nullopt;
    }
};

enum class Subpopulation
{
    SingleAuthor,
    MultiAuthorSingleField,
    MultiField
};

std::string_view to_string(Subpopulation label);
/// Throws InputError for an unknown label.
Subpopulation parse_subpopulation(std::string_view text);

/// Authors listed twice under the same author_id count once. Throws InputError when an
/// author carries no field.
BylineProfile byline_profile(const Publication& pub, const FieldScheme& scheme);

Subpopulation classify(const BylineProfile& profile);

/// `{"pub_id":..,"label":..,"n_authors":..,"n_fields":..,"n_disciplines":..,"discipline":..}`
/// where `discipline` is the single discipline code or null.
std::string classification_json_line(
    const std::string& pub_id, const BylineProfile& profile, const FieldScheme& scheme);

} // namespace idr
