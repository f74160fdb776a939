#pragma once

#include <string>

#include "json.hpp"

#include "classify.hpp"
#include "invariants.hpp"
#include "record.hpp"

namespace bott {

using ordered_json = nlohmann::ordered_json;

inline ordered_json to_json(const InvariantFingerprint& fp)
{
    ordered_json j;
    j["n"] = fp.n;
    j["level_sequence"] = fp.level_sequence;
    j["rank"] = fp.rank;
    j["levelset_cut_ranks"] = fp.levelset_cut_ranks;
    j["consecutive_cut_ranks"] = fp.consecutive_cut_ranks;
    j["sibling_profile"] = fp.sibling_profile.sizes_by_level;
    if (fp.odd_height.is_infinite())
        j["odd_height"] = "inf";
    else
        j["odd_height"] = fp.odd_height.level();
    return j;
}

// elapsed_ms is omitted when negative so reports can be compared byte for byte.
inline ordered_json to_json(const ClassCensus& census, long long elapsed_ms)
{
    ordered_json j;
    j["n"] = census.n;
    j["dag_count"] = census.dag_count;
    j["classes"] = census.total_classes;
    j["orientable"] = census.orientable_classes;
    j["symplectic"] = census.symplectic_classes;
    if (elapsed_ms >= 0)
        j["elapsed_ms"] = elapsed_ms;
    return j;
}

inline ordered_json to_json(const OrbitResult& orbit)
{
    ordered_json j;
    j["n"] = orbit.n;
    j["representative"] = format_record(orbit.representative_digraph());
    j["size"] = orbit.size;
    j["truncated"] = orbit.truncated;
    ordered_json members = ordered_json::array();
    for (const CanonicalCode& c : orbit.members)
        members.push_back(format_record(unpack_upper_triangle(orbit.n, c)));
    j["members"] = std::move(members);
    return j;
}

// One line of a representatives stream.
inline std::string format_class_record(int n, const ClassRecord& r)
{
    return format_record(unpack_upper_triangle(n, r.representative)) + " " + std::to_string(r.orbit_size);
}

} // namespace bott
