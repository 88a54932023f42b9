#pragma once

#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "cosupp/cli/scene.hpp"

namespace cosupp {

using Json = nlohmann::ordered_json;
using DegreeRange = std::optional<std::pair<int, int>>;

// Parses "LO..HI"; the span is bounded by kMaxDegreeSpan.
std::pair<int, int> parse_degree_range(const std::string& text);

// Drops degrees outside the range from every local and generic entry.
CohomologyTable restrict_table(const CohomologyTable& t, const DegreeRange& r);

// Status of an acyclicity or nonvanishing certificate recomputed on the
// restricted tables.
Certificate restrict_certificate(const Certificate& c, bool nonvanishing, const DegreeRange& r);

// p-power invariants for a length list, e.g. [2,1] at (2) -> ["4","2"].
Json invariants_json(const LocalResult& r, const std::vector<int>& lengths, const SpecFragment& F);

Json table_json(const CohomologyTable& t, const SpecFragment& F);
Json certificate_json(const Certificate& c, const SpecFragment& F);
Json complex_json(const Complex& X);
Json cech_json(const CechComplex& C);
Json slices_json(const SpecFragment& F, const Slices& S);
Json scene_json(const Scene& s);

// Human-readable rendering of a report.
std::string render_text(const Json& report);

} // namespace cosupp
