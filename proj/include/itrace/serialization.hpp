#pragma once

#include "itrace/projection.hpp"
#include "itrace/simplex_geometry.hpp"
#include "itrace/trace_constants.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace itrace {

using json = nlohmann::json;

/// `{"dim": d, "vertices": [[...], ...]}`; throws InputError with a field path.
Simplex simplex_from_json(const json& doc);
json simplex_to_json(const Simplex& s);

/// `{"dim": d, "degree": p, "coeffs": [...]}` in graded mode order.
json poly_to_json(const PolyCoeffs& c);
PolyCoeffs poly_from_json(const json& doc, std::optional<Simplex> element = {});

json report_to_json(const SharpConstantReport& report);

/// Parses text as JSON; syntax errors become InputError carrying line and column.
json parse_json_text(const std::string& text, const std::string& source_name);

json read_json_file(const std::filesystem::path& path);
Simplex load_simplex(const std::filesystem::path& path);
PolyCoeffs load_poly(const std::filesystem::path& path, std::optional<Simplex> element = {});

/// Writes doc (indent 2, trailing newline); throws InputError if the path is unwritable.
void write_json_file(const std::filesystem::path& path, const json& doc);

} // namespace itrace
