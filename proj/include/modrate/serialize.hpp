#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "modrate/entropy.hpp"
#include "modrate/gallery.hpp"
#include "modrate/harness.hpp"
#include "modrate/rate_profile.hpp"
#include "modrate/torus.hpp"

namespace modrate {

using Json = nlohmann::json;

Json to_json(const RateProfile& profile);
RateProfile profile_from_json(const Json& j);

/// {"kind": "step"|"trig"|"grid", ...} with complex numbers as [re, im].
/// Analytic functions throw InvalidArgument; gallery names are their wire form.
Json to_json(const PeriodicFunction& f);
PeriodicFunction function_from_json(const Json& j);

Json to_json(const FittedConstant& c);
Json to_json(const EquivalenceReport& r);
Json to_json(const ScalingReport& r);
Json to_json(const InequalityReport& r);
Json to_json(const CoverResult& r);
Json to_json(const GalleryEntry& e);

/// Sorted keys, numbers with 17 significant digits, two-space indentation and
/// a trailing newline.
std::string canonical_dump(const Json& j);
/// Shortest form for a double in reports: integers stay integral, everything
/// else uses %.17g; non-finite values become "inf", "-inf" or "nan".
std::string format_number(double x);

/// Header row plus one row per element; fields are quoted only when needed.
std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

/// Writes to `path`, or to standard output when the path is empty or "-".
/// Throws Error(Io) on failure.
void write_output(const std::string& content, const std::string& path);

}  // namespace modrate
