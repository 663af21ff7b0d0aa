#pragma once

// JSON forms shared by the CLI and the tests. Big integers are decimal strings,
// rationals are {"num", "den"} string pairs, colors are printed 1-based.

#include "rtl/container.hpp"
#include "rtl/stability.hpp"

#include <json.hpp>

namespace rtl::json {

using nlohmann::json;

json count(const Count& c);
json rational(const Rational& q);
json interval(const Interval& i);

Count parse_count(const json& j);
Rational parse_rational(const json& j);

/// Short decimal rendering of a rational for human readers; never used in decisions.
std::string approx(const Rational& q, int digits = 12);

json to_json(const Template& t);
Template template_from_json(const json& j);
Template parse_template(std::string_view text);

json to_json(const CleaningTrace& trace);
CleaningTrace trace_from_json(const json& j);

json to_json(const CriticalSets& sets);
json to_json(const RainbowHypergraphStats& stats);
json to_json(const ContainerReport& report);
json to_json(const SupersaturationBound& bound);

}  // namespace rtl::json
