#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "arcmarkov/cheb_series.hpp"
#include "arcmarkov/equilibrium.hpp"
#include "arcmarkov/fastdecay.hpp"
#include "arcmarkov/ineqlab.hpp"
#include "arcmarkov/interval_set.hpp"
#include "arcmarkov/trig_poly.hpp"
#include "arcmarkov/tset.hpp"

// JSON mappings (nlohmann ADL hooks) and CSV helpers. Objects that are only
// produced, never read back, get to_json alone.

namespace arcmarkov {

using json = nlohmann::json;

void to_json(json& j, const TrigPoly& p);
void from_json(const json& j, TrigPoly& p);
void to_json(json& j, const ChebSeries& p);
void from_json(const json& j, ChebSeries& p);
void to_json(json& j, const Interval& iv);
void from_json(const json& j, Interval& iv);
void to_json(json& j, const IntervalSet& s);
void from_json(const json& j, IntervalSet& s);

// "[-1.5708,1.5708]" or "[a,b] U [c,d]" (also accepts "u" and ";").
IntervalSet parse_interval_set(const std::string& text);

// printf %.17g
std::string format_double(double v);

// RFC-4180: quote when the field has a comma, quote, CR or LF; double quotes.
std::string csv_field(const std::string& s);
std::string csv_row(const std::vector<std::string>& fields);

std::uint64_t fnv1a(std::string_view bytes);
std::string hex64(std::uint64_t v);

namespace equilibrium {
void to_json(json& j, const ArcSystem& a);
void to_json(json& j, const EquilibriumMeasure& eq);
void to_json(json& j, const EndpointFactor& f);
}  // namespace equilibrium

namespace tset {
void to_json(json& j, const TSetDescriptor& d);
}  // namespace tset

namespace fastdecay {
void to_json(json& j, const PrescribedZero& z);
void from_json(const json& j, PrescribedZero& z);
void to_json(json& j, const AlgebraicSpec& s);
void from_json(const json& j, AlgebraicSpec& s);
void to_json(json& j, const TrigSpec& s);
void from_json(const json& j, TrigSpec& s);
void to_json(json& j, const PropertyCheck& c);
void to_json(json& j, const PropertyReport& r);
void to_json(json& j, const Parameters& p);
void to_json(json& j, const Decay& d);
void to_json(json& j, const AlgebraicResult& r);
void to_json(json& j, const TrigResult& r);
void to_json(json& j, const DecayFit& f);
}  // namespace fastdecay

namespace ineqlab {
void to_json(json& j, const InequalityReport& r);
void to_json(json& j, const ConvergenceTable& t);
void to_json(json& j, const SymmetrizationReport& r);

std::vector<std::string> csv_header(const InequalityReport&);
std::vector<std::string> csv_values(const InequalityReport& r);
}  // namespace ineqlab

}  // namespace arcmarkov
