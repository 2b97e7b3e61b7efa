#pragma once

// JSON and CSV forms of the reports. Exact values are written as strings
// ("p/2^e" for dyadics, "p/q" for rationals) next to a decimal rendering, and
// the parsers read the exact strings back.

#include <string>
#include <string_view>

#include "digitsum/density.hpp"
#include "digitsum/moments.hpp"

namespace digitsum {

inline constexpr int kDecimalDigits = 12;

std::string to_json(const ScanReport& r);
ScanReport scan_report_from_json(std::string_view text);
/// kind,t,value,decimal rows for every witness in the report.
std::string to_csv(const ScanReport& r);

std::string to_json(const MomentReport& r);
MomentReport moment_report_from_json(std::string_view text);
std::string to_csv(const MomentReport& r);

std::string to_json(const ProfileReport& r);
std::string to_json(const WindowCount& w);

std::string to_json(const DeltaColumn& c);
std::string to_csv(const DeltaColumn& c);
std::string to_json(const PhiColumn& c);
std::string to_csv(const PhiColumn& c);

}  // namespace digitsum
