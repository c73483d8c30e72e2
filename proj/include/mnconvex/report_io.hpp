#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "mnconvex/convexity.hpp"
#include "mnconvex/inequalities.hpp"

namespace mnconvex::report_io {

// JSON uses insertion-ordered objects so output is byte-stable. Non-finite
// doubles serialize as null (and parse back as NaN).

const char* outcome_str(convexity::Outcome o);
convexity::Outcome outcome_from_str(const std::string& s);
const char* satisfied_str(inequalities::Satisfied s);
inequalities::Satisfied satisfied_from_str(const std::string& s);

nlohmann::ordered_json to_json(const convexity::Witness& w);
nlohmann::ordered_json to_json(const convexity::Verdict& v);
nlohmann::ordered_json to_json(const inequalities::CheckReport& rep);
nlohmann::ordered_json to_json(const std::vector<inequalities::CheckReport>& reps);

convexity::Witness witness_from_json(const nlohmann::json& j);
convexity::Verdict verdict_from_json(const nlohmann::json& j);
inequalities::CheckReport report_from_json(const nlohmann::json& j);
std::vector<inequalities::CheckReport> reports_from_json(const nlohmann::json& j);

// dump(2) plus a trailing newline.
std::string write_json(const std::vector<inequalities::CheckReport>& reps);

// One line per inequality row per report; doubles printed with %.17g.
// Columns: report, inequality, hypotheses_met, pairs_tested, failures,
// inconclusive, min_margin, witness_x, witness_y.
std::string write_csv(const std::vector<inequalities::CheckReport>& reps);

// Human-readable summary, one block per report.
std::string write_plain(const std::vector<inequalities::CheckReport>& reps);

}  // namespace mnconvex::report_io
