#include "mnconvex/report_io.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "mnconvex/format.hpp"

namespace mnconvex::report_io {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// Stored as explicit null so parse(dump(x)) == x holds structurally.
ordered_json num_or_null(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

double num(const json& j) {
    if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
    return j.get<double>();
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

const char* outcome_str(convexity::Outcome o) {
    switch (o) {
        case convexity::Outcome::ConvexHolds:
            return "convex_holds";
        case convexity::Outcome::ConcaveHolds:
            return "concave_holds";
        case convexity::Outcome::BothHold:
            return "both_hold";
        case convexity::Outcome::NeitherHolds:
            return "neither_holds";
        case convexity::Outcome::Inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

convexity::Outcome outcome_from_str(const std::string& s) {
    if (s == "convex_holds") return convexity::Outcome::ConvexHolds;
    if (s == "concave_holds") return convexity::Outcome::ConcaveHolds;
    if (s == "both_hold") return convexity::Outcome::BothHold;
    if (s == "neither_holds") return convexity::Outcome::NeitherHolds;
    if (s == "inconclusive") return convexity::Outcome::Inconclusive;
    throw std::invalid_argument("unknown outcome: " + s);
}

const char* satisfied_str(inequalities::Satisfied s) {
    switch (s) {
        case inequalities::Satisfied::Yes:
            return "yes";
        case inequalities::Satisfied::No:
            return "no";
        case inequalities::Satisfied::Inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

inequalities::Satisfied satisfied_from_str(const std::string& s) {
    if (s == "yes") return inequalities::Satisfied::Yes;
    if (s == "no") return inequalities::Satisfied::No;
    if (s == "inconclusive") return inequalities::Satisfied::Inconclusive;
    throw std::invalid_argument("unknown satisfied value: " + s);
}

nlohmann::ordered_json to_json(const convexity::Witness& w) {
    ordered_json j;
    j["x"] = num_or_null(w.x);
    j["y"] = num_or_null(w.y);
    j["lhs"] = num_or_null(w.lhs);
    j["rhs"] = num_or_null(w.rhs);
    j["margin"] = num_or_null(w.margin);
    return j;
}

nlohmann::ordered_json to_json(const convexity::Verdict& v) {
    ordered_json j;
    j["outcome"] = outcome_str(v.outcome);
    j["min_margin"] = num_or_null(v.min_margin);
    j["samples_used"] = v.samples_used;
    ordered_json ws = ordered_json::array();
    for (const auto& w : v.witnesses) ws.push_back(to_json(w));
    j["witnesses"] = std::move(ws);
    return j;
}

nlohmann::ordered_json to_json(const inequalities::CheckReport& rep) {
    ordered_json j;
    j["name"] = rep.name;
    j["seed"] = rep.seed;
    ordered_json tol;
    tol["equality"] = rep.tolerances.equality;
    tol["quad_rel"] = rep.tolerances.quad_rel;
    tol["quad_abs"] = rep.tolerances.quad_abs;
    j["tolerances"] = std::move(tol);
    ordered_json pcs = ordered_json::array();
    for (const auto& pc : rep.preconditions) {
        ordered_json p;
        p["name"] = pc.name;
        p["satisfied"] = satisfied_str(pc.satisfied);
        p["verdict"] = to_json(pc.verdict);
        pcs.push_back(std::move(p));
    }
    j["preconditions"] = std::move(pcs);
    ordered_json rows = ordered_json::array();
    for (const auto& row : rep.inequalities) {
        ordered_json r;
        r["description"] = row.description;
        r["depends_on"] = row.depends_on;
        r["hypotheses_met"] = satisfied_str(inequalities::hypotheses_met(rep, row));
        r["pairs_tested"] = row.pairs_tested;
        r["failures"] = row.failures;
        r["inconclusive"] = row.inconclusive;
        r["min_margin"] = num_or_null(row.min_margin);
        r["worst_witness"] = row.worst_witness ? to_json(*row.worst_witness)
                                               : ordered_json(nullptr);
        rows.push_back(std::move(r));
    }
    j["inequalities"] = std::move(rows);
    j["errors"] = rep.errors;
    return j;
}

nlohmann::ordered_json to_json(const std::vector<inequalities::CheckReport>& reps) {
    ordered_json arr = ordered_json::array();
    for (const auto& rep : reps) arr.push_back(to_json(rep));
    return arr;
}

convexity::Witness witness_from_json(const json& j) {
    convexity::Witness w;
    w.x = num(j.at("x"));
    w.y = num(j.at("y"));
    w.lhs = num(j.at("lhs"));
    w.rhs = num(j.at("rhs"));
    w.margin = num(j.at("margin"));
    return w;
}

convexity::Verdict verdict_from_json(const json& j) {
    convexity::Verdict v;
    v.outcome = outcome_from_str(j.at("outcome").get<std::string>());
    v.min_margin = num(j.at("min_margin"));
    v.samples_used = j.at("samples_used").get<long long>();
    for (const auto& w : j.at("witnesses")) v.witnesses.push_back(witness_from_json(w));
    return v;
}

inequalities::CheckReport report_from_json(const json& j) {
    inequalities::CheckReport rep;
    rep.name = j.at("name").get<std::string>();
    rep.seed = j.at("seed").get<std::uint64_t>();
    const auto& tol = j.at("tolerances");
    rep.tolerances.equality = tol.at("equality").get<double>();
    rep.tolerances.quad_rel = tol.at("quad_rel").get<double>();
    rep.tolerances.quad_abs = tol.at("quad_abs").get<double>();
    for (const auto& p : j.at("preconditions")) {
        inequalities::Precondition pc;
        pc.name = p.at("name").get<std::string>();
        pc.satisfied = satisfied_from_str(p.at("satisfied").get<std::string>());
        pc.verdict = verdict_from_json(p.at("verdict"));
        rep.preconditions.push_back(std::move(pc));
    }
    for (const auto& r : j.at("inequalities")) {
        inequalities::InequalityStat row;
        row.description = r.at("description").get<std::string>();
        row.depends_on = r.at("depends_on").get<std::vector<std::string>>();
        row.pairs_tested = r.at("pairs_tested").get<long long>();
        row.failures = r.at("failures").get<long long>();
        row.inconclusive = r.at("inconclusive").get<long long>();
        row.min_margin = num(r.at("min_margin"));
        if (!r.at("worst_witness").is_null())
            row.worst_witness = witness_from_json(r.at("worst_witness"));
        rep.inequalities.push_back(std::move(row));
    }
    rep.errors = j.at("errors").get<std::vector<std::string>>();
    return rep;
}

std::vector<inequalities::CheckReport> reports_from_json(const json& j) {
    std::vector<inequalities::CheckReport> reps;
    for (const auto& r : j) reps.push_back(report_from_json(r));
    return reps;
}

std::string write_json(const std::vector<inequalities::CheckReport>& reps) {
    return to_json(reps).dump(2) + "\n";
}

std::string write_csv(const std::vector<inequalities::CheckReport>& reps) {
    std::string out =
        "report,inequality,hypotheses_met,pairs_tested,failures,inconclusive,min_margin,"
        "witness_x,witness_y\n";
    for (const auto& rep : reps) {
        for (const auto& row : rep.inequalities) {
            out += csv_escape(rep.name);
            out += ',';
            out += csv_escape(row.description);
            out += ',';
            out += satisfied_str(inequalities::hypotheses_met(rep, row));
            out += ',';
            out += std::to_string(row.pairs_tested);
            out += ',';
            out += std::to_string(row.failures);
            out += ',';
            out += std::to_string(row.inconclusive);
            out += ',';
            out += format17(row.min_margin);
            out += ',';
            out += row.worst_witness ? format17(row.worst_witness->x) : "";
            out += ',';
            out += row.worst_witness ? format17(row.worst_witness->y) : "";
            out += '\n';
        }
    }
    return out;
}

std::string write_plain(const std::vector<inequalities::CheckReport>& reps) {
    std::ostringstream out;
    for (const auto& rep : reps) {
        out << "report: " << rep.name << " (seed " << rep.seed << ")\n";
        for (const auto& pc : rep.preconditions) {
            out << "  precondition: " << pc.name << " -> " << satisfied_str(pc.satisfied) << " ("
                << outcome_str(pc.verdict.outcome) << ")\n";
        }
        for (const auto& row : rep.inequalities) {
            out << "  " << row.description << "\n";
            out << "    hypotheses: " << satisfied_str(inequalities::hypotheses_met(rep, row))
                << " | pairs: " << row.pairs_tested << " | failures: " << row.failures
                << " | inconclusive: " << row.inconclusive
                << " | min_margin: " << format17(row.min_margin) << "\n";
            if (row.worst_witness) {
                const auto& w = *row.worst_witness;
                out << "    worst: x=" << format17(w.x) << " y=" << format17(w.y)
                    << " lhs=" << format17(w.lhs) << " rhs=" << format17(w.rhs) << "\n";
            }
        }
        if (!rep.errors.empty()) {
            out << "  errors:\n";
            for (const auto& e : rep.errors) out << "    " << e << "\n";
        }
    }
    return out.str();
}

}  // namespace mnconvex::report_io
