#include "mnconvex/cli.hpp"

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mnconvex/convexity.hpp"
#include "mnconvex/errors.hpp"
#include "mnconvex/expr.hpp"
#include "mnconvex/format.hpp"
#include "mnconvex/inequalities.hpp"
#include "mnconvex/means.hpp"
#include "mnconvex/report_io.hpp"
#include "mnconvex/sampling.hpp"

namespace mnconvex::cli {

namespace {

using inequalities::CheckReport;
using inequalities::SamplePlan;

std::vector<means::PositivePair> parse_pairs_text(std::string text) {
    for (char& c : text)
        if (c == ';') c = '\n';
    std::vector<means::PositivePair> out;
    std::istringstream lines(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double x = 0.0, y = 0.0;
        if (!(ls >> x)) {
            std::istringstream probe(line);
            std::string tok;
            if (probe >> tok)
                throw precondition_error("pairs: line " + std::to_string(lineno) +
                                         ": expected 'x y', got '" + tok + "'");
            continue;  // blank / comment-only line
        }
        std::string trailing;
        if (!(ls >> y) || (ls >> trailing))
            throw precondition_error("pairs: line " + std::to_string(lineno) +
                                     ": expected exactly two numbers");
        out.emplace_back(x, y);
    }
    if (out.empty()) throw precondition_error("pairs: no pairs given");
    return out;
}

std::vector<means::PositivePair> load_pairs(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(arg, ec)) {
        std::ifstream in(arg);
        if (!in) throw precondition_error("pairs: cannot open file '" + arg + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_pairs_text(buf.str());
    }
    return parse_pairs_text(arg);
}

std::vector<means::MeanKind> parse_kinds(const std::string& csv) {
    std::vector<means::MeanKind> kinds;
    std::string token;
    std::istringstream ss(csv);
    while (std::getline(ss, token, ',')) {
        // M:<t> / J:<p> parameters may themselves not contain commas, so a
        // plain comma split is unambiguous.
        if (!token.empty()) kinds.push_back(means::MeanKind::parse(token));
    }
    if (kinds.empty()) throw precondition_error("--kinds: no mean kinds given");
    return kinds;
}

int mean_eval_cmd(const std::string& kind, double x, double y, std::ostream& out) {
    const auto k = means::MeanKind::parse(kind);
    out << format17(means::evaluate(k, means::PositivePair(x, y))) << "\n";
    return 0;
}

int mean_table_cmd(const std::string& kinds_csv, const std::string& pairs_arg,
                   const std::string& format, std::ostream& out) {
    const auto kinds = parse_kinds(kinds_csv);
    const auto pairs = load_pairs(pairs_arg);
    if (format == "json") {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& pr : pairs) {
            nlohmann::ordered_json row;
            row["x"] = pr.x();
            row["y"] = pr.y();
            for (const auto& k : kinds) row[k.str()] = means::evaluate(k, pr);
            arr.push_back(std::move(row));
        }
        out << arr.dump(2) << "\n";
    } else {
        out << "x,y";
        for (const auto& k : kinds) out << ',' << k.str();
        out << "\n";
        for (const auto& pr : pairs) {
            out << format17(pr.x()) << ',' << format17(pr.y());
            for (const auto& k : kinds) out << ',' << format17(means::evaluate(k, pr));
            out << "\n";
        }
    }
    return 0;
}

struct ConvexityArgs {
    std::string f;
    std::string m = "A";
    std::string n = "A";
    std::string pq;
    std::string method = "criterion";
    double lo = 0.1;
    double hi = 10.0;
    int samples = 1001;
    std::uint64_t seed = 0;
    double tol = convexity::kDefaultTol;
    std::string sampling = "log";
    std::string format = "json";
};

convexity::PQPair parse_pq(const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) throw parse_error(s.size(), "','");
    std::size_t used_p = 0, used_q = 0;
    convexity::PQPair pq{};
    try {
        pq.p = std::stod(s.substr(0, comma), &used_p);
        pq.q = std::stod(s.substr(comma + 1), &used_q);
    } catch (const std::exception&) {
        throw parse_error(0, "--pq as <p>,<q>");
    }
    if (used_p != comma || used_q != s.size() - comma - 1)
        throw parse_error(0, "--pq as <p>,<q>");
    return pq;
}

int convexity_cmd(const ConvexityArgs& a, std::ostream& out) {
    const auto f = expr::FunctionSpec::parsed(a.f);
    IntervalSpec iv{a.lo, a.hi, a.samples,
                    a.sampling == "uniform" ? Sampling::Uniform : Sampling::LogUniform, a.seed};
    convexity::Verdict v;
    if (a.method == "definitional") {
        v = convexity::definitional_check(f, means::MeanKind::parse(a.m),
                                          means::MeanKind::parse(a.n), iv, a.tol);
    } else if (!a.pq.empty()) {
        v = convexity::criterion_check(f, parse_pq(a.pq), iv, a.tol);
    } else {
        v = convexity::nine_case_check(f, means::MeanKind::parse(a.m),
                                       means::MeanKind::parse(a.n), iv, a.tol);
    }
    if (a.format == "plain") {
        out << "outcome: " << report_io::outcome_str(v.outcome) << "\n";
        out << "min_margin: " << format17(v.min_margin) << "\n";
        out << "samples_used: " << v.samples_used << "\n";
        for (const auto& w : v.witnesses) {
            out << "witness: x=" << format17(w.x) << " y=" << format17(w.y)
                << " lhs=" << format17(w.lhs) << " rhs=" << format17(w.rhs)
                << " margin=" << format17(w.margin) << "\n";
        }
    } else {
        out << report_io::to_json(v).dump(2) << "\n";
    }
    switch (v.outcome) {
        case convexity::Outcome::ConvexHolds:
        case convexity::Outcome::ConcaveHolds:
        case convexity::Outcome::BothHold:
            return 0;
        case convexity::Outcome::NeitherHolds:
            return 1;
        case convexity::Outcome::Inconclusive:
            return 2;
    }
    return 2;
}

struct VerifyArgs {
    std::string suite;
    std::string f;
    double p = 1.0;
    std::string profile;
    long long trials = 0;  // 0: suite default
    std::uint64_t seed = 0;
    double tol = 1e-9;
    double quad_rel = 1e-10;
    double quad_abs = 1e-12;
    double lo = 0.0;
    double hi = 0.0;
    std::string format = "json";
};

bool suite_matches(const std::string& suite, const std::string& id) {
    if (suite == "all") return true;
    if (suite == "ebanks") return id.rfind("ebanks ", 0) == 0;
    if (suite == "identric") return id.rfind("identric ", 0) == 0;
    if (suite == "alzer") return id.rfind("alzer part=", 0) == 0;
    if (suite == "chain") return id == "mean-chain";
    if (suite == "alzer-mono") return id == "alzer-monotone";
    if (suite == "chebyshev") return id == "chebyshev";
    if (suite == "jensen") return id == "jensen";
    if (suite == "ll-al") return id.rfind("ll-al ", 0) == 0;
    return false;
}

int verify_exit(const std::vector<CheckReport>& reports) {
    bool any_err = false, any_fail = false, any_unmet = false, any_inconclusive = false;
    for (const auto& rep : reports) {
        if (!rep.errors.empty()) any_err = true;
        for (const auto& pc : rep.preconditions)
            if (pc.satisfied != inequalities::Satisfied::Yes) any_unmet = true;
        for (const auto& row : rep.inequalities) {
            if (row.failures > 0) any_fail = true;
            if (row.pairs_tested > 0 && row.inconclusive == row.pairs_tested)
                any_inconclusive = true;
        }
    }
    if (any_err) return 70;
    if (any_fail) return 1;
    if (any_unmet || any_inconclusive) return 2;
    return 0;
}

int verify_cmd(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    SamplePlan plan;
    plan.interval.seed = a.seed;
    plan.interval.lo = a.lo;
    plan.interval.hi = a.hi;
    plan.interval.samples = static_cast<int>(a.trials);
    plan.tol = {a.tol, a.quad_rel, a.quad_abs};

    const bool takes_f =
        a.suite == "ebanks" || a.suite == "identric" || a.suite == "alzer" || a.suite == "ll-al";
    std::vector<CheckReport> reports;
    if (!a.f.empty() && takes_f) {
        const auto f = expr::FunctionSpec::parsed(a.f);
        if (a.suite == "ebanks") {
            reports.push_back(inequalities::ebanks_suite(f, plan));
        } else if (a.suite == "identric") {
            const std::string profile = a.profile.empty() ? "lower" : a.profile;
            if (profile != "lower" && profile != "upper") {
                err << "error: --profile for the identric suite must be lower or upper\n";
                return 64;
            }
            reports.push_back(inequalities::identric_suite(
                f, profile == "lower" ? inequalities::Profile::Lower : inequalities::Profile::Upper,
                plan));
        } else if (a.suite == "alzer") {
            inequalities::Part part =
                a.p <= 1.0 ? inequalities::Part::One : inequalities::Part::Two;
            if (a.profile == "one") {
                part = inequalities::Part::One;
            } else if (a.profile == "two") {
                part = inequalities::Part::Two;
            } else if (!a.profile.empty()) {
                err << "error: --profile for the alzer suite must be one or two\n";
                return 64;
            }
            reports.push_back(inequalities::alzer_suite(f, a.p, part, plan));
        } else {
            reports.push_back(inequalities::ll_al_suite(f, plan));
        }
    } else {
        if (!a.f.empty()) err << "note: --f is ignored for suite '" << a.suite << "'\n";
        std::vector<inequalities::CatalogEntry> entries;
        for (auto& entry : inequalities::builtin_catalog())
            if (suite_matches(a.suite, entry.id)) entries.push_back(std::move(entry));
        reports = inequalities::audit_all(entries, plan);
    }

    if (a.format == "csv") {
        out << report_io::write_csv(reports);
    } else if (a.format == "plain") {
        out << report_io::write_plain(reports);
    } else {
        out << report_io::write_json(reports);
    }
    return verify_exit(reports);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Bivariate means, MN-convexity checks, and inequality audits"};
    app.name("mnconvex");
    app.require_subcommand(1);

    auto* mean = app.add_subcommand("mean", "Evaluate bivariate means");
    mean->require_subcommand(1);

    std::string me_kind;
    double me_x = 0.0, me_y = 0.0;
    auto* mean_eval = mean->add_subcommand("eval", "Print one mean value");
    mean_eval->add_option("--kind", me_kind, "A|G|H|L|I|E|J:<p>|M:<t>")->required();
    mean_eval->add_option("--x", me_x)->required();
    mean_eval->add_option("--y", me_y)->required();

    std::string mt_kinds, mt_pairs, mt_format = "csv";
    auto* mean_table = mean->add_subcommand("table", "Tabulate means over pairs");
    mean_table->add_option("--kinds", mt_kinds, "comma-separated mean kinds")->required();
    mean_table
        ->add_option("--pairs", mt_pairs,
                     "file of 'x y' lines ('#' comments) or inline 'x y; x y'")
        ->required();
    mean_table->add_option("--format", mt_format)->check(CLI::IsMember({"csv", "json"}));

    ConvexityArgs ca;
    auto* conv = app.add_subcommand("convexity", "Classify MN-convexity of f");
    conv->add_option("--f", ca.f, "expression in x, e.g. \"exp(x^2)\"")->required();
    conv->add_option("--m", ca.m, "argument-side mean letter (A|G|H)");
    conv->add_option("--n", ca.n, "value-side mean letter (A|G|H)");
    conv->add_option("--pq", ca.pq, "power-mean exponents <p>,<q> (overrides --m/--n)");
    conv->add_option("--method", ca.method)->check(CLI::IsMember({"criterion", "definitional"}));
    conv->add_option("--lo", ca.lo);
    conv->add_option("--hi", ca.hi);
    conv->add_option("--samples", ca.samples);
    conv->add_option("--seed", ca.seed);
    conv->add_option("--tol", ca.tol);
    conv->add_option("--sampling", ca.sampling)->check(CLI::IsMember({"log", "uniform"}));
    conv->add_option("--format", ca.format)->check(CLI::IsMember({"json", "plain"}));

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Audit inequality families");
    verify->add_option("--suite", va.suite)
        ->required()
        ->check(CLI::IsMember({"ebanks", "identric", "alzer", "chebyshev", "jensen", "chain",
                               "alzer-mono", "ll-al", "all"}));
    verify->add_option("--f", va.f, "expression in x (ebanks/identric/alzer/ll-al suites)");
    verify->add_option("--p", va.p, "Alzer mean parameter");
    verify->add_option("--profile", va.profile)
        ->check(CLI::IsMember({"lower", "upper", "one", "two"}));
    verify->add_option("--trials", va.trials, "sampled pairs (0: suite default)");
    verify->add_option("--seed", va.seed);
    verify->add_option("--tol", va.tol, "normalized equality tolerance");
    verify->add_option("--quad-rel", va.quad_rel);
    verify->add_option("--quad-abs", va.quad_abs);
    auto* vlo = verify->add_option("--lo", va.lo, "window override (with --hi)");
    auto* vhi = verify->add_option("--hi", va.hi, "window override (with --lo)");
    vlo->needs(vhi);
    vhi->needs(vlo);
    verify->add_option("--format", va.format)->check(CLI::IsMember({"json", "csv", "plain"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 64;
    }

    try {
        if (mean_eval->parsed()) return mean_eval_cmd(me_kind, me_x, me_y, out);
        if (mean_table->parsed()) return mean_table_cmd(mt_kinds, mt_pairs, mt_format, out);
        if (conv->parsed()) return convexity_cmd(ca, out);
        return verify_cmd(va, out, err);
    } catch (const parse_error& e) {
        err << "error: " << e.what() << "\n";
        return 65;
    } catch (const precondition_error& e) {
        err << "error: " << e.what() << "\n";
        return 65;
    } catch (const eval_error& e) {
        err << "error: " << e.what() << "\n";
        return 70;
    } catch (const quad_error& e) {
        err << "error: " << e.what() << "\n";
        return 70;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 70;
    }
}

}  // namespace mnconvex::cli
