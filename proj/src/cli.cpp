#include "qmult/cli.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qmult/eisenstein.hpp"
#include "qmult/engine.hpp"
#include "qmult/families.hpp"
#include "qmult/forms.hpp"
#include "qmult/identities.hpp"
#include "qmult/replay.hpp"

namespace qmult::cli {

namespace {

using nlohmann::ordered_json;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUnexplained = 2;
constexpr int kUsage = 3;
constexpr int kIncomplete = 4;

std::string split_name(SplitType t) {
    switch (t) {
        case SplitType::Inert: return "inert";
        case SplitType::Split: return "split";
        case SplitType::Ramified: return "ramified";
    }
    throw std::logic_error("unreachable");
}

int run_classify(const std::string& form_text, long limit, const EngineConfig& config, bool json,
                 std::ostream& out) {
    const BinaryQuadraticForm form = BinaryQuadraticForm::parse(form_text);
    const SearchReport report = search(form, Int(limit), config);

    if (json) {
        out << report_to_json(report).dump() << "\n";
    } else {
        std::size_t consistent = 0, stuck = 0, open = 0;
        for (const Leaf& leaf : report.leaves) {
            if (leaf.status == BranchStatus::Consistent) ++consistent;
            if (leaf.status == BranchStatus::Stuck) ++stuck;
            if (leaf.status == BranchStatus::Open) ++open;
        }
        out << "form " << form.str() << ", limit " << report.limit << "\n";
        out << "leaves: " << consistent << " consistent, " << stuck << " stuck";
        if (open > 0) out << ", " << open << " unexpanded";
        out << "; contradictions: " << report.contradictions
            << (report.incomplete ? "; INCOMPLETE (caps exhausted)" : "") << "\n";
        for (const Leaf& leaf : report.leaves) {
            out << "leaf " << leaf.id << " [";
            switch (leaf.status) {
                case BranchStatus::Consistent: out << "consistent"; break;
                case BranchStatus::Stuck: out << "stuck"; break;
                case BranchStatus::Open: out << "open"; break;
                case BranchStatus::Contradiction: out << "contradiction"; break;
            }
            out << "] families:";
            if (leaf.families.empty()) out << " (none)";
            for (const auto& f : leaf.families) out << " " << f;
            out << "\n  ";
            bool first = true;
            for (const LeafValue& lv : leaf.values) {
                if (!first) out << " ";
                first = false;
                out << "f(" << lv.prime_power << ")=" << (lv.determined ? rational_str(lv.value) : "free");
            }
            out << "\n";
        }
    }

    if (report.incomplete) return kIncomplete;
    for (const Leaf& leaf : report.leaves) {
        if (leaf.status != BranchStatus::Consistent) return kUnexplained;
        if (leaf.families.empty()) return kUnexplained;
    }
    return kOk;
}

int run_verify(const std::string& form_text, const std::string& family_text, long bound, bool json,
               std::ostream& out) {
    const BinaryQuadraticForm form = BinaryQuadraticForm::parse(form_text);
    const Family family = Family::parse(family_text);
    const CheckOutcome outcome = verify_family(family, form, Int(bound));

    if (json) {
        ordered_json j;
        j["form"] = form.str();
        j["family"] = family.spec_string();
        j["bound"] = bound;
        j["pass"] = outcome.pass;
        if (!outcome.pass) j["witness"] = {outcome.witness->first.str(), outcome.witness->second.str()};
        out << j.dump() << "\n";
    } else if (outcome.pass) {
        out << "PASS " << family.spec_string() << " commutes with " << form.str() << " for x,y <= "
            << bound << "\n";
    } else {
        const Int x = outcome.witness->first, y = outcome.witness->second;
        const Int n = form.evaluate(x, y);
        out << "FAIL at (" << x << "," << y << "): f(" << n << ") = " << rational_str(family.value(n))
            << " but Q(f(" << x << "),f(" << y << ")) = "
            << rational_str(Rational(form.a) * family.value(x) * family.value(x) +
                            Rational(form.b) * family.value(x) * family.value(y) +
                            Rational(form.c) * family.value(y) * family.value(y))
            << "\n";
    }
    return outcome.pass ? kOk : kCheckFailed;
}

int run_replay(int theorem, bool json, std::ostream& out, std::ostream& err) {
    try {
        std::vector<ReplayRow> rows;
        ordered_json extra;
        if (theorem == 1) {
            const Theorem1Result result = replay_theorem1();
            rows = result.rows;
            ordered_json values = ordered_json::object();
            for (const auto& [n, v] : result.values) values["f(" + n.str() + ")"] = rational_str(v);
            extra["values"] = std::move(values);
        } else {
            const Theorem2Result result = replay_theorem2();
            rows = result.rows;
            ordered_json cases = ordered_json::array();
            for (const auto& c : result.cases) {
                cases.push_back({{"f(2)", rational_str(c.f2)},
                                 {"f(3)", rational_str(c.f3)},
                                 {"f(4)", rational_str(c.f4)},
                                 {"f(6)", rational_str(c.f6)},
                                 {"f(7)", rational_str(c.f7)}});
            }
            extra["cases"] = std::move(cases);
        }
        if (json) {
            ordered_json j;
            j["theorem"] = theorem;
            ordered_json jrows = ordered_json::array();
            for (const auto& row : rows)
                jrows.push_back({{"step", row.step}, {"detail", row.detail}, {"conclusion", row.conclusion}});
            j["rows"] = std::move(jrows);
            for (auto& [k, v] : extra.items()) j[k] = v;
            out << j.dump() << "\n";
        } else {
            for (const auto& row : rows) {
                out << row.step;
                if (!row.detail.empty()) out << "  |  " << row.detail;
                out << "  =>  " << row.conclusion << "\n";
            }
        }
        return kOk;
    } catch (const ReplayError& e) {
        err << "replay failed at step " << e.step() << ": " << e.what() << "\n";
        return kCheckFailed;
    }
}

int run_identities(long kmax, bool json, std::ostream& out, std::ostream& err) {
    const auto& pairs = induction_identities();
    ordered_json jpairs = ordered_json::array();
    bool ok = true;
    for (const auto& pair : pairs) {
        const auto check = check_identity(pair);
        std::string roots_text = "-";
        if (check.pass) {
            const auto roots = vieta_roots(pair);
            roots_text = roots.r1.str() + " or " + roots.r2.str();
        } else {
            ok = false;
        }
        if (json) {
            jpairs.push_back({{"name", pair.name},
                              {"pass", check.pass},
                              {"threshold", pair.k0.str()},
                              {"roots", roots_text}});
        } else {
            out << pair.name << ": " << (check.pass ? "holds" : "FAILS") << " for k > " << pair.k0
                << ", candidate values " << roots_text << "\n";
        }
    }
    const auto odd = common_root_unique(pairs[0], pairs[1], 11, Int(kmax));
    const auto even = common_root_unique(pairs[2], pairs[3], 15, Int(kmax));
    if (!odd.pass || !even.pass) ok = false;
    if (json) {
        ordered_json j;
        j["pairs"] = std::move(jpairs);
        j["odd_common_root_unique"] = odd.pass;
        j["even_common_root_unique"] = even.pass;
        j["kmax"] = kmax;
        out << j.dump() << "\n";
    } else {
        out << "odd pairs: unique common value " << (odd.pass ? "confirmed" : "FAILED") << " for 11 <= k <= "
            << kmax << "\n";
        out << "even pairs: unique common value " << (even.pass ? "confirmed" : "FAILED")
            << " for 15 <= k <= " << kmax << "\n";
    }
    if (!ok) err << "identity verification failed\n";
    return ok ? kOk : kCheckFailed;
}

int run_eisenstein(long prime_table, long classify, long representable, bool integers, long inert_check,
                   long bound, bool json, std::ostream& out) {
    ordered_json j;
    if (prime_table > 0) {
        ordered_json rows = ordered_json::array();
        for (const auto p : primes_up_to(static_cast<std::uint64_t>(prime_table) - 1) ) {
            const auto cls = classify_prime(Int(p));
            std::string witness = "-";
            if (cls.witness.has_value()) witness = str(*cls.witness);
            if (json) {
                rows.push_back({{"p", p},
                                {"mod3", p % 3},
                                {"type", split_name(cls.type)},
                                {"witness", witness}});
            } else {
                out << p << "\t" << p % 3 << "\t" << split_name(cls.type) << "\t" << witness << "\n";
            }
        }
        if (json) {
            j["primes"] = std::move(rows);
            out << j.dump() << "\n";
        }
        return kOk;
    }
    if (classify > 0) {
        const auto cls = classify_prime(Int(classify));
        if (json) {
            j["p"] = classify;
            j["type"] = split_name(cls.type);
            if (cls.witness.has_value()) j["witness"] = str(*cls.witness);
            out << j.dump() << "\n";
        } else {
            out << classify << " is " << split_name(cls.type);
            if (cls.witness.has_value()) out << " (norm(" << str(*cls.witness) << ") = " << classify << ")";
            out << "\n";
        }
        return kOk;
    }
    if (representable > 0) {
        const auto witness = representable_as_norm(Int(representable), !integers);
        if (json) {
            j["n"] = representable;
            j["domain"] = integers ? "integers" : "positive";
            j["representable"] = witness.has_value();
            if (witness) j["witness"] = {witness->first.str(), witness->second.str()};
            out << j.dump() << "\n";
        } else if (witness) {
            out << representable << " = Q(" << witness->first << "," << witness->second << ")\n";
        } else {
            out << representable << " is not represented by x^2-xy+y^2\n";
        }
        return kOk;
    }
    if (inert_check > 0) {
        const auto outcome = inert_divisibility_check(Int(inert_check), Int(bound));
        if (json) {
            j["p"] = inert_check;
            j["bound"] = bound;
            j["pass"] = outcome.pass;
            if (!outcome.pass) j["witness"] = {outcome.x.str(), outcome.y.str()};
            out << j.dump() << "\n";
        } else if (outcome.pass) {
            out << "PASS: " << inert_check << " | x^2-xy+y^2 implies " << inert_check << " | x and "
                << inert_check << " | y, for x,y <= " << bound << "\n";
        } else {
            out << "FAIL at (" << outcome.x << "," << outcome.y << ")\n";
        }
        return outcome.pass ? kOk : kCheckFailed;
    }
    throw CLI::ValidationError("eisenstein",
                               "one of --prime-table, --classify, --representable, --inert-check required");
}

int run_represent(const std::string& form_text, long n, bool json, std::ostream& out) {
    const BinaryQuadraticForm form = BinaryQuadraticForm::parse(form_text);
    const auto reps = representations(form, Int(n));
    if (json) {
        ordered_json j = ordered_json::array();
        for (const auto& r : reps) j.push_back({r.x.str(), r.y.str()});
        out << j.dump() << "\n";
    } else if (reps.empty()) {
        out << "none\n";
    } else {
        bool first = true;
        for (const auto& r : reps) {
            if (!first) out << ",";
            first = false;
            out << "(" << r.x << "," << r.y << ")";
        }
        out << "\n";
    }
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"multiplicative functions commuting with binary quadratic forms"};
    app.require_subcommand(1);

    std::string form_text = "1,1,1";
    std::string family_text;
    long limit = 100, bound = 100, kmax = 10000, n = 0;
    int theorem = 1;
    bool json = false;
    EngineConfig config;
    long degree_cap = 16, var_cap = 3, max_depth = 64, max_branches = 10000, max_constraints = 20000,
         threads = 1;

    auto* classify = app.add_subcommand("classify", "search for all commuting functions up to a limit");
    classify->add_option("--form", form_text, "form coefficients a,b,c")->required();
    classify->add_option("--limit", limit, "constraint limit N (default 100)");
    classify->add_option("--threads", threads, "worker threads (output independent of this)");
    classify->add_option("--degree-cap", degree_cap, "polynomial degree cap");
    classify->add_option("--var-cap", var_cap, "per-constraint variable cap");
    classify->add_option("--max-depth", max_depth, "search depth cap");
    classify->add_option("--max-branches", max_branches, "total branch cap");
    classify->add_option("--max-constraints", max_constraints, "per-branch constraint cap");
    classify->add_flag("--json", json, "machine-readable output");

    auto* verify = app.add_subcommand("verify", "check one family against the functional equation");
    verify->add_option("--form", form_text, "form coefficients a,b,c")->required();
    verify->add_option("--family", family_text, "identity | const1 | fp:<p>")->required();
    verify->add_option("--bound", bound, "check all 1 <= x,y <= bound (default 100)");
    verify->add_flag("--json", json, "machine-readable output");

    auto* replay = app.add_subcommand("replay", "re-run a classification derivation step by step");
    replay->add_option("--theorem", theorem, "1 (x^2+xy+y^2) or 2 (x^2-xy+y^2)")
        ->check(CLI::Range(1, 2));
    replay->add_flag("--json", json, "machine-readable output");

    auto* identities = app.add_subcommand("identities", "verify the induction identities and their roots");
    identities->add_option("--kmax", kmax, "upper bound for the common-root scan (default 10000)");
    identities->add_flag("--json", json, "machine-readable output");

    auto* eisenstein = app.add_subcommand("eisenstein", "arithmetic in Z[w], w^2 = -w-1");
    long prime_table = 0, classify_p = 0, representable = 0, inert_check = 0;
    bool integers = false;
    eisenstein->add_option("--prime-table", prime_table, "print splitting data for primes < B");
    eisenstein->add_option("--classify", classify_p, "classify one prime");
    eisenstein->add_option("--representable", representable, "search x^2-xy+y^2 = n");
    eisenstein->add_flag("--integers", integers, "representable: search all integers, not just x,y >= 1");
    eisenstein->add_option("--inert-check", inert_check, "divisibility check for one prime");
    eisenstein->add_option("--bound", bound, "bound for --inert-check (default 100)");
    eisenstein->add_flag("--json", json, "machine-readable output");

    auto* represent = app.add_subcommand("represent", "list all representations n = Q(x,y), x,y >= 1");
    represent->add_option("--form", form_text, "form coefficients a,b,c")->required();
    represent->add_option("--n", n, "target value")->required();
    represent->add_flag("--json", json, "machine-readable output");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return kUsage;
    }

    try {
        if (classify->parsed()) {
            if (degree_cap <= 0 || var_cap <= 0 || max_depth <= 0 || max_branches <= 0 ||
                max_constraints <= 0 || threads <= 0)
                throw std::invalid_argument("caps and thread count must be positive");
            config.degree_cap = static_cast<unsigned>(degree_cap);
            config.var_cap = static_cast<unsigned>(var_cap);
            config.max_depth = static_cast<unsigned>(max_depth);
            config.max_branches = static_cast<std::size_t>(max_branches);
            config.max_constraints = static_cast<std::size_t>(max_constraints);
            config.threads = static_cast<unsigned>(threads);
            return run_classify(form_text, limit, config, json, out);
        }
        if (verify->parsed()) return run_verify(form_text, family_text, bound, json, out);
        if (replay->parsed()) return run_replay(theorem, json, out, err);
        if (identities->parsed()) return run_identities(kmax, json, out, err);
        if (eisenstein->parsed())
            return run_eisenstein(prime_table, classify_p, representable, integers, inert_check, bound,
                                  json, out);
        if (represent->parsed()) return run_represent(form_text, n, json, out);
    } catch (const CLI::ValidationError& e) {
        err << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
    err << "no subcommand given\n";
    return kUsage;
}

}  // namespace qmult::cli
