#include "qmult/engine.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace qmult {

namespace {

constexpr std::size_t kNoConstraint = static_cast<std::size_t>(-1);

bool earlier_origin(const Representation& a, const Representation& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

PolyCaps caps_of(const EngineConfig& config) { return {config.degree_cap, config.var_cap}; }

void refresh_status(Constraint& c, const PolyCaps& caps) {
    if (c.poly.is_zero()) {
        c.status = ConstraintStatus::Satisfied;
    } else if (c.poly.is_constant()) {
        // Nonzero constant: caller detects the contradiction.
        c.status = ConstraintStatus::Active;
    } else {
        c.status = c.poly.exceeds(caps) ? ConstraintStatus::Deferred : ConstraintStatus::Active;
    }
}

bool is_false_constant(const Constraint& c) {
    return !c.poly.is_zero() && c.poly.is_constant();
}

}  // namespace

std::vector<Constraint> compile_constraints(const BinaryQuadraticForm& form, const Int& limit,
                                            const PartialMultiplicativeFunction& fn) {
    std::vector<Constraint> out;
    if (limit < 1) return out;
    const PolyCaps caps; // defaults; statuses are refreshed again by make_root
    const RepresentationTable table(form, limit);
    std::set<Polynomial> seen;
    for (const auto& [n, reps] : table.entries()) {
        for (const Representation& rep : reps) {
            const Polynomial lhs = fn.value_at(rep.n);
            const Polynomial rhs = form.evaluate(fn.value_at(rep.x), fn.value_at(rep.y));
            const Polynomial poly = (lhs - rhs).normalized();
            if (!seen.insert(poly).second) continue;
            Constraint c{poly, rep};
            refresh_status(c, caps);
            out.push_back(std::move(c));
        }
    }
    return out;
}

Branch make_root(const BinaryQuadraticForm& form, const Int& limit, const EngineConfig& config) {
    Branch branch{PartialMultiplicativeFunction(limit)};
    branch.constraints = compile_constraints(form, limit, branch.fn);
    const PolyCaps caps = caps_of(config);
    for (auto& c : branch.constraints) {
        refresh_status(c, caps);
        branch.known_polys.insert(c.poly);
        if (is_false_constant(c)) branch.status = BranchStatus::Contradiction;
    }
    return branch;
}

namespace {

// Substitutes a fresh assignment into every constraint. Returns false when a
// constraint collapses to a nonzero constant (contradiction).
bool assign_and_substitute(Branch& branch, VarId var, const Rational& value, const PolyCaps& caps) {
    if (branch.fn.assign(var, value) == PartialMultiplicativeFunction::AssignResult::Contradiction) {
        branch.status = BranchStatus::Contradiction;
        return false;
    }
    for (std::size_t i = 0; i < branch.constraints.size(); ++i) {
        Constraint& c = branch.constraints[i];
        if (c.status == ConstraintStatus::Satisfied) continue;
        if (c.poly.degree_in(var) == 0) continue;
        c.poly = c.poly.substituted(var, value).normalized();
        refresh_status(c, caps);
        if (is_false_constant(c)) {
            branch.status = BranchStatus::Contradiction;
            return false;
        }
    }
    return true;
}

bool solve_linear(Branch& branch, std::size_t idx, const PolyCaps& caps) {
    const Constraint& c = branch.constraints[idx];
    const VarId v = *c.poly.sole_variable();
    const auto coeffs = c.poly.univariate_coefficients(v);
    const Rational value = -coeffs[0] / coeffs[1];
    return assign_and_substitute(branch, v, value, caps);
}

}  // namespace

void propagate(Branch& branch, const EngineConfig& config) {
    if (branch.status != BranchStatus::Open) return;
    const PolyCaps caps = caps_of(config);
    auto& constraints = branch.constraints;

    // Initial sanity pass (compiled sets arrive normalized; children arrive
    // substituted, but a fresh status check is cheap and keeps this safe).
    for (std::size_t i = 0; i < constraints.size(); ++i) {
        refresh_status(constraints[i], caps);
        if (is_false_constant(constraints[i])) {
            branch.status = BranchStatus::Contradiction;
            return;
        }
    }

    const auto active = [&](std::size_t i) { return constraints[i].status == ConstraintStatus::Active; };

    bool fired = true;
    while (fired) {
        fired = false;
        if (constraints.size() > config.max_constraints) {
            branch.caps_hit = true;
            break;
        }

        // R2: univariate linear constraints pin their variable.
        for (std::size_t i = 0; i < constraints.size() && !fired; ++i) {
            if (!active(i)) continue;
            const auto v = constraints[i].poly.sole_variable();
            if (!v || constraints[i].poly.degree_in(*v) != 1) continue;
            if (!solve_linear(branch, i, caps)) return;
            fired = true;
        }
        if (fired) continue;

        // R3: two univariate constraints in one variable collapse to the gcd.
        for (std::size_t i = 0; i < constraints.size() && !fired; ++i) {
            if (!active(i)) continue;
            const auto vi = constraints[i].poly.sole_variable();
            if (!vi) continue;
            for (std::size_t j = i + 1; j < constraints.size() && !fired; ++j) {
                if (!active(j)) continue;
                const auto vj = constraints[j].poly.sole_variable();
                if (!vj || *vj != *vi) continue;

                const Polynomial g = univariate_gcd(constraints[i].poly, constraints[j].poly);
                if (g.is_constant()) {
                    // Coprime constraints on one variable: no common value.
                    branch.status = BranchStatus::Contradiction;
                    return;
                }
                const Polynomial gn = g.normalized();
                const bool keep_i = gn == constraints[i].poly;
                const bool keep_j = !keep_i && gn == constraints[j].poly;
                if (keep_i || keep_j) {
                    Constraint& retired = constraints[keep_i ? j : i];
                    retired.poly = Polynomial();
                    retired.status = ConstraintStatus::Satisfied;
                    fired = true;
                    break;
                }
                const bool branchable = constraints[i].branchable && constraints[j].branchable;
                const Representation origin = earlier_origin(constraints[i].origin, constraints[j].origin)
                                                  ? constraints[i].origin
                                                  : constraints[j].origin;
                for (const std::size_t k : {i, j}) {
                    constraints[k].poly = Polynomial();
                    constraints[k].status = ConstraintStatus::Satisfied;
                }
                if (g.degree_in(*vi) == 1) {
                    const auto coeffs = g.univariate_coefficients(*vi);
                    if (!assign_and_substitute(branch, *vi, -coeffs[0] / coeffs[1], caps)) return;
                } else if (branch.known_polys.insert(gn).second) {
                    constraints.push_back({gn, origin, ConstraintStatus::Active, branchable});
                }
                fired = true;
            }
        }
        if (fired) continue;

        // R4: eliminate the largest shared variable of two small constraints.
        for (std::size_t i = 0; i < constraints.size() && !fired; ++i) {
            if (!active(i)) continue;
            const auto vars_i = constraints[i].poly.variables();
            if (vars_i.empty() || vars_i.size() > config.var_cap) continue;
            for (std::size_t j = i + 1; j < constraints.size() && !fired; ++j) {
                if (!active(j)) continue;
                const auto vars_j = constraints[j].poly.variables();
                if (vars_j.empty() || vars_j.size() > config.var_cap) continue;

                std::vector<VarId> shared;
                std::set_intersection(vars_i.begin(), vars_i.end(), vars_j.begin(), vars_j.end(),
                                      std::back_inserter(shared));
                if (shared.empty()) continue;
                const VarId v = shared.back();

                std::vector<VarId> result_vars;
                std::set_union(vars_i.begin(), vars_i.end(), vars_j.begin(), vars_j.end(),
                               std::back_inserter(result_vars));
                result_vars.erase(std::remove(result_vars.begin(), result_vars.end(), v), result_vars.end());
                if (result_vars.size() > 2) continue;

                const unsigned di = constraints[i].poly.degree_in(v);
                const unsigned dj = constraints[j].poly.degree_in(v);
                if (di < 1 || di > 4 || dj < 1 || dj > 4) continue;

                const auto key = std::make_tuple(constraints[i].poly, constraints[j].poly, v);
                if (!branch.resultants_done.insert(key).second) continue;

                const Polynomial res = resultant(constraints[i].poly, constraints[j].poly, v);
                if (res.is_zero()) continue;  // common factor, no information
                if (res.is_constant()) {
                    branch.status = BranchStatus::Contradiction;
                    return;
                }
                const Polynomial rn = res.normalized();
                if (rn.exceeds(caps)) continue;
                if (!branch.known_polys.insert(rn).second) continue;
                const Representation origin = earlier_origin(constraints[i].origin, constraints[j].origin)
                                                  ? constraints[i].origin
                                                  : constraints[j].origin;
                constraints.push_back({rn, origin, ConstraintStatus::Active, true});
                fired = true;
            }
        }
    }

    const bool all_satisfied = std::all_of(constraints.begin(), constraints.end(), [](const Constraint& c) {
        return c.status == ConstraintStatus::Satisfied;
    });
    if (all_satisfied) branch.status = BranchStatus::Consistent;
}

std::size_t branch_choice(const Branch& branch) {
    std::size_t best = kNoConstraint;
    unsigned best_degree = 0;
    for (std::size_t i = 0; i < branch.constraints.size(); ++i) {
        const Constraint& c = branch.constraints[i];
        if (c.status != ConstraintStatus::Active || !c.branchable) continue;
        const auto v = c.poly.sole_variable();
        if (!v) continue;
        const unsigned degree = c.poly.degree_in(*v);
        if (degree < 2) continue;
        if (best == kNoConstraint || degree < best_degree ||
            (degree == best_degree && earlier_origin(c.origin, branch.constraints[best].origin))) {
            best = i;
            best_degree = degree;
        }
    }
    return best;
}

std::vector<Branch> branch_on(const Branch& branch, std::size_t constraint_idx) {
    const Constraint& chosen = branch.constraints[constraint_idx];
    const VarId v = *chosen.poly.sole_variable();
    const auto roots = rational_roots(chosen.poly);

    Polynomial cofactor = chosen.poly;
    for (const Rational& r : roots) {
        while (cofactor.degree_in(v) > 0) {
            // Divide out each root with multiplicity.
            bool is_root = cofactor.substituted(v, r).is_zero();
            if (!is_root) break;
            cofactor = deflate(cofactor, v, r);
        }
    }

    std::vector<Branch> children;
    unsigned index = 0;
    const auto child_id = [&](unsigned i) {
        char buf[8];
        std::snprintf(buf, sizeof buf, ".%02u", i);
        return branch.id + buf;
    };
    for (const Rational& r : roots) {
        Branch child = branch;
        child.id = child_id(index++);
        child.fn.assign(v, r);
        for (auto& c : child.constraints) {
            if (c.status == ConstraintStatus::Satisfied) continue;
            if (c.poly.degree_in(v) == 0) continue;
            c.poly = c.poly.substituted(v, r).normalized();
        }
        children.push_back(std::move(child));
    }
    if (!cofactor.is_constant()) {
        Branch child = branch;
        child.id = child_id(index++);
        child.constraints[constraint_idx].poly = cofactor.normalized();
        child.constraints[constraint_idx].branchable = false;
        child.known_polys.insert(child.constraints[constraint_idx].poly);
        children.push_back(std::move(child));
    }
    return children;
}

std::vector<Int> constrained_variables(const std::vector<Constraint>& constraints,
                                       const PartialMultiplicativeFunction& fn) {
    std::set<VarId> vars;
    for (const Constraint& c : constraints)
        for (const VarId v : c.poly.variables()) vars.insert(v);
    std::vector<Int> out;
    for (const VarId v : vars) out.push_back(fn.power_of(v).value);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::string status_string(BranchStatus s) {
    switch (s) {
        case BranchStatus::Open: return "open";
        case BranchStatus::Consistent: return "consistent";
        case BranchStatus::Contradiction: return "contradiction";
        case BranchStatus::Stuck: return "stuck";
    }
    throw std::logic_error("unreachable");
}

BranchStatus status_from_string(const std::string& s) {
    if (s == "open") return BranchStatus::Open;
    if (s == "consistent") return BranchStatus::Consistent;
    if (s == "contradiction") return BranchStatus::Contradiction;
    if (s == "stuck") return BranchStatus::Stuck;
    throw std::invalid_argument("unknown branch status: " + s);
}

Leaf make_leaf(const Branch& branch, const std::vector<VarId>& constrained) {
    Leaf leaf;
    leaf.id = branch.id;
    leaf.status = branch.status;
    for (const VarId v : constrained) {
        LeafValue lv;
        lv.prime_power = branch.fn.power_of(v).value;
        const auto& value = branch.fn.value_of(v);
        if (value.has_value()) {
            lv.determined = true;
            lv.value = *value;
        }
        leaf.values.push_back(std::move(lv));
    }
    return leaf;
}

std::vector<Family> family_universe(const Int& limit) {
    std::vector<Family> out{Family::identity(), Family::constant_one()};
    const auto primes = primes_up_to(limit > 2 ? static_cast<std::uint64_t>(limit) : 2);
    for (const auto p : primes) out.push_back(Family::prime_indicator(Int(p)));
    return out;
}

}  // namespace

MatchResult match_leaf(const Leaf& leaf, const Family& family) {
    for (const LeafValue& lv : leaf.values) {
        if (!lv.determined) continue;
        if (family.value(lv.prime_power) != lv.value) return MatchResult::Inconsistent;
    }
    return MatchResult::Consistent;
}

SearchReport search(const BinaryQuadraticForm& form, const Int& limit, const EngineConfig& config) {
    if (!form.is_positive_definite()) throw std::invalid_argument("search requires a positive definite form");
    if (limit < 3) throw std::invalid_argument("search requires limit >= 3");

    SearchReport report;
    report.form = form;
    report.limit = limit;

    Branch root = make_root(form, limit, config);

    // Constrained variables are a property of the compiled system and shared
    // by every branch; capture them before propagation rewrites anything.
    std::vector<VarId> constrained;
    {
        std::set<VarId> vars;
        for (const Constraint& c : root.constraints)
            for (const VarId v : c.poly.variables()) vars.insert(v);
        constrained.assign(vars.begin(), vars.end());
        std::sort(constrained.begin(), constrained.end(), [&](VarId a, VarId b) {
            return root.fn.power_of(a).value < root.fn.power_of(b).value;
        });
    }

    std::size_t branches_created = 1;
    std::vector<Branch> level;
    level.push_back(std::move(root));

    while (!level.empty()) {
        // Propagation is independent per branch; the merge below is ordered,
        // so the report does not depend on the worker schedule.
        const unsigned threads = std::max(1u, config.threads);
        if (threads == 1 || level.size() == 1) {
            for (Branch& b : level) propagate(b, config);
        } else {
            std::atomic<std::size_t> next{0};
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < std::min<std::size_t>(threads, level.size()); ++t) {
                pool.emplace_back([&] {
                    for (std::size_t i = next++; i < level.size(); i = next++) propagate(level[i], config);
                });
            }
            for (auto& th : pool) th.join();
        }

        std::vector<Branch> next_level;
        for (Branch& branch : level) {
            if (branch.caps_hit) report.incomplete = true;
            if (branch.status == BranchStatus::Contradiction) {
                ++report.contradictions;
                continue;
            }
            if (branch.status == BranchStatus::Consistent) {
                report.leaves.push_back(make_leaf(branch, constrained));
                continue;
            }
            const std::size_t idx = branch.caps_hit ? kNoConstraint : branch_choice(branch);
            if (idx == kNoConstraint) {
                branch.status = BranchStatus::Stuck;
                report.leaves.push_back(make_leaf(branch, constrained));
                continue;
            }
            const auto depth = std::count(branch.id.begin(), branch.id.end(), '.');
            if (static_cast<unsigned>(depth) + 1 > config.max_depth) {
                report.incomplete = true;
                report.leaves.push_back(make_leaf(branch, constrained));  // status stays open
                continue;
            }
            auto children = branch_on(branch, idx);
            if (branches_created + children.size() > config.max_branches) {
                report.incomplete = true;
                report.leaves.push_back(make_leaf(branch, constrained));
                continue;
            }
            branches_created += children.size();
            for (auto& child : children) next_level.push_back(std::move(child));
        }
        level = std::move(next_level);
    }

    std::sort(report.leaves.begin(), report.leaves.end(),
              [](const Leaf& a, const Leaf& b) { return a.id < b.id; });

    const auto universe = family_universe(limit);
    for (Leaf& leaf : report.leaves) {
        if (leaf.status == BranchStatus::Contradiction) continue;
        for (const Family& family : universe)
            if (match_leaf(leaf, family) == MatchResult::Consistent)
                leaf.families.push_back(family.spec_string());
    }
    return report;
}

nlohmann::ordered_json report_to_json(const SearchReport& report) {
    nlohmann::ordered_json j;
    j["form"] = report.form.str();
    j["limit"] = static_cast<std::int64_t>(report.limit);
    j["incomplete"] = report.incomplete;
    j["leaves"] = nlohmann::ordered_json::array();
    for (const Leaf& leaf : report.leaves) {
        nlohmann::ordered_json lj;
        lj["id"] = leaf.id;
        lj["status"] = status_string(leaf.status);
        nlohmann::ordered_json values = nlohmann::ordered_json::object();
        for (const LeafValue& lv : leaf.values) {
            const std::string key = "f(" + lv.prime_power.str() + ")";
            values[key] = lv.determined ? rational_str(lv.value) : "free";
        }
        lj["values"] = std::move(values);
        lj["families"] = leaf.families;
        j["leaves"].push_back(std::move(lj));
    }
    j["contradictions"] = report.contradictions;
    return j;
}

SearchReport report_from_json(const nlohmann::ordered_json& j) {
    SearchReport report;
    report.form = BinaryQuadraticForm::parse(j.at("form").get<std::string>());
    report.limit = Int(j.at("limit").get<std::int64_t>());
    report.incomplete = j.at("incomplete").get<bool>();
    report.contradictions = j.at("contradictions").get<std::size_t>();
    for (const auto& lj : j.at("leaves")) {
        Leaf leaf;
        leaf.id = lj.at("id").get<std::string>();
        leaf.status = status_from_string(lj.at("status").get<std::string>());
        for (const auto& [key, val] : lj.at("values").items()) {
            if (key.size() < 4 || key.substr(0, 2) != "f(" || key.back() != ')')
                throw std::invalid_argument("malformed value key: " + key);
            LeafValue lv;
            lv.prime_power = Int(key.substr(2, key.size() - 3));
            const std::string text = val.get<std::string>();
            if (text != "free") {
                lv.determined = true;
                lv.value = parse_rational(text);
            }
            leaf.values.push_back(std::move(lv));
        }
        leaf.families = lj.at("families").get<std::vector<std::string>>();
        report.leaves.push_back(std::move(leaf));
    }
    return report;
}

}  // namespace qmult
