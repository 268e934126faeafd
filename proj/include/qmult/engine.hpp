#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "qmult/families.hpp"
#include "qmult/forms.hpp"
#include "qmult/multfn.hpp"
#include "qmult/polynomial.hpp"

namespace qmult {

enum class ConstraintStatus { Active, Satisfied, Deferred };

// One polynomial equation "poly = 0" on prime-power values, obtained from a
// representation n = Q(x,y) (value_at(n) - Q(value_at(x), value_at(y))) or
// derived from other constraints during propagation.
struct Constraint {
    Polynomial poly;        // kept fully substituted and normalized
    Representation origin;  // representation that produced it (derived: nearest ancestor)
    ConstraintStatus status = ConstraintStatus::Active;
    bool branchable = true;  // false for cofactors with no rational roots
};

enum class BranchStatus { Open, Consistent, Contradiction, Stuck };

struct EngineConfig {
    unsigned degree_cap = 16;
    unsigned var_cap = 3;  // per-constraint distinct variables
    unsigned max_depth = 64;
    std::size_t max_branches = 10000;
    std::size_t max_constraints = 20000;  // per branch, guards runaway derivation
    unsigned threads = 1;
};

// One node of the search tree. Branches own their state; forking copies it.
struct Branch {
    std::string id = "r";
    PartialMultiplicativeFunction fn;
    std::vector<Constraint> constraints;
    BranchStatus status = BranchStatus::Open;
    bool caps_hit = false;  // ran into max_constraints during propagation

    // Dedup of every constraint polynomial ever present, and resultant pairs
    // already processed (keyed by content so substitution re-enables them).
    std::set<Polynomial> known_polys;
    std::set<std::tuple<Polynomial, Polynomial, VarId>> resultants_done;

    explicit Branch(PartialMultiplicativeFunction f) : fn(std::move(f)) {}
};

// One constraint per representation of every n <= limit, deduplicated by
// canonical polynomial form. Identically-zero equations (such as the one at
// n = 1 for x^2-xy+y^2) appear as born-satisfied constraints.
std::vector<Constraint> compile_constraints(const BinaryQuadraticForm& form, const Int& limit,
                                            const PartialMultiplicativeFunction& fn);

Branch make_root(const BinaryQuadraticForm& form, const Int& limit, const EngineConfig& config);

// Runs the rewrite rules to fixpoint:
//   R1  constant constraints are checked (zero: satisfied, else contradiction)
//   R2  univariate linear constraints are solved and assigned
//   R3  two univariate constraints in one variable collapse to their gcd
//   R4  two constraints sharing a variable are combined by eliminating the
//       largest shared variable via the resultant
// Every assignment is substituted back into all constraints.
void propagate(Branch& branch, const EngineConfig& config);

// Index of the constraint the search would branch on, or npos when the
// branch is terminal (lowest degree first, then smallest origin n).
std::size_t branch_choice(const Branch& branch);

// Children for a univariate constraint of degree >= 2: one per rational root
// (ascending), plus a terminal "stuck candidate" child carrying the
// root-free cofactor when one remains.
std::vector<Branch> branch_on(const Branch& branch, std::size_t constraint_idx);

// Prime-power values (ascending) appearing as variables in the constraints.
std::vector<Int> constrained_variables(const std::vector<Constraint>& constraints,
                                       const PartialMultiplicativeFunction& fn);

struct LeafValue {
    Int prime_power;
    bool determined = false;
    Rational value;  // meaningful when determined
};

struct Leaf {
    std::string id;
    BranchStatus status = BranchStatus::Consistent;
    std::vector<LeafValue> values;       // constrained prime powers, ascending
    std::vector<std::string> families;   // matching known families
};

struct SearchReport {
    BinaryQuadraticForm form;
    Int limit;
    bool incomplete = false;
    std::vector<Leaf> leaves;  // ordered by id
    std::size_t contradictions = 0;
};

// Depth-first in effect, level-synchronous in implementation so the report
// is identical for every thread count.
SearchReport search(const BinaryQuadraticForm& form, const Int& limit, const EngineConfig& config);

enum class MatchResult { Consistent, Inconsistent };

// Consistent iff every determined value of the leaf equals the family's
// value at that argument; free slots impose nothing.
MatchResult match_leaf(const Leaf& leaf, const Family& family);

nlohmann::ordered_json report_to_json(const SearchReport& report);
SearchReport report_from_json(const nlohmann::ordered_json& j);

}  // namespace qmult
