#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "qmult/numbers.hpp"

namespace qmult {

// A derivation step whose conclusion was not forced (no solution, several
// solutions, or a missing representation). Carries the step label.
class ReplayError : public std::runtime_error {
public:
    explicit ReplayError(const std::string& step, const std::string& why)
        : std::runtime_error(step + ": " + why), step_(step) {}
    const std::string& step() const { return step_; }

private:
    std::string step_;
};

struct ReplayRow {
    std::string step;
    std::string detail;
    std::string conclusion;
};

struct Theorem1Result {
    std::vector<ReplayRow> rows;
    // f(n) for n = 1..28, in order.
    std::vector<std::pair<Int, Rational>> values;
};

// Re-runs the deduction chain that pins f(n) = n for n <= 28 on
// x^2+xy+y^2: the quadratic-pair eliminations for f(2), f(5), f(8), f(11),
// f(17), f(23) and the direct evaluations in between, asserting every
// intermediate value. Throws ReplayError on the first unforced step.
Theorem1Result replay_theorem1();

struct Theorem2Case {
    Rational f2, f3, f4, f6, f7;
};

struct Theorem2Result {
    std::vector<ReplayRow> rows;
    std::vector<Theorem2Case> cases;  // ascending by f(2)
};

// Re-runs the case analysis for x^2-xy+y^2: the three-way split of f(2)
// from the two expressions for f(7), the even-argument collapse in the
// f(2)=0 case, and the successor condition driving the f(2)=2 chain.
// pattern_limit bounds the finite pattern checks.
Theorem2Result replay_theorem2(const Int& pattern_limit = 100);

}  // namespace qmult
