#pragma once

#include <string>
#include <vector>

#include "kifsim/errors.hpp"
#include "kifsim/kif.hpp"

namespace kifsim::rules {

// Forward-chaining rule: when every antecedent pattern matches, the
// consequent templates are instantiated, with existential variables
// resolved through the skolem registry. Invariant: every variable in
// the consequent appears in the antecedent or in existentials.
struct Rule {
    std::string name;
    std::vector<kif::Term> antecedent;
    std::vector<std::string> existentials;
    std::vector<kif::Term> consequent;
    kif::SourceSpan origin;

    // Canonical text of the rule body, independent of the name.
    std::string key() const;
};

class InferenceError : public Error {
public:
    enum class Kind { UnboundVariable, ClosureBudgetExceeded };
    InferenceError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// Compiles an implication term into a Rule. Antecedents may be a single
// pattern or a conjunction; consequents additionally allow one leading
// existential wrapper. Negation, disjunction, and nested implications
// are rejected with LoadError (UnsupportedRuleForm).
Rule compile_rule(const kif::Term& implication, std::string name);

// Reassembles a Rule into its implication term (for printing).
kif::Term rule_to_term(const Rule& rule);

}  // namespace kifsim::rules
