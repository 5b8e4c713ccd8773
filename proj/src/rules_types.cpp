#include "kifsim/rules_types.hpp"

#include <set>

namespace kifsim::rules {

namespace {

using kif::Term;

bool is_operator(const std::string& op) {
    return op == "and" || op == "or" || op == "not" || op == "=>" || op == "<=>" ||
           op == "exists" || op == "forall";
}

bool is_conjunction(const Term& t) { return t.is_compound() && t.head().is_atom("and"); }

// No operator may appear anywhere inside a rule sentence: negation,
// disjunction, quantifiers, and nested implications are all rejected.
void reject_nested_operators(const Term& t, const std::string& role, kif::SourceSpan origin) {
    if (t.is_compound()) {
        if (t.head().is_atom() && is_operator(t.head().text())) {
            throw LoadError(LoadError::Kind::UnsupportedRuleForm,
                            "operator nested in rule " + role + ": " + kif::print_term(t), origin);
        }
        for (const Term& e : t.elements()) reject_nested_operators(e, role, origin);
    }
}

// A rule sentence is a compound with a non-operator atom head.
void require_sentence(const Term& t, const std::string& role, kif::SourceSpan origin) {
    if (!t.is_compound() || !t.head().is_atom() || is_operator(t.head().text())) {
        throw LoadError(LoadError::Kind::UnsupportedRuleForm,
                        "unsupported rule " + role + ": " + kif::print_term(t), origin);
    }
    for (const Term& e : t.elements()) reject_nested_operators(e, role, origin);
}

void collect_variables(const Term& t, std::set<std::string>& out) {
    if (t.is_variable()) {
        out.insert(t.text());
    } else if (t.is_compound()) {
        for (const Term& e : t.elements()) collect_variables(e, out);
    }
}

}  // namespace

Rule compile_rule(const Term& implication, std::string name) {
    kif::SourceSpan origin = implication.span();
    if (kif::classify(implication) != kif::FormulaKind::Implication) {
        throw LoadError(LoadError::Kind::UnsupportedRuleForm,
                        "not an implication: " + kif::print_term(implication), origin);
    }
    const Term& antecedent = implication.elements()[1];
    const Term& consequent = implication.elements()[2];

    Rule rule;
    rule.name = std::move(name);
    rule.origin = origin;

    if (is_conjunction(antecedent)) {
        for (std::size_t i = 1; i < antecedent.elements().size(); ++i) {
            const Term& pattern = antecedent.elements()[i];
            require_sentence(pattern, "antecedent", origin);
            rule.antecedent.push_back(pattern);
        }
    } else {
        require_sentence(antecedent, "antecedent", origin);
        rule.antecedent.push_back(antecedent);
    }

    const Term* body = &consequent;
    if (kif::classify(consequent) == kif::FormulaKind::Existential) {
        for (const Term& v : consequent.elements()[1].elements()) {
            rule.existentials.push_back(v.text());
        }
        body = &consequent.elements()[2];
    }
    if (is_conjunction(*body)) {
        for (std::size_t i = 1; i < body->elements().size(); ++i) {
            const Term& tmpl = body->elements()[i];
            require_sentence(tmpl, "consequent", origin);
            rule.consequent.push_back(tmpl);
        }
    } else {
        require_sentence(*body, "consequent", origin);
        rule.consequent.push_back(*body);
    }

    if (rule.antecedent.empty() || rule.consequent.empty()) {
        throw LoadError(LoadError::Kind::UnsupportedRuleForm,
                        "rule with empty antecedent or consequent: " + kif::print_term(implication),
                        origin);
    }

    std::set<std::string> bound;
    for (const Term& pattern : rule.antecedent) collect_variables(pattern, bound);
    bound.insert(rule.existentials.begin(), rule.existentials.end());
    std::set<std::string> used;
    for (const Term& tmpl : rule.consequent) collect_variables(tmpl, used);
    for (const std::string& v : used) {
        if (bound.count(v) == 0) {
            throw LoadError(LoadError::Kind::UnsupportedRuleForm,
                            "consequent variable ?" + v + " is neither bound nor existential",
                            origin);
        }
    }
    return rule;
}

kif::Term rule_to_term(const Rule& rule) {
    auto conjoin = [](const std::vector<Term>& sentences) {
        if (sentences.size() == 1) return sentences.front();
        std::vector<Term> elements;
        elements.push_back(Term::atom("and"));
        elements.insert(elements.end(), sentences.begin(), sentences.end());
        return Term::compound(std::move(elements));
    };
    Term antecedent = conjoin(rule.antecedent);
    Term body = conjoin(rule.consequent);
    if (!rule.existentials.empty()) {
        std::vector<Term> vars;
        for (const std::string& v : rule.existentials) vars.push_back(Term::variable(v));
        body = Term::compound({Term::atom("exists"), Term::compound(std::move(vars)), body});
    }
    return Term::compound({Term::atom("=>"), std::move(antecedent), std::move(body)});
}

std::string Rule::key() const { return kif::print_term(rule_to_term(*this)); }

}  // namespace kifsim::rules
