#include "kifsim/rules.hpp"

#include <algorithm>
#include <set>

namespace kifsim::rules {

namespace {

using kif::Term;

bool unify(const Term& pattern, const Term& fact, Binding& binding) {
    if (pattern.is_variable()) {
        auto it = binding.find(pattern.text());
        if (it != binding.end()) return it->second == fact;
        binding.emplace(pattern.text(), fact);
        return true;
    }
    if (pattern.kind() != fact.kind()) return false;
    if (!pattern.is_compound()) return pattern.text() == fact.text();
    if (pattern.elements().size() != fact.elements().size()) return false;
    for (std::size_t i = 0; i < pattern.elements().size(); ++i) {
        if (!unify(pattern.elements()[i], fact.elements()[i], binding)) return false;
    }
    return true;
}

// (instance S C) with C a declared class: S unifies structurally, the
// fact's class must sit at or below C.
bool match_one(const Term& pattern, const Term& fact, const KnowledgeBase& kb,
               Binding& binding) {
    if (pattern.is_compound() && pattern.head().is_atom("instance") && pattern.arity() == 3 &&
        fact.is_compound() && fact.head().is_atom("instance") && fact.arity() == 3) {
        const Term& patternClass = pattern.elements()[2];
        const Term& factClass = fact.elements()[2];
        if (patternClass.is_atom() && factClass.is_atom()) {
            TermId wanted(patternClass.text());
            TermId actual(factClass.text());
            if (kb.is_class(wanted) && kb.is_class(actual)) {
                if (!kb.is_subclass(actual, wanted)) return false;
                return unify(pattern.elements()[1], fact.elements()[1], binding);
            }
        }
    }
    return unify(pattern, fact, binding);
}

void match_rest(const std::vector<Term>& patterns, std::size_t index, const FactStore& facts,
                const KnowledgeBase& kb, Binding& binding, std::vector<Binding>& out) {
    if (index == patterns.size()) {
        out.push_back(binding);
        return;
    }
    for (const auto& [text, entry] : facts.entries()) {
        Binding candidate = binding;
        if (match_one(patterns[index], entry.fact, kb, candidate)) {
            match_rest(patterns, index + 1, facts, kb, candidate, out);
        }
    }
}

bool is_interval_fn(const Term& t, const ProcessIntervals& intervals, int* tick) {
    if (!t.is_compound() || t.arity() != 2) return false;
    bool begin = t.head().is_atom("BeginFn");
    if (!begin && !t.head().is_atom("EndFn")) return false;
    const Term& when = t.elements()[1];
    if (!when.is_compound() || when.arity() != 2 || !when.head().is_atom("WhenFn")) return false;
    const Term& process = when.elements()[1];
    if (!process.is_atom()) return false;
    auto it = intervals.find(TermId(process.text()));
    if (it == intervals.end()) {
        *tick = -1;
        return true;  // shape recognized, interval unknown
    }
    *tick = begin ? it->second.first : it->second.second;
    return true;
}

// Rewrites BeginFn/EndFn-over-WhenFn subterms to interval constants.
// Sets unresolved when a recognized subterm has no recorded interval.
Term resolve_intervals(const Term& t, const ProcessIntervals& intervals, bool& unresolved) {
    int tick = 0;
    if (is_interval_fn(t, intervals, &tick)) {
        if (tick < 0) {
            unresolved = true;
            return t;
        }
        return Term::atom("interval-" + std::to_string(tick), t.span());
    }
    if (!t.is_compound()) return t;
    std::vector<Term> elements;
    elements.reserve(t.elements().size());
    for (const Term& e : t.elements()) {
        elements.push_back(resolve_intervals(e, intervals, unresolved));
    }
    return Term::compound(std::move(elements), t.span());
}

bool find_variable(const Term& t, std::string* name) {
    if (t.is_variable()) {
        *name = t.text();
        return true;
    }
    if (!t.is_compound()) return false;
    for (const Term& e : t.elements()) {
        if (find_variable(e, name)) return true;
    }
    return false;
}

}  // namespace

kif::Term substitute(const kif::Term& tmpl, const Binding& binding) {
    if (tmpl.is_variable()) {
        auto it = binding.find(tmpl.text());
        if (it != binding.end()) return it->second;
        return tmpl;
    }
    if (!tmpl.is_compound()) return tmpl;
    std::vector<Term> elements;
    elements.reserve(tmpl.elements().size());
    for (const Term& e : tmpl.elements()) elements.push_back(substitute(e, binding));
    return Term::compound(std::move(elements), tmpl.span());
}

std::string binding_key(const Binding& binding) {
    std::string key;
    for (const auto& [var, value] : binding) {
        key += var;
        key += '=';
        key += kif::print_term(value);
        key += ';';
    }
    return key;
}

TermId SkolemRegistry::resolve(const std::string& ruleName, const std::string& var,
                               const std::string& bindingKey) {
    std::string key = ruleName + "\x1f" + var + "\x1f" + bindingKey;
    auto it = assigned_.find(key);
    if (it != assigned_.end()) return it->second;
    int n = ++counters_[var];
    TermId id("sk_" + var + "_" + std::to_string(n));
    assigned_.emplace(std::move(key), id);
    return id;
}

std::vector<Binding> match(const std::vector<kif::Term>& patterns, const FactStore& facts,
                           const KnowledgeBase& kb) {
    std::vector<Binding> out;
    Binding empty;
    match_rest(patterns, 0, facts, kb, empty, out);
    std::sort(out.begin(), out.end(), [](const Binding& a, const Binding& b) {
        return binding_key(a) < binding_key(b);
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<kif::Term> apply_rule(const Rule& rule, const Binding& binding,
                                  SkolemRegistry& skolems, const ProcessIntervals& intervals) {
    Binding full = binding;
    std::string key = binding_key(binding);
    for (const std::string& var : rule.existentials) {
        TermId witness = skolems.resolve(rule.name, var, key);
        full.insert_or_assign(var, Term::atom(witness.str()));
    }
    std::vector<Term> out;
    for (const Term& tmpl : rule.consequent) {
        Term fact = substitute(tmpl, full);
        bool unresolved = false;
        fact = resolve_intervals(fact, intervals, unresolved);
        if (unresolved) continue;  // no interval recorded yet for that process
        std::string leftover;
        if (find_variable(fact, &leftover)) {
            throw InferenceError(InferenceError::Kind::UnboundVariable,
                                 "variable ?" + leftover + " unbound applying " + rule.name);
        }
        out.push_back(std::move(fact));
    }
    return out;
}

ClosureResult infer_closure(const FactStore& facts, const KnowledgeBase& kb,
                            SkolemRegistry& skolems, const ProcessIntervals& intervals,
                            int maxRounds) {
    ClosureResult result;
    result.store = facts;
    while (true) {
        std::vector<Term> fresh;
        std::set<std::string> freshKeys;
        for (const Rule& rule : kb.rules()) {
            for (const Binding& binding : match(rule.antecedent, result.store, kb)) {
                for (Term& fact : apply_rule(rule, binding, skolems, intervals)) {
                    if (result.store.contains(fact)) continue;
                    if (freshKeys.insert(kif::print_term(fact)).second) {
                        fresh.push_back(std::move(fact));
                    }
                }
            }
        }
        if (fresh.empty()) break;
        if (result.rounds == maxRounds) {
            throw InferenceError(InferenceError::Kind::ClosureBudgetExceeded,
                                 "closure still productive after " + std::to_string(maxRounds) +
                                     " rounds");
        }
        ++result.rounds;
        for (const Term& fact : fresh) result.store.add(fact, Provenance::Inferred);
    }
    return result;
}

}  // namespace kifsim::rules
