#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kifsim/fact_store.hpp"
#include "kifsim/kif.hpp"
#include "kifsim/ontology.hpp"
#include "kifsim/rules_types.hpp"
#include "kifsim/term_id.hpp"

namespace kifsim::rules {

// Variable name (without the sigil) -> ground term.
using Binding = std::map<std::string, kif::Term>;

// Tick interval [begin, end] recorded for each completed process entity.
using ProcessIntervals = std::map<TermId, std::pair<int, int>>;

// Canonical serialization of a binding, used to key skolem lookups and
// to dedupe match results.
std::string binding_key(const Binding& binding);

// Replaces bound variables in a template; unbound ones pass through.
kif::Term substitute(const kif::Term& tmpl, const Binding& binding);

// Allocates stable witnesses for existential variables. The same
// (rule, variable, binding) always resolves to the same constant, so
// rebuilding a closure never mints fresh entities.
class SkolemRegistry {
public:
    TermId resolve(const std::string& ruleName, const std::string& var,
                   const std::string& bindingKey);
    std::size_t size() const { return assigned_.size(); }

private:
    std::map<std::string, TermId> assigned_;
    std::map<std::string, int> counters_;  // per variable name
};

// All complete bindings of the pattern conjunction against the store,
// deduped and sorted canonically. (instance ?X C) patterns with a
// declared class C match through the taxonomy; everything else unifies
// structurally.
std::vector<Binding> match(const std::vector<kif::Term>& patterns, const FactStore& facts,
                           const KnowledgeBase& kb);

// Instantiates the rule's consequent under a complete binding.
// Existentials resolve through the registry; (BeginFn (WhenFn p)) and
// (EndFn (WhenFn p)) resolve through the interval table, and a
// consequent mentioning a process with no recorded interval is skipped.
// A leftover variable raises InferenceError (UnboundVariable).
std::vector<kif::Term> apply_rule(const Rule& rule, const Binding& binding,
                                  SkolemRegistry& skolems, const ProcessIntervals& intervals);

struct ClosureResult {
    FactStore store;
    int rounds = 0;  // productive rounds taken
};

// Runs every rule to fixpoint over a copy of the store, adding derived
// facts as Inferred. Round-based: each round matches against the facts
// visible at its start. Throws InferenceError (ClosureBudgetExceeded)
// if a productive round would exceed maxRounds.
ClosureResult infer_closure(const FactStore& facts, const KnowledgeBase& kb,
                            SkolemRegistry& skolems, const ProcessIntervals& intervals,
                            int maxRounds = 32);

}  // namespace kifsim::rules
