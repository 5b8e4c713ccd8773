#pragma once

#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "kifsim/fact_store.hpp"
#include "kifsim/kif.hpp"
#include "kifsim/ontology.hpp"
#include "kifsim/rules.hpp"

namespace test_support {

using kifsim::FactStore;
using kifsim::KnowledgeBase;
using kifsim::TermId;
using kifsim::kif::Term;

inline std::string data_dir() { return KIFSIM_TEST_DATA_DIR; }

inline KnowledgeBase load_kb(const std::vector<std::string>& names) {
    KnowledgeBase kb;
    for (const std::string& name : names) kb.load_file(data_dir() + "/" + name);
    return kb;
}

// Subclass oracle: enumerate every simple path upward from a and see
// whether any reaches b. Deliberately naive.
inline bool path_exists(const std::map<TermId, std::set<TermId>>& edges, TermId a, TermId b,
                        std::set<TermId>& visited) {
    if (a == b) return true;
    if (!visited.insert(a).second) return false;
    auto it = edges.find(a);
    if (it != edges.end()) {
        for (TermId parent : it->second) {
            std::set<TermId> branch = visited;  // each path explored independently
            if (path_exists(edges, parent, b, branch)) return true;
        }
    }
    return false;
}

inline bool oracle_subclass(const KnowledgeBase& kb, TermId a, TermId b) {
    std::set<TermId> visited;
    return path_exists(kb.subclass_edges(), a, b, visited);
}

// Match oracle: try every assignment of pattern variables to ground
// terms appearing in the store.
inline void collect_ground_terms(const Term& t, std::vector<Term>& out) {
    bool seen = false;
    for (const Term& g : out) {
        if (g == t) {
            seen = true;
            break;
        }
    }
    if (!seen) out.push_back(t);
    if (t.is_compound()) {
        for (const Term& e : t.elements()) collect_ground_terms(e, out);
    }
}

inline void collect_variables(const Term& t, std::vector<std::string>& out) {
    if (t.is_variable()) {
        for (const std::string& v : out) {
            if (v == t.text()) return;
        }
        out.push_back(t.text());
        return;
    }
    if (t.is_compound()) {
        for (const Term& e : t.elements()) collect_variables(e, out);
    }
}

inline bool oracle_fact_matches(const KnowledgeBase& kb, const Term& ground, const Term& fact) {
    if (ground.is_compound() && ground.arity() == 3 && ground.head().is_atom("instance") &&
        fact.is_compound() && fact.arity() == 3 && fact.head().is_atom("instance") &&
        ground.elements()[2].is_atom() && fact.elements()[2].is_atom()) {
        TermId wanted(ground.elements()[2].text());
        TermId actual(fact.elements()[2].text());
        if (kb.is_class(wanted) && kb.is_class(actual)) {
            return ground.elements()[1] == fact.elements()[1] &&
                   oracle_subclass(kb, actual, wanted);
        }
    }
    return ground == fact;
}

inline std::vector<kifsim::rules::Binding> oracle_match(const std::vector<Term>& patterns,
                                                        const FactStore& store,
                                                        const KnowledgeBase& kb) {
    std::vector<Term> pool;
    for (const auto& [text, entry] : store.entries()) collect_ground_terms(entry.fact, pool);
    std::vector<std::string> vars;
    for (const Term& p : patterns) collect_variables(p, vars);
    if (!vars.empty() && pool.empty()) return {};

    std::vector<kifsim::rules::Binding> found;
    std::vector<std::size_t> choice(vars.size(), 0);
    while (true) {
        kifsim::rules::Binding binding;
        for (std::size_t i = 0; i < vars.size(); ++i) {
            binding.emplace(vars[i], pool[choice[i]]);
        }
        bool all = true;
        for (const Term& p : patterns) {
            Term ground = kifsim::rules::substitute(p, binding);
            bool any = false;
            for (const auto& [text, entry] : store.entries()) {
                if (oracle_fact_matches(kb, ground, entry.fact)) {
                    any = true;
                    break;
                }
            }
            if (!any) {
                all = false;
                break;
            }
        }
        if (all) {
            bool dup = false;
            for (const auto& b : found) {
                if (b == binding) {
                    dup = true;
                    break;
                }
            }
            if (!dup) found.push_back(binding);
        }
        // next assignment
        std::size_t i = 0;
        for (; i < choice.size(); ++i) {
            if (++choice[i] < pool.size()) break;
            choice[i] = 0;
        }
        if (vars.empty() || i == choice.size()) break;
    }
    if (vars.empty()) {
        // only the empty binding was considered; keep it iff it matched
        return found;
    }
    std::sort(found.begin(), found.end(),
              [](const kifsim::rules::Binding& a, const kifsim::rules::Binding& b) {
                  return kifsim::rules::binding_key(a) < kifsim::rules::binding_key(b);
              });
    return found;
}

// Random stores over a small vocabulary, heavy on instance facts so the
// taxonomy path gets exercised.
struct RandomStoreGen {
    std::mt19937 rng;
    std::vector<std::string> entities{"e1", "e2", "e3", "e4"};
    std::vector<std::string> classes;
    std::vector<std::string> preds{"attribute", "part", "agent", "likes"};

    explicit RandomStoreGen(unsigned seed, const KnowledgeBase& kb) : rng(seed) {
        for (TermId cls : kb.classes()) classes.push_back(cls.str());
    }

    std::string pick(const std::vector<std::string>& from) {
        return from[rng() % from.size()];
    }

    FactStore make_store(std::size_t maxFacts) {
        FactStore store;
        std::size_t n = rng() % (maxFacts + 1);
        for (std::size_t i = 0; i < n; ++i) {
            if (rng() % 2 == 0) {
                store.add(Term::compound({Term::atom("instance"), Term::atom(pick(entities)),
                                          Term::atom(pick(classes))}),
                          kifsim::Provenance::Explicit);
            } else {
                store.add(Term::compound({Term::atom(pick(preds)), Term::atom(pick(entities)),
                                          Term::atom(pick(entities))}),
                          kifsim::Provenance::Explicit);
            }
        }
        return store;
    }

    std::vector<Term> make_patterns() {
        std::vector<Term> patterns;
        std::size_t n = 1 + rng() % 2;
        std::vector<std::string> vars{"X", "Y"};
        for (std::size_t i = 0; i < n; ++i) {
            auto arg = [&](std::size_t v) {
                if (rng() % 2 == 0) return Term::variable(vars[v]);
                return Term::atom(pick(entities));
            };
            if (rng() % 2 == 0) {
                patterns.push_back(Term::compound(
                    {Term::atom("instance"), arg(0), Term::atom(pick(classes))}));
            } else {
                patterns.push_back(
                    Term::compound({Term::atom(pick(preds)), arg(0), arg(1)}));
            }
        }
        return patterns;
    }
};

}  // namespace test_support
