#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kifsim/errors.hpp"
#include "kifsim/kif.hpp"
#include "kifsim/rules_types.hpp"
#include "kifsim/term_id.hpp"

namespace kifsim {

// Predicate argument-type declarations, collected from (domain P n C)
// axioms. Positions are 1-based; gaps are permitted mid-load.
struct PredicateDecl {
    TermId name;
    int arity = 0;  // highest declared position
    std::map<int, TermId> domains;

    bool operator==(const PredicateDecl&) const = default;
};

// Declared as disjoint and exhaustive over its attribute instances.
struct Partition {
    TermId parentClass;
    std::vector<TermId> members;
    bool disjoint = true;
    bool exhaustive = true;

    bool operator==(const Partition&) const = default;
};

struct DomainViolation {
    TermId predicate;
    int position = 0;  // 1-based argument index
    TermId expected;
    std::string actual;  // description of the offending argument
    kif::Term fact = kif::Term::atom("");
};

struct DomainCheckResult {
    std::vector<DomainViolation> violations;
    bool undeclaredPredicate = false;
    bool ok() const { return violations.empty(); }
};

using InstanceMap = std::map<TermId, std::set<TermId>>;

// Loaded ontology: taxonomy, instances, predicate declarations,
// partitions, rules, and the ground facts seen along the way. Built
// single-writer during load, then read-only.
class KnowledgeBase {
public:
    void load_axioms(const std::vector<kif::Term>& forms);
    void load_file(const std::string& path);

    // Reflexive-transitive subclass reachability. Throws QueryError for
    // terms the kb has never seen.
    bool is_subclass(TermId a, TermId b) const;

    // True when some asserted class of e (plus extras, if given) is a
    // subclass of c. Throws QueryError when e has no class assertions.
    bool is_instance_of(TermId e, TermId c) const;
    bool is_instance_of(TermId e, TermId c, const InstanceMap* extra) const;

    // Checks each declared argument position of a ground fact. Facts
    // whose predicate carries no declaration pass with a warning flag.
    // extra supplies instance assertions beyond the kb's own (e.g. the
    // entities of a live microworld).
    DomainCheckResult check_domains(const kif::Term& fact) const;
    DomainCheckResult check_domains(const kif::Term& fact, const InstanceMap* extra) const;

    // Members of the partition declared on class c; throws QueryError
    // (NoPartition) when c has none.
    const std::vector<TermId>& partition_members(TermId c) const;

    bool knows(TermId t) const { return known_.count(t) > 0; }
    bool is_class(TermId t) const { return classes_.count(t) > 0; }

    const std::map<TermId, std::set<TermId>>& subclass_edges() const { return subclassEdges_; }
    const InstanceMap& instances() const { return instanceOf_; }
    const std::map<TermId, PredicateDecl>& predicates() const { return predicates_; }
    const std::map<TermId, Partition>& partitions() const { return partitions_; }
    const std::vector<rules::Rule>& rules() const { return rules_; }
    const std::map<TermId, std::string>& documentation() const { return documentation_; }
    const std::vector<kif::Term>& ground_facts() const { return groundFacts_; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    const std::set<TermId>& classes() const { return classes_; }

    bool operator==(const KnowledgeBase& other) const;

private:
    void load_subclass(const kif::Term& form);
    void load_instance(const kif::Term& form);
    void load_domain(const kif::Term& form);
    void load_partition(const kif::Term& form);
    void load_documentation(const kif::Term& form);
    void load_subrelation(const kif::Term& form);
    void add_ground_fact(const kif::Term& form);
    void add_rule(rules::Rule rule);
    void warn(const std::string& message);
    bool reaches(TermId from, TermId to, std::vector<TermId>* path = nullptr) const;

    std::map<TermId, std::set<TermId>> subclassEdges_;  // child -> direct parents
    InstanceMap instanceOf_;
    std::map<TermId, PredicateDecl> predicates_;
    std::map<TermId, Partition> partitions_;
    std::map<TermId, TermId> subrelations_;  // parsed and stored, unused
    std::vector<rules::Rule> rules_;
    std::set<std::string> ruleKeys_;  // canonical rule text, for idempotent reload
    std::map<TermId, std::string> documentation_;
    std::vector<kif::Term> groundFacts_;
    std::set<std::string> groundFactKeys_;
    std::vector<std::string> warnings_;
    std::set<std::string> warningKeys_;
    std::set<TermId> known_;
    std::set<TermId> classes_;
};

}  // namespace kifsim
