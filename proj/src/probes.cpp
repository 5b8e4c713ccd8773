#include "kifsim/probes.hpp"

#include <map>
#include <set>

#include "kifsim/rules.hpp"

namespace kifsim {

namespace {

using kif::Term;

void run_partition_probe(const Probe& probe, const FactStore& store, const KnowledgeBase& kb,
                         const InstanceMap& fromStore, int tick,
                         std::vector<ConflictReport>& out) {
    const std::vector<TermId>& members = kb.partition_members(probe.partitionClass);
    std::set<TermId> memberSet(members.begin(), members.end());

    std::map<TermId, std::vector<Term>> held;  // entity -> member attribute facts
    for (const auto& [text, entry] : store.entries()) {
        const Term& fact = entry.fact;
        if (!fact.is_compound() || fact.arity() != 3) continue;
        if (!fact.head().is_atom("attribute")) continue;
        if (!fact.elements()[1].is_atom() || !fact.elements()[2].is_atom()) continue;
        TermId value(fact.elements()[2].text());
        if (memberSet.count(value) == 0) continue;
        held[TermId(fact.elements()[1].text())].push_back(fact);
    }

    for (const auto& [entity, facts] : held) {
        if (facts.size() < 2) continue;
        ConflictReport report;
        report.probe = ProbeKind::PartitionExclusivity;
        report.offendingFacts = facts;
        report.entity = entity;
        report.tick = tick;
        report.message = entity.str() + " holds " + std::to_string(facts.size()) +
                         " members of the " + probe.partitionClass.str() + " partition";
        out.push_back(std::move(report));
    }

    if (probe.applicableClass.empty()) return;
    if (!kb.is_class(probe.applicableClass)) return;

    std::set<TermId> candidates;
    for (const auto& [entity, classes] : fromStore) candidates.insert(entity);
    for (const auto& [entity, classes] : kb.instances()) candidates.insert(entity);
    for (TermId entity : candidates) {
        bool applies = false;
        try {
            applies = kb.is_instance_of(entity, probe.applicableClass, &fromStore);
        } catch (const QueryError&) {
            continue;
        }
        if (!applies) continue;
        auto it = held.find(entity);
        if (it != held.end() && !it->second.empty()) continue;
        ConflictReport report;
        report.probe = ProbeKind::PartitionExclusivity;
        report.entity = entity;
        report.tick = tick;
        report.message = entity.str() + " is a " + probe.applicableClass.str() +
                         " but holds no member of the " + probe.partitionClass.str() +
                         " partition";
        out.push_back(std::move(report));
    }
}

void run_domain_probe(const FactStore& store, const KnowledgeBase& kb,
                      const InstanceMap& fromStore, int tick,
                      std::vector<ConflictReport>& out) {
    for (const auto& [text, entry] : store.entries()) {
        DomainCheckResult result = kb.check_domains(entry.fact, &fromStore);
        if (result.ok()) continue;
        ConflictReport report;
        report.probe = ProbeKind::DomainConformance;
        report.offendingFacts.push_back(entry.fact);
        report.tick = tick;
        std::string detail;
        for (const DomainViolation& v : result.violations) {
            if (!detail.empty()) detail += "; ";
            detail += "argument " + std::to_string(v.position) + " of " + v.predicate.str() +
                      " should be " + v.expected.str() + ", got " + v.actual;
        }
        report.message = text + ": " + detail;
        out.push_back(std::move(report));
    }
}

void run_exclusion_probe(const Probe& probe, const FactStore& store, const KnowledgeBase& kb,
                         int tick, std::vector<ConflictReport>& out) {
    std::vector<Term> patterns{probe.patternA, probe.patternB};
    std::vector<rules::Binding> bindings = rules::match(patterns, store, kb);
    if (bindings.empty()) return;
    ConflictReport report;
    report.probe = ProbeKind::MutualExclusion;
    report.tick = tick;
    for (const Term& p : patterns) {
        report.offendingFacts.push_back(rules::substitute(p, bindings.front()));
    }
    report.message = "mutually exclusive patterns " + kif::print_term(probe.patternA) + " and " +
                     kif::print_term(probe.patternB) + " both hold";
    out.push_back(std::move(report));
}

}  // namespace

std::string to_string(ProbeKind kind) {
    switch (kind) {
        case ProbeKind::PartitionExclusivity: return "PartitionExclusivity";
        case ProbeKind::DomainConformance: return "DomainConformance";
        case ProbeKind::MutualExclusion: return "MutualExclusion";
    }
    return "Unknown";
}

Probe Probe::partition_exclusivity(TermId cls, TermId applicable) {
    Probe probe;
    probe.kind = ProbeKind::PartitionExclusivity;
    probe.partitionClass = cls;
    probe.applicableClass = applicable;
    return probe;
}

Probe Probe::domain_conformance() {
    Probe probe;
    probe.kind = ProbeKind::DomainConformance;
    return probe;
}

Probe Probe::mutual_exclusion(kif::Term a, kif::Term b) {
    Probe probe;
    probe.kind = ProbeKind::MutualExclusion;
    probe.patternA = std::move(a);
    probe.patternB = std::move(b);
    return probe;
}

InstanceMap store_instances(const FactStore& store) {
    InstanceMap out;
    for (const auto& [text, entry] : store.entries()) {
        const Term& fact = entry.fact;
        if (!fact.is_compound() || fact.arity() != 3) continue;
        if (!fact.head().is_atom("instance")) continue;
        if (!fact.elements()[1].is_atom() || !fact.elements()[2].is_atom()) continue;
        out[TermId(fact.elements()[1].text())].insert(TermId(fact.elements()[2].text()));
    }
    return out;
}

std::vector<ConflictReport> detect_conflicts(const std::vector<Probe>& probes,
                                             const FactStore& store, const KnowledgeBase& kb,
                                             int tick) {
    std::vector<ConflictReport> out;
    InstanceMap fromStore = store_instances(store);
    for (const Probe& probe : probes) {
        switch (probe.kind) {
            case ProbeKind::PartitionExclusivity:
                run_partition_probe(probe, store, kb, fromStore, tick, out);
                break;
            case ProbeKind::DomainConformance:
                run_domain_probe(store, kb, fromStore, tick, out);
                break;
            case ProbeKind::MutualExclusion:
                run_exclusion_probe(probe, store, kb, tick, out);
                break;
        }
    }
    return out;
}

}  // namespace kifsim
