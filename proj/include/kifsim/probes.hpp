#pragma once

#include <string>
#include <vector>

#include "kifsim/fact_store.hpp"
#include "kifsim/kif.hpp"
#include "kifsim/ontology.hpp"
#include "kifsim/term_id.hpp"

namespace kifsim {

enum class ProbeKind { PartitionExclusivity, DomainConformance, MutualExclusion };

std::string to_string(ProbeKind kind);

// A consistency check evaluated against a closed fact store.
struct Probe {
    ProbeKind kind = ProbeKind::DomainConformance;
    TermId partitionClass;   // PartitionExclusivity
    TermId applicableClass;  // when set, instances of it must carry exactly one member
    kif::Term patternA = kif::Term::atom("");  // MutualExclusion
    kif::Term patternB = kif::Term::atom("");

    // Flags entities holding two or more members of the partition on
    // cls. When applicable is set, instances of applicable holding none
    // are flagged too; otherwise absence is allowed.
    static Probe partition_exclusivity(TermId cls, TermId applicable = TermId());
    static Probe domain_conformance();
    // Flags any joint consistent match of the two patterns.
    static Probe mutual_exclusion(kif::Term a, kif::Term b);
};

struct ConflictReport {
    ProbeKind probe = ProbeKind::DomainConformance;
    std::vector<kif::Term> offendingFacts;
    TermId entity;  // empty when no single entity is implicated
    int tick = 0;
    std::string message;
};

// Evaluates every probe against the store; reports are ordered by
// probe, then entity.
std::vector<ConflictReport> detect_conflicts(const std::vector<Probe>& probes,
                                             const FactStore& store, const KnowledgeBase& kb,
                                             int tick);

// Instance assertions read off the store's own (instance e C) facts,
// for entities the ontology has never heard of.
InstanceMap store_instances(const FactStore& store);

}  // namespace kifsim
