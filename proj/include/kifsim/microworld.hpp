#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "kifsim/errors.hpp"
#include "kifsim/fact_store.hpp"
#include "kifsim/kif.hpp"
#include "kifsim/ontology.hpp"
#include "kifsim/rules.hpp"
#include "kifsim/term_id.hpp"

namespace kifsim {

class WorldError : public Error {
public:
    enum class Kind {
        DuplicateEntity,
        UnknownClass,
        UnknownEntity,
        UnknownRegion,
        MissingTriple,
        CannotRemoveInferred,
        InsufficientResource,
        DomainViolation,
    };
    WorldError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// What the modeled system exchanges with its surroundings.
struct SystemBoundary {
    TermId system;
    std::set<TermId> inputs;
    std::set<TermId> outputs;

    bool operator==(const SystemBoundary&) const = default;
};

struct SnapshotLabel {
    int tick = 0;
    int seq = 0;
};

// A bounded, closed-world simulation state: the entities under
// consideration, their regions and part structure, the fact store,
// resource pools, and the clock. Value type; snapshot() is a copy.
class Microworld {
public:
    Microworld(std::string id, const KnowledgeBase& kb);

    const std::string& id() const { return id_; }
    const KnowledgeBase& kb() const { return *kb_; }
    int tick() const { return tick_; }
    void advance_tick() { ++tick_; }

    void add_region(TermId region);
    bool has_region(TermId region) const { return regions_.count(region) > 0; }
    const std::set<TermId>& regions() const { return regions_; }

    // Registers an entity of a known class in a known region and
    // asserts (instance entity cls).
    void instantiate(TermId entity, TermId cls, TermId region);
    // Registers a region-less entity (process occurrences, etc.).
    void instantiate_unplaced(TermId entity, TermId cls);
    bool has_entity(TermId entity) const { return entityClasses_.count(entity) > 0; }
    const InstanceMap& entity_classes() const { return entityClasses_; }

    // Declares part to be a component of whole and asserts the
    // (part part whole) triple. Parts follow the whole between regions.
    void attach_part(TermId part, TermId whole);
    const std::map<TermId, std::set<TermId>>& assemblies() const { return assemblies_; }

    // Moves the entity and, transitively, everything attached to it.
    void move(TermId entity, TermId region);
    TermId region_of(TermId entity) const;

    void set_boundary(SystemBoundary boundary) { boundary_ = std::move(boundary); }
    const std::optional<SystemBoundary>& boundary() const { return boundary_; }

    // Resource pools never go negative. An unset pool reads as zero.
    void set_resource(TermId name, int amount);
    int resource(TermId name) const;
    // Positive delta adds, negative draws down; throws
    // InsufficientResource (without mutating) when it would underflow.
    void adjust_resource(TermId name, int delta);
    const std::map<TermId, int>& resources() const { return resources_; }

    // Explicit triple assertion, domain-checked against the ontology
    // plus this world's entities. Throws DomainViolation.
    void connect(TermId pred, TermId subj, TermId obj);
    // Removes an explicit triple. Throws MissingTriple when absent and
    // CannotRemoveInferred when the fact was derived.
    void disconnect(TermId pred, TermId subj, TermId obj);

    // Same checks for facts that are not plain triples.
    void assert_fact(const kif::Term& fact);
    void retract_fact(const kif::Term& fact);

    FactStore& store() { return store_; }
    const FactStore& store() const { return store_; }

    rules::ProcessIntervals& process_intervals() { return intervals_; }
    const rules::ProcessIntervals& process_intervals() const { return intervals_; }

    // Labeled copy. The label records when the copy was taken and does
    // not participate in state comparison.
    Microworld snapshot() const;
    const SnapshotLabel& label() const { return label_; }

    // Equality of everything except snapshot labels.
    bool same_state(const Microworld& other) const;

private:
    void check_fact_domains(const kif::Term& fact) const;

    std::string id_;
    const KnowledgeBase* kb_;
    int tick_ = 0;
    std::set<TermId> regions_;
    std::map<TermId, TermId> entityRegion_;
    InstanceMap entityClasses_;
    std::map<TermId, std::set<TermId>> assemblies_;  // whole -> direct parts
    std::optional<SystemBoundary> boundary_;
    std::map<TermId, int> resources_;
    FactStore store_;
    rules::ProcessIntervals intervals_;
    SnapshotLabel label_;
};

}  // namespace kifsim
