#include "kifsim/microworld.hpp"

#include <atomic>

namespace kifsim {

namespace {

std::atomic<int> snapshotSeq{0};

kif::Term instance_fact(TermId entity, TermId cls) {
    return FactStore::triple(TermId("instance"), entity, cls);
}

}  // namespace

Microworld::Microworld(std::string id, const KnowledgeBase& kb)
    : id_(std::move(id)), kb_(&kb) {
    TermId worldClass("Microworld");
    if (kb_->is_class(worldClass)) {
        TermId self("thisMicroworld");
        entityClasses_[self].insert(worldClass);
        store_.add(instance_fact(self, worldClass), Provenance::Explicit);
    }
}

void Microworld::add_region(TermId region) { regions_.insert(region); }

void Microworld::instantiate(TermId entity, TermId cls, TermId region) {
    if (has_entity(entity)) {
        throw WorldError(WorldError::Kind::DuplicateEntity,
                         entity.str() + " already exists in " + id_);
    }
    if (!kb_->is_class(cls)) {
        throw WorldError(WorldError::Kind::UnknownClass,
                         cls.str() + " is not a known class");
    }
    if (!has_region(region)) {
        throw WorldError(WorldError::Kind::UnknownRegion,
                         region.str() + " is not a region of " + id_);
    }
    entityClasses_[entity].insert(cls);
    entityRegion_.insert_or_assign(entity, region);
    store_.add(instance_fact(entity, cls), Provenance::Explicit);
}

void Microworld::instantiate_unplaced(TermId entity, TermId cls) {
    if (has_entity(entity)) {
        throw WorldError(WorldError::Kind::DuplicateEntity,
                         entity.str() + " already exists in " + id_);
    }
    if (!kb_->is_class(cls)) {
        throw WorldError(WorldError::Kind::UnknownClass,
                         cls.str() + " is not a known class");
    }
    entityClasses_[entity].insert(cls);
    store_.add(instance_fact(entity, cls), Provenance::Explicit);
}

void Microworld::attach_part(TermId part, TermId whole) {
    if (!has_entity(part)) {
        throw WorldError(WorldError::Kind::UnknownEntity, part.str() + " is not an entity");
    }
    if (!has_entity(whole)) {
        throw WorldError(WorldError::Kind::UnknownEntity, whole.str() + " is not an entity");
    }
    assemblies_[whole].insert(part);
    connect(TermId("part"), part, whole);
}

void Microworld::move(TermId entity, TermId region) {
    if (!has_entity(entity)) {
        throw WorldError(WorldError::Kind::UnknownEntity, entity.str() + " is not an entity");
    }
    if (!has_region(region)) {
        throw WorldError(WorldError::Kind::UnknownRegion,
                         region.str() + " is not a region of " + id_);
    }
    entityRegion_.insert_or_assign(entity, region);
    auto it = assemblies_.find(entity);
    if (it == assemblies_.end()) return;
    for (TermId part : it->second) move(part, region);
}

TermId Microworld::region_of(TermId entity) const {
    auto it = entityRegion_.find(entity);
    if (it == entityRegion_.end()) {
        throw WorldError(WorldError::Kind::UnknownEntity,
                         entity.str() + " has no region in " + id_);
    }
    return it->second;
}

void Microworld::set_resource(TermId name, int amount) {
    if (amount < 0) {
        throw WorldError(WorldError::Kind::InsufficientResource,
                         "cannot set " + name.str() + " to " + std::to_string(amount));
    }
    resources_.insert_or_assign(name, amount);
}

int Microworld::resource(TermId name) const {
    auto it = resources_.find(name);
    return it == resources_.end() ? 0 : it->second;
}

void Microworld::adjust_resource(TermId name, int delta) {
    int next = resource(name) + delta;
    if (next < 0) {
        throw WorldError(WorldError::Kind::InsufficientResource,
                         name.str() + " would drop to " + std::to_string(next));
    }
    resources_.insert_or_assign(name, next);
}

void Microworld::check_fact_domains(const kif::Term& fact) const {
    DomainCheckResult result = kb_->check_domains(fact, &entityClasses_);
    if (result.ok()) return;
    const DomainViolation& v = result.violations.front();
    throw WorldError(WorldError::Kind::DomainViolation,
                     "argument " + std::to_string(v.position) + " of " + v.predicate.str() +
                         " should be " + v.expected.str() + ", got " + v.actual + " in " +
                         kif::print_term(fact));
}

void Microworld::connect(TermId pred, TermId subj, TermId obj) {
    assert_fact(FactStore::triple(pred, subj, obj));
}

void Microworld::disconnect(TermId pred, TermId subj, TermId obj) {
    retract_fact(FactStore::triple(pred, subj, obj));
}

void Microworld::assert_fact(const kif::Term& fact) {
    check_fact_domains(fact);
    store_.add(fact, Provenance::Explicit);
}

void Microworld::retract_fact(const kif::Term& fact) {
    auto provenance = store_.provenance_of(fact);
    if (!provenance) {
        throw WorldError(WorldError::Kind::MissingTriple,
                         kif::print_term(fact) + " is not asserted");
    }
    if (*provenance == Provenance::Inferred) {
        throw WorldError(WorldError::Kind::CannotRemoveInferred,
                         kif::print_term(fact) + " was inferred and cannot be retracted");
    }
    store_.remove(fact);
}

Microworld Microworld::snapshot() const {
    Microworld copy = *this;
    copy.label_ = SnapshotLabel{tick_, ++snapshotSeq};
    return copy;
}

bool Microworld::same_state(const Microworld& other) const {
    return id_ == other.id_ && tick_ == other.tick_ && regions_ == other.regions_ &&
           entityRegion_ == other.entityRegion_ && entityClasses_ == other.entityClasses_ &&
           assemblies_ == other.assemblies_ && boundary_ == other.boundary_ &&
           resources_ == other.resources_ && store_ == other.store_ &&
           intervals_ == other.intervals_;
}

}  // namespace kifsim
