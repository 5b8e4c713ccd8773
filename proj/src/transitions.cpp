#include "kifsim/transitions.hpp"

#include <algorithm>
#include <cstdlib>
#include <iterator>

namespace kifsim {

namespace {

using kif::Term;

std::vector<std::string> explicit_texts(const FactStore& store) {
    std::vector<std::string> out;
    for (const auto& [text, entry] : store.entries()) {
        if (entry.provenance == Provenance::Explicit) out.push_back(text);
    }
    return out;  // map order: already sorted
}

Term holds_during(int tick, const AttributeMark& mark) {
    Term attribute = Term::compound({Term::atom("attribute"), Term::atom(mark.entity.str()),
                                     Term::atom(mark.attribute.str())});
    return Term::compound({Term::atom("holdsDuring"),
                           Term::atom("interval-" + std::to_string(tick)),
                           std::move(attribute)});
}

void bump_counter(Microworld& world, const CounterBump& counter) {
    int current = 0;
    const Term* existing = nullptr;
    for (const auto& [text, entry] : world.store().entries()) {
        const Term& fact = entry.fact;
        if (!fact.is_compound() || fact.arity() != 3) continue;
        if (!fact.head().is_atom(counter.pred.str())) continue;
        if (!fact.elements()[1].is_atom(counter.subj.str())) continue;
        if (fact.elements()[2].kind() != kif::TermKind::Number) continue;
        existing = &fact;
        current = std::atoi(fact.elements()[2].text().c_str());
        break;
    }
    if (existing != nullptr) {
        Term old = *existing;  // copy before mutating the store
        world.retract_fact(old);
    }
    world.assert_fact(Term::compound({Term::atom(counter.pred.str()),
                                      Term::atom(counter.subj.str()),
                                      Term::number(std::to_string(current + 1))}));
}

void stamp_process(Microworld& world, const ProcessStamp& stamp) {
    if (world.has_entity(stamp.entity)) return;
    world.instantiate_unplaced(stamp.entity, stamp.processClass);
    world.connect(TermId("patient"), stamp.entity, stamp.patient);
}

}  // namespace

Guard Guard::triple_present(TermId pred, TermId subj, TermId obj) {
    Guard g;
    g.kind = GuardKind::TriplePresent;
    g.triple = Triple{pred, subj, obj};
    return g;
}

Guard Guard::triple_absent(TermId pred, TermId subj, TermId obj) {
    Guard g;
    g.kind = GuardKind::TripleAbsent;
    g.triple = Triple{pred, subj, obj};
    return g;
}

Guard Guard::resource_at_least(TermId resource, int atLeast) {
    Guard g;
    g.kind = GuardKind::ResourceAtLeast;
    g.resource = resource;
    g.atLeast = atLeast;
    return g;
}

Guard Guard::predicate(std::string name, std::function<bool(const Microworld&)> test) {
    Guard g;
    g.kind = GuardKind::Predicate;
    g.name = std::move(name);
    g.test = std::move(test);
    return g;
}

bool Guard::holds(const Microworld& world) const {
    switch (kind) {
        case GuardKind::TriplePresent:
            return world.store().contains_triple(triple.pred, triple.subj, triple.obj);
        case GuardKind::TripleAbsent:
            return !world.store().contains_triple(triple.pred, triple.subj, triple.obj);
        case GuardKind::ResourceAtLeast:
            return world.resource(resource) >= atLeast;
        case GuardKind::Predicate:
            return test(world);
    }
    return false;
}

std::string to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::Committed: return "Committed";
        case Outcome::RejectedGuards: return "RejectedGuards";
        case Outcome::CommittedWithConflictsHalt: return "CommittedWithConflicts-Halt";
    }
    return "Unknown";
}

std::vector<std::string> failed_guards(const Transition& t, const Microworld& world) {
    std::vector<std::string> failed;
    for (const Guard& g : t.guards) {
        if (g.holds(world)) continue;
        switch (g.kind) {
            case GuardKind::TriplePresent:
                failed.push_back("missing (" + g.triple.pred.str() + " " + g.triple.subj.str() +
                                 " " + g.triple.obj.str() + ")");
                break;
            case GuardKind::TripleAbsent:
                failed.push_back("present (" + g.triple.pred.str() + " " + g.triple.subj.str() +
                                 " " + g.triple.obj.str() + ")");
                break;
            case GuardKind::ResourceAtLeast:
                failed.push_back(g.resource.str() + " below " + std::to_string(g.atLeast));
                break;
            case GuardKind::Predicate:
                failed.push_back(g.name + " false");
                break;
        }
    }
    return failed;
}

TransitionRecord fire(Microworld& world, const Transition& t, EngineContext& ctx,
                      const std::string& activity) {
    TransitionRecord record;
    record.transition = t.name;
    record.activity = activity;

    if (!failed_guards(t, world).empty()) {
        record.outcome = Outcome::RejectedGuards;
        record.tickAfter = world.tick();
        return record;
    }

    Microworld pre = world.snapshot();
    std::vector<std::string> before = explicit_texts(world.store());
    int tickBefore = world.tick();

    try {
        for (const Triple& d : t.disconnects) world.disconnect(d.pred, d.subj, d.obj);
        for (const Triple& c : t.connects) world.connect(c.pred, c.subj, c.obj);
        for (const ResourceDelta& r : t.consumes) world.adjust_resource(r.resource, -r.amount);
        for (const CounterBump& c : t.counters) bump_counter(world, c);
        if (t.stamp) stamp_process(world, *t.stamp);
        world.advance_tick();
        if (t.stamp) {
            world.process_intervals()[t.stamp->entity] = {tickBefore, world.tick()};
        }
        for (const AttributeMark& m : t.beginAttributes) {
            world.assert_fact(holds_during(tickBefore, m));
        }
        for (const AttributeMark& m : t.endAttributes) {
            world.assert_fact(holds_during(world.tick(), m));
        }
    } catch (const WorldError&) {
        world = pre;
        throw;
    }

    std::vector<std::string> after = explicit_texts(world.store());
    CommitDelta delta;
    delta.activity = activity;
    delta.transition = t.name;
    std::set_difference(before.begin(), before.end(), after.begin(), after.end(),
                        std::back_inserter(delta.removed));
    std::set_difference(after.begin(), after.end(), before.begin(), before.end(),
                        std::back_inserter(delta.added));

    bool skip = ctx.policy == ValidationPolicy::SkipWhenUnchanged && ctx.lastCommit.has_value() &&
                *ctx.lastCommit == delta;
    if (skip) {
        record.validationSkipped = true;
    } else {
        FactStore& store = world.store();
        store.clear_inferred();
        rules::ClosureResult closure = rules::infer_closure(
            store, *ctx.kb, ctx.skolems, world.process_intervals(), ctx.maxRounds);
        for (const auto& [text, entry] : closure.store.entries()) {
            if (entry.provenance == Provenance::Inferred) {
                store.add(entry.fact, Provenance::Inferred);
            }
        }
        record.conflicts = detect_conflicts(ctx.probes, store, *ctx.kb, world.tick());
    }
    ctx.lastCommit = delta;

    record.tickAfter = world.tick();
    if (record.conflicts.empty()) {
        record.outcome = Outcome::Committed;
    } else {
        record.outcome = Outcome::CommittedWithConflictsHalt;
        record.preSnapshot = pre;
    }
    return record;
}

}  // namespace kifsim
