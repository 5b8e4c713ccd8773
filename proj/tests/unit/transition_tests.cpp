#include "doctest.h"
#include "kifsim/transitions.hpp"
#include "test_support.hpp"

using namespace kifsim;
using kifsim::kif::Term;
using kifsim::kif::parse;

namespace {

const TermId kRegion("bench");
const TermId kAttr("attribute");
const TermId kDev("dev1");
const TermId kOn("DeviceOn");
const TermId kOff("DeviceOff");

struct Fixture {
    KnowledgeBase kb;
    Microworld world;
    EngineContext ctx;

    Fixture() : kb(test_support::load_kb({"structural.kif", "engine.kif"})), world("w", kb) {
        world.add_region(kRegion);
        world.instantiate(kDev, TermId("IgnitionSwitch"), kRegion);
        world.connect(kAttr, kDev, kOff);
        ctx.kb = &kb;
    }
};

Transition toggle_on() {
    Transition t;
    t.name = "SwitchOn";
    t.guards.push_back(Guard::triple_present(kAttr, kDev, kOff));
    t.disconnects.push_back({kAttr, kDev, kOff});
    t.connects.push_back({kAttr, kDev, kOn});
    return t;
}

}  // namespace

TEST_CASE("guards evaluate against the live world") {
    Fixture f;
    CHECK(Guard::triple_present(kAttr, kDev, kOff).holds(f.world));
    CHECK_FALSE(Guard::triple_present(kAttr, kDev, kOn).holds(f.world));
    CHECK(Guard::triple_absent(kAttr, kDev, kOn).holds(f.world));
    CHECK_FALSE(Guard::resource_at_least(TermId("fuel"), 1).holds(f.world));
    f.world.set_resource(TermId("fuel"), 2);
    CHECK(Guard::resource_at_least(TermId("fuel"), 2).holds(f.world));
    CHECK_FALSE(Guard::resource_at_least(TermId("fuel"), 3).holds(f.world));
    Guard named = Guard::predicate("always", [](const Microworld&) { return true; });
    CHECK(named.holds(f.world));
    CHECK(named.name == "always");
}

TEST_CASE("failed_guards names every failing guard") {
    Fixture f;
    Transition t;
    t.guards.push_back(Guard::triple_present(kAttr, kDev, kOn));
    t.guards.push_back(Guard::resource_at_least(TermId("fuel"), 1));
    t.guards.push_back(Guard::predicate("never", [](const Microworld&) { return false; }));
    auto failed = failed_guards(t, f.world);
    CHECK(failed.size() == 3);
}

TEST_CASE("rejected transitions leave the world untouched") {
    Fixture f;
    Transition t = toggle_on();
    t.guards.clear();
    t.guards.push_back(Guard::triple_present(kAttr, kDev, kOn));  // fails
    Microworld before = f.world.snapshot();
    auto record = fire(f.world, t, f.ctx, "tester");
    CHECK(record.outcome == Outcome::RejectedGuards);
    CHECK(f.world.same_state(before));
    CHECK(f.world.tick() == before.tick());
}

TEST_CASE("commit applies triples, advances the tick, and closes the store") {
    Fixture f;
    auto record = fire(f.world, toggle_on(), f.ctx, "tester");
    CHECK(record.outcome == Outcome::Committed);
    CHECK(record.tickAfter == 1);
    CHECK(f.world.tick() == 1);
    CHECK(f.world.store().contains_triple(kAttr, kDev, kOn));
    CHECK_FALSE(f.world.store().contains_triple(kAttr, kDev, kOff));
    CHECK(record.conflicts.empty());
    CHECK_FALSE(record.preSnapshot.has_value());
}

TEST_CASE("resource deltas consume and produce") {
    Fixture f;
    f.world.set_resource(TermId("fuel"), 3);
    Transition t = toggle_on();
    t.consumes.push_back({TermId("fuel"), 2});
    t.consumes.push_back({TermId("steam"), -5});
    fire(f.world, t, f.ctx, "tester");
    CHECK(f.world.resource(TermId("fuel")) == 1);
    CHECK(f.world.resource(TermId("steam")) == 5);
}

TEST_CASE("mutation failure rolls the whole attempt back") {
    Fixture f;
    f.world.set_resource(TermId("fuel"), 1);
    Transition t = toggle_on();  // its triple edits would succeed
    t.consumes.push_back({TermId("fuel"), 2});
    Microworld before = f.world.snapshot();
    CHECK_THROWS_AS(fire(f.world, t, f.ctx, "tester"), WorldError);
    CHECK(f.world.same_state(before));
    CHECK(f.world.store().contains_triple(kAttr, kDev, kOff));
}

TEST_CASE("counters start at zero and increment per commit") {
    Fixture f;
    Transition t;
    t.name = "Spin";
    t.counters.push_back({TermId("rotations"), kDev});
    fire(f.world, t, f.ctx, "tester");
    CHECK(f.world.store().contains(parse("(rotations dev1 1)").front()));
    fire(f.world, t, f.ctx, "tester");
    CHECK(f.world.store().contains(parse("(rotations dev1 2)").front()));
    CHECK_FALSE(f.world.store().contains(parse("(rotations dev1 1)").front()));
}

TEST_CASE("begin and end attribute marks become interval facts") {
    Fixture f;
    Transition t = toggle_on();
    t.beginAttributes.push_back({kDev, kOff});
    t.endAttributes.push_back({kDev, kOn});
    fire(f.world, t, f.ctx, "tester");  // tick 0 -> 1
    CHECK(f.world.store().contains(
        parse("(holdsDuring interval-0 (attribute dev1 DeviceOff))").front()));
    CHECK(f.world.store().contains(
        parse("(holdsDuring interval-1 (attribute dev1 DeviceOn))").front()));
}

TEST_CASE("process stamps register the occurrence and feed interval rules") {
    Fixture f;
    Transition t = toggle_on();
    t.stamp = ProcessStamp{TermId("on1"), TermId("TurningOnDevice"), kDev};
    auto record = fire(f.world, t, f.ctx, "tester");
    CHECK(record.outcome == Outcome::Committed);
    CHECK(f.world.has_entity(TermId("on1")));
    CHECK(f.world.store().contains(parse("(instance on1 TurningOnDevice)").front()));
    CHECK(f.world.store().contains(parse("(patient on1 dev1)").front()));
    auto interval = f.world.process_intervals().at(TermId("on1"));
    CHECK(interval.first == 0);
    CHECK(interval.second == 1);
    // the ontology's interval rule now grounds on the recorded interval
    CHECK(f.world.store().contains(
        parse("(holdsDuring interval-1 (attribute dev1 DeviceOn))").front()));
    CHECK(f.world.store().provenance_of(
              parse("(holdsDuring interval-1 (attribute dev1 DeviceOn))").front()) ==
          Provenance::Inferred);
}

TEST_CASE("conflicts halt but keep the mutation, attaching the pre snapshot") {
    Fixture f;
    f.ctx.probes.push_back(Probe::partition_exclusivity(TermId("DeviceState")));
    Transition t;
    t.name = "Sabotage";
    t.connects.push_back({kAttr, kDev, kOn});  // kOff stays: two members held
    Microworld before = f.world.snapshot();
    auto record = fire(f.world, t, f.ctx, "tester");
    CHECK(record.outcome == Outcome::CommittedWithConflictsHalt);
    REQUIRE(record.conflicts.size() == 1);
    CHECK(record.conflicts[0].probe == ProbeKind::PartitionExclusivity);
    CHECK(record.conflicts[0].entity == kDev);
    CHECK(f.world.store().contains_triple(kAttr, kDev, kOn));
    CHECK(f.world.store().contains_triple(kAttr, kDev, kOff));
    REQUIRE(record.preSnapshot.has_value());
    CHECK(record.preSnapshot->same_state(before));
}

TEST_CASE("skip policy elides revalidation only on an identical delta") {
    Fixture f;
    f.ctx.policy = ValidationPolicy::SkipWhenUnchanged;
    // Spin changes nothing: empty delta twice in a row
    Transition spin;
    spin.name = "Spin";
    auto first = fire(f.world, spin, f.ctx, "tester");
    CHECK_FALSE(first.validationSkipped);
    auto second = fire(f.world, spin, f.ctx, "tester");
    CHECK(second.validationSkipped);
    auto third = fire(f.world, spin, f.ctx, "tester");
    CHECK(third.validationSkipped);
    // a different transition name breaks the streak
    Transition other = spin;
    other.name = "Twirl";
    auto fourth = fire(f.world, other, f.ctx, "tester");
    CHECK_FALSE(fourth.validationSkipped);
}

TEST_CASE("skip policy never misses a conflict introduced by a new delta") {
    Fixture f;
    f.ctx.policy = ValidationPolicy::SkipWhenUnchanged;
    f.ctx.probes.push_back(Probe::partition_exclusivity(TermId("DeviceState")));
    Transition spin;
    spin.name = "Spin";
    fire(f.world, spin, f.ctx, "tester");
    fire(f.world, spin, f.ctx, "tester");
    Transition sabotage;
    sabotage.name = "Sabotage";
    sabotage.connects.push_back({kAttr, kDev, kOn});
    auto record = fire(f.world, sabotage, f.ctx, "tester");
    CHECK_FALSE(record.validationSkipped);
    CHECK(record.outcome == Outcome::CommittedWithConflictsHalt);
}

TEST_CASE("skip policy and always policy agree on outcomes") {
    auto run = [](ValidationPolicy policy) {
        Fixture f;
        f.ctx.policy = policy;
        std::vector<Outcome> outcomes;
        Transition on = toggle_on();
        Transition off;
        off.name = "SwitchOff";
        off.guards.push_back(Guard::triple_present(kAttr, kDev, kOn));
        off.disconnects.push_back({kAttr, kDev, kOn});
        off.connects.push_back({kAttr, kDev, kOff});
        for (int i = 0; i < 6; ++i) {
            outcomes.push_back(fire(f.world, i % 2 ? off : on, f.ctx, "t").outcome);
        }
        return std::make_pair(outcomes, f.world.store().entries().size());
    };
    auto always = run(ValidationPolicy::Always);
    auto skipping = run(ValidationPolicy::SkipWhenUnchanged);
    CHECK(always.first == skipping.first);
    CHECK(always.second == skipping.second);
}

TEST_CASE("outcome names match the trace vocabulary") {
    CHECK(to_string(Outcome::Committed) == "Committed");
    CHECK(to_string(Outcome::RejectedGuards) == "RejectedGuards");
    CHECK(to_string(Outcome::CommittedWithConflictsHalt) == "CommittedWithConflicts-Halt");
}
