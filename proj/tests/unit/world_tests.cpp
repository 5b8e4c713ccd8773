#include <functional>

#include "doctest.h"
#include "kifsim/microworld.hpp"
#include "kifsim/probes.hpp"
#include "test_support.hpp"

using kifsim::ConflictReport;
using kifsim::FactStore;
using kifsim::KnowledgeBase;
using kifsim::Microworld;
using kifsim::Probe;
using kifsim::ProbeKind;
using kifsim::Provenance;
using kifsim::SystemBoundary;
using kifsim::TermId;
using kifsim::WorldError;
using kifsim::kif::Term;
using kifsim::kif::parse;

namespace {

const TermId kRegion("testBench");

Microworld make_world(const KnowledgeBase& kb) {
    Microworld world("w1", kb);
    world.add_region(kRegion);
    return world;
}

WorldError::Kind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const WorldError& e) {
        return e.kind();
    }
    FAIL("expected WorldError");
    throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("instantiate registers the entity and its instance fact") {
    auto kb = test_support::load_kb({"structural.kif", "engine.kif"});
    auto world = make_world(kb);
    world.instantiate(TermId("e1"), TermId("Engine"), kRegion);
    CHECK(world.has_entity(TermId("e1")));
    CHECK(world.region_of(TermId("e1")) == kRegion);
    CHECK(world.store().contains_triple(TermId("instance"), TermId("e1"), TermId("Engine")));
}

TEST_CASE("instantiate validates entity, class, and region") {
    auto kb = test_support::load_kb({"structural.kif", "engine.kif"});
    auto world = make_world(kb);
    world.instantiate(TermId("e1"), TermId("Engine"), kRegion);
    CHECK(kind_of([&] { world.instantiate(TermId("e1"), TermId("Engine"), kRegion); }) ==
          WorldError::Kind::DuplicateEntity);
    CHECK(kind_of([&] { world.instantiate(TermId("e2"), TermId("Nonsense"), kRegion); }) ==
          WorldError::Kind::UnknownClass);
    CHECK(kind_of([&] { world.instantiate(TermId("e2"), TermId("Engine"), TermId("nowhere")); }) ==
          WorldError::Kind::UnknownRegion);
    CHECK(kind_of([&] { world.move(TermId("ghost"), kRegion); }) ==
          WorldError::Kind::UnknownEntity);
}

TEST_CASE("thisMicroworld registers itself when the ontology knows the class") {
    auto kb = test_support::load_kb({"structural.kif"});
    Microworld world("w1", kb);
    CHECK(world.has_entity(TermId("thisMicroworld")));
    CHECK(world.store().contains_triple(TermId("instance"), TermId("thisMicroworld"),
                                        TermId("Microworld")));
    KnowledgeBase bare;
    Microworld empty("w2", bare);
    CHECK_FALSE(empty.has_entity(TermId("thisMicroworld")));
    CHECK(empty.store().empty());
}

TEST_CASE("parts follow the whole between regions") {
    auto kb = test_support::load_kb({"structural.kif", "engine.kif"});
    auto world = make_world(kb);
    world.add_region(TermId("shelf"));
    world.instantiate(TermId("p1"), TermId("Piston"), kRegion);
    world.instantiate(TermId("head1"), TermId("PistonHead"), kRegion);
    world.instantiate(TermId("rod1"), TermId("PistonRod"), kRegion);
    world.instantiate(TermId("loose1"), TermId("Crankshaft"), kRegion);
    world.attach_part(TermId("head1"), TermId("p1"));
    world.attach_part(TermId("rod1"), TermId("p1"));
    CHECK(world.store().contains_triple(TermId("part"), TermId("head1"), TermId("p1")));

    world.move(TermId("p1"), TermId("shelf"));
    CHECK(world.region_of(TermId("p1")) == TermId("shelf"));
    CHECK(world.region_of(TermId("head1")) == TermId("shelf"));
    CHECK(world.region_of(TermId("rod1")) == TermId("shelf"));
    CHECK(world.region_of(TermId("loose1")) == kRegion);
}

TEST_CASE("nested assemblies move as one") {
    auto kb = test_support::load_kb({"structural.kif", "engine.kif"});
    auto world = make_world(kb);
    world.add_region(TermId("shelf"));
    world.instantiate(TermId("engine1"), TermId("Engine"), kRegion);
    world.instantiate(TermId("p1"), TermId("Piston"), kRegion);
    world.instantiate(TermId("head1"), TermId("PistonHead"), kRegion);
    world.attach_part(TermId("p1"), TermId("engine1"));
    world.attach_part(TermId("head1"), TermId("p1"));
    world.move(TermId("engine1"), TermId("shelf"));
    CHECK(world.region_of(TermId("head1")) == TermId("shelf"));
}

TEST_CASE("resources never go negative and unset pools read zero") {
    auto kb = test_support::load_kb({"structural.kif"});
    auto world = make_world(kb);
    TermId fuel("fuel");
    CHECK(world.resource(fuel) == 0);
    world.set_resource(fuel, 5);
    world.adjust_resource(fuel, -2);
    CHECK(world.resource(fuel) == 3);
    world.adjust_resource(fuel, 4);
    CHECK(world.resource(fuel) == 7);
    CHECK(kind_of([&] { world.adjust_resource(fuel, -8); }) ==
          WorldError::Kind::InsufficientResource);
    CHECK(world.resource(fuel) == 7);
    CHECK_THROWS_AS(world.set_resource(fuel, -1), WorldError);
}

TEST_CASE("connect checks domains against world entities") {
    auto kb = test_support::load_kb({"structural.kif", "engine.kif"});
    auto world = make_world(kb);
    world.instantiate(TermId("e1"), TermId("GasolineEngine"), kRegion);
    world.connect(TermId("attribute"), TermId("e1"), TermId("DeviceOff"));
    CHECK(world.store().contains_triple(TermId("attribute"), TermId("e1"), TermId("DeviceOff")));
    // DeviceOff is an Attribute, not an Object: position 1 violation
    CHECK(kind_of([&] { world.connect(TermId("attribute"), TermId("DeviceOff"), TermId("e1")); }) ==
          WorldError::Kind::DomainViolation);
}

TEST_CASE("disconnect requires an explicit fact") {
    auto kb = test_support::load_kb({"structural.kif", "engine.kif"});
    auto world = make_world(kb);
    world.instantiate(TermId("e1"), TermId("GasolineEngine"), kRegion);
    CHECK(kind_of([&] {
              world.disconnect(TermId("attribute"), TermId("e1"), TermId("DeviceOff"));
          }) == WorldError::Kind::MissingTriple);
    world.store().add(FactStore::triple(TermId("attribute"), TermId("e1"), TermId("DeviceOn")),
                      Provenance::Inferred);
    CHECK(kind_of([&] {
              world.disconnect(TermId("attribute"), TermId("e1"), TermId("DeviceOn"));
          }) == WorldError::Kind::CannotRemoveInferred);
    world.connect(TermId("attribute"), TermId("e1"), TermId("DeviceOff"));
    world.disconnect(TermId("attribute"), TermId("e1"), TermId("DeviceOff"));
    CHECK_FALSE(
        world.store().contains_triple(TermId("attribute"), TermId("e1"), TermId("DeviceOff")));
}

TEST_CASE("snapshots compare by state, not by label") {
    auto kb = test_support::load_kb({"structural.kif", "engine.kif"});
    auto world = make_world(kb);
    world.instantiate(TermId("e1"), TermId("Engine"), kRegion);
    Microworld snap = world.snapshot();
    CHECK(snap.same_state(world));
    Microworld snap2 = world.snapshot();
    CHECK(snap2.label().seq > snap.label().seq);
    CHECK(snap2.same_state(snap));
    world.set_resource(TermId("fuel"), 1);
    CHECK_FALSE(snap.same_state(world));
    world.adjust_resource(TermId("fuel"), -1);
    CHECK_FALSE(snap.same_state(world));  // pool existence still differs
    Microworld rebuilt = snap.snapshot();
    CHECK(rebuilt.same_state(snap));
}

TEST_CASE("boundary participates in state comparison") {
    auto kb = test_support::load_kb({"structural.kif", "engine.kif"});
    auto world = make_world(kb);
    Microworld before = world.snapshot();
    world.set_boundary(SystemBoundary{TermId("e1"), {TermId("Gasoline")}, {TermId("Exhaust")}});
    CHECK_FALSE(before.same_state(world));
}

TEST_CASE("partition probe over every subset of stroke phases") {
    auto kb = test_support::load_kb({"structural.kif", "engine.kif"});
    const auto& members = kb.partition_members(TermId("StrokePhase"));
    REQUIRE(members.size() == 4);
    const TermId piston("piston1");

    for (unsigned subset = 0; subset < 16; ++subset) {
        FactStore store;
        store.add(parse("(instance piston1 Piston)").front(), Provenance::Explicit);
        int count = 0;
        for (unsigned bit = 0; bit < 4; ++bit) {
            if (subset & (1u << bit)) {
                store.add(FactStore::triple(TermId("attribute"), piston, members[bit]),
                          Provenance::Explicit);
                ++count;
            }
        }
        INFO("subset ", subset);

        auto strict = kifsim::detect_conflicts(
            {Probe::partition_exclusivity(TermId("StrokePhase"), TermId("Piston"))}, store, kb,
            0);
        auto lax = kifsim::detect_conflicts(
            {Probe::partition_exclusivity(TermId("StrokePhase"))}, store, kb, 0);

        if (count >= 2) {
            REQUIRE(strict.size() == 1);
            CHECK(strict[0].entity == piston);
            CHECK(static_cast<int>(strict[0].offendingFacts.size()) == count);
            CHECK(lax.size() == 1);
        } else if (count == 0) {
            REQUIRE(strict.size() == 1);
            CHECK(strict[0].message.find("holds no member") != std::string::npos);
            CHECK(lax.empty());
        } else {
            CHECK(strict.empty());
            CHECK(lax.empty());
        }
    }
}

TEST_CASE("partition probe skips entities outside the applicable class") {
    auto kb = test_support::load_kb({"structural.kif", "engine.kif"});
    FactStore store;
    store.add(parse("(instance v1 IntakeValve)").front(), Provenance::Explicit);
    auto reports = kifsim::detect_conflicts(
        {Probe::partition_exclusivity(TermId("StrokePhase"), TermId("Piston"))}, store, kb, 0);
    CHECK(reports.empty());
}

TEST_CASE("domain probe reports nonconforming facts") {
    auto kb = test_support::load_kb({"structural.kif", "engine.kif"});
    FactStore store;
    store.add(parse("(instance e1 GasolineEngine)").front(), Provenance::Explicit);
    store.add(parse("(attribute DeviceOff e1)").front(), Provenance::Explicit);
    auto reports =
        kifsim::detect_conflicts({Probe::domain_conformance()}, store, kb, 3);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].probe == ProbeKind::DomainConformance);
    CHECK(reports[0].tick == 3);
    CHECK(reports[0].message.find("attribute") != std::string::npos);
}

TEST_CASE("mutual exclusion probe needs a joint match") {
    auto kb = test_support::load_kb({"structural.kif", "engine.kif"});
    FactStore store;
    store.add(parse("(attribute piston1 StrokeCombustion)").front(), Provenance::Explicit);
    Probe probe = Probe::mutual_exclusion(parse("(attribute piston1 StrokeCombustion)").front(),
                                          parse("(attribute valve1 ValveOpen)").front());
    CHECK(kifsim::detect_conflicts({probe}, store, kb, 0).empty());
    store.add(parse("(attribute valve1 ValveOpen)").front(), Provenance::Explicit);
    auto reports = kifsim::detect_conflicts({probe}, store, kb, 0);
    REQUIRE(reports.size() == 1);
    CHECK(reports[0].probe == ProbeKind::MutualExclusion);
    CHECK(reports[0].offendingFacts.size() == 2);
}

TEST_CASE("store_instances reads instance facts only") {
    FactStore store;
    store.add(parse("(instance e1 Engine)").front(), Provenance::Explicit);
    store.add(parse("(instance e1 Device)").front(), Provenance::Explicit);
    store.add(parse("(attribute e1 DeviceOff)").front(), Provenance::Explicit);
    auto map = kifsim::store_instances(store);
    REQUIRE(map.size() == 1);
    CHECK(map.at(TermId("e1")).size() == 2);
}
