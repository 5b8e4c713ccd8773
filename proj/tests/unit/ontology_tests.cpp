#include "doctest.h"
#include "kifsim/errors.hpp"
#include "kifsim/kif.hpp"
#include "kifsim/ontology.hpp"
#include "test_support.hpp"

using kifsim::KnowledgeBase;
using kifsim::LoadError;
using kifsim::QueryError;
using kifsim::TermId;
using kifsim::kif::parse;

namespace {

KnowledgeBase kb_from(const std::string& text) {
    KnowledgeBase kb;
    kb.load_axioms(parse(text));
    return kb;
}

}  // namespace

TEST_CASE("is_subclass agrees with path enumeration on every class pair") {
    auto kb = test_support::load_kb({"structural.kif", "engine.kif"});
    const auto& classes = kb.classes();
    CHECK(classes.size() > 30);
    for (TermId a : classes) {
        for (TermId b : classes) {
            CHECK_MESSAGE(kb.is_subclass(a, b) == test_support::oracle_subclass(kb, a, b),
                          a.str(), " vs ", b.str());
        }
    }
}

TEST_CASE("every declared class reaches Entity") {
    auto kb = test_support::load_kb({"structural.kif", "engine.kif", "dining.kif"});
    TermId entity("Entity");
    for (TermId cls : kb.classes()) {
        CHECK_MESSAGE(kb.is_subclass(cls, entity), cls.str());
    }
}

TEST_CASE("subclass is reflexive and respects direction") {
    auto kb = test_support::load_kb({"structural.kif", "engine.kif"});
    TermId engine("Engine"), device("Device"), entity("Entity");
    CHECK(kb.is_subclass(engine, engine));
    CHECK(kb.is_subclass(engine, device));
    CHECK(kb.is_subclass(engine, entity));
    CHECK_FALSE(kb.is_subclass(device, engine));
    CHECK_FALSE(kb.is_subclass(entity, engine));
}

TEST_CASE("unknown terms raise QueryError") {
    auto kb = test_support::load_kb({"structural.kif"});
    try {
        kb.is_subclass(TermId("NoSuchClass"), TermId("Entity"));
        FAIL("expected QueryError");
    } catch (const QueryError& e) {
        CHECK(e.kind() == QueryError::Kind::UnknownTerm);
    }
}

TEST_CASE("two-step subclass cycle is rejected with the offending path") {
    try {
        kb_from("(subclass A B) (subclass B A)");
        FAIL("expected LoadError");
    } catch (const LoadError& e) {
        CHECK(e.kind() == LoadError::Kind::SubclassCycle);
        CHECK(std::string(e.what()) == "subclass cycle: B -> A -> B");
    }
}

TEST_CASE("self-loop subclass is rejected") {
    try {
        kb_from("(subclass A A)");
        FAIL("expected LoadError");
    } catch (const LoadError& e) {
        CHECK(e.kind() == LoadError::Kind::SubclassCycle);
        CHECK(std::string(e.what()) == "subclass cycle: A -> A");
    }
}

TEST_CASE("longer cycles are caught wherever the closing edge lands") {
    try {
        kb_from("(subclass A B) (subclass B C) (subclass C A)");
        FAIL("expected LoadError");
    } catch (const LoadError& e) {
        CHECK(e.kind() == LoadError::Kind::SubclassCycle);
    }
}

TEST_CASE("reload of the same files is a no-op") {
    auto once = test_support::load_kb({"structural.kif", "engine.kif", "dining.kif"});
    auto twice = test_support::load_kb({"structural.kif", "engine.kif", "dining.kif"});
    twice.load_file(test_support::data_dir() + "/engine.kif");
    twice.load_file(test_support::data_dir() + "/dining.kif");
    CHECK(once == twice);
    CHECK(once.rules().size() == twice.rules().size());
}

TEST_CASE("identical partition redeclaration is accepted, conflicting one is not") {
    const char* base =
        "(subclass State Entity) (subclass Device Entity)"
        "(instance On State) (instance Off State)"
        "(partition Device On Off)";
    auto kb = kb_from(std::string(base) + " (partition Device On Off)");
    CHECK(kb.partitions().size() == 1);
    try {
        kb_from(std::string(base) + " (instance Broken State) (partition Device On Broken)");
        FAIL("expected LoadError");
    } catch (const LoadError& e) {
        CHECK(e.kind() == LoadError::Kind::DuplicatePartition);
    }
}

TEST_CASE("partition members are recorded in declaration order") {
    auto kb = test_support::load_kb({"structural.kif", "engine.kif"});
    const auto& members = kb.partition_members(TermId("StrokePhase"));
    REQUIRE(members.size() == 4);
    CHECK(members[0] == TermId("StrokeIntake"));
    CHECK(members[3] == TermId("StrokeExhaust"));
    try {
        kb.partition_members(TermId("Engine"));
        FAIL("expected QueryError");
    } catch (const QueryError& e) {
        CHECK(e.kind() == QueryError::Kind::NoPartition);
    }
}

TEST_CASE("malformed axioms are rejected") {
    CHECK_THROWS_AS(kb_from("(subclass A)"), LoadError);
    CHECK_THROWS_AS(kb_from("(subclass A B C)"), LoadError);
    CHECK_THROWS_AS(kb_from("(instance e1)"), LoadError);
    CHECK_THROWS_AS(kb_from("(domain p one Entity)"), LoadError);
    CHECK_THROWS_AS(kb_from("(partition OnlyClass)"), LoadError);
}

TEST_CASE("non-ground sentences outside rules are skipped with a warning") {
    auto kb = kb_from("(instance ?X Engine)");
    CHECK(kb.instances().empty());
    REQUIRE(kb.warnings().size() == 1);
    CHECK(kb.warnings()[0].find("non-ground") != std::string::npos);
}

TEST_CASE("predicate declarations accumulate positions") {
    auto kb = kb_from(
        "(subclass Object Entity) (subclass Attribute Entity)"
        "(domain attribute 1 Object) (domain attribute 2 Attribute)");
    const auto& decl = kb.predicates().at(TermId("attribute"));
    CHECK(decl.arity == 2);
    CHECK(decl.domains.at(1) == TermId("Object"));
    CHECK(decl.domains.at(2) == TermId("Attribute"));
}

TEST_CASE("ground facts with undeclared predicates warn once") {
    auto kb = kb_from("(likes alice bob) (likes bob alice)");
    REQUIRE(kb.warnings().size() == 1);
    CHECK(kb.warnings()[0].find("likes") != std::string::npos);
    CHECK(kb.ground_facts().size() == 2);
}

TEST_CASE("ground fact arity must match its declaration") {
    CHECK_THROWS_AS(
        kb_from("(subclass Object Entity) (domain attribute 1 Object)"
                "(domain attribute 2 Object) (attribute onlyOneArg)"),
        LoadError);
}

TEST_CASE("duplicate ground facts are dropped") {
    auto kb = kb_from("(likes alice bob) (likes alice bob)");
    CHECK(kb.ground_facts().size() == 1);
}

TEST_CASE("check_domains flags wrong classes and honors extra instances") {
    auto kb = test_support::load_kb({"structural.kif", "engine.kif"});
    auto ok = kb.check_domains(
        kifsim::kif::parse("(attribute thisGasEngine DeviceOff)").front());
    // thisGasEngine has no instance assertion in the kb alone
    CHECK_FALSE(ok.ok());

    kifsim::InstanceMap extra;
    extra[TermId("thisGasEngine")].insert(TermId("GasolineEngine"));
    auto withExtra = kb.check_domains(
        kifsim::kif::parse("(attribute thisGasEngine DeviceOff)").front(), &extra);
    CHECK(withExtra.ok());

    auto wrong = kb.check_domains(
        kifsim::kif::parse("(attribute DeviceOff thisGasEngine)").front(), &extra);
    CHECK_FALSE(wrong.ok());
    REQUIRE(wrong.violations.size() >= 1);
    CHECK(wrong.violations[0].position == 1);
    CHECK(wrong.violations[0].expected == TermId("Object"));
}

TEST_CASE("check_domains passes undeclared predicates with a flag") {
    auto kb = test_support::load_kb({"structural.kif"});
    auto r = kb.check_domains(kifsim::kif::parse("(mystery a b)").front());
    CHECK(r.ok());
    CHECK(r.undeclaredPredicate);
}

TEST_CASE("rules load with stable names and biconditionals split") {
    auto kb = test_support::load_kb({"structural.kif", "engine.kif"});
    REQUIRE(kb.rules().size() == 2);
    CHECK(kb.rules()[0].name == "rule1");
    CHECK(kb.rules()[1].name == "rule2");

    auto bi = kb_from(
        "(subclass Engine Entity) (subclass Hot Entity)"
        "(<=> (instance ?X Engine) (instance ?X Hot))");
    REQUIRE(bi.rules().size() == 2);
    CHECK(bi.rules()[0].name == "rule1_fwd");
    CHECK(bi.rules()[1].name == "rule1_bwd");
}

TEST_CASE("documentation strings are stored") {
    auto kb = test_support::load_kb({"structural.kif"});
    CHECK(kb.documentation().count(TermId("Entity")) == 1);
}
