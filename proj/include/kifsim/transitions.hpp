#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kifsim/microworld.hpp"
#include "kifsim/probes.hpp"
#include "kifsim/rules.hpp"

namespace kifsim {

enum class GuardKind { TriplePresent, TripleAbsent, ResourceAtLeast, Predicate };

struct Triple {
    TermId pred;
    TermId subj;
    TermId obj;
};

// A precondition evaluated against the world before any mutation.
struct Guard {
    GuardKind kind = GuardKind::TriplePresent;
    Triple triple;
    TermId resource;
    int atLeast = 0;
    std::string name;  // Predicate guards carry a name for diagnostics
    std::function<bool(const Microworld&)> test;

    static Guard triple_present(TermId pred, TermId subj, TermId obj);
    static Guard triple_absent(TermId pred, TermId subj, TermId obj);
    static Guard resource_at_least(TermId resource, int atLeast);
    static Guard predicate(std::string name, std::function<bool(const Microworld&)> test);

    bool holds(const Microworld& world) const;
};

// Resource movement on commit: positive amounts are consumed from the
// pool, negative amounts are produced into it.
struct ResourceDelta {
    TermId resource;
    int amount = 0;
};

struct AttributeMark {
    TermId entity;
    TermId attribute;
};

// (pred subj n) -> (pred subj n+1) on commit; n reads as 0 when the
// counter triple is absent.
struct CounterBump {
    TermId pred;
    TermId subj;
};

// Registers a process occurrence the first time the transition fires
// and records its tick interval on every commit, which is what lets
// interval-valued rule consequents resolve.
struct ProcessStamp {
    TermId entity;
    TermId processClass;
    TermId patient;
};

struct Transition {
    std::string name;
    std::vector<Guard> guards;
    std::vector<Triple> disconnects;
    std::vector<Triple> connects;
    std::vector<ResourceDelta> consumes;
    std::vector<AttributeMark> beginAttributes;  // held at the start tick
    std::vector<AttributeMark> endAttributes;    // held at the end tick
    std::vector<CounterBump> counters;
    std::optional<ProcessStamp> stamp;
};

enum class Outcome { Committed, RejectedGuards, CommittedWithConflictsHalt };

std::string to_string(Outcome outcome);

enum class ValidationPolicy { Always, SkipWhenUnchanged };

// The explicit-fact delta of the last committed transition, used to
// decide whether revalidation can be skipped.
struct CommitDelta {
    std::string activity;
    std::string transition;
    std::vector<std::string> removed;  // printed texts, sorted
    std::vector<std::string> added;

    bool operator==(const CommitDelta&) const = default;
};

struct TransitionRecord {
    std::string transition;
    std::string activity;
    Outcome outcome = Outcome::RejectedGuards;
    int tickAfter = 0;  // world tick after the attempt
    bool validationSkipped = false;
    std::vector<ConflictReport> conflicts;
    std::optional<Microworld> preSnapshot;  // attached when conflicts halt the run
};

// Shared inference state threaded through a run.
struct EngineContext {
    const KnowledgeBase* kb = nullptr;
    std::vector<Probe> probes;
    rules::SkolemRegistry skolems;
    ValidationPolicy policy = ValidationPolicy::Always;
    std::optional<CommitDelta> lastCommit;
    int maxRounds = 32;
};

// Returns the guards that do not hold, empty when all pass.
std::vector<std::string> failed_guards(const Transition& t, const Microworld& world);

// Attempts the transition atomically: guards, then disconnects,
// connects, resource deltas, counters, process stamp, tick advance,
// interval-attribute emission, and validation. Any WorldError during
// mutation rolls the world back and rethrows. Detected conflicts leave
// the mutation in place and halt the run.
TransitionRecord fire(Microworld& world, const Transition& t, EngineContext& ctx,
                      const std::string& activity);

}  // namespace kifsim
