#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "kifsim/microworld.hpp"
#include "kifsim/ontology.hpp"
#include "kifsim/scheduler.hpp"
#include "kifsim/transitions.hpp"

namespace kifsim::scenarios {

enum class HaltReason { FuelExhausted, SwitchOff, ConflictDetected, MaxSteps, ScheduleComplete };

std::string to_string(HaltReason reason);

struct RunOptions {
    std::uint64_t seed = 0;
    int maxSteps = 10000;
    ValidationPolicy policy = ValidationPolicy::Always;
};

struct RunResult {
    HaltReason reason = HaltReason::ScheduleComplete;
    Trace trace;
    std::string summary;
    std::optional<Microworld> world;  // final state; references the caller's kb
    std::vector<ConflictReport> conflicts;
};

// A fully assembled simulation, exposed separately from the runners so
// tests can drive the pieces directly.
struct Scenario {
    Microworld world;
    EngineContext ctx;
    std::vector<Transition> transitions;
    std::vector<std::unique_ptr<Activity>> activities;
};

// Loads the taxonomy and device fragments from dataDir.
KnowledgeBase load_engine_ontology(const std::string& dataDir);

// One engine that an operator switches on and off. Each toggle is a
// process occurrence with interval-tagged device states. The sabotage
// transition force-connects a second engine state without clearing the
// first, which the partition probe must catch.
Scenario build_ignition(const KnowledgeBase& kb, int toggles, bool sabotage);

// Four-stroke engine: an ignition activity turns the switch on (and
// optionally off after a while), a piston activity cycles through
// intake, compression, combustion, and exhaust until the fuel pool or
// the switch stops it.
Scenario build_engine(const KnowledgeBase& kb, int fuel, std::optional<int> switchOffAtStep);

RunResult run_ignition(const KnowledgeBase& kb, int toggles, bool sabotage,
                       const RunOptions& options);

RunResult run_engine(const KnowledgeBase& kb, int fuel, std::optional<int> switchOffAtStep,
                     const RunOptions& options);

}  // namespace kifsim::scenarios
