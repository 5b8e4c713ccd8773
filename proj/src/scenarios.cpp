#include "kifsim/scenarios.hpp"

#include <array>

namespace kifsim::scenarios {

namespace {

const TermId kAttribute{"attribute"};
const TermId kFuel{"fuel"};
const TermId kEngine{"thisGasEngine"};
const TermId kSwitch{"ignitionSwitch1"};
const TermId kPiston{"piston1"};

// Toggles the engine on or off, whichever applies, then runs the
// sabotage transition once if asked to.
class IgnitionDriver : public Activity {
public:
    IgnitionDriver(int toggles, bool sabotage) : toggles_(toggles), sabotage_(sabotage) {}

    const std::string& name() const override { return name_; }

    Action step(const StepContext& ctx) override {
        if (completed_ < toggles_) {
            bool on = ctx.world.store().contains_triple(kAttribute, kEngine, TermId("EngineOn"));
            return Action::fire(on ? "TurningOffDevice" : "TurningOnDevice");
        }
        if (sabotage_ && !sabotaged_) return Action::fire("SabotageDoubleConnect");
        return Action::done();
    }

    void advance(const StepContext&, const TransitionRecord& record) override {
        if (record.outcome == Outcome::RejectedGuards) return;
        if (record.transition == "SabotageDoubleConnect") {
            sabotaged_ = true;
        } else {
            ++completed_;
        }
    }

private:
    std::string name_ = "driver";
    int toggles_;
    bool sabotage_;
    int completed_ = 0;
    bool sabotaged_ = false;
};

// Turns the switch on, and off again after the trace reaches the
// requested step.
class SwitchOperator : public Activity {
public:
    explicit SwitchOperator(std::optional<int> offAtStep) : offAtStep_(offAtStep) {}

    const std::string& name() const override { return name_; }

    Action step(const StepContext& ctx) override {
        switch (phase_) {
            case Phase::TurnOn:
                return Action::fire("TurningOnDevice");
            case Phase::WaitForStep:
                if (static_cast<int>(ctx.trace.lines.size()) >= *offAtStep_) {
                    return Action::fire("TurningOffDevice");
                }
                return Action::wait();
            case Phase::Finished:
                return Action::done();
        }
        return Action::wait();
    }

    void advance(const StepContext&, const TransitionRecord& record) override {
        if (record.outcome == Outcome::RejectedGuards) return;
        if (record.transition == "TurningOnDevice") {
            phase_ = offAtStep_ ? Phase::WaitForStep : Phase::Finished;
        } else if (record.transition == "TurningOffDevice") {
            phase_ = Phase::Finished;
        }
    }

private:
    enum class Phase { TurnOn, WaitForStep, Finished };
    std::string name_ = "ignition";
    std::optional<int> offAtStep_;
    Phase phase_ = Phase::TurnOn;
};

// Cycles intake, compression, combustion, exhaust. Halts at a cycle
// boundary when the switch is off or the fuel pool is empty.
class PistonCycle : public Activity {
public:
    const std::string& name() const override { return name_; }

    Action step(const StepContext& ctx) override {
        if (!ctx.trace.committed("TurningOnDevice")) return Action::wait();
        if (strokeIndex_ == 0) {
            if (!ctx.world.store().contains_triple(kAttribute, kSwitch, TermId("DeviceOn"))) {
                return Action::halt("SwitchOff");
            }
            if (ctx.world.resource(kFuel) < 1) return Action::halt("FuelExhausted");
        }
        return Action::fire(strokes_[strokeIndex_]);
    }

    void advance(const StepContext&, const TransitionRecord&) override {
        strokeIndex_ = (strokeIndex_ + 1) % static_cast<int>(strokes_.size());
    }

private:
    std::string name_ = "piston";
    int strokeIndex_ = 0;
    std::array<const char*, 4> strokes_ = {"IntakeStroke", "CompressionStroke",
                                           "SparkAndCombustion", "ExhaustStroke"};
};

Transition toggle_transition(bool turnOn, TermId device, TermId offState, TermId onState,
                             TermId processEntity) {
    Transition t;
    t.name = turnOn ? "TurningOnDevice" : "TurningOffDevice";
    TermId from = turnOn ? offState : onState;
    TermId to = turnOn ? onState : offState;
    t.guards.push_back(Guard::triple_present(kAttribute, device, from));
    t.disconnects.push_back(Triple{kAttribute, device, from});
    t.connects.push_back(Triple{kAttribute, device, to});
    TermId deviceFrom = turnOn ? TermId("DeviceOff") : TermId("DeviceOn");
    TermId deviceTo = turnOn ? TermId("DeviceOn") : TermId("DeviceOff");
    t.beginAttributes.push_back(AttributeMark{device, deviceFrom});
    t.endAttributes.push_back(AttributeMark{device, deviceTo});
    t.stamp = ProcessStamp{processEntity, TermId(t.name), device};
    return t;
}

Transition stroke_transition(const std::string& name, TermId fromPhase, TermId toPhase) {
    Transition t;
    t.name = name;
    t.guards.push_back(Guard::triple_present(kAttribute, kPiston, fromPhase));
    t.disconnects.push_back(Triple{kAttribute, kPiston, fromPhase});
    t.connects.push_back(Triple{kAttribute, kPiston, toPhase});
    return t;
}

HaltReason reason_from(const ScheduleResult& result) {
    switch (result.status) {
        case ScheduleResult::Status::AllDone:
            return HaltReason::ScheduleComplete;
        case ScheduleResult::Status::ConflictHalt:
            return HaltReason::ConflictDetected;
        case ScheduleResult::Status::MaxSteps:
            return HaltReason::MaxSteps;
        case ScheduleResult::Status::ActivityHalt:
            break;
    }
    if (result.haltReason == "FuelExhausted") return HaltReason::FuelExhausted;
    if (result.haltReason == "SwitchOff") return HaltReason::SwitchOff;
    return HaltReason::ScheduleComplete;
}

int committed_count(const Trace& trace, const std::string& transition = "") {
    int n = 0;
    for (const TraceLine& line : trace.lines) {
        if (line.outcome == Outcome::RejectedGuards) continue;
        if (!transition.empty() && line.transition != transition) continue;
        ++n;
    }
    return n;
}

RunResult run_scenario(Scenario& scenario, const RunOptions& options) {
    RunResult result;
    scenario.ctx.policy = options.policy;
    ScheduleResult scheduled = schedule(scenario.world, scenario.ctx, scenario.transitions,
                                        scenario.activities, options.seed, options.maxSteps,
                                        result.trace);
    result.reason = reason_from(scheduled);
    result.conflicts = scheduled.conflicts;
    result.world = std::move(scenario.world);
    return result;
}

}  // namespace

std::string to_string(HaltReason reason) {
    switch (reason) {
        case HaltReason::FuelExhausted: return "FuelExhausted";
        case HaltReason::SwitchOff: return "SwitchOff";
        case HaltReason::ConflictDetected: return "ConflictDetected";
        case HaltReason::MaxSteps: return "MaxSteps";
        case HaltReason::ScheduleComplete: return "ScheduleComplete";
    }
    return "Unknown";
}

KnowledgeBase load_engine_ontology(const std::string& dataDir) {
    KnowledgeBase kb;
    kb.load_file(dataDir + "/structural.kif");
    kb.load_file(dataDir + "/engine.kif");
    return kb;
}

Scenario build_ignition(const KnowledgeBase& kb, int toggles, bool sabotage) {
    Scenario scenario{Microworld("ignition", kb), EngineContext{}, {}, {}};
    scenario.ctx.kb = &kb;

    Microworld& world = scenario.world;
    TermId garage("garage");
    world.add_region(garage);
    world.instantiate(kEngine, TermId("GasolineEngine"), garage);
    world.connect(kAttribute, kEngine, TermId("EngineOff"));

    scenario.transitions.push_back(toggle_transition(true, kEngine, TermId("EngineOff"),
                                                     TermId("EngineOn"), TermId("turnOnEvent")));
    scenario.transitions.push_back(toggle_transition(false, kEngine, TermId("EngineOff"),
                                                     TermId("EngineOn"), TermId("turnOffEvent")));
    Transition sabotageTransition;
    sabotageTransition.name = "SabotageDoubleConnect";
    sabotageTransition.connects.push_back(Triple{kAttribute, kEngine, TermId("EngineOn")});
    scenario.transitions.push_back(std::move(sabotageTransition));

    scenario.ctx.probes.push_back(
        Probe::partition_exclusivity(TermId("EngineState"), TermId("Engine")));
    scenario.ctx.probes.push_back(Probe::domain_conformance());

    scenario.activities.push_back(std::make_unique<IgnitionDriver>(toggles, sabotage));
    return scenario;
}

Scenario build_engine(const KnowledgeBase& kb, int fuel, std::optional<int> switchOffAtStep) {
    Scenario scenario{Microworld("engine", kb), EngineContext{}, {}, {}};
    scenario.ctx.kb = &kb;

    Microworld& world = scenario.world;
    TermId bay("engineBay");
    world.add_region(bay);
    world.instantiate(kEngine, TermId("GasolineEngine"), bay);
    world.instantiate(kPiston, TermId("Piston"), bay);
    world.instantiate(TermId("pistonHead1"), TermId("PistonHead"), bay);
    world.instantiate(TermId("pistonRod1"), TermId("PistonRod"), bay);
    world.instantiate(TermId("intakeValve1"), TermId("IntakeValve"), bay);
    world.instantiate(TermId("exhaustValve1"), TermId("ExhaustValve"), bay);
    world.instantiate(TermId("sparkPlug1"), TermId("SparkPlug"), bay);
    world.instantiate(TermId("crankshaft1"), TermId("Crankshaft"), bay);
    world.instantiate(kSwitch, TermId("IgnitionSwitch"), bay);

    world.attach_part(kPiston, kEngine);
    world.attach_part(TermId("intakeValve1"), kEngine);
    world.attach_part(TermId("exhaustValve1"), kEngine);
    world.attach_part(TermId("sparkPlug1"), kEngine);
    world.attach_part(TermId("crankshaft1"), kEngine);
    world.attach_part(TermId("pistonHead1"), kPiston);
    world.attach_part(TermId("pistonRod1"), kPiston);

    world.connect(kAttribute, kSwitch, TermId("DeviceOff"));
    world.connect(kAttribute, kPiston, TermId("StrokeExhaust"));
    world.connect(kAttribute, TermId("intakeValve1"), TermId("ValveClosed"));
    world.connect(kAttribute, TermId("exhaustValve1"), TermId("ValveClosed"));
    world.assert_fact(kif::Term::compound({kif::Term::atom("rotations"),
                                           kif::Term::atom("crankshaft1"),
                                           kif::Term::number("0")}));
    world.assert_fact(kif::Term::compound({kif::Term::atom("exhaustEmitted"),
                                           kif::Term::atom(kEngine.str()),
                                           kif::Term::number("0")}));
    world.set_resource(kFuel, fuel);
    world.set_boundary(SystemBoundary{kEngine, {TermId("Gasoline")}, {TermId("Exhaust")}});

    scenario.transitions.push_back(toggle_transition(true, kSwitch, TermId("DeviceOff"),
                                                     TermId("DeviceOn"),
                                                     TermId("switchOnEvent")));
    scenario.transitions.push_back(toggle_transition(false, kSwitch, TermId("DeviceOff"),
                                                     TermId("DeviceOn"),
                                                     TermId("switchOffEvent")));

    Transition intake =
        stroke_transition("IntakeStroke", TermId("StrokeExhaust"), TermId("StrokeIntake"));
    intake.guards.push_back(Guard::resource_at_least(kFuel, 1));
    intake.consumes.push_back(ResourceDelta{kFuel, 1});
    intake.beginAttributes.push_back(AttributeMark{TermId("intakeValve1"), TermId("ValveOpen")});
    intake.endAttributes.push_back(AttributeMark{TermId("intakeValve1"), TermId("ValveClosed")});
    scenario.transitions.push_back(std::move(intake));

    scenario.transitions.push_back(
        stroke_transition("CompressionStroke", TermId("StrokeIntake"),
                          TermId("StrokeCompression")));

    Transition spark;
    spark.name = "SparkAndCombustion";
    spark.guards.push_back(Guard::predicate("pistonAtCompression", [](const Microworld& w) {
        return w.store().contains_triple(kAttribute, kPiston, TermId("StrokeCompression"));
    }));
    spark.disconnects.push_back(Triple{kAttribute, kPiston, TermId("StrokeCompression")});
    spark.connects.push_back(Triple{kAttribute, kPiston, TermId("StrokeCombustion")});
    spark.counters.push_back(CounterBump{TermId("rotations"), TermId("crankshaft1")});
    scenario.transitions.push_back(std::move(spark));

    Transition exhaust =
        stroke_transition("ExhaustStroke", TermId("StrokeCombustion"), TermId("StrokeExhaust"));
    exhaust.counters.push_back(CounterBump{TermId("exhaustEmitted"), kEngine});
    exhaust.beginAttributes.push_back(AttributeMark{TermId("exhaustValve1"), TermId("ValveOpen")});
    exhaust.endAttributes.push_back(
        AttributeMark{TermId("exhaustValve1"), TermId("ValveClosed")});
    scenario.transitions.push_back(std::move(exhaust));

    scenario.ctx.probes.push_back(
        Probe::partition_exclusivity(TermId("DeviceState"), TermId("IgnitionSwitch")));
    scenario.ctx.probes.push_back(
        Probe::partition_exclusivity(TermId("StrokePhase"), TermId("Piston")));
    scenario.ctx.probes.push_back(Probe::mutual_exclusion(
        FactStore::triple(kAttribute, kPiston, TermId("StrokeCombustion")),
        FactStore::triple(kAttribute, TermId("exhaustValve1"), TermId("ValveOpen"))));
    scenario.ctx.probes.push_back(Probe::domain_conformance());

    scenario.activities.push_back(std::make_unique<SwitchOperator>(switchOffAtStep));
    scenario.activities.push_back(std::make_unique<PistonCycle>());
    return scenario;
}

RunResult run_ignition(const KnowledgeBase& kb, int toggles, bool sabotage,
                       const RunOptions& options) {
    Scenario scenario = build_ignition(kb, toggles, sabotage);
    RunResult result = run_scenario(scenario, options);
    bool on = result.world->store().contains_triple(kAttribute, kEngine, TermId("EngineOn"));
    result.summary = "halt=" + to_string(result.reason) +
                     " transitions=" + std::to_string(committed_count(result.trace)) +
                     " final=" + (on ? "EngineOn" : "EngineOff");
    return result;
}

RunResult run_engine(const KnowledgeBase& kb, int fuel, std::optional<int> switchOffAtStep,
                     const RunOptions& options) {
    Scenario scenario = build_engine(kb, fuel, switchOffAtStep);
    RunResult result = run_scenario(scenario, options);
    result.summary = "halt=" + to_string(result.reason) +
                     " cycles=" + std::to_string(committed_count(result.trace, "ExhaustStroke")) +
                     " fuel_remaining=" + std::to_string(result.world->resource(kFuel));
    return result;
}

}  // namespace kifsim::scenarios
