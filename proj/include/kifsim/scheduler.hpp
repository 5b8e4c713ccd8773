#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "kifsim/errors.hpp"
#include "kifsim/microworld.hpp"
#include "kifsim/transitions.hpp"

namespace kifsim {

struct TraceLine {
    int step = 0;  // 1-based
    int tick = 0;  // world tick after the attempt
    std::string activity;
    std::string transition;
    Outcome outcome = Outcome::RejectedGuards;
    int conflicts = 0;
};

struct Trace {
    std::vector<TraceLine> lines;

    std::vector<std::string> to_lines() const;
    // True when some line committed the named transition.
    bool committed(const std::string& transition) const;
};

struct StepContext {
    const Microworld& world;
    const Trace& trace;
};

// What an activity wants to do next. Wait yields until some other
// activity changes the world; Done removes the activity from play.
struct Action {
    enum class Kind { Fire, Wait, Halt, Done };
    Kind kind = Kind::Wait;
    std::string transition;
    std::string haltReason;

    static Action fire(std::string transition);
    static Action wait();
    static Action halt(std::string reason);
    static Action done();
};

// A sequential thread of behavior. step() must be a pure function of
// the context; state updates happen in advance(), which is called only
// after this activity's own action was applied.
class Activity {
public:
    virtual ~Activity() = default;
    virtual const std::string& name() const = 0;
    virtual Action step(const StepContext& ctx) = 0;
    virtual void advance(const StepContext& ctx, const TransitionRecord& record) = 0;
};

class ScheduleError : public Error {
public:
    enum class Kind { Deadlock };
    ScheduleError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

struct ScheduleResult {
    enum class Status { AllDone, ActivityHalt, ConflictHalt, MaxSteps };
    Status status = Status::AllDone;
    std::string haltActivity;
    std::string haltReason;
    std::vector<ConflictReport> conflicts;
};

// Interleaves the activities until every one is Done, one halts, a
// fired transition commits with conflicts, or maxSteps attempts have
// been traced. Each iteration draws once from a seeded generator to
// pick among the activities proposing an action; all activities
// waiting while some are unfinished is a Deadlock. Appends to trace.
ScheduleResult schedule(Microworld& world, EngineContext& ctx,
                        const std::vector<Transition>& transitions,
                        const std::vector<std::unique_ptr<Activity>>& activities,
                        std::uint64_t seed, int maxSteps, Trace& trace);

}  // namespace kifsim
