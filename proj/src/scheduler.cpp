#include "kifsim/scheduler.hpp"

#include <random>

namespace kifsim {

std::vector<std::string> Trace::to_lines() const {
    std::vector<std::string> out;
    out.reserve(lines.size());
    for (const TraceLine& line : lines) {
        out.push_back("step=" + std::to_string(line.step) + " tick=" + std::to_string(line.tick) +
                      " activity=" + line.activity + " transition=" + line.transition +
                      " outcome=" + to_string(line.outcome) +
                      " conflicts=" + std::to_string(line.conflicts));
    }
    return out;
}

bool Trace::committed(const std::string& transition) const {
    for (const TraceLine& line : lines) {
        if (line.transition == transition && line.outcome != Outcome::RejectedGuards) return true;
    }
    return false;
}

Action Action::fire(std::string transition) {
    Action a;
    a.kind = Kind::Fire;
    a.transition = std::move(transition);
    return a;
}

Action Action::wait() { return Action{}; }

Action Action::halt(std::string reason) {
    Action a;
    a.kind = Kind::Halt;
    a.haltReason = std::move(reason);
    return a;
}

Action Action::done() {
    Action a;
    a.kind = Kind::Done;
    return a;
}

ScheduleResult schedule(Microworld& world, EngineContext& ctx,
                        const std::vector<Transition>& transitions,
                        const std::vector<std::unique_ptr<Activity>>& activities,
                        std::uint64_t seed, int maxSteps, Trace& trace) {
    std::mt19937_64 rng(seed);
    ScheduleResult result;
    while (true) {
        if (static_cast<int>(trace.lines.size()) >= maxSteps) {
            result.status = ScheduleResult::Status::MaxSteps;
            return result;
        }
        StepContext stepCtx{world, trace};
        std::vector<std::pair<Activity*, Action>> proposals;
        std::size_t doneCount = 0;
        for (const auto& activity : activities) {
            Action action = activity->step(stepCtx);
            switch (action.kind) {
                case Action::Kind::Done:
                    ++doneCount;
                    break;
                case Action::Kind::Wait:
                    break;
                case Action::Kind::Fire:
                case Action::Kind::Halt:
                    proposals.emplace_back(activity.get(), std::move(action));
                    break;
            }
        }
        if (proposals.empty()) {
            if (doneCount == activities.size()) {
                result.status = ScheduleResult::Status::AllDone;
                return result;
            }
            throw ScheduleError(ScheduleError::Kind::Deadlock,
                                "every unfinished activity is waiting");
        }
        auto& [activity, action] = proposals[rng() % proposals.size()];
        if (action.kind == Action::Kind::Halt) {
            result.status = ScheduleResult::Status::ActivityHalt;
            result.haltActivity = activity->name();
            result.haltReason = action.haltReason;
            return result;
        }
        const Transition* transition = nullptr;
        for (const Transition& t : transitions) {
            if (t.name == action.transition) {
                transition = &t;
                break;
            }
        }
        if (transition == nullptr) {
            throw Error("activity " + activity->name() + " requested unknown transition " +
                        action.transition);
        }
        TransitionRecord record = fire(world, *transition, ctx, activity->name());
        TraceLine line;
        line.step = static_cast<int>(trace.lines.size()) + 1;
        line.tick = record.tickAfter;
        line.activity = activity->name();
        line.transition = record.transition;
        line.outcome = record.outcome;
        line.conflicts = static_cast<int>(record.conflicts.size());
        trace.lines.push_back(line);
        StepContext afterCtx{world, trace};
        activity->advance(afterCtx, record);
        if (record.outcome == Outcome::CommittedWithConflictsHalt) {
            result.status = ScheduleResult::Status::ConflictHalt;
            result.haltActivity = activity->name();
            result.conflicts = record.conflicts;
            return result;
        }
    }
}

}  // namespace kifsim
