#include "support/replay.hpp"

#include "support/oracle.hpp"

namespace scenweave::testsupport {

ReplayResult replay_check(const Engine& engine) {
    ReplayResult result;
    const RoleRegistry& roles = engine.roles();
    const auto& records = engine.step_records();
    for (std::size_t i = 0; i < records.size(); ++i) {
        const StepRecord& record = records[i];
        const std::string where = "step " + std::to_string(i + 1) + " (" +
                                  record.selected.canonical() + "): ";

        for (const auto& pattern : record.active_blocks) {
            if (ref_matches(roles, pattern, record.selected)) {
                result.ok = false;
                result.detail =
                    where + "selected event matched active blocked pattern " + pattern.canonical();
                return result;
            }
        }

        bool justified = false;
        if (record.from_external) {
            justified = record.external_head.has_value() &&
                        *record.external_head == record.selected;
            if (!justified) {
                result.ok = false;
                result.detail = where + "taken from the queue but not equal to the queue head";
                return result;
            }
            // Super-step discipline: consuming the queue is only legal
            // when every internal request was blocked or delegated.
            for (const auto& request : record.live_requests) {
                if (request.delegated) continue;
                bool blocked = false;
                for (const auto& pattern : record.active_blocks) {
                    if (ref_matches(roles, pattern, request.event)) {
                        blocked = true;
                        break;
                    }
                }
                if (!blocked) {
                    result.ok = false;
                    result.detail = where + "queue consumed while internal request " +
                                    request.event.canonical() + " was selectable";
                    return result;
                }
            }
        } else {
            for (const auto& request : record.live_requests) {
                if (request.delegated) continue;
                if (request.event == record.selected) {
                    justified = true;
                    break;
                }
            }
            if (!justified) {
                result.ok = false;
                result.detail = where + "selected event was not requested by any live instance";
                return result;
            }
        }
    }
    return result;
}

} // namespace scenweave::testsupport
