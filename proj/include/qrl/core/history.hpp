#pragma once

#include <cstdint>
#include <vector>

#include "qrl/core/errors.hpp"

namespace qrl {

enum class Role : std::uint8_t { Percept, Action };

struct HistoryEntry {
    Role role;
    std::int32_t label;   // index into the percept or action space
    std::uint8_t reward;  // percepts only; always 0 on actions

    bool operator==(const HistoryEntry&) const = default;
};

// Alternating percept/action record. The leading empty percept is inserted
// structurally by the constructor, so entry 0 is always (Percept, eps) and
// off-by-one step counting cannot arise from caller discipline.
class History {
  public:
    History() { entries_.push_back({Role::Percept, 0, 0}); }

    void push_action(std::int32_t label) {
        if (entries_.back().role != Role::Percept)
            throw AlternationViolation("action after action");
        entries_.push_back({Role::Action, label, 0});
    }

    void push_percept(std::int32_t label, bool reward) {
        if (entries_.back().role != Role::Action)
            throw AlternationViolation("percept after percept");
        entries_.push_back({Role::Percept, label, static_cast<std::uint8_t>(reward ? 1 : 0)});
    }

    std::size_t size() const { return entries_.size(); }
    const HistoryEntry& operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<HistoryEntry>& entries() const { return entries_; }

    std::size_t reward_count() const {
        std::size_t c = 0;
        for (const auto& e : entries_) c += e.reward;
        return c;
    }

    bool operator==(const History&) const = default;

  private:
    std::vector<HistoryEntry> entries_;
};

// String-wise concatenation; the conventional leading eps of b is dropped at
// the seam, so len(a o b) = len(a) + len(b) - 1.
inline History concat_histories(const History& a, const History& b) {
    if (b.size() == 1) return a;
    History out = a;
    if (out.entries().back().role != Role::Percept)
        throw AlternationViolation("concat seam would repeat roles");
    for (std::size_t i = 1; i < b.size(); ++i) {
        const auto& e = b[i];
        if (e.role == Role::Action)
            out.push_action(e.label);
        else
            out.push_percept(e.label, e.reward != 0);
    }
    return out;
}

}  // namespace qrl
