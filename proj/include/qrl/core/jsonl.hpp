#pragma once

#include <istream>
#include <ostream>
#include <string>

#include <json.hpp>

#include "qrl/core/finite_space.hpp"
#include "qrl/core/history.hpp"

namespace qrl {

// History wire format: JSON-lines, one entry per line,
//   {"t": int, "role": "percept"|"action", "label": string, "reward": 0|1}
// with "reward" present on percepts only.
inline void write_history_jsonl(const History& h, const FiniteSpace& percepts,
                                const FiniteSpace& actions, std::ostream& os) {
    for (std::size_t t = 0; t < h.size(); ++t) {
        const auto& e = h[t];
        nlohmann::json j;
        j["t"] = t;
        if (e.role == Role::Percept) {
            j["role"] = "percept";
            j["label"] = percepts.label(static_cast<std::size_t>(e.label));
            j["reward"] = static_cast<int>(e.reward);
        } else {
            j["role"] = "action";
            j["label"] = actions.label(static_cast<std::size_t>(e.label));
        }
        os << j.dump() << '\n';
    }
}

inline History read_history_jsonl(std::istream& is, const FiniteSpace& percepts,
                                  const FiniteSpace& actions) {
    History h;
    std::string line;
    bool first = true;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        const std::string role = j.at("role").get<std::string>();
        const std::string label = j.at("label").get<std::string>();
        if (first) {
            if (role != "percept" || label != kEmptyLabel)
                throw AlternationViolation("history must open with the empty percept");
            first = false;
            continue;  // the constructor already placed it
        }
        if (role == "percept")
            h.push_percept(percepts.index(label), j.value("reward", 0) != 0);
        else if (role == "action")
            h.push_action(actions.index(label));
        else
            throw AlternationViolation("unknown role: " + role);
    }
    return h;
}

}  // namespace qrl
