#pragma once

#include <deque>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "qrl/core/errors.hpp"
#include "qrl/rl/contracts.hpp"

namespace qrl {

// Labeled maze: connected directed graph with regular out-degree n. Each
// vertex's label names the action index that shortens the distance to the
// finish vertex, so "follow the arrows" is the behavioral pattern a learner
// can pick up. A game is fixed-time: after exactly m_max actions the walker
// teleports back to start, rewarded on the final percept iff the walk
// visited finish at any point.
struct MazeSpec {
    int num_vertices = 0;
    int out_degree = 0;
    std::vector<std::vector<int>> delta;  // delta[v][a] -> vertex
    std::vector<int> good_action;         // arrow label per vertex
    int start = 0;
    int finish = 0;
    int m_max = 0;
    int shortest_path_len = 0;

    std::string vertex_label(int v) const {
        return "v" + std::to_string(v) + "|g" + std::to_string(good_action[static_cast<std::size_t>(v)]);
    }
};

// BFS distances to finish over reversed edges.
inline std::vector<int> maze_distances_to_finish(const MazeSpec& s) {
    constexpr int kInf = std::numeric_limits<int>::max();
    std::vector<std::vector<int>> rev(static_cast<std::size_t>(s.num_vertices));
    for (int v = 0; v < s.num_vertices; ++v)
        for (int a = 0; a < s.out_degree; ++a)
            rev[static_cast<std::size_t>(s.delta[static_cast<std::size_t>(v)][static_cast<std::size_t>(a)])].push_back(v);
    std::vector<int> dist(static_cast<std::size_t>(s.num_vertices), kInf);
    std::deque<int> q{s.finish};
    dist[static_cast<std::size_t>(s.finish)] = 0;
    while (!q.empty()) {
        const int v = q.front();
        q.pop_front();
        for (int u : rev[static_cast<std::size_t>(v)]) {
            if (dist[static_cast<std::size_t>(u)] == kInf) {
                dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
                q.push_back(u);
            }
        }
    }
    return dist;
}

inline void validate_maze(const MazeSpec& s) {
    if (s.num_vertices <= 0 || s.out_degree <= 0 || s.m_max <= 0)
        throw ConfigError("maze counts must be positive");
    if (s.delta.size() != static_cast<std::size_t>(s.num_vertices) ||
        s.good_action.size() != static_cast<std::size_t>(s.num_vertices))
        throw ConfigError("maze tables sized inconsistently");
    for (const auto& row : s.delta) {
        if (row.size() != static_cast<std::size_t>(s.out_degree))
            throw ConfigError("delta not total on V x A");
        for (int to : row)
            if (to < 0 || to >= s.num_vertices) throw ConfigError("delta target out of range");
    }
    const auto dist = maze_distances_to_finish(s);
    for (int v = 0; v < s.num_vertices; ++v)
        if (dist[static_cast<std::size_t>(v)] == std::numeric_limits<int>::max())
            throw DisconnectedGraph("vertex " + std::to_string(v) + " cannot reach finish");
    if (dist[static_cast<std::size_t>(s.start)] != s.shortest_path_len)
        throw LabelInconsistentWithBFS("shortest_path_len does not match BFS distance");
    if (s.shortest_path_len > s.m_max)
        throw ConfigError("shortest path longer than the epoch");
    for (int v = 0; v < s.num_vertices; ++v) {
        if (v == s.finish) continue;
        const int g = s.good_action[static_cast<std::size_t>(v)];
        if (g < 0 || g >= s.out_degree) throw LabelInconsistentWithBFS("arrow label out of range");
        const int next = s.delta[static_cast<std::size_t>(v)][static_cast<std::size_t>(g)];
        if (dist[static_cast<std::size_t>(next)] != dist[static_cast<std::size_t>(v)] - 1)
            throw LabelInconsistentWithBFS("arrow at vertex " + std::to_string(v) +
                                           " does not shorten the distance to finish");
    }
}

// Canonical unique-path maze: a line of M+1 vertices where the good action
// advances one step and every other action teleports back to start. With
// m_max == M exactly one of n^M action sequences is rewarded.
inline MazeSpec unique_path_maze(int n, int path_len, int m_max) {
    MazeSpec s;
    s.num_vertices = path_len + 1;
    s.out_degree = n;
    s.start = 0;
    s.finish = path_len;
    s.m_max = m_max;
    s.shortest_path_len = path_len;
    s.delta.assign(static_cast<std::size_t>(s.num_vertices), std::vector<int>(static_cast<std::size_t>(n), 0));
    s.good_action.assign(static_cast<std::size_t>(s.num_vertices), 0);
    for (int v = 0; v <= path_len; ++v) {
        const int good = v % n;  // vary the arrows so they carry information
        s.good_action[static_cast<std::size_t>(v)] = good;
        for (int a = 0; a < n; ++a)
            s.delta[static_cast<std::size_t>(v)][static_cast<std::size_t>(a)] =
                (a == good && v < path_len) ? v + 1 : 0;
    }
    validate_maze(s);
    return s;
}

// Deterministic single-win fixed-time environment over a maze.
class DeterministicEpisodicEnv : public EnvClassical {
  public:
    explicit DeterministicEpisodicEnv(MazeSpec spec) : spec_(std::move(spec)) {
        validate_maze(spec_);
        std::vector<std::string> labels;
        labels.reserve(static_cast<std::size_t>(spec_.num_vertices));
        for (int v = 0; v < spec_.num_vertices; ++v) labels.push_back(spec_.vertex_label(v));
        percepts_ = FiniteSpace::with_empty(std::move(labels));
        actions_ = make_action_space(spec_.out_degree);
        reset();
    }

    const MazeSpec& spec() const { return spec_; }

    void reset() override {
        vertex_ = spec_.start;
        steps_in_epoch_ = 0;
        visited_finish_ = false;
    }

    Percept respond(int action, RngStream& /*rng*/) override {
        if (action < 0 || action >= spec_.out_degree) throw SpaceMismatch("action out of range");
        vertex_ = spec_.delta[static_cast<std::size_t>(vertex_)][static_cast<std::size_t>(action)];
        ++steps_in_epoch_;
        if (vertex_ == spec_.finish) visited_finish_ = true;
        const bool epoch_end = steps_in_epoch_ == spec_.m_max;
        const bool rewarded = epoch_end && visited_finish_;
        const Percept p{static_cast<std::int32_t>(1 + vertex_), rewarded};
        if (epoch_end) {
            vertex_ = spec_.start;
            steps_in_epoch_ = 0;
            visited_finish_ = false;
        }
        return p;
    }

    const FiniteSpace& percept_space() const override { return percepts_; }
    const FiniteSpace& action_space() const override { return actions_; }
    int epoch_len() const override { return spec_.m_max; }

    std::unique_ptr<EnvClassical> clone() const override {
        return std::make_unique<DeterministicEpisodicEnv>(spec_);
    }

    // Pure reward function over one full epoch of actions.
    int reward_of(const std::vector<int>& actions) const {
        if (actions.size() != static_cast<std::size_t>(spec_.m_max))
            throw LengthMismatch("reward_of expects exactly m_max actions");
        int v = spec_.start;
        bool visited = false;
        for (int a : actions) {
            if (a < 0 || a >= spec_.out_degree) throw SpaceMismatch("action out of range");
            v = spec_.delta[static_cast<std::size_t>(v)][static_cast<std::size_t>(a)];
            if (v == spec_.finish) visited = true;
        }
        return visited ? 1 : 0;
    }

    // Percept sequence an epoch of actions produces (labels into percept space).
    std::vector<int> percepts_of(const std::vector<int>& actions) const {
        if (actions.size() > static_cast<std::size_t>(spec_.m_max))
            throw LengthMismatch("prefix longer than an epoch");
        std::vector<int> out;
        out.reserve(actions.size());
        int v = spec_.start;
        for (int a : actions) {
            v = spec_.delta[static_cast<std::size_t>(v)][static_cast<std::size_t>(a)];
            out.push_back(1 + v);
        }
        return out;
    }

  private:
    MazeSpec spec_;
    FiniteSpace percepts_;
    FiniteSpace actions_;
    int vertex_ = 0;
    int steps_in_epoch_ = 0;
    bool visited_finish_ = false;
};

inline DeterministicEpisodicEnv make_maze_env(const MazeSpec& spec) {
    return DeterministicEpisodicEnv(spec);
}

inline int reward_of(const DeterministicEpisodicEnv& env, const std::vector<int>& actions) {
    return env.reward_of(actions);
}

// External file format:
//   {"n": int, "vertices": [{"id", "label", "edges": [to...]}], "start", "finish", "m_max"}
// where label is the good-action index carried by the vertex percept.
inline MazeSpec load_maze_json(const nlohmann::json& j) {
    MazeSpec s;
    s.out_degree = j.at("n").get<int>();
    const auto& verts = j.at("vertices");
    s.num_vertices = static_cast<int>(verts.size());
    s.delta.resize(static_cast<std::size_t>(s.num_vertices));
    s.good_action.resize(static_cast<std::size_t>(s.num_vertices));
    for (const auto& v : verts) {
        const int id = v.at("id").get<int>();
        if (id < 0 || id >= s.num_vertices) throw ConfigError("vertex id out of range");
        s.delta[static_cast<std::size_t>(id)] = v.at("edges").get<std::vector<int>>();
        s.good_action[static_cast<std::size_t>(id)] = v.at("label").get<int>();
    }
    s.start = j.at("start").get<int>();
    s.finish = j.at("finish").get<int>();
    s.m_max = j.at("m_max").get<int>();
    const auto dist = maze_distances_to_finish(s);
    if (s.start < 0 || s.start >= s.num_vertices) throw ConfigError("start out of range");
    s.shortest_path_len = dist[static_cast<std::size_t>(s.start)] == std::numeric_limits<int>::max()
                              ? -1
                              : dist[static_cast<std::size_t>(s.start)];
    validate_maze(s);
    return s;
}

inline MazeSpec load_maze_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open maze file: " + path);
    nlohmann::json j;
    in >> j;
    return load_maze_json(j);
}

}  // namespace qrl
