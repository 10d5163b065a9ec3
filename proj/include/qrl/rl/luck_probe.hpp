#pragma once

#include <cmath>
#include <vector>

#include "qrl/core/merit.hpp"
#include "qrl/core/stats.hpp"
#include "qrl/rl/conditioned.hpp"
#include "qrl/rl/interaction.hpp"

namespace qrl {

struct LuckProbeResult {
    double rate_lucky = 0.0;
    double rate_unlucky = 0.0;
    double stderr_ = 0.0;  // standard error of the mean paired difference
};

// Monte Carlo check of the luck-favoring implication: condition the agent on
// each history by reset-and-post-select replay, then measure the mean future
// Rate over a fresh evaluation window. Trials are paired, so stderr_ refers
// to rate_lucky - rate_unlucky.
inline LuckProbeResult luck_favoring_probe(const AgentBlackBox& agent_proto,
                                           const EnvClassical& env_proto, const History& h_lucky,
                                           const History& h_unlucky, std::size_t eval_steps,
                                           std::size_t trials, RngStream& rng,
                                           std::size_t retry_budget = 1000000) {
    std::vector<double> lucky, unlucky, diff;
    lucky.reserve(trials);
    unlucky.reserve(trials);
    diff.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        auto a_lucky = instantiate_from_history(agent_proto, h_lucky, rng, retry_budget);
        auto a_unlucky = instantiate_from_history(agent_proto, h_unlucky, rng, retry_budget);
        auto env_l = env_proto.clone();
        auto env_u = env_proto.clone();
        const double rl = rate_merit(interact(*a_lucky, *env_l, eval_steps, rng));
        const double ru = rate_merit(interact(*a_unlucky, *env_u, eval_steps, rng));
        lucky.push_back(rl);
        unlucky.push_back(ru);
        diff.push_back(rl - ru);
    }
    LuckProbeResult res;
    res.rate_lucky = mean_stderr(lucky).mean;
    res.rate_unlucky = mean_stderr(unlucky).mean;
    res.stderr_ = mean_stderr(diff).stderr_;
    return res;
}

}  // namespace qrl
