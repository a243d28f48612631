#include "cmdpirl/visitation.hpp"

#include <stdexcept>

namespace cmdpirl {

VisitationTable state_visitation(const CmdpModel& model, const Policy& policy, int horizon) {
    if (horizon < 1) throw std::invalid_argument("state_visitation: horizon must be >= 1");
    VisitationTable table;
    table.horizon = horizon;
    table.d.assign(horizon, Vec(model.n_states, 0.0));
    table.d[0] = model.initial_dist;
    const Mat P = transition_under(model, policy);
    const double g = model.discount;
    for (int t = 1; t < horizon; ++t) {
        const Vec& prev = table.d[t - 1];
        Vec& cur = table.d[t];
        for (int s = 0; s < model.n_states; ++s) {
            const double mass = prev[s];
            if (mass == 0.0) continue;
            const Vec& row = P[s];
            for (int t2 = 0; t2 < model.n_states; ++t2) cur[t2] += g * mass * row[t2];
        }
    }
    return table;
}

Vec policy_feature_expectation(const VisitationTable& table, const CmdpModel& model,
                               FeatureKind which) {
    const Mat& features =
        which == FeatureKind::reward ? model.reward_features : model.constraint_features;
    if (!table.d.empty() && static_cast<int>(table.d[0].size()) != model.n_states)
        throw std::invalid_argument("policy_feature_expectation: table/model mismatch");
    const std::size_t dim = features.empty() ? 0 : features[0].size();
    // accumulate the time-summed occupancy first, then one feature pass
    Vec occ(model.n_states, 0.0);
    for (const Vec& row : table.d)
        for (int s = 0; s < model.n_states; ++s) occ[s] += row[s];
    Vec out(dim, 0.0);
    for (int s = 0; s < model.n_states; ++s) {
        if (occ[s] == 0.0) continue;
        const Vec& phi = features[s];
        for (std::size_t i = 0; i < dim; ++i) out[i] += occ[s] * phi[i];
    }
    return out;
}

}  // namespace cmdpirl
