#ifndef CMDPIRL_VISITATION_HPP
#define CMDPIRL_VISITATION_HPP

#include "cmdpirl/model.hpp"

namespace cmdpirl {

// Discounted state-visitation table d[t][s], t = 0..T-1 (d[0] = p0).
// Row t carries total mass gamma^t.
struct VisitationTable {
    Mat d;
    int horizon = 0;
};

// d_1(s) = p0(s); d_{t+1}(s') = sum_s sum_a gamma * d_t(s) * pi(a|s) * p(s'|s,a)
VisitationTable state_visitation(const CmdpModel& model, const Policy& policy, int horizon);

// PFE: sum_t sum_s d_t(s) Phi_x(s)
Vec policy_feature_expectation(const VisitationTable& table, const CmdpModel& model,
                               FeatureKind which);

}  // namespace cmdpirl

#endif
