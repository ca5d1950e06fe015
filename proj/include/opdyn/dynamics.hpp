#ifndef OPDYN_DYNAMICS_HPP_
#define OPDYN_DYNAMICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace opdyn {

// Two independent opinion values, each confined to [0, 1]. The closer a
// value is to 1, the more important the agent considers the issue.
struct OpinionPair {
    double welfare = 0.0;
    double security = 0.0;

    bool operator==(const OpinionPair&) const = default;
};

// An external message (media broadcast or expert advice), living in the
// same value space as opinions.
struct Message {
    double welfare = 0.0;
    double security = 0.0;

    bool operator==(const Message&) const = default;
};

// tolerance: distance threshold under which information is accepted, in
// [0, 1]. convergence: fraction of the distance closed per accepted update,
// in (0, 0.5].
struct UpdateParams {
    double tolerance = 0.5;
    double convergence = 0.5;

    bool operator==(const UpdateParams&) const = default;
};

// TeleViewers receive the media broadcast, WiseAgents consult the experts,
// and the white zone hears only its neighbors. Roles are fixed for a run.
enum class Role : std::uint8_t { TeleViewer, WiseAgent, WhiteZone };

struct Agent {
    std::uint32_t id = 0;
    Role role = Role::WhiteZone;
    OpinionPair opinions;
};

// Single-dimension bounded-confidence step: move x toward y by the
// convergence fraction iff |x - y| <= tolerance (boundary distance is
// accepted). The result is a convex combination, clamped so rounding can
// never leave [0, 1].
inline double bcm_update_scalar(double x, double y, const UpdateParams& params) {
    if (std::abs(x - y) > params.tolerance)
        return x;
    return std::clamp(x + params.convergence * (y - x), 0.0, 1.0);
}

// Gossip reception: the receiver mixes toward the sender, the two
// dimensions gated independently (one may update while the other does not).
inline OpinionPair peer_update(const OpinionPair& receiver,
                               const OpinionPair& sender,
                               const UpdateParams& params) {
    return {bcm_update_scalar(receiver.welfare, sender.welfare, params),
            bcm_update_scalar(receiver.security, sender.security, params)};
}

// Media reception: the gated step with the broadcast message as sender.
inline OpinionPair media_update(const OpinionPair& opinions,
                                const Message& message,
                                const UpdateParams& params) {
    return {bcm_update_scalar(opinions.welfare, message.welfare, params),
            bcm_update_scalar(opinions.security, message.security, params)};
}

// Expert reception: the convergence step on both dimensions with no
// tolerance gate; equivalent to media_update at tolerance = 1.
inline OpinionPair expert_update(const OpinionPair& opinions,
                                 const Message& message,
                                 double convergence) {
    const UpdateParams ungated{1.0, convergence};
    return {bcm_update_scalar(opinions.welfare, message.welfare, ungated),
            bcm_update_scalar(opinions.security, message.security, ungated)};
}

}  // namespace opdyn

#endif  // OPDYN_DYNAMICS_HPP_
