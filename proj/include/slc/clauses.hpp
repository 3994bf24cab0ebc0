// SPDX-License-Identifier: MIT
// Payout clauses of the three incentive subroutines, as pure functions of
// the classified feedback. The contract classifies entries (signature,
// parsing, validate_true); everything after that lives here.
#pragma once

#include "slc/chain.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace slc {

inline const PartyId kClient = "LW";
inline const PartyId kRelay1 = "R1";
inline const PartyId kRelay2 = "R2";
inline const PartyId kPfn = "PFN";
inline const PartyId kEscrow = "AC";

enum class IncentiveKind { TwoRelayBasic, OneRelayBasic, OneRelayAugmented };

std::string to_string(IncentiveKind k);
std::optional<IncentiveKind> parse_incentive_kind(std::string_view s);
inline int relay_count(IncentiveKind k) { return k == IncentiveKind::TwoRelayBasic ? 2 : 1; }

// A signed entry after signature filtering. Anything that does not parse as
// a proof takes the bottom branch, as the payout pseudocode does.
enum class EntryClass { ValidProof, InvalidProof, Bottom };

std::string to_string(EntryClass c);

struct Terms {
    Money p, e, r, d_L, d_F;
};

struct Settlement {
    std::string clause;
    std::map<PartyId, Money> credits;
    Money burn;
    bool debate_opened = false;  // augmented bottom claim: credits deferred

    Money credited() const;
};

// Funds held in escrow for one query: p + e + m*d_F + d_L.
Money locked_per_query(IncentiveKind kind, const Terms& t);

Settlement settle_two_relay(std::optional<EntryClass> r1, std::optional<EntryClass> r2, const Terms& t);
Settlement settle_one_relay(std::optional<EntryClass> r, const Terms& t);
// Bottom opens a debate window instead of paying.
Settlement settle_augmented(std::optional<EntryClass> r, const Terms& t);
// Closing a debate window: debated with a valid proof, or left undisputed.
Settlement settle_debate_window(bool pfn_proved, const Terms& t);

// Every clause shape reachable for a kind, for exhaustive checks.
struct ClauseCase {
    std::string shape;  // e.g. "V,B" or "-"
    Settlement outcome;
};
std::vector<ClauseCase> enumerate_clauses(IncentiveKind kind, const Terms& t);

}  // namespace slc
