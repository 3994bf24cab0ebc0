// SPDX-License-Identifier: MIT
#include "slc/clauses.hpp"

namespace slc {

std::string to_string(IncentiveKind k) {
    switch (k) {
        case IncentiveKind::TwoRelayBasic: return "two_relay";
        case IncentiveKind::OneRelayBasic: return "one_relay";
        case IncentiveKind::OneRelayAugmented: return "augmented";
    }
    return "?";
}

std::optional<IncentiveKind> parse_incentive_kind(std::string_view s) {
    if (s == "two_relay") return IncentiveKind::TwoRelayBasic;
    if (s == "one_relay") return IncentiveKind::OneRelayBasic;
    if (s == "augmented") return IncentiveKind::OneRelayAugmented;
    return std::nullopt;
}

std::string to_string(EntryClass c) {
    switch (c) {
        case EntryClass::ValidProof: return "V";
        case EntryClass::InvalidProof: return "I";
        case EntryClass::Bottom: return "B";
    }
    return "?";
}

Money Settlement::credited() const {
    Money s;
    for (const auto& [_, v] : credits) s += v;
    return s;
}

Money locked_per_query(IncentiveKind kind, const Terms& t) {
    return t.p + t.e + relay_count(kind) * t.d_F + t.d_L;
}

namespace {

Settlement finish(std::string clause, std::map<PartyId, Money> credits, const Money& locked) {
    Settlement s;
    s.clause = std::move(clause);
    for (auto& [who, v] : credits)
        if (!v.is_zero()) s.credits[who] = v;
    s.burn = locked - s.credited();
    return s;
}

const PartyId& other(const PartyId& r) { return r == kRelay1 ? kRelay2 : kRelay1; }

// Payout, both entries present (clauses 1-6).
Settlement payout(EntryClass c1, EntryClass c2, const Terms& t, const Money& locked) {
    using E = EntryClass;
    const Money half_p = t.p / 2;
    if (c1 == E::ValidProof && c2 == E::ValidProof)
        return finish("C1", {{kRelay1, half_p + t.d_F}, {kRelay2, half_p + t.d_F}, {kClient, t.e + t.d_L}}, locked);

    // exactly one valid proof: the prover takes the other's deposit share
    if (c1 == E::ValidProof || c2 == E::ValidProof) {
        const PartyId& winner = c1 == E::ValidProof ? kRelay1 : kRelay2;
        E loser = c1 == E::ValidProof ? c2 : c1;
        return finish(loser == E::InvalidProof ? "C2" : "C3",
                      {{winner, t.p + t.d_F * Rational(3, 2)}, {kClient, t.e + t.d_F / 2 + t.d_L}}, locked);
    }
    if (c1 == E::InvalidProof && c2 == E::InvalidProof)
        return finish("C4", {{kClient, t.p + t.e + 2 * t.d_F + t.d_L}}, locked);
    if (c1 == E::Bottom && c2 == E::Bottom)
        return finish("C6", {{kRelay1, half_p - t.r + t.d_F}, {kRelay2, half_p - t.r + t.d_F},
                             {kClient, t.e + 2 * t.r + t.d_L}},
                      locked);
    // one invalid proof, one bottom: only the bottom claimer is paid
    const PartyId& claimer = c1 == E::Bottom ? kRelay1 : kRelay2;
    return finish("C5", {{claimer, half_p - t.r + t.d_F}, {kClient, half_p + t.e + t.r + t.d_F + t.d_L}}, locked);
}

// Payout', a single entry from relay `who` (clauses 7-9).
Settlement payout_single(const PartyId& who, EntryClass c, const Terms& t, const Money& locked) {
    switch (c) {
        case EntryClass::ValidProof:
            return finish("C7", {{who, t.p + t.d_F}, {other(who), t.d_F}, {kClient, t.e / 2 + t.d_L}}, locked);
        case EntryClass::InvalidProof:
            return finish("C8", {{other(who), t.d_F}, {kClient, (t.p + t.e) / 2 + t.d_F / 2 + t.d_L}}, locked);
        case EntryClass::Bottom:
            return finish("C9", {{who, t.p / 2 - t.r + t.d_F}, {other(who), t.d_F}, {kClient, t.e / 2 + t.r + t.d_L}},
                          locked);
    }
    return {};
}

}  // namespace

Settlement settle_two_relay(std::optional<EntryClass> r1, std::optional<EntryClass> r2, const Terms& t) {
    const Money locked = locked_per_query(IncentiveKind::TwoRelayBasic, t);
    if (r1 && r2) return payout(*r1, *r2, t, locked);
    if (r1) return payout_single(kRelay1, *r1, t, locked);
    if (r2) return payout_single(kRelay2, *r2, t, locked);
    return finish("C10", {{kRelay1, t.d_F}, {kRelay2, t.d_F}, {kClient, t.d_L}}, locked);
}

// The client's d_L share is returned on every branch (see README).
Settlement settle_one_relay(std::optional<EntryClass> r, const Terms& t) {
    const Money locked = locked_per_query(IncentiveKind::OneRelayBasic, t);
    if (!r) return finish("one.none", {{kRelay1, t.d_F}, {kClient, t.d_L}}, locked);
    switch (*r) {
        case EntryClass::ValidProof:
            return finish("one.valid", {{kRelay1, t.p + t.d_F}, {kClient, t.e + t.d_L}}, locked);
        case EntryClass::InvalidProof:
            return finish("one.invalid", {{kClient, t.p + t.e + t.d_F + t.d_L}}, locked);
        case EntryClass::Bottom:
            return finish("one.bottom", {{kRelay1, t.p - t.r + t.d_F}, {kClient, t.e + t.r + t.d_L}}, locked);
    }
    return {};
}

Settlement settle_augmented(std::optional<EntryClass> r, const Terms& t) {
    const Money locked = locked_per_query(IncentiveKind::OneRelayAugmented, t);
    if (r && *r == EntryClass::Bottom) {
        Settlement s;
        s.clause = "aug.open";
        s.debate_opened = true;
        return s;
    }
    Settlement s = settle_one_relay(r, t);
    s.clause.replace(0, 3, "aug");
    s.burn = locked - s.credited();
    return s;
}

Settlement settle_debate_window(bool pfn_proved, const Terms& t) {
    const Money locked = locked_per_query(IncentiveKind::OneRelayAugmented, t);
    if (pfn_proved) return finish("aug.debate", {{kPfn, t.d_F}, {kClient, t.p + t.e + t.d_L}}, locked);
    return finish("aug.timer", {{kRelay1, t.d_F + t.p}, {kClient, t.e + t.d_L}}, locked);
}

std::vector<ClauseCase> enumerate_clauses(IncentiveKind kind, const Terms& t) {
    const std::vector<std::optional<EntryClass>> opts = {std::nullopt, EntryClass::ValidProof,
                                                         EntryClass::InvalidProof, EntryClass::Bottom};
    auto name = [](const std::optional<EntryClass>& c) { return c ? to_string(*c) : std::string("-"); };
    std::vector<ClauseCase> out;
    switch (kind) {
        case IncentiveKind::TwoRelayBasic:
            for (const auto& a : opts)
                for (const auto& b : opts) out.push_back({name(a) + "," + name(b), settle_two_relay(a, b, t)});
            break;
        case IncentiveKind::OneRelayBasic:
            for (const auto& a : opts) out.push_back({name(a), settle_one_relay(a, t)});
            break;
        case IncentiveKind::OneRelayAugmented:
            for (const auto& a : opts)
                if (!(a && *a == EntryClass::Bottom)) out.push_back({name(a), settle_augmented(a, t)});
            out.push_back({"B,debated", settle_debate_window(true, t)});
            out.push_back({"B,undisputed", settle_debate_window(false, t)});
            break;
    }
    return out;
}

}  // namespace slc
