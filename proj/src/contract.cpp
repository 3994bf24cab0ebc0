// SPDX-License-Identifier: MIT
#include "slc/contract.hpp"

#include <algorithm>

namespace slc {

std::string to_string(Phase p) {
    switch (p) {
        case Phase::Init: return "INIT";
        case Phase::Created: return "CREATED";
        case Phase::Ready: return "READY";
        case Phase::Querying: return "QUERYING";
        case Phase::Debating: return "DEBATING";
        case Phase::Expired: return "EXPIRED";
    }
    return "?";
}

std::string to_string(ContractError e) {
    switch (e) {
        case ContractError::None: return "ok";
        case ContractError::WrongPhase: return "WrongPhase";
        case ContractError::InsufficientFunds: return "InsufficientFunds";
        case ContractError::DuplicateJoin: return "DuplicateJoin";
        case ContractError::AlreadyFed: return "AlreadyFed";
        case ContractError::NotClient: return "NotClient";
        case ContractError::BadDebate: return "BadDebate";
    }
    return "?";
}

Bytes feedback_message(std::span<const std::uint8_t> result, std::uint32_t ctr) {
    ByteWriter c;
    c.u32(ctr);
    ByteWriter w;
    w.field(result).field(c.bytes());
    return w.take();
}

namespace {

Outcome fail(ContractError e) { return Outcome{e, {}, {}}; }

std::vector<PartyId> relay_ids(const ContractState& s) {
    std::vector<PartyId> ids;
    for (const auto& [id, _] : s.pub_keys) ids.push_back(id);
    return ids;
}

// Settlement names relays by role; map roles onto registered ids and move funds.
PayoutRecord apply(const Settlement& st, const ContractState& s, Ledger& ledger) {
    auto actual = [&](const PartyId& role) -> PartyId {
        if (role == kRelay1 && s.pub_keys.size() > 0) return s.pub_keys[0].first;
        if (role == kRelay2 && s.pub_keys.size() > 1) return s.pub_keys[1].first;
        if (role == kClient) return s.client;
        return role;
    };
    PayoutRecord rec;
    rec.query = s.params.k - s.ctr + 1;
    rec.clause = st.clause;
    for (const auto& [role, amount] : st.credits) {
        PartyId who = actual(role);
        transfer(ledger, kEscrow, who, amount);
        rec.credits[who] += amount;
    }
    if (!st.burn.is_zero()) transfer(ledger, kEscrow, kBurnSink, st.burn);
    rec.burn = st.burn;
    return rec;
}

std::string shape_of(const std::vector<std::optional<EntryClass>>& cls) {
    std::string out;
    for (std::size_t i = 0; i < cls.size(); ++i) {
        if (i) out += ',';
        out += cls[i] ? to_string(*cls[i]) : "-";
    }
    return out;
}

void finish_query(ContractState& s) {
    s.ctr -= 1;
    s.predicate.reset();
    s.responses.reset();
    s.debate.reset();
    s.T_end = 0;
    s.T_debate = 0;
    s.phase = s.ctr > 0 ? Phase::Ready : Phase::Expired;
}

}  // namespace

Outcome on_create(ContractState& s, const PartyId& sender, const ContractParams& msg, Ledger& ledger) {
    if (s.phase != Phase::Init) return fail(ContractError::WrongPhase);
    Money need = msg.terms.d_L * static_cast<long>(msg.k);
    if (balance(ledger, sender) < need) return fail(ContractError::InsufficientFunds);
    transfer(ledger, sender, kEscrow, need);
    s.params = msg;
    s.client = sender;
    s.ctr = msg.k;
    s.phase = Phase::Created;
    Outcome out;
    out.events.push_back({"deployed", {}, s.ctr, {}, {}});
    return out;
}

Outcome on_join(ContractState& s, const PartyId& sender, const PublicKey& pk, Ledger& ledger) {
    if (s.phase != Phase::Created) return fail(ContractError::WrongPhase);
    for (const auto& [id, _] : s.pub_keys)
        if (id == sender) return fail(ContractError::DuplicateJoin);
    Money need = s.params.terms.d_F * static_cast<long>(s.params.k);
    if (balance(ledger, sender) < need) return fail(ContractError::InsufficientFunds);
    transfer(ledger, sender, kEscrow, need);
    s.pub_keys.emplace_back(sender, pk);
    Outcome out;
    if (static_cast<int>(s.pub_keys.size()) == s.m()) {
        s.phase = Phase::Ready;
        // Setup phase only: the client still has its trusted node here.
        out.events.push_back({"initialized", {s.client}, s.ctr, {}, s.pub_keys});
    }
    return out;
}

Outcome on_request(ContractState& s, const PartyId& sender, const ChainPredicate& pred, Height T, Ledger& ledger) {
    if (s.phase != Phase::Ready) return fail(ContractError::WrongPhase);
    if (sender != s.client) return fail(ContractError::NotClient);
    const Terms& t = s.params.terms;
    if (balance(ledger, sender) < t.p + t.e) return fail(ContractError::InsufficientFunds);
    transfer(ledger, sender, kEscrow, t.p + t.e);
    ChainPredicate p = pred;
    p.N = T;
    s.predicate = p;
    s.responses.reset();
    s.T_end = T + 3ull * s.params.delta_T;
    s.phase = Phase::Querying;
    Outcome out;
    out.events.push_back({"querying", relay_ids(s), s.ctr, p, {}});
    return out;
}

Outcome on_feedback(ContractState& s, const PartyId& sender, const FeedbackBundle& bundle) {
    if (s.phase != Phase::Querying) return fail(ContractError::WrongPhase);
    if (sender != s.client) return fail(ContractError::NotClient);
    if (s.responses) return fail(ContractError::AlreadyFed);
    s.responses = bundle;
    return {};
}

std::vector<std::optional<EntryClass>> classify_bundle(const FeedbackBundle& bundle, const ChainPredicate& pred,
                                                       const std::vector<std::pair<PartyId, PublicKey>>& keys,
                                                       std::uint32_t ctr,
                                                       const std::map<Height, Digest>& blockhashes) {
    std::vector<std::optional<EntryClass>> out(keys.size());
    std::vector<bool> seen(keys.size(), false);
    for (const auto& entry : bundle.entries) {
        auto it = std::find_if(keys.begin(), keys.end(), [&](const auto& kv) { return kv.first == entry.relay; });
        if (it == keys.end()) continue;
        auto role = static_cast<std::size_t>(it - keys.begin());
        if (seen[role]) continue;  // one entry per relay
        seen[role] = true;
        if (!verify(feedback_message(entry.result, ctr), entry.sig, it->second)) continue;
        auto res = decode_result(entry.result);
        if (res && !is_bottom(*res))
            out[role] = validate_true(std::get<TruthProof>(*res), pred, blockhashes) ? EntryClass::ValidProof
                                                                                     : EntryClass::InvalidProof;
        else
            out[role] = EntryClass::Bottom;
    }
    return out;
}

PayoutRecord incentive_two_relay(const FeedbackBundle& bundle, const ChainPredicate& pred, const ContractState& s,
                                 Ledger& ledger, const std::map<Height, Digest>& blockhashes) {
    auto cls = classify_bundle(bundle, pred, s.pub_keys, s.ctr, blockhashes);
    cls.resize(2);
    auto rec = apply(settle_two_relay(cls[0], cls[1], s.params.terms), s, ledger);
    rec.shape = shape_of(cls);
    return rec;
}

PayoutRecord incentive_one_relay(const FeedbackBundle& bundle, const ChainPredicate& pred, const ContractState& s,
                                 Ledger& ledger, const std::map<Height, Digest>& blockhashes) {
    auto cls = classify_bundle(bundle, pred, s.pub_keys, s.ctr, blockhashes);
    cls.resize(1);
    auto rec = apply(settle_one_relay(cls[0], s.params.terms), s, ledger);
    rec.shape = shape_of(cls);
    return rec;
}

std::optional<PayoutRecord> incentive_augmented(const FeedbackBundle& bundle, const ChainPredicate& pred,
                                                const ContractState& s, Ledger& ledger,
                                                const std::map<Height, Digest>& blockhashes) {
    auto cls = classify_bundle(bundle, pred, s.pub_keys, s.ctr, blockhashes);
    cls.resize(1);
    Settlement st = settle_augmented(cls[0], s.params.terms);
    if (st.debate_opened) return std::nullopt;
    auto rec = apply(st, s, ledger);
    rec.shape = shape_of(cls);
    return rec;
}

Outcome on_timer(ContractState& s, Height T, Ledger& ledger, const std::map<Height, Digest>& blockhashes) {
    Outcome out;
    if (s.phase == Phase::Querying && T >= s.T_end) {
        FeedbackBundle bundle = s.responses.value_or(FeedbackBundle{});
        const ChainPredicate& pred = *s.predicate;
        switch (s.params.kind) {
            case IncentiveKind::TwoRelayBasic:
                out.payout = incentive_two_relay(bundle, pred, s, ledger, blockhashes);
                break;
            case IncentiveKind::OneRelayBasic:
                out.payout = incentive_one_relay(bundle, pred, s, ledger, blockhashes);
                break;
            case IncentiveKind::OneRelayAugmented:
                out.payout = incentive_augmented(bundle, pred, s, ledger, blockhashes);
                if (!out.payout) {
                    s.phase = Phase::Debating;
                    s.debate = pred;
                    s.T_debate = T + s.params.delta_T;
                    s.T_end = 0;
                    out.events.push_back({"debate_open", {}, s.ctr, pred, {}});
                    return out;
                }
                break;
        }
        finish_query(s);
        return out;
    }
    if (s.phase == Phase::Debating && T >= s.T_debate) {
        out.payout = apply(settle_debate_window(false, s.params.terms), s, ledger);
        out.payout->shape = "B,undisputed";
        finish_query(s);
    }
    return out;
}

Outcome on_debate(ContractState& s, const PartyId& sender, const ChainPredicate& pred,
                  std::span<const std::uint8_t> sigma, Height T, Ledger& ledger,
                  const std::map<Height, Digest>& blockhashes) {
    if (s.phase != Phase::Debating) return fail(ContractError::WrongPhase);
    if (!s.debate || !(pred == *s.debate) || T > s.T_debate) return fail(ContractError::BadDebate);
    auto proof = TruthProof::deserialize(sigma);
    if (!proof || !validate_true(*proof, pred, blockhashes)) return fail(ContractError::BadDebate);
    Settlement st = settle_debate_window(true, s.params.terms);
    // the debater is whoever proved it, not necessarily the default PFN id
    if (sender != kPfn) {
        st.credits[sender] = st.credits[kPfn];
        st.credits.erase(kPfn);
    }
    Outcome out;
    out.payout = apply(st, s, ledger);
    out.payout->shape = "B,debated";
    finish_query(s);
    return out;
}

}  // namespace slc
