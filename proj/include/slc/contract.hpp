// SPDX-License-Identifier: MIT
// Arbiter contract as a deterministic state machine. Handlers check every
// guard before touching state or ledger, so a rejected message leaves both
// unchanged.
#pragma once

#include "slc/clauses.hpp"
#include "slc/predicate.hpp"

#include <optional>
#include <string>
#include <vector>

namespace slc {

enum class Phase { Init, Created, Ready, Querying, Debating, Expired };
std::string to_string(Phase p);

enum class ContractError { None, WrongPhase, InsufficientFunds, DuplicateJoin, AlreadyFed, NotClient, BadDebate };
std::string to_string(ContractError e);

struct ContractParams {
    IncentiveKind kind = IncentiveKind::TwoRelayBasic;
    std::uint32_t k = 1;
    Terms terms;
    std::uint32_t delta_T = 1;
};

// What a relay signs: <result, ctr>, length-prefixed.
Bytes feedback_message(std::span<const std::uint8_t> result, std::uint32_t ctr);

struct FeedbackEntry {
    PartyId relay;
    Bytes result;  // encode_result octets
    Signature sig;
};

struct FeedbackBundle {
    std::vector<FeedbackEntry> entries;
};

struct PayoutRecord {
    std::uint32_t query = 0;
    std::string clause;
    std::map<PartyId, Money> credits;
    Money burn;
    std::string shape;  // classified entries, e.g. "V,B"
};

// Messages the contract emits; the client only ever gets `initialized`.
struct ContractEvent {
    std::string kind;  // deployed | initialized | querying | debate_open
    std::vector<PartyId> to;
    std::uint32_t ctr = 0;
    std::optional<ChainPredicate> predicate;
    std::vector<std::pair<PartyId, PublicKey>> keys;
};

struct ContractState {
    Phase phase = Phase::Init;
    ContractParams params;
    PartyId client;
    std::uint32_t ctr = 0;
    std::vector<std::pair<PartyId, PublicKey>> pub_keys;  // join order = relay role
    std::optional<ChainPredicate> predicate;
    std::optional<FeedbackBundle> responses;
    Height T_end = 0;
    std::optional<ChainPredicate> debate;
    Height T_debate = 0;

    int m() const { return relay_count(params.kind); }
};

struct Outcome {
    ContractError error = ContractError::None;
    std::vector<ContractEvent> events;
    std::optional<PayoutRecord> payout;

    bool ok() const { return error == ContractError::None; }
};

Outcome on_create(ContractState& s, const PartyId& sender, const ContractParams& msg, Ledger& ledger);
Outcome on_join(ContractState& s, const PartyId& sender, const PublicKey& pk, Ledger& ledger);
// `pred` carries the spec and ell; N is pinned to T here.
Outcome on_request(ContractState& s, const PartyId& sender, const ChainPredicate& pred, Height T, Ledger& ledger);
Outcome on_feedback(ContractState& s, const PartyId& sender, const FeedbackBundle& bundle);
Outcome on_timer(ContractState& s, Height T, Ledger& ledger, const std::map<Height, Digest>& blockhashes);
Outcome on_debate(ContractState& s, const PartyId& sender, const ChainPredicate& pred,
                  std::span<const std::uint8_t> sigma, Height T, Ledger& ledger,
                  const std::map<Height, Digest>& blockhashes);

// Signature gate plus classification, one slot per relay role.
std::vector<std::optional<EntryClass>> classify_bundle(const FeedbackBundle& bundle, const ChainPredicate& pred,
                                                       const std::vector<std::pair<PartyId, PublicKey>>& keys,
                                                       std::uint32_t ctr,
                                                       const std::map<Height, Digest>& blockhashes);

// The three incentive subroutines; they credit from escrow and burn the rest.
PayoutRecord incentive_two_relay(const FeedbackBundle& bundle, const ChainPredicate& pred, const ContractState& s,
                                 Ledger& ledger, const std::map<Height, Digest>& blockhashes);
PayoutRecord incentive_one_relay(const FeedbackBundle& bundle, const ChainPredicate& pred, const ContractState& s,
                                 Ledger& ledger, const std::map<Height, Digest>& blockhashes);
// Returns nullopt when a bottom claim opens a debate window instead.
std::optional<PayoutRecord> incentive_augmented(const FeedbackBundle& bundle, const ChainPredicate& pred,
                                                const ContractState& s, Ledger& ledger,
                                                const std::map<Height, Digest>& blockhashes);

}  // namespace slc
