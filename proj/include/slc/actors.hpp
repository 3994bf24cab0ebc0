// SPDX-License-Identifier: MIT
// Light client, relays and public full node as small state machines. The
// client's handlers take only off-chain messages and its own clock; after
// setup it never sees contract state.
#pragma once

#include "slc/contract.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace slc {

struct ProtocolExpired : std::runtime_error {
    ProtocolExpired() : std::runtime_error("ProtocolExpired") {}
};

enum class RelayPolicy { Honest, AlwaysOpposite, Silent, FakeProofOnFalse, Collude };
enum class ReportRule { All, Left, Right, Withhold };
enum class OutputRule { Follow, AlwaysTrue, AlwaysFalse, None };
enum class PfnPolicy { Monitor, Idle };

std::optional<RelayPolicy> parse_relay_policy(std::string_view s);
std::optional<ReportRule> parse_report_rule(std::string_view s);
std::optional<OutputRule> parse_output_rule(std::string_view s);
std::optional<PfnPolicy> parse_pfn_policy(std::string_view s);
std::string to_string(RelayPolicy p);
std::string to_string(ReportRule r);
std::string to_string(OutputRule o);
std::string to_string(PfnPolicy p);

struct RelayStrategy {
    RelayPolicy policy = RelayPolicy::Honest;
    RelayPolicy coalition = RelayPolicy::AlwaysOpposite;  // coordinator's choice under Collude
};

struct ClientStrategy {
    ReportRule report = ReportRule::All;
    OutputRule output = OutputRule::Follow;
    std::optional<std::uint32_t> abort_after;  // stop after this many queries
};

struct PfnStrategy {
    PfnPolicy policy = PfnPolicy::Monitor;
    bool debate_on_cheat = true;
};

// Game action a relay strategy realizes for a given ground truth: t, f or x.
char relay_action(const RelayStrategy& s, bool truth);

enum class Claim { True, False };

struct ResponseMsg {
    std::uint32_t ctr = 0;
    Bytes result;
    Signature sig;
};

std::optional<Claim> claim_of(std::span<const std::uint8_t> result);

// ---- light client -------------------------------------------------------

struct ClientState {
    PartyId id = kClient;
    ClientStrategy strategy;
    int m = 2;
    std::uint32_t delta_T = 1;
    std::uint32_t ctr_lw = 0;
    std::vector<std::pair<PartyId, PublicKey>> keys;
    bool online = true;  // trusted full node during setup only
    std::optional<Height> T_feed;
    std::map<PartyId, ResponseMsg> responses;
};

void client_on_initialized(ClientState& s, const std::vector<std::pair<PartyId, PublicKey>>& keys, std::uint32_t k);
ChainPredicate client_on_app_request(ClientState& s, const PredicateSpec& spec, Height T);
// True iff recorded.
bool client_on_response(ClientState& s, const PartyId& from, const ResponseMsg& msg, Height T);
// nullopt = output nothing.
std::optional<Claim> client_decide_output(const ClientState& s);
// nullopt = withhold (no message at all).
std::optional<FeedbackBundle> client_on_feed_deadline(ClientState& s);

// ---- relay --------------------------------------------------------------

struct RelayState {
    PartyId id;
    KeyPair keys;
    RelayStrategy strategy;
    std::uint32_t last_ctr = 0;
};

// Well-formed sigma whose block header is not in blockhashes.
TruthProof fabricate_proof(const ChainPredicate& pred, std::uint64_t salt);

std::optional<ResponseMsg> relay_on_querying(RelayState& s, std::uint32_t ctr, const ChainPredicate& pred,
                                             const Chain& replica);

// ---- public full node ---------------------------------------------------

struct DebateMsg {
    ChainPredicate predicate;
    Bytes sigma;
};

struct PfnState {
    PartyId id = kPfn;
    PfnStrategy strategy;
    std::optional<std::uint32_t> debated_ctr;
};

std::optional<DebateMsg> pfn_on_observe(PfnState& s, const ContractState& view, const Chain& replica);

}  // namespace slc
