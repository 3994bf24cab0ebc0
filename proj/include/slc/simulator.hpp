// SPDX-License-Identifier: MIT
// Synchronous-round executor. One round is one block: every advance appends
// a block, so the clock and the chain height never drift apart.
#pragma once

#include "slc/actors.hpp"
#include "slc/econ.hpp"

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace slc {

struct InvalidConfig : std::runtime_error {
    InvalidConfig(std::size_t line, std::string key, const std::string& why)
        : std::runtime_error("line " + std::to_string(line) + ": " + key + ": " + why), line(line), key(std::move(key)) {}
    std::size_t line;
    std::string key;
};

enum class QueryTruth { True, False, Random };
enum class QueryKind { Txid, All, Inflow };

struct QuerySpec {
    QueryTruth truth = QueryTruth::Random;
    QueryKind kind = QueryKind::Txid;
};

struct ScenarioConfig {
    std::string name = "scenario";
    IncentiveKind mode = IncentiveKind::TwoRelayBasic;
    std::uint32_t k = 1;
    Terms terms;
    std::uint32_t delta_T = 1;
    EconomicParams econ;
    std::size_t num_blocks = 8;
    std::size_t txs_per_block = 4;
    std::vector<QuerySpec> queries;  // resized to k
    RelayStrategy relay1, relay2;
    ClientStrategy client;
    std::optional<PfnStrategy> pfn;  // nullopt: no public full node at all
    std::map<PartyId, Money> balances;
    std::uint64_t seed = 1;
};

// Flat key=value text, '#' comments. Throws InvalidConfig naming line and key.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

struct SimEvent {
    Height round = 0;
    PartyId actor;
    std::string kind;
    std::vector<std::pair<std::string, std::string>> fields;

    std::string line() const;
    static std::optional<SimEvent> parse(std::string_view line);
};

struct QueryReport {
    std::uint32_t index = 0;
    bool truth = false;
    std::optional<Claim> output;
    std::string clause;
    std::map<PartyId, Money> credits;
    Money burn;
};

struct UtilityVector {
    std::map<PartyId, Money> u;
    Money operator[](const PartyId& p) const {
        auto it = u.find(p);
        return it == u.end() ? Money() : it->second;
    }
    friend bool operator==(const UtilityVector&, const UtilityVector&) = default;
};

struct SimReport {
    std::vector<QueryReport> queries;
    std::map<PartyId, Money> final_balances;
    UtilityVector utilities;
    bool conserved = true;
    std::string lines() const;
};

// ---- world --------------------------------------------------------------

struct CreateMsg { ContractParams params; };
struct JoinMsg { PublicKey pk; };
struct RequestMsg { ChainPredicate pred; };
struct FeedbackMsg { FeedbackBundle bundle; };
using OnChainMsg = std::variant<CreateMsg, JoinMsg, RequestMsg, FeedbackMsg, DebateMsg>;

struct Envelope {
    Height due = 0;
    std::uint64_t seq = 0;
    PartyId from, to;
    std::variant<OnChainMsg, ResponseMsg> body;
};

struct PlannedQuery {
    bool truth = false;
    PredicateSpec spec;
    std::uint32_t ell = 1;
};

struct World {
    ScenarioConfig cfg;
    Height T = 0;
    Chain chain;
    ContractState contract;
    ClientState client;
    std::vector<RelayState> relays;
    std::optional<PfnState> pfn;
    std::deque<Envelope> queue;
    std::uint64_t seq = 0;
    std::vector<SimEvent> trace;
    std::vector<PlannedQuery> plan;
    std::uint32_t asked = 0;               // requests the client has sent
    std::optional<Height> next_request;  // client's own schedule
    bool created = false, done = false;
};

World make_world(const ScenarioConfig& cfg);
void advance_round(World& w);
std::pair<std::vector<SimEvent>, SimReport> run_scenario(const ScenarioConfig& cfg);

// Utilities from the trace alone.
UtilityVector account_utilities(const std::vector<SimEvent>& trace, const EconomicParams& econ);
SimReport report_from_trace(const std::vector<SimEvent>& trace, const EconomicParams& econ);

std::string render_trace(const std::vector<SimEvent>& trace);
std::vector<SimEvent> parse_trace(std::string_view text);

}  // namespace slc
