// SPDX-License-Identifier: MIT
#include "slc/actors.hpp"

#include <algorithm>

namespace slc {

std::optional<RelayPolicy> parse_relay_policy(std::string_view s) {
    if (s == "honest") return RelayPolicy::Honest;
    if (s == "always_opposite") return RelayPolicy::AlwaysOpposite;
    if (s == "silent") return RelayPolicy::Silent;
    if (s == "fake_proof") return RelayPolicy::FakeProofOnFalse;
    if (s == "collude") return RelayPolicy::Collude;
    return std::nullopt;
}

std::optional<ReportRule> parse_report_rule(std::string_view s) {
    if (s == "all") return ReportRule::All;
    if (s == "left") return ReportRule::Left;
    if (s == "right") return ReportRule::Right;
    if (s == "withhold") return ReportRule::Withhold;
    return std::nullopt;
}

std::optional<OutputRule> parse_output_rule(std::string_view s) {
    if (s == "follow") return OutputRule::Follow;
    if (s == "true") return OutputRule::AlwaysTrue;
    if (s == "false") return OutputRule::AlwaysFalse;
    if (s == "none") return OutputRule::None;
    return std::nullopt;
}

std::optional<PfnPolicy> parse_pfn_policy(std::string_view s) {
    if (s == "monitor") return PfnPolicy::Monitor;
    if (s == "idle") return PfnPolicy::Idle;
    return std::nullopt;
}

std::string to_string(RelayPolicy p) {
    switch (p) {
        case RelayPolicy::Honest: return "honest";
        case RelayPolicy::AlwaysOpposite: return "always_opposite";
        case RelayPolicy::Silent: return "silent";
        case RelayPolicy::FakeProofOnFalse: return "fake_proof";
        case RelayPolicy::Collude: return "collude";
    }
    return "?";
}

std::string to_string(ReportRule r) {
    switch (r) {
        case ReportRule::All: return "all";
        case ReportRule::Left: return "left";
        case ReportRule::Right: return "right";
        case ReportRule::Withhold: return "withhold";
    }
    return "?";
}

std::string to_string(OutputRule o) {
    switch (o) {
        case OutputRule::Follow: return "follow";
        case OutputRule::AlwaysTrue: return "true";
        case OutputRule::AlwaysFalse: return "false";
        case OutputRule::None: return "none";
    }
    return "?";
}

std::string to_string(PfnPolicy p) { return p == PfnPolicy::Monitor ? "monitor" : "idle"; }

char relay_action(const RelayStrategy& s, bool truth) {
    switch (s.policy) {
        case RelayPolicy::Honest: return 't';
        case RelayPolicy::AlwaysOpposite: return 'f';
        case RelayPolicy::Silent: return 'x';
        case RelayPolicy::FakeProofOnFalse: return truth ? 't' : 'f';
        case RelayPolicy::Collude: return relay_action({s.coalition, RelayPolicy::AlwaysOpposite}, truth);
    }
    return 'x';
}

std::optional<Claim> claim_of(std::span<const std::uint8_t> result) {
    // unparseable octets read as a bottom claim, same as on chain
    auto r = decode_result(result);
    if (!r || is_bottom(*r)) return Claim::False;
    return Claim::True;
}

// ---- client -------------------------------------------------------------

void client_on_initialized(ClientState& s, const std::vector<std::pair<PartyId, PublicKey>>& keys, std::uint32_t k) {
    s.keys = keys;
    s.ctr_lw = k;
    s.online = false;  // from here on only off-chain messages reach the client
}

ChainPredicate client_on_app_request(ClientState& s, const PredicateSpec& spec, Height T) {
    if (s.ctr_lw == 0) throw ProtocolExpired();
    s.T_feed = T + 2ull * s.delta_T;
    s.responses.clear();
    return make_predicate(spec, T);
}

bool client_on_response(ClientState& s, const PartyId& from, const ResponseMsg& msg, Height T) {
    if (!s.T_feed || T > *s.T_feed || msg.ctr != s.ctr_lw) return false;
    auto it = std::find_if(s.keys.begin(), s.keys.end(), [&](const auto& kv) { return kv.first == from; });
    if (it == s.keys.end() || s.responses.count(from)) return false;
    if (!verify(feedback_message(msg.result, msg.ctr), msg.sig, it->second)) return false;
    s.responses[from] = msg;
    return true;
}

std::optional<Claim> client_decide_output(const ClientState& s) {
    switch (s.strategy.output) {
        case OutputRule::AlwaysTrue: return Claim::True;
        case OutputRule::AlwaysFalse: return Claim::False;
        case OutputRule::None: return std::nullopt;
        case OutputRule::Follow: break;
    }
    // Fig 6: output b only when all m relays answered and all claim b.
    if (static_cast<int>(s.responses.size()) != s.m) return std::nullopt;
    std::optional<Claim> agreed;
    for (const auto& [_, r] : s.responses) {
        auto c = claim_of(r.result);
        if (!c || (agreed && *agreed != *c)) return std::nullopt;
        agreed = c;
    }
    return agreed;
}

std::optional<FeedbackBundle> client_on_feed_deadline(ClientState& s) {
    std::optional<FeedbackBundle> out;
    auto add = [&](std::size_t role) {
        if (role >= s.keys.size()) return;
        auto it = s.responses.find(s.keys[role].first);
        if (it != s.responses.end()) out->entries.push_back({it->first, it->second.result, it->second.sig});
    };
    switch (s.strategy.report) {
        case ReportRule::Withhold: break;
        case ReportRule::All:
            out.emplace();
            for (std::size_t i = 0; i < s.keys.size(); ++i) add(i);
            break;
        case ReportRule::Left:
            out.emplace();
            add(0);
            break;
        case ReportRule::Right:
            out.emplace();
            add(1);
            break;
    }
    s.ctr_lw -= 1;
    s.T_feed.reset();
    s.responses.clear();
    return out;
}

// ---- relay --------------------------------------------------------------

TruthProof fabricate_proof(const ChainPredicate& pred, std::uint64_t salt) {
    ByteWriter seed;
    seed.field("fabricated").u64(salt).field(pred.serialize());
    Digest base = hash(seed.bytes());

    std::vector<Transaction> txs;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, InflowAtLeast>) {
                txs.push_back(Transaction::make(payment_payload(s.address, s.threshold, base.hex())));
            } else {
                std::size_t n = std::max<std::size_t>(1, pred.ell);
                for (std::size_t i = 0; i < n; ++i) {
                    ByteWriter w;
                    w.field(base.span()).u32(static_cast<std::uint32_t>(i));
                    txs.push_back(Transaction::make(w.take()));
                }
            }
        },
        pred.spec);

    std::vector<Transaction> leaves = txs;
    leaves.push_back(Transaction::make(Bytes(base.bytes.begin(), base.bytes.end())));
    MerkleTree mt = build_mt(leaves);

    BlockHeader h;
    h.height = pred.N;
    h.prev_hash = hash(base.span());
    h.nonce = Bytes(base.bytes.begin(), base.bytes.begin() + 8);
    h.root = mt.root();

    TruthProof sigma;
    for (const auto& tx : txs) {
        sigma.txs.push_back(tx);
        sigma.mtps.push_back(gen_mtp(mt, tx));
        sigma.blocks.push_back(h);
    }
    return sigma;
}

std::optional<ResponseMsg> relay_on_querying(RelayState& s, std::uint32_t ctr, const ChainPredicate& pred,
                                             const Chain& replica) {
    s.last_ctr = ctr;
    EvalResult truth = evaluate(pred, replica);
    EvalResult sent;
    switch (relay_action(s.strategy, !is_bottom(truth))) {
        case 'x': return std::nullopt;
        case 't': sent = truth; break;
        default:
            if (is_bottom(truth)) {
                ByteWriter salt;
                salt.field(s.id).u32(ctr);
                auto d = hash(salt.bytes());
                std::uint64_t v = 0;
                for (int i = 0; i < 8; ++i) v = v << 8 | d.bytes[i];
                sent = fabricate_proof(pred, v);
            } else {
                sent = Bottom{};
            }
    }
    ResponseMsg msg;
    msg.ctr = ctr;
    msg.result = encode_result(sent);
    msg.sig = sign(feedback_message(msg.result, ctr), s.keys.secret);
    return msg;
}

// ---- public full node ---------------------------------------------------

std::optional<DebateMsg> pfn_on_observe(PfnState& s, const ContractState& view, const Chain& replica) {
    if (s.strategy.policy != PfnPolicy::Monitor || !s.strategy.debate_on_cheat) return std::nullopt;
    if (view.phase != Phase::Debating || !view.debate) return std::nullopt;
    if (s.debated_ctr && *s.debated_ctr == view.ctr) return std::nullopt;
    EvalResult r = evaluate(*view.debate, replica);
    if (is_bottom(r)) return std::nullopt;  // nothing to prove
    s.debated_ctr = view.ctr;
    return DebateMsg{*view.debate, std::get<TruthProof>(r).serialize()};
}

}  // namespace slc
