// SPDX-License-Identifier: MIT
#include "slc/simulator.hpp"

#include <algorithm>
#include <sstream>

namespace slc {

namespace {

const PartyId kSim = "sim";
const PartyId kMerchant = "merchant";

std::string b2s(bool b) { return b ? "true" : "false"; }

void emit(World& w, const PartyId& actor, std::string kind, std::vector<std::pair<std::string, std::string>> f = {}) {
    w.trace.push_back({w.T, actor, std::move(kind), std::move(f)});
}

void send(World& w, const PartyId& from, const PartyId& to, Height delay, std::variant<OnChainMsg, ResponseMsg> body) {
    w.queue.push_back({w.T + delay, w.seq++, from, to, std::move(body)});
}

// Bernoulli(rho) from one raw 64-bit draw, exact in rho.
bool bernoulli(std::mt19937_64& rng, const Rational& rho) {
    std::uint64_t u = rng();
    if (rho >= 1) return true;
    if (rho <= 0) return false;
    mpz_class scaled = mpz_class(rho.get_num()) << 64;
    mpz_class thr = scaled / rho.get_den();
    return mpz_class(std::to_string(u)) < thr;
}

Bytes random_bytes(std::mt19937_64& rng, std::size_t n) {
    Bytes out;
    while (out.size() < n) {
        std::uint64_t v = rng();
        for (int i = 0; i < 8 && out.size() < n; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    return out;
}

void build_setup_chain(World& w, std::mt19937_64& rng) {
    for (std::size_t b = 0; b < w.cfg.num_blocks; ++b) {
        std::vector<Transaction> txs;
        Money amount(static_cast<long>(1 + rng() % 5));
        txs.push_back(Transaction::make(payment_payload(kMerchant, amount, "b" + std::to_string(b))));
        for (std::size_t i = 1; i < w.cfg.txs_per_block; ++i) txs.push_back(Transaction::make(random_bytes(rng, 16)));
        append_block(w.chain, std::move(txs));
    }
}

Digest absent_txid(const World& w, std::uint32_t q) {
    ByteWriter b;
    b.field("absent").u64(w.cfg.seed).u32(q);
    return hash(b.bytes());
}

const Transaction& pick_tx(World& w, std::mt19937_64& rng) {
    const Block& blk = w.chain.blocks[rng() % w.cfg.num_blocks];
    return blk.payload[rng() % blk.payload.size()];
}

void plan_queries(World& w, std::mt19937_64& rng) {
    for (std::uint32_t q = 0; q < w.cfg.k; ++q) {
        const QuerySpec& qs = w.cfg.queries[q];
        PlannedQuery pq;
        pq.truth = qs.truth == QueryTruth::True    ? true
                 : qs.truth == QueryTruth::False ? false
                                                  : bernoulli(rng, w.cfg.econ.rho);
        switch (qs.kind) {
            case QueryKind::Txid:
                pq.spec = TxidEquals{pq.truth ? pick_tx(w, rng).txid : absent_txid(w, q)};
                break;
            case QueryKind::All: {
                std::set<Digest> ts;
                ts.insert(pick_tx(w, rng).txid);
                if (pq.truth) {
                    for (int tries = 0; tries < 16 && ts.size() < 2; ++tries) ts.insert(pick_tx(w, rng).txid);
                } else {
                    ts.insert(absent_txid(w, q));
                }
                pq.ell = static_cast<std::uint32_t>(ts.size());
                pq.spec = AllTxidsPresent{ts};
                break;
            }
            case QueryKind::Inflow: {
                // merchant payments sit first in each setup block
                Money total, first3;
                for (std::size_t b = 0; b < w.cfg.num_blocks; ++b) {
                    Money a = parse_payment(w.chain.blocks[b].payload[0].payload)->second;
                    total += a;
                    if (b < 3) first3 += a;
                }
                pq.ell = 4;
                pq.spec = InflowAtLeast{kMerchant, pq.truth ? first3 : total + Money(1)};
                break;
            }
        }
        w.plan.push_back(pq);
    }
}

std::vector<std::pair<std::string, std::string>> payout_fields(const PayoutRecord& r) {
    std::vector<std::pair<std::string, std::string>> f = {
        {"q", std::to_string(r.query)}, {"clause", r.clause}, {"shape", r.shape}};
    for (const auto& [who, v] : r.credits) f.emplace_back("credit." + who, v.str());
    f.emplace_back("burn", r.burn.str());
    return f;
}

void dispatch(World& w, const std::vector<ContractEvent>& events);

void record(World& w, const Outcome& out) {
    if (out.payout) emit(w, kEscrow, "payout", payout_fields(*out.payout));
    if (out.payout && w.contract.phase == Phase::Expired) emit(w, kEscrow, "expired");
    dispatch(w, out.events);
}

void dispatch(World& w, const std::vector<ContractEvent>& events) {
    for (const auto& ev : events) {
        if (ev.kind == "deployed") {
            emit(w, kEscrow, "deployed", {{"ctr", std::to_string(ev.ctr)}});
            for (auto& r : w.relays) {
                emit(w, r.id, "join");
                send(w, r.id, kEscrow, w.cfg.delta_T, OnChainMsg{JoinMsg{r.keys.pub}});
            }
        } else if (ev.kind == "initialized") {
            emit(w, kEscrow, "initialized", {{"to", w.client.id}, {"ctr", std::to_string(ev.ctr)}});
            client_on_initialized(w.client, ev.keys, ev.ctr);
            w.next_request = w.T;
        } else if (ev.kind == "querying") {
            emit(w, kEscrow, "querying", {{"ctr", std::to_string(ev.ctr)}, {"pred", ev.predicate->describe()}});
            bool truth = !is_bottom(evaluate(*ev.predicate, w.chain));
            for (auto& r : w.relays) {
                char act = relay_action(r.strategy, truth);
                auto msg = relay_on_querying(r, ev.ctr, *ev.predicate, w.chain);
                emit(w, r.id, "response",
                     {{"q", std::to_string(w.asked)}, {"ctr", std::to_string(ev.ctr)}, {"action", std::string(1, act)}});
                if (msg) send(w, r.id, w.client.id, w.cfg.delta_T, *msg);
            }
        } else if (ev.kind == "debate_open") {
            emit(w, kEscrow, "debate_open", {{"ctr", std::to_string(ev.ctr)}});
            if (w.pfn) {
                if (auto d = pfn_on_observe(*w.pfn, w.contract, w.chain)) {
                    emit(w, w.pfn->id, "debate", {{"ctr", std::to_string(ev.ctr)}});
                    send(w, w.pfn->id, kEscrow, w.cfg.delta_T, OnChainMsg{*d});
                }
            }
        }
    }
}

void deliver(World& w, Envelope env) {
    if (auto* resp = std::get_if<ResponseMsg>(&env.body)) {
        bool ok = client_on_response(w.client, env.from, *resp, w.T);
        emit(w, w.client.id, "recv", {{"from", env.from}, {"accepted", ok ? "1" : "0"}});
        return;
    }
    auto& msg = std::get<OnChainMsg>(env.body);
    Outcome out;
    std::string kind;
    if (auto* c = std::get_if<CreateMsg>(&msg)) {
        kind = "create";
        out = on_create(w.contract, env.from, c->params, w.chain.ledger);
    } else if (auto* j = std::get_if<JoinMsg>(&msg)) {
        kind = "join";
        out = on_join(w.contract, env.from, j->pk, w.chain.ledger);
    } else if (auto* r = std::get_if<RequestMsg>(&msg)) {
        kind = "request";
        out = on_request(w.contract, env.from, r->pred, w.T, w.chain.ledger);
    } else if (auto* f = std::get_if<FeedbackMsg>(&msg)) {
        kind = "feedback";
        out = on_feedback(w.contract, env.from, f->bundle);
    } else if (auto* d = std::get_if<DebateMsg>(&msg)) {
        kind = "debate";
        out = on_debate(w.contract, env.from, d->predicate, d->sigma, w.T, w.chain.ledger, w.chain.blockhashes);
    }
    if (!out.ok()) emit(w, kEscrow, "reject", {{"msg", kind}, {"from", env.from}, {"error", to_string(out.error)}});
    record(w, out);
}

std::string report_label(const ClientState& c, const std::vector<PartyId>& sent, const std::vector<PartyId>& responded,
                         bool withheld) {
    if (withheld) return "X";
    if (responded.empty()) return "T";
    if (sent.size() == responded.size()) return "T";
    if (sent.empty()) return "X";
    return sent.front() == c.keys.front().first ? "L" : "R";
}

void client_step(World& w) {
    ClientState& c = w.client;
    if (!w.created) {
        w.created = true;
        ContractParams params{w.cfg.mode, w.cfg.k, w.cfg.terms, w.cfg.delta_T};
        emit(w, c.id, "create");
        send(w, c.id, kEscrow, w.cfg.delta_T, OnChainMsg{CreateMsg{params}});
        return;
    }
    if (c.T_feed && w.T >= *c.T_feed) {
        std::vector<PartyId> responded;
        for (const auto& [id, _] : c.keys)
            if (c.responses.count(id)) responded.push_back(id);
        auto out = client_decide_output(c);
        std::uint32_t q = w.asked;
        emit(w, c.id, "output", {{"q", std::to_string(q)}, {"value", out ? b2s(*out == Claim::True) : "none"}});
        auto bundle = client_on_feed_deadline(c);
        std::vector<PartyId> sent;
        if (bundle)
            for (const auto& e : bundle->entries) sent.push_back(e.relay);
        std::string ids;
        for (const auto& s : sent) ids += (ids.empty() ? "" : ",") + s;
        std::string resp;
        for (const auto& s : responded) resp += (resp.empty() ? "" : ",") + s;
        emit(w, c.id, "feedback",
             {{"q", std::to_string(q)},
              {"report", report_label(c, sent, responded, !bundle)},
              {"responded", resp.empty() ? "-" : resp},
              {"sent", ids.empty() ? "-" : ids}});
        if (bundle) send(w, c.id, kEscrow, w.cfg.delta_T, OnChainMsg{FeedbackMsg{*bundle}});
    }
    if (w.next_request && w.T >= *w.next_request && !c.T_feed) {
        w.next_request.reset();
        if (c.strategy.abort_after && w.asked >= *c.strategy.abort_after) {
            emit(w, c.id, "abort", {{"after", std::to_string(w.asked)}});
            w.done = true;
            return;
        }
        if (w.asked >= w.plan.size()) {
            w.done = true;
            return;
        }
        const PlannedQuery& pq = w.plan[w.asked];
        ChainPredicate pred = client_on_app_request(c, pq.spec, w.T);
        pred.ell = pq.ell;
        ++w.asked;
        emit(w, kSim, "truth", {{"q", std::to_string(w.asked)}, {"value", b2s(pq.truth)}});
        emit(w, c.id, "request", {{"q", std::to_string(w.asked)}, {"pred", pred.describe()}});
        send(w, c.id, kEscrow, w.cfg.delta_T, OnChainMsg{RequestMsg{pred}});
        // request lands at +dT, feedback by +3dT, timer at +4dT, debate window to +5dT
        w.next_request = w.T + 6ull * w.cfg.delta_T;
    }
}

}  // namespace

World make_world(const ScenarioConfig& cfg) {
    World w;
    w.cfg = cfg;
    w.cfg.queries.resize(cfg.k);
    std::mt19937_64 rng(cfg.seed);
    build_setup_chain(w, rng);
    plan_queries(w, rng);
    for (const auto& [who, amt] : cfg.balances) w.chain.ledger[who] = amt;
    w.chain.ledger[kEscrow] += Money();
    w.chain.ledger[kBurnSink] += Money();

    const int m = relay_count(cfg.mode);
    for (int i = 0; i < m; ++i) {
        RelayState r;
        r.id = i == 0 ? kRelay1 : kRelay2;
        r.keys = keygen(cfg.seed * 8 + static_cast<std::uint64_t>(i) + 1);
        r.strategy = i == 0 ? cfg.relay1 : cfg.relay2;
        w.relays.push_back(r);
    }
    w.client.strategy = cfg.client;
    w.client.m = m;
    w.client.delta_T = cfg.delta_T;
    if (cfg.pfn && cfg.mode == IncentiveKind::OneRelayAugmented) {
        w.pfn = PfnState{};
        w.pfn->strategy = *cfg.pfn;
        w.chain.ledger[kPfn] += Money();
    }
    w.T = w.chain.tip();
    return w;
}

void advance_round(World& w) {
    w.T += 1;
    ByteWriter filler;
    filler.field("filler").u64(w.T);
    append_block(w.chain, {Transaction::make(filler.take())});

    // due messages first, in send order
    std::stable_sort(w.queue.begin(), w.queue.end(),
                     [](const Envelope& a, const Envelope& b) { return a.seq < b.seq; });
    std::vector<Envelope> due;
    std::deque<Envelope> later;
    for (auto& e : w.queue) {
        if (e.due <= w.T) due.push_back(std::move(e));
        else later.push_back(std::move(e));
    }
    w.queue = std::move(later);
    for (auto& e : due) deliver(w, std::move(e));

    record(w, on_timer(w.contract, w.T, w.chain.ledger, w.chain.blockhashes));

    if (!w.done) client_step(w);
}

std::pair<std::vector<SimEvent>, SimReport> run_scenario(const ScenarioConfig& cfg) {
    World w = make_world(cfg);
    const Money total0 = ledger_total(w.chain.ledger);
    {
        std::vector<std::pair<std::string, std::string>> f = {
            {"name", cfg.name}, {"mode", to_string(cfg.mode)}, {"k", std::to_string(cfg.k)},
            {"p", cfg.terms.p.str()}, {"e", cfg.terms.e.str()}, {"r", cfg.terms.r.str()},
            {"d_L", cfg.terms.d_L.str()}, {"d_F", cfg.terms.d_F.str()}, {"delta_T", std::to_string(cfg.delta_T)},
            {"seed", std::to_string(cfg.seed)}};
        emit(w, kSim, "params", std::move(f));
        emit(w, kSim, "chain", {{"blocks", std::to_string(w.chain.length())},
                                {"tip", w.chain.blockhashes.at(w.chain.tip()).hex().substr(0, 16)}});
    }
    const Height limit = w.T + 16 + static_cast<Height>(cfg.k + 2) * 8 * cfg.delta_T;
    while (w.T < limit) {
        advance_round(w);
        bool idle = w.queue.empty() && !w.client.T_feed &&
                    (w.contract.phase == Phase::Ready || w.contract.phase == Phase::Expired);
        if ((w.done || w.contract.phase == Phase::Expired) && idle) break;
    }
    std::vector<std::pair<std::string, std::string>> fin;
    for (const auto& [who, v] : w.chain.ledger) fin.emplace_back("bal." + who, v.str());
    fin.emplace_back("conserved", ledger_total(w.chain.ledger) == total0 ? "1" : "0");
    emit(w, kSim, "final", std::move(fin));
    SimReport rep = report_from_trace(w.trace, cfg.econ);
    return {std::move(w.trace), std::move(rep)};
}

}  // namespace slc
