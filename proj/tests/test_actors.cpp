// SPDX-License-Identifier: MIT
#include "slc/actors.hpp"

#include <doctest.h>

using namespace slc;

namespace {

struct Stage {
    Chain chain;
    Transaction planted = Transaction::make(to_bytes("paid-invoice"));
    RelayState r1{"R1", keygen(201), {}}, r2{"R2", keygen(202), {}};
    ClientState lw;

    Stage() {
        for (int b = 0; b < 8; ++b) {
            std::vector<Transaction> txs{Transaction::make(to_bytes("f" + std::to_string(b))),
                                         Transaction::make(to_bytes("g" + std::to_string(b)))};
            if (b == 3) txs.push_back(planted);
            append_block(chain, txs);
        }
        lw.m = 2;
        lw.delta_T = 1;
        client_on_initialized(lw, {{"R1", r1.keys.pub}, {"R2", r2.keys.pub}}, 2);
    }

    ChainPredicate ask(bool truth, Height T = 6) {
        PredicateSpec spec = TxidEquals{truth ? planted.txid : hash(to_bytes("missing"))};
        return client_on_app_request(lw, spec, T);
    }
};

bool says_true(const ResponseMsg& m) { return *claim_of(m.result) == Claim::True; }

}  // namespace

TEST_SUITE("actors") {

TEST_CASE("strategies map onto game actions") {
    for (bool truth : {true, false}) {
        CHECK(relay_action({RelayPolicy::Honest}, truth) == 't');
        CHECK(relay_action({RelayPolicy::AlwaysOpposite}, truth) == 'f');
        CHECK(relay_action({RelayPolicy::Silent}, truth) == 'x');
        CHECK(relay_action({RelayPolicy::Collude, RelayPolicy::Silent}, truth) == 'x');
    }
    CHECK(relay_action({RelayPolicy::FakeProofOnFalse}, true) == 't');
    CHECK(relay_action({RelayPolicy::FakeProofOnFalse}, false) == 'f');
    for (auto s : {"honest", "always_opposite", "silent", "fake_proof", "collude"})
        CHECK(to_string(*parse_relay_policy(s)) == s);
    CHECK_FALSE(parse_relay_policy("greedy").has_value());
    CHECK(to_string(*parse_report_rule("withhold")) == "withhold");
    CHECK(to_string(*parse_output_rule("none")) == "none");
    CHECK_FALSE(parse_pfn_policy("sleep").has_value());
}

TEST_CASE("request arms the feedback deadline and expires after k") {
    Stage st;
    CHECK_FALSE(st.lw.online);
    auto p = st.ask(true, 6);
    CHECK(p.N == 6);
    CHECK(st.lw.T_feed == Height{8});
    CHECK(st.lw.ctr_lw == 2);  // unchanged until feedback
    st.lw.strategy.report = ReportRule::Withhold;
    CHECK_FALSE(client_on_feed_deadline(st.lw).has_value());
    CHECK(st.lw.ctr_lw == 1);
    st.ask(false, 7);
    client_on_feed_deadline(st.lw);
    CHECK(st.lw.ctr_lw == 0);
    CHECK_THROWS_AS(st.ask(true, 7), ProtocolExpired);
}

TEST_CASE("honest relays answer with the evaluated truth") {
    Stage st;
    auto p = st.ask(true);
    auto m1 = relay_on_querying(st.r1, st.lw.ctr_lw, p, st.chain);
    REQUIRE(m1.has_value());
    CHECK(says_true(*m1));
    auto sigma = decode_result(m1->result);
    CHECK(validate_true(std::get<TruthProof>(*sigma), p, st.chain.blockhashes));
    CHECK(verify(feedback_message(m1->result, 2), m1->sig, st.r1.keys.pub));

    auto q = st.ask(false);
    auto m2 = relay_on_querying(st.r2, st.lw.ctr_lw, q, st.chain);
    CHECK_FALSE(says_true(*m2));
}

TEST_CASE("opposite relays lie both ways and their sigma fails validation") {
    Stage st;
    st.r1.strategy.policy = RelayPolicy::AlwaysOpposite;
    auto p = st.ask(true);
    CHECK_FALSE(says_true(*relay_on_querying(st.r1, 2, p, st.chain)));

    auto q = st.ask(false);
    auto lie = relay_on_querying(st.r1, 2, q, st.chain);
    REQUIRE(lie.has_value());
    CHECK(says_true(*lie));
    auto sigma = decode_result(lie->result);
    REQUIRE(sigma.has_value());
    CHECK_FALSE(validate_true(std::get<TruthProof>(*sigma), q, st.chain.blockhashes));

    st.r2.strategy.policy = RelayPolicy::Silent;
    CHECK_FALSE(relay_on_querying(st.r2, 2, q, st.chain).has_value());
}

TEST_CASE("fabricated proofs are well formed, salted and never on chain") {
    Stage st;
    auto q = st.ask(false);
    for (std::uint64_t salt = 0; salt < 50; ++salt) {
        TruthProof s = fabricate_proof(q, salt);
        REQUIRE(s.txs.size() == std::max<std::size_t>(1, q.ell));
        CHECK(s.blocks[0].height == q.N);
        CHECK(vrfy_mtp(s.blocks[0].root, s.mtps[0], s.txs[0].txid));
        CHECK_FALSE(validate_true(s, q, st.chain.blockhashes));
        if (salt) CHECK_FALSE(s == fabricate_proof(q, salt - 1));
    }
}

TEST_CASE("client records only fresh, signed, on-time responses") {
    Stage st;
    auto p = st.ask(true, 6);
    auto m1 = *relay_on_querying(st.r1, 2, p, st.chain);
    auto m2 = *relay_on_querying(st.r2, 2, p, st.chain);

    ResponseMsg forged = m1;
    forged.sig[0] ^= 1;
    CHECK_FALSE(client_on_response(st.lw, "R1", forged, 7));
    CHECK_FALSE(client_on_response(st.lw, "R2", m1, 7));  // R1's signature under R2's name
    CHECK_FALSE(client_on_response(st.lw, "R1", m1, 9));  // past T_feed = 8
    ResponseMsg stale = *relay_on_querying(st.r1, 1, p, st.chain);
    CHECK_FALSE(client_on_response(st.lw, "R1", stale, 7));
    CHECK_FALSE(client_on_response(st.lw, "R3", m1, 7));

    CHECK(client_on_response(st.lw, "R1", m1, 7));
    CHECK_FALSE(client_on_response(st.lw, "R1", m1, 7));  // duplicate
    CHECK(client_on_response(st.lw, "R2", m2, 8));
    CHECK(st.lw.responses.size() == 2);
}

TEST_CASE("a response for one query is not accepted at the next") {
    Stage st;
    auto p = st.ask(true);
    auto old = *relay_on_querying(st.r1, 2, p, st.chain);
    client_on_feed_deadline(st.lw);
    st.ask(true);
    CHECK_FALSE(client_on_response(st.lw, "R1", old, 7));
    ResponseMsg relabelled = old;
    relabelled.ctr = 1;
    CHECK_FALSE(client_on_response(st.lw, "R1", relabelled, 7));
}

TEST_CASE("honest output needs every relay and agreement") {
    Stage st;
    auto p = st.ask(true);
    auto t1 = *relay_on_querying(st.r1, 2, p, st.chain);
    CHECK(client_on_response(st.lw, "R1", t1, 7));
    CHECK_FALSE(client_decide_output(st.lw).has_value());  // R2 still silent

    st.r2.strategy.policy = RelayPolicy::AlwaysOpposite;
    CHECK(client_on_response(st.lw, "R2", *relay_on_querying(st.r2, 2, p, st.chain), 7));
    CHECK_FALSE(client_decide_output(st.lw).has_value());  // conflict: output nothing

    st.lw.strategy.output = OutputRule::AlwaysFalse;
    CHECK(client_decide_output(st.lw) == Claim::False);
    st.lw.strategy.output = OutputRule::AlwaysTrue;
    CHECK(client_decide_output(st.lw) == Claim::True);

    Stage solo;
    solo.lw.m = 1;
    client_on_initialized(solo.lw, {{"R1", solo.r1.keys.pub}}, 1);
    auto q = solo.ask(true);
    CHECK(client_on_response(solo.lw, "R1", *relay_on_querying(solo.r1, 1, q, solo.chain), 7));
    CHECK(client_decide_output(solo.lw) == Claim::True);
}

TEST_CASE("unparseable results count as bottom claims") {
    CHECK(claim_of(Bytes{1, 2, 3}) == Claim::False);
    CHECK(claim_of(encode_result(Bottom{})) == Claim::False);
}

TEST_CASE("feedback bundles follow the report rule") {
    auto run = [](ReportRule rule, bool r1_speaks, bool r2_speaks) {
        Stage st;
        st.lw.strategy.report = rule;
        auto p = st.ask(true);
        if (r1_speaks) client_on_response(st.lw, "R1", *relay_on_querying(st.r1, 2, p, st.chain), 7);
        if (r2_speaks) client_on_response(st.lw, "R2", *relay_on_querying(st.r2, 2, p, st.chain), 7);
        auto b = client_on_feed_deadline(st.lw);
        CHECK(st.lw.responses.empty());
        CHECK_FALSE(st.lw.T_feed.has_value());
        return b;
    };
    CHECK(run(ReportRule::All, true, true)->entries.size() == 2);
    CHECK(run(ReportRule::All, false, true)->entries.size() == 1);
    auto left = run(ReportRule::Left, true, true);
    REQUIRE(left->entries.size() == 1);
    CHECK(left->entries[0].relay == "R1");
    CHECK(run(ReportRule::Right, true, true)->entries[0].relay == "R2");
    CHECK(run(ReportRule::Left, false, true)->entries.empty());
    CHECK_FALSE(run(ReportRule::Withhold, true, true).has_value());
}

TEST_CASE("public full node debates only provable lies") {
    Stage st;
    ContractState view;
    view.phase = Phase::Debating;
    view.ctr = 1;

    PfnState pfn;
    view.debate = make_predicate(TxidEquals{st.planted.txid}, 6);
    auto d = pfn_on_observe(pfn, view, st.chain);
    REQUIRE(d.has_value());
    auto sigma = TruthProof::deserialize(d->sigma);
    REQUIRE(sigma.has_value());
    CHECK(validate_true(*sigma, d->predicate, st.chain.blockhashes));
    CHECK_FALSE(pfn_on_observe(pfn, view, st.chain).has_value());  // once per query

    PfnState fresh;
    view.debate = make_predicate(TxidEquals{hash(to_bytes("missing"))}, 6);
    CHECK_FALSE(pfn_on_observe(fresh, view, st.chain).has_value());

    PfnState idle;
    idle.strategy.policy = PfnPolicy::Idle;
    view.debate = make_predicate(TxidEquals{st.planted.txid}, 6);
    CHECK_FALSE(pfn_on_observe(idle, view, st.chain).has_value());

    view.phase = Phase::Ready;
    CHECK_FALSE(pfn_on_observe(fresh, view, st.chain).has_value());
}

}  // TEST_SUITE
