// SPDX-License-Identifier: MIT
#include "slc/game.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

using namespace slc;
using slc::testing::golden_lines;
using slc::testing::kv;
using slc::testing::read_file;
using slc::testing::split;

namespace {

GameSpec theorem1_spec(std::uint32_t k = 1) {
    GameSpec s;
    s.mode = GameMode::TwoRelay;
    s.k = k;
    s.terms = {Money(4), Money(1), Money(0), Money(10), Money(10)};
    s.econ.c = Money(6), s.econ.v = Money(12), s.econ.v1 = Money(5), s.econ.v2 = Money(5);
    return s;
}

std::vector<std::string> words(const std::string& s) { return split(s); }

// Parameter points from the '# point=' headers of a utilities table.
std::map<int, GameSpec> points_of(const std::string& rel, GameSpec base) {
    std::map<int, GameSpec> out;
    std::istringstream in(read_file(rel));
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("# point=", 0) != 0) continue;
        auto f = kv(split(line.substr(2)));
        GameSpec s = base;
        auto m = [&](const char* key) { return Money::parse(f.at(key)); };
        s.terms = {m("p"), m("e"), m("r"), m("d_L"), m("d_F")};
        s.econ.c = m("c"), s.econ.v = m("v"), s.econ.v1 = m("v_1"), s.econ.v2 = m("v_2");
        s.econ.epsilon = m("epsilon");
        out[std::stoi(f.at("point"))] = s;
    }
    return out;
}

const InfoSet* find_set(const GameTree& g, const std::string& key) {
    for (const auto& is : g.infosets)
        if (is.key == key) return &is;
    return nullptr;
}

Payoff at(const GameTree& g, const std::string& history) {
    for (std::uint32_t n = 0; n < g.nodes.size(); ++n) {
        if (!g.nodes[n].terminal_node()) continue;
        auto h = g.history(n);
        std::string j;
        for (const auto& a : h) j += (j.empty() ? "" : " ") + a;
        if (j == history) return g.utilities[g.nodes[n].terminal];
    }
    FAIL("no terminal " << history);
    return {};
}

}  // namespace

TEST_SUITE("game_theory") {

TEST_CASE("terminal counts match the reference enumeration") {
    int seen = 0;
    for (const auto& line : golden_lines("tests/golden/terminal_counts.txt")) {
        auto parts = split(line);
        auto f = kv(parts);
        GameSpec s = theorem1_spec(std::stoul(f["k"]));
        std::string mode = parts[0];
        s.mode = mode == "two_relay" ? GameMode::TwoRelay : mode == "one_relay" ? GameMode::OneRelay : GameMode::Augmented;
        s.pfn_forced_idle = mode == "augmented_idle";
        std::uint64_t want = std::stoull(f["terminals"]);
        CHECK(count_terminals(s) == want);
        CHECK(build_game(s).terminal_count() == want);
        ++seen;
    }
    CHECK(seen == 8);
    CHECK_THROWS_AS(build_game(theorem1_spec(3), 1'000'000), TooLarge);
}

TEST_CASE("every k=1 terminal utility matches the derived tables") {
    struct Table {
        const char* file;
        GameMode mode;
        bool idle;
    };
    for (auto [file, mode, idle] : {Table{"two_relay", GameMode::TwoRelay, false},
                                    Table{"one_relay", GameMode::OneRelay, false},
                                    Table{"augmented", GameMode::Augmented, false},
                                    Table{"augmented_idle", GameMode::Augmented, true}}) {
        std::string rel = std::string("tests/golden/utilities_") + file + "_k1.txt";
        GameSpec base;
        base.mode = mode;
        base.pfn_forced_idle = idle;
        auto points = points_of(rel, base);
        REQUIRE(points.size() == 2);
        std::map<int, GameTree> trees;
        for (auto& [i, s] : points) trees.emplace(i, build_game(s));

        std::size_t rows = 0;
        for (const auto& line : golden_lines(rel)) {
            auto bar = line.find('|');
            auto lhs = words(line.substr(0, bar));
            auto rhs = words(line.substr(bar + 1));
            int point = std::stoi(lhs[0]);
            std::vector<std::string> h(lhs.begin() + 1, lhs.end());
            Payoff u = utility_of(h, points[point]);
            Payoff t = at(trees.at(point), line.substr(lhs[0].size() + 1, bar - lhs[0].size() - 2));
            CAPTURE(line);
            for (int p = 0; p < kNumPlayers; ++p) {
                CHECK(u[p] == parse_rational(rhs[p]));
                CHECK(t[p] == u[p]);
            }
            ++rows;
        }
        CHECK(rows == 2 * trees.at(0).terminal_count());
    }
}

TEST_CASE("stage examples from the utility tables") {
    GameSpec s = theorem1_spec();
    const Rational p(4), dL(10), dF(10), c(6), v(12);
    // single stage, so every non-B terminal also carries the closing d_L
    auto delta = [&](const std::string& h) {
        Payoff u = utility_of(words(h), s);
        u[0] -= dL;
        return u;
    };
    Payoff qatt = delta("Q a t t TA");
    CHECK(qatt[0] == dL - p);
    CHECK(qatt[1] == p / 2 + dF);
    CHECK(qatt[2] == p / 2 + dF);

    Payoff fooled = delta("Q a' f f TA");
    CHECK(fooled[0] == dL - v + 2 * dF);
    CHECK(fooled[1] == Rational(5));
    CHECK(fooled[2] == Rational(5));

    CHECK(delta("Q a t t TO")[0] == -c - p);
    CHECK(utility_of({"B"}, s) == Payoff{});

    CHECK_THROWS_AS(utility_of(words("Q a t"), s), NotTerminal);
    CHECK_THROWS_AS(utility_of(words("Q a t t LA"), [] {
                        GameSpec o = theorem1_spec();
                        o.mode = GameMode::OneRelay;
                        return o;
                    }()),
                    NotTerminal);
    CHECK_THROWS_AS(utility_of(words("B Q"), s), NotTerminal);
}

TEST_CASE("two stages add up and the closing d_L comes once") {
    GameSpec s = theorem1_spec(2);
    GameSpec one = theorem1_spec(1);
    Payoff a = utility_of(words("Q a t t TA"), one), b = utility_of(words("Q a' t t TA'"), one);
    Payoff both = utility_of(words("Q a t t TA Q a' t t TA'"), s);
    for (int p = 0; p < kNumPlayers; ++p) CHECK(both[p] == a[p] + b[p] - (p == 0 ? Rational(10) : Rational(0)));
    // quitting at the second stage forfeits the closing d_L
    Payoff quit = utility_of(words("Q a t t TA B"), s);
    CHECK(quit[0] == a[0] - 10);
}

TEST_CASE("one relay: the client sees three kinds of answer") {
    GameSpec s = theorem1_spec();
    s.mode = GameMode::OneRelay;
    GameTree g = build_game(s);
    std::set<std::string> post;
    for (const auto& is : g.infosets)
        if (is.owner == 0 && is.final_client_stage) post.insert(is.key);
    CHECK(post.size() == 3);
    // true-and-honest shares a set with false-and-lying
    const InfoSet* claimT = find_set(g, "LW:Q|c=T");
    REQUIRE(claimT);
    std::set<std::string> hs;
    for (auto n : claimT->nodes) {
        auto h = g.history(n);
        hs.insert(h[1] + h[2]);
    }
    CHECK(hs == std::set<std::string>{"at", "a'f"});
}

TEST_CASE("two relays: nine client sets after the answers") {
    GameTree g = build_game(theorem1_spec());
    std::size_t post = 0;
    for (const auto& is : g.infosets)
        if (is.owner == 0 && is.final_client_stage) ++post;
    CHECK(post == 9);
    // R2 moves without seeing R1
    for (const auto& is : g.infosets)
        if (is.owner == 2) CHECK(is.nodes.size() == 3);
}

TEST_CASE("the full node decides to watch first and may debate only a hidden truth") {
    GameSpec s = theorem1_spec();
    s.mode = GameMode::Augmented;
    GameTree g = build_game(s);
    CHECK(g.nodes[0].player == 3);
    CHECK(g.infosets[g.nodes[0].infoset].actions == std::vector<std::string>{"m", "x"});
    std::size_t debate_sets = 0;
    for (const auto& is : g.infosets) {
        if (is.owner != 3 || is.actions != std::vector<std::string>{"d", "n"}) continue;
        ++debate_sets;
        for (auto n : is.nodes) {
            auto h = g.history(n);
            CHECK(h[0] == "m");
            CHECK(h[2] == "a");
            CHECK(h[3] == "f");
            CHECK(h[4][0] == 'T');
        }
    }
    CHECK(debate_sets == 1);

    s.pfn_forced_idle = true;
    GameTree idle = build_game(s);
    CHECK(idle.infosets[idle.nodes[0].infoset].actions == std::vector<std::string>{"x"});
}

TEST_CASE("tree shape does not depend on rho") {
    GameSpec a = theorem1_spec(), b = theorem1_spec();
    a.econ.rho = Rational(1, 3);
    b.econ.rho = Rational(9, 10);
    GameTree ga = build_game(a), gb = build_game(b);
    REQUIRE(ga.nodes.size() == gb.nodes.size());
    REQUIRE(ga.infosets.size() == gb.infosets.size());
    for (std::size_t i = 0; i < ga.infosets.size(); ++i) CHECK(ga.infosets[i].key == gb.infosets[i].key);
    CHECK(ga.utilities == gb.utilities);
    CHECK(ga.chance_prob(0) == Rational(1, 3));
    CHECK(gb.chance_prob(1) == Rational(1, 10));
}

TEST_CASE("honest value at the root is the two-term expansion") {
    for (Rational rho : {Rational(1, 2), Rational(1, 5)}) {
        GameSpec s = theorem1_spec();
        s.econ.rho = rho;
        GameTree g = build_game(s);
        Profile h = honest_profile(g, Rational(1, 1000000));
        auto vals = node_values(g, h);
        Payoff yes = utility_of(words("Q a t t TA"), s), no = utility_of(words("Q a' t t TA'"), s);
        for (int p = 0; p < 3; ++p) CHECK(vals[0][p] == rho * yes[p] + (1 - rho) * no[p]);
        auto path = on_path_histories(g, h);
        CHECK(path == std::vector<std::string>{"Qa'ttTA'", "QattTA"});
        CHECK(path == expected_honest_path(s));
    }
}

TEST_CASE("pure profiles give singleton values and uniform beliefs average") {
    GameSpec s = theorem1_spec();
    s.mode = GameMode::OneRelay;
    GameTree g = build_game(s);
    Profile h = honest_profile(g, Rational(1, 1000000));
    Assessment a = beliefs_from_trembles(g, h, Rational(0));
    // the root set of the client is a singleton
    int qb = g.nodes[0].infoset;
    CHECK(expected_utility(g, a, 0, qb) == node_values(g, h)[0][0]);

    // a fully mixed profile needs no trembles: exact Bayes at c=T
    GameSpec skew = s;
    skew.econ.rho = Rational(1, 4);
    GameTree gs = build_game(skew);
    Profile mixed = pure_profile(gs, std::vector<std::size_t>(gs.infosets.size(), 0));
    for (std::size_t i = 0; i < gs.infosets.size(); ++i) {
        auto n = gs.infosets[i].actions.size();
        mixed.probs[i].assign(n, Rational(1, static_cast<long>(n)));
    }
    Assessment exact = beliefs_from_trembles(gs, mixed, Rational(0));
    const InfoSet* claimT = find_set(gs, "LW:Q|c=T");
    int idx = static_cast<int>(claimT - gs.infosets.data());
    for (std::size_t j = 0; j < claimT->nodes.size(); ++j) {
        bool truth = gs.history(claimT->nodes[j])[1] == "a";
        CHECK(exact.beliefs[idx][j] == (truth ? Rational(1, 4) : Rational(3, 4)));
    }
    // with a uniform belief, the set's value is the average of its members'
    std::vector<Payoff> vals = node_values(gs, mixed);
    Rational avg = (vals[claimT->nodes[0]][0] + vals[claimT->nodes[1]][0]) / 2;
    Assessment flat = exact;
    flat.beliefs[idx] = {Rational(1, 2), Rational(1, 2)};
    CHECK(expected_utility(gs, flat, 0, idx) == avg);
}

TEST_CASE("tremble beliefs settle as eta shrinks") {
    GameTree g = build_game(theorem1_spec());
    Profile h = honest_profile(g, Rational(1, 1000000));
    Assessment coarse = beliefs_from_trembles(g, h, Rational(1, 1000));
    Assessment fine = beliefs_from_trembles(g, h, Rational(1, 1000000));
    auto reach = reach_probabilities(g, h);
    std::size_t on_path = 0;
    for (std::size_t i = 0; i < g.infosets.size(); ++i) {
        bool reached = false;
        for (auto n : g.infosets[i].nodes) reached |= reach[n] > 0;
        for (std::size_t j = 0; j < g.infosets[i].nodes.size(); ++j) {
            double drift = std::fabs(Rational(coarse.beliefs[i][j] - fine.beliefs[i][j]).get_d());
            if (reached) CHECK(drift < 1e-2);
        }
        on_path += reached;
    }
    CHECK(on_path > 0);

    // Off path: both relays agree on c=F while the truth is a. Under honest
    // play that needs either two trembles (a,f,f) or none (a',t,t).
    const InfoSet* ff = find_set(g, "LW:Q|c=FF");
    REQUIRE(ff);
    int idx = static_cast<int>(ff - g.infosets.data());
    for (std::size_t j = 0; j < ff->nodes.size(); ++j) {
        auto hist = g.history(ff->nodes[j]);
        if (hist[1] == "a'") CHECK(fine.beliefs[idx][j] > Rational(999999, 1000000));
    }
}

TEST_CASE("one-shot search finds nothing at the honest profile when the conditions hold") {
    GameTree g = build_game(theorem1_spec());
    Profile h = honest_profile(g, Rational(1, 1000000));
    SearchStats stats;
    auto dev = find_profitable_deviation(g, h, Rational(1, 1000000), Rational(0), &stats);
    CHECK_FALSE(dev.has_value());
    CHECK(stats.infosets == g.infosets.size());
    CHECK(stats.tested > 0);
}

}  // TEST_SUITE
