// SPDX-License-Identifier: MIT
#include "slc/game.hpp"

#include <algorithm>

namespace slc {

std::string to_string(GameMode m) {
    switch (m) {
        case GameMode::TwoRelay: return "two_relay";
        case GameMode::OneRelay: return "one_relay";
        case GameMode::Augmented: return "augmented";
    }
    return "?";
}

std::string player_name(int player, bool coalition) {
    switch (player) {
        case 0: return "LW";
        case 1: return coalition ? "R" : "R1";
        case 2: return "R2";
        case 3: return "PFN";
    }
    return "chance";
}

namespace {

// One stage of play, as far as payoffs care.
struct StageRecord {
    bool monitor = false;
    bool truth = true;
    char a1 = 'x', a2 = 'x';
    char report = 'T';
    std::string output = "A";  // A, A' or O
    char debate = 0;           // d / n when the PFN had the choice
};

std::optional<EntryClass> entry(char action, bool truth) {
    if (action == 'x') return std::nullopt;
    if (action == 't') return truth ? EntryClass::ValidProof : EntryClass::Bottom;
    return truth ? EntryClass::Bottom : EntryClass::InvalidProof;
}

char claim(char action, bool truth) {
    if (action == 'x') return '-';
    return (action == 't') == truth ? 'T' : 'F';
}

Payoff stage_payoff(const GameSpec& g, const StageRecord& rec) {
    const Terms& t = g.terms;
    auto c1 = entry(rec.a1, rec.truth), c2 = entry(rec.a2, rec.truth);
    bool send1 = rec.report == 'T' || rec.report == 'L';
    bool send2 = rec.report == 'T' || rec.report == 'R';
    Settlement st;
    switch (g.mode) {
        case GameMode::TwoRelay:
            st = settle_two_relay(send1 ? c1 : std::nullopt, send2 ? c2 : std::nullopt, t);
            break;
        case GameMode::OneRelay:
            st = settle_one_relay(send1 ? c1 : std::nullopt, t);
            break;
        case GameMode::Augmented:
            st = settle_augmented(send1 ? c1 : std::nullopt, t);
            if (st.debate_opened) st = settle_debate_window(rec.debate == 'd', t);
            break;
    }
    auto credit = [&](const PartyId& who) {
        auto it = st.credits.find(who);
        return it == st.credits.end() ? Rational(0) : it->second.value();
    };
    Payoff u{};
    u[0] = credit(kClient) - (t.p + t.e).value();
    u[1] = credit(kRelay1);
    u[2] = credit(kRelay2);
    u[3] = credit(kPfn);
    bool two = g.mode == GameMode::TwoRelay;
    if (rec.output == "O") {
        u[0] -= (g.econ.c + t.d_L).value();
    } else if ((rec.output == "A") != rec.truth) {
        u[0] -= g.econ.v.value();
        u[1] += g.econ.v1.value();
        if (two) u[2] += g.econ.v2.value();
    }
    if (rec.a1 == 'x') u[1] += g.econ.epsilon.value();
    if (two && rec.a2 == 'x') u[2] += g.econ.epsilon.value();
    return u;
}

bool debate_node(const GameSpec& g, const StageRecord& rec) {
    return g.mode == GameMode::Augmented && rec.monitor && rec.truth && rec.a1 == 'f' && rec.report == 'T';
}

std::vector<std::string> client_actions(bool both_responded) {
    std::vector<std::string> reports = both_responded ? std::vector<std::string>{"T", "L", "R", "X"}
                                                      : std::vector<std::string>{"T", "X"};
    std::vector<std::string> out;
    for (const auto& r : reports)
        for (const char* o : {"A", "A'", "O"}) out.push_back(r + o);
    return out;
}

void add(Payoff& a, const Payoff& b) {
    for (int i = 0; i < kNumPlayers; ++i) a[i] += b[i];
}

struct Builder {
    GameTree& g;
    const GameSpec& s;
    std::map<std::string, int> index;

    struct Ctx {
        std::uint16_t stage = 0;
        std::array<std::string, kNumPlayers> obs;
        Payoff acc{};
        StageRecord rec;
    };

    int infoset(int owner, const std::string& key, const std::vector<std::string>& actions, std::uint16_t stage) {
        auto [it, fresh] = index.emplace(key, static_cast<int>(g.infosets.size()));
        if (fresh) g.infosets.push_back({owner, key, actions, {}, stage, false});
        return it->second;
    }

    std::uint32_t alloc(std::uint32_t parent, std::size_t n) {
        auto first = static_cast<std::uint32_t>(g.nodes.size());
        for (std::size_t i = 0; i < n; ++i) {
            GameNode c;
            c.parent = static_cast<int>(parent);
            c.action = static_cast<std::uint16_t>(i);
            c.stage = g.nodes[parent].stage;
            g.nodes.push_back(c);
        }
        g.nodes[parent].first_child = first;
        g.nodes[parent].n_children = static_cast<std::uint16_t>(n);
        return first;
    }

    std::uint32_t decision(std::uint32_t id, int owner, const std::string& key, const std::vector<std::string>& acts,
                           std::uint16_t stage) {
        int j = infoset(owner, key, acts, stage);
        g.nodes[id].player = owner;
        g.nodes[id].infoset = j;
        g.infosets[j].nodes.push_back(id);
        return alloc(id, acts.size());
    }

    void terminal(std::uint32_t id, const Payoff& u, bool continues) {
        g.nodes[id].terminal = static_cast<int>(g.utilities.size());
        g.nodes[id].continues = continues;
        g.utilities.push_back(u);
    }

    void stage_start(std::uint32_t id, Ctx ctx) {
        g.nodes[id].stage = ctx.stage;
        if (s.mode != GameMode::Augmented) return query(id, std::move(ctx));
        std::vector<std::string> acts = s.pfn_forced_idle ? std::vector<std::string>{"x"}
                                                          : std::vector<std::string>{"m", "x"};
        auto first = decision(id, 3, "PFN:" + ctx.obs[3] + "|watch", acts, ctx.stage);
        for (std::size_t i = 0; i < acts.size(); ++i) {
            Ctx c = ctx;
            c.rec.monitor = acts[i] == "m";
            c.obs[3] += acts[i];
            query(first + static_cast<std::uint32_t>(i), std::move(c));
        }
    }

    void query(std::uint32_t id, Ctx ctx) {
        auto first = decision(id, 0, "LW:" + ctx.obs[0] + "|qb", {"Q", "B"}, ctx.stage);
        Payoff u = ctx.acc;  // B ends the game, no further returns
        terminal(first + 1, u, false);
        for (auto& o : ctx.obs) o += "Q";
        chance(first, std::move(ctx));
    }

    void chance(std::uint32_t id, Ctx ctx) {
        g.nodes[id].player = kChancePlayer;
        auto first = alloc(id, 2);
        for (int i = 0; i < 2; ++i) {
            Ctx c = ctx;
            c.rec.truth = i == 0;
            const char* lab = i == 0 ? "a" : "a'";
            c.obs[1] += lab;
            c.obs[2] += lab;
            relay1(first + i, std::move(c));
        }
    }

    void relay1(std::uint32_t id, Ctx ctx) {
        const std::vector<std::string> acts = {"t", "f", "x"};
        std::string key = (s.coalition ? "R:" : "R1:") + ctx.obs[1];
        auto first = decision(id, 1, key, acts, ctx.stage);
        for (int i = 0; i < 3; ++i) {
            Ctx c = ctx;
            c.rec.a1 = acts[i][0];
            c.obs[1] += acts[i];
            if (s.mode == GameMode::TwoRelay) relay2(first + i, std::move(c));
            else client(first + i, std::move(c));
        }
    }

    void relay2(std::uint32_t id, Ctx ctx) {
        const std::vector<std::string> acts = {"t", "f", "x"};
        int owner = s.coalition ? 1 : 2;
        std::string key = s.coalition ? "R:" + ctx.obs[1] + "|2" : "R2:" + ctx.obs[2];
        auto first = decision(id, owner, key, acts, ctx.stage);
        for (int i = 0; i < 3; ++i) {
            Ctx c = ctx;
            c.rec.a2 = acts[i][0];
            (s.coalition ? c.obs[1] : c.obs[2]) += acts[i];
            client(first + i, std::move(c));
        }
    }

    void client(std::uint32_t id, Ctx ctx) {
        const bool two = s.mode == GameMode::TwoRelay;
        std::string claims(1, claim(ctx.rec.a1, ctx.rec.truth));
        if (two) claims += claim(ctx.rec.a2, ctx.rec.truth);
        bool both = two && claims.find('-') == std::string::npos;
        auto acts = client_actions(both);
        auto first = decision(id, 0, "LW:" + ctx.obs[0] + "|c=" + claims, acts, ctx.stage);
        if (ctx.stage + 1u == s.k) g.infosets[g.nodes[id].infoset].final_client_stage = true;
        for (std::size_t i = 0; i < acts.size(); ++i) {
            Ctx c = ctx;
            c.rec.report = acts[i][0];
            c.rec.output = acts[i].substr(1);
            c.obs[0] += claims + acts[i] + ";";
            // submitted entries are public on chain
            std::string pub(1, c.rec.report);
            c.obs[1] += pub + ";";
            c.obs[2] += pub + ";";
            c.obs[3] += pub;
            auto child = first + static_cast<std::uint32_t>(i);
            if (debate_node(s, c.rec)) pfn_debate(child, std::move(c));
            else stage_end(child, std::move(c));
        }
    }

    void pfn_debate(std::uint32_t id, Ctx ctx) {
        const std::vector<std::string> acts = {"d", "n"};
        auto first = decision(id, 3, "PFN:" + ctx.obs[3] + "|debate", acts, ctx.stage);
        for (int i = 0; i < 2; ++i) {
            Ctx c = ctx;
            c.rec.debate = acts[i][0];
            c.obs[3] += acts[i];
            stage_end(first + i, std::move(c));
        }
    }

    void stage_end(std::uint32_t id, Ctx ctx) {
        add(ctx.acc, stage_payoff(s, ctx.rec));
        ctx.obs[3] += ";";
        if (ctx.stage + 1u == s.k) {
            ctx.acc[0] += s.terms.d_L.value();  // full game: last locked d_L comes back
            terminal(id, ctx.acc, true);
            return;
        }
        Ctx next;
        next.stage = static_cast<std::uint16_t>(ctx.stage + 1);
        next.obs = std::move(ctx.obs);
        next.acc = ctx.acc;
        stage_start(id, std::move(next));
    }
};

}  // namespace

std::string GameTree::action_label(std::uint32_t node, std::size_t child) const {
    const GameNode& n = nodes[node];
    if (n.player == kChancePlayer) return child == 0 ? "a" : "a'";
    return infosets[n.infoset].actions[child];
}

std::vector<std::string> GameTree::history(std::uint32_t node) const {
    std::vector<std::string> out;
    for (int cur = static_cast<int>(node); nodes[cur].parent >= 0; cur = nodes[cur].parent)
        out.push_back(action_label(static_cast<std::uint32_t>(nodes[cur].parent), nodes[cur].action));
    std::reverse(out.begin(), out.end());
    return out;
}

Rational GameTree::chance_prob(std::size_t child) const {
    return child == 0 ? spec.econ.rho : Rational(1 - spec.econ.rho);
}

Rational GameTree::payoff(const Payoff& u, int player) const {
    if (spec.coalition && player == 1) return u[1] + u[2];
    return u[player];
}

std::uint64_t count_terminals(const GameSpec& s) {
    // per-stage leaves that continue, by mode
    std::uint64_t total = 1;
    for (std::uint32_t j = 0; j < s.k; ++j) {
        switch (s.mode) {
            case GameMode::TwoRelay: total = 1 + 156 * total; break;
            case GameMode::OneRelay: total = 1 + 36 * total; break;
            case GameMode::Augmented:
                total = s.pfn_forced_idle ? 1 + 36 * total : 2 + 75 * total;
                break;
        }
        if (total > (1ull << 60) / 160) return total;  // saturate, already far past any guard
    }
    return total;
}

GameTree build_game(const GameSpec& spec, std::uint64_t max_terminals) {
    if (spec.k < 1) throw BadParams("k must be at least 1");
    std::uint64_t n = count_terminals(spec);
    if (n > max_terminals) throw TooLarge(n);
    GameTree g;
    g.spec = spec;
    g.nodes.reserve(static_cast<std::size_t>(n * 3 / 2 + 16));
    g.utilities.reserve(static_cast<std::size_t>(n));
    g.nodes.emplace_back();
    Builder b{g, spec, {}};
    b.stage_start(0, {});
    return g;
}

Payoff utility_of(const std::vector<std::string>& h, const GameSpec& s) {
    std::size_t pos = 0;
    auto next = [&](std::initializer_list<const char*> allowed) -> std::string {
        if (pos >= h.size()) throw NotTerminal("history ends inside a stage");
        for (const char* a : allowed)
            if (h[pos] == a) return h[pos++];
        throw NotTerminal("unexpected action '" + h[pos] + "' at position " + std::to_string(pos));
    };
    Payoff acc{};
    for (std::uint32_t j = 0; j < s.k; ++j) {
        StageRecord rec;
        if (s.mode == GameMode::Augmented) {
            rec.monitor = (s.pfn_forced_idle ? next({"x"}) : next({"m", "x"})) == "m";
        }
        if (next({"Q", "B"}) == "B") {
            if (pos != h.size()) throw NotTerminal("actions after B");
            return acc;
        }
        rec.truth = next({"a", "a'"}) == "a";
        rec.a1 = next({"t", "f", "x"})[0];
        if (s.mode == GameMode::TwoRelay) rec.a2 = next({"t", "f", "x"})[0];
        bool both = s.mode == GameMode::TwoRelay && rec.a1 != 'x' && rec.a2 != 'x';
        std::string act = both ? next({"TA", "TA'", "TO", "LA", "LA'", "LO", "RA", "RA'", "RO", "XA", "XA'", "XO"})
                               : next({"TA", "TA'", "TO", "XA", "XA'", "XO"});
        rec.report = act[0];
        rec.output = act.substr(1);
        if (debate_node(s, rec)) rec.debate = next({"d", "n"})[0];
        add(acc, stage_payoff(s, rec));
    }
    if (pos != h.size()) throw NotTerminal("history longer than k stages");
    acc[0] += s.terms.d_L.value();
    return acc;
}

}  // namespace slc
