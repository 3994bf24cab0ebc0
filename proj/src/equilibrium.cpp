// SPDX-License-Identifier: MIT
#include "slc/game.hpp"

#include <algorithm>
#include <functional>

namespace slc {

namespace {

Rational child_prob(const GameTree& g, const Profile& s, std::uint32_t node, std::size_t child) {
    const GameNode& n = g.nodes[node];
    if (n.player == kChancePlayer) return g.chance_prob(child);
    return s.probs[n.infoset][child];
}

std::size_t action_index(const InfoSet& J, const std::string& a) {
    auto it = std::find(J.actions.begin(), J.actions.end(), a);
    return it == J.actions.end() ? J.actions.size() : static_cast<std::size_t>(it - J.actions.begin());
}

Distribution point(std::size_t n, std::size_t i) {
    Distribution d(n, Rational(0));
    d[i] = 1;
    return d;
}

bool decision_maker(const GameTree& g, int player) { return !(g.spec.coalition && player == 2); }

// Memoized best-response values for one player; everyone else plays s.
struct BestResponder {
    const GameTree& g;
    const Profile& s;
    const Assessment& belief;
    const Continuation* cont;
    int player;
    std::vector<Rational> W;
    std::vector<char> done;
    std::vector<int> br;

    BestResponder(const GameTree& g, const Profile& s, const Assessment& a, const Continuation* c, int i)
        : g(g), s(s), belief(a), cont(c), player(i), W(g.nodes.size()), done(g.nodes.size(), 0),
          br(g.infosets.size(), -1) {}

    const Rational& value(std::uint32_t id) {
        if (done[id]) return W[id];
        const GameNode& n = g.nodes[id];
        Rational v = 0;
        if (n.terminal_node()) {
            v = g.payoff(g.utilities[n.terminal], player);
            if (cont && n.continues) v += cont->best[player];
        } else if (n.player != kChancePlayer && n.player == player) {
            v = value(n.first_child + static_cast<std::uint32_t>(best(n.infoset)));
        } else {
            for (std::size_t c = 0; c < n.n_children; ++c) {
                Rational p = child_prob(g, s, id, c);
                if (sgn(p) != 0) v += p * value(n.first_child + static_cast<std::uint32_t>(c));
            }
        }
        W[id] = v;
        done[id] = 1;
        return W[id];
    }

    Rational action_value(int j, std::size_t a) {
        const InfoSet& J = g.infosets[j];
        Rational v = 0;
        for (std::size_t h = 0; h < J.nodes.size(); ++h)
            v += belief.beliefs[j][h] * value(g.nodes[J.nodes[h]].first_child + static_cast<std::uint32_t>(a));
        return v;
    }

    int best(int j) {
        if (br[j] >= 0) return br[j];
        const InfoSet& J = g.infosets[j];
        int arg = 0;
        Rational top = action_value(j, 0);
        for (std::size_t a = 1; a < J.actions.size(); ++a) {
            Rational v = action_value(j, a);
            if (v > top) top = v, arg = static_cast<int>(a);
        }
        br[j] = arg;
        return arg;
    }
};

}  // namespace

Profile pure_profile(const GameTree& g, const std::vector<std::size_t>& choice) {
    Profile s;
    for (std::size_t j = 0; j < g.infosets.size(); ++j) s.probs.push_back(point(g.infosets[j].actions.size(), choice[j]));
    return s;
}

Profile tremble(const GameTree& g, const Profile& s, const Rational& eta) {
    Profile t = s;
    for (std::size_t j = 0; j < g.infosets.size(); ++j) {
        const long n = static_cast<long>(g.infosets[j].actions.size());
        if (n == 1) continue;
        for (auto& p : t.probs[j]) p = p * (1 - eta * n) + eta;
    }
    return t;
}

std::vector<Rational> reach_probabilities(const GameTree& g, const Profile& s) {
    std::vector<Rational> r(g.nodes.size(), Rational(0));
    r[0] = 1;
    for (std::uint32_t id = 0; id < g.nodes.size(); ++id) {
        const GameNode& n = g.nodes[id];
        if (sgn(r[id]) == 0) continue;
        for (std::size_t c = 0; c < n.n_children; ++c) r[n.first_child + c] = r[id] * child_prob(g, s, id, c);
    }
    return r;
}

Assessment beliefs_from_trembles(const GameTree& g, const Profile& s, const Rational& eta) {
    Assessment a;
    a.profile = s;
    auto reach = reach_probabilities(g, sgn(eta) > 0 ? tremble(g, s, eta) : s);
    for (const auto& J : g.infosets) {
        Rational total = 0;
        for (auto h : J.nodes) total += reach[h];
        std::vector<Rational> mu;
        for (auto h : J.nodes)
            mu.push_back(sgn(total) > 0 ? Rational(reach[h] / total) : Rational(1, static_cast<long>(J.nodes.size())));
        a.beliefs.push_back(std::move(mu));
    }
    return a;
}

std::vector<Payoff> node_values(const GameTree& g, const Profile& s, const Continuation* cont) {
    std::vector<Payoff> V(g.nodes.size());
    for (std::size_t i = g.nodes.size(); i-- > 0;) {
        const GameNode& n = g.nodes[i];
        if (n.terminal_node()) {
            V[i] = g.utilities[n.terminal];
            if (cont && n.continues)
                for (int p = 0; p < kNumPlayers; ++p) V[i][p] += cont->on_path[p];
            continue;
        }
        Payoff acc{};
        for (std::size_t c = 0; c < n.n_children; ++c) {
            Rational p = child_prob(g, s, static_cast<std::uint32_t>(i), c);
            if (sgn(p) == 0) continue;
            for (int q = 0; q < kNumPlayers; ++q) acc[q] += p * V[n.first_child + c][q];
        }
        V[i] = std::move(acc);
    }
    return V;
}

Rational expected_utility(const GameTree& g, const Assessment& a, int player, int infoset) {
    auto V = node_values(g, a.profile);
    const InfoSet& J = g.infosets[infoset];
    Rational out = 0;
    for (std::size_t h = 0; h < J.nodes.size(); ++h) out += a.beliefs[infoset][h] * g.payoff(V[J.nodes[h]], player);
    return out;
}

Profile honest_profile(const GameTree& g, const Rational& eta, const Continuation* cont) {
    std::vector<std::size_t> choice(g.infosets.size(), 0);
    std::vector<int> pending;
    for (std::size_t j = 0; j < g.infosets.size(); ++j) {
        const InfoSet& J = g.infosets[j];
        auto pick = [&](const std::string& a) { choice[j] = std::min(action_index(J, a), J.actions.size() - 1); };
        switch (J.owner) {
            case 1:
            case 2: pick("t"); break;
            case 3: pick(J.key.ends_with("|debate") ? "d" : "m"); break;
            default: {
                if (J.key.ends_with("|qb")) {
                    pick("Q");
                    break;
                }
                std::string claims = J.key.substr(J.key.rfind("|c=") + 3);
                if (claims.find_first_not_of('T') == std::string::npos) pick("TA");
                else if (claims.find_first_not_of('F') == std::string::npos) pick("TA'");
                else {
                    pick("TA'");  // provisional; beliefs never depend on it
                    pending.push_back(static_cast<int>(j));
                }
            }
        }
    }
    // deepest stage first; sets within a stage never precede one another
    std::stable_sort(pending.begin(), pending.end(),
                     [&](int a, int b) { return g.infosets[a].stage > g.infosets[b].stage; });
    const std::vector<std::string> order = {"TA'", "TA", "TO"};
    std::size_t i = 0;
    while (i < pending.size()) {
        const auto stage = g.infosets[pending[i]].stage;
        Profile cur = pure_profile(g, choice);
        auto belief = beliefs_from_trembles(g, cur, eta);
        auto V = node_values(g, cur, cont);
        for (; i < pending.size() && g.infosets[pending[i]].stage == stage; ++i) {
            const int j = pending[i];
            const InfoSet& J = g.infosets[j];
            std::vector<std::size_t> ranked;
            for (const auto& a : order) ranked.push_back(action_index(J, a));
            for (std::size_t a = 0; a < J.actions.size(); ++a)
                if (std::find(ranked.begin(), ranked.end(), a) == ranked.end()) ranked.push_back(a);
            std::optional<Rational> top;
            for (auto a : ranked) {
                Rational v = 0;
                for (std::size_t h = 0; h < J.nodes.size(); ++h)
                    v += belief.beliefs[j][h] * g.payoff(V[g.nodes[J.nodes[h]].first_child + a], 0);
                if (!top || v > *top) top = v, choice[j] = a;
            }
        }
    }
    return pure_profile(g, choice);
}

std::optional<Deviation> find_profitable_deviation(const GameTree& g, const Profile& s, const Rational& eta,
                                                   const Rational& tol, SearchStats* stats,
                                                   const Continuation* cont, std::vector<Deviation>* all) {
    auto belief = beliefs_from_trembles(g, s, eta);
    auto V = node_values(g, s, cont);
    SearchStats local;
    local.nodes = g.nodes.size();
    local.infosets = g.infosets.size();
    std::optional<Deviation> first;

    std::vector<int> order(g.infosets.size());
    for (std::size_t j = 0; j < order.size(); ++j) order[j] = static_cast<int>(j);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return g.infosets[a].stage < g.infosets[b].stage; });

    for (int player = 0; player < kNumPlayers; ++player) {
        if (!decision_maker(g, player)) continue;
        BestResponder br(g, s, belief, cont, player);
        for (int j : order) {
            const InfoSet& J = g.infosets[j];
            if (J.owner != player) continue;
            Rational base = 0;
            for (std::size_t h = 0; h < J.nodes.size(); ++h)
                base += belief.beliefs[j][h] * g.payoff(V[J.nodes[h]], player);
            for (std::size_t a = 0; a < J.actions.size(); ++a) {
                if (s.probs[j][a] == 1) continue;  // the prescribed action itself
                ++local.tested;
                Rational gain = br.action_value(j, a) - base;
                if (gain > tol) {
                    Deviation d{player, j, J.key, J.actions[a], gain};
                    if (all) all->push_back(d);
                    if (!first) first = d;
                }
            }
        }
    }
    if (stats) *stats = local;
    return first;
}

Rational best_response_value(const GameTree& g, const Profile& s, const Rational& eta, int player,
                             const Continuation* cont) {
    auto belief = beliefs_from_trembles(g, s, eta);
    BestResponder br(g, s, belief, cont, player);
    return br.value(0);
}

std::vector<std::string> on_path_histories(const GameTree& g, const Profile& s) {
    std::vector<std::string> out;
    std::function<void(std::uint32_t, std::string)> walk = [&](std::uint32_t id, std::string acc) {
        const GameNode& n = g.nodes[id];
        if (n.terminal_node()) {
            out.push_back(acc);
            return;
        }
        for (std::size_t c = 0; c < n.n_children; ++c)
            if (sgn(child_prob(g, s, id, c)) > 0) walk(n.first_child + static_cast<std::uint32_t>(c), acc + g.action_label(id, c));
    };
    walk(0, "");
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::string> expected_honest_path(const GameSpec& spec) {
    std::string pre = spec.mode == GameMode::Augmented ? (spec.pfn_forced_idle ? "x" : "m") : "";
    std::string mid = spec.mode == GameMode::TwoRelay ? "tt" : "t";
    std::vector<std::string> stage = {pre + "Qa" + mid + "TA", pre + "Qa'" + mid + "TA'"};
    std::vector<std::string> out = {""};
    for (std::uint32_t j = 0; j < spec.k; ++j) {
        std::vector<std::string> next;
        for (const auto& h : out)
            for (const auto& s : stage) next.push_back(h + s);
        out = std::move(next);
    }
    std::sort(out.begin(), out.end());
    return out;
}

DominanceResult check_lemma_dominance(const GameTree& g) {
    DominanceResult r;
    for (const auto& J : g.infosets) {
        if (J.owner != 0 || !J.final_client_stage) continue;
        ++r.sets;
        for (auto h : J.nodes) {
            const GameNode& n = g.nodes[h];
            for (std::size_t a = 0; a < J.actions.size(); ++a) {
                const std::string& act = J.actions[a];
                if (act[0] == 'T') continue;
                std::size_t t = action_index(J, "T" + act.substr(1));
                const GameNode& dev = g.nodes[n.first_child + a];
                const GameNode& sub = g.nodes[n.first_child + t];
                if (!dev.terminal_node() || !sub.terminal_node()) {
                    r.violations.push_back(J.key + " " + act + ": continuation after the client move");
                    continue;
                }
                ++r.comparisons;
                if (g.utilities[dev.terminal][0] > g.utilities[sub.terminal][0]) {
                    std::string hist;
                    for (const auto& x : g.history(h)) hist += x;
                    r.violations.push_back(J.key + " at " + hist + ": " + act + " beats T" + act.substr(1));
                }
            }
        }
    }
    return r;
}

EnumerationResult enumerate_best_gain(const GameTree& g, const Profile& honest, int player,
                                      std::size_t max_strategies) {
    std::vector<int> mine;
    std::size_t total = 1;
    for (std::size_t j = 0; j < g.infosets.size(); ++j)
        if (g.infosets[j].owner == player || (g.spec.coalition && player == 1 && g.infosets[j].owner == 2)) {
            mine.push_back(static_cast<int>(j));
            total *= g.infosets[j].actions.size();
            if (total > max_strategies) throw TooLarge(total);
        }
    EnumerationResult res;
    res.player = player;
    const Rational base = g.payoff(node_values(g, honest)[0], player);
    res.best_gain = 0;
    std::vector<std::size_t> digit(mine.size(), 0);
    Profile s = honest;
    for (;;) {
        for (std::size_t i = 0; i < mine.size(); ++i)
            s.probs[mine[i]] = point(g.infosets[mine[i]].actions.size(), digit[i]);
        ++res.strategies;
        Rational gain = g.payoff(node_values(g, s)[0], player) - base;
        if (gain > res.best_gain) res.best_gain = gain;
        std::size_t i = 0;
        for (; i < mine.size(); ++i) {
            if (++digit[i] < g.infosets[mine[i]].actions.size()) break;
            digit[i] = 0;
        }
        if (i == mine.size()) break;
    }
    return res;
}

}  // namespace slc
