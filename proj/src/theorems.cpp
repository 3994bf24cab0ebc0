// SPDX-License-Identifier: MIT
#include "slc/game.hpp"

#include <sstream>

namespace slc {

namespace {

Condition gt(std::string expr, const Rational& lhs, const Rational& rhs) { return {std::move(expr), lhs, rhs, lhs > rhs}; }

void validate(const GameSpec& s) {
    const Terms& t = s.terms;
    for (const Money* m : {&t.p, &t.e, &t.r, &t.d_L, &t.d_F, &s.econ.c, &s.econ.v, &s.econ.v1, &s.econ.v2})
        if (m->is_negative()) throw BadParams("money values must be non-negative");
    if (s.econ.rho <= 0 || s.econ.rho >= 1) throw BadParams("rho must lie strictly between 0 and 1");
    if (s.k < 1 || s.k > 3) throw BadParams("k must be 1, 2 or 3");
    if (s.econ.no_common_conflict && !s.econ.v1.is_zero() && !s.econ.v2.is_zero())
        throw BadParams("v1*v2 must be 0 under no_common_conflict");
}

std::vector<Condition> conditions(int id, const GameSpec& s) {
    const Rational p = s.terms.p.value(), e = s.terms.e.value(), r = s.terms.r.value();
    const Rational dL = s.terms.d_L.value(), dF = s.terms.d_F.value(), c = s.econ.c.value();
    const Rational v1 = s.econ.v1.value(), v2 = s.econ.v2.value();
    std::vector<Condition> out;
    switch (id) {
        case 1:
            out.push_back(gt("d_F+p/2>v1", dF + p / 2, v1));
            out.push_back(gt("d_F+p/2>v2", dF + p / 2, v2));
            break;
        case 2:
            out.push_back(gt("d_F+p-r>v1", dF + p - r, v1));
            out.push_back(gt("r>v1", r, v1));
            out.push_back(gt("p-r>0", p - r, 0));
            break;
        case 3:
            out.push_back(gt("d_F>v1", dF, v1));
            // a silent relay keeps its deposit, so silence must cost more than it can fool for
            out.push_back(gt("p>v1", p, v1));
            out.push_back(gt("pfn_monitors", s.pfn_forced_idle ? 0 : 1, 0));
            break;
    }
    out.push_back(gt("d_L>p+e", dL, p + e));
    out.push_back(gt("c>p", c, p));
    out.push_back(gt("p>0", p, 0));
    return out;
}

GameMode mode_for(int id) {
    switch (id) {
        case 1: return GameMode::TwoRelay;
        case 2: return GameMode::OneRelay;
        case 3: return GameMode::Augmented;
    }
    throw BadParams("theorem id must be 1, 2 or 3");
}

bool same(const std::optional<Deviation>& a, const std::optional<Deviation>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || (a->player == b->player && a->infoset_key == b->infoset_key && a->action == b->action);
}

}  // namespace

std::optional<Deviation> staged_search(const GameSpec& spec, const Rational& eta, const Rational& tol,
                                       SearchStats* stats) {
    GameSpec one = spec;
    one.k = 1;
    const GameTree g = build_game(one);
    Payoff bonus{};
    bonus[0] = spec.terms.d_L.value();
    auto decider_bonus = [&](int i) { return g.payoff(bonus, i); };

    // continuation values after stage j, filled backward
    Payoff V_rem = bonus;
    Payoff W_rem{};
    for (int i = 0; i < kNumPlayers; ++i) W_rem[i] = decider_bonus(i);
    std::vector<Continuation> conts(spec.k);
    for (int j = static_cast<int>(spec.k) - 1; j >= 0; --j) {
        Continuation c;
        for (int i = 0; i < kNumPlayers; ++i) {
            c.on_path[i] = V_rem[i] - bonus[i];
            c.best[i] = W_rem[i] - decider_bonus(i);
        }
        conts[j] = c;
        Profile s = honest_profile(g, eta, &conts[j]);
        V_rem = node_values(g, s, &conts[j])[0];
        for (int i = 0; i < kNumPlayers; ++i) W_rem[i] = best_response_value(g, s, eta, i, &conts[j]);
    }

    SearchStats total;
    std::optional<Deviation> first;
    for (std::uint32_t j = 0; j < spec.k; ++j) {
        Profile s = honest_profile(g, eta, &conts[j]);
        SearchStats st;
        auto d = find_profitable_deviation(g, s, eta, tol, &st, &conts[j]);
        total.nodes += st.nodes;
        total.infosets += st.infosets;
        total.tested += st.tested;
        if (d && !first) {
            d->infoset_key = "stage" + std::to_string(j + 1) + "/" + d->infoset_key;
            first = d;
        }
    }
    if (stats) *stats = total;
    return first;
}

TheoremReport check_theorem(int id, const GameSpec& in, const Rational& eta) {
    GameSpec spec = in;
    spec.mode = mode_for(id);
    validate(spec);
    TheoremReport rep;
    rep.theorem = id;
    rep.k = spec.k;
    rep.spec = spec;
    rep.conditions = conditions(id, spec);
    rep.predicted = true;
    for (const auto& c : rep.conditions) rep.predicted = rep.predicted && c.ok;

    const Rational eta2 = eta / 1000;
    std::optional<Deviation> other;
    if (spec.k <= 2) {
        GameTree g = build_game(spec);
        Profile s = honest_profile(g, eta);
        rep.witness = find_profitable_deviation(g, s, eta, 0, &rep.stats);
        rep.path = on_path_histories(g, s);
        rep.path_ok = rep.path == expected_honest_path(spec);
        other = find_profitable_deviation(g, honest_profile(g, eta2), eta2, 0);
    } else {
        rep.staged = true;
        rep.witness = staged_search(spec, eta, 0, &rep.stats);
        GameSpec one = spec;
        one.k = 1;
        GameTree g = build_game(one);
        rep.path = on_path_histories(g, honest_profile(g, eta));
        rep.path_ok = rep.path == expected_honest_path(one);
        other = staged_search(spec, eta2, 0);
        rep.notes.push_back("k=3 checked stage by stage with constant continuation values");
    }
    rep.stable = same(rep.witness, other);
    rep.holds = !rep.witness && rep.path_ok;
    if (id == 1 && sgn(spec.terms.r.value()) > 0)
        rep.notes.push_back("r>0 is outside the two-relay statement; result reported as sensitivity only");
    return rep;
}

std::string TheoremReport::lines() const {
    std::ostringstream os;
    const std::string pre = "T=0 actor=check ";
    os << pre << "kind=theorem id=" << theorem << " mode=" << to_string(spec.mode) << " k=" << k
       << " coalition=" << (spec.coalition ? 1 : 0) << "\n";
    const Terms& t = spec.terms;
    const EconomicParams& e = spec.econ;
    os << pre << "kind=params p=" << t.p << " e=" << t.e << " r=" << t.r << " d_L=" << t.d_L << " d_F=" << t.d_F
       << " c=" << e.c << " v=" << e.v << " v1=" << e.v1 << " v2=" << e.v2 << " rho=" << to_string(e.rho) << "\n";
    for (const auto& c : conditions)
        os << pre << "kind=condition expr=" << c.expr << " lhs=" << to_string(c.lhs) << " rhs=" << to_string(c.rhs)
           << " ok=" << (c.ok ? 1 : 0) << "\n";
    os << pre << "kind=stats nodes=" << stats.nodes << " infosets=" << stats.infosets << " tested=" << stats.tested
       << " staged=" << (staged ? 1 : 0) << "\n";
    for (const auto& h : path) os << pre << "kind=path history=" << h << "\n";
    if (witness)
        os << pre << "kind=witness player=" << player_name(witness->player, spec.coalition)
           << " infoset=" << witness->infoset_key << " action=" << witness->action
           << " gain=" << to_string(witness->gain) << "\n";
    for (const auto& n : notes) {
        std::string s = n;
        for (auto& ch : s)
            if (ch == ' ') ch = '_';
        os << pre << "kind=note text=" << s << "\n";
    }
    os << pre << "kind=verdict holds=" << (holds ? 1 : 0) << " predicted=" << (predicted ? 1 : 0)
       << " path_ok=" << (path_ok ? 1 : 0) << " stable=" << (stable ? 1 : 0) << " result="
       << (holds ? "holds" : "deviation") << "\n";
    return os.str();
}

}  // namespace slc
