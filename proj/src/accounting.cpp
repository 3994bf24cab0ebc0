// SPDX-License-Identifier: MIT
// Everything here reads the trace only; no world state.
#include "slc/simulator.hpp"

#include <sstream>

namespace slc {

std::string SimEvent::line() const {
    std::string s = "T=" + std::to_string(round) + " actor=" + actor + " kind=" + kind;
    for (const auto& [k, v] : fields) s += " " + k + "=" + v;
    return s;
}

std::optional<SimEvent> SimEvent::parse(std::string_view line) {
    SimEvent ev;
    std::vector<std::pair<std::string, std::string>> kv;
    std::size_t pos = 0;
    while (pos < line.size()) {
        std::size_t sp = line.find(' ', pos);
        if (sp == std::string_view::npos) sp = line.size();
        std::string_view tok = line.substr(pos, sp - pos);
        pos = sp + 1;
        if (tok.empty()) continue;
        auto eq = tok.find('=');
        if (eq == std::string_view::npos) return std::nullopt;
        kv.emplace_back(std::string(tok.substr(0, eq)), std::string(tok.substr(eq + 1)));
    }
    if (kv.size() < 3 || kv[0].first != "T" || kv[1].first != "actor" || kv[2].first != "kind") return std::nullopt;
    try {
        ev.round = std::stoull(kv[0].second);
    } catch (const std::exception&) {
        return std::nullopt;
    }
    ev.actor = kv[1].second;
    ev.kind = kv[2].second;
    ev.fields.assign(kv.begin() + 3, kv.end());
    return ev;
}

std::string render_trace(const std::vector<SimEvent>& trace) {
    std::string out;
    for (const auto& e : trace) out += e.line() + "\n";
    return out;
}

std::vector<SimEvent> parse_trace(std::string_view text) {
    std::vector<SimEvent> out;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line))
        if (auto ev = SimEvent::parse(line)) out.push_back(std::move(*ev));
    return out;
}

namespace {

std::string get(const SimEvent& e, const std::string& key) {
    for (const auto& [k, v] : e.fields)
        if (k == key) return v;
    return {};
}

}  // namespace

SimReport report_from_trace(const std::vector<SimEvent>& trace, const EconomicParams& econ) {
    SimReport rep;
    Money p, e, d_L;
    std::uint32_t k = 0;
    std::string mode;
    std::map<std::uint32_t, QueryReport> qs;
    std::map<std::uint32_t, std::vector<PartyId>> silent;
    auto at = [&](const std::string& q) -> QueryReport& {
        auto i = static_cast<std::uint32_t>(std::stoul(q));
        qs[i].index = i;
        return qs[i];
    };

    for (const auto& ev : trace) {
        if (ev.kind == "params") {
            p = Money::parse(get(ev, "p"));
            e = Money::parse(get(ev, "e"));
            d_L = Money::parse(get(ev, "d_L"));
            k = static_cast<std::uint32_t>(std::stoul(get(ev, "k")));
            mode = get(ev, "mode");
        } else if (ev.kind == "truth") {
            at(get(ev, "q")).truth = get(ev, "value") == "true";
        } else if (ev.kind == "response") {
            if (get(ev, "action") == "x") silent[at(get(ev, "q")).index].push_back(ev.actor);
        } else if (ev.kind == "output") {
            auto v = get(ev, "value");
            at(get(ev, "q")).output = v == "none" ? std::nullopt
                                     : v == "true" ? std::optional<Claim>(Claim::True)
                                                   : std::optional<Claim>(Claim::False);
        } else if (ev.kind == "payout") {
            QueryReport& q = at(get(ev, "q"));
            q.clause = get(ev, "clause");
            q.burn = Money::parse(get(ev, "burn"));
            for (const auto& [key, v] : ev.fields)
                if (key.rfind("credit.", 0) == 0) q.credits[key.substr(7)] = Money::parse(v);
        } else if (ev.kind == "final") {
            for (const auto& [key, v] : ev.fields) {
                if (key.rfind("bal.", 0) == 0) rep.final_balances[key.substr(4)] = Money::parse(v);
                if (key == "conserved") rep.conserved = v == "1";
            }
        }
    }

    std::vector<PartyId> relays = {kRelay1};
    if (mode == "two_relay") relays.push_back(kRelay2);
    auto& u = rep.utilities.u;
    u[kClient];
    for (const auto& r : relays) u[r];
    if (mode == "augmented") u[kPfn];

    std::uint32_t paid = 0;
    for (auto& [idx, q] : qs) {
        rep.queries.push_back(q);
        if (q.clause.empty()) continue;  // unfinished query contributes nothing
        ++paid;
        for (const auto& [who, v] : q.credits) u[who] += v;
        u[kClient] -= p + e;
        if (!q.output) {
            // no output: run the own node, and this query's d_L is forfeit
            u[kClient] -= econ.c + d_L;
        } else if ((*q.output == Claim::True) != q.truth) {
            u[kClient] -= econ.v;
            u[kRelay1] += econ.v1;
            if (relays.size() > 1) u[kRelay2] += econ.v2;
        }
        for (const auto& who : silent[idx]) u[who] += econ.epsilon;
    }
    // full run: the remaining locked d_L comes back at expiry
    if (k > 0 && paid == k) u[kClient] += d_L;
    return rep;
}

UtilityVector account_utilities(const std::vector<SimEvent>& trace, const EconomicParams& econ) {
    return report_from_trace(trace, econ).utilities;
}

std::string SimReport::lines() const {
    std::ostringstream os;
    for (const auto& q : queries) {
        os << "query=" << q.index << " truth=" << (q.truth ? "true" : "false") << " output="
           << (q.output ? (*q.output == Claim::True ? "true" : "false") : "none")
           << " clause=" << (q.clause.empty() ? "-" : q.clause) << " burn=" << q.burn << "\n";
    }
    for (const auto& [who, v] : final_balances) os << "balance." << who << "=" << v << "\n";
    for (const auto& [who, v] : utilities.u) os << "utility." << who << "=" << v << "\n";
    os << "conserved=" << (conserved ? 1 : 0) << "\n";
    return os.str();
}

}  // namespace slc
