// SPDX-License-Identifier: MIT
#include "slc/simulator.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace slc {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

template <class Int>
Int parse_int(std::string_view v, std::size_t line, const std::string& key) {
    Int out{};
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) throw InvalidConfig(line, key, "expected an integer");
    return out;
}

Money parse_money(std::string_view v, std::size_t line, const std::string& key, bool nonneg = true) {
    Money m;
    try {
        m = Money::parse(v);
    } catch (const std::exception&) {
        throw InvalidConfig(line, key, "expected a number");
    }
    if (nonneg && m.is_negative()) throw InvalidConfig(line, key, "must be non-negative");
    return m;
}

bool parse_bool(std::string_view v, std::size_t line, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw InvalidConfig(line, key, "expected true or false");
}

template <class T>
T need(std::optional<T> v, std::size_t line, const std::string& key) {
    if (!v) throw InvalidConfig(line, key, "unknown value");
    return *v;
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
    ScenarioConfig c;
    c.balances = {{kClient, Money(1000)}, {kRelay1, Money(1000)}};
    c.pfn = PfnStrategy{};
    std::map<std::uint32_t, std::pair<std::size_t, QuerySpec>> queries;
    std::size_t relay2_line = 0;

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view raw = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++lineno;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        raw = trim(raw);
        if (raw.empty()) continue;
        auto eq = raw.find('=');
        if (eq == std::string_view::npos) throw InvalidConfig(lineno, std::string(raw), "expected key=value");
        const std::string key(trim(raw.substr(0, eq)));
        const std::string_view val = trim(raw.substr(eq + 1));
        const std::size_t L = lineno;

        if (key == "name") c.name = std::string(val);
        else if (key == "mode") c.mode = need(parse_incentive_kind(val), L, key);
        else if (key == "k") {
            c.k = parse_int<std::uint32_t>(val, L, key);
            if (c.k == 0) throw InvalidConfig(L, key, "must be at least 1");
        }
        else if (key == "p") c.terms.p = parse_money(val, L, key);
        else if (key == "e") c.terms.e = parse_money(val, L, key);
        else if (key == "r") c.terms.r = parse_money(val, L, key);
        else if (key == "d_L") c.terms.d_L = parse_money(val, L, key);
        else if (key == "d_F") c.terms.d_F = parse_money(val, L, key);
        else if (key == "delta_T") {
            c.delta_T = parse_int<std::uint32_t>(val, L, key);
            if (c.delta_T == 0) throw InvalidConfig(L, key, "must be at least 1");
        }
        else if (key == "seed") c.seed = parse_int<std::uint64_t>(val, L, key);
        else if (key == "econ.c") c.econ.c = parse_money(val, L, key);
        else if (key == "econ.v") c.econ.v = parse_money(val, L, key);
        else if (key == "econ.v1") c.econ.v1 = parse_money(val, L, key);
        else if (key == "econ.v2") c.econ.v2 = parse_money(val, L, key);
        else if (key == "econ.epsilon") c.econ.epsilon = parse_money(val, L, key);
        else if (key == "econ.rho") {
            Money r = parse_money(val, L, key);
            if (r.value() > 1) throw InvalidConfig(L, key, "must lie in [0,1]");
            c.econ.rho = r.value();
        }
        else if (key == "econ.no_common_conflict") c.econ.no_common_conflict = parse_bool(val, L, key);
        else if (key == "chain.num_blocks") {
            c.num_blocks = parse_int<std::size_t>(val, L, key);
            if (c.num_blocks < 2) throw InvalidConfig(L, key, "need at least 2 blocks");
        }
        else if (key == "chain.txs_per_block") {
            c.txs_per_block = parse_int<std::size_t>(val, L, key);
            if (c.txs_per_block < 1) throw InvalidConfig(L, key, "need at least 1");
        }
        else if (key == "strategies.relay1") c.relay1.policy = need(parse_relay_policy(val), L, key);
        else if (key == "strategies.relay2") {
            c.relay2.policy = need(parse_relay_policy(val), L, key);
            relay2_line = L;
        }
        else if (key == "strategies.coalition") {
            auto p = need(parse_relay_policy(val), L, key);
            if (p == RelayPolicy::Collude) throw InvalidConfig(L, key, "coalition cannot itself be collude");
            c.relay1.coalition = c.relay2.coalition = p;
        }
        else if (key == "strategies.client.report") c.client.report = need(parse_report_rule(val), L, key);
        else if (key == "strategies.client.output") c.client.output = need(parse_output_rule(val), L, key);
        else if (key == "strategies.client.abort_after") c.client.abort_after = parse_int<std::uint32_t>(val, L, key);
        else if (key == "strategies.pfn") {
            if (val == "none") c.pfn.reset();
            else c.pfn = PfnStrategy{need(parse_pfn_policy(val), L, key), true};
        }
        else if (key.rfind("balance.", 0) == 0 && key.size() > 8) c.balances[key.substr(8)] = parse_money(val, L, key);
        else if (key.rfind("query.", 0) == 0) {
            std::string rest = key.substr(6);
            bool is_kind = false;
            if (auto dot = rest.find('.'); dot != std::string::npos) {
                if (rest.substr(dot + 1) != "kind") throw InvalidConfig(L, key, "unknown key");
                is_kind = true;
                rest = rest.substr(0, dot);
            }
            auto idx = parse_int<std::uint32_t>(rest, L, key);
            if (idx == 0) throw InvalidConfig(L, key, "queries are numbered from 1");
            auto& [line, q] = queries[idx];
            line = L;
            if (is_kind) {
                if (val == "txid") q.kind = QueryKind::Txid;
                else if (val == "all") q.kind = QueryKind::All;
                else if (val == "inflow") q.kind = QueryKind::Inflow;
                else throw InvalidConfig(L, key, "unknown value");
            } else {
                if (val == "true") q.truth = QueryTruth::True;
                else if (val == "false") q.truth = QueryTruth::False;
                else if (val == "random") q.truth = QueryTruth::Random;
                else throw InvalidConfig(L, key, "unknown value");
            }
        }
        else throw InvalidConfig(L, key, "unknown key");
    }

    if (relay2_line && c.mode != IncentiveKind::TwoRelayBasic)
        throw InvalidConfig(relay2_line, "strategies.relay2", "only one relay in this mode");
    if (c.econ.no_common_conflict && !c.econ.v1.is_zero() && !c.econ.v2.is_zero())
        throw InvalidConfig(lineno, "econ.no_common_conflict", "v1*v2 must be 0");
    if (c.mode == IncentiveKind::TwoRelayBasic) c.balances.try_emplace(kRelay2, Money(1000));
    c.queries.assign(c.k, QuerySpec{});
    for (const auto& [idx, lq] : queries) {
        if (idx > c.k) throw InvalidConfig(lq.first, "query." + std::to_string(idx), "index exceeds k");
        c.queries[idx - 1] = lq.second;
    }
    return c;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidConfig(0, path, "cannot open file");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace slc
