// SPDX-License-Identifier: MIT
// slc: scenarios, theorem checks and Merkle/predicate utilities.
// Exit codes: 0 ok, 1 verdict or runtime failure, 2 usage or input error.
#include "slc/game.hpp"
#include "slc/simulator.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace slc;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Bytes hex_arg(const std::string& s) {
    auto b = from_hex(s);
    if (!b) throw UsageError("not hex: " + s);
    return *b;
}

Digest digest_arg(const std::string& s) {
    Bytes b = hex_arg(s);
    if (b.size() != 32) throw UsageError("expected 32 octets: " + s);
    Digest d;
    std::copy(b.begin(), b.end(), d.bytes.begin());
    return d;
}

std::vector<Transaction> txs_of(const std::vector<std::string>& payloads) {
    std::vector<Transaction> txs;
    for (const auto& p : payloads) {
        Bytes b = hex_arg(p);
        if (b.empty()) throw UsageError("empty payload");
        txs.push_back(Transaction::make(std::move(b)));
    }
    if (txs.empty()) throw UsageError("no payloads");
    return txs;
}

int cmd_run(const std::string& path, const std::string& trace_out, std::optional<std::uint64_t> seed) {
    ScenarioConfig cfg = load_config(path);
    if (seed) cfg.seed = *seed;
    auto [trace, report] = run_scenario(cfg);
    std::string text = render_trace(trace);
    if (trace_out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(trace_out, std::ios::binary);
        if (!out) throw UsageError("cannot write " + trace_out);
        out << text;
    }
    std::cout << report.lines();
    return report.conserved ? 0 : 1;
}

GameSpec spec_from(const std::vector<std::string>& params, int theorem, std::uint32_t k) {
    std::map<std::string, Rational> kv;
    for (const auto& p : params) {
        auto eq = p.find('=');
        if (eq == std::string::npos) throw BadParams("expected key=value: " + p);
        std::string key = p.substr(0, eq);
        static const std::set<std::string> known = {"p", "e", "r", "d_L", "d_F", "c", "v", "v1", "v2", "rho", "epsilon"};
        if (!known.count(key)) throw BadParams("unknown parameter " + key);
        try {
            kv[key] = parse_rational(p.substr(eq + 1));
        } catch (const std::exception&) {
            throw BadParams("not a number: " + p);
        }
    }
    for (const char* req : {"p", "e", "d_L", "d_F", "c", "v", "v1"})
        if (!kv.count(req)) throw BadParams(std::string("missing ") + req);
    if (theorem == 1 && !kv.count("v2")) kv["v2"] = kv["v1"];
    GameSpec s;
    s.k = k;
    auto m = [&](const char* key) { return kv.count(key) ? Money(kv[key]) : Money(); };
    s.terms = {m("p"), m("e"), m("r"), m("d_L"), m("d_F")};
    s.econ.c = m("c");
    s.econ.v = m("v");
    s.econ.v1 = m("v1");
    s.econ.v2 = m("v2");
    s.econ.epsilon = m("epsilon");
    if (kv.count("rho")) s.econ.rho = kv["rho"];
    return s;
}

int cmd_check(int theorem, std::uint32_t k, const std::vector<std::string>& params, bool coalition, bool idle,
              const std::string& eta) {
    GameSpec s = spec_from(params, theorem, k);
    s.coalition = coalition;
    s.pfn_forced_idle = idle;
    Rational e;
    try {
        e = parse_rational(eta);
    } catch (const std::exception&) {
        throw BadParams("bad eta");
    }
    if (e <= 0 || e >= Rational(1, 13)) throw BadParams("eta must be small and positive");
    TheoremReport rep = check_theorem(theorem, s, e);
    std::cout << rep.lines();
    return rep.verdict_matches() ? 0 : 1;
}

int cmd_selftest() {
    int failures = 0;
    auto expect = [&](bool ok, const std::string& what) {
        std::cout << (ok ? "ok   " : "FAIL ") << what << "\n";
        if (!ok) ++failures;
    };
    expect(hash(to_bytes("abc")).hex() == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad",
           "sha256 abc");
    auto txs = txs_of({"01", "02", "03", "04", "05"});
    MerkleTree mt = build_mt(txs);
    bool all = true;
    for (const auto& tx : txs) all = all && vrfy_mtp(mt.root(), gen_mtp(mt, tx), tx.txid);
    expect(all, "merkle round trip");
    Terms t{Money(4), Money(1), Money(1), Money(10), Money(10)};
    bool conserved = true;
    for (auto kind : {IncentiveKind::TwoRelayBasic, IncentiveKind::OneRelayBasic, IncentiveKind::OneRelayAugmented})
        for (const auto& c : enumerate_clauses(kind, t))
            conserved = conserved && c.outcome.credited() + c.outcome.burn == locked_per_query(kind, t);
    expect(conserved, "clause conservation");
    GameSpec g;
    g.terms = {Money(4), Money(1), Money(0), Money(10), Money(10)};
    g.econ.c = 6;
    g.econ.v = 12;
    g.econ.v1 = g.econ.v2 = 5;
    expect(check_theorem(1, g).holds, "two-relay honest profile, k=1");
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"superlight client protocol simulator and game checker"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run a scenario config");
    std::string cfg_path, trace_out;
    std::optional<std::uint64_t> seed;
    run->add_option("config", cfg_path, "scenario file")->required();
    run->add_option("--trace", trace_out, "write the trace here instead of stdout");
    run->add_option("--seed", seed, "override the config seed");

    auto* check = app.add_subcommand("check", "check a security theorem by deviation search");
    int theorem = 0;
    std::uint32_t k = 1;
    std::vector<std::string> params;
    bool coalition = false, idle = false;
    std::string eta = "1/1000000";
    check->add_option("--theorem", theorem, "1, 2 or 3")->required()->check(CLI::Range(1, 3));
    check->add_option("--k", k, "repetitions (1-3)");
    check->add_option("--params", params, "key=value ...");
    check->add_flag("--coalition", coalition, "merge the relays into one player");
    check->add_flag("--pfn-idle", idle, "augmented: PFN can only stay idle");
    check->add_option("--eta", eta, "tremble size");

    auto* merkle = app.add_subcommand("merkle", "Merkle tree utilities");
    merkle->require_subcommand(1);
    std::vector<std::string> payloads;
    std::size_t index = 0;
    auto* mbuild = merkle->add_subcommand("build", "root over hex payloads");
    mbuild->add_option("payloads", payloads)->required();
    auto* mprove = merkle->add_subcommand("prove", "proof for one payload");
    mprove->add_option("index", index)->required();
    mprove->add_option("payloads", payloads)->required();
    std::string root_hex, leaf_hex, proof_hex;
    auto* mverify = merkle->add_subcommand("verify", "check a proof: prints 1 or 0");
    mverify->add_option("root", root_hex)->required();
    mverify->add_option("payload", leaf_hex)->required();
    mverify->add_option("proof", proof_hex)->required();

    auto* pred = app.add_subcommand("predicate", "evaluate or validate a scenario query");
    pred->require_subcommand(1);
    std::uint32_t query = 1;
    std::string sigma_hex;
    auto* peval = pred->add_subcommand("evaluate", "result octets for a planned query");
    peval->add_option("config", cfg_path)->required();
    peval->add_option("query", query)->required();
    auto* pval = pred->add_subcommand("validate", "validate_true on a sigma: prints 1 or 0");
    pval->add_option("config", cfg_path)->required();
    pval->add_option("query", query)->required();
    pval->add_option("sigma", sigma_hex)->required();

    auto* self = app.add_subcommand("selftest", "built-in sanity suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*run) return cmd_run(cfg_path, trace_out, seed);
        if (*check) return cmd_check(theorem, k, params, coalition, idle, eta);
        if (*mbuild) {
            std::cout << build_mt(txs_of(payloads)).root().hex() << "\n";
            return 0;
        }
        if (*mprove) {
            auto txs = txs_of(payloads);
            if (index >= txs.size()) throw UsageError("index out of range");
            std::cout << to_hex(serialize_proof(gen_mtp(build_mt(txs), txs[index]))) << "\n";
            return 0;
        }
        if (*mverify) {
            auto proof = parse_proof(hex_arg(proof_hex));
            bool ok = proof && vrfy_mtp(digest_arg(root_hex), *proof, hash(hex_arg(leaf_hex)));
            std::cout << (ok ? 1 : 0) << "\n";
            return 0;
        }
        if (*peval || *pval) {
            World w = make_world(load_config(cfg_path));
            if (query < 1 || query > w.plan.size()) throw UsageError("no such query");
            const PlannedQuery& q = w.plan[query - 1];
            ChainPredicate p = make_predicate(q.spec, w.chain.tip());
            p.ell = q.ell;
            if (*peval) {
                std::cout << to_hex(encode_result(evaluate(p, w.chain))) << "\n";
                return 0;
            }
            // result octets as printed by evaluate, or a bare sigma
            Bytes raw = hex_arg(sigma_hex);
            std::optional<TruthProof> sigma;
            if (auto r = decode_result(raw)) {
                if (!is_bottom(*r)) sigma = std::get<TruthProof>(*r);
            } else {
                sigma = TruthProof::deserialize(raw);
            }
            std::cout << (sigma && validate_true(*sigma, p, w.chain.blockhashes) ? 1 : 0) << "\n";
            return 0;
        }
        if (*self) return cmd_selftest();
    } catch (const InvalidConfig& e) {
        std::cerr << "InvalidConfig: " << e.what() << "\n";
        return 2;
    } catch (const BadParams& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
