// SPDX-License-Identifier: MIT
#include "slc/predicate.hpp"

#include <sstream>

namespace slc {

namespace {

// Locate a transaction by its position in the replica.
struct Hit {
    std::size_t block, index;
};

TruthProof witness(const Chain& replica, const std::vector<Hit>& hits) {
    TruthProof sigma;
    for (auto [b, i] : hits) {
        const Block& blk = replica.blocks[b];
        const Transaction& tx = blk.payload[i];
        sigma.txs.push_back(tx);
        sigma.mtps.push_back(gen_mtp(build_mt(blk.payload), tx));
        sigma.blocks.push_back(blk.header);
    }
    return sigma;
}

std::optional<Digest> read_digest(ByteReader& r) {
    auto f = r.field(32);
    if (!f || f->size() != 32) return std::nullopt;
    Digest d;
    std::copy(f->begin(), f->end(), d.bytes.begin());
    return d;
}

std::optional<BlockHeader> read_header(std::span<const std::uint8_t> data) {
    ByteReader r(data);
    auto hf = r.field(8);
    if (!hf || hf->size() != 8) return std::nullopt;
    ByteReader hr(*hf);
    BlockHeader h;
    h.height = *hr.u64();
    auto prev = read_digest(r);
    auto nonce = r.field(1024);
    auto root = read_digest(r);
    if (!prev || !nonce || !root || !r.at_end()) return std::nullopt;
    h.prev_hash = *prev;
    h.nonce = *nonce;
    h.root = *root;
    return h;
}

}  // namespace

bool ChainPredicate::well_formed() const {
    if (ell < 1) return false;
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TxidEquals>) return ell == 1;
            else if constexpr (std::is_same_v<T, AllTxidsPresent>) return !s.targets.empty() && ell == s.targets.size();
            else return !s.threshold.is_negative() && !s.threshold.is_zero();
        },
        spec);
}

ChainPredicate make_predicate(PredicateSpec spec, Height N) {
    ChainPredicate p;
    p.N = N;
    p.spec = std::move(spec);
    if (auto* all = std::get_if<AllTxidsPresent>(&p.spec)) p.ell = static_cast<std::uint32_t>(all->targets.size());
    return p;
}

Bytes ChainPredicate::serialize() const {
    ByteWriter w;
    w.u32(ell).u64(N);
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TxidEquals>) {
                w.u8(0).field(s.target.span());
            } else if constexpr (std::is_same_v<T, AllTxidsPresent>) {
                w.u8(1).u32(static_cast<std::uint32_t>(s.targets.size()));
                for (const auto& t : s.targets) w.field(t.span());
            } else {
                w.u8(2).field(s.address).field(s.threshold.str());
            }
        },
        spec);
    return w.take();
}

std::string ChainPredicate::describe() const {
    std::ostringstream os;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TxidEquals>) os << "txid:" << s.target.hex().substr(0, 16);
            else if constexpr (std::is_same_v<T, AllTxidsPresent>) os << "all:" << s.targets.size();
            else os << "inflow:" << s.address << ">=" << s.threshold;
        },
        spec);
    os << ",ell=" << ell << ",N=" << N;
    return os.str();
}

Bytes TruthProof::serialize() const {
    ByteWriter w;
    w.u32(static_cast<std::uint32_t>(txs.size()));
    for (std::size_t i = 0; i < txs.size(); ++i) {
        w.field(txs[i].payload);
        w.field(serialize_proof(i < mtps.size() ? mtps[i] : MerkleProof{}));
        w.field(i < blocks.size() ? blocks[i].serialize() : Bytes{});
    }
    return w.take();
}

std::optional<TruthProof> TruthProof::deserialize(std::span<const std::uint8_t> data) {
    ByteReader r(data);
    auto n = r.u32();
    if (!n || *n > 4096) return std::nullopt;
    TruthProof s;
    for (std::uint32_t i = 0; i < *n; ++i) {
        auto payload = r.field();
        auto proof = r.field();
        auto header = r.field();
        if (!payload || !proof || !header) return std::nullopt;
        auto p = parse_proof(*proof);
        auto h = read_header(*header);
        if (!p || !h) return std::nullopt;
        s.txs.push_back(Transaction::make(*payload));
        s.mtps.push_back(*p);
        s.blocks.push_back(*h);
    }
    if (!r.at_end()) return std::nullopt;
    return s;
}

Bytes encode_result(const EvalResult& r) {
    ByteWriter w;
    if (is_bottom(r)) {
        w.u8(0);
    } else {
        w.u8(1);
        w.field(std::get<TruthProof>(r).serialize());
    }
    return w.take();
}

std::optional<EvalResult> decode_result(std::span<const std::uint8_t> data) {
    ByteReader r(data);
    auto tag = r.u8();
    if (!tag) return std::nullopt;
    if (*tag == 0) {
        if (!r.at_end()) return std::nullopt;
        return EvalResult{Bottom{}};
    }
    if (*tag != 1) return std::nullopt;
    auto body = r.field();
    if (!body || !r.at_end()) return std::nullopt;
    auto s = TruthProof::deserialize(*body);
    if (!s) return std::nullopt;
    return EvalResult{std::move(*s)};
}

Bytes payment_payload(const PartyId& to, const Money& amount, std::string_view memo) {
    ByteWriter w;
    w.field("pay").field(to).field(amount.str()).field(memo);
    return w.take();
}

std::optional<std::pair<PartyId, Money>> parse_payment(std::span<const std::uint8_t> payload) {
    ByteReader r(payload);
    auto tag = r.field(16), to = r.field(256), amt = r.field(64), memo = r.field(1024);
    if (!tag || !to || !amt || !memo || !r.at_end()) return std::nullopt;
    if (std::string(tag->begin(), tag->end()) != "pay") return std::nullopt;
    try {
        Money m = Money::parse(std::string(amt->begin(), amt->end()));
        if (m.is_negative()) return std::nullopt;
        return std::make_pair(PartyId(to->begin(), to->end()), m);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

EvalResult evaluate(const ChainPredicate& pred, const Chain& replica) {
    if (replica.length() < pred.N + 1) throw ReplicaTooShort();
    if (!pred.well_formed()) return Bottom{};
    const std::size_t last = static_cast<std::size_t>(pred.N);

    return std::visit(
        [&](const auto& s) -> EvalResult {
            using T = std::decay_t<decltype(s)>;
            std::vector<Hit> hits;
            if constexpr (std::is_same_v<T, TxidEquals>) {
                for (std::size_t b = 0; b <= last && hits.empty(); ++b)
                    for (std::size_t i = 0; i < replica.blocks[b].payload.size(); ++i)
                        if (replica.blocks[b].payload[i].txid == s.target) {
                            hits.push_back({b, i});
                            break;
                        }
            } else if constexpr (std::is_same_v<T, AllTxidsPresent>) {
                std::set<Digest> missing = s.targets;
                for (std::size_t b = 0; b <= last && !missing.empty(); ++b)
                    for (std::size_t i = 0; i < replica.blocks[b].payload.size(); ++i)
                        if (missing.erase(replica.blocks[b].payload[i].txid)) hits.push_back({b, i});
                if (!missing.empty()) return Bottom{};
            } else {
                Money sum;
                for (std::size_t b = 0; b <= last && sum < s.threshold; ++b)
                    for (std::size_t i = 0; i < replica.blocks[b].payload.size() && sum < s.threshold; ++i) {
                        auto pay = parse_payment(replica.blocks[b].payload[i].payload);
                        if (!pay || pay->first != s.address) continue;
                        hits.push_back({b, i});
                        sum += pay->second;
                    }
                if (sum < s.threshold || hits.size() > pred.ell) return Bottom{};
            }
            if (hits.empty()) return Bottom{};
            return witness(replica, hits);
        },
        pred.spec);
}

bool validate_true(const TruthProof& sigma, const ChainPredicate& pred,
                   const std::map<Height, Digest>& blockhashes) {
    const std::size_t n = sigma.txs.size();
    if (!pred.well_formed() || n == 0 || n > pred.ell) return false;
    if (sigma.mtps.size() != n || sigma.blocks.size() != n) return false;

    std::vector<Digest> ids;
    for (std::size_t i = 0; i < n; ++i) {
        const BlockHeader& h = sigma.blocks[i];
        if (h.height > pred.N) return false;
        auto it = blockhashes.find(h.height);
        if (it == blockhashes.end() || it->second != h.hash()) return false;
        Digest leaf = hash(sigma.txs[i].payload);
        if (!vrfy_mtp(h.root, sigma.mtps[i], leaf)) return false;
        ids.push_back(leaf);
    }
    // distinct transactions only, so nothing is counted twice
    if (std::set<Digest>(ids.begin(), ids.end()).size() != n) return false;

    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TxidEquals>) {
                return ids.front() == s.target;
            } else if constexpr (std::is_same_v<T, AllTxidsPresent>) {
                std::set<Digest> have(ids.begin(), ids.end());
                for (const auto& t : s.targets)
                    if (!have.count(t)) return false;
                return true;
            } else {
                Money sum;
                for (const auto& tx : sigma.txs) {
                    auto pay = parse_payment(tx.payload);
                    if (!pay || pay->first != s.address) return false;
                    sum += pay->second;
                }
                return sum >= s.threshold;
            }
        },
        pred.spec);
}

}  // namespace slc
