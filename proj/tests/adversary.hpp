// SPDX-License-Identifier: MIT
// Forgers for truth proofs of false predicates. Every candidate goes out as
// wire octets, so decoding is part of what gets attacked.
#pragma once
#include "slc/predicate.hpp"

#include <random>

namespace slc::testing {

inline Bytes rand_bytes(std::mt19937_64& rng, std::size_t n) {
    Bytes b(n);
    for (auto& x : b) x = static_cast<std::uint8_t>(rng());
    return b;
}

// Twin chains that differ in one transaction slot: `with` carries `target`,
// `without` holds filler there instead. Same length and shape.
struct TwinChains {
    Chain with, without;
    Transaction target;
    Height planted_at = 0;
};

inline TwinChains make_twins(std::mt19937_64& rng, std::size_t blocks, std::size_t per_block) {
    TwinChains t;
    t.planted_at = rng() % blocks;
    std::size_t slot = rng() % per_block;
    t.target = Transaction::make(rand_bytes(rng, 20));
    for (std::size_t b = 0; b < blocks; ++b) {
        std::vector<Transaction> txs;
        for (std::size_t i = 0; i < per_block; ++i) txs.push_back(Transaction::make(rand_bytes(rng, 20)));
        auto other = txs;
        if (b == t.planted_at) {
            txs[slot] = t.target;
        }
        append_block(t.with, txs);
        append_block(t.without, other);
    }
    return t;
}

// Candidate sigmas against `pred` on `chain`, where pred is false on chain.
// `donor` is a proof that is honest for some other chain or predicate.
class Forger {
public:
    Forger(const Chain& chain, const TruthProof& donor, std::uint64_t seed) : chain_(chain), donor_(donor), rng_(seed) {}

    Bytes next(const ChainPredicate& pred) {
        switch (rng_() % 8) {
            case 0: return donor_.serialize();
            case 1: return flip_octet(donor_.serialize());
            case 2: return real_header_fake_tx(pred).serialize();
            case 3: return other_tx_honest_proof(pred).serialize();
            case 4: return flip_octet(other_tx_honest_proof(pred).serialize());
            case 5: return relabel_height(pred).serialize();
            case 6: return duplicated(pred).serialize();
            default: return rand_bytes(rng_, 8 + rng_() % 200);
        }
    }

private:
    const Chain& chain_;
    TruthProof donor_;
    std::mt19937_64 rng_;

    Bytes flip_octet(Bytes b) {
        if (b.empty()) return b;
        b[rng_() % b.size()] ^= static_cast<std::uint8_t>(1u << (rng_() % 8));
        return b;
    }

    const Block& some_block(const ChainPredicate& pred) {
        Height hi = std::min<Height>(pred.N, chain_.tip());
        return chain_.blocks[rng_() % (hi + 1)];
    }

    // The donor's transactions, grafted under genuine headers with made-up paths.
    TruthProof real_header_fake_tx(const ChainPredicate& pred) {
        TruthProof s = donor_;
        for (std::size_t i = 0; i < s.txs.size(); ++i) {
            s.blocks[i] = some_block(pred).header;
            MerkleProof mp;
            for (std::size_t d = 0, n = 1 + rng_() % 6; d < n; ++d) {
                MerkleProofStep st;
                auto r = rand_bytes(rng_, 32);
                std::copy(r.begin(), r.end(), st.sibling.bytes.begin());
                st.side = static_cast<std::uint8_t>(rng_() % 2);
                mp.path.push_back(st);
            }
            s.mtps[i] = mp;
        }
        return s;
    }

    // Fully valid inclusion of transactions that are really on chain, just not the right ones.
    TruthProof other_tx_honest_proof(const ChainPredicate& pred) {
        TruthProof s;
        std::size_t n = std::max<std::size_t>(1, std::min<std::size_t>(pred.ell, donor_.txs.size()));
        for (std::size_t i = 0; i < n; ++i) {
            const Block& b = some_block(pred);
            const Transaction& tx = b.payload[rng_() % b.payload.size()];
            s.txs.push_back(tx);
            s.mtps.push_back(gen_mtp(build_mt(b.payload), tx));
            s.blocks.push_back(b.header);
        }
        return s;
    }

    // Donor proof moved to a height where its header is not the chain's.
    TruthProof relabel_height(const ChainPredicate& pred) {
        TruthProof s = donor_;
        for (auto& h : s.blocks) h.height = rng_() % (pred.N + 2);
        return s;
    }

    // One genuine payment listed repeatedly, to pad a sum.
    TruthProof duplicated(const ChainPredicate& pred) {
        TruthProof s = other_tx_honest_proof(pred);
        while (s.txs.size() < std::max<std::uint32_t>(2, pred.ell)) {
            s.txs.push_back(s.txs.front());
            s.mtps.push_back(s.mtps.front());
            s.blocks.push_back(s.blocks.front());
        }
        return s;
    }
};

inline bool accepts(const Bytes& wire, const ChainPredicate& pred, const Chain& chain) {
    auto sigma = TruthProof::deserialize(wire);
    return sigma && validate_true(*sigma, pred, chain.blockhashes);
}

}  // namespace slc::testing
