// SPDX-License-Identifier: MIT
#pragma once

#include "slc/chain.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <variant>
#include <vector>

namespace slc {

struct ReplicaTooShort : std::runtime_error {
    ReplicaTooShort() : std::runtime_error("ReplicaTooShort") {}
};

struct TxidEquals {
    Digest target;
    friend bool operator==(const TxidEquals&, const TxidEquals&) = default;
};
struct AllTxidsPresent {
    std::set<Digest> targets;
    friend bool operator==(const AllTxidsPresent&, const AllTxidsPresent&) = default;
};
// Sum of the amount field of payments addressed to `address`.
struct InflowAtLeast {
    PartyId address;
    Money threshold;
    friend bool operator==(const InflowAtLeast&, const InflowAtLeast&) = default;
};

using PredicateSpec = std::variant<TxidEquals, AllTxidsPresent, InflowAtLeast>;

struct ChainPredicate {
    std::uint32_t ell = 1;
    Height N = 0;
    PredicateSpec spec;

    bool well_formed() const;
    Bytes serialize() const;
    std::string describe() const;
    friend bool operator==(const ChainPredicate&, const ChainPredicate&) = default;
};

ChainPredicate make_predicate(PredicateSpec spec, Height N);  // ell from the spec kind

// sigma = ({tx_i}, {pi_i}, C'); blocks[i] is the header holding txs[i].
struct TruthProof {
    std::vector<Transaction> txs;
    std::vector<MerkleProof> mtps;
    std::vector<BlockHeader> blocks;

    Bytes serialize() const;
    static std::optional<TruthProof> deserialize(std::span<const std::uint8_t> data);
    friend bool operator==(const TruthProof&, const TruthProof&) = default;
};

struct Bottom {
    friend bool operator==(const Bottom&, const Bottom&) = default;
};

using EvalResult = std::variant<TruthProof, Bottom>;

inline bool is_bottom(const EvalResult& r) { return std::holds_alternative<Bottom>(r); }

// Wire form of a relay's result: tag 0 for bottom, tag 1 followed by sigma.
Bytes encode_result(const EvalResult& r);
// nullopt when the octets are not a well-formed result.
std::optional<EvalResult> decode_result(std::span<const std::uint8_t> data);

EvalResult evaluate(const ChainPredicate& pred, const Chain& replica);

// Only trueness can be checked; there is deliberately no counterpart for bottom.
bool validate_true(const TruthProof& sigma, const ChainPredicate& pred,
                   const std::map<Height, Digest>& blockhashes);

// Payment payload understood by InflowAtLeast.
Bytes payment_payload(const PartyId& to, const Money& amount, std::string_view memo);
std::optional<std::pair<PartyId, Money>> parse_payment(std::span<const std::uint8_t> payload);

}  // namespace slc
