// SPDX-License-Identifier: MIT
#pragma once

#include "slc/crypto.hpp"
#include "slc/money.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace slc {

struct EmptyPayload : std::runtime_error {
    EmptyPayload() : std::runtime_error("EmptyPayload") {}
};
struct NotALeaf : std::runtime_error {
    NotALeaf() : std::runtime_error("NotALeaf") {}
};
struct InsufficientFunds : std::runtime_error {
    InsufficientFunds() : std::runtime_error("InsufficientFunds") {}
};

using Height = std::uint64_t;
using PartyId = std::string;

inline const PartyId kBurnSink = "⊥sink";

struct Transaction {
    Bytes payload;
    Digest txid;

    static Transaction make(Bytes payload);
    friend bool operator==(const Transaction&, const Transaction&) = default;
};

// ---- Merkle scheme ------------------------------------------------------

struct MerkleProofStep {
    Digest sibling;
    std::uint8_t side = 0;  // 0: we were the left child, sibling is on the right
    friend bool operator==(const MerkleProofStep&, const MerkleProofStep&) = default;
};

struct MerkleProof {
    std::vector<MerkleProofStep> path;  // leaf upward
    friend bool operator==(const MerkleProof&, const MerkleProof&) = default;
};

class MerkleTree {
public:
    const Digest& root() const { return nodes_.at(root_).label; }
    const std::vector<Digest>& leaves() const { return leaves_; }
    std::size_t depth() const;

private:
    struct Node {
        Digest label;
        int parent = -1, left = -1, right = -1;
    };
    std::vector<Node> nodes_;
    std::vector<int> leaf_node_;
    std::vector<Digest> leaves_;
    int root_ = -1;

    int build(std::size_t lo, std::size_t hi);
    friend MerkleTree build_mt(const std::vector<Transaction>&);
    friend MerkleProof gen_mtp(const MerkleTree&, const Transaction&);
};

MerkleTree build_mt(const std::vector<Transaction>& txs);
MerkleProof gen_mtp(const MerkleTree& mt, const Transaction& tx);
bool vrfy_mtp(const Digest& root, const MerkleProof& proof, const Digest& leaf);

// u32 step count, then per step field(sibling) and one side octet.
Bytes serialize_proof(const MerkleProof& proof);
std::optional<MerkleProof> parse_proof(std::span<const std::uint8_t> data);

// ---- blocks and chain ---------------------------------------------------

struct BlockHeader {
    Height height = 0;
    Digest prev_hash;
    Bytes nonce;
    Digest root;

    Bytes serialize() const;
    Digest hash() const { return slc::hash(serialize()); }
    friend bool operator==(const BlockHeader&, const BlockHeader&) = default;
};

struct Block {
    BlockHeader header;
    std::vector<Transaction> payload;
};

using Ledger = std::map<PartyId, Money>;

struct Chain {
    std::vector<Block> blocks;
    std::map<Height, Digest> blockhashes;
    Ledger ledger;

    Height tip() const { return blocks.empty() ? 0 : blocks.back().header.height; }
    std::size_t length() const { return blocks.size(); }
};

// Appends a block over txs; starts from genesis when the chain is empty.
void append_block(Chain& chain, std::vector<Transaction> txs);

void transfer(Ledger& ledger, const PartyId& from, const PartyId& to, const Money& amount);
Money ledger_total(const Ledger& ledger);
Money balance(const Ledger& ledger, const PartyId& who);

// One line per block: height, hex prev_hash, hex root, tx count.
std::string dump_chain(const Chain& chain);

}  // namespace slc
