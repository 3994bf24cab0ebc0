// SPDX-License-Identifier: MIT
#include "slc/chain.hpp"

#include <algorithm>

namespace slc {

Transaction Transaction::make(Bytes payload) {
    Transaction tx;
    tx.txid = hash(payload);
    tx.payload = std::move(payload);
    return tx;
}

// Left subtree takes the first ceil(n/2) leaves; no duplication on odd n.
int MerkleTree::build(std::size_t lo, std::size_t hi) {
    int id = static_cast<int>(nodes_.size());
    nodes_.push_back({});
    if (hi - lo == 1) {
        nodes_[id].label = leaves_[lo];
        leaf_node_[lo] = id;
        return id;
    }
    std::size_t mid = lo + (hi - lo + 1) / 2;
    int l = build(lo, mid);
    int r = build(mid, hi);
    nodes_[id].left = l;
    nodes_[id].right = r;
    nodes_[l].parent = id;
    nodes_[r].parent = id;
    nodes_[id].label = hash_pair(nodes_[l].label, nodes_[r].label);
    return id;
}

std::size_t MerkleTree::depth() const {
    std::size_t best = 0;
    for (int leaf : leaf_node_) {
        std::size_t d = 0;
        for (int x = leaf; nodes_[x].parent >= 0; x = nodes_[x].parent) ++d;
        best = std::max(best, d);
    }
    return best;
}

MerkleTree build_mt(const std::vector<Transaction>& txs) {
    if (txs.empty()) throw EmptyPayload();
    MerkleTree mt;
    mt.leaves_.reserve(txs.size());
    for (const auto& tx : txs) mt.leaves_.push_back(tx.txid);
    mt.leaf_node_.assign(txs.size(), -1);
    mt.nodes_.reserve(2 * txs.size());
    mt.root_ = mt.build(0, txs.size());
    return mt;
}

MerkleProof gen_mtp(const MerkleTree& mt, const Transaction& tx) {
    auto it = std::find(mt.leaves_.begin(), mt.leaves_.end(), hash(tx.payload));
    if (it == mt.leaves_.end()) throw NotALeaf();
    MerkleProof proof;
    int x = mt.leaf_node_[static_cast<std::size_t>(it - mt.leaves_.begin())];
    while (mt.nodes_[x].parent >= 0) {
        const auto& par = mt.nodes_[mt.nodes_[x].parent];
        if (par.left == x)
            proof.path.push_back({mt.nodes_[par.right].label, 0});
        else
            proof.path.push_back({mt.nodes_[par.left].label, 1});
        x = mt.nodes_[x].parent;
    }
    return proof;
}

bool vrfy_mtp(const Digest& root, const MerkleProof& proof, const Digest& leaf) {
    Digest x = leaf;
    for (const auto& step : proof.path) {
        if (step.side > 1) return false;
        x = step.side == 0 ? hash_pair(x, step.sibling) : hash_pair(step.sibling, x);
    }
    return x == root;
}

Bytes serialize_proof(const MerkleProof& p) {
    ByteWriter w;
    w.u32(static_cast<std::uint32_t>(p.path.size()));
    for (const auto& s : p.path) w.field(s.sibling.span()).u8(s.side);
    return w.take();
}

std::optional<MerkleProof> parse_proof(std::span<const std::uint8_t> data) {
    ByteReader r(data);
    auto n = r.u32();
    if (!n || *n > 64) return std::nullopt;
    MerkleProof p;
    for (std::uint32_t i = 0; i < *n; ++i) {
        auto sib = r.field(32);
        auto side = r.u8();
        if (!sib || sib->size() != 32 || !side) return std::nullopt;
        MerkleProofStep s;
        std::copy(sib->begin(), sib->end(), s.sibling.bytes.begin());
        s.side = *side;
        p.path.push_back(s);
    }
    if (!r.at_end()) return std::nullopt;
    return p;
}

}  // namespace slc
