// SPDX-License-Identifier: MIT
#include "slc/chain.hpp"

#include <sstream>

namespace slc {

Bytes BlockHeader::serialize() const {
    ByteWriter h;
    h.u64(height);
    ByteWriter w;
    w.field(h.bytes()).field(prev_hash.span()).field(nonce).field(root.span());
    return w.take();
}

void append_block(Chain& chain, std::vector<Transaction> txs) {
    if (txs.empty()) throw EmptyPayload();
    Block b;
    b.header.height = chain.blocks.empty() ? 0 : chain.tip() + 1;
    b.header.prev_hash = chain.blocks.empty() ? Digest::zero() : chain.blockhashes.at(chain.tip());
    ByteWriter nonce;
    nonce.u64(b.header.height * 0x9e3779b97f4a7c15ull);
    b.header.nonce = nonce.take();
    b.header.root = build_mt(txs).root();
    b.payload = std::move(txs);
    chain.blockhashes[b.header.height] = b.header.hash();
    chain.blocks.push_back(std::move(b));
}

void transfer(Ledger& ledger, const PartyId& from, const PartyId& to, const Money& amount) {
    if (amount.is_negative()) throw std::invalid_argument("negative transfer");
    Money& src = ledger[from];
    if (src < amount) throw InsufficientFunds();
    src -= amount;
    ledger[to] += amount;
}

Money ledger_total(const Ledger& ledger) {
    Money sum;
    for (const auto& [_, v] : ledger) sum += v;
    return sum;
}

Money balance(const Ledger& ledger, const PartyId& who) {
    auto it = ledger.find(who);
    return it == ledger.end() ? Money() : it->second;
}

std::string dump_chain(const Chain& chain) {
    std::ostringstream os;
    for (const auto& b : chain.blocks)
        os << b.header.height << ' ' << b.header.prev_hash.hex() << ' ' << b.header.root.hex() << ' '
           << b.payload.size() << '\n';
    return os.str();
}

}  // namespace slc
