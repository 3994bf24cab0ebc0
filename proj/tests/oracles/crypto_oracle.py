# SPDX-License-Identifier: MIT
# Reference vectors for hashing, Merkle roots and proofs, block hashes and
# seeded Ed25519 keys, computed with hashlib and pyca/cryptography.
import hashlib
import pathlib
import struct

from cryptography.hazmat.primitives import serialization
from cryptography.hazmat.primitives.asymmetric.ed25519 import Ed25519PrivateKey

GOLDEN = pathlib.Path(__file__).resolve().parent.parent / "golden"


def H(b):
    return hashlib.sha256(b).digest()


def field(b):
    return struct.pack(">I", len(b)) + b


def u64(v):
    return struct.pack(">Q", v)


def merkle(leaves):
    """Returns (root, {leaf index: [(sibling, side)]}) with a ceil(n/2) left split."""
    if len(leaves) == 1:
        return leaves[0], {0: []}
    mid = (len(leaves) + 1) // 2
    lr, lp = merkle(leaves[:mid])
    rr, rp = merkle(leaves[mid:])
    paths = {i: path + [(rr, 0)] for i, path in lp.items()}
    paths.update({mid + i: path + [(lr, 1)] for i, path in rp.items()})
    return H(lr + rr), paths


def payloads(n, tag="tx"):
    return [f"{tag}-{i}".encode() for i in range(n)]


def sha_vectors():
    msgs = [b"", b"abc", b"slc", bytes(range(64)), b"\x00" * 33, b"a" * 1000]
    return [f"{m.hex() or '-'} {H(m).hex()}" for m in msgs]


def merkle_vectors():
    lines = []
    for n in list(range(1, 18)) + [31, 32, 33, 64]:
        root, paths = merkle([H(x) for x in payloads(n)])
        lines.append(f"root n={n} {root.hex()}")
        for i in sorted({0, n // 2, n - 1}):
            steps = ",".join(f"{s.hex()}:{side}" for s, side in paths[i])
            lines.append(f"proof n={n} i={i} len={len(paths[i])} {steps or '-'}")
    return lines


def block_vectors():
    lines, prev = [], bytes(32)
    for h in range(6):
        txs = [f"b{h}-t{j}".encode() for j in range(h % 3 + 1)]
        root, _ = merkle([H(t) for t in txs])
        nonce = u64((h * 0x9E3779B97F4A7C15) % 2**64)
        header = field(u64(h)) + field(prev) + field(nonce) + field(root)
        bh = H(header)
        lines.append(f"block h={h} txs={len(txs)} root={root.hex()} hash={bh.hex()}")
        prev = bh
    return lines


def key_vectors():
    lines = []
    for seed in (0, 1, 2, 7, 2**64 - 1):
        s32 = H(field(b"slc-keygen") + u64(seed))
        sk = Ed25519PrivateKey.from_private_bytes(s32)
        pub = sk.public_key().public_bytes(serialization.Encoding.Raw, serialization.PublicFormat.Raw)
        msg = b"query-" + str(seed).encode()
        lines.append(f"key seed={seed} pub={pub.hex()} msg={msg.hex()} sig={sk.sign(msg).hex()}")
    return lines


def main():
    GOLDEN.mkdir(exist_ok=True)
    (GOLDEN / "sha256_vectors.txt").write_text("\n".join(sha_vectors()) + "\n")
    (GOLDEN / "merkle_vectors.txt").write_text("\n".join(merkle_vectors()) + "\n")
    (GOLDEN / "block_vectors.txt").write_text("\n".join(block_vectors()) + "\n")
    (GOLDEN / "ed25519_vectors.txt").write_text("\n".join(key_vectors()) + "\n")


if __name__ == "__main__":
    main()
