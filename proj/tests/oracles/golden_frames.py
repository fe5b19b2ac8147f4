#!/usr/bin/env python3
# Independent reference for the VL frame layout: struct packing + zlib CRC-32.
# Prints C++ initializers for the frozen golden vectors in test_codec.cpp.
import struct
import zlib

VECTORS = [
    # (vl_id, partition, app, sample_seq, timestamp_us, values, vl_seq)
    (0x0002, 2, 2, 7, 100000, [100.15], 1),
    (0x0001, 1, 1, 0, 0, [43.6, 1.44], 255),
    (0x0003, 3, 3, 65535, 200000, [359.5], 128),
    (0xABCD, 7, 1, 42, 0x0102030405060708, [-1.5, 0.0, 1e300], 200),
    (0x0100, 4, 2, 1, 300000, [0.1], 2),
]


def encode(vl, part, app, sseq, ts, values, seq):
    body = b"\x03\x00\x00\x00" + struct.pack(">HBBHQB", vl, part, app, sseq, ts, len(values))
    body += b"".join(struct.pack(">d", v) for v in values)
    total = max(64, len(body) + 5)
    body += b"\x00" * (total - 5 - len(body))
    body += bytes([seq])
    return body + struct.pack(">I", zlib.crc32(body) & 0xFFFFFFFF)


for v in VECTORS:
    raw = encode(*v)
    print(f"// vl={v[0]:#06x} app={v[2]} seq={v[6]} len={len(raw)}")
    print("{" + ", ".join(f"0x{b:02X}" for b in raw) + "},")
