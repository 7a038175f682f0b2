"""Advice tape and the bit codes written on it."""

from __future__ import annotations

import json


class TapeError(RuntimeError):
    pass


class AdviceTape:
    """Append-only bit string with a sequential read cursor."""

    def __init__(self, bits: str = ""):
        if set(bits) - {"0", "1"}:
            raise TapeError("tape bits must be 0/1")
        self._bits = list(bits)
        self.cursor = 0

    @property
    def written(self) -> int:
        return len(self._bits)

    @property
    def read_count(self) -> int:
        return self.cursor

    @property
    def bits(self) -> str:
        return "".join(self._bits)

    def write(self, bits: str) -> None:
        if set(bits) - {"0", "1"}:
            raise TapeError("tape bits must be 0/1")
        self._bits.extend(bits)

    def read(self, k: int) -> str:
        if self.cursor + k > len(self._bits):
            raise TapeError("advice tape exhausted")
        out = "".join(self._bits[self.cursor:self.cursor + k])
        self.cursor += k
        return out

    def rewound(self) -> "AdviceTape":
        return AdviceTape(self.bits)

    def to_dict(self) -> dict:
        n = len(self._bits)
        padded = self.bits + "0" * (-n % 8)
        data = int(padded, 2).to_bytes(len(padded) // 8, "big") if padded else b""
        return {"length": n, "bits": data.hex()}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc: dict) -> "AdviceTape":
        n = int(doc["length"])
        raw = bytes.fromhex(doc["bits"])
        bits = "".join(f"{b:08b}" for b in raw)
        if len(bits) < n:
            raise TapeError("tape document shorter than its length field")
        return cls(bits[:n])

    @classmethod
    def from_json(cls, text: str) -> "AdviceTape":
        return cls.from_dict(json.loads(text))


def write_count(x: int) -> str:
    """Elias delta code of ``x - 1``; ``x >= 2``."""
    if x < 2:
        raise ValueError("counts start at 2")
    y = x - 1
    n = y.bit_length()
    ln = n.bit_length()
    return "0" * (ln - 1) + format(n, "b") + format(y, "b")[1:]


def read_count(tape: AdviceTape) -> int:
    zeros = 0
    while tape.read(1) == "0":
        zeros += 1
    n = int("1" + tape.read(zeros), 2)
    y = int("1" + tape.read(n - 1), 2)
    return y + 1


def block_width(count: int, k: int) -> int:
    """``ceil(count * log2 k)`` computed without floating point."""
    if count == 0:
        return 0
    return (k ** count - 1).bit_length()


def pack_choices(digits, k: int) -> str:
    value = 0
    for d in digits:
        if not 0 <= d < k:
            raise ValueError(f"digit {d} out of range for radix {k}")
        value = value * k + d
    width = block_width(len(digits), k)
    return format(value, "b").zfill(width) if width else ""


def unpack_choices(tape: AdviceTape, count: int, k: int) -> list:
    width = block_width(count, k)
    value = int(tape.read(width), 2) if width else 0
    if value >= k ** count:
        raise TapeError("choice block out of range")
    digits = []
    for _ in range(count):
        value, d = divmod(value, k)
        digits.append(d)
    return digits[::-1]


def write_fixed(x: int, width: int) -> str:
    if not 0 <= x < (1 << width):
        raise ValueError(f"{x} does not fit in {width} bits")
    return format(x, "b").zfill(width) if width else ""


def read_fixed(tape: AdviceTape, width: int) -> int:
    return int(tape.read(width), 2) if width else 0


def fixed_width(values: int) -> int:
    """Bits for a field holding one of ``values`` alternatives."""
    return (values - 1).bit_length() if values > 1 else 0
