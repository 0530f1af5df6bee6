"""Exact scalar fields: the rationals and prime fields F_p."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """A coefficient field, either ``FieldSpec("Q")`` or ``FieldSpec("Fp", p)``.

    Elements of Q are :class:`fractions.Fraction`; elements of F_p are
    least nonnegative residues stored as plain ``int``.
    """

    kind: str
    p: int | None = None

    def __post_init__(self):
        if self.kind == "Q":
            if self.p is not None:
                raise ValueError("the rationals take no characteristic")
        elif self.kind == "Fp":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"F_p needs a prime p, got {self.p!r}")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        text = text.strip()
        if text in ("Q", "QQ"):
            return QQ
        if text.startswith("Fp:"):
            return cls("Fp", int(text[3:]))
        raise ValueError(f"cannot parse field {text!r}; expected 'Q' or 'Fp:<p>'")

    def __str__(self):
        return "Q" if self.kind == "Q" else f"Fp:{self.p}"

    @property
    def characteristic(self) -> int:
        return 0 if self.kind == "Q" else self.p

    @property
    def zero(self):
        return Fraction(0) if self.kind == "Q" else 0

    @property
    def one(self):
        return Fraction(1) if self.kind == "Q" else 1

    def __call__(self, x):
        """Coerce an int, Fraction or numeric string into the field."""
        if self.kind == "Q":
            return Fraction(x)
        if isinstance(x, Fraction):
            return self(x.numerator) * self.inv(self(x.denominator)) % self.p
        if isinstance(x, str):
            return self(Fraction(x))
        return int(x) % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else (a * b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero scalar")
        if self.p is None:
            return 1 / a
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def to_json(self, a) -> dict:
        if self.p is None:
            return {"num": str(a.numerator), "den": str(a.denominator)}
        return {"val": str(a)}

    def from_json(self, obj: dict):
        if self.p is None:
            if "val" in obj:
                return Fraction(int(obj["val"]))
            return Fraction(int(obj["num"]), int(obj.get("den", "1")))
        if "val" in obj:
            return int(obj["val"]) % self.p
        return self(Fraction(int(obj["num"]), int(obj.get("den", "1"))))


QQ = FieldSpec("Q")


def GF(p: int) -> FieldSpec:
    return FieldSpec("Fp", p)
