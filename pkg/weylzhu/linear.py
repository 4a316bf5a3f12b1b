# weylzhu/linear.py
"""Finite exact-rational linear combinations over hashable basis keys.

Every algebraic value in the package (mode elements, Weyl algebra elements,
Fock and weight vectors) is a map from basis keys to nonzero Fractions.
Subclasses choose the key type, how keys sort for display and, optionally,
how two combinations multiply.
"""
from fractions import Fraction
from numbers import Rational


def is_scalar(x):
    return isinstance(x, (int, Fraction)) and not isinstance(x, bool)


def accumulate(pairs):
    """Sum (key, coefficient) pairs into a dict, dropping zeros."""
    coefs = {}
    for key, value in pairs:
        if value == 0:
            continue
        total = coefs.get(key, 0) + value
        if total == 0:
            coefs.pop(key, None)
        else:
            coefs[key] = total
    return coefs


class LinearCombination:
    """Immutable map key -> nonzero Fraction with vector-space operations."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        coefs = {}
        for key, value in (terms or {}).items():
            if not isinstance(value, Rational):
                raise TypeError(f"Coefficient {value!r} is not rational")
            if value != 0:
                coefs[key] = Fraction(value)
        self._terms = coefs
        self._hash = None

    @classmethod
    def from_pairs(cls, pairs):
        return cls(accumulate(pairs))

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def basis(cls, key, coefficient=1):
        return cls({key: coefficient})

    # -- access ---------------------------------------------------------

    @staticmethod
    def sort_key(key):
        return key

    def items(self):
        """Terms in a deterministic display order."""
        return sorted(self._terms.items(), key=lambda kv: self.sort_key(kv[0]))

    def keys(self):
        return [key for key, _ in self.items()]

    def coefficient(self, key):
        return self._terms.get(key, Fraction(0))

    def __contains__(self, key):
        return key in self._terms

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self):
        return not self._terms

    # -- comparison -----------------------------------------------------

    def __eq__(self, other):
        if is_scalar(other) and other == 0:
            return not self._terms
        if not isinstance(other, LinearCombination) or type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, frozenset(self._terms.items())))
        return self._hash

    # -- arithmetic -----------------------------------------------------

    def _check_same(self, other):
        if type(other) is not type(self):
            raise TypeError(
                f"Cannot combine {type(self).__name__} with {type(other).__name__}"
            )

    def __add__(self, other):
        if is_scalar(other) and other == 0:
            return self
        if not isinstance(other, LinearCombination):
            return NotImplemented
        self._check_same(other)
        return type(self).from_pairs(
            list(self._terms.items()) + list(other._terms.items())
        )

    def __radd__(self, other):
        # supports sum(...) starting from 0
        if is_scalar(other) and other == 0:
            return self
        return NotImplemented

    def __neg__(self):
        return type(self)({key: -value for key, value in self._terms.items()})

    def __sub__(self, other):
        if is_scalar(other) and other == 0:
            return self
        if not isinstance(other, LinearCombination):
            return NotImplemented
        return self + (-other)

    def scale(self, c):
        c = Fraction(c)
        if c == 0:
            return type(self)()
        return type(self)({key: c * value for key, value in self._terms.items()})

    def __mul__(self, other):
        if is_scalar(other):
            return self.scale(other)
        if isinstance(other, LinearCombination):
            self._check_same(other)
            return self._product(other)
        return NotImplemented

    def __rmul__(self, other):
        if is_scalar(other):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if is_scalar(other):
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def _product(self, other):
        raise TypeError(f"{type(self).__name__} has no product")

    # -- structural maps ------------------------------------------------

    def map_keys(self, fn):
        """Apply fn to every key; keys mapped to None are dropped."""
        pairs = []
        for key, value in self._terms.items():
            new_key = fn(key)
            if new_key is not None:
                pairs.append((new_key, value))
        return type(self).from_pairs(pairs)

    def expand(self, fn, result_type=None):
        """Linear extension of fn: key -> combination (of result_type)."""
        result_type = result_type or type(self)
        pairs = []
        for key, value in self._terms.items():
            image = fn(key)
            if image:
                pairs.extend((k, value * v) for k, v in image._terms.items())
        return result_type.from_pairs(pairs)

    def filter(self, predicate):
        return type(self)({k: v for k, v in self._terms.items() if predicate(k)})

    def group_by(self, fn):
        """Split into components labelled by fn(key)."""
        groups = {}
        for key, value in self._terms.items():
            groups.setdefault(fn(key), {})[key] = value
        return {label: type(self)(terms) for label, terms in groups.items()}

    # -- display --------------------------------------------------------

    @staticmethod
    def format_key(key):
        return str(key)

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for key, value in self.items():
            sign = "-" if value < 0 else "+"
            magnitude = abs(value)
            word = self.format_key(key)
            if word == "1":
                body = str(magnitude)
            elif magnitude == 1:
                body = word
            else:
                body = f"{magnitude} * {word}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("- " if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"{type(self).__name__}({str(self)!r})"
