"""Places of the rationals: the real place and one place per prime."""

from __future__ import annotations

from dataclasses import dataclass

from torusembed.arith.integers import is_probable_prime


@dataclass(frozen=True)
class Place:
    """A place of Q.  ``p`` is the prime for a finite place, None for the real one."""

    p: int | None

    @classmethod
    def infinity(cls) -> "Place":
        return cls(None)

    @classmethod
    def finite(cls, p: int) -> "Place":
        if not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        return cls(p)

    @property
    def is_infinite(self) -> bool:
        return self.p is None

    def sort_key(self) -> tuple[int, int]:
        # Finite places ascending, the real place last.
        return (1, 0) if self.p is None else (0, self.p)

    def __str__(self) -> str:
        return "inf" if self.p is None else str(self.p)

    def __repr__(self) -> str:
        return f"Place({self})"


INFINITY = Place.infinity()
TWO = Place(2)


def sorted_places(places) -> list[Place]:
    return sorted(places, key=Place.sort_key)
