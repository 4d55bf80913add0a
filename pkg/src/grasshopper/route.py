"""Deciding and constructing safe jump orders for signed integer jumps."""
from __future__ import annotations

import itertools
import json
import random
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

from . import kernels, limits
from .errors import CapacityError, ConsistencyError, InputError, TheoremViolation


@dataclass(frozen=True)
class JumpMultiset:
    jumps: tuple[int, ...]
    allow_zero: bool = True

    def __post_init__(self):
        jumps = tuple(int(a) for a in self.jumps)
        object.__setattr__(self, "jumps", jumps)
        if len(set(jumps)) != len(jumps):
            dup = [a for a, c in Counter(jumps).items() if c > 1]
            raise InputError(f"jumps must be distinct, repeated: {dup}")
        if not self.allow_zero and 0 in jumps:
            raise InputError("zero jump not permitted")

    def __len__(self):
        return len(self.jumps)

    def __iter__(self):
        return iter(self.jumps)

    @property
    def has_zero(self) -> bool:
        return 0 in self.jumps


@dataclass(frozen=True)
class MineField:
    mines: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "mines", frozenset(int(m) for m in self.mines))

    def __len__(self):
        return len(self.mines)

    def __contains__(self, x):
        return x in self.mines

    def __iter__(self):
        return iter(sorted(self.mines))


@dataclass(frozen=True)
class Route:
    order: tuple[int, ...]
    prefix_sums: tuple[int, ...]

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "Route":
        order = tuple(order)
        return cls(order, tuple(itertools.accumulate(order[:-1])))


def _jumps(jumps) -> JumpMultiset:
    return jumps if isinstance(jumps, JumpMultiset) else JumpMultiset(tuple(jumps))


def _mines(mines) -> MineField:
    return mines if isinstance(mines, MineField) else MineField(frozenset(mines))


def is_valid_route(route: Route, jumps, mines) -> bool:
    jumps, mines = _jumps(jumps), _mines(mines)
    if sorted(route.order) != sorted(jumps.jumps):
        return False
    if route.prefix_sums != tuple(itertools.accumulate(route.order[:-1])):
        return False
    return not any(s in mines for s in route.prefix_sums)


def find_safe_order(jumps, mines) -> Route | None:
    """A safe order of ``jumps`` avoiding ``mines``, or None if every order is blocked.

    Only the first n-1 partial sums are guarded; the final position is exempt.
    """
    jumps, mines = _jumps(jumps), _mines(mines)
    n = len(jumps)
    if n == 0:
        raise InputError("need at least one jump")
    cap = limits.get().subset_n
    if n > cap:
        raise CapacityError(f"n={n} exceeds subset-DP cap {cap}", cap="subset_n", limit=cap)
    idx = kernels.subset_order(jumps.jumps, sorted(mines.mines))
    if idx is None:
        return None
    return Route.from_order(jumps.jumps[i] for i in idx)


def exhaustive_safe_order(jumps, mines, max_n: int = 8) -> Route | None:
    """First safe order in itertools.permutations order; n! brute force."""
    jumps, mines = _jumps(jumps), _mines(mines)
    if len(jumps) > max_n:
        raise CapacityError(f"exhaustive search limited to n <= {max_n}", cap="exhaustive_n", limit=max_n)
    for order in itertools.permutations(jumps.jumps):
        s = 0
        for b in order[:-1]:
            s += b
            if s in mines:
                break
        else:
            return Route.from_order(order)
    return None


def is_blocked(jumps, mines, exhaustive_check: bool = False) -> bool:
    blocked = find_safe_order(jumps, mines) is None
    if exhaustive_check and (exhaustive_safe_order(jumps, mines) is None) != blocked:
        raise ConsistencyError(f"subset DP and enumeration disagree on {jumps}, {mines}")
    return blocked


def extremal_instance(n: int, hops_allowed: bool = True) -> tuple[JumpMultiset, MineField]:
    """Blocked instance whose mine count exceeds the theorem bound by one."""
    if n < 2:
        raise InputError("extremal instances need n >= 2")
    k = n // 2
    if n % 2 == 0:
        jumps = [a for a in range(-k + 1, k + 2) if a != 0]
        mines = range(1, k + 2)
    elif hops_allowed:
        jumps = list(range(-k + 1, k + 2))
        mines = range(1, k + 2)
    else:
        jumps = [a for a in range(-k + 1, k + 3) if a != 0]
        mines = range(1, k + 3)
    return JumpMultiset(tuple(jumps)), MineField(frozenset(mines))


def theorem_bound(jumps) -> int:
    jumps = _jumps(jumps)
    n = len(jumps)
    return n // 2 if jumps.has_zero else (n + 1) // 2


@dataclass
class VerificationReport:
    jumps: list[int]
    mines: list[int]
    has_zero: bool
    bound: int
    within_bound: bool
    found: bool
    route: list[int] | None
    prefix_sums: list[int] | None
    elapsed: float = 0.0

    @property
    def violation(self) -> bool:
        return self.within_bound and not self.found

    def to_dict(self) -> dict:
        d = asdict(self)
        d["verdict"] = "found" if self.found else "blocked"
        d["violation"] = self.violation
        return d


def verify_theorem_instance(jumps, mines) -> VerificationReport:
    jumps, mines = _jumps(jumps), _mines(mines)
    t0 = time.perf_counter()
    route = find_safe_order(jumps, mines)
    bound = theorem_bound(jumps)
    return VerificationReport(
        jumps=list(jumps.jumps),
        mines=sorted(mines.mines),
        has_zero=jumps.has_zero,
        bound=bound,
        within_bound=len(mines) <= bound,
        found=route is not None,
        route=list(route.order) if route else None,
        prefix_sums=list(route.prefix_sums) if route else None,
        elapsed=time.perf_counter() - t0,
    )


def odd_reduction_route(jumps, mines) -> Route:
    """Safe order for odd n built from an even instance.

    With 0 among the jumps: solve the other 2k jumps, then put 0 second.
    Without 0: solve jumps + [0], then drop the 0.
    """
    jumps, mines = _jumps(jumps), _mines(mines)
    n = len(jumps)
    if n % 2 == 0:
        raise InputError(f"odd_reduction_route needs odd n, got {n}")
    if len(mines) > theorem_bound(jumps):
        raise InputError(f"{len(mines)} mines exceed the bound {theorem_bound(jumps)}")
    if n == 1:
        return Route.from_order(jumps.jumps)
    if jumps.has_zero:
        others = tuple(a for a in jumps.jumps if a != 0)
        sub = find_safe_order(others, mines)
        if sub is None:
            raise TheoremViolation("even instance blocked within bound",
                                   {"jumps": list(others), "mines": sorted(mines.mines)})
        order = (sub.order[0], 0) + sub.order[1:]
    else:
        extended = jumps.jumps + (0,)
        sub = find_safe_order(extended, mines)
        if sub is None:
            raise TheoremViolation("even instance blocked within bound",
                                   {"jumps": list(extended), "mines": sorted(mines.mines)})
        order = tuple(b for b in sub.order if b != 0)
    route = Route.from_order(order)
    if not is_valid_route(route, jumps, mines):
        raise ConsistencyError(f"odd reduction produced an invalid route {route.order}")
    return route


@dataclass
class CampaignConfig:
    n_min: int = 2
    n_max: int = 12
    lo: int = -20
    hi: int = 20
    trials: int = 10_000
    # "zero": 0 always among the jumps, "nonzero": never, "both": alternate
    zero_mode: str = "both"
    seed: int = 0
    probe_above: bool = True
    workers: int = 1

    def __post_init__(self):
        if self.zero_mode not in ("zero", "nonzero", "both"):
            raise InputError(f"zero_mode must be zero, nonzero or both, not {self.zero_mode!r}")
        if not 1 <= self.n_min <= self.n_max:
            raise InputError("need 1 <= n_min <= n_max")
        if self.lo > 0 or self.hi < 0:
            raise InputError("jump range must contain 0")
        if self.hi - self.lo < self.n_max:
            raise InputError("jump range too small for n_max distinct nonzero values")
        if self.trials < 0:
            raise InputError("trials must be nonnegative")


@dataclass
class CampaignStats:
    trials: int = 0
    found: int = 0
    violations: int = 0
    by_n: dict[int, int] = field(default_factory=dict)
    with_zero: int = 0
    without_zero: int = 0
    # one extra mine beyond the bound: how often that blocks (recorded, never asserted)
    probed_above: int = 0
    blocked_above: int = 0
    mine_range: str = "mines drawn uniformly from [sum of negative jumps, sum of positive jumps]"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["by_n"] = {str(k): v for k, v in sorted(self.by_n.items())}
        return d


def campaign_instance(config: CampaignConfig, trial: int):
    """Deterministic random instance for one trial, exactly at the theorem bound.

    Each trial seeds its own stream from (seed, trial), so workers can split
    trials in any way without changing the instances.
    """
    rng = random.Random(f"{config.seed}/{trial}")
    n = rng.randint(config.n_min, config.n_max)
    if config.zero_mode == "both":
        zero = trial % 2 == 0
    else:
        zero = config.zero_mode == "zero"
    nonzero = [a for a in range(config.lo, config.hi + 1) if a != 0]
    jumps = rng.sample(nonzero, n - 1 if zero else n)
    if zero:
        jumps.insert(rng.randrange(n), 0)
    bound = n // 2 if zero else (n + 1) // 2
    lo = sum(a for a in jumps if a < 0)
    hi = sum(a for a in jumps if a > 0)
    pool = range(lo, hi + 1)
    mines = rng.sample(pool, min(bound, len(pool)))
    extra = None
    if config.probe_above and len(pool) > len(mines):
        taken = set(mines)
        extra = rng.choice([m for m in pool if m not in taken])
    return jumps, mines, extra


def _run_trials(config: CampaignConfig, start: int, stop: int) -> CampaignStats:
    stats = CampaignStats()
    for trial in range(start, stop):
        jumps, mines, extra = campaign_instance(config, trial)
        report = verify_theorem_instance(jumps, mines)
        if report.violation:
            raise TheoremViolation(
                f"blocked within bound at trial {trial}",
                {"jumps": jumps, "mines": sorted(mines), "seed": config.seed, "trial": trial},
            )
        stats.trials += 1
        stats.found += report.found
        stats.by_n[len(jumps)] = stats.by_n.get(len(jumps), 0) + 1
        if report.has_zero:
            stats.with_zero += 1
        else:
            stats.without_zero += 1
        if extra is not None:
            stats.probed_above += 1
            stats.blocked_above += is_blocked(jumps, mines + [extra])
    return stats


def _merge(parts: Iterable[CampaignStats]) -> CampaignStats:
    total = CampaignStats()
    for p in parts:
        total.trials += p.trials
        total.found += p.found
        total.violations += p.violations
        total.with_zero += p.with_zero
        total.without_zero += p.without_zero
        total.probed_above += p.probed_above
        total.blocked_above += p.blocked_above
        for n, c in p.by_n.items():
            total.by_n[n] = total.by_n.get(n, 0) + c
    return total


def random_campaign(config: CampaignConfig) -> CampaignStats:
    """Random instances at the exact bound; raises TheoremViolation on any blockage."""
    if config.workers <= 1 or config.trials < 2:
        return _run_trials(config, 0, config.trials)
    chunks = max(config.workers * 4, 1)
    edges = [config.trials * i // chunks for i in range(chunks + 1)]
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        parts = list(pool.map(_run_trials, [config] * chunks, edges[:-1], edges[1:]))
    return _merge(parts)


def instance_from_dict(doc: dict) -> tuple[JumpMultiset, MineField]:
    """Parse an instance document ``{"jumps": [...], "mines": [...]}``."""
    if not isinstance(doc, dict) or "jumps" not in doc:
        raise InputError("instance document needs a 'jumps' array")
    raw_j, raw_m = doc["jumps"], doc.get("mines", [])
    if not isinstance(raw_j, list) or not isinstance(raw_m, list):
        raise InputError("'jumps' and 'mines' must be arrays")
    try:
        jumps = [_as_int(x) for x in raw_j]
        mines = [_as_int(x) for x in raw_m]
    except (TypeError, ValueError) as exc:
        raise InputError(f"non-integer value in instance: {exc}") from None
    return JumpMultiset(tuple(jumps)), MineField(frozenset(mines))


def _as_int(x) -> int:
    if isinstance(x, bool):
        raise TypeError(repr(x))
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        return int(x)
    if isinstance(x, float) and x.is_integer():
        return int(x)
    raise ValueError(repr(x))


def instance_to_json(jumps, mines) -> str:
    return json.dumps({"jumps": list(_jumps(jumps).jumps), "mines": sorted(_mines(mines).mines)})
