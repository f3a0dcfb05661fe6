"""Piecewise-linear circle paths, diffeomorphisms, and isotopies.

Circle maps are stored as lifts: strictly increasing PL functions on one
period satisfying f(x+1) = f(x) + 1.  All breakpoints and values are exact
rationals, so rotation angles, the basepoint quasimorphism mu, and its
vector version nu are computed exactly, and the strict defect inequalities
can be tested without floating-point noise.

An isotopy is a finite list of time-sampled frames with lift-space convex
interpolation in between.  Frames must move by less than 1/2 (in sup norm)
per time step; this pins down the continuous lift of any basepoint trace,
so mu is simply the endpoint lift difference.
"""

from __future__ import annotations

import random
from bisect import bisect_right
from dataclasses import dataclass

from rotnorm._rat import Q, floor_q
from rotnorm.errors import (
    AmbiguousLift,
    DimensionMismatch,
    FrameMismatch,
    ValidationError,
)

HALF = Q(1, 2)


@dataclass(frozen=True)
class PLPath:
    """A PL path on the circle given by its lift at time breakpoints."""

    times: tuple
    values: tuple

    def __post_init__(self):
        ts = tuple(Q(t) for t in self.times)
        vs = tuple(Q(v) for v in self.values)
        if len(ts) < 2 or len(ts) != len(vs):
            raise ValidationError("path needs at least 2 matching breakpoints")
        if ts[0] != 0 or ts[-1] != 1:
            raise ValidationError("path must be parametrized over [0, 1]")
        if any(a >= b for a, b in zip(ts, ts[1:])):
            raise ValidationError("time breakpoints must strictly increase")
        object.__setattr__(self, "times", ts)
        object.__setattr__(self, "values", vs)


def rotation_angle(path: PLPath):
    """Lift-endpoint difference; equals the degree on closed loops."""
    return path.values[-1] - path.values[0]


class PLCircleDiffeo:
    """Orientation-preserving circle diffeo, stored as one period of its lift."""

    __slots__ = ("xs", "ys")

    def __init__(self, xs, ys):
        xs = tuple(Q(x) for x in xs)
        ys = tuple(Q(y) for y in ys)
        if not xs or len(xs) != len(ys):
            raise ValidationError("need matching non-empty breakpoint lists")
        if xs[0] < 0 or xs[-1] >= 1:
            raise ValidationError("breakpoints must lie in [0, 1)")
        if any(a >= b for a, b in zip(xs, xs[1:])):
            raise ValidationError("breakpoints must strictly increase")
        if any(a >= b for a, b in zip(ys, ys[1:])):
            raise ValidationError("lift values must strictly increase")
        if ys[-1] >= ys[0] + 1:
            raise ValidationError("lift must increase by less than 1 per period")
        self.xs = xs
        self.ys = ys

    @staticmethod
    def identity() -> "PLCircleDiffeo":
        return PLCircleDiffeo((Q(0),), (Q(0),))

    @staticmethod
    def rotation(angle) -> "PLCircleDiffeo":
        return PLCircleDiffeo((Q(0),), (Q(angle),))

    def eval(self, x):
        """Lift value at any real x (periodic extension)."""
        x = Q(x)
        n = floor_q(x - self.xs[0])
        x0 = x - n  # in [xs[0], xs[0] + 1)
        i = bisect_right(self.xs, x0) - 1
        if i == len(self.xs) - 1:
            x1, y1 = self.xs[0] + 1, self.ys[0] + 1
        else:
            x1, y1 = self.xs[i + 1], self.ys[i + 1]
        xa, ya = self.xs[i], self.ys[i]
        if x1 == xa:  # single breakpoint, degenerate segment avoided below
            return ya + n
        return ya + (x0 - xa) * (y1 - ya) / (x1 - xa) + n

    def eval_inv(self, v):
        """Value of the inverse diffeo's lift at v."""
        v = Q(v)
        n = floor_q(v - self.ys[0])
        v0 = v - n  # in [ys[0], ys[0] + 1)
        i = bisect_right(self.ys, v0) - 1
        if i == len(self.ys) - 1:
            x1, y1 = self.xs[0] + 1, self.ys[0] + 1
        else:
            x1, y1 = self.xs[i + 1], self.ys[i + 1]
        xa, ya = self.xs[i], self.ys[i]
        if y1 == ya:
            return xa + n
        return xa + (v0 - ya) * (x1 - xa) / (y1 - ya) + n

    def compose(self, other: "PLCircleDiffeo") -> "PLCircleDiffeo":
        """self after other: x -> self(other(x))."""
        pts = set(other.xs)
        for bx in self.xs:
            t = other.eval_inv(bx)
            pts.add(t - floor_q(t))
        xs = tuple(sorted(pts))
        ys = tuple(self.eval(other.eval(x)) for x in xs)
        return PLCircleDiffeo(xs, ys)

    def inverse(self) -> "PLCircleDiffeo":
        pairs = []
        for x, y in zip(self.xs, self.ys):
            n = floor_q(y)
            pairs.append((y - n, x - n))
        pairs.sort()
        return PLCircleDiffeo(tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))

    def displacement(self, other: "PLCircleDiffeo"):
        """sup |self - other| over the circle (attained at a breakpoint)."""
        return max(
            abs(self.eval(x) - other.eval(x))
            for x in set(self.xs) | set(other.xs)
        )

    def interpolate(self, other: "PLCircleDiffeo", s) -> "PLCircleDiffeo":
        """Convex combination (1-s)*self + s*other of the lifts."""
        s = Q(s)
        if s == 0:
            return self
        if s == 1:
            return other
        xs = tuple(sorted(set(self.xs) | set(other.xs)))
        ys = tuple((1 - s) * self.eval(x) + s * other.eval(x) for x in xs)
        return PLCircleDiffeo(xs, ys)

    def __eq__(self, other):
        if not isinstance(other, PLCircleDiffeo):
            return NotImplemented
        pts = set(self.xs) | set(other.xs)
        return all(self.eval(x) == other.eval(x) for x in pts)

    def __hash__(self):
        return hash((self.xs, self.ys))

    def is_identity(self) -> bool:
        """True when the diffeo is the identity on the circle (the lift may
        be shifted by an integer)."""
        d = self.ys[0] - self.xs[0]
        if d.denominator != 1:
            return False
        return all(y - x == d for x, y in zip(self.xs, self.ys))

    def __repr__(self):
        return f"PLCircleDiffeo(xs={self.xs}, ys={self.ys})"


MAX_STEP_DISPLACEMENT = HALF


class PLIsotopy:
    """Time-sampled isotopy of PL circle diffeos with interpolated lifts.

    Construction refuses inputs whose frames move by >= 1/2 between adjacent
    samples: below that threshold the continuous lift of every point trace
    is unambiguous, so rotation angles are exact endpoint differences.
    """

    __slots__ = ("times", "frames")

    def __init__(self, times, frames):
        ts = tuple(Q(t) for t in times)
        frames = tuple(frames)
        if len(ts) < 2 or len(ts) != len(frames):
            raise ValidationError("need at least 2 matching time samples")
        if ts[0] != 0 or ts[-1] != 1:
            raise ValidationError("isotopy must be parametrized over [0, 1]")
        if any(a >= b for a, b in zip(ts, ts[1:])):
            raise ValidationError("time samples must strictly increase")
        for fa, fb in zip(frames, frames[1:]):
            if fa.displacement(fb) >= MAX_STEP_DISPLACEMENT:
                raise AmbiguousLift(
                    "frames move by >= 1/2 within one time step; "
                    "resample the isotopy more finely"
                )
        self.times = ts
        self.frames = frames

    @staticmethod
    def identity() -> "PLIsotopy":
        ident = PLCircleDiffeo.identity()
        return PLIsotopy((Q(0), Q(1)), (ident, ident))

    @staticmethod
    def rotation(angle, samples: int | None = None) -> "PLIsotopy":
        """The rotation isotopy t -> rotation by t*angle."""
        angle = Q(angle)
        if samples is None:
            samples = max(2, 3 * (abs(floor_q(angle)) + 1))
        ts = [Q(j, samples - 1) for j in range(samples)]
        return PLIsotopy(ts, [PLCircleDiffeo.rotation(angle * t) for t in ts])

    def frame_at(self, t) -> PLCircleDiffeo:
        t = Q(t)
        if t < 0 or t > 1:
            raise ValidationError("time outside [0, 1]")
        i = bisect_right(self.times, t) - 1
        if i >= len(self.times) - 1:
            return self.frames[-1]
        if self.times[i] == t:
            return self.frames[i]
        s = (t - self.times[i]) / (self.times[i + 1] - self.times[i])
        return self.frames[i].interpolate(self.frames[i + 1], s)

    def trace(self, p) -> PLPath:
        """The PL path t -> F_t(p), with continuously selected lift."""
        p = Q(p)
        start = self.frames[0].eval(p)
        shift = floor_q(start)  # pin the t=0 lift value into [0, 1)
        return PLPath(self.times, tuple(f.eval(p) - shift for f in self.frames))

    def is_based(self) -> bool:
        return self.frames[0].is_identity()

    def is_based_loop(self) -> bool:
        return self.frames[0].is_identity() and self.frames[-1].is_identity()


def mu(F: PLIsotopy, p):
    """Rotation angle of the basepoint trace t -> F_t(p)."""
    return rotation_angle(F.trace(p))


def compose(F: PLIsotopy, G: PLIsotopy) -> PLIsotopy:
    """Pointwise-in-t composition (F_t o G_t) on the merged time grid."""
    ts = sorted(set(F.times) | set(G.times))
    frames = [F.frame_at(t).compose(G.frame_at(t)) for t in ts]
    return PLIsotopy(ts, frames)


def invert(F: PLIsotopy) -> PLIsotopy:
    return PLIsotopy(F.times, [f.inverse() for f in F.frames])


def _lift_gap(f: PLCircleDiffeo, g: PLCircleDiffeo):
    """Constant integer d with f = g + d as lifts, or None."""
    d = f.eval(Q(0)) - g.eval(Q(0))
    if d.denominator != 1:
        return None
    pts = set(f.xs) | set(g.xs)
    if all(f.eval(x) - g.eval(x) == d for x in pts):
        return d
    return None


def concat(F: PLIsotopy, G: PLIsotopy) -> PLIsotopy:
    """Run F on [0, 1/2], then G on [1/2, 1]; needs F_1 = G_0 on the circle.

    The two halves may carry lifts differing by an integer (e.g. after a full
    turn); the second half is shifted so the concatenated traces stay
    continuous in lift space.
    """
    d = _lift_gap(F.frames[-1], G.frames[0])
    if d is None:
        raise FrameMismatch("end frame of the first isotopy must equal the "
                            "start frame of the second")
    tail = [
        g if d == 0 else PLCircleDiffeo(g.xs, tuple(y + d for y in g.ys))
        for g in G.frames[1:]
    ]
    ts = [t / 2 for t in F.times] + [HALF + t / 2 for t in G.times[1:]]
    frames = list(F.frames) + tail
    return PLIsotopy(ts, frames)


def commutator(F: PLIsotopy, G: PLIsotopy) -> PLIsotopy:
    return compose(compose(F, G), compose(invert(F), invert(G)))


def refine(F: PLIsotopy, max_disp) -> PLIsotopy:
    """Insert interpolated frames until each step moves less than max_disp."""
    max_disp = Q(max_disp)
    if max_disp <= 0:
        raise ValidationError("max_disp must be positive")
    ts: list = []
    frames: list = []
    for i in range(len(F.times) - 1):
        t0, t1 = F.times[i], F.times[i + 1]
        d = F.frames[i].displacement(F.frames[i + 1])
        pieces = 1
        while d / pieces >= max_disp:
            pieces += 1
        for j in range(pieces):
            t = t0 + (t1 - t0) * Q(j, pieces)
            ts.append(t)
            frames.append(F.frame_at(t))
    ts.append(F.times[-1])
    frames.append(F.frames[-1])
    return PLIsotopy(ts, frames)


@dataclass(frozen=True)
class MultiIsotopy:
    """m independent circle isotopies with one basepoint per circle."""

    components: tuple
    basepoints: tuple

    def __post_init__(self):
        comps = tuple(self.components)
        pts = tuple(Q(p) for p in self.basepoints)
        if not comps or len(comps) != len(pts):
            raise ValidationError("components and basepoints must match")
        object.__setattr__(self, "components", comps)
        object.__setattr__(self, "basepoints", pts)

    @property
    def m(self) -> int:
        return len(self.components)


def nu(F: MultiIsotopy) -> tuple:
    """Per-component rotation angle at the basepoints."""
    return tuple(mu(c, p) for c, p in zip(F.components, F.basepoints))


def nu_hat(F: MultiIsotopy, A):
    """The coset nu(F) + A (a lattice-valued rotation invariant)."""
    from rotnorm.coset import AffineCoset

    if A.m != F.m:
        raise DimensionMismatch(f"lattice dimension {A.m} != components {F.m}")
    return AffineCoset.build(A, nu(F))


def compose_multi(F: MultiIsotopy, G: MultiIsotopy) -> MultiIsotopy:
    if F.m != G.m or F.basepoints != G.basepoints:
        raise DimensionMismatch("component counts / basepoints disagree")
    return MultiIsotopy(
        tuple(compose(a, b) for a, b in zip(F.components, G.components)),
        F.basepoints,
    )


# ---------------------------------------------------------------------------
# Seeded random generators.  Denominators are kept small powers of two so the
# exact arithmetic in the large randomized suites stays fast.
# ---------------------------------------------------------------------------


def random_diffeo(rng: random.Random, breakpoints: int | None = None) -> PLCircleDiffeo:
    """Random PL circle diffeo: jittered rotation, slopes within [3/4, 5/4]."""
    b = breakpoints if breakpoints is not None else rng.randint(2, 8)
    c = Q(rng.randint(-64, 64), 64)
    xs = [Q(i, b) for i in range(b)]
    ys = [x + c + Q(rng.randint(-8, 8), 64 * b) for x in xs]
    return PLCircleDiffeo(xs, ys)


def random_isotopy(rng: random.Random) -> PLIsotopy:
    """Random isotopy starting at the identity; per-step movement <= 3/8."""
    samples = rng.randint(2, 6)
    b = rng.randint(2, 8)
    xs = [Q(i, b) for i in range(b)]
    times = [Q(j, samples - 1) for j in range(samples)]
    frames = [PLCircleDiffeo(xs, xs)]
    c = Q(0)
    for _ in range(samples - 1):
        c += Q(rng.randint(-16, 16), 64)
        ys = [x + c + Q(rng.randint(-8, 8), 64 * b) for x in xs]
        frames.append(PLCircleDiffeo(xs, ys))
    return PLIsotopy(times, frames)


def random_based_loop(rng: random.Random, winding: int | None = None) -> PLIsotopy:
    """Random loop at the identity with a prescribed integer winding number."""
    w = winding if winding is not None else rng.randint(-2, 2)
    samples = 4 * abs(w) + 2
    b = rng.randint(2, 8)
    xs = [Q(i, b) for i in range(b)]
    times = [Q(j, samples - 1) for j in range(samples)]
    frames = [PLCircleDiffeo(xs, xs)]
    for j in range(1, samples):
        t = times[j]
        if j == samples - 1:
            c = Q(w)
            jitter = [Q(0)] * b
        else:
            c = w * t + Q(rng.randint(-2, 2), 64)
            jitter = [Q(rng.randint(-8, 8), 64 * b) for _ in range(b)]
        frames.append(PLCircleDiffeo(xs, [x + c + e for x, e in zip(xs, jitter)]))
    return PLIsotopy(times, frames)


def defect_experiment(seed: int, trials: int) -> dict:
    """Randomized check of the strict quasimorphism defect inequalities.

    Per trial, draws isotopies F, G starting at the identity, a diffeo h,
    and basepoints p, q, then verifies exactly:
      |mu(hF) - mu(F)| < 1           |mu(Fh) - mu(F)| < 1
      |mu(FG) - mu(F) - mu(G)| < 1   mu(F^-1) = -mu(f^-1 F)
      |mu(F) + mu(F^-1)| < 1         |mu([F,G])| < 3
      |lambda(G_q) - lambda(G_p)| < 1
    mu of products is evaluated from endpoint frames: the composed isotopy's
    basepoint trace has a continuous lift through the frame lifts, so its
    rotation angle is the endpoint lift difference.
    Returns a report with per-inequality maxima and the violation count.
    """
    if trials < 1:
        raise ValidationError("need at least one trial")
    rng = random.Random(seed)
    names = ("left_mult", "right_mult", "product", "inverse_sum",
             "commutator", "basepoint_change")
    limits = {"left_mult": 1, "right_mult": 1, "product": 1,
              "inverse_sum": 1, "commutator": 3, "basepoint_change": 1}
    maxima = {name: Q(0) for name in names}
    violations = 0
    for _ in range(trials):
        F = random_isotopy(rng)
        G = random_isotopy(rng)
        h = random_diffeo(rng)
        p = Q(rng.randint(0, 63), 64)
        qpt = Q(rng.randint(0, 63), 64)
        f = F.frames[-1]
        g = G.frames[-1]
        mu_f = f.eval(p) - p
        mu_g = g.eval(p) - p
        h_p = h.eval(p)
        finv_p = f.eval_inv(p)
        obs = {
            "left_mult": abs((h.eval(f.eval(p)) - h_p) - mu_f),
            "right_mult": abs((f.eval(h_p) - h_p) - mu_f),
            "product": abs((f.eval(g.eval(p)) - p) - mu_f - mu_g),
            "inverse_sum": abs(mu_f + (finv_p - p)),
            "commutator": abs(f.eval(g.eval(f.eval_inv(g.eval_inv(p)))) - p),
            "basepoint_change": abs((g.eval(qpt) - qpt) - mu_g),
        }
        # mu(F^-1) = -mu(f^-1 F), evaluated through the actual lifts.
        mu_finv_F = f.eval_inv(f.eval(p)) - finv_p
        if (finv_p - p) != -mu_finv_F:
            violations += 1
        for name in names:
            if obs[name] > maxima[name]:
                maxima[name] = obs[name]
            if obs[name] >= limits[name]:
                violations += 1
    return {
        "seed": seed,
        "trials": trials,
        "violations": violations,
        "max_observed": {name: maxima[name] for name in names},
        "limits": limits,
    }
