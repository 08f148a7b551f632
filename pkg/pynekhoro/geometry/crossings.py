## @file crossings.py
#  @brief Detection of simple-resonance crossings along a sampled frequency curve
#

import json
from fractions import Fraction
import logging

import numpy as np
from scipy.optimize import bisect

from pynekhoro.config import DETECTION_DEFAULTS, fill_defaults
from pynekhoro.errors import InvalidArgumentError, PreconditionError
from pynekhoro.lattice import canonical_generator, farey_fractions, rational_in_interval

logger = logging.getLogger(__name__)

INDEX_SWITCH = "index-switch"
SAMPLE_ZERO = "sample-zero"


class ResonanceEvent:
    def __init__(self, time, k, residual, bracket, sup_index, flags=()):
        """! A crossing of the resonance k.omega = 0
        @param time refined crossing time
        @param k primitive integer vector in canonical sign, |k|_1 < K
        @param residual |k.omega(time)|
        @param bracket (t_lo, t_hi) over which k.omega changes sign
        @param sup_index index j of the sup norm used to build k
        @param flags tuple of strings, e.g. "index-switch"
        """
        self.time = float(time)
        self.k = tuple(int(x) for x in k)
        self.residual = float(residual)
        self.bracket = (float(bracket[0]), float(bracket[1]))
        self.sup_index = int(sup_index)
        self.flags = tuple(sorted(set(flags)))

    def to_dict(self):
        return {
            "t": self.time,
            "k": list(self.k),
            "residual": self.residual,
            "bracket": list(self.bracket),
            "sup_index": self.sup_index,
            "flags": list(self.flags),
        }

    def __repr__(self):
        return f"ResonanceEvent(t={self.time!r}, k={self.k}, residual={self.residual:.3g})"


class Witness:
    def __init__(self, t_lo, t_hi, index, p, q, spread):
        """! A window where omega_index / |omega|_inf sweeps an interval of length >= l
        @param t_lo, t_hi the window
        @param index the coordinate i
        @param p, q the fraction of small height that the sweep had to cross
        @param spread max - min of the sampled ratio
        """
        self.t_lo = float(t_lo)
        self.t_hi = float(t_hi)
        self.index = int(index)
        self.p = int(p)
        self.q = int(q)
        self.spread = float(spread)

    def to_dict(self):
        return {
            "window": [self.t_lo, self.t_hi],
            "index": self.index,
            "p": self.p,
            "q": self.q,
            "spread": self.spread,
        }


## Used to return the output data of the crossing detection
class DetectionReport:
    def __init__(self, events, witnesses, index_switches, nsamples):
        self.events = events
        self.witnesses = witnesses
        self.index_switches = index_switches
        self.nsamples = nsamples

    def to_dict(self):
        return {
            "events": [e.to_dict() for e in self.events],
            "witnesses": [w.to_dict() for w in self.witnesses],
            "index_switches": self.index_switches,
            "nsamples": self.nsamples,
        }


def _prepare(freq_samples):
    times = np.array([t for t, _ in freq_samples], dtype=np.float64)
    omegas = np.array([np.asarray(w, dtype=np.float64).ravel() for _, w in freq_samples])
    if times.size == 0:
        return times, np.zeros((0, 0))
    order = np.argsort(times, kind="stable")
    times, omegas = times[order], omegas[order]
    if np.any(np.diff(times) <= 0):
        raise InvalidArgumentError("sample times must be distinct")
    if np.any(np.abs(omegas).max(axis=1) == 0):
        raise PreconditionError("the frequency vanishes at a sample")
    return times, omegas


class _Bracket:
    """Linear interpolation of omega between two consecutive samples."""

    def __init__(self, t_a, t_b, w_a, w_b):
        self.t_a, self.t_b = t_a, t_b
        self.w_a, self.w_b = w_a, w_b

    def omega(self, t):
        if t == self.t_a:
            return self.w_a
        if t == self.t_b:
            return self.w_b
        s = (t - self.t_a) / (self.t_b - self.t_a)
        return self.w_a + s * (self.w_b - self.w_a)


def _sup_index(w):
    return int(np.argmax(np.abs(w)))


class _Detector:
    def __init__(self, K, params):
        self.K = K
        self.params = params
        self.xtol = params["xtol"]
        self.residual_tol = params["residual_tol"]
        fr = farey_fractions(K)
        self.p = np.array([pq[0] for pq in fr], dtype=np.int64)
        self.q = np.array([pq[1] for pq in fr], dtype=np.int64)
        self.values = self.p / np.maximum(self.q, 1)
        self.events = []
        ## zeros of k.omega met exactly at a bracket end: (t, k, j, flags, residual)
        self.touches = []
        self.index_switches = 0

    def _g(self, bracket, i, j, p, q, s):
        def g(t):
            w = bracket.omega(t)
            return q * w[i] - p * s * w[j]

        return g

    @staticmethod
    def _vector(n, i, j, p, q, s):
        k = np.zeros(n, dtype=np.int64)
        k[i] += q
        k[j] -= p * s
        return canonical_generator(tuple(int(x) for x in k))

    def _emit(self, bracket, t, i, j, p, q, s, lo, hi, flags):
        k = self._vector(bracket.w_a.size, i, j, p, q, s)
        w = bracket.omega(t)
        residual = abs(float(np.dot(k, w)))
        if residual > self.residual_tol * np.abs(w).max():
            logger.warning(
                "crossing of k = %s near t = %g refined only to residual %g; dropped", k, t, residual
            )
            return
        self.events.append(ResonanceEvent(t, k, residual, (lo, hi), j, flags))

    def _touch(self, bracket, t, i, j, p, q, s, flags):
        k = self._vector(bracket.w_a.size, i, j, p, q, s)
        residual = abs(float((np.array(k, dtype=np.float64) * bracket.omega(t)).sum()))
        self.touches.append((float(t), k, j, flags, residual))

    def _scan(self, bracket, lo, hi, j, flags):
        """Sign changes of q w_i - p s w_j on [lo, hi] with the sup index fixed to j."""
        w_lo, w_hi = bracket.omega(lo), bracket.omega(hi)
        # omega_j keeps its sign where j is the sup index
        s = 1 if (w_lo[j] + w_hi[j]) > 0 else -1
        for i in range(w_lo.size):
            if i == j:
                continue
            # the ratio is monotone along a linear segment
            r_lo, r_hi = w_lo[i] / abs(w_lo[j]), w_hi[i] / abs(w_hi[j])
            a, b = min(r_lo, r_hi), max(r_lo, r_hi)
            pad = 1e-12 * max(1.0, abs(a), abs(b))
            sel = np.nonzero((self.values >= a - pad) & (self.values <= b + pad))[0]
            for c in sel:
                p, q = int(self.p[c]), int(self.q[c])
                g = self._g(bracket, i, j, p, q, s)
                g_lo, g_hi = g(lo), g(hi)
                if g_lo == 0.0:
                    self._touch(bracket, lo, i, j, p, q, s, flags)
                if g_hi == 0.0:
                    self._touch(bracket, hi, i, j, p, q, s, flags)
                if g_lo * g_hi < 0.0:
                    t = bisect(g, lo, hi, xtol=self.xtol)
                    self._emit(bracket, t, i, j, p, q, s, lo, hi, flags)

    def resolve_touches(self, times, omegas):
        """Turns the exact zeros into events where k.omega changes sign across them.

        A run of samples on which k.omega vanishes is one crossing, bracketed by
        the last non-zero sample before it and the first one after it, and only
        when the two have opposite signs. Zeros at either end of the record
        have no sign change to witness and are dropped.
        """
        values = {}
        seen = set()
        for t, k, j, flags, residual in sorted(self.touches, key=lambda x: (x[0], x[1])):
            if k not in values:
                values[k] = (omegas * np.array(k, dtype=np.float64)).sum(axis=1)
            v = values[k]
            left = int(np.searchsorted(times, t, side="right")) - 1
            right = int(np.searchsorted(times, t, side="left"))
            while left >= 0 and v[left] == 0.0:
                left -= 1
            while right < times.size and v[right] == 0.0:
                right += 1
            if left < 0 or right >= times.size or (left, right, k) in seen:
                continue
            seen.add((left, right, k))
            if np.sign(v[left]) == np.sign(v[right]):
                continue
            self.events.append(
                ResonanceEvent(t, k, residual, (times[left], times[right]), j, flags + (SAMPLE_ZERO,))
            )

    def examine(self, bracket, lo, hi, depth, flags=()):
        j_lo = _sup_index(bracket.omega(lo))
        j_hi = _sup_index(bracket.omega(hi))
        mid = 0.5 * (lo + hi)
        j_mid = _sup_index(bracket.omega(mid))
        if j_lo == j_hi == j_mid:
            self._scan(bracket, lo, hi, j_lo, flags)
            return
        if depth == 0:
            self.index_switches += 1
        flags = tuple(set(flags) | {INDEX_SWITCH})
        if depth >= self.params["max_split_depth"] or not lo < mid < hi:
            for j in sorted({j_lo, j_mid, j_hi}):
                self._scan(bracket, lo, hi, j, flags)
            return
        self.examine(bracket, lo, mid, depth + 1, flags)
        self.examine(bracket, mid, hi, depth + 1, flags)


def _dedupe(events, tol):
    events = sorted(events, key=lambda e: (e.time, e.k))
    out = []
    for e in events:
        duplicate = False
        for f in reversed(out):
            if e.time - f.time > tol:
                break
            if f.k == e.k:
                duplicate = True
                break
        if not duplicate:
            out.append(e)
    return out


def _witnesses(times, omegas, l, window):
    out = []
    if times.size == 0:
        return out
    lf = Fraction(l)
    ratios = omegas / np.abs(omegas).max(axis=1)[:, None]
    for start in range(0, times.size, window):
        stop = min(start + window, times.size)
        block = ratios[start:stop]
        for i in range(block.shape[1]):
            a, b = Fraction(float(block[:, i].min())), Fraction(float(block[:, i].max()))
            # exact, so that [mid - l/2, mid + l/2] stays inside [a, b] and [-1, 1]
            if b - a >= lf:
                p, q = rational_in_interval((a + b) / 2, lf)
                out.append(Witness(times[start], times[stop - 1], i, p, q, float(b - a)))
    return out


def _detect(freq_samples, K, params, witnesses):
    if int(K) != K or K < 1:
        raise InvalidArgumentError(f"K must be a positive integer, got {K}")
    params = fill_defaults(params, DETECTION_DEFAULTS)
    if not 0 < params["l"] <= 2:
        raise InvalidArgumentError(f"window length l must lie in (0, 2], got {params['l']}")
    times, omegas = _prepare(freq_samples)
    detector = _Detector(int(K), params)

    for a in range(times.size - 1):
        bracket = _Bracket(times[a], times[a + 1], omegas[a], omegas[a + 1])
        detector.examine(bracket, times[a], times[a + 1], 0)
    detector.resolve_touches(times, omegas)

    events = _dedupe(detector.events, 10 * params["xtol"])
    if detector.index_switches:
        logger.info("sup index switched in %d sample brackets", detector.index_switches)
    found = _witnesses(times, omegas, params["l"], int(params["window"])) if witnesses else []
    return DetectionReport(events, found, detector.index_switches, int(times.size))


def crossing_report(freq_samples, K, params=None):
    """! Resonance crossings and window witnesses along sampled frequencies
    @param freq_samples sequence of (t, omega) pairs, omega never zero
    @param K height bound, events have |k|_1 < K
    @param params dict, see DETECTION_DEFAULTS
    @returns a DetectionReport

    For every pair of consecutive samples, omega is interpolated linearly and for
    each coordinate i other than the sup index j the ratio
    \f$r_i = \omega_i / |\omega_j|\f$ is compared with all reduced p/q with
    \f$|p| + q < K\f$. A crossing of p/q is a sign change of
    \f$q\omega_i - p\,\mathrm{sgn}(\omega_j)\,\omega_j\f$, refined by bisection;
    it yields \f$k = q e_i - p\,\mathrm{sgn}(\omega_j) e_j\f$.
    Brackets in which j changes are split until j is constant on each part.
    A zero met exactly at a sample counts only if k.omega has opposite signs
    on the two sides of it, so touching p/q and turning back is not a crossing.
    """
    return _detect(freq_samples, K, params, witnesses=True)


def detect_crossings(freq_samples, K, params=None):
    """! The list of ResonanceEvent along the sampled frequencies, sorted by time"""
    return _detect(freq_samples, K, params, witnesses=False).events


def merge_events(*event_lists, xtol=None):
    """! Merges the events of disjoint segments into one time-sorted list"""
    if xtol is None:
        xtol = DETECTION_DEFAULTS["xtol"]
    return _dedupe([e for events in event_lists for e in events], 10 * xtol)


def write_events(events, fh):
    """! Writes events as JSON lines {"t", "k", "residual", ...} to an open file"""
    for e in events:
        fh.write(json.dumps(e.to_dict()) + "\n")
