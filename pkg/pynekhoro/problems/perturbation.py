## @file perturbation.py
#  @brief Trigonometric-polynomial perturbations with action-dependent coefficients
#

import numpy as np

from pynekhoro.errors import ConvergenceError, InvalidArgumentError

TWO_PI = 2.0 * np.pi


class Coefficient:
    def __init__(self, const=0.0, linear=None, quadratic=None, n=None):
        """! Polynomial c(I) = const + linear . I + 1/2 I^t quadratic I of degree at most two
        @param const constant term
        @param linear n-vector, zero when None
        @param quadratic symmetric n x n matrix, zero when None
        @param n dimension, inferred from linear or quadratic when None
        """
        if n is None:
            if linear is not None:
                n = len(linear)
            elif quadratic is not None:
                n = len(quadratic)
            else:
                raise InvalidArgumentError("cannot infer the dimension of a constant coefficient")
        self.n = int(n)
        self.const = float(const)
        self.linear = np.zeros(self.n) if linear is None else np.array(linear, dtype=np.float64)
        quadratic = (
            np.zeros((self.n, self.n))
            if quadratic is None
            else np.array(quadratic, dtype=np.float64)
        )
        if self.linear.shape != (self.n,) or quadratic.shape != (self.n, self.n):
            raise InvalidArgumentError("coefficient shapes do not match the dimension")
        self.quadratic = 0.5 * (quadratic + quadratic.T)

    def value(self, I):
        return self.const + self.linear @ I + 0.5 * I @ self.quadratic @ I

    def gradient(self, I):
        return self.linear + self.quadratic @ I

    @property
    def degree(self):
        if np.any(self.quadratic != 0.0):
            return 2
        if np.any(self.linear != 0.0):
            return 1
        return 0

    def sup_bound(self, radius):
        """! Upper bound of |c(I)| over the sup-norm ball |I| <= radius (real or complex)"""
        return (
            abs(self.const)
            + radius * np.abs(self.linear).sum()
            + 0.5 * radius**2 * np.abs(self.quadratic).sum()
        )

    def derivative_bounds(self, radius):
        """! Upper bounds of the action derivatives over |I| <= radius
        @returns list of (multi-index of the I variables, bound) for every derivative
                 that is not identically zero, the zeroth one included
        """
        n = self.n
        out = [((0,) * n, self.sup_bound(radius))]
        for ii in range(n):
            bound = abs(self.linear[ii]) + radius * np.abs(self.quadratic[ii]).sum()
            if bound > 0.0:
                out.append((_unit(n, ii), bound))
        for ii in range(n):
            for jj in range(ii, n):
                if self.quadratic[ii, jj] != 0.0:
                    out.append((_unit(n, ii, jj), abs(self.quadratic[ii, jj])))
        return out

    def to_dict(self):
        return {
            "const": self.const,
            "linear": self.linear.tolist(),
            "quadratic": self.quadratic.tolist(),
        }

    @classmethod
    def from_dict(cls, data, n):
        if not isinstance(data, dict):
            return cls(const=float(data), n=n)
        return cls(
            const=data.get("const", 0.0),
            linear=data.get("linear"),
            quadratic=data.get("quadratic"),
            n=n,
        )


def _unit(n, *indices):
    out = [0] * n
    for ii in indices:
        out[ii] += 1
    return tuple(out)


## A finite sum of modes
#
# \f[ f(\theta, I) = \sum_k c_k(I) \cos(2\pi k\cdot\theta + \varphi_k) \f]
# on \f$\mathbb{T}^n = \mathbb{R}^n/\mathbb{Z}^n\f$; the mode k = 0 carries the mean.
#
# To use the class:
#
#     f = Perturbation(3)
#     f.add_mode([1, -1, 0], 0.5)
#
class Perturbation:
    def __init__(self, n, modes=None):
        """! Set up an empty perturbation, optionally filled with modes
        @param n number of degrees of freedom
        @param modes iterable of (k, coeff, phase) triples
        """
        self.n = int(n)
        self.modes = []
        for mode in modes or []:
            self.add_mode(*mode)

    def add_mode(self, k, coeff=1.0, phase=0.0):
        """! Appends the mode coeff(I) cos(2 pi k.theta + phase)
        @param k integer n-vector
        @param coeff a Coefficient, a dict understood by Coefficient.from_dict, or a number
        @param phase real phase
        @returns self
        """
        k = np.array(k, dtype=np.int64).reshape(-1)
        if k.shape != (self.n,):
            raise InvalidArgumentError(f"mode {k} does not have dimension {self.n}")
        if not isinstance(coeff, Coefficient):
            coeff = Coefficient.from_dict(coeff, self.n)
        if coeff.n != self.n:
            raise InvalidArgumentError("coefficient dimension does not match")
        self.modes.append((k, coeff, float(phase)))
        self._cache = None
        return self

    def __add__(self, other):
        if other.n != self.n:
            raise InvalidArgumentError("cannot add perturbations of different dimensions")
        return Perturbation(self.n, self.modes + other.modes)

    def scaled(self, factor):
        """! A copy of the perturbation multiplied by factor"""
        out = Perturbation(self.n)
        for k, c, phase in self.modes:
            out.add_mode(
                k,
                Coefficient(factor * c.const, factor * c.linear, factor * c.quadratic, n=self.n),
                phase,
            )
        return out

    def _arrays(self):
        """Stacked mode data for vectorised evaluation."""
        if getattr(self, "_cache", None) is None:
            m, n = len(self.modes), self.n
            ks = np.zeros((m, n))
            c0 = np.zeros(m)
            c1 = np.zeros((m, n))
            c2 = np.zeros((m, n, n))
            ph = np.zeros(m)
            for ii, (k, c, phase) in enumerate(self.modes):
                ks[ii] = k
                c0[ii] = c.const
                c1[ii] = c.linear
                c2[ii] = c.quadratic
                ph[ii] = phase
            self._cache = (ks, c0, c1, c2, ph)
        return self._cache

    def _parts(self, theta, I):
        ks, c0, c1, c2, ph = self._arrays()
        arg = TWO_PI * (ks @ theta) + ph
        coeff = c0 + c1 @ I + 0.5 * np.einsum("mij,i,j->m", c2, I, I)
        grad = c1 + c2 @ I
        return ks, arg, coeff, grad

    def value(self, theta, I):
        """! Evaluates f(theta, I)"""
        if not self.modes:
            return 0.0
        _, arg, coeff, _ = self._parts(np.asarray(theta, float), np.asarray(I, float))
        return float(coeff @ np.cos(arg))

    def gradient(self, theta, I):
        """! Returns (df/dtheta, df/dI) in closed form"""
        if not self.modes:
            return np.zeros(self.n), np.zeros(self.n)
        ks, arg, coeff, grad = self._parts(np.asarray(theta, float), np.asarray(I, float))
        cos, sin = np.cos(arg), np.sin(arg)
        dtheta = -TWO_PI * (coeff * sin) @ ks
        dI = cos @ grad
        return dtheta, dI

    def hessian(self, theta, I):
        """! Second derivatives of f as the blocks (f_theta_theta, f_theta_I, f_I_I)"""
        n = self.n
        if not self.modes:
            return np.zeros((n, n)), np.zeros((n, n)), np.zeros((n, n))
        ks, arg, coeff, grad = self._parts(np.asarray(theta, float), np.asarray(I, float))
        _, _, _, c2, _ = self._arrays()
        cos, sin = np.cos(arg), np.sin(arg)
        f_tt = -(TWO_PI**2) * np.einsum("m,mi,mj->ij", coeff * cos, ks, ks)
        f_ti = -TWO_PI * np.einsum("m,mi,mj->ij", sin, ks, grad)
        f_ii = np.einsum("m,mij->ij", cos, c2)
        return f_tt, f_ti, f_ii

    def analytic_norm_bound(self, s, action_radius=0.0):
        """! Upper bound of the sup norm of f on the complex domain of width s
        @param s width of the complex extension, s > 0
        @param action_radius radius R of the real action ball; actions range over |I| < R + s
        @returns sum over modes of sup|c_k| e^{2 pi s |k|}, never below the true sup norm
        """
        if s <= 0:
            raise InvalidArgumentError(f"analytic width must be positive, got {s}")
        total = 0.0
        for k, c, _ in self.modes:
            total += c.sup_bound(action_radius + s) * np.exp(TWO_PI * s * np.abs(k).sum())
        return float(total)

    def sup_norm_bound(self, action_radius):
        """! Upper bound of sup |f| on the real domain T^n x B(0, R)"""
        return float(sum(c.sup_bound(action_radius) for _, c, _ in self.modes))

    def gevrey_norm(self, alpha, L, tol=1e-12, action_radius=0.0):
        """! Gevrey norm sum_l L^{|l| alpha} (l!)^{-alpha} sup |d^l f|
        @param alpha Gevrey exponent, alpha >= 1
        @param L Gevrey width, L > 0
        @param tol relative truncation tolerance of the angle series
        @param action_radius radius of the real action ball the sup norms are taken on
        @returns the norm, exact for a single mode with constant coefficient, an upper bound otherwise

        For one mode the multi-index sum factorises into the finite action part
        and one series per angle, sum_j x^j (j!)^{-alpha} with x = L^alpha 2 pi |k_i|.
        Each series is summed until the ratio-test bound of its tail falls
        below tol times the partial sum.
        """
        if alpha < 1 or L <= 0 or tol <= 0:
            raise InvalidArgumentError("need alpha >= 1, L > 0 and tol > 0")
        total = 0.0
        for k, c, phase in self.modes:
            if not np.any(k):
                # only action derivatives survive, and the angle factor is |cos(phase)|
                angle = abs(np.cos(phase))
            else:
                angle = 1.0
                for ki in k:
                    if ki != 0:
                        angle *= _gevrey_series(L**alpha * TWO_PI * abs(int(ki)), alpha, tol)
            action = 0.0
            for index, bound in c.derivative_bounds(action_radius):
                order = sum(index)
                factorial = float(np.prod([_factorial(li) for li in index]))
                action += L ** (order * alpha) * factorial ** (-alpha) * bound
            total += angle * action
        return float(total)

    def to_list(self):
        return [
            {"k": k.tolist(), "coeff": c.to_dict(), "phase": phase}
            for k, c, phase in self.modes
        ]

    @classmethod
    def from_list(cls, n, modes):
        out = cls(n)
        for mode in modes:
            out.add_mode(mode["k"], mode.get("coeff", 1.0), mode.get("phase", 0.0))
        return out


def _factorial(j):
    out = 1
    for ii in range(2, j + 1):
        out *= ii
    return out


def _gevrey_series(x, alpha, tol, max_terms=100000):
    """Sum of x^j / (j!)^alpha over j >= 0, truncated by a geometric tail bound."""
    partial = 1.0
    term = 1.0
    for j in range(max_terms):
        ratio = x / (j + 1) ** alpha
        term *= ratio
        partial += term
        next_ratio = x / (j + 2) ** alpha
        if next_ratio < 1.0 and term * next_ratio / (1.0 - next_ratio) <= tol * partial:
            return partial
    raise ConvergenceError(f"Gevrey series with x = {x}, alpha = {alpha} did not converge")
