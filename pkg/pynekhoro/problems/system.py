## @file system.py
#  @brief Near-integrable systems H = h + eps f with their regularity data, and their JSON form
#

import hashlib
import json
import logging

import numpy as np

from pynekhoro.errors import InvalidArgumentError
from .integrable import IntegrableModel
from .perturbation import Perturbation

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


class Regularity:
    def __init__(self, kind="analytic", s=None, alpha=None, L=None):
        """! Regularity class of the perturbation
        @param kind "analytic" (width s) or "gevrey" (exponent alpha and width L)
        """
        if kind == "analytic":
            if s is None or s <= 0:
                raise InvalidArgumentError("analytic regularity needs a width s > 0")
        elif kind == "gevrey":
            if alpha is None or alpha < 1 or L is None or L <= 0:
                raise InvalidArgumentError("Gevrey regularity needs alpha >= 1 and L > 0")
        else:
            raise InvalidArgumentError(f"unknown regularity type {kind!r}")
        self.kind = kind
        self.s = None if s is None else float(s)
        self.alpha = None if alpha is None else float(alpha)
        self.L = None if L is None else float(L)

    def to_dict(self):
        if self.kind == "analytic":
            return {"type": "analytic", "s": self.s}
        return {"type": "gevrey", "alpha": self.alpha, "L": self.L}

    @classmethod
    def from_dict(cls, data):
        kind = data.get("type", "analytic")
        if kind == "analytic":
            return cls("analytic", s=data.get("s"))
        return cls("gevrey", alpha=data.get("alpha"), L=data.get("L"))


class SystemSpec:
    def __init__(self, h, f, epsilon, R, regularity=None, m=None, M=None):
        """! Set up the system H(theta, I) = h(I) + eps f(theta, I) on T^n x B(0, R)
        @param h IntegrableModel
        @param f Perturbation
        @param epsilon size of the perturbation, eps >= 0
        @param R radius of the action domain (sup norm), R > 0
        @param regularity a Regularity, analytic of width 1 by default
        @param m certified quasi-convexity constant, or None
        @param M certified derivative bound, or None
        """
        if f.n != h.n:
            raise InvalidArgumentError("h and f have different dimensions")
        if epsilon < 0:
            raise InvalidArgumentError(f"epsilon must be non-negative, got {epsilon}")
        if R <= 0:
            raise InvalidArgumentError(f"domain radius must be positive, got {R}")
        if m is not None and m <= 0:
            raise InvalidArgumentError("a certified m must be positive")
        self.h = h
        self.f = f
        self.epsilon = float(epsilon)
        self.R = float(R)
        self.regularity = regularity if regularity is not None else Regularity("analytic", s=1.0)
        self.m = None if m is None else float(m)
        self.M = None if M is None else float(M)
        self.n = h.n

    def with_epsilon(self, epsilon):
        """! A copy of the system with another perturbation size"""
        return SystemSpec(self.h, self.f, epsilon, self.R, self.regularity, self.m, self.M)

    def perturbation_norm(self):
        """! Norm of f under the declared regularity, on the domain of radius R"""
        reg = self.regularity
        if reg.kind == "analytic":
            return self.f.analytic_norm_bound(reg.s, action_radius=self.R)
        return self.f.gevrey_norm(reg.alpha, reg.L, action_radius=self.R)

    def normalized(self):
        """! A copy whose perturbation has unit norm, so that |eps f| = eps"""
        norm = self.perturbation_norm()
        if norm == 0.0:
            return self
        out = SystemSpec(
            self.h, self.f.scaled(1.0 / norm), self.epsilon, self.R, self.regularity, self.m, self.M
        )
        return out

    def hamiltonian(self, theta, I):
        return self.h.h(I) + self.epsilon * self.f.value(theta, I)

    def to_dict(self):
        return {
            "schema": SCHEMA_VERSION,
            "n": self.n,
            "Q": self.h.Q.tolist(),
            "omega0": self.h.omega0.tolist(),
            "modes": self.f.to_list(),
            "epsilon": self.epsilon,
            "R": self.R,
            "regularity": self.regularity.to_dict(),
            "m": self.m,
            "M": self.M,
        }

    @classmethod
    def from_dict(cls, data):
        """! Builds a SystemSpec from its JSON document, checking the schema version"""
        if "schema" not in data:
            raise InvalidArgumentError("system document has no schema version")
        if data["schema"] != SCHEMA_VERSION:
            raise InvalidArgumentError(f"unsupported schema version {data['schema']}")
        n = int(data["n"])
        h = IntegrableModel(np.array(data["Q"], dtype=np.float64).reshape(n, n), data.get("omega0"))
        f = Perturbation.from_list(n, data.get("modes", []))
        regularity = Regularity.from_dict(data.get("regularity", {"type": "analytic", "s": 1.0}))
        return cls(h, f, data.get("epsilon", 0.0), data["R"], regularity, data.get("m"), data.get("M"))

    def digest(self):
        """! SHA-256 of the canonical JSON form, used in run manifests"""
        text = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(text.encode()).hexdigest()


def load_system(path):
    with open(path, "r") as fh:
        return SystemSpec.from_dict(json.load(fh))


def save_system(spec, path):
    with open(path, "w") as fh:
        json.dump(spec.to_dict(), fh, indent=2, sort_keys=True)
