"""Global-bifurcation verdicts and exact bifurcation indices.

For a candidate parameter lambda0 != 0 the sufficient criterion is
representation-theoretic: a global bifurcation of solution orbits occurs
whenever the kernel pieces V1(lambda0) and V2(lambda0) are not equivalent
modulo even-dimensional trivial summands (their degrees of -Id differ, so the
jump of the degree across lambda0 is nonzero).  At lambda0 = 0 the criterion
is the parity test (-1)^{m+(B)} != (-1)^{m-(B)}.  Both are sufficient only,
so the negative outcome is always reported as Inconclusive.

On the disk the package also computes elements of the Euler ring of SO(2):
the normalized degree difference behind the criterion, and, in the normalized
block form (a9), the closed-form bifurcation index

    lambda0 = alpha_k0 > 0:  D(V(k0-1))^q1 * (D(E_k0)^q1 - I)
    lambda0 = -alpha_k0 < 0: D(V(k0))^-p2 * (D(E_k0)^p2 - I)
    lambda0 = 0:             ((-1)^q1 - (-1)^p2) * I

with D = deg(-Id, B(.)), E_k0 the eigenspace of alpha_k0, V(n) the sum of the
first n eigenspaces and q1 = p1 - mu_b0.  A family of indices whose sum is
nonzero excludes the bounded alternative for any continuum returning exactly
at those parameters; the parity conditions of the unboundedness certificates
are checked exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import PreconditionError, UnsupportedDomain, ValidationError
from .euler import EulerSO2, SO2Rep, deg_minus_id
from .spectral import BallDomain, DiskDomain, SpectrumEntry, close
from .system import (
    KernelReps,
    SystemSpec,
    kernel_reps,
    lambda_membership,
    lambda_set,
)

__all__ = [
    "BIFURCATES",
    "INCONCLUSIVE",
    "UNBOUNDED",
    "NO_VERDICT",
    "GlobCheck",
    "UnboundedReport",
    "BifurcationVerdict",
    "check_glob",
    "check_glob_zero",
    "bif_difference",
    "bif_a9",
    "rabinowitz_excludes_bounded",
    "unbounded_verdict",
    "analyze",
    "enumerate_zero_sum_subsets",
]

BIFURCATES = "Bifurcates"
INCONCLUSIVE = "Inconclusive"

J_REP_NONEQUIV = "RepNonEquivalence"
J_ZERO_PARITY = "ZeroCaseParity"
J_KERNEL_EMPTY = "KernelEmpty"
J_EQUIV_MOD_EVEN = "EquivalentModEvenTrivial"

UNBOUNDED = "Unbounded"
NO_VERDICT = "NoVerdict"


@dataclass(eq=True)
class GlobCheck:
    """Outcome of the sufficient global-bifurcation criterion at one parameter."""

    glob: str
    justification: str


def check_glob(spec: SystemSpec, lambda0: float) -> GlobCheck:
    """Criterion at lambda0 != 0: kernel pieces inequivalent mod even trivial."""
    lam = float(lambda0)
    if lam == 0.0:
        raise PreconditionError("check_glob needs lambda0 != 0; use check_glob_zero at 0")
    kr = kernel_reps(spec, lam)
    if kr.is_zero():
        return GlobCheck(INCONCLUSIVE, J_KERNEL_EMPTY)
    if kr.v1.equiv_mod_even_trivial(kr.v2):
        return GlobCheck(INCONCLUSIVE, J_EQUIV_MOD_EVEN)
    return GlobCheck(BIFURCATES, J_REP_NONEQUIV)


def check_glob_zero(spec: SystemSpec) -> GlobCheck:
    """Criterion at lambda0 = 0: odd total Morse index of the block matrix."""
    if (spec.morse_plus() + spec.morse_minus()) % 2 == 1:
        return GlobCheck(BIFURCATES, J_ZERO_PARITY)
    return GlobCheck(INCONCLUSIVE, J_ZERO_PARITY)


def _require_disk(spec: SystemSpec, op: str) -> None:
    if not isinstance(spec.domain, DiskDomain):
        raise UnsupportedDomain(
            f"{op} computes an element of the Euler ring of SO(2) and needs the disk domain; "
            "use check_glob for verdict-level results on other domains"
        )


def bif_difference(spec: SystemSpec, lambda0: float) -> EulerSO2:
    """Normalized degree difference whose nonvanishing detects bifurcation.

    For lambda0 > 0: deg(-Id, B(V1)) - deg(-Id, B(V2)); the order is reversed
    for lambda0 < 0.  It differs from the bifurcation index only by an
    invertible factor, so it is nonzero exactly when the index is.
    """
    _require_disk(spec, "bif_difference")
    lam = float(lambda0)
    if lam == 0.0:
        raise PreconditionError("bif_difference needs lambda0 != 0")
    kr = kernel_reps(spec, lam)
    d1 = deg_minus_id(kr.v1.to_so2_rep())
    d2 = deg_minus_id(kr.v2.to_so2_rep())
    return d1 - d2 if lam > 0 else d2 - d1


def _a9_entry_index(spec: SystemSpec, alpha: float) -> tuple[int, list[SpectrumEntry]]:
    """1-based position of alpha in the spectrum, with the entries up to it."""
    rel = spec.domain.merge_rel
    entries = spec.domain.entries_up_to(alpha * (1.0 + 10.0 * rel) + rel)
    for k, e in enumerate(entries, start=1):
        if close(e.eigenvalue, alpha, rel):
            return k, entries
    raise PreconditionError(f"{alpha!r} is not an eigenvalue of the loaded spectrum")


def _sum_so2(entries: Iterable[SpectrumEntry]) -> SO2Rep:
    total = SO2Rep()
    for e in entries:
        total = total + e.rep.to_so2_rep()
    return total


def bif_a9(spec: SystemSpec, lambda0: float) -> EulerSO2:
    """Exact bifurcation index on the disk in the normalized block form.

    Requires ``spec.a9`` and lambda0 in Lambda union {0}; see the module
    docstring for the three closed forms.
    """
    if not spec.a9:
        raise PreconditionError("bif_a9 needs the normalized block form (a9 flag)")
    _require_disk(spec, "bif_a9")
    lam = float(lambda0)
    q1, p2 = spec.q1, spec.p2
    if close(lam, 0.0, spec.domain.merge_rel):
        return ((-1) ** q1 - (-1) ** p2) * EulerSO2.one()
    if lam > 0 and q1 <= 0:
        raise PreconditionError(f"positive parameters need p1 - mu_b0 > 0; {lambda0!r} is not in Lambda")
    if lam < 0 and p2 <= 0:
        raise PreconditionError(f"negative parameters need p2 > 0; {lambda0!r} is not in Lambda")
    k0, entries = _a9_entry_index(spec, abs(lam))
    eig_deg = deg_minus_id(entries[k0 - 1].rep.to_so2_rep())
    if lam > 0:
        prefix = deg_minus_id(_sum_so2(entries[: k0 - 1]))
        return prefix**q1 * (eig_deg**q1 - EulerSO2.one())
    prefix = deg_minus_id(_sum_so2(entries[:k0]))
    return prefix ** (-p2) * (eig_deg**p2 - EulerSO2.one())


def rabinowitz_excludes_bounded(indices: Iterable[EulerSO2]) -> bool:
    """True when the indices sum to a nonzero ring element.

    A bounded continuum meeting the trivial solutions exactly at a parameter
    family forces the family's bifurcation indices to sum to zero; a nonzero
    sum therefore certifies that any continuum meeting exactly these
    parameters is unbounded.
    """
    total = EulerSO2.zero()
    for ix in indices:
        total = total + ix
    return not total.is_zero()


@dataclass(eq=True)
class UnboundedReport:
    """Unboundedness certificate plus the structural facts boundedness would force."""

    verdict: str
    bounded_would_imply: tuple[str, ...] = ()


def _eigenspace_nontrivial(spec: SystemSpec, entry: SpectrumEntry) -> bool:
    if isinstance(spec.domain, BallDomain):
        return spec.domain.rep_nontrivial(entry)
    return entry.rep.has_nontrivial()


def unbounded_verdict(spec: SystemSpec, entry: SpectrumEntry, sign: int) -> UnboundedReport:
    """Certificate for the continuum at sign * alpha, alpha = entry.eigenvalue.

    With q1 = p1 - mu_b0 and q2 = p2: for sign +1 the continuum is certified
    unbounded when q1 > 0 is even, q2 is even and the eigenspace is a
    nontrivial representation; for sign -1 the roles of q1 and q2 swap.
    Everything else is NoVerdict.  When one-sided parity holds (q even and
    positive on the matching side, nontrivial eigenspace) the report also
    carries what boundedness of the continuum would force.
    """
    if not spec.a9:
        raise PreconditionError("unbounded_verdict needs the normalized block form (a9 flag)")
    if sign not in (1, -1):
        raise ValidationError(f"sign must be +1 or -1, got {sign!r}")
    q1, q2 = spec.q1, spec.p2
    nontrivial = _eigenspace_nontrivial(spec, entry)
    if sign == 1:
        hypothesis = q1 > 0 and q1 % 2 == 0 and q2 % 2 == 0
        one_sided = q1 > 0 and q1 % 2 == 0 and nontrivial
        implications = (
            "p2 > 0",
            "p2 odd",
            "continuum returns to trivial solutions at negative parameters",
        )
    else:
        hypothesis = q2 > 0 and q2 % 2 == 0 and q1 % 2 == 0
        one_sided = q2 > 0 and q2 % 2 == 0 and nontrivial
        implications = (
            "p1 - mu_b0 > 0",
            "p1 - mu_b0 odd",
            "continuum returns to trivial solutions at positive parameters",
        )
    verdict = UNBOUNDED if hypothesis and nontrivial else NO_VERDICT
    return UnboundedReport(verdict, implications if one_sided else ())


@dataclass(eq=True)
class BifurcationVerdict:
    """Per-parameter report assembled by :func:`analyze`."""

    lambda0: float
    in_lambda: bool
    kernel: KernelReps
    glob: str
    justification: str
    bif_element: EulerSO2 | None
    unbounded: str

    def to_json(self) -> dict:
        return {
            "lambda0": self.lambda0,
            "in_lambda": self.in_lambda,
            "kernel": self.kernel.to_json(),
            "glob": self.glob,
            "justification": self.justification,
            "bif": None if self.bif_element is None else self.bif_element.to_json(),
            "unbounded": self.unbounded,
        }


def analyze(spec: SystemSpec, window: tuple[float, float]) -> list[BifurcationVerdict]:
    """One verdict per candidate parameter in the window, ascending.

    Candidates are the members of Lambda in the window together with 0 when
    the window contains it.  Exact index elements are attached only in the
    normalized block form on the disk, where the closed forms apply.
    """
    lo, hi = float(window[0]), float(window[1])
    rel = spec.domain.merge_rel
    candidates = list(lambda_set(spec, (lo, hi)))
    if lo <= 0.0 <= hi and not any(close(c, 0.0, rel) for c in candidates):
        candidates.append(0.0)
    candidates.sort()
    exact = spec.a9 and isinstance(spec.domain, DiskDomain)
    verdicts = []
    for lam in candidates:
        at_zero = close(lam, 0.0, rel)
        kr = kernel_reps(spec, lam)
        gc = check_glob_zero(spec) if at_zero else check_glob(spec, lam)
        bif = bif_a9(spec, lam) if exact else None
        unb = NO_VERDICT
        if spec.a9 and not at_zero:
            k0, entries = _a9_entry_index(spec, abs(lam))
            unb = unbounded_verdict(spec, entries[k0 - 1], 1 if lam > 0 else -1).verdict
        verdicts.append(
            BifurcationVerdict(
                lambda0=0.0 if at_zero else lam,
                in_lambda=lambda_membership(spec, lam),
                kernel=kr,
                glob=gc.glob,
                justification=gc.justification,
                bif_element=bif,
                unbounded=unb,
            )
        )
    return verdicts


def enumerate_zero_sum_subsets(
    indices: Sequence[tuple[float, EulerSO2]], *, max_members: int = 20
) -> list[tuple[float, ...]]:
    """Nonempty parameter subsets whose indices sum to zero.

    These are the only families at which a bounded continuum could return to
    the trivial solutions; every other subset is excluded.  Exponential in the
    number of members, so refuses more than ``max_members``.
    """
    if len(indices) > max_members:
        raise ValidationError(
            f"subset enumeration is exponential; refusing {len(indices)} > {max_members} members"
        )
    out: list[tuple[float, ...]] = []
    for r in range(1, len(indices) + 1):
        for combo in itertools.combinations(indices, r):
            if not rabinowitz_excludes_bounded(ix for _, ix in combo):
                out.append(tuple(lam for lam, _ in combo))
    return out
