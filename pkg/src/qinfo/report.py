"""Compute a list of named quantities for one state document."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import bloch, coherence, entanglement, entropy, states, witness
from .errors import DimensionError, QInfoError
from .io import StateDocument, encode_complex
from .linalg import I2, PAULI

LOCAL_OPERATORS = {"i": I2, "x": PAULI[0], "y": PAULI[1], "z": PAULI[2]}


class ApplicabilityError(QInfoError):
    """The requested quantity does not apply to this state."""


@dataclass
class ReportOptions:
    tol: float | None = None
    dims: tuple[int, int] | None = None
    basis: np.ndarray | None = None
    basis_name: str = "computational"
    correlator_ops: tuple[str, str] = ("z", "z")
    chsh_axes: tuple = witness.GOOD_CHSH_AXES
    seed: int = 0
    budget: int = entanglement.ER_DEFAULT_BUDGET


@dataclass
class ReportItem:
    quantity: str
    value: Any = None
    verdict: str | None = None
    context: dict = field(default_factory=dict)
    error: str | None = None

    def to_obj(self) -> dict:
        obj: dict = {"quantity": self.quantity}
        if self.error is not None:
            obj["error"] = self.error
            return obj
        obj["value"] = self.value
        if self.verdict is not None:
            obj["verdict"] = self.verdict
        if self.context:
            obj["context"] = self.context
        return obj


@dataclass
class ReportDocument:
    label: str
    dim: int
    dims: tuple[int, int] | None
    tolerance: float | None
    items: list[ReportItem]

    @property
    def ok(self) -> bool:
        return all(item.error is None for item in self.items)

    def get(self, quantity: str) -> ReportItem:
        for item in self.items:
            if item.quantity == quantity:
                return item
        raise KeyError(quantity)

    def to_obj(self) -> dict:
        return {
            "state": {"label": self.label, "dim": self.dim, "dims": None if self.dims is None else list(self.dims)},
            "tolerance": self.tolerance,
            "results": [item.to_obj() for item in self.items],
        }

    def to_text(self) -> str:
        split = "" if self.dims is None else f" split {self.dims[0]}x{self.dims[1]}"
        lines = [f"state: {self.label or '(unlabelled)'}  dim {self.dim}{split}"]
        width = max((len(i.quantity) for i in self.items), default=8)
        for item in self.items:
            if item.error is not None:
                lines.append(f"  {item.quantity:<{width}}  ERROR: {item.error}")
                continue
            text = f"  {item.quantity:<{width}}  {_format(item.value)}"
            if item.verdict is not None:
                text += f"  [{item.verdict}]"
            if item.context:
                text += "  (" + ", ".join(f"{k}={_format(v)}" for k, v in item.context.items()) + ")"
            lines.append(text)
        return "\n".join(lines)


def _format(v) -> str:
    if isinstance(v, float):
        return f"{v:.10g}"
    if isinstance(v, list):
        return "[" + ", ".join(_format(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_format(x)}" for k, x in v.items()) + "}"
    return str(v)


@dataclass
class _Context:
    rho: states.DensityMatrix
    psi: np.ndarray | None
    dims: tuple[int, int] | None
    options: ReportOptions

    def need_dims(self) -> tuple[int, int]:
        if self.dims is None:
            raise ApplicabilityError("dims missing: give a bipartite split with --dims AxB")
        return self.dims

    def need_pure(self) -> np.ndarray:
        if self.psi is None:
            raise ApplicabilityError("requires a pure state")
        return self.psi

    def need_qubit(self):
        if self.rho.dim != 2:
            raise ApplicabilityError(f"requires a single qubit, state has dimension {self.rho.dim}")

    def need_two_qubits(self):
        if self.need_dims() != (2, 2):
            raise ApplicabilityError(f"requires a 2x2 split, state is {self.dims[0]}x{self.dims[1]}")

    def tol_kw(self) -> dict:
        return {} if self.options.tol is None else {"tol": self.options.tol}


Result = tuple[Any, str | None, dict]


def _purity(c: _Context) -> Result:
    return states.purity(c.rho), None, {}


def _vn_entropy(c: _Context) -> Result:
    return entropy.von_neumann_entropy(c.rho), None, {}


def _spectrum(c: _Context) -> Result:
    return states.spectrum(c.rho).eigenvalues.tolist(), None, {}


def _bloch(c: _Context) -> Result:
    c.need_qubit()
    r = bloch.to_bloch(c.rho)
    return r.as_array().tolist(), None, {"length": r.length}


def _ipr(c: _Context) -> Result:
    return states.ipr(c.need_pure(), c.options.basis), None, {"basis": c.options.basis_name}


def _schmidt(c: _Context) -> Result:
    dec = entanglement.schmidt_decompose(c.need_pure(), c.need_dims())
    return dec.coefficients.tolist(), None, {}


def _schmidt_number(c: _Context) -> Result:
    n = entanglement.schmidt_number(c.need_pure(), c.need_dims(), **c.tol_kw())
    return n, ("entangled" if n > 1 else "separable"), {}


def _ent_entropy(c: _Context) -> Result:
    return entanglement.entanglement_entropy(c.need_pure(), c.need_dims()), None, {}


def _concurrence(c: _Context) -> Result:
    c.need_two_qubits()
    return entanglement.concurrence(c.rho.with_dims(c.dims)), None, {}


def _eof(c: _Context) -> Result:
    c.need_two_qubits()
    return entanglement.entanglement_of_formation_2q(c.rho.with_dims(c.dims)), None, {}


def _negativity(c: _Context) -> Result:
    return entanglement.negativity(c.rho, c.need_dims()), None, {}


def _ppt(c: _Context) -> Result:
    dims = c.need_dims()
    lowest = float(entanglement.partial_transpose_spectrum(c.rho, dims)[-1])
    return lowest, entanglement.separability_verdict(c.rho, dims, **c.tol_kw()), {}


def _rel_ent_ent(c: _Context) -> Result:
    value = entanglement.relative_entropy_of_entanglement_ub(
        c.rho, c.need_dims(), budget=c.options.budget, seed=c.options.seed
    )
    return value, None, {"budget": c.options.budget, "seed": c.options.seed, "bound": "upper"}


def _l1(c: _Context) -> Result:
    return coherence.l1_coherence(c.rho, c.options.basis), None, {"basis": c.options.basis_name}


def _re_coherence(c: _Context) -> Result:
    value = coherence.relative_entropy_coherence(c.rho, c.options.basis)
    return value, None, {"basis": c.options.basis_name}


def _correlator(c: _Context) -> Result:
    dims = c.need_dims()
    names = c.options.correlator_ops
    try:
        ops = [LOCAL_OPERATORS[n] for n in names]
    except KeyError as exc:
        raise ApplicabilityError(f"unknown local operator {exc.args[0]!r}; use i, x, y or z") from None
    if dims != (2, 2):
        raise ApplicabilityError("named local operators need a 2x2 split")
    plain, connected = coherence.two_point_correlator(c.rho, ops[0], ops[1], dims)
    value = {"plain": encode_complex(plain), "connected": encode_complex(connected)}
    return value, None, {"operators": list(names)}


def _uncorrelated(c: _Context) -> Result:
    dims = c.need_dims()
    rho_a, rho_b = coherence.reduced_states(c.rho, dims)
    deviation = float(np.max(np.abs(c.rho.matrix - np.kron(rho_a, rho_b))))
    verdict = "uncorrelated" if coherence.is_uncorrelated(c.rho, dims, **c.tol_kw()) else "correlated"
    return deviation, verdict, {}


def _chsh(c: _Context) -> Result:
    c.need_two_qubits()
    w = witness.chsh_witness(*c.options.chsh_axes)
    value, verdict = witness.evaluate_witness(w, c.rho)
    axes = {k: witness.unit_axis(v).tolist() for k, v in zip(("a1", "a2", "b1", "b2"), c.options.chsh_axes)}
    return value, verdict, {"axes": axes}


QUANTITIES: dict[str, Callable[[_Context], Result]] = {
    "purity": _purity,
    "von-neumann-entropy": _vn_entropy,
    "spectrum": _spectrum,
    "bloch": _bloch,
    "ipr": _ipr,
    "schmidt": _schmidt,
    "schmidt-number": _schmidt_number,
    "entanglement-entropy": _ent_entropy,
    "concurrence": _concurrence,
    "entanglement-of-formation": _eof,
    "negativity": _negativity,
    "ppt": _ppt,
    "relative-entropy-of-entanglement": _rel_ent_ent,
    "l1-coherence": _l1,
    "relative-entropy-coherence": _re_coherence,
    "correlator": _correlator,
    "uncorrelated": _uncorrelated,
    "chsh": _chsh,
}


def _finite(v) -> bool:
    if isinstance(v, bool) or v is None or isinstance(v, (str, int)):
        return True
    if isinstance(v, float):
        return math.isfinite(v)
    if isinstance(v, list):
        return all(_finite(x) for x in v)
    if isinstance(v, dict):
        return all(_finite(x) for x in v.values())
    return True


def run_report(doc: StateDocument, requests, options: ReportOptions | None = None) -> ReportDocument:
    """Evaluate each requested quantity; failures are recorded per item.

    Unknown quantity names and inapplicable requests become items with an
    ``error`` string and do not stop the remaining requests.
    """
    options = options or ReportOptions()
    rho = doc.density()
    dims = options.dims or doc.resolved_dims()
    if dims is not None and dims[0] * dims[1] != rho.dim:
        raise DimensionError(f"split {dims[0]}x{dims[1]} does not match dimension {rho.dim}")
    rho = rho.with_dims(dims)
    ctx = _Context(rho, doc.pure_vector(), dims, options)
    items = []
    for name in requests:
        func = QUANTITIES.get(name)
        if func is None:
            items.append(ReportItem(name, error=f"unknown quantity; choose from {', '.join(QUANTITIES)}"))
            continue
        try:
            value, verdict, context = func(ctx)
        except QInfoError as exc:
            items.append(ReportItem(name, error=str(exc)))
            continue
        if not _finite(value):
            items.append(ReportItem(name, error=f"non-finite result {value!r}"))
            continue
        items.append(ReportItem(name, value, verdict, context))
    return ReportDocument(doc.label, rho.dim, dims, options.tol, items)


def applicable_quantities(doc: StateDocument, options: ReportOptions | None = None) -> list[str]:
    """Every quantity that makes sense for ``doc``, used by ``analyze``."""
    options = options or ReportOptions()
    rho = doc.density()
    dims = options.dims or doc.resolved_dims()
    pure = doc.pure_vector() is not None
    names = ["purity", "von-neumann-entropy", "spectrum", "l1-coherence", "relative-entropy-coherence"]
    if rho.dim == 2:
        names.append("bloch")
    if pure:
        names.append("ipr")
    if dims is not None:
        if pure:
            names += ["schmidt", "schmidt-number", "entanglement-entropy"]
        names += ["negativity", "ppt", "uncorrelated"]
        if tuple(dims) == (2, 2):
            names += ["concurrence", "entanglement-of-formation", "correlator", "chsh"]
        if max(dims) <= entanglement.ER_MAX_LOCAL_DIM:
            names.append("relative-entropy-of-entanglement")
    return names
