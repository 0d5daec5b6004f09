"""End-to-end flows composed from the core modules, shared by CLI and verify."""

from __future__ import annotations

from typing import Optional, Tuple

import mpmath as mp

from .charvar import (
    ChangeFactor, NoGraphBranch, change_curve_sq, geometric_branch,
    trace_relation,
)
from .numfield import NumberField, express_in_field, minimal_polynomial, \
    NotInField, Undecided
from .polys import UniPoly, to_text
from .records import KnotRecord
from .torsion_num import peripheral_torsions, riley_solve
from .torsion_sym import (
    Rho0Value, TPoly, eliminate_T, rho0_value, specialize, transport_T,
)


class PipelineError(ValueError):
    pass


def eliminated_T(record: KnotRecord) -> TPoly:
    if record.param_torsion is None:
        raise PipelineError(f"record {record.name} has no parametrized torsion")
    return eliminate_T(record.param_torsion)


def branch_and_factor(record: KnotRecord) -> Tuple[UniPoly, ChangeFactor]:
    if record.apoly is None:
        raise PipelineError(f"record {record.name} has no A-polynomial")
    if record.branch_hint is None:
        raise PipelineError(f"record {record.name} has no branch hint")
    R = trace_relation(record.apoly)
    branch = geometric_branch(R, record.branch_hint)
    if isinstance(branch, NoGraphBranch):
        raise PipelineError(f"geometric branch of {record.name}: {branch.reason}")
    return branch, change_curve_sq(branch)


def transported_T(record: KnotRecord, new_var: str = "z") -> TPoly:
    if record.trace_of != "lambda":
        raise PipelineError(
            "transport needs a longitude-trace parametrization "
            f"(record {record.name} is parametrized by {record.trace_of})")
    T = eliminated_T(record)
    branch, factor = branch_and_factor(record)
    return transport_T(T, factor, branch, new_var=new_var)


def torsion_polynomial(record: KnotRecord, curve: str, new_var: str = "z") -> TPoly:
    """T for the requested peripheral curve, transporting when necessary."""
    if curve not in ("lambda", "mu"):
        raise PipelineError(f"unknown curve {curve!r}")
    if record.param_torsion is None:
        raise PipelineError(f"record {record.name} has no parametrized torsion")
    if curve == "lambda":
        return eliminated_T(record)
    if record.trace_of == "lambda":
        return transported_T(record, new_var=new_var)
    raise PipelineError(
        f"no mu-torsion pipeline for record {record.name}")


def rho0_for_curve(record: KnotRecord, curve: str,
                   digits: int = 64) -> Tuple[Rho0Value, UniPoly, list]:
    if curve not in record.rho0:
        raise PipelineError(f"record {record.name} has no rho0 data for {curve}")
    spec = record.rho0[curve]
    T = torsion_polynomial(record, curve)
    poly = specialize(T, spec.trace_value)
    value = rho0_value(poly, spec.rule, digits)
    notes = [f"root selection: {value.branch_note}"]
    if curve == "mu" and record.mu_note:
        notes.append(record.mu_note)
    return value, poly, notes


def membership(record: KnotRecord, curve: str, digits: int = 64) -> dict:
    if record.trace_field_poly is None:
        raise PipelineError(f"record {record.name} has no trace field")
    value, poly, notes = rho0_for_curve(record, curve, digits)
    field = NumberField.create(record.trace_field_poly,
                               embedding_hint=record.trace_field_embedding,
                               digits=digits)
    out = express_in_field(value.value, field, digits)
    if isinstance(out, (NotInField, Undecided)):
        return {
            "in_field": False,
            "outcome": out,
            "specialized": poly,
            "notes": notes,
        }
    elem, note = out
    return {
        "in_field": True,
        "element": elem,
        "element_minpoly": minimal_polynomial(elem, var=poly.var),
        "pairing_note": note,
        "specialized": poly,
        "value": value,
        "notes": notes + [f"embedding pairing: {note}"],
    }


def field_element_text(elem) -> str:
    p = UniPoly("x", list(elem.coords))
    return to_text(p.to_multi())


def torsion_at(record: KnotRecord, trace, dps: int = 40,
               basis_seed: Optional[int] = None) -> dict:
    """Numeric torsion data at one meridian trace, with symbolic cross-checks."""
    with mp.workdps(dps):
        rep = riley_solve(record.presentation, mp.mpmathify(trace),
                          record.riley_seed, dps=dps)
        out = peripheral_torsions(record.presentation, rep, basis_seed=basis_seed)
        result = {
            "trace": mp.mpmathify(trace),
            "tr_mu": out["tr_mu"],
            "tr_lambda": out["tr_lambda"],
            "tau_mu": out["tau_mu"],
            "tau_lambda": out["tau_lambda"],
            "ratio_sq": out["ratio_sq"],
            "homology": out["homology"],
        }
        if record.apoly is not None and record.branch_hint is not None:
            _, factor = branch_and_factor(record)
            expected = factor.eval_at(out["tr_mu"])
            result["change_factor"] = expected
            result["change_factor_rel_err"] = abs(out["ratio_sq"] - expected) / abs(expected)
        if record.param_torsion is not None:
            result["diag_scalar"] = _diagnostic_scalar(record, out)
        return result


def _diagnostic_scalar(record: KnotRecord, out) -> object:
    """tau_lambda(numeric)^2 over the nearest symbolic branch value squared.

    Reported as a diagnostic only; whether this scalar is constant along the
    geometric component is not asserted.
    """
    T = eliminated_T(record)
    tv = out["tr_lambda"] if record.trace_of == "lambda" else out["tr_mu"]
    by_tau = {}
    for d, c in T.poly.coeffs_wrt("tau").items():
        by_tau[d] = mp.mpmathify(c.eval({T.trace_var: tv}))
    deg = max(by_tau)
    poly = [by_tau.get(i, mp.mpc(0)) for i in range(deg + 1)]
    roots = mp.polyroots(list(reversed(poly)), maxsteps=200, extraprec=80)
    tau_num = out["tau_lambda"].value
    best = min(roots, key=lambda r: min(abs(r - tau_num), abs(r + tau_num)))
    if abs(best) < mp.mpf("1e-20"):
        return mp.mpc(0)
    return tau_num ** 2 / best ** 2
