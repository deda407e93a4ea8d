"""Command-line front end.

    stabbasis stab-k --type A --rank 2 --chamber e- --polarization cotangent --alcove "e;0"
    stabbasis padic --type A --rank 1 --format csv
    stabbasis verify --suite all

Exit status: 0 success, 2 invalid job, 3 a verification verdict failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import shlex
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .exactalg import RatFunc, to_latex, to_str
from .weyl import AlcoveSpec, RootSystemError, build_root_system

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_VERIFY = 3

TASKS = ("stab-k", "stab-coh", "rootpoly", "csm", "mc", "padic", "wall", "verify")
FORMATS = ("json", "csv", "latex")


class JobError(ValueError):
    """An invalid job; reported with exit status 2."""


@dataclass(frozen=True)
class JobSpec:
    task: str
    type_label: str = "A"
    rank: int = 1
    chamber: str = "e-"
    polarization: str = ""
    alcove: str = ""
    cell: str = "X"
    what: str = ""
    sign: str = "-"
    prefactor: str = "length"
    wall: str = ""
    suite: str = "all"
    fmt: str = "json"
    variable: str = "q"
    subs: tuple = field(default_factory=tuple)

    def argv(self) -> list:
        out = [self.task, "--type", self.type_label, "--rank", str(self.rank)]
        defaults = JobSpec(self.task)
        for name, flag in _FLAGS:
            v = getattr(self, name)
            if v != getattr(defaults, name):
                out += [flag, str(v)]
        for s in self.subs:
            out += ["--subs", s]
        return out

    def to_text(self) -> str:
        return shlex.join(self.argv())

    @classmethod
    def from_text(cls, text: str) -> "JobSpec":
        return job_from_args(build_parser().parse_args(shlex.split(text)))


_FLAGS = [("chamber", "--chamber"), ("polarization", "--polarization"), ("alcove", "--alcove"),
          ("cell", "--cell"), ("what", "--what"), ("sign", "--sign"), ("prefactor", "--prefactor"),
          ("wall", "--wall"), ("suite", "--suite"), ("fmt", "--format"), ("variable", "--variable")]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="stabbasis", description="Stable bases of the Springer resolution.")
    p.add_argument("task", choices=TASKS)
    p.add_argument("--type", dest="type_label", default="A")
    p.add_argument("--rank", type=int, default=1)
    p.add_argument("--chamber", default="e-", help="w+ or w-: the chamber w C_+ or w C_-")
    p.add_argument("--polarization", default="", help="tangent | cotangent (default from the chamber sign)")
    p.add_argument("--alcove", default="", help='"x;mu": reduced word x, simple-root shift mu')
    p.add_argument("--cell", default="X", choices=("X", "Y"))
    p.add_argument("--what", default="", help="class | expansion | kcoeff | stab")
    p.add_argument("--sign", default="-", choices=("+", "-"))
    p.add_argument("--prefactor", default="length", choices=("length", "colength"),
                   help="root-polynomial q-power: q^(l(w)/2) or q^(-l(w0 w))")
    p.add_argument("--wall", default="", help="positive root in simple-root coordinates, e.g. 1,1")
    p.add_argument("--suite", default="all", help="all | quick | comma-separated criterion numbers")
    p.add_argument("--format", dest="fmt", default="json", choices=FORMATS)
    p.add_argument("--variable", default="q", choices=("q", "y"))
    p.add_argument("--subs", action="append", default=[], help="name=value, e.g. q=1, h=1, a=0, e=1")
    p.add_argument("--output", default="", help="write the report here instead of stdout")
    return p


def job_from_args(ns) -> JobSpec:
    chamber = ns.chamber.replace("−", "-").strip()
    if not chamber or chamber[-1] not in "+-":
        raise JobError(f"chamber must end in + or -: {ns.chamber!r}")
    pol = ns.polarization or ("cotangent" if chamber.endswith("-") else "tangent")
    alcove = ns.alcove
    if not alcove and ns.task in ("stab-k", "wall"):
        rs = _root_system(ns.type_label, ns.rank)
        alcove = "e;0" if pol == "cotangent" else f"{rs.weyl.w0};0"
    what = ns.what or {"csm": "expansion", "mc": "class", "rootpoly": "kcoeff"}.get(ns.task, "")
    return JobSpec(task=ns.task, type_label=ns.type_label.upper(), rank=ns.rank, chamber=chamber,
                   polarization=pol, alcove=alcove, cell=ns.cell, what=what, sign=ns.sign,
                   prefactor=ns.prefactor, wall=ns.wall, suite=ns.suite, fmt=ns.fmt,
                   variable=ns.variable, subs=tuple(ns.subs))


def _root_system(t, r):
    try:
        return build_root_system(t, r)
    except (RootSystemError, ValueError, KeyError) as exc:
        raise JobError(f"unsupported root system {t}{r}: {exc}") from None


# --- substitutions -------------------------------------------------------------

def _rational_sqrt(v: Fraction) -> Fraction:
    if v < 0:
        raise JobError("q must be a nonnegative square to substitute")
    a, b = isqrt(v.numerator), isqrt(v.denominator)
    if a * a != v.numerator or b * b != v.denominator:
        raise JobError(f"q={v} has no rational square root, so q^(1/2) cannot be substituted")
    return Fraction(a, b)


def make_substituter(ring, subs):
    if not subs:
        return None
    values = {}
    for s in subs:
        name, _, val = s.partition("=")
        name = name.strip()
        try:
            v = Fraction(val.strip())
        except ValueError:
            raise JobError(f"bad substitution {s!r}") from None
        if name in ("e", "a") and name in {n[0] for n in ring.names}:
            for n in ring.names:
                if n[0] == name and n[1:].isdigit():
                    values[n] = v
        elif name in ring.slot:
            values[name] = _rational_sqrt(v) if name == "q" else v
        else:
            raise JobError(f"no variable {name!r} in this ring (has {', '.join(ring.names)})")
    if any(v == 0 for n, v in values.items() if ring.laurent_vars):
        raise JobError("Laurent variables cannot be set to 0")
    images = []
    for j, n in enumerate(ring.names):
        if n in values:
            images.append(RatFunc.const(ring, values[n]))
        else:
            e = [0] * ring.nslots
            e[j] = 1
            images.append(RatFunc.monomial(ring, ring.encode(e)))

    def apply(f):
        try:
            return f.substitute(ring, images) if f else f
        except ZeroDivisionError:
            raise JobError("substitution makes a denominator vanish") from None
    return apply


# --- tasks -----------------------------------------------------------------------

def _params(job: JobSpec, rs):
    from .stablecalc import StabParams, UnsupportedPolarization
    W = rs.weyl
    try:
        c = W.parse(job.chamber[:-1] or "e")
        chamber = c if job.chamber.endswith("+") else c * W.w0
        alcove = AlcoveSpec.parse(W, job.alcove)
        return StabParams(chamber, job.polarization, alcove)
    except (RootSystemError, UnsupportedPolarization, ValueError) as exc:
        raise JobError(str(exc)) from None


def _family_table(classes, W):
    labels = [str(w) for w in W]
    return labels, labels, [[c.vals[v.index] for v in W] for c in classes]


def task_stab_k(job, rs):
    from .stablecalc import stab_general
    fam = stab_general(_params(job, rs))
    rows, cols, M = _family_table(fam.classes, rs.weyl)
    return {"rows": rows, "cols": cols, "entries": M, "extra": {"params": str(fam.params)}}


def task_stab_coh(job, rs):
    from .cohstable import stab_minus_coh_family, stab_plus_coh_family
    if job.chamber not in ("e+", "e-"):
        raise JobError("cohomological stable bases are provided for the chambers e+ and e-")
    fam = stab_plus_coh_family(rs) if job.chamber == "e+" else stab_minus_coh_family(rs)
    rows, cols, M = _family_table(fam, rs.weyl)
    return {"rows": rows, "cols": cols, "entries": M}


def task_rootpoly(job, rs):
    from .rootpoly import kcoeffs, stab_minus_family_via_rootpoly
    W = rs.weyl
    labels = [str(w) for w in W]
    if job.what == "kcoeff":
        # row w (root polynomial), column v: K_{v,w}
        M = []
        for w in W:
            K = kcoeffs(job.sign, w)
            M.append([K.get(v, RatFunc.zero(K[w].ring)) for v in W])
        return {"rows": labels, "cols": labels, "entries": M}
    if job.what == "stab":
        fam = stab_minus_family_via_rootpoly(rs, job.sign, job.prefactor)
        rows, cols, M = _family_table(fam, W)
        return {"rows": rows, "cols": cols, "entries": M, "extra": {"prefactor": job.prefactor}}
    raise JobError("rootpoly --what must be kcoeff or stab")


def task_csm(job, rs):
    from .cohstable import csm_class, csm_expand
    W = rs.weyl
    labels = [str(w) for w in W]
    if job.what == "class":
        return {"rows": labels, "cols": labels, "entries": [csm_class(job.cell, w).vals for w in W]}
    if job.what == "expansion":
        M = []
        for w in W:
            c = csm_expand(w, job.cell)
            zero = RatFunc.zero(next(iter(c.values())).ring)
            M.append([c.get(u, zero) for u in W])
        return {"rows": labels, "cols": labels, "entries": M}
    raise JobError("csm --what must be class or expansion")


def task_mc(job, rs):
    from .motivic import mc_class, mc_expand
    W = rs.weyl
    labels = [str(w) for w in W]
    if job.what == "class":
        return {"rows": labels, "cols": labels, "entries": [mc_class(job.cell, w).vals for w in W]}
    if job.what == "expansion":
        if job.cell != "X":
            raise JobError("mc expansion is provided for the cells X(w)")
        M = []
        for w in W:
            c = mc_expand(w)
            zero = RatFunc.zero(next(iter(c.values())).ring)
            M.append([c.get(u, zero) for u in W])
        return {"rows": labels, "cols": labels, "entries": M}
    raise JobError("mc --what must be class or expansion")


def task_padic(job, rs):
    from .padic import bnn_tests, m_entry
    from .weyl import bruhat_leq
    W = rs.weyl
    labels = [str(w) for w in W]
    M = [[m_entry(u, w) for w in W] for u in W]
    verdicts = []
    for u in W:
        for w in W:
            if bruhat_leq(u, w):
                d = bnn_tests(u, w).as_dict()
                d.update(u=str(u), w=str(w))
                verdicts.append(d)
    return {"rows": labels, "cols": labels, "entries": M, "extra": {"verdicts": verdicts}}


def task_wall(job, rs):
    from .stablecalc import NotAdjacent, stab_general, wall_cross, zero_walls
    p = _params(job, rs)
    walls = zero_walls(p.alcove)
    if not job.wall:
        raise JobError(f"--wall required; zero walls of {p.alcove}: "
                       + " ".join(",".join(map(str, b)) for b in walls))
    try:
        beta = tuple(int(t) for t in job.wall.split(","))
    except ValueError:
        raise JobError(f"bad root {job.wall!r}") from None
    fam = stab_general(p)
    try:
        crossed = wall_cross(fam, beta)
    except (NotAdjacent, KeyError) as exc:
        raise JobError(f"no wall on the zero hyperplane of {job.wall}: {exc}") from None
    direct = crossed == stab_general(crossed.params)
    back = wall_cross(crossed, beta) == fam
    rows, cols, M = _family_table(crossed.classes, rs.weyl)
    return {"rows": rows, "cols": cols, "entries": M,
            "extra": {"params": str(crossed.params), "matches_direct": direct, "round_trip": back},
            "ok": direct and back}


def task_verify(job, rs):
    from .suite import CRITERIA, run_suite
    if job.suite == "all":
        nums, long = None, True
    elif job.suite == "quick":
        nums, long = None, False
    else:
        try:
            nums = [int(t) for t in job.suite.split(",")]
        except ValueError:
            raise JobError(f"bad suite {job.suite!r}") from None
        if any(n not in CRITERIA for n in nums):
            raise JobError(f"criteria are numbered {min(CRITERIA)}..{max(CRITERIA)}")
        long = True
    results = run_suite(nums, long=long)
    return {"rows": [str(r.number) for r in results], "cols": ["passed", "title"],
            "entries": [["true" if r.passed else "false", r.title] for r in results],
            "extra": {"details": {str(r.number): r.details for r in results}},
            "ok": all(r.passed for r in results), "raw": True}


HANDLERS = {"stab-k": task_stab_k, "stab-coh": task_stab_coh, "rootpoly": task_rootpoly,
            "csm": task_csm, "mc": task_mc, "padic": task_padic, "wall": task_wall,
            "verify": task_verify}


# --- output ----------------------------------------------------------------------

def _render_entries(res: dict, job: JobSpec, fmt_fn) -> list:
    if res.get("raw"):
        return res["entries"]
    M = res["entries"]
    conv = None
    if job.variable == "y":
        from .motivic import q_to_y
        conv = q_to_y
    out = []
    for row in M:
        line = []
        for f in row:
            if res.get("_subst"):
                f = res["_subst"](f)
            if conv is not None:
                if "q" not in f.ring.slot:
                    raise JobError("--variable y applies to K-theoretic output only")
                try:
                    f = conv(f)
                except ValueError as exc:
                    raise JobError(str(exc)) from None
            line.append(fmt_fn(f))
        out.append(line)
    return out


def _tex_escape(s: str) -> str:
    return s.replace("_", "\\_")


def render(job: JobSpec, res: dict) -> str:
    if job.fmt == "latex":
        entries = _render_entries(res, job, to_latex)
        cols = res["cols"]
        lines = ["\\begin{tabular}{l|" + "c" * len(cols) + "}",
                 " & ".join([""] + [f"${_tex_escape(c)}$" for c in cols]) + " \\\\",
                 "\\hline"]
        for r, row in zip(res["rows"], entries):
            cells = [f"${c}$" if not res.get("raw") else _tex_escape(c) for c in row]
            lines.append(" & ".join([f"${_tex_escape(r)}$"] + cells) + " \\\\")
        lines.append("\\end{tabular}")
        return "\n".join(lines) + "\n"
    entries = _render_entries(res, job, to_str)
    if job.fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow([""] + res["cols"])
        for r, row in zip(res["rows"], entries):
            wr.writerow([r] + row)
        verdicts = res.get("extra", {}).get("verdicts")
        if verdicts:
            keys = ["u", "w", "factorization", "smooth", "analytic", "smooth_label"]
            wr.writerow([])
            wr.writerow(keys)
            for d in verdicts:
                wr.writerow([str(d[k]).lower() if isinstance(d[k], bool) else d[k] for k in keys])
        return buf.getvalue()
    report = {"job": job.to_text(), "task": job.task, "type": job.type_label, "rank": job.rank,
              "rows": res["rows"], "cols": res["cols"], "entries": entries}
    if "extra" in res:
        report["extra"] = res["extra"]
    if "ok" in res:
        report["ok"] = res["ok"]
    return json.dumps(report, indent=1, sort_keys=True) + "\n"


def run(job: JobSpec):
    """Return ``(text, exit_status)``."""
    if job.task == "verify":
        rs = None
    else:
        rs = _root_system(job.type_label, job.rank)
    res = HANDLERS[job.task](job, rs)
    if job.subs:
        if res.get("raw"):
            raise JobError("substitutions do not apply to verify")
        ring = next(f.ring for row in res["entries"] for f in row)
        res["_subst"] = make_substituter(ring, job.subs)
    text = render(job, res)
    status = EXIT_OK if res.get("ok", True) else EXIT_VERIFY
    return text, status


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        job = job_from_args(ns)
        text, status = run(job)
    except JobError as exc:
        print(f"stabbasis: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if ns.output:
        with open(ns.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
