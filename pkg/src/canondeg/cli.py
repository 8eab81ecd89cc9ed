"""Command-line front end emitting machine-readable JSON or CSV reports.

Reports are deterministic: identical argv and seed produce byte-identical
output (no timestamps).  Exact rationals are rendered as "num/den" strings,
floats with 17 significant digits, in both encodings.

Exit codes: 0 success, 1 a verification row failed, 2 invalid input.
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .arithmetic import Rational, factor_squarefree, squarefree_up_to
from .curvature import (
    ClassicalDomain,
    canonical_degree_bound,
    check_degree_chain,
    curvature_inverse_closed,
    functional_gradient,
    numerical_curvature_inverse,
    tashiro_functional,
    verify_tashiro,
)
from .errors import InvalidInput
from .family import PrimeConfig, family_member, lemma1_lower_bound, search_configs
from .modular import (
    check_chi_window,
    chi_window_upper,
    degree_degeneracy,
    gamma0_invariants,
    psi_index,
)
from .shimura import shimura_invariants

GENUS_TABLE = {1: 0, 11: 1, 23: 2, 29: 2, 37: 2, 58: 6, 101: 8, 202: 24}
SHIMURA_GENUS_TABLE = {6: 0, 10: 0, 26: 2}


def _fmt(value):
    """Render a value for a report record."""
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, Rational):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if isinstance(value, np.integer):
        return int(value)
    return value


def _record(**fields) -> dict:
    return {key: _fmt(value) for key, value in fields.items()}


@dataclass
class Report:
    command: str
    inputs: dict
    records: list
    seed: int

    @property
    def passed(self) -> bool:
        return all(rec.get("pass", True) for rec in self.records)

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "records": self.records,
            "pass": self.passed,
            "tool_version": __version__,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.DictWriter(
            buffer, fieldnames=list(self.records[0]), lineterminator="\n"
        )
        writer.writeheader()
        for rec in self.records:
            writer.writerow({k: str(v).lower() if isinstance(v, bool) else v for k, v in rec.items()})
        return buffer.getvalue().rstrip("\n")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_modular(args) -> Report:
    inv = gamma0_invariants(factor_squarefree(args.level))
    fields = dict(
        level=inv.level.value,
        index=inv.index,
        nu2=inv.nu2,
        nu3=inv.nu3,
        cusps=inv.cusps,
        genus=inv.genus,
        chi=inv.chi,
    )
    if args.window:
        residual = check_chi_window(inv.level)
        upper = chi_window_upper(inv.level)
        fields.update(
            window_residual=residual,
            window_upper=upper,
            chi_negative=inv.chi < 0,
        )
        fields["pass"] = 0 <= residual <= upper
    else:
        fields["pass"] = True
    return Report(
        "modular",
        {"level": args.level, "window": args.window},
        [_record(**fields)],
        args.seed,
    )


def cmd_shimura(args) -> Report:
    inv = shimura_invariants(factor_squarefree(args.disc), factor_squarefree(args.level))
    rec = _record(
        discriminant=inv.discriminant.value,
        level=inv.level.value,
        index=inv.index,
        e2=inv.e2,
        e3=inv.e3,
        genus=inv.genus,
        chi=inv.chi,
        torsion_free=inv.torsion_free,
        **{"pass": True},
    )
    return Report("shimura", {"disc": args.disc, "level": args.level}, [rec], args.seed)


def _parse_ells(text: str) -> tuple:
    if not text:
        return ()
    return tuple(int(part) for part in text.split(","))


def _member_record(member) -> dict:
    cfg = member.config
    expected = cfg.d if cfg.kind == "quaternionic" else member.lower_bound
    return _record(
        kind=cfg.kind,
        disc=cfg.delta.value if cfg.delta is not None else 0,
        d=cfg.d,
        p=cfg.p,
        ells=",".join(str(l) for l in cfg.ells),
        level=member.level.value,
        canonical_degree=member.canonical_degree,
        chi=member.chi,
        ratio=member.ratio,
        lower_bound=member.lower_bound if member.lower_bound is not None else Rational(cfg.d),
        **{"pass": member.ratio == cfg.d if cfg.kind == "quaternionic" else member.ratio >= expected},
    )


def _family_config(args) -> PrimeConfig:
    delta = None
    if args.kind == "quat":
        if args.disc is None:
            raise InvalidInput("--disc is required for the quaternionic family")
        delta = factor_squarefree(args.disc)
    return PrimeConfig(d=args.d, p=args.p, ells=_parse_ells(args.ells), delta=delta)


def cmd_family(args) -> Report:
    member = family_member(_family_config(args))
    return Report(
        "family",
        {"kind": args.kind, "disc": args.disc, "d": args.d, "p": args.p, "ells": args.ells},
        [_member_record(member)],
        args.seed,
    )


def cmd_family_search(args) -> Report:
    delta = factor_squarefree(args.disc) if args.kind == "quat" else None
    if args.kind == "quat" and args.disc is None:
        raise InvalidInput("--disc is required for the quaternionic family")
    members = search_configs(args.d, args.p_max, args.ell_max, delta=delta)
    if args.top is not None:
        members = members[: args.top]
    if not members:
        raise InvalidInput("no admissible prime configuration within the bounds")
    return Report(
        "family-search",
        {
            "kind": args.kind,
            "disc": args.disc,
            "d": args.d,
            "p_max": args.p_max,
            "ell_max": args.ell_max,
            "top": args.top,
        },
        [_member_record(m) for m in members],
        args.seed,
    )


def _parse_domain(kind: str, n: int, m) -> ClassicalDomain:
    if kind == "I":
        if m is None:
            raise InvalidInput("type I needs --m")
        return ClassicalDomain("I", n, m)
    if m is not None:
        raise InvalidInput(f"type {kind} does not take --m")
    return ClassicalDomain(kind, n)


def _curvature_record(domain: ClassicalDomain, args, verify: bool) -> dict:
    closed = curvature_inverse_closed(domain)
    fields = dict(
        domain=str(domain),
        dim=domain.dimension,
        closed_form=closed,
        closed_form_source="derived" if domain.kind == "III" else "classical",
        bound_ok=closed <= domain.dimension,
    )
    if verify:
        est = numerical_curvature_inverse(domain, restarts=args.restarts, seed=args.seed)
        error = abs(est.value - float(closed))
        fields.update(
            numerical=est.value,
            abs_error=error,
            converged=est.converged,
            restarts=est.restarts,
            iterations=est.iterations,
        )
        fields["pass"] = fields["bound_ok"] and est.converged and error <= args.tol
    else:
        fields["pass"] = fields["bound_ok"]
    return _record(**fields)


def cmd_curvature(args) -> Report:
    domain = _parse_domain(args.type, args.n, args.m)
    return Report(
        "curvature",
        {
            "type": args.type,
            "n": args.n,
            "m": args.m,
            "verify": args.verify,
            "restarts": args.restarts,
        },
        [_curvature_record(domain, args, args.verify)],
        args.seed,
    )


def _parse_factors(text: str) -> list:
    factors = []
    for part in text.split(";"):
        part = part.strip()
        if not part:
            continue
        try:
            kind, params = part.split(":")
            numbers = [int(x) for x in params.split(",")]
        except ValueError as exc:
            raise InvalidInput(f"cannot parse factor {part!r}") from exc
        if kind == "I":
            if len(numbers) != 2:
                raise InvalidInput(f"type I factor needs two parameters, got {part!r}")
            factors.append(ClassicalDomain("I", numbers[0], numbers[1]))
        else:
            if len(numbers) != 1:
                raise InvalidInput(f"type {kind} factor needs one parameter, got {part!r}")
            factors.append(ClassicalDomain(kind, numbers[0]))
    if not factors:
        raise InvalidInput("no factors given")
    return factors


def cmd_curvature_product(args) -> Report:
    factors = _parse_factors(args.factors)
    records = []
    for factor in factors:
        closed = curvature_inverse_closed(factor)
        records.append(
            _record(
                domain=str(factor),
                dim=factor.dimension,
                inverse_curvature=closed,
                **{"pass": closed <= factor.dimension},
            )
        )
    check = verify_tashiro(factors)
    records.append(
        _record(
            domain="product",
            dim=check.dim,
            inverse_curvature=check.value,
            **{"pass": check.passed},
        )
    )
    return Report("curvature-product", {"factors": args.factors}, records, args.seed)


# ---------------------------------------------------------------------------
# verify-all: a bounded re-run of every identity the test suite pins down
# ---------------------------------------------------------------------------

def _check(name: str, ok: bool, detail: str) -> dict:
    return _record(check=name, detail=detail, **{"pass": bool(ok)})


def _check_genus_tables() -> dict:
    bad = [n for n, g in GENUS_TABLE.items() if gamma0_invariants(factor_squarefree(n)).genus != g]
    return _check("genus_tables", not bad, f"levels {sorted(GENUS_TABLE)}; mismatches {bad}")


def _check_shimura_tables() -> dict:
    ok = all(
        shimura_invariants(factor_squarefree(d), factor_squarefree(1)).genus == g
        for d, g in SHIMURA_GENUS_TABLE.items()
    )
    inv6 = shimura_invariants(factor_squarefree(6), factor_squarefree(1))
    ok = ok and (inv6.e2, inv6.e3) == (2, 2)
    return _check("shimura_tables", ok, f"discriminants {sorted(SHIMURA_GENUS_TABLE)}")


def _check_chi_window(limit: int) -> dict:
    worst = None
    for n in squarefree_up_to(limit):
        residual = check_chi_window(n)
        if not 0 <= residual <= chi_window_upper(n):
            return _check("chi_window", False, f"violated at N={n.value}")
        slack = chi_window_upper(n) - residual
        if worst is None or slack < worst[1]:
            worst = (n.value, slack)
    boundary = check_chi_window(factor_squarefree(1)) == chi_window_upper(factor_squarefree(1))
    return _check(
        "chi_window",
        boundary,
        f"squarefree N <= {limit}; tightest slack {worst[1]} at N={worst[0]}; N=1 attains the bound",
    )


def _check_chi_negative(limit: int) -> dict:
    bad = [n.value for n in squarefree_up_to(limit) if n.value >= 22 and gamma0_invariants(n).chi >= 0]
    return _check("chi_negative", not bad, f"22 <= N <= {limit}; failures {bad}")


def _check_degeneracy(limit: int) -> dict:
    bad = [
        n.value
        for n in squarefree_up_to(limit)
        if degree_degeneracy(n, factor_squarefree(1)) != psi_index(n)
    ]
    return _check("degeneracy_towers", not bad, f"N <= {limit}; failures {bad}")


def _check_lemma1(p_max: int) -> dict:
    count = 0
    for d in (2, 3):
        ells = (2,) if d == 2 else (2, 3)
        for p in (n.value for n in squarefree_up_to(p_max) if n.num_primes == 1):
            if p < 23:
                continue
            member = family_member(PrimeConfig(d=d, p=p, ells=ells))
            if member.ratio < lemma1_lower_bound(p, d):
                return _check("ratio_lower_bound", False, f"violated at d={d}, p={p}")
            count += 1
    return _check("ratio_lower_bound", True, f"{count} members, d in (2,3), p <= {p_max}")


def _check_lemma4() -> dict:
    delta = factor_squarefree(26)
    import itertools

    count = 0
    for d in (1, 2, 3):
        for ells in itertools.combinations((3, 7, 11), d - 1):
            member = family_member(PrimeConfig(d=d, p=5, ells=ells, delta=delta))
            if member.ratio != d:
                return _check("etale_ratio", False, f"violated at d={d}, ells={ells}")
            count += 1
    return _check("etale_ratio", True, f"{count} members at discriminant 26, p=5")


def _check_multiplicativity() -> dict:
    delta = factor_squarefree(26)
    base = shimura_invariants(delta, factor_squarefree(5)).chi
    bad = [
        l
        for l in (3, 7, 11, 17, 19, 23, 29, 31, 37, 41, 43, 47)
        if shimura_invariants(delta, factor_squarefree(5 * l)).chi != (l + 1) * base
    ]
    return _check("chi_multiplicativity", not bad, f"primes l <= 50 coprime to 130; failures {bad}")


def _curvature_domains(fast: bool) -> list:
    if fast:
        return [
            ClassicalDomain("I", 2, 2),
            ClassicalDomain("II", 3),
            ClassicalDomain("III", 4),
            ClassicalDomain("IV", 4),
        ]
    domains = [ClassicalDomain("I", n, m) for n in range(1, 5) for m in range(1, n + 1)]
    domains += [ClassicalDomain("II", n) for n in range(1, 7)]
    domains += [ClassicalDomain("III", n) for n in range(2, 7)]
    domains += [ClassicalDomain("IV", n) for n in range(1, 7)]
    return domains


def _check_curvature_numeric(fast: bool, seed: int, tol: float) -> dict:
    restarts = 8 if fast else 32
    worst = 0.0
    for domain in _curvature_domains(fast):
        est = numerical_curvature_inverse(domain, restarts=restarts, seed=seed)
        err = abs(est.value - float(curvature_inverse_closed(domain)))
        worst = max(worst, err)
        if err > tol or not est.converged:
            return _check("curvature_numeric", False, f"error {err:.3e} at {domain}")
    return _check(
        "curvature_numeric",
        True,
        f"{len(_curvature_domains(fast))} domains, worst error {worst:.3e}",
    )


def _random_domain(rng) -> ClassicalDomain:
    kind = ("I", "II", "III", "IV")[rng.integers(4)]
    if kind == "I":
        n = int(rng.integers(1, 9))
        return ClassicalDomain("I", n, int(rng.integers(1, n + 1)))
    n = int(rng.integers(2 if kind == "III" else 1, 9))
    return ClassicalDomain(kind, n)


def _check_sectional_bound(products: int, seed: int) -> dict:
    for domain in _curvature_domains(fast=False):
        if not verify_tashiro(domain).passed:
            return _check("sectional_bound", False, f"violated at {domain}")
    rng = np.random.default_rng(seed)
    for _ in range(products):
        factors = [_random_domain(rng) for _ in range(int(rng.integers(1, 4)))]
        if not verify_tashiro(factors).passed:
            return _check("sectional_bound", False, f"violated at product {factors}")
    disk_power = [ClassicalDomain("I", 1, 1)] * 3
    polydisk_ok = verify_tashiro(disk_power).value == 3
    bound_ok = canonical_degree_bound(Rational(3), -2) == 6
    return _check(
        "sectional_bound",
        polydisk_ok and bound_ok,
        f"all classical domains with parameters <= 8 and {products} random products",
    )


def _fd_gradient_agrees(domain, z, rel_tol=1e-5, step=1e-5) -> bool:
    grad = functional_gradient(domain, z)
    directional = []
    analytic = []
    basis = _tangent_basis(domain)
    for v in basis:
        fp = tashiro_functional(domain, z + step * v)
        fm = tashiro_functional(domain, z - step * v)
        directional.append((fp - fm) / (2 * step))
        analytic.append(np.vdot(grad, v).real)
    directional = np.array(directional)
    analytic = np.array(analytic)
    scale = max(np.linalg.norm(analytic), 1.0)
    return np.linalg.norm(directional - analytic) <= rel_tol * scale


def _tangent_basis(domain) -> list:
    if domain.kind == "IV":
        shape = (domain.n,)
    elif domain.kind == "I":
        shape = (domain.n, domain.m)
    else:
        shape = (domain.n, domain.n)
    basis = []
    if domain.kind in ("I", "IV"):
        for idx in np.ndindex(*shape):
            for unit in (1.0, 1.0j):
                v = np.zeros(shape, dtype=complex)
                v[idx] = unit
                basis.append(v)
        return basis
    sign = 1.0 if domain.kind == "II" else -1.0
    for i in range(domain.n):
        for j in range(i, domain.n):
            if i == j:
                if domain.kind == "III":
                    continue
                for unit in (1.0, 1.0j):
                    v = np.zeros(shape, dtype=complex)
                    v[i, i] = unit
                    basis.append(v)
            else:
                for unit in (1.0, 1.0j):
                    v = np.zeros(shape, dtype=complex)
                    v[i, j] = unit
                    v[j, i] = sign * unit
                    basis.append(v)
    return basis


def _check_gradient(points: int, seed: int) -> dict:
    rng = np.random.default_rng(seed)
    domains = [
        ClassicalDomain("I", 3, 2),
        ClassicalDomain("II", 3),
        ClassicalDomain("III", 4),
        ClassicalDomain("IV", 4),
    ]
    for domain in domains:
        for _ in range(points):
            if domain.kind == "IV":
                z = rng.standard_normal(domain.n) + 1j * rng.standard_normal(domain.n)
            else:
                shape = (domain.n, domain.m if domain.kind == "I" else domain.n)
                z = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
                if domain.kind == "II":
                    z = (z + z.T) / 2
                elif domain.kind == "III":
                    z = (z - z.T) / 2
            if not _fd_gradient_agrees(domain, z):
                return _check("gradient_finite_differences", False, f"mismatch on {domain}")
    return _check(
        "gradient_finite_differences", True, f"{points} random points per domain type"
    )


def _check_degree_chain() -> dict:
    chain = check_degree_chain(-48, 0, 96, Rational(2))
    ok = chain.passed and chain.curvature_equality
    return _check("degree_chain", ok, "chi=-48, branch 0, degree 96, -1/S=2, equality expected")


def cmd_verify_all(args) -> Report:
    fast = args.fast
    limit = 2000 if fast else 10000
    records = [
        _check_genus_tables(),
        _check_shimura_tables(),
        _check_chi_window(limit),
        _check_chi_negative(limit),
        _check_degeneracy(300 if fast else 2000),
        _check_lemma1(200 if fast else 500),
        _check_lemma4(),
        _check_multiplicativity(),
        _check_curvature_numeric(fast, args.seed, args.tol),
        _check_sectional_bound(20 if fast else 100, args.seed),
        _check_gradient(10 if fast else 100, args.seed),
        _check_degree_chain(),
    ]
    return Report("verify-all", {"fast": fast}, records, args.seed)


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--tol", type=float, default=1e-6)

    parser = argparse.ArgumentParser(
        prog="canondeg",
        description="modular/Shimura curve invariants, canonical-degree ratios, curvature bounds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("modular", parents=[common], help="invariants of X_0(N)")
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--window", action="store_true")
    p.set_defaults(func=cmd_modular)

    p = sub.add_parser("shimura", parents=[common], help="invariants of X_0^D(N)")
    p.add_argument("--disc", type=int, required=True)
    p.add_argument("--level", type=int, required=True)
    p.set_defaults(func=cmd_shimura)

    p = sub.add_parser("family", parents=[common], help="one family member")
    p.add_argument("--kind", choices=("modular", "quat"), required=True)
    p.add_argument("--disc", type=int)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--ells", default="")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("family-search", parents=[common], help="enumerate family members")
    p.add_argument("--kind", choices=("modular", "quat"), required=True)
    p.add_argument("--disc", type=int)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--p-max", type=int, required=True)
    p.add_argument("--ell-max", type=int, required=True)
    p.add_argument("--top", type=int)
    p.set_defaults(func=cmd_family_search)

    p = sub.add_parser("curvature", parents=[common], help="curvature of one classical domain")
    p.add_argument("--type", choices=("I", "II", "III", "IV"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--restarts", type=int, default=32)
    p.set_defaults(func=cmd_curvature)

    p = sub.add_parser("curvature-product", parents=[common], help="curvature of a product domain")
    p.add_argument("--factors", required=True, help='e.g. "I:3,2;IV:4"')
    p.set_defaults(func=cmd_curvature_product)

    p = sub.add_parser("verify-all", parents=[common], help="run every bounded verification")
    p.add_argument("--fast", action="store_true")
    p.set_defaults(func=cmd_verify_all)

    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        report = args.func(args)
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(report.to_json() if args.format == "json" else report.to_csv())
    return 0 if report.passed else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
