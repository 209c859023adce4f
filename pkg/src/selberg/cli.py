"""Command-line entry point.

Subcommands
-----------
``spectrum``   compute (or load from cache) a primitive length spectrum
``zeta``       evaluate the zeta product or its log-derivative at one point
``check``      run a verification suite: patterson, les, residues, local-factor
``divisor``    write the divisor determined by a genus and Laplace spectrum

Exit codes: 0 success, 2 precondition violation, 3 verification failure.
"""
from __future__ import annotations

import argparse
import hashlib
import logging
import os
import random
import sys
from dataclasses import dataclass
from pathlib import Path

import mpmath

from .cohomology import Regime, check_les, check_patterson, dims_hyperfunction
from .config import Precision
from .divisor import (LaplaceSpectrum, full_divisor, read_laplace_spectrum,
                      write_divisor)
from .errors import PreconditionError, SelbergError, VerificationError
from .fuchsian import bolza_group, length_spectrum, read_group, read_spectrum, write_spectrum
from .spectral_terms import IdentityTermModel, identity_term, residue
from .zeta import (SigmaParam, local_factor_general, local_factor_sl2, log_derivative,
                   sl2_general_input, zeta)

EXIT_OK, EXIT_PRECONDITION, EXIT_VERIFICATION = 0, 2, 3
OUT_ENV = "SELBERG_OUT"
RESIDUE_TOL = 1e-8
LOCAL_FACTOR_TOL = 1e-25

log = logging.getLogger("selberg")


@dataclass(frozen=True)
class RunConfig:
    precision: int = 40
    group: str = "bolza"
    genus: int = 2
    L_max: float = 10.0
    K_max: int = 20
    spectrum_path: Path | None = None
    output_dir: Path = Path("selberg-out")
    force: bool = False
    threads: int = 1
    n_max: int = 20

    def __post_init__(self):
        if self.precision < 20:
            raise PreconditionError("--precision must be at least 20")
        if not self.L_max > 0:
            raise PreconditionError("--Lmax must be positive")
        if self.K_max < 1:
            raise PreconditionError("--Kmax must be at least 1")
        if self.genus < 2:
            raise PreconditionError("--genus must be at least 2")
        if self.threads < 1:
            raise PreconditionError("--threads must be at least 1")

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        out = args.out or os.environ.get(OUT_ENV) or "selberg-out"
        return cls(precision=args.precision, group=args.group, genus=args.genus,
                   L_max=args.Lmax, K_max=args.Kmax,
                   spectrum_path=Path(args.spectrum) if args.spectrum else None,
                   output_dir=Path(out), force=args.force, threads=args.threads,
                   n_max=args.nmax)


def _load_group(cfg: RunConfig):
    if cfg.group == "bolza":
        return bolza_group(cfg.precision), b"bolza"
    path = Path(cfg.group)
    if not path.is_file():
        raise PreconditionError(f"--group must be 'bolza' or a generator file, got {cfg.group}")
    return read_group(path, cfg.precision), path.read_bytes()


def cache_path(cfg: RunConfig, group_bytes: bytes) -> Path:
    """Cache file keyed by a hash of the group data, ``L_max`` and precision."""
    h = hashlib.sha256()
    h.update(group_bytes)
    h.update(f"|Lmax={mpmath.mpf(cfg.L_max)}|precision={cfg.precision}".encode())
    return cfg.output_dir / f"spectrum-{h.hexdigest()[:16]}.txt"


def cmd_spectrum(cfg: RunConfig, announce: bool = True):
    G, raw = _load_group(cfg)
    path = cache_path(cfg, raw)
    if path.exists() and not cfg.force:
        spec = read_spectrum(path)
        log.info("loaded cached spectrum %s", path)
    else:
        spec = length_spectrum(G, cfg.L_max)
        cfg.output_dir.mkdir(parents=True, exist_ok=True)
        write_spectrum(spec, path)
        log.info("wrote %s", path)
    if announce:
        print(f"spectrum {path} entries {len(spec)} classes {spec.class_count()}")
    return spec


def _parse_lambda(text: str) -> complex:
    try:
        return complex(text.replace("i", "j"))
    except ValueError:
        raise PreconditionError(f"cannot parse lambda {text!r}") from None


def _fmt(x, digits: int) -> str:
    return mpmath.nstr(mpmath.mpf(x), digits, min_fixed=-1, max_fixed=10**6)


def cmd_zeta(cfg: RunConfig, lam: complex, mode: str = "value", sigma: str = "trivial") -> str:
    spec = cmd_spectrum(cfg, announce=False)
    fn = zeta if mode == "value" else log_derivative
    with spec.precision.context():
        res = fn(spec, SigmaParam(sigma), mpmath.mpc(lam), K=cfg.K_max, threads=cfg.threads)
    d = min(cfg.precision, 30)
    line = (f"lambda {_fmt(lam.real, 17)} {_fmt(lam.imag, 17)} "
            f"value {_fmt(mpmath.re(res.value), d)} {_fmt(mpmath.im(res.value), d)} "
            f"err {res.error_estimate:.3e}")
    print(line)
    return line


# ---------------------------------------------------------------------------
# verification suites; each returns True iff everything passed


def suite_les(cfg: RunConfig) -> bool:
    ok = True
    for g in range(2, cfg.genus + 1):
        for n in range(cfg.n_max + 1):
            regimes = ((Regime.PLUS_HALF, Regime.NEG_HALF) if n == 0
                       else (Regime.POS_HALF_INTEGER, Regime.NEG_HALF_INTEGER))
            for r in regimes:
                passed = check_les(g, n, r)
                ok &= passed
                if not passed:
                    print(f"les g {g} n {n} regime {r.value} FAIL")
    print(f"les genus<= {cfg.genus} n<= {cfg.n_max} {'pass' if ok else 'FAIL'}")
    return ok


def _patterson_grid(cfg: RunConfig, spec: LaplaceSpectrum) -> list:
    bound = cfg.n_max + 1
    div = full_divisor(cfg.genus, spec, bound)
    points = [p for p, _ in div.items() if abs(p) > 1e-9]
    rng = random.Random(0)
    while len(points) < len(div) + 100:
        z = mpmath.mpc(rng.uniform(-bound, bound), rng.uniform(-bound, bound))
        if z not in div and abs(z) > 1e-3:
            points.append(z)
    return points


def suite_patterson(cfg: RunConfig) -> bool:
    if cfg.spectrum_path is None:
        raise PreconditionError("check patterson needs --spectrum (a Laplace spectrum file)")
    spec = read_laplace_spectrum(cfg.spectrum_path)
    ok = True
    points = _patterson_grid(cfg, spec)
    for lam in points:
        try:
            res = check_patterson(cfg.genus, lam, spec)
        except PreconditionError as exc:
            # beyond the completeness cutoff: not decidable from this spectrum
            print(f"patterson lambda {mpmath.nstr(lam, 10)} skipped ({exc})")
            continue
        ok &= res.ok
        if not res.ok or res.order:
            print(f"patterson {res.table.point.label} {res.details} "
                  f"{'ok' if res.ok else 'MISMATCH'}")
    print(f"patterson genus {cfg.genus} points {len(points)} {'pass' if ok else 'FAIL'}")
    return ok


def suite_residues(cfg: RunConfig) -> bool:
    ok = True
    model = IdentityTermModel(cfg.genus)
    f = lambda z: identity_term(model, z)  # noqa: E731
    for n in range(cfg.n_max + 1):
        a = mpmath.mpf(2 * n + 1) / 2
        expect = (2 * cfg.genus - 2) * (2 * n + 1)
        neg = residue(f, -a, precision=cfg.precision)
        pos = residue(f, a, precision=cfg.precision)
        err = max(abs(neg - expect), abs(pos))
        passed = err < RESIDUE_TOL
        ok &= passed
        print(f"residue n {n} at -{2 * n + 1}/2 {mpmath.nstr(mpmath.re(neg), 15)} "
              f"expected {expect} at +{2 * n + 1}/2 {mpmath.nstr(abs(pos), 3)} "
              f"{'ok' if passed else 'FAIL'}")
    return ok


def suite_local_factor(cfg: RunConfig, samples: int = 200) -> bool:
    rng = random.Random(0)
    prec = Precision(cfg.precision)
    worst = mpmath.mpf(0)
    with prec.context():
        for _ in range(samples):
            t = mpmath.exp(rng.uniform(1e-3, 10))
            lam = mpmath.mpc(rng.uniform(-2, 4), rng.uniform(-5, 5))
            K = rng.randint(0, 50)
            sign = rng.choice((1, -1))
            sigma = rng.choice(list(SigmaParam))
            a = local_factor_sl2(t, sign, sigma, lam, K, prec, tail_check=False).value
            b = local_factor_general(sl2_general_input(t, sign, sigma, prec), lam,
                                     mpmath.mpf(1) / 2, K, prec, tail_check=False).value
            worst = max(worst, abs(a - b) / abs(a))
    ok = worst < LOCAL_FACTOR_TOL
    print(f"local-factor samples {samples} worst_rel {mpmath.nstr(worst, 3)} "
          f"{'pass' if ok else 'FAIL'}")
    return ok


SUITES = {
    "les": suite_les,
    "patterson": suite_patterson,
    "residues": suite_residues,
    "local-factor": suite_local_factor,
}


def cmd_check(cfg: RunConfig, suite: str) -> bool:
    return SUITES[suite](cfg)


def cmd_divisor(cfg: RunConfig, bound: float) -> Path:
    if cfg.spectrum_path is None:
        raise PreconditionError("divisor needs --spectrum (a Laplace spectrum file)")
    spec = read_laplace_spectrum(cfg.spectrum_path)
    cfg.output_dir.mkdir(parents=True, exist_ok=True)
    path = write_divisor(full_divisor(cfg.genus, spec, bound),
                         cfg.output_dir / f"divisor-g{cfg.genus}.txt")
    print(f"divisor {path}")
    for lam in (-0.5, 0.5):
        print(dims_hyperfunction(cfg.genus, lam, spec).format_line())
    return path


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=40, help="decimal digits (>= 20)")
    common.add_argument("--group", default="bolza", help="'bolza' or a generator file")
    common.add_argument("--genus", type=int, default=2)
    common.add_argument("--Lmax", type=float, default=10.0, help="length cutoff")
    common.add_argument("--Kmax", type=int, default=20, help="local factor truncation")
    common.add_argument("--spectrum", help="Laplace spectrum file (mu/mult lines)")
    common.add_argument("--out", help=f"output directory (default ${OUT_ENV} or ./selberg-out)")
    common.add_argument("--force", action="store_true", help="recompute cached files")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--nmax", type=int, default=20, help="largest n in check suites")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="selberg", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="primitive length spectrum")
    z = sub.add_parser("zeta", parents=[common], help="zeta value or log-derivative")
    z.add_argument("lam", help="spectral parameter, e.g. 1.2 or 1.5+0.3j")
    z.add_argument("--mode", choices=("value", "logderiv"), default="value")
    z.add_argument("--sigma", choices=[s.value for s in SigmaParam], default="trivial")
    c = sub.add_parser("check", parents=[common], help="verification suites")
    c.add_argument("suite", choices=sorted(SUITES))
    d = sub.add_parser("divisor", parents=[common], help="divisor of the zeta function")
    d.add_argument("--bound", type=float, default=10.0, help="keep points with |lambda| <= bound")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = RunConfig.from_args(args)
        if args.command == "spectrum":
            cmd_spectrum(cfg)
        elif args.command == "zeta":
            cmd_zeta(cfg, _parse_lambda(args.lam), args.mode, args.sigma)
        elif args.command == "check":
            if not cmd_check(cfg, args.suite):
                return EXIT_VERIFICATION
        elif args.command == "divisor":
            cmd_divisor(cfg, args.bound)
    except PreconditionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (VerificationError, SelbergError) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
