"""
Command-line front end.

Every subcommand writes JSON to stdout (or ``--out``) and logs to stderr.
Exit codes: 0 all checks pass, 1 some check fails, 2 usage or schema error,
3 inconclusive.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from dataclasses import dataclass
from typing import Any, Sequence

from .azumaya import verify_kaneda_mod_J, verify_p2_neutralization
from .certificates import Certificate
from .cyclotomic import DEFAULT_PRIME_CAP, check_prime
from .higgs import HiggsModule, SigmaModule, higgs_to_sigma, roundtrip_check, sigma_to_higgs
from .qweyl import (
    DEFAULT_DEGREE_CAP,
    QWeylElement,
    commutator,
    is_central,
    is_central_syntactic,
    is_centralizing_Rx,
    is_centralizing_syntactic,
    reduce_mod_p,
    weyl_mul,
)
from .splitting import (
    DEFAULT_TRUNCATION,
    build_D,
    phi_of,
    phi_on_center,
    verify_mod_I_isomorphism,
    verify_surjectivity_trunc,
    verify_weyl_relation,
)
from .suite import DEFAULT_PRIMES, DEFAULT_SEED, exit_code, run_suite

log = logging.getLogger("weylsplit")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class Config:
    primes: tuple[int, ...]
    trunc: int = DEFAULT_TRUNCATION
    degree_cap: int = DEFAULT_DEGREE_CAP
    seed: int = DEFAULT_SEED
    out: str | None = None

    def __post_init__(self) -> None:
        for p in self.primes:
            check_prime(p, DEFAULT_PRIME_CAP)
        if self.trunc < 1:
            raise ValueError("--trunc must be >= 1")


def _parse_primes(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(s) for s in text.split(",") if s.strip())
    except ValueError:
        raise UsageError(f"--p expects comma-separated integers, got {text!r}") from None


def _load_input(args) -> Any:
    raw = args.json if args.json is not None else sys.stdin.read()
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON input: {exc}") from None


def _element(data: Any, cap: int) -> QWeylElement:
    """Element JSON, or {"p", "product": [...]}, or {"p", "word": "ddx"}."""
    if isinstance(data, dict) and "product" in data:
        p = check_prime(data["p"])
        out = QWeylElement.scalar(p, 1)
        for item in data["product"]:
            out = weyl_mul(out, _element(item, cap), degree_cap=cap)
        return out
    if isinstance(data, dict) and "word" in data:
        p = check_prime(data["p"])
        gens = {"x": QWeylElement.x(p), "d": QWeylElement.d(p)}
        out = QWeylElement.scalar(p, 1)
        for ch in data["word"]:
            if ch not in gens:
                raise ValueError(f"word letters must be 'x' or 'd', got {ch!r}")
            out = weyl_mul(out, gens[ch], degree_cap=cap)
        return out
    P = QWeylElement.from_json(data)
    check_prime(P.p)
    return P


def _element_out(P) -> dict:
    out = P.to_json()
    out["pretty"] = str(P)
    return out


def _emit(args, payload: Any) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _certs_payload(certs: Sequence[Certificate]) -> dict:
    return {"certificates": [c.to_json() for c in certs], "exit_code": exit_code(list(certs))}


def cmd_normalize(args, cfg: Config) -> int:
    _emit(args, _element_out(_element(_load_input(args), cfg.degree_cap)))
    return EXIT_OK


def cmd_commute(args, cfg: Config) -> int:
    data = _load_input(args)
    if not isinstance(data, dict) or not {"left", "right"} <= set(data):
        raise ValueError("commute expects {\"left\": element, \"right\": element}")
    P = _element(data["left"], cfg.degree_cap)
    Q = _element(data["right"], cfg.degree_cap)
    _emit(args, _element_out(commutator(P, Q)))
    return EXIT_OK


def cmd_center_check(args, cfg: Config) -> int:
    P = _element(_load_input(args), cfg.degree_cap)
    central, syn = is_central(P), is_central_syntactic(P)
    centralizing, syn2 = is_centralizing_Rx(P), is_centralizing_syntactic(P)
    _emit(
        args,
        {
            "element": str(P),
            "is_central": central,
            "is_central_syntactic": syn,
            "is_centralizing_Rx": centralizing,
            "is_centralizing_syntactic": syn2,
        },
    )
    return EXIT_OK if (central == syn and centralizing == syn2) else EXIT_FAIL


def cmd_reduce_modp(args, cfg: Config) -> int:
    _emit(args, _element_out(reduce_mod_p(_element(_load_input(args), cfg.degree_cap))))
    return EXIT_OK


def cmd_split_verify(args, cfg: Config) -> int:
    certs = []
    scale = 2 if args.mutate_d else 1
    for p in cfg.primes:
        ok = verify_weyl_relation(p, cfg.trunc, build_D(p, cfg.trunc, scale))
        certs.append(
            Certificate("verify_weyl_relation", {"p": p, "N": cfg.trunc}, "pass" if ok else "fail")
        )
        certs.append(verify_mod_I_isomorphism(p))
    _emit(args, _certs_payload(certs))
    return exit_code(certs)


def cmd_lift_verify(args, cfg: Config) -> int:
    certs = [verify_surjectivity_trunc(p, cfg.trunc) for p in cfg.primes]
    _emit(args, _certs_payload(certs))
    return exit_code(certs)


def cmd_phi(args, cfg: Config) -> int:
    certs = []
    values = {}
    for p in cfg.primes:
        res = phi_on_center(p, cfg.trunc)
        certs.append(res.certificate)
        values[str(p)] = {
            "phi_d": phi_of(QWeylElement.d(p), cfg.trunc).to_json(),
            "phi_d_pretty": str(phi_of(QWeylElement.d(p), cfg.trunc)),
            "phi_dp_pretty": str(res.image_dp),
        }
    payload = _certs_payload(certs)
    payload["values"] = values
    _emit(args, payload)
    return exit_code(certs)


def cmd_verify_azumaya(args, cfg: Config) -> int:
    if args.mode == "p2-explicit":
        if cfg.primes != (2,):
            raise UsageError("--mode p2-explicit requires --p 2")
        certs = [verify_p2_neutralization()]
    else:
        certs = [verify_kaneda_mod_J(p) for p in cfg.primes]
    _emit(args, _certs_payload(certs))
    return exit_code(certs)


def _module_hash(obj: dict) -> str:
    return hashlib.sha256(json.dumps(obj, sort_keys=True).encode()).hexdigest()


def cmd_higgs_to_sigma(args, cfg: Config) -> int:
    H = HiggsModule.from_json(_load_input(args))
    M = higgs_to_sigma(H)
    back = sigma_to_higgs(M)
    same = back.theta == H.theta
    _emit(
        args,
        {
            "module": M.to_json(),
            "roundtrip_hash": _module_hash(back.to_json()),
            "input_hash": _module_hash(H.to_json()),
            "roundtrip_equal": same,
        },
    )
    return EXIT_OK if same else EXIT_FAIL


def cmd_sigma_to_higgs(args, cfg: Config) -> int:
    M = SigmaModule.from_json(_load_input(args))
    H = sigma_to_higgs(M)
    _emit(args, {"module": H.to_json()})
    return EXIT_OK


def cmd_roundtrip_check(args, cfg: Config) -> int:
    cert = roundtrip_check(HiggsModule.from_json(_load_input(args)))
    _emit(args, _certs_payload([cert]))
    return exit_code([cert])


def cmd_verify_all(args, cfg: Config) -> int:
    certs = run_suite(cfg.primes, cfg.seed, corner_scale=2 if args.mutate_d else 1)
    _emit(args, _certs_payload(certs))
    return exit_code(certs)


COMMANDS = {
    "normalize": (cmd_normalize, "normal form of an element (or product / word)"),
    "commute": (cmd_commute, "commutator of two elements"),
    "center-check": (cmd_center_check, "center / centralizer membership, two ways"),
    "reduce-modp": (cmd_reduce_modp, "reduction to the classical Weyl algebra over F_p"),
    "split-verify": (cmd_split_verify, "D X - q X D = 1 and the mod-I determinant"),
    "lift-verify": (cmd_lift_verify, "lift every matrix unit through rho"),
    "phi": (cmd_phi, "values of Phi on d, x^p and d^p"),
    "verify-azumaya": (cmd_verify_azumaya, "explicit p = 2 neutralization or mod-p surjectivity"),
    "higgs-to-sigma": (cmd_higgs_to_sigma, "Higgs module -> module with sigma-derivation"),
    "sigma-to-higgs": (cmd_sigma_to_higgs, "module with sigma-derivation -> Higgs module"),
    "roundtrip-check": (cmd_roundtrip_check, "Higgs -> sigma -> Higgs on one module"),
    "verify-all": (cmd_verify_all, "run every check and print certificates"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", default=None, help="prime, or comma-separated primes")
    common.add_argument("--trunc", type=int, default=DEFAULT_TRUNCATION, help="xi truncation order N")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--degree-cap", type=int, default=DEFAULT_DEGREE_CAP)
    common.add_argument("--json", default=None, help="input JSON (default: read stdin)")
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="weylsplit", description=__doc__.strip().splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if name == "verify-azumaya":
            sp.add_argument("--mode", choices=["p2-explicit", "mod-p"], default="p2-explicit")
        if name in ("verify-all", "split-verify"):
            sp.add_argument(
                "--mutate-d",
                action="store_true",
                help="fault injection: double the corner entry of D",
            )
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    fn, _ = COMMANDS[args.command]
    try:
        if args.p is None:
            primes = DEFAULT_PRIMES if args.command == "verify-all" else (2,)
        else:
            primes = _parse_primes(args.p)
        if not primes:
            raise UsageError("--p is empty")
        cfg = Config(primes, args.trunc, args.degree_cap, args.seed, args.out)
        log.info("%s: p=%s trunc=%d seed=%d", args.command, ",".join(map(str, primes)), cfg.trunc, cfg.seed)
        code = fn(args, cfg)
        log.info("%s: exit %d", args.command, code)
        return code
    except (UsageError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
