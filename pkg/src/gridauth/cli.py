"""Operator command line.

Subcommands: store management (init-db, add-user, remove-user, list-users),
a grid demo/encoder (demo-grid), the observation-attack runner
(simulate-attack), the naive-vs-inverted verifier cross-check harness
(crosscheck), and the HTTP service launcher (serve).

Exit codes: 0 success, 1 domain/user error (including crosscheck divergence),
2 I/O or environment error. Passwords are read from a no-echo prompt on a
terminal, or from stdin when piped, so they never appear in argv or shell
history.
"""

from __future__ import annotations

import argparse
import csv
import getpass
import itertools
import random
import json
import sys

from .attack import (
    expected_survivors,
    mean_survivors_monte_carlo,
    simulate,
    simulate_weak_observer,
)
from .charset import CharacterSet, default_charset, validate
from .codegrid import CodeGrid, DigitSequence, generate
from .decoder import decode_sequence
from .errors import GridAuthError
from .fixtures import FIXTURE_IDS, by_name
from .store import (
    MODE_PASSWORD_ONLY,
    MODES,
    CredentialRecord,
    CredentialStore,
)
from .verifier import AuthResult, verify_inverted, verify_naive

GRID_COLUMNS = 13  # cells per printed row, matching the login form layout


def _resolve_charset(args: argparse.Namespace) -> CharacterSet:
    if getattr(args, "charset_chars", None):
        cs = CharacterSet(chars=args.charset_chars, id=args.charset_id or "custom")
    elif args.charset == "default80":
        cs = default_charset()
    else:
        raise GridAuthError("unknown-charset", f"unknown charset {args.charset!r}")
    validate(cs)
    return cs


def _read_password(prompt: str = "Password: ") -> str:
    if sys.stdin.isatty():
        return getpass.getpass(prompt)
    line = sys.stdin.readline()
    if not line:
        raise GridAuthError("empty-password", "no password on stdin")
    return line.rstrip("\n")


# -- store management ----------------------------------------------------


def cmd_init_db(args) -> int:
    import os

    if os.path.exists(args.store):
        raise GridAuthError("store-exists", f"{args.store} already exists; refusing to overwrite")
    store = CredentialStore.empty(_resolve_charset(args), args.mode)
    store.save(args.store)
    print(f"created {args.store} (charset {store.charset.id}, mode {store.mode})")
    return 0


def cmd_add_user(args) -> int:
    store = CredentialStore.load(args.store)
    password = _read_password()
    record = CredentialRecord(password=password, username=args.username)
    store = store.add(record)
    store.save(args.store)
    who = args.username or "(password-only record)"
    print(f"added {who}; store now has {len(store)} record(s)")
    return 0


def cmd_remove_user(args) -> int:
    store = CredentialStore.load(args.store)
    if args.username:
        store = store.remove(args.username, by="username")
    else:
        store = store.remove(_read_password("Password to remove: "), by="password")
    store.save(args.store)
    print(f"removed; store now has {len(store)} record(s)")
    return 0


def cmd_list_users(args) -> int:
    store = CredentialStore.load(args.store)
    print(f"store {args.store}: charset {store.charset.id}, mode {store.mode}, "
          f"{len(store)} record(s)")
    for r in store.records:
        masked = r.password[0] + "*" * (len(r.password) - 1)
        print(f"  {r.username}" if r.username else f"  {masked}")
    return 0


# -- demo grid -----------------------------------------------------------


def _format_grid(grid: CodeGrid) -> str:
    cells = [f"{ch} {code}" for ch, code in grid.items()]
    lines = []
    for i in range(0, len(cells), GRID_COLUMNS):
        lines.append("  ".join(cells[i : i + GRID_COLUMNS]))
    counts = {y: grid.codes.count(y) for y in range(10)}
    freq = "  ".join(f"{y}x{c}" for y, c in sorted(counts.items()))
    lines.append("")
    lines.append(f"|X| = {len(grid.charset)}, d = {grid.charset.d}; label frequency: {freq}")
    return "\n".join(lines)


def cmd_demo_grid(args) -> int:
    if args.fixture:
        grid = by_name(args.fixture)
    else:
        seed = args.seed if args.seed is not None else random.SystemRandom().randrange(2**63)
        grid = generate(_resolve_charset(args), random.Random(seed))
    if args.encode:
        print(grid.encode(args.encode))
        return 0
    if args.json:
        print(json.dumps([{"ch": ch, "code": code} for ch, code in grid.items()]))
        return 0
    print(_format_grid(grid))
    return 0


# -- attack simulation ---------------------------------------------------


def cmd_simulate_attack(args) -> int:
    k, trials = args.k, args.trials
    if k < 1 or trials < 1:
        raise GridAuthError("invalid-parameters", "--k and --trials must be >= 1")
    charset = default_charset()
    rng = random.Random(args.seed)

    if args.observer == "weak":
        password = args.password or _random_password(charset, args.random_length, rng)
        report = simulate_weak_observer(password, k, rng, charset)
        print(f"weak observer, {k} session(s): per-position survivors stay at "
              f"|X| = {len(charset)}; only the length ({report.length}) is revealed")
        if report.repeated_position_groups:
            print(f"repeated-character positions visible as equal digit columns: "
                  f"{report.repeated_position_groups}")
        return 0

    if args.password:
        means, stderrs = _pipeline_means(args.password, k, trials, rng, charset)
    else:
        means, stderrs = mean_survivors_monte_carlo(
            k, trials, charset_size=len(charset), seed=args.seed
        )
    rows = []
    for i in range(k):
        closed = expected_survivors(len(charset), charset.d, i + 1)
        rows.append((i + 1, means[i], closed, stderrs[i]))

    if args.csv:
        with open(args.csv, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(["k", "mean_survivors", "closed_form", "stderr"])
            writer.writerows(rows)
        print(f"wrote {args.csv}")
        return 0
    print(f"{'k':>3}  {'mean_survivors':>14}  {'closed_form':>11}  {'stderr':>9}")
    for k_i, mean, closed, se in rows:
        print(f"{k_i:>3}  {mean:>14.3f}  {closed:>11.4f}  {se:>9.5f}")
    return 0


def _random_password(charset: CharacterSet, length: int, rng: random.Random) -> str:
    return "".join(rng.choice(charset.chars) for _ in range(length))


def _pipeline_means(password, sessions, trials, rng, charset):
    """Per-trial simulate() runs; mean/stderr over per-trial mean survivors."""
    per_k: list[list[float]] = [[] for _ in range(sessions)]
    for _ in range(trials):
        _, summary = simulate(password, sessions, rng, charset)
        for i, m in enumerate(summary.mean_survivors_by_k):
            per_k[i].append(m)
    means, stderrs = [], []
    for samples in per_k:
        mean = sum(samples) / len(samples)
        if len(samples) > 1:
            var = sum((s - mean) ** 2 for s in samples) / (len(samples) - 1)
            se = (var / len(samples)) ** 0.5
        else:
            se = 0.0
        means.append(mean)
        stderrs.append(se)
    return means, stderrs


# -- verifier cross-check ------------------------------------------------


def _naive_broken_tiebreak(digits, grid, store) -> AuthResult:
    """Self-test saboteur: enumerate candidates in reversed order, so with
    colliding stored passwords the wrong (lexicographically largest) one
    wins. Used to prove the harness detects divergence."""
    candidate_lists = [tuple(reversed(c.chars)) for c in decode_sequence(grid, digits)]
    examined = 0
    for combo in itertools.product(*candidate_lists):
        examined += 1
        if store.lookup("".join(combo)):
            return AuthResult("accepted", "".join(combo), examined)
    return AuthResult("rejected", None, examined)


def _random_store(charset, rng, max_records, max_n):
    store = CredentialStore.empty(charset, MODE_PASSWORD_ONLY)
    for _ in range(rng.randrange(max_records + 1)):
        pw = _random_password(charset, rng.randint(1, max_n), rng)
        try:
            store = store.add(CredentialRecord(password=pw))
        except GridAuthError:
            pass  # duplicate draw, skip
    return store


def _collision_case(charset, rng, max_n):
    """Grid + digit string + store holding two distinct colliding passwords."""
    grid = generate(charset, rng)
    n = rng.randint(2, max_n) if max_n >= 2 else 1
    digits = DigitSequence(tuple(rng.randrange(10) for _ in range(n)))
    lists = [c.chars for c in decode_sequence(grid, digits)]
    combos = list(itertools.product(*lists))
    first, last = "".join(combos[0]), "".join(combos[-1])
    store = CredentialStore.empty(charset, MODE_PASSWORD_ONLY)
    store = store.add(CredentialRecord(password=first))
    if first != last:
        store = store.add(CredentialRecord(password=last))
    return grid, digits, store


def cmd_crosscheck(args) -> int:
    if args.charset_size not in (10, 20):
        raise GridAuthError(
            "invalid-parameters", "--charset-size must be 10 or 20 (multiple of 10, <= 20)"
        )
    if not 1 <= args.max_n <= 4:
        raise GridAuthError("invalid-parameters", "--max-n must be in 1..4")
    charset = CharacterSet(
        chars=default_charset().chars[: args.charset_size], id=f"sub{args.charset_size}"
    )
    rng = random.Random(args.seed)
    naive = _naive_broken_tiebreak if args.break_tiebreak else verify_naive

    for case in range(args.trials):
        if args.break_tiebreak:
            grid, digits, store = _collision_case(charset, rng, args.max_n)
        else:
            store = _random_store(charset, rng, max_records=8, max_n=args.max_n)
            grid = generate(charset, rng)
            if len(store) and rng.random() < 0.5:
                target = rng.choice(store.records).password
                digits = grid.encode(target)
            else:
                n = rng.randint(1, args.max_n)
                digits = DigitSequence(tuple(rng.randrange(10) for _ in range(n)))
        a = naive(digits, grid, store)
        b = verify_inverted(digits, grid, store)
        if (a.outcome, a.matched_password) != (b.outcome, b.matched_password):
            print("DIVERGENCE FOUND")
            print(f"  case        : {case}")
            print(f"  charset     : {charset.chars!r}")
            print(f"  grid codes  : {grid.codes}")
            print(f"  digits      : {digits}")
            print(f"  store       : {[r.password for r in store.records]}")
            print(f"  enumerating : {a.outcome} matched={a.matched_password!r}")
            print(f"  inverted    : {b.outcome} matched={b.matched_password!r}")
            return 1
    print(f"crosscheck ok: {args.trials} cases, |X|={args.charset_size}, "
          f"n<={args.max_n}, no divergence")
    return 0


# -- service -------------------------------------------------------------


def cmd_serve(args) -> int:
    import uvicorn

    from .config import load_config
    from .service import AuthService
    from .webapp import create_app

    config = load_config(args.config)
    overrides = {
        "listen": args.listen,
        "store_path": args.store,
        "challenge_ttl_s": args.ttl,
        "rate_limit_per_minute": args.rate_limit,
        "static_dir": args.static_dir,
    }
    from dataclasses import replace

    config = replace(config, **{k: v for k, v in overrides.items() if v is not None})
    expect = default_charset() if config.charset_id == "default80" else None
    store = CredentialStore.load(config.store_path, expect_charset=expect)
    service = AuthService(
        store,
        challenge_ttl_s=config.challenge_ttl_s,
        session_ttl_s=config.session_ttl_s,
    )
    app = create_app(service, config)
    print(f"serving on http://{config.listen} (store: {config.store_path}, "
          f"{len(store)} record(s))")
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    return 0


# -- argument parsing ----------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridauth",
        description="Coded-grid password authentication toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_store_arg(p):
        p.add_argument("--store", required=True, help="credential store file")

    p = sub.add_parser("init-db", help="create an empty credential store")
    add_store_arg(p)
    p.add_argument("--charset", default="default80")
    p.add_argument("--charset-chars", help="explicit characters for a custom charset")
    p.add_argument("--charset-id", help="id recorded for a custom charset")
    p.add_argument("--mode", choices=MODES, default=MODE_PASSWORD_ONLY)
    p.set_defaults(func=cmd_init_db)

    p = sub.add_parser("add-user", help="add a record (password prompted, no echo)")
    add_store_arg(p)
    p.add_argument("--username", help="required when the store is username-scoped")
    p.set_defaults(func=cmd_add_user)

    p = sub.add_parser("remove-user", help="remove a record")
    add_store_arg(p)
    p.add_argument("--username", help="remove by username (otherwise prompts for password)")
    p.set_defaults(func=cmd_remove_user)

    p = sub.add_parser("list-users", help="list usernames / masked passwords")
    add_store_arg(p)
    p.set_defaults(func=cmd_list_users)

    p = sub.add_parser("demo-grid", help="print a code grid as an aligned table")
    p.add_argument("--seed", type=int, help="pin the generated grid")
    p.add_argument("--fixture", choices=FIXTURE_IDS, help="use a pinned fixture grid")
    p.add_argument("--encode", metavar="PASSWORD",
                   help="print the digit sequence for PASSWORD under the grid")
    p.add_argument("--json", action="store_true", help="machine-readable cell list")
    p.add_argument("--charset", default="default80")
    p.add_argument("--charset-chars")
    p.add_argument("--charset-id")
    p.set_defaults(func=cmd_demo_grid)

    p = sub.add_parser("simulate-attack", help="observation-attack convergence run")
    p.add_argument("--k", type=int, required=True, help="observed sessions per trial")
    p.add_argument("--trials", type=int, default=1000)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--password", help="attack this password (real pipeline)")
    group.add_argument("--random-length", type=int, default=8,
                       help="random true characters, vectorized trials (default)")
    p.add_argument("--observer", choices=("strong", "weak"), default="strong",
                   help="strong sees grid+digits; weak sees digits only")
    p.add_argument("--seed", type=int)
    p.add_argument("--csv", metavar="PATH", help="write (k, mean, closed_form, stderr) rows")
    p.set_defaults(func=cmd_simulate_attack)

    p = sub.add_parser("crosscheck",
                       help="exhaustively compare the enumerating and inverted verifiers")
    p.add_argument("--charset-size", type=int, default=20, choices=(10, 20))
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--break-tiebreak", action="store_true",
                   help="self-test: sabotage the enumeration order and prove divergence is caught")
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("serve", help="run the HTTP authentication service")
    p.add_argument("--config", help="JSON config file")
    p.add_argument("--listen", help="host:port (default 127.0.0.1:8000)")
    p.add_argument("--store", help="credential store file")
    p.add_argument("--ttl", type=float, help="challenge TTL seconds")
    p.add_argument("--rate-limit", type=int, help="attempts per minute per address")
    p.add_argument("--static-dir", help="serve the login UI from this directory")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except GridAuthError as e:
        print(f"error: {e.code}: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"i/o error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
