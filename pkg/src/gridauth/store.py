"""Sorted credential database.

Passwords are stored recoverably (plaintext in format v1), NOT hashed: the
scheme requires the server to re-encode the stored password character by
character under every fresh grid, so one-way hashing is impossible. The trust
model is server-side secrecy — files are written with owner-only permissions
and the repo docs say so prominently. At-rest encryption is out of scope for
v1.

Records are kept sorted by password under charset-index lexicographic order
(the canonical order shared with the verifiers). Mutations are
copy-on-write: ``add``/``remove`` return a new store, so concurrent readers
always see a consistent snapshot; persistence is write-temp-then-rename.

File format (versioned structured text, line-oriented)::

    gridauth-store v1
    charset-id default80
    charset ABC...xyz...
    mode password-only | username-scoped
    --
    <password>                 (one record per line; when a username is
    <username>\t<password>      present it is TAB-separated — TAB can never
    ...                         occur in a password or username)
"""

from __future__ import annotations

import os
import re
import tempfile
from bisect import bisect_left
from dataclasses import dataclass, field

from .charset import CharacterSet, violation
from .codegrid import MAX_PASSWORD_LENGTH
from .errors import PasswordError, StoreError

FORMAT_HEADER = "gridauth-store v1"
MODE_PASSWORD_ONLY = "password-only"
MODE_USERNAME_SCOPED = "username-scoped"
MODES = (MODE_PASSWORD_ONLY, MODE_USERNAME_SCOPED)

_USERNAME_RE = re.compile(r"^[A-Za-z0-9._-]{1,64}$")


@dataclass(frozen=True)
class CredentialRecord:
    password: str
    username: str | None = None


def validate_password(password: str, charset: CharacterSet) -> None:
    """Reject (never remap) passwords the charset cannot express."""
    if len(password) == 0:
        raise PasswordError("empty-password", "password must be non-empty")
    if len(password) > MAX_PASSWORD_LENGTH:
        raise PasswordError(
            "over-length", f"password longer than {MAX_PASSWORD_LENGTH} characters"
        )
    if " " in password:
        raise PasswordError("contains-space", "password must not contain spaces")
    for ch in password:
        if ch not in charset:
            raise PasswordError(
                "invalid-character", f"character {ch!r} is not in charset {charset.id!r}"
            )


def validate_username(username: str) -> None:
    if not _USERNAME_RE.match(username):
        raise StoreError(
            "invalid-username",
            "username must be 1-64 characters from [A-Za-z0-9._-]",
        )


@dataclass(frozen=True)
class CredentialStore:
    """Immutable snapshot of the credential database."""

    charset: CharacterSet
    mode: str = MODE_PASSWORD_ONLY
    records: tuple[CredentialRecord, ...] = ()
    _keys: tuple[tuple[int, ...], ...] = field(default=(), repr=False)

    @classmethod
    def empty(cls, charset: CharacterSet, mode: str = MODE_PASSWORD_ONLY) -> "CredentialStore":
        if mode not in MODES:
            raise StoreError("invalid-mode", f"mode must be one of {MODES}")
        return cls(charset=charset, mode=mode)

    def __len__(self) -> int:
        return len(self.records)

    def _sort_key(self, record: CredentialRecord) -> tuple:
        return (self.charset.password_key(record.password), record.username or "")

    def add(self, record: CredentialRecord) -> "CredentialStore":
        """Insert preserving sort order; duplicates are rejected, not merged."""
        validate_password(record.password, self.charset)
        if record.username is not None:
            validate_username(record.username)
        if self.mode == MODE_USERNAME_SCOPED:
            if record.username is None:
                raise StoreError(
                    "missing-username", "username-scoped store requires a username"
                )
            if any(r.username == record.username for r in self.records):
                raise StoreError(
                    "duplicate-username", f"username {record.username!r} already exists"
                )
        else:
            if self.lookup(record.password):
                raise StoreError(
                    "duplicate-password", "password already stored (would be ambiguous)"
                )
        if record in self.records:
            raise StoreError("duplicate-password", "exact duplicate record")
        merged = sorted((*self.records, record), key=self._sort_key)
        return self._with_records(tuple(merged))

    def remove(self, selector: str, by: str = "password") -> "CredentialStore":
        """Remove the record matching ``selector`` (a password or a username)."""
        if by not in ("password", "username"):
            raise StoreError("invalid-selector", "by must be 'password' or 'username'")
        keep = [
            r
            for r in self.records
            if (r.password if by == "password" else r.username) != selector
        ]
        if len(keep) == len(self.records):
            raise StoreError("not-found", f"no record with that {by}")
        return self._with_records(tuple(keep))

    def _with_records(self, records: tuple[CredentialRecord, ...]) -> "CredentialStore":
        keys = tuple(self.charset.password_key(r.password) for r in records)
        return CredentialStore(
            charset=self.charset, mode=self.mode, records=records, _keys=keys
        )

    def lookup(self, password: str) -> bool:
        """Binary search over the sorted records, O(log p) comparisons."""
        try:
            key = self.charset.password_key(password)
        except KeyError:
            return False  # out-of-charset password cannot be stored
        i = bisect_left(self._keys, key)
        return i < len(self._keys) and self._keys[i] == key

    def find_username(self, username: str) -> CredentialRecord | None:
        for r in self.records:
            if r.username == username:
                return r
        return None

    # -- persistence ---------------------------------------------------

    def save(self, path: str | os.PathLike) -> None:
        """Atomic write (temp file + rename), owner-only permissions."""
        path = os.fspath(path)
        lines = [
            FORMAT_HEADER,
            f"charset-id {self.charset.id}",
            f"charset {self.charset.chars}",
            f"mode {self.mode}",
            "--",
        ]
        for r in self.records:
            lines.append(f"{r.username}\t{r.password}" if r.username else r.password)
        data = "\n".join(lines) + "\n"
        dirname = os.path.dirname(path) or "."
        fd, tmp = tempfile.mkstemp(dir=dirname, prefix=".gridauth-store-")
        try:
            os.fchmod(fd, 0o600)
            with os.fdopen(fd, "w", encoding="ascii") as f:
                f.write(data)
            os.replace(tmp, path)
        except BaseException:
            os.unlink(tmp)
            raise

    @classmethod
    def load(
        cls, path: str | os.PathLike, expect_charset: CharacterSet | None = None
    ) -> "CredentialStore":
        """Parse and re-validate; reject rather than silently repair."""
        path = os.fspath(path)
        with open(path, encoding="ascii") as f:
            lines = f.read().splitlines()

        def fail(lineno: int, detail: str):
            raise StoreError("parse-error", f"{path}:{lineno}: {detail}")

        if len(lines) < 5 or lines[0] != FORMAT_HEADER:
            fail(1, f"expected header {FORMAT_HEADER!r}")
        header: dict[str, str] = {}
        for n, line in enumerate(lines[1:4], start=2):
            field_name, _, value = line.partition(" ")
            if field_name not in ("charset-id", "charset", "mode") or not value:
                fail(n, f"bad header line {line!r}")
            header[field_name] = value
        if lines[4] != "--":
            fail(5, "expected '--' separator after header")
        if header["mode"] not in MODES:
            fail(4, f"unknown mode {header['mode']!r}")

        charset = CharacterSet(chars=header["charset"], id=header["charset-id"])
        code = violation(charset)
        if code is not None:
            fail(3, f"embedded charset invalid: {code}")
        if expect_charset is not None and charset.chars != expect_charset.chars:
            raise StoreError(
                "charset-mismatch",
                f"{path}: file charset {charset.id!r} differs from expected "
                f"{expect_charset.id!r}",
            )

        store = cls.empty(charset, header["mode"])
        records = []
        for n, line in enumerate(lines[5:], start=6):
            if not line:
                fail(n, "blank record line")
            username: str | None
            if "\t" in line:
                username, _, password = line.partition("\t")
            else:
                username, password = None, line
            try:
                validate_password(password, charset)
                if username is not None:
                    validate_username(username)
                if store.mode == MODE_USERNAME_SCOPED and username is None:
                    raise StoreError("missing-username", "record has no username")
            except (PasswordError, StoreError) as e:
                fail(n, f"record {password!r}: {e.code}")
            records.append(CredentialRecord(password=password, username=username))

        loaded = store._with_records(tuple(records))
        keys = [loaded._sort_key(r) for r in records]
        if keys != sorted(keys):
            raise StoreError("unsorted-file", f"{path}: records are not in sorted order")
        seen_users = set()
        seen_pw = set()
        for n, r in enumerate(records):
            if loaded.mode == MODE_USERNAME_SCOPED:
                if r.username in seen_users:
                    raise StoreError(
                        "parse-error", f"{path}: duplicate username {r.username!r}"
                    )
                seen_users.add(r.username)
            else:
                if r.password in seen_pw:
                    raise StoreError("parse-error", f"{path}: duplicate password record")
                seen_pw.add(r.password)
        return loaded
