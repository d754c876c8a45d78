"""Reading and writing games and reward tables.

Game files are JSON:

    {
      "players": 4,                    // or a list of label strings
      "number_mode": "rational",       // optional; "rational" (default) or "float"
      "values": {"1": 1, "1,2": 3, "1,2,3,4": 9, ...}
    }

A coalition key is the comma-joined, sorted labels of its members; the
empty coalition's key is "" and may be omitted (its value must be 0).
Every non-empty coalition needs exactly one entry. Numbers may be JSON
numbers, decimal strings, or "p/q" rational strings; in rational mode
decimals are read exactly (0.1 means one tenth, not the nearest double).

Serialization is canonical: keys ordered by coalition size then
lexicographically, two-space indent, the empty coalition omitted, and
"players" collapsed to a count when the labels are the default "1".."n".
Parsing a generated file and re-serializing reproduces it byte for byte.

Reward tables come in three shapes: "table" (CSV, one row per player, one
column per coalition), "long" (CSV triples player,coalition,reward), and
"json" (nested object, the only shape that also carries the per-coalition
efficient player). Rationals render as "p/q", floats with 12 significant
digits; rational tables round-trip losslessly.
"""

from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import FileFormatError, NotMonotoneError
from .games import Game, Scalar, members
from .solver import EfficientPlayerMap, RewardMatrix

RATIONAL = "rational"
FLOAT = "float"


def default_labels(n_players: int) -> tuple[str, ...]:
    return tuple(str(i + 1) for i in range(n_players))


def coalition_key(labels: tuple[str, ...], mask: int) -> str:
    return ",".join(sorted(labels[i] for i in members(mask)))


def _canonical_key_order(labels: tuple[str, ...], masks) -> list[int]:
    return sorted(masks, key=lambda m: (m.bit_count(), coalition_key(labels, m)))


@dataclass(frozen=True)
class GameDocument:
    """A parsed game plus the labeling and number mode it was stated in."""

    game: Game
    labels: tuple[str, ...]
    number_mode: str

    def key(self, mask: int) -> str:
        return coalition_key(self.labels, mask)


@dataclass(frozen=True)
class MatrixDocument:
    """A parsed reward table plus labels and, when known, efficient players."""

    matrix: RewardMatrix
    labels: tuple[str, ...]
    number_mode: str
    efficient_player: EfficientPlayerMap | None = None

    def key(self, mask: int) -> str:
        return coalition_key(self.labels, mask)


def _check_labels(labels) -> tuple[str, ...]:
    if not isinstance(labels, list) or not labels:
        raise FileFormatError('"players" must be a positive count or a list of labels')
    out = []
    for lab in labels:
        if not isinstance(lab, str) or not lab or "," in lab or lab != lab.strip():
            raise FileFormatError(f"bad player label {lab!r}")
        out.append(lab)
    if len(set(out)) != len(out):
        raise FileFormatError("player labels must be unique")
    return tuple(out)


def _labels_from_players_field(players) -> tuple[str, ...]:
    if isinstance(players, bool):
        raise FileFormatError('"players" must be a positive count or a list of labels')
    if isinstance(players, int):
        if players < 1:
            raise FileFormatError('"players" count must be at least 1')
        return default_labels(players)
    return _check_labels(players)


def _parse_coalition_key(key: str, index_of: dict[str, int]) -> int:
    if key == "":
        return 0
    mask = 0
    for part in key.split(","):
        if part not in index_of:
            raise FileFormatError(f"unknown player label {part!r} in coalition key {key!r}")
        bit = 1 << index_of[part]
        if mask & bit:
            raise FileFormatError(f"player {part!r} repeated in coalition key {key!r}")
        mask |= bit
    return mask


def _parse_number(raw, mode: str, where: str) -> Scalar:
    # json.loads is configured to hand decimals over as exact Fractions
    if isinstance(raw, bool):
        raise FileFormatError(f"bad number for {where}: {raw!r}")
    if isinstance(raw, (int, Fraction)):
        value = Fraction(raw)
    elif isinstance(raw, str):
        try:
            value = Fraction(raw.strip())
        except (ValueError, ZeroDivisionError):
            raise FileFormatError(f"bad number for {where}: {raw!r}") from None
    else:
        raise FileFormatError(f"bad number for {where}: {raw!r}")
    return float(value) if mode == FLOAT else value


def _render_number(x: Scalar) -> int | str | float:
    if isinstance(x, float):
        return x
    return int(x) if x.denominator == 1 else str(x)


def _json_loads(text: str):
    def reject_duplicates(pairs):
        seen = set()
        for k, _ in pairs:
            if k in seen:
                raise FileFormatError(f"duplicate key {k!r}")
            seen.add(k)
        return dict(pairs)

    try:
        return json.loads(
            text, parse_float=Fraction, object_pairs_hook=reject_duplicates
        )
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"not valid JSON: {exc}") from None


def parse_game(text: str) -> GameDocument:
    """Parse a game file; raises FileFormatError or a game validation error."""
    doc = _json_loads(text)
    if not isinstance(doc, dict):
        raise FileFormatError("game file must be a JSON object")
    unknown = set(doc) - {"players", "values", "number_mode"}
    if unknown:
        raise FileFormatError(f"unknown field(s): {', '.join(sorted(unknown))}")
    if "players" not in doc or "values" not in doc:
        raise FileFormatError('game file needs "players" and "values"')
    labels = _labels_from_players_field(doc["players"])
    n = len(labels)
    mode = doc.get("number_mode", RATIONAL)
    if mode not in (RATIONAL, FLOAT):
        raise FileFormatError(f'number_mode must be "rational" or "float", got {mode!r}')
    raw_values = doc["values"]
    if not isinstance(raw_values, dict):
        raise FileFormatError('"values" must be an object keyed by coalition')

    index_of = {lab: i for i, lab in enumerate(labels)}
    table: list[Scalar | None] = [None] * (1 << n)
    for key, raw in raw_values.items():
        mask = _parse_coalition_key(key, index_of)
        if table[mask] is not None:
            raise FileFormatError(
                f"duplicate coalition {coalition_key(labels, mask)!r}"
            )
        table[mask] = _parse_number(raw, mode, f"coalition {key!r}")
    if table[0] is None:
        table[0] = 0.0 if mode == FLOAT else Fraction(0)
    for mask, x in enumerate(table):
        if x is None:
            raise FileFormatError(
                f"missing coalition value {coalition_key(labels, mask)!r}"
            )
    try:
        game = Game(n, tuple(table))
    except NotMonotoneError as exc:
        sub = coalition_key(labels, exc.subset) or "(empty)"
        sup = coalition_key(labels, exc.superset)
        raise NotMonotoneError(
            exc.subset,
            exc.superset,
            f"not monotone: coalition {{{sub}}} is worth more than its superset {{{sup}}}",
        ) from None
    return GameDocument(game, labels, mode)


def serialize_game(doc: GameDocument) -> str:
    """Canonical, byte-stable JSON for a game document."""
    labels = doc.labels
    game = doc.game
    out: dict = {}
    if labels == default_labels(game.n_players):
        out["players"] = game.n_players
    else:
        out["players"] = list(labels)
    if doc.number_mode == FLOAT:
        out["number_mode"] = FLOAT
    values = {}
    for mask in _canonical_key_order(labels, range(1, game.num_coalitions)):
        values[coalition_key(labels, mask)] = _render_number(game.values[mask])
    out["values"] = values
    return json.dumps(out, indent=2) + "\n"


def format_scalar(x: Scalar) -> str:
    """Render one number: exact rationals as p/q, floats to 12 significant digits."""
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def serialize_matrix(doc: MatrixDocument, form: str = "table") -> str:
    """Render a reward table as "table" or "long" CSV, or as JSON."""
    labels = doc.labels
    matrix = doc.matrix
    if len(labels) != matrix.n_players:
        raise FileFormatError("label count does not match the matrix")
    order = _canonical_key_order(labels, range(matrix.num_coalitions))

    if form == "json":
        out: dict = {}
        if labels == default_labels(matrix.n_players):
            out["players"] = matrix.n_players
        else:
            out["players"] = list(labels)
        out["number_mode"] = RATIONAL if matrix.exact else FLOAT
        out["rewards"] = {
            coalition_key(labels, mask): {
                labels[i]: _render_number(matrix.rewards[i][mask])
                for i in range(matrix.n_players)
            }
            for mask in order
        }
        if doc.efficient_player is not None:
            out["efficient_player"] = {
                coalition_key(labels, mask): labels[doc.efficient_player[mask]]
                for mask in _canonical_key_order(labels, doc.efficient_player)
            }
        return json.dumps(out, indent=2) + "\n"

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if form == "table":
        writer.writerow(["player"] + [coalition_key(labels, m) for m in order])
        for i in range(matrix.n_players):
            writer.writerow(
                [labels[i]] + [format_scalar(matrix.rewards[i][m]) for m in order]
            )
    elif form == "long":
        writer.writerow(["player", "coalition", "reward"])
        for i in range(matrix.n_players):
            for mask in order:
                writer.writerow(
                    [labels[i], coalition_key(labels, mask), format_scalar(matrix.rewards[i][mask])]
                )
    else:
        raise FileFormatError(f'unknown format {form!r}; expected table, long, or json')
    return buf.getvalue()


def _parse_csv_number(token: str, where: str) -> Scalar:
    token = token.strip()
    if not token:
        raise FileFormatError(f"empty number for {where}")
    try:
        if "." in token or "e" in token or "E" in token:
            x = float(token)
            if not math.isfinite(x):
                raise ValueError
            return x
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise FileFormatError(f"bad number for {where}: {token!r}") from None


def _finish_matrix(
    labels: tuple[str, ...],
    table: dict[tuple[int, int], Scalar],
    number_mode: str | None,
    efficient: EfficientPlayerMap | None,
) -> MatrixDocument:
    n = len(labels)
    width = 1 << n
    missing = [
        (i, m) for i in range(n) for m in range(width) if (i, m) not in table
    ]
    if missing:
        i, m = missing[0]
        raise FileFormatError(
            f"missing reward for player {labels[i]!r}, coalition "
            f"{coalition_key(labels, m)!r}"
        )
    is_float = number_mode == FLOAT or any(
        isinstance(x, float) for x in table.values()
    )
    rows = tuple(
        tuple(
            float(table[(i, m)]) if is_float else Fraction(table[(i, m)])
            for m in range(width)
        )
        for i in range(n)
    )
    return MatrixDocument(
        RewardMatrix(n, rows), labels, FLOAT if is_float else RATIONAL, efficient
    )


def _parse_matrix_json(doc: dict) -> MatrixDocument:
    unknown = set(doc) - {"players", "rewards", "number_mode", "efficient_player"}
    if unknown:
        raise FileFormatError(f"unknown field(s): {', '.join(sorted(unknown))}")
    if "players" not in doc or "rewards" not in doc:
        raise FileFormatError('reward table needs "players" and "rewards"')
    labels = _labels_from_players_field(doc["players"])
    n = len(labels)
    mode = doc.get("number_mode", RATIONAL)
    if mode not in (RATIONAL, FLOAT):
        raise FileFormatError(f'number_mode must be "rational" or "float", got {mode!r}')
    index_of = {lab: i for i, lab in enumerate(labels)}
    rewards = doc["rewards"]
    if not isinstance(rewards, dict):
        raise FileFormatError('"rewards" must be an object keyed by coalition')
    table: dict[tuple[int, int], Scalar] = {}
    for key, per_player in rewards.items():
        mask = _parse_coalition_key(key, index_of)
        if not isinstance(per_player, dict):
            raise FileFormatError(f"rewards for coalition {key!r} must be an object")
        for lab, raw in per_player.items():
            if lab not in index_of:
                raise FileFormatError(f"unknown player label {lab!r}")
            cell = (index_of[lab], mask)
            if cell in table:
                raise FileFormatError(
                    f"duplicate reward for player {lab!r} in coalition {key!r}"
                )
            table[cell] = _parse_number(raw, mode, f"player {lab!r} in coalition {key!r}")
    efficient: EfficientPlayerMap | None = None
    if "efficient_player" in doc:
        efficient = {}
        raw_map = doc["efficient_player"]
        if not isinstance(raw_map, dict):
            raise FileFormatError('"efficient_player" must be an object')
        for key, lab in raw_map.items():
            mask = _parse_coalition_key(key, index_of)
            if not isinstance(lab, str) or lab not in index_of:
                raise FileFormatError(f"unknown player label {lab!r}")
            efficient[mask] = index_of[lab]
    return _finish_matrix(labels, table, mode, efficient)


def _parse_matrix_table_csv(rows: list[list[str]]) -> MatrixDocument:
    header = rows[0]
    if not header or header[0] != "player":
        raise FileFormatError('wide CSV must start with a "player" header column')
    body = [r for r in rows[1:] if r]
    labels = _check_labels([r[0] for r in body])
    index_of = {lab: i for i, lab in enumerate(labels)}
    masks = [_parse_coalition_key(k, index_of) for k in header[1:]]
    if len(set(masks)) != len(masks):
        raise FileFormatError("duplicate coalition column")
    table: dict[tuple[int, int], Scalar] = {}
    for row in body:
        if len(row) != len(header):
            raise FileFormatError(f"row for player {row[0]!r} has the wrong width")
        i = index_of[row[0]]
        for mask, token in zip(masks, row[1:]):
            table[(i, mask)] = _parse_csv_number(
                token, f"player {row[0]!r}, coalition mask {mask}"
            )
    return _finish_matrix(labels, table, None, None)


def _parse_matrix_long_csv(rows: list[list[str]]) -> MatrixDocument:
    body = [r for r in rows[1:] if r]
    seen_labels: list[str] = []
    for r in body:
        if len(r) != 3:
            raise FileFormatError("long CSV rows must be player,coalition,reward")
        if r[0] not in seen_labels:
            seen_labels.append(r[0])
    labels = _check_labels(seen_labels)
    index_of = {lab: i for i, lab in enumerate(labels)}
    table: dict[tuple[int, int], Scalar] = {}
    for lab, key, token in body:
        cell = (index_of[lab], _parse_coalition_key(key, index_of))
        if cell in table:
            raise FileFormatError(
                f"duplicate reward for player {lab!r}, coalition {key!r}"
            )
        table[cell] = _parse_csv_number(token, f"player {lab!r}, coalition {key!r}")
    return _finish_matrix(labels, table, None, None)


def parse_matrix(text: str) -> MatrixDocument:
    """Parse a reward table in any of the three shapes (detected from content)."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        doc = _json_loads(text)
        if not isinstance(doc, dict):
            raise FileFormatError("reward table file must be a JSON object")
        return _parse_matrix_json(doc)
    rows = list(csv.reader(io.StringIO(text)))
    rows = [r for r in rows if r]
    if not rows:
        raise FileFormatError("empty reward table file")
    if [c.strip() for c in rows[0]] == ["player", "coalition", "reward"]:
        return _parse_matrix_long_csv(rows)
    return _parse_matrix_table_csv(rows)


def align_matrix_labels(
    doc: MatrixDocument, labels: tuple[str, ...]
) -> MatrixDocument:
    """Reorder a parsed reward table to match another label ordering.

    Rows and coalition masks are permuted together so entry meanings are
    preserved. The label sets must coincide.
    """
    if set(doc.labels) != set(labels):
        raise FileFormatError(
            "reward table player labels do not match the game's labels"
        )
    if doc.labels == labels:
        return doc
    n = len(labels)
    target_index = {lab: i for i, lab in enumerate(labels)}
    perm = [target_index[lab] for lab in doc.labels]

    def remap(mask: int) -> int:
        out = 0
        for b in members(mask):
            out |= 1 << perm[b]
        return out

    width = 1 << n
    rows: list[list[Scalar]] = [[0] * width for _ in range(n)]
    for i in range(n):
        for mask in range(width):
            rows[perm[i]][remap(mask)] = doc.matrix.rewards[i][mask]
    efficient = None
    if doc.efficient_player is not None:
        efficient = {remap(m): perm[k] for m, k in doc.efficient_player.items()}
    return MatrixDocument(
        RewardMatrix(n, tuple(tuple(r) for r in rows)),
        labels,
        doc.number_mode,
        efficient,
    )


_RHO_SYMBOLIC = re.compile(
    r"^log2\((?P<arg>\d+(?:/\d+)?)\)(?:\s*-\s*(?P<sub>\d+(?:/\d+)?))?$"
)


def parse_rho(text: str) -> Scalar:
    """Parse a scaling exponent: "1", "2/3", "0.75", or "log2(3)-1".

    Plain rational text stays exact; the log2 form evaluates to a float.
    Range is checked by the baseline itself, not here.
    """
    token = text.strip()
    m = _RHO_SYMBOLIC.match(token)
    if m:
        arg = Fraction(m.group("arg"))
        if arg <= 0:
            raise FileFormatError(f"bad rho {text!r}: log2 needs a positive argument")
        sub = Fraction(m.group("sub")) if m.group("sub") else Fraction(0)
        return math.log2(arg) - float(sub)
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise FileFormatError(
            f"bad rho {text!r}: use a decimal, p/q, or log2(k)-m"
        ) from None
