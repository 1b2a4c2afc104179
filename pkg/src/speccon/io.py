"""Instance documents: parsing, canonical serialization, random generation.

An instance document is a JSON object with three fields:

    {
      "channels": ["a", "b"],
      "users": [
        {"name": "u0", "spectrum_map": ["a"], "budget": 1},
        {"name": "u1", "spectrum_map": ["a", "b"], "budget": 1}
      ],
      "potential_graph": {"edges": [["u0", "u1"]]}
    }

``potential_graph`` is either the string "complete" or an object with an
``edges`` list of user-name pairs (a bare list of pairs is also accepted on
input).  Keys starting with "_" are ignored everywhere, so generators can
attach metadata without breaking round trips.  At most 62 channels are
accepted so channel sets pack into one machine word inside the solvers.
"""

from __future__ import annotations

import json
import random
from typing import Any

from .model import CognitiveRadioNetwork, validate

MAX_CHANNELS = 62


class InstanceParseError(ValueError):
    """Malformed instance document; the message carries field context."""


def _fail(where: str, problem: str) -> None:
    raise InstanceParseError(f"{where}: {problem}")


def _public_keys(obj: dict) -> set[str]:
    return {key for key in obj if not str(key).startswith("_")}


def parse_instance(text: str) -> CognitiveRadioNetwork:
    """Parse an instance document into a validated network.

    Raises InstanceParseError with line or field context on malformed
    input.  Channel and user names are kept on the network for reporting.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceParseError(
            f"line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None
    if not isinstance(doc, dict):
        _fail("document", "top level must be an object")
    allowed = {"channels", "users", "potential_graph"}
    for key in sorted(_public_keys(doc) - allowed):
        _fail("document", f"unknown field {key!r}")
    for key in sorted(allowed - _public_keys(doc)):
        _fail("document", f"missing field {key!r}")

    channels = doc["channels"]
    if not isinstance(channels, list):
        _fail("channels", "must be a list of names")
    if len(channels) > MAX_CHANNELS:
        _fail("channels", f"{len(channels)} channels declared; at most {MAX_CHANNELS} supported")
    channel_id: dict[str, int] = {}
    for pos, name in enumerate(channels):
        if not isinstance(name, str):
            _fail(f"channels[{pos}]", "channel names must be strings")
        if name in channel_id:
            _fail(f"channels[{pos}]", f"duplicate channel name {name!r}")
        channel_id[name] = pos

    users = doc["users"]
    if not isinstance(users, list):
        _fail("users", "must be a list of user objects")
    user_id: dict[str, int] = {}
    maps: list[set[int]] = []
    budgets: list[int] = []
    names: list[str] = []
    for pos, entry in enumerate(users):
        where = f"users[{pos}]"
        if not isinstance(entry, dict):
            _fail(where, "must be an object")
        u_allowed = {"name", "spectrum_map", "budget"}
        for key in sorted(_public_keys(entry) - u_allowed):
            _fail(where, f"unknown field {key!r}")
        for key in sorted(u_allowed - _public_keys(entry)):
            _fail(where, f"missing field {key!r}")
        name = entry["name"]
        if not isinstance(name, str):
            _fail(where, "user name must be a string")
        if name in user_id:
            _fail(where, f"duplicate user name {name!r}")
        user_id[name] = pos
        names.append(name)
        raw_map = entry["spectrum_map"]
        if not isinstance(raw_map, list):
            _fail(f"{where}.spectrum_map", "must be a list of channel names")
        chans: set[int] = set()
        for ch in raw_map:
            if not isinstance(ch, str) or ch not in channel_id:
                _fail(
                    f"{where}.spectrum_map",
                    f"user {name!r} references unknown channel {ch!r}",
                )
            if channel_id[ch] in chans:
                _fail(f"{where}.spectrum_map", f"duplicate channel {ch!r}")
            chans.add(channel_id[ch])
        maps.append(chans)
        budget = entry["budget"]
        if not isinstance(budget, int) or isinstance(budget, bool) or budget < 1:
            _fail(f"{where}.budget", "must be an integer >= 1")
        budgets.append(budget)

    pg = doc["potential_graph"]
    complete = False
    edges: set[tuple[int, int]] = set()
    if pg == "complete":
        complete = True
    else:
        if isinstance(pg, dict):
            for key in sorted(_public_keys(pg) - {"edges"}):
                _fail("potential_graph", f"unknown field {key!r}")
            if "edges" not in pg:
                _fail("potential_graph", "missing field 'edges'")
            edge_list = pg["edges"]
        else:
            edge_list = pg
        if not isinstance(edge_list, list):
            _fail("potential_graph", "must be \"complete\" or an edge list")
        for pos, pair in enumerate(edge_list):
            where = f"potential_graph.edges[{pos}]"
            if not isinstance(pair, list) or len(pair) != 2:
                _fail(where, "each edge must be a pair of user names")
            a, b = pair
            for end in (a, b):
                if not isinstance(end, str) or end not in user_id:
                    _fail(where, f"unknown user {end!r}")
            if a == b:
                _fail(where, f"self-loop at user {a!r}")
            u, v = user_id[a], user_id[b]
            edges.add((min(u, v), max(u, v)))

    network = CognitiveRadioNetwork.from_maps(
        maps,
        budgets,
        channel_count=len(channels),
        edges=edges,
        complete=complete,
        user_names=names,
        channel_names=[str(c) for c in channels],
    )
    report = validate(network)
    if report:
        _fail("document", "; ".join(report))
    return network


def serialize_instance(
    network: CognitiveRadioNetwork, extra: dict[str, Any] | None = None
) -> str:
    """Canonical JSON text for a network; inverse of parse_instance.

    Field order is fixed so serialization is byte-stable.  ``extra`` adds
    metadata entries; their keys must start with "_" (parsing skips them).
    """
    doc: dict[str, Any] = {
        "channels": [network.channel_name(c) for c in range(network.channel_count)],
        "users": [
            {
                "name": network.user_name(u.id),
                "spectrum_map": [
                    network.channel_name(c) for c in sorted(u.spectrum_map)
                ],
                "budget": u.budget,
            }
            for u in network.users
        ],
        "potential_graph": "complete"
        if network.complete
        else {
            "edges": [
                [network.user_name(u), network.user_name(v)]
                for u, v in sorted(network.edge_set())
            ]
        },
    }
    if extra:
        for key in extra:
            if not key.startswith("_"):
                raise ValueError(f"metadata key {key!r} must start with '_'")
        doc.update(extra)
    return json.dumps(doc, indent=2) + "\n"


def gen_random(
    n: int, k: int, beta: int, p: float, q: float, seed: int
) -> CognitiveRadioNetwork:
    """Random instance, deterministic for a fixed seed.

    Draw order is part of the contract: first each user's spectrum map
    (channels 0..k-1 in order, each kept with probability q; an empty map
    is redrawn once and then allowed), then each potential edge (u, v) in
    lexicographic order, kept with probability p.  When p == 1.0 the
    potential graph is emitted via the complete flag and no edge draws
    happen.  Every budget is beta.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not (1 <= k <= MAX_CHANNELS):
        raise ValueError(f"k must be in [1, {MAX_CHANNELS}]")
    if not (1 <= beta <= k):
        raise ValueError("beta must be in [1, k]")
    if not (0.0 <= p <= 1.0) or not (0.0 <= q <= 1.0):
        raise ValueError("p and q must be probabilities in [0, 1]")
    rng = random.Random(seed)
    maps: list[set[int]] = []
    for _ in range(n):
        chart = {c for c in range(k) if rng.random() < q}
        if not chart:
            chart = {c for c in range(k) if rng.random() < q}
        maps.append(chart)
    complete = p == 1.0
    edges: set[tuple[int, int]] = set()
    if not complete:
        for u in range(n):
            for v in range(u + 1, n):
                if rng.random() < p:
                    edges.add((u, v))
    return CognitiveRadioNetwork.from_maps(
        maps, beta, channel_count=k, edges=edges, complete=complete
    )
