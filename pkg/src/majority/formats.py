"""Text and JSON formats for hypergraphs, answers and every artifact, plus
``replay`` which rechecks any emitted artifact from scratch.

Hypergraph text format: first line ``n k`` (k = 0 when not uniform), then
one edge per line as strictly increasing 0-based indices.
"""

from __future__ import annotations

import json
from pathlib import Path

from .analysis import BoundReport, bounds_report
from .hypercore import Coloring, Hypergraph, brute_force_colorable, members_of
from .hypercore.minimal import MinimalResult
from .models import (
    NO_MAJORITY,
    AnswerVector,
    Ball,
    BMAnswer,
    CMAnswer,
    GMAnswer,
    ModelId,
    OMAnswer,
    answer_vector,
    bm_answers,
    permits,
    valid_outputs,
)
from .strategies import Strategy, decode
from .verifier.bm import BMCertificate, verify_bm
from .verifier.deterministic import (
    Certificate,
    FailureWitness,
    raw_key,
    verify_deterministic,
)
from .verifier.exact import ExactResult, exact_n
from .verifier.oracle import run_crosscheck

REPLAY_CAP = 16


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ---------------------------------------------------------------- hypergraphs


def hypergraph_to_text(h: Hypergraph) -> str:
    lines = [f"{h.n} {h.uniform_k or 0}"]
    lines += [" ".join(map(str, members_of(e))) for e in h.edges]
    return "\n".join(lines) + "\n"


def hypergraph_from_text(text: str, multi: bool = False) -> Hypergraph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise ValueError("first line must be 'n k'")
    n, k = int(rows[0][0]), int(rows[0][1])
    edges = []
    for row in rows[1:]:
        vs = [int(x) for x in row]
        if any(b <= a for a, b in zip(vs, vs[1:])):
            raise ValueError(f"edge {vs} is not strictly increasing")
        edges.append(vs)
    return Hypergraph.from_sets(n, edges, k or None, multi)


def hypergraph_to_json(h: Hypergraph) -> dict:
    return {"n": h.n, "k": h.uniform_k or 0, "edges": [list(e) for e in h.edge_sets()]}


def hypergraph_from_json(obj: dict, multi: bool = False) -> Hypergraph:
    return Hypergraph.from_sets(obj["n"], obj["edges"], obj.get("k") or None, multi)


def load_hypergraph(path) -> Hypergraph:
    """Read a hypergraph from a text file, a hypergraph JSON, or any artifact
    JSON carrying ``queries``."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        obj = json.loads(text)
        if "queries" in obj:
            return Hypergraph.from_sets(obj["n"], obj["queries"], obj.get("k") or None)
        return hypergraph_from_json(obj)
    return hypergraph_from_text(text)


# -------------------------------------------------------- answers and outputs


def answer_to_json(a) -> dict:
    if isinstance(a, OMAnswer):
        return {"sides": [list(a.sides[0]), list(a.sides[1])]}
    if isinstance(a, CMAnswer):
        return {"count": a.count}
    if isinstance(a, GMAnswer):
        return {"yes": a.yes}
    if a.yes:
        return {"yes": True, "pair": list(a.pair)}
    return {"yes": False}


def answer_from_json(model: ModelId, obj: dict):
    if model is ModelId.OM:
        return OMAnswer((tuple(obj["sides"][0]), tuple(obj["sides"][1])))
    if model is ModelId.CM:
        return CMAnswer(int(obj["count"]))
    if model is ModelId.GM:
        return GMAnswer(bool(obj["yes"]))
    return BMAnswer(bool(obj["yes"]), tuple(obj["pair"]) if obj.get("yes") else None)


def answer_vector_to_json(av: AnswerVector) -> dict:
    return {"model": av.model.value, "answers": [answer_to_json(a) for a in av.answers]}


def answer_vector_from_json(obj: dict) -> AnswerVector:
    model = ModelId.parse(obj["model"])
    return AnswerVector(model, tuple(answer_from_json(model, a) for a in obj["answers"]))


def output_to_json(out) -> dict:
    return {"ball": out.index} if isinstance(out, Ball) else {"no_majority": True}


def output_from_json(obj: dict):
    return Ball(int(obj["ball"])) if "ball" in obj else NO_MAJORITY


# ------------------------------------------------------------------ strategy


def strategy_to_json(s: Strategy) -> dict:
    return {"kind": "strategy", "model": s.model.value, "n": s.n, "k": s.k,
            "provenance": s.provenance, "queries": [list(e) for e in s.queries.edge_sets()],
            "aux": s.aux}


def strategy_from_json(obj: dict) -> Strategy:
    q = Hypergraph.from_sets(obj["n"], obj["queries"], obj["k"])
    return Strategy(ModelId.parse(obj["model"]), q, obj["provenance"], dict(obj.get("aux") or {}))


def write_strategy_files(s: Strategy, stem) -> tuple[Path, Path]:
    """Queries as hypergraph text plus a sidecar JSON with everything else."""
    stem = Path(stem)
    text, side = stem.with_suffix(".txt"), stem.with_suffix(".aux.json")
    text.write_text(hypergraph_to_text(s.queries))
    side.write_text(dumps({"model": s.model.value, "provenance": s.provenance, "aux": s.aux}))
    return text, side


def read_strategy_files(stem) -> Strategy:
    stem = Path(stem)
    q = hypergraph_from_text(stem.with_suffix(".txt").read_text())
    side = json.loads(stem.with_suffix(".aux.json").read_text())
    return Strategy(ModelId.parse(side["model"]), q, side["provenance"], side["aux"])


# ------------------------------------------------------ verification results


def _queries_json(h: Hypergraph) -> dict:
    return {"n": h.n, "k": h.uniform_k or 0, "queries": [list(e) for e in h.edge_sets()]}


def certificate_to_json(cert) -> dict:
    base = {"kind": "certificate", "model": cert.model.value, **_queries_json(cert.queries)}
    if isinstance(cert, BMCertificate):
        nodes = []
        for node in cert.nodes:
            if node[0] == "out":
                nodes.append({"output": output_to_json(node[1])})
            else:
                nodes.append({"query": node[1], "branches": [
                    {"answer": answer_to_json(a), "node": child} for a, child in node[2]]})
        return {**base, "root": cert.root, "nodes": nodes}
    table = [{"answers": [answer_to_json(a) for a in av.answers], "output": output_to_json(out)}
             for av, out in cert.entries()]
    return {**base, "decoder_table": table}


def certificate_from_json(obj: dict):
    model = ModelId.parse(obj["model"])
    q = Hypergraph.from_sets(obj["n"], obj["queries"], obj.get("k") or None)
    if model is ModelId.BM:
        nodes = []
        for node in obj["nodes"]:
            if "output" in node:
                nodes.append(("out", output_from_json(node["output"])))
            else:
                nodes.append(("ask", node["query"], tuple(
                    (answer_from_json(model, b["answer"]), b["node"]) for b in node["branches"])))
        return BMCertificate(q, tuple(nodes), obj["root"])
    table = {}
    for row in obj["decoder_table"]:
        answers = [answer_from_json(model, a) for a in row["answers"]]
        key = tuple(raw_key(model, e, a) for e, a in zip(q.edges, answers))
        table[key] = output_from_json(row["output"])
    return Certificate(model, q, table)


def witness_to_json(w: FailureWitness) -> dict:
    return {"kind": "failure_witness", "model": w.model.value, **_queries_json(w.queries),
            "answers": [answer_to_json(a) for a in w.answers],
            "colorings": [list(c.blue_members()) for c in w.colorings]}


def witness_from_json(obj: dict) -> FailureWitness:
    model = ModelId.parse(obj["model"])
    q = Hypergraph.from_sets(obj["n"], obj["queries"], obj.get("k") or None)
    return FailureWitness(model, q, tuple(answer_from_json(model, a) for a in obj["answers"]),
                          tuple(Coloring.from_blue(q.n, b) for b in obj["colorings"]))


def verification_to_json(result) -> dict:
    if isinstance(result, FailureWitness):
        return witness_to_json(result)
    return certificate_to_json(result)


def exact_to_json(r: ExactResult) -> dict:
    return {"kind": "exact", "model": r.model.value, "k": r.k, "n": r.n, "value": r.value,
            "optimal_queries": None if r.optimal_queries is None
            else [list(e) for e in r.optimal_queries.edge_sets()],
            "candidates_checked": r.candidates_checked}


def minimal_to_json(r: MinimalResult) -> dict:
    return {"kind": "min_non_property", "property": r.prop, "k": r.k, "n": r.n,
            "q_cap": r.q_cap, "value": r.value,
            "witness": None if r.witness is None else [list(e) for e in r.witness.edge_sets()]}


def analysis_to_json(model: ModelId, queries: Hypergraph, degree, structure=None) -> dict:
    obj = {"kind": "analysis", "model": model.value, **_queries_json(queries),
           "degrees": degree.degrees, "components": degree.components,
           "predicates": degree.predicates, "asserted": degree.asserted,
           "failures": degree.failures()}
    if structure is not None:
        obj["structure"] = {
            "i": structure.i, "family": structure.family,
            "trimmed": [list(e) for e in structure.trimmed.edge_sets()],
            "linear": structure.linear,
            "cycles": [{"edges": list(c.edges), "joints": list(c.joints), "covered": c.covered}
                       for c in structure.cycles],
            "short_cycles": len(structure.short_cycles),
            "total_size": structure.total_size,
            "size_cap": str(structure.size_cap),
            "all_hold": structure.all_hold}
    return obj


def analyze_queries(model, queries: Hypergraph, i: int | None = None) -> dict:
    from .analysis import check_degree_lemmas, check_low_degree_structure

    model = ModelId.parse(model)
    k = queries.uniform_k
    structure = None
    if i is not None:
        structure = check_low_degree_structure(queries, i)
    elif model is ModelId.CM and k and k % 2 == 0 and k >= 4:
        structure = check_low_degree_structure(queries, k // 2 + 1)
    return analysis_to_json(model, queries, check_degree_lemmas(model, queries), structure)


def bracket_to_json(command: str, params: dict, exc) -> dict:
    lo, hi = exc.bracket
    return {"kind": "resource_limit", "command": command, **params,
            "message": str(exc), "bracket": [lo, hi]}


# -------------------------------------------------------------------- replay


def replay_witness(w: FailureWitness) -> tuple[bool, str]:
    if len(w.answers) != len(w.queries.edges):
        return False, "answer count does not match query count"
    if len(w.colorings) < 2:
        return False, "a witness needs at least two colorings"
    common = None
    for c in w.colorings:
        for q, a in zip(w.queries.edges, w.answers):
            if not permits(w.model, q, a, c):
                return False, f"coloring {c.blue_members()} cannot answer {a} on {members_of(q)}"
        outs = valid_outputs(c)
        common = outs if common is None else common & outs
    if common:
        return False, f"colorings share valid outputs {sorted(map(str, common))}"
    return True, "witness replays: answers achievable, no common valid output"


def _colorings(n):
    if n > REPLAY_CAP:
        raise ValueError(f"replay limited to n <= {REPLAY_CAP}")
    return (Coloring(n, b) for b in range(1 << n))


def replay_certificate(cert) -> tuple[bool, str]:
    q = cert.queries
    if isinstance(cert, BMCertificate):
        for c in _colorings(q.n):
            outs = valid_outputs(c)
            seen = set()
            stack = [cert.root]
            while stack:
                node_id = stack.pop()
                if node_id in seen:
                    continue
                seen.add(node_id)
                node = cert.nodes[node_id]
                if node[0] == "out":
                    if node[1] not in outs:
                        return False, f"output {node[1]} invalid for coloring {c.blue_members()}"
                    continue
                _, qi, branches = node
                table = dict(branches)
                for a in bm_answers(q.edges[qi], c):
                    if a not in table:
                        return False, f"coloring {c.blue_members()} may answer {a}, not covered"
                    stack.append(table[a])
        return True, "BM decision DAG valid for every coloring and adversary choice"
    seen_keys = set()
    for c in _colorings(q.n):
        av = answer_vector(cert.model, q, c)
        key = tuple(raw_key(cert.model, e, a) for e, a in zip(q.edges, av.answers))
        seen_keys.add(key)
        out = cert.table.get(key)
        if out is None:
            return False, f"answer vector of coloring {c.blue_members()} missing from the table"
        if out not in valid_outputs(c):
            return False, f"table output {out} invalid for coloring {c.blue_members()}"
    if seen_keys != set(cert.table):
        return False, "table lists answer vectors no coloring produces"
    return True, f"decoder table valid for all {1 << q.n} colorings"


def replay_strategy(s: Strategy) -> tuple[bool, str]:
    from .analysis import om_exact
    from .strategies import CM_EVEN_CORE, OM_CHAIN

    if s.provenance == OM_CHAIN and len(s.queries) != om_exact(s.k, s.n):
        return False, "query count differs from the exact OM value"
    if s.provenance == CM_EVEN_CORE and len(s.queries) != s.n - s.k + 1:
        return False, "query count differs from n-k+1"
    for c in _colorings(s.n):
        if s.model is ModelId.BM:
            # decoding reads only YES/NO, so one adversary pair per query covers all choices
            answers = tuple(min(bm_answers(e, c), key=lambda a: a.pair or ()) for e in s.queries.edges)
            av = AnswerVector(ModelId.BM, answers)
        else:
            av = answer_vector(s.model, s.queries, c)
        out = decode(s, av)
        if out not in valid_outputs(c):
            return False, f"decode gives {out} for coloring {c.blue_members()}"
    return True, f"decoder valid for all {1 << s.n} colorings"


def replay(obj: dict) -> tuple[bool, str]:
    """Recheck any artifact this package writes; returns (valid, message)."""
    kind = obj.get("kind")
    if kind == "failure_witness":
        return replay_witness(witness_from_json(obj))
    if kind == "certificate":
        return replay_certificate(certificate_from_json(obj))
    if kind == "strategy":
        return replay_strategy(strategy_from_json(obj))
    if kind == "exact":
        model = ModelId.parse(obj["model"])
        n, k = obj["n"], obj["k"]
        if obj["value"] is None:
            every = exact_n(model, k, n, max_candidates=1)
            return every.value is None, "complete query set rechecked"
        q = Hypergraph.from_sets(n, obj["optimal_queries"], k)
        if len(q) != obj["value"]:
            return False, "optimal query set size differs from value"
        res = verify_bm(q) if model is ModelId.BM else verify_deterministic(model, q)
        if isinstance(res, FailureWitness):
            return False, "optimal query set is not sufficient"
        again = exact_n(model, k, n)
        if again.value != obj["value"]:
            return False, f"recomputed value {again.value} differs"
        return True, "optimal set sufficient and minimality recomputed"
    if kind == "min_non_property":
        if obj["value"] is None:
            return True, "no witness claimed below the cap"
        h = Hypergraph.from_sets(obj["n"], obj["witness"], obj["k"])
        if len(h) != obj["value"]:
            return False, "witness size differs from value"
        if brute_force_colorable(h, obj["property"]):
            return False, f"witness has Property {obj['property']}"
        return True, f"witness fails Property {obj['property']} under all {1 << h.n} colorings"
    if kind == "bound_report":
        fresh = bounds_report(obj["model"], obj["k"], obj["n"], compute_exact=False, strict=False)
        if [r.to_json() for r in fresh.bounds] != obj["bounds"]:
            return False, "bound rows differ on recomputation"
        rep = BoundReport(fresh.model, fresh.k, fresh.n, fresh.bounds, obj["exact"], obj["exact_status"])
        bad = rep.violations()
        return (not bad), "; ".join(bad) or "bounds recomputed and consistent with exact value"
    if kind == "crosscheck":
        again = run_crosscheck(obj["count"], obj["seed"], obj["max_n"], obj["max_q"])
        return again == obj, "crosscheck rerun with recorded seed"
    if kind == "analysis":
        q = Hypergraph.from_sets(obj["n"], obj["queries"], obj.get("k") or None)
        i = obj["structure"]["i"] if "structure" in obj else None
        fresh = analyze_queries(obj["model"], q, i)
        if fresh != obj:
            return False, "analysis differs on recomputation"
        return True, "analysis recomputed identically"
    if kind == "resource_limit":
        return True, "budget bracket only; no sufficiency or optimality claim to check"
    return False, f"unknown artifact kind {kind!r}"
