"""End-to-end runs: config in, witness report out.

A config names a finite group, two subgroups, a base genus and the images of
the surface generators.  The report collects the Gassmann check, the cycle
type comparison, cover genera and, for a chosen word, the simple elevation
counts on both covers together with the no-length-twins certificate.
"""

from __future__ import annotations

import copy
import io
import json
import re
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

import jsonschema

from . import groups as gc
from .cover import (
    SchreierCover,
    build_cover,
    combinatorial_isospectrality,
    cover_genus,
    elevations_of,
    export_dot,
    is_regular,
    power_labels,
    word_generators,
)
from .curves import REDUCTION_NOTE, count_simple_elevations, elevation_records, elevation_self_intersection
from .hyperbolic import CosetMembership, rep_for_rose, rep_from_traces, self_intersection_oracle
from .ribbon import restrict_order
from .traces import no_length_twins_certificate
from .words import CyclicWord, SurfacePresentation, Word, make_quotient, parse_word


class ConfigError(ValueError):
    pass


def _schema(name: str) -> dict:
    return json.loads(resources.files("sunada").joinpath("schemas").joinpath(name).read_text())


def validate_config(data: dict) -> None:
    try:
        jsonschema.validate(data, _schema("config.schema.json"))
    except jsonschema.ValidationError as exc:
        raise ConfigError(f"config: {exc.message}") from exc


def validate_report(data: dict) -> None:
    jsonschema.validate(data, _schema("report.schema.json"))


# ---------------------------------------------------------------------------
# config

BUILTIN = {
    1: {
        "name": "example1",
        "group": {"type": "semidirect_z8"},
        "elements": {"a1": [5, 0], "a2": [3, 0], "a3": [1, 1]},
        "subgroups": {
            "A": {"elements": [[1, 0], [3, 0], [5, 0], [7, 0]]},
            "B": {"elements": [[1, 0], [3, 4], [5, 4], [7, 0]]},
        },
        "genus": 3,
        "homomorphism": {"images": {"a1": "a1", "a2": "a2", "a3": "a3"}},
        "coset_labels": {"power_of": "a3"},
        "witness": {"word": "a1^-2 a2", "degree": 1},
        "search": {"generators": ["a1", "a2", "a3"], "max_exponent": 3},
    },
    2: {
        "name": "example2",
        "group": {"type": "sl", "n": 3, "q": 2},
        "elements": {
            "a1": [[0, 1, 1], [0, 1, 0], [1, 0, 0]],
            "a2": [[1, 0, 0], [0, 0, 1], [0, 1, 1]],
            "b": {"commutator": ["a1", "a2"]},
        },
        "subgroups": {
            "A": {"zero_entries": [[2, 1], [3, 1]]},
            "B": {"zero_entries": [[1, 2], [1, 3]]},
        },
        "genus": 3,
        "homomorphism": {"images": {"a1": "a1", "a2": "a2"}},
        "coset_labels": {"power_of": "b"},
        "witness": {"word": "a1^2 a2^2", "degree": 1},
        "search": {"generators": ["a1", "a2"], "max_exponent": 3},
    },
    3: {
        "name": "example3",
        "group": {"type": "symmetric", "n": 6},
        "elements": {"rho": "(1,5,3,6)(2,4)", "rho_prime": "(1,2,3,4)(5,6)"},
        "subgroups": {
            "A": {"generators": ["(1,2)(3,4)", "(1,3)(2,4)"]},
            "B": {"generators": ["(1,2)(3,4)", "(1,2)(5,6)"]},
        },
        "homomorphism": {"enumerate": "alphas"},
        "aliases": {"g1": {"alpha_of": "rho_prime"}, "g2": {"alpha_of": "rho"}},
        "witness": {"word": "g1^4 g2^2", "degree": 1},
        "profiles": ["rho", "rho_prime"],
        "search": {"generators": ["g1", "g2"], "max_exponent": 4},
    },
}


def builtin_config(k: int) -> dict:
    if k not in BUILTIN:
        raise ConfigError(f"no built-in example {k}")
    return copy.deepcopy(BUILTIN[k])


def load_config(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    validate_config(data)
    return data


def build_group(spec: dict) -> gc.FiniteGroup:
    kind = spec["type"]
    if kind == "semidirect_z8":
        return gc.build_semidirect_z8()
    if kind == "symmetric":
        return gc.build_symmetric(int(spec["n"]))
    if kind == "sl":
        return gc.build_sl(int(spec["n"]), int(spec["q"]))
    if kind == "table":
        return gc.build_from_table(spec["mul"])
    raise ConfigError(f"unknown group type {kind!r}")


def parse_element(G: gc.FiniteGroup, value, named: dict | None = None) -> int:
    named = named or {}
    if isinstance(value, str) and value in named:
        return named[value]
    try:
        if G.kind == "symmetric":
            return G.element(gc.parse_cycles(value, G.degree))
        if G.kind == "semidirect_z8":
            return G.element(tuple(value))
        if G.kind == "sl":
            return G.element(tuple(tuple(r) for r in value))
        return G.element(value if not isinstance(value, list) else tuple(value))
    except (KeyError, TypeError, gc.GroupError) as exc:
        raise ConfigError(f"{value!r} is not an element of {G.name}") from exc


def format_element(G: gc.FiniteGroup, g: int):
    lab = G.labels[g]
    if G.kind == "symmetric":
        return gc.format_cycles(lab)
    if G.kind == "semidirect_z8":
        return list(lab)
    if G.kind == "sl":
        return [list(r) for r in lab]
    return lab


@dataclass
class Experiment:
    """A config resolved into group-theoretic objects."""

    config: dict
    group: gc.FiniteGroup
    named: dict
    subgroups: dict
    presentation: SurfacePresentation
    quotient: Any
    aliases: dict = field(default_factory=dict)
    convention: str = "figure"
    _covers: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.config.get("name", "experiment")

    def cover(self, key: str) -> SchreierCover:
        if key not in self._covers:
            self._covers[key] = build_cover(self.quotient, self.subgroups[key], self.convention, name=key)
        return self._covers[key]

    def word(self, text: str) -> Word:
        text = re.sub(r"[A-Za-z_]+\d*", lambda m: self.aliases.get(m.group(), m.group()), text)
        return parse_word(text, self.presentation.alphabet)

    def generator_name(self, alias: str) -> str:
        return self.aliases.get(alias, alias)

    def labels(self, key: str) -> dict[int, str] | None:
        spec = self.config.get("coset_labels")
        if not spec:
            return None
        g = self.named[spec["power_of"]]
        return power_labels(self.cover(key), g, spec.get("symbol", spec["power_of"]))

    def coset_name(self, key: str, c: int) -> str:
        labels = self.labels(key)
        return labels[c] if labels and c in labels else self.cover(key).coset_label(c)


def resolve(cfg: dict) -> Experiment:
    validate_config(cfg)
    G = build_group(cfg["group"])
    named: dict[str, int] = {}
    for name, value in cfg.get("elements", {}).items():
        if isinstance(value, dict):
            x, y = (named[v] for v in value["commutator"])
            named[name] = G.commutator(x, y)
        else:
            named[name] = parse_element(G, value, named)
    subgroups = {}
    for key, spec in cfg["subgroups"].items():
        if "generators" in spec:
            gens = [parse_element(G, v, named) for v in spec["generators"]]
            H = gc.subgroup_from_generators(G, gens, name=key)
        elif "elements" in spec:
            H = gc.Subgroup(G, [parse_element(G, v, named) for v in spec["elements"]], name=key)
        else:
            if G.kind != "sl":
                raise ConfigError("zero_entries subgroups need a matrix group")
            cells = [(i - 1, j - 1) for i, j in spec["zero_entries"]]
            H = gc.subgroup_from_predicate(G, lambda m, cells=cells: all(m[i][j] == 0 for i, j in cells), name=key)
        subgroups[key] = H
    hom = cfg["homomorphism"]
    aliases = {}
    if hom.get("enumerate") == "alphas":
        genus = G.order
        if cfg.get("genus", genus) != genus:
            raise ConfigError("enumerated homomorphism needs genus = |G|")
        images = list(range(G.order)) + [0] * G.order
        for alias, spec in cfg.get("aliases", {}).items():
            aliases[alias] = f"a{named[spec['alpha_of']] + 1}" if spec["alpha_of"] in named else \
                f"a{parse_element(G, spec['alpha_of']) + 1}"
    else:
        genus = int(cfg["genus"])
        pres_alpha = SurfacePresentation(genus).alphabet
        images = [0] * (2 * genus)
        for gen, value in hom.get("images", {}).items():
            if gen not in pres_alpha:
                raise ConfigError(f"unknown surface generator {gen!r}")
            images[pres_alpha.index(gen)] = parse_element(G, value, named)
        for alias, target in cfg.get("aliases", {}).items():
            aliases[alias] = target if isinstance(target, str) else target["generator"]
    pres = SurfacePresentation(genus)
    q = make_quotient(pres, G, images, require_surjective=cfg.get("require_surjective", True))
    return Experiment(cfg, G, named, subgroups, pres, q, aliases, cfg.get("convention", "figure"))


# ---------------------------------------------------------------------------
# witness evaluation


def evaluate_word(exp: Experiment, w: Word, keys=("A", "B")) -> dict:
    """Per cover: elevation records and simple counts per degree."""
    out = {}
    for key in keys:
        recs = elevation_records(exp.cover(key), w)
        for r in recs:
            r["coset"] = exp.coset_name(key, r["start_coset"])
        by_degree = Counter()
        simple = Counter()
        for r in recs:
            by_degree[r["degree"]] += 1
            simple[r["degree"]] += bool(r["simple"])
        out[key] = {"elevations": recs, "degrees": dict(sorted(by_degree.items())),
                    "simple": dict(sorted(simple.items()))}
    return out


def witness_record(exp: Experiment, text: str, degree: int) -> dict:
    w = exp.word(text)
    cw = CyclicWord(w)
    data = evaluate_word(exp, w)
    counts = {k: data[k]["simple"].get(degree, 0) for k in data}
    cert = no_length_twins_certificate(w, exp.presentation.genus)
    differ = len(set(counts.values())) > 1
    simple_side = max(counts, key=lambda k: counts[k]) if differ else None
    return {
        "word": text,
        "normal_form": str(cw),
        "degree": degree,
        "simple_counts": counts,
        "counts_differ": differ,
        "simple_side": simple_side,
        "certificate": cert.to_dict(),
        "is_witness": differ and cert.granted,
        "covers": {k: {"degrees": {str(d): n for d, n in v["degrees"].items()},
                       "elevations": [e for e in v["elevations"] if e["degree"] == degree]}
                   for k, v in data.items()},
    }


def oracle_check(exp: Experiment, text: str, degree: int, radius: int = 10, traces=None) -> dict:
    """Recount every degree-``degree`` elevation with the hyperbolic oracle.

    Agreement is what certifies the ball radius as a sufficient cutoff.
    """
    w = exp.word(text)
    gens = word_generators(w)
    pos = {g: k for k, g in enumerate(gens)}
    local = [(pos[abs(x) - 1] + 1) * (1 if x > 0 else -1) for x in CyclicWord(w).letters]
    out = {"radius": radius, "covers": {}}
    agree = True
    for key in ("A", "B"):
        cover = exp.cover(key)
        rep = rep_from_traces(*traces) if traces else rep_for_rose(restrict_order(cover.order, gens))
        out["traces"] = list(rep.traces)
        rows = []
        for e in elevations_of(cover, w):
            if e.degree != degree:
                continue
            comb = elevation_self_intersection(cover, e).count
            orc = self_intersection_oracle(rep, local, CosetMembership.from_cover(cover, e.start_coset, gens), radius)
            rows.append({"coset": exp.coset_name(key, e.start_coset), "combinatorial": comb, "oracle": orc})
            agree &= comb == orc
        out["covers"][key] = rows
    out["agree"] = agree
    out["status"] = "cutoff-certified by agreement" if agree else "disagreement"
    return out


def _search_task(args):
    cfg, words, m_max = args
    exp = resolve(cfg)
    found = []
    for text in words:
        w = exp.word(text)
        cert = no_length_twins_certificate(w, exp.presentation.genus)
        if not cert.granted:
            continue
        degrees = set()
        for key in ("A", "B"):
            degrees |= {e.degree for e in elevations_of(exp.cover(key), w)}
        for m in sorted(degrees):
            if m > m_max:
                continue
            ca = count_simple_elevations(exp.cover("A"), w, m)
            cb = count_simple_elevations(exp.cover("B"), w, m)
            if ca != cb:
                found.append({"word": text, "degree": m, "simple_counts": {"A": ca, "B": cb}})
    return found


def _pow(x: str, j: int) -> str:
    return x if j == 1 else f"{x}^{j}"


def candidate_words(exp: Experiment, max_exponent: int, generators=None) -> list[str]:
    """``x^j y^l`` over unordered generator pairs, plus the generators themselves."""
    if generators is None:
        generators = exp.config.get("search", {}).get("generators")
    if generators is None:
        support = exp.quotient.support()
        if len(support) > 8:
            raise ConfigError("search generators must be listed when the support is large")
        generators = [exp.presentation.alphabet.names[g] for g in support]
    names = [exp.generator_name(g) for g in generators]
    exps = [e for e in range(-max_exponent, max_exponent + 1) if e]
    out = list(names)
    for i, x in enumerate(names):
        for y in names[i + 1:]:
            out += [f"{_pow(x, j)} {_pow(y, l)}" for j in exps for l in exps]
    return out


def witness_search(cfg: dict, max_exponent: int = 3, jobs: int = 1, max_degree: int = 1) -> list[dict]:
    """All certified words ``x^j y^l`` (``|j|, |l| <= max_exponent``) with unequal simple counts."""
    exp = resolve(cfg)
    words = candidate_words(exp, max_exponent)
    if jobs <= 1:
        found = _search_task((cfg, words, max_degree))
    else:
        chunks = [words[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(jobs) as pool:
            found = [r for part in pool.map(_search_task, [(cfg, c, max_degree) for c in chunks]) for r in part]
    order = {w: i for i, w in enumerate(words)}
    return sorted(found, key=lambda r: (order[r["word"]], r["degree"]))


def degree_profiles(exp: Experiment, names: list[str]) -> dict:
    """Per cover: how many cosets have each tuple of elevation degrees under the named elements."""
    out = {}
    for key in ("A", "B"):
        cs = exp.cover(key).cosets
        per = []
        for name in names:
            length = {}
            for cyc in cs.cycles(exp.named[name]):
                for c in cyc:
                    length[c] = len(cyc)
            per.append(length)
        tally = Counter(tuple(p[c] for p in per) for c in range(cs.index))
        out[key] = {",".join(map(str, k)): v for k, v in sorted(tally.items())}
    return out


# ---------------------------------------------------------------------------
# report


def run_pipeline(cfg: dict, search: bool = False, max_exponent: int | None = None, jobs: int = 1) -> dict:
    exp = resolve(cfg)
    G, A, B = exp.group, exp.subgroups["A"], exp.subgroups["B"]
    conj = gc.conjugating_element(G, A, B)
    ca, cb = exp.cover("A"), exp.cover("B")
    iso = combinatorial_isospectrality(ca, cb)
    report: dict[str, Any] = {
        "name": exp.name,
        "group": {"name": G.name, "order": G.order},
        "subgroups": {k: {"order": H.order, "index": H.index} for k, H in exp.subgroups.items()},
        "gassmann": {
            "almost_conjugate": gc.is_almost_conjugate(G, A, B),
            "conjugator": None if conj is None else format_element(G, conj),
        },
        "isospectrality": iso.to_dict(),
        "genus": {"base": exp.presentation.genus, "covers": {k: cover_genus(exp.cover(k)) for k in ("A", "B")}},
        "regular": {k: is_regular(exp.cover(k)) for k in ("A", "B")},
        "convention": exp.convention,
        "reduction": REDUCTION_NOTE,
    }
    if "profiles" in cfg:
        report["degree_profiles"] = {"elements": cfg["profiles"], "counts": degree_profiles(exp, cfg["profiles"])}
    if "witness" in cfg:
        wcfg = cfg["witness"]
        report["witness"] = witness_record(exp, wcfg["word"], int(wcfg.get("degree", 1)))
    if "oracle" in cfg and "witness" in cfg:
        o = cfg["oracle"]
        report["oracle"] = oracle_check(exp, cfg["witness"]["word"], int(cfg["witness"].get("degree", 1)),
                                        int(o.get("radius", 10)), o.get("rep"))
    if search:
        n = max_exponent or cfg.get("search", {}).get("max_exponent", 3)
        report["search"] = {"max_exponent": n, "found": witness_search(cfg, n, jobs)}
    report["conclusion"] = conclusion(report)
    return report


def conclusion(report: dict) -> str:
    g = report["gassmann"]
    if not g["almost_conjugate"]:
        return "subgroups are not almost conjugate: no isospectrality claim"
    parts = ["covers are length isospectral over the base (cycle types agree for every element)"]
    if g["conjugator"] is not None:
        parts.append("subgroups are conjugate, so the covers are isomorphic")
        return "; ".join(parts)
    w = report.get("witness")
    if w and w["is_witness"]:
        parts.append(
            f"witness {w['word']} has no length twins and {w['simple_counts']['A']} vs "
            f"{w['simple_counts']['B']} simple degree-{w['degree']} elevations: by the length-spectra "
            "criterion the covers are generically not simple length isospectral"
        )
    elif w:
        parts.append("the given word is not a certified witness; no simple-spectrum conclusion")
    return "; ".join(parts)


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def report_text(report: dict) -> str:
    buf = io.StringIO()
    p = lambda *a: print(*a, file=buf)  # noqa: E731
    p(f"{report['name']}: G = {report['group']['name']} (order {report['group']['order']})")
    for k, s in report["subgroups"].items():
        p(f"  {k}: order {s['order']}, index {s['index']}")
    g = report["gassmann"]
    p(f"almost conjugate = {g['almost_conjugate']}; conjugator = {g['conjugator']}")
    iso = report["isospectrality"]
    p(f"cycle types agree on all {iso['elements_checked']} elements = {iso['pass']}")
    for k, gen in report["genus"]["covers"].items():
        p(f"{k}: cover genus = {gen} (base genus {report['genus']['base']})")
    if "degree_profiles" in report:
        names = ",".join(report["degree_profiles"]["elements"])
        for k, tally in report["degree_profiles"]["counts"].items():
            p(f"{k}: cosets by degrees of ({names}): " + ", ".join(f"({d}): {n}" for d, n in tally.items()))
    w = report.get("witness")
    if w:
        p(f"witness word {w['word']} (degree {w['degree']})")
        for k, c in w["simple_counts"].items():
            cosets = ", ".join(e["coset"] for e in w["covers"][k]["elevations"])
            p(f"  {k}: {c} simple of {len(w['covers'][k]['elevations'])} degree-{w['degree']} elevations [{cosets}]")
        p(f"  certificate: {w['certificate']['granted']} ({w['certificate']['reason']})")
    if "search" in report:
        p(f"search |exponent| <= {report['search']['max_exponent']}: {len(report['search']['found'])} witnesses")
        for f in report["search"]["found"]:
            p(f"  {f['word']} degree {f['degree']}: {f['simple_counts']}")
    p(report["conclusion"])
    return buf.getvalue()


def dot_bundle(cfg: dict) -> dict[str, str]:
    exp = resolve(cfg)
    out = {}
    for key in ("A", "B"):
        out[f"{exp.name}_{key}.dot"] = export_dot(exp.cover(key), labels=exp.labels(key))
    return out


def report_emit(report: dict, fmt: str, out_dir=None, cfg: dict | None = None) -> dict[str, str]:
    """Render a report; returns ``{filename: content}`` and writes the files when ``out_dir`` is set."""
    if fmt == "json":
        validate_report(report)
        files = {f"{report['name']}.json": report_json(report)}
    elif fmt == "text":
        files = {f"{report['name']}.txt": report_text(report)}
    elif fmt == "dot-bundle":
        if cfg is None:
            raise ConfigError("dot-bundle needs the config")
        files = dot_bundle(cfg)
    else:
        raise ConfigError(f"unknown format {fmt!r}")
    if out_dir is not None:
        d = Path(out_dir)
        d.mkdir(parents=True, exist_ok=True)
        for name, text in files.items():
            (d / name).write_text(text)
    return files


def word_in_two_generators(w: Word) -> bool:
    return len(word_generators(w)) <= 2
