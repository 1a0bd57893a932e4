"""Textual definition format: one JSON document describing a field, bound
quiver algebras, modules, complexes, and functor data.

See docs/FORMAT.md for the schema.  Parsing validates every invariant at
load time (admissibility, relation vanishing, commuting squares, strict
functor relations) and reports the section and name of any failure.
Serialization round-trips: serialize(parse(file)) reparses to equal
objects.
"""

from __future__ import annotations

import json

from .algebra import BoundQuiverAlgebra, Element, Quiver
from .complexes import Complex
from .exactlin import DEFAULT_PRIME, Matrix
from .functors import FunctorData
from .modules import ProjSummands, RepHom, Representation
from .projcplx import ProjChainMap, ProjComplex


class DefinitionError(ValueError):
    """Schema or invariant failure, with a location."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


class Definitions:
    def __init__(self, p: int, algebras, modules, complexes, functors):
        self.p = p
        self.algebras: dict[str, BoundQuiverAlgebra] = algebras
        self.modules: dict[str, Representation] = modules
        self.complexes: dict[str, Complex] = complexes
        self.functors: dict[str, FunctorData] = functors


def _parse_element(alg: BoundQuiverAlgebra, data, loc: str) -> Element:
    out: Element = {}
    for item in data:
        if not (isinstance(item, list) and len(item) == 3):
            raise DefinitionError(loc, "element entry must be [coeff, source, arrows]")
        coeff, src, arrows = item
        pth = (str(src), tuple(str(a) for a in arrows))
        for a in pth[1]:
            if a not in alg.quiver.arrow_by_name:
                raise DefinitionError(loc, f"unknown arrow {a}")
        try:
            alg.path_target(pth)
        except ValueError as e:
            raise DefinitionError(loc, str(e))
        out[pth] = (out.get(pth, 0) + int(coeff)) % alg.p
    return {k: v for k, v in out.items() if v}


def _element_json(e: Element):
    return [[int(c), pth[0], list(pth[1])] for pth, c in sorted(e.items())]


def _parse_emat(alg, data, rows, cols, loc):
    if len(data) != rows or any(len(r) != cols for r in data):
        raise DefinitionError(loc, f"expected a {rows} x {cols} block matrix")
    return [[_parse_element(alg, data[r][c], f"{loc}[{r}][{c}]") for c in range(cols)] for r in range(rows)]


def parse_definitions(text: str) -> Definitions:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DefinitionError("document", f"invalid JSON: {e}")
    p = int(doc.get("field", {}).get("p", DEFAULT_PRIME))
    algebras: dict[str, BoundQuiverAlgebra] = {}
    for name, entry in doc.get("algebras", {}).items():
        loc = f"algebras.{name}"
        try:
            q = Quiver(entry["vertices"], [tuple(a) for a in entry["arrows"]])
        except (KeyError, ValueError) as e:
            raise DefinitionError(loc, str(e))
        rels = []
        for idx, rel in enumerate(entry.get("relations", [])):
            rels.append(_parse_element_placeholder(q, rel, f"{loc}.relations[{idx}]", p))
        try:
            algebras[name] = BoundQuiverAlgebra(q, rels, p=p)
        except ValueError as e:
            raise DefinitionError(loc, str(e))
    modules: dict[str, Representation] = {}
    for name, entry in doc.get("modules", {}).items():
        loc = f"modules.{name}"
        alg = _lookup(algebras, entry.get("algebra"), loc)
        dims = {str(v): int(d) for v, d in entry.get("dims", {}).items()}
        mats = {}
        for aname, rows in entry.get("mats", {}).items():
            if aname not in alg.quiver.arrow_by_name:
                raise DefinitionError(loc, f"unknown arrow {aname}")
            s, t = alg.quiver.arrow_by_name[aname]
            mats[aname] = _parse_matrix(p, rows, dims.get(t, 0), dims.get(s, 0), f"{loc}.mats.{aname}")
        try:
            modules[name] = Representation(alg, dims, mats)
        except ValueError as e:
            raise DefinitionError(loc, str(e))
    complexes: dict[str, Complex] = {}
    for name, entry in doc.get("complexes", {}).items():
        loc = f"complexes.{name}"
        alg = _lookup(algebras, entry.get("algebra"), loc)
        terms = {}
        for deg, mname in entry.get("terms", {}).items():
            if mname not in modules:
                raise DefinitionError(loc, f"unknown module {mname}")
            terms[int(deg)] = modules[mname]
        diffs = {}
        for deg, matentry in entry.get("diffs", {}).items():
            i = int(deg)
            if i not in terms or i + 1 not in terms:
                raise DefinitionError(loc, f"differential at {i} without both terms")
            src, tgt = terms[i], terms[i + 1]
            mats = {}
            for v, rows in matentry.items():
                mats[str(v)] = _parse_matrix(
                    p, rows, tgt.dims[str(v)], src.dims[str(v)], f"{loc}.diffs.{deg}.{v}"
                )
            try:
                diffs[i] = RepHom(src, tgt, mats)
            except ValueError as e:
                raise DefinitionError(f"{loc}.diffs.{deg}", str(e))
        try:
            complexes[name] = Complex(alg, terms, diffs)
        except ValueError as e:
            raise DefinitionError(loc, str(e))
    functors: dict[str, FunctorData] = {}
    for name, entry in doc.get("functors", {}).items():
        loc = f"functors.{name}"
        src = _lookup(algebras, entry.get("source"), loc)
        tgt = _lookup(algebras, entry.get("target"), loc)
        images = {}
        for v, ientry in entry.get("images", {}).items():
            iloc = f"{loc}.images.{v}"
            if str(v) not in src.quiver.vertices:
                raise DefinitionError(iloc, "unknown source vertex")
            terms = {}
            for deg, verts in ientry.get("terms", {}).items():
                for w in verts:
                    if str(w) not in tgt.quiver.vertices:
                        raise DefinitionError(iloc, f"unknown target vertex {w}")
                terms[int(deg)] = ProjSummands(tgt, [str(w) for w in verts])
            dmats = {}
            for deg, block in ientry.get("diffs", {}).items():
                i = int(deg)
                rows = len(terms.get(i + 1, ProjSummands(tgt, ())).vertices)
                cols = len(terms.get(i, ProjSummands(tgt, ())).vertices)
                dmats[i] = _parse_emat(tgt, block, rows, cols, f"{iloc}.diffs.{deg}")
            try:
                images[str(v)] = ProjComplex(tgt, terms, dmats)
            except ValueError as e:
                raise DefinitionError(iloc, str(e))
        arrow_maps = {}
        for aname, mentry in entry.get("arrow_maps", {}).items():
            aloc = f"{loc}.arrow_maps.{aname}"
            if aname not in src.quiver.arrow_by_name:
                raise DefinitionError(aloc, "unknown source arrow")
            s, t = src.quiver.arrow_by_name[aname]
            comps = {}
            for deg, block in mentry.items():
                i = int(deg)
                rows = len(images[s].summands(i).vertices)
                cols = len(images[t].summands(i).vertices)
                comps[i] = _parse_emat(tgt, block, rows, cols, f"{aloc}.{deg}")
            arrow_maps[aname] = ProjChainMap(images[t], images[s], comps)
        try:
            functors[name] = FunctorData(src, tgt, images, arrow_maps)
        except ValueError as e:
            raise DefinitionError(loc, str(e))
    return Definitions(p, algebras, modules, complexes, functors)


def _parse_element_placeholder(q: Quiver, rel, loc, p) -> Element:
    out: Element = {}
    for item in rel:
        if not (isinstance(item, list) and len(item) == 3):
            raise DefinitionError(loc, "relation entry must be [coeff, source, arrows]")
        coeff, src, arrows = item
        for a in arrows:
            if str(a) not in q.arrow_by_name:
                raise DefinitionError(loc, f"unknown arrow {a}")
        pth = (str(src), tuple(str(a) for a in arrows))
        out[pth] = (out.get(pth, 0) + int(coeff)) % p
    return {k: v for k, v in out.items() if v}


def _lookup(algebras, name, loc):
    if name not in algebras:
        raise DefinitionError(loc, f"unknown algebra {name}")
    return algebras[name]


def _parse_matrix(p, rows, nrows, ncols, loc) -> Matrix:
    if len(rows) != nrows or any(len(r) != ncols for r in rows):
        raise DefinitionError(loc, f"expected a {nrows} x {ncols} matrix")
    if nrows == 0 or ncols == 0:
        return Matrix.zeros(p, nrows, ncols)
    return Matrix(p, [[int(x) for x in r] for r in rows])


def serialize_definitions(defs: Definitions) -> str:
    doc: dict = {"field": {"p": defs.p}}
    if defs.algebras:
        doc["algebras"] = {}
        for name, alg in defs.algebras.items():
            doc["algebras"][name] = {
                "vertices": list(alg.quiver.vertices),
                "arrows": [list(a) for a in alg.quiver.arrows],
                "relations": [_element_json(r) for r in alg.relations],
            }
    ralg = {id(a): n for n, a in defs.algebras.items()}
    if defs.modules:
        doc["modules"] = {}
        for name, m in defs.modules.items():
            doc["modules"][name] = {
                "algebra": ralg[id(m.algebra)],
                "dims": dict(m.dims),
                "mats": {a: m.mats[a].data.tolist() for a in m.mats if not m.mats[a].is_zero()},
            }
    rmod = {id(m): n for n, m in defs.modules.items()}
    if defs.complexes:
        doc["complexes"] = {}
        for name, c in defs.complexes.items():
            doc["complexes"][name] = {
                "algebra": ralg[id(c.algebra)],
                "terms": {str(i): rmod[id(t)] for i, t in c.terms.items()},
                "diffs": {
                    str(i): {v: d.mats[v].data.tolist() for v in d.mats}
                    for i, d in c.diffs.items()
                },
            }
    if defs.functors:
        doc["functors"] = {}
        for name, f in defs.functors.items():
            images = {}
            for v, img in f.images.items():
                images[v] = {
                    "terms": {str(i): list(t.vertices) for i, t in img.terms.items()},
                    "diffs": {
                        str(i): [[_element_json(e) for e in row] for row in d]
                        for i, d in img.dmats.items()
                    },
                }
            arrow_maps = {}
            for a, am in f.arrow_maps.items():
                arrow_maps[a] = {
                    str(i): [[_element_json(e) for e in row] for row in comp]
                    for i, comp in am.comps.items()
                }
            doc["functors"][name] = {
                "source": ralg[id(f.source)],
                "target": ralg[id(f.target)],
                "images": images,
                "arrow_maps": arrow_maps,
            }
    return json.dumps(doc, indent=1, sort_keys=True)


def module_dot(m: Representation, name: str = "module") -> str:
    """DOT digraph of a module: one node per basis vector labeled by its
    vertex, one edge per nonzero arrow-action entry."""
    lines = [f"digraph {name} {{"]
    ids = {}
    for v in m.algebra.quiver.vertices:
        for k in range(m.dims[v]):
            ids[(v, k)] = f"n{len(ids)}"
            lines.append(f'  {ids[(v, k)]} [label="{v}"];')
    for a, s, t in m.algebra.quiver.arrows:
        mat = m.mats[a].data
        for i in range(mat.shape[0]):
            for j in range(mat.shape[1]):
                if mat[i, j]:
                    lab = a if int(mat[i, j]) == 1 else f"{a}:{int(mat[i, j])}"
                    lines.append(f'  {ids[(s, j)]} -> {ids[(t, i)]} [label="{lab}"];')
    lines.append("}")
    return "\n".join(lines)
