"""Disk domain enumeration: the combinatorial stand-in for rigid polygons.

A candidate domain for a (k+1)-gon with prescribed corners is a nonnegative
integer 2-chain satisfying linear corner-defect and Euler-measure constraints;
solutions are enumerated as integer points of an affine lattice fiber.  Each
candidate is then audited: the boundary path is reconstructed (it is forced by
the chain), and the cut-and-glue surface built from the prescribed region
multiplicities must assemble into a disk whose single boundary circle carries
exactly the prescribed convex corners.  The number of distinct consistent
gluings counts the immersions with that domain.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .arrangement import Configuration
from .chains import enumerate_fiber, solve_chain_system
from .curves import CurveError


class DomainError(CurveError):
    pass


@dataclass(frozen=True)
class PolygonDomain:
    """A counted immersed (k+1)-gon domain."""
    tuple_order: Tuple[int, ...]      # configuration curve indices c_0..c_k
    inputs: Tuple[int, ...]           # vertex ids q_1..q_k
    output: int                       # vertex id
    chain: Tuple[int, ...]
    sigmas: Tuple[int, ...]           # travel direction per slot (geometric)
    portions: Tuple[Tuple[int, ...], ...]  # arc ids traversed per slot
    corners: Tuple[Tuple[int, Tuple[int, int]], ...]  # (vertex, stored label), output first
    count: int                        # number of immersions with this domain

    @property
    def k(self) -> int:
        return len(self.inputs)

    def euler4(self, cfg: Configuration) -> int:
        return sum(x * cfg.regions[i].euler4 for i, x in enumerate(self.chain))

    def marked_passes(self, cfg: Configuration) -> int:
        return sum(1 for portion in self.portions for aid in portion
                   if cfg.arcs[aid].has_marked)

    def combinatorial_index(self, cfg: Configuration) -> Fraction:
        n = self.k + 1
        e = Fraction(self.euler4(cfg), 4)
        return 2 * e - Fraction(n - 2, 2)


def tuple_sign(cfg: Configuration, vertex: int, a: int, b: int) -> int:
    """Crossing sign of the vertex in the frame (curve a, curve b)."""
    v = cfg.vertices[vertex]
    if (v.curve_a, v.curve_b) == (a, b):
        return v.sign
    if (v.curve_a, v.curve_b) == (b, a):
        return -v.sign
    raise DomainError(f"vertex {vertex} does not join curves {a},{b}")


def _event_index(cfg: Configuration, curve: int, vertex: int) -> int:
    hits = [m for m, (_, vid, _) in enumerate(cfg.vertex_cycle_of_curve[curve])
            if vid == vertex]
    if len(hits) != 1:
        raise DomainError("ambiguous vertex occurrence on curve")
    return hits[0]


def _solve_portion(cfg: Configuration, curve: int, y: Dict[int, int],
                   start_event: int, end_event: int):
    """Direction, wrap count and arc list of the boundary portion on a curve.

    y maps arc id -> boundary multiplicity (left minus right coefficient).
    Returns (sigma, arcs in travel order) or None when the multiplicities are
    not those of a monotone path between the two events.
    """
    arcs = cfg.arcs_of_curve[curve]
    m = len(arcs)
    if m == 0 or start_event == end_event:
        return None
    yv = [y[a] for a in arcs]
    for sigma in (1, -1):
        if sigma == 1:
            seg = {(start_event + t) % m for t in range((end_event - start_event) % m)}
        else:
            seg = {(start_event - 1 - t) % m for t in range((start_event - end_event) % m)}
        comp = [i for i in range(m) if i not in seg]
        if not comp:
            continue
        w = sigma * yv[comp[0]]
        if w < 0:
            continue
        ok = all((sigma * yv[i]) == (w + (1 if i in seg else 0)) for i in range(m))
        if not ok:
            continue
        total = w * m + len(seg)
        if sigma == 1:
            order = [arcs[(start_event + t) % m] for t in range(total)]
        else:
            order = [arcs[(start_event - 1 - t) % m] for t in range(total)]
        return sigma, order
    return None


def _corner_label(cfg: Configuration, vertex: int, arrive_curve: int, sigma_arrive: int,
                  depart_curve: int, sigma_depart: int) -> Tuple[int, int]:
    """Stored-frame quadrant label of the convex corner between the arriving
    and departing boundary germs."""
    v = cfg.vertices[vertex]
    u = -sigma_arrive   # sign along the arrival curve
    w = sigma_depart    # sign along the departure curve
    if (v.curve_a, v.curve_b) == (arrive_curve, depart_curve):
        return (u, w)
    if (v.curve_a, v.curve_b) == (depart_curve, arrive_curve):
        return (w, u)
    raise DomainError("corner curves do not match the vertex")  # pragma: no cover


def enumerate_polygons(cfg: Configuration, tuple_order: Sequence[int],
                       inputs: Sequence[int], output: int) -> List[PolygonDomain]:
    """All immersed (k+1)-gon domains with the given corner data.

    tuple_order lists the configuration indices of the curves c_0..c_k; input
    i+1 must be a crossing of (c_i, c_{i+1}) and the output a crossing of
    (c_0, c_k).  The configuration must be admissible.
    """
    order = list(tuple_order)
    k = len(order) - 1
    if k < 1 or len(inputs) != k:
        raise DomainError("need k+1 curves and k inputs")
    if len(set(order)) != len(order):
        raise DomainError("tuple curves must be distinct")
    eps_in = [tuple_sign(cfg, q, order[i], order[i + 1]) for i, q in enumerate(inputs)]
    eps_out = tuple_sign(cfg, output, order[0], order[k])
    if k == 1 and inputs[0] == output:
        return []
    rhs = [0] * len(cfg.vertices)
    for q, e in zip(inputs, eps_in):
        rhs[q] += -e
    rhs[output] += eps_out
    rhs.append(4 - (k + 1))
    part = solve_chain_system(cfg, rhs)
    if part is None:
        return []
    out: List[PolygonDomain] = []
    for chain in enumerate_fiber(cfg, part):
        dom = _audit_candidate(cfg, order, list(inputs), output, eps_in, eps_out, chain)
        if dom is not None:
            out.append(dom)
    return out


def audit_polygon_chain(cfg: Configuration, tuple_order: Sequence[int],
                        inputs: Sequence[int], output: int,
                        chain: Sequence[int]) -> Optional[PolygonDomain]:
    """Audit one explicit chain as a polygon domain (no fiber enumeration).

    Useful when the ambient configuration is inadmissible but a specific
    candidate is available, e.g. for index diagnostics on hand-built domains.
    """
    order = list(tuple_order)
    k = len(order) - 1
    eps_in = [tuple_sign(cfg, q, order[i], order[i + 1]) for i, q in enumerate(inputs)]
    eps_out = tuple_sign(cfg, output, order[0], order[k])
    return _audit_candidate(cfg, order, list(inputs), output, eps_in, eps_out,
                            tuple(chain))


def _audit_candidate(cfg, order, inputs, output, eps_in, eps_out, chain):
    k = len(order) - 1
    y = {a.index: chain[a.left_region] - chain[a.right_region] for a in cfg.arcs}
    # portion endpoints per slot: c_0 from output to q_1, c_i from q_i to
    # q_{i+1}, c_k from q_k back to the output
    endpoints = []
    for i, c in enumerate(order):
        start = output if i == 0 else inputs[i - 1]
        end = inputs[i] if i < k else output
        endpoints.append((c, start, end))
    sigmas: List[int] = []
    portions: List[Tuple[int, ...]] = []
    for c, qa, qb in endpoints:
        res = _solve_portion(cfg, c, y, _event_index(cfg, c, qa), _event_index(cfg, c, qb))
        if res is None:
            return None
        sigma, arcs = res
        sigmas.append(sigma)
        portions.append(tuple(arcs))
    # travel-direction chain rule at convex corners
    for i in range(1, k + 1):
        if sigmas[i] != eps_in[i - 1] * sigmas[i - 1]:
            return None
    if sigmas[0] != -eps_out * sigmas[k]:
        return None
    # exact corner quadrants
    corners: List[Tuple[int, Tuple[int, int]]] = []
    corners.append((output, _corner_label(cfg, output, order[k], sigmas[k],
                                          order[0], sigmas[0])))
    for i in range(1, k + 1):
        corners.append((inputs[i - 1],
                        _corner_label(cfg, inputs[i - 1], order[i - 1], sigmas[i - 1],
                                      order[i], sigmas[i])))
    boundary = _boundary_cycle(corners, sigmas, portions)
    count = glue_count(cfg, chain, corners, boundary)
    if count == 0:
        return None
    return PolygonDomain(tuple(order), tuple(inputs), output, tuple(chain),
                         tuple(sigmas), tuple(portions), tuple(corners), count)


def _boundary_cycle(corners, sigmas, portions) -> Tuple:
    items: List[Tuple] = []
    for i in range(len(portions)):
        items.append(("corner",) + corners[i])
        items.extend(("arc", aid, sigmas[i]) for aid in portions[i])
    return tuple(items)


def enumerate_monogons(cfg: Configuration, vertex: int) -> List[PolygonDomain]:
    """One-cornered immersed disk domains at a self-crossing (fishtail test)."""
    v = cfg.vertices[vertex]
    if v.curve_a != v.curve_b:
        raise DomainError("monogons live at self-crossings")
    curve = v.curve_a
    rhs = [0] * len(cfg.vertices)
    rhs[vertex] = -1  # a teardrop corner always sits in a mixed-sign quadrant
    rhs.append(3)     # euler measure 3/4
    part = solve_chain_system(cfg, rhs)
    if part is None:
        return []
    evs = [m for m, (_, vid, _) in enumerate(cfg.vertex_cycle_of_curve[curve])
           if vid == vertex]
    if len(evs) != 2:
        raise DomainError("self-crossing should occur twice on its curve")  # pragma: no cover
    out: List[PolygonDomain] = []
    for chain in enumerate_fiber(cfg, part):
        y = {a.index: chain[a.left_region] - chain[a.right_region] for a in cfg.arcs}
        for depart_ev, arrive_ev in ((evs[0], evs[1]), (evs[1], evs[0])):
            res = _solve_portion(cfg, curve, y, depart_ev, arrive_ev)
            if res is None:
                continue
            sigma, arcs = res
            # branch of an event: 0 for the first passage, 1 for the second
            depart_branch = 0 if depart_ev == evs[0] else 1
            arrive_branch = 1 - depart_branch
            label = [0, 0]
            label[arrive_branch] = -sigma
            label[depart_branch] = sigma
            corners = [(vertex, (label[0], label[1]))]
            boundary = _boundary_cycle(corners, [sigma], [tuple(arcs)])
            count = glue_count(cfg, chain, corners, boundary)
            if count:
                out.append(PolygonDomain((curve,), (), vertex, tuple(chain),
                                         (sigma,), (tuple(arcs),), tuple(corners),
                                         count))
    return out


# -- cut-and-glue disk recognition -------------------------------------------


def glue_count(cfg: Configuration, chain: Sequence[int],
               corners: Sequence[Tuple[int, Tuple[int, int]]],
               boundary: Tuple) -> int:
    """Number of immersions with the given domain and corner prescription.

    Builds every consistent gluing of chain[R] copies of each region along the
    arcs (multiplicities matched, boundary left over), keeps those assembling
    a connected surface of Euler characteristic one whose single boundary
    circle reproduces the prescribed boundary cycle, and counts them up to
    relabeling of identical sheets.
    """
    sheets = [(r, c) for r in range(len(chain)) for c in range(chain[r])]
    if not sheets:
        return 0
    arc_slots: List[Tuple[int, List[int], List[int]]] = []
    for arc in cfg.arcs:
        nl, nr = chain[arc.left_region], chain[arc.right_region]
        if nl == 0 and nr == 0:
            continue
        arc_slots.append((arc.index, list(range(nl)), list(range(nr))))
    matchings_per_arc: List[List[Tuple[Tuple[int, int], ...]]] = []
    for aid, lefts, rights in arc_slots:
        opts = []
        if len(lefts) <= len(rights):
            for perm in itertools.permutations(rights, len(lefts)):
                opts.append(tuple(zip(lefts, perm)))
        else:
            for perm in itertools.permutations(lefts, len(rights)):
                opts.append(tuple(zip(perm, rights)))
        matchings_per_arc.append(opts)
    total = 1
    for opts in matchings_per_arc:
        total *= len(opts)
        if total > 200000:
            raise DomainError("gluing search too large")  # pragma: no cover
    seen_canonical: Set[Tuple] = set()
    arc_ids = [aid for aid, _, _ in arc_slots]
    for combo in itertools.product(*matchings_per_arc):
        matching = dict(zip(arc_ids, combo))
        if _valid_gluing(cfg, chain, matching, corners, boundary):
            canon = _canonical_form(cfg, chain, matching, corners)
            seen_canonical.add(canon)
    return len(seen_canonical)


def _corner_items(cfg, chain, vertex):
    items = []
    for s_idx, sec in enumerate(cfg.sectors_of_vertex[vertex]):
        for c in range(chain[sec.region]):
            items.append((s_idx, c))
    return items


def _vertex_links(cfg, chain, matching, vertex):
    """Adjacency between corner items across the four germs of a vertex."""
    links: Dict[Tuple[int, int], List[Tuple[Tuple[int, int], int]]] = {}
    for item in _corner_items(cfg, chain, vertex):
        links[item] = []
    for g in cfg.germs_of_vertex[vertex]:
        pairs = matching.get(g.arc, ())
        for (ci, cj) in pairs:
            a = (g.left_sector, ci)
            b = (g.right_sector, cj)
            links[a].append((b, g.index))
            links[b].append((a, g.index))
    return links


def _valid_gluing(cfg, chain, matching, corners, boundary) -> bool:
    # vertex-by-vertex orbit structure
    prescribed: Dict[int, List[Tuple[int, int]]] = {}
    for vid, label in corners:
        prescribed.setdefault(vid, []).append(label)
    for v in cfg.vertices:
        links = _vertex_links(cfg, chain, matching, v.index)
        if not links:
            if v.index in prescribed:
                return False
            continue
        seen = set()
        found_corners: List[Tuple[int, int]] = []
        for item in links:
            if item in seen:
                continue
            # walk the chain/cycle containing item
            component = [item]
            seen.add(item)
            frontier = [item]
            while frontier:
                cur = frontier.pop()
                for nxt, _ in links[cur]:
                    if nxt not in seen:
                        seen.add(nxt)
                        component.append(nxt)
                        frontier.append(nxt)
            degs = [len(links[x]) for x in component]
            if all(d == 2 for d in degs):
                if len(component) != 4:
                    return False  # branch point
            else:
                ends = [x for x in component if len(links[x]) <= 1]
                if len(component) == 1:
                    sec = cfg.sectors_of_vertex[v.index][component[0][0]]
                    found_corners.append(sec.label)
                elif len(component) == 2:
                    if not _straight_pass(cfg, v.index, component, links):
                        return False
                else:
                    return False
        if sorted(found_corners) != sorted(prescribed.get(v.index, [])):
            return False
    # connectivity of sheets
    sheets = [(r, c) for r in range(len(chain)) for c in range(chain[r])]
    parent = {s: s for s in sheets}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for arc in cfg.arcs:
        pairs = matching.get(arc.index, ())
        for ci, cj in pairs:
            a = find((arc.left_region, ci))
            b = find((arc.right_region, cj))
            if a != b:
                parent[a] = b
    if len({find(s) for s in sheets}) != 1:
        return False
    # euler characteristic
    if _glued_chi(cfg, chain, matching) != 1:
        return False
    # boundary trace must match the prescribed cycle exactly
    traced = _trace_boundary(cfg, chain, matching)
    if traced is None:
        return False
    return _cycles_equal(traced, boundary)


def _straight_pass(cfg, vertex, component, links) -> bool:
    """A two-item chain must be a straight passage along one branch."""
    open_germs = []
    for item in component:
        used = {g for _, g in links[item]}
        sec = cfg.sectors_of_vertex[vertex][item[0]]
        for gidx in (sec.germ_cw, sec.germ_ccw):
            if gidx not in used:
                open_germs.append(gidx)
    if len(open_germs) != 2:
        return False
    g1 = cfg.germs_of_vertex[vertex][open_germs[0]]
    g2 = cfg.germs_of_vertex[vertex][open_germs[1]]
    return g1.branch == g2.branch and g1.outgoing != g2.outgoing


def _glued_chi(cfg, chain, matching) -> int:
    total = sum(chain[r] * cfg.regions[r].chi for r in range(len(chain)))
    # boundary edge count after gluing
    e_after = 0
    v_orbits = 0
    # corner item orbits across all vertices
    parent: Dict[Tuple, Tuple] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    for v in cfg.vertices:
        for item in _corner_items(cfg, chain, v.index):
            parent[("c", v.index) + item] = ("c", v.index) + item
    virtuals = []
    for arc in cfg.arcs:
        nl, nr = chain[arc.left_region], chain[arc.right_region]
        pairs = matching.get(arc.index, ())
        e_after += nl + nr - len(pairs)
        if arc.closed:
            for c in range(nl):
                key = ("v", arc.index, 1, c)
                parent[key] = key
                virtuals.append(key)
            for c in range(nr):
                key = ("v", arc.index, -1, c)
                parent[key] = key
                virtuals.append(key)
            for ci, cj in pairs:
                union(("v", arc.index, 1, ci), ("v", arc.index, -1, cj))
            continue
        for ci, cj in pairs:
            for vid in {arc.start_vertex, arc.end_vertex}:
                for g in cfg.germs_of_vertex[vid]:
                    if g.arc != arc.index:
                        continue
                    union(("c", vid, g.left_sector, ci), ("c", vid, g.right_sector, cj))
    v_orbits = len({find(k) for k in parent})
    return total + v_orbits - e_after


def _use_direction(side: int) -> int:
    return side  # boundary use of an arc with material on the left (+1) runs forward


def _trace_boundary(cfg, chain, matching):
    """Boundary cycles of the glued surface; None when not a single circle.

    Returns the single cycle as items ("corner", vid, label) / ("arc", aid, dir),
    starting at an arbitrary position.
    """
    # unmatched uses: (arc, side, copy)
    unmatched: Set[Tuple[int, int, int]] = set()
    for arc in cfg.arcs:
        nl, nr = chain[arc.left_region], chain[arc.right_region]
        pairs = matching.get(arc.index, ())
        ml = {ci for ci, _ in pairs}
        mr = {cj for _, cj in pairs}
        for c in range(nl):
            if c not in ml:
                unmatched.add((arc.index, 1, c))
        for c in range(nr):
            if c not in mr:
                unmatched.add((arc.index, -1, c))
    if not unmatched:
        return None
    # closed-arc uses form their own circles; with corner prescriptions these
    # can never reproduce the polygon boundary
    for (aid, side, c) in unmatched:
        if cfg.arcs[aid].closed:
            return None
    links_cache = {v.index: _vertex_links(cfg, chain, matching, v.index)
                   for v in cfg.vertices}

    def head_vertex_and_sector(aid, side):
        """Vertex, germ and material sector at the travel head of a use."""
        arc = cfg.arcs[aid]
        vid = arc.end_vertex if side == 1 else arc.start_vertex
        for g in cfg.germs_of_vertex[vid]:
            if g.arc != aid:
                continue
            if side == 1 and not g.outgoing:
                return vid, g, g.left_sector
            if side == -1 and g.outgoing:
                return vid, g, g.right_sector
        raise DomainError("head germ not found")  # pragma: no cover

    items: List[Tuple] = []
    start = min(unmatched)
    cur = start
    visited = set()
    while True:
        if cur in visited:
            return None  # pragma: no cover
        visited.add(cur)
        aid, side, copy = cur
        items.append(("arc", aid, side))
        vid, germ, sector = head_vertex_and_sector(aid, side)
        # walk the corner chain from (sector, copy)
        links = links_cache[vid]
        item = (sector, copy)
        prev_germ = germ.index
        chain_len = 1
        while True:
            nxts = [(n, g) for (n, g) in links[item] if g != prev_germ]
            if not nxts:
                break
            item, prev_germ = nxts[0]
            chain_len += 1
        if chain_len == 1:
            sec = cfg.sectors_of_vertex[vid][item[0]]
            items.append(("corner", vid, sec.label))
        # exit along the other bounding germ of the final sector
        sec = cfg.sectors_of_vertex[vid][item[0]]
        exit_germ_idx = sec.germ_cw if sec.germ_ccw == prev_germ else sec.germ_ccw
        g2 = cfg.germs_of_vertex[vid][exit_germ_idx]
        if g2.outgoing and g2.left_sector == item[0]:
            nxt = (g2.arc, 1, item[1])
        elif (not g2.outgoing) and g2.right_sector == item[0]:
            nxt = (g2.arc, -1, item[1])
        else:
            return None  # material would sit on the wrong side of the travel
        if nxt == start:
            break
        cur = nxt
    if len(visited) != len(unmatched):
        return None  # more than one boundary circle
    return tuple(items)


def _cycles_equal(a: Tuple, b: Tuple) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = a + a
    for i in range(len(a)):
        if doubled[i:i + len(b)] == b:
            return True
    return False


def _canonical_form(cfg, chain, matching, corners):
    """Relabel sheet copies canonically (BFS from each corner sheet, min form)."""
    roots = []
    for vid, label in sorted(set(corners)):
        links = _vertex_links(cfg, chain, matching, vid)
        for item in sorted(links):
            sec = cfg.sectors_of_vertex[vid][item[0]]
            if sec.label == label and len(links[item]) == 0:
                roots.append((vid, item))
    forms = []
    if not roots:  # pragma: no cover
        vid = corners[0][0]
        roots = [(vid, item) for item in
                 sorted(_vertex_links(cfg, chain, matching, vid))[:1]]
    for vid, item in roots:
        sec = cfg.sectors_of_vertex[vid][item[0]]
        root_sheet = (sec.region, item[1])
        relabel: Dict[Tuple[int, int], int] = {}
        counters: Dict[int, int] = {}

        def touch(sheet):
            if sheet not in relabel:
                counters[sheet[0]] = counters.get(sheet[0], 0)
                relabel[sheet] = counters[sheet[0]]
                counters[sheet[0]] += 1

        touch(root_sheet)
        frontier = [root_sheet]
        adj: Dict[Tuple[int, int], List[Tuple[int, Tuple[int, int]]]] = {}
        for arc in cfg.arcs:
            for ci, cj in matching.get(arc.index, ()):
                a = (arc.left_region, ci)
                b = (arc.right_region, cj)
                adj.setdefault(a, []).append((arc.index, b))
                adj.setdefault(b, []).append((arc.index, a))
        while frontier:
            nxt = []
            for s in frontier:
                for aid, t in sorted(adj.get(s, [])):
                    if t not in relabel:
                        touch(t)
                        nxt.append(t)
            frontier = nxt
        for r in range(len(chain)):
            for c in range(chain[r]):
                touch((r, c))
        canon = []
        for arc in cfg.arcs:
            pairs = matching.get(arc.index, ())
            lab = sorted((relabel[(cfg.arcs[arc.index].left_region, ci)],
                          relabel[(cfg.arcs[arc.index].right_region, cj)])
                         for ci, cj in pairs)
            canon.append((arc.index, tuple(lab)))
        forms.append(tuple(canon))
    return min(forms)
