"""Arrangement complex of a transverse curve collection on a flat surface.

Construction: overlay all curve polylines and the polygon boundary inside the
4g-gon (every face there is a disk), glue faces across identified sides, then
erase the auxiliary boundary edges so faces merge into the true complement
regions.  Regions carry the Euler characteristic of their compactification
(the surface cut along the curves) and their corner count, hence the Euler
measure e(R) = chi(R) - corners(R)/4.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

from .curves import (
    CrossingRecord,
    CurveError,
    CurveImmersion,
    CurvePos,
    TransversalityError,
    TriplePointError,
    intersections,
    self_intersections,
)
from .exactgeom import Pt, angular_key, cross, dot as _dot, neg, param_on_segment, sub
from .surface import FlatSurface


@dataclass(frozen=True)
class Vertex:
    """A crossing of the arrangement, with its ordered branch frame.

    For a crossing of two curves the first branch is the lower curve index;
    for a self-crossing it is the earlier passage along the curve.
    """
    index: int
    point: Pt
    curve_a: int
    curve_b: int
    pos_a: CurvePos
    pos_b: CurvePos
    sign: int  # det(tangent_a, tangent_b)


@dataclass
class Arc:
    """Maximal curve segment between consecutive crossings (or a full closed
    curve when the curve meets no crossing)."""
    index: int
    curve: int
    start_vertex: Optional[int]
    end_vertex: Optional[int]
    segments: Tuple[Tuple[Pt, Pt], ...] = ()  # directed; may jump across gluings
    left_region: int = -1
    right_region: int = -1
    has_marked: bool = False

    @property
    def closed(self) -> bool:
        return self.start_vertex is None

    @property
    def segment_count(self) -> int:
        return len(self.segments)


@dataclass
class Region:
    index: int
    chi: int
    corners: int
    face_count: int
    contains_cone: bool
    cycles: Tuple[Tuple, ...] = ()

    @property
    def euler4(self) -> int:
        return 4 * self.chi - self.corners

    @property
    def euler(self) -> Fraction:
        return Fraction(self.euler4, 4)


@dataclass(frozen=True)
class Sector:
    """One of the four corner sectors at a crossing vertex."""
    vertex: int
    label: Tuple[int, int]  # signs along (branch a, branch b)
    region: int
    germ_cw: int   # germ index bounding the sector clockwise (sector start)
    germ_ccw: int  # germ index bounding counterclockwise (sector end)


@dataclass(frozen=True)
class Germ:
    """Outgoing ray of an arc end at a crossing vertex."""
    vertex: int
    index: int
    direction: Pt
    branch: int        # 0 or 1 in the vertex frame
    outgoing: bool     # True when the arc leaves the vertex along the ray
    arc: int
    left_sector: int   # sector on the arc's left near the vertex (sector idx at vertex)
    right_sector: int


class Configuration:
    """Immutable arrangement of a curve collection; built by build_configuration."""

    def __init__(self, surface: FlatSurface, curves: Sequence[CurveImmersion]):
        self.surface = surface
        self.curves: List[CurveImmersion] = list(curves)
        if not self.curves:
            raise CurveError("a configuration needs at least one curve")
        self.vertices: List[Vertex] = []
        self.arcs: List[Arc] = []
        self.regions: List[Region] = []
        self.arcs_of_curve: List[List[int]] = []
        self.vertex_cycle_of_curve: List[List[Tuple[CurvePos, int, int]]] = []
        self.marked_arc: List[int] = []
        self.germs_of_vertex: List[List[Germ]] = []
        self.sectors_of_vertex: List[List[Sector]] = []
        self.cone_region: int = -1
        self._build()

    # -- public queries ------------------------------------------------------

    def vertex_between(self, i: int, j: int) -> List[int]:
        """Vertices where curves i and j cross (ordered pair unordered here)."""
        a, b = min(i, j), max(i, j)
        return [v.index for v in self.vertices if (v.curve_a, v.curve_b) == (a, b)]

    def sector_by_label(self, vertex: int, label: Tuple[int, int]) -> Sector:
        for s in self.sectors_of_vertex[vertex]:
            if s.label == label:
                return s
        raise KeyError((vertex, label))

    def region_matrix_data(self):
        """(boundary matrix rows=arcs cols=regions, euler form as Fractions)."""
        nr = len(self.regions)
        rows = []
        for arc in self.arcs:
            row = [0] * nr
            row[arc.left_region] += 1
            row[arc.right_region] -= 1
            rows.append(row)
        euler = [r.euler for r in self.regions]
        return rows, euler

    def euler4_row(self) -> List[int]:
        return [r.euler4 for r in self.regions]

    def fingerprint(self) -> Tuple:
        """Canonical combinatorial summary, stable under curve-list rotation."""
        region_data = tuple(sorted((r.chi, r.corners, r.face_count) for r in self.regions))
        # normalize crossing signs by an order on the curves themselves, not
        # their position in the list
        def curve_key(i):
            return self.curves[i].points
        vert_data = []
        for v in self.vertices:
            s = v.sign
            if v.curve_a != v.curve_b and curve_key(v.curve_a) > curve_key(v.curve_b):
                s = -s
            vert_data.append(s)
        arc_data = tuple(sorted((self.regions[a.left_region].chi,
                                 self.regions[a.right_region].chi) for a in self.arcs))
        return (len(self.vertices), len(self.arcs), region_data,
                tuple(sorted(vert_data)), arc_data)

    # -- construction --------------------------------------------------------

    def _build(self):
        surface = self.surface
        curves = self.curves
        n_curves = len(curves)

        # 1. crossings, with global coincidence checks
        records: List[Tuple[int, int, CrossingRecord]] = []
        for i, c in enumerate(curves):
            for rec in self_intersections(c):
                records.append((i, i, rec))
        for i in range(n_curves):
            for j in range(i + 1, n_curves):
                for rec in intersections(curves[i], curves[j]):
                    records.append((i, j, rec))
        all_curve_points = set()
        for c in curves:
            all_curve_points.update(c.points)
        seen_points: Dict[Pt, Tuple[int, int]] = {}
        for i, j, rec in records:
            if rec.point in seen_points:
                raise TriplePointError(
                    f"crossing point {rec.point} shared by pairs {seen_points[rec.point]} and {(i, j)}")
            if rec.point in all_curve_points:
                raise TransversalityError(f"crossing at a polyline vertex {rec.point}")
            seen_points[rec.point] = (i, j)
        records.sort(key=lambda t: (t[0], t[1], t[2].pos_a, t[2].pos_b))
        for idx, (i, j, rec) in enumerate(records):
            self.vertices.append(Vertex(idx, rec.point, i, j, rec.pos_a, rec.pos_b, rec.sign))

        # events per curve: (position, vertex index, branch)
        events: List[List[Tuple[CurvePos, int, int]]] = [[] for _ in curves]
        for v in self.vertices:
            events[v.curve_a].append((v.pos_a, v.index, 0))
            events[v.curve_b].append((v.pos_b, v.index, 1))
        for lst in events:
            lst.sort(key=lambda t: t[0])
        self.vertex_cycle_of_curve = events

        # 2. planar node registry and edges inside the polygon
        node_of_point: Dict[Pt, int] = {}
        node_kind: List[str] = []

        def register(p: Pt, kind: str) -> int:
            if p in node_of_point:
                nid = node_of_point[p]
                if node_kind[nid] != kind:
                    raise TransversalityError(
                        f"coincident features of kinds {node_kind[nid]}/{kind} at {p}")
                return nid
            node_of_point[p] = len(node_kind)
            node_kind.append(kind)
            return node_of_point[p]

        for v in self.vertices:
            register(v.point, "cross")
        for c in curves:
            sides = c.point_sides
            for k, p in enumerate(c.points):
                register(p, "bnd" if sides[k] is not None else "corner")
        for vtx in surface.vertices:
            register(vtx, "pcorner")

        # curve sub-edges; each is (node_u, node_v) directed along the curve,
        # tagged (curve, leg, t0, t1)
        edges: List[Tuple[int, int, Tuple]] = []  # (u, v, tag); tag[0] in {"curve","aux"}
        sub_edges_of_curve: List[List[int]] = [[] for _ in curves]
        events_by_leg: List[Dict[int, List[Tuple[Fraction, int]]]] = [dict() for _ in curves]
        for ci, lst in enumerate(events):
            for pos, vid, branch in lst:
                events_by_leg[ci].setdefault(pos.leg, []).append((pos.param, vid))
        for ci, c in enumerate(curves):
            for leg in c.legs:
                cuts = sorted(events_by_leg[ci].get(leg.index, []))
                chain: List[Tuple[Fraction, int]] = [(Fraction(0), node_of_point[leg.start])]
                for t, vid in cuts:
                    chain.append((t, node_of_point[self.vertices[vid].point]))
                chain.append((Fraction(1), node_of_point[leg.end]))
                for k in range(len(chain) - 1):
                    t0, u = chain[k]
                    t1, w = chain[k + 1]
                    edges.append((u, w, ("curve", ci, leg.index, t0, t1)))
                    sub_edges_of_curve[ci].append(len(edges) - 1)

        # boundary sub-edges along each polygon side
        boundary_edges_of_side: List[List[int]] = []
        points_of_side: List[List[Tuple[Fraction, int]]] = []
        for j in range(surface.num_sides):
            a, b = surface.side(j)
            pts_here: List[Tuple[Fraction, int]] = [(Fraction(0), node_of_point[a]),
                                                    (Fraction(1), node_of_point[b])]
            for p, nid in node_of_point.items():
                if node_kind[nid] == "bnd":
                    t = None
                    if cross(sub(b, a), sub(p, a)) == 0:
                        t = param_on_segment(a, b, p)
                    if t is not None and 0 < t < 1:
                        pts_here.append((t, nid))
            pts_here.sort()
            points_of_side.append(pts_here)
            ids = []
            for k in range(len(pts_here) - 1):
                edges.append((pts_here[k][1], pts_here[k + 1][1], ("aux", j, k)))
                ids.append(len(edges) - 1)
            boundary_edges_of_side.append(ids)

        # validate side pairings match exactly under the gluing translation
        point_of_node = {nid: p for p, nid in node_of_point.items()}
        aux_partner: Dict[int, int] = {}
        for j in range(2 * surface.genus):
            jj = surface.paired_side(j)
            here = points_of_side[j]
            there = points_of_side[jj]
            if len(here) != len(there):
                raise CurveError("side pairing mismatch (point counts differ)")
            tr = surface.side_translation(j)
            for (t, nid), (t2, nid2) in zip(here, reversed(there)):
                p_img = (point_of_node[nid][0] + tr[0], point_of_node[nid][1] + tr[1])
                if node_kind[nid] == "bnd" and p_img != point_of_node[nid2]:
                    raise CurveError("side pairing mismatch (points differ)")
            e_here = boundary_edges_of_side[j]
            e_there = boundary_edges_of_side[jj]
            for k, eid in enumerate(e_here):
                aux_partner[eid] = e_there[len(e_there) - 1 - k]
                aux_partner[e_there[len(e_there) - 1 - k]] = eid

        # 3. DCEL face tracing (intra-polygon)
        nh = 2 * len(edges)

        def he_tail(h):
            e = edges[h // 2]
            return e[0] if h % 2 == 0 else e[1]

        def he_head(h):
            e = edges[h // 2]
            return e[1] if h % 2 == 0 else e[0]

        def he_dir(h):
            t, hd = point_of_node[he_tail(h)], point_of_node[he_head(h)]
            return sub(hd, t)

        out_at: Dict[int, List[int]] = {}
        for h in range(nh):
            out_at.setdefault(he_tail(h), []).append(h)
        order_in_node: Dict[int, int] = {}
        for nid, lst in out_at.items():
            lst.sort(key=lambda h: angular_key(he_dir(h)))
            for k, h in enumerate(lst):
                order_in_node[h] = k

        def next_he(h):
            rev = h ^ 1
            nid = he_tail(rev)
            lst = out_at[nid]
            k = order_in_node[rev]
            return lst[(k - 1) % len(lst)]

        face_of_he: List[int] = [-1] * nh
        faces: List[List[int]] = []  # boundary cycles (faces may own several)
        for h in range(nh):
            if face_of_he[h] != -1:
                continue
            cyc = []
            cur = h
            while face_of_he[cur] == -1:
                face_of_he[cur] = len(faces)
                cyc.append(cur)
                cur = next_he(cur)
            if cur != h:
                raise CurveError("face tracing failed")  # pragma: no cover
            faces.append(cyc)

        def cycle_area2(cyc) -> Fraction:
            total = Fraction(0)
            for h in cyc:
                total += cross(point_of_node[he_tail(h)], point_of_node[he_head(h)])
            return total

        def winding_contains(cyc, p: Pt) -> bool:
            w = 0
            rx, ry = p
            for h in cyc:
                u = point_of_node[he_tail(h)]
                v = point_of_node[he_head(h)]
                if u[1] <= ry < v[1] or v[1] <= ry < u[1]:
                    x = u[0] + (ry - u[1]) * (v[0] - u[0]) / (v[1] - u[1])
                    if x > rx:
                        w += 1 if v[1] > u[1] else -1
            return w != 0

        def cycle_ref(cyc) -> Pt:
            h = cyc[0]
            u = point_of_node[he_tail(h)]
            v = point_of_node[he_head(h)]
            return ((u[0] + v[0]) / 2, (u[1] + v[1]) / 2)

        areas = [cycle_area2(c) for c in faces]
        if any(a == 0 for a in areas):
            raise CurveError("degenerate zero-area cycle")  # pragma: no cover
        positives = [i for i, a in enumerate(areas) if a > 0]

        # a negative cycle is either the global outer boundary or a hole of
        # the face bounded by its innermost enclosing positive cycle
        group_parent = list(range(len(faces)))

        def gfind(x):
            while group_parent[x] != x:
                group_parent[x] = group_parent[group_parent[x]]
                x = group_parent[x]
            return x

        outer = None
        for ci, a in enumerate(areas):
            if a >= 0:
                continue
            ref = cycle_ref(faces[ci])
            candidates = [p for p in positives if winding_contains(faces[p], ref)]
            if not candidates:
                if outer is not None:
                    raise CurveError("two unbounded cycles")  # pragma: no cover
                outer = ci
                continue
            inner = candidates[0]
            for p in candidates[1:]:
                if winding_contains(faces[inner], cycle_ref(faces[p])):
                    inner = p
            group_parent[max(gfind(ci), gfind(inner))] = min(gfind(ci), gfind(inner))
        if outer is None:
            raise CurveError("no outer face found")  # pragma: no cover
        group_of_cycle = [gfind(i) for i in range(len(faces))]
        cycles_per_group: Dict[int, int] = {}
        for gid in group_of_cycle:
            cycles_per_group[gid] = cycles_per_group.get(gid, 0) + 1

        # 4. region merging across glued boundary edges
        parent = list(group_parent)

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)

        def inner_half(eid: int) -> int:
            h0, h1 = 2 * eid, 2 * eid + 1
            return h0 if group_of_cycle[face_of_he[h0]] != outer else h1

        for eid, pid in aux_partner.items():
            union(face_of_he[inner_half(eid)], face_of_he[inner_half(pid)])

        face_region_root: Dict[int, int] = {}
        for fi in range(len(faces)):
            if group_of_cycle[fi] == outer:
                continue
            face_region_root[fi] = find(fi)

        # 5. arcs
        arc_of_subedge: Dict[int, int] = {}
        self.arcs_of_curve = [[] for _ in curves]
        for ci, c in enumerate(curves):
            ev = events[ci]
            sub_ids = sub_edges_of_curve[ci]  # already in traversal order
            if not ev:
                arc = Arc(len(self.arcs), ci, None, None)
                self.arcs.append(arc)
                self.arcs_of_curve[ci].append(arc.index)
                for eid in sub_ids:
                    arc_of_subedge[eid] = arc.index
                arc.segments = self._arc_segments(sub_ids, edges, point_of_node)
                continue
            # positions (as node ids) where arcs break
            cut_nodes = [node_of_point[self.vertices[vid].point] for _, vid, _ in ev]
            # rotate sub-edge list so it starts right after the first cut
            start_k = None
            for k, eid in enumerate(sub_ids):
                if edges[eid][0] == cut_nodes[0]:
                    # make sure this is the outgoing sub-edge at the first event
                    start_k = k
                    break
            if start_k is None:
                raise CurveError("arc assembly failed")  # pragma: no cover
            ordered = sub_ids[start_k:] + sub_ids[:start_k]
            cuts = {node_of_point[self.vertices[vid].point]: vid for _, vid, _ in ev}
            current: List[int] = []
            start_vid = ev[0][1]
            arcs_here: List[Tuple[int, List[int], int]] = []
            svid = start_vid
            for eid in ordered:
                current.append(eid)
                head = edges[eid][1]
                if head in cuts:
                    arcs_here.append((svid, current, cuts[head]))
                    svid = cuts[head]
                    current = []
            if current:
                raise CurveError("arc assembly left a tail")  # pragma: no cover
            for svid_, seq, evid in arcs_here:
                arc = Arc(len(self.arcs), ci, svid_, evid)
                self.arcs.append(arc)
                self.arcs_of_curve[ci].append(arc.index)
                for eid in seq:
                    arc_of_subedge[eid] = arc.index
                arc.segments = self._arc_segments(seq, edges, point_of_node)

        # arc left/right regions (left face of forward half-edge)
        for eid, aid in arc_of_subedge.items():
            lf = face_of_he[2 * eid]
            rf = face_of_he[2 * eid + 1]
            if lf == outer or rf == outer:
                raise CurveError("curve edge on outer face")  # pragma: no cover
            lr, rr = face_region_root[lf], face_region_root[rf]
            arc = self.arcs[aid]
            if arc.left_region == -1:
                arc.left_region, arc.right_region = lr, rr
            elif (arc.left_region, arc.right_region) != (lr, rr):
                raise CurveError("inconsistent arc sides")  # pragma: no cover

        # marked arcs
        self.marked_arc = []
        for ci, c in enumerate(curves):
            leg_idx = c.leg_of_marked_point()
            # the sub-edge starting at the marked point
            target = None
            for eid in sub_edges_of_curve[ci]:
                tag = edges[eid][2]
                if tag[2] == leg_idx and tag[3] == 0:
                    target = eid
                    break
            if target is None:
                raise CurveError("marked point not on a sub-edge start")  # pragma: no cover
            aid = arc_of_subedge[target]
            self.arcs[aid].has_marked = True
            self.marked_arc.append(aid)

        # 6. sectors and germs at each crossing vertex
        self._build_vertex_structure(
            node_of_point, point_of_node, out_at, order_in_node, face_of_he,
            face_region_root, arc_of_subedge, edges)

        # 7. region assembly: chi, corners, boundary cycles
        self._assemble_regions(faces, outer, group_of_cycle, cycles_per_group,
                               face_of_he, face_region_root, aux_partner,
                               arc_of_subedge, edges, node_of_point, node_kind,
                               point_of_node)

        # 8. global validations
        face_chi_total = sum(2 - cnt for gid, cnt in cycles_per_group.items()
                             if gid != outer)
        self._validate_global(face_chi_total, aux_partner, node_kind, node_of_point)

    @staticmethod
    def _arc_segments(sub_ids, edges, point_of_node) -> Tuple[Tuple[Pt, Pt], ...]:
        return tuple((point_of_node[edges[eid][0]], point_of_node[edges[eid][1]])
                     for eid in sub_ids)

    def _build_vertex_structure(self, node_of_point, point_of_node, out_at,
                                order_in_node, face_of_he, face_region_root,
                                arc_of_subedge, edges):
        self.germs_of_vertex = []
        self.sectors_of_vertex = []
        for v in self.vertices:
            nid = node_of_point[v.point]
            outs = out_at[nid]
            if len(outs) != 4:
                raise CurveError(f"crossing vertex of degree {len(outs)}")
            # tangents of the two branches
            ca = self.curves[v.curve_a]
            cb = self.curves[v.curve_b]
            t_a = ca.legs[v.pos_a.leg].direction
            t_b = cb.legs[v.pos_b.leg].direction
            germs: List[Germ] = []
            for h in outs:
                e = edges[h // 2]
                tag = e[2]
                aid = arc_of_subedge[h // 2]
                d = sub(point_of_node[(e[1] if h % 2 == 0 else e[0])], v.point)
                along = cross(d, t_a) == 0
                branch = 0 if along else 1
                ref = t_a if branch == 0 else t_b
                outgoing = _dot(d, ref) > 0
                germs.append(Germ(v.index, order_in_node[h], d, branch, outgoing, aid, -1, -1))
            germs.sort(key=lambda g: angular_key(g.direction))
            # sectors between consecutive germs (counterclockwise)
            sectors: List[Sector] = []
            sector_regions = []
            for k in range(4):
                g1 = germs[k]
                g2 = germs[(k + 1) % 4]
                mid = (g1.direction[0] + g2.direction[0], g1.direction[1] + g2.direction[1])
                x, y = _solve2(t_a, t_b, mid)
                label = (1 if x > 0 else -1, 1 if y > 0 else -1)
                # region of the sector: left face of the outgoing half-edge g1
                h = self._half_edge_for_germ(v, g1, out_at[node_of_point[v.point]],
                                             point_of_node, edges)
                region = face_region_root[face_of_he[h]]
                sectors.append(Sector(v.index, label, region, k, (k + 1) % 4))
                sector_regions.append(region)
            labels = {s.label for s in sectors}
            if len(labels) != 4:
                raise CurveError("degenerate sector labels")  # pragma: no cover
            # attach flanking sectors to germs
            final_germs: List[Germ] = []
            for k, g in enumerate(germs):
                ccw_sector = k          # sector between germ k and k+1
                cw_sector = (k - 1) % 4  # sector between germ k-1 and k
                if g.outgoing:
                    left_sector, right_sector = ccw_sector, cw_sector
                else:
                    left_sector, right_sector = cw_sector, ccw_sector
                final_germs.append(Germ(g.vertex, k, g.direction, g.branch,
                                        g.outgoing, g.arc, left_sector, right_sector))
            self.germs_of_vertex.append(final_germs)
            self.sectors_of_vertex.append(sectors)
            # consistency: sector regions match arc side data
            for g in final_germs:
                arc = self.arcs[g.arc]
                if sectors[g.left_sector].region != arc.left_region or \
                        sectors[g.right_sector].region != arc.right_region:
                    raise CurveError("sector/arc side mismatch")  # pragma: no cover

    def _half_edge_for_germ(self, v, germ, outs, point_of_node, edges):
        for h in outs:
            e = edges[h // 2]
            d = sub(point_of_node[(e[1] if h % 2 == 0 else e[0])], v.point)
            if d == germ.direction:
                return h
        raise CurveError("germ half-edge not found")  # pragma: no cover

    def _assemble_regions(self, faces, outer, group_of_cycle, cycles_per_group,
                          face_of_he, face_region_root, aux_partner,
                          arc_of_subedge, edges, node_of_point, node_kind,
                          point_of_node):
        roots = sorted(set(face_region_root.values()))

        def skip(fi):
            return group_of_cycle[fi] == outer

        # corner slots: (cycle, position) with union-find for the cut surface
        slot_id: Dict[Tuple[int, int], int] = {}
        for fi, cyc in enumerate(faces):
            if skip(fi):
                continue
            for k in range(len(cyc)):
                slot_id[(fi, k)] = len(slot_id)
        parent = list(range(len(slot_id)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x, y):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)

        pos_of_he: Dict[int, Tuple[int, int]] = {}
        for fi, cyc in enumerate(faces):
            if skip(fi):
                continue
            for k, h in enumerate(cyc):
                pos_of_he[h] = (fi, k)

        def inner_half(eid):
            h0, h1 = 2 * eid, 2 * eid + 1
            return h0 if not skip(face_of_he[h0]) else h1

        glued_pairs = set()
        for eid, pid in aux_partner.items():
            if (pid, eid) in glued_pairs:
                continue
            glued_pairs.add((eid, pid))
        for eid, pid in glued_pairs:
            h, hp = inner_half(eid), inner_half(pid)
            f, k = pos_of_he[h]
            fp, kp = pos_of_he[hp]
            lf, lfp = len(faces[f]), len(faces[fp])
            # tail slot of h ~ head slot of hp, head of h ~ tail of hp
            union(slot_id[(f, k)], slot_id[(fp, (kp + 1) % lfp)])
            union(slot_id[(f, (k + 1) % lf)], slot_id[(fp, kp)])

        # per region: face groups, aux pair count, curve uses, slot orbits
        region_faces: Dict[int, set] = {r: set() for r in roots}
        for fi, root in face_region_root.items():
            region_faces[root].add(group_of_cycle[fi])
        region_aux: Dict[int, int] = {r: 0 for r in roots}
        for eid, pid in glued_pairs:
            region_aux[face_region_root[face_of_he[inner_half(eid)]]] += 1
        region_curve_uses: Dict[int, List[int]] = {r: [] for r in roots}
        for fi, cyc in enumerate(faces):
            if skip(fi):
                continue
            r = face_region_root[fi]
            for h in cyc:
                if edges[h // 2][2][0] == "curve":
                    region_curve_uses[r].append(h)
        region_slots: Dict[int, set] = {r: set() for r in roots}
        for (fi, k), sid in slot_id.items():
            region_slots[face_region_root[fi]].add(find(sid))

        # sector lookup for corner items: (vertex node, incoming he, outgoing he)
        sector_of_slot: Dict[int, Tuple[int, Tuple[int, int]]] = {}
        vertex_by_node = {}
        for v in self.vertices:
            vertex_by_node[node_of_point[v.point]] = v.index
        for fi, cyc in enumerate(faces):
            if skip(fi):
                continue
            L = len(cyc)
            for k in range(L):
                h_in = cyc[(k - 1) % L]
                h_out = cyc[k]
                # slot k sits at the node between h_in and h_out
                e_out = edges[h_out // 2]
                nid = e_out[0] if h_out % 2 == 0 else e_out[1]
                if nid in vertex_by_node:
                    vid = vertex_by_node[nid]
                    sec = self._sector_between(vid, h_in, h_out, point_of_node, edges)
                    sector_of_slot[slot_id[(fi, k)]] = (vid, sec)

        # boundary cycles per region, at arc granularity
        next_curve_use: Dict[int, int] = {}
        corner_between: Dict[int, Optional[Tuple[int, Tuple[int, int]]]] = {}
        for h in sorted(pos_of_he):
            if edges[h // 2][2][0] != "curve":
                continue
            # walk forward through aux edges to the next curve use
            fi, k = pos_of_he[h]
            corner = None
            cur_f, cur_k = fi, (k + 1) % len(faces[fi])
            guard = 0
            while True:
                guard += 1
                if guard > 10_000_000:
                    raise CurveError("boundary walk stuck")  # pragma: no cover
                sid = slot_id[(cur_f, cur_k)]
                info = sector_of_slot.get(sid)
                if info is not None:
                    corner = info
                nxt = faces[cur_f][cur_k]
                if edges[nxt // 2][2][0] == "curve":
                    next_curve_use[h] = nxt
                    corner_between[h] = corner
                    break
                pid = aux_partner[nxt // 2]
                hp = inner_half(pid)
                cur_f, cur_k = pos_of_he[hp]
                cur_k = (cur_k + 1) % len(faces[cur_f])

        # trace boundary cycles of curve uses
        visited = set()
        cycles_of_region: Dict[int, List[Tuple]] = {r: [] for r in roots}
        for h in sorted(next_curve_use):
            if h in visited:
                continue
            r = face_region_root[pos_of_he[h][0]]
            items = []
            cur = h
            while cur not in visited:
                visited.add(cur)
                eid = cur // 2
                aid = arc_of_subedge[eid]
                side = 1 if cur % 2 == 0 else -1  # region on left (+) or right (-)
                items.append(("arc", aid, side))
                corner = corner_between[cur]
                if corner is not None:
                    items.append(("corner", corner[0], corner[1]))
                cur = next_curve_use[cur]
            if cur != h:
                raise CurveError("region boundary trace failed")  # pragma: no cover
            cycles_of_region[r].append(_compress_cycle(items))

        # assemble Region objects with canonical indexing
        cone_nodes = {node_of_point[v] for v in self.surface.vertices}
        cone_faces = set()
        for fi, cyc in enumerate(faces):
            if skip(fi):
                continue
            for h in cyc:
                e = edges[h // 2]
                if e[0] in cone_nodes or e[1] in cone_nodes:
                    cone_faces.add(fi)
        cone_roots = {face_region_root[fi] for fi in cone_faces}
        if len(cone_roots) != 1:
            raise CurveError("cone point not in a unique region")  # pragma: no cover

        key_of_root = {}
        for r in roots:
            uses = [(item[1], item[2]) for cyc in cycles_of_region[r] for item in cyc
                    if item[0] == "arc"]
            key_of_root[r] = min(uses)
        order = sorted(roots, key=lambda r: key_of_root[r])
        index_of_root = {r: k for k, r in enumerate(order)}

        self.regions = []
        corners_per_root: Dict[int, int] = {r: 0 for r in roots}
        for secs in self.sectors_of_vertex:
            for s in secs:
                corners_per_root[s.region] += 1
        for r in order:
            fcount = len(region_faces[r])  # number of face groups
            face_chi = sum(2 - cycles_per_group[g] for g in region_faces[r])
            e_count = region_aux[r] + len(region_curve_uses[r])
            v_count = len(region_slots[r])
            chi = v_count - e_count + face_chi
            self.regions.append(Region(
                index=index_of_root[r],
                chi=chi,
                corners=corners_per_root[r],
                face_count=fcount,
                contains_cone=(r in cone_roots),
                cycles=tuple(sorted(cycles_of_region[r])),
            ))
            if r in cone_roots:
                self.cone_region = index_of_root[r]

        # remap region ids everywhere
        remap = index_of_root
        for arc in self.arcs:
            arc.left_region = remap[arc.left_region]
            arc.right_region = remap[arc.right_region]
        self.sectors_of_vertex = [
            [Sector(s.vertex, s.label, remap[s.region], s.germ_cw, s.germ_ccw) for s in secs]
            for secs in self.sectors_of_vertex]
        # re-run germ sector consistency after remap
        for vid, germs in enumerate(self.germs_of_vertex):
            secs = self.sectors_of_vertex[vid]
            for g in germs:
                arc = self.arcs[g.arc]
                assert secs[g.left_sector].region == arc.left_region
                assert secs[g.right_sector].region == arc.right_region

    def _sector_between(self, vid: int, h_in: int, h_out: int, point_of_node, edges) -> Tuple[int, int]:
        """Label of the sector of the face whose boundary turns h_in -> h_out at
        the crossing vertex vid."""
        v = self.vertices[vid]
        e_in = edges[h_in // 2]
        e_out = edges[h_out // 2]
        tail_in = point_of_node[e_in[0] if h_in % 2 == 0 else e_in[1]]
        head_out = point_of_node[e_out[1] if h_out % 2 == 0 else e_out[0]]
        ray_back = sub(tail_in, v.point)
        ray_fwd = sub(head_out, v.point)
        t_a = self.curves[v.curve_a].legs[v.pos_a.leg].direction
        t_b = self.curves[v.curve_b].legs[v.pos_b.leg].direction
        mid = (ray_back[0] + ray_fwd[0], ray_back[1] + ray_fwd[1])
        x, y = _solve2(t_a, t_b, mid)
        return (1 if x > 0 else -1, 1 if y > 0 else -1)

    def _validate_global(self, face_chi_total, aux_partner, node_kind, node_of_point):
        surface = self.surface
        # glued complex euler characteristic (faces may be non-disk planar
        # regions contributing 2 - #cycles each)
        glued_faces = face_chi_total
        n_aux_pairs = len(aux_partner) // 2
        curve_edge_count = 0
        closed_arcs = 0
        for arc in self.arcs:
            curve_edge_count += arc.segment_count
            if arc.closed:
                closed_arcs += 1
        # glued node count: interior nodes + glued boundary pairs + one cone node
        kinds = node_kind
        n_interior = sum(1 for k in kinds if k in ("cross", "corner"))
        n_bnd = sum(1 for k in kinds if k == "bnd")
        n_pc = sum(1 for k in kinds if k == "pcorner")
        glued_nodes = n_interior + n_bnd // 2 + 1
        glued_edges = curve_edge_count + n_aux_pairs
        chi = glued_nodes - glued_edges + glued_faces
        if chi != surface.euler_characteristic():
            raise CurveError(f"glued complex has chi {chi}, expected {surface.euler_characteristic()}")
        # euler measure sums to chi(surface)
        total_e4 = sum(r.euler4 for r in self.regions)
        if total_e4 != 4 * surface.euler_characteristic():
            raise CurveError("euler measures do not sum to chi")
        # arc/vertex/region chi identity: chi = V - E + sum chi(R) + closed arcs
        v_count = len(self.vertices)
        a_count = len(self.arcs)
        total_chi = sum(r.chi for r in self.regions)
        if v_count - a_count + closed_arcs + total_chi != surface.euler_characteristic():
            raise CurveError("cut-region euler identity failed")


def _solve2(t_a: Pt, t_b: Pt, d: Pt) -> Tuple[Fraction, Fraction]:
    """Coordinates (x, y) with d = x*t_a + y*t_b."""
    det = cross(t_a, t_b)
    if det == 0:
        raise CurveError("degenerate tangent frame")  # pragma: no cover
    x = cross(d, t_b) / det
    y = cross(t_a, d) / det
    return x, y


def _compress_cycle(items: List[Tuple]) -> Tuple:
    """Merge consecutive same-arc same-side uses; canonical rotation."""
    if not items:
        return ()
    merged: List[Tuple] = []
    for it in items:
        if it[0] == "arc" and merged and merged[-1] == it:
            continue
        merged.append(it)
    # cyclic duplicate at the seam
    if len(merged) >= 2 and merged[0][0] == "arc" and merged[-1] == merged[0]:
        merged.pop()
    best = None
    for i in range(len(merged)):
        rot = tuple(merged[i:] + merged[:i])
        if best is None or rot < best:
            best = rot
    return best


def build_configuration(surface: FlatSurface, curves: Sequence[CurveImmersion]) -> Configuration:
    return Configuration(surface, curves)
