"""Cell hierarchies and the c-separated annulus decomposition.

Three hierarchy variants feed the spanner constructions: a quadtree for
bounded spread, a quadforest for bounded radius ratio, and a compressed
quadtree augmented via a well-separated pair decomposition for the
general case. All of them expose the same node type and are turned into
an annulus decomposition (cells, neighbor relation, assigned sites,
max-radius representatives) by derive_decomposition.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.spatial import cKDTree

from .core import (EPS, SQRT2, GridCell, cell_distance, cell_of,
                   closest_pair, cone_range_for_cell, same_level_gap_sq)

VARIANT_SPREAD = "spread"
VARIANT_RATIO = "ratio"
VARIANT_GENERAL = "general"


class QuadNode:
    """One cell of a quadtree / quadforest / compressed quadtree.

    `children` holds only non-empty children. For plain quadtrees all
    children sit one level below the parent; compressed edges may jump
    levels (the skipped annulus contains no sites).
    """

    __slots__ = ("id", "cell", "children", "parent", "sites", "m",
                 "max_radius", "R", "sorted_x", "sorted_y", "point_cell")

    def __init__(self, cell, sites):
        self.id = -1
        self.cell = cell
        self.children = []
        self.parent = None
        self.sites = sites
        self.m = None
        self.max_radius = 0.0
        self.R = []
        self.sorted_x = None
        self.sorted_y = None
        self.point_cell = None

    @property
    def wspd_cell(self):
        """Cell used for pair separation: single-site leaves shrink to
        the level-0 cell of their site."""
        return self.point_cell if self.point_cell is not None else self.cell

    @property
    def level(self):
        return self.cell.level

    def is_leaf(self):
        return not self.children

    def __repr__(self):
        return (f"QuadNode(level={self.cell.level}, ix={self.cell.ix}, "
                f"iy={self.cell.iy}, n={len(self.sites)})")


def collect_nodes(structure):
    """All nodes of a root or list of roots, ids assigned in BFS order."""
    roots = structure if isinstance(structure, list) else [structure]
    nodes = []
    queue = list(roots)
    while queue:
        v = queue.pop()
        nodes.append(v)
        queue.extend(v.children)
    nodes.sort(key=lambda v: (-v.cell.level, v.cell.ix, v.cell.iy))
    for i, v in enumerate(nodes):
        v.id = i
    return nodes


def _check_scaled(value, target, what):
    if abs(value - target) > 1e-6 * max(1.0, abs(target)):
        raise ValueError(f"input not normalized: {what} is {value}, expected {target}")


def _root_level(sites):
    """Smallest level whose origin cell covers all (translated) sites."""
    hi = max(max(s.x for s in sites), max(s.y for s in sites))
    lo = min(min(s.x for s in sites), min(s.y for s in sites))
    if lo < 0:
        raise ValueError("normalized sites must have non-negative coordinates")
    level = 0
    while 2 ** level / SQRT2 <= hi:
        level += 1
    return level


def _attach_sorted_lists(nodes, sites):
    """Per-node site ids sorted by x and by y, merged bottom-up."""
    xs = [s.x for s in sites]
    ys = [s.y for s in sites]
    for v in sorted(nodes, key=lambda v: v.cell.level):
        if v.is_leaf():
            v.sorted_x = sorted(v.sites, key=lambda i: (xs[i], i))
            v.sorted_y = sorted(v.sites, key=lambda i: (ys[i], i))
        else:
            sx = []
            sy = []
            for w in v.children:
                sx.extend(w.sorted_x)
                sy.extend(w.sorted_y)
            sx.sort(key=lambda i: (xs[i], i))
            sy.sort(key=lambda i: (ys[i], i))
            v.sorted_x = sx
            v.sorted_y = sy


def _subdivide(node, sites, stop_level):
    """Split non-empty cells level by level down to stop_level."""
    stack = [node]
    while stack:
        v = stack.pop()
        if v.cell.level <= stop_level:
            continue
        child_level = v.cell.level - 1
        buckets = {}
        for i in v.sites:
            c = cell_of(sites[i].x, sites[i].y, child_level)
            buckets.setdefault((c.ix, c.iy), []).append(i)
        for (ix, iy), idxs in sorted(buckets.items()):
            w = QuadNode(GridCell(child_level, ix, iy), idxs)
            w.parent = v
            v.children.append(w)
            stack.append(w)


def build_quadtree(sites, params):
    """Quadtree for the bounded-spread construction.

    Sites must be normalized so the closest pair is at distance c; level-0
    leaves then hold at most one site each.
    """
    if len(sites) == 0:
        raise ValueError("no sites")
    if len(sites) >= 2:
        d, _, _ = closest_pair([(s.x, s.y) for s in sites])
        _check_scaled(d, float(params.c), "closest-pair distance")
    L = _root_level(sites)
    root = QuadNode(GridCell(L, 0, 0), list(range(len(sites))))
    _subdivide(root, sites, 0)
    nodes = collect_nodes(root)
    for v in nodes:
        if v.cell.level == 0 and len(v.sites) > 1:
            raise AssertionError("level-0 cell with more than one site; input not normalized")
    _attach_sorted_lists(nodes, sites)
    return root


def radius_ratio(sites):
    radii = [s.radius for s in sites]
    return max(radii) / min(radii)


def forest_depth(psi):
    """Number of levels above 0 stored by the quadforest: ceil(log2 psi)."""
    if psi <= 1.0 + 1e-9:
        return 0
    return max(0, math.ceil(math.log2(psi) - 1e-12))


def build_quadforest(sites, params, depth=None):
    """Quadforest for the bounded-radius-ratio construction.

    Sites must be normalized so the smallest radius is at least c. Roots
    are the non-empty cells of level L = ceil(log2 psi) (or the given
    depth, when building one component of a larger normalized input);
    level-0 cells are not subdivided and may hold many sites.
    """
    if len(sites) == 0:
        raise ValueError("no sites")
    if min(s.radius for s in sites) < params.c * (1.0 - 1e-6):
        raise ValueError("input not normalized: smallest radius below c")
    L = forest_depth(radius_ratio(sites)) if depth is None else depth
    buckets = {}
    for i, s in enumerate(sites):
        c = cell_of(s.x, s.y, L)
        buckets.setdefault((c.ix, c.iy), []).append(i)
    roots = []
    for (ix, iy), idxs in sorted(buckets.items()):
        root = QuadNode(GridCell(L, ix, iy), idxs)
        _subdivide(root, sites, 0)
        roots.append(root)
    nodes = collect_nodes(roots)
    _attach_sorted_lists(nodes, sites)
    return roots


def partition_components(sites, params):
    """Site-index classes no transmission edge can cross (far-apart groups).

    Two sites interact only if the axis-parallel squares of side 2M
    centered at them intersect, where M is the largest radius after
    smallest-radius normalization. Connected components of that
    intersection graph are found with a uniform grid and union-find.
    """
    n = len(sites)
    if n == 0:
        return []
    M = max(s.radius for s in sites)
    parent = list(range(n))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    w = 2.0 * M
    xy = np.array([(s.x, s.y) for s in sites], dtype=np.float64)
    buckets = {}
    for i, s in enumerate(sites):
        buckets.setdefault((math.floor(s.x / w), math.floor(s.y / w)), []).append(i)
    # a bucket is w x w, so its sites are pairwise within chebyshev
    # distance w and form a single component
    for members in buckets.values():
        for i in members[1:]:
            union(members[0], i)
    # across adjacent buckets one witness pair within chebyshev distance w
    # merges both (already internally connected) bucket components
    trees = {}
    for (bx, by), members in buckets.items():
        for dx, dy in ((1, -1), (1, 0), (1, 1), (0, 1)):
            okey = (bx + dx, by + dy)
            other = buckets.get(okey)
            if other is None or find(members[0]) == find(other[0]):
                continue
            if okey not in trees:
                trees[okey] = cKDTree(xy[other])
            d, _ = trees[okey].query(xy[members], p=np.inf,
                                     distance_upper_bound=w * (1.0 + 1e-9))
            if np.min(d) <= w:
                union(members[0], other[0])
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def _smallest_enclosing_level(sites, idxs, top_level):
    """Largest grid level below top_level at which the sites still split."""
    minx = min(sites[i].x for i in idxs)
    maxx = max(sites[i].x for i in idxs)
    miny = min(sites[i].y for i in idxs)
    maxy = max(sites[i].y for i in idxs)
    level = top_level
    while level > 0:
        s = 2 ** (level - 1) / SQRT2
        if math.floor(minx / s) != math.floor(maxx / s) or \
           math.floor(miny / s) != math.floor(maxy / s):
            break
        level -= 1
    return level


def build_compressed_quadtree(sites, params):
    """Compressed quadtree: internal nodes hold >= 2 sites, leaves <= 1.

    Sites must be normalized so the closest pair is at distance c + 2.
    Degree-1 (compressed) edges skip only empty annuli; they usually jump
    at least two levels, but a single-level jump is kept when the sites of
    the only non-empty quadrant split immediately below it.
    """
    if len(sites) == 0:
        raise ValueError("no sites")
    if len(sites) >= 2:
        d, i, j = closest_pair([(s.x, s.y) for s in sites])
        if d <= 0.0:
            raise ValueError(f"duplicate points (sites {i} and {j})")
        _check_scaled(d, float(params.c + 2), "closest-pair distance")
    L = _root_level(sites)
    root = QuadNode(GridCell(L, 0, 0), list(range(len(sites))))
    stack = [root]
    while stack:
        v = stack.pop()
        if len(v.sites) <= 1:
            continue
        lvl = _smallest_enclosing_level(sites, v.sites, v.cell.level)
        if lvl < v.cell.level:
            s0 = sites[v.sites[0]]
            w = QuadNode(cell_of(s0.x, s0.y, lvl), v.sites)
            w.parent = v
            v.children.append(w)
            stack.append(w)
            continue
        child_level = v.cell.level - 1
        buckets = {}
        for i in v.sites:
            c = cell_of(sites[i].x, sites[i].y, child_level)
            buckets.setdefault((c.ix, c.iy), []).append(i)
        for (ix, iy), idxs in sorted(buckets.items()):
            w = QuadNode(GridCell(child_level, ix, iy), idxs)
            w.parent = v
            v.children.append(w)
            stack.append(w)
    for v in collect_nodes(root):
        if not v.children and len(v.sites) == 1:
            s = sites[v.sites[0]]
            v.point_cell = cell_of(s.x, s.y, 0)
    return root


def compute_wspd(root, c):
    """c-well-separated pair decomposition over a compressed quadtree.

    Returns unordered node pairs (v, w) such that every ordered site pair
    is covered by exactly one of them and
    c * max(diam(v), diam(w)) <= d(v, w) for each, where single-site
    leaves count with their point cell (diameter 1).
    """
    pairs = []
    split_stack = []
    walk = [root]
    while walk:
        v = walk.pop()
        ch = v.children
        walk.extend(ch)
        for a in range(len(ch)):
            for b in range(a + 1, len(ch)):
                split_stack.append((ch[a], ch[b]))
    while split_stack:
        v, w = split_stack.pop()
        cv = v.wspd_cell
        cw = w.wspd_cell
        if cell_distance(cv, cw) >= c * max(cv.diameter, cw.diameter):
            pairs.append((v, w))
            continue
        # split the larger side; a childless side cannot be split
        split_w = cw.diameter >= cv.diameter
        if split_w and not w.children:
            split_w = False
        if not split_w and not v.children:
            split_w = True
        if split_w and w.children:
            for u in w.children:
                split_stack.append((v, u))
        elif v.children:
            for u in v.children:
                split_stack.append((u, w))
        else:
            # two singleton leaves; their point cells are always
            # separated after closest-pair normalization
            pairs.append((v, w))
    return pairs


def _pow2_floor_level(r):
    return int(math.floor(math.log2(r) + 1e-12))


def augment_with_wspd(root, wspd, params, sites):
    """Insert the cells that make the compressed quadtree a valid basis
    for the annulus decomposition (one pair of equal-diameter cells per
    WSPD pair, duplicates merged), and rebuild the tree around them."""
    c = params.c
    cells = {}
    stack = [root]
    while stack:
        v = stack.pop()
        cells[(v.cell.level, v.cell.ix, v.cell.iy)] = v.cell
        stack.extend(v.children)
    for v, w in wspd:
        d = cell_distance(v.wspd_cell, w.wspd_cell)
        r = min(d / c, v.parent.cell.diameter, w.parent.cell.diameter)
        lr = _pow2_floor_level(r)
        for node in (v, w):
            base = node.wspd_cell
            lvl = min(max(lr, base.level), node.parent.cell.level)
            cell = base.parent_at(lvl)
            cells.setdefault((cell.level, cell.ix, cell.iy), cell)
    # rebuild: parent of each cell = nearest strict ancestor present
    by_key = dict(cells)
    new_nodes = {}
    for key in sorted(by_key, reverse=True):
        new_nodes[key] = QuadNode(by_key[key], [])
    top_level = max(k[0] for k in by_key)
    roots = []
    for key, node in new_nodes.items():
        level, ix, iy = key
        parent = None
        for lvl in range(level + 1, top_level + 1):
            shift = lvl - level
            pk = (lvl, ix >> shift, iy >> shift)
            if pk in new_nodes:
                parent = new_nodes[pk]
                break
        if parent is None:
            roots.append(node)
        else:
            node.parent = parent
            parent.children.append(node)
    if len(roots) != 1:
        raise AssertionError("augmented tree must keep a single root")
    new_root = roots[0]
    # site lists bottom-up; leaves of the rebuilt tree are original leaves
    for node in sorted(new_nodes.values(), key=lambda v: v.cell.level):
        if node.is_leaf():
            node.sites = [i for i in range(len(sites))
                          if cell_of(sites[i].x, sites[i].y, node.cell.level) == node.cell]
        else:
            node.sites = [i for w in node.children for i in w.sites]
    collect_nodes(new_root)
    return new_root


# ---------------------------------------------------------------------------
# annulus decomposition

class AnnulusDecomposition:
    """Cells Q, neighbor relation N, assigned sites R_sigma and max-radius
    representatives m_sigma derived from one of the hierarchies."""

    def __init__(self, roots, nodes, params, variant):
        self.roots = roots
        self.nodes = nodes
        self.params = params
        self.variant = variant
        self.partial = variant == VARIANT_RATIO
        self.by_level = {}
        for v in nodes:
            self.by_level.setdefault(v.cell.level, {})[(v.cell.ix, v.cell.iy)] = v
        self.level_arrays = {
            lvl: (
                np.array([v.id for v in d.values()], dtype=np.int64),
                np.array([v.cell.ix for v in d.values()], dtype=np.int64),
                np.array([v.cell.iy for v in d.values()], dtype=np.int64),
                np.array([v.max_radius for v in d.values()], dtype=np.float64),
            )
            for lvl, d in self.by_level.items()
        }
        self.neighbors = None

    @property
    def r_lower_bound(self):
        return self.params.c - 2 if self.variant == VARIANT_GENERAL else self.params.c

    def node_at(self, level, ix, iy):
        d = self.by_level.get(level)
        return None if d is None else d.get((ix, iy))


def _populate_assignments(nodes, sites, params, variant):
    lb = params.c - 2 if variant == VARIANT_GENERAL else params.c
    ub = 2 * (params.c + 1)
    for v in nodes:
        diam = v.cell.diameter
        best = -1.0
        best_i = None
        R = []
        for i in v.sites:
            r = sites[i].radius
            if r > best or (r == best and i < best_i):
                best = r
                best_i = i
            if lb * diam - EPS <= r < ub * diam + EPS:
                R.append(i)
        v.m = best_i
        v.max_radius = best
        v.R = R


def neighbor_pair_rows(decomp, prune=True):
    """Ordered neighbor pairs (target node id, source node id, level).

    A pair (sigma, tau) qualifies when both cells share a level and their
    gap lies in [c-2, 2c) cell diameters (checked in exact integer
    arithmetic). With prune=True, pairs whose source cell holds no site
    that could reach the target cell (max radius below the gap) are
    dropped; such pairs can contribute neither edges nor Definition-3
    witnesses.
    """
    from scipy.spatial import cKDTree

    c = decomp.params.c
    lo2 = 2 * (c - 2) * (c - 2)
    hi2 = 8 * c * c
    r_out = 2 * c * SQRT2 + 1.0
    out_v = []
    out_t = []
    out_lvl = []
    for lvl, (ids, ix, iy, mrad) in decomp.level_arrays.items():
        if len(ids) < 2:
            continue
        side = 2 ** lvl / SQRT2
        pts = np.stack([ix, iy], axis=1).astype(np.float64)
        tree = cKDTree(pts)
        if prune:
            # enumerate ordered pairs from qualifying sources only: a
            # source cell needs a site whose radius reaches the minimum
            # gap of the annulus, which excludes almost all cells at
            # coarse levels and keeps the pair count near-linear
            strong = np.flatnonzero(mrad >= math.sqrt(lo2) * side - EPS)
            if len(strong) == 0:
                continue
            for s0 in range(0, len(strong), 256):
                chunk = strong[s0:s0 + 256]
                balls = tree.query_ball_point(pts[chunk], r_out, p=np.inf)
                lens = [len(b) for b in balls]
                src = np.repeat(chunk, lens)
                if len(src) == 0:
                    continue
                tgt = np.fromiter((j for b in balls for j in b),
                                  dtype=np.int64, count=len(src))
                gx = np.maximum(np.abs(ix[src] - ix[tgt]) - 1, 0)
                gy = np.maximum(np.abs(iy[src] - iy[tgt]) - 1, 0)
                g2 = gx * gx + gy * gy
                keep = (g2 >= lo2) & (g2 < hi2)
                keep &= mrad[src] >= \
                    np.sqrt(g2.astype(np.float64)) * side - EPS
                if keep.any():
                    out_v.append(ids[tgt[keep]].astype(np.int32))
                    out_t.append(ids[src[keep]].astype(np.int32))
                    out_lvl.append(np.full(int(keep.sum()), lvl,
                                           dtype=np.int32))
        else:
            pairs = tree.query_pairs(r_out, p=np.inf, output_type="ndarray")
            if len(pairs) == 0:
                continue
            a = pairs[:, 0]
            b = pairs[:, 1]
            gx = np.maximum(np.abs(ix[a] - ix[b]) - 1, 0)
            gy = np.maximum(np.abs(iy[a] - iy[b]) - 1, 0)
            g2 = gx * gx + gy * gy
            keep = (g2 >= lo2) & (g2 < hi2)
            a = a[keep]
            b = b[keep]
            if len(a) == 0:
                continue
            for ta, so in ((a, b), (b, a)):
                out_v.append(ids[ta].astype(np.int32))
                out_t.append(ids[so].astype(np.int32))
                out_lvl.append(np.full(len(ta), lvl, dtype=np.int32))
    if not out_v:
        z = np.zeros(0, dtype=np.int32)
        return z, z, z
    return np.concatenate(out_v), np.concatenate(out_t), np.concatenate(out_lvl)


def derive_decomposition(structure, params, variant, sites,
                         materialize_neighbors=True):
    """Annulus decomposition over a built hierarchy.

    variant selects the lower endpoint of the assignment interval
    (c for the tree/forest variants, c - 2 for the compressed one) and
    whether the decomposition is partial (ratio variant: edges between
    close level-0 cells are handled by clique spanners instead).
    """
    roots = structure if isinstance(structure, list) else [structure]
    nodes = collect_nodes(roots)
    _populate_assignments(nodes, sites, params, variant)
    decomp = AnnulusDecomposition(roots, nodes, params, variant)
    if materialize_neighbors:
        tv, tt, _ = neighbor_pair_rows(decomp, prune=False)
        neighbors = {v.id: [] for v in nodes}
        for a, b in zip(tv.tolist(), tt.tolist()):
            neighbors[a].append(b)
        for lst in neighbors.values():
            lst.sort()
        decomp.neighbors = neighbors
    return decomp


def cone_assignments(decomp, prune=True):
    """Neighbor pairs annotated with the cones that must consider them.

    Returns an int64 array of rows (cone, level, target id, source id)
    sorted lexicographically, ready for the per-cone selection sweep. A
    source cell is assigned to cone j when it lies entirely inside the
    doubled cone of j whose apex is the target cell's center; the angular
    arithmetic mirrors cone_range_for_cell, vectorized over all pairs.
    """
    k = decomp.params.k
    tv, tt, lvl = neighbor_pair_rows(decomp, prune=prune)
    if len(tv) == 0:
        return np.zeros((0, 4), dtype=np.int64)
    nodes = decomp.nodes
    ix = np.array([v.cell.ix for v in nodes], dtype=np.float64)
    iy = np.array([v.cell.iy for v in nodes], dtype=np.float64)
    two_pi = 2.0 * math.pi
    delta = two_pi / k
    parts = []
    # chunked so the float intermediates stay bounded on large inputs
    for s in range(0, len(tv), 2_000_000):
        tv_c = tv[s:s + 2_000_000]
        tt_c = tt[s:s + 2_000_000]
        lvl_c = lvl[s:s + 2_000_000]
        side = (2.0 ** lvl_c) / SQRT2
        ax = (ix[tv_c] + 0.5) * side
        ay = (iy[tv_c] + 0.5) * side
        x0 = ix[tt_c] * side
        y0 = iy[tt_c] * side
        angs = np.empty((4, len(tv_c)))
        for ci, (cx, cy) in enumerate(((x0, y0), (x0 + side, y0),
                                       (x0 + side, y0 + side),
                                       (x0, y0 + side))):
            angs[ci] = np.arctan2(cy - ay, cx - ax)
        rel = (angs - angs[0] + math.pi) % two_pi - math.pi
        rmin = rel.min(axis=0)
        rmax = rel.max(axis=0)
        amin = angs[0] + rmin
        amax = angs[0] + rmax
        j_lo = np.ceil((amax - EPS) / delta - 1.5).astype(np.int64)
        j_hi = np.floor((amin + EPS) / delta + 0.5).astype(np.int64)
        ok = ((rmax - rmin) < math.pi) & (j_hi >= j_lo)
        counts = (j_hi - j_lo + 1)[ok]
        if len(counts) == 0:
            continue
        base = j_lo[ok]
        total = int(counts.sum())
        rep = np.repeat(np.arange(len(counts)), counts)
        start = np.concatenate(([0], np.cumsum(counts)[:-1]))
        cone = (base[rep] + (np.arange(total) - start[rep])) % k
        parts.append(np.stack([cone.astype(np.int32),
                               lvl_c[ok][rep].astype(np.int32),
                               tv_c[ok][rep].astype(np.int32),
                               tt_c[ok][rep].astype(np.int32)], axis=1))
    if not parts:
        return np.zeros((0, 4), dtype=np.int64)
    rows = parts[0] if len(parts) == 1 else np.vstack(parts)
    del parts
    order = np.lexsort((rows[:, 3], rows[:, 2], rows[:, 1], rows[:, 0]))
    return rows[order]


def decomposition_dump(decomp):
    """Debug listing: one line per node `level ix iy |sites| m R-size`."""
    lines = []
    for v in sorted(decomp.nodes, key=lambda v: (-v.cell.level, v.cell.ix, v.cell.iy)):
        m = -1 if v.m is None else v.m
        lines.append(f"{v.cell.level} {v.cell.ix} {v.cell.iy} "
                     f"{len(v.sites)} {m} {len(v.R)}")
    return "\n".join(lines)


def check_decomposition(decomp, sites, graph):
    """Soundness check of the annulus decomposition.

    Part (i): every stored neighbor pair is same-level with gap in
    [c-2, 2c) diameters, and the relation is symmetric. Part (ii): every
    edge pq of the explicit transmission graph (skipping, for partial
    decompositions, edges whose level-0 cells are closer than c-2) is
    covered by a neighbor pair (sigma, tau) with q in sigma, p in tau,
    and p assigned to tau or q inside the disk of tau's representative.
    Returns (part_i_violations, part_ii_violations).
    """
    from .core import disk_contains

    if decomp.neighbors is None:
        raise ValueError("decomposition was derived without neighbor lists")
    c = decomp.params.c
    lo2 = 2 * (c - 2) * (c - 2)
    hi2 = 8 * c * c
    nodes = decomp.nodes
    bad_i = []
    for v in nodes:
        for t_id in decomp.neighbors[v.id]:
            tau = nodes[t_id]
            g2 = same_level_gap_sq(v.cell, tau.cell)
            if tau.cell.level != v.cell.level or not lo2 <= g2 < hi2 \
                    or v.id not in decomp.neighbors[t_id]:
                bad_i.append((v.id, t_id))
    site_nodes = [[] for _ in sites]
    for v in nodes:
        for i in v.sites:
            site_nodes[i].append(v.id)
    site_sets = {v.id: set(v.sites) for v in nodes}
    r_sets = {v.id: set(v.R) for v in nodes}
    bad_ii = []
    for p in range(len(sites)):
        cp = cell_of(sites[p].x, sites[p].y, 0)
        for q in graph.neighbors(p):
            q = int(q)
            if decomp.partial:
                cq = cell_of(sites[q].x, sites[q].y, 0)
                if same_level_gap_sq(cp, cq) < lo2:
                    continue
            ok = False
            for v_id in site_nodes[q]:
                for t_id in decomp.neighbors[v_id]:
                    if p not in site_sets[t_id]:
                        continue
                    tau = nodes[t_id]
                    if p in r_sets[t_id] or disk_contains(
                            sites[tau.m], sites[q].x, sites[q].y):
                        ok = True
                        break
                if ok:
                    break
            if not ok:
                bad_ii.append((p, q))
    return bad_i, bad_ii


# ---------------------------------------------------------------------------
# explicit volume bounds

@lru_cache(maxsize=None)
def annulus_cell_count(c):
    """Exact number of same-level cells whose gap to a fixed cell lies in
    [c-2, 2c) diameters; the concrete form of the O(c^2) neighborhood
    volume bound."""
    lo2 = 2 * (c - 2) * (c - 2)
    hi2 = 8 * c * c
    span = int(math.ceil(2 * c * SQRT2)) + 2
    d = np.arange(-span, span + 1)
    gx = np.maximum(np.abs(d)[:, None] - 1, 0)
    gy = np.maximum(np.abs(d)[None, :] - 1, 0)
    g2 = gx * gx + gy * gy
    return int(((g2 >= lo2) & (g2 < hi2)).sum())


@lru_cache(maxsize=None)
def near_cell_count(c):
    """Exact number of level-0 cells within gap distance c - 2 of a fixed
    cell (the first query phase of the geometric reachability oracle)."""
    lim2 = 2 * (c - 2) * (c - 2)
    span = int(math.ceil((c - 2) * SQRT2)) + 2
    d = np.arange(-span, span + 1)
    gx = np.maximum(np.abs(d)[:, None] - 1, 0)
    gy = np.maximum(np.abs(d)[None, :] - 1, 0)
    g2 = gx * gx + gy * gy
    return int((g2 <= lim2).sum())
