//! Sub-sheet discovery by cycle reduction, and sheet assembly.
//!
//! The defect loop is rewritten until at most two vertices remain. Every
//! rewrite that changes the enclosed area records the rectangle it swept as a
//! sub-sheet; the sheet is the symmetric difference of all sub-sheets.

use crate::cycle::{clst, CycleGraph, VertexId};
use crate::error::{Error, Result};
use crate::geometry::SegmentType;
use crate::lattice::{toggle_all, Axis, Coord, CoordSet, Direction, Layer, PositionClass};

/// Axis-aligned rectangle given by two diagonal corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SubSheet {
    pub ss1: Coord,
    pub ss2: Coord,
}

impl SubSheet {
    pub fn new(ss1: Coord, ss2: Coord) -> Self {
        SubSheet { ss1, ss2 }
    }

    /// Corner-order independent form `(min corner, max corner)`.
    pub fn bounds(&self) -> (Coord, Coord) {
        let lo = Coord::new(
            self.ss1.w.min(self.ss2.w),
            self.ss1.h.min(self.ss2.h),
            self.ss1.t.min(self.ss2.t),
        );
        let hi = Coord::new(
            self.ss1.w.max(self.ss2.w),
            self.ss1.h.max(self.ss2.h),
            self.ss1.t.max(self.ss2.t),
        );
        (lo, hi)
    }

    /// True when the rectangle has zero area (a point or a line).
    pub fn is_degenerate(&self) -> bool {
        let d = self.ss2 - self.ss1;
        Axis::ALL.iter().filter(|&&a| d.get(a) != 0).count() < 2
    }

    /// Corners share at least one component.
    pub fn is_planar(&self) -> bool {
        let d = self.ss2 - self.ss1;
        Axis::ALL.iter().any(|&a| d.get(a) == 0)
    }
}

/// Every qubit position inside the closed box spanned by `ss`.
pub fn boundingbox(ss: &SubSheet) -> Vec<Coord> {
    let (lo, hi) = ss.bounds();
    let mut out = Vec::new();
    for t in lo.t..=hi.t {
        for h in lo.h..=hi.h {
            for w in lo.w..=hi.w {
                let c = Coord::new(w, h, t);
                if PositionClass::of(c).is_qubit() {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// Symmetric difference over `subs` of the side qubits of `layer` in each box.
pub fn assemble_sheet(subs: &[SubSheet], layer: Layer) -> CoordSet {
    let side = layer.side_class();
    let mut sheet = CoordSet::new();
    for ss in subs {
        toggle_all(
            &mut sheet,
            boundingbox(ss)
                .into_iter()
                .filter(|&c| PositionClass::of(c) == side),
        );
    }
    sheet
}

/// What a single `reduce` did, in coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReduceOutcome {
    /// `Rm`: the two reduced vertices.
    pub removed: [Coord; 2],
    /// `Ng`: their outer neighbours.
    pub neighbours: [Coord; 2],
    /// `V^red`: the two candidate replacement corners.
    pub v_red: [Coord; 2],
    /// `V^red \ Ng`.
    pub inserted: Vec<Coord>,
    /// `Ng ∩ V^red`.
    pub deleted: Vec<Coord>,
    /// Vertex following `ngh⁻¹(a)` right after the splice.
    pub successor: Coord,
    /// Vertices dropped afterwards because they became collinear or repeated.
    pub induced_removals: Vec<Coord>,
}

/// Replaces `count` vertices starting at `first` with fresh vertices at
/// `coords`; every touched edge becomes a DEFECT edge. Returns the new ids.
fn splice(g: &mut CycleGraph, first: VertexId, count: usize, coords: &[Coord]) -> Vec<VertexId> {
    let before = g.ngh(first, -1);
    let doomed: Vec<VertexId> = (0..count as isize).map(|i| g.ngh(first, i)).collect();
    let mut coords_out = Vec::with_capacity(g.len());
    let mut types_out = Vec::with_capacity(g.len());
    let mut ids_out: Vec<Option<VertexId>> = Vec::with_capacity(g.len());
    for (i, &k) in g.vertices().iter().enumerate() {
        if doomed.contains(&k) {
            continue;
        }
        coords_out.push(g.coords()[i]);
        ids_out.push(Some(k));
        if k == before {
            types_out.push(SegmentType::Defect);
            for &c in coords {
                coords_out.push(c);
                types_out.push(SegmentType::Defect);
                ids_out.push(None);
            }
        } else {
            types_out.push(g.edge_types()[i]);
        }
    }
    g.rebuild(coords_out, types_out, ids_out)
}

fn collinear_or_degenerate(g: &CycleGraph, v: VertexId) -> bool {
    let (p, n) = (g.ngh(v, -1), g.ngh(v, 1));
    let (cp, cv, cn) = (g.coord(p), g.coord(v), g.coord(n));
    if cv == cn || cv == cp {
        return true;
    }
    match (Direction::between(cp, cv), Direction::between(cv, cn)) {
        (Some(d1), Some(d2)) => d1.is_parallel(d2),
        _ => false,
    }
}

/// Removes vertices that are repeated, collinear with, or folded back onto their
/// neighbours, starting from `seeds` and spreading to affected neighbours.
pub fn cleanup(g: &mut CycleGraph, seeds: &[VertexId]) -> Vec<Coord> {
    let mut removed = Vec::new();
    let mut work: Vec<VertexId> = seeds.to_vec();
    while let Some(v) = work.pop() {
        if g.len() <= 2 {
            break;
        }
        if !g.contains(v) || !collinear_or_degenerate(g, v) {
            continue;
        }
        let (p, n) = (g.ngh(v, -1), g.ngh(v, 1));
        let c = g.coord(v);
        g.remove(v).expect("collinear removal keeps alignment");
        removed.push(c);
        work.push(p);
        work.push(n);
    }
    removed
}

/// Cuts the U formed by `(ngh⁻¹(a), a)`, `(a, b)`, `(b, ngh(b))` back to the
/// shorter arm.
pub fn reduce(g: &mut CycleGraph, a: VertexId, b: VertexId) -> Result<ReduceOutcome> {
    if g.len() < 4 || g.ngh(a, 1) != b {
        return Err(Error::ReducePrecondition(g.coord(a), g.coord(b)));
    }
    let (na, nb) = (g.ngh(a, -1), g.ngh(b, 1));
    let (ca, cb, cna, cnb) = (g.coord(a), g.coord(b), g.coord(na), g.coord(nb));
    let d_in = Direction::between(cna, ca);
    let d_out = Direction::between(cb, cnb);
    let d_mid = Direction::between(ca, cb);
    let ok =
        matches!((d_in, d_out, d_mid), (Some(i), Some(o), Some(m)) if i == -o && !i.is_parallel(m));
    if !ok {
        return Err(Error::ReducePrecondition(ca, cb));
    }
    let mirr_a = g.mirr(a);
    let mirr_b = g.mirr(b);
    let v_red = [clst(ca, mirr_b, cna), clst(cb, mirr_a, cnb)];
    let ng = [cna, cnb];
    let inserted: Vec<Coord> = v_red.iter().copied().filter(|v| !ng.contains(v)).collect();
    let deleted: Vec<Coord> = v_red.iter().copied().filter(|v| ng.contains(v)).collect();

    let replacement: Vec<Coord> = [(v_red[0], cna), (v_red[1], cnb)]
        .into_iter()
        .filter(|(v, n)| v != n)
        .map(|(v, _)| v)
        .collect();
    let fresh = splice(g, a, 2, &replacement);
    let successor = g.coord(g.ngh(na, 1));
    let mut seeds = vec![na, nb];
    seeds.extend(fresh);
    let induced_removals = cleanup(g, &seeds);
    Ok(ReduceOutcome {
        removed: [ca, cb],
        neighbours: ng,
        v_red,
        inserted,
        deleted,
        successor,
        induced_removals,
    })
}

/// Moves `b` to its mirror image across the line through `a` and `c`.
/// Returns the id of the moved vertex.
pub fn reshape(g: &mut CycleGraph, a: VertexId, b: VertexId, c: VertexId) -> Result<VertexId> {
    if g.ngh(a, 1) != b || g.ngh(b, 1) != c {
        return Err(Error::NotAnEdge(g.coord(a), g.coord(b)));
    }
    let m = g.mirr(b);
    let fresh = splice(g, b, 1, &[m]);
    Ok(fresh[0])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SheetStats {
    /// Complete traversals of the cycle (outer iterations).
    pub traversals: u64,
    /// Vertex visits inside traversals; the elementary unit of work.
    pub steps: u64,
    pub reduces: u64,
    pub removes: u64,
    pub reshapes: u64,
    /// Longest run of traversals that ended in a reshape.
    pub max_consecutive_reshapes: u64,
    /// Rewrite steps after which the vertex count was odd.
    pub odd_vertex_steps: u64,
    pub initial_vertices: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SheetRun {
    pub subs: Vec<SubSheet>,
    pub stats: SheetStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SheetOptions {
    /// Index (in the input cycle) of the initial start vertex; `None` picks the
    /// lexicographically smallest coordinate.
    pub start: Option<usize>,
    /// Overrides the default traversal bound `16·|K|² + 16`.
    pub max_traversals: Option<u64>,
}

/// First surviving vertex walking backwards from `k`, using a snapshot of the
/// order taken before a mutation.
fn survivor(g: &CycleGraph, history: &[VertexId]) -> Option<VertexId> {
    history.iter().copied().find(|&v| g.contains(v))
}

fn backwards(g: &CycleGraph, k: VertexId) -> Vec<VertexId> {
    (0..g.len() as isize).map(|i| g.ngh(k, -i)).collect()
}

/// Finds the sub-sheets of a loop. All edges are treated as defect edges.
pub fn find_subsheets(input: &CycleGraph, opts: SheetOptions) -> Result<SheetRun> {
    let mut g = CycleGraph::from_coords(input.coords().to_vec());
    let k0 = g.len() as u64;
    let bound = opts.max_traversals.unwrap_or(16 * k0 * k0 + 16);
    let mut stats = SheetStats {
        initial_vertices: g.len(),
        ..SheetStats::default()
    };
    let mut subs = Vec::new();
    if g.len() <= 2 {
        return Ok(SheetRun { subs, stats });
    }
    let mut start = match opts.start {
        Some(i) => g.vertex_at(i),
        None => g.lexicographic_min().expect("nonempty"),
    };
    let mut consecutive = 0u64;
    let check_parity = |g: &CycleGraph, stats: &mut SheetStats| {
        if !g.len().is_multiple_of(2) {
            stats.odd_vertex_steps += 1;
        }
    };

    while g.len() > 2 {
        stats.traversals += 1;
        if stats.traversals > bound {
            return Err(Error::TraversalBound(bound));
        }
        let mut ck = start;
        let mut compact = false;
        loop {
            if g.len() <= 2 {
                break;
            }
            stats.steps += 1;
            let a = g.ngh(ck, 1);
            let b = g.ngh(ck, 2);
            let (d_ck_a, d_a_b, d_b_n) = (g.dir(ck), g.dir(a), g.dir(b));
            let history = backwards(&g, ck);
            let mut mutated = false;
            if g.len() >= 4
                && matches!((d_ck_a, d_b_n), (Some(x), Some(y)) if x == -y)
                && d_a_b.is_some()
                && !d_ck_a.unwrap().is_parallel(d_a_b.unwrap())
            {
                let (ca, cb) = (g.coord(a), g.coord(b));
                let out = reduce(&mut g, a, b)?;
                subs.push(SubSheet::new(out.successor, ca));
                subs.push(SubSheet::new(out.successor, cb));
                stats.reduces += 1;
                stats.removes += out.induced_removals.len() as u64;
                compact = true;
                mutated = true;
            } else if collinear_or_degenerate(&g, a) {
                let mut seeds = vec![a];
                seeds.push(ck);
                let removed = cleanup(&mut g, &seeds);
                stats.removes += removed.len() as u64;
                compact = true;
                mutated = true;
            } else {
                ck = a;
            }
            if mutated {
                check_parity(&g, &mut stats);
                if g.len() <= 2 {
                    break;
                }
                ck = survivor(&g, &history).ok_or(Error::CorruptCycle)?;
                if !g.contains(start) {
                    // Restart the traversal from the current vertex.
                    start = ck;
                    break;
                }
            }
            if ck == start {
                break;
            }
        }
        if g.len() <= 2 {
            break;
        }
        if compact {
            consecutive = 0;
            continue;
        }
        let (n1, n2) = (g.ngh(start, 1), g.ngh(start, 2));
        subs.push(SubSheet::new(g.coord(start), g.coord(n2)));
        let moved = reshape(&mut g, start, n1, n2)?;
        stats.reshapes += 1;
        consecutive += 1;
        stats.max_consecutive_reshapes = stats.max_consecutive_reshapes.max(consecutive);
        let start_history = backwards(&g, start);
        let removed = cleanup(&mut g, &[start, moved, n2]);
        stats.removes += removed.len() as u64;
        check_parity(&g, &mut stats);
        if g.len() <= 2 {
            break;
        }
        start = if g.contains(moved) {
            moved
        } else {
            survivor(&g, &start_history).ok_or(Error::CorruptCycle)?
        };
    }
    Ok(SheetRun { subs, stats })
}
