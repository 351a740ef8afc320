//! Geometry builders shared by the integration and acceptance tests.
#![allow(dead_code)]

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use tqcmap::geometry::{LogicalQubitGeometry, Segment, SegmentType};
use tqcmap::lattice::{Axis, Coord, LatticeSpec, Layer};

pub fn c(w: i32, h: i32, t: i32) -> Coord {
    Coord::new(w, h, t)
}

/// Cell-unit coordinate to the center of that cell in `layer`.
pub fn center(layer: Layer, cell: Coord) -> Coord {
    let off = match layer {
        Layer::Primal => 1,
        Layer::Dual => 2,
    };
    c(2 * cell.w + off, 2 * cell.h + off, 2 * cell.t + off)
}

/// Closed loop through `pivots` (center coordinates) with per-edge types.
pub fn qubit(
    id: &str,
    layer: Layer,
    pivots: &[Coord],
    types: &[SegmentType],
    spec: &LatticeSpec,
) -> LogicalQubitGeometry {
    let n = pivots.len();
    let segments = (0..n)
        .map(|i| Segment::new(pivots[i], pivots[(i + 1) % n], types[i]))
        .collect();
    LogicalQubitGeometry::new(id, layer, segments, spec).expect("valid test geometry")
}

pub fn defect_loop(
    id: &str,
    layer: Layer,
    pivots: &[Coord],
    spec: &LatticeSpec,
) -> LogicalQubitGeometry {
    qubit(
        id,
        layer,
        pivots,
        &vec![SegmentType::Defect; pivots.len()],
        spec,
    )
}

fn units() -> Vec<Coord> {
    Axis::ALL
        .into_iter()
        .flat_map(|a| [a.unit(), -a.unit()])
        .collect()
}

/// Random self-avoiding closed walk on a coarse grid `0..extent` per axis,
/// grown from a unit square by local moves. Returns the pivot vertices in
/// coarse coordinates, or `None` when the pivot count is odd or too large.
pub fn random_coarse_loop<R: Rng>(
    rng: &mut R,
    extent: i32,
    moves: usize,
    max_pivots: usize,
) -> Option<Vec<Coord>> {
    let dirs = units();
    let inside = |p: Coord| Axis::ALL.iter().all(|&a| (0..extent).contains(&p.get(a)));
    let o = c(
        rng.gen_range(0..extent - 1),
        rng.gen_range(0..extent - 1),
        rng.gen_range(0..extent - 1),
    );
    let mut axes = Axis::ALL.to_vec();
    axes.shuffle(rng);
    let (u, v) = (axes[0].unit(), axes[1].unit());
    let mut pts = vec![o, o + u, o + u + v, o + v];
    let mut occupied: HashSet<Coord> = pts.iter().copied().collect();
    for _ in 0..moves {
        let n = pts.len();
        let i = rng.gen_range(0..n);
        let (p, q) = (pts[i], pts[(i + 1) % n]);
        let step = q - p;
        let d = *dirs.choose(rng).expect("six directions");
        if d == step || d == -step {
            continue;
        }
        if rng.gen_bool(0.5) {
            // Push the edge p→q outwards by d.
            let (p2, q2) = (p + d, q + d);
            if inside(p2) && inside(q2) && !occupied.contains(&p2) && !occupied.contains(&q2) {
                pts.insert(i + 1, p2);
                pts.insert(i + 2, q2);
                occupied.extend([p2, q2]);
            }
        } else {
            // Flip the corner at q: p→q→r becomes p→p+(r−q)→r.
            let r = pts[(i + 2) % n];
            let s = r - q;
            if s == step || s == -step {
                continue;
            }
            let q2 = p + s;
            if inside(q2) && !occupied.contains(&q2) {
                occupied.remove(&q);
                occupied.insert(q2);
                pts[(i + 1) % n] = q2;
            }
        }
    }
    let n = pts.len();
    let pivots: Vec<Coord> = (0..n)
        .filter(|&i| pts[i] - pts[(i + n - 1) % n] != pts[(i + 1) % n] - pts[i])
        .map(|i| pts[i])
        .collect();
    (pivots.len().is_multiple_of(2) && pivots.len() <= max_pivots).then_some(pivots)
}

/// A random valid single-qubit geometry inside `spec`: coarse grid spacing
/// of two cells keeps parallel strands one cell apart.
pub fn random_qubit<R: Rng>(
    rng: &mut R,
    spec: &LatticeSpec,
    max_pivots: usize,
    with_caps: bool,
) -> LogicalQubitGeometry {
    let extent = (spec.mc_w.min(spec.mc_h).min(spec.mc_t) as i32 - 2) / 2 + 1;
    loop {
        let moves = rng.gen_range(0..60);
        let Some(coarse) = random_coarse_loop(rng, extent, moves, max_pivots) else {
            continue;
        };
        let layer = if rng.gen_bool(0.5) {
            Layer::Primal
        } else {
            Layer::Dual
        };
        let pivots: Vec<Coord> = coarse.iter().map(|&p| center(layer, p * 2)).collect();
        let n = pivots.len();
        let mut types = vec![SegmentType::Defect; n];
        if with_caps && n >= 4 && rng.gen_bool(0.5) {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(2..n - 1)) % n;
            types[i] = SegmentType::Init;
            types[j] = SegmentType::Measure;
        }
        let segments = (0..n)
            .map(|i| Segment::new(pivots[i], pivots[(i + 1) % n], types[i]))
            .collect();
        if let Ok(q) = LogicalQubitGeometry::new("r", layer, segments, spec) {
            return q;
        }
    }
}

/// Worst-case staircase: `n` alternating w/h unit steps (in two-cell units),
/// one step up in t, straight back along w and h, and down again.
/// Has `n + 4` pivots for even `n`.
pub fn staircase(n: i32) -> Vec<Coord> {
    let mut p = c(0, 0, 0);
    let mut v = vec![p];
    for i in 0..n {
        p = p + if i % 2 == 0 { c(1, 0, 0) } else { c(0, 1, 0) };
        v.push(p);
    }
    for next in [p + c(0, 0, 1), c(0, p.h, 1), c(0, 0, 1)] {
        v.push(next);
    }
    v.into_iter()
        .map(|x| center(Layer::Primal, x * 2))
        .collect()
}
