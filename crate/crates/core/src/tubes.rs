//! Defect, input/output, injection and tube sets from a single cycle traversal.

use std::collections::BTreeMap;

use crate::cycle::CycleGraph;
use crate::error::{Error, Result};
use crate::geometry::SegmentType;
use crate::lattice::{
    cells_on_segment, face_qubits, toggle_all, Axis, Coord, CoordSet, Direction, Layer,
    PositionClass,
};

/// Per-logical-qubit output: `(l, D, I, O, J, X, Z)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QubitTuple {
    pub id: String,
    pub layer: Layer,
    pub d: CoordSet,
    pub i: CoordSet,
    pub o: CoordSet,
    pub j: CoordSet,
    pub x: CoordSet,
    pub z: CoordSet,
    /// Injection center -> the physical qubit measured in the rotated basis.
    pub injections: BTreeMap<Coord, Coord>,
}

impl QubitTuple {
    pub fn empty(id: impl Into<String>, layer: Layer) -> Self {
        QubitTuple {
            id: id.into(),
            layer,
            d: CoordSet::new(),
            i: CoordSet::new(),
            o: CoordSet::new(),
            j: CoordSet::new(),
            x: CoordSet::new(),
            z: CoordSet::new(),
            injections: BTreeMap::new(),
        }
    }

    /// `Z` for primal qubits, `X` for dual ones.
    pub fn sheet(&self) -> &CoordSet {
        match self.layer {
            Layer::Primal => &self.z,
            Layer::Dual => &self.x,
        }
    }

    pub fn sheet_mut(&mut self) -> &mut CoordSet {
        match self.layer {
            Layer::Primal => &mut self.z,
            Layer::Dual => &mut self.x,
        }
    }

    /// `X` for primal qubits, `Z` for dual ones.
    pub fn tube(&self) -> &CoordSet {
        match self.layer {
            Layer::Primal => &self.x,
            Layer::Dual => &self.z,
        }
    }

    pub fn tube_mut(&mut self) -> &mut CoordSet {
        match self.layer {
            Layer::Primal => &mut self.x,
            Layer::Dual => &mut self.z,
        }
    }

    fn set_for(&mut self, ty: SegmentType) -> &mut CoordSet {
        match ty {
            SegmentType::Defect => &mut self.d,
            SegmentType::Init | SegmentType::Inject => &mut self.i,
            SegmentType::Measure => &mut self.o,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TubeStats {
    /// Edges visited by the traversal; equals the vertex count.
    pub visits: usize,
}

/// The four side qubits encircling face qubit `f` (a loop logic operator).
fn ring_around(f: Coord, along: Axis) -> impl Iterator<Item = Coord> {
    Axis::ALL
        .into_iter()
        .filter(move |&a| a != along)
        .flat_map(move |a| [f + a.unit(), f - a.unit()])
}

/// Traverses the cycle once from its lexicographically smallest vertex.
///
/// Each cell on a DEFECT edge splits its six faces into the defect faces the
/// loop passes through and four tube faces; tube faces combine across cells
/// by symmetric difference. At a corner between two DEFECT edges only the
/// faces shared with the neighbouring cells are defect faces. Where a DEFECT
/// edge meets an INIT/MEASURE/INJECT edge, the strand's end face stays in
/// `D` and the ring of side qubits around it is the loop operator recorded in
/// `I` (or `O`). Faces of cells on non-defect edges along the edge form the
/// chain operator.
pub fn map_tubes(g: &CycleGraph, id: &str, layer: Layer) -> Result<(QubitTuple, TubeStats)> {
    let mut q = QubitTuple::empty(id, layer);
    let Some(start) = g.lexicographic_min() else {
        return Ok((q, TubeStats::default()));
    };
    let mut defect_cells: BTreeMap<Coord, CoordSet> = BTreeMap::new();
    let mut stats = TubeStats::default();
    let mut ck = start;
    loop {
        stats.visits += 1;
        if stats.visits > g.len() {
            return Err(Error::CorruptCycle);
        }
        let nk = g.ngh(ck, 1);
        let (b, e) = (g.coord(ck), g.coord(nk));
        let d = g.dir(ck).ok_or(Error::ZeroLength(b, e))?;
        let step = d.unit();
        let cells = cells_on_segment(b, e)?;
        let ty = g.edge_type(ck);
        match ty {
            SegmentType::Defect => {
                let prev_ty = g.edge_type(g.ngh(ck, -1));
                let next_ty = g.edge_type(nk);
                let last = cells.len() - 1;
                for (idx, &cc) in cells.iter().enumerate() {
                    let faces = defect_cells.entry(cc).or_default();
                    if idx > 0 || prev_ty != SegmentType::Defect {
                        faces.insert(cc - step);
                    }
                    if idx < last || next_ty != SegmentType::Defect {
                        faces.insert(cc + step);
                    }
                }
                if prev_ty != SegmentType::Defect {
                    let ring: Vec<Coord> = ring_around(b - step, d.axis).collect();
                    q.set_for(prev_ty).extend(ring);
                }
                if next_ty != SegmentType::Defect {
                    let ring: Vec<Coord> = ring_around(e + step, d.axis).collect();
                    q.set_for(next_ty).extend(ring);
                }
            }
            SegmentType::Init | SegmentType::Measure | SegmentType::Inject => {
                let target = q.set_for(ty);
                for &cc in &cells {
                    target.insert(cc - step);
                    target.insert(cc + step);
                }
                if ty == SegmentType::Inject {
                    let mid = injection_center(b, e, d, layer)?;
                    q.j.insert(mid);
                    q.injections.insert(mid, mid + step);
                }
            }
        }
        ck = nk;
        if ck == start {
            break;
        }
    }

    let mut tube = CoordSet::new();
    for (&cc, faces) in &defect_cells {
        q.d.extend(faces.iter().copied());
        let t_cc = face_qubits(cc)?.into_iter().filter(|f| !faces.contains(f));
        toggle_all(&mut tube, t_cc);
    }
    *q.tube_mut() = tube;
    Ok((q, stats))
}

fn injection_center(b: Coord, e: Coord, d: Direction, layer: Layer) -> Result<Coord> {
    let span = (e - b).get(d.axis);
    if span % 4 != 0 {
        return Err(Error::InjectionMidpoint(b, e));
    }
    let mid = b + d.unit() * (span.abs() / 2);
    if PositionClass::of(mid) != layer.center_class() {
        return Err(Error::InjectionMidpoint(b, e));
    }
    Ok(mid)
}
