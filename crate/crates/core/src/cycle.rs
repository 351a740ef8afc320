//! Rewritable cycle graph over cell centers.

use crate::error::{Error, Result};
use crate::geometry::{LogicalQubitGeometry, SegmentType};
use crate::lattice::{Coord, Direction};

/// Stable vertex handle; survives unrelated insertions and removals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

#[derive(Debug, Clone)]
pub struct CycleGraph {
    ids: Vec<VertexId>,
    coords: Vec<Coord>,
    /// `edge_types[i]` labels the edge from vertex `i` to vertex `i + 1`.
    edge_types: Vec<SegmentType>,
    next_id: usize,
}

impl PartialEq for CycleGraph {
    /// Same coordinate sequence up to rotation.
    fn eq(&self, other: &Self) -> bool {
        let n = self.len();
        if n != other.len() {
            return false;
        }
        if n == 0 {
            return true;
        }
        (0..n).any(|r| {
            (0..n).all(|i| {
                self.coords[i] == other.coords[(i + r) % n]
                    && self.edge_types[i] == other.edge_types[(i + r) % n]
            })
        })
    }
}

impl CycleGraph {
    pub fn from_parts(coords: Vec<Coord>, edge_types: Vec<SegmentType>) -> Self {
        assert_eq!(coords.len(), edge_types.len());
        let n = coords.len();
        CycleGraph {
            ids: (0..n).map(VertexId).collect(),
            coords,
            edge_types,
            next_id: n,
        }
    }

    /// A cycle through `coords` with every edge typed DEFECT.
    pub fn from_coords(coords: Vec<Coord>) -> Self {
        let n = coords.len();
        Self::from_parts(coords, vec![SegmentType::Defect; n])
    }

    /// Vertices are the segment end points, edges the segments.
    pub fn from_geometry(sigma: &LogicalQubitGeometry) -> Self {
        let coords = sigma.segments.iter().map(|s| s.begin).collect();
        let types = sigma.segments.iter().map(|s| s.seg_type).collect();
        Self::from_parts(coords, types)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn coords(&self) -> &[Coord] {
        &self.coords
    }

    pub fn edge_types(&self) -> &[SegmentType] {
        &self.edge_types
    }

    pub fn contains(&self, k: VertexId) -> bool {
        self.ids.contains(&k)
    }

    pub fn position(&self, k: VertexId) -> Result<usize> {
        self.ids
            .iter()
            .position(|&v| v == k)
            .ok_or(Error::NoSuchVertex(k.0))
    }

    pub fn vertex_at(&self, i: usize) -> VertexId {
        self.ids[i % self.len()]
    }

    pub fn coord(&self, k: VertexId) -> Coord {
        self.coords[self.pos(k)]
    }

    fn pos(&self, k: VertexId) -> usize {
        self.position(k).expect("vertex belongs to this cycle")
    }

    /// The vertex `n` steps along the cycle (negative walks backwards).
    pub fn ngh(&self, k: VertexId, n: isize) -> VertexId {
        let len = self.len() as isize;
        let i = (self.pos(k) as isize + n).rem_euclid(len) as usize;
        self.ids[i]
    }

    /// Type of the edge leaving `k`.
    pub fn edge_type(&self, k: VertexId) -> SegmentType {
        self.edge_types[self.pos(k)]
    }

    /// Lattice direction of the edge `(k, ngh(k))`; `None` on a degenerate edge.
    pub fn dir(&self, k: VertexId) -> Option<Direction> {
        Direction::between(self.coord(k), self.coord(self.ngh(k, 1)))
    }

    /// `a` mirrored at the line through its predecessor and successor.
    pub fn mirr(&self, a: VertexId) -> Coord {
        self.coord(self.ngh(a, -1)) + self.coord(self.ngh(a, 1)) - self.coord(a)
    }

    /// Removes `a` and joins its neighbours with a new DEFECT edge.
    pub fn remove(&mut self, a: VertexId) -> Result<()> {
        let i = self.position(a)?;
        let prev = self.coords[(i + self.len() - 1) % self.len()];
        let next = self.coords[(i + 1) % self.len()];
        if prev != next && Direction::between(prev, next).is_none() {
            return Err(Error::NotAxisAligned(prev, next));
        }
        self.ids.remove(i);
        self.coords.remove(i);
        self.edge_types.remove(i);
        if !self.is_empty() {
            let p = (i + self.len() - 1) % self.len();
            self.edge_types[p] = SegmentType::Defect;
        }
        Ok(())
    }

    /// Replaces edge `(a, c)` with `(a, b)` and `(b, c)`; returns the new vertex.
    pub fn insert(&mut self, a: VertexId, b: Coord, c: VertexId) -> Result<VertexId> {
        let i = self.position(a)?;
        if self.ngh(a, 1) != c {
            return Err(Error::NotAnEdge(
                self.coord(a),
                self.coords[self.position(c)?],
            ));
        }
        let (ca, cc) = (self.coord(a), self.coord(c));
        for (x, y) in [(ca, b), (b, cc)] {
            if x != y && Direction::between(x, y).is_none() {
                return Err(Error::NotAxisAligned(x, y));
            }
        }
        let id = VertexId(self.next_id);
        self.next_id += 1;
        self.edge_types[i] = SegmentType::Defect;
        self.ids.insert(i + 1, id);
        self.coords.insert(i + 1, b);
        self.edge_types.insert(i + 1, SegmentType::Defect);
        Ok(id)
    }

    /// Replaces the whole vertex sequence; `None` ids get fresh identities,
    /// which are returned in order.
    pub(crate) fn rebuild(
        &mut self,
        coords: Vec<Coord>,
        edge_types: Vec<SegmentType>,
        ids: Vec<Option<VertexId>>,
    ) -> Vec<VertexId> {
        let mut fresh = Vec::new();
        self.ids = ids
            .into_iter()
            .map(|k| {
                k.unwrap_or_else(|| {
                    let id = VertexId(self.next_id);
                    self.next_id += 1;
                    fresh.push(id);
                    id
                })
            })
            .collect();
        self.coords = coords;
        self.edge_types = edge_types;
        fresh
    }

    /// Rotates storage so that `k` comes first; vertex identities are unchanged.
    pub fn rotate_to(&mut self, k: VertexId) {
        let i = self.pos(k);
        self.ids.rotate_left(i);
        self.coords.rotate_left(i);
        self.edge_types.rotate_left(i);
    }

    /// The same loop traversed in the opposite direction.
    pub fn reversed(&self) -> CycleGraph {
        let n = self.len();
        let coords: Vec<Coord> = (0..n).map(|i| self.coords[(n - i) % n]).collect();
        // Edge (v_{n-i}, v_{n-i-1}) is the original edge stored at n-i-1.
        let types = (0..n)
            .map(|i| self.edge_types[(2 * n - i - 1) % n])
            .collect();
        CycleGraph::from_parts(coords, types)
    }

    /// Vertex with the smallest `(w, h, t)` coordinate.
    pub fn lexicographic_min(&self) -> Option<VertexId> {
        (0..self.len())
            .min_by_key(|&i| self.coords[i].wht_key())
            .map(|i| self.ids[i])
    }
}

/// Whichever of `b` and `c` is closer to `a` (Manhattan); ties return `b`.
pub fn clst(a: Coord, b: Coord, c: Coord) -> Coord {
    if a.manhattan(b) <= a.manhattan(c) {
        b
    } else {
        c
    }
}
