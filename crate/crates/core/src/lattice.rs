//! The 3D cluster lattice.
//!
//! Positions are integer triples `(w, h, t)`. Cell centers sit two units
//! apart: primal centers have three odd components, dual centers three even
//! ones. Every other position holds a physical qubit. A qubit with exactly
//! one even component is a face of a primal cell (and a side of a dual
//! cell); a qubit with two even components is a face of a dual cell.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Coord {
    pub w: i32,
    pub h: i32,
    pub t: i32,
}

impl Coord {
    pub const fn new(w: i32, h: i32, t: i32) -> Self {
        Coord { w, h, t }
    }

    pub fn get(self, axis: Axis) -> i32 {
        match axis {
            Axis::W => self.w,
            Axis::H => self.h,
            Axis::T => self.t,
        }
    }

    pub fn with(mut self, axis: Axis, value: i32) -> Self {
        match axis {
            Axis::W => self.w = value,
            Axis::H => self.h = value,
            Axis::T => self.t = value,
        }
        self
    }

    pub fn manhattan(self, other: Coord) -> i32 {
        (self.w - other.w).abs() + (self.h - other.h).abs() + (self.t - other.t).abs()
    }

    /// Lexicographic `(w, h, t)` key, used to pick deterministic start vertices.
    pub fn wht_key(self) -> (i32, i32, i32) {
        (self.w, self.h, self.t)
    }

    fn even_components(self) -> usize {
        [self.w, self.h, self.t]
            .iter()
            .filter(|c| c.rem_euclid(2) == 0)
            .count()
    }
}

/// Output order is `(t, h, w)`.
impl Ord for Coord {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.t, self.h, self.w).cmp(&(other.t, other.h, other.w))
    }
}

impl PartialOrd for Coord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.w, self.h, self.t)
    }
}

impl Add for Coord {
    type Output = Coord;
    fn add(self, o: Coord) -> Coord {
        Coord::new(self.w + o.w, self.h + o.h, self.t + o.t)
    }
}

impl Sub for Coord {
    type Output = Coord;
    fn sub(self, o: Coord) -> Coord {
        Coord::new(self.w - o.w, self.h - o.h, self.t - o.t)
    }
}

impl Mul<i32> for Coord {
    type Output = Coord;
    fn mul(self, k: i32) -> Coord {
        Coord::new(self.w * k, self.h * k, self.t * k)
    }
}

impl Neg for Coord {
    type Output = Coord;
    fn neg(self) -> Coord {
        self * -1
    }
}

pub type CoordSet = BTreeSet<Coord>;

/// Symmetric-difference insertion: removes `c` if present, inserts it otherwise.
pub fn toggle(set: &mut CoordSet, c: Coord) {
    if !set.remove(&c) {
        set.insert(c);
    }
}

/// `a ^= b` on coordinate sets.
pub fn toggle_all<I: IntoIterator<Item = Coord>>(set: &mut CoordSet, items: I) {
    for c in items {
        toggle(set, c);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    W,
    H,
    T,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::W, Axis::H, Axis::T];

    pub fn unit(self) -> Coord {
        match self {
            Axis::W => Coord::new(1, 0, 0),
            Axis::H => Coord::new(0, 1, 0),
            Axis::T => Coord::new(0, 0, 1),
        }
    }
}

/// One of the six lattice directions `±w, ±h, ±t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Direction {
    pub axis: Axis,
    pub positive: bool,
}

impl Direction {
    pub fn unit(self) -> Coord {
        if self.positive {
            self.axis.unit()
        } else {
            -self.axis.unit()
        }
    }

    /// Direction of `to - from`, if the two points differ along exactly one axis.
    pub fn between(from: Coord, to: Coord) -> Option<Direction> {
        let d = to - from;
        let nonzero: Vec<Axis> = Axis::ALL.into_iter().filter(|&a| d.get(a) != 0).collect();
        match nonzero.as_slice() {
            [axis] => Some(Direction {
                axis: *axis,
                positive: d.get(*axis) > 0,
            }),
            _ => None,
        }
    }

    pub fn is_parallel(self, other: Direction) -> bool {
        self.axis == other.axis
    }
}

impl Neg for Direction {
    type Output = Direction;
    fn neg(self) -> Direction {
        Direction {
            axis: self.axis,
            positive: !self.positive,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.positive { '+' } else { '-' };
        let axis = match self.axis {
            Axis::W => 'w',
            Axis::H => 'h',
            Axis::T => 't',
        };
        write!(f, "{sign}{axis}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Layer {
    Primal,
    Dual,
}

impl Layer {
    pub fn center_class(self) -> PositionClass {
        match self {
            Layer::Primal => PositionClass::PrimalCenter,
            Layer::Dual => PositionClass::DualCenter,
        }
    }

    pub fn face_class(self) -> PositionClass {
        match self {
            Layer::Primal => PositionClass::PrimalFace,
            Layer::Dual => PositionClass::DualFace,
        }
    }

    /// Side qubits of this layer are the faces of the other one.
    pub fn side_class(self) -> PositionClass {
        self.opposite().face_class()
    }

    pub fn opposite(self) -> Layer {
        match self {
            Layer::Primal => Layer::Dual,
            Layer::Dual => Layer::Primal,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Layer::Primal => "primal",
            Layer::Dual => "dual",
        }
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PositionClass {
    PrimalCenter,
    DualCenter,
    /// Face of a primal cell, side of a dual cell.
    PrimalFace,
    /// Face of a dual cell, side of a primal cell.
    DualFace,
}

impl PositionClass {
    /// Pure parity rule; no bounds check.
    pub fn of(c: Coord) -> PositionClass {
        match c.even_components() {
            0 => PositionClass::PrimalCenter,
            1 => PositionClass::PrimalFace,
            2 => PositionClass::DualFace,
            _ => PositionClass::DualCenter,
        }
    }

    pub fn is_center(self) -> bool {
        matches!(
            self,
            PositionClass::PrimalCenter | PositionClass::DualCenter
        )
    }

    pub fn is_qubit(self) -> bool {
        !self.is_center()
    }

    pub fn layer(self) -> Layer {
        match self {
            PositionClass::PrimalCenter | PositionClass::PrimalFace => Layer::Primal,
            PositionClass::DualCenter | PositionClass::DualFace => Layer::Dual,
        }
    }
}

/// Unit-cell counts along each axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeSpec {
    pub mc_w: u32,
    pub mc_h: u32,
    pub mc_t: u32,
}

impl LatticeSpec {
    pub fn new(mc_w: u32, mc_h: u32, mc_t: u32) -> Self {
        LatticeSpec { mc_w, mc_h, mc_t }
    }

    /// Number of positions along `axis`; neighbouring cells share a side.
    pub fn extent(&self, axis: Axis) -> i32 {
        let mc = match axis {
            Axis::W => self.mc_w,
            Axis::H => self.mc_h,
            Axis::T => self.mc_t,
        };
        2 * mc as i32 + 2
    }

    pub fn total_positions(&self) -> u64 {
        Axis::ALL.iter().map(|&a| self.extent(a) as u64).product()
    }

    pub fn contains(&self, c: Coord) -> bool {
        Axis::ALL
            .iter()
            .all(|&a| (0..self.extent(a)).contains(&c.get(a)))
    }

    pub fn check(&self, c: Coord) -> Result<Coord> {
        if self.contains(c) {
            Ok(c)
        } else {
            Err(Error::OutOfBounds(c))
        }
    }

    pub fn classify(&self, c: Coord) -> Result<PositionClass> {
        self.check(c).map(PositionClass::of)
    }

    /// A center whose full 18-qubit cell lies inside the lattice.
    pub fn is_interior_center(&self, c: Coord) -> bool {
        PositionClass::of(c).is_center()
            && Axis::ALL
                .iter()
                .all(|&a| c.get(a) >= 1 && c.get(a) <= self.extent(a) - 2)
    }

    /// Qubits at unit distance from `q` that lie inside the lattice.
    pub fn entangled_neighbors(&self, q: Coord) -> Result<Vec<Coord>> {
        if !self.classify(q)?.is_qubit() {
            return Err(Error::NotAQubit(q));
        }
        Ok(unit_offsets()
            .map(|o| q + o)
            .filter(|&n| self.contains(n) && PositionClass::of(n).is_qubit())
            .collect())
    }

    /// Every position in `(t, h, w)` order.
    pub fn positions(&self) -> impl Iterator<Item = Coord> + '_ {
        let (ew, eh, et) = (
            self.extent(Axis::W),
            self.extent(Axis::H),
            self.extent(Axis::T),
        );
        (0..et)
            .flat_map(move |t| (0..eh).flat_map(move |h| (0..ew).map(move |w| Coord::new(w, h, t))))
    }

    /// Every qubit position (TQCC) in `(t, h, w)` order.
    pub fn qubits(&self) -> impl Iterator<Item = Coord> + '_ {
        self.positions()
            .filter(|&c| PositionClass::of(c).is_qubit())
    }
}

fn unit_offsets() -> impl Iterator<Item = Coord> {
    Axis::ALL.into_iter().flat_map(|a| [a.unit(), -a.unit()])
}

fn require_center(cc: Coord) -> Result<()> {
    if PositionClass::of(cc).is_center() {
        Ok(())
    } else {
        Err(Error::NotACenter(cc))
    }
}

/// The six face qubits of the cell centered at `cc`.
pub fn face_qubits(cc: Coord) -> Result<[Coord; 6]> {
    require_center(cc)?;
    let mut out = [cc; 6];
    for (slot, o) in out.iter_mut().zip(unit_offsets()) {
        *slot = cc + o;
    }
    Ok(out)
}

/// The twelve side qubits of the cell centered at `cc`.
pub fn side_qubits(cc: Coord) -> Result<[Coord; 12]> {
    require_center(cc)?;
    let mut out = Vec::with_capacity(12);
    for (i, a) in Axis::ALL.into_iter().enumerate() {
        for b in Axis::ALL.into_iter().skip(i + 1) {
            for sa in [1, -1] {
                for sb in [1, -1] {
                    out.push(cc + a.unit() * sa + b.unit() * sb);
                }
            }
        }
    }
    Ok(out.try_into().expect("twelve side qubits"))
}

/// Cell centers from `b` to `e` inclusive, stepping two units along the segment.
pub fn cells_on_segment(b: Coord, e: Coord) -> Result<Vec<Coord>> {
    require_center(b)?;
    require_center(e)?;
    if PositionClass::of(b) != PositionClass::of(e) {
        return Err(Error::ParityMismatch(b, e));
    }
    if b == e {
        return Err(Error::ZeroLength(b, e));
    }
    let d = Direction::between(b, e).ok_or(Error::NotAxisAligned(b, e))?;
    let len = (e - b).get(d.axis).abs();
    if len % 2 != 0 {
        return Err(Error::ParityMismatch(b, e));
    }
    let step = d.unit() * 2;
    Ok((0..=len / 2).map(|i| b + step * i).collect())
}
