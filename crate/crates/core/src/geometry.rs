//! Geometric circuit descriptions and their text format.
//!
//! ```text
//! # identity qubit
//! lattice 2 2 4
//! logical q1 primal
//! segment q1 defect 1,1,1 1,1,7
//! segment q1 measure 1,1,7 3,1,7
//! segment q1 defect 3,1,7 3,1,1
//! segment q1 init 3,1,1 1,1,1
//! ```

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result, Span};
use crate::lattice::{Coord, Direction, LatticeSpec, Layer, PositionClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SegmentType {
    Init,
    Measure,
    Inject,
    Defect,
}

impl SegmentType {
    pub fn name(self) -> &'static str {
        match self {
            SegmentType::Init => "init",
            SegmentType::Measure => "measure",
            SegmentType::Inject => "inject",
            SegmentType::Defect => "defect",
        }
    }
}

impl fmt::Display for SegmentType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SegmentType {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "init" => Ok(SegmentType::Init),
            "measure" => Ok(SegmentType::Measure),
            "inject" => Ok(SegmentType::Inject),
            "defect" => Ok(SegmentType::Defect),
            other => Err(format!("unknown segment type `{other}`")),
        }
    }
}

impl FromStr for Layer {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "primal" => Ok(Layer::Primal),
            "dual" => Ok(Layer::Dual),
            other => Err(format!("unknown layer `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Segment {
    pub begin: Coord,
    pub end: Coord,
    pub seg_type: SegmentType,
}

impl Segment {
    pub fn new(begin: Coord, end: Coord, seg_type: SegmentType) -> Self {
        Segment {
            begin,
            end,
            seg_type,
        }
    }

    pub fn direction(&self) -> Option<Direction> {
        Direction::between(self.begin, self.end)
    }
}

/// One logical qubit: a closed, ordered loop of typed segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicalQubitGeometry {
    pub id: String,
    pub layer: Layer,
    pub segments: Vec<Segment>,
}

impl LogicalQubitGeometry {
    /// Validates the loop and merges collinear runs of equal type.
    pub fn new(
        id: impl Into<String>,
        layer: Layer,
        segments: Vec<Segment>,
        spec: &LatticeSpec,
    ) -> Result<Self> {
        let id = id.into();
        for s in &segments {
            validate_segment(s, layer, spec)?;
        }
        let segments = normalize(&id, segments)?;
        Ok(LogicalQubitGeometry {
            id,
            layer,
            segments,
        })
    }
}

/// A whole geometric description: lattice dimensions plus logical qubits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    pub lattice: LatticeSpec,
    pub qubits: Vec<LogicalQubitGeometry>,
}

fn geometry_err(id: &str, message: impl Into<String>) -> Error {
    Error::Geometry {
        id: id.to_string(),
        message: message.into(),
    }
}

fn validate_segment(s: &Segment, layer: Layer, spec: &LatticeSpec) -> Result<()> {
    for c in [s.begin, s.end] {
        spec.check(c)?;
        if !PositionClass::of(c).is_center() {
            return Err(Error::NotACenter(c));
        }
        if PositionClass::of(c) != layer.center_class() {
            return Err(Error::ParityMismatch(s.begin, s.end));
        }
        // Interior-only: every endpoint cell must keep all 18 qubits in bounds.
        if !spec.is_interior_center(c) {
            return Err(Error::OutOfBounds(c));
        }
    }
    if s.begin == s.end {
        return Err(Error::ZeroLength(s.begin, s.end));
    }
    let d = s.direction().ok_or(Error::NotAxisAligned(s.begin, s.end))?;
    if s.seg_type == SegmentType::Inject && (s.end - s.begin).get(d.axis) % 4 != 0 {
        return Err(Error::InjectionMidpoint(s.begin, s.end));
    }
    Ok(())
}

fn normalize(id: &str, segments: Vec<Segment>) -> Result<Vec<Segment>> {
    if segments.len() < 2 {
        return Err(geometry_err(id, "a loop needs at least two segments"));
    }
    for (i, pair) in segments.windows(2).enumerate() {
        if pair[0].end != pair[1].begin {
            return Err(geometry_err(
                id,
                format!(
                    "segment {} ends at {} but the next begins at {}",
                    i + 1,
                    pair[0].end,
                    pair[1].begin
                ),
            ));
        }
    }
    let (first, last) = (segments[0], segments[segments.len() - 1]);
    if last.end != first.begin {
        return Err(geometry_err(
            id,
            format!(
                "open cycle: last segment ends at {} instead of {}",
                last.end, first.begin
            ),
        ));
    }

    let n = segments.len();
    for i in 0..n {
        let (a, b) = (segments[i], segments[(i + 1) % n]);
        if a.direction() == b.direction().map(|d| -d) {
            return Err(geometry_err(
                id,
                format!("loop reverses onto itself at {}", a.end),
            ));
        }
    }

    let mergeable =
        |a: &Segment, b: &Segment| a.seg_type == b.seg_type && a.direction() == b.direction();
    // Rotate so the list starts right after a joint that cannot be merged.
    let Some(pivot) = (0..n).find(|&i| !mergeable(&segments[(i + n - 1) % n], &segments[i])) else {
        return Err(geometry_err(id, "loop is a single straight line"));
    };
    let mut merged: Vec<Segment> = Vec::with_capacity(n);
    for k in 0..n {
        let s = segments[(pivot + k) % n];
        match merged.last_mut() {
            Some(prev) if mergeable(prev, &s) => prev.end = s.end,
            _ => merged.push(s),
        }
    }

    let mut seen = HashSet::new();
    for s in &merged {
        if !seen.insert(s.begin) {
            return Err(geometry_err(id, format!("loop visits {} twice", s.begin)));
        }
    }
    let pivots = (0..merged.len())
        .filter(|&i| {
            let prev = merged[(i + merged.len() - 1) % merged.len()];
            prev.direction() != merged[i].direction()
        })
        .count();
    if pivots % 2 != 0 {
        return Err(geometry_err(
            id,
            format!("loop has an odd number ({pivots}) of pivots"),
        ));
    }
    Ok(merged)
}

struct Cursor<'a> {
    line: usize,
    tokens: Vec<(usize, &'a str)>,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, text: &'a str) -> Self {
        let mut tokens = Vec::new();
        let mut start = None;
        for (i, ch) in text.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push((s + 1, &text[s..i]));
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            tokens.push((s + 1, &text[s..]));
        }
        Cursor { line, tokens }
    }

    fn span(&self, column: usize) -> Span {
        Span {
            line: self.line,
            column,
        }
    }

    fn syntax(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Syntax {
            span: self.span(column),
            message: message.into(),
        }
    }

    fn expect_len(&self, n: usize, usage: &str) -> Result<()> {
        if self.tokens.len() != n {
            let col = self.tokens.get(n).map_or(self.tokens[0].0, |t| t.0);
            return Err(self.syntax(col, format!("expected `{usage}`")));
        }
        Ok(())
    }

    fn parse<T: FromStr>(&self, idx: usize, what: &str) -> Result<T> {
        let (col, tok) = self.tokens[idx];
        tok.parse()
            .map_err(|_| self.syntax(col, format!("invalid {what} `{tok}`")))
    }

    fn coord(&self, idx: usize) -> Result<Coord> {
        let (col, tok) = self.tokens[idx];
        let parts: Vec<&str> = tok.split(',').collect();
        let bad = || self.syntax(col, format!("invalid coordinate `{tok}`, expected w,h,t"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let v: Vec<i32> = parts
            .iter()
            .map(|p| p.parse::<i32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        Ok(Coord::new(v[0], v[1], v[2]))
    }
}

/// Declaration line, layer, and segments with their line/column.
type Decl = (usize, Layer, Vec<(Segment, usize, usize)>);

/// Parses and fully validates a geometry document.
pub fn parse(input: &str) -> Result<Circuit> {
    let mut lattice: Option<LatticeSpec> = None;
    let mut order: Vec<String> = Vec::new();
    let mut decls: BTreeMap<String, Decl> = BTreeMap::new();

    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let text = raw.split('#').next().unwrap_or("");
        let cur = Cursor::new(line_no, text);
        let Some(&(col, keyword)) = cur.tokens.first() else {
            continue;
        };
        match (keyword, lattice) {
            ("lattice", None) => {
                cur.expect_len(4, "lattice <mc_w> <mc_h> <mc_t>")?;
                let dims: Vec<u32> = (1..4)
                    .map(|i| cur.parse::<u32>(i, "cell count"))
                    .collect::<Result<_>>()?;
                if let Some(i) = dims.iter().position(|&d| d == 0) {
                    return Err(cur.syntax(cur.tokens[i + 1].0, "cell counts must be positive"));
                }
                lattice = Some(LatticeSpec::new(dims[0], dims[1], dims[2]));
            }
            ("lattice", Some(_)) => return Err(cur.syntax(col, "duplicate `lattice` line")),
            (_, None) => return Err(cur.syntax(col, "the first statement must be `lattice`")),
            ("logical", Some(_)) => {
                cur.expect_len(3, "logical <id> <primal|dual>")?;
                let id = cur.tokens[1].1.to_string();
                let layer: Layer = cur.parse(2, "layer")?;
                if decls.contains_key(&id) {
                    return Err(Error::DuplicateQubit(id).at(line_no, cur.tokens[1].0));
                }
                order.push(id.clone());
                decls.insert(id, (line_no, layer, Vec::new()));
            }
            ("segment", Some(spec)) => {
                cur.expect_len(5, "segment <id> <type> <w,h,t> <w,h,t>")?;
                let (id_col, id) = cur.tokens[1];
                let seg_type: SegmentType = cur.parse(2, "segment type")?;
                let seg = Segment::new(cur.coord(3)?, cur.coord(4)?, seg_type);
                let Some((_, layer, segs)) = decls.get_mut(id) else {
                    return Err(cur.syntax(id_col, format!("segment for undeclared qubit `{id}`")));
                };
                validate_segment(&seg, *layer, &spec)
                    .map_err(|e| e.at(line_no, cur.tokens[3].0))?;
                segs.push((seg, line_no, col));
            }
            (other, Some(_)) => return Err(cur.syntax(col, format!("unknown statement `{other}`"))),
        }
    }

    let lattice = lattice.ok_or(Error::Syntax {
        span: Span { line: 1, column: 1 },
        message: "missing `lattice` line".into(),
    })?;
    let mut qubits = Vec::with_capacity(order.len());
    for id in order {
        let (line, layer, segs) = decls.remove(&id).expect("declared");
        let segments = segs.into_iter().map(|(s, _, _)| s).collect();
        let q =
            LogicalQubitGeometry::new(id, layer, segments, &lattice).map_err(|e| e.at(line, 1))?;
        qubits.push(q);
    }
    Ok(Circuit { lattice, qubits })
}

/// Writes a circuit back in the text format accepted by [`parse`].
pub fn serialize(circuit: &Circuit) -> String {
    let mut out = String::new();
    let l = circuit.lattice;
    out.push_str(&format!("lattice {} {} {}\n", l.mc_w, l.mc_h, l.mc_t));
    for q in &circuit.qubits {
        out.push_str(&format!("logical {} {}\n", q.id, q.layer));
        for s in &q.segments {
            out.push_str(&format!(
                "segment {} {} {} {}\n",
                q.id, s.seg_type, s.begin, s.end
            ));
        }
    }
    out
}
