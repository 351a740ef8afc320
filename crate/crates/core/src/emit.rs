//! Hardware instruction stream and classical tracking document.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result, Span};
use crate::lattice::{Coord, CoordSet, LatticeSpec, Layer};
use crate::tubes::QubitTuple;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Basis {
    X,
    Z,
    /// Rotated-Z measurement; the angle is a named parameter.
    RotatedZ(String),
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::X => f.write_str("X"),
            Basis::Z => f.write_str("Z"),
            Basis::RotatedZ(name) => write!(f, "RZ:{name}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeasurementInstruction {
    pub coord: Coord,
    pub basis: Basis,
}

/// One instruction per lattice qubit, in `(t, h, w)` order.
pub fn emit_instructions(
    spec: &LatticeSpec,
    tuples: &[QubitTuple],
) -> Result<Vec<MeasurementInstruction>> {
    let mut basis: BTreeMap<Coord, Basis> = BTreeMap::new();
    let mut owner: BTreeMap<Coord, &str> = BTreeMap::new();
    for q in tuples {
        for &c in &q.d {
            spec.check(c)?;
            if let Some(first) = owner.insert(c, &q.id) {
                if first != q.id {
                    return Err(Error::DefectCollision {
                        coord: c,
                        first: first.to_string(),
                        second: q.id.clone(),
                    });
                }
            }
            basis.insert(c, Basis::Z);
        }
    }
    for q in tuples {
        for (k, (_, &qubit)) in q.injections.iter().enumerate() {
            spec.check(qubit)?;
            if let Some(first) = owner.get(&qubit) {
                return Err(Error::DefectCollision {
                    coord: qubit,
                    first: first.to_string(),
                    second: q.id.clone(),
                });
            }
            basis.insert(qubit, Basis::RotatedZ(format!("{}.{k}", q.id)));
        }
    }
    Ok(spec
        .qubits()
        .map(|c| MeasurementInstruction {
            coord: c,
            basis: basis.remove(&c).unwrap_or(Basis::X),
        })
        .collect())
}

/// `<w> <h> <t> <X|Z|RZ:name>` per line.
pub fn write_instructions(stream: &[MeasurementInstruction]) -> String {
    let mut out = String::with_capacity(stream.len() * 12);
    for ins in stream {
        let c = ins.coord;
        out.push_str(&format!("{} {} {} {}\n", c.w, c.h, c.t, ins.basis));
    }
    out
}

fn write_set(out: &mut String, label: &str, set: &CoordSet) {
    out.push_str(label);
    out.push(':');
    for c in set {
        out.push(' ');
        out.push_str(&c.to_string());
    }
    out.push('\n');
}

/// One block per qubit, ordered by qubit id.
pub fn emit_tracking(tuples: &[QubitTuple]) -> String {
    let mut sorted: Vec<&QubitTuple> = tuples.iter().collect();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    let mut out = String::new();
    for q in sorted {
        out.push_str(&format!("qubit {} {}\n", q.id, q.layer));
        write_set(&mut out, "D", &q.d);
        write_set(&mut out, "I", &q.i);
        write_set(&mut out, "O", &q.o);
        write_set(&mut out, "J", &q.j);
        write_set(&mut out, "X", &q.x);
        write_set(&mut out, "Z", &q.z);
    }
    out
}

fn tracking_err(line: usize, message: impl Into<String>) -> Error {
    Error::Tracking {
        span: Span { line, column: 1 },
        message: message.into(),
    }
}

/// Reads a tracking document back. Injection-qubit assignments are not part
/// of the document and come back empty.
pub fn parse_tracking(text: &str) -> Result<Vec<QubitTuple>> {
    let mut out: Vec<QubitTuple> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let n = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("qubit ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            let [id, layer] = parts.as_slice() else {
                return Err(tracking_err(n, "expected `qubit <id> <primal|dual>`"));
            };
            let layer: Layer = layer.parse().map_err(|e: String| tracking_err(n, e))?;
            out.push(QubitTuple::empty(*id, layer));
            continue;
        }
        let q = out
            .last_mut()
            .ok_or_else(|| tracking_err(n, "set line before any `qubit` line"))?;
        let (label, body) = line
            .split_once(':')
            .ok_or_else(|| tracking_err(n, "expected `<label>: w,h,t ...`"))?;
        let set = match label {
            "D" => &mut q.d,
            "I" => &mut q.i,
            "O" => &mut q.o,
            "J" => &mut q.j,
            "X" => &mut q.x,
            "Z" => &mut q.z,
            other => return Err(tracking_err(n, format!("unknown set `{other}`"))),
        };
        for tok in body.split_whitespace() {
            let v: Vec<i32> = tok
                .split(',')
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| tracking_err(n, format!("invalid coordinate `{tok}`")))?;
            let [w, h, t] = v.as_slice() else {
                return Err(tracking_err(n, format!("invalid coordinate `{tok}`")));
            };
            set.insert(Coord::new(*w, *h, *t));
        }
    }
    Ok(out)
}
