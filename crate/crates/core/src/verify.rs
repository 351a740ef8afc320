//! Independent check of correlation surfaces via cluster-stabilizer products.

use std::fmt;

use crate::error::Result;
use crate::lattice::{toggle, toggle_all, Coord, CoordSet, LatticeSpec, PositionClass};
use crate::tubes::QubitTuple;

/// Pauli operator as X and Z supports (phases ignored).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PauliOperator {
    pub x_support: CoordSet,
    pub z_support: CoordSet,
}

impl PauliOperator {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn multiply(&mut self, other: &PauliOperator) {
        toggle_all(&mut self.x_support, other.x_support.iter().copied());
        toggle_all(&mut self.z_support, other.z_support.iter().copied());
    }

    pub fn is_identity(&self) -> bool {
        self.x_support.is_empty() && self.z_support.is_empty()
    }
}

/// `K_q = X_q ∏ Z_n` over the lattice neighbours `n` of qubit `q`.
pub fn cluster_stabilizer(spec: &LatticeSpec, q: Coord) -> Result<PauliOperator> {
    let mut op = PauliOperator::identity();
    op.x_support.insert(q);
    for n in spec.entangled_neighbors(q)? {
        op.z_support.insert(n);
    }
    Ok(op)
}

/// Product of the stabilizers of every qubit in `surface`.
pub fn surface_operator(spec: &LatticeSpec, surface: &CoordSet) -> Result<PauliOperator> {
    let mut op = PauliOperator::identity();
    for &q in surface {
        op.x_support.insert(q);
        for n in spec.entangled_neighbors(q)? {
            toggle(&mut op.z_support, n);
        }
    }
    Ok(op)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceKind {
    Sheet,
    Tube,
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceKind::Sheet => "sheet",
            SurfaceKind::Tube => "tube",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceCheck {
    pub id: String,
    pub kind: SurfaceKind,
    /// Qubits where the residual operator escapes the allowed support.
    pub offending: CoordSet,
}

impl SurfaceCheck {
    pub fn passed(&self) -> bool {
        self.offending.is_empty()
    }
}

impl fmt::Display for SurfaceCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "PASS {} {}", self.id, self.kind);
        }
        write!(f, "FAIL {} {}", self.id, self.kind)?;
        for c in &self.offending {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

/// A surface is valid when its stabilizer product leaves Z only on
/// `D ∪ I ∪ O` and X only on the surface itself.
pub fn verify_surface(
    spec: &LatticeSpec,
    tuple: &QubitTuple,
    kind: SurfaceKind,
) -> Result<SurfaceCheck> {
    let surface = match kind {
        SurfaceKind::Sheet => tuple.sheet(),
        SurfaceKind::Tube => tuple.tube(),
    };
    let op = surface_operator(spec, surface)?;
    let mut offending: CoordSet = op
        .z_support
        .iter()
        .filter(|c| !tuple.d.contains(c) && !tuple.i.contains(c) && !tuple.o.contains(c))
        .copied()
        .collect();
    offending.extend(op.x_support.difference(surface).copied());
    Ok(SurfaceCheck {
        id: tuple.id.clone(),
        kind,
        offending,
    })
}

/// Two surfaces of the same qubit are equivalent when they differ by a
/// product of stabilizers whose Z part stays on `D ∪ I ∪ O`.
pub fn equivalent_surfaces(
    spec: &LatticeSpec,
    tuple: &QubitTuple,
    a: &CoordSet,
    b: &CoordSet,
) -> Result<bool> {
    let diff: CoordSet = a.symmetric_difference(b).copied().collect();
    let op = surface_operator(spec, &diff)?;
    Ok(op
        .z_support
        .iter()
        .all(|c| tuple.d.contains(c) || tuple.i.contains(c) || tuple.o.contains(c)))
}

/// Structural violations of a tuple's set invariants, one message each.
pub fn check_tuple(spec: &LatticeSpec, tuple: &QubitTuple) -> Vec<String> {
    let l = tuple.layer;
    let (p, s) = (l.name().chars().next().unwrap_or('?'), l.side_class());
    let mut out = Vec::new();
    let mut need = |ok: bool, msg: String| {
        if !ok {
            out.push(format!("{}: {msg}", tuple.id));
        }
    };
    let class_ok = |set: &CoordSet, class: PositionClass| {
        set.iter()
            .all(|&c| spec.contains(c) && PositionClass::of(c) == class)
    };
    need(
        class_ok(&tuple.d, l.face_class()),
        format!("D^{p} ⊆ F^{p} violated"),
    );
    need(
        tuple.d.iter().all(|&c| PositionClass::of(c) != s),
        format!("D^{p} ∩ S^{p} = ∅ violated"),
    );
    for (name, set) in [("I", &tuple.i), ("O", &tuple.o)] {
        need(
            set.iter()
                .all(|&c| spec.contains(c) && PositionClass::of(c).is_qubit()),
            format!("{name}^{p} contains non-qubit positions"),
        );
    }
    need(
        class_ok(tuple.tube(), l.face_class()),
        format!("tube ⊆ F^{p} violated"),
    );
    need(
        class_ok(&tuple.j, l.center_class()),
        format!("J^{p} ⊆ C^{p} violated"),
    );
    need(
        class_ok(tuple.sheet(), s),
        format!("sheet ⊆ S^{p} violated"),
    );
    need(
        tuple.d.is_disjoint(tuple.tube()),
        format!("D^{p} ∩ tube = ∅ violated"),
    );
    out
}

/// Verification result for a whole circuit.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<SurfaceCheck>,
    pub structural: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.structural.is_empty() && self.checks.iter().all(SurfaceCheck::passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        for s in &self.structural {
            writeln!(f, "INVALID {s}")?;
        }
        Ok(())
    }
}

/// Checks the sheet and tube of every tuple.
pub fn verify_all(spec: &LatticeSpec, tuples: &[QubitTuple]) -> Result<Report> {
    let mut report = Report::default();
    for t in tuples {
        report.structural.extend(check_tuple(spec, t));
        report
            .checks
            .push(verify_surface(spec, t, SurfaceKind::Sheet)?);
        report
            .checks
            .push(verify_surface(spec, t, SurfaceKind::Tube)?);
    }
    Ok(report)
}
