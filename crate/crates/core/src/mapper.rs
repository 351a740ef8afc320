//! Per-qubit pipeline: cycle graph, tubes, sub-sheets and sheet.

use std::thread;

use crate::cycle::CycleGraph;
use crate::error::Result;
use crate::geometry::{Circuit, LogicalQubitGeometry};
use crate::lattice::CoordSet;
use crate::sheets::{assemble_sheet, find_subsheets, SheetOptions, SheetRun};
use crate::tubes::{map_tubes, QubitTuple, TubeStats};

#[derive(Debug, Clone)]
pub struct MappedQubit {
    pub tuple: QubitTuple,
    pub graph: CycleGraph,
    pub tube_stats: TubeStats,
    pub sheet_run: SheetRun,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct MapOptions {
    pub max_traversals: Option<u64>,
}

pub fn map_qubit(sigma: &LogicalQubitGeometry, opts: MapOptions) -> Result<MappedQubit> {
    let graph = CycleGraph::from_geometry(sigma);
    let (mut tuple, tube_stats) = map_tubes(&graph, &sigma.id, sigma.layer)?;
    let sheet_run = find_subsheets(
        &graph,
        SheetOptions {
            start: None,
            max_traversals: opts.max_traversals,
        },
    )?;
    *tuple.sheet_mut() = assemble_sheet(&sheet_run.subs, sigma.layer);
    Ok(MappedQubit {
        tuple,
        graph,
        tube_stats,
        sheet_run,
    })
}

/// Maps every logical qubit; qubits are independent and run on scoped threads.
/// Output order follows the input order.
pub fn map_circuit(circuit: &Circuit, opts: MapOptions) -> Result<Vec<MappedQubit>> {
    thread::scope(|s| {
        let handles: Vec<_> = circuit
            .qubits
            .iter()
            .map(|q| s.spawn(move || map_qubit(q, opts)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("mapping thread panicked"))
            .collect()
    })
}

/// Sheets obtained from every possible initial start vertex.
pub fn sheets_for_all_starts(
    graph: &CycleGraph,
    layer: crate::lattice::Layer,
    opts: MapOptions,
) -> Result<Vec<CoordSet>> {
    (0..graph.len())
        .map(|i| {
            let run = find_subsheets(
                graph,
                SheetOptions {
                    start: Some(i),
                    max_traversals: opts.max_traversals,
                },
            )?;
            Ok(assemble_sheet(&run.subs, layer))
        })
        .collect()
}
