//! Line-oriented JSON records written by the command-line front-end.
//!
//! A minor record is one object per line:
//!
//! ```json
//! {"terminals":[0,1],"weight_mode":"global","edges":[{"i":0,"j":1,"w":2.0}],
//!  "seed":1,"algorithm":"noisy","distortion_worst":1.0}
//! ```
//!
//! Trace records (one per round, or per ball-growing step) carry a
//! `"record"` tag so they can share a stream with other output.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Result, SprError};
use crate::graph::VertexId;
use crate::minor::{InducedMinor, MinorEdge, WeightMode};
use crate::runner::{Algorithm, RunOutcome, RunTrace};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinorRecord {
    pub terminals: Vec<VertexId>,
    pub weight_mode: WeightMode,
    pub edges: Vec<MinorEdge>,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub distortion_worst: f64,
}

impl MinorRecord {
    pub fn new(outcome: &RunOutcome, distortion_worst: f64) -> Self {
        MinorRecord {
            terminals: outcome.minor.terminals.clone(),
            weight_mode: outcome.minor.weight_mode,
            edges: outcome.minor.edges.clone(),
            seed: outcome.seed,
            algorithm: outcome.algorithm,
            distortion_worst,
        }
    }

    pub fn to_minor(&self) -> InducedMinor {
        let mut edges = self.edges.clone();
        for e in &mut edges {
            if e.i > e.j {
                std::mem::swap(&mut e.i, &mut e.j);
            }
        }
        edges.sort_by_key(|e| (e.i, e.j));
        InducedMinor { terminals: self.terminals.clone(), edges, weight_mode: self.weight_mode }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }

    /// Reads the first non-blank line of `reader` as a record.
    pub fn read(reader: impl BufRead) -> Result<Self> {
        for (idx, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            return serde_json::from_str(&line).map_err(|e| SprError::Parse {
                line: idx + 1,
                message: e.to_string(),
            });
        }
        Err(SprError::Parse { line: 1, message: "no minor record found".into() })
    }
}

/// Writes the trace of `outcome` as JSON lines.
pub fn write_trace(outcome: &RunOutcome, mut out: impl Write) -> Result<()> {
    #[derive(Serialize)]
    struct Tagged<'a, T: Serialize> {
        record: &'a str,
        #[serde(flatten)]
        body: &'a T,
    }
    match &outcome.trace {
        RunTrace::Rounds(rounds) => {
            for r in rounds {
                serde_json::to_writer(&mut out, &Tagged { record: "round", body: r })?;
                writeln!(out)?;
            }
        }
        RunTrace::Steps(steps) => {
            for s in steps {
                serde_json::to_writer(&mut out, &Tagged { record: "step", body: s })?;
                writeln!(out)?;
            }
        }
        RunTrace::Empty => {}
    }
    if let Some(c) = &outcome.counters {
        serde_json::to_writer(&mut out, &Tagged { record: "heap", body: c })?;
        writeln!(out)?;
    }
    Ok(())
}
