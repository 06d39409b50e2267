//! JSON and CSV rendering of command reports.

use std::io::Write;

use serde::Serialize;
use serde_json::{json, Value};
use tww_core::graph::feedback_edge_set;
use tww_core::report::VerifyReport;
use tww_core::Trigraph;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct InstanceStats {
    pub n: usize,
    pub m: usize,
    pub red: usize,
    pub k: usize,
}

impl InstanceStats {
    pub fn of(g: &Trigraph) -> Self {
        InstanceStats {
            n: g.vertex_count(),
            m: g.edge_count(),
            red: g.red_edge_count(),
            k: feedback_edge_set(g).len(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: &'static str,
    pub instance: InstanceStats,
    /// Replayed width of the emitted sequence.
    pub width: Option<usize>,
    pub details: Value,
    pub verification: Option<VerifyReport>,
    pub wall_ms: u128,
}

impl Report {
    pub fn verified(&self) -> bool {
        self.verification.as_ref().is_none_or(|v| v.valid)
    }

    pub fn write_json(&self, out: &mut impl Write) -> anyhow::Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)?;
        Ok(())
    }

    pub fn write_csv(&self, out: &mut impl Write) -> anyhow::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record([
            "command", "n", "m", "k", "width", "valid", "complete", "wall_ms",
        ])?;
        let v = self.verification.as_ref();
        w.write_record([
            self.command.to_string(),
            self.instance.n.to_string(),
            self.instance.m.to_string(),
            self.instance.k.to_string(),
            self.width.map(|x| x.to_string()).unwrap_or_default(),
            v.map(|v| v.valid.to_string()).unwrap_or_default(),
            v.map(|v| v.complete.to_string()).unwrap_or_default(),
            self.wall_ms.to_string(),
        ])?;
        w.flush()?;
        Ok(())
    }

    pub fn write_text(&self, out: &mut impl Write) -> anyhow::Result<()> {
        let i = &self.instance;
        writeln!(out, "{}: n={} m={} k={}", self.command, i.n, i.m, i.k)?;
        if let Some(w) = self.width {
            writeln!(out, "width {w}")?;
        }
        if let Some(v) = &self.verification {
            match &v.error {
                None => writeln!(out, "verified: {} steps, complete: {}", v.steps, v.complete)?,
                Some(e) => writeln!(out, "verification failed: {e}")?,
            }
        }
        Ok(())
    }
}

pub fn empty_details() -> Value {
    json!({})
}
