//! Report layout shared by every analysis command.

use protoshape::homology::HomologyGroups;
use protoshape::space::FiniteSpace;
use protoshape::TruncSimplicialSet;
use serde::Serialize;
use serde_json::{json, Value};

use crate::documents::FORMAT_VERSION;

/// Open covers of a finite space are all treated as admissible.
pub const ADMISSIBILITY: &str = "all-covers";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// A difference worth reporting that is not a failure.
    Noted,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Self { name: name.into(), status, detail: detail.into() }
    }

    pub fn check(name: impl Into<String>, holds: bool, detail: impl Into<String>) -> Self {
        Self::new(name, if holds { Status::Pass } else { Status::Fail }, detail)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SpaceSummary {
    pub points: Vec<String>,
    pub t0: Option<bool>,
}

impl SpaceSummary {
    pub fn of(space: &FiniteSpace) -> Self {
        Self { points: space.points().to_vec(), t0: Some(space.is_t0()) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub format_version: &'static str,
    pub command: String,
    pub input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cover_digest: Option<String>,
    pub admissibility: &'static str,
    pub space: SpaceSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    pub status: &'static str,
    pub verdicts: Vec<Verdict>,
    pub summary: Vec<String>,
    pub details: Value,
}

impl Report {
    pub fn new(command: &str, input_digest: String, space: SpaceSummary) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            command: command.into(),
            input_digest,
            cover_digest: None,
            admissibility: ADMISSIBILITY,
            space,
            max_degree: None,
            status: "ok",
            verdicts: Vec::new(),
            summary: Vec::new(),
            details: Value::Null,
        }
    }

    pub fn failed(&self) -> bool {
        self.verdicts.iter().any(|v| v.status == Status::Fail)
    }

    /// Sets `status` from the verdicts.
    pub fn finish(mut self) -> Self {
        self.status = if self.failed() { "verification_failed" } else { "ok" };
        self
    }

    pub fn human(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, self.status);
        let t0 = match self.space.t0 {
            Some(true) => " (T0)",
            Some(false) => " (not T0)",
            None => "",
        };
        out += &format!("  space: {} points{t0}\n", self.space.points.len());
        for line in &self.summary {
            out += &format!("  {line}\n");
        }
        for v in &self.verdicts {
            let tag = match v.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Noted => "note",
                Status::Skipped => "skip",
            };
            out += &format!("  [{tag}] {}: {}\n", v.name, v.detail);
        }
        out
    }
}

pub fn homology_json(h: &HomologyGroups) -> Value {
    let degrees: Vec<Value> = h
        .degrees()
        .iter()
        .enumerate()
        .map(|(n, d)| {
            let torsion: Vec<String> = d.torsion.iter().map(|t| t.to_string()).collect();
            json!({ "degree": n, "betti": d.betti, "torsion": torsion, "group": d.to_string() })
        })
        .collect();
    json!({ "betti": h.betti(), "degrees": degrees, "text": h.to_string() })
}

pub fn complex_json(s: &TruncSimplicialSet) -> Value {
    let nondegenerate: Vec<usize> = (0..=s.depth()).map(|n| s.nondegenerate(n).len()).collect();
    json!({ "depth": s.depth(), "cells": s.cell_counts(), "nondegenerate": nondegenerate })
}

pub fn error_json(command: &str, kind: &str, message: &str) -> Value {
    json!({
        "format_version": FORMAT_VERSION,
        "command": command,
        "error": { "kind": kind, "message": message },
    })
}
