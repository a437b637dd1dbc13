//! JSON persistence for spaces and interval functions.
//!
//! * A **space file** holds the JSON form of [`Space`] (tagged by `"type"`:
//!   `finite`, `grid1d`, `grid2d`, `points1d`, `points2d`).
//! * A **function file** is `{"space": ..., "values": [[lo, hi], ...]}`,
//!   where `"space"` is either an inline space object or a string path to a
//!   space file, resolved relative to the function file's own directory.
//!
//! Endpoints serialize as numbers, with the infinities spelled `"inf"` and
//! `"-inf"`. Loading a finite space re-runs the topology axiom check and
//! rejects families not closed under union and intersection.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::envelope::ApproximatingFamily;
use crate::error::Error;
use crate::extreal::Interval;
use crate::funcs::IntervalFunction;
use crate::space::Space;
use crate::Result;

fn check_axioms(space: &Space) -> Result<()> {
    if let Space::Finite(t) = space {
        let report = t.validate();
        if !report.passed {
            let msgs: Vec<&str> = report.failures.iter().map(|w| w.message.as_str()).collect();
            return Err(Error::InvalidSpace(msgs.join("; ")));
        }
    }
    Ok(())
}

/// Parses a space from a JSON string and checks finite-topology axioms.
pub fn space_from_str(json: &str) -> Result<Arc<Space>> {
    let space: Space = serde_json::from_str(json)?;
    check_axioms(&space)?;
    Ok(Arc::new(space))
}

/// Loads a space file.
pub fn load_space(path: impl AsRef<Path>) -> Result<Arc<Space>> {
    space_from_str(&fs::read_to_string(path)?)
}

/// Saves a space as pretty-printed JSON.
pub fn save_space(space: &Space, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, format!("{}\n", serde_json::to_string_pretty(space)?))?;
    Ok(())
}

#[derive(Deserialize)]
struct FunctionFileIn {
    space: serde_json::Value,
    values: Vec<Interval>,
}

#[derive(Serialize)]
struct FunctionFileOut<'a> {
    space: &'a Space,
    values: &'a [Interval],
}

/// Loads a function file. A string-valued `"space"` field is read as a path
/// relative to the function file's directory.
pub fn load_function(path: impl AsRef<Path>) -> Result<IntervalFunction> {
    let path = path.as_ref();
    let wire: FunctionFileIn = serde_json::from_str(&fs::read_to_string(path)?)?;
    let space = match wire.space {
        serde_json::Value::String(rel) => {
            let base = path.parent().unwrap_or_else(|| Path::new("."));
            load_space(base.join(rel))?
        }
        inline => {
            let space: Space = serde_json::from_value(inline)?;
            check_axioms(&space)?;
            Arc::new(space)
        }
    };
    IntervalFunction::new(space, wire.values)
}

/// Saves a function with its space inlined, as pretty-printed JSON.
pub fn save_function(f: &IntervalFunction, path: impl AsRef<Path>) -> Result<()> {
    let wire = FunctionFileOut {
        space: f.space().as_ref(),
        values: f.values(),
    };
    fs::write(path, format!("{}\n", serde_json::to_string_pretty(&wire)?))?;
    Ok(())
}

#[derive(Serialize)]
struct FamilyFileOut<'a> {
    space: &'a Space,
    eps: f64,
    radii: &'a [f64],
    members: Vec<&'a [Interval]>,
}

/// Saves an approximating family: the shared space inlined once, the
/// accuracy target, the per-center radii, and one values array per member
/// in center order.
pub fn save_family(fam: &ApproximatingFamily, path: impl AsRef<Path>) -> Result<()> {
    let wire = FamilyFileOut {
        space: fam.family.space().as_ref(),
        eps: fam.eps,
        radii: &fam.radii,
        members: fam.family.members().iter().map(|m| m.values()).collect(),
    };
    fs::write(path, format!("{}\n", serde_json::to_string_pretty(&wire)?))?;
    Ok(())
}
