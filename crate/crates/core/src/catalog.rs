//! The bundled group catalog.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groups::FiniteGroup;
use crate::interchange;

/// Names of the bundled groups, smallest first.
pub const NAMES: [&str; 7] = ["Z2", "Z3", "Z4", "Z2xZ2", "S3", "D4", "Q8"];

fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "Z2" => include_str!("../catalog/Z2.json"),
        "Z3" => include_str!("../catalog/Z3.json"),
        "Z4" => include_str!("../catalog/Z4.json"),
        "Z2xZ2" => include_str!("../catalog/Z2xZ2.json"),
        "S3" => include_str!("../catalog/S3.json"),
        "D4" => include_str!("../catalog/D4.json"),
        "Q8" => include_str!("../catalog/Q8.json"),
        _ => return None,
    })
}

/// Loads a bundled group by name. `"Z1"` is the trivial group.
pub fn group(name: &str) -> Result<Arc<FiniteGroup>> {
    if name == "Z1" {
        return Ok(FiniteGroup::trivial());
    }
    let text = source(name).ok_or_else(|| Error::Parse(format!("no bundled group named {name:?}")))?;
    interchange::group_from_str(text)
}

pub fn all() -> Vec<Arc<FiniteGroup>> {
    NAMES
        .iter()
        .map(|n| group(n).expect("bundled catalog parses"))
        .collect()
}
