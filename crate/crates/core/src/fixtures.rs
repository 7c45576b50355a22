//! Bundled W-state witnesses with published coefficients.
//!
//! Three 4-qubit witnesses (46, 38, and 28 terms) and two 5-qubit witnesses
//! (20 and 180 terms), each normalized to identity coefficient 1. Their
//! noise tolerances against the matching W state are roughly 0.30 / 0.40 /
//! 0.46 and 0.05 / 0.15.

use crate::error::Result;
use crate::witness::Witness;

macro_rules! fixture {
    ($fn_name:ident, $file:literal) => {
        pub fn $fn_name() -> Result<Witness> {
            Ok(serde_json::from_str(include_str!(concat!(
                "../fixtures/",
                $file
            )))?)
        }
    };
}

fixture!(w4_46_terms, "w4_46terms.json");
fixture!(w4_38_terms, "w4_38terms.json");
fixture!(w4_28_terms, "w4_28terms.json");
fixture!(w5_20_terms, "w5_20terms.json");
fixture!(w5_180_terms, "w5_180terms.json");

/// All bundled witnesses as `(name, witness)` pairs.
pub fn all() -> Result<Vec<(&'static str, Witness)>> {
    Ok(vec![
        ("w4-46terms", w4_46_terms()?),
        ("w4-38terms", w4_38_terms()?),
        ("w4-28terms", w4_28_terms()?),
        ("w5-20terms", w5_20_terms()?),
        ("w5-180terms", w5_180_terms()?),
    ])
}
