use std::path::{Path, PathBuf};

use wforge_core::witness::{
    mermin_witness, normalize, percent_error_vs, NormalizeMode, Witness,
};

use crate::config::PipelineConfig;
use crate::io::{atomic_write, read_witness, RunPaths};
use crate::CliError;

/// What to compare against.
#[derive(Debug, Clone)]
pub enum Reference {
    Mermin,
    File(PathBuf),
}

impl Reference {
    pub fn parse(s: &str) -> Self {
        if s == "mermin" {
            Reference::Mermin
        } else {
            Reference::File(PathBuf::from(s))
        }
    }

    fn load(&self, n: usize) -> Result<(String, Witness), CliError> {
        match self {
            Reference::Mermin => Ok(("mermin".to_string(), mermin_witness(n)?)),
            Reference::File(path) => {
                Ok((path.display().to_string(), read_witness(path)?))
            }
        }
    }
}

/// Normalize a witness to a reference's identity coefficient and tabulate
/// per-term coefficients and percent errors.
pub fn cmd_compare(
    witness_path: &Path,
    reference: &Reference,
    config: &PipelineConfig,
) -> Result<(), CliError> {
    let witness = read_witness(witness_path)?;
    let (ref_name, ref_witness) = reference.load(witness.num_qubits)?;
    if ref_witness.num_qubits != witness.num_qubits {
        return Err(CliError::config(format!(
            "reference has {} qubits, witness has {}",
            ref_witness.num_qubits, witness.num_qubits
        )));
    }
    let normalized = normalize(&witness, NormalizeMode::MatchIdentityOf(&ref_witness))?;
    let comparison = percent_error_vs(&normalized, &ref_witness)?;

    let mut csv = String::from("feature,reference_coefficient,witness_coefficient,percent_error\n");
    let mut txt = format!(
        "{:<10} {:>12} {:>12} {:>10}\n",
        "Feature", "Reference", "Witness", "Error %"
    );
    let identity = wforge_core::PauliString::identity(witness.num_qubits);
    txt.push_str(&format!(
        "{:<10} {:>12.4} {:>12.4} {:>10}\n",
        identity.to_string(),
        ref_witness.identity_coefficient(),
        normalized.identity_coefficient(),
        "normalized"
    ));
    for (s, err) in &comparison.percent_error {
        let c_ref = ref_witness.terms[s];
        let c_w = normalized.terms[s];
        csv.push_str(&format!("{s},{c_ref},{c_w},{err}\n"));
        txt.push_str(&format!(
            "{:<10} {:>12.4} {:>12.4} {:>10.2}\n",
            s.to_string(),
            c_ref,
            c_w,
            err
        ));
    }
    for s in &comparison.only_in_witness {
        csv.push_str(&format!("{s},,{},\n", normalized.terms[s]));
        txt.push_str(&format!(
            "{:<10} {:>12} {:>12.4} {:>10}\n",
            s.to_string(),
            "-",
            normalized.terms[s],
            "only here"
        ));
    }
    for s in &comparison.only_in_reference {
        csv.push_str(&format!("{s},{},,\n", ref_witness.terms[s]));
        txt.push_str(&format!(
            "{:<10} {:>12.4} {:>12} {:>10}\n",
            s.to_string(),
            ref_witness.terms[s],
            "-",
            "only ref"
        ));
    }
    txt.push_str(&format!(
        "\nmax |error| over shared terms: {:.3}% (vs {ref_name})\n",
        comparison.max_abs_error()
    ));

    let paths = RunPaths::new(&config.output_dir);
    atomic_write(&paths.compare_csv(), csv.as_bytes())?;
    atomic_write(&paths.compare_txt(), txt.as_bytes())?;
    print!("{txt}");
    Ok(())
}
