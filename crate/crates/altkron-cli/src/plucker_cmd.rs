//! `altkron plucker`: quadratic relation families, their checks, and the
//! independence certificate for the determinant family.

use std::path::Path;

use altkron::plucker::{
    check_plucker_form, family_from_json, family_to_json, grassmann_alphas, independence_check,
    QuadForm,
};
use altkron::scalar::FieldSpec;
use serde_json::json;

use crate::report::{self, Reporter};
use crate::{CliError, PluckerAction};

pub fn run(action: PluckerAction, out: Option<&Path>, timings: bool) -> Result<bool, CliError> {
    match action {
        PluckerAction::Grassmann { n } => {
            let family = grassmann_alphas(n).map_err(|e| CliError::input(e.to_string()))?;
            let value = family_to_json(&family).map_err(|e| CliError::input(e.to_string()))?;
            let text = serde_json::to_string_pretty(&value)
                .expect("family serialization cannot fail");
            println!("{text}");
            if let Some(dir) = out {
                report::write_json(dir, "family.json", &value)?;
            }
            Ok(true)
        }
        PluckerAction::Check { family, middle_lk } => {
            let bytes = report::read_file(&family)?;
            let value: serde_json::Value = serde_json::from_slice(&bytes)
                .map_err(|e| CliError::input(format!("cannot parse {}: {e}", family.display())))?;
            let fam = family_from_json(&value)
                .map_err(|e| CliError::input(format!("{}: {e}", family.display())))?;

            let mut rep = Reporter::new("plucker-check", timings);
            rep.input("family", &family, &bytes);
            let (form, name) = if middle_lk {
                (QuadForm::MiddleLk, "plucker_middle_lk")
            } else {
                (QuadForm::Standard, "plucker")
            };
            let started = rep.start();
            let outcome = check_plucker_form(&fam, form);
            let witness = outcome.witness.map(|q| json!({"quadruple": q}));
            rep.push(Some(started), name, outcome.pass, witness);
            rep.finish(out)
        }
        PluckerAction::Independence { n, trials, seed } => {
            let mut rep = Reporter::new("plucker-independence", timings);
            rep.set_seed(seed);
            let started = rep.start();
            let outcome = independence_check(FieldSpec::rational(), n, trials, seed)
                .map_err(|e| CliError::input(e.to_string()))?;
            let witness = if outcome.confirmed {
                json!({"rank": outcome.max_rank, "point": outcome.point})
            } else {
                json!({"max_rank": outcome.max_rank})
            };
            rep.push(Some(started), "independence", outcome.confirmed, Some(witness));
            rep.set_result(
                serde_json::to_value(&outcome).expect("report serialization cannot fail"),
            );
            rep.finish(out)
        }
    }
}
