//! `altkron coordinatize`: recovers the coefficient ring, module, and
//! pairing from an algebra table with chosen matrix units.

use std::path::Path;

use altkron::algebra::MatrixUnits;
use altkron::coordinatizer::coordinatize;
use altkron::error::Error;
use altkron::identity::check_alternative;
use altkron::scalar::Scalar;
use serde_json::json;

use crate::report::{self, Reporter};
use crate::CliError;

fn scalar_strings(row: &[Scalar]) -> Vec<String> {
    row.iter().map(|s| s.to_string()).collect()
}

pub fn run(
    algebra: &Path,
    units_path: &Path,
    out: Option<&Path>,
    timings: bool,
) -> Result<bool, CliError> {
    let (table, algebra_bytes) = report::load_algebra(algebra)?;
    let units_bytes = report::read_file(units_path)?;
    let units_value: serde_json::Value = serde_json::from_slice(&units_bytes)
        .map_err(|e| CliError::input(format!("cannot parse {}: {e}", units_path.display())))?;
    let units = MatrixUnits::from_json_value(&units_value, &table.field(), table.dim())
        .map_err(|e| CliError::input(format!("{}: {e}", units_path.display())))?;

    let mut rep = Reporter::new("coordinatize", timings);
    rep.input("algebra", algebra, &algebra_bytes);
    rep.input("units", units_path, &units_bytes);

    let started = rep.start();
    let alt = check_alternative(&table);
    let witness = alt
        .witness
        .as_ref()
        .map(|w| serde_json::to_value(w).expect("witness serialization cannot fail"));
    rep.push(Some(started), "alternative", alt.pass, witness);
    if !alt.pass {
        // The whole pipeline assumes alternativity; stop at the first lie.
        return rep.finish(out);
    }

    let started = rep.start();
    match coordinatize(&table, &units) {
        Ok(res) => {
            rep.push(Some(started), "coordinatize", true, None);
            for (flag, ok) in &res.report.flags {
                let witness =
                    (!ok).then(|| json!({"detail": "exact basis sweep found a violation"}));
                rep.push(None, flag, *ok, witness);
            }

            let gram: Vec<Vec<Vec<String>>> = res
                .spec
                .form
                .gram()
                .iter()
                .map(|row| row.iter().map(|e| scalar_strings(e)).collect())
                .collect();
            let iso: Vec<Vec<String>> = res.iso.iter().map(|r| scalar_strings(r)).collect();

            rep.set_result(json!({
                "dims": res.report.dims,
                "flags": res.report.flags,
                "gram": gram,
                "iso": iso,
            }));

            if let Some(dir) = out {
                report::write_json(dir, "recovered_spec.json", &res.spec.to_json_value())?;
                report::write_json(dir, "iso.json", &json!({"format": 1, "matrix": iso}))?;
            }
        }
        Err(Error::StageFailed { stage, detail }) => {
            rep.push(Some(started), stage, false, Some(json!({"detail": detail})));
        }
        Err(Error::FormInvalid(detail)) => {
            rep.push(Some(started), "form_valid", false, Some(json!({"detail": detail})));
        }
        Err(Error::BadAction(detail)) => {
            rep.push(Some(started), "module_action", false, Some(json!({"detail": detail})));
        }
        Err(other) => {
            rep.push(
                Some(started),
                "coordinatize",
                false,
                Some(json!({"detail": other.to_string()})),
            );
        }
    }

    rep.finish(out)
}
