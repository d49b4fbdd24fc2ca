//! `altkron check`: the alternativity sweep plus any requested identities.

use std::path::Path;

use altkron::identity::{check_alternative, check_identity, CheckMode};

use crate::report::{self, Reporter};
use crate::CliError;

fn parse_mode(text: &str) -> Result<(CheckMode, Option<u64>), CliError> {
    if text == "basis" {
        return Ok((CheckMode::BasisMultilinear, None));
    }
    if let Some(rest) = text.strip_prefix("random:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() == 2 {
            if let (Ok(trials), Ok(seed)) = (parts[0].parse(), parts[1].parse()) {
                return Ok((CheckMode::Random { trials, seed }, Some(seed)));
            }
        }
    }
    Err(CliError::input(format!(
        "--mode must be basis or random:<trials>:<seed>, got {text:?}"
    )))
}

pub fn run(
    algebra: &Path,
    identities: &[String],
    mode_text: &str,
    out: Option<&Path>,
    timings: bool,
) -> Result<bool, CliError> {
    let (table, bytes) = report::load_algebra(algebra)?;
    let (mode, seed) = parse_mode(mode_text)?;

    let mut rep = Reporter::new("check", timings);
    rep.input("algebra", algebra, &bytes);
    if let Some(seed) = seed {
        rep.set_seed(seed);
    }

    let started = rep.start();
    let alt = check_alternative(&table);
    let witness = alt
        .witness
        .as_ref()
        .map(|w| serde_json::to_value(w).expect("witness serialization cannot fail"));
    rep.push(Some(started), "alternative", alt.pass, witness);

    for name in identities {
        let started = rep.start();
        let outcome = check_identity(&table, name, mode)
            .map_err(|e| CliError::input(format!("identity {name:?}: {e}")))?;
        let witness = outcome
            .witness
            .as_ref()
            .map(|w| serde_json::to_value(w).expect("witness serialization cannot fail"));
        rep.push(Some(started), name, outcome.pass, witness);
    }

    rep.finish(out)
}
