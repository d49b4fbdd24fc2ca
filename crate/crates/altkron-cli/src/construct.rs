//! `altkron construct`: builds the stock algebras, verifies them on the
//! spot, and writes the table plus its companion data as artifacts.

use std::path::Path;

use altkron::algebra::{AlgebraTable, Element, MatrixUnits};
use altkron::catalog;
use altkron::constructions::{
    cay_actions, cd, ncd, octonion, split_null_extension, three_generator_module, CDParams,
};
use altkron::identity::check_alternative;
use altkron::kron::{build_algebra, build_algebra_unchecked, CoeffRing, KronSpec};
use altkron::scalar::FieldSpec;
use serde_json::json;

use crate::report::{self, Reporter};
use crate::{CliError, ConstructKind};

struct Built {
    kind: &'static str,
    table: AlgebraTable,
    units: Option<MatrixUnits>,
    spec: Option<KronSpec>,
    extra: Vec<(&'static str, serde_json::Value)>,
    provenance: serde_json::Value,
}

fn load_base(rep: &mut Reporter, text: &str) -> Result<CoeffRing, CliError> {
    let table = if text == "rationals" {
        catalog::ground_field(FieldSpec::rational())
    } else {
        let path = Path::new(text);
        let (table, bytes) = report::load_algebra(path)?;
        rep.input("base", path, &bytes);
        table
    };
    CoeffRing::new(table)
        .map_err(|e| CliError::precondition(format!("base ring is not usable as coefficients: {e}")))
}

/// Accepts either a basis name of the table or a comma list of coordinates.
fn parse_element(table: &AlgebraTable, text: &str) -> Result<Element, CliError> {
    if let Some(k) = table.basis_names().iter().position(|n| n == text) {
        return Ok(table.basis_element(k));
    }
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != table.dim() {
        return Err(CliError::input(format!(
            "element {text:?} is neither a basis name nor {} comma-separated coordinates",
            table.dim()
        )));
    }
    let field = table.field();
    parts
        .iter()
        .map(|p| {
            field
                .parse(p.trim())
                .map_err(|e| CliError::input(format!("bad coordinate {p:?}: {e}")))
        })
        .collect()
}

fn build(rep: &mut Reporter, kind: ConstructKind) -> Result<Built, CliError> {
    match kind {
        ConstructKind::Octonion { base, v2 } => {
            let ring = load_base(rep, &base)?;
            let lambda = match &v2 {
                Some(text) => Some(
                    ring.field()
                        .parse(text)
                        .map_err(|e| CliError::input(format!("bad --v2 value {text:?}: {e}")))?,
                ),
                None => None,
            };
            let v2_echo = lambda
                .as_ref()
                .map(|s| s.to_string())
                .unwrap_or_else(|| "1".to_string());
            let out = octonion(&ring, lambda)
                .map_err(|e| CliError::precondition(e.to_string()))?;
            Ok(Built {
                kind: "octonion",
                provenance: json!({"kind": "octonion", "base": base, "v_squared": v2_echo}),
                table: out.table,
                units: Some(out.units),
                spec: Some(out.spec),
                extra: Vec::new(),
            })
        }
        ConstructKind::Cd { base, alpha } => {
            let ring = load_base(rep, &base)?;
            let alpha_el = parse_element(ring.table(), &alpha)?;
            let alpha_echo = ring.table().element_string(&alpha_el);
            let params = CDParams { base: ring, alpha: alpha_el };
            let out = cd(&params).map_err(|e| CliError::precondition(e.to_string()))?;
            Ok(Built {
                kind: "cd",
                provenance: json!({"kind": "cd", "base": base, "alpha": alpha_echo}),
                table: out.table,
                units: Some(out.units),
                spec: Some(out.spec),
                extra: Vec::new(),
            })
        }
        ConstructKind::Ncd { base, alpha } => {
            let ring = load_base(rep, &base)?;
            let alpha_el = parse_element(ring.table(), &alpha)?;
            let alpha_echo = ring.table().element_string(&alpha_el);
            let params = CDParams { base: ring, alpha: alpha_el };
            let out = ncd(&params).map_err(|e| CliError::precondition(e.to_string()))?;
            let bar = out.quotient.bar().clone();
            Ok(Built {
                kind: "ncd",
                provenance: json!({
                    "kind": "ncd",
                    "base": base,
                    "alpha": alpha_echo,
                    "quotient_dim": bar.dim(),
                }),
                table: out.table,
                units: Some(out.units),
                spec: None,
                extra: vec![("bar.json", bar.to_json_value())],
            })
        }
        ConstructKind::Nullext { base } => {
            if base != "rationals" {
                return Err(CliError::input(
                    "construct nullext supports only --base rationals",
                ));
            }
            let field = FieldSpec::rational();
            let (m2, m2_units) = catalog::matrix2(field);
            let actions = cay_actions(field);
            let table = split_null_extension(&m2, &actions)
                .map_err(|e| CliError::precondition(e.to_string()))?;
            let dim = table.dim();
            let extend = |x: &Element| {
                let mut v = x.clone();
                v.resize(dim, field.zero());
                v
            };
            let [e11, e12, e21, e22] = &m2_units.units;
            let units = MatrixUnits::new(extend(e11), extend(e12), extend(e21), extend(e22));
            Ok(Built {
                kind: "nullext",
                provenance: json!({"kind": "nullext", "base": base, "pairing": "zero"}),
                table,
                units: Some(units),
                spec: None,
                extra: Vec::new(),
            })
        }
        ConstructKind::Fromspec { spec, force } => {
            let bytes = report::read_file(&spec)?;
            let value: serde_json::Value = serde_json::from_slice(&bytes)
                .map_err(|e| CliError::input(format!("cannot parse {}: {e}", spec.display())))?;
            let parsed = KronSpec::from_json_value(&value)
                .map_err(|e| CliError::input(format!("{}: {e}", spec.display())))?;
            rep.input("spec", &spec, &bytes);
            let (table, units) = if force {
                build_algebra_unchecked(&parsed)
            } else {
                build_algebra(&parsed)
            }
            .map_err(|e| CliError::precondition(e.to_string()))?;
            Ok(Built {
                kind: "fromspec",
                provenance: json!({
                    "kind": "fromspec",
                    "spec": spec.display().to_string(),
                    "forced": force,
                }),
                table,
                units: Some(units),
                spec: Some(parsed),
                extra: Vec::new(),
            })
        }
        ConstructKind::Threegen { base, gens } => {
            let ring = load_base(rep, &base)?;
            let parts: Vec<&str> = gens.split(';').collect();
            if parts.len() != 3 {
                return Err(CliError::input(format!(
                    "--gens needs three semicolon-separated tuples, got {}",
                    parts.len()
                )));
            }
            let parsed: Vec<Element> = parts
                .iter()
                .map(|p| parse_element(ring.table(), p.trim()))
                .collect::<Result<_, _>>()?;
            let gen_echo: Vec<String> = parsed
                .iter()
                .map(|g| ring.table().element_string(g))
                .collect();
            let spec = three_generator_module(&ring, [&parsed[0], &parsed[1], &parsed[2]])
                .map_err(|e| CliError::precondition(e.to_string()))?;
            let (table, units) = build_algebra(&spec)
                .map_err(|e| CliError::precondition(e.to_string()))?;
            Ok(Built {
                kind: "threegen",
                provenance: json!({"kind": "threegen", "base": base, "gens": gen_echo}),
                table,
                units: Some(units),
                spec: Some(spec),
                extra: Vec::new(),
            })
        }
    }
}

pub fn run(kind: ConstructKind, out: Option<&Path>, timings: bool) -> Result<bool, CliError> {
    let mut rep = Reporter::new("construct", timings);
    let built = build(&mut rep, kind)?;

    let started = rep.start();
    let alt = check_alternative(&built.table);
    let witness = alt
        .witness
        .as_ref()
        .map(|w| serde_json::to_value(w).expect("witness serialization cannot fail"));
    rep.push(Some(started), "alternative", alt.pass, witness);

    if let Some(units) = &built.units {
        let started = rep.start();
        let ok = built
            .table
            .verify_matrix_units(units)
            .map_err(|e| CliError::precondition(e.to_string()))?;
        let witness = (!ok).then(|| json!({"detail": "unit relations violated"}));
        rep.push(Some(started), "matrix_units", ok, witness);
    }

    rep.set_result(json!({
        "kind": built.kind,
        "dim": built.table.dim(),
        "provenance": built.provenance,
    }));

    if let Some(dir) = out {
        report::write_json(dir, "algebra.json", &built.table.to_json_value())?;
        if let Some(units) = &built.units {
            report::write_json(dir, "embedding.json", &units.to_json_value())?;
        }
        if let Some(spec) = &built.spec {
            report::write_json(dir, "spec.json", &spec.to_json_value())?;
        }
        for (name, value) in &built.extra {
            report::write_json(dir, name, value)?;
        }
        report::write_json(dir, "provenance.json", &built.provenance)?;
    }

    rep.finish(out)
}
