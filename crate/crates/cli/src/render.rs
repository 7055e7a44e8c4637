//! Text and JSON renderings of command results.

use std::fmt::Write as _;

use clap::ValueEnum;
use num_traits::Zero;
use serde_json::{json, Map, Value};

use incidence::bracket::BracketPolynomial;
use incidence::exactalg::{format_rational, Rational};
use incidence::geometry::{serialize_document, GeometryDocument, IncidenceGeometry};
use incidence::matroid::MatroidReport;
use incidence::purecond::{PinInvariance, PureCondition, SlInvariance};
use incidence::redraw::{OverconstrainedReport, RedrawingReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub struct Output {
    pub text: String,
    pub code: u8,
}

fn envelope(command: &str, seed: Option<u64>, payload: Value) -> Value {
    let mut doc = Map::new();
    doc.insert("tool".into(), json!("incidence"));
    doc.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    doc.insert("command".into(), json!(command));
    if let Some(seed) = seed {
        doc.insert("seed".into(), json!(seed));
    }
    if let Value::Object(fields) = payload {
        doc.extend(fields);
    }
    Value::Object(doc)
}

fn finish(format: Format, command: &str, seed: Option<u64>, payload: Value, text: String) -> Output {
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&envelope(command, seed, payload)).expect("json value");
            s.push('\n');
            s
        }
        Format::Text => text,
    };
    Output { text, code: 0 }
}

fn rationals(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| json!(format_rational(x))).collect())
}

pub fn validate(format: Format, doc: &GeometryDocument) -> Output {
    let g = &doc.geometry;
    let canonical: Value = serde_json::from_str(&serialize_document(doc)).expect("serialized document parses");
    let payload = json!({
        "valid": true,
        "d": g.dimension(),
        "points": g.points().len(),
        "hyperplanes": g.hyperplanes().len(),
        "incidences": g.incidences().len(),
        "basis_size": g.basis_size(),
        "fingerprint": g.fingerprint(),
        "document": canonical,
    });
    let text = format!(
        "valid: d={}, {} points, {} hyperplanes, {} incidences (basis size {})\nfingerprint: {}\n",
        g.dimension(),
        g.points().len(),
        g.hyperplanes().len(),
        g.incidences().len(),
        g.basis_size(),
        g.fingerprint()
    );
    finish(format, "validate", None, payload, text)
}

pub fn matroid(format: Format, r: &MatroidReport) -> Output {
    let mut text = format!(
        "independent: {}\nbasis: {}\nincidences: {} (basis size {})\ngeneric rank: {}\nmethod: {}\n",
        r.independent,
        r.basis,
        r.incidences,
        r.basis_size,
        r.generic_rank,
        serde_json::to_value(r.method)
            .expect("method")
            .as_str()
            .unwrap_or_default(),
    );
    if let Some(s) = &r.violating_subset {
        let pairs: Vec<String> = s.iter().map(|(p, h)| format!("({p},{h})")).collect();
        let _ = writeln!(text, "violating subset ({}): {}", s.len(), pairs.join(" "));
    }
    let payload = serde_json::to_value(r).expect("report serializes");
    finish(format, "matroid", Some(r.seed), payload, text)
}

pub fn purecond(
    format: Format,
    g: &IncidenceGeometry,
    pc: &PureCondition,
    bracket: Option<&BracketPolynomial>,
) -> Output {
    let poly = pc.render();
    let bracket_text = bracket.map(|b| b.display_with(g.hyperplanes()).to_string());
    let experimental = pc.d >= 3;
    let mut text = format!("{poly}\n");
    if let Some(b) = &bracket_text {
        let note = if experimental { " (experimental for d >= 3)" } else { "" };
        let _ = writeln!(text, "bracket{note}: {b}");
    }
    let mut payload = json!({
        "fingerprint": pc.fingerprint,
        "d": pc.d,
        "pinned": pc.pinned,
        "degree": pc.polynomial.total_degree(),
        "terms": pc.polynomial.len(),
        "polynomial": poly,
    });
    if let Some(b) = bracket_text {
        payload["bracket"] = json!(b);
        payload["bracket_experimental"] = json!(experimental);
    }
    finish(format, "purecond", None, payload, text)
}

pub fn eval(format: Format, pc: &PureCondition, value: &Rational, vanish_code: u8) -> Output {
    let vanishes = value.is_zero();
    let v = format_rational(value);
    let payload = json!({
        "fingerprint": pc.fingerprint,
        "pinned": pc.pinned,
        "value": v,
        "vanishes": vanishes,
    });
    let text = format!("{v}\n");
    let mut out = finish(format, "eval", None, payload, text);
    if vanishes {
        out.code = vanish_code;
    }
    out
}

pub fn realize(format: Format, g: &IncidenceGeometry, r: &RedrawingReport) -> Output {
    let mut text = format!("pinned: {}\nkernel dimension: {}\n", r.pinned, r.kernel_dimension);
    let mut list = Vec::new();
    for (i, red) in r.redrawings.iter().enumerate() {
        let class = serde_json::to_value(red.classification).expect("classification");
        let class = class.as_str().unwrap_or_default().to_string();
        let _ = writeln!(text, "redrawing {i}: {class}");
        let mut coords = Map::new();
        for p in g.points() {
            let v = red.realization.coords.get(p).expect("every point has coordinates");
            let parts: Vec<String> = v.iter().map(format_rational).collect();
            let _ = writeln!(text, "  {p} = ({})", parts.join(", "));
            coords.insert(p.clone(), rationals(v));
        }
        let mut offsets = Map::new();
        for h in g.hyperplanes() {
            let o = &red.realization.offsets[h];
            let _ = writeln!(text, "  offset {h} = {}", format_rational(o));
            offsets.insert(h.clone(), json!(format_rational(o)));
        }
        list.push(json!({
            "classification": class,
            "coordinates": coords,
            "offsets": offsets,
        }));
    }
    let payload = json!({
        "pinned": r.pinned,
        "kernel_dimension": r.kernel_dimension,
        "redrawings": list,
    });
    finish(format, "realize", None, payload, text)
}

pub fn invariance(format: Format, pins: &PinInvariance, sl: &SlInvariance) -> Output {
    let mut text = format!("pin invariance: {}\n", if pins.consistent { "ok" } else { "FAILED" });
    for (p, l) in &pins.scalars {
        let _ = writeln!(text, "  lambda({p}) = {l}");
    }
    let _ = writeln!(
        text,
        "unimodular invariance: {}/{} trials agree, {} kernel mismatches",
        sl.trials - sl.determinant_mismatches.len(),
        sl.trials,
        sl.kernel_mismatches.len()
    );
    let payload = json!({
        "pin_invariance": pins,
        "unimodular_invariance": sl,
        "passed": pins.consistent && sl.passed(),
    });
    finish(format, "invariance", Some(sl.seed), payload, text)
}

pub fn overconstrained(format: Format, r: &OverconstrainedReport, seed: u64) -> Output {
    let mut text = format!(
        "pinned: {}\npinned rank: {} of {}\nfeasible: {}\ngeneric unpinned rank: {}\n",
        r.pinned, r.pinned_rank, r.full_column_rank, r.feasible, r.generic_rank
    );
    if let Some(m) = &r.minors {
        let _ = writeln!(
            text,
            "nonzero maximal minors at the given normals: {} of {}",
            m.nonzero_at_normals, m.total
        );
        for t in &m.random {
            let _ = writeln!(
                text,
                "nonzero maximal minors at random normals (trial {}): {} of {}",
                t.trial, t.nonzero, m.total
            );
        }
    }
    let payload = serde_json::to_value(r).expect("report serializes");
    finish(format, "overconstrained", Some(seed), payload, text)
}
