//! JSON geometry documents.
//!
//! ```json
//! { "d": 2,
//!   "points": ["p0", "p1"],
//!   "hyperplanes": ["h0"],
//!   "incidences": [["p0", "h0"], ["p1", "h0"]],
//!   "normals": {"h0": ["0", "1"]},
//!   "coordinates": {"p0": ["0", "0"], "p1": ["1/2", "0"]} }
//! ```
//!
//! `normals` and `coordinates` are optional. Rationals are strings, either
//! integers or `num/den`; JSON numbers are rejected. Unknown keys are errors.

use std::collections::BTreeMap;

use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use super::{IncidenceGeometry, NormalAssignment, PointConfiguration};
use crate::error::{Error, Result};
use crate::exactalg::rational::{format_rational, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometryDocument {
    pub geometry: IncidenceGeometry,
    pub normals: Option<NormalAssignment>,
    pub coordinates: Option<PointConfiguration>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    d: usize,
    points: Vec<String>,
    hyperplanes: Vec<String>,
    incidences: Vec<(String, String)>,
    #[serde(default)]
    normals: Option<BTreeMap<String, Vec<String>>>,
    #[serde(default)]
    coordinates: Option<BTreeMap<String, Vec<String>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNormals {
    normals: BTreeMap<String, Vec<String>>,
}

fn syntax(e: serde_json::Error) -> Error {
    Error::Syntax(e.to_string())
}

fn parse_vectors(raw: BTreeMap<String, Vec<String>>) -> Result<BTreeMap<String, Vec<Rational>>> {
    raw.into_iter()
        .map(|(k, v)| {
            let v = v.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
            Ok((k, v))
        })
        .collect()
}

fn check_keys<'a>(keys: impl IntoIterator<Item = &'a String>, g: &IncidenceGeometry, hyperplanes: bool) -> Result<()> {
    for k in keys {
        if hyperplanes {
            g.hyperplane_index(k)?;
        } else {
            g.point_index(k)?;
        }
    }
    Ok(())
}

/// Parses a full document. Normal and coordinate maps must reference existing
/// labels and have `d` entries each.
pub fn parse_document(text: &str) -> Result<GeometryDocument> {
    let raw: RawDocument = serde_json::from_str(text).map_err(syntax)?;
    let g = IncidenceGeometry::new(
        raw.d,
        raw.points,
        raw.hyperplanes,
        raw.incidences.iter().map(|(p, h)| (p.as_str(), h.as_str())),
    )?;
    let normals = match raw.normals {
        None => None,
        Some(n) => {
            let entries = parse_vectors(n)?;
            check_keys(entries.keys(), &g, true)?;
            let n = NormalAssignment { entries };
            n.vectors(&g)?;
            Some(n)
        }
    };
    let coordinates = match raw.coordinates {
        None => None,
        Some(c) => {
            let coords = parse_vectors(c)?;
            check_keys(coords.keys(), &g, false)?;
            let c = PointConfiguration { coords };
            c.vectors(&g)?;
            Some(c)
        }
    };
    Ok(GeometryDocument {
        geometry: g,
        normals,
        coordinates,
    })
}

pub fn parse_geometry(text: &str) -> Result<IncidenceGeometry> {
    Ok(parse_document(text)?.geometry)
}

/// Parses a standalone `{"normals": {...}}` document.
pub fn parse_normals(text: &str) -> Result<NormalAssignment> {
    let raw: RawNormals = serde_json::from_str(text).map_err(syntax)?;
    Ok(NormalAssignment {
        entries: parse_vectors(raw.normals)?,
    })
}

struct OrderedVectors<'a>(Vec<(&'a str, &'a [Rational])>);

impl Serialize for OrderedVectors<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            let strings: Vec<String> = v.iter().map(format_rational).collect();
            map.serialize_entry(k, &strings)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct OutDocument<'a> {
    d: usize,
    points: &'a [String],
    hyperplanes: &'a [String],
    incidences: Vec<(&'a str, &'a str)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    normals: Option<OrderedVectors<'a>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coordinates: Option<OrderedVectors<'a>>,
}

fn ordered<'a>(labels: &'a [String], map: &'a BTreeMap<String, Vec<Rational>>) -> OrderedVectors<'a> {
    OrderedVectors(
        labels
            .iter()
            .filter_map(|l| map.get(l).map(|v| (l.as_str(), v.as_slice())))
            .collect(),
    )
}

fn render(
    g: &IncidenceGeometry,
    normals: Option<&NormalAssignment>,
    coordinates: Option<&PointConfiguration>,
) -> String {
    let doc = OutDocument {
        d: g.d,
        points: &g.points,
        hyperplanes: &g.hyperplanes,
        incidences: g.incidences.iter().map(|&i| g.incidence_labels(i)).collect(),
        normals: normals.map(|n| ordered(&g.hyperplanes, &n.entries)),
        coordinates: coordinates.map(|c| ordered(&g.points, &c.coords)),
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("document serializes");
    text.push('\n');
    text
}

pub fn serialize_geometry(g: &IncidenceGeometry) -> String {
    render(g, None, None)
}

pub fn serialize_document(doc: &GeometryDocument) -> String {
    render(&doc.geometry, doc.normals.as_ref(), doc.coordinates.as_ref())
}

/// Renders `{"normals": {...}}`, ordered like the geometry's hyperplanes.
pub fn serialize_normals(g: &IncidenceGeometry, normals: &NormalAssignment) -> String {
    #[derive(Serialize)]
    struct Out<'a> {
        normals: OrderedVectors<'a>,
    }
    let mut text = serde_json::to_string_pretty(&Out {
        normals: ordered(&g.hyperplanes, &normals.entries),
    })
    .expect("normals serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{integer, rational};
    use crate::fixtures;

    const G1: &str = r#"{"d": 2, "points": ["p0"], "hyperplanes": ["h0"], "incidences": [["p0", "h0"]]}"#;

    #[test]
    fn parses_smallest_geometry() {
        let g = parse_geometry(G1).unwrap();
        assert_eq!(g.incidences().len(), 1);
        assert_eq!(g, fixtures::g1());
    }

    #[test]
    fn example_geometry_document() {
        let g = parse_geometry(fixtures::NF7_JSON).unwrap();
        assert_eq!(
            (g.points().len(), g.hyperplanes().len(), g.incidences().len()),
            (7, 6, 18)
        );
    }

    #[test]
    fn rejects_bad_documents() {
        let dangling = r#"{"d": 2, "points": ["p0"], "hyperplanes": ["h0"], "incidences": [["p9", "h0"]]}"#;
        assert!(matches!(parse_geometry(dangling), Err(Error::DanglingReference { .. })));
        let unknown = r#"{"d": 2, "points": [], "hyperplanes": [], "incidences": [], "extra": 1}"#;
        assert!(matches!(parse_geometry(unknown), Err(Error::Syntax(_))));
        let zero_d = r#"{"d": 0, "points": [], "hyperplanes": [], "incidences": []}"#;
        assert!(matches!(parse_geometry(zero_d), Err(Error::InvalidDimension(0))));
        let float = r#"{"d": 1, "points": ["p"], "hyperplanes": ["h"], "incidences": [], "normals": {"h": [0.5]}}"#;
        assert!(matches!(parse_geometry(float), Err(Error::Syntax(_))));
        let float_str =
            r#"{"d": 1, "points": ["p"], "hyperplanes": ["h"], "incidences": [], "normals": {"h": ["0.5"]}}"#;
        assert!(matches!(parse_geometry(float_str), Err(Error::InvalidRational(_))));
        assert!(matches!(parse_geometry("{"), Err(Error::Syntax(_))));
    }

    #[test]
    fn round_trips_with_attachments() {
        let text = fixtures::NF7_JSON;
        let doc = parse_document(text).unwrap();
        assert!(doc.coordinates.is_some());
        let again = parse_document(&serialize_document(&doc)).unwrap();
        assert_eq!(again, doc);
        let c = doc.coordinates.unwrap();
        assert_eq!(c.get("p3").unwrap(), &vec![integer(1), rational(2, 3)]);
    }

    #[test]
    fn normals_document() {
        let g = fixtures::nf7();
        let n = fixtures::medial_normals();
        let back = parse_normals(&serialize_normals(&g, &n)).unwrap();
        assert_eq!(back, n);
        assert!(parse_normals(r#"{"normals": {}, "d": 2}"#).is_err());
    }
}
