//! Incidence geometries, normal assignments, point configurations and
//! realizations.
//!
//! Labels are opaque strings. Internally points and hyperplanes are indexed in
//! input order, which fixes the column order of every matrix built downstream.

mod document;

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use document::{
    parse_document, parse_geometry, parse_normals, serialize_document, serialize_geometry, serialize_normals,
    GeometryDocument,
};

use crate::error::{Error, Result};
use crate::exactalg::{Matrix, Rational};

/// A point-hyperplane pair, by index into the geometry's label lists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Incidence {
    pub point: usize,
    pub hyperplane: usize,
}

#[derive(Clone, Debug)]
pub struct IncidenceGeometry {
    d: usize,
    points: Vec<String>,
    hyperplanes: Vec<String>,
    incidences: Vec<Incidence>,
    point_index: HashMap<String, usize>,
    hyperplane_index: HashMap<String, usize>,
}

impl PartialEq for IncidenceGeometry {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d
            && self.points == other.points
            && self.hyperplanes == other.hyperplanes
            && self.incidences == other.incidences
    }
}

impl Eq for IncidenceGeometry {}

fn index_labels(kind: &'static str, labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateLabel { kind, label: l.clone() });
        }
    }
    Ok(index)
}

impl IncidenceGeometry {
    pub fn new<P, H, S, T>(
        d: usize,
        points: impl IntoIterator<Item = P>,
        hyperplanes: impl IntoIterator<Item = H>,
        incidences: impl IntoIterator<Item = (S, T)>,
    ) -> Result<Self>
    where
        P: Into<String>,
        H: Into<String>,
        S: AsRef<str>,
        T: AsRef<str>,
    {
        if d < 1 {
            return Err(Error::InvalidDimension(d));
        }
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        let hyperplanes: Vec<String> = hyperplanes.into_iter().map(Into::into).collect();
        let point_index = index_labels("point", &points)?;
        let hyperplane_index = index_labels("hyperplane", &hyperplanes)?;
        let mut seen = HashSet::new();
        let mut resolved = Vec::new();
        for (p, h) in incidences {
            let (p, h) = (p.as_ref(), h.as_ref());
            let dangling = |missing| Error::DanglingReference {
                point: p.to_string(),
                hyperplane: h.to_string(),
                missing,
            };
            let point = *point_index.get(p).ok_or_else(|| dangling("point"))?;
            let hyperplane = *hyperplane_index.get(h).ok_or_else(|| dangling("hyperplane"))?;
            let inc = Incidence { point, hyperplane };
            if !seen.insert(inc) {
                return Err(Error::DuplicateIncidence {
                    point: p.to_string(),
                    hyperplane: h.to_string(),
                });
            }
            resolved.push(inc);
        }
        Ok(IncidenceGeometry {
            d,
            points,
            hyperplanes,
            incidences: resolved,
            point_index,
            hyperplane_index,
        })
    }

    /// Builds a geometry from hyperplanes given as lists of incident points.
    /// Incidences are ordered hyperplane by hyperplane.
    pub fn from_lines<P: AsRef<str>>(d: usize, points: &[P], lines: &[(&str, &[&str])]) -> Result<Self> {
        let incidences: Vec<(&str, &str)> = lines
            .iter()
            .flat_map(|(h, ps)| ps.iter().map(move |p| (*p, *h)))
            .collect();
        Self::new(
            d,
            points.iter().map(|p| p.as_ref().to_string()),
            lines.iter().map(|(h, _)| h.to_string()),
            incidences,
        )
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn hyperplanes(&self) -> &[String] {
        &self.hyperplanes
    }

    pub fn incidences(&self) -> &[Incidence] {
        &self.incidences
    }

    pub fn point_index(&self, label: &str) -> Result<usize> {
        self.point_index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    pub fn hyperplane_index(&self, label: &str) -> Result<usize> {
        self.hyperplane_index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownHyperplane(label.to_string()))
    }

    pub fn incidence_labels(&self, inc: Incidence) -> (&str, &str) {
        (&self.points[inc.point], &self.hyperplanes[inc.hyperplane])
    }

    pub fn find_incidence(&self, point: &str, hyperplane: &str) -> Result<Incidence> {
        let inc = Incidence {
            point: self.point_index(point)?,
            hyperplane: self.hyperplane_index(hyperplane)?,
        };
        if self.incidences.contains(&inc) {
            Ok(inc)
        } else {
            Err(Error::IncidenceNotInGeometry {
                point: point.to_string(),
                hyperplane: hyperplane.to_string(),
            })
        }
    }

    /// `|H| + d|P| - d`, the size of a basis of the d-plane matroid.
    pub fn basis_size(&self) -> usize {
        (self.hyperplanes.len() + self.d * self.points.len()).saturating_sub(self.d)
    }

    /// Number of columns of the redrawing matrix, `|H| + d|P|`.
    pub fn column_count(&self) -> usize {
        self.hyperplanes.len() + self.d * self.points.len()
    }

    /// Incident points of each hyperplane, in incidence order.
    pub fn points_on(&self, hyperplane: usize) -> Vec<usize> {
        self.incidences
            .iter()
            .filter(|i| i.hyperplane == hyperplane)
            .map(|i| i.point)
            .collect()
    }

    /// The same geometry restricted to a subset of its incidences, keeping all
    /// labels.
    pub fn with_incidences(&self, incidences: Vec<Incidence>) -> Self {
        IncidenceGeometry {
            incidences,
            ..self.clone()
        }
    }

    /// Hex SHA-256 of the canonical document of this geometry.
    pub fn fingerprint(&self) -> String {
        use sha2::{Digest, Sha256};
        let digest = Sha256::digest(serialize_geometry(self).as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// `(|I''|, |P(I'')|, |H(I'')|)` for a subset of the incidences.
pub fn induced_counts(g: &IncidenceGeometry, subset: &[Incidence]) -> Result<(usize, usize, usize)> {
    let all: HashSet<&Incidence> = g.incidences.iter().collect();
    for inc in subset {
        if !all.contains(inc) {
            let point = g.points.get(inc.point).cloned().unwrap_or_default();
            let hyperplane = g.hyperplanes.get(inc.hyperplane).cloned().unwrap_or_default();
            return Err(Error::IncidenceNotInGeometry { point, hyperplane });
        }
    }
    let distinct: HashSet<&Incidence> = subset.iter().collect();
    let points: HashSet<usize> = subset.iter().map(|i| i.point).collect();
    let hyperplanes: HashSet<usize> = subset.iter().map(|i| i.hyperplane).collect();
    Ok((distinct.len(), points.len(), hyperplanes.len()))
}

/// Normal vector per hyperplane label.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalAssignment {
    pub entries: BTreeMap<String, Vec<Rational>>,
}

impl NormalAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, label: impl Into<String>, normal: Vec<Rational>) {
        self.entries.insert(label.into(), normal);
    }

    pub fn get(&self, label: &str) -> Option<&Vec<Rational>> {
        self.entries.get(label)
    }

    /// Normals in the geometry's hyperplane order, validated for coverage,
    /// arity and nonzeroness.
    pub fn vectors(&self, g: &IncidenceGeometry) -> Result<Vec<Vec<Rational>>> {
        g.hyperplanes
            .iter()
            .map(|h| {
                let v = self.entries.get(h).ok_or_else(|| Error::MissingNormal(h.clone()))?;
                if v.len() != g.d {
                    return Err(Error::WrongArity {
                        what: "normal of",
                        label: h.clone(),
                        expected: g.d,
                        found: v.len(),
                    });
                }
                if v.iter().all(Zero::is_zero) {
                    return Err(Error::ZeroNormal(h.clone()));
                }
                Ok(v.clone())
            })
            .collect()
    }

    pub fn from_vectors(g: &IncidenceGeometry, vectors: Vec<Vec<Rational>>) -> Self {
        NormalAssignment {
            entries: g.hyperplanes.iter().cloned().zip(vectors).collect(),
        }
    }

    /// Applies `A` to every normal.
    pub fn transformed(&self, a: &Matrix<BigInt>) -> Self {
        NormalAssignment {
            entries: self
                .entries
                .iter()
                .map(|(h, v)| {
                    let w = (0..a.nrows())
                        .map(|i| {
                            v.iter()
                                .enumerate()
                                .map(|(k, x)| x * Rational::from_integer(a[(i, k)].clone()))
                                .fold(Rational::zero(), |s, t| s + t)
                        })
                        .collect();
                    (h.clone(), w)
                })
                .collect(),
        }
    }
}

/// Coordinates per point label.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointConfiguration {
    pub coords: BTreeMap<String, Vec<Rational>>,
}

impl PointConfiguration {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, label: impl Into<String>, coords: Vec<Rational>) {
        self.coords.insert(label.into(), coords);
    }

    pub fn get(&self, label: &str) -> Option<&Vec<Rational>> {
        self.coords.get(label)
    }

    pub fn vectors(&self, g: &IncidenceGeometry) -> Result<Vec<Vec<Rational>>> {
        g.points
            .iter()
            .map(|p| {
                let v = self.coords.get(p).ok_or_else(|| Error::MissingCoordinate(p.clone()))?;
                if v.len() != g.d {
                    return Err(Error::WrongArity {
                        what: "coordinates of",
                        label: p.clone(),
                        expected: g.d,
                        found: v.len(),
                    });
                }
                Ok(v.clone())
            })
            .collect()
    }
}

/// Point coordinates together with hyperplane offsets, so that
/// `n(h) . x(p) + offset(h) = 0` for every incidence.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Realization {
    pub coords: PointConfiguration,
    pub offsets: BTreeMap<String, Rational>,
}

impl Realization {
    /// Checks the incidence equation exactly for every incidence.
    pub fn check(&self, g: &IncidenceGeometry, normals: &NormalAssignment) -> Result<()> {
        let n = normals.vectors(g)?;
        let x = self.coords.vectors(g)?;
        for inc in g.incidences() {
            let (p, h) = g.incidence_labels(*inc);
            let offset = self.offsets.get(h).ok_or_else(|| Error::MissingNormal(h.to_string()))?;
            let value = dot(&n[inc.hyperplane], &x[inc.point]) + offset;
            if !value.is_zero() {
                return Err(Error::IncidenceViolated {
                    point: p.to_string(),
                    hyperplane: h.to_string(),
                });
            }
        }
        Ok(())
    }
}

pub(crate) fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).fold(Rational::zero(), |s, t| s + t)
}

/// Scales `v` to a primitive integer vector whose first nonzero entry is
/// positive; returns the scaled vector and the factor applied.
pub(crate) fn primitive_integer(v: &[Rational]) -> (Vec<Rational>, Rational) {
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if gcd.is_zero() {
        return (v.to_vec(), Rational::one());
    }
    let mut factor = Rational::new(lcm, gcd);
    if ints.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_negative) {
        factor = -factor;
    }
    (v.iter().map(|x| x * &factor).collect(), factor)
}

/// Derives the normal and offset of every hyperplane from coordinates of its
/// incident points. Normals are primitive integer vectors with positive first
/// nonzero entry.
pub fn normals_from_points(
    g: &IncidenceGeometry,
    coords: &PointConfiguration,
) -> Result<(NormalAssignment, Realization)> {
    let x = coords.vectors(g)?;
    let d = g.d;
    let mut normals = NormalAssignment::new();
    let mut offsets = BTreeMap::new();
    for (h, label) in g.hyperplanes.iter().enumerate() {
        let on = g.points_on(h);
        // rows (x(p), 1): the kernel holds (n, offset)
        let rows: Vec<Vec<Rational>> = on
            .iter()
            .map(|&p| {
                let mut r = x[p].clone();
                r.push(Rational::one());
                r
            })
            .collect();
        if rows.is_empty() {
            return Err(Error::Underdetermined(label.clone()));
        }
        let kernel = Matrix::from_rows(rows).kernel_basis();
        if kernel.len() > 1 {
            return Err(Error::Underdetermined(label.clone()));
        }
        if kernel.is_empty() {
            return Err(Error::NotCollinear(label.clone()));
        }
        let v = &kernel[0];
        let (n, factor) = primitive_integer(&v[..d]);
        normals.insert(label.clone(), n);
        offsets.insert(label.clone(), &v[d] * factor);
    }
    let realization = Realization {
        coords: coords.clone(),
        offsets,
    };
    realization.check(g, &normals)?;
    Ok((normals, realization))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{integer, rational};
    use crate::fixtures;

    fn inc(g: &IncidenceGeometry, p: &str, h: &str) -> Incidence {
        g.find_incidence(p, h).unwrap()
    }

    #[test]
    fn rejects_invalid_geometries() {
        assert!(matches!(
            IncidenceGeometry::new(2, ["p0"], ["h0"], [("p9", "h0")]),
            Err(Error::DanglingReference { missing: "point", .. })
        ));
        assert!(matches!(
            IncidenceGeometry::new(2, ["p0", "p0"], ["h0"], Vec::<(&str, &str)>::new()),
            Err(Error::DuplicateLabel { kind: "point", .. })
        ));
        assert!(matches!(
            IncidenceGeometry::new(2, ["p0"], ["h0"], [("p0", "h0"), ("p0", "h0")]),
            Err(Error::DuplicateIncidence { .. })
        ));
        assert!(matches!(
            IncidenceGeometry::new(0, ["p0"], ["h0"], [("p0", "h0")]),
            Err(Error::InvalidDimension(0))
        ));
    }

    #[test]
    fn counts_of_example_geometry() {
        let g = fixtures::nf7();
        assert_eq!(induced_counts(&g, g.incidences()).unwrap(), (18, 7, 6));
        assert_eq!(induced_counts(&g, &[]).unwrap(), (0, 0, 0));
        let h0 = [inc(&g, "p0", "h0"), inc(&g, "p1", "h0"), inc(&g, "p2", "h0")];
        assert_eq!(induced_counts(&g, &h0).unwrap(), (3, 3, 1));
        let foreign = Incidence {
            point: 3,
            hyperplane: 0,
        };
        assert!(induced_counts(&g, &[foreign]).is_err());
    }

    #[test]
    fn medial_triangle_normals() {
        let g = fixtures::nf7();
        let (normals, real) = normals_from_points(&g, &fixtures::medial_coordinates()).unwrap();
        let expected = [(2, 1), (1, 0), (2, -1), (2, -3), (2, 3), (0, 1)];
        let offsets = [-4, -1, 0, 0, -4, 0];
        for (i, ((a, b), o)) in expected.iter().zip(offsets).enumerate() {
            let h = format!("h{i}");
            assert_eq!(normals.get(&h).unwrap(), &vec![integer(*a), integer(*b)], "{h}");
            assert_eq!(real.offsets[&h], integer(o), "{h}");
        }
        real.check(&g, &normals).unwrap();
    }

    #[test]
    fn x_axis_normal() {
        let g = IncidenceGeometry::new(2, ["a", "b"], ["l"], [("a", "l"), ("b", "l")]).unwrap();
        let mut c = PointConfiguration::new();
        c.insert("a", vec![integer(0), integer(0)]);
        c.insert("b", vec![integer(1), integer(0)]);
        let (n, r) = normals_from_points(&g, &c).unwrap();
        assert_eq!(n.get("l").unwrap(), &vec![integer(0), integer(1)]);
        assert_eq!(r.offsets["l"], integer(0));
    }

    #[test]
    fn perturbed_centroid_is_not_collinear() {
        let g = fixtures::nf7();
        let mut c = fixtures::medial_coordinates();
        c.insert("p3", vec![integer(1), integer(1)]);
        match normals_from_points(&g, &c) {
            Err(Error::NotCollinear(h)) => assert_eq!(h, "h3"),
            other => panic!("expected non-collinearity, got {other:?}"),
        }
    }

    #[test]
    fn coincident_points_leave_normal_underdetermined() {
        let g = IncidenceGeometry::new(2, ["a", "b"], ["l"], [("a", "l"), ("b", "l")]).unwrap();
        let mut c = PointConfiguration::new();
        c.insert("a", vec![rational(1, 2), integer(3)]);
        c.insert("b", vec![rational(1, 2), integer(3)]);
        assert!(matches!(normals_from_points(&g, &c), Err(Error::Underdetermined(_))));
    }

    #[test]
    fn primitive_scaling() {
        let (v, f) = primitive_integer(&[rational(-1, 2), rational(3, 4)]);
        assert_eq!(v, vec![integer(2), integer(-3)]);
        assert_eq!(f, integer(-4));
    }
}
