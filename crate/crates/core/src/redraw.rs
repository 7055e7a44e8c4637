//! Redrawings at concrete normals and the analysis of overconstrained
//! geometries.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::{Rational, RationalMatrix};
use crate::exec::Execution;
use crate::geometry::{IncidenceGeometry, NormalAssignment, PointConfiguration, Realization};
use crate::matroid;
use crate::purecond::{build_from_vectors, pin, random_normals, trial_rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Trivial,
    Improper,
    Proper,
}

#[derive(Clone, Debug)]
pub struct Redrawing {
    pub realization: Realization,
    pub classification: Classification,
}

#[derive(Clone, Debug)]
pub struct RedrawingReport {
    pub pinned: String,
    pub kernel_dimension: usize,
    pub redrawings: Vec<Redrawing>,
}

/// Reads a kernel vector of the redrawing matrix as coordinates and offsets.
pub fn realization_from_vector(g: &IncidenceGeometry, v: &[Rational]) -> Realization {
    let d = g.dimension();
    let h_count = g.hyperplanes().len();
    let mut coords = PointConfiguration::new();
    for (p, label) in g.points().iter().enumerate() {
        let start = h_count + p * d;
        coords.insert(label.clone(), v[start..start + d].to_vec());
    }
    let offsets = g
        .hyperplanes()
        .iter()
        .enumerate()
        .map(|(h, label)| (label.clone(), v[h].clone()))
        .collect();
    Realization { coords, offsets }
}

fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    // all 2x2 minors of the pair vanish
    (0..a.len()).all(|i| (i + 1..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

/// Trivial when all points coincide; proper when points are pairwise distinct
/// and no two hyperplanes have proportional `(normal, offset)` pairs.
pub fn classify_realization(
    g: &IncidenceGeometry,
    normals: &NormalAssignment,
    r: &Realization,
) -> Result<Classification> {
    r.check(g, normals)?;
    let x = r.coords.vectors(g)?;
    if x.windows(2).all(|w| w[0] == w[1]) {
        return Ok(Classification::Trivial);
    }
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            if x[i] == x[j] {
                return Ok(Classification::Improper);
            }
        }
    }
    let pairs: Vec<Vec<Rational>> = normals
        .vectors(g)?
        .into_iter()
        .zip(g.hyperplanes())
        .map(|(mut n, label)| {
            n.push(r.offsets[label].clone());
            n
        })
        .collect();
    for i in 0..pairs.len() {
        for j in i + 1..pairs.len() {
            if proportional(&pairs[i], &pairs[j]) {
                return Ok(Classification::Improper);
            }
        }
    }
    Ok(Classification::Proper)
}

fn pinned_matrix(g: &IncidenceGeometry, normals: &[Vec<Rational>], point: &str) -> Result<RationalMatrix> {
    Ok(pin(g, build_from_vectors(g, normals), point)?.matrix)
}

/// Kernel of the pinned redrawing matrix, one realization per basis vector.
pub fn redrawing_space(g: &IncidenceGeometry, normals: &NormalAssignment, point: &str) -> Result<RedrawingReport> {
    let vectors = normals.vectors(g)?;
    let kernel = pinned_matrix(g, &vectors, point)?.kernel_basis();
    let redrawings = kernel
        .iter()
        .map(|v| {
            let realization = realization_from_vector(g, v);
            let classification = classify_realization(g, normals, &realization)?;
            Ok(Redrawing {
                realization,
                classification,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RedrawingReport {
        pinned: point.to_string(),
        kernel_dimension: kernel.len(),
        redrawings,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorTrial {
    pub trial: usize,
    pub nonzero: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinorCensus {
    pub total: usize,
    pub nonzero_at_normals: usize,
    pub seed: u64,
    pub random: Vec<MinorTrial>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OverconstrainedReport {
    pub pinned: String,
    pub pinned_rank: usize,
    pub full_column_rank: usize,
    pub feasible: bool,
    /// Rank of the unpinned matrix at random normals over a prime field.
    pub generic_rank: usize,
    pub minors: Option<MinorCensus>,
}

#[derive(Clone, Debug)]
pub struct OverconstrainedOptions {
    pub with_minors: bool,
    pub seed: u64,
    pub trials: usize,
    pub exec: Execution,
}

impl Default for OverconstrainedOptions {
    fn default() -> Self {
        OverconstrainedOptions {
            with_minors: false,
            seed: 0,
            trials: 1,
            exec: Execution::default(),
        }
    }
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut c: Vec<usize> = (0..k).collect();
    loop {
        out.push(c.clone());
        let Some(i) = (0..k).rev().find(|&i| c[i] != i + n - k) else {
            return out;
        };
        c[i] += 1;
        for j in i + 1..k {
            c[j] = c[j - 1] + 1;
        }
    }
}

/// Number of nonzero maximal minors, the minors taken over row subsets.
pub fn nonzero_maximal_minors(m: &RationalMatrix, subsets: &[Vec<usize>], exec: Execution) -> usize {
    exec.map(subsets, |rows| {
        !m.select_rows(rows).determinant().expect("square selection").is_zero()
    })
    .into_iter()
    .filter(|&nz| nz)
    .count()
}

pub fn overconstrained_report(
    g: &IncidenceGeometry,
    normals: &NormalAssignment,
    point: &str,
    opts: &OverconstrainedOptions,
) -> Result<OverconstrainedReport> {
    let bound = g.basis_size();
    if g.incidences().len() <= bound {
        return Err(Error::NotOverconstrained {
            incidences: g.incidences().len(),
            bound,
        });
    }
    let vectors = normals.vectors(g)?;
    let m = pinned_matrix(g, &vectors, point)?;
    let pinned_rank = m.rank();
    let full_column_rank = g.column_count();
    let generic_rank = matroid::generic_rank(g, opts.seed, 3, crate::exactalg::DEFAULT_PRIME)?;
    let minors = opts.with_minors.then(|| {
        let subsets = combinations(m.nrows(), m.ncols());
        let nonzero_at_normals = nonzero_maximal_minors(&m, &subsets, opts.exec);
        let random = (0..opts.trials)
            .map(|t| {
                let s = random_normals(g, &mut trial_rng(opts.seed, t));
                let mr = pinned_matrix(g, &s, point).expect("point validated above");
                MinorTrial {
                    trial: t,
                    nonzero: nonzero_maximal_minors(&mr, &subsets, opts.exec),
                }
            })
            .collect();
        MinorCensus {
            total: subsets.len(),
            nonzero_at_normals,
            seed: opts.seed,
            random,
        }
    });
    Ok(OverconstrainedReport {
        pinned: point.to_string(),
        pinned_rank,
        full_column_rank,
        feasible: pinned_rank < full_column_rank,
        generic_rank,
        minors,
    })
}

/// Rank of the pinned matrix at the given normals.
pub fn pinned_rank(g: &IncidenceGeometry, normals: &[Vec<Rational>], point: &str) -> Result<usize> {
    Ok(pinned_matrix(g, normals, point)?.rank())
}

/// Moves `origin` to zero and rescales so that `unit` has first coordinate
/// 1, for comparing realizations up to translation and scale. `None` when
/// `unit` and `origin` share their first coordinate.
pub fn normalize_configuration(
    g: &IncidenceGeometry,
    coords: &PointConfiguration,
    origin: &str,
    unit: &str,
) -> Result<Option<BTreeMap<String, Vec<Rational>>>> {
    let x = coords.vectors(g)?;
    let o = &x[g.point_index(origin)?];
    let u = &x[g.point_index(unit)?];
    let scale = &u[0] - &o[0];
    if scale.is_zero() {
        return Ok(None);
    }
    Ok(Some(
        g.points()
            .iter()
            .zip(&x)
            .map(|(label, v)| {
                let w = v.iter().zip(o).map(|(a, b)| (a - b) / &scale).collect();
                (label.clone(), w)
            })
            .collect(),
    ))
}
