//! The parallel-redrawing matrix and the pure condition of a basis.
//!
//! Columns are ordered as one offset column `y_h` per hyperplane followed by
//! `d` coordinate columns per point. The row of incidence `(p, h)` is
//! `y_h + <n(h), x(p)>`. Symbolic normals use one variable per entry, with
//! index `h * d + (k - 1)` for the `k`-th entry of hyperplane `h`.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactalg::rational::random_small_rational;
use crate::exactalg::{
    det_polynomial_with, format_rational, random_unimodular, DetStrategy, Matrix, Polynomial, Rational, RationalMatrix,
};
use crate::exec::Execution;
use crate::geometry::{Incidence, IncidenceGeometry, NormalAssignment};
use crate::matroid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RowLabel {
    Incidence(Incidence),
    /// Pin row fixing coordinate `k` (1-based) of a point.
    Pin {
        point: usize,
        k: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ColumnLabel {
    Offset(usize),
    Coordinate { point: usize, k: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RedrawMatrix<T> {
    pub matrix: Matrix<T>,
    pub rows: Vec<RowLabel>,
    pub columns: Vec<ColumnLabel>,
    pub pinned: Option<usize>,
}

pub fn column_labels(g: &IncidenceGeometry) -> Vec<ColumnLabel> {
    let d = g.dimension();
    (0..g.hyperplanes().len())
        .map(ColumnLabel::Offset)
        .chain((0..g.points().len()).flat_map(|p| (1..=d).map(move |k| ColumnLabel::Coordinate { point: p, k })))
        .collect()
}

/// Index of coordinate column `k` (1-based) of point `p`.
pub fn coordinate_column(g: &IncidenceGeometry, p: usize, k: usize) -> usize {
    g.hyperplanes().len() + p * g.dimension() + k - 1
}

/// Index of the variable standing for entry `k` (1-based) of the normal of `h`.
pub fn variable(d: usize, h: usize, k: usize) -> u32 {
    (h * d + k - 1) as u32
}

/// `f_{h}`/`g_{h}` in the plane, `n_{h,k}` otherwise.
pub fn variable_name(hyperplanes: &[String], d: usize, v: u32) -> String {
    let v = v as usize;
    let (h, k) = (v / d, v % d + 1);
    let label = hyperplanes.get(h).map_or_else(|| format!("#{h}"), Clone::clone);
    if d == 2 {
        format!("{}_{{{label}}}", if k == 1 { "f" } else { "g" })
    } else {
        format!("n_{{{label},{k}}}")
    }
}

fn build_with<T: Clone + Zero + One>(g: &IncidenceGeometry, entry: impl Fn(usize, usize) -> T) -> RedrawMatrix<T> {
    let d = g.dimension();
    let mut m = Matrix::zeros(g.incidences().len(), g.column_count());
    for (r, inc) in g.incidences().iter().enumerate() {
        m[(r, inc.hyperplane)] = T::one();
        for k in 1..=d {
            m[(r, coordinate_column(g, inc.point, k))] = entry(inc.hyperplane, k);
        }
    }
    RedrawMatrix {
        matrix: m,
        rows: g.incidences().iter().map(|&i| RowLabel::Incidence(i)).collect(),
        columns: column_labels(g),
        pinned: None,
    }
}

/// Redrawing matrix with the normals as variables.
pub fn build_symbolic(g: &IncidenceGeometry) -> RedrawMatrix<Polynomial> {
    let d = g.dimension();
    build_with(g, |h, k| Polynomial::var(variable(d, h, k)))
}

/// Redrawing matrix at concrete normals.
pub fn build_numeric(g: &IncidenceGeometry, normals: &NormalAssignment) -> Result<RedrawMatrix<Rational>> {
    let vectors = normals.vectors(g)?;
    Ok(build_from_vectors(g, &vectors))
}

/// Like [`build_numeric`], for normals already listed in hyperplane order.
pub fn build_from_vectors(g: &IncidenceGeometry, normals: &[Vec<Rational>]) -> RedrawMatrix<Rational> {
    build_with(g, |h, k| normals[h][k - 1].clone())
}

pub fn pin<T: Clone + Zero + One>(
    g: &IncidenceGeometry,
    mut m: RedrawMatrix<T>,
    point: &str,
) -> Result<RedrawMatrix<T>> {
    let p = g.point_index(point)?;
    if let Some(q) = m.pinned {
        return Err(Error::AlreadyPinned(g.points()[q].clone()));
    }
    for k in 1..=g.dimension() {
        let mut row = vec![T::zero(); m.matrix.ncols()];
        row[coordinate_column(g, p, k)] = T::one();
        m.matrix.push_row(row);
        m.rows.push(RowLabel::Pin { point: p, k });
    }
    m.pinned = Some(p);
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureCondition {
    pub polynomial: Polynomial,
    pub fingerprint: String,
    pub d: usize,
    pub hyperplanes: Vec<String>,
    pub pinned: String,
    /// The raw determinant equals `scalar * polynomial`.
    pub scalar: Rational,
}

impl PureCondition {
    pub fn variable_name(&self, v: u32) -> String {
        variable_name(&self.hyperplanes, self.d, v)
    }

    pub fn render(&self) -> String {
        let names = |v| self.variable_name(v);
        self.polynomial.display_with(&names).to_string()
    }

    /// Values of the variables, in variable order.
    pub fn values(&self, g: &IncidenceGeometry, normals: &NormalAssignment) -> Result<Vec<Rational>> {
        Ok(normals.vectors(g)?.into_iter().flatten().collect())
    }
}

#[derive(Clone, Debug, Default)]
pub struct PureOptions {
    pub pin: Option<String>,
    pub strategy: DetStrategy,
    pub exec: Execution,
}

fn require_basis(g: &IncidenceGeometry) -> Result<()> {
    let report = matroid::is_independent(g);
    if report.basis {
        Ok(())
    } else {
        Err(Error::NotBasis(Box::new(report)))
    }
}

/// Determinant of the symbolic redrawing matrix pinned at `point`, without
/// the basis check.
pub fn pinned_determinant(
    g: &IncidenceGeometry,
    point: &str,
    strategy: DetStrategy,
    exec: Execution,
) -> Result<Polynomial> {
    let m = pin(g, build_symbolic(g), point)?;
    det_polynomial_with(&m.matrix, strategy, exec)
}

pub fn pure_condition(g: &IncidenceGeometry) -> Result<PureCondition> {
    pure_condition_with(g, &PureOptions::default())
}

pub fn pure_condition_with(g: &IncidenceGeometry, opts: &PureOptions) -> Result<PureCondition> {
    require_basis(g)?;
    let pinned = match &opts.pin {
        Some(p) => p.clone(),
        None => g
            .points()
            .first()
            .cloned()
            .ok_or_else(|| Error::UnknownPoint(String::new()))?,
    };
    let raw = pinned_determinant(g, &pinned, opts.strategy, opts.exec)?;
    let (polynomial, scalar) = raw.canonicalize()?;
    debug_assert_eq!(
        polynomial.total_degree(),
        Some((g.dimension() * (g.points().len() - 1)) as u32)
    );
    Ok(PureCondition {
        polynomial,
        fingerprint: g.fingerprint(),
        d: g.dimension(),
        hyperplanes: g.hyperplanes().to_vec(),
        pinned,
        scalar,
    })
}

pub fn evaluate(pc: &PureCondition, g: &IncidenceGeometry, normals: &NormalAssignment) -> Result<Rational> {
    Ok(pc.polynomial.evaluate(&pc.values(g, normals)?))
}

/// Checks that every monomial has degree `|P| - 1` in the `k`-th normal
/// entries for each `k`, and degree `m_h - 1` in the entries of hyperplane `h`
/// when `h` carries `m_h` incidences. Each term of the determinant takes one
/// entry from every unpinned coordinate column and one from every incidence
/// row not used by an offset column, which forces this profile.
pub fn has_column_profile(pc: &PureCondition, g: &IncidenceGeometry) -> bool {
    let d = g.dimension();
    let per_hyperplane: Vec<u32> = (0..g.hyperplanes().len())
        .map(|h| g.points_on(h).len() as u32 - 1)
        .collect();
    let per_coordinate = g.points().len() as u32 - 1;
    pc.polynomial.terms().all(|(m, _)| {
        let mut by_h = vec![0u32; per_hyperplane.len()];
        let mut by_k = vec![0u32; d];
        for &(v, e) in m.pairs() {
            by_h[v as usize / d] += e;
            by_k[v as usize % d] += e;
        }
        by_h == per_hyperplane && by_k.iter().all(|&k| k == per_coordinate)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PinInvariance {
    pub consistent: bool,
    /// `(point, lambda)` with `det at point = lambda * det at the first point`.
    pub scalars: Vec<(String, String)>,
    pub canonical: String,
}

pub fn pin_invariance_check(g: &IncidenceGeometry, exec: Execution) -> Result<PinInvariance> {
    require_basis(g)?;
    let dets: Vec<Result<Polynomial>> = exec.map(g.points(), |p| {
        pinned_determinant(g, p, DetStrategy::Auto, Execution::Sequential)
    });
    let mut forms = Vec::with_capacity(dets.len());
    for det in dets {
        forms.push(det?.canonicalize()?);
    }
    let (reference, base) = forms[0].clone();
    let consistent = forms.iter().all(|(p, _)| *p == reference);
    let scalars = g
        .points()
        .iter()
        .zip(&forms)
        .map(|(label, (_, c))| (label.clone(), format_rational(&(c / &base))))
        .collect();
    let names = |v| variable_name(g.hyperplanes(), g.dimension(), v);
    Ok(PinInvariance {
        consistent,
        scalars,
        canonical: reference.display_with(&names).to_string(),
    })
}

/// Random nonzero normals with small rational entries.
pub fn random_normals(g: &IncidenceGeometry, rng: &mut impl Rng) -> Vec<Vec<Rational>> {
    (0..g.hyperplanes().len())
        .map(|_| loop {
            let v: Vec<Rational> = (0..g.dimension()).map(|_| random_small_rational(rng)).collect();
            if v.iter().any(|x| !x.is_zero()) {
                break v;
            }
        })
        .collect()
}

/// Generator for trial `t` of a seeded experiment; independent of the order
/// in which trials run.
pub fn trial_rng(seed: u64, t: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(t as u64);
    rng
}

fn pinned_numeric(g: &IncidenceGeometry, normals: &[Vec<Rational>], p: usize) -> RationalMatrix {
    let m = build_from_vectors(g, normals);
    pin(g, m, &g.points()[p]).expect("fresh matrix").matrix
}

/// Kernel of the redrawing matrix at `normals` pinned at point `p`; nonempty
/// exactly when a nontrivial redrawing exists.
pub fn pinned_kernel(g: &IncidenceGeometry, normals: &[Vec<Rational>], p: usize) -> Vec<Vec<Rational>> {
    pinned_numeric(g, normals, p).kernel_basis()
}

fn apply(a: &Matrix<num_bigint::BigInt>, normals: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    normals
        .iter()
        .map(|n| {
            (0..a.nrows())
                .map(|i| (0..a.ncols()).fold(Rational::zero(), |s, j| s + Rational::from(a[(i, j)].clone()) * &n[j]))
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SlInvariance {
    pub trials: usize,
    pub seed: u64,
    pub determinant_mismatches: Vec<usize>,
    pub kernel_mismatches: Vec<usize>,
}

impl SlInvariance {
    pub fn passed(&self) -> bool {
        self.determinant_mismatches.is_empty() && self.kernel_mismatches.is_empty()
    }
}

pub fn sl_invariance_check(g: &IncidenceGeometry, trials: usize, seed: u64, exec: Execution) -> Result<SlInvariance> {
    require_basis(g)?;
    let d = g.dimension();
    let outcomes = exec.map_range(0..trials, |t| {
        let mut rng = trial_rng(seed, t);
        let s = random_normals(g, &mut rng);
        let a = random_unimodular(d, rng.random());
        let as_ = apply(&a, &s);
        let det_s = pinned_numeric(g, &s, 0).determinant().expect("square");
        let det_as = pinned_numeric(g, &as_, 0).determinant().expect("square");
        let kernel_s = build_from_vectors(g, &s).matrix.kernel_basis().len();
        let kernel_as = build_from_vectors(g, &as_).matrix.kernel_basis().len();
        (det_s == det_as, kernel_s == kernel_as)
    });
    let pick = |f: fn(&(bool, bool)) -> bool| -> Vec<usize> {
        outcomes
            .iter()
            .enumerate()
            .filter(|(_, o)| !f(o))
            .map(|(t, _)| t)
            .collect()
    };
    Ok(SlInvariance {
        trials,
        seed,
        determinant_mismatches: pick(|o| o.0),
        kernel_mismatches: pick(|o| o.1),
    })
}

/// Ranks of the pinned matrix at `normals` for every choice of pinned point.
pub fn pinned_ranks(g: &IncidenceGeometry, normals: &[Vec<Rational>]) -> Vec<usize> {
    (0..g.points().len())
        .map(|p| pinned_numeric(g, normals, p).rank())
        .collect()
}
