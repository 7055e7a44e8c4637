//! The d-plane matroid on the incidences of a geometry.
//!
//! A set of incidences `I'` is independent when every nonempty subset `I''`
//! satisfies `|I''| <= |H(I'')| + d|P(I'')| - d`. Two procedures decide it:
//!
//! * deterministic: the count is tightest on "closed" sets, i.e. all
//!   incidences between a point subset `P'` and a hyperplane subset `H'`, and
//!   for a fixed `P'` the best `H'` keeps exactly the hyperplanes meeting `P'`
//!   at least twice. So `2^|P|` point subsets suffice. Tiny instances are
//!   checked directly over all `2^|I|` subsets.
//! * randomized: the rows of the redrawing matrix are independent for generic
//!   normals exactly when `I` is independent, so the rank at uniformly random
//!   normals over `F_p` decides it with failure probability at most
//!   `(deg / p)^r` for `r` repetitions.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exactalg::{rank_mod_p, Matrix, DEFAULT_PRIME};
use crate::geometry::{induced_counts, Incidence, IncidenceGeometry};

/// `|I|` at or below which the deterministic method runs by default.
pub const DEFAULT_THRESHOLD: usize = 24;
/// `|I|` at or below which the deterministic method enumerates all subsets.
pub const BRUTE_FORCE_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Deterministic,
    Randomized,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidReport {
    pub d: usize,
    pub incidences: usize,
    /// `|H| + d|P| - d`
    pub basis_size: usize,
    pub independent: bool,
    pub basis: bool,
    /// Incidences `(point, hyperplane)` of a subset violating the count.
    pub violating_subset: Option<Vec<(String, String)>>,
    /// Rank of the redrawing matrix at random normals over `F_p`.
    pub generic_rank: usize,
    pub method: Method,
    pub seed: u64,
    pub repetitions: usize,
    pub prime: u64,
}

#[derive(Clone, Debug)]
pub struct MatroidOptions {
    pub threshold: usize,
    pub method: Option<Method>,
    pub repetitions: usize,
    pub prime: u64,
    pub seed: u64,
}

impl Default for MatroidOptions {
    fn default() -> Self {
        MatroidOptions {
            threshold: DEFAULT_THRESHOLD,
            method: None,
            repetitions: 3,
            prime: DEFAULT_PRIME,
            seed: 0,
        }
    }
}

/// `|I''| - (|H(I'')| + d|P(I'')| - d)`; positive means the count is violated.
pub fn excess(g: &IncidenceGeometry, subset: &[Incidence]) -> i64 {
    let (i, p, h) = induced_counts(g, subset).expect("subset of the geometry");
    let d = g.dimension() as i64;
    i as i64 - (h as i64 + d * p as i64 - d)
}

/// Direct check over all nonempty subsets of `I`. Returns a violating subset
/// of maximal excess, if any.
pub fn brute_force_violation(g: &IncidenceGeometry) -> Option<Vec<Incidence>> {
    let inc = g.incidences();
    assert!(inc.len() <= 24, "brute force limited to 24 incidences");
    let mut best: Option<(i64, Vec<Incidence>)> = None;
    for mask in 1u32..(1u32 << inc.len()) {
        let subset: Vec<Incidence> = (0..inc.len())
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| inc[i])
            .collect();
        let e = excess(g, &subset);
        if e > 0 && best.as_ref().is_none_or(|(b, s)| (e, subset.len()) > (*b, s.len())) {
            best = Some((e, subset));
        }
    }
    best.map(|(_, s)| s)
}

/// Enumeration over closed sets. Returns a violating subset of maximal
/// excess (ties broken towards larger sets), if any.
pub fn closed_set_violation(g: &IncidenceGeometry) -> Option<Vec<Incidence>> {
    let n = g.points().len();
    assert!(n < 64, "closed-set enumeration limited to 63 points");
    let h_count = g.hyperplanes().len();
    let mut best: Option<(i64, Vec<Incidence>)> = None;
    for mask in 1u64..(1u64 << n) {
        let mut meets = vec![0usize; h_count];
        for inc in g.incidences() {
            if mask & (1 << inc.point) != 0 {
                meets[inc.hyperplane] += 1;
            }
        }
        let subset: Vec<Incidence> = g
            .incidences()
            .iter()
            .copied()
            .filter(|i| mask & (1 << i.point) != 0 && meets[i.hyperplane] >= 2)
            .collect();
        if subset.is_empty() {
            continue;
        }
        let e = excess(g, &subset);
        if e > 0 && best.as_ref().is_none_or(|(b, s)| (e, subset.len()) > (*b, s.len())) {
            best = Some((e, subset));
        }
    }
    best.map(|(_, s)| s)
}

/// Redrawing matrix with uniformly random normals in `F_p`.
pub(crate) fn random_matrix_mod_p(g: &IncidenceGeometry, rng: &mut impl Rng, p: u64) -> Matrix<u64> {
    let d = g.dimension();
    let h_count = g.hyperplanes().len();
    let normals: Vec<Vec<u64>> = (0..h_count)
        .map(|_| (0..d).map(|_| rng.random_range(0..p)).collect())
        .collect();
    let mut m = Matrix::zeros(g.incidences().len(), g.column_count());
    for (r, inc) in g.incidences().iter().enumerate() {
        m[(r, inc.hyperplane)] = 1;
        for k in 0..d {
            m[(r, h_count + inc.point * d + k)] = normals[inc.hyperplane][k];
        }
    }
    m
}

/// Best rank over `repetitions` random samples, with the sample achieving it.
fn sampled_rank(g: &IncidenceGeometry, seed: u64, repetitions: usize, prime: u64) -> Result<(usize, Matrix<u64>)> {
    let mut best: Option<(usize, Matrix<u64>)> = None;
    for rep in 0..repetitions.max(1) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(rep as u64);
        let m = random_matrix_mod_p(g, &mut rng, prime);
        let r = rank_mod_p(&m, prime)?;
        if best.as_ref().is_none_or(|(b, _)| r > *b) {
            best = Some((r, m));
        }
    }
    Ok(best.expect("at least one repetition"))
}

/// Rank of the redrawing matrix at random normals over `F_p`, maximized over
/// repetitions.
pub fn generic_rank(g: &IncidenceGeometry, seed: u64, repetitions: usize, prime: u64) -> Result<usize> {
    sampled_rank(g, seed, repetitions, prime).map(|(r, _)| r)
}

/// Columns of the redrawing matrix minus its generic rank (3 repetitions over
/// `F_{2^31-1}`). Equals `d` for a basis.
pub fn generic_corank(g: &IncidenceGeometry, seed: u64) -> usize {
    let r = generic_rank(g, seed, 3, DEFAULT_PRIME).expect("default prime");
    g.column_count() - r
}

/// Shrinks a dependent row set of `m` to a circuit.
fn extract_circuit(m: &Matrix<u64>, prime: u64) -> Result<Option<Vec<usize>>> {
    let rank_of = |rows: &[usize]| rank_mod_p(&m.select_rows(rows), prime);
    let mut independent: Vec<usize> = Vec::new();
    for r in 0..m.nrows() {
        independent.push(r);
        if rank_of(&independent)? < independent.len() {
            let mut circuit = independent.clone();
            let last = r;
            let mut i = 0;
            while i < circuit.len() {
                if circuit[i] == last {
                    i += 1;
                    continue;
                }
                let mut without = circuit.clone();
                without.remove(i);
                if rank_of(&without)? < without.len() {
                    circuit = without;
                } else {
                    i += 1;
                }
            }
            return Ok(Some(circuit));
        }
    }
    Ok(None)
}

pub fn is_independent(g: &IncidenceGeometry) -> MatroidReport {
    is_independent_with(g, &MatroidOptions::default()).expect("default options are valid")
}

pub fn is_independent_with(g: &IncidenceGeometry, opts: &MatroidOptions) -> Result<MatroidReport> {
    let n_inc = g.incidences().len();
    let method = opts.method.unwrap_or(if n_inc <= opts.threshold {
        Method::Deterministic
    } else {
        Method::Randomized
    });
    let (rank, sample) = sampled_rank(g, opts.seed, opts.repetitions, opts.prime)?;
    let violation = match method {
        Method::Deterministic if n_inc <= BRUTE_FORCE_LIMIT => brute_force_violation(g),
        Method::Deterministic => closed_set_violation(g),
        Method::Randomized if rank == n_inc => None,
        Method::Randomized => {
            let circuit = extract_circuit(&sample, opts.prime)?
                .map(|rows| rows.into_iter().map(|r| g.incidences()[r]).collect::<Vec<_>>());
            // an unlucky sample can produce a dependent set that satisfies the
            // count; fall back to enumeration when that is affordable
            match circuit {
                Some(c) if excess(g, &c) > 0 => Some(c),
                _ if g.points().len() <= 20 => closed_set_violation(g),
                _ => None,
            }
        }
    };
    let independent = match method {
        Method::Deterministic => violation.is_none(),
        Method::Randomized => rank == n_inc,
    };
    let labels = violation.map(|s| {
        s.into_iter()
            .map(|i| {
                let (p, h) = g.incidence_labels(i);
                (p.to_string(), h.to_string())
            })
            .collect()
    });
    Ok(MatroidReport {
        d: g.dimension(),
        incidences: n_inc,
        basis_size: g.basis_size(),
        independent,
        basis: independent && n_inc == g.basis_size(),
        violating_subset: if independent { None } else { labels },
        generic_rank: rank,
        method,
        seed: opts.seed,
        repetitions: opts.repetitions,
        prime: opts.prime,
    })
}

pub fn is_basis(g: &IncidenceGeometry) -> bool {
    g.incidences().len() == g.basis_size() && is_independent(g).independent
}

/// Counting predicate `|I''| <= |H(I'')| + d|P(I'')| - (d+1)` on the full
/// incidence set, the condition for proper redrawings at generic normals.
/// Only meaningful for `|I| >= 2`.
pub fn satisfies_proper_count(g: &IncidenceGeometry) -> bool {
    let (i, p, h) = induced_counts(g, g.incidences()).expect("own incidences");
    let d = g.dimension();
    i + d < h + d * p
}

/// Incidences of `g` with random deletions, for monotonicity checks.
pub fn random_subset(g: &IncidenceGeometry, seed: u64, keep: f64) -> IncidenceGeometry {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let kept: Vec<Incidence> = g
        .incidences()
        .iter()
        .copied()
        .filter(|_| rng.random_bool(keep))
        .collect();
    g.with_incidences(kept)
}

pub fn labels_to_incidences(g: &IncidenceGeometry, labels: &[(String, String)]) -> Result<Vec<Incidence>> {
    let mut seen = HashSet::new();
    labels
        .iter()
        .map(|(p, h)| g.find_incidence(p, h))
        .filter(|r| r.as_ref().map_or(true, |i| seen.insert(*i)))
        .collect()
}
