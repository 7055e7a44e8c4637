use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use incidence::bracket::{Bracket, BracketPolynomial};
use incidence::exactalg::modp::rational_rank_mod_p;
use incidence::exactalg::rational::rational;
use incidence::exactalg::{
    det_polynomial_with, random_unimodular, DetStrategy, Matrix, Monomial, Polynomial, Rational, DEFAULT_PRIME,
};
use incidence::geometry::{
    induced_counts, normals_from_points, parse_document, serialize_geometry, Incidence, IncidenceGeometry,
    NormalAssignment, PointConfiguration,
};
use incidence::matroid::{self, MatroidOptions, Method};
use incidence::purecond::{
    build_from_vectors, evaluate, pinned_kernel, pinned_ranks, pure_condition, random_normals, trial_rng,
};
use incidence::redraw::redrawing_space;
use incidence::{fixtures, Execution};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rational(n, d))
}

/// Planar geometries with up to 6 points and 5 lines and random incidences.
fn geometry() -> impl Strategy<Value = IncidenceGeometry> {
    (1usize..=6, 1usize..=5)
        .prop_flat_map(|(np, nh)| (Just(np), Just(nh), proptest::collection::vec(any::<bool>(), np * nh)))
        .prop_map(|(np, nh, mask)| {
            let points: Vec<String> = (0..np).map(|i| format!("p{i}")).collect();
            let hyperplanes: Vec<String> = (0..nh).map(|i| format!("h{i}")).collect();
            let incidences: Vec<(String, String)> = (0..np * nh)
                .filter(|&i| mask[i])
                .map(|i| (points[i % np].clone(), hyperplanes[i / np].clone()))
                .collect();
            IncidenceGeometry::new(
                2,
                &points,
                &hyperplanes,
                incidences.iter().map(|(p, h)| (p.as_str(), h.as_str())),
            )
            .expect("generated geometry is valid")
        })
}

fn small_poly() -> impl Strategy<Value = Polynomial> {
    proptest::collection::vec((-3i64..=3, 0u32..3, 0u32..3), 0..3).prop_map(|terms| {
        let mut p = Polynomial::zero();
        for (c, v, e) in terms {
            let m = if e == 0 {
                Monomial::one()
            } else {
                Monomial::from_pairs([(v, e)])
            };
            p.add_term(m, BigInt::from(c));
        }
        p
    })
}

fn poly_matrix() -> impl Strategy<Value = Matrix<Polynomial>> {
    (1usize..=6).prop_flat_map(|n| {
        proptest::collection::vec(small_poly(), n * n)
            .prop_map(move |entries| Matrix::from_rows(entries.chunks(n).map(<[Polynomial]>::to_vec).collect()))
    })
}

fn rational_matrix() -> impl Strategy<Value = Matrix<Rational>> {
    (1usize..=5, 1usize..=6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(prop_oneof![Just(Rational::zero()), small_rational()], r * c)
            .prop_map(move |e| Matrix::from_rows(e.chunks(c).map(<[Rational]>::to_vec).collect()))
    })
}

fn translation(g: &IncidenceGeometry, normals: &[Vec<Rational>], k: usize) -> Vec<Rational> {
    let d = g.dimension();
    let mut v = vec![Rational::zero(); g.column_count()];
    for (h, n) in normals.iter().enumerate() {
        v[h] = -n[k].clone();
    }
    for p in 0..g.points().len() {
        v[g.hyperplanes().len() + p * d + k] = Rational::from_integer(1.into());
    }
    v
}

fn basis_fixtures() -> Vec<IncidenceGeometry> {
    vec![fixtures::g1(), fixtures::dg4(), fixtures::nf7(), fixtures::pappus_sub()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn geometry_round_trips(g in geometry()) {
        let back = parse_document(&serialize_geometry(&g)).unwrap().geometry;
        prop_assert_eq!(back, g);
    }

    #[test]
    fn induced_counts_are_monotone(g in geometry(), keep in proptest::collection::vec(any::<bool>(), 30)) {
        let all = g.incidences().to_vec();
        let sub: Vec<Incidence> = all.iter().zip(keep.iter().cycle()).filter(|(_, k)| **k).map(|(i, _)| *i).collect();
        let (a, b, c) = induced_counts(&g, &sub).unwrap();
        let (x, y, z) = induced_counts(&g, &all).unwrap();
        prop_assert!(a <= x && b <= y && c <= z);
    }

    #[test]
    fn derived_normals_satisfy_incidences(
        base in proptest::collection::vec((small_rational(), small_rational()), 2),
        ts in proptest::collection::vec(small_rational(), 1..4),
    ) {
        // points p0, p1 and further points on the line through them
        let (a, b) = (&base[0], &base[1]);
        prop_assume!(a != b);
        let mut coords = PointConfiguration::new();
        let mut labels = vec!["p0".to_string(), "p1".to_string()];
        coords.insert("p0", vec![a.0.clone(), a.1.clone()]);
        coords.insert("p1", vec![b.0.clone(), b.1.clone()]);
        for (i, t) in ts.iter().enumerate() {
            let label = format!("q{i}");
            let x = &a.0 + t * (&b.0 - &a.0);
            let y = &a.1 + t * (&b.1 - &a.1);
            coords.insert(label.clone(), vec![x, y]);
            labels.push(label);
        }
        let g = IncidenceGeometry::new(2, &labels, ["h"], labels.iter().map(|p| (p.as_str(), "h"))).unwrap();
        let (n, r) = normals_from_points(&g, &coords).unwrap();
        prop_assert!(r.check(&g, &n).is_ok());
    }

    #[test]
    fn determinant_strategies_match_cofactor(m in poly_matrix()) {
        let oracle = det_polynomial_with(&m, DetStrategy::Cofactor, Execution::Sequential).unwrap();
        for s in [DetStrategy::Auto, DetStrategy::Bareiss, DetStrategy::MemoizedMinors] {
            for exec in [Execution::Sequential, Execution::Parallel] {
                prop_assert_eq!(&det_polynomial_with(&m, s, exec).unwrap(), &oracle);
            }
        }
    }

    #[test]
    fn kernel_and_rank(m in rational_matrix()) {
        let kernel = m.kernel_basis();
        for v in &kernel {
            prop_assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
        prop_assert_eq!(m.rank() + kernel.len(), m.ncols());
        if let Some(r) = rational_rank_mod_p(&m, DEFAULT_PRIME).unwrap() {
            prop_assert!(r <= m.rank());
        }
    }

    #[test]
    fn canonical_form_is_idempotent(p in small_poly()) {
        prop_assume!(!p.is_zero());
        let (q, _) = p.canonicalize().unwrap();
        let (r, c) = q.canonicalize().unwrap();
        prop_assert_eq!(r, q);
        prop_assert_eq!(c, Rational::from_integer(1.into()));
    }

    #[test]
    fn matroid_methods_agree(g in geometry()) {
        let det = matroid::is_independent_with(&g, &MatroidOptions { method: Some(Method::Deterministic), ..Default::default() }).unwrap();
        let ran = matroid::is_independent_with(&g, &MatroidOptions { method: Some(Method::Randomized), ..Default::default() }).unwrap();
        prop_assert_eq!(det.independent, ran.independent);
        if !det.independent {
            for r in [&det, &ran] {
                let s = matroid::labels_to_incidences(&g, r.violating_subset.as_ref().unwrap()).unwrap();
                prop_assert!(matroid::excess(&g, &s) > 0);
            }
        }
    }

    #[test]
    fn independence_is_monotone(g in geometry(), seed in any::<u64>()) {
        if matroid::is_independent(&g).independent {
            let sub = matroid::random_subset(&g, seed, 0.6);
            prop_assert!(matroid::is_independent(&sub).independent);
        }
    }

    #[test]
    fn translations_lie_in_the_kernel(g in geometry(), seed in any::<u64>()) {
        let s = random_normals(&g, &mut trial_rng(seed, 0));
        let m = build_from_vectors(&g, &s).matrix;
        for k in 0..g.dimension() {
            prop_assert!(m.mul_vec(&translation(&g, &s, k)).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn pinned_rank_ignores_the_pin(g in geometry(), seed in any::<u64>()) {
        let s = random_normals(&g, &mut trial_rng(seed, 0));
        let ranks = pinned_ranks(&g, &s);
        prop_assert!(ranks.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn plucker_and_antisymmetry(idx in proptest::sample::subsequence((0usize..8).collect::<Vec<_>>(), 4)) {
        let (i, j, k, l) = (idx[0], idx[1], idx[2], idx[3]);
        let b = |x: usize, y: usize| {
            let (br, sign) = Bracket::normalize(vec![x, y]).unwrap();
            BracketPolynomial::bracket(br).scale(&BigInt::from(sign))
        };
        let syzygy = b(i, j).mul(&b(k, l))
            .add(&b(i, k).mul(&b(j, l)).scale(&BigInt::from(-1)))
            .add(&b(i, l).mul(&b(j, k)));
        prop_assert!(syzygy.expand().is_zero());
        prop_assert!(b(i, j).add(&b(j, i)).expand().is_zero());
    }
}

#[test]
fn brackets_are_unimodular_invariants() {
    let g = fixtures::nf7();
    let pc = pure_condition(&g).unwrap();
    let bracket = incidence::bracket::bracketize(&pc.polynomial, 2).unwrap().expand();
    for t in 0..50 {
        let mut rng = trial_rng(11, t);
        let s = random_normals(&g, &mut rng);
        let a = random_unimodular(2, t as u64);
        let moved: Vec<Vec<Rational>> = s
            .iter()
            .map(|n| {
                (0..2)
                    .map(|i| {
                        (0..2).fold(Rational::zero(), |acc, j| {
                            acc + Rational::from(a[(i, j)].clone()) * &n[j]
                        })
                    })
                    .collect()
            })
            .collect();
        let flat = |v: &[Vec<Rational>]| v.iter().flatten().cloned().collect::<Vec<_>>();
        assert_eq!(bracket.evaluate(&flat(&s)), bracket.evaluate(&flat(&moved)));
    }
}

#[test]
fn vanishing_matches_nontrivial_kernel() {
    for g in basis_fixtures() {
        let pc = pure_condition(&g).unwrap();
        for t in 0..50 {
            let s = random_normals(&g, &mut trial_rng(21, t));
            let n = NormalAssignment::from_vectors(&g, s.clone());
            let vanishes = evaluate(&pc, &g, &n).unwrap().is_zero();
            assert_eq!(vanishes, !pinned_kernel(&g, &s, 0).is_empty());
        }
    }
}

#[test]
fn redrawings_satisfy_incidences_and_absorb_translations() {
    let g = fixtures::nf7();
    let n = fixtures::medial_normals();
    let s = n.vectors(&g).unwrap();
    let unpinned = build_from_vectors(&g, &s).matrix;
    for p in g.points() {
        let report = redrawing_space(&g, &n, p).unwrap();
        for red in &report.redrawings {
            red.realization.check(&g, &n).unwrap();
            let mut v: Vec<Rational> = g
                .hyperplanes()
                .iter()
                .map(|h| red.realization.offsets[h].clone())
                .collect();
            v.extend(red.realization.coords.vectors(&g).unwrap().into_iter().flatten());
            for k in 0..2 {
                let shifted: Vec<Rational> = v.iter().zip(translation(&g, &s, k)).map(|(a, b)| a + b).collect();
                assert!(unpinned.mul_vec(&shifted).unwrap().iter().all(Zero::is_zero));
            }
        }
    }
}

#[test]
fn pinned_rank_is_stable_on_the_corpus() {
    for (name, g) in fixtures::all() {
        for t in 0..20 {
            let s = random_normals(&g, &mut trial_rng(31, t));
            let ranks = pinned_ranks(&g, &s);
            assert!(ranks.windows(2).all(|w| w[0] == w[1]), "{name} trial {t}: {ranks:?}");
        }
    }
}

#[test]
fn corpus_bases_have_corank_d() {
    for g in basis_fixtures() {
        assert_eq!(matroid::generic_corank(&g, 3), g.dimension());
    }
}
