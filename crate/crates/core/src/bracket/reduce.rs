//! Block reduction of the pinned planar redrawing matrix.
//!
//! Subtracting, for every hyperplane, its first incidence row from its other
//! incidence rows leaves each offset column with a single 1. Together with
//! the pin rows this splits off an identity block, and the determinant is
//! carried by the square block `B` of the remaining incidence rows on the
//! unpinned point columns. A point whose two columns meet exactly two rows of
//! `B` contributes a `2 x 2` diagonal block, whose determinant is a bracket
//! of the two hyperplanes of those rows.

use num_traits::Zero;

use super::Bracket;
use crate::error::{Error, Result};
use crate::exactalg::{Matrix, PolyMatrix, Polynomial};
use crate::geometry::{Incidence, IncidenceGeometry};
use crate::matroid;
use crate::purecond::{build_symbolic, coordinate_column, pin};

#[derive(Clone, Debug)]
pub struct BlockReduction {
    /// Brackets of the peeled diagonal blocks, in peeling order.
    pub brackets: Vec<Bracket>,
    /// Points whose columns formed the peeled blocks.
    pub peeled_points: Vec<usize>,
    /// `det(pinned matrix) = sign * prod(brackets) * det(residual)`.
    pub sign: i8,
    pub residual: PolyMatrix,
    pub residual_rows: Vec<Incidence>,
    /// `(point, k)` for each residual column.
    pub residual_columns: Vec<(usize, usize)>,
}

fn permutation_sign(order: &[usize]) -> i8 {
    let mut sign = 1;
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if order[i] > order[j] {
                sign = -sign;
            }
        }
    }
    sign
}

fn remove(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> PolyMatrix {
    let keep_rows: Vec<usize> = (0..m.nrows()).filter(|r| !rows.contains(r)).collect();
    let keep_cols: Vec<usize> = (0..m.ncols()).filter(|c| !cols.contains(c)).collect();
    m.select(&keep_rows, &keep_cols)
}

pub fn block_reduce(g: &IncidenceGeometry, pinned: &str) -> Result<BlockReduction> {
    if g.dimension() != 2 {
        return Err(Error::UnsupportedDimension {
            op: "block_reduce",
            supported: 2,
            d: g.dimension(),
        });
    }
    let report = matroid::is_independent(g);
    if !report.basis {
        return Err(Error::NotBasis(Box::new(report)));
    }
    let p0 = g.point_index(pinned)?;
    let mut m = pin(g, build_symbolic(g), pinned)?.matrix;
    let inc = g.incidences();
    let h_count = g.hyperplanes().len();

    let mut pivots = Vec::with_capacity(h_count);
    for h in 0..h_count {
        let rows: Vec<usize> = (0..inc.len()).filter(|&r| inc[r].hyperplane == h).collect();
        let &first = rows.first().expect("every hyperplane of a basis has an incidence");
        let pivot_row = m.row(first).to_vec();
        for &r in &rows[1..] {
            for (j, e) in pivot_row.iter().enumerate() {
                if !e.is_zero() {
                    m[(r, j)] -= e;
                }
            }
        }
        pivots.push(first);
    }
    let pinned_cols: Vec<usize> = (1..=2).map(|k| coordinate_column(g, p0, k)).collect();
    let block_rows: Vec<usize> = (0..inc.len()).filter(|r| !pivots.contains(r)).collect();
    // subtracting multiples of the pin rows clears the pinned columns
    for &r in &block_rows {
        for &c in &pinned_cols {
            m[(r, c)] = Polynomial::zero();
        }
    }
    let free_cols: Vec<usize> = (h_count..m.ncols()).filter(|c| !pinned_cols.contains(c)).collect();
    let row_order: Vec<usize> = pivots
        .iter()
        .copied()
        .chain(inc.len()..inc.len() + 2)
        .chain(block_rows.iter().copied())
        .collect();
    let col_order: Vec<usize> = (0..h_count)
        .chain(pinned_cols.iter().copied())
        .chain(free_cols.iter().copied())
        .collect();
    let mut sign = permutation_sign(&row_order) * permutation_sign(&col_order);

    let mut b = m.select(&block_rows, &free_cols);
    let mut rows: Vec<Incidence> = block_rows.iter().map(|&r| inc[r]).collect();
    let mut cols: Vec<(usize, usize)> = (0..g.points().len())
        .filter(|&p| p != p0)
        .flat_map(|p| [(p, 1), (p, 2)])
        .collect();

    let candidates: Vec<usize> = cols.iter().filter(|c| c.1 == 1).map(|c| c.0).collect();
    let mut brackets = Vec::new();
    let mut peeled_points = Vec::new();
    for p in candidates {
        let c1 = cols.iter().position(|&c| c == (p, 1)).expect("column present");
        let c2 = c1 + 1;
        let touched: Vec<usize> = (0..b.nrows())
            .filter(|&r| !b[(r, c1)].is_zero() || !b[(r, c2)].is_zero())
            .collect();
        let [r1, r2] = touched[..] else { continue };
        let block = &(&b[(r1, c1)] * &b[(r2, c2)]) - &(&b[(r1, c2)] * &b[(r2, c1)]);
        let Some((bracket, _)) = Bracket::normalize(vec![rows[r1].hyperplane, rows[r2].hyperplane]) else {
            // two rows of the same hyperplane give a zero block
            return Ok(BlockReduction {
                brackets,
                peeled_points,
                sign: 0,
                residual: Matrix::zeros(0, 0),
                residual_rows: Vec::new(),
                residual_columns: Vec::new(),
            });
        };
        let expanded = bracket.expand();
        let ratio = if block == expanded {
            1
        } else if block == -expanded.clone() {
            -1
        } else {
            unreachable!("diagonal block is a signed bracket")
        };
        if (r1 + r2 + c1 + c2) % 2 == 1 {
            sign = -sign;
        }
        sign *= ratio;
        b = remove(&b, &[r1, r2], &[c1, c2]);
        rows.remove(r2);
        rows.remove(r1);
        cols.drain(c1..=c2);
        brackets.push(bracket);
        peeled_points.push(p);
    }
    Ok(BlockReduction {
        brackets,
        peeled_points,
        sign,
        residual: b,
        residual_rows: rows,
        residual_columns: cols,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::det_polynomial;
    use crate::exactalg::DetStrategy;
    use crate::fixtures;
    use crate::purecond::pinned_determinant;
    use crate::Execution;

    fn labels(g: &IncidenceGeometry, r: &BlockReduction) -> Vec<String> {
        r.brackets.iter().map(|b| b.label(g.hyperplanes())).collect()
    }

    fn check_identity(g: &IncidenceGeometry, pinned: &str, r: &BlockReduction) {
        let full = pinned_determinant(g, pinned, DetStrategy::Auto, Execution::Sequential).unwrap();
        let mut rhs = det_polynomial(&r.residual).unwrap();
        for b in &r.brackets {
            rhs = &rhs * &b.expand();
        }
        if r.sign < 0 {
            rhs = -rhs;
        }
        assert_eq!(full, rhs);
    }

    #[test]
    fn example_geometry_peels_two_blocks() {
        let g = fixtures::nf7();
        let r = block_reduce(&g, "p0").unwrap();
        assert_eq!(labels(&g, &r), ["[h1 h5]", "[h2 h4]"]);
        assert_eq!((r.residual.nrows(), r.residual.ncols()), (8, 8));
        check_identity(&g, "p0", &r);
    }

    #[test]
    fn dg4_is_a_single_bracket() {
        let g = fixtures::dg4();
        let r = block_reduce(&g, "p0").unwrap();
        assert_eq!(labels(&g, &r), ["[h0 h3]"]);
        assert_eq!(r.residual.nrows(), 0);
        check_identity(&g, "p0", &r);
    }

    #[test]
    fn every_pin_satisfies_the_identity() {
        let g = fixtures::nf7();
        for p in g.points() {
            let r = block_reduce(&g, p).unwrap();
            check_identity(&g, p, &r);
        }
    }

    #[test]
    fn rejects_other_dimensions_and_non_bases() {
        let g = IncidenceGeometry::new(3, ["p"], ["h"], [("p", "h")]).unwrap();
        assert!(matches!(block_reduce(&g, "p"), Err(Error::UnsupportedDimension { .. })));
        assert!(matches!(
            block_reduce(&fixtures::triangle(), "a"),
            Err(Error::NotBasis(_))
        ));
    }
}
