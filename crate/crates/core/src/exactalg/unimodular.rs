use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::Matrix;

/// Deterministic random integer matrix of determinant 1.
///
/// The result is a product of one to six elementary factors, each either a
/// shear `I + c E_ij` with `c` in `[-5, 5]` or a row swap with one row negated.
pub fn random_unimodular(d: usize, seed: u64) -> Matrix<BigInt> {
    assert!(d >= 1, "dimension must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = Matrix::<BigInt>::identity(d);
    if d == 1 {
        return a;
    }
    let factors = rng.random_range(1..=6);
    for _ in 0..factors {
        let i = rng.random_range(0..d);
        let mut j = rng.random_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        // left-multiplying by an elementary matrix is a row operation
        if rng.random_bool(0.75) {
            let c = BigInt::from(rng.random_range(-5i64..=5));
            for k in 0..d {
                let add = &c * &a[(j, k)];
                a[(i, k)] += add;
            }
        } else {
            a.swap_rows(i, j);
            for k in 0..d {
                a[(i, k)] = -a[(i, k)].clone();
            }
        }
    }
    a
}
