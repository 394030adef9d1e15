//! Exact kernels by fraction-free (Bareiss) elimination.

use crate::coeffring::Field;

/// Row echelon form of `m` by Bareiss elimination, returning the pivot
/// columns. Every division in the update is exact.
pub fn bareiss_echelon<C: Field>(m: &mut [Vec<C>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = C::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = m[r][c].mul(&m[i][j]).sub(&m[i][c].mul(&m[r][j]));
                m[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][c] = C::zero();
        }
        // entries left of the pivot in rows below are already zero
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A basis of the right kernel {x : m·x = 0}, one vector per free column.
pub fn kernel<C: Field>(m: &[Vec<C>], cols: usize) -> Vec<Vec<C>> {
    let mut a: Vec<Vec<C>> = m.to_vec();
    let pivots = bareiss_echelon(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![C::zero(); cols];
            x[f] = C::one();
            for (row, &pc) in pivots.iter().enumerate().rev() {
                let mut acc = C::zero();
                for j in pc + 1..cols {
                    acc.add_mul_assign(&a[row][j], &x[j]);
                }
                x[pc] = acc.neg().div_exact(&a[row][pc]).expect("field division");
            }
            x
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::testing::small_rational;
    use crate::coeffring::{QuadExtSqrt5, Rational, Ring};
    use proptest::prelude::*;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
            .collect()
    }

    fn apply<C: Field>(m: &[Vec<C>], x: &[C]) -> Vec<C> {
        m.iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(C::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    #[test]
    fn rank_deficient() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 1);
        assert!(apply(&m, &k[0]).iter().all(Ring::is_zero));
        assert!(kernel(&mat(&[&[1, 0], &[0, 1]]), 2).is_empty());
    }

    #[test]
    fn over_sqrt5() {
        let s = QuadExtSqrt5::sqrt5();
        let one = QuadExtSqrt5::one();
        // rows (1, sqrt5) and (sqrt5, 5) are dependent
        let m = vec![vec![one.clone(), s.clone()], vec![s.clone(), s.mul(&s)]];
        let k = kernel(&m, 2);
        assert_eq!(k.len(), 1);
        assert!(apply(&m, &k[0]).iter().all(Ring::is_zero));
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(
            entries in prop::collection::vec(small_rational(), 12),
            rows in 1usize..4,
        ) {
            let cols = 4;
            let m: Vec<Vec<Rational>> = entries.chunks(cols).take(rows).map(<[_]>::to_vec).collect();
            let k = kernel(&m, cols);
            prop_assert!(k.len() >= cols - rows);
            for v in &k {
                prop_assert!(apply(&m, v).iter().all(Ring::is_zero));
            }
        }
    }
}
