//! Small exact linear algebra over Q and Z.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

/// Reduced row echelon form. Returns the nonzero rows and their pivot columns.
pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

/// Solution set of `A x = b` as `x0 + span(basis)`, or `None` if inconsistent.
/// Free variables are set to zero in `x0`, and `basis[k]` is the unit vector of
/// the k-th free variable completed to a solution of the homogeneous system.
pub fn solve_affine(a: &[Vec<Rational>], b: &[Rational], ncols: usize) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x0 = vec![Rational::zero(); ncols];
    for (row, &p) in m.iter().zip(&pivots) {
        x0[p] = row[ncols].clone();
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); ncols];
            v[fc] = Rational::one();
            for (row, &p) in m.iter().zip(&pivots) {
                v[p] = -row[fc].clone();
            }
            v
        })
        .collect();
    Some((x0, basis))
}

pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let zeros = vec![Rational::zero(); rows.len()];
    solve_affine(rows, &zeros, ncols)
        .map(|(_, basis)| basis)
        .unwrap_or_default()
}

/// Rank of an integer matrix by fraction-free elimination, falling back to
/// rational arithmetic on overflow.
pub fn int_rank(rows: &[Vec<i64>], ncols: usize) -> usize {
    int_rank_checked(rows, ncols).unwrap_or_else(|| {
        let q: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
            .collect();
        rank(&q, ncols)
    })
}

fn int_rank_checked(rows: &[Vec<i64>], ncols: usize) -> Option<usize> {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let a = m[r][c];
            let b = m[i][c];
            let mut g = 0i128;
            let (top, rest) = m.split_at_mut(i);
            for (x, y) in rest[0].iter_mut().zip(&top[r]).take(ncols) {
                let v = x.checked_mul(a)?.checked_sub(y.checked_mul(b)?)?;
                *x = v;
                g = g.gcd(&v);
            }
            if g > 1 {
                for x in m[i].iter_mut() {
                    *x /= g;
                }
            }
        }
        r += 1;
    }
    Some(r)
}

/// Dimension of the affine hull of `points`; `-1` for the empty set.
pub fn affine_rank(points: &[&[i64]]) -> isize {
    let Some(first) = points.first() else {
        return -1;
    };
    let d = first.len();
    let diffs: Vec<Vec<i64>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    int_rank(&diffs, d) as isize
}

/// Scales a nonzero rational vector to a primitive integer vector with the
/// same direction (positive multiple).
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Index of the Z-span of the rows in `Z^ncols`; zero when the span has lower
/// rank.
pub fn lattice_index(rows: &[Vec<i64>], ncols: usize) -> BigInt {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut r = 0;
    let mut index = BigInt::one();
    for c in 0..ncols {
        // Euclid on column c among rows r.. until a single nonzero remains.
        loop {
            let nonzero: Vec<usize> = (r..m.len()).filter(|&i| !m[i][c].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let p = *nonzero
                .iter()
                .min_by(|&&a, &&b| m[a][c].abs().cmp(&m[b][c].abs()))
                .unwrap();
            for &i in &nonzero {
                if i == p {
                    continue;
                }
                let q = m[i][c].div_floor(&m[p][c]);
                let pr = m[p].clone();
                for (x, y) in m[i].iter_mut().zip(&pr) {
                    *x -= &q * y;
                }
            }
        }
        if let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) {
            m.swap(r, p);
            index *= m[r][c].abs();
            r += 1;
        } else {
            return BigInt::zero();
        }
    }
    index
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn q(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let m = q(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&m, 3), 2);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        for row in &m {
            let dot: Rational = row.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn inconsistent_system() {
        let a = q(&[&[1, 1], &[1, 1]]);
        assert!(solve_affine(&a, &[rat(0), rat(1)], 2).is_none());
        let (x0, basis) = solve_affine(&a, &[rat(2), rat(2)], 2).unwrap();
        assert_eq!(x0, vec![rat(2), rat(0)]);
        assert_eq!(basis, vec![vec![rat(-1), rat(1)]]);
    }

    #[test]
    fn affine_ranks() {
        assert_eq!(affine_rank(&[]), -1);
        assert_eq!(affine_rank(&[&[0, 0]]), 0);
        assert_eq!(affine_rank(&[&[0, 0], &[1, 0], &[2, 0]]), 1);
        assert_eq!(affine_rank(&[&[0, 0], &[1, 0], &[1, 1]]), 2);
    }

    #[test]
    fn lattice_indices() {
        assert_eq!(lattice_index(&[vec![1, 0], vec![0, 1]], 2), BigInt::one());
        assert_eq!(lattice_index(&[vec![2, 0], vec![0, 1]], 2), BigInt::from(2));
        assert_eq!(lattice_index(&[vec![2, 0], vec![3, 0], vec![0, 1]], 2), BigInt::one());
        assert_eq!(lattice_index(&[vec![0, 0], vec![1, 0]], 2), BigInt::zero());
        assert_eq!(lattice_index(&[vec![2, 2], vec![0, 2]], 2), BigInt::from(4));
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![crate::arith::ratio(1, 2), crate::arith::ratio(-3, 4)];
        assert_eq!(primitive_integer(&v), vec![BigInt::from(2), BigInt::from(-3)]);
    }
}
