//! Exact linear algebra by fraction-free Gauss-Jordan elimination: rows are
//! cleared of denominators, combined with integer multipliers and divided by
//! their content after every update.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::symalg::Q;

fn integer_row(row: &[Q]) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    remove_content(&mut out);
    out
}

fn remove_content(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Reduces the rows in place over their first `pivot_cols` columns and
/// returns the pivot column of each leading row.
fn gauss_jordan(rows: &mut [Vec<BigInt>], pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).filter(|&i| !rows[i][col].is_zero()).min_by_key(|&i| rows[i][col].bits()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let (before, piv) = head.split_at_mut(r);
        let piv = &piv[0];
        for row in before.iter_mut().chain(tail.iter_mut()) {
            if row[col].is_zero() {
                continue;
            }
            let g = piv[col].gcd(&row[col]);
            let mp = &piv[col] / &g;
            let me = &row[col] / &g;
            for (x, y) in row.iter_mut().zip(piv.iter()) {
                if y.is_zero() {
                    *x *= &mp;
                } else {
                    *x = &*x * &mp - &me * y;
                }
            }
            remove_content(row);
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

pub fn rank(mat: &[Vec<Q>]) -> usize {
    let Some(n) = mat.first().map(Vec::len) else { return 0 };
    let mut rows: Vec<_> = mat.iter().map(|r| integer_row(r)).collect();
    gauss_jordan(&mut rows, n).len()
}

/// A basis of `{x : M x = 0}`, each vector scaled to coprime integers.
pub fn nullspace(mat: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut rows: Vec<_> = mat.iter().map(|r| integer_row(r)).collect();
    let pivots = gauss_jordan(&mut rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -Q::new(rows[r][f].clone(), rows[r][pc].clone());
            }
            primitive(v)
        })
        .collect()
}

fn primitive(v: Vec<Q>) -> Vec<Q> {
    let ints = integer_row(&v);
    let sign = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    ints.into_iter().map(|x| Q::from_integer(if sign { -x } else { x })).collect()
}

/// Solves `A X = B` for every column of `B` (given as rows aligned with the
/// rows of `A`). Fails unless the solution exists and is unique.
pub fn solve(a: &[Vec<Q>], b: &[Vec<Q>], ncols: usize) -> Result<Vec<Vec<Q>>> {
    if a.len() != b.len() {
        return Err(Error::Dimension { expected: a.len(), got: b.len() });
    }
    let nrhs = b.first().map_or(0, Vec::len);
    let mut rows: Vec<_> = a
        .iter()
        .zip(b)
        .map(|(ra, rb)| {
            let mut row = ra.clone();
            row.extend(rb.iter().cloned());
            integer_row(&row)
        })
        .collect();
    let pivots = gauss_jordan(&mut rows, ncols);
    if rows[pivots.len()..].iter().any(|r| r[ncols..].iter().any(|x| !x.is_zero())) {
        return Err(Error::Inconsistent);
    }
    if pivots.len() < ncols {
        return Err(Error::Underdetermined);
    }
    Ok((0..nrhs)
        .map(|j| (0..ncols).map(|r| Q::new(rows[r][ncols + j].clone(), rows[r][r].clone())).collect())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symalg::q;

    fn mat(rows: &[&[i64]]) -> Vec<Vec<Q>> {
        rows.iter().map(|r| r.iter().map(|&x| q(x, 1)).collect()).collect()
    }

    #[test]
    fn nullspace_of_rank_one() {
        let m = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &m {
                let dot: Q = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn solve_unique_and_failures() {
        let a = mat(&[&[2, 1], &[1, 3], &[3, 4]]);
        let b = vec![vec![q(3, 1)], vec![q(4, 1)], vec![q(7, 1)]];
        assert_eq!(solve(&a, &b, 2).unwrap(), vec![vec![q(1, 1), q(1, 1)]]);
        let bad = vec![vec![q(3, 1)], vec![q(4, 1)], vec![q(8, 1)]];
        assert!(matches!(solve(&a, &bad, 2), Err(Error::Inconsistent)));
        let under = mat(&[&[1, 1]]);
        assert!(matches!(solve(&under, &[vec![q(1, 1)]], 2), Err(Error::Underdetermined)));
    }

    #[test]
    fn rational_entries() {
        let a = vec![vec![q(1, 2), q(1, 3)], vec![q(1, 4), q(-1, 5)]];
        let x = [q(6, 7), q(-2, 9)];
        let b: Vec<Vec<Q>> = a.iter().map(|r| vec![&r[0] * &x[0] + &r[1] * &x[1]]).collect();
        assert_eq!(solve(&a, &b, 2).unwrap()[0], x.to_vec());
    }
}
