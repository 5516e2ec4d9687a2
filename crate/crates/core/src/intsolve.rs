//! Integer solutions of rational linear systems `A z = b` via column Hermite
//! reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Outcome of solving `A z = b` over the integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntSolution {
    /// A particular solution together with a basis of the integer kernel.
    Solvable { z: Vec<BigInt>, kernel: Vec<Vec<BigInt>> },
    /// Solvable over the rationals but not over the integers.
    NonInteger,
    /// No rational solution.
    Inconsistent,
}

impl IntSolution {
    pub fn particular(&self) -> Option<&[BigInt]> {
        match self {
            IntSolution::Solvable { z, .. } => Some(z),
            _ => None,
        }
    }
}

/// Column-reduced form `A U = H` with `U` unimodular and `H` in lower column
/// echelon form.
struct Reduced {
    h: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    /// `pivots[i] = Some(k)` when row `i` carries the pivot of column `k`.
    pivots: Vec<Option<usize>>,
    rank: usize,
}

fn lcm_denominators(row: &[BigRational], extra: Option<&BigRational>) -> BigInt {
    row.iter()
        .chain(extra)
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

fn integer_rows(a: &[Vec<BigRational>], b: Option<&[BigRational]>) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
    let mut rows = Vec::with_capacity(a.len());
    let mut rhs = Vec::with_capacity(a.len());
    for (i, row) in a.iter().enumerate() {
        let bi = b.map(|b| &b[i]);
        let l = lcm_denominators(row, bi);
        rows.push(row.iter().map(|q| (q * &l).to_integer()).collect());
        rhs.push(bi.map_or_else(BigInt::zero, |q| (q * &l).to_integer()));
    }
    (rows, rhs)
}

fn swap_cols(m: &mut [Vec<BigInt>], i: usize, j: usize) {
    for row in m.iter_mut() {
        row.swap(i, j);
    }
}

fn sub_col(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let t = &row[src] * q;
        row[dst] -= t;
    }
}

fn reduce(mut h: Vec<Vec<BigInt>>, cols: usize) -> Reduced {
    let mut u: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| (0..cols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut pivots = vec![None; h.len()];
    let mut k = 0;
    for i in 0..h.len() {
        if k == cols {
            continue;
        }
        loop {
            // smallest nonzero entry of row i among columns k..
            let best = (k..cols)
                .filter(|&j| !h[i][j].is_zero())
                .min_by(|&x, &y| h[i][x].abs().cmp(&h[i][y].abs()));
            let Some(best) = best else { break };
            swap_cols(&mut h, k, best);
            swap_cols(&mut u, k, best);
            let mut done = true;
            for j in k + 1..cols {
                if h[i][j].is_zero() {
                    continue;
                }
                let q = h[i][j].div_floor(&h[i][k]);
                sub_col(&mut h, j, k, &q);
                sub_col(&mut u, j, k, &q);
                if !h[i][j].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if !h[i][k].is_zero() {
            pivots[i] = Some(k);
            k += 1;
        }
    }
    Reduced { h, u, pivots, rank: k }
}

/// Solves `A z = b` for integer `z`; `a` has one inner vector per equation.
pub fn solve(a: &[Vec<BigRational>], b: &[BigRational], cols: usize) -> IntSolution {
    assert_eq!(a.len(), b.len());
    let (rows, rhs) = integer_rows(a, Some(b));
    let red = reduce(rows, cols);
    let mut y = vec![BigInt::zero(); cols];
    for (i, row) in red.h.iter().enumerate() {
        let s: BigInt = (0..red.rank).map(|j| &row[j] * &y[j]).sum();
        let r = &rhs[i] - s;
        match red.pivots[i] {
            Some(p) => {
                let (q, rem) = r.div_rem(&row[p]);
                if !rem.is_zero() {
                    // distinguish "no rational solution" from "non-integer"
                    return if rational_rank(a, None) == rational_rank(a, Some(b)) {
                        IntSolution::NonInteger
                    } else {
                        IntSolution::Inconsistent
                    };
                }
                y[p] = q;
            }
            None => {
                if !r.is_zero() {
                    return IntSolution::Inconsistent;
                }
            }
        }
    }
    let z = (0..cols)
        .map(|i| (0..cols).map(|j| &red.u[i][j] * &y[j]).sum())
        .collect();
    let kernel = (red.rank..cols)
        .map(|j| (0..cols).map(|i| red.u[i][j].clone()).collect())
        .collect();
    IntSolution::Solvable { z, kernel }
}

fn rational_rank(a: &[Vec<BigRational>], b: Option<&[BigRational]>) -> usize {
    let rows: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut r = r.clone();
            if let Some(b) = b {
                r.push(b[i].clone());
            }
            r
        })
        .collect();
    rank(&rows)
}

/// Rank over the rationals of the row vectors `rows`.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}
