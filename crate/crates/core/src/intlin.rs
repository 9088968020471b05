//! Exact integer and rational linear algebra.
//!
//! Everything here works over `BigInt`/`BigRational`. Lattice membership goes
//! through a single Hermite-style echelon form; rational systems use plain
//! Gaussian elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{input, invariant, Result};

/// Dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if rows * cols != data.len() {
            return input(format!(
                "matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            ));
        }
        Ok(IntMat { rows, cols, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<BigInt>]) -> Result<Self> {
        let rows = cols.first().map_or(0, |c| c.len());
        if cols.iter().any(|c| c.len() != rows) {
            return input("columns have different lengths");
        }
        let mut data = Vec::with_capacity(rows * cols.len());
        for i in 0..rows {
            for c in cols {
                data.push(c[i].clone());
            }
        }
        Ok(IntMat { rows, cols: cols.len(), data })
    }

    pub fn from_i64_columns(cols: &[Vec<i64>]) -> Result<Self> {
        let big: Vec<Vec<BigInt>> = cols
            .iter()
            .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Self::from_columns(&big)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &x[j]).sum())
            .collect()
    }
}

/// A sublattice of `Z^dim` kept in row echelon (Hermite) form.
///
/// When built with `track = true` every echelon row remembers how it was
/// combined from the original generators, so membership queries can return
/// coefficients against those generators.
#[derive(Debug, Clone)]
pub struct IntLattice {
    dim: usize,
    ngens: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    transforms: Option<Vec<Vec<BigInt>>>,
}

impl IntLattice {
    pub fn new(gens: &[Vec<BigInt>], dim: usize, track: bool) -> Result<Self> {
        if gens.iter().any(|g| g.len() != dim) {
            return input("lattice generator has wrong dimension");
        }
        let n = gens.len();
        let mut rows: Vec<Vec<BigInt>> = gens.to_vec();
        let mut tr: Vec<Vec<BigInt>> = if track {
            (0..n)
                .map(|i| {
                    let mut e = vec![BigInt::zero(); n];
                    e[i] = BigInt::one();
                    e
                })
                .collect()
        } else {
            Vec::new()
        };

        let mut pivots = Vec::new();
        let mut k = 0;
        for col in 0..dim {
            if k == rows.len() {
                break;
            }
            loop {
                // smallest nonzero entry at or below row k
                let mut best: Option<usize> = None;
                for r in k..rows.len() {
                    if !rows[r][col].is_zero()
                        && best.is_none_or(|b| rows[r][col].abs() < rows[b][col].abs())
                    {
                        best = Some(r);
                    }
                }
                let Some(b) = best else { break };
                rows.swap(k, b);
                if track {
                    tr.swap(k, b);
                }
                let mut done = true;
                for r in k + 1..rows.len() {
                    if rows[r][col].is_zero() {
                        continue;
                    }
                    let q = rows[r][col].div_floor(&rows[k][col]);
                    sub_mul(&mut rows, r, k, &q);
                    if track {
                        sub_mul(&mut tr, r, k, &q);
                    }
                    if !rows[r][col].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if k < rows.len() && !rows[k][col].is_zero() {
                if rows[k][col].is_negative() {
                    negate(&mut rows[k]);
                    if track {
                        negate(&mut tr[k]);
                    }
                }
                // keep entries above the pivot reduced
                for r in 0..k {
                    let q = rows[r][col].div_floor(&rows[k][col]);
                    if !q.is_zero() {
                        sub_mul(&mut rows, r, k, &q);
                        if track {
                            sub_mul(&mut tr, r, k, &q);
                        }
                    }
                }
                pivots.push(col);
                k += 1;
            }
        }
        rows.truncate(k);
        if track {
            tr.truncate(k);
        }
        Ok(IntLattice {
            dim,
            ngens: n,
            rows,
            pivots,
            transforms: if track { Some(tr) } else { None },
        })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    fn reduce(&self, target: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut t = target.to_vec();
        let mut coef = vec![BigInt::zero(); self.rows.len()];
        let mut next = 0;
        for (i, &p) in self.pivots.iter().enumerate() {
            if t[next..p].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let (q, r) = t[p].div_rem(&self.rows[i][p]);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (tj, rj) in t.iter_mut().zip(&self.rows[i]) {
                    *tj -= &q * rj;
                }
            }
            coef[i] = q;
            next = p + 1;
        }
        if t.iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(coef)
    }

    pub fn contains(&self, target: &[BigInt]) -> bool {
        target.len() == self.dim && self.reduce(target).is_some()
    }

    /// Coefficients against the original generators (needs `track`).
    pub fn solve(&self, target: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
        if target.len() != self.dim {
            return input("target has wrong dimension");
        }
        let Some(tr) = &self.transforms else {
            return input("lattice was built without transform tracking");
        };
        Ok(self.reduce(target).map(|c| {
            let mut x = vec![BigInt::zero(); self.ngens];
            for (ci, row) in c.iter().zip(tr) {
                for (xj, rj) in x.iter_mut().zip(row) {
                    *xj += ci * rj;
                }
            }
            x
        }))
    }
}

fn sub_mul(rows: &mut [Vec<BigInt>], r: usize, k: usize, q: &BigInt) {
    let (lo, hi) = rows.split_at_mut(r.max(k));
    let (dst, src) = if r > k { (&mut hi[0], &lo[k]) } else { (&mut lo[r], &hi[0]) };
    for (d, s) in dst.iter_mut().zip(src) {
        *d -= q * s;
    }
}

fn negate(v: &mut [BigInt]) {
    for x in v {
        *x = -&*x;
    }
}

/// Solves `basis · x = target` over the integers.
///
/// Returns `None` when the target is outside the column lattice.
pub fn lattice_solve(basis: &IntMat, target: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if target.len() != basis.rows() {
        return input(format!(
            "target has dimension {}, basis columns have {}",
            target.len(),
            basis.rows()
        ));
    }
    let cols: Vec<Vec<BigInt>> = (0..basis.cols()).map(|j| basis.column(j)).collect();
    let lat = IntLattice::new(&cols, basis.rows(), true)?;
    let x = lat.solve(target)?;
    if let Some(x) = &x {
        if basis.mul_vec(x) != target {
            return invariant("lattice solution does not substitute back");
        }
    }
    Ok(x)
}

/// Solves `cols · x = target` over the rationals.
pub fn rational_solve(cols: &[Vec<BigRational>], target: &[BigRational]) -> Option<Vec<BigRational>> {
    let n = cols.len();
    let m = target.len();
    // augmented matrix, one row per equation
    let mut a: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=n {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m {
            break;
        }
    }
    if a[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = a[i][n].clone();
    }
    Some(x)
}

/// Basis of `{y : y · cols[j] = 0 for all j}` (the left null space).
pub fn left_null_space(cols: &[Vec<BigRational>], dim: usize) -> Vec<Vec<BigRational>> {
    // rows of the transposed system
    let mut a: Vec<Vec<BigRational>> = cols.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..dim {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in 0..dim {
                    let d = &f * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut y = vec![BigRational::zero(); dim];
            y[f] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                y[p] = -a[i][f].clone();
            }
            y
        })
        .collect()
}

/// Finds `u` rational and `z` integral with `Σ u_i·rat_cols[i] + Σ z_j·int_cols[j] = target`.
///
/// Mixed problems come up when the unknowns range over a field but membership
/// is tested in a lattice. The rational part is projected away with the left
/// null space, leaving a pure lattice problem for `z`.
pub fn solve_mixed(
    rat_cols: &[Vec<BigRational>],
    int_cols: &[Vec<BigRational>],
    target: &[BigRational],
) -> Option<(Vec<BigRational>, Vec<BigInt>)> {
    let dim = target.len();
    let proj = left_null_space(rat_cols, dim);
    let dot = |p: &[BigRational], v: &[BigRational]| -> BigRational {
        p.iter().zip(v).map(|(a, b)| a * b).sum()
    };
    let z = if int_cols.is_empty() {
        if proj.iter().any(|p| !dot(p, target).is_zero()) {
            return None;
        }
        Vec::new()
    } else {
        // rows of P·[B | c], each scaled to integers
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(proj.len());
        let mut rhs: Vec<BigInt> = Vec::with_capacity(proj.len());
        for p in &proj {
            let mut r: Vec<BigRational> = int_cols.iter().map(|c| dot(p, c)).collect();
            r.push(dot(p, target));
            let l = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let mut ints: Vec<BigInt> = r.iter().map(|x| (x * &l).to_integer()).collect();
            rhs.push(ints.pop().unwrap());
            rows.push(ints);
        }
        let cols: Vec<Vec<BigInt>> = (0..int_cols.len())
            .map(|j| rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        let lat = IntLattice::new(&cols, rhs.len(), true).ok()?;
        lat.solve(&rhs).ok()??
    };
    let mut rest = target.to_vec();
    for (zj, c) in z.iter().zip(int_cols) {
        let zq = BigRational::from_integer(zj.clone());
        for (r, ci) in rest.iter_mut().zip(c) {
            *r -= &zq * ci;
        }
    }
    let u = rational_solve(rat_cols, &rest)?;
    Some((u, z))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn check_increasing(a: &[u64]) -> Result<()> {
    if a.is_empty() {
        return input("binomial determinant needs at least one entry");
    }
    if a[0] == 0 || a.windows(2).any(|w| w[0] >= w[1]) {
        return input("entries must be positive and strictly increasing");
    }
    Ok(())
}

/// `∏_{i<j}(a_j − a_i) / (p!(p−1)!⋯2!)`.
pub fn binom_det_formula(a: &[u64]) -> Result<BigInt> {
    check_increasing(a)?;
    let mut num = BigInt::one();
    for j in 0..a.len() {
        for i in 0..j {
            num *= BigInt::from(a[j] - a[i]);
        }
    }
    let mut den = BigInt::one();
    let mut fact = BigInt::one();
    for k in 1..a.len() as u64 {
        fact *= BigInt::from(k);
        den *= &fact;
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return invariant("closed form is not an integer");
    }
    Ok(q)
}

/// Determinant of `[binom(a_i, j)]` by fraction-free (Bareiss) elimination.
pub fn binom_det_elimination(a: &[u64]) -> Result<BigInt> {
    check_increasing(a)?;
    let n = a.len();
    let mut m: Vec<Vec<BigInt>> = a
        .iter()
        .map(|&ai| (0..n as u64).map(|j| binomial(ai, j)).collect())
        .collect();
    Ok(bareiss(&mut m))
}

/// Determinant of a square integer matrix; consumes the working copy.
pub fn bareiss(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &m[n - 1][n - 1]
}

/// The binomial determinant, computed both ways and cross-checked.
pub fn binom_det(a: &[u64]) -> Result<BigInt> {
    let f = binom_det_formula(a)?;
    let e = binom_det_elimination(a)?;
    if f != e {
        return invariant(format!("binomial determinant: formula {f} != elimination {e}"));
    }
    if !f.is_positive() {
        return invariant("binomial determinant is not positive");
    }
    Ok(f)
}

/// Frobenius number `j1·j2 − j1 − j2` of two coprime generators.
pub fn frobenius_pair(j1: u64, j2: u64) -> Result<i64> {
    if j1 == 0 || j2 == 0 {
        return input("Frobenius number needs positive generators");
    }
    if j1.gcd(&j2) != 1 {
        return input(format!("{j1} and {j2} are not coprime"));
    }
    let (a, b) = (j1 as i64, j2 as i64);
    Ok(a * b - a - b)
}
