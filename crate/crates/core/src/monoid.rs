//! Affine monoids inside `Z^d`, written additively.
//!
//! A monoid is stored by its generators. Positivity is decided once at
//! construction by Fourier–Motzkin elimination, and the resulting integral
//! functional `λ` grades everything else: membership search, degree bounds
//! and enumeration.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{input, invariant, Error, Result};
use crate::intlin::{frobenius_pair, rational_solve, IntLattice};

pub type Vector = Vec<i64>;

/// Desk-scale limits for the exact cone computations.
pub const MAX_FACE_DIM: usize = 4;
pub const MAX_FACE_GENS: usize = 16;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn vadd(a: &[i64], b: &[i64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[i64], b: &[i64]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(k: i64, a: &[i64]) -> Vector {
    a.iter().map(|x| k * x).collect()
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Positivity {
    /// Integral `λ` with `λ·g ≥ 1` for every generator.
    Positive { functional: Vector },
    /// A nonzero unit `u` together with multiplicities writing `−u`.
    Unit { unit: Vector, negative: Vec<u64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineMonoid {
    dim: usize,
    gens: Vec<Vector>,
    positivity: Positivity,
}

impl AffineMonoid {
    /// Builds `⟨gens⟩ ⊆ Z^dim`; zero vectors and duplicates are dropped.
    pub fn new(dim: usize, gens: Vec<Vector>) -> Result<Self> {
        if dim == 0 {
            return input("monoid dimension must be positive");
        }
        if let Some(g) = gens.iter().find(|g| g.len() != dim) {
            return input(format!("generator {g:?} is not in Z^{dim}"));
        }
        let set: BTreeSet<Vector> = gens.into_iter().filter(|g| g.iter().any(|&x| x != 0)).collect();
        let gens: Vec<Vector> = set.into_iter().collect();
        let positivity = fourier_motzkin(dim, &gens)?;
        Ok(AffineMonoid { dim, gens, positivity })
    }

    /// `N^d` with the unit vectors as generators.
    pub fn free(dim: usize) -> Self {
        let gens = (0..dim)
            .map(|i| {
                let mut e = vec![0; dim];
                e[i] = 1;
                e
            })
            .collect();
        AffineMonoid::new(dim, gens).expect("free monoid")
    }

    /// A submonoid of `N` from positive integers.
    pub fn numerical(gens: &[i64]) -> Result<Self> {
        AffineMonoid::new(1, gens.iter().map(|&g| vec![g]).collect())
    }

    pub fn trivial(dim: usize) -> Self {
        AffineMonoid::new(dim, Vec::new()).expect("trivial monoid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Vector] {
        &self.gens
    }

    pub fn is_positive(&self) -> bool {
        matches!(self.positivity, Positivity::Positive { .. })
    }

    pub fn positivity(&self) -> &Positivity {
        &self.positivity
    }

    pub fn functional(&self) -> Option<&[i64]> {
        match &self.positivity {
            Positivity::Positive { functional } => Some(functional),
            Positivity::Unit { .. } => None,
        }
    }

    fn require_positive(&self) -> Result<&[i64]> {
        self.functional()
            .ok_or_else(|| Error::Input("monoid is not positive; supply a search bound".into()))
    }

    fn check_dim(&self, x: &[i64]) -> Result<()> {
        if x.len() != self.dim {
            return input(format!("vector {x:?} is not in Z^{}", self.dim));
        }
        Ok(())
    }

    /// `λ·x` for the positivity functional.
    pub fn degree(&self, x: &[i64]) -> Result<i64> {
        self.check_dim(x)?;
        Ok(dot(self.require_positive()?, x))
    }

    /// Multiplicities over the generators summing to `x`, if `x ∈ M`.
    ///
    /// Complete for positive monoids: the search branches on multiplicities
    /// and prunes by `λ`-degree, remembering residues already shown absent.
    pub fn contains(&self, x: &[i64]) -> Result<Option<Vec<u64>>> {
        self.check_dim(x)?;
        let lam = self.require_positive()?.to_vec();
        let degs: Vec<i64> = self.gens.iter().map(|g| dot(&lam, g)).collect();
        // gcd of the degrees still available from position i on
        let mut tail_gcd = vec![0i64; self.gens.len() + 1];
        for i in (0..self.gens.len()).rev() {
            tail_gcd[i] = tail_gcd[i + 1].gcd(&degs[i]);
        }
        let mut mult = vec![0u64; self.gens.len()];
        let mut dead = HashSet::new();
        let cx = SearchCx { lam: &lam, degs: &degs, tail_gcd: &tail_gcd, tails: &self.tail_solvers(), cap: None };
        let found = self.search(0, x.to_vec(), &cx, &mut mult, &mut dead);
        Ok(found.then(|| {
            debug_assert_eq!(self.combine(&mult), x);
            mult
        }))
    }

    /// Membership with every multiplicity capped by `bound`; works without positivity
    /// but is only complete up to the cap.
    pub fn contains_within(&self, x: &[i64], bound: u64) -> Result<Option<Vec<u64>>> {
        self.check_dim(x)?;
        if self.is_positive() {
            return self.contains(x);
        }
        let mut mult = vec![0u64; self.gens.len()];
        let mut dead = HashSet::new();
        let zeros = vec![0i64; self.dim];
        let degs = vec![0i64; self.gens.len()];
        let tail = vec![0i64; self.gens.len() + 1];
        let cx = SearchCx { lam: &zeros, degs: &degs, tail_gcd: &tail, tails: &self.tail_solvers(), cap: Some(bound) };
        let found = self.search(0, x.to_vec(), &cx, &mut mult, &mut dead);
        Ok(found.then_some(mult))
    }

    pub fn is_member(&self, x: &[i64]) -> Result<bool> {
        Ok(self.contains(x)?.is_some())
    }

    /// For each `i`, a solver for `gens[i..]` when those are linearly independent.
    fn tail_solvers(&self) -> Vec<Option<TailSolver>> {
        (0..=self.gens.len()).map(|i| TailSolver::new(&self.gens[i..], self.dim)).collect()
    }

    fn search(
        &self,
        i: usize,
        rest: Vector,
        cx: &SearchCx,
        mult: &mut [u64],
        dead: &mut HashSet<(usize, Vector)>,
    ) -> bool {
        if rest.iter().all(|&v| v == 0) {
            mult[i..].iter_mut().for_each(|m| *m = 0);
            return true;
        }
        if i == self.gens.len() {
            return false;
        }
        if let Some(t) = &cx.tails[i] {
            // the remaining multiplicities are forced
            return match t.solve(&self.gens[i..], &rest) {
                Some(k) if cx.cap.is_none_or(|c| k.iter().all(|&x| x <= c)) => {
                    mult[i..].copy_from_slice(&k);
                    true
                }
                _ => false,
            };
        }
        let d = dot(cx.lam, &rest);
        if cx.cap.is_none() && (d <= 0 || cx.tail_gcd[i] == 0 || d % cx.tail_gcd[i] != 0) {
            return false;
        }
        if dead.contains(&(i, rest.clone())) {
            return false;
        }
        let kmax = match cx.cap {
            Some(c) => c,
            None => (d / cx.degs[i]) as u64,
        };
        let g = &self.gens[i];
        for k in (0..=kmax).rev() {
            let next: Vector = rest.iter().zip(g).map(|(r, x)| r - k as i64 * x).collect();
            mult[i] = k;
            if self.search(i + 1, next, cx, mult, dead) {
                return true;
            }
        }
        mult[i] = 0;
        dead.insert((i, rest));
        false
    }

    pub fn combine(&self, mult: &[u64]) -> Vector {
        let mut x = vec![0i64; self.dim];
        for (g, &m) in self.gens.iter().zip(mult) {
            for (xi, gi) in x.iter_mut().zip(g) {
                *xi += m as i64 * gi;
            }
        }
        x
    }

    /// Whether `x` lies in the group generated by `M`.
    pub fn gp_contains(&self, x: &[i64]) -> Result<bool> {
        self.check_dim(x)?;
        let lat = self.lattice()?;
        Ok(lat.contains(&x.iter().map(|&v| BigInt::from(v)).collect::<Vec<_>>()))
    }

    fn lattice(&self) -> Result<IntLattice> {
        let gens: Vec<Vec<BigInt>> = self
            .gens
            .iter()
            .map(|g| g.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        IntLattice::new(&gens, self.dim, false)
    }

    /// All elements of `λ`-degree at most `bound`, sorted by degree then lexicographically.
    pub fn elements_up_to(&self, bound: i64) -> Result<Vec<Vector>> {
        let lam = self.require_positive()?.to_vec();
        let zero = vec![0i64; self.dim];
        let mut seen: HashSet<Vector> = HashSet::from([zero.clone()]);
        let mut frontier = vec![zero];
        while let Some(x) = frontier.pop() {
            for g in &self.gens {
                let y = vadd(&x, g);
                if dot(&lam, &y) <= bound && seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        let mut out: Vec<Vector> = seen.into_iter().collect();
        out.sort_by_key(|x| (dot(&lam, x), x.clone()));
        Ok(out)
    }

    /// `{j ∈ [1, j_max] : j·x ∈ M}`; asserts closure under addition.
    pub fn power_profile(&self, x: &[i64], j_max: u32) -> Result<Vec<u32>> {
        self.check_dim(x)?;
        let mut prof = Vec::new();
        for j in 1..=j_max {
            if self.is_member(&vscale(j as i64, x))? {
                prof.push(j);
            }
        }
        let set: HashSet<u32> = prof.iter().copied().collect();
        for &a in &prof {
            for &b in &prof {
                if a + b <= j_max && !set.contains(&(a + b)) {
                    return invariant(format!("power profile of {x:?} not closed: {a}+{b}"));
                }
            }
        }
        Ok(prof)
    }

    /// Exact cone data (dual rays); desk-scale bounds apply.
    pub fn cone(&self) -> Result<Cone> {
        if self.dim > MAX_FACE_DIM || self.gens.len() > MAX_FACE_GENS {
            return Err(Error::Capability(format!(
                "face enumeration limited to d <= {MAX_FACE_DIM} and <= {MAX_FACE_GENS} generators (got d={}, {} generators)",
                self.dim,
                self.gens.len()
            )));
        }
        Cone::new(self.dim, &self.gens)
    }

    /// The complete face lattice of `cone(M)`, from `{0}` (or the lineality
    /// face) up to the whole cone.
    pub fn faces(&self) -> Result<Vec<Face>> {
        Ok(self.cone()?.faces())
    }

    /// The submonoid generated by the listed generator indices.
    pub fn restrict(&self, members: &[usize]) -> AffineMonoid {
        let gens = members.iter().map(|&i| self.gens[i].clone()).collect();
        AffineMonoid::new(self.dim, gens).expect("restriction of a valid monoid")
    }

    /// Checks `self ⊆ other` generator by generator.
    pub fn is_submonoid_of(&self, other: &AffineMonoid) -> Result<bool> {
        if self.dim != other.dim {
            return input("monoids live in different dimensions");
        }
        for g in &self.gens {
            if !other.is_member(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

struct SearchCx<'a> {
    lam: &'a [i64],
    degs: &'a [i64],
    tail_gcd: &'a [i64],
    tails: &'a [Option<TailSolver>],
    cap: Option<u64>,
}

/// Exact solve of `Σ k_t g_t = x` for linearly independent `g_t`, through an
/// invertible square block of rows: `k = adj(S) x_S / det S`, then checked in full.
struct TailSolver {
    rows: Vec<usize>,
    adj: Vec<Vec<i128>>,
    det: i128,
}

fn det_i128(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|c| {
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &v)| v).collect()).collect();
                let s = if c % 2 == 0 { 1 } else { -1 };
                s * m[0][c] * det_i128(&minor)
            })
            .sum(),
    }
}

impl TailSolver {
    fn new(gens: &[Vector], dim: usize) -> Option<TailSolver> {
        let k = gens.len();
        if k == 0 || k > dim || k > 5 {
            return None;
        }
        let mut rows: Vec<usize> = (0..k).collect();
        loop {
            let s: Vec<Vec<i128>> = rows.iter().map(|&r| gens.iter().map(|g| g[r] as i128).collect()).collect();
            let det = det_i128(&s);
            if det != 0 {
                // adj[t][j] = cofactor of s[j][t]
                let adj = (0..k)
                    .map(|t| {
                        (0..k)
                            .map(|j| {
                                let minor: Vec<Vec<i128>> = (0..k)
                                    .filter(|&r| r != j)
                                    .map(|r| (0..k).filter(|&c| c != t).map(|c| s[r][c]).collect())
                                    .collect();
                                if (t + j) % 2 == 0 { det_i128(&minor) } else { -det_i128(&minor) }
                            })
                            .collect()
                    })
                    .collect();
                return Some(TailSolver { rows, adj, det });
            }
            // next k-subset of 0..dim in lexicographic order
            let mut p = k;
            while p > 0 && rows[p - 1] == dim - k + p - 1 {
                p -= 1;
            }
            if p == 0 {
                return None;
            }
            rows[p - 1] += 1;
            for q in p..k {
                rows[q] = rows[q - 1] + 1;
            }
        }
    }

    fn solve(&self, gens: &[Vector], x: &[i64]) -> Option<Vec<u64>> {
        let mut k = Vec::with_capacity(gens.len());
        for row in &self.adj {
            let num: i128 = row.iter().zip(&self.rows).map(|(a, &r)| a * x[r] as i128).sum();
            if num % self.det != 0 {
                return None;
            }
            let v = num / self.det;
            if v < 0 {
                return None;
            }
            k.push(v as u64);
        }
        let ok = (0..x.len()).all(|r| gens.iter().zip(&k).map(|(g, &m)| g[r] as i128 * m as i128).sum::<i128>() == x[r] as i128);
        ok.then_some(k)
    }
}

// --- positivity ----------------------------------------------------------

#[derive(Clone)]
struct FmRow {
    a: Vec<BigRational>,
    b: BigRational,
    mult: Vec<BigRational>,
}

impl FmRow {
    fn normalized(mut self) -> FmRow {
        let lead = self.a.iter().find(|x| !x.is_zero()).cloned();
        let s = match lead {
            Some(l) => l.abs(),
            None if !self.b.is_zero() => self.b.abs(),
            None => return self,
        };
        let inv = s.recip();
        self.a.iter_mut().for_each(|x| *x *= &inv);
        self.b *= &inv;
        self.mult.iter_mut().for_each(|x| *x *= &inv);
        self
    }
}

/// Decides whether some `λ` has `λ·g ≥ 1` for all generators.
///
/// Rows carry their multipliers, so an infeasible constant row hands back a
/// nonnegative relation `Σ μ_i g_i = 0`, which is the unit certificate.
fn fourier_motzkin(dim: usize, gens: &[Vector]) -> Result<Positivity> {
    let n = gens.len();
    let mut stages: Vec<Vec<FmRow>> = Vec::with_capacity(dim + 1);
    let init: Vec<FmRow> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            let mut mult = vec![q(0); n];
            mult[i] = q(1);
            FmRow { a: g.iter().map(|&x| q(x)).collect(), b: q(1), mult }
        })
        .collect();
    stages.push(init);
    for k in (0..dim).rev() {
        let cur = stages.last().unwrap();
        let mut next: Vec<FmRow> = Vec::new();
        let mut keys: HashSet<(Vec<BigRational>, BigRational)> = HashSet::new();
        let mut push = |r: FmRow, next: &mut Vec<FmRow>| {
            let r = r.normalized();
            if r.a.iter().all(|x| x.is_zero()) && !r.b.is_positive() {
                return;
            }
            if keys.insert((r.a.clone(), r.b.clone())) {
                next.push(r);
            }
        };
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for r in cur {
            match r.a[k].cmp(&q(0)) {
                std::cmp::Ordering::Greater => pos.push(r),
                std::cmp::Ordering::Less => neg.push(r),
                std::cmp::Ordering::Equal => push(r.clone(), &mut next),
            }
        }
        for p in &pos {
            for m in &neg {
                let cp = -m.a[k].clone();
                let cm = p.a[k].clone();
                let a = p.a.iter().zip(&m.a).map(|(x, y)| x * &cp + y * &cm).collect();
                let b = &p.b * &cp + &m.b * &cm;
                let mult = p.mult.iter().zip(&m.mult).map(|(x, y)| x * &cp + y * &cm).collect();
                push(FmRow { a, b, mult }, &mut next);
            }
        }
        if next.len() > 200_000 {
            return Err(Error::Capability("Fourier-Motzkin elimination grew too large".into()));
        }
        stages.push(next);
    }
    // all variables gone: surviving rows read 0 ≥ b with b > 0
    if let Some(bad) = stages.last().unwrap().first() {
        let l = bad.mult.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mu: Vec<u64> = bad.mult.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer().to_u64().unwrap()).collect();
        let j = mu.iter().position(|&m| m > 0).expect("nonzero relation");
        let mut negative = mu.clone();
        negative[j] -= 1;
        let unit = gens[j].clone();
        let mut check = vec![0i64; dim];
        for (g, &m) in gens.iter().zip(&negative) {
            for (c, x) in check.iter_mut().zip(g) {
                *c += m as i64 * x;
            }
        }
        if check != vscale(-1, &unit) {
            return invariant("unit certificate does not verify");
        }
        return Ok(Positivity::Unit { unit, negative });
    }
    // back-substitute: stage dim-k holds the rows over variables 0..k
    let mut lam: Vec<BigRational> = Vec::with_capacity(dim);
    for k in 0..dim {
        let rows = &stages[dim - k - 1];
        let mut lo: Option<BigRational> = None;
        let mut hi: Option<BigRational> = None;
        for r in rows {
            let c = &r.a[k];
            if c.is_zero() {
                continue;
            }
            let rest: BigRational = (0..k).map(|i| &r.a[i] * &lam[i]).sum();
            let bound = (&r.b - rest) / c;
            if c.is_positive() {
                if lo.as_ref().is_none_or(|l| &bound > l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| &bound < h) {
                hi = Some(bound);
            }
        }
        let v = match (lo, hi) {
            (Some(l), h) => {
                let c = l.ceil();
                if h.as_ref().is_none_or(|h| &c <= h) {
                    c
                } else {
                    l
                }
            }
            (None, Some(h)) => {
                if h >= q(0) {
                    q(0)
                } else {
                    h.floor()
                }
            }
            (None, None) => q(0),
        };
        lam.push(v);
    }
    let l = lam.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let functional: Vector = lam
        .iter()
        .map(|x| (x * BigRational::from_integer(l.clone())).to_integer().to_i64().unwrap())
        .collect();
    if gens.iter().any(|g| dot(&functional, g) < 1) {
        return invariant("positivity functional does not separate the generators");
    }
    Ok(Positivity::Positive { functional })
}

// --- cones and faces -----------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Face {
    /// Integral supporting functional, nonnegative on `M` and zero exactly on the face.
    pub functional: Vector,
    /// Indices of the generators lying on the face.
    pub members: Vec<usize>,
}

impl Face {
    /// For `x ∈ M`: whether `x` lies on this face.
    pub fn contains(&self, x: &[i64]) -> bool {
        dot(&self.functional, x) == 0
    }
}

/// Extreme rays of the dual cone, taken inside the linear span of `M`.
#[derive(Debug, Clone)]
pub struct Cone {
    dim: usize,
    gens: Vec<Vector>,
    span: Vec<Vector>,
    rays: Vec<Vector>,
}

impl Cone {
    fn new(dim: usize, gens: &[Vector]) -> Result<Cone> {
        let basis = independent_subset(gens);
        let span: Vec<Vector> = basis.iter().map(|&i| gens[i].clone()).collect();
        let r = span.len();
        if r == 0 {
            return Ok(Cone { dim, gens: gens.to_vec(), span, rays: Vec::new() });
        }
        // constraints in coordinates μ, where λ = Σ μ_k span_k
        let cons: Vec<Vector> = gens.iter().map(|g| span.iter().map(|b| dot(b, g)).collect()).collect();
        let rays_mu = double_description(r, &cons)?;
        let rays: Vec<Vector> = rays_mu
            .iter()
            .map(|mu| {
                let mut lam = vec![0i64; dim];
                for (m, b) in mu.iter().zip(&span) {
                    for (l, x) in lam.iter_mut().zip(b) {
                        *l += m * x;
                    }
                }
                primitive(lam)
            })
            .collect();
        Ok(Cone { dim, gens: gens.to_vec(), span, rays })
    }

    pub fn dual_rays(&self) -> &[Vector] {
        &self.rays
    }

    fn zero_set(&self, lam: &[i64]) -> BTreeSet<usize> {
        (0..self.gens.len()).filter(|&i| dot(lam, &self.gens[i]) == 0).collect()
    }

    pub fn faces(&self) -> Vec<Face> {
        let all: BTreeSet<usize> = (0..self.gens.len()).collect();
        let ray_sets: Vec<BTreeSet<usize>> = self.rays.iter().map(|r| self.zero_set(r)).collect();
        let mut family: BTreeSet<BTreeSet<usize>> = BTreeSet::from([all]);
        loop {
            let mut grown = family.clone();
            for f in &family {
                for z in &ray_sets {
                    grown.insert(f.intersection(z).copied().collect());
                }
            }
            if grown.len() == family.len() {
                break;
            }
            family = grown;
        }
        let mut faces: Vec<Face> = family
            .into_iter()
            .map(|set| {
                let mut lam = vec![0i64; self.dim];
                for (r, z) in self.rays.iter().zip(&ray_sets) {
                    if set.is_subset(z) {
                        lam = vadd(&lam, r);
                    }
                }
                debug_assert_eq!(self.zero_set(&lam), set);
                Face { functional: lam, members: set.into_iter().collect() }
            })
            .collect();
        faces.sort_by(|a, b| (a.members.len(), &a.members).cmp(&(b.members.len(), &b.members)));
        faces
    }

    /// Whether `z` lies in the real cone spanned by the generators.
    pub fn contains(&self, z: &[i64]) -> bool {
        if !in_span(&self.span, z) {
            return false;
        }
        self.rays.iter().all(|r| dot(r, z) >= 0)
    }

    /// Generator indices of the smallest face containing `z` (which must be in the cone).
    pub fn face_of(&self, z: &[i64]) -> Vec<usize> {
        (0..self.gens.len())
            .filter(|&i| self.rays.iter().all(|r| dot(r, z) != 0 || dot(r, &self.gens[i]) == 0))
            .collect()
    }
}

fn primitive(v: Vector) -> Vector {
    let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if g <= 1 {
        v
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

fn in_span(span: &[Vector], z: &[i64]) -> bool {
    let cols: Vec<Vec<BigRational>> = span.iter().map(|b| b.iter().map(|&x| q(x)).collect()).collect();
    let t: Vec<BigRational> = z.iter().map(|&x| q(x)).collect();
    if cols.is_empty() {
        return z.iter().all(|&x| x == 0);
    }
    rational_solve(&cols, &t).is_some()
}

/// Indices of a maximal linearly independent subset, chosen greedily.
fn independent_subset(vs: &[Vector]) -> Vec<usize> {
    let mut echelon: Vec<Vec<BigRational>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut chosen = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        let mut w: Vec<BigRational> = v.iter().map(|&x| q(x)).collect();
        for (row, &p) in echelon.iter().zip(&pivots) {
            if !w[p].is_zero() {
                let f = &w[p] / &row[p];
                for (wj, rj) in w.iter_mut().zip(row) {
                    *wj -= &f * rj;
                }
            }
        }
        if let Some(p) = w.iter().position(|x| !x.is_zero()) {
            echelon.push(w);
            pivots.push(p);
            chosen.push(i);
        }
    }
    chosen
}

/// Extreme rays of the pointed cone `{μ ∈ Q^r : c·μ ≥ 0 for c in cons}`,
/// where the constraints have full rank `r`.
fn double_description(r: usize, cons: &[Vector]) -> Result<Vec<Vector>> {
    if cons.len() > 64 {
        return Err(Error::Capability("too many constraints for double description".into()));
    }
    let init = independent_subset(cons);
    if init.len() != r {
        return invariant("constraint system is not of full rank");
    }
    // rays of the simplicial start cone are the columns of the inverse
    let mut rays: Vec<(Vector, u64)> = Vec::new();
    for j in 0..r {
        let cols: Vec<Vec<BigRational>> = (0..r)
            .map(|c| init.iter().map(|&s| q(cons[s][c])).collect())
            .collect();
        let mut e = vec![q(0); r];
        e[j] = q(1);
        let x = rational_solve(&cols, &e).expect("invertible start system");
        let l = x.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let v: Vector = x
            .iter()
            .map(|v| (v * BigRational::from_integer(l.clone())).to_integer().to_i64().unwrap())
            .collect();
        let mut zs = 0u64;
        for (k, &s) in init.iter().enumerate() {
            if k != j {
                zs |= 1 << s;
            }
        }
        rays.push((primitive(v), zs));
    }
    for (i, c) in cons.iter().enumerate() {
        if init.contains(&i) {
            continue;
        }
        let vals: Vec<i64> = rays.iter().map(|(v, _)| dot(c, v)).collect();
        let mut next: Vec<(Vector, u64)> = Vec::new();
        for (k, (v, z)) in rays.iter().enumerate() {
            match vals[k].signum() {
                1 => next.push((v.clone(), *z)),
                0 => next.push((v.clone(), *z | (1 << i))),
                _ => {}
            }
        }
        for p in 0..rays.len() {
            if vals[p] <= 0 {
                continue;
            }
            for n in 0..rays.len() {
                if vals[n] >= 0 {
                    continue;
                }
                let common = rays[p].1 & rays[n].1;
                if (common.count_ones() as usize) + 2 < r {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|w| w == p || w == n || rays[w].1 & common != common);
                if !adjacent {
                    continue;
                }
                let v: Vector = rays[n]
                    .0
                    .iter()
                    .zip(&rays[p].0)
                    .map(|(a, b)| vals[p] * a - vals[n] * b)
                    .collect();
                next.push((primitive(v), common | (1 << i)));
            }
        }
        next.sort();
        next.dedup_by(|a, b| a.0 == b.0);
        rays = next;
    }
    Ok(rays.into_iter().map(|(v, _)| v).collect())
}

// --- subintegrality --------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Yes,
    No,
    UnknownWithinBound,
}

/// Why an element does or does not have `j·z ∈ M` for all large `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PowerCertificate {
    /// `j1·z, j2·z ∈ M` with `gcd(j1, j2) = 1`, so `j·z ∈ M` for every
    /// `j ≥ threshold`.
    Coprime { j1: u32, j2: u32, threshold: i64 },
    /// No multiple of `z` can ever land in `M`: either `z` is outside the cone
    /// (`lattice_index = 0`), or multiples landing in the face of `z` must be
    /// divisible by `lattice_index > 1`. `gcd` is that of the observed profile.
    Obstructed { gcd: u32, lattice_index: u32 },
    Unknown { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ElementCertificate {
    pub element: Vector,
    pub verdict: Verdict,
    pub certificate: PowerCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubintegralityVerdict {
    pub status: Verdict,
    pub generators: Vec<ElementCertificate>,
    pub j_max: u32,
}

/// Decides whether `j·z ∈ M` for all `j ≫ 0`.
///
/// Membership of `j·z` only involves the smallest face `F` of `cone(M)`
/// containing `z`, because faces are prime complements. So the possible `j`
/// all lie in `c·Z`, with `c` the least `j` putting `j·z` in `gp(M ∩ F)`.
/// So `c > 1` certifies a negative answer exactly. When `c = 1` the profile
/// eventually contains every `j`, and a coprime pair from it bounds where.
pub fn power_certificate(m: &AffineMonoid, cone: &Cone, z: &[i64], j_max: u32) -> Result<ElementCertificate> {
    let done = |verdict, certificate| Ok(ElementCertificate { element: z.to_vec(), verdict, certificate });
    if z.iter().all(|&x| x == 0) {
        return done(Verdict::Yes, PowerCertificate::Coprime { j1: 1, j2: 2, threshold: 0 });
    }
    if !cone.contains(z) {
        return done(Verdict::No, PowerCertificate::Obstructed { gcd: 0, lattice_index: 0 });
    }
    let face = m.restrict(&cone.face_of(z));
    let lat = face.lattice()?;
    let index = (1..=j_max).find(|&j| {
        lat.contains(&z.iter().map(|&x| BigInt::from(x * j as i64)).collect::<Vec<_>>())
    });
    let Some(index) = index else {
        return done(
            Verdict::UnknownWithinBound,
            PowerCertificate::Unknown { reason: format!("no multiple of z up to {j_max} lies in the face lattice") },
        );
    };
    // membership of multiples of z can be decided inside the face
    let mut prof: Vec<u32> = Vec::new();
    let mut pair = None;
    for j in 1..=j_max {
        if face.is_member(&vscale(j as i64, z))? {
            if let Some(&j1) = prof.iter().find(|&&a| a.gcd(&j) == 1) {
                prof.push(j);
                pair = Some((j1, j));
                break;
            }
            prof.push(j);
        }
    }
    let g = prof.iter().fold(0u32, |acc, &x| acc.gcd(&x));
    if index > 1 {
        if g != 0 && g % index != 0 {
            return invariant("profile escapes the face lattice");
        }
        return done(Verdict::No, PowerCertificate::Obstructed { gcd: g, lattice_index: index });
    }
    let Some((j1, j2)) = pair else {
        return done(
            Verdict::UnknownWithinBound,
            PowerCertificate::Unknown { reason: format!("profile up to {j_max} has gcd {g}; widen j_max") },
        );
    };
    // every j past the Frobenius number of {j1, j2} is a sum of the two
    let threshold = frobenius_pair(j1 as u64, j2 as u64)? + 1;
    done(Verdict::Yes, PowerCertificate::Coprime { j1, j2, threshold })
}

fn check_extension(m: &AffineMonoid, n: &AffineMonoid) -> Result<()> {
    if !n.is_positive() {
        return input("the larger monoid must be positive");
    }
    if !m.is_submonoid_of(n)? {
        return input("sub monoid is not contained in super monoid");
    }
    Ok(())
}

/// Whether `M ⊆ N` is subintegral, checked on the generators of `N`.
///
/// Generators suffice: if `j·a` and `j·b` land in `M` for all large `j`, so
/// does `j·(a+b)`.
pub fn is_subintegral_extension(m: &AffineMonoid, n: &AffineMonoid, j_max: u32) -> Result<SubintegralityVerdict> {
    check_extension(m, n)?;
    let cone = m.cone()?;
    let mut certs = Vec::new();
    for z in n.generators() {
        certs.push(power_certificate(m, &cone, z, j_max)?);
    }
    let status = if certs.iter().any(|c| c.verdict == Verdict::No) {
        Verdict::No
    } else if certs.iter().all(|c| c.verdict == Verdict::Yes) {
        Verdict::Yes
    } else {
        Verdict::UnknownWithinBound
    };
    Ok(SubintegralityVerdict { status, generators: certs, j_max })
}

#[derive(Debug, Clone, Serialize)]
pub struct Closure {
    /// Generated by `M` and the closure elements of degree at most the bound.
    #[serde(skip)]
    pub monoid: AffineMonoid,
    /// Elements of `N` of degree at most the bound lying in the closure.
    pub elements: Vec<Vector>,
    pub degree_bound: i64,
    /// Candidate horizon the elementary fixpoint needed to agree with the filter.
    pub fixpoint_horizon: i64,
}

/// Explicit degree-truncated monoid used by the elementary fixpoint.
struct Truncated {
    lam: Vector,
    height: i64,
    set: HashSet<Vector>,
}

impl Truncated {
    fn new(m: &AffineMonoid, lam: &[i64], height: i64) -> Truncated {
        let mut t = Truncated { lam: lam.to_vec(), height, set: HashSet::from([vec![0; m.dim()]]) };
        for g in m.generators() {
            t.adjoin(g);
        }
        t
    }

    fn adjoin(&mut self, x: &[i64]) {
        let mut stack: Vec<Vector> = self.set.iter().cloned().collect();
        while let Some(y) = stack.pop() {
            let z = vadd(&y, x);
            if dot(&self.lam, &z) <= self.height && self.set.insert(z.clone()) {
                stack.push(z);
            }
        }
    }
}

/// Largest element count the elementary fixpoint may materialize.
const FIXPOINT_BUDGET: usize = 400_000;

/// Subintegral closure of `M` in `N`, truncated at `λ_N`-degree `bound`.
///
/// Two independent routes must agree on every element of degree at most `bound`:
/// (a) repeatedly adjoin `x ∈ N` with `2x, 3x` already present;
/// (b) keep the `x` whose power profile is eventually everything.
/// Route (a) explores candidates up to a horizon that is widened until it
/// reaches (b). Going past (b) would be a bug and is reported as such.
pub fn subintegral_closure(m: &AffineMonoid, n: &AffineMonoid, bound: i64, j_max: u32) -> Result<Closure> {
    check_extension(m, n)?;
    let lam = n.functional().unwrap().to_vec();
    let cands = n.elements_up_to(bound)?;
    let cone = m.cone()?;

    let mut filter: Vec<Vector> = Vec::new();
    for x in &cands {
        let c = power_certificate(m, &cone, x, j_max)?;
        match c.verdict {
            Verdict::Yes => filter.push(x.clone()),
            Verdict::No => {}
            Verdict::UnknownWithinBound => {
                return Err(Error::Bound(format!("power profile of {x:?} undecided; widen j_max")))
            }
        }
    }
    let filter_set: HashSet<Vector> = filter.iter().cloned().collect();

    let mut horizon = bound.max(1);
    loop {
        let height = 3 * horizon;
        let pool = n.elements_up_to(horizon)?;
        let mut cur = Truncated::new(m, &lam, height);
        let mut changed = true;
        while changed {
            changed = false;
            for x in &pool {
                if cur.set.contains(x) {
                    continue;
                }
                if cur.set.contains(&vscale(2, x)) && cur.set.contains(&vscale(3, x)) {
                    cur.adjoin(x);
                    changed = true;
                }
            }
            if cur.set.len() > FIXPOINT_BUDGET {
                return Err(Error::Bound("elementary fixpoint exceeded its element budget".into()));
            }
        }
        let fix: Vec<Vector> = cands.iter().filter(|x| cur.set.contains(*x)).cloned().collect();
        if let Some(x) = fix.iter().find(|x| !filter_set.contains(*x)) {
            return invariant(format!("elementary fixpoint adjoined {x:?}, which the profile filter rejects"));
        }
        if fix.len() == filter.len() {
            let mut gens: Vec<Vector> = m.generators().to_vec();
            gens.extend(filter.iter().cloned());
            let monoid = AffineMonoid::new(m.dim(), gens)?;
            return Ok(Closure { monoid, elements: filter, degree_bound: bound, fixpoint_horizon: horizon });
        }
        if horizon >= bound * j_max as i64 {
            return Err(Error::Bound(format!(
                "elementary fixpoint still short of the filter at horizon {horizon}"
            )));
        }
        horizon *= 2;
    }
}

/// First `x ∈ N∖M` of degree at most `bound` with `2x, 3x ∈ M`, if any.
pub fn elementary_witness(m: &AffineMonoid, n: &AffineMonoid, bound: i64) -> Result<Option<Vector>> {
    check_extension(m, n)?;
    for x in n.elements_up_to(bound)? {
        if !m.is_member(&x)? && m.is_member(&vscale(2, &x))? && m.is_member(&vscale(3, &x))? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// `M` is subintegrally closed in `N` as far as degree `bound` can tell.
pub fn is_subintegrally_closed(m: &AffineMonoid, n: &AffineMonoid, bound: i64) -> Result<bool> {
    Ok(elementary_witness(m, n, bound)?.is_none())
}

/// Memoized membership for one monoid; safe to share between threads.
#[derive(Debug, Default)]
pub struct MemberCache {
    map: std::sync::Mutex<HashMap<Vector, bool>>,
}

impl MemberCache {
    pub fn get_or(&self, x: &[i64], f: impl FnOnce() -> bool) -> bool {
        if let Some(&v) = self.map.lock().unwrap().get(x) {
            return v;
        }
        let v = f();
        self.map.lock().unwrap().insert(x.to_vec(), v);
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn num(g: &[i64]) -> AffineMonoid {
        AffineMonoid::numerical(g).unwrap()
    }

    fn m2(g: &[[i64; 2]]) -> AffineMonoid {
        AffineMonoid::new(2, g.iter().map(|v| v.to_vec()).collect()).unwrap()
    }

    #[test]
    fn membership_examples() {
        let m = num(&[2, 3]);
        let r = m.contains(&[7]).unwrap().unwrap();
        assert_eq!(m.combine(&r), vec![7]);
        assert_eq!(m.contains(&[1]).unwrap(), None);
        let m = m2(&[[1, 0], [1, 1], [1, 2]]);
        let r = m.contains(&[2, 1]).unwrap().unwrap();
        assert_eq!(m.combine(&r), vec![2, 1]);
    }

    #[test]
    fn positivity_examples() {
        assert_eq!(
            AffineMonoid::free(2).positivity(),
            &Positivity::Positive { functional: vec![1, 1] }
        );
        let m = num(&[1, -1]);
        assert!(!m.is_positive());
        let Positivity::Unit { unit, .. } = m.positivity() else { panic!() };
        assert_eq!(unit.len(), 1);
        let m = m2(&[[1, 2], [1, -1]]);
        let lam = m.functional().unwrap();
        assert!(m.generators().iter().all(|g| dot(lam, g) > 0));
        assert!(m.contains(&[1]).is_err());
        assert_eq!(num(&[1, -1]).contains_within(&[0], 2).unwrap(), Some(vec![0, 0]));
    }

    #[test]
    fn group_of_fractions() {
        assert!(num(&[2, 3]).gp_contains(&[1]).unwrap());
        assert!(!num(&[2]).gp_contains(&[1]).unwrap());
        assert!(m2(&[[2, 0], [0, 3]]).gp_contains(&[2, 3]).unwrap());
    }

    #[test]
    fn face_counts() {
        assert_eq!(AffineMonoid::free(2).faces().unwrap().len(), 4);
        assert_eq!(num(&[2, 3]).faces().unwrap().len(), 2);
        assert_eq!(m2(&[[1, 0], [1, 1], [0, 1]]).faces().unwrap().len(), 4);
        assert_eq!(AffineMonoid::free(3).faces().unwrap().len(), 8);
        let too_big = AffineMonoid::free(5);
        assert!(matches!(too_big.faces(), Err(Error::Capability(_))));
    }

    #[test]
    fn profiles() {
        assert_eq!(num(&[2, 3]).power_profile(&[1], 6).unwrap(), vec![2, 3, 4, 5, 6]);
        assert_eq!(num(&[2]).power_profile(&[1], 8).unwrap(), vec![2, 4, 6, 8]);
        assert_eq!(m2(&[[2, 2]]).power_profile(&[1, 1], 5).unwrap(), vec![2, 4]);
    }

    #[test]
    fn subintegral_examples() {
        let n = num(&[1]);
        let v = is_subintegral_extension(&num(&[2, 3]), &n, 64).unwrap();
        assert_eq!(v.status, Verdict::Yes);
        assert_eq!(v.generators[0].certificate, PowerCertificate::Coprime { j1: 2, j2: 3, threshold: 2 });
        let v = is_subintegral_extension(&num(&[2]), &n, 64).unwrap();
        assert_eq!(v.status, Verdict::No);
        assert_eq!(v.generators[0].certificate, PowerCertificate::Obstructed { gcd: 2, lattice_index: 2 });
        assert_eq!(is_subintegral_extension(&n, &n, 64).unwrap().status, Verdict::Yes);
        assert!(is_subintegral_extension(&n, &num(&[2]), 64).is_err());
    }

    #[test]
    fn face_obstruction_inside_full_lattice() {
        // gp is all of Z^2, but the x-axis face only reaches even multiples
        let m = m2(&[[2, 0], [1, 1], [0, 1]]);
        let v = is_subintegral_extension(&m, &AffineMonoid::free(2), 64).unwrap();
        assert_eq!(v.status, Verdict::No);
    }

    #[test]
    fn closure_examples() {
        let n = num(&[1]);
        let c = subintegral_closure(&num(&[2, 3]), &n, 10, 64).unwrap();
        assert_eq!(c.elements, n.elements_up_to(10).unwrap());
        let c = subintegral_closure(&num(&[2]), &n, 10, 64).unwrap();
        assert_eq!(c.elements, num(&[2]).elements_up_to(10).unwrap());
        // needs a wider horizon than the bound itself
        let c = subintegral_closure(&num(&[11, 13]), &n, 12, 64).unwrap();
        assert_eq!(c.elements.len(), 13);
        assert!(c.fixpoint_horizon > 12);
    }

    #[test]
    fn closedness_examples() {
        let n = num(&[1]);
        assert!(is_subintegrally_closed(&num(&[2]), &n, 12).unwrap());
        assert!(!is_subintegrally_closed(&num(&[2, 3]), &n, 12).unwrap());
        assert_eq!(elementary_witness(&num(&[3, 4, 5]), &n, 12).unwrap(), Some(vec![2]));
    }
}
