//! Monomial ideals of positive affine monoids.
//!
//! An ideal is kept as its minimal generating set, which is unique for
//! positive monoids, so structural equality is ideal equality.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{input, invariant, Error, Result};
use crate::monoid::{dot, vadd, vscale, vsub, AffineMonoid, Face, Vector};

pub const DEFAULT_N_MAX: u32 = 32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    host: AffineMonoid,
    gens: Vec<Vector>,
}

/// `x = g + m` with `g` a generator and `m ∈ host`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipCertificate {
    pub generator: Vector,
    pub cofactor: Vector,
}

impl MonomialIdeal {
    pub fn new(host: &AffineMonoid, gens: Vec<Vector>) -> Result<Self> {
        if !host.is_positive() {
            return input("ideals are supported in positive monoids only");
        }
        for g in &gens {
            if !host.is_member(g)? {
                return input(format!("ideal generator {g:?} is not in the host monoid"));
            }
        }
        let set: BTreeSet<Vector> = gens.into_iter().collect();
        let cand: Vec<Vector> = set.into_iter().collect();
        let mut keep = Vec::new();
        for (i, g) in cand.iter().enumerate() {
            let redundant = cand
                .iter()
                .enumerate()
                .any(|(j, h)| j != i && host.is_member(&vsub(g, h)).unwrap_or(false));
            if !redundant {
                keep.push(g.clone());
            }
        }
        Ok(MonomialIdeal { host: host.clone(), gens: keep })
    }

    pub fn empty(host: &AffineMonoid) -> Result<Self> {
        MonomialIdeal::new(host, Vec::new())
    }

    /// `M ∖ {0}`.
    pub fn maximal(host: &AffineMonoid) -> Result<Self> {
        MonomialIdeal::new(host, host.generators().to_vec())
    }

    /// `M ∖ F`, generated by the generators off the face.
    pub fn of_face(host: &AffineMonoid, face: &Face) -> Result<Self> {
        let gens = (0..host.generators().len())
            .filter(|i| !face.members.contains(i))
            .map(|i| host.generators()[i].clone())
            .collect();
        MonomialIdeal::new(host, gens)
    }

    pub fn host(&self) -> &AffineMonoid {
        &self.host
    }

    pub fn generators(&self) -> &[Vector] {
        &self.gens
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Whether the ideal is all of `M` (contains `0`).
    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.iter().all(|&x| x == 0))
    }

    pub fn contains_cert(&self, x: &[i64]) -> Result<Option<MembershipCertificate>> {
        if x.len() != self.host.dim() {
            return input(format!("vector {x:?} has the wrong dimension"));
        }
        for g in &self.gens {
            let m = vsub(x, g);
            if self.host.is_member(&m)? {
                return Ok(Some(MembershipCertificate { generator: g.clone(), cofactor: m }));
            }
        }
        Ok(None)
    }

    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        Ok(self.contains_cert(x)?.is_some())
    }

    /// Host elements of degree at most `bound` that lie in the ideal.
    pub fn members_up_to(&self, bound: i64) -> Result<Vec<Vector>> {
        let mut out = Vec::new();
        for x in self.host.elements_up_to(bound)? {
            if self.contains(&x)? {
                out.push(x);
            }
        }
        Ok(out)
    }

    fn same_host(&self, other: &MonomialIdeal) -> Result<()> {
        if self.host != other.host {
            return input("ideals live in different monoids");
        }
        Ok(())
    }

    /// The ideal generated by both generator sets.
    pub fn union(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_host(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        MonomialIdeal::new(&self.host, gens)
    }

    /// `I1 ∩ I2`, searched up to degree `max(deg g1 + deg g2)` over generator pairs.
    ///
    /// In `N^d` that bound is exact (least common multiples never exceed the
    /// sum); elsewhere it is a bound-limited answer.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.same_host(other)?;
        let mut bound = 0;
        for a in &self.gens {
            for b in &other.gens {
                bound = bound.max(self.host.degree(a)? + self.host.degree(b)?);
            }
        }
        let mut gens = Vec::new();
        for x in self.host.elements_up_to(bound)? {
            if self.contains(&x)? && other.contains(&x)? {
                gens.push(x);
            }
        }
        MonomialIdeal::new(&self.host, gens)
    }

    /// The host faces that miss the ideal entirely.
    ///
    /// A face `F` meets `I` iff some generator lies on it, since `g + m ∈ F`
    /// forces `g ∈ F`.
    pub fn free_faces(&self) -> Result<Vec<Face>> {
        Ok(self
            .host
            .faces()?
            .into_iter()
            .filter(|f| self.gens.iter().all(|g| !f.contains(g)))
            .collect())
    }

    /// Membership in `Rad(I) = ∩ {𝔭_F : F ∩ I = ∅}`.
    pub fn in_radical(&self, x: &[i64]) -> Result<bool> {
        Ok(self.free_faces()?.iter().all(|f| !f.contains(x)))
    }

    /// Smallest `n ≤ n_max` with `n·x ∈ I`.
    pub fn root_index(&self, x: &[i64], n_max: u32) -> Result<Option<u32>> {
        for n in 1..=n_max {
            if self.contains(&vscale(n as i64, x))? {
                return Ok(Some(n));
            }
        }
        Ok(None)
    }

    /// `Rad(I)` with exact generators, cross-checked against the power oracle
    /// on every host element of degree at most `bound`.
    ///
    /// An element lies off all `I`-free faces iff the generators used in any
    /// representation of it do. So the radical is generated by the sums
    /// `Σ_{i∈T} g_i` over minimal index sets `T` not contained in a free face.
    pub fn radical(&self, n_max: u32, bound: i64) -> Result<Radical> {
        let free = self.free_faces()?;
        let n = self.host.generators().len();
        let covered = |t: &[usize]| free.iter().any(|f| t.iter().all(|i| f.members.contains(i)));
        let mut minimal: Vec<Vec<usize>> = Vec::new();
        for mask in 1u32..(1u32 << n) {
            let t: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
            if covered(&t) {
                continue;
            }
            if minimal.iter().any(|s| s.iter().all(|i| t.contains(i))) {
                continue;
            }
            minimal.push(t);
        }
        let mut gens: Vec<Vector> = minimal
            .iter()
            .map(|t| t.iter().fold(vec![0; self.host.dim()], |acc, &i| vadd(&acc, &self.host.generators()[i])))
            .collect();
        if free.is_empty() {
            // no free face at all: even {0} meets I, so I is the unit ideal
            gens = vec![vec![0; self.host.dim()]];
        }
        let rad = MonomialIdeal::new(&self.host, gens)?;
        let mut max_root = 0;
        for x in self.host.elements_up_to(bound)? {
            let face = free.iter().all(|f| !f.contains(&x));
            let power = self.root_index(&x, n_max)?;
            let exact = rad.contains(&x)?;
            if face != power.is_some() {
                return if face {
                    Err(Error::Bound(format!("no root of {x:?} in I up to n = {n_max}")))
                } else {
                    invariant(format!("power oracle finds {x:?} in the radical, faces do not"))
                };
            }
            if face != exact {
                return invariant(format!("radical generators disagree with faces at {x:?}"));
            }
            max_root = max_root.max(power.unwrap_or(0));
        }
        Ok(Radical { ideal: rad, free_faces: free, checked_degree: bound, max_root_index: max_root })
    }

    /// Exact: `I` is radical iff every generator of `Rad(I)` lies in `I`.
    pub fn is_radical(&self) -> Result<bool> {
        let rad = self.radical(DEFAULT_N_MAX, 0)?;
        for g in rad.ideal.generators() {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Minimal primes of a radical ideal, one per maximal `I`-free face.
    ///
    /// `I = ∅` gives the single "prime" `∅` of the whole face; the unit ideal
    /// gives the empty list. The intersection is re-checked against `I` up to
    /// degree `bound`.
    pub fn prime_decomposition(&self, bound: i64) -> Result<Vec<MonomialIdeal>> {
        if !self.is_radical()? {
            return input("prime decomposition needs a radical ideal");
        }
        let free = self.free_faces()?;
        let maximal: Vec<&Face> = free
            .iter()
            .filter(|f| {
                !free.iter().any(|g| g.members.len() > f.members.len() && f.members.iter().all(|i| g.members.contains(i)))
            })
            .collect();
        let primes: Vec<MonomialIdeal> =
            maximal.into_iter().map(|f| MonomialIdeal::of_face(&self.host, f)).collect::<Result<_>>()?;
        for x in self.host.elements_up_to(bound)? {
            let mut all = true;
            for p in &primes {
                if !p.contains(&x)? {
                    all = false;
                    break;
                }
            }
            if all != self.contains(&x)? {
                return invariant(format!("prime decomposition misses at {x:?}"));
            }
        }
        Ok(primes)
    }

    /// Whether the complement is closed under addition, checked on elements of degree ≤ `bound`.
    pub fn complement_closed(&self, bound: i64) -> Result<bool> {
        let out: Vec<Vector> = self
            .host
            .elements_up_to(bound)?
            .into_iter()
            .filter(|x| !self.contains(x).unwrap_or(true))
            .collect();
        for a in &out {
            for b in &out {
                let s = vadd(a, b);
                if self.host.degree(&s)? <= bound && self.contains(&s)? {
                    return Ok(false);
                }
            }
        }
        Ok(!self.is_unit())
    }
}

#[derive(Debug, Clone)]
pub struct Radical {
    pub ideal: MonomialIdeal,
    pub free_faces: Vec<Face>,
    pub checked_degree: i64,
    /// Largest minimal `n` with `n·x ∈ I` seen during the cross-check.
    pub max_root_index: u32,
}

impl AffineMonoid {
    /// `𝔭_F = M ∖ F` for every proper face `F`.
    pub fn prime_ideals(&self) -> Result<Vec<MonomialIdeal>> {
        let n = self.generators().len();
        self.faces()?
            .iter()
            .filter(|f| f.members.len() < n)
            .map(|f| MonomialIdeal::of_face(self, f))
            .collect()
    }
}

/// `I ∩ M` for an ideal `I` of `N` and a submonoid `M ⊆ N`.
#[derive(Debug, Clone)]
pub struct Contraction {
    pub ideal: MonomialIdeal,
    pub degree_bound: i64,
    /// Doubling the bound produced no new minimal generators (heuristic).
    pub stable: bool,
}

pub fn intersect_submonoid(i: &MonomialIdeal, m: &AffineMonoid, bound: i64) -> Result<Contraction> {
    let n = i.host();
    if !m.is_submonoid_of(n)? {
        return input("submonoid is not contained in the ideal's host");
    }
    let lam = n.functional().unwrap().to_vec();
    let collect = |b: i64| -> Result<Vec<Vector>> {
        let mut gens = Vec::new();
        for x in elements_by(m, &lam, b) {
            if i.contains(&x)? {
                gens.push(x);
            }
        }
        Ok(MonomialIdeal::new(m, gens)?.gens)
    };
    let small = collect(bound)?;
    let wide = collect(2 * bound.max(1))?;
    let stable = small == wide;
    Ok(Contraction { ideal: MonomialIdeal::new(m, small)?, degree_bound: bound, stable })
}

/// Elements of `m` of degree at most `bound` under an outside functional.
fn elements_by(m: &AffineMonoid, lam: &[i64], bound: i64) -> Vec<Vector> {
    let zero = vec![0i64; m.dim()];
    let mut seen: BTreeSet<Vector> = BTreeSet::from([zero.clone()]);
    let mut stack = vec![zero];
    while let Some(x) = stack.pop() {
        for g in m.generators() {
            let y = vadd(&x, g);
            if dot(lam, &y) <= bound && seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.into_iter().collect()
}
