//! Subrings of `R_B[N]/I` generated by monomial terms, and subintegrality
//! questions about them.
//!
//! A subring `A = R_A[c_1 x^{m_1}, …]` is graded by the monoid, so it is
//! described completely by the additive group `A_m ⊆ R_B` of coefficients
//! allowed at each monomial `m`. Every "is this in `A`" question becomes a
//! per-monomial linear membership test, and the weak-subintegrality criterion
//! becomes one exact linear system.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{module_contains, AlgElem, CoeffGroup, HodgeAlgebra};
use crate::coeffring::{Elem, RingSpec};
use crate::error::{input, invariant, Error, Result};
use crate::intlin::{binomial, solve_mixed};
use crate::monoid::{is_subintegral_extension, vscale, AffineMonoid, Vector, Verdict};

pub const DEFAULT_P_MAX: usize = 4;
pub const DEFAULT_DEGREE: i64 = 12;
const MAX_CANDIDATES: usize = 20_000;

/// The smallest subring: `Z` in characteristic zero, `Z/n` otherwise.
pub fn prime_subring(ring: &RingSpec) -> RingSpec {
    match ring.characteristic() {
        0 => RingSpec::Z,
        n => RingSpec::Zmod(n),
    }
}

#[derive(Debug, Clone)]
pub struct MonomialSubring {
    ambient: HodgeAlgebra,
    gens: Vec<(Elem, Vector)>,
    base: RingSpec,
    bound: i64,
    table: BTreeMap<Vector, CoeffGroup>,
}

impl MonomialSubring {
    /// `base[c_i x^{m_i}]` inside `ambient`, tabulated up to degree `bound`.
    pub fn new(ambient: &HodgeAlgebra, gens: Vec<(Elem, Vector)>, base: Option<RingSpec>, bound: i64) -> Result<Self> {
        let ring = ambient.ring();
        let base = base.unwrap_or_else(|| prime_subring(ring));
        if !ring.embeds(&base) {
            return input(format!("{base} is not a subring of {ring}"));
        }
        for (c, m) in &gens {
            if !ring.validate(c) {
                return input(format!("coefficient {c:?} is not in {ring}"));
            }
            if m.len() != ambient.monoid().dim() || !ambient.monoid().is_member(m)? {
                return input(format!("exponent {m:?} is not in the ambient monoid"));
            }
        }
        let mut a = MonomialSubring { ambient: ambient.clone(), gens, base, bound, table: BTreeMap::new() };
        a.tabulate()?;
        Ok(a)
    }

    fn tabulate(&mut self) -> Result<()> {
        let ring = self.ambient.ring().clone();
        let embedded: Vec<Elem> =
            self.base.additive_gens().iter().map(|g| ring.embed(&self.base, g)).collect::<Result<_>>()?;
        let vs: Vec<Vec<BigRational>> = embedded.iter().map(|e| ring.coords(e)).collect();
        let base_group = if self.base.contains_q() {
            CoeffGroup { rational: vs, integral: Vec::new() }
        } else {
            CoeffGroup { rational: Vec::new(), integral: vs }
        };
        // constants close up into a subring of R_B
        let consts: Vec<&Elem> = self.gens.iter().filter(|(_, m)| m.iter().all(|&x| x == 0)).map(|(c, _)| c).collect();
        let mut g0 = base_group.normalized(&ring);
        let mut rounds = 0;
        loop {
            let mut next = g0.clone();
            for c in &consts {
                next = next.sum(&g0.times(&ring, c));
            }
            let next = next.normalized(&ring);
            if next.is_subgroup_of(&ring, &g0) {
                break;
            }
            g0 = next;
            rounds += 1;
            if rounds > 64 {
                return Err(Error::Capability("constant generators do not close up to a finitely generated group".into()));
            }
        }
        let dim = self.ambient.monoid().dim();
        let mut table = BTreeMap::new();
        for m in self.ambient.basis_up_to(self.bound)? {
            if m.iter().all(|&x| x == 0) {
                table.insert(m, g0.clone());
                continue;
            }
            let mut g = CoeffGroup::default();
            for (c, mi) in &self.gens {
                if mi.iter().all(|&x| x == 0) {
                    continue;
                }
                let rest: Vector = m.iter().zip(mi).map(|(a, b)| a - b).collect();
                if let Some(t) = table.get(&rest) {
                    g = g.sum(&CoeffGroup::times(t, &ring, c));
                }
            }
            table.insert(m, g.normalized(&ring));
        }
        debug_assert!(table.contains_key(&vec![0; dim]) || self.ambient.in_ideal(&vec![0; dim]));
        self.table = table;
        Ok(())
    }

    pub fn ambient(&self) -> &HodgeAlgebra {
        &self.ambient
    }

    pub fn generators(&self) -> &[(Elem, Vector)] {
        &self.gens
    }

    pub fn base(&self) -> &RingSpec {
        &self.base
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    /// `A_m`, the coefficients allowed on `x^m`.
    pub fn group(&self, m: &[i64]) -> Result<CoeffGroup> {
        if let Some(g) = self.table.get(m) {
            return Ok(g.clone());
        }
        let n = self.ambient.monoid();
        if m.len() != n.dim() {
            return input("monomial of the wrong dimension");
        }
        if n.is_member(m)? && !self.ambient.in_ideal(m) && n.degree(m)? > self.bound {
            return Err(Error::Bound(format!("monomial {m:?} lies beyond the tabulated degree {}", self.bound)));
        }
        Ok(CoeffGroup::default())
    }

    /// Coefficientwise membership; monomials beyond the table are inconclusive.
    pub fn contains(&self, f: &AlgElem) -> Result<bool> {
        let ring = self.ambient.ring();
        for (m, c) in f.terms() {
            if !self.group(m)?.contains(ring, c) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `b² ∈ A` and `b³ ∈ A`.
    pub fn is_elementary_subintegral(&self, b: &AlgElem) -> Result<bool> {
        let alg = &self.ambient;
        Ok(self.contains(&alg.pow(b, 2))? && self.contains(&alg.pow(b, 3))?)
    }

    pub fn adjoin(&self, c: Elem, m: Vector) -> Result<MonomialSubring> {
        let mut gens = self.gens.clone();
        gens.push((c, m));
        MonomialSubring::new(&self.ambient, gens, Some(self.base.clone()), self.bound)
    }

    /// Same coefficient groups at every tabulated monomial.
    pub fn same_within_bound(&self, other: &MonomialSubring) -> bool {
        let ring = self.ambient.ring();
        self.table.len() == other.table.len()
            && self
                .table
                .iter()
                .all(|(m, g)| other.table.get(m).is_some_and(|h| g.same_as(ring, h)))
    }

    /// Whether every coefficient group of `self` sits inside that of `other`.
    pub fn is_within(&self, other: &MonomialSubring) -> bool {
        let ring = self.ambient.ring();
        self.table
            .iter()
            .all(|(m, g)| other.table.get(m).is_some_and(|h| g.is_subgroup_of(ring, h)))
    }

    pub fn tabulated(&self) -> impl Iterator<Item = (&Vector, &CoeffGroup)> {
        self.table.iter()
    }
}

// --- weak subintegrality --------------------------------------------------

/// `c_1, …, c_p` with `bⁿ + Σ binom(n,i) c_i b^{n−i} ∈ A` for `1 ≤ n ≤ 2p+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakWitness {
    pub p: usize,
    pub c: Vec<AlgElem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeakOutcome {
    Found(WeakWitness),
    NotFound {
        /// Largest `p` whose system was solved.
        p_checked: usize,
        /// The table ran out before `p_max` was reached.
        bound_exhausted: bool,
        /// Supports were restricted without loss of generality (monomial `b`).
        support_complete: bool,
    },
}

impl WeakOutcome {
    pub fn witness(&self) -> Option<&WeakWitness> {
        match self {
            WeakOutcome::Found(w) => Some(w),
            WeakOutcome::NotFound { .. } => None,
        }
    }
}

/// The `n`-th condition expression.
pub fn weak_expression(alg: &HodgeAlgebra, b: &AlgElem, c: &[AlgElem], n: usize) -> AlgElem {
    let ring = alg.ring();
    let mut e = alg.pow(b, n as u32);
    for (i, ci) in c.iter().enumerate().take(n) {
        let i = i + 1;
        let k = ring.from_bigint(&binomial(n as u64, i as u64));
        e = alg.add(&e, &alg.scale(&k, &alg.mul(ci, &alg.pow(b, (n - i) as u32))));
    }
    e
}

pub fn verify_weak_witness(a: &MonomialSubring, b: &AlgElem, w: &WeakWitness) -> Result<bool> {
    for n in 1..=2 * w.p + 1 {
        if !a.contains(&weak_expression(&a.ambient, b, &w.c, n))? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn max_degree(alg: &HodgeAlgebra, f: &AlgElem) -> Result<i64> {
    let mut d = 0;
    for m in f.support() {
        d = d.max(alg.monoid().degree(m)?);
    }
    Ok(d)
}

/// Searches `p = 0, …, p_max` for a weak-subintegrality witness.
///
/// For a monomial `b = β x^z` each `c_i` may be taken to be a multiple of
/// `x^{iz}`: every condition is homogeneous of degree `n·z` in the grading,
/// so the other homogeneous parts of `c_i` can be dropped. For other `b` the
/// supports run over all monomials of degree at most `i·deg b`, which is only
/// complete up to that bound.
pub fn is_weakly_subintegral(a: &MonomialSubring, b: &AlgElem, p_max: usize) -> Result<WeakOutcome> {
    let alg = &a.ambient;
    let monomial = b.terms().len() <= 1;
    let deg_b = max_degree(alg, b)?;
    let mut p_checked = 0;
    for p in 0..=p_max {
        if (2 * p as i64 + 1) * deg_b > a.bound {
            return Ok(WeakOutcome::NotFound { p_checked, bound_exhausted: true, support_complete: monomial });
        }
        if let Some(w) = solve_weak_system(a, b, p, monomial)? {
            if !verify_weak_witness(a, b, &w)? {
                return invariant("weak witness fails direct evaluation");
            }
            return Ok(WeakOutcome::Found(w));
        }
        p_checked = p;
    }
    Ok(WeakOutcome::NotFound { p_checked, bound_exhausted: false, support_complete: monomial })
}

fn solve_weak_system(a: &MonomialSubring, b: &AlgElem, p: usize, monomial: bool) -> Result<Option<WeakWitness>> {
    let alg = &a.ambient;
    let ring = alg.ring();
    let deg_b = max_degree(alg, b)?;
    // unknown columns: (i, monomial, coefficient generator, rational?)
    let mut unknowns: Vec<(usize, Vector, Elem, bool)> = Vec::new();
    let over_q = ring.contains_q();
    for i in 1..=p {
        let support: Vec<Vector> = if monomial {
            match b.support().next() {
                Some(z) => {
                    let s = vscale(i as i64, z);
                    if alg.in_ideal(&s) {
                        Vec::new()
                    } else {
                        vec![s]
                    }
                }
                None => Vec::new(),
            }
        } else {
            alg.basis_up_to(i as i64 * deg_b)?
        };
        for s in support {
            for g in ring.additive_gens() {
                unknowns.push((i, s.clone(), g, over_q));
            }
        }
    }
    let powers: Vec<AlgElem> = (0..=2 * p + 1).map(|n| alg.pow(b, n as u32)).collect();
    // contribution of each unknown to each condition n
    let mut contrib: Vec<Vec<AlgElem>> = Vec::with_capacity(unknowns.len());
    for (i, s, g, _) in &unknowns {
        let base = alg.monomial(g.clone(), s.clone());
        let row = (1..=2 * p + 1)
            .map(|n| {
                if *i > n {
                    alg.zero()
                } else {
                    let k = ring.from_bigint(&binomial(n as u64, *i as u64));
                    alg.scale(&k, &alg.mul(&base, &powers[n - i]))
                }
            })
            .collect();
        contrib.push(row);
    }
    let mut slots: Vec<(usize, Vector)> = Vec::new();
    for n in 1..=2 * p + 1 {
        let mut mons: BTreeSet<Vector> = powers[n].support().cloned().collect();
        for row in &contrib {
            mons.extend(row[n - 1].support().cloned());
        }
        slots.extend(mons.into_iter().map(|m| (n, m)));
    }
    let k = ring.ncoords();
    let width = slots.len() * k;
    let zero = BigRational::zero();
    let slot_index: BTreeMap<(usize, Vector), usize> = slots.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let flatten = |n: usize, f: &AlgElem| -> Vec<BigRational> {
        let mut v = vec![zero.clone(); width];
        for (m, c) in f.terms() {
            let si = slot_index[&(n, m.clone())];
            for (j, x) in ring.coords(c).into_iter().enumerate() {
                v[si * k + j] = x;
            }
        }
        v
    };
    let mut rat_cols = Vec::new();
    let mut int_cols = Vec::new();
    let mut rat_of = Vec::new();
    let mut int_of = Vec::new();
    for (u, row) in unknowns.iter().zip(&contrib) {
        let mut col = vec![zero.clone(); width];
        for n in 1..=2 * p + 1 {
            for (x, y) in col.iter_mut().zip(flatten(n, &row[n - 1])) {
                *x += y;
            }
        }
        if u.3 {
            rat_cols.push(col);
            rat_of.push(u.clone());
        } else {
            int_cols.push(col);
            int_of.push(u.clone());
        }
    }
    let n_int_unknowns = int_cols.len();
    // slack: the value at each slot may be any element of A_m
    for (si, (_, m)) in slots.iter().enumerate() {
        let grp = a.group(m)?;
        for v in &grp.rational {
            let mut col = vec![zero.clone(); width];
            col[si * k..(si + 1) * k].clone_from_slice(v);
            rat_cols.push(col);
        }
        for v in &grp.integral {
            let mut col = vec![zero.clone(); width];
            col[si * k..(si + 1) * k].clone_from_slice(v);
            int_cols.push(col);
        }
        for (j, md) in ring.moduli().iter().enumerate() {
            if let Some(md) = md {
                let mut col = vec![zero.clone(); width];
                col[si * k + j] = BigRational::from_integer(BigInt::from(*md));
                int_cols.push(col);
            }
        }
    }
    let mut target = vec![zero.clone(); width];
    for n in 1..=2 * p + 1 {
        for (t, x) in target.iter_mut().zip(flatten(n, &powers[n])) {
            *t -= x;
        }
    }
    let Some((r, z)) = solve_mixed(&rat_cols, &int_cols, &target) else {
        return Ok(None);
    };
    let mut c = vec![alg.zero(); p];
    for ((i, s, g, _), x) in rat_of.into_iter().zip(r) {
        let mut coords = ring.coords(&ring.zero());
        coords[0] = x;
        let cx = ring.mul(&ring.from_coords(&coords), &g);
        c[i - 1] = alg.add(&c[i - 1], &alg.monomial(cx, s));
    }
    for ((i, s, g, _), x) in int_of.into_iter().zip(z.into_iter().take(n_int_unknowns)) {
        let cx = ring.mul(&ring.from_bigint(&x), &g);
        c[i - 1] = alg.add(&c[i - 1], &alg.monomial(cx, s));
    }
    Ok(Some(WeakWitness { p, c }))
}

// --- closures -------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureMode {
    Subintegral,
    Weak,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Adjunction {
    pub coeff: String,
    pub exp: Vector,
    /// `"elementary"` or `"weak p=…"`.
    pub rule: String,
}

#[derive(Debug, Clone)]
pub struct RingClosure {
    pub subring: MonomialSubring,
    pub adjoined: Vec<Adjunction>,
    pub candidate_degree: i64,
}

const SMALL_PRIMES: [u64; 4] = [2, 3, 5, 7];

/// Monomial terms `c·x^m` of degree at most `degree` to try adjoining.
///
/// Finite coefficient rings contribute every nonzero coefficient; otherwise
/// coefficients are `k·e` for additive generators `e` and `1 ≤ k ≤ steps`.
fn candidates(alg: &HodgeAlgebra, degree: i64, steps: u32) -> Result<Vec<(Elem, Vector)>> {
    let ring = alg.ring();
    let coeffs: Vec<Elem> = if ring.is_finite() {
        ring.enumerate()?.into_iter().filter(|c| !ring.is_zero(c)).collect()
    } else {
        let mut v = Vec::new();
        for e in ring.additive_gens() {
            for k in 1..=steps as i64 {
                v.push(ring.mul(&ring.from_int(k), &e));
            }
        }
        v
    };
    let mons = alg.basis_up_to(degree)?;
    if mons.len() * coeffs.len() > MAX_CANDIDATES {
        return Err(Error::Capability(format!(
            "{} candidate terms exceed the limit of {MAX_CANDIDATES}",
            mons.len() * coeffs.len()
        )));
    }
    let mut out = Vec::new();
    for m in &mons {
        for c in &coeffs {
            out.push((c.clone(), m.clone()));
        }
    }
    Ok(out)
}

/// Closure of `A` under elementary steps (and, in weak mode, `b` with
/// `b^p, p·b ∈ A` for a small prime `p`), over monomial candidates.
///
/// Candidates stay at degree at most a third of the table bound so that
/// `b²` and `b³` are always decidable.
pub fn subintegral_closure_ring(a: &MonomialSubring, mode: ClosureMode, steps: u32) -> Result<RingClosure> {
    let alg = a.ambient().clone();
    let ring = alg.ring().clone();
    let degree = a.bound() / 3;
    let cands = candidates(&alg, degree, steps)?;
    let mut cur = a.clone();
    let mut adjoined = Vec::new();
    'outer: loop {
        for (c, m) in &cands {
            let b = alg.monomial(c.clone(), m.clone());
            if cur.contains(&b)? {
                continue;
            }
            let mut rule = None;
            if cur.is_elementary_subintegral(&b)? {
                rule = Some("elementary".to_string());
            } else if mode == ClosureMode::Weak {
                let d = alg.monoid().degree(m)?;
                for p in SMALL_PRIMES {
                    if p as i64 * d > cur.bound() {
                        break;
                    }
                    let pb = alg.scale(&ring.from_int(p as i64), &b);
                    if cur.contains(&alg.pow(&b, p as u32))? && cur.contains(&pb)? {
                        rule = Some(format!("weak p={p}"));
                        break;
                    }
                }
            }
            if let Some(rule) = rule {
                adjoined.push(Adjunction { coeff: ring.format(c), exp: m.clone(), rule });
                cur = cur.adjoin(c.clone(), m.clone())?;
                continue 'outer;
            }
        }
        break;
    }
    if !a.is_within(&cur) {
        return invariant("closure lost elements of the original subring");
    }
    Ok(RingClosure { subring: cur, adjoined, candidate_degree: degree })
}

// --- monoid algebra extensions --------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeakGenerator {
    pub generator: Vector,
    /// `p` of the witness found, if any.
    pub witness_p: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Thm35Status {
    /// Monoid and ring-level answers agree.
    Consistent,
    /// Weakly subintegral at monomial level, yet the monoid extension is not
    /// subintegral; expected only in positive characteristic.
    CharacteristicDivergence,
    /// Same disagreement with `Z ⊆ R`, where it cannot happen.
    Violation,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct Thm35Report {
    pub monoid: Verdict,
    pub weak: Vec<WeakGenerator>,
    pub weak_all: bool,
    pub status: Thm35Status,
}

/// Compares subintegrality of `M ⊆ N` with weak subintegrality of the
/// generators of `N` as monomials over `R[M] ⊆ R[N]`.
pub fn check_thm35(ring: &RingSpec, m: &AffineMonoid, n: &AffineMonoid, j_max: u32, p_max: usize, bound: i64) -> Result<Thm35Report> {
    let verdict = is_subintegral_extension(m, n, j_max)?;
    let b_alg = HodgeAlgebra::monoid_algebra(ring.clone(), n)?;
    let gens = m.generators().iter().map(|g| (ring.one(), g.clone())).collect();
    let a = MonomialSubring::new(&b_alg, gens, Some(ring.clone()), bound)?;
    let mut weak = Vec::new();
    let mut inconclusive = verdict.status == Verdict::UnknownWithinBound;
    for z in n.generators() {
        let b = b_alg.monomial(ring.one(), z.clone());
        let out = is_weakly_subintegral(&a, &b, p_max)?;
        if let WeakOutcome::NotFound { bound_exhausted: true, .. } = out {
            inconclusive = true;
        }
        weak.push(WeakGenerator { generator: z.clone(), witness_p: out.witness().map(|w| w.p) });
    }
    let weak_all = weak.iter().all(|w| w.witness_p.is_some());
    let status = if weak_all && verdict.status == Verdict::No {
        if ring.characteristic() == 0 {
            Thm35Status::Violation
        } else {
            Thm35Status::CharacteristicDivergence
        }
    } else if inconclusive {
        Thm35Status::Inconclusive
    } else {
        Thm35Status::Consistent
    };
    Ok(Thm35Report { monoid: verdict.status, weak, weak_all, status })
}

// --- witness modules ------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessVariant {
    /// `J = (b², 1 − b x^m)`, `J′ = (b², 1 + b x^m)`.
    Pm,
    /// `J = (g², 1 + g + g²)`, `J′ = (g², 1 − g + g²)` with `g = b x^m`.
    Cyclotomic,
}

#[derive(Debug, Clone)]
pub struct WitnessModules {
    pub variant: WitnessVariant,
    pub j: Vec<AlgElem>,
    pub j_prime: Vec<AlgElem>,
    /// Generators `u·v` of `J·J′`, in the order `u ∈ J` outer, `v ∈ J′` inner.
    pub products: Vec<AlgElem>,
    /// Coefficients from `A` with `Σ a_k·products_k = 1`.
    pub certificate: Vec<AlgElem>,
}

/// Builds the pair of modules and proves `1 ∈ J·J′` with coefficients in `A`.
///
/// `(1 − g)(1 + g)(1 + g²) = 1 − g⁴` and
/// `(1 + g + g²)(1 − g + g²)(1 − g²) = 1 − g⁶` give the certificates.
/// Afterwards the general module solver has to find a combination too.
pub fn witness_modules(a: &MonomialSubring, b: &AlgElem, m: &[i64], variant: WitnessVariant) -> Result<WitnessModules> {
    let alg = a.ambient();
    let ring = alg.ring();
    if !a.is_elementary_subintegral(b)? {
        return input("witness modules need b² and b³ in the subring");
    }
    if alg.in_ideal(m) {
        return input("the monomial lies in the ideal");
    }
    let xm = alg.monomial(ring.one(), m.to_vec());
    let g = alg.mul(b, &xm);
    let one = alg.one();
    let sq = |f: &AlgElem| alg.mul(f, f);
    let (j, j_prime, outer_coeff, last_coeff) = match variant {
        WitnessVariant::Pm => {
            let b2 = sq(b);
            let x4m = alg.pow(&xm, 4);
            let c = alg.add(&one, &sq(&g));
            (vec![b2.clone(), alg.sub(&one, &g)], vec![b2, alg.add(&one, &g)], x4m, c)
        }
        WitnessVariant::Cyclotomic => {
            let g2 = sq(&g);
            let u = alg.add(&alg.add(&one, &g), &g2);
            let v = alg.add(&alg.sub(&one, &g), &g2);
            (vec![g2.clone(), u], vec![g2.clone(), v], g2.clone(), alg.sub(&one, &g2))
        }
    };
    let mut products = Vec::new();
    for u in &j {
        for v in &j_prime {
            products.push(alg.mul(u, v));
        }
    }
    // products: [J0·J'0, J0·J'1, J1·J'0, J1·J'1]
    let certificate = vec![outer_coeff, alg.zero(), alg.zero(), last_coeff];
    let mut total = alg.zero();
    for (c, p) in certificate.iter().zip(&products) {
        total = alg.add(&total, &alg.mul(c, p));
    }
    if total != one {
        return invariant("witness identity does not evaluate to 1");
    }
    for c in &certificate {
        if !a.contains(c)? {
            return invariant("certificate coefficient is not in the subring");
        }
    }
    let mut deg = 0;
    for c in &certificate {
        deg = deg.max(max_degree(alg, c)?);
    }
    let table = |mono: &Vector| a.group(mono);
    if module_contains(alg, &products, &table, &one, deg)?.is_none() {
        return invariant("module solver misses the unit in J·J′");
    }
    Ok(WitnessModules { variant, j, j_prime, products, certificate })
}
