//! Quotients `R[M]/I` of monoid algebras by monomial ideals.
//!
//! Following the coefficient rings, the algebra object does the arithmetic and
//! elements are plain sparse maps. Every constructor and operation returns the
//! canonical form: no zero coefficients and no monomials inside `I`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::coeffring::{Elem, RingSpec};
use crate::error::{input, invariant, Error, Result};
use crate::ideal::MonomialIdeal;
use crate::intlin::{rational_solve, solve_mixed, IntLattice};
use crate::monoid::{vadd, AffineMonoid, MemberCache, Vector};

pub const DEFAULT_K_MAX: u32 = 16;

/// Sparse element: exponent vector ↦ nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AlgElem {
    terms: BTreeMap<Vector, Elem>,
}

impl AlgElem {
    pub fn terms(&self) -> &BTreeMap<Vector, Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> impl Iterator<Item = &Vector> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &[i64]) -> Option<&Elem> {
        self.terms.get(m)
    }
}

pub struct HodgeAlgebra {
    ring: RingSpec,
    monoid: AffineMonoid,
    ideal: MonomialIdeal,
    members: MemberCache,
    radical: OnceLock<std::result::Result<MonomialIdeal, Error>>,
}

impl Clone for HodgeAlgebra {
    fn clone(&self) -> Self {
        HodgeAlgebra::new(self.ring.clone(), self.ideal.clone()).expect("cloning a valid algebra")
    }
}

impl fmt::Debug for HodgeAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HodgeAlgebra")
            .field("ring", &self.ring)
            .field("monoid", &self.monoid)
            .field("ideal", &self.ideal.generators())
            .finish()
    }
}

impl PartialEq for HodgeAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.ideal == other.ideal
    }
}

impl Eq for HodgeAlgebra {}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilVerdict {
    pub nilpotent: bool,
    /// Least `k` with `f^k = 0`, when found within the powering bound.
    pub index: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilradicalDescription {
    /// Basis monomials are all of `M ∖ I`; this records `I`.
    pub ideal_generators: Vec<Vector>,
    /// Coefficients range over the ideal of `R` these generate.
    pub coefficient_generators: Vec<String>,
}

impl HodgeAlgebra {
    /// `ring[M]/I` where `M` is the host of `ideal`.
    pub fn new(ring: RingSpec, ideal: MonomialIdeal) -> Result<Self> {
        let monoid = ideal.host().clone();
        if !monoid.is_positive() {
            return input("Hodge algebras need a positive monoid");
        }
        Ok(HodgeAlgebra { ring, monoid, ideal, members: MemberCache::default(), radical: OnceLock::new() })
    }

    /// `ring[M]` with no quotient.
    pub fn monoid_algebra(ring: RingSpec, monoid: &AffineMonoid) -> Result<Self> {
        HodgeAlgebra::new(ring, MonomialIdeal::empty(monoid)?)
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn monoid(&self) -> &AffineMonoid {
        &self.monoid
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    /// The same monoid and ring with a different ideal.
    pub fn with_ideal(&self, ideal: MonomialIdeal) -> Result<HodgeAlgebra> {
        if ideal.host() != &self.monoid {
            return input("ideal lives in a different monoid");
        }
        HodgeAlgebra::new(self.ring.clone(), ideal)
    }

    pub fn in_ideal(&self, m: &[i64]) -> bool {
        self.members.get_or(m, || self.ideal.contains(m).expect("monomial of the right dimension"))
    }

    /// `Rad(I)`, computed once.
    pub fn radical(&self) -> Result<&MonomialIdeal> {
        self.radical
            .get_or_init(|| self.ideal.radical(crate::ideal::DEFAULT_N_MAX, 4).map(|r| r.ideal))
            .as_ref()
            .map_err(Clone::clone)
    }

    // --- construction ----------------------------------------------------

    pub fn zero(&self) -> AlgElem {
        AlgElem::default()
    }

    pub fn one(&self) -> AlgElem {
        self.constant(self.ring.one())
    }

    pub fn constant(&self, c: Elem) -> AlgElem {
        self.monomial(c, vec![0; self.monoid.dim()])
    }

    /// `c·x^m`; `m` is assumed to lie in the monoid.
    pub fn monomial(&self, c: Elem, m: Vector) -> AlgElem {
        let mut f = AlgElem::default();
        self.add_term(&mut f, m, c);
        f
    }

    /// Validated construction from `(coefficient, exponent)` pairs.
    pub fn element(&self, terms: Vec<(Elem, Vector)>) -> Result<AlgElem> {
        let mut f = AlgElem::default();
        for (c, m) in terms {
            if !self.ring.validate(&c) {
                return input(format!("coefficient {c:?} is not in {}", self.ring));
            }
            if m.len() != self.monoid.dim() || !self.monoid.is_member(&m)? {
                return input(format!("exponent {m:?} is not in the monoid"));
            }
            self.add_term(&mut f, m, c);
        }
        Ok(f)
    }

    fn add_term(&self, f: &mut AlgElem, m: Vector, c: Elem) {
        if self.ring.is_zero(&c) || self.in_ideal(&m) {
            return;
        }
        match f.terms.get_mut(&m) {
            Some(old) => {
                let s = self.ring.add(old, &c);
                if self.ring.is_zero(&s) {
                    f.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                f.terms.insert(m, c);
            }
        }
    }

    // --- arithmetic --------------------------------------------------------

    pub fn add(&self, f: &AlgElem, g: &AlgElem) -> AlgElem {
        let mut h = f.clone();
        for (m, c) in &g.terms {
            self.add_term(&mut h, m.clone(), c.clone());
        }
        h
    }

    pub fn neg(&self, f: &AlgElem) -> AlgElem {
        AlgElem { terms: f.terms.iter().map(|(m, c)| (m.clone(), self.ring.neg(c))).collect() }
    }

    pub fn sub(&self, f: &AlgElem, g: &AlgElem) -> AlgElem {
        self.add(f, &self.neg(g))
    }

    pub fn scale(&self, c: &Elem, f: &AlgElem) -> AlgElem {
        let mut h = AlgElem::default();
        for (m, a) in &f.terms {
            self.add_term(&mut h, m.clone(), self.ring.mul(c, a));
        }
        h
    }

    pub fn mul(&self, f: &AlgElem, g: &AlgElem) -> AlgElem {
        let mut h = AlgElem::default();
        for (m1, a) in &f.terms {
            for (m2, b) in &g.terms {
                self.add_term(&mut h, vadd(m1, m2), self.ring.mul(a, b));
            }
        }
        h
    }

    pub fn pow(&self, f: &AlgElem, k: u32) -> AlgElem {
        let mut acc = self.one();
        let mut base = f.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Coefficient of the identity monomial; a retraction onto `R`.
    pub fn augmentation(&self, f: &AlgElem) -> Elem {
        f.terms.get(&vec![0; self.monoid.dim()]).cloned().unwrap_or_else(|| self.ring.zero())
    }

    // --- nilpotence and units ---------------------------------------------

    /// Coefficientwise test: every coefficient on a monomial outside `Rad(I)`
    /// is nilpotent in `R`.
    ///
    /// Terms on `Rad(I) ∖ I` are nilpotent regardless of their coefficient, and
    /// the rest maps injectively to `R[M]/Rad(I)`, so for radical `I` this is
    /// exactly "all coefficients nilpotent".
    pub fn nil_criterion(&self, f: &AlgElem) -> Result<bool> {
        let rad = self.radical()?;
        for (m, c) in &f.terms {
            if !self.ring.is_nilpotent(c) && !rad.contains(m)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Least `k ≤ k_max` with `f^k = 0`.
    pub fn nil_oracle(&self, f: &AlgElem, k_max: u32) -> Option<u32> {
        let mut p = f.clone();
        for k in 1..=k_max {
            if p.is_zero() {
                return Some(k);
            }
            if k < k_max {
                p = self.mul(&p, f);
            }
        }
        None
    }

    /// Criterion and powering oracle, which must agree whenever the oracle settles.
    pub fn is_nilpotent(&self, f: &AlgElem, k_max: u32) -> Result<NilVerdict> {
        let crit = self.nil_criterion(f)?;
        let index = self.nil_oracle(f, k_max);
        match (crit, index) {
            (false, Some(k)) => invariant(format!("{} has f^{k} = 0 but fails the criterion", self.format(f))),
            (true, None) => Err(Error::Bound(format!("{} not yet zero at power {k_max}", self.format(f)))),
            _ => Ok(NilVerdict { nilpotent: crit, index }),
        }
    }

    /// A unit constant term plus a nilpotent remainder.
    pub fn is_unit(&self, f: &AlgElem) -> Result<bool> {
        let c = self.augmentation(f);
        if !self.ring.is_unit(&c) || self.ideal.is_unit() {
            return Ok(false);
        }
        self.nil_criterion(&self.sub(f, &self.constant(c)))
    }

    /// `c⁻¹ Σ (−c⁻¹ n)^k`, which stops because `n` is nilpotent.
    pub fn inverse(&self, f: &AlgElem) -> Result<AlgElem> {
        if !self.is_unit(f)? {
            return input(format!("{} is not a unit", self.format(f)));
        }
        let c = self.augmentation(f);
        let ci = self.ring.inverse(&c)?;
        let n = self.sub(f, &self.constant(c));
        let step = self.scale(&self.ring.neg(&ci), &n);
        let mut term = self.one();
        let mut sum = self.zero();
        let mut k = 0;
        while !term.is_zero() {
            sum = self.add(&sum, &term);
            term = self.mul(&term, &step);
            k += 1;
            if k > 4096 {
                return Err(Error::Bound("geometric series for the inverse did not terminate".into()));
            }
        }
        let inv = self.scale(&ci, &sum);
        if self.mul(f, &inv) != self.one() {
            return invariant("inverse does not round-trip");
        }
        Ok(inv)
    }

    /// `Nil(R)` on the basis `M ∖ I`; only for radical `I`.
    pub fn nilradical_description(&self) -> Result<NilradicalDescription> {
        if !self.ideal.is_radical()? {
            return input("the nilradical description needs a radical ideal");
        }
        Ok(NilradicalDescription {
            ideal_generators: self.ideal.generators().to_vec(),
            coefficient_generators: self.ring.nil_generators().iter().map(|c| self.ring.format(c)).collect(),
        })
    }

    /// The same quotient over `R / Nil(R)`.
    pub fn reduce_mod_nil(&self) -> Result<HodgeAlgebra> {
        HodgeAlgebra::new(self.ring.reduced(), self.ideal.clone())
    }

    /// Coefficientwise image in `reduce_mod_nil()`.
    pub fn transport(&self, target: &HodgeAlgebra, f: &AlgElem) -> AlgElem {
        let mut h = AlgElem::default();
        for (m, c) in &f.terms {
            target.add_term(&mut h, m.clone(), self.ring.reduce_elem(c));
        }
        h
    }

    // --- quotient maps and patching ---------------------------------------

    /// The quotient map from `src = R[M]/I'` with `I' ⊆ I`.
    pub fn project_from(&self, src: &HodgeAlgebra, f: &AlgElem) -> Result<AlgElem> {
        if src.ring != self.ring || src.monoid != self.monoid {
            return input("projection between unrelated algebras");
        }
        for g in src.ideal.generators() {
            if !self.in_ideal(g) {
                return input("projection target ideal does not contain the source ideal");
            }
        }
        let mut h = AlgElem::default();
        for (m, c) in &f.terms {
            self.add_term(&mut h, m.clone(), c.clone());
        }
        Ok(h)
    }

    pub fn format(&self, f: &AlgElem) -> String {
        if f.is_zero() {
            return "0".into();
        }
        f.terms
            .iter()
            .map(|(m, c)| {
                let c = self.ring.format(c);
                if m.iter().all(|&x| x == 0) {
                    c
                } else {
                    let e: Vec<String> = m.iter().map(|x| x.to_string()).collect();
                    format!("{c}*x^({})", e.join(","))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Monomials outside `I` of degree at most `bound`.
    pub fn basis_up_to(&self, bound: i64) -> Result<Vec<Vector>> {
        Ok(self.monoid.elements_up_to(bound)?.into_iter().filter(|m| !self.in_ideal(m)).collect())
    }
}

/// The Milnor square of `I = J ∩ P`: glues `f1 ∈ R[M]/J` and `f2 ∈ R[M]/P`
/// that agree in `R[M]/(J ∪ P)`.
///
/// A monomial outside `I` misses `J` or `P`, so its coefficient is read from
/// `f1` when it misses `J` and from `f2` otherwise.
pub struct MilnorSquare {
    pub top: HodgeAlgebra,
    pub left: HodgeAlgebra,
    pub right: HodgeAlgebra,
    pub corner: HodgeAlgebra,
}

impl MilnorSquare {
    pub fn new(ring: RingSpec, j: MonomialIdeal, p: MonomialIdeal) -> Result<MilnorSquare> {
        let i = j.intersect(&p)?;
        let corner = j.union(&p)?;
        Ok(MilnorSquare {
            top: HodgeAlgebra::new(ring.clone(), i)?,
            left: HodgeAlgebra::new(ring.clone(), j)?,
            right: HodgeAlgebra::new(ring.clone(), p)?,
            corner: HodgeAlgebra::new(ring, corner)?,
        })
    }

    pub fn project(&self, f: &AlgElem) -> Result<(AlgElem, AlgElem)> {
        Ok((self.left.project_from(&self.top, f)?, self.right.project_from(&self.top, f)?))
    }

    pub fn patch(&self, f1: &AlgElem, f2: &AlgElem) -> Result<AlgElem> {
        let c1 = self.corner.project_from(&self.left, f1)?;
        let c2 = self.corner.project_from(&self.right, f2)?;
        if c1 != c2 {
            return input(format!(
                "corner images differ: {} vs {}",
                self.corner.format(&c1),
                self.corner.format(&c2)
            ));
        }
        let mut f = AlgElem::default();
        for (m, c) in &f1.terms {
            self.top.add_term(&mut f, m.clone(), c.clone());
        }
        for (m, c) in &f2.terms {
            if self.left.in_ideal(m) {
                self.top.add_term(&mut f, m.clone(), c.clone());
            }
        }
        if self.project(&f)? != (f1.clone(), f2.clone()) {
            return invariant("patched element does not project back");
        }
        if self.left.nil_criterion(f1)? && self.right.nil_criterion(f2)? && !self.top.nil_criterion(&f)? {
            return invariant("nilpotent pair patched to a non-nilpotent");
        }
        Ok(f)
    }
}

/// An additive subgroup of `R` in the coordinates of `RingSpec::coords`:
/// a `Q`-span plus a `Z`-span. Residue slots are read modulo their modulus.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoeffGroup {
    pub rational: Vec<Vec<BigRational>>,
    pub integral: Vec<Vec<BigRational>>,
}

impl CoeffGroup {
    pub fn is_trivial(&self) -> bool {
        self.rational.is_empty() && self.integral.is_empty()
    }

    /// The subgroup generated by `elems`, over `Q` when `R ⊇ Q`.
    pub fn span(ring: &RingSpec, elems: &[Elem]) -> CoeffGroup {
        let vs: Vec<Vec<BigRational>> = elems.iter().filter(|e| !ring.is_zero(e)).map(|e| ring.coords(e)).collect();
        if ring.contains_q() {
            CoeffGroup { rational: vs, integral: Vec::new() }
        } else {
            CoeffGroup { rational: Vec::new(), integral: vs }
        }
    }

    pub fn sum(&self, other: &CoeffGroup) -> CoeffGroup {
        let mut g = self.clone();
        g.rational.extend(other.rational.iter().cloned());
        g.integral.extend(other.integral.iter().cloned());
        g
    }

    /// Image under multiplication by `c`.
    pub fn times(&self, ring: &RingSpec, c: &Elem) -> CoeffGroup {
        let f = |vs: &[Vec<BigRational>]| {
            vs.iter()
                .map(|v| ring.coords(&ring.mul(c, &ring.from_coords(v))))
                .filter(|v| v.iter().any(|x| !x.is_zero()))
                .collect()
        };
        CoeffGroup { rational: f(&self.rational), integral: f(&self.integral) }
    }

    /// Generators as ring elements, rational ones first.
    pub fn generators(&self, ring: &RingSpec) -> Vec<(Elem, bool)> {
        self.rational
            .iter()
            .map(|v| (ring.from_coords(v), true))
            .chain(self.integral.iter().map(|v| (ring.from_coords(v), false)))
            .collect()
    }

    fn modulus_columns(ring: &RingSpec) -> Vec<Vec<BigRational>> {
        let moduli = ring.moduli();
        let n = moduli.len();
        moduli
            .iter()
            .enumerate()
            .filter_map(|(i, m)| {
                m.map(|m| {
                    let mut v = vec![BigRational::zero(); n];
                    v[i] = BigRational::from_integer(BigInt::from(m));
                    v
                })
            })
            .collect()
    }

    pub fn contains(&self, ring: &RingSpec, x: &Elem) -> bool {
        let mut ints = self.integral.clone();
        ints.extend(CoeffGroup::modulus_columns(ring));
        solve_mixed(&self.rational, &ints, &ring.coords(x)).is_some()
    }

    /// Whether every element of `self` lies in `other`.
    ///
    /// A rational generator spans a line, which only a rational part can hold.
    pub fn is_subgroup_of(&self, ring: &RingSpec, other: &CoeffGroup) -> bool {
        self.rational.iter().all(|v| !other.rational.is_empty() && rational_solve(&other.rational, v).is_some())
            && self.integral.iter().all(|v| other.contains(ring, &ring.from_coords(v)))
    }

    pub fn same_as(&self, ring: &RingSpec, other: &CoeffGroup) -> bool {
        self.is_subgroup_of(ring, other) && other.is_subgroup_of(ring, self)
    }

    /// Fewer generators for the same group: an independent rational part and
    /// a Hermite basis for the integral part, residue moduli included.
    pub fn normalized(&self, ring: &RingSpec) -> CoeffGroup {
        let mut rational: Vec<Vec<BigRational>> = Vec::new();
        for v in &self.rational {
            if rational.is_empty() || rational_solve(&rational, v).is_none() {
                rational.push(v.clone());
            }
        }
        let mut ints = self.integral.clone();
        if ints.is_empty() {
            return CoeffGroup { rational, integral: ints };
        }
        ints.extend(CoeffGroup::modulus_columns(ring));
        let l = ints.iter().flatten().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let scaled: Vec<Vec<BigInt>> =
            ints.iter().map(|v| v.iter().map(|x| (x * &l).to_integer()).collect()).collect();
        let lat = IntLattice::new(&scaled, ring.ncoords(), false).expect("coordinates of one ring");
        let lq = BigRational::from_integer(l);
        let integral = lat
            .basis()
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone()) / &lq).collect::<Vec<_>>())
            .filter(|v| !ring.is_zero(&ring.from_coords(v)))
            .collect();
        CoeffGroup { rational, integral }
    }
}

/// Coefficients `a_i` witnessing `target = Σ a_i·g_i`.
pub type ModuleWitness = Vec<AlgElem>;

/// Whether `target` lies in `Σ A·g_i`, with `A ⊆ B` described monomialwise by
/// `a_side(m)` and the supports of the `a_i` limited to degree `bound`.
///
/// One exact linear system per call: unknowns are the multipliers of each
/// coefficient-group generator at each monomial, and residue coordinates get
/// modulus columns. `None` means no combination within the degree bound.
pub fn module_contains(
    alg: &HodgeAlgebra,
    gens: &[AlgElem],
    a_side: &dyn Fn(&Vector) -> Result<CoeffGroup>,
    target: &AlgElem,
    bound: i64,
) -> Result<Option<ModuleWitness>> {
    let ring = alg.ring();
    let basis = alg.basis_up_to(bound)?;
    // (generator index, monomial, coefficient, rational?) per column
    let mut unknowns: Vec<(usize, Vector, Elem, bool)> = Vec::new();
    for m in &basis {
        let grp = a_side(m)?;
        for (gi, _) in gens.iter().enumerate() {
            for (c, rat) in grp.generators(ring) {
                unknowns.push((gi, m.clone(), c, rat));
            }
        }
    }
    let products: Vec<AlgElem> = unknowns
        .iter()
        .map(|(gi, m, c, _)| alg.mul(&alg.monomial(c.clone(), m.clone()), &gens[*gi]))
        .collect();
    let mut slots: BTreeSet<Vector> = target.support().cloned().collect();
    for p in &products {
        slots.extend(p.support().cloned());
    }
    let slots: Vec<Vector> = slots.into_iter().collect();
    let k = ring.ncoords();
    let flat = |f: &AlgElem| -> Vec<BigRational> {
        let mut v = Vec::with_capacity(slots.len() * k);
        for s in &slots {
            match f.coeff(s) {
                Some(c) => v.extend(ring.coords(c)),
                None => v.extend(ring.coords(&ring.zero())),
            }
        }
        v
    };
    let mut rat_cols = Vec::new();
    let mut int_cols = Vec::new();
    let mut rat_idx = Vec::new();
    let mut int_idx = Vec::new();
    for (u, p) in unknowns.iter().zip(&products) {
        if u.3 {
            rat_cols.push(flat(p));
            rat_idx.push(u);
        } else {
            int_cols.push(flat(p));
            int_idx.push(u);
        }
    }
    let n_unknown_ints = int_cols.len();
    let zero = BigRational::zero();
    for (si, _) in slots.iter().enumerate() {
        for (ci, m) in ring.moduli().iter().enumerate() {
            if let Some(m) = m {
                let mut v = vec![zero.clone(); slots.len() * k];
                v[si * k + ci] = BigRational::from_integer(BigInt::from(*m));
                int_cols.push(v);
            }
        }
    }
    let Some((r, z)) = solve_mixed(&rat_cols, &int_cols, &flat(target)) else {
        return Ok(None);
    };
    let mut coeffs = vec![alg.zero(); gens.len()];
    for ((gi, m, c, _), x) in rat_idx.iter().map(|u| (*u).clone()).zip(r) {
        let cx = ring.mul(&ring.from_coords(&rational_scalar(ring, &x)), &c);
        coeffs[gi] = alg.add(&coeffs[gi], &alg.monomial(cx, m));
    }
    for ((gi, m, c, _), x) in int_idx.iter().map(|u| (*u).clone()).zip(z.into_iter().take(n_unknown_ints)) {
        let cx = ring.mul(&ring.from_bigint(&x), &c);
        coeffs[gi] = alg.add(&coeffs[gi], &alg.monomial(cx, m));
    }
    let mut check = alg.zero();
    for (a, g) in coeffs.iter().zip(gens) {
        check = alg.add(&check, &alg.mul(a, g));
    }
    if &check != target {
        return invariant("module membership witness does not re-verify");
    }
    Ok(Some(coeffs))
}

/// The scalar `x` as a ring element of a `Q`-algebra, in coordinates.
pub(crate) fn rational_scalar(ring: &RingSpec, x: &BigRational) -> Vec<BigRational> {
    let mut v = ring.coords(&ring.zero());
    v[0] = x.clone();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z4_xy() -> HodgeAlgebra {
        let h = AffineMonoid::free(2);
        HodgeAlgebra::new(RingSpec::Zmod(4), MonomialIdeal::new(&h, vec![vec![1, 1]]).unwrap()).unwrap()
    }

    fn t(a: &HodgeAlgebra, c: i64, m: &[i64]) -> AlgElem {
        a.monomial(a.ring().from_int(c), m.to_vec())
    }

    #[test]
    fn arithmetic() {
        let a = z4_xy();
        assert!(a.mul(&t(&a, 1, &[1, 0]), &t(&a, 1, &[0, 1])).is_zero());
        let f = a.add(&a.one(), &t(&a, 2, &[1, 0]));
        assert_eq!(a.pow(&f, 2), a.one());
        assert!(a.mul(&f, &a.zero()).is_zero());
        assert_eq!(a.augmentation(&a.add(&t(&a, 3, &[0, 0]), &t(&a, 2, &[1, 0]))), Elem::Res(3));
        assert_eq!(a.augmentation(&t(&a, 1, &[1, 0])), Elem::Res(0));
    }

    #[test]
    fn nilpotence() {
        let a = z4_xy();
        assert_eq!(a.is_nilpotent(&t(&a, 2, &[1, 0]), 16).unwrap(), NilVerdict { nilpotent: true, index: Some(2) });
        assert!(!a.is_nilpotent(&t(&a, 1, &[1, 0]), 16).unwrap().nilpotent);
        assert!(a.is_nilpotent(&a.zero(), 16).unwrap().nilpotent);
    }

    #[test]
    fn nilpotence_beyond_radical_ideals() {
        // (t^5) in <2,3> is not radical: t^2 has unit coefficient yet t^8 ∈ I
        let m = AffineMonoid::numerical(&[2, 3]).unwrap();
        let a = HodgeAlgebra::new(RingSpec::Zmod(2), MonomialIdeal::new(&m, vec![vec![5]]).unwrap()).unwrap();
        let f = t(&a, 1, &[2]);
        assert_eq!(a.nil_oracle(&f, 16), Some(4));
        assert!(a.nil_criterion(&f).unwrap());
        assert!(!a.ring().is_nilpotent(&a.ring().one()));
    }

    #[test]
    fn units() {
        let a = z4_xy();
        let f = a.add(&a.one(), &t(&a, 2, &[1, 0]));
        assert_eq!(a.inverse(&f).unwrap(), f);
        assert_eq!(a.inverse(&t(&a, 3, &[0, 0])).unwrap(), t(&a, 3, &[0, 0]));
        let n = AffineMonoid::free(1);
        let b = HodgeAlgebra::monoid_algebra(RingSpec::Zmod(2), &n).unwrap();
        let g = b.add(&b.one(), &t(&b, 1, &[1]));
        assert!(!b.is_unit(&g).unwrap());
        assert!(b.inverse(&g).is_err());
    }

    #[test]
    fn nilradical_and_reduction() {
        let a = z4_xy();
        assert_eq!(a.nilradical_description().unwrap().coefficient_generators, vec!["2".to_string()]);
        let r = a.reduce_mod_nil().unwrap();
        assert_eq!(r.ring(), &RingSpec::Zmod(2));
        let f = a.add(&a.one(), &t(&a, 2, &[1, 0]));
        assert_eq!(a.transport(&r, &f), r.one());
        let h = AffineMonoid::free(2);
        let bad = HodgeAlgebra::new(RingSpec::Zmod(4), MonomialIdeal::new(&h, vec![vec![2, 1]]).unwrap()).unwrap();
        assert!(bad.nilradical_description().is_err());
        let d = HodgeAlgebra::monoid_algebra(RingSpec::dual(RingSpec::Zmod(2)), &AffineMonoid::free(1)).unwrap();
        assert_eq!(d.nilradical_description().unwrap().coefficient_generators, vec!["eps".to_string()]);
    }

    #[test]
    fn milnor_patching() {
        let h = AffineMonoid::free(2);
        let x = MonomialIdeal::new(&h, vec![vec![1, 0]]).unwrap();
        let y = MonomialIdeal::new(&h, vec![vec![0, 1]]).unwrap();
        let sq = MilnorSquare::new(RingSpec::Z, x, y).unwrap();
        let f1 = sq.left.add(&sq.left.one(), &t(&sq.left, 1, &[0, 1]));
        let f2 = sq.right.add(&sq.right.one(), &t(&sq.right, 1, &[1, 0]));
        let f = sq.patch(&f1, &f2).unwrap();
        let want = sq.top.add(&sq.top.add(&sq.top.one(), &t(&sq.top, 1, &[1, 0])), &t(&sq.top, 1, &[0, 1]));
        assert_eq!(f, want);
        assert!(sq.patch(&sq.left.zero(), &sq.right.zero()).unwrap().is_zero());
        assert!(sq.patch(&f1, &t(&sq.right, 1, &[1, 0])).is_err());
    }

    #[test]
    fn module_membership() {
        let n = AffineMonoid::free(1);
        let qe = RingSpec::dual(RingSpec::Q);
        let b = HodgeAlgebra::monoid_algebra(qe.clone(), &n).unwrap();
        let eps = qe.eps().unwrap();
        let g = b.sub(&b.one(), &b.monomial(eps.clone(), vec![1]));
        let consts = |m: &Vector| -> Result<CoeffGroup> {
            Ok(if m[0] == 0 { CoeffGroup::span(&RingSpec::dual(RingSpec::Q), &[RingSpec::dual(RingSpec::Q).one()]) } else { CoeffGroup::default() })
        };
        assert!(module_contains(&b, std::slice::from_ref(&g), &consts, &g, 2).unwrap().is_some());
        let bm = b.monomial(eps, vec![1]);
        let p = b.mul(&b.mul(&b.sub(&b.one(), &bm), &b.add(&b.one(), &bm)), &b.add(&b.one(), &b.mul(&bm, &bm)));
        assert!(module_contains(&b, &[p], &consts, &b.one(), 2).unwrap().is_some());

        let z = HodgeAlgebra::monoid_algebra(RingSpec::Z, &n).unwrap();
        let zc = |m: &Vector| -> Result<CoeffGroup> {
            Ok(if m[0] == 0 { CoeffGroup::span(&RingSpec::Z, &[RingSpec::Z.one()]) } else { CoeffGroup::default() })
        };
        let gens = [t(&z, 2, &[1]), t(&z, 1, &[2])];
        assert!(module_contains(&z, &gens, &zc, &t(&z, 1, &[3]), 3).unwrap().is_none());
        assert!(module_contains(&z, &gens, &zc, &t(&z, 4, &[1]), 3).unwrap().is_some());
    }

    #[test]
    fn coefficient_groups() {
        let r = RingSpec::Zmod(4);
        let g = CoeffGroup::span(&r, &[Elem::Res(2)]);
        assert!(g.contains(&r, &Elem::Res(0)));
        assert!(!g.contains(&r, &Elem::Res(1)));
        assert!(g.times(&r, &Elem::Res(2)).is_trivial());
    }
}
