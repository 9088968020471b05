//! Invertible `A`-submodules of `B` and the group `I(A,B)`.
//!
//! Over monoid algebras modules are finite generator lists together with an
//! inverse and a certificate `1 = Σ a_ij·g_i·h_j`, `a_ij ∈ A`. Equality is
//! mutual containment decided by the module solver. The `finite` submodule
//! enumerates whole groups for small finite rings.

pub mod finite;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{module_contains, rational_scalar, AlgElem, HodgeAlgebra};
use crate::coeffring::{Elem, RingSpec};
use crate::error::{input, invariant, Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monoid::{is_subintegrally_closed, AffineMonoid, Vector};
use crate::subint::{max_degree, subintegral_closure_ring, witness_modules, ClosureMode, MonomialSubring, WitnessVariant};

pub use finite::{
    brute_force_i, ker_main_coset_order, standard_squares, verify_lemma46, verify_six_term, FiniteExtension, FiniteRing,
    FiniteSquare, IGroup, Lemma46Report, SixTermReport,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    /// Fail beats inconclusive beats pass.
    pub fn combine(self, other: Status) -> Status {
        use Status::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            _ => Pass,
        }
    }

    pub fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// A module `Σ A·g_i` with inverse `Σ A·h_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvertibleModule {
    gens: Vec<AlgElem>,
    inverse: Vec<AlgElem>,
    /// `a_ij` stored row-major: index `i·|h| + j`.
    certificate: Vec<AlgElem>,
}

impl InvertibleModule {
    /// Checks the certificate: every `g_i·h_j` and every `a_ij` lies in `A`,
    /// and `Σ a_ij·g_i·h_j = 1`.
    pub fn new(a: &MonomialSubring, gens: Vec<AlgElem>, inverse: Vec<AlgElem>, certificate: Vec<AlgElem>) -> Result<Self> {
        let alg = a.ambient();
        if gens.is_empty() || inverse.is_empty() || certificate.len() != gens.len() * inverse.len() {
            return input("certificate shape does not match the generator lists");
        }
        let mut total = alg.zero();
        for (i, g) in gens.iter().enumerate() {
            for (j, h) in inverse.iter().enumerate() {
                let gh = alg.mul(g, h);
                if !a.contains(&gh)? {
                    return invariant(format!("{} is not in A", alg.format(&gh)));
                }
                let c = &certificate[i * inverse.len() + j];
                if !a.contains(c)? {
                    return invariant(format!("certificate coefficient {} is not in A", alg.format(c)));
                }
                total = alg.add(&total, &alg.mul(c, &gh));
            }
        }
        if total != alg.one() {
            return invariant("certificate does not evaluate to 1");
        }
        Ok(InvertibleModule { gens, inverse, certificate })
    }

    pub fn generators(&self) -> &[AlgElem] {
        &self.gens
    }

    pub fn inverse_generators(&self) -> &[AlgElem] {
        &self.inverse
    }

    pub fn certificate(&self) -> &[AlgElem] {
        &self.certificate
    }
}

/// `P·Q` with certificate `a_ij·b_kl` on `(g_i q_k)(h_j r_l)`.
pub fn module_mul(a: &MonomialSubring, p: &InvertibleModule, q: &InvertibleModule) -> Result<InvertibleModule> {
    let alg = a.ambient();
    let mut gens = Vec::new();
    for g in &p.gens {
        for k in &q.gens {
            gens.push(alg.mul(g, k));
        }
    }
    let mut inverse = Vec::new();
    for h in &p.inverse {
        for r in &q.inverse {
            inverse.push(alg.mul(h, r));
        }
    }
    let (pi, qi) = (p.inverse.len(), q.inverse.len());
    let mut cert = Vec::with_capacity(gens.len() * inverse.len());
    for i in 0..p.gens.len() {
        for k in 0..q.gens.len() {
            for j in 0..pi {
                for l in 0..qi {
                    cert.push(alg.mul(&p.certificate[i * pi + j], &q.certificate[k * qi + l]));
                }
            }
        }
    }
    InvertibleModule::new(a, gens, inverse, cert)
}

/// Swaps the generator lists and transposes the certificate.
pub fn module_inverse(a: &MonomialSubring, p: &InvertibleModule) -> Result<InvertibleModule> {
    let (ng, nh) = (p.gens.len(), p.inverse.len());
    let mut cert = Vec::with_capacity(ng * nh);
    for j in 0..nh {
        for i in 0..ng {
            cert.push(p.certificate[i * nh + j].clone());
        }
    }
    InvertibleModule::new(a, p.inverse.clone(), p.gens.clone(), cert)
}

fn solve_degree(a: &MonomialSubring, gens: &[AlgElem], target: &AlgElem) -> Result<i64> {
    let alg = a.ambient();
    let mut d = 0;
    for g in gens {
        d = d.max(max_degree(alg, g)?);
    }
    Ok((a.bound() - d).max(max_degree(alg, target)?).min(a.bound()))
}

/// Whether `target ∈ Σ A·gens`, with multipliers up to the table bound.
pub fn in_module(a: &MonomialSubring, gens: &[AlgElem], target: &AlgElem) -> Result<bool> {
    let table = |m: &Vector| a.group(m);
    let bound = solve_degree(a, gens, target)?;
    Ok(module_contains(a.ambient(), gens, &table, target, bound)?.is_some())
}

/// All generators lie in `A` and `1` lies in the module.
pub fn is_identity(a: &MonomialSubring, p: &InvertibleModule) -> Result<bool> {
    for g in &p.gens {
        if !a.contains(g)? {
            return Ok(false);
        }
    }
    in_module(a, &p.gens, &a.ambient().one())
}

/// Mutual containment of generator sets.
pub fn same_module(a: &MonomialSubring, p: &InvertibleModule, q: &InvertibleModule) -> Result<bool> {
    for g in &p.gens {
        if !in_module(a, &q.gens, g)? {
            return Ok(false);
        }
    }
    for g in &q.gens {
        if !in_module(a, &p.gens, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `θ(b) = A·b` for a unit `b`.
pub fn theta(a: &MonomialSubring, b: &AlgElem) -> Result<InvertibleModule> {
    let alg = a.ambient();
    if !alg.is_unit(b)? {
        return input(format!("{} is not a unit", alg.format(b)));
    }
    let inv = alg.inverse(b)?;
    InvertibleModule::new(a, vec![b.clone()], vec![inv], vec![alg.one()])
}

fn rational(ring: &RingSpec, q: &BigRational) -> Elem {
    ring.from_coords(&rational_scalar(ring, q))
}

/// `Σ b^k/k!` for nilpotent `b` over a ring containing `Q`.
pub fn exp_elem(alg: &HodgeAlgebra, b: &AlgElem) -> Result<AlgElem> {
    let ring = alg.ring();
    if !ring.contains_q() {
        return Err(Error::Capability(format!("exponentials need rational coefficients, not {ring}")));
    }
    if !alg.nil_criterion(b)? {
        return input(format!("{} is not nilpotent", alg.format(b)));
    }
    let mut sum = alg.zero();
    let mut term = alg.one();
    let mut k = 0u64;
    while !term.is_zero() {
        sum = alg.add(&sum, &term);
        k += 1;
        if k > 4096 {
            return Err(Error::Bound("exponential series did not terminate".into()));
        }
        let inv_k = BigRational::new(BigInt::one(), BigInt::from(k));
        term = alg.scale(&rational(ring, &inv_k), &alg.mul(&term, b));
    }
    Ok(sum)
}

/// `A·exp(b)` with inverse `A·exp(−b)`.
pub fn exp_submodule(a: &MonomialSubring, b: &AlgElem) -> Result<InvertibleModule> {
    let alg = a.ambient();
    let e = exp_elem(alg, b)?;
    let f = exp_elem(alg, &alg.neg(b))?;
    if alg.mul(&e, &f) != alg.one() {
        return invariant("exp(b)·exp(−b) ≠ 1");
    }
    InvertibleModule::new(a, vec![e], vec![f], vec![alg.one()])
}

/// `exp(b)·exp(b′)` and `exp(b + b′)` give the same module.
pub fn exp_law_holds(a: &MonomialSubring, b: &AlgElem, b2: &AlgElem) -> Result<bool> {
    let lhs = module_mul(a, &exp_submodule(a, b)?, &exp_submodule(a, b2)?)?;
    let rhs = exp_submodule(a, &a.ambient().add(b, b2))?;
    same_module(a, &lhs, &rhs)
}

// --- the kernel of the comparison map ---------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct KerMainReport {
    pub trivial: bool,
    pub reduced: bool,
    /// `N ∖ I` and `M ∖ I` agree up to the degree bound.
    pub supports_agree: bool,
    pub witness: Option<String>,
    pub witness_exp: Option<Vector>,
    pub degree_bound: i64,
}

/// Whether `(1 + Nil(R)[N]/I) / (1 + Nil(R)[M]/(I∩M))` is trivial.
///
/// Trivial when `R` is reduced; otherwise nontrivial exactly when some
/// `z ∈ N ∖ M` lies outside `I`, witnessed by `1 + n·x^z`.
pub fn ker_main_trivial(ring: &RingSpec, m: &AffineMonoid, n: &AffineMonoid, i: &MonomialIdeal, bound: i64) -> Result<KerMainReport> {
    if i.host() != n {
        return input("the ideal must live in N");
    }
    if !m.is_submonoid_of(n)? {
        return input("M is not a submonoid of N");
    }
    // lowest degree first, then x before y
    let mut gap: Option<(i64, std::cmp::Reverse<Vector>)> = None;
    for z in n.elements_up_to(bound)? {
        if !i.contains(&z)? && !m.is_member(&z)? {
            let key = (n.degree(&z)?, std::cmp::Reverse(z));
            if gap.as_ref().is_none_or(|g| key < *g) {
                gap = Some(key);
            }
        }
    }
    let gap = gap.map(|(_, std::cmp::Reverse(z))| z);
    let reduced = ring.is_reduced();
    let supports_agree = gap.is_none();
    let mut report = KerMainReport { trivial: reduced || supports_agree, reduced, supports_agree, witness: None, witness_exp: None, degree_bound: bound };
    if let (false, Some(z)) = (reduced, gap) {
        let alg = HodgeAlgebra::new(ring.clone(), i.clone())?;
        let nil = ring.nil_generators().into_iter().next().ok_or_else(|| Error::Invariant("non-reduced ring without nilpotents".into()))?;
        let w = alg.add(&alg.one(), &alg.monomial(nil, z.clone()));
        if !alg.is_unit(&w)? {
            return invariant("the witness is not a unit");
        }
        report.witness = Some(alg.format(&w));
        report.witness_exp = Some(z);
    }
    Ok(report)
}

// --- smoke checks ---------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SmokeReport {
    pub checks: Vec<Check>,
    pub status: Status,
}

impl SmokeReport {
    fn from_checks(checks: Vec<Check>) -> SmokeReport {
        let status = checks.iter().fold(Status::Pass, |s, c| s.combine(c.status));
        SmokeReport { checks, status }
    }
}

fn check(name: &str, status: Status, detail: impl Into<String>) -> Check {
    Check { name: name.into(), status, detail: detail.into() }
}

/// Coefficients to try: everything for finite rings, small values otherwise.
fn sample_coeffs(ring: &RingSpec) -> Result<Vec<Elem>> {
    if ring.is_finite() {
        return ring.enumerate();
    }
    let mut out = Vec::new();
    for e in ring.additive_gens() {
        for k in -2..=2 {
            out.push(ring.mul(&ring.from_int(k), &e));
        }
    }
    if ring.contains_q() {
        out.push(rational(ring, &BigRational::new(BigInt::one(), BigInt::from(2))));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Whether `A ⊆ B` is subintegrally closed at the coefficient level, when
/// that can be decided by listing `B`.
fn coeffs_closed(a_ring: &RingSpec, b_ring: &RingSpec) -> Result<Option<(bool, Option<Elem>)>> {
    if a_ring == b_ring {
        return Ok(Some((true, None)));
    }
    if !b_ring.is_finite() {
        return Ok(None);
    }
    let a: Vec<Elem> = a_ring.enumerate()?.iter().map(|c| b_ring.embed(a_ring, c)).collect::<Result<_>>()?;
    for c in b_ring.enumerate()? {
        if !a.contains(&c) && a.contains(&b_ring.pow(&c, 2)) && a.contains(&b_ring.pow(&c, 3)) {
            return Ok(Some((false, Some(c))));
        }
    }
    Ok(Some((true, None)))
}

fn sub_quotient(a_ring: &RingSpec, m: &AffineMonoid, alg: &HodgeAlgebra, degree: i64) -> Result<MonomialSubring> {
    let gens = m.generators().iter().map(|g| (alg.ring().one(), g.clone())).collect();
    MonomialSubring::new(alg, gens, Some(a_ring.clone()), degree)
}

/// Property-level checks around `A[M]/(I∩M) ⊆ B[N]/I` for radical `I`.
///
/// 1. `θ(u)` is trivial exactly for constants `u ∈ A`.
/// 2. Every sampled term `b` with `b², b³` in the sub-quotient yields a
///    module pair whose certificate evaluates to 1.
/// 3. When `A ⊆ B` and `M ⊆ N` are both closed, no sampled term of degree at
///    most `degree/3` is a new elementary element.
/// 4. The kernel comparison is trivial for reduced `B`.
#[allow(clippy::too_many_arguments)]
pub fn main_theorem_smoke(
    a_ring: &RingSpec,
    b_ring: &RingSpec,
    m: &AffineMonoid,
    n: &AffineMonoid,
    i: &MonomialIdeal,
    degree: i64,
) -> Result<SmokeReport> {
    if !b_ring.embeds(a_ring) {
        return input(format!("{a_ring} is not a subring of {b_ring}"));
    }
    if !i.is_radical()? {
        return input("the ideal must be radical");
    }
    if !m.is_submonoid_of(n)? || i.host() != n {
        return input("need M ⊆ N with the ideal in N");
    }
    let alg = HodgeAlgebra::new(b_ring.clone(), i.clone())?;
    let a = sub_quotient(a_ring, m, &alg, degree)?;
    let zero = vec![0; n.dim()];
    let mut checks = Vec::new();

    // 1. theta on constant units
    let mut ok = true;
    let mut tried = 0;
    for u in sample_coeffs(b_ring)? {
        let f = alg.constant(u.clone());
        if alg.ideal().is_unit() || !alg.is_unit(&f)? {
            continue;
        }
        tried += 1;
        let ident = is_identity(&a, &theta(&a, &f)?)?;
        let in_a = a.group(&zero)?.contains(b_ring, &u);
        ok &= ident == in_a;
    }
    checks.push(check("theta injective on constants", Status::of(ok), format!("{tried} units")));

    // 2. sampled elementary terms
    let mut elementary = Vec::new();
    let mut unknown = false;
    let coeffs = sample_coeffs(b_ring)?;
    for z in alg.basis_up_to(degree / 3)? {
        for c in &coeffs {
            let b = alg.monomial(c.clone(), z.clone());
            match (a.contains(&b), a.is_elementary_subintegral(&b)) {
                (Ok(false), Ok(true)) => elementary.push(b),
                (Err(Error::Bound(_)), _) | (_, Err(Error::Bound(_))) => unknown = true,
                (Err(e), _) | (_, Err(e)) => return Err(e),
                _ => {}
            }
        }
    }
    let mut certified = 0;
    let mut status = Status::Pass;
    for b in elementary.iter().take(20) {
        match witness_modules(&a, b, &zero, WitnessVariant::Pm) {
            Ok(_) => certified += 1,
            Err(Error::Bound(_)) => status = status.combine(Status::Inconclusive),
            Err(_) => status = Status::Fail,
        }
    }
    if unknown {
        status = status.combine(Status::Inconclusive);
    }
    checks.push(check("witness modules", status, format!("{certified} of {} elementary terms certified", elementary.len().min(20))));

    // 3. closedness transfer
    let ring_closed = coeffs_closed(a_ring, b_ring)?;
    let monoid_closed = is_subintegrally_closed(m, n, degree)?;
    let c3 = match ring_closed {
        None => check("closedness transfer", Status::Inconclusive, "closedness of the coefficient rings is undecided"),
        Some((false, w)) => check(
            "closedness transfer",
            Status::Pass,
            format!("hypothesis fails: {} is elementary over {a_ring}", b_ring.format(&w.expect("a witness"))),
        ),
        Some((true, _)) if !monoid_closed => check("closedness transfer", Status::Pass, "hypothesis fails: M is not closed in N"),
        Some((true, _)) => match elementary.first() {
            None => check("closedness transfer", if unknown { Status::Inconclusive } else { Status::Pass }, "no counterexample"),
            Some(b) => check("closedness transfer", Status::Fail, format!("counterexample {}", alg.format(b))),
        },
    };
    checks.push(c3);

    // 4. kernel comparison
    let k = ker_main_trivial(b_ring, m, n, i, degree)?;
    let ok4 = !k.reduced || k.trivial;
    checks.push(check(
        "kernel comparison",
        Status::of(ok4),
        match &k.witness {
            Some(w) => format!("nontrivial, witness {w}"),
            None => "trivial".into(),
        },
    ));
    Ok(SmokeReport::from_checks(checks))
}

#[derive(Debug, Clone, Serialize)]
pub struct DiagramReport {
    pub samples: usize,
    pub closure_adjoined: usize,
    /// `exp(b)` lies in the closure for every sample.
    pub lands_in_closure: bool,
    pub homomorphism: bool,
    /// `exp(b)` is trivial exactly when `b ∈ A`.
    pub injective: bool,
    pub status: Status,
}

/// Element-level check of `b ↦ A·exp(b)` from nilpotent terms of `⁺A[M]/I`
/// into `I(A[M]/I, ⁺A[M]/I)`.
pub fn diagram_thm_check(
    a_ring: &RingSpec,
    b_ring: &RingSpec,
    m: &AffineMonoid,
    i: &MonomialIdeal,
    bound: i64,
    samples: usize,
    seed: u64,
) -> Result<DiagramReport> {
    if !b_ring.contains_q() {
        return Err(Error::Capability("the exponential needs rational coefficients".into()));
    }
    if !i.is_radical()? || i.host() != m {
        return input("need a radical ideal of M");
    }
    let alg = HodgeAlgebra::new(b_ring.clone(), i.clone())?;
    let a = sub_quotient(a_ring, m, &alg, bound)?;
    let plus = subintegral_closure_ring(&a, ClosureMode::Subintegral, 2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nils = b_ring.nil_generators();
    let basis = alg.basis_up_to(bound / 4)?;
    if nils.is_empty() || basis.is_empty() {
        return input("no nilpotent terms to sample");
    }
    let mut pts = vec![alg.zero()];
    while pts.len() < samples.max(2) {
        let mut f = alg.zero();
        for _ in 0..rng.gen_range(1..=2) {
            let q = BigRational::new(BigInt::from(rng.gen_range(-4i64..=4)), BigInt::from(rng.gen_range(1i64..=3)));
            let c = b_ring.mul(&rational(b_ring, &q), &nils[rng.gen_range(0..nils.len())]);
            f = alg.add(&f, &alg.monomial(c, basis[rng.gen_range(0..basis.len())].clone()));
        }
        pts.push(f);
    }
    let mut lands = true;
    let mut injective = true;
    for b in &pts {
        let e = exp_submodule(&a, b)?;
        lands &= plus.subring.contains(&e.generators()[0])?;
        injective &= is_identity(&a, &e)? == a.contains(b)?;
    }
    let mut hom = true;
    for w in pts.windows(2) {
        hom &= exp_law_holds(&a, &w[0], &w[1])?;
    }
    Ok(DiagramReport {
        samples: pts.len(),
        closure_adjoined: plus.adjoined.len(),
        lands_in_closure: lands,
        homomorphism: hom,
        injective,
        status: Status::of(lands && hom && injective),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n2() -> AffineMonoid {
        AffineMonoid::free(2)
    }

    fn xy() -> MonomialIdeal {
        MonomialIdeal::new(&n2(), vec![vec![1, 1]]).unwrap()
    }

    fn constants(ring: RingSpec, base: RingSpec, ideal: MonomialIdeal) -> MonomialSubring {
        let alg = HodgeAlgebra::new(ring, ideal).unwrap();
        MonomialSubring::new(&alg, vec![], Some(base), 8).unwrap()
    }

    #[test]
    fn theta_examples() {
        let a = constants(RingSpec::Zmod(4), RingSpec::Zmod(4), xy());
        let alg = a.ambient().clone();
        let b = alg.add(&alg.one(), &alg.monomial(Elem::Res(2), vec![1, 0]));
        assert!(!is_identity(&a, &theta(&a, &b).unwrap()).unwrap());
        assert!(is_identity(&a, &theta(&a, &alg.constant(Elem::Res(3))).unwrap()).unwrap());
        assert!(is_identity(&a, &theta(&a, &alg.one()).unwrap()).unwrap());
        assert!(theta(&a, &alg.constant(Elem::Res(2))).is_err());
    }

    #[test]
    fn module_group_laws() {
        let a = constants(RingSpec::dual(RingSpec::Zmod(2)), RingSpec::Zmod(2), MonomialIdeal::maximal(&n2()).unwrap());
        let alg = a.ambient().clone();
        let u = alg.constant(RingSpec::dual(RingSpec::Zmod(2)).parse_elem("1+eps").unwrap());
        let p = theta(&a, &u).unwrap();
        assert!(!is_identity(&a, &p).unwrap());
        assert!(is_identity(&a, &module_mul(&a, &p, &p).unwrap()).unwrap());
        assert!(is_identity(&a, &module_mul(&a, &p, &module_inverse(&a, &p).unwrap()).unwrap()).unwrap());
        let one = theta(&a, &alg.one()).unwrap();
        assert!(same_module(&a, &module_mul(&a, &one, &p).unwrap(), &p).unwrap());
    }

    #[test]
    fn exp_examples() {
        let dq = RingSpec::dual(RingSpec::Q);
        let a = constants(dq.clone(), RingSpec::Q, xy());
        let alg = a.ambient().clone();
        let eps = dq.eps().unwrap();
        let e = exp_submodule(&a, &alg.constant(eps.clone())).unwrap();
        assert_eq!(alg.format(&e.generators()[0]), alg.format(&alg.constant(dq.parse_elem("1+eps").unwrap())));
        assert_eq!(e.inverse_generators()[0], alg.constant(dq.parse_elem("1-eps").unwrap()));
        let bx = alg.monomial(eps.clone(), vec![1, 0]);
        let by = alg.monomial(eps, vec![0, 1]);
        assert!(exp_law_holds(&a, &bx, &by).unwrap());
        assert!(is_identity(&a, &exp_submodule(&a, &alg.zero()).unwrap()).unwrap());
        assert!(matches!(exp_submodule(&a, &alg.one()), Err(Error::Input(_))));
        let z = constants(RingSpec::dual(RingSpec::Zmod(2)), RingSpec::Zmod(2), xy());
        let e2 = z.ambient().constant(RingSpec::dual(RingSpec::Zmod(2)).eps().unwrap());
        assert!(matches!(exp_submodule(&z, &e2), Err(Error::Capability(_))));
    }

    #[test]
    fn kernel_examples() {
        let z4 = RingSpec::Zmod(4);
        assert!(ker_main_trivial(&z4, &n2(), &n2(), &xy(), 8).unwrap().trivial);
        let m = AffineMonoid::new(2, vec![vec![2, 0], vec![0, 2], vec![1, 1]]).unwrap();
        let r = ker_main_trivial(&z4, &m, &n2(), &xy(), 8).unwrap();
        assert!(!r.trivial);
        assert_eq!(r.witness_exp, Some(vec![1, 0]));
        assert_eq!(r.witness.as_deref(), Some("1 + 2*x^(1,0)"));
        assert!(ker_main_trivial(&RingSpec::Zmod(2), &m, &n2(), &xy(), 8).unwrap().trivial);
    }

    #[test]
    fn smoke_examples() {
        let f2 = RingSpec::Zmod(2);
        let r = main_theorem_smoke(&f2, &RingSpec::dual(f2.clone()), &n2(), &n2(), &xy(), 6).unwrap();
        assert_eq!(r.status, Status::Pass, "{r:?}");
        let n1 = AffineMonoid::free(1);
        let m2 = AffineMonoid::numerical(&[2]).unwrap();
        let r = main_theorem_smoke(&f2, &f2, &m2, &n1, &MonomialIdeal::empty(&n1).unwrap(), 12).unwrap();
        assert_eq!(r.status, Status::Pass, "{r:?}");
        assert!(r.checks[2].detail.contains("no counterexample"));
    }

    #[test]
    fn diagram_examples() {
        let n1 = AffineMonoid::free(1);
        let dq = RingSpec::dual(RingSpec::Q);
        let r = diagram_thm_check(&RingSpec::Q, &dq, &n1, &MonomialIdeal::empty(&n1).unwrap(), 8, 6, 1).unwrap();
        assert_eq!(r.status, Status::Pass, "{r:?}");
        let r = diagram_thm_check(&RingSpec::Q, &dq, &n1, &MonomialIdeal::maximal(&n1).unwrap(), 8, 6, 2).unwrap();
        assert_eq!(r.status, Status::Pass, "{r:?}");
    }
}
