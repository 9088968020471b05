//! Brute-force oracles shared by the integration tests. Nothing here calls
//! library arithmetic: coefficients, monomials and ideal membership are all
//! recomputed from scratch.

#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use monalg::algebra::{AlgElem, HodgeAlgebra};
use monalg::coeffring::{Elem, RingSpec};

/// A finite coefficient ring: `Z/n`, or `Z/n[ε]` with `a + bε` coded as `a + n·b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coef {
    Zmod(u64),
    Dual(u64),
}

impl Coef {
    pub fn of(spec: &RingSpec) -> Option<Coef> {
        match spec {
            RingSpec::Zmod(n) => Some(Coef::Zmod(*n)),
            RingSpec::Dual(inner) => match **inner {
                RingSpec::Zmod(n) => Some(Coef::Dual(n)),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn size(self) -> u64 {
        match self {
            Coef::Zmod(n) => n,
            Coef::Dual(n) => n * n,
        }
    }

    fn split(self, a: u64) -> (u64, u64) {
        match self {
            Coef::Zmod(_) => (a, 0),
            Coef::Dual(n) => (a % n, a / n),
        }
    }

    fn join(self, a: u64, b: u64) -> u64 {
        match self {
            Coef::Zmod(n) => a % n,
            Coef::Dual(n) => a % n + n * (b % n),
        }
    }

    fn modulus(self) -> u64 {
        match self {
            Coef::Zmod(n) | Coef::Dual(n) => n,
        }
    }

    pub fn add(self, x: u64, y: u64) -> u64 {
        let ((a, b), (c, d)) = (self.split(x), self.split(y));
        self.join(a + c, b + d)
    }

    pub fn mul(self, x: u64, y: u64) -> u64 {
        let n = self.modulus();
        let ((a, b), (c, d)) = (self.split(x), self.split(y));
        self.join(a * c % n, (a * d + b * c) % n)
    }

    pub fn neg(self, x: u64) -> u64 {
        let n = self.modulus();
        let (a, b) = self.split(x);
        self.join((n - a) % n, (n - b) % n)
    }

    pub fn from_int(self, k: i64) -> u64 {
        self.join(k.rem_euclid(self.modulus() as i64) as u64, 0)
    }

    pub fn is_nilpotent(self, x: u64) -> bool {
        let mut p = x;
        for _ in 0..self.size() {
            if p == 0 {
                return true;
            }
            p = self.mul(p, x);
        }
        p == 0
    }

    pub fn is_unit(self, x: u64) -> bool {
        (0..self.size()).any(|y| self.mul(x, y) == 1 % self.size())
    }

    pub fn code(self, e: &Elem) -> u64 {
        match (self, e) {
            (Coef::Zmod(_), Elem::Res(a)) => *a,
            (Coef::Dual(n), Elem::Dual(a, b)) => match (&**a, &**b) {
                (Elem::Res(a), Elem::Res(b)) => a + n * b,
                _ => panic!("unexpected dual coefficient {e:?}"),
            },
            _ => panic!("coefficient {e:?} does not match {self:?}"),
        }
    }

    pub fn elem(self, spec: &RingSpec, x: u64) -> Elem {
        let (a, b) = self.split(x);
        match self {
            Coef::Zmod(_) => Elem::Res(a),
            Coef::Dual(_) => spec.dual_parts(Elem::Res(a), Elem::Res(b)),
        }
    }
}

/// Membership in a submonoid of `Z^d`, by memoized descent along a grading
/// that is positive on every generator.
pub struct Monoid {
    pub gens: Vec<Vec<i64>>,
    pub lam: Vec<i64>,
    free: bool,
    memo: HashMap<Vec<i64>, bool>,
}

impl Monoid {
    pub fn new(gens: Vec<Vec<i64>>, lam: Vec<i64>) -> Monoid {
        for g in &gens {
            assert!(dot(&lam, g) > 0, "grading is not positive on {g:?}");
        }
        Monoid { gens, lam, free: false, memo: HashMap::new() }
    }

    pub fn free(d: usize) -> Monoid {
        let gens = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
        Monoid { free: true, ..Monoid::new(gens, vec![1; d]) }
    }

    pub fn numerical(gens: &[i64]) -> Monoid {
        Monoid::new(gens.iter().map(|&g| vec![g]).collect(), vec![1])
    }

    pub fn contains(&mut self, x: &[i64]) -> bool {
        if self.free {
            return x.iter().all(|&v| v >= 0);
        }
        if x.iter().all(|&v| v == 0) {
            return true;
        }
        if dot(&self.lam, x) <= 0 {
            return false;
        }
        if let Some(&v) = self.memo.get(x) {
            return v;
        }
        let gens = self.gens.clone();
        let v = gens.iter().any(|g| {
            let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| a - b).collect();
            self.contains(&y)
        });
        self.memo.insert(x.to_vec(), v);
        v
    }

    /// Elements of grading at most `bound`.
    pub fn elements_up_to(&mut self, bound: i64) -> Vec<Vec<i64>> {
        let mut seen = vec![vec![0; self.lam.len()]];
        let mut i = 0;
        while i < seen.len() {
            for g in self.gens.clone() {
                let y: Vec<i64> = seen[i].iter().zip(&g).map(|(a, b)| a + b).collect();
                if dot(&self.lam, &y) <= bound && !seen.contains(&y) {
                    seen.push(y);
                }
            }
            i += 1;
        }
        seen.sort_by_key(|x| (dot(&self.lam, x), x.clone()));
        seen
    }
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A monomial ideal `gens + H` of a host monoid `H`.
pub struct Ideal {
    pub gens: Vec<Vec<i64>>,
}

impl Ideal {
    pub fn contains(&self, host: &mut Monoid, x: &[i64]) -> bool {
        self.gens.iter().any(|g| {
            let y: Vec<i64> = x.iter().zip(g).map(|(a, b)| a - b).collect();
            host.contains(&y)
        })
    }
}

pub type Poly = BTreeMap<Vec<i64>, u64>;

/// `R[H]/I` with `R` finite, computed naively.
pub struct Quotient {
    pub coef: Coef,
    pub host: Monoid,
    pub ideal: Ideal,
    killed: HashMap<Vec<i64>, bool>,
}

impl Quotient {
    pub fn new(coef: Coef, host: Monoid, ideal: Ideal) -> Quotient {
        Quotient { coef, host, ideal, killed: HashMap::new() }
    }

    /// Rebuilds a library algebra from its description.
    pub fn of(alg: &HodgeAlgebra) -> Quotient {
        let coef = Coef::of(alg.ring()).expect("finite coefficient ring");
        let m = alg.monoid();
        let gens = m.generators().to_vec();
        let lam = m.functional().expect("positive monoid").to_vec();
        let ideal = Ideal { gens: alg.ideal().generators().to_vec() };
        Quotient::new(coef, Monoid::new(gens, lam), ideal)
    }

    pub fn dead(&mut self, x: &[i64]) -> bool {
        if let Some(&v) = self.killed.get(x) {
            return v;
        }
        let v = self.ideal.contains(&mut self.host, x);
        self.killed.insert(x.to_vec(), v);
        v
    }

    pub fn one(&self) -> Poly {
        let mut p = Poly::new();
        if 1 % self.coef.size() != 0 {
            p.insert(vec![0; self.host.lam.len()], 1);
        }
        p
    }

    pub fn add(&self, f: &Poly, g: &Poly) -> Poly {
        let mut out = f.clone();
        for (m, &c) in g {
            let v = self.coef.add(out.get(m).copied().unwrap_or(0), c);
            if v == 0 {
                out.remove(m);
            } else {
                out.insert(m.clone(), v);
            }
        }
        out
    }

    pub fn mul(&mut self, f: &Poly, g: &Poly) -> Poly {
        let mut out = Poly::new();
        for (a, &c) in f {
            for (b, &d) in g {
                let m: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if self.dead(&m) {
                    continue;
                }
                let v = self.coef.add(out.get(&m).copied().unwrap_or(0), self.coef.mul(c, d));
                out.insert(m, v);
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Least `k ≤ k_max` with `f^k = 0`.
    pub fn nil_index(&mut self, f: &Poly, k_max: u32) -> Option<u32> {
        let mut p = f.clone();
        for k in 1..=k_max {
            if p.is_empty() {
                return Some(k);
            }
            p = self.mul(&p, f);
        }
        None
    }

    pub fn from_lib(&self, f: &AlgElem) -> Poly {
        f.terms().iter().map(|(m, c)| (m.clone(), self.coef.code(c))).filter(|(_, c)| *c != 0).collect()
    }

    pub fn to_lib(&self, alg: &HodgeAlgebra, f: &Poly) -> AlgElem {
        let terms = f.iter().map(|(m, &c)| (self.coef.elem(alg.ring(), c), m.clone())).collect();
        alg.element(terms).expect("element of the algebra")
    }

    /// Whether some multiple `k·x` with `k ≤ 16` lies in the ideal.
    pub fn in_radical(&mut self, x: &[i64]) -> bool {
        (1..=16).any(|k| {
            let y: Vec<i64> = x.iter().map(|v| k * v).collect();
            self.dead(&y)
        })
    }

    /// Whether the single term `c·x^m` is nilpotent.
    pub fn term_nilpotent(&mut self, m: &[i64], c: u64) -> bool {
        self.coef.is_nilpotent(c) || self.in_radical(m)
    }

    /// Drops the monomials lying in `ideal`.
    pub fn reduce(&mut self, f: &Poly, ideal: &Ideal) -> Poly {
        f.iter().filter(|(m, _)| !ideal.contains(&mut self.host, m)).map(|(m, &c)| (m.clone(), c)).collect()
    }
}
