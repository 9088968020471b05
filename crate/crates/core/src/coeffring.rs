//! Coefficient rings with decidable nilpotence and units.
//!
//! Only a closed family is supported: `Z`, `Q`, `Z/m` and the dual numbers
//! `R[ε]/(ε²)` over any of these. A `RingSpec` does the arithmetic; an `Elem`
//! is just a canonical value and carries no reference to its ring.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{input, invariant, Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Z,
    Q,
    Zmod(u64),
    Dual(Box<RingSpec>),
}

/// Canonical ring values. Residues live in `[0, m)`, rationals are reduced,
/// `Dual(a, b)` is `a + bε`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Int(BigInt),
    Rat(BigRational),
    Res(u64),
    Dual(Box<Elem>, Box<Elem>),
}

/// Prime factors of `m`, ascending, without multiplicity.
pub fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            out.push(p);
            while m.is_multiple_of(p) {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

fn radical(m: u64) -> u64 {
    prime_factors(m).iter().product()
}

fn mod_inverse(x: u64, m: u64) -> Option<u64> {
    let e = (x as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

impl RingSpec {
    pub fn zmod(m: u64) -> Result<RingSpec> {
        if m < 2 {
            return input(format!("Z/{m}: modulus must be at least 2"));
        }
        Ok(RingSpec::Zmod(m))
    }

    pub fn dual(inner: RingSpec) -> RingSpec {
        RingSpec::Dual(Box::new(inner))
    }

    pub fn parse(s: &str) -> Result<RingSpec> {
        let s = s.trim();
        match s {
            "Z" => return Ok(RingSpec::Z),
            "Q" => return Ok(RingSpec::Q),
            _ => {}
        }
        if let Some(m) = s.strip_prefix("Z/") {
            let m: u64 = m.trim().parse().map_err(|_| Error::Input(format!("bad modulus in {s:?}")))?;
            return RingSpec::zmod(m);
        }
        if let Some(inner) = s.strip_prefix("Dual(").and_then(|r| r.strip_suffix(')')) {
            return Ok(RingSpec::dual(RingSpec::parse(inner)?));
        }
        input(format!("unknown ring {s:?}"))
    }

    pub fn zero(&self) -> Elem {
        self.from_int(0)
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match self {
            RingSpec::Z => Elem::Int(n.clone()),
            RingSpec::Q => Elem::Rat(BigRational::from_integer(n.clone())),
            RingSpec::Zmod(m) => Elem::Res(n.mod_floor(&BigInt::from(*m)).to_u64().unwrap()),
            RingSpec::Dual(r) => Elem::Dual(Box::new(r.from_bigint(n)), Box::new(r.zero())),
        }
    }

    /// `ε` in `Dual(R)`.
    pub fn eps(&self) -> Result<Elem> {
        match self {
            RingSpec::Dual(r) => Ok(Elem::Dual(Box::new(r.zero()), Box::new(r.one()))),
            _ => input(format!("{self} has no ε")),
        }
    }

    pub fn dual_parts(&self, a: Elem, b: Elem) -> Elem {
        Elem::Dual(Box::new(a), Box::new(b))
    }

    /// Whether `e` is a well-formed canonical value of this ring.
    pub fn validate(&self, e: &Elem) -> bool {
        match (self, e) {
            (RingSpec::Z, Elem::Int(_)) | (RingSpec::Q, Elem::Rat(_)) => true,
            (RingSpec::Zmod(m), Elem::Res(r)) => r < m,
            (RingSpec::Dual(r), Elem::Dual(a, b)) => r.validate(a) && r.validate(b),
            _ => false,
        }
    }

    pub fn is_zero(&self, e: &Elem) -> bool {
        match e {
            Elem::Int(n) => n.is_zero(),
            Elem::Rat(q) => q.is_zero(),
            Elem::Res(r) => *r == 0,
            Elem::Dual(a, b) => {
                let RingSpec::Dual(r) = self else { return false };
                r.is_zero(a) && r.is_zero(b)
            }
        }
    }

    pub fn is_one(&self, e: &Elem) -> bool {
        *e == self.one()
    }

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        match (self, x, y) {
            (RingSpec::Z, Elem::Int(a), Elem::Int(b)) => Elem::Int(a + b),
            (RingSpec::Q, Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a + b),
            (RingSpec::Zmod(m), Elem::Res(a), Elem::Res(b)) => {
                Elem::Res(((*a as u128 + *b as u128) % *m as u128) as u64)
            }
            (RingSpec::Dual(r), Elem::Dual(a, b), Elem::Dual(c, d)) => {
                Elem::Dual(Box::new(r.add(a, c)), Box::new(r.add(b, d)))
            }
            _ => panic!("ring mismatch: {x:?} + {y:?} in {self}"),
        }
    }

    pub fn neg(&self, x: &Elem) -> Elem {
        match (self, x) {
            (RingSpec::Z, Elem::Int(a)) => Elem::Int(-a),
            (RingSpec::Q, Elem::Rat(a)) => Elem::Rat(-a),
            (RingSpec::Zmod(m), Elem::Res(a)) => Elem::Res((m - a) % m),
            (RingSpec::Dual(r), Elem::Dual(a, b)) => Elem::Dual(Box::new(r.neg(a)), Box::new(r.neg(b))),
            _ => panic!("ring mismatch: -{x:?} in {self}"),
        }
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        match (self, x, y) {
            (RingSpec::Z, Elem::Int(a), Elem::Int(b)) => Elem::Int(a * b),
            (RingSpec::Q, Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a * b),
            (RingSpec::Zmod(m), Elem::Res(a), Elem::Res(b)) => {
                Elem::Res(((*a as u128 * *b as u128) % *m as u128) as u64)
            }
            (RingSpec::Dual(r), Elem::Dual(a, b), Elem::Dual(c, d)) => {
                let re = r.mul(a, c);
                let du = r.add(&r.mul(a, d), &r.mul(b, c));
                Elem::Dual(Box::new(re), Box::new(du))
            }
            _ => panic!("ring mismatch: {x:?} * {y:?} in {self}"),
        }
    }

    pub fn pow(&self, x: &Elem, k: u32) -> Elem {
        let mut acc = self.one();
        let mut base = x.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            RingSpec::Z | RingSpec::Q => 0,
            RingSpec::Zmod(m) => *m,
            RingSpec::Dual(r) => r.characteristic(),
        }
    }

    /// True when `Q` is a subring.
    pub fn contains_q(&self) -> bool {
        match self {
            RingSpec::Q => true,
            RingSpec::Dual(r) => r.contains_q(),
            _ => false,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    pub fn size(&self) -> Option<u64> {
        match self {
            RingSpec::Z | RingSpec::Q => None,
            RingSpec::Zmod(m) => Some(*m),
            RingSpec::Dual(r) => r.size().and_then(|s| s.checked_mul(s)),
        }
    }

    /// Nilpotence by the structural criterion; `Some(index)` when nilpotent.
    ///
    /// The index is the least `k` with `x^k = 0`; it is re-checked by powering.
    pub fn nil_index(&self, x: &Elem) -> Option<u32> {
        let nilpotent = match (self, x) {
            (RingSpec::Z, _) | (RingSpec::Q, _) => self.is_zero(x),
            (RingSpec::Zmod(m), Elem::Res(a)) => prime_factors(*m).iter().all(|p| a % p == 0),
            (RingSpec::Dual(r), Elem::Dual(a, _)) => r.nil_index(a).is_some(),
            _ => false,
        };
        if !nilpotent {
            return None;
        }
        let mut k = 1;
        let mut p = x.clone();
        while !self.is_zero(&p) {
            p = self.mul(&p, x);
            k += 1;
            assert!(k <= 256, "nilpotency index runaway for {x:?} in {self}");
        }
        Some(k)
    }

    pub fn is_nilpotent(&self, x: &Elem) -> bool {
        self.nil_index(x).is_some()
    }

    pub fn is_unit(&self, x: &Elem) -> bool {
        match (self, x) {
            (RingSpec::Z, Elem::Int(a)) => a.abs().is_one(),
            (RingSpec::Q, Elem::Rat(a)) => !a.is_zero(),
            (RingSpec::Zmod(m), Elem::Res(a)) => a.gcd(m) == 1,
            (RingSpec::Dual(r), Elem::Dual(a, _)) => r.is_unit(a),
            _ => false,
        }
    }

    pub fn inverse(&self, x: &Elem) -> Result<Elem> {
        let inv = match (self, x) {
            (RingSpec::Z, Elem::Int(a)) if a.abs().is_one() => Elem::Int(a.clone()),
            (RingSpec::Q, Elem::Rat(a)) if !a.is_zero() => Elem::Rat(a.recip()),
            (RingSpec::Zmod(m), Elem::Res(a)) => match mod_inverse(*a, *m) {
                Some(i) => Elem::Res(i),
                None => return input(format!("{} is not a unit in {self}", self.format(x))),
            },
            (RingSpec::Dual(r), Elem::Dual(a, b)) => {
                let ai = r.inverse(a)?;
                let du = r.neg(&r.mul(&r.mul(&ai, &ai), b));
                Elem::Dual(Box::new(ai), Box::new(du))
            }
            _ => return input(format!("{} is not a unit in {self}", self.format(x))),
        };
        if !self.is_one(&self.mul(x, &inv)) {
            return invariant("inverse does not round-trip");
        }
        Ok(inv)
    }

    /// Ideal generators of the nilradical; empty means `Nil = 0`.
    pub fn nil_generators(&self) -> Vec<Elem> {
        match self {
            RingSpec::Z | RingSpec::Q => Vec::new(),
            RingSpec::Zmod(m) => {
                let r = radical(*m);
                if r == *m {
                    Vec::new()
                } else {
                    vec![Elem::Res(r)]
                }
            }
            RingSpec::Dual(r) => {
                let mut g = vec![self.eps().unwrap()];
                g.extend(r.nil_generators().into_iter().map(|a| Elem::Dual(Box::new(a), Box::new(r.zero()))));
                g
            }
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.nil_generators().is_empty()
    }

    /// All elements, in a fixed order. Finite rings only.
    pub fn enumerate(&self) -> Result<Vec<Elem>> {
        match self {
            RingSpec::Zmod(m) => Ok((0..*m).map(Elem::Res).collect()),
            RingSpec::Dual(r) => {
                let base = r.enumerate()?;
                let mut out = Vec::with_capacity(base.len() * base.len());
                for b in &base {
                    for a in &base {
                        out.push(Elem::Dual(Box::new(a.clone()), Box::new(b.clone())));
                    }
                }
                Ok(out)
            }
            _ => Err(Error::Capability(format!("{self} is infinite"))),
        }
    }

    /// `R / Nil(R)`.
    pub fn reduced(&self) -> RingSpec {
        match self {
            RingSpec::Zmod(m) => RingSpec::Zmod(radical(*m)),
            RingSpec::Dual(r) => r.reduced(),
            other => other.clone(),
        }
    }

    /// The quotient map `R → R / Nil(R)`.
    pub fn reduce_elem(&self, x: &Elem) -> Elem {
        match (self, x) {
            (RingSpec::Zmod(m), Elem::Res(a)) => Elem::Res(a % radical(*m)),
            (RingSpec::Dual(r), Elem::Dual(a, _)) => r.reduce_elem(a),
            _ => x.clone(),
        }
    }

    /// Whether `sub` sits inside this ring as a unital subring we know how to embed.
    pub fn embeds(&self, sub: &RingSpec) -> bool {
        if sub == self {
            return true;
        }
        if *sub == RingSpec::Z && self.characteristic() == 0 {
            return true;
        }
        match self {
            RingSpec::Dual(r) => r.embeds(sub),
            _ => false,
        }
    }

    pub fn embed(&self, sub: &RingSpec, x: &Elem) -> Result<Elem> {
        if sub == self {
            return Ok(x.clone());
        }
        if let (RingSpec::Z, Elem::Int(n)) = (sub, x) {
            if self.characteristic() == 0 {
                return Ok(self.from_bigint(n));
            }
        }
        match self {
            RingSpec::Dual(r) if r.embeds(sub) => Ok(Elem::Dual(Box::new(r.embed(sub, x)?), Box::new(r.zero()))),
            _ => input(format!("{sub} does not embed in {self}")),
        }
    }

    /// Additive generators: over `Q` when the ring contains `Q`, over `Z` otherwise.
    pub fn additive_gens(&self) -> Vec<Elem> {
        match self {
            RingSpec::Dual(r) => {
                let base = r.additive_gens();
                let mut out: Vec<Elem> = base
                    .iter()
                    .map(|a| Elem::Dual(Box::new(a.clone()), Box::new(r.zero())))
                    .collect();
                out.extend(base.iter().map(|a| Elem::Dual(Box::new(r.zero()), Box::new(a.clone()))));
                out
            }
            _ => vec![self.one()],
        }
    }

    /// Number of rational coordinates used by `coords`.
    pub fn ncoords(&self) -> usize {
        match self {
            RingSpec::Dual(r) => 2 * r.ncoords(),
            _ => 1,
        }
    }

    /// Per-coordinate modulus (`Some(m)` for `Z/m` slots).
    pub fn moduli(&self) -> Vec<Option<u64>> {
        match self {
            RingSpec::Zmod(m) => vec![Some(*m)],
            RingSpec::Dual(r) => {
                let mut v = r.moduli();
                v.extend(r.moduli());
                v
            }
            _ => vec![None],
        }
    }

    /// Flattens an element into rational coordinates (residues as integers).
    pub fn coords(&self, x: &Elem) -> Vec<BigRational> {
        match x {
            Elem::Int(n) => vec![BigRational::from_integer(n.clone())],
            Elem::Rat(q) => vec![q.clone()],
            Elem::Res(r) => vec![BigRational::from_integer(BigInt::from(*r))],
            Elem::Dual(a, b) => {
                let RingSpec::Dual(r) = self else { panic!("ring mismatch") };
                let mut v = r.coords(a);
                v.extend(r.coords(b));
                v
            }
        }
    }

    /// Inverse of `coords`; entries for integer slots must be integral.
    pub fn from_coords(&self, c: &[BigRational]) -> Elem {
        match self {
            RingSpec::Z => Elem::Int(c[0].to_integer()),
            RingSpec::Q => Elem::Rat(c[0].clone()),
            RingSpec::Zmod(_) => self.from_bigint(&c[0].to_integer()),
            RingSpec::Dual(r) => {
                let k = r.ncoords();
                Elem::Dual(Box::new(r.from_coords(&c[..k])), Box::new(r.from_coords(&c[k..])))
            }
        }
    }

    /// Parses `3`, `-2`, `5/7`, `eps`, `1+2*eps`, `1-eps`.
    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return input("empty element literal");
        }
        if let RingSpec::Dual(r) = self {
            if t.contains("eps") {
                let (a, b) = split_eps(&t)?;
                let a = if a.is_empty() { r.zero() } else { r.parse_elem(&a)? };
                let b = r.parse_elem(&b)?;
                return Ok(Elem::Dual(Box::new(a), Box::new(b)));
            }
            return Ok(Elem::Dual(Box::new(r.parse_elem(&t)?), Box::new(r.zero())));
        }
        if let Some((n, d)) = t.split_once('/') {
            let n: BigInt = n.parse().map_err(|_| Error::Input(format!("bad literal {s:?}")))?;
            let d: BigInt = d.parse().map_err(|_| Error::Input(format!("bad literal {s:?}")))?;
            if d.is_zero() {
                return input("zero denominator");
            }
            return match self {
                RingSpec::Q => Ok(Elem::Rat(BigRational::new(n, d))),
                _ => {
                    // n/d is fine whenever d is invertible in the ring
                    let dinv = self.inverse(&self.from_bigint(&d))?;
                    Ok(self.mul(&self.from_bigint(&n), &dinv))
                }
            };
        }
        let n: BigInt = t.parse().map_err(|_| Error::Input(format!("bad literal {s:?}")))?;
        Ok(self.from_bigint(&n))
    }

    pub fn format(&self, x: &Elem) -> String {
        match x {
            Elem::Int(n) => n.to_string(),
            Elem::Rat(q) => q.to_string(),
            Elem::Res(r) => r.to_string(),
            Elem::Dual(a, b) => {
                let RingSpec::Dual(r) = self else { return format!("{x:?}") };
                let fb = if r.is_one(b) { "eps".to_string() } else { format!("{}*eps", paren(&r.format(b))) };
                if r.is_zero(b) {
                    r.format(a)
                } else if r.is_zero(a) {
                    fb
                } else if fb.starts_with('-') {
                    format!("{}{}", r.format(a), fb)
                } else {
                    format!("{}+{}", r.format(a), fb)
                }
            }
        }
    }
}

fn paren(s: &str) -> String {
    if s.contains('+') || s.contains("eps") || s[1..].contains('-') {
        format!("({s})")
    } else {
        s.to_string()
    }
}

/// Splits `a+b*eps` into (`a`, `b`).
fn split_eps(t: &str) -> Result<(String, String)> {
    let body = t
        .strip_suffix("eps")
        .ok_or_else(|| Error::Input(format!("ε must come last in {t:?}")))?;
    let body = body.strip_suffix('*').unwrap_or(body);
    // last sign that is not the leading one separates the two parts
    let cut = body
        .char_indices()
        .filter(|&(i, c)| i > 0 && (c == '+' || c == '-') && !body[..i].ends_with(['/', '+', '-']))
        .map(|(i, _)| i)
        .next_back();
    let (a, b) = match cut {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let b = b.strip_prefix('+').unwrap_or(b);
    let b = match b {
        "" => "1".to_string(),
        "-" => "-1".to_string(),
        other => other.to_string(),
    };
    Ok((a.to_string(), b))
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Z => write!(f, "Z"),
            RingSpec::Q => write!(f, "Q"),
            RingSpec::Zmod(m) => write!(f, "Z/{m}"),
            RingSpec::Dual(r) => write!(f, "Dual({r})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RingSpec {
        RingSpec::parse(s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let z4 = p("Z/4");
        assert_eq!(z4.add(&z4.from_int(2), &z4.from_int(2)), z4.zero());
        let dq = p("Dual(Q)");
        let a = dq.parse_elem("1+eps").unwrap();
        let b = dq.parse_elem("1-eps").unwrap();
        assert_eq!(dq.mul(&a, &b), dq.one());
        let z6 = p("Z/6");
        assert_eq!(z6.mul(&z6.from_int(2), &z6.from_int(3)), z6.zero());
    }

    #[test]
    fn nilpotence_and_units() {
        let z4 = p("Z/4");
        assert_eq!(z4.nil_index(&z4.from_int(2)), Some(2));
        assert_eq!(p("Z/6").nil_index(&Elem::Res(2)), None);
        let dq = p("Dual(Q)");
        assert_eq!(dq.nil_index(&dq.eps().unwrap()), Some(2));
        assert_eq!(z4.inverse(&z4.from_int(3)).unwrap(), z4.from_int(3));
        assert_eq!(dq.inverse(&dq.parse_elem("1+eps").unwrap()).unwrap(), dq.parse_elem("1-eps").unwrap());
        assert!(z4.inverse(&z4.from_int(2)).is_err());
    }

    #[test]
    fn nilradicals() {
        assert_eq!(p("Z/4").nil_generators(), vec![Elem::Res(2)]);
        assert!(!p("Z/4").is_reduced());
        assert!(p("Z/6").is_reduced());
        assert_eq!(p("Dual(Z/2)").enumerate().unwrap().len(), 4);
        assert!(p("Q").enumerate().is_err());
        assert_eq!(p("Dual(Z/4)").reduced(), p("Z/2"));
    }

    #[test]
    fn literals_round_trip() {
        let d = p("Dual(Q)");
        for s in ["0", "3", "-1/2", "eps", "2*eps", "1+eps", "1-eps", "1/2-3/4*eps", "-2-eps"] {
            let e = d.parse_elem(s).unwrap();
            assert_eq!(d.parse_elem(&d.format(&e)).unwrap(), e, "{s}");
        }
        let z4 = p("Z/4");
        assert_eq!(z4.parse_elem("-1").unwrap(), Elem::Res(3));
        assert!(RingSpec::parse("Zz").is_err());
    }

    #[test]
    fn embeddings() {
        let dq = p("Dual(Q)");
        assert!(dq.embeds(&RingSpec::Q));
        assert!(dq.embeds(&RingSpec::Z));
        assert!(!p("Z/4").embeds(&RingSpec::Z));
        assert!(p("Dual(Z/2)").embeds(&p("Z/2")));
        assert_eq!(dq.embed(&RingSpec::Z, &Elem::Int(BigInt::from(3))).unwrap(), dq.from_int(3));
    }
}
