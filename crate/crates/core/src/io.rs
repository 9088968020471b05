//! JSON formats for monoids, extensions, ideals, algebra elements and subrings.
//!
//! ```text
//! monoid     {"dim": 2, "generators": [[1,0],[0,1]]}
//! extension  {"sub": <monoid>, "super": <monoid>}
//! ideal      {"host": <monoid>, "generators": [[1,1]]}
//! algebra    {"ring": "Z/4", "monoid": <monoid>, "ideal": [[1,1]]}
//! element    {"algebra": <algebra>, "terms": [{"coeff": "2", "exp": [1,0]}]}
//! subring    {"ambient": <algebra>, "generators": [{"coeff": "2", "exp": [1]}]}
//! ```
//!
//! An algebra's `ideal` may be a bare generator list or a full ideal object;
//! it defaults to the empty ideal. Subrings also take optional `base` (a ring
//! name) and `bound` (table degree).

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgElem, HodgeAlgebra};
use crate::coeffring::{Elem, RingSpec};
use crate::error::{input, Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monoid::{AffineMonoid, Vector};
use crate::subint::{MonomialSubring, DEFAULT_DEGREE};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidJson {
    pub dim: usize,
    pub generators: Vec<Vector>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionJson {
    pub sub: MonoidJson,
    #[serde(rename = "super")]
    pub sup: MonoidJson,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealJson {
    pub host: MonoidJson,
    pub generators: Vec<Vector>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IdealField {
    Generators(Vec<Vector>),
    Full(IdealJson),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub ring: String,
    pub monoid: MonoidJson,
    #[serde(default)]
    pub ideal: Option<IdealField>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub coeff: String,
    pub exp: Vector,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementJson {
    pub algebra: AlgebraJson,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubringJson {
    pub ambient: AlgebraJson,
    pub generators: Vec<TermJson>,
    #[serde(default)]
    pub base: Option<String>,
    #[serde(default)]
    pub bound: Option<i64>,
}

/// Deserializes with the line and column of any syntax or shape error.
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| Error::Input(format!("malformed JSON at line {}, column {}: {e}", e.line(), e.column())))
}

impl MonoidJson {
    pub fn build(&self) -> Result<AffineMonoid> {
        if self.generators.iter().any(|g| g.len() != self.dim) {
            return input("generator of the wrong dimension");
        }
        AffineMonoid::new(self.dim, self.generators.clone())
    }

    pub fn of(m: &AffineMonoid) -> MonoidJson {
        MonoidJson { dim: m.dim(), generators: m.generators().to_vec() }
    }
}

impl IdealJson {
    pub fn build(&self) -> Result<MonomialIdeal> {
        MonomialIdeal::new(&self.host.build()?, self.generators.clone())
    }
}

impl AlgebraJson {
    pub fn build(&self) -> Result<HodgeAlgebra> {
        let ring = RingSpec::parse(&self.ring)?;
        let monoid = self.monoid.build()?;
        let ideal = match &self.ideal {
            None => MonomialIdeal::empty(&monoid)?,
            Some(IdealField::Generators(g)) => MonomialIdeal::new(&monoid, g.clone())?,
            Some(IdealField::Full(i)) => {
                if i.host != self.monoid {
                    return input("the ideal's host differs from the algebra's monoid");
                }
                i.build()?
            }
        };
        HodgeAlgebra::new(ring, ideal)
    }
}

fn terms(alg: &HodgeAlgebra, ts: &[TermJson]) -> Result<Vec<(Elem, Vector)>> {
    ts.iter().map(|t| Ok((alg.ring().parse_elem(&t.coeff)?, t.exp.clone()))).collect()
}

impl ElementJson {
    pub fn build(&self) -> Result<(HodgeAlgebra, AlgElem)> {
        let alg = self.algebra.build()?;
        let f = alg.element(terms(&alg, &self.terms)?)?;
        Ok((alg, f))
    }
}

impl SubringJson {
    pub fn build(&self) -> Result<MonomialSubring> {
        let alg = self.ambient.build()?;
        let gens = terms(&alg, &self.generators)?;
        let base = self.base.as_deref().map(RingSpec::parse).transpose()?;
        MonomialSubring::new(&alg, gens, base, self.bound.unwrap_or(DEFAULT_DEGREE))
    }
}

pub fn parse_monoid(text: &str) -> Result<AffineMonoid> {
    from_json::<MonoidJson>(text)?.build()
}

pub fn parse_extension(text: &str) -> Result<(AffineMonoid, AffineMonoid)> {
    let e: ExtensionJson = from_json(text)?;
    Ok((e.sub.build()?, e.sup.build()?))
}

pub fn parse_ideal(text: &str) -> Result<MonomialIdeal> {
    from_json::<IdealJson>(text)?.build()
}

pub fn parse_algebra(text: &str) -> Result<HodgeAlgebra> {
    from_json::<AlgebraJson>(text)?.build()
}

pub fn parse_element(text: &str) -> Result<(HodgeAlgebra, AlgElem)> {
    from_json::<ElementJson>(text)?.build()
}

/// An element of a known algebra, given either as a full element object or
/// as a bare term list.
pub fn parse_element_in(alg: &HodgeAlgebra, text: &str) -> Result<AlgElem> {
    if let Ok(ts) = serde_json::from_str::<Vec<TermJson>>(text) {
        return alg.element(terms(alg, &ts)?);
    }
    let (a, f) = parse_element(text)?;
    if &a != alg {
        return input("element belongs to a different algebra");
    }
    Ok(f)
}

pub fn parse_subring(text: &str) -> Result<MonomialSubring> {
    from_json::<SubringJson>(text)?.build()
}

/// Terms of an element in the input format.
pub fn element_terms(alg: &HodgeAlgebra, f: &AlgElem) -> Vec<TermJson> {
    f.terms().iter().map(|(m, c)| TermJson { coeff: alg.ring().format(c), exp: m.clone() }).collect()
}
