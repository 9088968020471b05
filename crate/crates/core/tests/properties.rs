//! Property tests: algebraic laws on random inputs, checked against the
//! brute-force oracles in `common`.

mod common;

use proptest::prelude::*;

use monalg::algebra::{AlgElem, HodgeAlgebra, MilnorSquare};
use monalg::classgroup::{
    brute_force_i, exp_elem, exp_law_holds, ker_main_coset_order, ker_main_trivial, module_mul, same_module, theta,
    InvertibleModule,
};
use monalg::coeffring::{Elem, RingSpec};
use monalg::ideal::MonomialIdeal;
use monalg::intlin::binom_det;
use monalg::monoid::AffineMonoid;
use monalg::subint::MonomialSubring;
use monalg::verify::dual_extension;

use common::{Coef, Ideal, Monoid, Poly, Quotient};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 64, ..ProptestConfig::default() }
}

/// `(Z/3)[t]/(t³) ⊂ Dual(Z/3)[t]/(t³)`.
fn dual_z3() -> (MonomialSubring, Quotient) {
    let n1 = AffineMonoid::free(1);
    let ring = RingSpec::dual(RingSpec::Zmod(3));
    let alg = HodgeAlgebra::new(ring.clone(), MonomialIdeal::new(&n1, vec![vec![3]]).unwrap()).unwrap();
    let a = MonomialSubring::new(&alg, vec![(ring.one(), vec![1])], Some(RingSpec::Zmod(3)), 8).unwrap();
    let q = Quotient::new(Coef::Dual(3), Monoid::free(1), Ideal { gens: vec![vec![3]] });
    (a, q)
}

/// A unit of `Dual(Z/3)[t]/(t³)` from six residues.
fn unit_from(c: &[u64]) -> Poly {
    let mut p = Poly::new();
    let a0 = 1 + c[0] % 2;
    p.insert(vec![0], a0 + 3 * (c[1] % 3));
    for k in 1..3 {
        let v = c[2 * k] % 3 + 3 * (c[2 * k + 1] % 3);
        if v != 0 {
            p.insert(vec![k as i64], v);
        }
    }
    p
}

fn certificate_value(q: &mut Quotient, m: &InvertibleModule) -> Poly {
    let hs = m.inverse_generators();
    let mut total = Poly::new();
    for (i, g) in m.generators().iter().enumerate() {
        for (j, h) in hs.iter().enumerate() {
            let c = q.from_lib(&m.certificate()[i * hs.len() + j]);
            let gh = q.mul(&q.from_lib(g), &q.from_lib(h));
            let t = q.mul(&c, &gh);
            total = q.add(&total, &t);
        }
    }
    total
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn theta_is_a_homomorphism(c in proptest::collection::vec(0u64..9, 12)) {
        let (a, mut q) = dual_z3();
        let alg = a.ambient();
        let b = q.to_lib(alg, &unit_from(&c[..6]));
        let b2 = q.to_lib(alg, &unit_from(&c[6..]));
        let tb = theta(&a, &b).unwrap();
        let tb2 = theta(&a, &b2).unwrap();
        let prod = module_mul(&a, &tb, &tb2).unwrap();
        let direct = theta(&a, &alg.mul(&b, &b2)).unwrap();
        prop_assert!(same_module(&a, &prod, &direct).unwrap());
        for m in [&tb, &tb2, &prod, &direct] {
            prop_assert_eq!(certificate_value(&mut q, m), q.one());
        }
    }

    #[test]
    fn exponential_law(c in proptest::collection::vec(-4i64..=4, 10)) {
        let n1 = AffineMonoid::free(1);
        let ring = RingSpec::dual(RingSpec::Q);
        let eps = ring.eps().unwrap();
        let alg = HodgeAlgebra::new(ring.clone(), MonomialIdeal::new(&n1, vec![vec![3]]).unwrap()).unwrap();
        let a = MonomialSubring::new(&alg, vec![(ring.one(), vec![1])], Some(RingSpec::Q), 8).unwrap();
        // nilpotent: the constant term is a multiple of ε
        let elem = |c: &[i64]| -> AlgElem {
            let mut terms = vec![(ring.mul(&ring.from_int(c[0]), &eps), vec![0])];
            for k in 1..3 {
                let v = ring.add(&ring.from_int(c[2 * k - 1]), &ring.mul(&ring.from_int(c[2 * k]), &eps));
                terms.push((v, vec![k as i64]));
            }
            alg.element(terms).unwrap()
        };
        let (b, b2) = (elem(&c[..5]), elem(&c[5..]));
        let lhs = alg.mul(&exp_elem(&alg, &b).unwrap(), &exp_elem(&alg, &b2).unwrap());
        prop_assert_eq!(lhs, exp_elem(&alg, &alg.add(&b, &b2)).unwrap());
        prop_assert!(exp_law_holds(&a, &b, &b2).unwrap());
    }

    #[test]
    fn binomial_determinant_matches_vandermonde(mut a in proptest::collection::btree_set(1u64..=40, 1..=7)) {
        let a: Vec<u64> = std::mem::take(&mut a).into_iter().collect();
        // the determinant is the Vandermonde product over 0!·1!⋯(p−1)!
        let mut num = num_bigint::BigInt::from(1);
        for j in 0..a.len() {
            for i in 0..j {
                num *= a[j] - a[i];
            }
        }
        let mut den = num_bigint::BigInt::from(1);
        for k in 1..a.len() as u64 {
            den *= (1..=k).product::<u64>();
        }
        prop_assert_eq!(&num % &den, num_bigint::BigInt::from(0));
        prop_assert_eq!(binom_det(&a).unwrap(), num / den);
    }

    #[test]
    fn membership_agrees_with_descent(
        gens in proptest::collection::vec((0i64..=4, 0i64..=4), 1..=4),
        x in (0i64..=15, 0i64..=15),
    ) {
        let gens: Vec<Vec<i64>> = gens.into_iter().map(|(a, b)| vec![a, b]).filter(|g| g != &[0, 0]).collect();
        prop_assume!(!gens.is_empty());
        let m = AffineMonoid::new(2, gens.clone()).unwrap();
        let mut oracle = Monoid::new(gens, vec![1, 1]);
        let x = vec![x.0, x.1];
        let found = m.contains(&x).unwrap();
        prop_assert_eq!(found.is_some(), oracle.contains(&x));
        if let Some(mult) = found {
            prop_assert_eq!(m.combine(&mult), x);
        }
    }

    #[test]
    fn nilpotence_matches_powering(terms in proptest::collection::vec((0i64..=3, 0i64..=3, 1u64..8), 0..=4)) {
        let n2 = AffineMonoid::free(2);
        let alg = HodgeAlgebra::new(RingSpec::Zmod(8), MonomialIdeal::new(&n2, vec![vec![1, 1]]).unwrap()).unwrap();
        let mut q = Quotient::of(&alg);
        let f = alg.element(terms.iter().map(|&(a, b, c)| (Elem::Res(c), vec![a, b])).collect()).unwrap();
        let p = q.from_lib(&f);
        let by_powers = q.nil_index(&p, 16).is_some();
        prop_assert_eq!(alg.is_nilpotent(&f, 16).unwrap().nilpotent, by_powers);
    }

    #[test]
    fn milnor_round_trip(
        f in proptest::collection::vec(0u64..4, 10),
        j in 0usize..3,
        p in 0usize..3,
    ) {
        let n2 = AffineMonoid::free(2);
        let ideals = [vec![vec![1, 0]], vec![vec![0, 1]], vec![vec![1, 0], vec![0, 1]]];
        let sq = MilnorSquare::new(
            RingSpec::Zmod(4),
            MonomialIdeal::new(&n2, ideals[j].clone()).unwrap(),
            MonomialIdeal::new(&n2, ideals[p].clone()).unwrap(),
        )
        .unwrap();
        let mons = sq.top.basis_up_to(3).unwrap();
        let terms = mons.iter().zip(&f).map(|(m, &c)| (Elem::Res(c), m.clone())).collect();
        let g = sq.top.element(terms).unwrap();
        let (g1, g2) = sq.project(&g).unwrap();
        let h = sq.patch(&g1, &g2).unwrap();
        prop_assert_eq!(&h, &g);
        prop_assert_eq!(sq.project(&h).unwrap(), (g1, g2));
    }

    #[test]
    fn kernel_verdict_matches_cosets(gens in proptest::collection::vec((0i64..=2, 0i64..=2), 1..=3), reduced in any::<bool>()) {
        let n2 = AffineMonoid::free(2);
        let gens: Vec<Vec<i64>> = gens.into_iter().map(|(a, b)| vec![a, b]).filter(|g| g != &[0, 0]).collect();
        prop_assume!(!gens.is_empty());
        let m = AffineMonoid::new(2, gens).unwrap();
        let i = MonomialIdeal::new(&n2, vec![vec![1, 1]]).unwrap();
        let ring = if reduced { RingSpec::Zmod(2) } else { RingSpec::Zmod(4) };
        let order = ker_main_coset_order(&ring, &m, &n2, &i, 3).unwrap();
        prop_assert_eq!(order == 1, ker_main_trivial(&ring, &m, &n2, &i, 2).unwrap().trivial);
    }
}

#[test]
fn invertible_modules_match_unit_quotient() {
    for n in [2u64, 3, 4, 5] {
        let units = |c: Coef| (0..c.size()).filter(|&x| c.is_unit(x)).count();
        let ext = dual_extension(&RingSpec::Zmod(n)).unwrap();
        let g = brute_force_i(&ext).unwrap();
        assert_eq!(g.order() * units(Coef::Zmod(n)), units(Coef::Dual(n)), "Z/{n}");
    }
}

#[test]
fn bad_certificates_are_rejected() {
    let (a, q) = dual_z3();
    let alg = a.ambient();
    let b = q.to_lib(alg, &unit_from(&[0, 1, 0, 0, 0, 0]));
    let inv = alg.inverse(&b).unwrap();
    assert!(InvertibleModule::new(&a, vec![b.clone()], vec![inv.clone()], vec![alg.one()]).is_ok());
    let two = alg.constant(RingSpec::dual(RingSpec::Zmod(3)).from_int(2));
    assert!(InvertibleModule::new(&a, vec![b], vec![inv], vec![two]).is_err());
}
