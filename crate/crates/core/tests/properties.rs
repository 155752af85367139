//! Randomized invariants of the arithmetic layers.

use hypinfl::field::{Extension, Field, FiniteField, Fp, Rationals, Reals};
use hypinfl::gw::{gw_trace, GWClass, InvariantDetail};
use hypinfl::linalg::{berkowitz_det, det_gauss, FieldRing, SquareMatrix};
use hypinfl::poly::factor::first_irreducible;
use hypinfl::poly::DensePoly;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn f13() -> Fp {
    Fp::new(13).unwrap()
}

fn nonzero13() -> impl Strategy<Value = u64> {
    1u64..13
}

fn class13(gens: Vec<u64>, h: i64) -> GWClass<Fp> {
    let f = f13();
    GWClass::diag(&f, gens).unwrap().add(&GWClass::hyperbolic(&f, h)).unwrap()
}

fn poly_q(c: &[i64]) -> DensePoly<Rationals> {
    DensePoly::from_i64s(&Rationals, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn berkowitz_matches_gauss(n in 1usize..6, entries in prop::collection::vec(0u64..13, 36)) {
        let f = f13();
        let rows: Vec<Vec<u64>> = (0..n).map(|i| entries[i * n..i * n + n].to_vec()).collect();
        let m = SquareMatrix::from_rows(rows.clone());
        prop_assert_eq!(berkowitz_det(&FieldRing(&f), &m), det_gauss(&f, &rows));
    }

    #[test]
    fn rank_and_disc_are_additive(
        a in prop::collection::vec(nonzero13(), 0..5),
        b in prop::collection::vec(nonzero13(), 0..5),
        h in 0i64..3,
        k in 0i64..3,
    ) {
        let f = f13();
        let (u, v) = (class13(a.clone(), h), class13(b.clone(), k));
        let s = u.add(&v).unwrap();
        prop_assert_eq!(s.rank(), u.rank() + v.rank());
        // disc(u+v) = disc(u)·disc(v) up to squares.
        let disc = |gens: &[u64], h: i64| {
            let p = gens.iter().fold(1u64, |acc, g| acc * g % 13);
            if h % 2 == 1 { f.neg(&p) } else { p }
        };
        let mut all = a.clone();
        all.extend(&b);
        let lhs = f.is_square(&disc(&all, h + k)).unwrap();
        let rhs = f.is_square(&f.mul(&disc(&a, h), &disc(&b, k))).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(
            s.invariants().unwrap().detail,
            InvariantDetail::DiscIsSquare { disc_is_square: lhs }
        );
        prop_assert!(s.equivalent(&v.add(&u).unwrap()).unwrap());
    }

    #[test]
    fn a_plus_minus_a_is_hyperbolic(a in nonzero13()) {
        let f = f13();
        let u = GWClass::diag(&f, vec![a, f.neg(&a)]).unwrap();
        prop_assert!(u.equivalent(&GWClass::hyperbolic(&f, 1)).unwrap());
    }

    #[test]
    fn scaling_by_squares_and_twice(gens in prop::collection::vec(nonzero13(), 1..5), c in nonzero13()) {
        let f = f13();
        let u = class13(gens, 1);
        let twice = u.scale(&c).unwrap().scale(&c).unwrap();
        prop_assert!(twice.equivalent(&u).unwrap());
        prop_assert!(u.scale(&f.square(&c)).unwrap().equivalent(&u).unwrap());
    }

    #[test]
    fn signature_flips_under_negative_scale(signs in prop::collection::vec(prop::bool::ANY, 1..6)) {
        let gens: Vec<BigRational> = signs
            .iter()
            .map(|s| BigRational::from_integer(BigInt::from(if *s { 3 } else { -5 })))
            .collect();
        let u = GWClass::diag(&Reals, gens).unwrap();
        let neg = u.scale(&BigRational::from_integer(BigInt::from(-2))).unwrap();
        let sig = |c: &GWClass<Reals>| c.generators().iter().map(|a| Reals.sign(a).unwrap() as i64).sum::<i64>();
        prop_assert_eq!(sig(&neg), -sig(&u));
    }

    #[test]
    fn trace_multiplies_rank(d in 2usize..4, gens in prop::collection::vec(prop::collection::vec(0u64..13, 3), 1..4)) {
        let f = f13();
        let k = Extension::new(&f, &first_irreducible(&f, d).unwrap()).unwrap();
        let elems: Vec<Vec<u64>> = gens
            .into_iter()
            .map(|c| k.reduce(c))
            .filter(|e| !k.is_zero(e))
            .collect();
        prop_assume!(!elems.is_empty());
        let u = GWClass::diag(&k, elems).unwrap().add(&GWClass::hyperbolic(&k, 1)).unwrap();
        let t = gw_trace(&k, &u).unwrap();
        prop_assert_eq!(t.rank(), d as i64 * u.rank());
    }

    #[test]
    fn hasse_leibniz_and_composition(
        a in prop::collection::vec(-5i64..6, 1..6),
        b in prop::collection::vec(-5i64..6, 1..6),
        k in 0usize..6,
    ) {
        let (p, q) = (poly_q(&a), poly_q(&b));
        let mut rhs = DensePoly::zero(&Rationals);
        for i in 0..=k {
            rhs = &rhs + &(&p.hasse(i) * &q.hasse(k - i));
        }
        prop_assert_eq!((&p * &q).hasse(k), rhs);
        // D¹Dᵏ = (k+1)D^{k+1}
        let lhs = p.hasse(k).hasse(1);
        prop_assert_eq!(lhs, p.hasse(k + 1).scale(&BigRational::from_integer(BigInt::from(k as i64 + 1))));
    }

    #[test]
    fn frobenius_hasse(p in prop::sample::select(vec![3u64, 5, 7, 11, 13])) {
        let f = Fp::new(p).unwrap();
        let xp = DensePoly::monomial(&f, f.one(), p as usize);
        prop_assert_eq!(xp.hasse(p as usize), DensePoly::one(&f));
        prop_assert!(xp.derivative().is_zero());
        prop_assert_eq!(f.order(), p.into());
    }
}
