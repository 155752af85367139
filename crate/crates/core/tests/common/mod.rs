#![allow(dead_code)]

use hypinfl::curve::HyperellipticCurve;
use hypinfl::field::{Field, FiniteField, Rationals};
use hypinfl::poly::DensePoly;
use rand::Rng;

pub fn is_squarefree<F: Field>(f: &DensePoly<F>) -> bool {
    f.gcd(&f.derivative()).degree() == Some(0)
}

/// Monic squarefree f of degree `deg` with uniform coefficients.
pub fn random_curve_fq<F: FiniteField, R: Rng>(field: &F, deg: usize, rng: &mut R) -> HyperellipticCurve<F> {
    loop {
        let mut c: Vec<F::Elem> = (0..deg).map(|_| field.random_elem(rng)).collect();
        c.push(field.one());
        let f = DensePoly::new(field, c);
        if is_squarefree(&f) {
            return HyperellipticCurve::new(f).expect("squarefree odd degree");
        }
    }
}

/// Monic squarefree f of degree `deg` with coefficients in [−r, r].
pub fn random_curve_q<R: Rng>(deg: usize, r: i64, rng: &mut R) -> HyperellipticCurve<Rationals> {
    loop {
        let mut c: Vec<i64> = (0..deg).map(|_| rng.gen_range(-r..=r)).collect();
        c.push(1);
        let f = DensePoly::from_i64s(&Rationals, &c);
        if is_squarefree(&f) {
            return HyperellipticCurve::new(f).expect("squarefree odd degree");
        }
    }
}
