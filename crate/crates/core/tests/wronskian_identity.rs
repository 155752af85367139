//! w(λ) = ε·(f^{−(ℓ+1)}y)^μ·P_{g,ℓ} in the x chart, from the full Hasse Wronskian.

mod common;

use hypinfl::curve::{hasse_wronskian_chart, Coordinate, CurveFunction, HyperellipticCurve};
use hypinfl::field::{Field, Fp, Rationals};
use hypinfl::indices::{printed_wronskian_sign, wronskian_sign};
use hypinfl::inflection::{inflection_poly, inflection_poly_printed_index};
use hypinfl::poly::DensePoly;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Sign s with (a + b·y)·f^{(ℓ+1)μ} = s·y^μ·P·f^e, if any.
fn wronskian_sign_of<F: Field>(curve: &HyperellipticCurve<F>, ell: usize, p: &DensePoly<F>) -> Option<i8> {
    let g = curve.genus();
    let mu = ell - g;
    let f = curve.f();
    let w = hasse_wronskian_chart(curve, ell, Coordinate::X).unwrap();
    let scale = f.pow(((ell + 1) * mu) as u32);
    let lhs = CurveFunction {
        a: &w.numerator.a * &scale,
        b: &w.numerator.b * &scale,
    };
    let core = &(p * &f.pow((mu / 2) as u32)) * &f.pow(w.f_exponent as u32);
    let zero = DensePoly::zero(curve.field());
    for s in [1i8, -1] {
        let c = if s > 0 { core.clone() } else { -core.clone() };
        let rhs = if mu % 2 == 0 {
            CurveFunction { a: c, b: zero.clone() }
        } else {
            CurveFunction { a: zero.clone(), b: c }
        };
        if rhs == lhs {
            return Some(s);
        }
    }
    None
}

fn cases() -> Vec<(usize, usize)> {
    let mut v = Vec::new();
    for g in 1..=3 {
        for ell in g + 1..=5 {
            v.push((g, ell));
        }
    }
    v
}

#[test]
fn identity_over_q_with_corrected_sign() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (g, ell) in cases() {
        for _ in 0..1 {
            let c = common::random_curve_q(2 * g + 1, 3, &mut rng);
            let p = inflection_poly(g, ell, c.f()).unwrap();
            let s = wronskian_sign_of(&c, ell, &p);
            assert_eq!(s, Some(wronskian_sign(g, ell - g)), "g = {g}, ℓ = {ell}, f = {}", c.f());
        }
    }
}

#[test]
fn identity_over_f11_with_corrected_sign() {
    let field = Fp::new(11).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for (g, ell) in cases() {
        let c = common::random_curve_fq(&field, 2 * g + 1, &mut rng);
        let p = inflection_poly(g, ell, c.f()).unwrap();
        assert_eq!(wronskian_sign_of(&c, ell, &p), Some(wronskian_sign(g, ell - g)), "g = {g}, ℓ = {ell}");
    }
}

#[test]
fn printed_sign_differs_exactly_when_mu_g_odd() {
    for (g, ell) in cases() {
        let mu = ell - g;
        let same = printed_wronskian_sign(mu) == wronskian_sign(g, mu);
        assert_eq!(same, (mu * g) % 2 == 0, "g = {g}, μ = {mu}");
    }
    // g = 1, ℓ = 2 on an explicit curve: the printed sign is wrong.
    let c = HyperellipticCurve::new(DensePoly::from_i64s(&Rationals, &[2, 1, 0, 1])).unwrap();
    let p = inflection_poly(1, 2, c.f()).unwrap();
    assert_eq!(wronskian_sign_of(&c, 2, &p), Some(1));
    assert_eq!(printed_wronskian_sign(1), -1);
}

#[test]
fn printed_index_is_not_the_inflection_polynomial() {
    let c = HyperellipticCurve::new(DensePoly::from_i64s(&Rationals, &[1, 2, 0, 0, 0, 1])).unwrap();
    for ell in 3..=5 {
        let printed = inflection_poly_printed_index(2, ell, c.f()).unwrap();
        assert_eq!(wronskian_sign_of(&c, ell, &printed), None, "ℓ = {ell}");
        assert_ne!(printed, inflection_poly(2, ell, c.f()).unwrap());
    }
}
