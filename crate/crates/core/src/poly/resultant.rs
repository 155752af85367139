//! Subresultant resultants and discriminants.
//!
//! All divisions performed are exact in the coefficient domain, so over
//! ℚ(a) with polynomial inputs the intermediate values stay polynomial.

use super::DensePoly;
use crate::error::{Error, Result};
use crate::field::Field;

/// lc(B)^{δ+1}·A mod B computed without divisions.
pub fn pseudo_rem<F: Field>(a: &DensePoly<F>, b: &DensePoly<F>) -> DensePoly<F> {
    let f = a.field();
    let db = b.degree().expect("nonzero divisor");
    let lb = b.lc().expect("nonzero").clone();
    let Some(da) = a.degree() else {
        return a.clone();
    };
    if da < db {
        return a.clone();
    }
    let mut r = a.coeffs().to_vec();
    for k in (0..=da - db).rev() {
        let top = r.get(k + db).cloned().unwrap_or_else(|| f.zero());
        for c in r.iter_mut() {
            *c = f.mul(c, &lb);
        }
        if !f.is_zero(&top) {
            for (j, bj) in b.coeffs().iter().enumerate() {
                let t = f.mul(&top, bj);
                r[k + j] = f.sub(&r[k + j], &t);
            }
        }
    }
    r.truncate(db);
    DensePoly::new(f, r)
}

fn exact_div_elem<F: Field>(f: &F, a: &F::Elem, b: &F::Elem) -> F::Elem {
    f.div(a, b).expect("subresultant divisor is nonzero")
}

pub fn resultant<F: Field>(a: &DensePoly<F>, b: &DensePoly<F>) -> Result<F::Elem> {
    let f = a.field().clone();
    match (a.degree(), b.degree()) {
        (None, None) => return Err(Error::UndefinedResultant),
        (None, _) | (_, None) => return Ok(f.zero()),
        (Some(0), Some(n)) => return Ok(f.pow(a.lc().expect("nonzero"), n as u64)),
        (Some(m), Some(0)) => return Ok(f.pow(b.lc().expect("nonzero"), m as u64)),
        _ => {}
    }
    let (mut a, mut b) = (a.clone(), b.clone());
    let mut s = f.one();
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
        if a.degree().unwrap() % 2 == 1 && b.degree().unwrap() % 2 == 1 {
            s = f.neg(&s);
        }
    }
    let mut g = f.one();
    let mut h = f.one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = f.neg(&s);
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        let div = f.mul(&g, &f.pow(&h, delta as u64));
        b = DensePoly::new(
            &f,
            r.coeffs().iter().map(|c| exact_div_elem(&f, c, &div)).collect(),
        );
        g = a.lc().expect("nonzero").clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => exact_div_elem(&f, &f.pow(&g, delta as u64), &f.pow(&h, delta as u64 - 1)),
        };
        match b.degree() {
            None => return Ok(f.zero()),
            Some(0) => {
                let da = a.degree().unwrap() as u64;
                let num = f.pow(b.lc().expect("nonzero"), da);
                let hh = if da == 0 {
                    num
                } else {
                    exact_div_elem(&f, &num, &f.pow(&h, da - 1))
                };
                return Ok(f.mul(&s, &hh));
            }
            _ => {}
        }
    }
}

/// (−1)^{n(n−1)/2}·Res(p, p′)/lc(p).
pub fn discriminant<F: Field>(p: &DensePoly<F>) -> Result<F::Elem> {
    let f = p.field();
    let n = match p.degree() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::Precondition("discriminant needs degree ≥ 1".into())),
    };
    let r = resultant(p, &p.derivative())?;
    let q = exact_div_elem(f, &r, p.lc().expect("nonzero"));
    Ok(if (n * (n - 1) / 2) % 2 == 1 {
        f.neg(&q)
    } else {
        q
    })
}
