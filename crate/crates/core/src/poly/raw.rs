//! Coefficient-vector kernels shared by `DensePoly` and extension arithmetic.
//! Vectors are lowest degree first and kept trimmed.

use crate::field::Field;

pub fn trim<F: Field>(f: &F, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
    while v.last().is_some_and(|c| f.is_zero(c)) {
        v.pop();
    }
    v
}

pub fn add<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => f.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    trim(f, out)
}

pub fn sub<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => f.sub(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => f.neg(y),
            (None, None) => unreachable!(),
        });
    }
    trim(f, out)
}

pub fn neg<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    a.iter().map(|c| f.neg(c)).collect()
}

pub fn scale<F: Field>(f: &F, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
    if f.is_zero(c) {
        return Vec::new();
    }
    trim(f, a.iter().map(|x| f.mul(x, c)).collect())
}

pub fn mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = f.mul(x, y);
            out[i + j] = f.add(&out[i + j], &t);
        }
    }
    trim(f, out)
}

/// Quotient and remainder; `None` if `b` is zero or its leading coefficient is not a unit.
pub fn divrem<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> Option<(Vec<F::Elem>, Vec<F::Elem>)> {
    let lb = b.last()?;
    let inv = f.inv(lb)?;
    if a.len() < b.len() {
        return Some((Vec::new(), a.to_vec()));
    }
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![f.zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = f.mul(&r[k + db], &inv);
        if f.is_zero(&c) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let t = f.mul(&c, bj);
            r[k + j] = f.sub(&r[k + j], &t);
        }
        q[k] = c;
    }
    r.truncate(db);
    Some((trim(f, q), trim(f, r)))
}

pub fn rem<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    divrem(f, a, b).expect("divisor with unit leading coefficient").1
}

pub fn monic<F: Field>(f: &F, a: &[F::Elem]) -> Vec<F::Elem> {
    match a.last() {
        None => Vec::new(),
        Some(l) => {
            let inv = f.inv(l).expect("leading coefficient of a field polynomial is a unit");
            a.iter().map(|c| f.mul(c, &inv)).collect()
        }
    }
}

/// Monic gcd; gcd(0, 0) = 0.
pub fn gcd<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

/// Returns `(g, s, t)` with `s·a + t·b = g`, g monic.
pub fn xgcd<F: Field>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>, Vec<F::Elem>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![f.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![f.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(f, &r0, &r1).expect("nonzero divisor");
        let s = sub(f, &s0, &mul(f, &q, &s1));
        let t = sub(f, &t0, &mul(f, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    match r0.last() {
        None => (r0, s0, t0),
        Some(l) => {
            let inv = f.inv(l).expect("unit");
            (
                scale(f, &r0, &inv),
                scale(f, &s0, &inv),
                scale(f, &t0, &inv),
            )
        }
    }
}

pub fn eval<F: Field>(f: &F, a: &[F::Elem], x: &F::Elem) -> F::Elem {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

/// `a^e mod m` with square-and-multiply.
pub fn powmod<F: Field>(
    f: &F,
    a: &[F::Elem],
    e: &num_bigint::BigUint,
    m: &[F::Elem],
) -> Vec<F::Elem> {
    let mut acc = rem(f, &[f.one()], m);
    let base = rem(f, a, m);
    for i in (0..e.bits()).rev() {
        acc = rem(f, &mul(f, &acc, &acc), m);
        if e.bit(i) {
            acc = rem(f, &mul(f, &acc, &base), m);
        }
    }
    acc
}
