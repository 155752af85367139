//! Small dense linear algebra: division-free determinants over commutative
//! rings, Gaussian determinants and symmetric diagonalization over fields.

use crate::field::Field;

/// Commutative ring operations, enough for division-free determinants.
pub trait Ring {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E {
        self.sub(&self.zero(), a)
    }
}

/// A field seen as a ring.
pub struct FieldRing<'a, F: Field>(pub &'a F);

impl<F: Field> Ring for FieldRing<'_, F> {
    type E = F::Elem;
    fn zero(&self) -> F::Elem {
        self.0.zero()
    }
    fn one(&self) -> F::Elem {
        self.0.one()
    }
    fn add(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.add(a, b)
    }
    fn sub(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.sub(a, b)
    }
    fn mul(&self, a: &F::Elem, b: &F::Elem) -> F::Elem {
        self.0.mul(a, b)
    }
    fn neg(&self, a: &F::Elem) -> F::Elem {
        self.0.neg(a)
    }
}

/// Square matrix, row major.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<E> {
    n: usize,
    entries: Vec<E>,
}

impl<E: Clone> SquareMatrix<E> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        SquareMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<E>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }
}

/// Determinant by Berkowitz's algorithm; uses only ring operations.
pub fn berkowitz_det<R: Ring>(ring: &R, m: &SquareMatrix<R::E>) -> R::E {
    let n = m.size();
    if n == 0 {
        return ring.one();
    }
    // Characteristic polynomial vector of the trailing principal submatrices,
    // from the 1×1 corner outwards.
    let mut vect: Vec<R::E> = vec![ring.one(), ring.neg(m.get(n - 1, n - 1))];
    for k in (0..n - 1).rev() {
        let size = n - k;
        let a = m.get(k, k).clone();
        let row: Vec<R::E> = (k + 1..n).map(|j| m.get(k, j).clone()).collect();
        let col: Vec<R::E> = (k + 1..n).map(|i| m.get(i, k).clone()).collect();
        let sub = |v: &[R::E]| -> Vec<R::E> {
            (k + 1..n)
                .map(|i| {
                    let mut acc = ring.zero();
                    for (jj, j) in (k + 1..n).enumerate() {
                        acc = ring.add(&acc, &ring.mul(m.get(i, j), &v[jj]));
                    }
                    acc
                })
                .collect()
        };
        // diags = [1, -a, -R C, -R A C, -R A^2 C, ...]
        let mut diags = vec![ring.one(), ring.neg(&a)];
        let mut cur = col;
        for _ in 0..size - 1 {
            let mut dot = ring.zero();
            for (r, c) in row.iter().zip(cur.iter()) {
                dot = ring.add(&dot, &ring.mul(r, c));
            }
            diags.push(ring.neg(&dot));
            cur = sub(&cur);
        }
        // Toeplitz (size+1)×size lower-triangular times vect (length size).
        let mut next = Vec::with_capacity(size + 1);
        for i in 0..=size {
            let mut acc = ring.zero();
            for (j, v) in vect.iter().enumerate() {
                if j <= i {
                    acc = ring.add(&acc, &ring.mul(&diags[i - j], v));
                }
            }
            next.push(acc);
        }
        vect = next;
    }
    let c = vect.pop().expect("nonempty");
    if n % 2 == 0 {
        c
    } else {
        ring.neg(&c)
    }
}

/// Determinant over a field by Gaussian elimination.
pub fn det_gauss<F: Field>(f: &F, rows: &[Vec<F::Elem>]) -> F::Elem {
    let n = rows.len();
    let mut a: Vec<Vec<F::Elem>> = rows.to_vec();
    let mut det = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !f.is_zero(&a[r][c])) else {
            return f.zero();
        };
        if p != c {
            a.swap(p, c);
            det = f.neg(&det);
        }
        let piv = a[c][c].clone();
        det = f.mul(&det, &piv);
        let inv = f.inv(&piv).expect("nonzero pivot");
        for r in c + 1..n {
            if f.is_zero(&a[r][c]) {
                continue;
            }
            let factor = f.mul(&a[r][c], &inv);
            for k in c..n {
                let t = f.mul(&factor, &a[c][k]);
                a[r][k] = f.sub(&a[r][k], &t);
            }
        }
    }
    det
}

/// Diagonal entries of a congruent diagonalization of a symmetric matrix
/// (characteristic ≠ 2). Zero entries mean the form is degenerate.
pub fn diagonalize_symmetric<F: Field>(f: &F, gram: &[Vec<F::Elem>]) -> Vec<F::Elem> {
    let n = gram.len();
    let mut a: Vec<Vec<F::Elem>> = gram.to_vec();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if f.is_zero(&a[k][k]) {
            if let Some(j) = (k + 1..n).find(|&j| !f.is_zero(&a[j][j])) {
                a.swap(k, j);
                for row in a.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !f.is_zero(&a[k][j])) {
                // e_k ← e_k + e_j makes the pivot 2·a_kj.
                for c in 0..n {
                    let t = a[j][c].clone();
                    a[k][c] = f.add(&a[k][c], &t);
                }
                for row in a.iter_mut() {
                    let t = row[j].clone();
                    row[k] = f.add(&row[k], &t);
                }
            }
        }
        let piv = a[k][k].clone();
        diag.push(piv.clone());
        let Some(inv) = f.inv(&piv) else {
            continue;
        };
        for r in k + 1..n {
            if f.is_zero(&a[r][k]) {
                continue;
            }
            let factor = f.mul(&a[r][k], &inv);
            for c in k..n {
                let t = f.mul(&factor, &a[k][c]);
                a[r][c] = f.sub(&a[r][c], &t);
            }
        }
        // The trailing block is now the Schur complement, again symmetric.
        for r in k + 1..n {
            a[k][r] = f.zero();
        }
    }
    diag
}

/// ℤ as a ring.
pub struct IntRing;

impl Ring for IntRing {
    type E = num_bigint::BigInt;
    fn zero(&self) -> Self::E {
        0.into()
    }
    fn one(&self) -> Self::E {
        1.into()
    }
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E {
        a + b
    }
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        a - b
    }
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E {
        a * b
    }
}
