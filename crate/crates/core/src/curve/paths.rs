//! The matrix M(ℓ,g) with M_ij = C(ℓ−g+j, 2j−i) and its lattice-path count.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::binomial;
use crate::linalg::{berkowitz_det, IntRing, SquareMatrix};

fn check(ell: usize, g: usize) -> Result<()> {
    if g < 1 || ell <= g {
        return Err(Error::Precondition(format!("need ℓ > g ≥ 1, got ℓ = {ell}, g = {g}")));
    }
    Ok(())
}

/// (g+1)×(g+1), indices from 0.
pub fn matrix_m(ell: usize, g: usize) -> Result<SquareMatrix<BigInt>> {
    check(ell, g)?;
    let mu = ell - g;
    Ok(SquareMatrix::from_fn(g + 1, |i, j| {
        if 2 * j < i {
            BigInt::from(0)
        } else {
            binomial(mu + j, 2 * j - i)
        }
    }))
}

pub fn det_m(ell: usize, g: usize) -> Result<BigInt> {
    Ok(berkowitz_det(&IntRing, &matrix_m(ell, g)?))
}

/// Vertex-disjoint tuples of up/right lattice paths a_i = (i, −i) → b_i = (2i, ℓ−g−i).
pub fn gv_path_count(ell: usize, g: usize) -> Result<u64> {
    check(ell, g)?;
    let mu = (ell - g) as i64;
    let g = g as i64;
    // Grid covers x ∈ [0, 2g], y ∈ [−g, μ].
    let w = (2 * g + 1) as usize;
    let h = (g + mu + 1) as usize;
    let mut occupied = vec![false; w * h];
    let idx = |x: i64, y: i64| (x as usize) * h + (y + g) as usize;
    let mut count = 0u64;
    search(0, g, mu, &idx, &mut occupied, &mut count);
    Ok(count)
}

fn search(
    i: i64,
    g: i64,
    mu: i64,
    idx: &impl Fn(i64, i64) -> usize,
    occupied: &mut Vec<bool>,
    count: &mut u64,
) {
    if i > g {
        *count += 1;
        return;
    }
    let (x0, y0) = (i, -i);
    let target = (2 * i, mu - i);
    if occupied[idx(x0, y0)] {
        return;
    }
    occupied[idx(x0, y0)] = true;
    walk(i, (x0, y0), target, g, mu, idx, occupied, count);
    occupied[idx(x0, y0)] = false;
}

#[allow(clippy::too_many_arguments)]
fn walk(
    i: i64,
    pos: (i64, i64),
    target: (i64, i64),
    g: i64,
    mu: i64,
    idx: &impl Fn(i64, i64) -> usize,
    occupied: &mut Vec<bool>,
    count: &mut u64,
) {
    if pos == target {
        search(i + 1, g, mu, idx, occupied, count);
        return;
    }
    for next in [(pos.0 + 1, pos.1), (pos.0, pos.1 + 1)] {
        if next.0 > target.0 || next.1 > target.1 {
            continue;
        }
        let k = idx(next.0, next.1);
        if occupied[k] {
            continue;
        }
        occupied[k] = true;
        walk(i, next, target, g, mu, idx, occupied, count);
        occupied[k] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_matrices() {
        let m = matrix_m(2, 1).unwrap();
        assert_eq!(m.rows(), vec![vec![1.into(), 1.into()], vec![0.into(), 2.into()]]);
        assert_eq!(det_m(2, 1).unwrap(), 2.into());
        let m = matrix_m(3, 1).unwrap();
        assert_eq!(m.rows(), vec![vec![1.into(), 3.into()], vec![0.into(), 3.into()]]);
        assert_eq!(det_m(3, 1).unwrap(), 3.into());
    }

    #[test]
    fn paths_for_small_cases() {
        assert_eq!(gv_path_count(2, 1).unwrap(), 2);
        assert!(gv_path_count(3, 0).is_err());
    }
}
