//! Exhaustive reference decoders for small parameters.

use crate::error::{Error, Result};
use crate::gf::{ExtElement, PrimeField};
use crate::linalg::Matrix;
use crate::spread::{Codeword, SpreadCode, Subspace};

const MAX_CODEWORDS: u128 = 1_000_000;
const MAX_FIELD: u64 = 1 << 16;

/// Distance from `received` to the nearest codewords, and all codewords
/// attaining it.
pub fn brute_force_decode(code: &SpreadCode, received: &Subspace) -> Result<(usize, Vec<Codeword>)> {
    match code.cardinality() {
        Some(n) if n <= MAX_CODEWORDS => {}
        _ => return Err(Error::Scale(format!("more than {MAX_CODEWORDS} codewords"))),
    }
    let mut best = usize::MAX;
    let mut nearest = Vec::new();
    for c in code.enumerate() {
        let d = received.distance(&c.subspace)?;
        if d < best {
            best = d;
            nearest.clear();
        }
        if d == best {
            nearest.push(c);
        }
    }
    Ok((best, nearest))
}

/// Every `μ` with `rank(R_1 S Δ(μ) - R_2 S) ≤ (k̃-1)/2`, `k̃ = rank(R_1 | R_2)`.
pub fn mu_characterization(
    code: &SpreadCode,
    left: &Matrix<PrimeField>,
    right: &Matrix<PrimeField>,
) -> Result<Vec<ExtElement>> {
    match code.ext().order() {
        Some(n) if n <= MAX_FIELD => {}
        _ => return Err(Error::Scale(format!("field larger than {MAX_FIELD} elements"))),
    }
    let w = Subspace::row_space(&left.hconcat(right)?);
    let dim = w.dim();
    let k = code.k();
    let a = code.lift(&w.block(0, k)).matmul(code.s())?;
    let b = code.lift(&w.block(1, k)).matmul(code.s())?;
    let mut out = Vec::new();
    for mu in code.ext().elements() {
        let m = a.matmul(&code.delta(&mu))?.sub(&b)?;
        if 2 * m.rank() < dim {
            out.push(mu);
        }
    }
    Ok(out)
}

/// All `d`-dimensional subspaces of `F_q^n`, as RREF bases.
pub fn all_subspaces(base: &PrimeField, n: usize, d: usize) -> Result<Vec<Subspace>> {
    let q = base.modulus() as u128;
    let total = (0..d).fold(1u128, |acc, i| acc.saturating_mul(q.saturating_pow((n - i) as u32)));
    if d > n || total > MAX_CODEWORDS {
        return Err(Error::Scale(format!("too many {d}-subspaces of F_{q}^{n}")));
    }
    let mut out = Vec::new();
    for pivots in crate::linalg::combinations(n, d) {
        let pivots: Vec<usize> = pivots.iter().map(|p| p - 1).collect();
        // free positions: right of the row's pivot, not another pivot column
        let free: Vec<(usize, usize)> = (0..d)
            .flat_map(|i| {
                let pv = pivots.clone();
                (pivots[i] + 1..n).filter(move |c| !pv.contains(c)).map(move |c| (i, c))
            })
            .collect();
        let count = (q as u64).pow(free.len() as u32);
        for mut idx in 0..count {
            let mut m = Matrix::zeros(*base, d, n);
            for (i, &p) in pivots.iter().enumerate() {
                m.set(i, p, 1);
            }
            for &(i, c) in &free {
                m.set(i, c, (idx % q as u64) as u32);
                idx /= q as u64;
            }
            out.push(Subspace::row_space(&m));
        }
    }
    Ok(out)
}
