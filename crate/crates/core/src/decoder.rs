//! Minimum-distance decoding of spread codes.
//!
//! [`decode`] reduces an `r`-block received space to pairwise instances
//! `rowsp(R_j R_i)`, each solved by [`decode2`]. The pairwise decoder finds
//! the unique `μ ∈ F_{q^k}` with
//! `rank(R_1 S Δ(μ) - R_2 S) ≤ (k̃-1)/2`, by writing down the roots of one
//! explicitly factorable minor of that pencil and testing each of them.
//! When `R_1` is invertible a single minor ratio gives `μ` directly
//! ([`decode2_fast`]).

use crate::error::Result;
use crate::gf::{ExtElement, ExtField, Field, PrimeField};
use crate::linalg::{modified_gaussian, IndexTuple, Matrix};
use crate::spread::{Codeword, SpreadCode, Subspace};

/// Why a decode call produced no codeword.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FailureReason {
    /// No codeword lies within distance `< k` of the received space.
    NoCodewordWithinRadius,
    /// More than one distinct candidate passed the rank test.
    AmbiguousCandidates,
    /// The received space is outside the decoder's domain: wrong ambient
    /// dimension or the zero space.
    InvalidInput,
}

impl FailureReason {
    pub fn code(&self) -> u8 {
        match self {
            FailureReason::NoCodewordWithinRadius => 1,
            FailureReason::AmbiguousCandidates => 2,
            FailureReason::InvalidInput => 3,
        }
    }
}

impl std::fmt::Display for FailureReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FailureReason::NoCodewordWithinRadius => "no codeword within distance < k",
            FailureReason::AmbiguousCandidates => "more than one candidate passed the rank test",
            FailureReason::InvalidInput => "received space outside the decoder's domain",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecodeOutcome {
    Decoded(Codeword),
    Failure(FailureReason),
}

impl DecodeOutcome {
    pub fn codeword(&self) -> Option<&Codeword> {
        match self {
            DecodeOutcome::Decoded(c) => Some(c),
            DecodeOutcome::Failure(_) => None,
        }
    }

    pub fn is_decoded(&self) -> bool {
        matches!(self, DecodeOutcome::Decoded(_))
    }
}

/// A codeword of the two-block code: `rowsp(0 | I)` or `rowsp(I | φ(μ))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PairCodeword {
    Infinity,
    Finite(ExtElement),
}

impl PairCodeword {
    pub fn point(&self, ext: &ExtField) -> [ExtElement; 2] {
        match self {
            PairCodeword::Infinity => [ext.zero(), ext.one()],
            PairCodeword::Finite(mu) => [ext.one(), mu.clone()],
        }
    }

    /// Basis `(0 | I)` or `(I | φ(μ))`.
    pub fn basis(&self, code: &SpreadCode) -> Matrix<PrimeField> {
        let k = code.k();
        let id = Matrix::identity(code.base(), k);
        let (left, right) = match self {
            PairCodeword::Infinity => (Matrix::zeros(code.base(), k, k), id),
            PairCodeword::Finite(mu) => (id, code.phi(mu)),
        };
        left.hconcat(&right).expect("equal row counts")
    }

    /// The same codeword with its two blocks exchanged.
    fn swapped(&self, ext: &ExtField) -> PairCodeword {
        match self {
            PairCodeword::Infinity => PairCodeword::Finite(ext.zero()),
            PairCodeword::Finite(mu) if ext.is_zero(mu) => PairCodeword::Infinity,
            PairCodeword::Finite(mu) => PairCodeword::Finite(ext.inv(mu).expect("nonzero")),
        }
    }
}

pub type PairOutcome = std::result::Result<PairCodeword, FailureReason>;

/// Which branch of the pairwise decoder produced the outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// The received space already is a codeword.
    Membership,
    /// One block has rank `≤ (k̃-1)/2`; the answer is a block-zero codeword.
    LowRankBlock,
    /// `R_1` (or `R_2`) invertible: single minor ratio.
    Fast,
    /// Candidate roots of a factorable minor.
    General,
    /// Rejected before any branch ran.
    Rejected,
}

/// `R(x) = A·Δ(x) - B` over `F_{q^k}`; entry `(i, j)` is
/// `A[i][j]·x^{[j]} - B[i][j]` (0-based `j`).
#[derive(Debug, Clone)]
pub struct AffinePencil {
    pub a: Matrix<ExtField>,
    pub b: Matrix<ExtField>,
}

impl AffinePencil {
    pub fn field(&self) -> &ExtField {
        self.a.field()
    }

    /// `R(μ)`
    pub fn eval(&self, mu: &ExtElement) -> Matrix<ExtField> {
        let f = self.field();
        let k = self.a.cols();
        let conj: Vec<ExtElement> = (0..k).map(|j| f.frobenius(mu, j)).collect();
        let mut out = self.b.neg();
        for i in 0..self.a.rows() {
            for (j, c) in conj.iter().enumerate() {
                let a = self.a.get(i, j);
                if f.is_zero(a) {
                    continue;
                }
                let v = f.add(out.get(i, j), &f.mul(a, c));
                out.set(i, j, v);
            }
        }
        out
    }

    /// `R(0) = -B`.
    pub fn at_zero(&self) -> Matrix<ExtField> {
        self.b.neg()
    }

    /// `[J;L]_{R(μ)}`
    pub fn minor_at(&self, rows: &IndexTuple, cols: &IndexTuple, mu: &ExtElement) -> Result<ExtElement> {
        self.eval(mu).minor(rows, cols)
    }
}

/// Everything the general pairwise branch computes, exposed for
/// verification.
#[derive(Debug, Clone)]
pub struct GeneralAnalysis {
    pub pencil: AffinePencil,
    /// Dimension `k̃` of the received space.
    pub dim: usize,
    /// `rank(R_1)`.
    pub rank_left: usize,
    /// Rows and columns of the block of `R(x)` whose only unknowns sit on the
    /// diagonal.
    pub reduced_index: IndexTuple,
    pub rows: IndexTuple,
    pub cols: IndexTuple,
    /// Diagonal positions appended to `rows`/`cols` to form the factorable
    /// minor.
    pub k_set: IndexTuple,
    /// `(c, μ_c)` for each `c` in `k_set`.
    pub candidates: Vec<(usize, ExtElement)>,
    /// Distinct candidates passing the rank test.
    pub passing: Vec<ExtElement>,
}

impl GeneralAnalysis {
    /// Row and column tuples of the factorable minor: `J'∪K`, `L'∪K`.
    pub fn factored_minor(&self) -> (IndexTuple, IndexTuple) {
        (self.rows.concat(&self.k_set), self.cols.concat(&self.k_set))
    }
}

#[inline]
fn is_small(rank: usize, dim: usize) -> bool {
    // rank ≤ (dim-1)/2
    2 * rank < dim
}

/// Roots of `[J'∪K; L'∪K]_{R(x)}`: for each `c ∈ K`,
/// `μ_c = (-[J'∪(c); L'∪(c)]_{R(0)} / [J';L']_{R(0)})^{[k-(c-1)]}`.
///
/// Valid when `(J', L')` is a maximal nonvanishing off-diagonal minor of a
/// block of `R(x)` whose unknowns sit on its diagonal: the Schur complement
/// of `[J';L']` is then diagonal, so the minor splits into linear factors in
/// `x^{[c-1]}`.
pub fn candidate_roots(
    pencil: &AffinePencil,
    rows: &IndexTuple,
    cols: &IndexTuple,
    k_set: &IndexTuple,
) -> Result<Vec<(usize, ExtElement)>> {
    let f = pencil.field();
    let k = f.degree();
    let r0 = pencil.at_zero();
    let den = r0.minor(rows, cols)?;
    let den_inv = f.inv(&den)?;
    k_set
        .iter()
        .map(|c| {
            let num = r0.minor(&rows.with(c), &cols.with(c))?;
            let root = f.neg(&f.mul(&num, &den_inv));
            Ok((c, f.frobenius(&root, (k - (c - 1)) % k)))
        })
        .collect()
}

/// Splits a pair of blocks into the RREF basis of their joint row space.
fn normalize_pair(
    code: &SpreadCode,
    left: &Matrix<PrimeField>,
    right: &Matrix<PrimeField>,
) -> std::result::Result<(Subspace, Matrix<PrimeField>, Matrix<PrimeField>), FailureReason> {
    let k = code.k();
    if left.cols() != k || right.cols() != k || left.rows() != right.rows() {
        return Err(FailureReason::InvalidInput);
    }
    let joint = left.hconcat(right).map_err(|_| FailureReason::InvalidInput)?;
    let w = Subspace::row_space(&joint);
    if w.dim() == 0 {
        return Err(FailureReason::InvalidInput);
    }
    let (a, b) = (w.block(0, k), w.block(1, k));
    Ok((w, a, b))
}

/// Minimum-distance decoder for the two-block code `rowsp(R_1 | R_2)`.
pub fn decode2(code: &SpreadCode, left: &Matrix<PrimeField>, right: &Matrix<PrimeField>) -> PairOutcome {
    decode2_traced(code, left, right, false).0
}

/// [`decode2`] with the fast branch disabled.
pub fn decode2_general(
    code: &SpreadCode,
    left: &Matrix<PrimeField>,
    right: &Matrix<PrimeField>,
) -> PairOutcome {
    decode2_traced(code, left, right, true).0
}

/// [`decode2`], also reporting the branch taken.
pub fn decode2_traced(
    code: &SpreadCode,
    left: &Matrix<PrimeField>,
    right: &Matrix<PrimeField>,
    general_only: bool,
) -> (PairOutcome, Route) {
    let (w, r1, r2) = match normalize_pair(code, left, right) {
        Ok(v) => v,
        Err(e) => return (Err(e), Route::Rejected),
    };
    let k = code.k();
    let dim = w.dim();
    let (rank1, rank2) = (r1.rank(), r2.rank());

    let (outcome, route) = 'route: {
        if dim == k {
            if rank1 == k {
                let x = r1.inverse().expect("full rank").matmul(&r2).expect("square");
                if code.in_companion_algebra(&x) {
                    let mu = code.phi_inverse(&x).expect("member of F_q[P]");
                    break 'route (Ok(PairCodeword::Finite(mu)), Route::Membership);
                }
            } else if rank1 == 0 {
                break 'route (Ok(PairCodeword::Infinity), Route::Membership);
            }
        }
        if is_small(rank1, dim) {
            break 'route (Ok(PairCodeword::Infinity), Route::LowRankBlock);
        }
        if is_small(rank2, dim) {
            break 'route (Ok(PairCodeword::Finite(code.ext().zero())), Route::LowRankBlock);
        }
        let swap = rank1 < rank2;
        let (a, b, rank_a) = if swap { (&r2, &r1, rank2) } else { (&r1, &r2, rank1) };
        let (res, route) = if dim == k && rank_a == k && !general_only {
            (fast_branch(code, a, b), Route::Fast)
        } else {
            (general_branch(code, a, b), Route::General)
        };
        let res = if swap { res.map(|c| c.swapped(code.ext())) } else { res };
        (res, route)
    };

    let outcome = outcome.and_then(|c| {
        let cw = Subspace::row_space(&c.basis(code));
        match w.distance(&cw) {
            Ok(d) if d < k => Ok(c),
            _ => Err(FailureReason::NoCodewordWithinRadius),
        }
    });
    (outcome, route)
}

/// Pairwise decoder for invertible `R_1`: with `D = S^{-1} R_1^{-1} R_2 S`,
/// `s` is the rank of the top-right `⌊(k-1)/2⌋` corner of `D` and
/// `μ = -[(1)∪(2..s+1); (1)∪(k-s+1..k)]_{-D} / [(2..s+1); (k-s+1..k)]_{-D}`.
pub fn decode2_fast(code: &SpreadCode, left: &Matrix<PrimeField>, right: &Matrix<PrimeField>) -> PairOutcome {
    let (w, r1, r2) = normalize_pair(code, left, right)?;
    if r1.rank() != code.k() {
        return Err(FailureReason::InvalidInput);
    }
    let c = fast_branch(code, &r1, &r2)?;
    let cw = Subspace::row_space(&c.basis(code));
    match w.distance(&cw) {
        Ok(d) if d < code.k() => Ok(c),
        _ => Err(FailureReason::NoCodewordWithinRadius),
    }
}

fn fast_branch(code: &SpreadCode, r1: &Matrix<PrimeField>, r2: &Matrix<PrimeField>) -> PairOutcome {
    let f = code.ext();
    let k = code.k();
    let x = r1.inverse().expect("invertible").matmul(r2).expect("square");
    let d = code
        .s_inv()
        .matmul(&code.lift(&x))
        .and_then(|m| m.matmul(code.s()))
        .expect("square");
    if d.is_diagonal() {
        // x ∈ F_q[P]
        return code
            .phi_inverse(&x)
            .map(PairCodeword::Finite)
            .map_err(|_| FailureReason::NoCodewordWithinRadius);
    }
    let r0 = d.neg();
    let h = (k - 1) / 2;
    let corner_rows: Vec<usize> = (0..h).collect();
    let corner_cols: Vec<usize> = (k - h..k).collect();
    let s = r0.select(&corner_rows, &corner_cols).rank();
    let rows = IndexTuple::range(2, s + 1);
    let cols = IndexTuple::range(k - s + 1, k);
    let lead = IndexTuple::new(vec![1]);
    let coef = r0.minor(&rows, &cols).expect("indices in range");
    if f.is_zero(&coef) {
        return Err(FailureReason::NoCodewordWithinRadius);
    }
    let cst = r0.minor(&lead.concat(&rows), &lead.concat(&cols)).expect("indices in range");
    let mu = f.neg(&f.div(&cst, &coef).expect("nonzero"));
    let delta = code.delta(&mu);
    let residual = delta.sub(&d).expect("square");
    if is_small(residual.rank(), k) {
        Ok(PairCodeword::Finite(mu))
    } else {
        Err(FailureReason::NoCodewordWithinRadius)
    }
}

/// Runs the general pairwise branch on `rowsp(R_1 | R_2)`, assuming
/// `rank(R_1) ≥ rank(R_2) > (k̃-1)/2`.
pub fn analyze_general(
    code: &SpreadCode,
    left: &Matrix<PrimeField>,
    right: &Matrix<PrimeField>,
) -> std::result::Result<GeneralAnalysis, FailureReason> {
    let (w, r1, r2) = normalize_pair(code, left, right)?;
    let k = code.k();
    let dim = w.dim();
    let rank_left = r1.rank();
    if rank_left < r2.rank() || is_small(r2.rank(), dim) {
        return Err(FailureReason::InvalidInput);
    }

    let s = code.s();
    let x1 = code.lift(&r1).matmul(s).expect("shapes agree");
    let x2 = code.lift(&r2).matmul(s).expect("shapes agree");
    let (reduced, pivots) = x1.hconcat(&x2).expect("same rows").echelon();
    let reduced = reduced.pad_rows(k.max(dim));
    let pencil = AffinePencil {
        a: reduced.column_block(0, k),
        b: reduced.column_block(k, 2 * k),
    };

    // Left pivots are 1..=rank_left; right pivots l_i mark columns whose
    // only unknown sits in a row outside the diagonal block.
    let right_pivots: Vec<usize> = pivots.iter().filter(|&&c| c >= k).map(|&c| c - k + 1).collect();
    debug_assert!(pivots.iter().filter(|&&c| c < k).copied().eq(0..rank_left));
    let excluded = IndexTuple::new(right_pivots).concat(&IndexTuple::range(rank_left + 1, k));
    let reduced_index = IndexTuple::range(1, k).without(&excluded);

    let r0 = pencil.at_zero();
    let local: Vec<usize> = reduced_index.iter().map(|i| i - 1).collect();
    let block = r0.select(&local, &local);
    let (rows, cols) = if block.is_diagonal() {
        (IndexTuple::empty(), IndexTuple::empty())
    } else {
        let (j, l) = modified_gaussian(&block).expect("non-diagonal square block");
        let to_global = |t: IndexTuple| IndexTuple::new(t.iter().map(|i| reduced_index.as_slice()[i - 1]).collect());
        (to_global(j), to_global(l))
    };

    let target = dim.div_ceil(2) + rank_left;
    let used = dim + rows.len();
    let free = reduced_index.without(&rows).without(&cols);
    let need = target.saturating_sub(used);
    if target <= used || free.len() < need {
        return Err(FailureReason::NoCodewordWithinRadius);
    }
    let k_set = IndexTuple::new(free.as_slice()[..need].to_vec());
    let candidates = candidate_roots(&pencil, &rows, &cols, &k_set).expect("nonzero pivot minor");

    let mut passing: Vec<ExtElement> = Vec::new();
    for (_, mu) in &candidates {
        if passing.contains(mu) {
            continue;
        }
        if is_small(pencil.eval(mu).rank(), dim) {
            passing.push(mu.clone());
        }
    }
    Ok(GeneralAnalysis {
        pencil,
        dim,
        rank_left,
        reduced_index,
        rows,
        cols,
        k_set,
        candidates,
        passing,
    })
}

fn general_branch(code: &SpreadCode, r1: &Matrix<PrimeField>, r2: &Matrix<PrimeField>) -> PairOutcome {
    let analysis = analyze_general(code, r1, r2)?;
    match analysis.passing.as_slice() {
        [mu] => Ok(PairCodeword::Finite(mu.clone())),
        [] => Err(FailureReason::NoCodewordWithinRadius),
        _ => Err(FailureReason::AmbiguousCandidates),
    }
}

/// Minimum-distance decoder for `S_r`: returns the codeword within distance
/// `< k` of `received`, if there is one.
pub fn decode(code: &SpreadCode, received: &Subspace) -> DecodeOutcome {
    let k = code.k();
    let dim = received.dim();
    if received.ambient() != code.n() || dim == 0 {
        return DecodeOutcome::Failure(FailureReason::InvalidInput);
    }
    let blocks = received.blocks(k);
    let ranks: Vec<usize> = blocks.iter().map(Matrix::rank).collect();
    let Some(lead) = ranks.iter().position(|&r| !is_small(r, dim)) else {
        return DecodeOutcome::Failure(FailureReason::NoCodewordWithinRadius);
    };
    let ext = code.ext();
    let mut point = vec![ext.zero(); code.r()];
    point[lead] = ext.one();
    for i in lead + 1..code.r() {
        if is_small(ranks[i], dim) {
            continue;
        }
        match decode2(code, &blocks[lead], &blocks[i]) {
            Ok(PairCodeword::Finite(mu)) => point[i] = mu,
            Ok(PairCodeword::Infinity) => {
                return DecodeOutcome::Failure(FailureReason::NoCodewordWithinRadius)
            }
            Err(reason) => return DecodeOutcome::Failure(reason),
        }
    }
    let cw = code.encode(&point).expect("leading coordinate is one");
    match received.distance(&cw.subspace) {
        Ok(d) if d < k => DecodeOutcome::Decoded(cw),
        _ => DecodeOutcome::Failure(FailureReason::NoCodewordWithinRadius),
    }
}
