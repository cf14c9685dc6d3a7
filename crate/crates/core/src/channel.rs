//! Seeded error/erasure channel and decoding simulations.
//!
//! A transmitted codeword `C` arrives as `R = H + E`: `H` a uniformly random
//! `(k-ε)`-dimensional subspace of `C`, `E` spanned by `e` random vectors
//! with `R ∩ C = H`. Samples are redrawn until `d(R, C) = e + ε` exactly.
//!
//! Randomness comes from ChaCha8 seeded with the run seed; trial `t` of grid
//! cell `c` draws from stream `(c << 32) | t`, so any single trial can be
//! replayed in isolation.

use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::counter;
use crate::decoder::{decode, DecodeOutcome};
use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::linalg::Matrix;
use crate::spread::{Codeword, SpreadCode, Subspace};

pub const RETRY_BUDGET: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChannelSpec {
    pub erasures: usize,
    pub errors: usize,
    pub seed: u64,
}

impl ChannelSpec {
    pub fn distance(&self) -> usize {
        self.erasures + self.errors
    }
}

/// RNG for trial `trial` of grid cell `cell`.
pub fn trial_rng(seed: u64, cell: u32, trial: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((cell as u64) << 32) | trial as u64);
    rng
}

fn random_matrix<R: Rng + ?Sized>(base: &PrimeField, rows: usize, cols: usize, rng: &mut R) -> Matrix<PrimeField> {
    let q = base.modulus();
    let data = (0..rows * cols).map(|_| rng.gen_range(0..q)).collect();
    Matrix::new(*base, rows, cols, data).expect("sizes agree")
}

fn check_spec(code: &SpreadCode, erasures: usize, errors: usize) -> Result<()> {
    let k = code.k();
    if erasures > k {
        return Err(Error::ChannelSpec(format!("{erasures} erasures exceed k = {k}")));
    }
    if errors > code.n() - k {
        return Err(Error::ChannelSpec(format!("{errors} errors exceed n - k = {}", code.n() - k)));
    }
    if k - erasures + errors == 0 {
        return Err(Error::ChannelSpec("received space would be zero".into()));
    }
    Ok(())
}

/// Corrupts `c` with `erasures` dropped and `errors` adjoined dimensions.
pub fn corrupt_with<R: Rng + ?Sized>(
    code: &SpreadCode,
    c: &Codeword,
    erasures: usize,
    errors: usize,
    rng: &mut R,
) -> Result<Subspace> {
    check_spec(code, erasures, errors)?;
    let base = code.base();
    let k = code.k();
    let kept = k - erasures;
    let target = erasures + errors;
    for _ in 0..RETRY_BUDGET {
        let g = random_matrix(&base, kept, k, rng);
        if g.rank() != kept {
            continue;
        }
        let h = g.matmul(c.subspace.basis())?;
        let e = random_matrix(&base, errors, code.n(), rng);
        let r = Subspace::row_space(&h.stack(&e)?);
        if r.dim() == kept + errors && r.distance(&c.subspace)? == target {
            return Ok(r);
        }
    }
    Err(Error::SamplingExhausted(RETRY_BUDGET))
}

/// [`corrupt_with`] driven by the spec's own seed.
pub fn corrupt(code: &SpreadCode, c: &Codeword, spec: &ChannelSpec) -> Result<Subspace> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    corrupt_with(code, c, spec.erasures, spec.errors, &mut rng)
}

/// Outcome tallies of one `(e, ε)` grid cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellStats {
    pub errors: usize,
    pub erasures: usize,
    pub trials: usize,
    /// Decoded to the transmitted codeword.
    pub successes: usize,
    pub failures: usize,
    /// Mean and max extension-field operations per decode call.
    pub mean_ops: f64,
    pub max_ops: u64,
}

impl fmt::Display for CellStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {} {} {:.2} {}",
            self.errors, self.erasures, self.trials, self.successes, self.failures, self.mean_ops, self.max_ops
        )
    }
}

pub const STATS_HEADER: &str = "e eps trials successes failures mean_ops max_ops";

struct Trial {
    success: bool,
    ops: u64,
}

fn run_trial(code: &SpreadCode, seed: u64, cell: u32, trial: u32, erasures: usize, errors: usize) -> Result<Trial> {
    let mut rng = trial_rng(seed, cell, trial);
    let sent = code.random_codeword(&mut rng);
    let received = corrupt_with(code, &sent, erasures, errors, &mut rng)?;
    let (out, ops) = counter::measure(|| decode(code, &received));
    Ok(Trial {
        success: out == DecodeOutcome::Decoded(sent),
        ops: ops.ext_total(),
    })
}

/// Transmits `trials` random codewords through each `(errors, erasures)`
/// cell and decodes them. Records come back in the order of `cells`.
pub fn simulate(code: &SpreadCode, trials: usize, cells: &[(usize, usize)], seed: u64) -> Result<Vec<CellStats>> {
    if trials == 0 {
        return Err(Error::ChannelSpec("trials must be at least 1".into()));
    }
    cells
        .iter()
        .enumerate()
        .map(|(ci, &(errors, erasures))| {
            check_spec(code, erasures, errors)?;
            let results: Vec<Trial> = (0..trials)
                .into_par_iter()
                .map(|t| run_trial(code, seed, ci as u32, t as u32, erasures, errors))
                .collect::<Result<_>>()?;
            let successes = results.iter().filter(|t| t.success).count();
            let total: u64 = results.iter().map(|t| t.ops).sum();
            Ok(CellStats {
                errors,
                erasures,
                trials,
                successes,
                failures: trials - successes,
                mean_ops: total as f64 / trials as f64,
                max_ops: results.iter().map(|t| t.ops).max().unwrap_or(0),
            })
        })
        .collect()
}
