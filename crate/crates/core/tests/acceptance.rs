mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use spreadcode::channel::{corrupt_with, trial_rng};
use spreadcode::counter;
use spreadcode::decoder::{analyze_general, decode, decode2, decode2_fast, decode2_general, DecodeOutcome};
use spreadcode::gf::{ExtField, Field, PrimeField};
use spreadcode::linalg::{modified_gaussian, IndexTuple, Matrix};
use spreadcode::oracle::{all_subspaces, brute_force_decode};
use spreadcode::spread::{SpreadCode, Subspace};

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_vectors(q: u32, n: usize) -> impl Iterator<Item = Vec<u32>> {
    (1..(q as u64).pow(n as u32)).map(move |idx| (0..n).map(|i| ((idx / (q as u64).pow(i as u32)) % q as u64) as u32).collect())
}

fn code_parameters() -> Check {
    let mut sizes = Vec::new();
    for (q, k, r, size) in [(2, 2, 2, 5), (2, 2, 3, 21), (2, 3, 2, 9), (3, 2, 2, 10)] {
        let code = SpreadCode::new(q, k, r).unwrap();
        let words: Vec<_> = code.enumerate().collect();
        ensure(words.len() == size, || format!("({q},{k},{r}): {} codewords", words.len()))?;
        for (i, a) in words.iter().enumerate() {
            for b in &words[i + 1..] {
                let d = a.subspace.distance(&b.subspace).unwrap();
                ensure(d == 2 * k, || format!("({q},{k},{r}): pairwise distance {d}"))?;
            }
        }
        sizes.push(words.len().to_string());
    }
    Ok(format!("sizes {}", sizes.join("/")))
}

fn spread_partition() -> Check {
    let mut vectors = 0;
    for (q, k, r) in [(2, 2, 2), (2, 3, 2)] {
        let code = SpreadCode::new(q, k, r).unwrap();
        let words: Vec<_> = code.enumerate().collect();
        for v in all_vectors(q, code.n()) {
            let hits = words.iter().filter(|c| c.subspace.contains(&v)).count();
            ensure(hits == 1, || format!("({q},{k},{r}): {v:?} in {hits} codewords"))?;
            vectors += 1;
        }
    }
    Ok(format!("{vectors} vectors"))
}

/// Returns whether the oracle certified a unique codeword.
fn agrees_with_oracle(code: &SpreadCode, w: &Subspace) -> std::result::Result<bool, String> {
    let (d, nearest) = brute_force_decode(code, w).unwrap();
    let out = decode(code, w);
    if d < code.k() {
        ensure(nearest.len() == 1 && out == DecodeOutcome::Decoded(nearest[0].clone()), || {
            format!("mismatch on {:?}", w.basis())
        })?;
        Ok(true)
    } else {
        ensure(!out.is_decoded(), || format!("decoded beyond radius: {:?}", w.basis()))?;
        Ok(false)
    }
}

fn oracle_equivalence() -> Check {
    let code = SpreadCode::new(2, 2, 2).unwrap();
    let mut exhaustive = 0;
    for d in 0..=2 {
        for w in all_subspaces(&code.base(), 4, d).unwrap() {
            agrees_with_oracle(&code, &w)?;
            exhaustive += 1;
        }
    }
    let mut report = vec![format!("{exhaustive} exhaustive")];
    for (cell, (q, k, r)) in [(2, 3, 2), (3, 2, 2), (2, 2, 3)].into_iter().enumerate() {
        let code = SpreadCode::new(q, k, r).unwrap();
        let (mut samples, mut unique) = (0, 0);
        let mut t = 0u32;
        while samples < 1000 {
            let mut rng = trial_rng(2024, cell as u32, t);
            t += 1;
            let erasures = rng.gen_range(0..=k);
            let errors = rng.gen_range(0..=k.min(code.n() - k));
            if k - erasures + errors == 0 {
                continue;
            }
            let c = code.random_codeword(&mut rng);
            let w = corrupt_with(&code, &c, erasures, errors, &mut rng).unwrap();
            if agrees_with_oracle(&code, &w)? {
                unique += 1;
            }
            samples += 1;
        }
        report.push(format!("({q},{k},{r}) {samples} sampled/{unique} unique"));
    }
    Ok(report.join(", "))
}

fn candidate_factorization() -> Check {
    let mut instances = 0;
    let mut total_candidates = 0;
    'outer: for (cell, (q, k)) in [(2, 3), (3, 3), (2, 4), (2, 5), (3, 5), (2, 7)].into_iter().enumerate() {
        let code = SpreadCode::new(q, k, 2).unwrap();
        let f = code.ext();
        let mut per_config = 0;
        for t in 0..5000u32 {
            if per_config >= 100 {
                continue 'outer;
            }
            let mut rng = trial_rng(4, cell as u32, t);
            let d = (k - 1) / 2;
            let erasures = rng.gen_range(0..=d);
            let c = code.random_codeword(&mut rng);
            let w = corrupt_with(&code, &c, erasures, d - erasures, &mut rng).unwrap();
            let (a, b) = (w.block(0, k), w.block(1, k));
            let (a, b) = if a.rank() >= b.rank() { (a, b) } else { (b, a) };
            let Ok(an) = analyze_general(&code, &a, &b) else { continue };
            let (rows, cols) = an.factored_minor();
            for (_, mu) in &an.candidates {
                let v = an.pencil.minor_at(&rows, &cols, mu).unwrap();
                ensure(f.is_zero(&v), || format!("({q},{k}): minor nonzero at candidate"))?;
            }
            ensure(an.passing.len() == 1, || format!("({q},{k}): {} candidates pass", an.passing.len()))?;
            total_candidates += an.candidates.len();
            per_config += 1;
            instances += 1;
        }
    }
    ensure(instances >= 500, || format!("only {instances} instances"))?;
    Ok(format!("{instances} instances, {total_candidates} candidates"))
}

fn ndrank_corollary() -> Check {
    let mut checked = 0;
    for k in [3, 5] {
        let code = SpreadCode::new(2, k, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
        for _ in 0..100 {
            let t = rng.gen_range(0..=(k - 1) / 2);
            let n = random_rank(code.base(), k, t, &mut rng);
            check_ndrank_corollary(&code, &n).map_err(|e| format!("k={k}: {e}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} matrices"))
}

fn fast_path_equivalence() -> Check {
    let mut instances = 0;
    let mut decoded = 0;
    for (cell, (q, k)) in [(2, 3), (3, 3), (2, 5), (3, 4), (2, 7)].into_iter().enumerate() {
        let code = SpreadCode::new(q, k, 2).unwrap();
        let mut per_config = 0;
        let mut t = 0u32;
        while per_config < 200 {
            let mut rng = trial_rng(6, cell as u32, t);
            t += 1;
            let c = code.random_codeword(&mut rng);
            let e = rng.gen_range(0..k);
            let w = corrupt_with(&code, &c, e, e, &mut rng).unwrap();
            let (a, b) = (w.block(0, k), w.block(1, k));
            if a.rank() != k {
                continue;
            }
            let fast = decode2_fast(&code, &a, &b);
            ensure(fast == decode2_general(&code, &a, &b), || format!("({q},{k}): fast and general differ"))?;
            if fast.is_ok() {
                decoded += 1;
            }
            per_config += 1;
            instances += 1;
        }
    }
    Ok(format!("{instances} instances, {decoded} decoded"))
}

fn mean_ext_ops(code: &SpreadCode, trials: u32, cell: u32, pairwise: bool) -> f64 {
    let k = code.k();
    let d = (k - 1) / 2;
    let mut total = 0u64;
    for t in 0..trials {
        let mut rng = trial_rng(7, cell, t);
        let c = code.random_codeword(&mut rng);
        let erasures = rng.gen_range(0..=d);
        let w = corrupt_with(code, &c, erasures, d - erasures, &mut rng).unwrap();
        let ops = if pairwise {
            let (a, b) = (w.block(0, k), w.block(1, k));
            let (out, ops) = counter::measure(|| decode2(code, &a, &b));
            assert!(out.is_ok());
            ops
        } else {
            let (out, ops) = counter::measure(|| decode(code, &w));
            assert_eq!(out, DecodeOutcome::Decoded(c));
            ops
        };
        total += ops.ext_total();
    }
    total as f64 / trials as f64
}

fn complexity_trend() -> Check {
    let ks = [3usize, 5, 7, 9];
    let counts: Vec<f64> = ks
        .iter()
        .map(|&k| mean_ext_ops(&SpreadCode::new(2, k, 2).unwrap(), 40, k as u32, true))
        .collect();
    let mut report = Vec::new();
    for i in 1..ks.len() {
        let ratio = counts[i] / counts[i - 1];
        let quartic = (ks[i] as f64 / ks[i - 1] as f64).powi(4);
        ensure(ratio <= 32.0, || format!("decode2 k={}→{}: ratio {ratio:.2} > 32", ks[i - 1], ks[i]))?;
        report.push(format!("k{}→{} {ratio:.2} ({:.2}×k⁴)", ks[i - 1], ks[i], ratio / quartic));
    }
    let rs = [2usize, 4, 8];
    let counts: Vec<f64> = rs
        .iter()
        .map(|&r| mean_ext_ops(&SpreadCode::new(2, 3, r).unwrap(), 40, 100 + r as u32, false))
        .collect();
    for i in 1..rs.len() {
        let ratio = counts[i] / counts[i - 1];
        let linear = ((rs[i] - 1) * 3) as f64 / ((rs[i - 1] - 1) * 3) as f64;
        ensure(ratio <= 2.0 * linear, || {
            format!("decode r={}→{}: ratio {ratio:.2} > {:.2}", rs[i - 1], rs[i], 2.0 * linear)
        })?;
        report.push(format!("r{}→{} {ratio:.2} (n−k ×{linear:.2})", rs[i - 1], rs[i]));
    }
    Ok(report.join(", "))
}

fn modified_gaussian_postconditions() -> Check {
    let mut runs = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let f8 = ExtField::with_default_modulus(2, 3).unwrap();
    while runs < 600 {
        let k = rng.gen_range(2..=5);
        let density = rng.gen_range(0.2..0.9);
        let res = if runs % 2 == 0 {
            let q = [2u32, 3, 5][rng.gen_range(0..3)];
            let f = PrimeField::new(q).unwrap();
            let data = (0..k * k).map(|_| if rng.gen_bool(density) { rng.gen_range(1..q) } else { 0 }).collect();
            let m = Matrix::new(f, k, k, data).unwrap();
            if m.is_diagonal() {
                continue;
            }
            let (j, l) = modified_gaussian(&m).unwrap();
            check_modified_gaussian(&m, &j, &l)
        } else {
            let data = (0..k * k)
                .map(|_| if rng.gen_bool(density) { f8.element_at(rng.gen_range(1..8)) } else { f8.zero() })
                .collect();
            let m = Matrix::new(f8.clone(), k, k, data).unwrap();
            if m.is_diagonal() {
                continue;
            }
            let (j, l) = modified_gaussian(&m).unwrap();
            check_modified_gaussian(&m, &j, &l)
        };
        res?;
        runs += 1;
    }
    Ok(format!("{runs} runs"))
}

fn lemma_identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let f7 = PrimeField::new(7).unwrap();
    let mut minors = 0;
    for _ in 0..500 {
        let k = rng.gen_range(2..=5);
        let s = rng.gen_range(0..k);
        let m = random_matrix(f7, k, k, &mut rng);
        let j = random_permutation(k, &mut rng);
        let l = random_permutation(k, &mut rng);
        ensure(minors_identity_holds(&m, &j, &l, s), || format!("minors identity fails at s={s}"))?;
        minors += 1;
    }
    let f5 = PrimeField::new(5).unwrap();
    let mut decomp = 0;
    for _ in 0..500 {
        let s = rng.gen_range(1..=4);
        let lead = rng.gen_range(1..5);
        let mus: Vec<u32> = (0..s).map(|_| rng.gen_range(0..5)).collect();
        let mut a = expand_linear_factors(&f5, &lead, &mus);
        ensure(decomp_relation_holds(&f5, &a, s), || format!("relation fails for roots {mus:?}"))?;
        ensure(factors_with_stated_roots(&f5, &a, s), || format!("roots not reproduced for {mus:?}"))?;
        // perturbed families: relation holds exactly when the stated roots factor
        let full = (1usize << s) - 1;
        let u = rng.gen_range(0..full.max(1));
        a[u] = f5.add(&a[u], &rng.gen_range(1..5));
        ensure(decomp_relation_holds(&f5, &a, s) == factors_with_stated_roots(&f5, &a, s), || {
            "converse fails on perturbed family".to_string()
        })?;
        decomp += 1;
    }
    let mut extensions = 0;
    while extensions < 200 {
        let k = rng.gen_range(3..=5);
        let s = rng.gen_range(1..=(k - 1) / 2);
        let diag: Vec<u32> = (0..k).map(|_| rng.gen_range(0..5)).collect();
        let low = random_matrix(f5, k, s, &mut rng).matmul(&random_matrix(f5, s, k, &mut rng)).unwrap();
        let m = Matrix::diagonal(f5, &diag).add(&low).unwrap();
        if m.is_diagonal() {
            continue;
        }
        let (j, l) = modified_gaussian(&m).unwrap();
        let rest = IndexTuple::range(1, k).without(&j.concat(&l));
        if rest.is_empty() {
            continue;
        }
        let kset = IndexTuple::new(rest.as_slice()[..rng.gen_range(1..=rest.len())].to_vec());
        ensure(maximal_extension_identity(&m, &j, &l, &kset), || "extension identity fails".to_string())?;
        let a = diagonal_unknown_coefficients(&m, &j, &l, &kset);
        ensure(decomp_relation_holds(&f5, &a, kset.len()), || "diagonal family violates relation".to_string())?;
        extensions += 1;
    }
    Ok(format!("{minors} minors, {decomp} decompositions, {extensions} maximal extensions"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("code parameters", Duration::from_secs(10), code_parameters),
        ("spread partition", Duration::from_secs(10), spread_partition),
        ("decoder/oracle equivalence", Duration::from_secs(60), oracle_equivalence),
        ("candidate roots", Duration::MAX, candidate_factorization),
        ("ndrank corollary", Duration::MAX, ndrank_corollary),
        ("fast path equivalence", Duration::MAX, fast_path_equivalence),
        ("complexity trend", Duration::from_secs(300), complexity_trend),
        ("modified gaussian", Duration::MAX, modified_gaussian_postconditions),
        ("lemma identities", Duration::MAX, lemma_identities),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let res = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".to_string()));
        let took = start.elapsed();
        let res = match res {
            Ok(_) if took > limit => Err(format!("took {took:.1?}, limit {limit:?}")),
            r => r,
        };
        match res {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}) [{took:.2?}]", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {e} [{took:.2?}]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
