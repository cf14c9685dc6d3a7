#![allow(dead_code)]

use rand::Rng;

use spreadcode::gf::{Field, PrimeField};
use spreadcode::linalg::{IndexTuple, Matrix};
use spreadcode::spread::SpreadCode;

pub fn random_matrix<R: Rng + ?Sized>(f: PrimeField, rows: usize, cols: usize, rng: &mut R) -> Matrix<PrimeField> {
    let data = (0..rows * cols).map(|_| rng.gen_range(0..f.modulus())).collect();
    Matrix::new(f, rows, cols, data).unwrap()
}

/// Random `k×k` matrix of rank exactly `t`.
pub fn random_rank<R: Rng + ?Sized>(f: PrimeField, k: usize, t: usize, rng: &mut R) -> Matrix<PrimeField> {
    loop {
        let m = random_matrix(f, k, t, rng).matmul(&random_matrix(f, t, k, rng)).unwrap();
        if m.rank() == t {
            return m;
        }
    }
}

pub fn random_permutation<R: Rng + ?Sized>(k: usize, rng: &mut R) -> IndexTuple {
    let mut v: Vec<usize> = (1..=k).collect();
    for i in (1..k).rev() {
        v.swap(i, rng.gen_range(0..=i));
    }
    IndexTuple::new(v)
}

fn prefix(t: &IndexTuple, n: usize) -> IndexTuple {
    IndexTuple::new(t.as_slice()[..n].to_vec())
}

fn remove_at(t: &IndexTuple, pos: usize) -> IndexTuple {
    let mut v = t.as_slice().to_vec();
    v.remove(pos);
    IndexTuple::new(v)
}

/// `[J_s;L_s][J;L] = Σ_{t=s+1}^k (-1)^{t+s+1} [J_s∪(j_t); L_s∪(l_{s+1})] [J∖(j_t); L∖(l_{s+1})]`
pub fn minors_identity_holds<F: Field>(m: &Matrix<F>, j: &IndexTuple, l: &IndexTuple, s: usize) -> bool {
    let f = m.field();
    let k = j.len();
    let js = prefix(j, s);
    let ls = prefix(l, s);
    let lhs = f.mul(&m.minor(&js, &ls).unwrap(), &m.minor(j, l).unwrap());
    let ls1 = ls.concat(&IndexTuple::new(vec![l.as_slice()[s]]));
    let l_rest = remove_at(l, s);
    let mut rhs = f.zero();
    for t in s + 1..=k {
        let jt = j.as_slice()[t - 1];
        let a = m.minor(&js.concat(&IndexTuple::new(vec![jt])), &ls1).unwrap();
        let b = m.minor(&remove_at(j, t - 1), &l_rest).unwrap();
        let term = f.mul(&a, &b);
        rhs = if (t + s + 1).is_multiple_of(2) { f.add(&rhs, &term) } else { f.sub(&rhs, &term) };
    }
    lhs == rhs
}

/// Coefficients `a_U` (indexed by bitmask `U`) of `a·∏_{u<s}(y_u + μ_u)`.
pub fn expand_linear_factors<F: Field>(f: &F, lead: &F::Elem, mus: &[F::Elem]) -> Vec<F::Elem> {
    let s = mus.len();
    (0..1usize << s)
        .map(|u| {
            (0..s)
                .filter(|i| u & (1 << i) == 0)
                .fold(lead.clone(), |acc, i| f.mul(&acc, &mus[i]))
        })
        .collect()
}

fn min_outside(mask: usize, s: usize) -> usize {
    (0..s).find(|i| mask & (1 << i) == 0).unwrap_or(usize::MAX)
}

/// `a_U a_V = a_{U∩V} a_{(1..s)}` for `|V| = s-1`, `min(∁V) < min(∁U)`.
pub fn decomp_relation_holds<F: Field>(f: &F, a: &[F::Elem], s: usize) -> bool {
    let full = (1usize << s) - 1;
    (0..s).all(|missing| {
        let v = full & !(1 << missing);
        (0..=full)
            .filter(|&u| min_outside(v, s) < min_outside(u, s))
            .all(|u| f.mul(&a[u], &a[v]) == f.mul(&a[u & v], &a[full]))
    })
}

/// Whether `Σ a_U y_U = a_full ∏(y_u + a_{∁(u)}/a_full)` identically, by
/// comparing expanded coefficients.
pub fn factors_with_stated_roots<F: Field>(f: &F, a: &[F::Elem], s: usize) -> bool {
    let full = (1usize << s) - 1;
    let inv = f.inv(&a[full]).unwrap();
    let mus: Vec<F::Elem> = (0..s).map(|u| f.mul(&a[full & !(1 << u)], &inv)).collect();
    expand_linear_factors(f, &a[full], &mus) == a
}

/// For `(J, L)` with `[J;L] ≠ 0` and every one-step extension vanishing:
/// `[J∪K; L∪K]·[J;L]^{|K|-1} = ∏_{c∈K} [J∪(c); L∪(c)]`.
pub fn maximal_extension_identity<F: Field>(m: &Matrix<F>, j: &IndexTuple, l: &IndexTuple, k: &IndexTuple) -> bool {
    let f = m.field();
    let base = m.minor(j, l).unwrap();
    let lhs = (1..k.len()).fold(m.minor(&j.concat(k), &l.concat(k)).unwrap(), |acc, _| f.mul(&acc, &base));
    let rhs = k
        .iter()
        .fold(f.one(), |acc, c| f.mul(&acc, &m.minor(&j.with(c), &l.with(c)).unwrap()));
    lhs == rhs
}

/// Coefficients `a_U` of `[J∪K; L∪K]` of `M + diag(y)` as a polynomial in
/// `y_c`, `c ∈ K`: `a_U = [J∪(K∖U); L∪(K∖U)]_M` (`U` as a bitmask over `K`).
pub fn diagonal_unknown_coefficients<F: Field>(
    m: &Matrix<F>,
    j: &IndexTuple,
    l: &IndexTuple,
    k: &IndexTuple,
) -> Vec<F::Elem> {
    let s = k.len();
    (0..1usize << s)
        .map(|u| {
            let rest = IndexTuple::new((0..s).filter(|i| u & (1 << i) == 0).map(|i| k.as_slice()[i]).collect());
            m.minor(&j.concat(&rest), &l.concat(&rest)).unwrap()
        })
        .collect()
}

/// Checks the output of modified Gaussian elimination against every
/// extension by one row and one column.
pub fn check_modified_gaussian<F: Field>(m: &Matrix<F>, j: &IndexTuple, l: &IndexTuple) -> Result<(), String> {
    let f = m.field();
    if j.is_empty() || j.len() != l.len() || !j.is_disjoint(l) {
        return Err(format!("bad tuples J={j:?} L={l:?}"));
    }
    if f.is_zero(&m.minor(j, l).unwrap()) {
        return Err(format!("[J;L] = 0 for J={j:?} L={l:?}"));
    }
    let rest = IndexTuple::range(1, m.rows()).without(&j.concat(l));
    for a in rest.iter() {
        for b in rest.iter().filter(|&b| b != a) {
            if !f.is_zero(&m.minor(&j.with(a), &l.with(b)).unwrap()) {
                return Err(format!("extension by ({a}, {b}) is nonzero"));
            }
        }
    }
    Ok(())
}

/// All tuples `(a, a+1, …, a+t-1)` inside `1..=k`.
pub fn consecutive_tuples(k: usize, t: usize) -> Vec<IndexTuple> {
    (1..=k + 1 - t).map(|a| IndexTuple::range(a, a + t - 1)).collect()
}

/// `S^{-1} N S` has nonvanishing consecutive minors of size `rank(N)` and
/// non-diagonal rank `rank(N)`.
pub fn check_ndrank_corollary(code: &SpreadCode, n: &Matrix<PrimeField>) -> Result<(), String> {
    let t = n.rank();
    let conj = code.s_inv().matmul(&code.lift(n)).unwrap().matmul(code.s()).unwrap();
    let f = code.ext();
    if t > 0 {
        for j in consecutive_tuples(code.k(), t) {
            for l in consecutive_tuples(code.k(), t) {
                if f.is_zero(&conj.minor(&j, &l).unwrap()) {
                    return Err(format!("consecutive minor {j:?};{l:?} vanishes"));
                }
            }
        }
    }
    let nd = spreadcode::linalg::ndrank_definitional(&conj).unwrap();
    if nd != t {
        return Err(format!("ndrank {nd} != rank {t}"));
    }
    Ok(())
}

/// Disjoint `(J, L)` of size `s` and `i ∉ J∪L`, sampled.
pub fn random_disjoint<R: Rng + ?Sized>(k: usize, s: usize, rng: &mut R) -> (IndexTuple, IndexTuple, usize) {
    let p = random_permutation(k, rng);
    let v = p.as_slice();
    (IndexTuple::new(v[..s].to_vec()), IndexTuple::new(v[s..2 * s].to_vec()), v[2 * s])
}
