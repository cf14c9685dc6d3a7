//! Spread codes: the set of row spaces `rowsp(A_1 ⋯ A_r)` with every block
//! in `F_q[P]`, where `P` is the companion matrix of a monic irreducible
//! polynomial of degree `k`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{ExtElement, ExtField, Field, PrimeField};
use crate::linalg::Matrix;

/// Companion matrix of a monic polynomial `(p_0, …, p_{k-1}, 1)`: ones on
/// the superdiagonal and `(-p_0, …, -p_{k-1})` in the last row.
pub fn companion_matrix(base: PrimeField, p: &[u32]) -> Result<Matrix<PrimeField>> {
    let k = p.len().saturating_sub(1);
    if k == 0 || p[k] != 1 {
        return Err(Error::InvalidParams("companion matrix needs a monic polynomial".into()));
    }
    let mut m = Matrix::zeros(base, k, k);
    for i in 0..k - 1 {
        m.set(i, i + 1, 1);
    }
    for (j, &c) in p[..k].iter().enumerate() {
        m.set(k - 1, j, base.neg(&base.scalar(c)));
    }
    Ok(m)
}

/// A subspace of `F_q^n`, stored as its full-rank RREF basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    basis: Matrix<PrimeField>,
}

impl Subspace {
    /// Row space of `m`.
    pub fn row_space(m: &Matrix<PrimeField>) -> Self {
        let (reduced, pivots) = m.echelon();
        Subspace {
            basis: reduced.top_rows(pivots.len()),
        }
    }

    pub fn zero(base: PrimeField, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(base, 0, ambient),
        }
    }

    pub fn basis(&self) -> &Matrix<PrimeField> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    /// Columns `i*k .. (i+1)*k` of the basis.
    pub fn block(&self, i: usize, k: usize) -> Matrix<PrimeField> {
        self.basis.column_block(i * k, (i + 1) * k)
    }

    pub fn blocks(&self, k: usize) -> Vec<Matrix<PrimeField>> {
        (0..self.ambient() / k).map(|i| self.block(i, k)).collect()
    }

    /// `U + V`.
    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        Ok(Subspace::row_space(&self.basis.stack(&other.basis)?))
    }

    /// `d(U, V) = dim(U+V) - dim(U∩V) = 2 dim(U+V) - dim U - dim V`.
    pub fn distance(&self, other: &Subspace) -> Result<usize> {
        if self.ambient() != other.ambient() {
            return Err(Error::DimensionMismatch(format!(
                "ambient dimensions {} and {}",
                self.ambient(),
                other.ambient()
            )));
        }
        let joint = self.basis.stack(&other.basis)?.rank();
        Ok(2 * joint - self.dim() - other.dim())
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let Ok(row) = Matrix::new(*self.basis.field(), 1, v.len(), v.to_vec()) else {
            return false;
        };
        match self.basis.stack(&row) {
            Ok(m) => m.rank() == self.dim(),
            Err(_) => false,
        }
    }
}

/// A codeword together with its normalized projective point
/// `[v_1 : … : v_r]` (first nonzero coordinate equal to 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    pub point: Vec<ExtElement>,
    pub subspace: Subspace,
}

/// One spread code instance: everything fixed by `(q, k, r, p)`.
#[derive(Debug, Clone)]
pub struct SpreadCode {
    base: PrimeField,
    ext: ExtField,
    r: usize,
    companion: Matrix<PrimeField>,
    /// P^0, …, P^{k-1}
    companion_powers: Vec<Matrix<PrimeField>>,
    s: Matrix<ExtField>,
    s_inv: Matrix<ExtField>,
}

impl SpreadCode {
    /// Code over `F_q` with the default modulus from
    /// [`find_irreducible`](crate::gf::find_irreducible).
    pub fn new(q: u32, k: usize, r: usize) -> Result<Self> {
        let p = crate::gf::find_irreducible(q, k)?;
        Self::with_modulus(q, r, &p)
    }

    /// `p` is the full monic coefficient vector `(p_0, …, p_{k-1}, 1)`.
    pub fn with_modulus(q: u32, r: usize, p: &[u32]) -> Result<Self> {
        if r < 2 {
            return Err(Error::InvalidParams(format!("r = {r}, need r >= 2")));
        }
        let base = PrimeField::new(q)?;
        let ext = ExtField::new(base, p)?;
        let k = ext.degree();
        let companion = companion_matrix(base, p)?;
        let mut companion_powers = vec![Matrix::identity(base, k)];
        for i in 1..k {
            let next = companion_powers[i - 1].matmul(&companion)?;
            companion_powers.push(next);
        }
        let (s, s_inv) = diagonalizer(&ext, &companion)?;
        Ok(SpreadCode {
            base,
            ext,
            r,
            companion,
            companion_powers,
            s,
            s_inv,
        })
    }

    pub fn q(&self) -> u32 {
        self.base.modulus()
    }

    pub fn k(&self) -> usize {
        self.ext.degree()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Ambient dimension `n = rk`.
    pub fn n(&self) -> usize {
        self.r * self.k()
    }

    pub fn base(&self) -> PrimeField {
        self.base
    }

    pub fn ext(&self) -> &ExtField {
        &self.ext
    }

    /// Full monic modulus `(p_0, …, p_k)`.
    pub fn modulus(&self) -> &[u32] {
        self.ext.modulus()
    }

    pub fn companion(&self) -> &Matrix<PrimeField> {
        &self.companion
    }

    pub fn s(&self) -> &Matrix<ExtField> {
        &self.s
    }

    pub fn s_inv(&self) -> &Matrix<ExtField> {
        &self.s_inv
    }

    /// `(q^n - 1)/(q^k - 1) = Σ_{i<r} q^{ki}`, if it fits.
    pub fn cardinality(&self) -> Option<u128> {
        let qk = (self.q() as u128).checked_pow(self.k() as u32)?;
        let mut total: u128 = 0;
        let mut term: u128 = 1;
        for i in 0..self.r {
            total = total.checked_add(term)?;
            if i + 1 < self.r {
                term = term.checked_mul(qk)?;
            }
        }
        Some(total)
    }

    pub fn min_distance(&self) -> usize {
        2 * self.k()
    }

    /// `φ(Σ a_i λ^i) = Σ a_i P^i`.
    pub fn phi(&self, a: &ExtElement) -> Matrix<PrimeField> {
        let k = self.k();
        let mut out = Matrix::zeros(self.base, k, k);
        for (i, &c) in a.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            out = out
                .add(&self.companion_powers[i].scale(&c))
                .expect("square matrices of equal size");
        }
        out
    }

    /// Inverse of [`phi`](Self::phi) on `F_q[P]`: the first row of `A` holds
    /// the coefficients, since row 0 of `P^i` is `e_i` for `i < k`.
    pub fn phi_inverse(&self, a: &Matrix<PrimeField>) -> Result<ExtElement> {
        let e = self.ext.element(a.row(0))?;
        if self.phi(&e) != *a {
            return Err(Error::InvalidParams("matrix is not in F_q[P]".into()));
        }
        Ok(e)
    }

    /// Embeds an `F_q` matrix into `F_{q^k}`.
    pub fn lift(&self, m: &Matrix<PrimeField>) -> Matrix<ExtField> {
        m.map(&self.ext, |&c| self.ext.embed(c))
    }

    /// `Δ(x) = diag(x, x^{[1]}, …, x^{[k-1]})`.
    pub fn delta(&self, x: &ExtElement) -> Matrix<ExtField> {
        let diag: Vec<ExtElement> = (0..self.k()).map(|j| self.ext.frobenius(x, j)).collect();
        Matrix::diagonal(self.ext.clone(), &diag)
    }

    /// Normalizes a projective point so its first nonzero coordinate is 1.
    pub fn normalize(&self, point: &[ExtElement]) -> Result<Vec<ExtElement>> {
        if point.len() != self.r {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates for r = {}",
                point.len(),
                self.r
            )));
        }
        let lead = point
            .iter()
            .find(|v| !self.ext.is_zero(v))
            .ok_or(Error::ZeroPoint)?;
        let inv = self.ext.inv(lead)?;
        Ok(point.iter().map(|v| self.ext.mul(v, &inv)).collect())
    }

    /// `rowsp(φ(v_1) ⋯ φ(v_r))` for a projective point.
    pub fn encode(&self, point: &[ExtElement]) -> Result<Codeword> {
        let point = self.normalize(point)?;
        let mut gen = self.phi(&point[0]);
        for v in &point[1..] {
            gen = gen.hconcat(&self.phi(v))?;
        }
        Ok(Codeword {
            point,
            subspace: Subspace::row_space(&gen),
        })
    }

    /// Every codeword exactly once: for each leading position `i`, the points
    /// with zeros before `i`, a one at `i`, and free coordinates after.
    pub fn enumerate(&self) -> impl Iterator<Item = Codeword> + '_ {
        let qk = self.ext.order().expect("field too large to enumerate");
        let r = self.r;
        (0..r).flat_map(move |lead| {
            let free = r - lead - 1;
            let total = qk.checked_pow(free as u32).expect("code too large to enumerate");
            (0..total).map(move |mut idx| {
                let mut point = vec![self.ext.zero(); r];
                point[lead] = self.ext.one();
                for slot in point.iter_mut().skip(lead + 1) {
                    *slot = self.ext.element_at(idx % qk);
                    idx /= qk;
                }
                self.encode(&point).expect("normalized point")
            })
        })
    }

    /// A uniformly random codeword.
    pub fn random_codeword<R: Rng + ?Sized>(&self, rng: &mut R) -> Codeword {
        let q = self.q();
        loop {
            let point: Vec<ExtElement> = (0..self.r)
                .map(|_| {
                    let c: Vec<u32> = (0..self.k()).map(|_| rng.gen_range(0..q)).collect();
                    self.ext.element(&c).expect("reduced coefficients")
                })
                .collect();
            if let Ok(c) = self.encode(&point) {
                return c;
            }
        }
    }

    /// Whether `A ∈ F_q[P]`, by the criterion `AP = PA` on
    /// `A ∈ GL_k(F_q) ∪ {0}`.
    pub fn in_companion_algebra(&self, a: &Matrix<PrimeField>) -> bool {
        if a.is_zero() {
            return true;
        }
        if a.rank() != self.k() {
            return false;
        }
        let ap = a.matmul(&self.companion).expect("square");
        let pa = self.companion.matmul(a).expect("square");
        ap == pa
    }

    /// Membership test for `S_r`.
    pub fn is_codeword(&self, w: &Subspace) -> bool {
        let k = self.k();
        if w.dim() != k || w.ambient() != self.n() {
            return false;
        }
        let blocks = w.blocks(k);
        let Some(lead) = blocks.iter().position(|b| b.rank() == k) else {
            return false;
        };
        if !blocks[..lead].iter().all(Matrix::is_zero) {
            return false;
        }
        let lead_inv = blocks[lead].inverse().expect("full rank block");
        blocks[lead + 1..].iter().all(|b| {
            let x = lead_inv.matmul(b).expect("square blocks");
            self.in_companion_algebra(&x)
        })
    }
}

/// `S` with `S[i][j] = λ^{i q^j}` and its inverse.
///
/// Fails if `S^{-1} P S ≠ Δ(λ)`, or if the rows of `S^{-1}` are not
/// successive Frobenius images of the first row.
pub fn diagonalizer(
    ext: &ExtField,
    companion: &Matrix<PrimeField>,
) -> Result<(Matrix<ExtField>, Matrix<ExtField>)> {
    let k = ext.degree();
    let lambda = ext.lambda();
    let mut s = Matrix::zeros(ext.clone(), k, k);
    for j in 0..k {
        let root = ext.frobenius(&lambda, j);
        let mut pw = ext.one();
        for i in 0..k {
            s.set(i, j, pw.clone());
            pw = ext.mul(&pw, &root);
        }
    }
    let s_inv = s
        .inverse()
        .map_err(|_| Error::Diagonalizer("S is singular"))?;
    let p_ext = companion.map(ext, |&c| ext.embed(c));
    let conj = s_inv.matmul(&p_ext)?.matmul(&s)?;
    let expected: Vec<ExtElement> = (0..k).map(|j| ext.frobenius(&lambda, j)).collect();
    if conj != Matrix::diagonal(ext.clone(), &expected) {
        return Err(Error::Diagonalizer("S^-1 P S is not diag(λ, λ^[1], …)"));
    }
    for i in 1..k {
        for j in 0..k {
            if *s_inv.get(i, j) != ext.frobenius(s_inv.get(i - 1, j), 1) {
                return Err(Error::Diagonalizer("rows of S^-1 are not Frobenius conjugates"));
            }
        }
    }
    Ok((s, s_inv))
}
