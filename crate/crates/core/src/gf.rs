//! Prime fields `F_q` and their degree-`k` extensions `F_q[x]/(p)`.
//!
//! Extension elements are dense coefficient vectors over `F_q` in the
//! power basis `1, λ, …, λ^{k-1}`, where `λ` is the residue class of `x`.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use crate::counter::bump;
use crate::error::{Error, Result};

/// Arithmetic over a finite field whose description is only known at run
/// time.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Image of an integer under `Z -> F`.
    fn scalar(&self, c: u32) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

pub fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let q = q as u64;
    let mut d = 2u64;
    while d * d <= q {
        if q.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The prime field `Z/qZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    q: u32,
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q) {
            return Err(Error::NotPrime(q));
        }
        Ok(PrimeField { q })
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    #[inline]
    fn raw_add(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + b as u64) % self.q as u64) as u32
    }

    #[inline]
    fn raw_sub(&self, a: u32, b: u32) -> u32 {
        ((a as u64 + self.q as u64 - b as u64) % self.q as u64) as u32
    }

    #[inline]
    fn raw_mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    fn raw_inv(&self, a: u32) -> Result<u32> {
        if a.is_multiple_of(self.q) {
            return Err(Error::ZeroInverse);
        }
        // Fermat: a^(q-2)
        let mut e = self.q as u64 - 2;
        let mut acc = 1u32;
        let mut b = a % self.q;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.raw_mul(acc, b);
            }
            b = self.raw_mul(b, b);
            e >>= 1;
        }
        Ok(acc)
    }

    #[inline]
    fn raw_neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }

    fn one(&self) -> u32 {
        1
    }

    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }

    fn add(&self, a: &u32, b: &u32) -> u32 {
        bump(|c| c.base_add += 1);
        self.raw_add(*a, *b)
    }

    fn sub(&self, a: &u32, b: &u32) -> u32 {
        bump(|c| c.base_add += 1);
        self.raw_sub(*a, *b)
    }

    fn neg(&self, a: &u32) -> u32 {
        self.raw_neg(*a)
    }

    fn mul(&self, a: &u32, b: &u32) -> u32 {
        bump(|c| c.base_mul += 1);
        self.raw_mul(*a, *b)
    }

    fn inv(&self, a: &u32) -> Result<u32> {
        bump(|c| c.base_inv += 1);
        self.raw_inv(*a)
    }

    fn scalar(&self, c: u32) -> u32 {
        c % self.q
    }
}

/// Dense polynomial helpers over a prime field, lowest coefficient first.
mod poly {
    use super::PrimeField;

    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn sub(f: &PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| f.raw_sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        trim(out)
    }

    pub fn mul(f: &PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let q = f.modulus() as u64;
        let mut acc = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] = (acc[i + j] + x as u64 * y as u64) % q;
            }
        }
        trim(acc.into_iter().map(|v| v as u32).collect())
    }

    /// Quotient and remainder; `m` must be nonzero.
    pub fn divrem(f: &PrimeField, a: &[u32], m: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let m = trim(m.to_vec());
        assert!(!m.is_empty(), "division by zero polynomial");
        let mut r = trim(a.to_vec());
        if r.len() < m.len() {
            return (Vec::new(), r);
        }
        let lead_inv = f.raw_inv(*m.last().unwrap()).expect("nonzero leading coefficient");
        let mut quot = vec![0u32; r.len() - m.len() + 1];
        while r.len() >= m.len() {
            let shift = r.len() - m.len();
            let c = f.raw_mul(*r.last().unwrap(), lead_inv);
            quot[shift] = c;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = f.raw_sub(r[shift + i], f.raw_mul(c, mi));
            }
            r = trim(r);
        }
        (trim(quot), r)
    }

    pub fn rem(f: &PrimeField, a: &[u32], m: &[u32]) -> Vec<u32> {
        divrem(f, a, m).1
    }

    /// Monic gcd.
    pub fn gcd(f: &PrimeField, a: &[u32], b: &[u32]) -> Vec<u32> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(f, &a, &b);
            a = b;
            b = r;
        }
        if let Some(&lead) = a.last() {
            let li = f.raw_inv(lead).unwrap();
            a.iter_mut().for_each(|c| *c = f.raw_mul(*c, li));
        }
        a
    }

    /// Inverse of `a` modulo `m` if `gcd(a, m) = 1`.
    pub fn inv_mod(f: &PrimeField, a: &[u32], m: &[u32]) -> Option<Vec<u32>> {
        // Invariant: s_i * a ≡ r_i (mod m).
        let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
        let (mut s0, mut s1): (Vec<u32>, Vec<u32>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (quot, r2) = divrem(f, &r0, &r1);
            let s2 = sub(f, &s0, &mul(f, &quot, &s1));
            r0 = std::mem::replace(&mut r1, r2);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = f.raw_inv(r0[0]).ok()?;
        let s: Vec<u32> = s0.iter().map(|&x| f.raw_mul(x, c)).collect();
        Some(rem(f, &s, m))
    }

    /// `base^e mod m`.
    pub fn pow_mod(f: &PrimeField, base: &[u32], mut e: u64, m: &[u32]) -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut b = rem(f, base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(f, &mul(f, &acc, &b), m);
            }
            e >>= 1;
            if e > 0 {
                b = rem(f, &mul(f, &b, &b), m);
            }
        }
        rem(f, &acc, m)
    }
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test: `p` (monic, degree `k`) is irreducible iff
/// `x^{q^k} ≡ x (mod p)` and `gcd(x^{q^{k/d}} - x, p) = 1` for each prime
/// `d | k`.
pub fn is_irreducible(base: &PrimeField, p: &[u32]) -> bool {
    let p = poly::trim(p.to_vec());
    if p.len() < 2 || *p.last().unwrap() != 1 {
        return false;
    }
    let k = p.len() - 1;
    if k == 1 {
        return true;
    }
    let q = base.modulus() as u64;
    let x = vec![0u32, 1];
    // frob[i] = x^{q^i} mod p
    let mut frob = vec![poly::rem(base, &x, &p)];
    for i in 0..k {
        let next = poly::pow_mod(base, &frob[i], q, &p);
        frob.push(next);
    }
    if poly::sub(base, &frob[k], &x) != Vec::<u32>::new() {
        return false;
    }
    prime_divisors(k).into_iter().all(|d| {
        let h = poly::sub(base, &frob[k / d], &x);
        poly::gcd(base, &h, &p) == vec![1]
    })
}

/// Smallest monic irreducible polynomial of degree `k` over `F_q`, in the
/// order of the integer `p_0 + p_1 q + … + p_{k-1} q^{k-1}`.
///
/// Returns the full coefficient vector `(p_0, …, p_{k-1}, 1)`.
pub fn find_irreducible(q: u32, k: usize) -> Result<Vec<u32>> {
    let base = PrimeField::new(q)?;
    if k < 2 {
        return Err(Error::InvalidDegree(k));
    }
    let mut low = vec![0u32; k];
    loop {
        let mut p = low.clone();
        p.push(1);
        if is_irreducible(&base, &p) {
            return Ok(p);
        }
        // odometer, p_0 fastest
        let mut i = 0;
        loop {
            if i == k {
                unreachable!("irreducible polynomials exist in every degree");
            }
            low[i] += 1;
            if low[i] == q {
                low[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
    }
}

/// An element of `F_{q^k}`: coefficients of `Σ a_i λ^i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExtElement {
    coeffs: Vec<u32>,
}

impl ExtElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// The base-field value if this element lies in `F_q`.
    pub fn as_base(&self) -> Option<u32> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[derive(Debug, PartialEq, Eq)]
struct ExtInner {
    base: PrimeField,
    k: usize,
    /// Monic modulus, length k+1.
    modulus: Vec<u32>,
    /// frob[j] is the row-major k×k matrix of `a -> a^{q^j}` on coefficient
    /// vectors, j = 0..k.
    frob: Vec<Vec<u32>>,
}

/// The extension field `F_q[x]/(p)` for a monic irreducible `p` of degree
/// `k >= 2`. Cheap to clone.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtField {
    inner: Arc<ExtInner>,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ExtField(q={}, p={:?})",
            self.inner.base.modulus(),
            self.inner.modulus
        )
    }
}

impl ExtField {
    /// `p` is the full coefficient vector `(p_0, …, p_k)` with `p_k = 1`.
    pub fn new(base: PrimeField, p: &[u32]) -> Result<Self> {
        let k = p.len().saturating_sub(1);
        if k < 2 {
            return Err(Error::InvalidDegree(k));
        }
        if p.iter().any(|&c| c >= base.modulus()) || !is_irreducible(&base, p) {
            return Err(Error::NotIrreducible(k));
        }
        let modulus = p.to_vec();
        let mut inner = ExtInner {
            base,
            k,
            modulus,
            frob: Vec::new(),
        };
        inner.frob = Self::frobenius_tables(&inner);
        Ok(ExtField {
            inner: Arc::new(inner),
        })
    }

    /// Uses [`find_irreducible`] for the modulus.
    pub fn with_default_modulus(q: u32, k: usize) -> Result<Self> {
        let p = find_irreducible(q, k)?;
        Self::new(PrimeField::new(q)?, &p)
    }

    fn frobenius_tables(inner: &ExtInner) -> Vec<Vec<u32>> {
        let k = inner.k;
        let base = &inner.base;
        let q = base.modulus() as u64;
        // column i of the q-power map is (λ^q)^i
        let lambda_q = poly::pow_mod(base, &[0, 1], q, &inner.modulus);
        let mut one_step = vec![0u32; k * k];
        let mut col = vec![1u32];
        for i in 0..k {
            for (r, &c) in col.iter().enumerate() {
                one_step[r * k + i] = c;
            }
            col = poly::rem(base, &poly::mul(base, &col, &lambda_q), &inner.modulus);
        }
        let mut tables = Vec::with_capacity(k);
        let mut cur: Vec<u32> = (0..k * k)
            .map(|i| if i / k == i % k { 1 } else { 0 })
            .collect();
        for _ in 0..k {
            tables.push(cur.clone());
            // cur = one_step * cur
            let mut next = vec![0u32; k * k];
            for r in 0..k {
                for c in 0..k {
                    let mut acc = 0u64;
                    for t in 0..k {
                        acc += one_step[r * k + t] as u64 * cur[t * k + c] as u64;
                    }
                    next[r * k + c] = (acc % q) as u32;
                }
            }
            cur = next;
        }
        tables
    }

    pub fn base(&self) -> PrimeField {
        self.inner.base
    }

    pub fn degree(&self) -> usize {
        self.inner.k
    }

    /// Full monic modulus `(p_0, …, p_k)`.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// Number of elements `q^k`, if it fits in a `u64`.
    pub fn order(&self) -> Option<u64> {
        (self.inner.base.modulus() as u64).checked_pow(self.inner.k as u32)
    }

    /// The residue class of `x`, a root of the modulus.
    pub fn lambda(&self) -> ExtElement {
        let mut coeffs = vec![0u32; self.inner.k];
        coeffs[1] = 1;
        ExtElement { coeffs }
    }

    pub fn embed(&self, c: u32) -> ExtElement {
        let mut coeffs = vec![0u32; self.inner.k];
        coeffs[0] = c % self.inner.base.modulus();
        ExtElement { coeffs }
    }

    /// Element from explicit coefficients; shorter vectors are zero-padded.
    pub fn element(&self, coeffs: &[u32]) -> Result<ExtElement> {
        let k = self.inner.k;
        let q = self.inner.base.modulus();
        if coeffs.len() > k {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a degree-{k} extension",
                coeffs.len()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= q) {
            return Err(Error::DimensionMismatch(format!(
                "coefficient {c} is not reduced mod {q}"
            )));
        }
        let mut v = coeffs.to_vec();
        v.resize(k, 0);
        Ok(ExtElement { coeffs: v })
    }

    /// The `idx`-th element in base-q digit order (coefficient 0 fastest).
    pub fn element_at(&self, mut idx: u64) -> ExtElement {
        let q = self.inner.base.modulus() as u64;
        let coeffs = (0..self.inner.k)
            .map(|_| {
                let d = (idx % q) as u32;
                idx /= q;
                d
            })
            .collect();
        ExtElement { coeffs }
    }

    /// Inverse of [`element_at`](Self::element_at).
    pub fn index_of(&self, a: &ExtElement) -> u64 {
        let q = self.inner.base.modulus() as u64;
        a.coeffs.iter().rev().fold(0u64, |acc, &c| acc * q + c as u64)
    }

    /// All `q^k` elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = ExtElement> + '_ {
        let n = self.order().expect("field too large to enumerate");
        (0..n).map(move |i| self.element_at(i))
    }

    /// `a^{q^j}`, exponent taken mod k.
    pub fn frobenius(&self, a: &ExtElement, j: usize) -> ExtElement {
        bump(|c| c.ext_frob += 1);
        self.raw_frobenius(a, j)
    }

    fn raw_frobenius(&self, a: &ExtElement, j: usize) -> ExtElement {
        let k = self.inner.k;
        let j = j % k;
        if j == 0 {
            return a.clone();
        }
        let q = self.inner.base.modulus() as u64;
        let m = &self.inner.frob[j];
        let coeffs = (0..k)
            .map(|r| {
                let acc: u64 = (0..k)
                    .map(|t| m[r * k + t] as u64 * a.coeffs[t] as u64 % q)
                    .sum();
                (acc % q) as u32
            })
            .collect();
        ExtElement { coeffs }
    }

    /// `Tr(a) = a + a^{[1]} + … + a^{[k-1]}`.
    pub fn trace(&self, a: &ExtElement) -> u32 {
        let mut acc = self.zero();
        for j in 0..self.inner.k {
            acc = self.add(&acc, &self.frobenius(a, j));
        }
        acc.as_base().expect("trace lies in the prime field")
    }

    fn raw_mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let k = self.inner.k;
        let q = self.inner.base.modulus() as u64;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % q;
            }
        }
        // x^k ≡ -(p_0 + … + p_{k-1} x^{k-1})
        let p = &self.inner.modulus;
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (t, &pt) in p[..k].iter().enumerate() {
                prod[d - k + t] = (prod[d - k + t] + (q - c) * pt as u64) % q;
            }
        }
        ExtElement {
            coeffs: prod[..k].iter().map(|&v| v as u32).collect(),
        }
    }
}

impl Field for ExtField {
    type Elem = ExtElement;

    fn zero(&self) -> ExtElement {
        ExtElement {
            coeffs: vec![0; self.inner.k],
        }
    }

    fn one(&self) -> ExtElement {
        self.embed(1)
    }

    fn is_zero(&self, a: &ExtElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    fn add(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        bump(|c| c.ext_add += 1);
        let f = &self.inner.base;
        ExtElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| f.raw_add(x, y))
                .collect(),
        }
    }

    fn sub(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        bump(|c| c.ext_add += 1);
        let f = &self.inner.base;
        ExtElement {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| f.raw_sub(x, y))
                .collect(),
        }
    }

    fn neg(&self, a: &ExtElement) -> ExtElement {
        let f = &self.inner.base;
        ExtElement {
            coeffs: a.coeffs.iter().map(|&x| f.raw_neg(x)).collect(),
        }
    }

    fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        bump(|c| c.ext_mul += 1);
        self.raw_mul(a, b)
    }

    fn inv(&self, a: &ExtElement) -> Result<ExtElement> {
        bump(|c| c.ext_inv += 1);
        if self.is_zero(a) {
            return Err(Error::ZeroInverse);
        }
        let s = poly::inv_mod(&self.inner.base, &a.coeffs, &self.inner.modulus)
            .ok_or(Error::ZeroInverse)?;
        self.element(&s)
    }

    fn scalar(&self, c: u32) -> ExtElement {
        self.embed(c)
    }
}
