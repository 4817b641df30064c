//! Arithmetic in `GF(p^n)` for odd `p`, the absolute trace, and the canonical
//! additive character `chi(a) = exp(2 pi i Tr(a) / p)`.
//!
//! Elements are stored as their coefficient vector over `Z/p` packed into a
//! single mixed-radix index (constant coefficient least significant). The
//! packing is a bijection, so equality of elements is equality of coefficient
//! vectors. Multiplication goes through discrete log/exp tables built once per
//! field; addition works digit by digit.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest field order accepted by [`FieldSpec::new`] unless overridden.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

/// Fields up to this order also keep a dense addition table.
const ADD_TABLE_MAX_ORDER: u32 = 256;

/// An element of a finite field, valid only together with the [`FieldSpec`]
/// that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Position of the element in the enumeration order of its field.
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub(crate) fn from_raw(index: usize) -> Self {
        FieldElement(index as u32)
    }
}

/// A finite field of odd characteristic together with its lookup tables.
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    n: u32,
    q: u32,
    /// Monic, constant term first, length `n + 1`.
    modulus: Vec<u32>,
    /// `exp[i] = g^i` for a fixed primitive element `g`, `i < q - 1`.
    exp: Vec<u32>,
    /// Inverse of `exp`; `log[0]` is unused.
    log: Vec<u32>,
    trace: Vec<u32>,
    roots: Vec<Complex64>,
    add_table: Option<Vec<u32>>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("n", &self.n)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

/// Builds `GF(p^n)` with the default order cap.
pub fn make_field(p: u64, n: u32) -> Result<FieldSpec> {
    FieldSpec::with_cap(p, n, DEFAULT_MAX_ORDER)
}

impl FieldSpec {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        Self::with_cap(p, n, DEFAULT_MAX_ORDER)
    }

    /// Builds `GF(p^n)` using the smallest monic irreducible modulus of degree
    /// `n`, where polynomials are ordered by the integer obtained from
    /// evaluating them at `p`.
    pub fn with_cap(p: u64, n: u32, max_order: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenCharacteristic(p));
        }
        if !is_prime(p) {
            return Err(Error::NonPrime(p));
        }
        if n == 0 || n > 64 {
            return Err(Error::DegreeOutOfRange(n));
        }
        let order = (p as u128).checked_pow(n).unwrap_or(u128::MAX);
        if order > max_order as u128 || order > u32::MAX as u128 {
            return Err(Error::SizeCapExceeded {
                size: order,
                cap: max_order as u128,
            });
        }
        let p32 = p as u32;
        let q = order as u32;
        let modulus = smallest_irreducible(p32, n as usize);
        let mut field = FieldSpec {
            p: p32,
            n,
            q,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
            trace: Vec::new(),
            roots: (0..p32)
                .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / p as f64))
                .collect(),
            add_table: None,
        };
        field.build_tables();
        Ok(field)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let p = self.p;
        let n = self.n as usize;
        let group = self.q as u64 - 1;
        let factors = prime_factors(group);
        let g = (1..self.q)
            .map(|i| self.unpack(i))
            .find(|cand| {
                factors.iter().all(|&r| {
                    let e = poly_powmod(cand, group / r, &self.modulus, p);
                    !is_one(&e)
                })
            })
            .expect("every finite field has a primitive element");

        let mut exp = Vec::with_capacity(q - 1);
        let mut log = vec![0u32; q];
        let mut cur = vec![0u32; n];
        cur[0] = 1;
        for i in 0..group as usize {
            let idx = self.pack(&cur);
            exp.push(idx);
            log[idx as usize] = i as u32;
            cur = poly_mulmod(&cur, &g, &self.modulus, p);
        }
        self.exp = exp;
        self.log = log;

        if self.q <= ADD_TABLE_MAX_ORDER {
            let mut table = vec![0u32; q * q];
            for a in 0..self.q {
                for b in 0..self.q {
                    table[a as usize * q + b as usize] = self.add_digits(a, b);
                }
            }
            self.add_table = Some(table);
        }

        // Tr(a) = sum of Frobenius conjugates a^(p^i).
        let mut trace = vec![0u32; q];
        for a in 1..self.q {
            let e = self.log[a as usize] as u64;
            let mut acc = 0u32;
            let mut pk = 1u64;
            for _ in 0..n {
                let conj = self.exp[((e * pk) % group) as usize];
                acc = self.add(FieldElement(acc), FieldElement(conj)).0;
                pk = pk * p as u64 % group;
            }
            debug_assert!(acc < p, "trace must land in the prime subfield");
            trace[a as usize] = acc;
        }
        self.trace = trace;
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Element from its coefficient vector (constant term first). Missing
    /// trailing coefficients are zero; every coefficient must be reduced.
    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.n as usize {
            return Err(Error::BadElement(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                self.n
            )));
        }
        if let Some(c) = coeffs.iter().find(|&&c| c >= self.p) {
            return Err(Error::BadElement(format!(
                "coefficient {c} not reduced mod {}",
                self.p
            )));
        }
        Ok(FieldElement(self.pack(coeffs)))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u32)
    }

    pub fn from_index(&self, index: usize) -> Result<FieldElement> {
        if index >= self.q as usize {
            return Err(Error::BadElement(format!(
                "index {index} >= q = {}",
                self.q
            )));
        }
        Ok(FieldElement(index as u32))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        self.unpack(a.0)
    }

    fn pack(&self, coeffs: &[u32]) -> u32 {
        coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + c)
    }

    fn unpack(&self, mut idx: u32) -> Vec<u32> {
        let mut out = vec![0u32; self.n as usize];
        for c in out.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        out
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.p;
        let mut out = 0u32;
        let mut place = 1u32;
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        match &self.add_table {
            Some(t) => FieldElement(t[a.0 as usize * self.q as usize + b.0 as usize]),
            None => FieldElement(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement((self.p - a.0) % self.p);
        }
        let p = self.p;
        let mut idx = a.0;
        let mut out = 0u32;
        let mut place = 1u32;
        while idx > 0 {
            out += ((p - idx % p) % p) * place;
            idx /= p;
            place = place.wrapping_mul(p);
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let group = self.q - 1;
        let e = (self.log[a.0 as usize] + self.log[b.0 as usize]) % group;
        FieldElement(self.exp[e as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let group = self.q - 1;
        let e = (group - self.log[a.0 as usize]) % group;
        Ok(FieldElement(self.exp[e as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`; negative exponents need `a != 0`. `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: i64) -> Result<FieldElement> {
        if a.0 == 0 {
            return match e {
                0 => Ok(FieldElement::ONE),
                e if e > 0 => Ok(FieldElement::ZERO),
                _ => Err(Error::ZeroInverse),
            };
        }
        let group = (self.q - 1) as i64;
        let k = (self.log[a.0 as usize] as i64 * e.rem_euclid(group)).rem_euclid(group);
        Ok(FieldElement(self.exp[k as usize]))
    }

    /// Discrete logarithm with respect to the field's fixed primitive element.
    pub fn log(&self, a: FieldElement) -> Result<u32> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(self.log[a.0 as usize])
    }

    /// `g^e` for the field's fixed primitive element `g`.
    #[inline]
    pub fn exp(&self, e: u64) -> FieldElement {
        FieldElement(self.exp[(e % (self.q as u64 - 1)) as usize])
    }

    /// Absolute trace to the prime field, as a residue in `[0, p)`.
    #[inline]
    pub fn trace(&self, a: FieldElement) -> u32 {
        self.trace[a.0 as usize]
    }

    /// `exp(2 pi i k / p)` for a residue `k`.
    #[inline]
    pub fn root_of_unity(&self, k: u32) -> Complex64 {
        self.roots[(k % self.p) as usize]
    }

    /// The canonical additive character.
    #[inline]
    pub fn char_eval(&self, a: FieldElement) -> Complex64 {
        self.roots[self.trace[a.0 as usize] as usize]
    }

    pub fn elements(&self) -> impl ExactSizeIterator<Item = FieldElement> + Clone {
        (0..self.q).map(FieldElement)
    }

    pub fn units(&self) -> impl ExactSizeIterator<Item = FieldElement> + Clone {
        (1..self.q).map(FieldElement)
    }
}

pub fn enumerate_elements(field: &FieldSpec) -> Vec<FieldElement> {
    field.elements().collect()
}

pub fn enumerate_units(field: &FieldSpec) -> Vec<FieldElement> {
    field.units().collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
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

fn smallest_irreducible(p: u32, n: usize) -> Vec<u32> {
    let count = (p as u64).pow(n as u32);
    (0..count)
        .map(|k| {
            let mut f = Vec::with_capacity(n + 1);
            let mut k = k;
            for _ in 0..n {
                f.push((k % p as u64) as u32);
                k /= p as u64;
            }
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

/// Rabin's test for a monic polynomial over `Z/p` (constant term first).
pub fn is_irreducible(f: &[u32], p: u32) -> bool {
    let f = trim(f.to_vec());
    let n = f.len().saturating_sub(1);
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    let frob = |k: usize| {
        let mut cur = x.clone();
        for _ in 0..k {
            cur = poly_powmod(&cur, p as u64, &f, p);
        }
        cur
    };
    if trim(frob(n)) != trim(poly_rem(&x, &f, p)) {
        return false;
    }
    for r in prime_factors(n as u64) {
        let h = poly_sub(&frob(n / r as usize), &x, p);
        let g = poly_gcd(&h, &f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    if a.is_empty() {
        a.push(0);
    }
    a
}

fn is_one(a: &[u32]) -> bool {
    a.first() == Some(&1) && a[1..].iter().all(|&c| c == 0)
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(out)
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p) as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    while r.len() > dm {
        let top = r.pop().unwrap() * lead_inv % p as u64;
        if top != 0 {
            let shift = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                let idx = shift + i;
                r[idx] = (r[idx] + p as u64 - top * c as u64 % p as u64) % p as u64;
            }
        }
    }
    trim(r.into_iter().map(|c| c as u32).collect())
}

/// Product of two residues mod the monic `m`, padded to `deg m` coefficients.
fn poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    let mut r = poly_rem(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

fn poly_powmod(a: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let n = m.len() - 1;
    let mut result = vec![0u32; n.max(1)];
    result[0] = 1;
    let mut base = poly_rem(a, m, p);
    base.resize(n.max(1), 0);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_mulmod(&result, &base, m, p);
        }
        base = poly_mulmod(&base, &base, m, p);
        e >>= 1;
    }
    result
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}
