//! Arithmetic in the base field `F_q = F_{p^m}`.
//!
//! Elements are coefficient vectors in the power basis of a root of the
//! modulus, constant term first. Exponents are arbitrary precision
//! throughout; nothing reduces an exponent implicitly.

use num_bigint::BigUint;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::orderengine::is_prime_u64;

/// A prime-power field `F_{p^m}` with an explicit monic irreducible modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    m: usize,
    q: BigUint,
    /// Monic of degree `m`, constant term first, length `m + 1`.
    modulus: Vec<u64>,
}

/// An element of `F_q`: `m` residues mod `p`, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Element {
    pub coeffs: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

// ---- dense polynomial arithmetic over Z/p (constant term first) ----

fn poly_trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = addmod(out[i + j], mulmod(ai, bj, p), p);
        }
    }
    poly_trim(&mut out);
    out
}

/// Remainder of `a` by monic `f`.
fn poly_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let deg_f = f.len() - 1;
    debug_assert!(deg_f >= 1 && *f.last().unwrap() == 1);
    let mut r = a.to_vec();
    if r.len() > deg_f {
        for i in (deg_f..r.len()).rev() {
            let lead = r[i];
            if lead == 0 {
                continue;
            }
            r[i] = 0;
            let shift = i - deg_f;
            for k in 0..deg_f {
                r[k + shift] = submod(r[k + shift], mulmod(lead, f[k], p), p);
            }
        }
        r.truncate(deg_f);
    }
    poly_trim(&mut r);
    r
}

fn poly_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = poly_rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_rem(&poly_mul(&result, &b, p), f, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), f, p);
        e >>= 1;
    }
    result
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !(b.len() == 1 && b[0] == 0) {
        // a nonzero constant divides everything: the gcd is trivial
        if b.len() == 1 {
            return vec![1];
        }
        // make b monic so poly_rem applies
        let lead = *b.last().unwrap();
        let inv = modpow_u64(lead, p - 2, p);
        let monic: Vec<u64> = b.iter().map(|&c| mulmod(c, inv, p)).collect();
        let r = poly_rem(&a, &monic, p);
        a = b;
        b = r;
        poly_trim(&mut b);
    }
    a
}

fn modpow_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let ai = a.get(i).copied().unwrap_or(0);
        let bi = b.get(i).copied().unwrap_or(0);
        out[i] = submod(ai, bi, p);
    }
    poly_trim(&mut out);
    out
}

/// Irreducibility of a monic polynomial over Z/p: `x^{p^m} = x (mod f)` and
/// `gcd(x^{p^{m/r}} - x, f) = 1` for every prime `r | m`.
fn poly_is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    // h[k] = x^{p^k} mod f
    let mut h = poly_rem(&x, f, p);
    let mut frob = Vec::with_capacity(m + 1);
    frob.push(h.clone()); // x^{p^0}
    for _ in 0..m {
        h = poly_powmod(&h, p, f, p);
        frob.push(h.clone());
    }
    if frob[m] != poly_rem(&x, f, p) {
        return false;
    }
    let mut rem = m;
    let mut r = 2;
    let mut prime_divs = Vec::new();
    while r * r <= rem {
        if rem % r == 0 {
            prime_divs.push(r);
            while rem % r == 0 {
                rem /= r;
            }
        }
        r += 1;
    }
    if rem > 1 {
        prime_divs.push(rem);
    }
    for r in prime_divs {
        let g = poly_gcd(&poly_sub(&frob[m / r], &x, p), f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `q = p^m` as an exact integer.
    pub fn q(&self) -> &BigUint {
        &self.q
    }

    /// `q - 1`.
    pub fn group_order(&self) -> BigUint {
        &self.q - 1u32
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Element {
        Element {
            coeffs: vec![0; self.m],
        }
    }

    pub fn one(&self) -> Element {
        let mut c = vec![0; self.m];
        c[0] = 1;
        Element { coeffs: c }
    }

    /// The element `k mod p` of the prime subfield.
    pub fn scalar(&self, k: i64) -> Element {
        let p = self.p as i64;
        let r = ((k % p) + p) % p;
        let mut c = vec![0; self.m];
        c[0] = r as u64;
        Element { coeffs: c }
    }

    pub fn is_zero(&self, a: &Element) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        Element {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| addmod(x, y, self.p))
                .collect(),
        }
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        Element {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| submod(x, y, self.p))
                .collect(),
        }
    }

    pub fn neg(&self, a: &Element) -> Element {
        Element {
            coeffs: a.coeffs.iter().map(|&x| submod(0, x, self.p)).collect(),
        }
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let prod = poly_mul(&a.coeffs, &b.coeffs, self.p);
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.m, 0);
        Element { coeffs: r }
    }

    pub fn inv(&self, a: &Element) -> Result<Element> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        // a^(q-2) = a^(-1) in F_q*
        self.pow(a, &(&self.q - 2u32))
    }

    pub fn pow(&self, a: &Element, e: &BigUint) -> Result<Element> {
        if self.is_zero(a) {
            if e.is_zero() {
                return Err(Error::ZeroToZero);
            }
            return Ok(self.zero());
        }
        let mut result = self.one();
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = self.mul(&result, &result);
            if e.bit(i) {
                result = self.mul(&result, a);
            }
        }
        Ok(result)
    }

    /// Fact 1: for `n | q - 1`, a nonzero `x` is a perfect n-th power
    /// iff `x^((q-1)/n) = 1`.
    pub fn is_nth_power(&self, x: &Element, n: u64) -> Result<bool> {
        if self.is_zero(x) {
            return Err(Error::ZeroInput);
        }
        let g = self.group_order();
        if (&g % n).is_zero() == false {
            return Err(Error::NNotDividingGroupOrder);
        }
        let e = &g / n;
        Ok(self.pow(x, &e)? == self.one())
    }

    /// Element from explicit coordinates, constant coefficient first.
    /// Shorter vectors are zero-padded; longer ones are rejected.
    pub fn element_from_coeffs(&self, coeffs: &[u64]) -> Result<Element> {
        if coeffs.len() > self.m {
            return Err(Error::DegreeMismatch);
        }
        let mut c = vec![0u64; self.m];
        for (slot, &v) in c.iter_mut().zip(coeffs) {
            *slot = v % self.p;
        }
        Ok(Element { coeffs: c })
    }

    /// Element with counting index `i`, constant coefficient fastest-varying.
    pub fn element_from_index(&self, mut i: u64) -> Element {
        let mut c = vec![0u64; self.m];
        for slot in c.iter_mut() {
            *slot = i % self.p;
            i /= self.p;
        }
        Element { coeffs: c }
    }

    /// All `q` elements in the deterministic enumeration order. Only
    /// intended for small fields (searches and exhaustive checks).
    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        use num_traits::ToPrimitive;
        let q = self.q.to_u64().expect("enumeration requires q to fit in u64");
        (0..q).map(move |i| self.element_from_index(i))
    }
}

/// Build a field, validating all invariants. If `modulus` is omitted the
/// lexicographically smallest monic irreducible of degree `m` is chosen
/// (coefficients compared constant-term-first), so the result is
/// deterministic in `(p, m)`.
pub fn make_field(p: u64, m: usize, modulus: Option<Vec<u64>>) -> Result<FieldSpec> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::DegreeMismatch);
    }
    let q = BigUint::from(p).pow(m as u32);
    let modulus = match modulus {
        Some(raw) => {
            if raw.len() != m + 1 {
                return Err(Error::DegreeMismatch);
            }
            let f: Vec<u64> = raw.iter().map(|&c| c % p).collect();
            if *f.last().unwrap() != 1 {
                return Err(Error::DegreeMismatch);
            }
            if !poly_is_irreducible(&f, p) {
                return Err(Error::ReducibleModulus);
            }
            f
        }
        None => {
            if m == 1 {
                // prime field: formal modulus x
                vec![0, 1]
            } else {
                find_smallest_irreducible(p, m)
            }
        }
    };
    Ok(FieldSpec { p, m, q, modulus })
}

fn find_smallest_irreducible(p: u64, m: usize) -> Vec<u64> {
    // lex order on (c_0, ..., c_{m-1}): constant term is most significant
    let total = p.pow(m as u32);
    for idx in 0..total {
        let mut f = vec![0u64; m + 1];
        let mut i = idx;
        for k in (0..m).rev() {
            f[k] = i % p;
            i /= p;
        }
        f[m] = 1;
        if poly_is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over Z/p")
}

impl Serialize for FieldSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw<'a> {
            p: u64,
            m: usize,
            modulus: &'a [u64],
        }
        Raw {
            p: self.p,
            m: self.m,
            modulus: &self.modulus,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            p: u64,
            m: usize,
            modulus: Vec<u64>,
        }
        let raw = Raw::deserialize(d)?;
        make_field(raw.p, raw.m, Some(raw.modulus)).map_err(D::Error::custom)
    }
}
