//! The quadratic and cubic towers: starter search, per-level extension via
//! the recursions `f(X,Y) = Y^2 + (6-8X^2)Y + (9-8X^2)` and
//! `g(X,Y) = Y^3 + (6-9X^3)Y^2 + (12-9X^3)Y + (8-9X^3)`, recursive
//! arithmetic in `F_{q^(l^n)}`, the marked elements `delta_n = alpha_n^2 - 1`
//! and `gamma_n = beta_n^3 - 1`, and the norm maps `N_{n,j}`.
//!
//! Elements are stored as recursive coordinate trees over the relative
//! bases `{1, alpha_k}` and `{1, beta_k, beta_k^2}`; no absolute minimal
//! polynomial is ever computed. Irreducibility of each extension step is
//! certified by the l-th-power residue test on the previous marked
//! element, which is exactly the criterion the degree propositions use.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::basefield::{Element, FieldSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TowerKind {
    Quadratic,
    Cubic,
}

impl TowerKind {
    pub fn ell(self) -> u64 {
        match self {
            TowerKind::Quadratic => 2,
            TowerKind::Cubic => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TowerKind::Quadratic => "quadratic",
            TowerKind::Cubic => "cubic",
        }
    }
}

/// A recursive coordinate tree. A leaf is a base-field element; a node at
/// level `k` holds exactly `l` coordinates in the relative basis over
/// level `k - 1`. Canonical form keeps a node at its level even when the
/// non-constant coordinates vanish; `lower_level` tests subfield
/// membership explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TowerElement {
    Leaf(Element),
    Node(Vec<TowerElement>),
}

/// One extension step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerLevel {
    /// Relative minimal polynomial over the previous level, constant term
    /// first, monic of degree `l`; coefficients live at the previous level.
    pub rel_minpoly: Vec<TowerElement>,
    /// `alpha_n` (resp. `beta_n`): the residue class of `Y`.
    pub gen: TowerElement,
    /// `delta_n = alpha_n^2 - 1` (resp. `gamma_n = beta_n^3 - 1`).
    pub marked: TowerElement,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    kind: TowerKind,
    base: FieldSpec,
    start: Element,
    marked_base: Element,
    levels: Vec<TowerLevel>,
}

/// First element in enumeration order with `alpha_0^2 - 1` a nonzero
/// nonsquare; exists for every odd `q`.
pub fn find_alpha0(f: &FieldSpec) -> Result<Element> {
    if f.p() == 2 {
        return Err(Error::EvenCharacteristic);
    }
    for cand in f.elements() {
        let delta = f.sub(&f.mul(&cand, &cand), &f.one());
        if f.is_zero(&delta) {
            continue;
        }
        if !f.is_nth_power(&delta, 2)? {
            return Ok(cand);
        }
    }
    unreachable!("Lemma guarantees a starter exists for odd q")
}

/// First element in enumeration order with `beta_0^3 - 1` a nonzero
/// noncube; exists for every `q = 1 (mod 3)` except `q = 4`.
pub fn find_beta0(f: &FieldSpec) -> Result<Element> {
    if (f.q() % 3u32) != BigUint::one() {
        return Err(Error::NoCubeStructure);
    }
    if *f.q() == BigUint::from(4u32) {
        return Err(Error::QIsFour);
    }
    for cand in f.elements() {
        let c2 = f.mul(&cand, &cand);
        let gamma = f.sub(&f.mul(&c2, &cand), &f.one());
        if f.is_zero(&gamma) {
            continue;
        }
        if !f.is_nth_power(&gamma, 3)? {
            return Ok(cand);
        }
    }
    unreachable!("Lemma guarantees a starter exists when q = 1 mod 3, q != 4")
}

impl Tower {
    /// Level-0 tower over a validated base field. When `start` is omitted
    /// the deterministic starter search is used.
    pub fn build(kind: TowerKind, base: FieldSpec, start: Option<Element>) -> Result<Tower> {
        let ell = kind.ell();
        match kind {
            TowerKind::Quadratic => {
                if (base.q() % 4u32) != BigUint::one() {
                    return Err(Error::BadTowerCongruence(4));
                }
            }
            TowerKind::Cubic => {
                if *base.q() == BigUint::from(4u32) {
                    return Err(Error::QIsFour);
                }
                if (base.q() % 3u32) != BigUint::one() {
                    return Err(Error::BadTowerCongruence(3));
                }
            }
        }
        let start = match start {
            Some(s) => s,
            None => match kind {
                TowerKind::Quadratic => find_alpha0(&base)?,
                TowerKind::Cubic => find_beta0(&base)?,
            },
        };
        if start.coeffs.len() != base.m() {
            return Err(Error::DegreeMismatch);
        }
        let mut marked_base = base.one();
        for _ in 0..ell {
            marked_base = base.mul(&marked_base, &start);
        }
        marked_base = base.sub(&marked_base, &base.one());
        if base.is_zero(&marked_base) || base.is_nth_power(&marked_base, ell)? {
            return Err(Error::IrreducibilityFailure);
        }
        Ok(Tower {
            kind,
            base,
            start,
            marked_base,
            levels: Vec::new(),
        })
    }

    pub fn kind(&self) -> TowerKind {
        self.kind
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn start(&self) -> &Element {
        &self.start
    }

    /// `delta_0` (resp. `gamma_0`) in the base field.
    pub fn marked_base(&self) -> &Element {
        &self.marked_base
    }

    /// Number of built levels.
    pub fn height(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[TowerLevel] {
        &self.levels
    }

    /// `alpha_n` / `beta_n` as a level-`n` element.
    pub fn gen_at(&self, n: usize) -> TowerElement {
        if n == 0 {
            TowerElement::Leaf(self.start.clone())
        } else {
            self.levels[n - 1].gen.clone()
        }
    }

    /// `delta_n` / `gamma_n` as a level-`n` element.
    pub fn marked_at(&self, n: usize) -> TowerElement {
        if n == 0 {
            TowerElement::Leaf(self.marked_base.clone())
        } else {
            self.levels[n - 1].marked.clone()
        }
    }

    /// `q^(l^n)`, the size of the level-`n` field.
    pub fn field_size(&self, n: usize) -> BigUint {
        self.base.q().pow(self.kind.ell().pow(n as u32) as u32)
    }

    // ---------------------------------------------------------- arithmetic

    pub fn level_of(&self, x: &TowerElement) -> Result<usize> {
        let mut depth = 0usize;
        let mut cur = x;
        loop {
            match cur {
                TowerElement::Leaf(e) => {
                    if e.coeffs.len() != self.base.m() {
                        return Err(Error::LevelMismatch);
                    }
                    return Ok(depth);
                }
                TowerElement::Node(children) => {
                    if children.len() != self.kind.ell() as usize {
                        return Err(Error::LevelMismatch);
                    }
                    depth += 1;
                    cur = &children[0];
                }
            }
        }
    }

    pub fn zero_at(&self, n: usize) -> TowerElement {
        if n == 0 {
            TowerElement::Leaf(self.base.zero())
        } else {
            let child = self.zero_at(n - 1);
            TowerElement::Node(vec![child; self.kind.ell() as usize])
        }
    }

    pub fn one_at(&self, n: usize) -> TowerElement {
        self.scalar_at(n, 1)
    }

    /// The integer `k` embedded at level `n`.
    pub fn scalar_at(&self, n: usize, k: i64) -> TowerElement {
        if n == 0 {
            TowerElement::Leaf(self.base.scalar(k))
        } else {
            let mut children = vec![self.zero_at(n - 1); self.kind.ell() as usize];
            children[0] = self.scalar_at(n - 1, k);
            TowerElement::Node(children)
        }
    }

    /// Embed a level-`k` element at level `k + 1`.
    pub fn lift(&self, x: &TowerElement) -> Result<TowerElement> {
        let k = self.level_of(x)?;
        let mut children = vec![self.zero_at(k); self.kind.ell() as usize];
        children[0] = x.clone();
        Ok(TowerElement::Node(children))
    }

    /// Embed a level-`k` element at level `target >= k`.
    pub fn embed_to(&self, x: &TowerElement, target: usize) -> Result<TowerElement> {
        let k = self.level_of(x)?;
        if k > target {
            return Err(Error::LevelMismatch);
        }
        let mut cur = x.clone();
        for _ in k..target {
            cur = self.lift(&cur)?;
        }
        Ok(cur)
    }

    pub fn is_zero(&self, x: &TowerElement) -> bool {
        match x {
            TowerElement::Leaf(e) => self.base.is_zero(e),
            TowerElement::Node(children) => children.iter().all(|c| self.is_zero(c)),
        }
    }

    /// True when a level-`k` element lies in the level-`k-1` subfield: all
    /// non-constant coordinates are zero.
    pub fn lower_level(&self, x: &TowerElement) -> Result<bool> {
        match x {
            TowerElement::Leaf(_) => Err(Error::LevelMismatch),
            TowerElement::Node(children) => Ok(children[1..].iter().all(|c| self.is_zero(c))),
        }
    }

    fn zip_map(
        &self,
        x: &TowerElement,
        y: &TowerElement,
        f: &impl Fn(&Element, &Element) -> Element,
    ) -> Result<TowerElement> {
        match (x, y) {
            (TowerElement::Leaf(a), TowerElement::Leaf(b)) => {
                Ok(TowerElement::Leaf(f(a, b)))
            }
            (TowerElement::Node(a), TowerElement::Node(b)) if a.len() == b.len() => {
                Ok(TowerElement::Node(
                    a.iter()
                        .zip(b)
                        .map(|(u, v)| self.zip_map(u, v, f))
                        .collect::<Result<_>>()?,
                ))
            }
            _ => Err(Error::LevelMismatch),
        }
    }

    pub fn add(&self, x: &TowerElement, y: &TowerElement) -> Result<TowerElement> {
        self.zip_map(x, y, &|a, b| self.base.add(a, b))
    }

    pub fn sub(&self, x: &TowerElement, y: &TowerElement) -> Result<TowerElement> {
        self.zip_map(x, y, &|a, b| self.base.sub(a, b))
    }

    pub fn neg(&self, x: &TowerElement) -> TowerElement {
        match x {
            TowerElement::Leaf(e) => TowerElement::Leaf(self.base.neg(e)),
            TowerElement::Node(children) => {
                TowerElement::Node(children.iter().map(|c| self.neg(c)).collect())
            }
        }
    }

    /// Multiply a level-`k` element by a level-`k-1` scalar coordinatewise.
    fn scale(&self, x: &TowerElement, s: &TowerElement) -> Result<TowerElement> {
        match x {
            TowerElement::Leaf(_) => self.mul(x, s),
            TowerElement::Node(children) => Ok(TowerElement::Node(
                children
                    .iter()
                    .map(|c| self.mul(c, s))
                    .collect::<Result<_>>()?,
            )),
        }
    }

    /// Product with reduction by the relative minimal polynomial at each
    /// level, recursively.
    pub fn mul(&self, x: &TowerElement, y: &TowerElement) -> Result<TowerElement> {
        match (x, y) {
            (TowerElement::Leaf(a), TowerElement::Leaf(b)) => {
                Ok(TowerElement::Leaf(self.base.mul(a, b)))
            }
            (TowerElement::Node(a), TowerElement::Node(b)) if a.len() == b.len() => {
                let ell = a.len();
                let level = self.level_of(x)?;
                if level > self.levels.len() {
                    return Err(Error::LevelMismatch);
                }
                let minpoly = &self.levels[level - 1].rel_minpoly;
                // schoolbook product, degree <= 2l - 2
                let mut coeffs = vec![self.zero_at(level - 1); 2 * ell - 1];
                for (i, u) in a.iter().enumerate() {
                    if self.is_zero(u) {
                        continue;
                    }
                    for (j, v) in b.iter().enumerate() {
                        let term = self.mul(u, v)?;
                        coeffs[i + j] = self.add(&coeffs[i + j], &term)?;
                    }
                }
                // reduce by the monic minimal polynomial
                for i in (ell..2 * ell - 1).rev() {
                    if self.is_zero(&coeffs[i]) {
                        continue;
                    }
                    let lead = coeffs[i].clone();
                    coeffs[i] = self.zero_at(level - 1);
                    for t in 0..ell {
                        let sub = self.mul(&lead, &minpoly[t])?;
                        coeffs[i - ell + t] = self.sub(&coeffs[i - ell + t], &sub)?;
                    }
                }
                coeffs.truncate(ell);
                Ok(TowerElement::Node(coeffs))
            }
            _ => Err(Error::LevelMismatch),
        }
    }

    /// `x^e` by square-and-multiply; `e` is arbitrary precision.
    pub fn pow(&self, x: &TowerElement, e: &BigUint) -> Result<TowerElement> {
        let level = self.level_of(x)?;
        if self.is_zero(x) {
            if e.is_zero() {
                return Err(Error::ZeroToZero);
            }
            return Ok(self.zero_at(level));
        }
        let mut result = self.one_at(level);
        for i in (0..e.bits()).rev() {
            result = self.mul(&result, &result)?;
            if e.bit(i) {
                result = self.mul(&result, x)?;
            }
        }
        Ok(result)
    }

    pub fn inv(&self, x: &TowerElement) -> Result<TowerElement> {
        if self.is_zero(x) {
            return Err(Error::DivisionByZero);
        }
        match x {
            TowerElement::Leaf(e) => Ok(TowerElement::Leaf(self.base.inv(e)?)),
            TowerElement::Node(children) => match self.kind {
                TowerKind::Quadratic => {
                    // (u + v a)^(-1) = conjugate / norm
                    let level = self.level_of(x)?;
                    let minpoly = &self.levels[level - 1].rel_minpoly;
                    let a = &minpoly[1];
                    let (u, v) = (&children[0], &children[1]);
                    let conj_const = self.sub(u, &self.mul(a, v)?)?;
                    let conj = TowerElement::Node(vec![conj_const, self.neg(v)]);
                    let norm = self.relative_norm(x)?;
                    let norm_inv = self.inv(&norm)?;
                    self.scale(&conj, &norm_inv)
                }
                TowerKind::Cubic => {
                    // adjugate of the multiplication matrix over the determinant
                    let m = self.mul_matrix(x)?;
                    let det = self.det3(&m)?;
                    let det_inv = self.inv(&det)?;
                    // coords of x^(-1) are the first-row cofactors / det
                    let c0 = self.sub(
                        &self.mul(&m[1][1], &m[2][2])?,
                        &self.mul(&m[1][2], &m[2][1])?,
                    )?;
                    let c1 = self.sub(
                        &self.mul(&m[1][2], &m[2][0])?,
                        &self.mul(&m[1][0], &m[2][2])?,
                    )?;
                    let c2 = self.sub(
                        &self.mul(&m[1][0], &m[2][1])?,
                        &self.mul(&m[1][1], &m[2][0])?,
                    )?;
                    let coords = TowerElement::Node(vec![c0, c1, c2]);
                    self.scale(&coords, &det_inv)
                }
            },
        }
    }

    /// Columns of the multiplication-by-`x` map in the basis
    /// `{1, beta, beta^2}`; entries live one level down.
    fn mul_matrix(&self, x: &TowerElement) -> Result<[[TowerElement; 3]; 3]> {
        let level = self.level_of(x)?;
        let gen = self.gen_at(level);
        let xb = self.mul(x, &gen)?;
        let xb2 = self.mul(&xb, &gen)?;
        let col = |e: &TowerElement| -> [TowerElement; 3] {
            match e {
                TowerElement::Node(c) => [c[0].clone(), c[1].clone(), c[2].clone()],
                TowerElement::Leaf(_) => unreachable!("level >= 1"),
            }
        };
        let (c0, c1, c2) = (col(x), col(&xb), col(&xb2));
        // m[row][col]
        Ok([
            [c0[0].clone(), c1[0].clone(), c2[0].clone()],
            [c0[1].clone(), c1[1].clone(), c2[1].clone()],
            [c0[2].clone(), c1[2].clone(), c2[2].clone()],
        ])
    }

    fn det3(&self, m: &[[TowerElement; 3]; 3]) -> Result<TowerElement> {
        let t0 = self.mul(
            &m[0][0],
            &self.sub(&self.mul(&m[1][1], &m[2][2])?, &self.mul(&m[1][2], &m[2][1])?)?,
        )?;
        let t1 = self.mul(
            &m[0][1],
            &self.sub(&self.mul(&m[1][0], &m[2][2])?, &self.mul(&m[1][2], &m[2][0])?)?,
        )?;
        let t2 = self.mul(
            &m[0][2],
            &self.sub(&self.mul(&m[1][0], &m[2][1])?, &self.mul(&m[1][1], &m[2][0])?)?,
        )?;
        self.add(&self.sub(&t0, &t1)?, &t2)
    }

    /// Norm from level `n` to level `n - 1`, via the closed coordinate
    /// formulas. Agrees with `pow` at the defining product-of-conjugates
    /// exponent (a tested invariant).
    pub fn relative_norm(&self, x: &TowerElement) -> Result<TowerElement> {
        let level = self.level_of(x)?;
        if level == 0 {
            return Err(Error::LevelMismatch);
        }
        match (self.kind, x) {
            (TowerKind::Quadratic, TowerElement::Node(c)) => {
                let minpoly = &self.levels[level - 1].rel_minpoly;
                let (b, a) = (&minpoly[0], &minpoly[1]);
                let (u, v) = (&c[0], &c[1]);
                // u^2 - a u v + b v^2
                let u2 = self.mul(u, u)?;
                let auv = self.mul(a, &self.mul(u, v)?)?;
                let bv2 = self.mul(b, &self.mul(v, v)?)?;
                self.add(&self.sub(&u2, &auv)?, &bv2)
            }
            (TowerKind::Cubic, TowerElement::Node(_)) => {
                let m = self.mul_matrix(x)?;
                self.det3(&m)
            }
            _ => Err(Error::LevelMismatch),
        }
    }

    /// `N_{n,j}`: the `j`-fold relative norm, landing at level `n - j`.
    pub fn norm_to(&self, x: &TowerElement, j: u32) -> Result<TowerElement> {
        let level = self.level_of(x)?;
        if j == 0 || (j as usize) > level {
            return Err(Error::JOutOfRange);
        }
        let mut cur = x.clone();
        for _ in 0..j {
            cur = self.relative_norm(&cur)?;
        }
        Ok(cur)
    }

    // ---------------------------------------------------------- extension

    /// Append the next level. Irreducibility of the new relative minimal
    /// polynomial is certified by the l-th-power residue test on the
    /// current top marked element.
    pub fn extend(&self) -> Result<Tower> {
        let n_prev = self.levels.len();
        let ell = self.kind.ell();
        let marked_prev = self.marked_at(n_prev);

        // residue criterion: marked_(n-1)^((Q-1)/l) != 1
        let q_prev = self.field_size(n_prev);
        let e = (&q_prev - 1u32) / ell;
        let residue = self.pow(&marked_prev, &e)?;
        if residue == self.one_at(n_prev) {
            return Err(Error::IrreducibilityFailure);
        }

        let gen_prev = self.gen_at(n_prev);
        let rel_minpoly = match self.kind {
            TowerKind::Quadratic => {
                let x2 = self.mul(&gen_prev, &gen_prev)?;
                let eight_x2 = self.scale_int(&x2, 8)?;
                let c1 = self.sub(&self.scalar_at(n_prev, 6), &eight_x2)?;
                let c0 = self.sub(&self.scalar_at(n_prev, 9), &eight_x2)?;
                vec![c0, c1, self.one_at(n_prev)]
            }
            TowerKind::Cubic => {
                let x2 = self.mul(&gen_prev, &gen_prev)?;
                let x3 = self.mul(&x2, &gen_prev)?;
                let nine_x3 = self.scale_int(&x3, 9)?;
                let c2 = self.sub(&self.scalar_at(n_prev, 6), &nine_x3)?;
                let c1 = self.sub(&self.scalar_at(n_prev, 12), &nine_x3)?;
                let c0 = self.sub(&self.scalar_at(n_prev, 8), &nine_x3)?;
                vec![c0, c1, c2, self.one_at(n_prev)]
            }
        };

        let mut next = self.clone();
        let n_new = n_prev + 1;
        let mut gen_coords = vec![next.zero_at(n_prev); ell as usize];
        gen_coords[1] = next.one_at(n_prev);
        let gen = TowerElement::Node(gen_coords);
        next.levels.push(TowerLevel {
            rel_minpoly,
            gen: gen.clone(),
            marked: next.zero_at(n_new), // placeholder until gen arithmetic is available
        });
        let mut power = gen.clone();
        for _ in 1..ell {
            power = next.mul(&power, &gen)?;
        }
        let marked = next.sub(&power, &next.one_at(n_new))?;
        next.levels.last_mut().unwrap().marked = marked;
        Ok(next)
    }

    /// Extend until `n_max` levels exist.
    pub fn extend_to(&self, n_max: usize) -> Result<Tower> {
        let mut t = self.clone();
        while t.height() < n_max {
            t = t.extend()?;
        }
        Ok(t)
    }

    fn scale_int(&self, x: &TowerElement, k: i64) -> Result<TowerElement> {
        let level = self.level_of(x)?;
        self.mul(x, &self.scalar_at(level, k))
    }

    /// Degree check at level `n`: the generator and the marked element lie
    /// outside level `n - 1`, and `marked^((Q-1)/l)` is a primitive l-th
    /// root of unity, per the degree propositions.
    pub fn verify_degree(&self, n: usize) -> Result<bool> {
        if n == 0 || n > self.levels.len() {
            return Err(Error::JOutOfRange);
        }
        let lvl = &self.levels[n - 1];
        if self.lower_level(&lvl.gen)? || self.lower_level(&lvl.marked)? {
            return Ok(false);
        }
        let q_n = self.field_size(n);
        let ell = self.kind.ell();
        let e = (&q_n - 1u32) / ell;
        let root = self.pow(&lvl.marked, &e)?;
        let one = self.one_at(n);
        if root == one {
            return Ok(false);
        }
        Ok(self.pow(&root, &BigUint::from(ell))? == one)
    }

    // -------------------------------------------------------- serialization

    fn element_to_value(x: &TowerElement) -> Value {
        match x {
            TowerElement::Leaf(e) => json!(e.coeffs),
            TowerElement::Node(children) => {
                Value::Array(children.iter().map(Self::element_to_value).collect())
            }
        }
    }

    fn element_from_value(v: &Value) -> Result<TowerElement> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Serialization("expected array".into()))?;
        if arr.is_empty() {
            return Err(Error::Serialization("empty coordinate array".into()));
        }
        if arr[0].is_array() {
            Ok(TowerElement::Node(
                arr.iter().map(Self::element_from_value).collect::<Result<_>>()?,
            ))
        } else {
            let coeffs = arr
                .iter()
                .map(|c| {
                    c.as_u64()
                        .ok_or_else(|| Error::Serialization("expected integer".into()))
                })
                .collect::<Result<Vec<u64>>>()?;
            Ok(TowerElement::Leaf(Element { coeffs }))
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.name(),
            "base": serde_json::to_value(&self.base).expect("field serializes"),
            "start": self.start.coeffs,
            "levels": self.levels.iter().map(|l| json!({
                "rel_minpoly": l.rel_minpoly.iter().map(Self::element_to_value).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }

    /// Rebuilds by re-extending and checks the stored relative minimal
    /// polynomials match, so a round trip is lossless or fails loudly.
    pub fn from_json(v: &Value) -> Result<Tower> {
        let kind = match v.get("kind").and_then(Value::as_str) {
            Some("quadratic") => TowerKind::Quadratic,
            Some("cubic") => TowerKind::Cubic,
            _ => return Err(Error::Serialization("bad kind".into())),
        };
        let base: FieldSpec = serde_json::from_value(
            v.get("base")
                .cloned()
                .ok_or_else(|| Error::Serialization("missing base".into()))?,
        )
        .map_err(|e| Error::Serialization(e.to_string()))?;
        let start_coeffs = v
            .get("start")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Serialization("missing start".into()))?
            .iter()
            .map(|c| c.as_u64().ok_or_else(|| Error::Serialization("bad start".into())))
            .collect::<Result<Vec<u64>>>()?;
        let levels = v
            .get("levels")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Serialization("missing levels".into()))?;
        let mut t = Tower::build(kind, base, Some(Element { coeffs: start_coeffs }))?;
        for lvl in levels {
            t = t.extend()?;
            let stored = lvl
                .get("rel_minpoly")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Serialization("missing rel_minpoly".into()))?
                .iter()
                .map(Self::element_from_value)
                .collect::<Result<Vec<_>>>()?;
            if stored != t.levels.last().unwrap().rel_minpoly {
                return Err(Error::Serialization(
                    "stored rel_minpoly disagrees with the recursion".into(),
                ));
            }
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basefield::make_field;

    fn q5_tower(n: usize) -> Tower {
        let f = make_field(5, 1, None).unwrap();
        Tower::build(TowerKind::Quadratic, f, None)
            .unwrap()
            .extend_to(n)
            .unwrap()
    }

    fn q7_tower(n: usize) -> Tower {
        let f = make_field(7, 1, None).unwrap();
        Tower::build(TowerKind::Cubic, f, None)
            .unwrap()
            .extend_to(n)
            .unwrap()
    }

    #[test]
    fn starter_gf5() {
        let f = make_field(5, 1, None).unwrap();
        assert_eq!(find_alpha0(&f).unwrap(), f.scalar(2));
    }

    #[test]
    fn starter_even_characteristic() {
        let f = make_field(2, 4, Some(vec![1, 1, 0, 0, 1])).unwrap();
        assert_eq!(find_alpha0(&f).unwrap_err(), Error::EvenCharacteristic);
    }

    #[test]
    fn starter_gf13_matches_exhaustive_search() {
        let f = make_field(13, 1, None).unwrap();
        // oracle: squares mod 13 are {1,3,4,9,10,12}; scan 0,1,2,...
        let squares = [1u64, 3, 4, 9, 10, 12];
        let mut expected = None;
        for a in 0..13u64 {
            let d = (a * a + 12) % 13;
            if d != 0 && !squares.contains(&d) {
                expected = Some(a);
                break;
            }
        }
        assert_eq!(find_alpha0(&f).unwrap(), f.scalar(expected.unwrap() as i64));
    }

    #[test]
    fn starter_gf7_cubic() {
        let f = make_field(7, 1, None).unwrap();
        assert_eq!(find_beta0(&f).unwrap(), f.scalar(3));
    }

    #[test]
    fn starter_cubic_errors() {
        let f4 = make_field(2, 2, None).unwrap();
        assert_eq!(find_beta0(&f4).unwrap_err(), Error::QIsFour);
        let f5 = make_field(5, 1, None).unwrap();
        assert_eq!(find_beta0(&f5).unwrap_err(), Error::NoCubeStructure);
    }

    #[test]
    fn extend_minpoly_q5() {
        let t = q5_tower(1);
        // f(2, Y) = Y^2 + (6-32)Y + (9-32) = Y^2 + 4Y + 2 mod 5
        let f = t.base();
        let expect = vec![
            TowerElement::Leaf(f.scalar(2)),
            TowerElement::Leaf(f.scalar(4)),
            TowerElement::Leaf(f.one()),
        ];
        assert_eq!(t.levels()[0].rel_minpoly, expect);
    }

    #[test]
    fn extend_minpoly_q7_cubic() {
        let t = q7_tower(1);
        // g(3, Y) = Y^3 + (6-243)Y^2 + (12-243)Y + (8-243); 243 = 5 mod 7
        // so coefficients are (3, 0, 1) constant first
        let f = t.base();
        let expect = vec![
            TowerElement::Leaf(f.scalar(3)),
            TowerElement::Leaf(f.scalar(0)),
            TowerElement::Leaf(f.scalar(1)),
            TowerElement::Leaf(f.one()),
        ];
        assert_eq!(t.levels()[0].rel_minpoly, expect);
        // oracle: gen must satisfy the substituted polynomial
        let gen = t.gen_at(1);
        let g3 = t.mul(&t.mul(&gen, &gen).unwrap(), &gen).unwrap();
        let g2 = t.mul(&gen, &gen).unwrap();
        let mut acc = g3;
        acc = t.add(&acc, &t.mul(&t.scalar_at(1, 1), &g2).unwrap()).unwrap();
        acc = t.add(&acc, &t.mul(&t.scalar_at(1, 0), &gen).unwrap()).unwrap();
        acc = t.add(&acc, &t.scalar_at(1, 3)).unwrap();
        assert!(t.is_zero(&acc));
    }

    #[test]
    fn extend_minpoly_q9() {
        let f = make_field(3, 2, Some(vec![1, 0, 1])).unwrap();
        let start = Element { coeffs: vec![2, 1] }; // zeta + 2
        let t = Tower::build(TowerKind::Quadratic, f, Some(start))
            .unwrap()
            .extend()
            .unwrap();
        // oracle: direct expansion. (zeta+2)^2 = zeta, so 8 X^2 = 2 zeta,
        // c1 = 6 - 2 zeta = -2 zeta = zeta (mod 3), c0 = 9 - 2 zeta = zeta
        let zeta = TowerElement::Leaf(Element { coeffs: vec![0, 1] });
        let base_one = TowerElement::Leaf(t.base().one());
        assert_eq!(
            t.levels()[0].rel_minpoly,
            vec![zeta.clone(), zeta, base_one]
        );
    }

    #[test]
    fn tower_mul_identity_and_reduction() {
        let t = q5_tower(1);
        let alpha1 = t.gen_at(1);
        assert_eq!(t.mul(&alpha1, &t.one_at(1)).unwrap(), alpha1);
        // alpha_1^2 = -4 alpha_1 - 2 = alpha_1 + 3 mod 5
        let sq = t.mul(&alpha1, &alpha1).unwrap();
        let f = t.base();
        assert_eq!(
            sq,
            TowerElement::Node(vec![
                TowerElement::Leaf(f.scalar(3)),
                TowerElement::Leaf(f.scalar(1)),
            ])
        );
        // delta_1 = alpha_1 + 2, cross-check the closed form
        // (8 a0^2 - 6) alpha_1 + (8 a0^2 - 10) = (1, 2) mod 5
        let delta1 = t.marked_at(1);
        assert_eq!(
            delta1,
            TowerElement::Node(vec![
                TowerElement::Leaf(f.scalar(2)),
                TowerElement::Leaf(f.scalar(1)),
            ])
        );
    }

    #[test]
    fn tower_pow_orders() {
        let t = q5_tower(1);
        let delta1 = t.marked_at(1);
        assert_eq!(t.pow(&delta1, &BigUint::from(1u32)).unwrap(), delta1);
        assert_eq!(t.pow(&delta1, &BigUint::from(8u32)).unwrap(), t.one_at(1));
        assert_ne!(t.pow(&delta1, &BigUint::from(4u32)).unwrap(), t.one_at(1));
    }

    #[test]
    fn relative_norm_examples() {
        // norm of an embedded scalar is its l-th power
        let t = q5_tower(2);
        let c = t.marked_at(1);
        let lifted = t.lift(&c).unwrap();
        assert_eq!(
            t.relative_norm(&lifted).unwrap(),
            t.mul(&c, &c).unwrap()
        );
        // N(delta_1) = -64 * delta_0 = 3 in GF(5)
        let norm = t.relative_norm(&t.marked_at(1)).unwrap();
        assert_eq!(norm, TowerElement::Leaf(t.base().scalar(3)));

        // cubic: the minimal polynomial of gamma_1 has constant term
        // -729*gamma_0, so N(gamma_1) = 729 * gamma_0 = 5 in GF(7);
        // oracle is pow at exponent q^2 + q + 1 = 57
        let t = q7_tower(1);
        let gamma1 = t.marked_at(1);
        let norm = t.relative_norm(&gamma1).unwrap();
        assert_eq!(norm, TowerElement::Leaf(t.base().scalar(5)));
        let by_pow = t.pow(&gamma1, &BigUint::from(57u32)).unwrap();
        assert_eq!(by_pow, t.lift(&norm).unwrap());
    }

    #[test]
    fn norm_to_lands_in_base() {
        let t = q5_tower(3);
        let d3 = t.marked_at(3);
        let n = t.norm_to(&d3, 3).unwrap();
        assert!(matches!(n, TowerElement::Leaf(_)));
        assert_eq!(t.norm_to(&d3, 4).unwrap_err(), Error::JOutOfRange);
    }

    #[test]
    fn verify_degree_levels() {
        let t = q5_tower(4);
        for n in 1..=4 {
            assert!(t.verify_degree(n).unwrap(), "q=5 level {n}");
        }
        let t = q7_tower(3);
        for n in 1..=3 {
            assert!(t.verify_degree(n).unwrap(), "q=7 level {n}");
        }
    }

    #[test]
    fn marked_recursion_consistency() {
        // F(delta_(n-1), delta_n) = 0 with F(X,Y) = Y^2 - (48X + 64X^2)Y - 64X
        let t = q5_tower(3);
        for n in 1..=3usize {
            let x = t.embed_to(&t.marked_at(n - 1), n).unwrap();
            let y = t.marked_at(n);
            let x2 = t.mul(&x, &x).unwrap();
            let coeff = t
                .add(&t.scale_int(&x, 48).unwrap(), &t.scale_int(&x2, 64).unwrap())
                .unwrap();
            let val = t
                .sub(
                    &t.sub(&t.mul(&y, &y).unwrap(), &t.mul(&coeff, &y).unwrap())
                        .unwrap(),
                    &t.scale_int(&x, 64).unwrap(),
                )
                .unwrap();
            assert!(t.is_zero(&val), "F recursion fails at n={n}");
        }

        // G(gamma_(n-1), gamma_n) = 0 with
        // G(X,Y) = Y^3 - (270X + 972X^2 + 729X^3)Y^2 - (972X + 729X^2)Y - 729X
        let t = q7_tower(2);
        for n in 1..=2usize {
            let x = t.embed_to(&t.marked_at(n - 1), n).unwrap();
            let y = t.marked_at(n);
            let x2 = t.mul(&x, &x).unwrap();
            let x3 = t.mul(&x2, &x).unwrap();
            let c2 = t
                .add(
                    &t.add(&t.scale_int(&x, 270).unwrap(), &t.scale_int(&x2, 972).unwrap())
                        .unwrap(),
                    &t.scale_int(&x3, 729).unwrap(),
                )
                .unwrap();
            let c1 = t
                .add(&t.scale_int(&x, 972).unwrap(), &t.scale_int(&x2, 729).unwrap())
                .unwrap();
            let y2 = t.mul(&y, &y).unwrap();
            let y3 = t.mul(&y2, &y).unwrap();
            let val = t
                .sub(
                    &t.sub(
                        &t.sub(&y3, &t.mul(&c2, &y2).unwrap()).unwrap(),
                        &t.mul(&c1, &y).unwrap(),
                    )
                    .unwrap(),
                    &t.scale_int(&x, 729).unwrap(),
                )
                .unwrap();
            assert!(t.is_zero(&val), "G recursion fails at n={n}");
        }
    }

    #[test]
    fn inverse_round_trip() {
        let t = q5_tower(2);
        let x = t.add(&t.gen_at(2), &t.scalar_at(2, 3)).unwrap();
        let xi = t.inv(&x).unwrap();
        assert_eq!(t.mul(&x, &xi).unwrap(), t.one_at(2));

        let t = q7_tower(2);
        let x = t.add(&t.gen_at(2), &t.scalar_at(2, 5)).unwrap();
        let xi = t.inv(&x).unwrap();
        assert_eq!(t.mul(&x, &xi).unwrap(), t.one_at(2));
        assert_eq!(t.inv(&t.zero_at(1)).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn serialization_round_trip() {
        let t = q5_tower(2);
        let v = t.to_json();
        let back = Tower::from_json(&v).unwrap();
        assert_eq!(back, t);

        let t = q7_tower(2);
        let back = Tower::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn build_congruence_checks() {
        let f7 = make_field(7, 1, None).unwrap();
        assert_eq!(
            Tower::build(TowerKind::Quadratic, f7, None).unwrap_err(),
            Error::BadTowerCongruence(4)
        );
        let f4 = make_field(2, 2, None).unwrap();
        assert_eq!(
            Tower::build(TowerKind::Cubic, f4, None).unwrap_err(),
            Error::QIsFour
        );
    }

    #[test]
    fn build_rejects_bad_starter() {
        let f = make_field(5, 1, None).unwrap();
        // alpha_0 = 0 gives delta_0 = -1 = 4, a square mod 5
        assert_eq!(
            Tower::build(TowerKind::Quadratic, f, Some(Element { coeffs: vec![0] }))
                .unwrap_err(),
            Error::IrreducibilityFailure
        );
    }
}
