//! Comparator against the Voloch-style lower bound for the order of
//! `a - 1` when `a` is a low-order root of unity: instance generation,
//! machine-checkable hypothesis evaluation, coset diagnostics, and the
//! crossover analysis against the tower bounds.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::basefield::{make_field, Element, FieldSpec};
use crate::error::{Error, Result};
use crate::numtheory::ord_ell;
use crate::orderengine::{order_from_factored, Factorization, OrderResult};

/// An element `a` of exact order `r = l^n` in the degree-`d` extension of
/// `F_q`, with `d = l^(n - ord_l(q-1))` the multiplicative order of `q`
/// modulo `r`.
#[derive(Debug, Clone)]
pub struct VolochInstance {
    pub q: BigUint,
    pub ell: u64,
    pub n: u32,
    pub d: u64,
    pub r: BigUint,
    /// The degree-`d` extension realized as `F_{p^(m d)}`.
    pub field: FieldSpec,
    pub a: Element,
}

/// Machine-checkable hypothesis evaluation plus the bound itself.
#[derive(Debug, Clone)]
pub struct VolochReport {
    pub epsilon: f64,
    pub eta: f64,
    /// `N = ceil(d^(1-eps))`.
    pub n_cap: u64,
    /// `T = floor(d^(eps/3))`.
    pub t: u64,
    /// `(1-eta) (2 eps / 3) d^(eps/3) ln d`, natural-log scale.
    pub bound_log: f64,
    pub bound_log2: f64,
    /// `r < d^(2 - 2 eps)`.
    pub hyp_r: bool,
    /// `N * T < d`.
    pub hyp_nt: bool,
    /// The binomial inequality depends on the proof's unspecified
    /// constant, so it is never machine-checkable.
    pub hyp_binomial: TriState,
    pub order_of_a_minus_1: Option<OrderResult>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriState {
    True,
    False,
    Indeterminate,
}

/// Multiplicative order of `q` modulo `r` by direct iteration.
pub fn mult_order_mod(q: &BigUint, r: &BigUint) -> Result<u64> {
    if !q.gcd(r).is_one() {
        return Err(Error::NotCoprime);
    }
    if r.is_one() {
        return Ok(1);
    }
    let base = q % r;
    let mut acc = base.clone();
    let mut k = 1u64;
    while !acc.is_one() {
        acc = acc * &base % r;
        k += 1;
    }
    Ok(k)
}

/// Deterministically find an element of exact order `l^n` in the
/// degree-`d` extension, by raising enumerated nonzero elements to
/// `(Q-1)/l^n` until the result does not collapse to order `l^(n-1)`.
pub fn root_of_unity_instance(f: &FieldSpec, ell: u64, n: u32) -> Result<VolochInstance> {
    let q = f.q().clone();
    let s = ord_ell(&(&q - 1u32), ell)?;
    if n <= s {
        return Err(Error::NotApplicable);
    }
    let d = ell.pow(n - s);
    let r = BigUint::from(ell).pow(n);
    // sanity: d must be the multiplicative order of q mod r
    debug_assert_eq!(mult_order_mod(&q, &r)?, d);

    let ext = make_field(f.p(), f.m() * d as usize, None)?;
    let group = ext.group_order();
    debug_assert!((&group % &r).is_zero());
    let exp = &group / &r;
    let half = BigUint::from(ell).pow(n - 1);
    let q_ext = ext.q().to_u64().expect("instance extensions are enumerable");
    for i in 1..q_ext {
        let x = ext.element_from_index(i);
        let y = ext.pow(&x, &exp)?;
        if ext.is_zero(&y) {
            continue;
        }
        if ext.pow(&y, &half)? != ext.one() {
            return Ok(VolochInstance {
                q,
                ell,
                n,
                d,
                r,
                field: ext,
                a: y,
            });
        }
    }
    unreachable!("a cyclic group of order Q-1 with l^n | Q-1 has elements of order l^n")
}

fn check_domain(epsilon: f64, eta: f64, bypass: bool) -> Result<()> {
    if epsilon <= 0.0 || epsilon > 1.0 || eta < 0.0 || eta >= 1.0 {
        return Err(Error::DomainError(format!(
            "epsilon={epsilon}, eta={eta} outside (0,1]x[0,1)"
        )));
    }
    if !bypass && (epsilon >= 1.0 || eta <= 0.0) {
        return Err(Error::DomainError(
            "epsilon=1 or eta=0 are boundary diagnostics; pass the bypass flag".into(),
        ));
    }
    Ok(())
}

/// `(1-eta)(2 eps/3) d^(eps/3) ln d`, plus the same value in log2.
pub fn voloch_bound(d: u64, epsilon: f64, eta: f64, bypass: bool) -> Result<(f64, f64)> {
    check_domain(epsilon, eta, bypass)?;
    let df = d as f64;
    let log_e = (1.0 - eta) * (2.0 * epsilon / 3.0) * df.powf(epsilon / 3.0) * df.ln();
    Ok((log_e, log_e / std::f64::consts::LN_2))
}

/// Evaluate the machine-checkable hypotheses for an instance. The order
/// of `a - 1` is computed when the extension is small enough to factor
/// its group order (`compute_order`).
pub fn hypotheses_check(
    inst: &VolochInstance,
    epsilon: f64,
    eta: f64,
    bypass: bool,
    compute_order: Option<u64>,
) -> Result<VolochReport> {
    check_domain(epsilon, eta, bypass)?;
    let df = inst.d as f64;
    let n_cap = df.powf(1.0 - epsilon).ceil() as u64;
    let t = df.powf(epsilon / 3.0).floor() as u64;
    let (bound_log, bound_log2) = voloch_bound(inst.d, epsilon, eta, bypass)?;
    let hyp_r = inst
        .r
        .to_f64()
        .map(|rf| rf < df.powf(2.0 - 2.0 * epsilon))
        .unwrap_or(false);
    let hyp_nt = (n_cap as u128) * (t as u128) < inst.d as u128;

    let order_of_a_minus_1 = match compute_order {
        Some(budget) => {
            let f = &inst.field;
            let b = f.sub(&inst.a, &f.one());
            if f.is_zero(&b) {
                None
            } else {
                let g = crate::orderengine::factor_integer(&f.group_order(), budget);
                Some(element_order(f, &b, &g)?)
            }
        }
        None => None,
    };

    Ok(VolochReport {
        epsilon,
        eta,
        n_cap,
        t,
        bound_log,
        bound_log2,
        hyp_r,
        hyp_nt,
        hyp_binomial: TriState::Indeterminate,
        order_of_a_minus_1,
    })
}

/// Multiplicative order of a base-field element from the factored group
/// order.
pub fn element_order(f: &FieldSpec, x: &Element, g: &Factorization) -> Result<OrderResult> {
    if f.is_zero(x) {
        return Err(Error::ZeroElement);
    }
    let one = f.one();
    Ok(order_from_factored(g, |e| {
        f.pow(x, e).map(|y| y == one).unwrap_or(false)
    }))
}

/// Coset sizes `|J_Gamma|` for the cosets of `<q>` in `(Z/rZ)*`, counting
/// `n <= n_cap` with `n mod r` in each coset. Diagnostic for the proof's
/// averaging step.
#[derive(Debug, Clone)]
pub struct CosetProfile {
    /// One size per coset, cosets ordered by smallest representative.
    pub sizes: Vec<u64>,
    pub coset_count: u64,
    pub d: u64,
    pub phi_r: u64,
}

pub fn coset_profile(r: u64, q: u64, n_cap: u64) -> Result<CosetProfile> {
    if gcd_u64(q % r, r) != 1 {
        return Err(Error::NotCoprime);
    }
    // cyclic subgroup <q> mod r
    let mut subgroup = vec![1u64];
    let mut cur = q % r;
    while cur != 1 {
        subgroup.push(cur);
        cur = cur * (q % r) % r;
    }
    let d = subgroup.len() as u64;
    let mut assigned = vec![false; r as usize];
    let mut cosets: Vec<Vec<u64>> = Vec::new();
    for rep in 1..r {
        if gcd_u64(rep, r) != 1 || assigned[rep as usize] {
            continue;
        }
        let coset: Vec<u64> = subgroup.iter().map(|&s| s * rep % r).collect();
        for &c in &coset {
            assigned[c as usize] = true;
        }
        cosets.push(coset);
    }
    let phi_r = cosets.len() as u64 * d;
    let sizes = cosets
        .iter()
        .map(|coset| {
            (1..=n_cap)
                .filter(|&n| gcd_u64(n % r, r) == 1 && coset.contains(&(n % r)))
                .count() as u64
        })
        .collect();
    Ok(CosetProfile {
        sizes,
        coset_count: cosets.len() as u64,
        d,
        phi_r,
    })
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

/// One row of the tower-vs-Voloch comparison at level `n`: the tower
/// exponent `n^2/2 + 3n/2 + ord` against the Voloch log2 bound at
/// `d = 2^(n - ord)`.
#[derive(Debug, Clone)]
pub struct CrossoverRow {
    pub n: u32,
    pub tower_log2: f64,
    pub voloch_log2: f64,
    pub tower_dominates: bool,
}

#[derive(Debug, Clone)]
pub struct CrossoverTable {
    pub rows: Vec<CrossoverRow>,
    /// Largest `n` at which the tower bound still dominates.
    pub crossover: Option<u32>,
}

pub fn crossover_compare(
    ord2_q_minus_1: u32,
    epsilon: f64,
    eta: f64,
    bypass: bool,
    n_max: u32,
) -> Result<CrossoverTable> {
    check_domain(epsilon, eta, bypass)?;
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let n64 = n as u64;
        // n^2 + 3n is always even, so the exponent is an exact integer
        let tower_log2 = ((n64 * n64 + 3 * n64) / 2 + ord2_q_minus_1 as u64) as f64;
        let voloch_log2 = if n > ord2_q_minus_1 {
            let d = 1u64 << (n - ord2_q_minus_1);
            voloch_bound(d, epsilon, eta, bypass)?.1
        } else {
            0.0
        };
        rows.push(CrossoverRow {
            n,
            tower_log2,
            voloch_log2,
            tower_dominates: tower_log2 > voloch_log2,
        });
    }
    let crossover = rows
        .iter()
        .take_while(|r| r.tower_dominates)
        .last()
        .map(|r| r.n);
    Ok(CrossoverTable { rows, crossover })
}
