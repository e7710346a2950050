//! Shared randomized property suites: field axioms with the pow
//! homomorphism, the relative-norm-vs-pow oracle, and serialization
//! round trips. Deterministic via a seeded ChaCha stream so failures
//! reproduce.

use num_bigint::BigUint;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fieldtower::orderengine::{factor_integer, DEFAULT_FACTOR_BUDGET};
use fieldtower::{make_field, Element, Tower, TowerElement, TowerKind};

/// The tower configurations the reference tables use.
pub fn configurations() -> Vec<(Tower, usize)> {
    let quad = |p, m, modulus: Option<Vec<u64>>, starter: &[u64]| {
        let f = make_field(p, m, modulus).unwrap();
        let s = f.element_from_coeffs(starter).unwrap();
        Tower::build(TowerKind::Quadratic, f, Some(s)).unwrap()
    };
    let cubic = |p, m, modulus: Option<Vec<u64>>, starter: &[u64]| {
        let f = make_field(p, m, modulus).unwrap();
        let s = f.element_from_coeffs(starter).unwrap();
        Tower::build(TowerKind::Cubic, f, Some(s)).unwrap()
    };
    vec![
        (quad(5, 1, None, &[2]).extend_to(3).unwrap(), 3),
        (quad(3, 2, Some(vec![1, 0, 1]), &[2, 1]).extend_to(2).unwrap(), 2),
        (cubic(7, 1, None, &[3]).extend_to(2).unwrap(), 2),
        (
            cubic(2, 4, Some(vec![1, 1, 0, 0, 1]), &[0, 1]).extend_to(2).unwrap(),
            2,
        ),
    ]
}

pub fn rand_elem(t: &Tower, n: usize, rng: &mut ChaCha8Rng) -> TowerElement {
    if n == 0 {
        let f = t.base();
        let coeffs = (0..f.m()).map(|_| rng.gen_range(0..f.p())).collect();
        TowerElement::Leaf(Element { coeffs })
    } else {
        let ell = t.kind().ell() as usize;
        TowerElement::Node((0..ell).map(|_| rand_elem(t, n - 1, rng)).collect())
    }
}

/// Commutativity, associativity, distributivity, identities, inverses,
/// and the pow homomorphisms `x^(a+b) = x^a x^b`, `(x^a)^b = x^(ab)`:
/// 1000 random cases at every level of every configuration.
pub fn run_field_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for (t, n_max) in configurations() {
        for n in 0..=n_max {
            let zero = t.zero_at(n);
            let one = t.one_at(n);
            for _ in 0..1000 {
                let x = rand_elem(&t, n, &mut rng);
                let y = rand_elem(&t, n, &mut rng);
                let z = rand_elem(&t, n, &mut rng);

                assert_eq!(t.add(&x, &y).unwrap(), t.add(&y, &x).unwrap());
                assert_eq!(t.mul(&x, &y).unwrap(), t.mul(&y, &x).unwrap());
                assert_eq!(
                    t.add(&t.add(&x, &y).unwrap(), &z).unwrap(),
                    t.add(&x, &t.add(&y, &z).unwrap()).unwrap()
                );
                assert_eq!(
                    t.mul(&t.mul(&x, &y).unwrap(), &z).unwrap(),
                    t.mul(&x, &t.mul(&y, &z).unwrap()).unwrap()
                );
                assert_eq!(
                    t.mul(&x, &t.add(&y, &z).unwrap()).unwrap(),
                    t.add(&t.mul(&x, &y).unwrap(), &t.mul(&x, &z).unwrap()).unwrap()
                );
                assert_eq!(t.add(&x, &t.neg(&x)).unwrap(), zero);
                assert_eq!(t.mul(&x, &one).unwrap(), x);
                assert_eq!(t.add(&x, &zero).unwrap(), x);

                if !t.is_zero(&x) {
                    assert_eq!(t.mul(&x, &t.inv(&x).unwrap()).unwrap(), one);

                    let a: u64 = rng.gen_range(1..1 << 10);
                    let b: u64 = rng.gen_range(1..1 << 10);
                    let xa = t.pow(&x, &BigUint::from(a)).unwrap();
                    let xb = t.pow(&x, &BigUint::from(b)).unwrap();
                    assert_eq!(
                        t.pow(&x, &BigUint::from(a + b)).unwrap(),
                        t.mul(&xa, &xb).unwrap()
                    );
                    assert_eq!(
                        t.pow(&xa, &BigUint::from(b)).unwrap(),
                        t.pow(&x, &BigUint::from(a * b)).unwrap()
                    );
                }
            }
        }
    }
}

/// The closed-form relative norm must agree with the product of Galois
/// conjugates, i.e. with `x^(1 + |K| + ... + |K|^(l-1))` where `K` is the
/// level below: 100 random elements at every level of every
/// configuration.
pub fn run_norm_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for (t, n_max) in configurations() {
        for n in 1..=n_max {
            let k = t.field_size(n - 1);
            let mut exp = BigUint::from(0u32);
            let mut pw = BigUint::from(1u32);
            for _ in 0..t.kind().ell() {
                exp += &pw;
                pw *= &k;
            }
            for _ in 0..100 {
                let x = rand_elem(&t, n, &mut rng);
                if t.is_zero(&x) {
                    continue;
                }
                let norm = t.relative_norm(&x).unwrap();
                let via_pow = t.pow(&x, &exp).unwrap();
                assert_eq!(t.embed_to(&norm, n).unwrap(), via_pow);
            }
        }
    }
}

/// JSON round trips are lossless: towers rebuild identically, factored
/// integers and field elements deserialize to equal values.
pub fn run_serialization() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    for (t, _) in configurations() {
        let v = t.to_json();
        let back = Tower::from_json(&v).unwrap();
        assert_eq!(back, t);

        for _ in 0..50 {
            let e = rand_elem(&t, 0, &mut rng);
            let leaf = match &e {
                TowerElement::Leaf(el) => el.clone(),
                TowerElement::Node(_) => unreachable!(),
            };
            let s = serde_json::to_string(&leaf).unwrap();
            let back: Element = serde_json::from_str(&s).unwrap();
            assert_eq!(back, leaf);
        }
    }

    for _ in 0..50 {
        let n: u64 = rng.gen_range(2..u64::MAX);
        let f = factor_integer(&BigUint::from(n), DEFAULT_FACTOR_BUDGET);
        let s = serde_json::to_string(&f).unwrap();
        let back: fieldtower::Factorization = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.product(), BigUint::from(n));
    }
}
