//! Cyclotomic polynomials and power tables, cached per order.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients of a dense polynomial, lowest degree first.
pub(crate) type Poly = Vec<BigRational>;

fn phi_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn power_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<Poly>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Poly>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The n-th cyclotomic polynomial, integer coefficients, lowest degree first.
///
/// Computed as `(x^n - 1) / prod_{d | n, d < n} Phi_d(x)`.
pub(crate) fn cyclotomic_poly(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&n) {
        return Arc::clone(p);
    }
    // x^n - 1
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let div = cyclotomic_poly(d);
            num = exact_monic_div(&num, &div);
        }
    }
    let result = Arc::new(num);
    phi_cache()
        .lock()
        .unwrap()
        .insert(n, Arc::clone(&result));
    result
}

/// Exact division by a monic integer polynomial; the remainder must vanish.
fn exact_monic_div(num: &[BigInt], div: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = div.len() - 1;
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (k, dk) in div.iter().enumerate() {
            rem[i - dd + k] -= &c * dk;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

/// Degree of the n-th cyclotomic polynomial, i.e. Euler's totient of n.
pub(crate) fn totient(n: u32) -> usize {
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as usize
}

/// Reduce a polynomial modulo `Phi_n`, returning exactly `totient(n)` coefficients.
pub(crate) fn reduce_mod_phi(mut p: Poly, n: u32) -> Poly {
    let phi = cyclotomic_poly(n);
    let d = phi.len() - 1;
    if p.len() > d {
        for i in (d..p.len()).rev() {
            if p[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut p[i], BigRational::zero());
            for (k, pk) in phi.iter().enumerate().take(d) {
                if !pk.is_zero() {
                    p[i - d + k] -= &c * BigRational::from_integer(pk.clone());
                }
            }
        }
    }
    p.resize(d, BigRational::zero());
    p
}

/// Table of `x^e mod Phi_n` for `e` in `0..n`.
pub(crate) fn power_table(n: u32) -> Arc<Vec<Poly>> {
    if let Some(t) = power_cache().lock().unwrap().get(&n) {
        return Arc::clone(t);
    }
    let d = totient(n);
    let mut table = Vec::with_capacity(n as usize);
    let mut cur: Poly = vec![BigRational::zero(); d];
    cur[0] = BigRational::one();
    for _ in 0..n {
        table.push(cur.clone());
        // multiply by x
        let mut next = vec![BigRational::zero()];
        next.extend(cur.into_iter());
        cur = reduce_mod_phi(next, n);
    }
    let table = Arc::new(table);
    power_cache()
        .lock()
        .unwrap()
        .insert(n, Arc::clone(&table));
    table
}

pub(crate) fn trim(p: &mut Poly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub(crate) fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Polynomial division with remainder over Q. `b` must be nonzero and trimmed.
fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Poly, Poly) {
    let mut rem: Poly = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead_inv = b[db].recip();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem.last().unwrap() * &lead_inv;
        for (k, bk) in b.iter().enumerate() {
            rem[shift + k] -= &c * bk;
        }
        quot[shift] = c;
        trim(&mut rem);
    }
    (quot, rem)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Poly {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

/// Inverse of `a` modulo `Phi_n` by the extended Euclidean algorithm.
/// Returns `None` when `a` is zero modulo `Phi_n`.
pub(crate) fn inverse_mod_phi(a: &[BigRational], n: u32) -> Option<Poly> {
    let mut r0: Poly = cyclotomic_poly(n)
        .iter()
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let mut r1: Poly = a.to_vec();
    trim(&mut r1);
    if r1.is_empty() {
        return None;
    }
    // Invariant: r_i = s_i * Phi + t_i * a; only t is tracked.
    let mut t0: Poly = Vec::new();
    let mut t1: Poly = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let t2 = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t2);
    }
    // r0 is the gcd; Phi_n is irreducible so it is a nonzero constant.
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    let inv: Poly = t0.into_iter().map(|x| x * &c).collect();
    Some(reduce_mod_phi(inv, n))
}

pub(crate) fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}
