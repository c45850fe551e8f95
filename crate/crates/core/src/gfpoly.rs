//! Ordinary (commutative) polynomials over a [`FieldCtx`], low degree first.

use crate::arith;
use crate::gf::{FieldCtx, FieldElement};

pub fn trim(mut a: Vec<FieldElement>) -> Vec<FieldElement> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

/// Degree, with `-1` for the zero polynomial.
pub fn degree(a: &[FieldElement]) -> i64 {
    a.iter().rposition(|c| !c.is_zero()).map_or(-1, |d| d as i64)
}

pub fn sub(f: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or_default();
            let y = b.get(i).copied().unwrap_or_default();
            f.sub(x, y)
        })
        .collect();
    trim(out)
}

pub fn mul(f: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![FieldElement::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `m`.
pub fn rem(f: &FieldCtx, a: &[FieldElement], m: &[FieldElement]) -> Vec<FieldElement> {
    let dm = degree(m);
    assert!(dm >= 0, "division by zero polynomial");
    let dm = dm as usize;
    let lead_inv = f.inv(m[dm]).expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    while r.len() > dm {
        let k = r.len() - 1;
        let c = f.mul(r[k], lead_inv);
        for i in 0..=dm {
            r[k - dm + i] = f.sub(r[k - dm + i], f.mul(c, m[i]));
        }
        r = trim(r);
    }
    r
}

pub fn monic(f: &FieldCtx, a: &[FieldElement]) -> Vec<FieldElement> {
    let a = trim(a.to_vec());
    match a.last() {
        None => a,
        Some(&lc) => {
            let li = f.inv(lc).expect("nonzero");
            a.iter().map(|&c| f.mul(c, li)).collect()
        }
    }
}

pub fn gcd(f: &FieldCtx, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(f, &x, &y);
        x = y;
        y = r;
    }
    monic(f, &x)
}

pub fn mul_mod(
    f: &FieldCtx,
    a: &[FieldElement],
    b: &[FieldElement],
    m: &[FieldElement],
) -> Vec<FieldElement> {
    rem(f, &mul(f, a, b), m)
}

pub fn pow_mod(f: &FieldCtx, a: &[FieldElement], mut e: u64, m: &[FieldElement]) -> Vec<FieldElement> {
    let mut acc = rem(f, &[FieldElement::ONE], m);
    let mut b = rem(f, a, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(f, &acc, &b, m);
        }
        b = mul_mod(f, &b, &b, m);
        e >>= 1;
    }
    acc
}

/// Rabin's test: `m` of degree `d` is irreducible iff `x^{Q^d} ≡ x` and
/// `gcd(x^{Q^{d/ℓ}} - x, m) = 1` for every prime `ℓ | d`, with `Q = |f|`.
pub fn is_irreducible(f: &FieldCtx, m: &[FieldElement]) -> bool {
    let d = degree(m);
    if d < 1 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let d = d as u64;
    let x = vec![FieldElement::ZERO, FieldElement::ONE];
    let q = f.order();
    // frob[k] = x^{Q^k} mod m
    let mut frob = vec![rem(f, &x, m)];
    for k in 1..=d as usize {
        let next = pow_mod(f, &frob[k - 1], q, m);
        frob.push(next);
    }
    if sub(f, &frob[d as usize], &x).iter().any(|c| !c.is_zero()) {
        return false;
    }
    arith::prime_divisors(d).into_iter().all(|l| {
        let diff = sub(f, &frob[(d / l) as usize], &x);
        gcd(f, &diff, m) == vec![FieldElement::ONE]
    })
}

/// Evaluate at `x` by Horner's rule.
pub fn eval(f: &FieldCtx, a: &[FieldElement], x: FieldElement) -> FieldElement {
    a.iter().rev().fold(FieldElement::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(v: &[u64]) -> Vec<FieldElement> {
        v.iter().map(|&c| FieldElement::from_code(c)).collect()
    }

    #[test]
    fn irreducibility_over_f2_and_f3() {
        let f2 = FieldCtx::prime(2).unwrap();
        assert!(is_irreducible(&f2, &fe(&[1, 1, 1])));
        assert!(!is_irreducible(&f2, &fe(&[1, 0, 1])));
        assert!(is_irreducible(&f2, &fe(&[1, 1, 0, 1])));
        assert!(!is_irreducible(&f2, &fe(&[1, 0, 1, 0, 1])));
        let f3 = FieldCtx::prime(3).unwrap();
        assert!(is_irreducible(&f3, &fe(&[1, 0, 1])));
        assert!(!is_irreducible(&f3, &fe(&[2, 0, 1])));
    }

    #[test]
    fn irreducible_iff_no_roots_for_small_degree() {
        // degree 2 and 3: irreducible iff no root
        let f = FieldCtx::new(2, 2, None).unwrap();
        for c0 in f.elements() {
            for c1 in f.elements() {
                let p = vec![c0, c1, FieldElement::ONE];
                let has_root = f.elements().any(|x| eval(&f, &p, x).is_zero());
                assert_eq!(is_irreducible(&f, &p), !has_root);
            }
        }
    }
}
