//! The twisted polynomial ring `R = K[t;σ]` with `t·a = σ(a)·t`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, TowerCtx};

/// `a_0 + a_1 t + .. + a_d t^d`; the coefficient vector never ends in zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewPoly {
    coeffs: Vec<FieldElement>,
}

impl SkewPoly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn zero() -> Self {
        SkewPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(FieldElement::ONE)
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(vec![c])
    }

    /// `c · t^i`.
    pub fn monomial(c: FieldElement, i: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; i + 1];
        coeffs[i] = c;
        Self::new(coeffs)
    }

    pub fn t() -> Self {
        Self::monomial(FieldElement::ONE, 1)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn lead(&self) -> Option<FieldElement> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Some(FieldElement::ONE)
    }

    /// Dense coefficients padded with zeros to length `len`.
    pub fn dense(&self, len: usize) -> Vec<FieldElement> {
        let mut v = self.coeffs.clone();
        v.resize(len.max(v.len()), FieldElement::ZERO);
        v
    }

    /// Writing `f = t^m - Σ a_i t^i`, returns `(a_0, .., a_{m-1})`.
    pub fn tail_coeffs(&self, tower: &TowerCtx) -> Vec<FieldElement> {
        let m = self.degree().unwrap_or(0);
        (0..m).map(|i| tower.field().neg(self.coeff(i))).collect()
    }

    /// True iff every coefficient lies in the fixed field `F`.
    pub fn in_fixed_field(&self, tower: &TowerCtx) -> bool {
        self.coeffs.iter().all(|&c| tower.in_fixed_field(c))
    }

    pub fn format(&self, tower: &TowerCtx) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = tower.field();
        let mut out = String::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let mono = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            if c == FieldElement::ONE && i > 0 {
                out.push_str(&mono);
            } else if i == 0 {
                out.push_str(&f.format(c));
            } else {
                let _ = write!(out, "{}*{}", f.format(c), mono);
            }
        }
        out
    }

    pub fn to_json(&self, tower: &TowerCtx) -> SkewPolyJson {
        SkewPolyJson {
            deg: self.degree().map_or(-1, |d| d as i64),
            coeffs: self.coeffs.iter().map(|&c| tower.field().format(c)).collect(),
        }
    }

    /// Parse literals such as `t^2 - g^5*t - [1,0]`.
    pub fn parse(tower: &TowerCtx, s: &str) -> Result<Self> {
        let f = tower.field();
        let mut acc: Vec<FieldElement> = Vec::new();
        for (negative, term) in split_terms(s)? {
            let mut coeff = FieldElement::ONE;
            let mut power = 0usize;
            for factor in term.split('*').map(str::trim) {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in '{term}'")));
                }
                if let Some(rest) = factor.strip_prefix('t') {
                    let rest = rest.trim();
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|e| e.trim().parse::<usize>().ok())
                            .ok_or_else(|| Error::Parse(format!("bad power '{factor}'")))?
                    };
                    power += e;
                } else {
                    coeff = f.mul(coeff, f.parse_element(factor)?);
                }
            }
            if negative {
                coeff = f.neg(coeff);
            }
            if acc.len() <= power {
                acc.resize(power + 1, FieldElement::ZERO);
            }
            acc[power] = f.add(acc[power], coeff);
        }
        Ok(SkewPoly::new(acc))
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SkewPolyJson {
    pub deg: i64,
    pub coeffs: Vec<String>,
}

fn split_terms(s: &str) -> Result<Vec<(bool, String)>> {
    let mut terms = Vec::new();
    let mut depth = 0i32;
    let mut current = String::new();
    let mut negative = false;
    let mut prev = ' ';
    for ch in s.chars() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            _ => {}
        }
        let boundary = depth == 0 && (ch == '+' || ch == '-') && prev != '^' && prev != ',';
        if boundary {
            if !current.trim().is_empty() {
                terms.push((negative, current.trim().to_string()));
            } else if ch == '-' && terms.is_empty() && current.trim().is_empty() {
                // leading sign handled below
            }
            negative = ch == '-';
            current.clear();
        } else {
            current.push(ch);
        }
        if !ch.is_whitespace() {
            prev = ch;
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in '{s}'")));
    }
    if !current.trim().is_empty() {
        terms.push((negative, current.trim().to_string()));
    }
    if terms.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    Ok(terms)
}

pub fn add(tower: &TowerCtx, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
    let fl = tower.field();
    let n = f.coeffs.len().max(g.coeffs.len());
    SkewPoly::new((0..n).map(|i| fl.add(f.coeff(i), g.coeff(i))).collect())
}

pub fn sub(tower: &TowerCtx, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
    let fl = tower.field();
    let n = f.coeffs.len().max(g.coeffs.len());
    SkewPoly::new((0..n).map(|i| fl.sub(f.coeff(i), g.coeff(i))).collect())
}

/// Left scalar multiple `c·f`.
pub fn scale_left(tower: &TowerCtx, c: FieldElement, f: &SkewPoly) -> SkewPoly {
    SkewPoly::new(f.coeffs.iter().map(|&a| tower.field().mul(c, a)).collect())
}

/// Product under `(a t^i)(b t^j) = a σ^i(b) t^{i+j}`.
pub fn skew_mul(tower: &TowerCtx, f: &SkewPoly, g: &SkewPoly) -> SkewPoly {
    if f.is_zero() || g.is_zero() {
        return SkewPoly::zero();
    }
    let fl = tower.field();
    let mut out = vec![FieldElement::ZERO; f.coeffs.len() + g.coeffs.len() - 1];
    for (i, &a) in f.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, &b) in g.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            let term = fl.mul(a, tower.sigma(b, i as i64));
            out[i + j] = fl.add(out[i + j], term);
        }
    }
    SkewPoly::new(out)
}

/// Right division: `g = q·f + r` with `deg r < deg f`.
pub fn right_divmod(tower: &TowerCtx, g: &SkewPoly, f: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
    let df = f.degree().ok_or(Error::DivisionByZeroPoly)?;
    let fl = tower.field();
    let lead = f.lead().expect("nonzero");
    let mut rem = g.coeffs.clone();
    let mut quot = vec![FieldElement::ZERO; g.coeffs.len().saturating_sub(df)];
    while rem.len() > df {
        let k = rem.len() - 1;
        let c = rem[k];
        if !c.is_zero() {
            let shift = k - df;
            // e t^shift · lead t^df = e σ^shift(lead) t^k
            let e = fl
                .div(c, tower.sigma(lead, shift as i64))
                .expect("σ preserves nonzero");
            quot[shift] = e;
            for (i, &b) in f.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let term = fl.mul(e, tower.sigma(b, shift as i64));
                rem[shift + i] = fl.sub(rem[shift + i], term);
            }
        }
        rem.pop();
    }
    Ok((SkewPoly::new(quot), SkewPoly::new(rem)))
}

pub fn right_rem(tower: &TowerCtx, g: &SkewPoly, f: &SkewPoly) -> Result<SkewPoly> {
    right_divmod(tower, g, f).map(|(_, r)| r)
}

/// `c^{-1}·f` where `c` is the leading coefficient; `S_f = S_{cf}`.
pub fn make_monic(tower: &TowerCtx, f: &SkewPoly) -> Result<SkewPoly> {
    let lead = f.lead().ok_or(Error::DegreeZero)?;
    let inv = tower.field().inv(lead).expect("nonzero");
    Ok(scale_left(tower, inv, f))
}

/// Monic polynomial of degree `d` with lower coefficients read from `key`
/// in base `|K|`, coefficient `a_0` most significant.
pub fn monic_from_key(tower: &TowerCtx, d: usize, mut key: u64) -> SkewPoly {
    let q = tower.field().order();
    let mut coeffs = vec![FieldElement::ZERO; d + 1];
    for i in (0..d).rev() {
        coeffs[i] = FieldElement::from_code(key % q);
        key /= q;
    }
    coeffs[d] = FieldElement::ONE;
    SkewPoly::new(coeffs)
}

fn check_monic(f: &SkewPoly) -> Result<usize> {
    let d = f.degree().ok_or(Error::DegreeZero)?;
    if d == 0 {
        return Err(Error::DegreeZero);
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    Ok(d)
}

/// Number of candidate divisors the enumeration test scans for degree `m`.
pub fn irreducibility_cost(field_order: u64, m: usize) -> f64 {
    (1..m).map(|d| (field_order as f64).powi(d as i32)).sum()
}

/// Irreducibility by enumerating every monic right divisor candidate of
/// degree `1..m-1`.
pub fn is_irreducible(tower: &TowerCtx, f: &SkewPoly) -> Result<bool> {
    let m = check_monic(f)?;
    let q = tower.field().order();
    for d in 1..m {
        let count = q.pow(d as u32);
        for key in 0..count {
            let h = monic_from_key(tower, d, key);
            if right_rem(tower, f, &h)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Degree-two test: `t^2 - a_1 t - a_0` is irreducible iff
/// `zσ(z) + a_1 z - a_0 = 0` has no solution in `K`.
pub fn is_irreducible_quadratic(tower: &TowerCtx, f: &SkewPoly) -> Result<bool> {
    let m = check_monic(f)?;
    if m != 2 {
        return Err(Error::PreconditionViolated("degree must be 2".into()));
    }
    let fl = tower.field();
    let a = f.tail_coeffs(tower);
    let (a0, a1) = (a[0], a[1]);
    let solvable = fl.elements().any(|z| {
        let lhs = fl.add(fl.mul(z, tower.sigma(z, 1)), fl.mul(a1, z));
        lhs == a0
    });
    Ok(!solvable)
}

/// `Rf` is two-sided iff `f·t` and `f·z` lie in `Rf`, `z` a generator of
/// `K` over the prime field.
pub fn is_right_invariant(tower: &TowerCtx, f: &SkewPoly) -> Result<bool> {
    check_monic(f)?;
    let t = SkewPoly::t();
    let z = SkewPoly::constant(tower.field().modulus_root());
    for g in [&t, &z] {
        if !right_rem(tower, &skew_mul(tower, f, g), f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Irreducible and not right-invariant, i.e. `S_f` is a proper semifield.
pub fn is_admissible(tower: &TowerCtx, f: &SkewPoly) -> Result<bool> {
    if f.degree().unwrap_or(0) == 2 {
        if !is_irreducible_quadratic(tower, f)? {
            return Ok(false);
        }
    } else if !is_irreducible(tower, f)? {
        return Ok(false);
    }
    Ok(!is_right_invariant(tower, f)?)
}

/// Every monic degree-`m` polynomial that is irreducible and not
/// right-invariant, in key order.
pub fn enumerate_admissible(tower: &TowerCtx, m: usize) -> impl Iterator<Item = SkewPoly> + '_ {
    let total = tower.field().order().pow(m as u32);
    (0..total)
        .map(move |key| monic_from_key(tower, m, key))
        .filter(move |f| is_admissible(tower, f).unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldElement as Fe;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f4() -> TowerCtx {
        TowerCtx::new(2, 1, 2, None).unwrap()
    }

    fn x() -> Fe {
        Fe::from_code(2)
    }

    fn random_poly(t: &TowerCtx, rng: &mut ChaCha8Rng, maxdeg: usize) -> SkewPoly {
        let d = rng.gen_range(0..=maxdeg);
        SkewPoly::new(
            (0..=d)
                .map(|_| Fe::from_code(rng.gen_range(0..t.field().order())))
                .collect(),
        )
    }

    #[test]
    fn twisting_rule() {
        let t = f4();
        for a in t.field().elements() {
            let lhs = skew_mul(&t, &SkewPoly::t(), &SkewPoly::constant(a));
            assert_eq!(lhs, SkewPoly::monomial(t.sigma(a, 1), 1));
        }
        let tx = SkewPoly::monomial(x(), 1);
        let prod = skew_mul(&t, &SkewPoly::t(), &tx);
        assert_eq!(prod, SkewPoly::monomial(Fe::from_code(3), 2));
        assert_eq!(skew_mul(&t, &tx, &SkewPoly::one()), tx);
    }

    #[test]
    fn division_examples() {
        let t = f4();
        let f = SkewPoly::parse(&t, "t^2 - [0,1]").unwrap();
        let (q, r) = right_divmod(&t, &f, &f).unwrap();
        assert_eq!((q, r), (SkewPoly::one(), SkewPoly::zero()));
        let t3 = SkewPoly::monomial(Fe::ONE, 3);
        let (q, r) = right_divmod(&t, &t3, &f).unwrap();
        assert_eq!(q, SkewPoly::t());
        assert_eq!(r, SkewPoly::monomial(Fe::from_code(3), 1));
        let small = SkewPoly::t();
        assert_eq!(right_divmod(&t, &small, &f).unwrap(), (SkewPoly::zero(), small));
        assert_eq!(
            right_divmod(&t, &f, &SkewPoly::zero()).unwrap_err(),
            Error::DivisionByZeroPoly
        );
    }

    #[test]
    fn irreducibility_examples() {
        let t = f4();
        let f = SkewPoly::parse(&t, "t^2 - [0,1]").unwrap();
        assert!(is_irreducible(&t, &f).unwrap());
        assert!(is_irreducible_quadratic(&t, &f).unwrap());
        let g = SkewPoly::parse(&t, "t^2 - 1").unwrap();
        assert!(!is_irreducible(&t, &g).unwrap());
        assert_eq!(
            is_irreducible(&t, &SkewPoly::parse(&t, "[0,1]*t^2").unwrap()),
            Err(Error::NotMonic)
        );
        assert_eq!(is_irreducible(&t, &SkewPoly::one()), Err(Error::DegreeZero));
    }

    #[test]
    fn right_invariance_examples() {
        let t = f4();
        // t^2 - 1 ∈ F_2[t] with n = m is right-invariant
        assert!(is_right_invariant(&t, &SkewPoly::parse(&t, "t^2 - 1").unwrap()).unwrap());
        assert!(!is_right_invariant(&t, &SkewPoly::parse(&t, "t^2 - [0,1]").unwrap()).unwrap());
        assert!(!is_right_invariant(&t, &SkewPoly::parse(&t, "t^2 + t + 1").unwrap()).unwrap());
        // m < n with coefficients in F
        let t8 = TowerCtx::new(2, 1, 3, None).unwrap();
        assert!(!is_right_invariant(&t8, &SkewPoly::parse(&t8, "t^2 + t + 1").unwrap()).unwrap());
    }

    #[test]
    fn admissible_over_f4_and_f9() {
        let t = f4();
        let all: Vec<_> = enumerate_admissible(&t, 2).collect();
        for f in &all {
            assert!(is_irreducible(&t, f).unwrap());
            assert!(!is_right_invariant(&t, f).unwrap());
        }
        assert!(all.contains(&SkewPoly::parse(&t, "t^2 - [0,1]").unwrap()));
        assert!(!all.is_empty() && all.len() < 16);

        let t9 = TowerCtx::new(3, 1, 2, Some(&[1, 0, 1])).unwrap();
        let all9: Vec<_> = enumerate_admissible(&t9, 2).collect();
        assert!(all9.contains(&SkewPoly::parse(&t9, "t^2 - [0,1]").unwrap()));
        assert!(all9.contains(&SkewPoly::parse(&t9, "t^2 - [1,1]").unwrap()));
    }

    #[test]
    fn quadratic_criterion_agrees_with_divisor_scan() {
        for (p, r, n) in [(2, 1, 2), (3, 1, 2), (2, 1, 3), (2, 2, 2), (2, 1, 4), (5, 1, 2)] {
            let t = TowerCtx::new(p, r, n, None).unwrap();
            let q = t.field().order();
            for key in 0..q * q {
                let f = monic_from_key(&t, 2, key);
                assert_eq!(
                    is_irreducible(&t, &f).unwrap(),
                    is_irreducible_quadratic(&t, &f).unwrap(),
                    "{}",
                    f.format(&t)
                );
            }
        }
    }

    #[test]
    fn ring_laws_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, r, n) in [(2, 1, 2), (3, 1, 2), (2, 1, 3), (3, 1, 4)] {
            let t = TowerCtx::new(p, r, n, None).unwrap();
            for _ in 0..300 {
                let f = random_poly(&t, &mut rng, 3);
                let g = random_poly(&t, &mut rng, 3);
                let h = random_poly(&t, &mut rng, 3);
                let fg = skew_mul(&t, &f, &g);
                if !f.is_zero() && !g.is_zero() {
                    assert_eq!(fg.degree().unwrap(), f.degree().unwrap() + g.degree().unwrap());
                }
                assert_eq!(skew_mul(&t, &fg, &h), skew_mul(&t, &f, &skew_mul(&t, &g, &h)));
                if !h.is_zero() {
                    let (q, rem) = right_divmod(&t, &fg, &h).unwrap();
                    assert!(rem.degree().map_or(true, |d| d < h.degree().unwrap()));
                    assert_eq!(add(&t, &skew_mul(&t, &q, &h), &rem), fg);
                }
            }
        }
    }

    #[test]
    fn literal_syntax() {
        let t = TowerCtx::new(3, 1, 2, Some(&[1, 0, 1])).unwrap();
        let f = SkewPoly::parse(&t, "t^2 - g^1*t - [1,0]").unwrap();
        let fl = t.field();
        assert_eq!(f.degree(), Some(2));
        assert_eq!(f.coeff(1), fl.neg(fl.primitive()));
        assert_eq!(f.coeff(0), fl.from_int(-1));
        assert_eq!(SkewPoly::parse(&t, &f.format(&t)).unwrap(), f);
        let g = SkewPoly::parse(&t, "t^2 - g^-1").unwrap();
        assert_eq!(g.coeff(0), fl.neg(fl.gen_pow(-1)));
        let j = f.to_json(&t);
        assert_eq!(j.deg, 2);
        assert_eq!(j.coeffs.len(), 3);
    }
}
