//! Finite fields `F_{p^l}` and the cyclic tower `F_q ⊆ K = F_{q^n}` with `σ(x) = x^{q}`.
//!
//! Elements are stored packed: the coordinate vector `(c_0, .., c_{l-1})` with
//! respect to the power basis of the modulus root is encoded as the integer
//! `c_0 + c_1 p + .. + c_{l-1} p^{l-1}`. Discrete-log tables are built for
//! fields with at most `2^20` elements.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith;
use crate::error::{Error, Result};
use crate::gfpoly;

/// Fields at or below this order get discrete-log tables.
pub const LOG_TABLE_LIMIT: u64 = 1 << 20;
/// Fields at or below this order get precomputed σ-power tables.
const SIGMA_TABLE_LIMIT: u64 = 1 << 16;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Packed coordinate code; no range check against any field.
    pub const fn from_code(code: u64) -> Self {
        FieldElement(code)
    }

    pub const fn code(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug)]
struct LogTables {
    log: Vec<u32>,
    // exp[j] for j in 0..2(Q-1), so sums of two logs need no reduction
    exp: Vec<u32>,
}

/// The finite field `F_{p^l}` with a fixed modulus and primitive element.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u64,
    degree: u32,
    order: u64,
    modulus: Vec<u64>,
    pows: Vec<u64>,
    primitive: FieldElement,
    root_is_primitive: bool,
    tables: Option<LogTables>,
}

impl FieldCtx {
    /// The prime field `Z/pZ`.
    pub fn prime(p: u64) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 31 {
            return Err(Error::FieldTooLarge(p.to_string()));
        }
        let mut ctx = FieldCtx {
            p,
            degree: 1,
            order: p,
            modulus: vec![0, 1],
            pows: vec![1, p],
            primitive: FieldElement::ONE,
            root_is_primitive: false,
            tables: None,
        };
        let gen = (1..p)
            .map(FieldElement)
            .find(|&x| ctx.is_primitive(x))
            .expect("prime field has a primitive root");
        ctx.primitive = gen;
        ctx.build_tables();
        Ok(ctx)
    }

    /// `F_{p^l}`; without a modulus the default is the lexicographically
    /// smallest (low-degree coefficient first) monic irreducible polynomial
    /// whose root is primitive.
    pub fn new(p: u64, degree: u32, modulus: Option<&[u64]>) -> Result<Self> {
        Self::with_options(p, degree, modulus, false)
    }

    /// As [`FieldCtx::new`]; with `require_primitive_root` the modulus root
    /// itself must generate the multiplicative group.
    pub fn with_options(
        p: u64,
        degree: u32,
        modulus: Option<&[u64]>,
        require_primitive_root: bool,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::BadModulus("degree must be positive".into()));
        }
        let base = FieldCtx::prime(p)?;
        let order = p
            .checked_pow(degree)
            .filter(|&q| q < 1 << 62)
            .ok_or_else(|| Error::FieldTooLarge(format!("{p}^{degree}")))?;
        let modulus: Vec<u64> = match modulus {
            Some(m) => {
                let mut m: Vec<u64> = m.iter().map(|c| c % p).collect();
                if m.len() == degree as usize {
                    m.push(1);
                }
                if m.len() != degree as usize + 1 {
                    return Err(Error::BadModulus(format!(
                        "expected {} coefficients, got {}",
                        degree + 1,
                        m.len()
                    )));
                }
                if m[degree as usize] != 1 {
                    return Err(Error::BadModulus("modulus must be monic".into()));
                }
                let as_poly: Vec<FieldElement> = m.iter().map(|&c| FieldElement(c)).collect();
                if !gfpoly::is_irreducible(&base, &as_poly) {
                    return Err(Error::ReducibleModulus);
                }
                m
            }
            None => default_modulus(&base, degree),
        };
        let mut pows = Vec::with_capacity(degree as usize + 1);
        let mut acc = 1u64;
        for _ in 0..=degree {
            pows.push(acc);
            acc = acc.saturating_mul(p);
        }
        let mut ctx = FieldCtx {
            p,
            degree,
            order,
            modulus,
            pows,
            primitive: FieldElement::ONE,
            root_is_primitive: false,
            tables: None,
        };
        let root = if degree == 1 {
            // root of x - 0 is 0; use the prime field generator instead
            base.primitive
        } else {
            FieldElement(p)
        };
        ctx.root_is_primitive = degree > 1 && ctx.is_primitive(root);
        if ctx.is_primitive(root) {
            ctx.primitive = root;
        } else if require_primitive_root {
            return Err(Error::NonPrimitiveModulusRoot);
        } else {
            ctx.primitive = (2..order)
                .map(FieldElement)
                .find(|&x| ctx.is_primitive(x))
                .expect("multiplicative group is cyclic");
        }
        ctx.build_tables();
        Ok(ctx)
    }

    fn build_tables(&mut self) {
        if self.order > LOG_TABLE_LIMIT {
            return;
        }
        let q1 = (self.order - 1) as usize;
        let mut log = vec![0u32; self.order as usize];
        let mut exp = vec![0u32; 2 * q1.max(1)];
        let mut x = FieldElement::ONE;
        for j in 0..q1 {
            exp[j] = x.0 as u32;
            log[x.0 as usize] = j as u32;
            x = self.mul_generic(x, self.primitive);
        }
        for j in q1..2 * q1 {
            exp[j] = exp[j - q1];
        }
        self.tables = Some(LogTables { log, exp });
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Extension degree `l` over the prime field.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Monic modulus coefficients, low degree first (length `l + 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// The fixed generator `α` of the multiplicative group.
    pub fn primitive(&self) -> FieldElement {
        self.primitive
    }

    pub fn root_is_primitive(&self) -> bool {
        self.root_is_primitive
    }

    pub fn has_log_tables(&self) -> bool {
        self.tables.is_some()
    }

    /// Root of the modulus; generates `K` as an algebra over the prime field.
    pub fn modulus_root(&self) -> FieldElement {
        if self.degree == 1 {
            self.primitive
        } else {
            FieldElement(self.p)
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    pub fn contains(&self, x: FieldElement) -> bool {
        x.0 < self.order
    }

    /// Element with the given coordinates (missing ones are zero).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.degree as usize {
            return Err(Error::Parse(format!(
                "{} coordinates given for a degree-{} field",
                coeffs.len(),
                self.degree
            )));
        }
        Ok(FieldElement(
            coeffs
                .iter()
                .zip(&self.pows)
                .map(|(&c, &w)| (c % self.p) * w)
                .sum(),
        ))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.degree as usize);
        let mut c = x.0;
        for _ in 0..self.degree {
            out.push(c % self.p);
            c /= self.p;
        }
        out
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, c: i64) -> FieldElement {
        FieldElement(c.rem_euclid(self.p as i64) as u64)
    }

    /// All elements in code order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.order).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.degree == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        for &w in &self.pows[..self.degree as usize] {
            out += ((x % self.p + y % self.p) % self.p) * w;
            x /= self.p;
            y /= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0;
        for &w in &self.pows[..self.degree as usize] {
            out += ((self.p - x % self.p) % self.p) * w;
            x /= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    /// Multiplication by an integer (repeated addition).
    pub fn scale_int(&self, a: FieldElement, k: u64) -> FieldElement {
        self.mul(a, self.from_int((k % self.p) as i64))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        match &self.tables {
            Some(t) => FieldElement(
                t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize] as u64,
            ),
            None => self.mul_generic(a, b),
        }
    }

    fn mul_generic(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p;
        if self.degree == 1 {
            return FieldElement(a.0 * b.0 % p);
        }
        let l = self.degree as usize;
        let ac = self.coeffs(a);
        let bc = self.coeffs(b);
        let mut prod = vec![0u64; 2 * l - 1];
        for (i, &x) in ac.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in bc.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for k in (l..2 * l - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            // x^l = -sum_{i<l} mod_i x^i
            for i in 0..l {
                let m = self.modulus[i];
                if m != 0 {
                    prod[k - l + i] = (prod[k - l + i] + (p - m) * c) % p;
                }
            }
        }
        FieldElement(prod[..l].iter().zip(&self.pows).map(|(&c, &w)| c * w).sum())
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        if let Some(t) = &self.tables {
            let q1 = self.order - 1;
            let j = (t.log[a.0 as usize] as u128 * (e % q1) as u128 % q1 as u128) as usize;
            return FieldElement(t.exp[j] as u64);
        }
        let mut acc = FieldElement::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        if let Some(t) = &self.tables {
            let q1 = (self.order - 1) as u32;
            let la = t.log[a.0 as usize];
            return Some(FieldElement(t.exp[((q1 - la) % q1) as usize] as u64));
        }
        Some(self.pow(a, self.order - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `x^{p^j}`.
    pub fn frobenius(&self, x: FieldElement, j: u32) -> FieldElement {
        let j = j % self.degree;
        if j == 0 || x.0 == 0 {
            return x;
        }
        let e = self.pows[j as usize];
        self.pow(x, e)
    }

    /// `α^k` for any integer `k`.
    pub fn gen_pow(&self, k: i64) -> FieldElement {
        let q1 = (self.order - 1) as i64;
        self.pow(self.primitive, k.rem_euclid(q1) as u64)
    }

    /// Discrete logarithm to base `α`.
    pub fn log(&self, x: FieldElement) -> Option<u64> {
        if x.0 == 0 || !self.contains(x) {
            return None;
        }
        if let Some(t) = &self.tables {
            return Some(t.log[x.0 as usize] as u64);
        }
        let mut y = FieldElement::ONE;
        for j in 0..self.order - 1 {
            if y == x {
                return Some(j);
            }
            y = self.mul(y, self.primitive);
        }
        None
    }

    /// Multiplicative order of a nonzero element.
    pub fn mul_order(&self, x: FieldElement) -> Option<u64> {
        if x.0 == 0 {
            return None;
        }
        let mut ord = self.order - 1;
        for l in arith::prime_divisors(self.order - 1) {
            while ord % l == 0 && self.pow(x, ord / l) == FieldElement::ONE {
                ord /= l;
            }
        }
        Some(ord)
    }

    pub fn is_primitive(&self, x: FieldElement) -> bool {
        if x.0 == 0 || self.order == 2 {
            return x.0 == 1 && self.order == 2;
        }
        let q1 = self.order - 1;
        arith::prime_divisors(q1)
            .into_iter()
            .all(|l| self.pow_nolog(x, q1 / l) != FieldElement::ONE)
    }

    fn pow_nolog(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = FieldElement::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_generic(acc, b);
            }
            b = self.mul_generic(b, b);
            e >>= 1;
        }
        acc
    }

    /// Element rendered in the coordinate syntax `[c0,c1,...]`.
    pub fn format(&self, x: FieldElement) -> String {
        let cs: Vec<String> = self.coeffs(x).iter().map(|c| c.to_string()).collect();
        format!("[{}]", cs.join(","))
    }

    /// Parse `0`, an integer (prime-field constant), `g^k` or `[c0,c1,...]`.
    pub fn parse_element(&self, s: &str) -> Result<FieldElement> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("g^") {
            let k: i64 = rest
                .trim()
                .trim_start_matches('(')
                .trim_end_matches(')')
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in '{s}'")))?;
            return Ok(self.gen_pow(k));
        }
        if s == "g" {
            return Ok(self.primitive);
        }
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let inner = inner.trim();
            if inner.is_empty() {
                return Ok(FieldElement::ZERO);
            }
            let cs = inner
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<i64>()
                        .map(|v| v.rem_euclid(self.p as i64) as u64)
                        .map_err(|_| Error::Parse(format!("bad coordinate '{c}'")))
                })
                .collect::<Result<Vec<u64>>>()?;
            return self.from_coeffs(&cs);
        }
        s.parse::<i64>()
            .map(|c| self.from_int(c))
            .map_err(|_| Error::Parse(format!("unrecognised element '{s}'")))
    }

    /// Descriptor `p^l mod=[...]`.
    pub fn descriptor(&self) -> String {
        let m: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!("{}^{} mod=[{}]", self.p, self.degree, m.join(","))
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus && self.primitive == other.primitive
    }
}

impl Eq for FieldCtx {}

fn default_modulus(base: &FieldCtx, degree: u32) -> Vec<u64> {
    let p = base.characteristic();
    if degree == 1 {
        return vec![0, 1];
    }
    let l = degree as usize;
    let total = p.pow(degree);
    // key k enumerates (c_0, ..., c_{l-1}) with c_0 most significant
    for key in 0..total {
        let mut coeffs = vec![0u64; l + 1];
        let mut k = key;
        for i in (0..l).rev() {
            coeffs[i] = k % p;
            k /= p;
        }
        coeffs[l] = 1;
        if coeffs[0] == 0 {
            continue;
        }
        let poly: Vec<FieldElement> = coeffs.iter().map(|&c| FieldElement(c)).collect();
        if !gfpoly::is_irreducible(base, &poly) {
            continue;
        }
        if root_is_primitive(base, &poly) {
            return coeffs;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

fn root_is_primitive(base: &FieldCtx, modulus: &[FieldElement]) -> bool {
    let order = base.order().pow(gfpoly::degree(modulus) as u32);
    let q1 = order - 1;
    let x = vec![FieldElement::ZERO, FieldElement::ONE];
    arith::prime_divisors(q1).into_iter().all(|l| {
        let r = gfpoly::pow_mod(base, &x, q1 / l, modulus);
        r != vec![FieldElement::ONE]
    })
}

/// `K = F_{p^l}` together with `σ(x) = x^{p^r}` of order `n = l / r`.
#[derive(Clone, Debug)]
pub struct TowerCtx {
    field: FieldCtx,
    r: u32,
    n: u32,
    sigma_tables: Option<Vec<Vec<u32>>>,
}

/// A field automorphism `x ↦ x^{p^j}`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldAutomorphism {
    pub exponent: u32,
    pub fixes_base: bool,
}

impl TowerCtx {
    pub fn new(p: u64, r: u32, n: u32, modulus: Option<&[u64]>) -> Result<Self> {
        if n < 2 {
            return Err(Error::BadTower("σ must have order n ≥ 2".into()));
        }
        if r == 0 {
            return Err(Error::BadTower("r must be positive".into()));
        }
        let field = FieldCtx::new(p, n * r, modulus)?;
        Self::from_field(field, r)
    }

    /// Tower over an existing field; `r` must divide its degree.
    pub fn from_field(field: FieldCtx, r: u32) -> Result<Self> {
        let l = field.degree();
        if r == 0 || l % r != 0 || l / r < 2 {
            return Err(Error::BadTower(format!("r = {r} must properly divide l = {l}")));
        }
        let n = l / r;
        let mut tower = TowerCtx {
            field,
            r,
            n,
            sigma_tables: None,
        };
        if tower.field.order() <= SIGMA_TABLE_LIMIT {
            let tables = (0..n)
                .map(|i| {
                    tower
                        .field
                        .elements()
                        .map(|x| tower.field.frobenius(x, r * i).code() as u32)
                        .collect()
                })
                .collect();
            tower.sigma_tables = Some(tables);
        }
        tower.check_fixed_field()?;
        Ok(tower)
    }

    fn check_fixed_field(&self) -> Result<()> {
        let expected = self.base_order();
        if self.field.order() <= LOG_TABLE_LIMIT {
            let fixed = self
                .field
                .elements()
                .filter(|&x| self.sigma(x, 1) == x)
                .count() as u64;
            if fixed != expected {
                return Err(Error::BadTower(format!(
                    "σ fixes {fixed} elements, expected {expected}"
                )));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    /// Frobenius exponent: `σ(x) = x^{p^r}`.
    pub fn r(&self) -> u32 {
        self.r
    }

    /// Order of σ, i.e. `[K : F]`.
    pub fn n(&self) -> u32 {
        self.n
    }

    /// `q = |F| = p^r`.
    pub fn base_order(&self) -> u64 {
        self.field.characteristic().pow(self.r)
    }

    /// `σ^i(x)`; `i` is reduced modulo `n`, negative values allowed.
    pub fn sigma(&self, x: FieldElement, i: i64) -> FieldElement {
        let i = i.rem_euclid(self.n as i64) as u32;
        if i == 0 {
            return x;
        }
        match &self.sigma_tables {
            Some(t) => FieldElement::from_code(t[i as usize][x.code() as usize] as u64),
            None => self.field.frobenius(x, self.r * i),
        }
    }

    pub fn in_fixed_field(&self, x: FieldElement) -> bool {
        self.sigma(x, 1) == x
    }

    /// `N_{K/F}(x) = ∏_{i<n} σ^i(x)`.
    pub fn norm(&self, x: FieldElement) -> FieldElement {
        (0..self.n as i64).fold(FieldElement::ONE, |acc, i| self.field.mul(acc, self.sigma(x, i)))
    }

    /// `∏_{i=from}^{to-1} σ^i(k)`.
    pub fn sigma_product(&self, k: FieldElement, from: u32, to: u32) -> FieldElement {
        (from..to).fold(FieldElement::ONE, |acc, i| self.field.mul(acc, self.sigma(k, i as i64)))
    }

    /// Generator `σ(α)/α` of the norm kernel and its order `(q^n-1)/(q-1)`.
    pub fn norm_kernel(&self) -> (FieldElement, u64) {
        let a = self.field.primitive();
        let g = self
            .field
            .div(self.sigma(a, 1), a)
            .expect("primitive element is nonzero");
        let s = (self.field.order() - 1) / (self.base_order() - 1);
        debug_assert_eq!(self.field.mul_order(g), Some(s));
        (g, s)
    }

    /// Elements of the fixed field `F`, in code order.
    pub fn fixed_field_elements(&self) -> Vec<FieldElement> {
        let q = self.base_order();
        let f = &self.field;
        if q == 2 {
            return vec![FieldElement::ZERO, FieldElement::ONE];
        }
        // F^× is generated by α^{(Q-1)/(q-1)}
        let g = f.pow(f.primitive(), (f.order() - 1) / (q - 1));
        let mut out: Vec<FieldElement> = std::iter::once(FieldElement::ZERO)
            .chain((0..q - 1).map(|j| f.pow(g, j)))
            .collect();
        out.sort();
        out
    }

    /// All `l` automorphisms `x ↦ x^{p^j}` of `K`.
    pub fn field_automorphisms(&self) -> Vec<FieldAutomorphism> {
        (0..self.field.degree())
            .map(|j| FieldAutomorphism {
                exponent: j,
                fixes_base: j % self.r == 0,
            })
            .collect()
    }

    pub fn apply_automorphism(&self, tau: FieldAutomorphism, x: FieldElement) -> FieldElement {
        if tau.exponent % self.r == 0 {
            self.sigma(x, (tau.exponent / self.r) as i64)
        } else {
            self.field.frobenius(x, tau.exponent)
        }
    }
}

impl fmt::Display for TowerCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{}^{} / F_{} (σ = x^{}^{})",
            self.field.characteristic(),
            self.field.degree(),
            self.base_order(),
            self.field.characteristic(),
            self.r
        )
    }
}

/// Parse `p^l` optionally followed by `mod=[c0,...]`.
pub fn parse_field_descriptor(s: &str) -> Result<(u64, u32, Option<Vec<u64>>)> {
    let mut parts = s.split_whitespace();
    let head = parts
        .next()
        .ok_or_else(|| Error::Parse("empty field descriptor".into()))?;
    let (p, l) = match head.split_once('^') {
        Some((p, l)) => (p, l),
        None => (head, "1"),
    };
    let p: u64 = p.parse().map_err(|_| Error::Parse(format!("bad prime '{p}'")))?;
    let l: u32 = l.parse().map_err(|_| Error::Parse(format!("bad degree '{l}'")))?;
    let mut modulus = None;
    for part in parts {
        let body = part
            .strip_prefix("mod=")
            .ok_or_else(|| Error::Parse(format!("unexpected '{part}'")))?;
        modulus = Some(parse_int_list(body)?);
    }
    Ok((p, l, modulus))
}

pub fn parse_int_list(s: &str) -> Result<Vec<u64>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected [..], got '{s}'")))?;
    inner
        .split(',')
        .filter(|c| !c.trim().is_empty())
        .map(|c| {
            c.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad integer '{c}'")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f4() -> TowerCtx {
        TowerCtx::new(2, 1, 2, None).unwrap()
    }

    #[test]
    fn default_moduli() {
        assert_eq!(FieldCtx::new(2, 2, None).unwrap().modulus(), &[1, 1, 1]);
        // x^2+1 fails primitivity, x^2+x+2 is the first primitive choice
        assert_eq!(FieldCtx::new(3, 2, None).unwrap().modulus(), &[2, 1, 1]);
        let f = FieldCtx::new(5, 2, None).unwrap();
        assert!(f.root_is_primitive());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FieldCtx::new(4, 2, None).unwrap_err(), Error::NotPrime(4));
        assert_eq!(
            FieldCtx::new(2, 2, Some(&[1, 0, 1])).unwrap_err(),
            Error::ReducibleModulus
        );
        assert_eq!(
            FieldCtx::with_options(3, 2, Some(&[1, 0, 1]), true).unwrap_err(),
            Error::NonPrimitiveModulusRoot
        );
        let f9 = FieldCtx::new(3, 2, Some(&[1, 0, 1])).unwrap();
        assert!(!f9.root_is_primitive());
        assert!(f9.is_primitive(f9.primitive()));
        assert!(TowerCtx::new(2, 1, 1, None).is_err());
    }

    #[test]
    fn sigma_in_f4() {
        let t = f4();
        let f = t.field();
        let x = FieldElement::from_code(2);
        // x^2 = x + 1 under x^2 + x + 1
        assert_eq!(t.sigma(x, 1), f.from_coeffs(&[1, 1]).unwrap());
        for y in f.elements() {
            assert_eq!(t.sigma(y, 0), y);
            assert_eq!(t.sigma(y, 2), y);
            assert_eq!(t.sigma(y, -1), t.sigma(y, 1));
        }
    }

    #[test]
    fn worked_example_fields() {
        let t = TowerCtx::new(3, 1, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(t.base_order(), 3);
        let t = TowerCtx::new(11, 1, 2, None).unwrap();
        assert_eq!(t.field().order(), 121);
        let x = t.field().primitive();
        assert_eq!(t.sigma(x, 1), t.field().pow(x, 11));
    }

    #[test]
    fn norm_values() {
        let t = f4();
        let f = t.field();
        assert_eq!(t.norm(FieldElement::ZERO), FieldElement::ZERO);
        assert_eq!(t.norm(FieldElement::ONE), FieldElement::ONE);
        assert_eq!(t.norm(FieldElement::from_code(2)), FieldElement::ONE);
        assert_eq!(t.norm_kernel().1, 3);

        let t9 = TowerCtx::new(3, 1, 2, None).unwrap();
        let ker = t9
            .field()
            .nonzero_elements()
            .filter(|&x| t9.norm(x) == FieldElement::ONE)
            .count();
        assert_eq!(ker, 4);
        assert_eq!(t9.norm_kernel().1, 4);
        assert_eq!(TowerCtx::new(11, 1, 2, None).unwrap().norm_kernel().1, 12);
        let _ = f;
    }

    #[test]
    fn automorphism_lists() {
        assert_eq!(f4().field_automorphisms().len(), 2);
        let t = TowerCtx::new(5, 1, 3, None).unwrap();
        let a = t.field_automorphisms();
        assert_eq!(a.len(), 3);
        assert!(a.iter().all(|x| x.fixes_base));
        assert_eq!(TowerCtx::new(11, 1, 2, None).unwrap().field_automorphisms().len(), 2);
        let t16 = TowerCtx::new(2, 2, 2, None).unwrap();
        let fixing = t16.field_automorphisms().iter().filter(|a| a.fixes_base).count();
        assert_eq!(fixing, 2);
    }

    fn towers() -> Vec<TowerCtx> {
        vec![
            TowerCtx::new(2, 1, 2, None).unwrap(),
            TowerCtx::new(2, 1, 3, None).unwrap(),
            TowerCtx::new(3, 1, 2, Some(&[1, 0, 1])).unwrap(),
            TowerCtx::new(2, 2, 2, None).unwrap(),
            TowerCtx::new(2, 1, 4, None).unwrap(),
            TowerCtx::new(5, 1, 2, None).unwrap(),
            TowerCtx::new(5, 1, 3, None).unwrap(),
            TowerCtx::new(7, 1, 2, None).unwrap(),
        ]
    }

    #[test]
    fn field_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for t in towers() {
            let f = t.field();
            let q = f.order();
            for _ in 0..1000 {
                let a = FieldElement::from_code(rng.gen_range(0..q));
                let b = FieldElement::from_code(rng.gen_range(0..q));
                let c = FieldElement::from_code(rng.gen_range(0..q));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
                if let Some(ai) = f.inv(a) {
                    assert_eq!(f.mul(a, ai), FieldElement::ONE);
                }
                assert_eq!(f.mul(a, b), f.mul_generic(a, b));
            }
        }
    }

    #[test]
    fn sigma_is_ring_automorphism() {
        for t in towers() {
            let f = t.field();
            if f.order() > 1024 {
                continue;
            }
            for a in f.elements() {
                for b in f.elements() {
                    assert_eq!(t.sigma(f.mul(a, b), 1), f.mul(t.sigma(a, 1), t.sigma(b, 1)));
                    assert_eq!(t.sigma(f.add(a, b), 1), f.add(t.sigma(a, 1), t.sigma(b, 1)));
                }
            }
        }
    }

    #[test]
    fn fixed_field_and_norm_image() {
        for t in towers() {
            let f = t.field();
            let fixed: Vec<_> = f.elements().filter(|&x| t.in_fixed_field(x)).collect();
            assert_eq!(fixed.len() as u64, t.base_order());
            assert_eq!(fixed, t.fixed_field_elements());
            let mut image: Vec<_> = f.nonzero_elements().map(|x| t.norm(x)).collect();
            image.sort();
            image.dedup();
            assert_eq!(image, fixed[1..].to_vec());
            let (g, s) = t.norm_kernel();
            assert_eq!(f.mul_order(g), Some(s));
            assert_eq!(t.norm(g), FieldElement::ONE);
        }
    }

    #[test]
    fn element_syntax() {
        let f = FieldCtx::new(3, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(f.parse_element("0").unwrap(), FieldElement::ZERO);
        assert_eq!(f.parse_element("[0,1]").unwrap(), FieldElement::from_code(3));
        assert_eq!(f.parse_element("[1, 1]").unwrap(), FieldElement::from_code(4));
        assert_eq!(f.parse_element("2").unwrap(), FieldElement::from_code(2));
        assert_eq!(f.parse_element("g^0").unwrap(), FieldElement::ONE);
        assert_eq!(f.parse_element("g^-1").unwrap(), f.inv(f.primitive()).unwrap());
        assert!(f.parse_element("[1,2,3]").is_err());
        assert_eq!(f.format(FieldElement::from_code(5)), "[2,1]");
        assert_eq!(
            parse_field_descriptor("3^2 mod=[1,0,1]").unwrap(),
            (3, 2, Some(vec![1, 0, 1]))
        );
    }
}
