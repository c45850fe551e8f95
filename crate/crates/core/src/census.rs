//! Counting and classification: `θ`, `N(q,m)`, `ΓL(1,q)`-orbit counts
//! `M(q,m)`, classes of nonassociative cyclic algebras, similarity classes,
//! Sandler existence and bound reports.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FieldElement, TowerCtx};
use crate::gfpoly;
use crate::semifield::SemifieldCtx;
use crate::skewpoly::{self, SkewPoly};

/// Explicit enumeration and orbit computations stay below this many objects.
pub const ENUMERATION_CAP: u64 = 1 << 16;

fn pow(q: u64, e: u32) -> Result<u64> {
    arith::checked_pow(q, e).ok_or_else(|| Error::TooLarge(format!("{q}^{e}")))
}

fn base_field(q: u64) -> Result<FieldCtx> {
    let (p, r) = arith::prime_power(q).ok_or_else(|| Error::PreconditionViolated(format!("{q} is not a prime power")))?;
    FieldCtx::new(p, r, None)
}

/// Number of elements of `F_{q^m}` lying in a proper subfield.
pub fn theta(q: u64, m: u32) -> Result<u64> {
    let primes = arith::prime_divisors(m as u64);
    let mut total: i128 = 0;
    for mask in 1u32..(1 << primes.len()) {
        let prod: u64 = primes
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &l)| l)
            .product();
        let term = pow(q, m / prod as u32)? as i128;
        total += if mask.count_ones() % 2 == 1 { term } else { -term };
    }
    Ok(total as u64)
}

/// `(1/m) Σ_{l|m} μ(l) q^{m/l}`.
pub fn necklace_count(q: u64, m: u32) -> Result<u64> {
    let mut total: i128 = 0;
    for l in arith::divisors(m as u64) {
        total += arith::mobius(l) as i128 * pow(q, m / l as u32)? as i128;
    }
    Ok((total / m as i128) as u64)
}

/// Monic irreducible polynomials of degree `m` over `F_q`, as coefficient
/// vectors (low degree first, leading 1 included), in lexicographic order of
/// their codes.
pub fn irreducible_monics(q: u64, m: u32) -> Result<Vec<Vec<FieldElement>>> {
    let total = pow(q, m)?;
    if total > ENUMERATION_CAP {
        return Err(Error::TooLarge(format!("{q}^{m}")));
    }
    let f = base_field(q)?;
    let mut out = Vec::new();
    for key in 0..total {
        let mut k = key;
        let mut p: Vec<FieldElement> = (0..m)
            .map(|_| {
                let c = FieldElement::from_code(k % q);
                k /= q;
                c
            })
            .collect();
        p.push(FieldElement::ONE);
        if gfpoly::is_irreducible(&f, &p) {
            out.push(p);
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CentralCount {
    pub q: u64,
    pub m: u32,
    pub theta: u64,
    pub mobius: u64,
    pub via_theta: u64,
    pub enumerated: Option<u64>,
}

/// `N(q,m)` by both closed forms, plus enumeration when `q^m ≤ 2^16`.
pub fn count_central_irreducible(q: u64, m: u32) -> Result<CentralCount> {
    if m < 2 || arith::prime_power(q).is_none() {
        return Err(Error::PreconditionViolated(format!("q = {q}, m = {m}")));
    }
    let th = theta(q, m)?;
    let mobius = necklace_count(q, m)?;
    let qm = pow(q, m)?;
    if (qm - th) % m as u64 != 0 {
        return Err(Error::FormulaMismatch(format!("m ∤ q^m - θ at q={q}, m={m}")));
    }
    let via_theta = (qm - th) / m as u64;
    if mobius != via_theta {
        return Err(Error::FormulaMismatch(format!("{mobius} vs {via_theta} at q={q}, m={m}")));
    }
    let enumerated = if qm <= ENUMERATION_CAP {
        let e = irreducible_monics(q, m)?.len() as u64;
        if e != mobius {
            return Err(Error::FormulaMismatch(format!("enumeration gives {e}, formulas {mobius}")));
        }
        Some(e)
    } else {
        None
    };
    Ok(CentralCount {
        q,
        m,
        theta: th,
        mobius,
        via_theta,
        enumerated,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct OrbitCount {
    pub q: u64,
    pub m: u32,
    pub n_central: u64,
    pub orbits: u64,
    /// `(q^m - θ)/(m r (q-1)) ≤ M ≤ (q^m - θ)/m`.
    pub sandwich_holds: bool,
}

/// `M(q,m)`: orbits of `ΓL(1,q)` on the central irreducibles under
/// `f ↦ λ^{-m} f^ρ(λ y)`.
pub fn gamma_l_orbit_count(q: u64, m: u32) -> Result<OrbitCount> {
    let f = base_field(q)?;
    let r = f.degree();
    let polys = irreducible_monics(q, m)?;
    let index: HashMap<Vec<FieldElement>, usize> = polys.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let mut parent: Vec<usize> = (0..polys.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, p) in polys.iter().enumerate() {
        for lambda in f.nonzero_elements() {
            let linv = f.inv(lambda).unwrap();
            for rho in 0..r {
                // coefficient i of the image: ρ(c_i) λ^{i-m}
                let img: Vec<FieldElement> = p
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| {
                        let scale = f.pow(linv, (m as usize - k) as u64);
                        f.mul(f.frobenius(c, rho), scale)
                    })
                    .collect();
                let j = *index
                    .get(&img)
                    .ok_or_else(|| Error::InvariantViolated("action leaves the irreducibles".into()))?;
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let orbits = (0..polys.len()).filter(|&i| find(&mut parent, i) == i).count() as u64;
    let nq = polys.len() as u64;
    let lower_ok = orbits * m as u64 * r as u64 * (q - 1) >= nq * m as u64;
    let upper_ok = orbits <= nq;
    Ok(OrbitCount {
        q,
        m,
        n_central: nq,
        orbits,
        sandwich_holds: lower_ok && upper_ok,
    })
}

/// Upper bound on classes of nonassociative cyclic algebras of degree `m`,
/// as an exact fraction `(numerator, denominator)`.
pub fn numb_bound(q: u64, m: u32) -> Result<Option<(u64, u64)>> {
    let qm = pow(q, m)?;
    let mm = m as u64;
    if (q - 1) % mm != 0 {
        Ok(Some((qm - q, mm * (q - 1))))
    } else if arith::is_prime(mm) {
        // m - 1 + (q^m - q - (q-1)(m-1)) / (m(q-1))
        let den = mm * (q - 1);
        let num = (mm - 1) * den + qm - q - (q - 1) * (mm - 1);
        Ok(Some((num, den)))
    } else {
        Ok(None)
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CyclicClass {
    /// Smallest code in the class.
    pub representative: String,
    pub size: usize,
    pub members: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CyclicClasses {
    pub q: u64,
    pub m: u32,
    pub admissible: usize,
    pub classes: Vec<CyclicClass>,
    #[serde(skip)]
    pub representatives: Vec<FieldElement>,
    #[serde(skip)]
    pub member_elements: Vec<Vec<FieldElement>>,
    pub bound_numerator: Option<u64>,
    pub bound_denominator: Option<u64>,
    pub within_bound: Option<bool>,
}

/// `a ∈ K` lies in a proper intermediate field of `K/F`.
pub fn in_proper_subfield(tower: &TowerCtx, a: FieldElement) -> bool {
    let n = tower.n() as i64;
    arith::prime_divisors(n as u64)
        .into_iter()
        .any(|l| tower.sigma(a, n / l as i64) == a)
}

/// Classes of `(K/F, σ, a)` under `a ~ b ⟺ σ^i(a) = k b`, `k ∈ F^×`.
pub fn cyclic_algebra_classes(tower: &TowerCtx, check_irreducibility: bool) -> Result<CyclicClasses> {
    let m = tower.n();
    let q = tower.base_order();
    if pow(q, m)? > ENUMERATION_CAP {
        return Err(Error::PreconditionViolated(format!("q^m = {q}^{m} exceeds the classification cap")));
    }
    let f = tower.field();
    let fstar: Vec<FieldElement> = tower.fixed_field_elements().into_iter().filter(|x| !x.is_zero()).collect();
    let admissible: Vec<FieldElement> = f.nonzero_elements().filter(|&a| !in_proper_subfield(tower, a)).collect();
    if check_irreducibility {
        for a in f.nonzero_elements() {
            let mut c = vec![FieldElement::ZERO; m as usize + 1];
            c[0] = f.neg(a);
            c[m as usize] = FieldElement::ONE;
            let irr = skewpoly::is_irreducible(tower, &SkewPoly::new(c))?;
            if irr == in_proper_subfield(tower, a) {
                return Err(Error::InvariantViolated(format!(
                    "t^{m} - {} irreducibility disagrees with the subfield test",
                    f.format(a)
                )));
            }
        }
    }
    let mut seen: BTreeSet<FieldElement> = BTreeSet::new();
    let mut classes = Vec::new();
    let mut representatives = Vec::new();
    let mut member_elements = Vec::new();
    for &a in &admissible {
        if seen.contains(&a) {
            continue;
        }
        let mut members: BTreeSet<FieldElement> = BTreeSet::new();
        for i in 0..m as i64 {
            let s = tower.sigma(a, i);
            for &k in &fstar {
                // σ^i(a) = k b  ⟹  b = σ^i(a)/k
                members.insert(f.div(s, k).unwrap());
            }
        }
        seen.extend(members.iter().copied());
        let rep = *members.iter().next().unwrap();
        classes.push(CyclicClass {
            representative: f.format(rep),
            size: members.len(),
            members: members.iter().map(|&x| f.format(x)).collect(),
        });
        representatives.push(rep);
        member_elements.push(members.into_iter().collect());
    }
    let bound = numb_bound(q, m)?;
    let within_bound = bound.map(|(num, den)| classes.len() as u64 * den <= num);
    Ok(CyclicClasses {
        q,
        m,
        admissible: admissible.len(),
        classes,
        representatives,
        member_elements,
        bound_numerator: bound.map(|b| b.0),
        bound_denominator: bound.map(|b| b.1),
        within_bound,
    })
}

/// `f ~ g` iff `g·u ≡ 0 mod_r f` for some `u ≠ 0` of degree `< m`.
pub fn similar(tower: &TowerCtx, f: &SkewPoly, g: &SkewPoly) -> Result<bool> {
    let m = f.degree().ok_or(Error::DegreeZero)?;
    let size = pow(tower.field().order(), m as u32)?;
    if size > ENUMERATION_CAP {
        return Err(Error::TooLarge(format!("{size} candidates")));
    }
    for key in 1..size {
        let mut k = key;
        let coeffs = (0..m)
            .map(|_| {
                let c = FieldElement::from_code(k % tower.field().order());
                k /= tower.field().order();
                c
            })
            .collect();
        let u = SkewPoly::new(coeffs);
        if skewpoly::right_rem(tower, &skewpoly::skew_mul(tower, g, &u), f)?.is_zero() {
            return Ok(true);
        }
    }
    Ok(false)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SimilarityPartition {
    /// Indices into the input list.
    pub classes: Vec<Vec<usize>>,
    /// Ordered pairs where `f ~ g` held but `g ~ f` did not.
    pub asymmetric_pairs: Vec<(usize, usize)>,
}

pub fn similarity_classes(tower: &TowerCtx, fs: &[SkewPoly]) -> Result<SimilarityPartition> {
    let n = fs.len();
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            rel[i][j] = i == j || similar(tower, &fs[i], &fs[j])?;
        }
    }
    let mut asymmetric_pairs = Vec::new();
    let mut class_of: Vec<Option<usize>> = vec![None; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if rel[i][j] && !rel[j][i] {
                asymmetric_pairs.push((i, j));
            }
        }
    }
    // connected components of the relation
    for i in 0..n {
        if class_of[i].is_some() {
            continue;
        }
        let c = classes.len();
        let mut stack = vec![i];
        let mut members = Vec::new();
        class_of[i] = Some(c);
        while let Some(x) = stack.pop() {
            members.push(x);
            for y in 0..n {
                if class_of[y].is_none() && (rel[x][y] || rel[y][x]) {
                    class_of[y] = Some(c);
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    Ok(SimilarityPartition {
        classes,
        asymmetric_pairs,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SandlerReport {
    pub p: u64,
    pub r: u32,
    pub l: u32,
    pub m: u32,
    /// `gcd((p^l-1)(p^r-1), p^{mr}-1) > p^r-1`.
    pub exists: bool,
    pub gcd: String,
    /// `(p^{mr}-1)/(p^r-1)`; exponents in its multiples mod `p^l-1` are excluded.
    pub excluded_step: String,
}

fn check_sandler_pre(p: u64, r: u32, l: u32, m: u32) -> Result<()> {
    if !arith::is_prime(p) || r == 0 || l % r != 0 || l == r {
        return Err(Error::PreconditionViolated(format!("need prime p and r a proper divisor of l (p={p}, r={r}, l={l})")));
    }
    let pr1 = (p as u128).pow(r) - 1;
    if !(m == 2 || m == 3 || (arith::is_prime(m as u64) && pr1 % m as u128 == 0)) {
        return Err(Error::PreconditionViolated(format!("m = {m} must be 2, 3 or a prime dividing p^r - 1")));
    }
    Ok(())
}

pub fn sandler_exists(p: u64, r: u32, l: u32, m: u32) -> Result<SandlerReport> {
    check_sandler_pre(p, r, l, m)?;
    let big = |e: u32| -> Result<u128> {
        (p as u128).checked_pow(e).ok_or_else(|| Error::TooLarge(format!("{p}^{e}")))
    };
    let pr1 = big(r)? - 1;
    let pl1 = big(l)? - 1;
    let pmr1 = big(m * r)? - 1;
    let g = num_integer::gcd(pl1 * pr1, pmr1);
    Ok(SandlerReport {
        p,
        r,
        l,
        m,
        exists: g > pr1,
        gcd: g.to_string(),
        excluded_step: (pmr1 / pr1).to_string(),
    })
}

/// The exponent rule: `u` is admissible unless `u ≡ k·(p^{mr}-1)/(p^r-1)`
/// modulo `p^l - 1` for some integer `k`.
pub fn sandler_exponent_admissible(p: u64, r: u32, l: u32, m: u32, u: u128) -> Result<bool> {
    check_sandler_pre(p, r, l, m)?;
    let pl1 = (p as u128).pow(l) - 1;
    let step = ((p as u128).pow(m * r) - 1) / ((p as u128).pow(r) - 1);
    // multiples of step mod pl1 are the multiples of gcd(step, pl1)
    let g = num_integer::gcd(step % pl1, pl1);
    Ok(u % pl1 % g != 0)
}

/// Direct search: the set of `u` with `t^m - α^u` admissible.
pub fn sandler_direct(p: u64, r: u32, l: u32, m: u32) -> Result<Vec<u64>> {
    check_sandler_pre(p, r, l, m)?;
    if pow(p, l * m)? > ENUMERATION_CAP {
        return Err(Error::TooLarge(format!("{p}^{}", l * m)));
    }
    let tower = TowerCtx::new(p, r, l / r, None)?;
    let f = tower.field();
    let alpha = f.primitive();
    let mut out = Vec::new();
    let mut a = FieldElement::ONE;
    for u in 0..f.order() - 1 {
        let mut c = vec![FieldElement::ZERO; m as usize + 1];
        c[0] = f.neg(a);
        c[m as usize] = FieldElement::ONE;
        if skewpoly::is_admissible(&tower, &SkewPoly::new(c))? {
            out.push(u);
        }
        a = f.mul(a, alpha);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ClassRow {
    pub representative: String,
    pub class_size: usize,
    /// `(|C|, |Nuc_l|, |Nuc_m|, |Nuc_r|)` of the algebra.
    pub signature: [u64; 4],
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CensusReport {
    pub q: u64,
    pub n: u32,
    pub m: u32,
    pub r: u32,
    pub theta: u64,
    pub n_qm: u64,
    pub n_enumerated: Option<u64>,
    pub m_exact: Option<u64>,
    /// `(q^m-θ)/(m r (q-1))` and `(q^m-θ)/m`, as floats.
    pub m_lower: f64,
    pub m_upper: f64,
    pub numb_bound: Option<f64>,
    pub observed_classes: Option<usize>,
    pub classes: Vec<ClassRow>,
    pub admissible_f: Option<u64>,
    /// `q^{nm} sqrt(log2 q^{nm})`.
    pub kantor_bound: f64,
    pub formulas_agree: bool,
    pub m_sandwich_holds: Option<bool>,
    pub observed_within_numb: Option<bool>,
    pub violations: Vec<String>,
}

/// Size cap for counting admissible `f` of degree `m` over `K`.
pub const ADMISSIBLE_COUNT_CAP: u64 = 4096;
/// Size cap for computing nucleus signatures of class representatives.
pub const SIGNATURE_CAP: u64 = 1 << 16;

pub fn bounds_report(q: u64, n: u32, m: u32) -> Result<CensusReport> {
    report(q, n, m, None)
}

/// Report for the tower as given (its modulus fixes the representatives),
/// with `m = n`.
pub fn tower_report(tower: &TowerCtx) -> Result<CensusReport> {
    report(tower.base_order(), tower.n(), tower.n(), Some(tower))
}

fn report(q: u64, n: u32, m: u32, given: Option<&TowerCtx>) -> Result<CensusReport> {
    let (p, r) = arith::prime_power(q).ok_or_else(|| Error::PreconditionViolated(format!("{q} is not a prime power")))?;
    let qm = pow(q, m)?;
    let th = theta(q, m)?;
    let mob = necklace_count(q, m)?;
    let n_qm = (qm - th) / m as u64;
    let formulas_agree = mob == n_qm && (qm - th) % m as u64 == 0;
    let mut violations = Vec::new();
    if !formulas_agree {
        violations.push(format!("N(q,m): Möbius {mob} vs θ-form {n_qm}"));
    }
    let n_enumerated = if qm <= ENUMERATION_CAP {
        Some(count_central_irreducible(q, m)?.enumerated.unwrap_or(mob))
    } else {
        None
    };
    let (m_exact, m_sandwich_holds) = if qm <= ENUMERATION_CAP {
        let oc = gamma_l_orbit_count(q, m)?;
        if !oc.sandwich_holds {
            violations.push("M(q,m) sandwich".into());
        }
        (Some(oc.orbits), Some(oc.sandwich_holds))
    } else {
        (None, None)
    };
    let m_lower = (qm - th) as f64 / (m as f64 * r as f64 * (q - 1) as f64);
    let m_upper = (qm - th) as f64 / m as f64;
    let order = (q as f64).powi((n * m) as i32);
    let kantor_bound = order * order.log2().sqrt();

    let mut classes = Vec::new();
    let mut observed_classes = None;
    let mut observed_within_numb = None;
    let mut numb = None;
    if n == m {
        if let Some((num, den)) = numb_bound(q, m)? {
            numb = Some(num as f64 / den as f64);
        }
        if qm <= ENUMERATION_CAP {
            let tower = match given {
                Some(t) => t.clone(),
                None => TowerCtx::new(p, r, n, None)?,
            };
            let cc = cyclic_algebra_classes(&tower, false)?;
            observed_classes = Some(cc.classes.len());
            observed_within_numb = cc.within_bound;
            if cc.within_bound == Some(false) {
                violations.push("class count exceeds the cyclic-algebra bound".into());
            }
            let size = pow(qm, m)?;
            for (row, &rep) in cc.classes.iter().zip(&cc.representatives) {
                let signature = if size <= SIGNATURE_CAP {
                    let mut c = vec![FieldElement::ZERO; m as usize + 1];
                    c[0] = tower.field().neg(rep);
                    c[m as usize] = FieldElement::ONE;
                    let sf = SemifieldCtx::new(tower.clone(), &SkewPoly::new(c))?;
                    let nuc = sf.nuclei();
                    [
                        nuc.center.cardinality,
                        nuc.left.cardinality,
                        nuc.middle.cardinality,
                        nuc.right.cardinality,
                    ]
                } else {
                    [0; 4]
                };
                classes.push(ClassRow {
                    representative: row.representative.clone(),
                    class_size: row.size,
                    signature,
                });
            }
        }
    }
    let admissible_f = match pow(q, n).and_then(|k| pow(k, m as u32)) {
        Ok(s) if s <= ADMISSIBLE_COUNT_CAP && n >= 2 => {
            let tower = TowerCtx::new(p, r, n, None)?;
            Some(skewpoly::enumerate_admissible(&tower, m as usize).count() as u64)
        }
        _ => None,
    };
    Ok(CensusReport {
        q,
        n,
        m,
        r,
        theta: th,
        n_qm,
        n_enumerated,
        m_exact,
        m_lower,
        m_upper,
        numb_bound: numb,
        observed_classes,
        classes,
        admissible_f,
        kantor_bound,
        formulas_agree,
        m_sandwich_holds,
        observed_within_numb,
        violations,
    })
}

impl CensusReport {
    /// One row per class: representative, class size, signature, bounds.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("q,n,m,representative,class_size,center,nuc_l,nuc_m,nuc_r,N,M,numb_bound\n");
        let m_exact = self.m_exact.map_or(String::new(), |v| v.to_string());
        let numb = self.numb_bound.map_or(String::new(), |v| format!("{v}"));
        for row in &self.classes {
            let [c, nl, nm, nr] = row.signature;
            out.push_str(&format!(
                "{},{},{},\"{}\",{},{},{},{},{},{},{},{}\n",
                self.q, self.n, self.m, row.representative, row.class_size, c, nl, nm, nr, self.n_qm, m_exact, numb
            ));
        }
        out
    }
}
