//! The algebra `S_f = R_m` with `g ∘ h = gh mod_r f`.
//!
//! Elements are dense coefficient vectors `(x_0, .., x_{m-1})` over `K`. Each
//! element also has a rank `Σ code(x_i)·|K|^i` in `0..|K|^m`, used by the
//! loop layer for indexing.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, TowerCtx};
use crate::linalg;
use crate::skewpoly::{self, SkewPoly};

pub type Elem = Vec<FieldElement>;

#[derive(Clone, Debug)]
pub struct SemifieldCtx {
    tower: TowerCtx,
    f: SkewPoly,
    m: usize,
    // tail_sigma[j][i] = σ^j(a_i) where f = t^m - Σ a_i t^i
    tail_sigma: Vec<Vec<FieldElement>>,
}

/// A subspace over the prime field, stored as a reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subspace {
    pub basis: Vec<Vec<u64>>,
    pub dim: usize,
    pub cardinality: u64,
    /// `F_{p^d}` when the subspace is closed under the product.
    pub tag: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NucleiReport {
    pub left: Subspace,
    pub middle: Subspace,
    pub right: Subspace,
    pub nucleus: Subspace,
    pub center: Subspace,
    /// The right nucleus from `{g : fg ∈ Rf}` equals the associator nullspace.
    pub right_formula_agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TPowerReport {
    /// `f·t ∈ Rf`.
    pub ft_in_rf: bool,
    /// `t^{m-1}∘t` composed with `t` on either side agrees.
    pub tm_commutes_with_t: bool,
    /// Left powers of `t` form a cyclic group (power-associative and closed).
    pub powers_form_group: bool,
    /// Number of distinct left powers `t^{(k}`.
    pub left_power_count: usize,
    /// Order of `⟨t⟩` when the powers form a group.
    pub group_order: Option<usize>,
    /// All bracketings of `t^k` agree for `k ≤ m + 1`.
    pub m_plus_one_power_associative_at_t: bool,
}

impl SemifieldCtx {
    /// Validates `f` (normalised to monic) and builds `S_f`.
    pub fn new(tower: TowerCtx, f: &SkewPoly) -> Result<Self> {
        let f = skewpoly::make_monic(&tower, f)?;
        let m = f.degree().expect("nonzero");
        if m < 2 {
            return Err(Error::DegreeTooSmall);
        }
        let irreducible = if m == 2 {
            skewpoly::is_irreducible_quadratic(&tower, &f)?
        } else {
            skewpoly::is_irreducible(&tower, &f)?
        };
        if !irreducible {
            return Err(Error::ReducibleF);
        }
        if skewpoly::is_right_invariant(&tower, &f)? {
            return Err(Error::RightInvariantF);
        }
        let tail = f.tail_coeffs(&tower);
        let tail_sigma = (0..m.max(1))
            .map(|j| tail.iter().map(|&a| tower.sigma(a, j as i64)).collect())
            .collect();
        Ok(SemifieldCtx {
            tower,
            f,
            m,
            tail_sigma,
        })
    }

    pub fn tower(&self) -> &TowerCtx {
        &self.tower
    }

    pub fn f(&self) -> &SkewPoly {
        &self.f
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `(a_0, .., a_{m-1})` with `f = t^m - Σ a_i t^i`.
    pub fn tail(&self) -> &[FieldElement] {
        &self.tail_sigma[0]
    }

    pub fn p(&self) -> u64 {
        self.tower.field().characteristic()
    }

    /// Dimension over the prime field, `n·m·r`.
    pub fn dim_prime(&self) -> usize {
        self.tower.field().degree() as usize * self.m
    }

    /// `|S_f| = q^{nm}`.
    pub fn size(&self) -> u64 {
        self.tower.field().order().pow(self.m as u32)
    }

    pub fn zero(&self) -> Elem {
        vec![FieldElement::ZERO; self.m]
    }

    pub fn one(&self) -> Elem {
        let mut e = self.zero();
        e[0] = FieldElement::ONE;
        e
    }

    pub fn t(&self) -> Elem {
        let mut e = self.zero();
        e[1] = FieldElement::ONE;
        e
    }

    pub fn scalar(&self, c: FieldElement) -> Elem {
        let mut e = self.zero();
        e[0] = c;
        e
    }

    pub fn is_zero(&self, x: &[FieldElement]) -> bool {
        x.iter().all(|c| c.is_zero())
    }

    pub fn from_poly(&self, g: &SkewPoly) -> Result<Elem> {
        if g.degree().is_some_and(|d| d >= self.m) {
            return Err(Error::ForeignElement(format!(
                "degree {} ≥ m = {}",
                g.degree().unwrap(),
                self.m
            )));
        }
        Ok(g.dense(self.m))
    }

    pub fn to_poly(&self, x: &[FieldElement]) -> SkewPoly {
        SkewPoly::new(x.to_vec())
    }

    pub fn rank(&self, x: &[FieldElement]) -> u64 {
        let q = self.tower.field().order();
        x.iter().rev().fold(0, |acc, c| acc * q + c.code())
    }

    pub fn from_rank(&self, mut rank: u64) -> Elem {
        let q = self.tower.field().order();
        (0..self.m)
            .map(|_| {
                let c = FieldElement::from_code(rank % q);
                rank /= q;
                c
            })
            .collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size()).map(|r| self.from_rank(r))
    }

    pub fn add(&self, x: &[FieldElement], y: &[FieldElement]) -> Elem {
        let f = self.tower.field();
        x.iter().zip(y).map(|(&a, &b)| f.add(a, b)).collect()
    }

    pub fn sub(&self, x: &[FieldElement], y: &[FieldElement]) -> Elem {
        let f = self.tower.field();
        x.iter().zip(y).map(|(&a, &b)| f.sub(a, b)).collect()
    }

    /// `x ∘ y` on dense vectors of length `m`.
    pub fn mul(&self, x: &[FieldElement], y: &[FieldElement]) -> Elem {
        let fl = self.tower.field();
        let m = self.m;
        let mut prod = vec![FieldElement::ZERO; 2 * m - 1];
        for (i, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let term = fl.mul(a, self.tower.sigma(b, i as i64));
                prod[i + j] = fl.add(prod[i + j], term);
            }
        }
        // c t^k ≡ Σ_i c σ^{k-m}(a_i) t^{i+k-m}
        for k in (m..2 * m - 1).rev() {
            let c = prod[k];
            if c.is_zero() {
                continue;
            }
            let shift = k - m;
            for (i, &a) in self.tail_sigma[shift].iter().enumerate() {
                if !a.is_zero() {
                    prod[shift + i] = fl.add(prod[shift + i], fl.mul(c, a));
                }
            }
        }
        prod.truncate(m);
        prod
    }

    /// `x ∘ y` on polynomials of degree `< m`.
    pub fn sf_mul(&self, x: &SkewPoly, y: &SkewPoly) -> Result<SkewPoly> {
        let a = self.from_poly(x)?;
        let b = self.from_poly(y)?;
        Ok(self.to_poly(&self.mul(&a, &b)))
    }

    /// `[x, y, z] = (xy)z - x(yz)`.
    pub fn associator(&self, x: &[FieldElement], y: &[FieldElement], z: &[FieldElement]) -> Elem {
        self.sub(&self.mul(&self.mul(x, y), z), &self.mul(x, &self.mul(y, z)))
    }

    /// Coordinates over the prime field, `l` per coefficient.
    pub fn to_vector(&self, x: &[FieldElement]) -> Vec<u64> {
        let f = self.tower.field();
        x.iter().flat_map(|&c| f.coeffs(c)).collect()
    }

    pub fn from_vector(&self, v: &[u64]) -> Elem {
        let f = self.tower.field();
        let l = f.degree() as usize;
        v.chunks(l)
            .map(|chunk| f.from_coeffs(chunk).expect("chunk length is l"))
            .collect()
    }

    /// Unit vectors of the prime-field basis `x^j t^i`.
    pub fn prime_basis(&self) -> Vec<Elem> {
        let d = self.dim_prime();
        (0..d)
            .map(|k| {
                let mut v = vec![0u64; d];
                v[k] = 1;
                self.from_vector(&v)
            })
            .collect()
    }

    fn linear_conditions<F>(&self, map: F) -> Vec<Vec<u64>>
    where
        F: Fn(&[FieldElement]) -> Vec<Elem>,
    {
        // rows indexed by (output block, coordinate); columns by input basis vector
        let basis = self.prime_basis();
        let d = basis.len();
        let images: Vec<Vec<Vec<u64>>> = basis
            .iter()
            .map(|b| map(b).iter().map(|e| self.to_vector(e)).collect())
            .collect();
        let blocks = images.first().map_or(0, |v| v.len());
        let mut rows = Vec::with_capacity(blocks * d);
        for blk in 0..blocks {
            for coord in 0..d {
                let row: Vec<u64> = (0..d).map(|col| images[col][blk][coord]).collect();
                if row.iter().any(|&v| v != 0) {
                    rows.push(row);
                }
            }
        }
        rows
    }

    fn subspace(&self, basis: Vec<Vec<u64>>) -> Subspace {
        let d = self.dim_prime();
        let p = self.p();
        let basis = linalg::span_basis(&basis, d, p);
        let dim = basis.len();
        let elems: Vec<Elem> = basis.iter().map(|v| self.from_vector(v)).collect();
        let closed = elems.iter().all(|a| {
            elems
                .iter()
                .all(|b| linalg::in_span(&basis, &self.to_vector(&self.mul(a, b)), p))
        });
        let cardinality = p.pow(dim as u32);
        let contains_one = linalg::in_span(&basis, &self.to_vector(&self.one()), p);
        Subspace {
            basis,
            dim,
            cardinality,
            tag: (closed && contains_one && dim > 0).then(|| format!("F_{cardinality}")),
        }
    }

    fn nullspace_of<F>(&self, map: F) -> Vec<Vec<u64>>
    where
        F: Fn(&[FieldElement]) -> Vec<Elem>,
    {
        let rows = self.linear_conditions(map);
        linalg::nullspace(&rows, self.dim_prime(), self.p())
    }

    /// Left, middle and right nuclei, nucleus and center as prime-field
    /// nullspaces of the associator conditions on basis pairs.
    pub fn nuclei(&self) -> NucleiReport {
        let basis = self.prime_basis();
        let pairs: Vec<(&Elem, &Elem)> = basis
            .iter()
            .flat_map(|a| basis.iter().map(move |b| (a, b)))
            .collect();
        let left_map = |x: &[FieldElement]| -> Vec<Elem> {
            pairs.iter().map(|(b, c)| self.associator(x, b, c)).collect()
        };
        let middle_map = |x: &[FieldElement]| -> Vec<Elem> {
            pairs.iter().map(|(b, c)| self.associator(b, x, c)).collect()
        };
        let right_map = |x: &[FieldElement]| -> Vec<Elem> {
            pairs.iter().map(|(b, c)| self.associator(b, c, x)).collect()
        };
        let comm_map = |x: &[FieldElement]| -> Vec<Elem> {
            basis
                .iter()
                .map(|b| self.sub(&self.mul(x, b), &self.mul(b, x)))
                .collect()
        };
        let all_map = |x: &[FieldElement]| -> Vec<Elem> {
            let mut v = left_map(x);
            v.extend(middle_map(x));
            v.extend(right_map(x));
            v
        };
        let center_map = |x: &[FieldElement]| -> Vec<Elem> {
            let mut v = all_map(x);
            v.extend(comm_map(x));
            v
        };
        let left = self.subspace(self.nullspace_of(left_map));
        let middle = self.subspace(self.nullspace_of(middle_map));
        let right = self.subspace(self.nullspace_of(right_map));
        let nucleus = self.subspace(self.nullspace_of(all_map));
        let center = self.subspace(self.nullspace_of(center_map));
        let right_formula = self.subspace(self.right_nucleus_by_formula());
        NucleiReport {
            right_formula_agrees: right_formula.basis == right.basis,
            left,
            middle,
            right,
            nucleus,
            center,
        }
    }

    /// Nullspace of `g ↦ (f·g) mod_r f`.
    pub fn right_nucleus_by_formula(&self) -> Vec<Vec<u64>> {
        let tower = &self.tower;
        self.nullspace_of(|g| {
            let fg = skewpoly::skew_mul(tower, &self.f, &self.to_poly(g));
            let r = skewpoly::right_rem(tower, &fg, &self.f).expect("f nonzero");
            vec![r.dense(self.m)]
        })
    }

    /// Elements of a subspace, enumerated over all prime-field combinations.
    pub fn subspace_elements(&self, s: &Subspace) -> Vec<Elem> {
        let p = self.p();
        let d = self.dim_prime();
        let total = s.cardinality;
        (0..total)
            .map(|mut k| {
                let mut v = vec![0u64; d];
                for b in &s.basis {
                    let c = k % p;
                    k /= p;
                    for (vi, &bi) in v.iter_mut().zip(b) {
                        *vi = (*vi + c * bi) % p;
                    }
                }
                self.from_vector(&v)
            })
            .collect()
    }

    pub fn in_subspace(&self, s: &Subspace, x: &[FieldElement]) -> bool {
        linalg::in_span(&s.basis, &self.to_vector(x), self.p())
    }

    fn solve_linear(&self, x: &[FieldElement], left: bool) -> Result<Elem> {
        if self.is_zero(x) {
            return Err(Error::ZeroElement);
        }
        let cols: Vec<Vec<u64>> = self
            .prime_basis()
            .iter()
            .map(|b| {
                let img = if left { self.mul(b, x) } else { self.mul(x, b) };
                self.to_vector(&img)
            })
            .collect();
        let target = self.to_vector(&self.one());
        let sol = linalg::solve_columns(&cols, &target, self.p())
            .expect("translations of a semifield are bijective");
        Ok(self.from_vector(&sol))
    }

    /// `(x_l, x_r)` with `x_l ∘ x = 1 = x ∘ x_r`.
    pub fn inverses(&self, x: &[FieldElement]) -> Result<(Elem, Elem)> {
        Ok((self.solve_linear(x, true)?, self.solve_linear(x, false)?))
    }

    /// Closure of `gens` under the product; `None` once it exceeds `cap`.
    pub fn generated_subloop(&self, gens: &[Elem], cap: usize) -> Option<Vec<Elem>> {
        let mut seen: HashSet<Elem> = HashSet::new();
        let mut all: Vec<Elem> = Vec::new();
        for g in gens {
            if seen.insert(g.clone()) {
                all.push(g.clone());
            }
        }
        let mut frontier_start = 0;
        while frontier_start < all.len() {
            let end = all.len();
            for i in 0..end {
                let lo = if i >= frontier_start { 0 } else { frontier_start };
                for j in lo..end {
                    for prod in [self.mul(&all[i], &all[j]), self.mul(&all[j], &all[i])] {
                        if seen.insert(prod.clone()) {
                            all.push(prod);
                            if all.len() > cap {
                                return None;
                            }
                        }
                    }
                }
            }
            frontier_start = end;
        }
        all.sort_by_key(|e| self.rank(e));
        Some(all)
    }

    pub fn t_power_diagnostics(&self) -> TPowerReport {
        let tower = &self.tower;
        let t = self.t();
        let ft = skewpoly::skew_mul(tower, &self.f, &SkewPoly::t());
        let ft_in_rf = skewpoly::right_rem(tower, &ft, &self.f)
            .expect("f nonzero")
            .is_zero();
        // t^m = t^{m-1} ∘ t in S_f
        let mut tm = t.clone();
        for _ in 1..self.m {
            tm = self.mul(&tm, &t);
        }
        let tm_commutes_with_t = self.mul(&tm, &t) == self.mul(&t, &tm);

        // left principal powers t^{(k} = t^{(k-1} ∘ t
        let limit = self.size() as usize;
        let mut powers: Vec<Elem> = vec![t.clone()];
        let mut index: HashMap<Elem, usize> = HashMap::new();
        index.insert(t.clone(), 0);
        loop {
            let next = self.mul(powers.last().unwrap(), &t);
            if index.contains_key(&next) || powers.len() >= limit {
                break;
            }
            index.insert(next.clone(), powers.len());
            powers.push(next);
        }
        let count = powers.len();
        // group iff the sequence returns to t after passing 1 and t^(i ∘ t^(j = t^(i+j
        let cyclic = self.mul(powers.last().unwrap(), &t) == t && powers.last() == Some(&self.one());
        let powers_form_group = cyclic
            && (0..count).all(|i| {
                (0..count).all(|j| self.mul(&powers[i], &powers[j]) == powers[(i + j + 1) % count])
            });

        // bracketing sets for t^k, k ≤ m+1
        let mut bracket: Vec<HashSet<Elem>> = vec![HashSet::new(), HashSet::from([t.clone()])];
        let mut pa = true;
        for k in 2..=self.m + 1 {
            let mut s = HashSet::new();
            for i in 1..k {
                for a in &bracket[i] {
                    for b in &bracket[k - i] {
                        s.insert(self.mul(a, b));
                    }
                }
            }
            if s.len() > 1 {
                pa = false;
            }
            bracket.push(s);
        }
        TPowerReport {
            ft_in_rf,
            tm_commutes_with_t,
            powers_form_group,
            left_power_count: count,
            group_order: powers_form_group.then_some(count),
            m_plus_one_power_associative_at_t: pa,
        }
    }
}
