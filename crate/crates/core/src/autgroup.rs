//! Automorphisms `H_{τ,k}` of `S_f`, inner automorphisms `G_c`, and the
//! groups they form.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::{FieldAutomorphism, FieldElement, TowerCtx};
use crate::loops::LoopCtx;
use crate::permgroup::{identify_small_group, CayleyTable, GroupId, Perm};
use crate::semifield::{Elem, SemifieldCtx};
use crate::skewpoly::{self, SkewPoly};

/// Algebras up to this size are checked on every pair of elements.
pub const EXHAUSTIVE_CHECK_CAP: u64 = 625;
const RANDOM_PAIRS: usize = 10_000;

/// `H_{τ,k}(Σ x_i t^i) = Σ τ(x_i) (∏_{l<i} σ^l(k)) t^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AutHK {
    pub tau: FieldAutomorphism,
    pub k: FieldElement,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct AutHKJson {
    pub tau_exponent: u32,
    pub k: String,
}

impl AutHK {
    pub fn identity() -> Self {
        AutHK {
            tau: FieldAutomorphism {
                exponent: 0,
                fixes_base: true,
            },
            k: FieldElement::ONE,
        }
    }

    pub fn to_json(&self, tower: &TowerCtx) -> AutHKJson {
        AutHKJson {
            tau_exponent: self.tau.exponent,
            k: tower.field().format(self.k),
        }
    }
}

/// Does `(τ, k)` satisfy `τ(a_i) = (∏_{l=i}^{m-1} σ^l(k)) a_i` at every
/// nonzero `a_i`?
pub fn satisfies_conditions(tower: &TowerCtx, tail: &[FieldElement], tau: FieldAutomorphism, k: FieldElement) -> bool {
    let f = tower.field();
    let m = tail.len() as u32;
    tail.iter().enumerate().all(|(i, &a)| {
        a.is_zero() || tower.apply_automorphism(tau, a) == f.mul(tower.sigma_product(k, i as u32, m), a)
    })
}

/// All `(τ, k) ∈ Aut(K) × K^×` solving the conditions for `f`, without
/// checking multiplicativity.
pub fn aut_parameters(tower: &TowerCtx, f: &SkewPoly) -> Vec<AutHK> {
    let tail = f.tail_coeffs(tower);
    let mut out = Vec::new();
    for tau in tower.field_automorphisms() {
        for k in tower.field().nonzero_elements() {
            if satisfies_conditions(tower, &tail, tau, k) {
                out.push(AutHK { tau, k });
            }
        }
    }
    out
}

pub fn apply_aut(sf: &SemifieldCtx, h: &AutHK, x: &[FieldElement]) -> Elem {
    let tower = sf.tower();
    let f = tower.field();
    x.iter()
        .enumerate()
        .map(|(i, &c)| f.mul(tower.apply_automorphism(h.tau, c), tower.sigma_product(h.k, 0, i as u32)))
        .collect()
}

/// `H(x∘y) = H(x)∘H(y)` on all pairs, or on random pairs for large algebras.
pub fn is_multiplicative(sf: &SemifieldCtx, map: &dyn Fn(&[FieldElement]) -> Elem, seed: u64) -> bool {
    let check = |x: &Elem, y: &Elem| map(&sf.mul(x, y)) == sf.mul(&map(x), &map(y));
    if sf.size() <= EXHAUSTIVE_CHECK_CAP {
        let els: Vec<Elem> = sf.elements().collect();
        els.iter().all(|x| els.iter().all(|y| check(x, y)))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..RANDOM_PAIRS).all(|_| {
            let x = sf.from_rank(rng.gen_range(0..sf.size()));
            let y = sf.from_rank(rng.gen_range(0..sf.size()));
            check(&x, &y)
        })
    }
}

/// Solutions of the automorphism conditions, each verified multiplicative.
pub fn solve_aut_conditions(sf: &SemifieldCtx) -> Result<Vec<AutHK>> {
    let auts = aut_parameters(sf.tower(), sf.f());
    for h in &auts {
        if !is_multiplicative(sf, &|x| apply_aut(sf, h, x), 0) {
            return Err(Error::InvariantViolated(format!(
                "H_(τ^{}, {}) is not multiplicative",
                h.tau.exponent,
                sf.tower().field().format(h.k)
            )));
        }
    }
    Ok(auts)
}

/// Whether the solutions are the whole ring automorphism group (`n ≥ m-1`)
/// or only a subgroup.
pub fn is_full_group(sf: &SemifieldCtx) -> bool {
    sf.tower().n() as usize + 1 >= sf.m()
}

/// The ring-level extension maps `f` to `(∏_{l<m} σ^l(k))·f`.
pub fn scales_f(sf: &SemifieldCtx, h: &AutHK) -> bool {
    let tower = sf.tower();
    let fl = tower.field();
    let f = sf.f();
    let image: Vec<FieldElement> = f
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, &c)| fl.mul(tower.apply_automorphism(h.tau, c), tower.sigma_product(h.k, 0, i as u32)))
        .collect();
    let scale = tower.sigma_product(h.k, 0, sf.m() as u32);
    SkewPoly::new(image) == skewpoly::scale_left(tower, scale, f)
}

/// `H_{τ,k} ∘ H_{τ',k'} = H_{ττ', τ(k')k}`.
pub fn compose(tower: &TowerCtx, a: &AutHK, b: &AutHK) -> AutHK {
    let l = tower.field().degree();
    let e = (a.tau.exponent + b.tau.exponent) % l;
    AutHK {
        tau: FieldAutomorphism {
            exponent: e,
            fixes_base: e % tower.r() == 0,
        },
        k: tower.field().mul(tower.apply_automorphism(a.tau, b.k), a.k),
    }
}

/// The composition law agrees with composing the realized maps on every
/// element.
pub fn composition_law_holds(sf: &SemifieldCtx, auts: &[AutHK]) -> bool {
    let els: Vec<Elem> = if sf.size() <= EXHAUSTIVE_CHECK_CAP {
        sf.elements().collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        (0..200).map(|_| sf.from_rank(rng.gen_range(0..sf.size()))).collect()
    };
    auts.iter().all(|a| {
        auts.iter().all(|b| {
            let c = compose(sf.tower(), a, b);
            els.iter().all(|x| apply_aut(sf, a, &apply_aut(sf, b, x)) == apply_aut(sf, &c, x))
        })
    })
}

/// Multiplication table over parameter pairs, with identification.
pub fn aut_group_structure(tower: &TowerCtx, auts: &[AutHK]) -> Result<(CayleyTable, GroupId)> {
    let index: HashMap<AutHK, usize> = auts.iter().enumerate().map(|(i, h)| (*h, i)).collect();
    let id = *index.get(&AutHK::identity()).ok_or(Error::NotClosed)?;
    let n = auts.len();
    let mut table = vec![0u32; n * n];
    for (i, a) in auts.iter().enumerate() {
        for (j, b) in auts.iter().enumerate() {
            let c = compose(tower, a, b);
            table[i * n + j] = *index.get(&c).ok_or(Error::NotClosed)? as u32;
        }
    }
    let t = CayleyTable::new(n, id, table)?;
    let gid = identify_small_group(&t)?;
    Ok((t, gid))
}

/// `G_c(x) = (c_l x) c` for an invertible nucleus element `c`.
#[derive(Clone, Debug)]
pub struct InnerAut {
    /// Loop index of `c`.
    pub c: usize,
    /// Action on loop indices.
    pub perm: Perm,
    /// The matching `H_{id,k}` with `N(k) = 1`, if any.
    pub hk: Option<AutHK>,
}

#[derive(Clone, Debug)]
pub struct InnerAutReport {
    pub auts: Vec<InnerAut>,
    pub nucleus_order: u64,
    /// `(|Nuc| - 1)/(q - 1)`.
    pub expected: u64,
    pub all_matched: bool,
    pub cyclic: bool,
    pub group: Option<GroupId>,
}

/// Permutation of loop indices induced by an algebra map.
pub fn loop_perm(l: &LoopCtx, map: &dyn Fn(&[FieldElement]) -> Elem) -> Result<Perm> {
    let images: Vec<u32> = (0..l.order())
        .map(|i| l.index_of(&map(&l.elem(i))).map(|j| j as u32))
        .collect::<Result<_>>()?;
    Perm::from_images(images)
}

pub fn inner_automorphisms(l: &LoopCtx) -> Result<InnerAutReport> {
    let sf = l.semifield();
    let tower = sf.tower();
    let nuc = sf.nuclei().nucleus;
    let mut auts: Vec<InnerAut> = Vec::new();
    for c in sf.subspace_elements(&nuc) {
        if sf.is_zero(&c) {
            continue;
        }
        let (cl, _) = sf.inverses(&c)?;
        let g = |x: &[FieldElement]| sf.mul(&sf.mul(&cl, x), &c);
        let perm = loop_perm(l, &g)?;
        if auts.iter().any(|a| a.perm == perm) {
            continue;
        }
        if perm.apply(0) != 0 || !is_multiplicative(sf, &g, 2) {
            return Err(Error::InvariantViolated("G_c is not an automorphism".into()));
        }
        auts.push(InnerAut {
            c: l.index_of(&c)?,
            perm,
            hk: None,
        });
    }
    // match against H_{id,k}, N(k) = 1
    let id = FieldAutomorphism {
        exponent: 0,
        fixes_base: true,
    };
    let candidates: Vec<(AutHK, Perm)> = tower
        .field()
        .nonzero_elements()
        .filter(|&k| tower.norm(k) == FieldElement::ONE)
        .map(|k| {
            let h = AutHK { tau: id, k };
            let p = loop_perm(l, &|x| apply_aut(sf, &h, x));
            p.map(|p| (h, p))
        })
        .collect::<Result<_>>()?;
    for a in &mut auts {
        a.hk = candidates.iter().find(|(_, p)| *p == a.perm).map(|(h, _)| *h);
    }
    let all_matched = auts.iter().all(|a| a.hk.is_some());
    let perms: Vec<Perm> = auts.iter().map(|a| a.perm.clone()).collect();
    let (group, cyclic) = match CayleyTable::from_perms(&perms, crate::permgroup::IDENTIFY_BOUND) {
        Ok((t, _)) if t.order() == auts.len() => {
            let gid = identify_small_group(&t)?;
            let cyc = matches!(gid.tag, crate::permgroup::GroupTag::Cyclic { .. }) || t.order() == 1;
            (Some(gid), cyc)
        }
        Ok(_) => return Err(Error::InvariantViolated("inner automorphisms are not closed".into())),
        Err(_) => (None, false),
    };
    let q = tower.base_order();
    Ok(InnerAutReport {
        auts,
        nucleus_order: nuc.cardinality,
        expected: (nuc.cardinality - 1) / (q - 1),
        all_matched,
        cyclic,
        group,
    })
}

/// `S(r,m,l) = gcd((p^{rm}-1)/(p^r-1), p^l-1)`.
pub fn s_gcd_count(p: u64, r: u32, m: u32, l: u32) -> Result<u64> {
    if r == 0 || l % r != 0 {
        return Err(Error::PreconditionViolated(format!("r = {r} must divide l = {l}")));
    }
    let pw = |e: u32| -> Result<u128> {
        (p as u128)
            .checked_pow(e)
            .ok_or_else(|| Error::TooLarge(format!("{p}^{e}")))
    };
    let s = (pw(r * m)? - 1) / (pw(r)? - 1);
    let g = num_integer::gcd(s, pw(l)? - 1);
    Ok(g as u64)
}

/// Every `(τ,k)` valid for `g` is valid for `f`, where `f` zeroes some of
/// the coefficients of `g`.
pub fn subgroup_comparison(tower: &TowerCtx, f: &SkewPoly, g: &SkewPoly) -> Result<bool> {
    for (name, p) in [("f", f), ("g", g)] {
        if !skewpoly::is_admissible(tower, p)? {
            return Err(Error::InadmissiblePolynomial(format!("{name} = {}", p.format(tower))));
        }
    }
    if f.degree() != g.degree() {
        return Err(Error::PreconditionViolated("degrees differ".into()));
    }
    let (tf, tg) = (f.tail_coeffs(tower), g.tail_coeffs(tower));
    if tf.iter().zip(&tg).any(|(a, b)| !a.is_zero() && a != b) {
        return Err(Error::PreconditionViolated("f is not obtained by zeroing coefficients of g".into()));
    }
    let pf = aut_parameters(tower, f);
    Ok(aut_parameters(tower, g).iter().all(|h| pf.contains(h)))
}

/// Number of `H_{id,k}` with `k` an `s`-th root of unity, `s = (q^m-1)/(q-1)`.
pub fn root_of_unity_count(sf: &SemifieldCtx, auts: &[AutHK]) -> u64 {
    let tower = sf.tower();
    let q = tower.base_order();
    let s = (arith::checked_pow(q, sf.m() as u32).unwrap_or(u64::MAX) - 1) / (q - 1);
    auts.iter()
        .filter(|h| h.tau.exponent == 0 && tower.field().pow(h.k, s) == FieldElement::ONE)
        .count() as u64
}
