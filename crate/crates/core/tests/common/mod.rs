#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use skewloop::autgroup::{self, AutHK};
use skewloop::loops::{self, LoopCtx};
use skewloop::permgroup::DEGREE_CAP;
use skewloop::semifield::Elem;
use skewloop::skewpoly;
use skewloop::{FieldAutomorphism, FieldElement, SemifieldCtx, SkewPoly, TowerCtx};

pub struct Instance {
    pub label: String,
    pub q: u64,
    pub n: u32,
    pub m: u32,
    pub loop_: LoopCtx,
}

impl Instance {
    pub fn sf(&self) -> &SemifieldCtx {
        self.loop_.semifield()
    }
}

/// `(p, r, n, m, how many)`: K = F_{p^{rn}}, F = F_{p^r}.
pub const CONFIGS: [(u64, u32, u32, u32, usize); 9] = [
    (2, 1, 2, 2, 3),
    (2, 1, 2, 3, 3),
    (2, 1, 3, 2, 3),
    (2, 1, 3, 3, 2),
    (3, 1, 2, 2, 3),
    (3, 1, 2, 3, 2),
    (2, 1, 4, 2, 2),
    (2, 2, 2, 2, 2),
    (5, 1, 2, 2, 2),
];

pub fn admissible(tower: &TowerCtx, m: usize) -> Vec<SkewPoly> {
    skewpoly::enumerate_admissible(tower, m).collect()
}

pub fn make(p: u64, r: u32, n: u32, f: SkewPoly, modulus: Option<&[u64]>) -> Instance {
    let tower = TowerCtx::new(p, r, n, modulus).unwrap();
    let label = format!("F_{}/F_{} {}", tower.field().order(), tower.base_order(), f.format(&tower));
    let q = tower.base_order();
    let m = f.degree().unwrap() as u32;
    let sf = SemifieldCtx::new(tower, &f).unwrap();
    Instance {
        label,
        q,
        n,
        m,
        loop_: LoopCtx::new(sf).unwrap(),
    }
}

/// Evenly spread picks from each configuration's admissible list.
pub fn instances() -> Vec<Instance> {
    let mut out = Vec::new();
    for (p, r, n, m, count) in CONFIGS {
        let tower = TowerCtx::new(p, r, n, None).unwrap();
        let all = admissible(&tower, m as usize);
        assert!(all.len() >= count);
        for j in 0..count {
            let f = all[j * all.len() / count + all.len() / (2 * count)].clone();
            out.push(make(p, r, n, f, None));
        }
    }
    out
}

pub fn pow_big(b: u64, e: u32) -> BigUint {
    BigUint::from(b).pow(e)
}

/// Nuclei of `S_f` by scanning every associator; returns rank sets.
pub fn brute_nuclei(sf: &SemifieldCtx) -> [BTreeSet<u64>; 3] {
    let els: Vec<Elem> = sf.elements().collect();
    let zero = |x: &Elem| sf.is_zero(x);
    let mut out = [BTreeSet::new(), BTreeSet::new(), BTreeSet::new()];
    for a in &els {
        let mut l = true;
        let mut mid = true;
        let mut r = true;
        for x in &els {
            for y in &els {
                l = l && zero(&sf.associator(a, x, y));
                mid = mid && zero(&sf.associator(x, a, y));
                r = r && zero(&sf.associator(x, y, a));
            }
        }
        for (flag, set) in [l, mid, r].into_iter().zip(out.iter_mut()) {
            if flag {
                set.insert(sf.rank(a));
            }
        }
    }
    out
}

pub fn rank_set(sf: &SemifieldCtx, s: &skewloop::semifield::Subspace) -> BTreeSet<u64> {
    sf.subspace_elements(s).iter().map(|x| sf.rank(x)).collect()
}

/// Determinant mod a prime by Gaussian elimination.
pub fn det_mod_p(mut a: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = a.len();
    let inv = |x: u64| {
        let (mut r, mut b, mut e) = (1u64, x % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| a[i][c] % p != 0) else {
            return 0;
        };
        if piv != c {
            a.swap(piv, c);
            det = (p - det) % p;
        }
        det = det * a[c][c] % p;
        let ic = inv(a[c][c]);
        for i in c + 1..n {
            let factor = a[i][c] * ic % p;
            if factor != 0 {
                for j in c..n {
                    a[i][j] = (a[i][j] + p - factor * a[c][j] % p) % p;
                }
            }
        }
    }
    det
}

/// Determinants over `F_p` of every left and right translation.
pub fn translation_determinants(sf: &SemifieldCtx) -> BTreeSet<u64> {
    let basis = sf.prime_basis();
    let p = sf.p();
    let mut dets = BTreeSet::new();
    for x in sf.elements().filter(|x| !sf.is_zero(x)) {
        for left in [true, false] {
            // column j = image of basis vector j
            let cols: Vec<Vec<u64>> = basis
                .iter()
                .map(|b| sf.to_vector(&if left { sf.mul(&x, b) } else { sf.mul(b, &x) }))
                .collect();
            let d = cols.len();
            let rows: Vec<Vec<u64>> = (0..d).map(|i| (0..d).map(|j| cols[j][i]).collect()).collect();
            dets.insert(det_mod_p(rows, p));
        }
    }
    dets
}

/// An algebra map as a permutation of element ranks.
pub fn rank_perm(sf: &SemifieldCtx, map: &dyn Fn(&Elem) -> Elem) -> Vec<u64> {
    sf.elements().map(|x| sf.rank(&map(&x))).collect()
}

pub fn perm_order(p: &[u64]) -> usize {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut order = 1usize;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

pub fn h_map(sf: &SemifieldCtx, h: AutHK) -> impl Fn(&Elem) -> Elem + '_ {
    move |x: &Elem| autgroup::apply_aut(sf, &h, x)
}

pub fn id_tau() -> FieldAutomorphism {
    FieldAutomorphism {
        exponent: 0,
        fixes_base: true,
    }
}

/// Distinct maps `x ↦ (c^{-1} x) c` over `c ∈ K^×`, each with the `k` for
/// which it equals `H_{id,k}`, found by search over all of `K^×`.
pub struct InnerOracle {
    pub maps: Vec<Vec<u64>>,
    pub ks: Vec<Option<FieldElement>>,
    pub max_order: usize,
}

pub fn inner_oracle(sf: &SemifieldCtx) -> InnerOracle {
    let f = sf.tower().field();
    let mut maps: Vec<Vec<u64>> = Vec::new();
    for c in f.nonzero_elements() {
        let cs = sf.scalar(c);
        let ci = sf.scalar(f.inv(c).unwrap());
        let g = rank_perm(sf, &|x: &Elem| sf.mul(&sf.mul(&ci, x), &cs));
        if !maps.contains(&g) {
            maps.push(g);
        }
    }
    let hk: HashMap<Vec<u64>, FieldElement> = f
        .nonzero_elements()
        .map(|k| (rank_perm(sf, &h_map(sf, AutHK { tau: id_tau(), k })), k))
        .collect();
    let ks = maps.iter().map(|g| hk.get(g).copied()).collect();
    let max_order = maps.iter().map(|g| perm_order(g)).max().unwrap_or(1);
    InnerOracle { maps, ks, max_order }
}

/// Exhaustive multiplicativity of an algebra map.
pub fn multiplicative_on_all_pairs(sf: &SemifieldCtx, map: &dyn Fn(&Elem) -> Elem) -> bool {
    let els: Vec<Elem> = sf.elements().collect();
    let img: Vec<Elem> = els.iter().map(map).collect();
    for (i, x) in els.iter().enumerate() {
        for (j, y) in els.iter().enumerate() {
            if map(&sf.mul(x, y)) != sf.mul(&img[i], &img[j]) {
                return false;
            }
        }
    }
    true
}

/// The image of `f` under `a ↦ τ(a)`, `t ↦ k t`, compared with
/// `(∏_{l<m} σ^l(k)) f`.
pub fn ring_extension_scales_f(sf: &SemifieldCtx, h: &AutHK) -> bool {
    let tower = sf.tower();
    let fl = tower.field();
    let f = sf.f();
    let m = sf.m();
    let mut kpow = FieldElement::ONE; // k σ(k) ... σ^{i-1}(k)
    let scale = (0..m).fold(FieldElement::ONE, |acc, l| fl.mul(acc, tower.sigma(h.k, l as i64)));
    for i in 0..=m {
        let img = fl.mul(tower.apply_automorphism(h.tau, f.coeff(i)), kpow);
        if img != fl.mul(scale, f.coeff(i)) {
            return false;
        }
        kpow = fl.mul(kpow, tower.sigma(h.k, i as i64));
    }
    true
}

/// Every `(τ, k)` whose `H_{τ,k}` is multiplicative, by exhaustive test.
pub fn multiplicative_hk(sf: &SemifieldCtx) -> Vec<AutHK> {
    let tower = sf.tower();
    let mut out = Vec::new();
    for tau in tower.field_automorphisms().into_iter().filter(|t| t.fixes_base) {
        for k in tower.field().nonzero_elements() {
            let h = AutHK { tau, k };
            if multiplicative_on_all_pairs(sf, &h_map(sf, h)) {
                out.push(h);
            }
        }
    }
    out
}

pub struct GroupOrders {
    pub mlt: BigUint,
    pub inn: BigUint,
    pub full_check: Option<BigUint>,
}

pub fn group_orders(l: &LoopCtx, seed: u64) -> GroupOrders {
    let g = loops::mlt_group(l, seed, DEGREE_CAP).unwrap();
    let inn = loops::inn_group(l, &g, seed).unwrap();
    GroupOrders {
        mlt: g.order(),
        inn: inn.order,
        full_check: inn.full_check_order,
    }
}

/// `|GL(d, q)|` and `|SL(d, q)|` from the product formula.
pub fn gl_sl(d: u32, q: u64) -> (BigUint, BigUint) {
    let qd = pow_big(q, d);
    let gl = (0..d).fold(BigUint::from(1u32), |acc, i| acc * (&qd - pow_big(q, i)));
    let sl = &gl / BigUint::from(q - 1);
    (gl, sl)
}
