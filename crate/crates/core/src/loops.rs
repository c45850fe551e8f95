//! The multiplicative loop `L_f = S_f \ {0}`.
//!
//! Loop elements are indexed by `rank - 1`, so the identity has index 0.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::permgroup::{BuildOptions, Bsgs, Perm, DEGREE_CAP};
use crate::semifield::{Elem, SemifieldCtx};

pub const LOOP_SIZE_CAP: usize = DEGREE_CAP;
pub const LAGRANGE_CAP: usize = 700;
pub const ISO_CAP: usize = 255;
/// Largest loop for which Inn is rebuilt from every `T_x`, `L_{x,y}`, `R_{x,y}`.
pub const INN_FULL_CHECK_CAP: usize = 80;

#[derive(Clone, Debug)]
pub struct LoopCtx {
    sf: SemifieldCtx,
    n: usize,
    table: Vec<u32>,
}

impl LoopCtx {
    pub fn new(sf: SemifieldCtx) -> Result<Self> {
        let n = (sf.size() - 1) as usize;
        if n > LOOP_SIZE_CAP {
            return Err(Error::SizeCapExceeded {
                size: n,
                cap: LOOP_SIZE_CAP,
            });
        }
        let elems: Vec<Elem> = (1..=n as u64).map(|r| sf.from_rank(r)).collect();
        let mut table = vec![0u32; n * n];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                let z = sf.mul(x, y);
                let r = sf.rank(&z);
                if r == 0 {
                    return Err(Error::InvariantViolated("zero divisor in S_f".into()));
                }
                table[i * n + j] = (r - 1) as u32;
            }
        }
        let l = LoopCtx { sf, n, table };
        if !is_normalized_latin(n, &l.table) {
            return Err(Error::InvariantViolated("multiplication table is not a Latin square".into()));
        }
        Ok(l)
    }

    /// Rebuilds a loop from an exported square, checking it against `sf`.
    pub fn from_latin_square(sf: SemifieldCtx, sq: &LatinSquare) -> Result<Self> {
        let l = LoopCtx::new(sf)?;
        if sq.n != l.n || sq.table != l.table {
            return Err(Error::InvariantViolated("square does not match S_f".into()));
        }
        Ok(l)
    }

    pub fn semifield(&self) -> &SemifieldCtx {
        &self.sf
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn elem(&self, i: usize) -> Elem {
        self.sf.from_rank(i as u64 + 1)
    }

    pub fn index_of(&self, x: &[crate::gf::FieldElement]) -> Result<usize> {
        if x.len() != self.sf.m() {
            return Err(Error::ForeignElement(format!("length {}", x.len())));
        }
        match self.sf.rank(x) {
            0 => Err(Error::ZeroElement),
            r => Ok((r - 1) as usize),
        }
    }

    pub fn format_elem(&self, i: usize) -> String {
        self.sf.to_poly(&self.elem(i)).format(self.sf.tower())
    }

    /// `L_a : x ↦ a∘x`.
    pub fn left_translation(&self, a: usize) -> Perm {
        Perm::from_images_unchecked(self.table[a * self.n..(a + 1) * self.n].to_vec())
    }

    /// `R_a : x ↦ x∘a`.
    pub fn right_translation(&self, a: usize) -> Perm {
        Perm::from_images_unchecked((0..self.n).map(|x| self.table[x * self.n + a]).collect())
    }

    pub fn t_index(&self) -> usize {
        self.index_of(&self.sf.t()).expect("t is nonzero")
    }

    pub fn primitive_index(&self) -> usize {
        let alpha = self.sf.tower().field().primitive();
        self.index_of(&self.sf.scalar(alpha)).expect("α is nonzero")
    }

    /// Sizes of the loop nuclei `(left, middle, right)` by scanning triples.
    pub fn nuclei_bruteforce(&self) -> [usize; 3] {
        let n = self.n;
        let assoc = |a: usize, b: usize, c: usize| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c));
        let left = (0..n).filter(|&a| (0..n).all(|x| (0..n).all(|y| assoc(a, x, y)))).count();
        let middle = (0..n).filter(|&a| (0..n).all(|x| (0..n).all(|y| assoc(x, a, y)))).count();
        let right = (0..n).filter(|&a| (0..n).all(|x| (0..n).all(|y| assoc(x, y, a)))).count();
        [left, middle, right]
    }
}

fn is_normalized_latin(n: usize, table: &[u32]) -> bool {
    let mut seen = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            let v = table[i * n + j] as usize;
            if v >= n || seen[v] == 2 * i + 1 {
                return false;
            }
            seen[v] = 2 * i + 1;
        }
    }
    for j in 0..n {
        for i in 0..n {
            let v = table[i * n + j] as usize;
            if seen[v] == 2 * j + 2 {
                return false;
            }
            seen[v] = 2 * j + 2;
        }
    }
    (0..n).all(|i| table[i] as usize == i && table[i * n] as usize == i)
}

/// `SL(d, c) ≤ Mlt ≤ GL(d, c)` with `c` the center order and `d` the
/// dimension over the center.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Sandwich {
    pub center_order: u64,
    pub dimension: u32,
    #[serde(serialize_with = "ser_big")]
    pub sl_order: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub gl_order: BigUint,
}

pub(crate) fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl Sandwich {
    pub fn holds(&self, order: &BigUint) -> bool {
        &self.sl_order <= order && order <= &self.gl_order
    }
}

pub fn sandwich_bounds(sf: &SemifieldCtx) -> Sandwich {
    let c = sf.nuclei().center.cardinality;
    sandwich_for(c, sf.size())
}

/// Bounds for a semifield of `size` elements over a center of order `c`.
pub fn sandwich_for(c: u64, size: u64) -> Sandwich {
    let mut d = 0u32;
    let mut x = 1u64;
    while x < size {
        x *= c;
        d += 1;
    }
    Sandwich {
        center_order: c,
        dimension: d,
        sl_order: arith::sl_order(d, c),
        gl_order: arith::gl_order(d, c),
    }
}

/// `Mlt(L)` with base starting at the identity, so the stabilizer chain from
/// the second level is `Inn(L)`.
pub fn mlt_group(l: &LoopCtx, seed: u64, degree_cap: usize) -> Result<Bsgs> {
    let n = l.order();
    if n > degree_cap {
        return Err(Error::DegreeCapExceeded { degree: n, cap: degree_cap });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (t, a) = (l.t_index(), l.primitive_index());
    let mut seeds = vec![
        l.left_translation(t),
        l.right_translation(t),
        l.left_translation(a),
        l.right_translation(a),
    ];
    for _ in 0..8 {
        let x = rng.gen_range(0..n);
        seeds.push(if rng.gen_bool(0.5) {
            l.left_translation(x)
        } else {
            l.right_translation(x)
        });
    }
    let opts = BuildOptions {
        seed,
        base_prefix: vec![0],
        degree_cap,
        ..Default::default()
    };
    let mut g = Bsgs::build_on(n, &seeds, &opts)?;
    for x in 0..n {
        g.extend(&l.left_translation(x))?;
        g.extend(&l.right_translation(x))?;
    }
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InnerKind {
    T,
    L,
    R,
}

#[derive(Clone, Debug)]
pub struct InnerMapping {
    pub kind: InnerKind,
    pub x: usize,
    pub y: Option<usize>,
    pub perm: Perm,
}

/// `T_x = L_x^{-1} R_x`, `L_{x,y} = L_{yx}^{-1} L_y L_x`, `R_{x,y} = R_{xy}^{-1} R_y R_x`.
pub fn inner_mapping_idx(l: &LoopCtx, kind: InnerKind, x: usize, y: usize) -> InnerMapping {
    let perm = match kind {
        InnerKind::T => l.right_translation(x).then(&l.left_translation(x).inverse()),
        InnerKind::L => l
            .left_translation(x)
            .then(&l.left_translation(y))
            .then(&l.left_translation(l.mul(y, x)).inverse()),
        InnerKind::R => l
            .right_translation(x)
            .then(&l.right_translation(y))
            .then(&l.right_translation(l.mul(x, y)).inverse()),
    };
    InnerMapping {
        kind,
        x,
        y: (kind != InnerKind::T).then_some(y),
        perm,
    }
}

pub fn inner_mapping(l: &LoopCtx, kind: InnerKind, x: &Elem, y: Option<&Elem>) -> Result<InnerMapping> {
    let xi = l.index_of(x)?;
    let yi = match (kind, y) {
        (InnerKind::T, _) => 0,
        (_, Some(y)) => l.index_of(y)?,
        (_, None) => return Err(Error::PreconditionViolated("second parameter required".into())),
    };
    Ok(inner_mapping_idx(l, kind, xi, yi))
}

#[derive(Clone, Debug)]
pub struct InnReport {
    pub order: BigUint,
    pub generators: Vec<Perm>,
    pub chain: Bsgs,
    /// Number of sampled inner mappings sifted into the chain.
    pub sampled: usize,
    /// Order of `⟨T_x, L_{x,y}, R_{x,y}⟩` when the loop is small enough.
    pub full_check_order: Option<BigUint>,
}

pub fn inn_group(l: &LoopCtx, mlt: &Bsgs, seed: u64) -> Result<InnReport> {
    let order = mlt.stabilizer_order(0)?;
    let generators = mlt.stabilizer_generators(0);
    let chain = if mlt.base().first() == Some(&0) {
        mlt.stabilizer_chain()
    } else {
        Bsgs::build_on(l.order(), &generators, &BuildOptions { seed, ..Default::default() })?
    };
    if chain.order() != order {
        return Err(Error::InvariantViolated("stabilizer chain order differs from |Mlt|/N".into()));
    }
    let n = l.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x1d);
    let sampled = 60;
    for k in 0..sampled {
        let kind = [InnerKind::T, InnerKind::L, InnerKind::R][k % 3];
        let im = inner_mapping_idx(l, kind, rng.gen_range(0..n), rng.gen_range(0..n));
        if im.perm.apply(0) != 0 || !chain.contains(&im.perm)? {
            return Err(Error::InvariantViolated(format!("{kind:?} mapping outside Inn")));
        }
    }
    let full_check_order = if n <= INN_FULL_CHECK_CAP {
        let mut maps = Vec::new();
        for x in 0..n {
            maps.push(inner_mapping_idx(l, InnerKind::T, x, 0).perm);
            for y in 0..n {
                maps.push(inner_mapping_idx(l, InnerKind::L, x, y).perm);
                maps.push(inner_mapping_idx(l, InnerKind::R, x, y).perm);
            }
        }
        maps.sort();
        maps.dedup();
        let g = Bsgs::build_on(n, &maps, &BuildOptions { seed, ..Default::default() })?;
        if g.order() != order {
            return Err(Error::InvariantViolated(format!(
                "⟨T, L, R⟩ has order {} but |Mlt|/N = {order}",
                g.order()
            )));
        }
        Some(g.order())
    } else {
        None
    };
    Ok(InnReport {
        order,
        generators,
        chain,
        sampled,
        full_check_order,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Cyclicity {
    pub left_cyclic: bool,
    pub right_cyclic: bool,
    pub left_witness: Option<usize>,
    pub right_witness: Option<usize>,
    pub left_generators: usize,
    pub right_generators: usize,
}

/// Length of the principal power sequence of `a` before it returns to 1.
/// Left powers `a^{(k} = a^{(k-1} a`, right powers `a^{k)} = a a^{k-1)}`.
pub fn principal_power_order(l: &LoopCtx, a: usize, left: bool) -> usize {
    let mut x = a;
    let mut k = 1;
    while x != 0 {
        x = if left { l.mul(x, a) } else { l.mul(a, x) };
        k += 1;
    }
    k
}

pub fn cyclicity(l: &LoopCtx) -> Cyclicity {
    let n = l.order();
    let left: Vec<usize> = (0..n).filter(|&a| principal_power_order(l, a, true) == n).collect();
    let right: Vec<usize> = (0..n).filter(|&a| principal_power_order(l, a, false) == n).collect();
    Cyclicity {
        left_cyclic: !left.is_empty(),
        right_cyclic: !right.is_empty(),
        left_witness: left.first().copied(),
        right_witness: right.first().copied(),
        left_generators: left.len(),
        right_generators: right.len(),
    }
}

/// Sorted indices of the subloop generated by `gens`.
pub fn closure(l: &LoopCtx, gens: &[usize]) -> Vec<usize> {
    closure_from(l, &[0], gens)
}

// `base` must already be closed.
fn closure_from(l: &LoopCtx, base: &[usize], extra: &[usize]) -> Vec<usize> {
    let mut inset = vec![false; l.order()];
    let mut els: Vec<usize> = Vec::with_capacity(base.len() + extra.len());
    for &x in base.iter().chain(extra) {
        if !inset[x] {
            inset[x] = true;
            els.push(x);
        }
    }
    let mut i = base.len();
    while i < els.len() {
        let x = els[i];
        for j in 0..=i {
            let y = els[j];
            for z in [l.mul(x, y), l.mul(y, x)] {
                if !inset[z] {
                    inset[z] = true;
                    els.push(z);
                }
            }
        }
        i += 1;
    }
    els.sort_unstable();
    els
}

/// Every subloop, smallest first.
pub fn subloops(l: &LoopCtx) -> Result<Vec<Vec<usize>>> {
    let n = l.order();
    if n > LAGRANGE_CAP {
        return Err(Error::SizeCapExceeded { size: n, cap: LAGRANGE_CAP });
    }
    let mut found: HashSet<Vec<usize>> = HashSet::new();
    let mut queue: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        let c = closure(l, &[a]);
        if found.insert(c.clone()) {
            queue.push(c);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let h = queue[head].clone();
        head += 1;
        let mut member = vec![false; n];
        for &x in &h {
            member[x] = true;
        }
        for a in 0..n {
            if member[a] {
                continue;
            }
            let j = closure_from(l, &h, &[a]);
            if found.insert(j.clone()) {
                queue.push(j);
            }
        }
    }
    queue.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(queue)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LagrangeReport {
    pub loop_order: usize,
    /// Subloop order ↦ number of subloops of that order.
    pub subloop_orders: BTreeMap<usize, usize>,
    pub weak: bool,
    pub strong: bool,
    /// `(|K|, |H|)` for some `K < H` with `|K| ∤ |H|`.
    pub strong_violation: Option<(usize, usize)>,
}

pub fn subloops_and_lagrange(l: &LoopCtx) -> Result<LagrangeReport> {
    let subs = subloops(l)?;
    lagrange_from(l.order(), &subs)
}

fn lagrange_from(n: usize, subs: &[Vec<usize>]) -> Result<LagrangeReport> {
    let mut orders = BTreeMap::new();
    for s in subs {
        *orders.entry(s.len()).or_insert(0) += 1;
    }
    let weak = subs.iter().all(|s| n % s.len() == 0);
    let sets: Vec<HashSet<usize>> = subs.iter().map(|s| s.iter().copied().collect()).collect();
    let mut strong_violation = None;
    'outer: for (i, big) in sets.iter().enumerate() {
        for small in sets.iter().take(i) {
            if small.len() < big.len() && big.len() % small.len() != 0 && small.is_subset(big) {
                strong_violation = Some((small.len(), big.len()));
                break 'outer;
            }
        }
    }
    Ok(LagrangeReport {
        loop_order: n,
        subloop_orders: orders,
        weak,
        strong: weak && strong_violation.is_none(),
        strong_violation,
    })
}

/// Per-element invariants preserved by loop isomorphisms.
fn element_invariants(n: usize, mul: &dyn Fn(usize, usize) -> usize, extra: &[u64]) -> Vec<(usize, usize, usize, u64)> {
    (0..n)
        .map(|a| {
            let power = |left: bool| {
                let mut x = a;
                let mut k = 1;
                while x != 0 {
                    x = if left { mul(x, a) } else { mul(a, x) };
                    k += 1;
                }
                k
            };
            let commutant = (0..n).filter(|&y| mul(a, y) == mul(y, a)).count();
            (power(true), power(false), commutant, extra[a])
        })
        .collect()
}

fn nucleus_flags(l: &LoopCtx) -> Vec<u64> {
    let sf = l.semifield();
    let nuc = sf.nuclei();
    (0..l.order())
        .map(|i| {
            let x = l.elem(i);
            u64::from(sf.in_subspace(&nuc.left, &x))
                | u64::from(sf.in_subspace(&nuc.middle, &x)) << 1
                | u64::from(sf.in_subspace(&nuc.right, &x)) << 2
        })
        .collect()
}

/// A loop isomorphism `L1 → L2` as an index map, or `None` after an
/// exhaustive search.
pub fn loop_isomorphic(l1: &LoopCtx, l2: &LoopCtx) -> Result<Option<Vec<usize>>> {
    let n = l1.order();
    if n != l2.order() {
        return Ok(None);
    }
    if n > ISO_CAP {
        return Err(Error::SizeCapExceeded { size: n, cap: ISO_CAP });
    }
    let t1 = TableLoop { n, table: l1.table() };
    let t2 = TableLoop { n, table: l2.table() };
    Ok(isomorphism_search(&t1, &t2, &nucleus_flags(l1), &nucleus_flags(l2)))
}

struct TableLoop<'a> {
    n: usize,
    table: &'a [u32],
}

impl TableLoop<'_> {
    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }
}

#[derive(Clone)]
struct PartialIso {
    phi: Vec<Option<usize>>,
    inv: Vec<Option<usize>>,
    els: Vec<usize>,
    processed: usize,
}

fn isomorphism_search(a: &TableLoop, b: &TableLoop, extra_a: &[u64], extra_b: &[u64]) -> Option<Vec<usize>> {
    let n = a.n;
    let inv_a = element_invariants(n, &|x, y| a.mul(x, y), extra_a);
    let inv_b = element_invariants(n, &|x, y| b.mul(x, y), extra_b);
    let mut sa = inv_a.clone();
    let mut sb = inv_b.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let gens = generating_set(a, &inv_a);
    let mut start = PartialIso {
        phi: vec![None; n],
        inv: vec![None; n],
        els: vec![0],
        processed: 0,
    };
    start.phi[0] = Some(0);
    start.inv[0] = Some(0);
    if !propagate(a, b, &inv_a, &inv_b, &mut start) {
        return None;
    }
    search(a, b, &inv_a, &inv_b, &gens, 0, start)
}

/// Greedy generating set, preferring elements with rare invariants.
fn generating_set(a: &TableLoop, inv: &[(usize, usize, usize, u64)]) -> Vec<usize> {
    let n = a.n;
    let mut class_size: HashMap<(usize, usize, usize, u64), usize> = HashMap::new();
    for k in inv {
        *class_size.entry(*k).or_insert(0) += 1;
    }
    let mut gens = Vec::new();
    let mut covered = vec![false; n];
    covered[0] = true;
    let mut span = vec![0usize];
    while span.len() < n {
        let g = (0..n)
            .filter(|&x| !covered[x])
            .min_by_key(|&x| (class_size[&inv[x]], x))
            .unwrap();
        gens.push(g);
        span = table_closure(a, &span, &[g]);
        for &x in &span {
            covered[x] = true;
        }
    }
    gens
}

fn table_closure(l: &TableLoop, base: &[usize], extra: &[usize]) -> Vec<usize> {
    let mut inset = vec![false; l.n];
    let mut els: Vec<usize> = Vec::new();
    for &x in base.iter().chain(extra) {
        if !inset[x] {
            inset[x] = true;
            els.push(x);
        }
    }
    let mut i = base.len();
    while i < els.len() {
        let x = els[i];
        for j in 0..=i {
            let y = els[j];
            for z in [l.mul(x, y), l.mul(y, x)] {
                if !inset[z] {
                    inset[z] = true;
                    els.push(z);
                }
            }
        }
        i += 1;
    }
    els
}

fn propagate(
    a: &TableLoop,
    b: &TableLoop,
    inv_a: &[(usize, usize, usize, u64)],
    inv_b: &[(usize, usize, usize, u64)],
    st: &mut PartialIso,
) -> bool {
    while st.processed < st.els.len() {
        let i = st.processed;
        let x = st.els[i];
        for j in 0..=i {
            let y = st.els[j];
            for (u, v) in [(x, y), (y, x)] {
                let z = a.mul(u, v);
                let w = b.mul(st.phi[u].unwrap(), st.phi[v].unwrap());
                match (st.phi[z], st.inv[w]) {
                    (Some(pz), _) if pz != w => return false,
                    (Some(_), _) => {}
                    (None, Some(_)) => return false,
                    (None, None) => {
                        if inv_a[z] != inv_b[w] {
                            return false;
                        }
                        st.phi[z] = Some(w);
                        st.inv[w] = Some(z);
                        st.els.push(z);
                    }
                }
            }
        }
        st.processed += 1;
    }
    true
}

fn search(
    a: &TableLoop,
    b: &TableLoop,
    inv_a: &[(usize, usize, usize, u64)],
    inv_b: &[(usize, usize, usize, u64)],
    gens: &[usize],
    depth: usize,
    st: PartialIso,
) -> Option<Vec<usize>> {
    if depth == gens.len() {
        let phi: Vec<usize> = st.phi.iter().map(|p| p.expect("generators span the loop")).collect();
        let ok = (0..a.n).all(|x| (0..a.n).all(|y| phi[a.mul(x, y)] == b.mul(phi[x], phi[y])));
        return ok.then_some(phi);
    }
    let g = gens[depth];
    if st.phi[g].is_some() {
        return search(a, b, inv_a, inv_b, gens, depth + 1, st);
    }
    for c in 0..b.n {
        if st.inv[c].is_some() || inv_a[g] != inv_b[c] {
            continue;
        }
        let mut next = st.clone();
        next.phi[g] = Some(c);
        next.inv[c] = Some(g);
        next.els.push(g);
        if propagate(a, b, inv_a, inv_b, &mut next) {
            if let Some(phi) = search(a, b, inv_a, inv_b, gens, depth + 1, next) {
                return Some(phi);
            }
        }
    }
    None
}

/// Largest loop for which all automorphisms are enumerated.
pub const AUT_SEARCH_CAP: usize = 80;

/// Every automorphism of the loop, by exhaustive backtracking.
pub fn loop_automorphisms(l: &LoopCtx) -> Result<Vec<Vec<usize>>> {
    let n = l.order();
    if n > AUT_SEARCH_CAP {
        return Err(Error::SizeCapExceeded { size: n, cap: AUT_SEARCH_CAP });
    }
    let t = TableLoop { n, table: l.table() };
    let flags = nucleus_flags(l);
    let inv = element_invariants(n, &|x, y| t.mul(x, y), &flags);
    let gens = generating_set(&t, &inv);
    let mut start = PartialIso {
        phi: vec![None; n],
        inv: vec![None; n],
        els: vec![0],
        processed: 0,
    };
    start.phi[0] = Some(0);
    start.inv[0] = Some(0);
    let mut out = Vec::new();
    if propagate(&t, &t, &inv, &inv, &mut start) {
        search_all(&t, &inv, &gens, 0, start, &mut out);
    }
    out.sort();
    Ok(out)
}

fn search_all(
    a: &TableLoop,
    inv: &[(usize, usize, usize, u64)],
    gens: &[usize],
    depth: usize,
    st: PartialIso,
    out: &mut Vec<Vec<usize>>,
) {
    if depth == gens.len() {
        let phi: Vec<usize> = st.phi.iter().map(|p| p.expect("generators span the loop")).collect();
        if (0..a.n).all(|x| (0..a.n).all(|y| phi[a.mul(x, y)] == a.mul(phi[x], phi[y]))) {
            out.push(phi);
        }
        return;
    }
    let g = gens[depth];
    if st.phi[g].is_some() {
        return search_all(a, inv, gens, depth + 1, st, out);
    }
    for c in 0..a.n {
        if st.inv[c].is_some() || inv[g] != inv[c] {
            continue;
        }
        let mut next = st.clone();
        next.phi[g] = Some(c);
        next.inv[c] = Some(g);
        next.els.push(g);
        if propagate(a, a, inv, inv, &mut next) {
            search_all(a, inv, gens, depth + 1, next, out);
        }
    }
}

/// Index multiplication table with an element legend.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinSquare {
    pub n: usize,
    pub table: Vec<u32>,
    pub legend: Vec<String>,
}

pub fn latin_square(l: &LoopCtx) -> LatinSquare {
    LatinSquare {
        n: l.order(),
        table: l.table().to_vec(),
        legend: (0..l.order()).map(|i| l.format_elem(i)).collect(),
    }
}

impl LatinSquare {
    pub fn is_normalized_latin(&self) -> bool {
        is_normalized_latin(self.n, &self.table)
    }

    /// Comment header (`# N=..` and one `# index: element` line per element),
    /// then `N` rows of comma-separated indices.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# N={}\n", self.n);
        for (i, e) in self.legend.iter().enumerate() {
            out.push_str(&format!("# {i}: {e}\n"));
        }
        for row in self.table.chunks(self.n.max(1)) {
            let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    pub fn from_csv(s: &str) -> Result<Self> {
        let mut n = None;
        let mut legend = Vec::new();
        let mut table = Vec::new();
        for line in s.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                let rest = rest.trim();
                if let Some(v) = rest.strip_prefix("N=") {
                    n = Some(v.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?);
                } else if let Some((_, e)) = rest.split_once(": ") {
                    legend.push(e.to_string());
                }
                continue;
            }
            for v in line.split(',') {
                table.push(v.trim().parse::<u32>().map_err(|e| Error::Parse(e.to_string()))?);
            }
        }
        let n = n.ok_or_else(|| Error::Parse("missing N header".into()))?;
        if table.len() != n * n {
            return Err(Error::Parse(format!("expected {} entries, found {}", n * n, table.len())));
        }
        let sq = LatinSquare { n, table, legend };
        if !sq.is_normalized_latin() {
            return Err(Error::Parse("not a normalized Latin square".into()));
        }
        Ok(sq)
    }
}
