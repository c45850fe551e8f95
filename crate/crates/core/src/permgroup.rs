//! Permutation groups: Schreier–Sims stabilizer chains with exact orders,
//! membership testing, and witness-based identification of small groups.
//!
//! Composition convention: `g.then(h)` is the permutation `x ↦ h(g(x))`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest degree the engine accepts; transversals are stored explicitly.
pub const DEGREE_CAP: usize = 5000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u32>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (0..n as u32).collect(),
        }
    }

    /// Checked constructor: `images` must be a bijection on `0..len`.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(Error::PreconditionViolated("not a bijection".into()));
            }
            seen[i] = true;
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Perm { images }
    }

    /// The cycle `0 → 1 → .. → n-1 → 0`.
    pub fn cycle(n: usize) -> Self {
        Perm {
            images: (0..n as u32).map(|i| (i + 1) % n as u32).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { images: inv }
    }

    /// `x ↦ other(self(x))`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&b);
            }
            b = b.then(&b);
            e >>= 1;
        }
        acc
    }

    pub fn order(&self) -> BigUint {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut acc = BigUint::one();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            let l = BigUint::from(len);
            let g = num_integer::Integer::gcd(&acc, &l);
            acc = acc * l / g;
        }
        acc
    }

    /// Parity: true for odd permutations.
    pub fn is_odd(&self) -> bool {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut transpositions = 0usize;
        for start in 0..n {
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            if len > 0 {
                transpositions += len - 1;
            }
        }
        transpositions % 2 == 1
    }
}

#[derive(Clone, Debug)]
struct Level {
    point: usize,
    /// Indices into the strong generators that fix all earlier base points.
    gens: Vec<usize>,
    orbit: Vec<usize>,
    /// `inv_reps[β]` maps `β` back to `point`.
    inv_reps: Vec<Option<Perm>>,
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub seed: u64,
    /// Points forced to the front of the base, in order.
    pub base_prefix: Vec<usize>,
    pub degree_cap: usize,
    /// Consecutive successful random sifts ending the randomized phase.
    pub random_sift_target: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            seed: 0,
            base_prefix: Vec::new(),
            degree_cap: DEGREE_CAP,
            random_sift_target: 30,
        }
    }
}

/// Base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct Bsgs {
    degree: usize,
    strong: Vec<Perm>,
    strong_inv: Vec<Perm>,
    levels: Vec<Level>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BsgsJson {
    pub degree: usize,
    pub base: Vec<usize>,
    pub order: String,
    pub orbit_lengths: Vec<usize>,
}

impl Bsgs {
    pub fn build(gens: &[Perm]) -> Result<Self> {
        Self::build_with(gens, &BuildOptions::default())
    }

    pub fn build_with(gens: &[Perm], opts: &BuildOptions) -> Result<Self> {
        let degree = gens.first().map_or(0, |g| g.degree());
        Self::build_on(degree, gens, opts)
    }

    /// Builds the group generated by `gens` on `degree` points (needed when
    /// `gens` is empty).
    pub fn build_on(degree: usize, gens: &[Perm], opts: &BuildOptions) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        if degree > opts.degree_cap {
            return Err(Error::DegreeCapExceeded {
                degree,
                cap: opts.degree_cap,
            });
        }
        let mut g = Bsgs {
            degree,
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
        };
        for &pt in &opts.base_prefix {
            if pt < degree && g.levels.iter().all(|l| l.point != pt) {
                g.push_level(pt);
            }
        }
        let gens: Vec<Perm> = gens.iter().filter(|p| !p.is_identity()).cloned().collect();
        if gens.is_empty() {
            return Ok(g);
        }
        g.random_phase(&gens, opts);
        for h in &gens {
            g.absorb(h);
        }
        g.complete();
        Ok(g)
    }

    fn push_level(&mut self, point: usize) {
        let depth = self.levels.len();
        let gens: Vec<usize> = (0..self.strong.len())
            .filter(|&i| self.levels[..depth].iter().all(|l| self.strong[i].apply(l.point) == l.point))
            .collect();
        self.levels.push(Level {
            point,
            gens,
            orbit: Vec::new(),
            inv_reps: Vec::new(),
        });
        self.recompute_orbit(depth);
    }

    fn recompute_orbit(&mut self, depth: usize) {
        let n = self.degree;
        let level = &self.levels[depth];
        let point = level.point;
        let mut inv_reps: Vec<Option<Perm>> = vec![None; n];
        inv_reps[point] = Some(Perm::identity(n));
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let beta = orbit[head];
            head += 1;
            for &gi in &level.gens {
                let gamma = self.strong[gi].apply(beta);
                if inv_reps[gamma].is_none() {
                    // rep_γ = rep_β then s, so rep_γ^{-1} = s^{-1} then rep_β^{-1}
                    let inv = self.strong_inv[gi].then(inv_reps[beta].as_ref().unwrap());
                    inv_reps[gamma] = Some(inv);
                    orbit.push(gamma);
                }
            }
        }
        let level = &mut self.levels[depth];
        level.orbit = orbit;
        level.inv_reps = inv_reps;
    }

    /// Strips `g` through the chain; returns the residue and the depth reached.
    fn strip(&self, g: &Perm) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate() {
            let beta = h.apply(level.point);
            match &level.inv_reps[beta] {
                Some(inv) => h = h.then(inv),
                None => return (h, i),
            }
        }
        (h, self.levels.len())
    }

    /// Adds `h` (fixing the first `depth` base points) as a strong generator.
    fn add_strong(&mut self, h: Perm, depth: usize) {
        let idx = self.strong.len();
        self.strong_inv.push(h.inverse());
        self.strong.push(h);
        if depth == self.levels.len() {
            let moved = (0..self.degree)
                .find(|&x| self.strong[idx].apply(x) != x)
                .expect("non-identity residue moves a point");
            self.levels.push(Level {
                point: moved,
                gens: Vec::new(),
                orbit: Vec::new(),
                inv_reps: Vec::new(),
            });
        }
        for i in 0..=depth {
            self.levels[i].gens.push(idx);
            self.recompute_orbit(i);
        }
    }

    /// Sifts `g`; on failure adds the residue. Returns true if `g` was new.
    fn absorb(&mut self, g: &Perm) -> bool {
        let (h, depth) = self.strip(g);
        if depth == self.levels.len() && h.is_identity() {
            return false;
        }
        self.add_strong(h, depth);
        true
    }

    fn random_phase(&mut self, gens: &[Perm], opts: &BuildOptions) {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let n = self.degree;
        let mut state: Vec<Perm> = gens.to_vec();
        while state.len() < 10 {
            state.push(gens[state.len() % gens.len()].clone());
        }
        let mut acc = Perm::identity(n);
        let step = |rng: &mut ChaCha8Rng, state: &mut Vec<Perm>, acc: &mut Perm| {
            let i = rng.gen_range(0..state.len());
            let mut j = rng.gen_range(0..state.len() - 1);
            if j >= i {
                j += 1;
            }
            state[i] = if rng.gen_bool(0.5) {
                state[i].then(&state[j])
            } else {
                state[i].then(&state[j].inverse())
            };
            *acc = acc.then(&state[i]);
        };
        for _ in 0..40 {
            step(&mut rng, &mut state, &mut acc);
        }
        let mut streak = 0;
        let mut rounds = 0;
        while streak < opts.random_sift_target && rounds < 20_000 {
            step(&mut rng, &mut state, &mut acc);
            rounds += 1;
            if self.absorb(&acc) {
                streak = 0;
            } else {
                streak += 1;
            }
        }
    }

    /// Deterministic Schreier–Sims: every Schreier generator at every level
    /// must strip to the identity through the levels below it.
    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let depth = i - 1;
            match self.first_failing_schreier(depth) {
                Some((h, at)) => {
                    self.add_strong(h, at);
                    i = self.levels.len();
                }
                None => i -= 1,
            }
        }
    }

    fn first_failing_schreier(&self, depth: usize) -> Option<(Perm, usize)> {
        let level = &self.levels[depth];
        for &beta in &level.orbit {
            let rep = level.inv_reps[beta].as_ref().unwrap().inverse();
            for &gi in &level.gens {
                let s = &self.strong[gi];
                let gamma = s.apply(beta);
                let inv_gamma = level.inv_reps[gamma].as_ref().unwrap();
                let schreier = rep.then(s).then(inv_gamma);
                if schreier.is_identity() {
                    continue;
                }
                let mut h = schreier;
                let mut reached = self.levels.len();
                for (k, lv) in self.levels.iter().enumerate().skip(depth + 1) {
                    let b = h.apply(lv.point);
                    match &lv.inv_reps[b] {
                        Some(inv) => h = h.then(inv),
                        None => {
                            reached = k;
                            break;
                        }
                    }
                }
                if !(reached == self.levels.len() && h.is_identity()) {
                    return Some((h, reached));
                }
            }
        }
        None
    }

    /// Adds `g` to the group if it is not already a member, re-verifying the
    /// chain. Returns true when the group grew.
    pub fn extend(&mut self, g: &Perm) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, g.degree()));
        }
        if self.absorb(g) {
            self.complete();
            Ok(true)
        } else {
            Ok(false)
        }
    }

    pub fn contains(&self, g: &Perm) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, g.degree()));
        }
        let (h, depth) = self.strip(g);
        Ok(depth == self.levels.len() && h.is_identity())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn is_transitive(&self) -> bool {
        if self.degree <= 1 {
            return true;
        }
        self.levels.first().is_some_and(|l| l.orbit.len() == self.degree)
    }

    /// `|G_point| = |G| / |point^G|`, requiring transitivity.
    pub fn stabilizer_order(&self, point: usize) -> Result<BigUint> {
        if !self.is_transitive() || point >= self.degree.max(1) {
            return Err(Error::NotTransitive);
        }
        Ok(self.order() / BigUint::from(self.degree.max(1)))
    }

    /// Generators of the stabilizer of `point`: the second-level strong
    /// generators when `point` is the first base point, otherwise Schreier
    /// generators of the orbit of `point`.
    pub fn stabilizer_generators(&self, point: usize) -> Vec<Perm> {
        if self.levels.first().is_some_and(|l| l.point == point) {
            return match self.levels.get(1) {
                Some(l) => l.gens.iter().map(|&i| self.strong[i].clone()).collect(),
                None => Vec::new(),
            };
        }
        // Schreier's lemma on the orbit of point under the strong generators
        let n = self.degree;
        let mut reps: Vec<Option<Perm>> = vec![None; n];
        reps[point] = Some(Perm::identity(n));
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let b = orbit[head];
            head += 1;
            for s in &self.strong {
                let c = s.apply(b);
                if reps[c].is_none() {
                    reps[c] = Some(reps[b].as_ref().unwrap().then(s));
                    orbit.push(c);
                }
            }
        }
        let mut out: Vec<Perm> = Vec::new();
        for &b in &orbit {
            for s in &self.strong {
                let c = s.apply(b);
                let g = reps[b]
                    .as_ref()
                    .unwrap()
                    .then(s)
                    .then(&reps[c].as_ref().unwrap().inverse());
                if !g.is_identity() && !out.contains(&g) {
                    out.push(g);
                }
            }
        }
        out
    }

    /// Sub-chain from the second level: a BSGS of the first base point's
    /// stabilizer.
    pub fn stabilizer_chain(&self) -> Bsgs {
        if self.levels.is_empty() {
            return self.clone();
        }
        let keep: Vec<usize> = self.levels.get(1).map_or(Vec::new(), |l| l.gens.clone());
        let remap: HashMap<usize, usize> = keep.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let levels = self.levels[1..]
            .iter()
            .map(|l| Level {
                point: l.point,
                gens: l.gens.iter().map(|i| remap[i]).collect(),
                orbit: l.orbit.clone(),
                inv_reps: l.inv_reps.clone(),
            })
            .collect();
        Bsgs {
            degree: self.degree,
            strong: keep.iter().map(|&i| self.strong[i].clone()).collect(),
            strong_inv: keep.iter().map(|&i| self.strong_inv[i].clone()).collect(),
            levels,
        }
    }

    /// Uniformly random element (product of random coset representatives).
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.degree);
        for level in self.levels.iter().rev() {
            let beta = level.orbit[rng.gen_range(0..level.orbit.len())];
            let rep = level.inv_reps[beta].as_ref().unwrap().inverse();
            g = g.then(&rep);
        }
        g
    }

    /// Every strong generator strips to the identity.
    pub fn verify_strong_generators(&self) -> bool {
        self.strong.iter().all(|s| self.contains(s).unwrap_or(false))
    }

    pub fn to_json(&self) -> BsgsJson {
        BsgsJson {
            degree: self.degree,
            base: self.base(),
            order: self.order().to_string(),
            orbit_lengths: self.orbit_lengths(),
        }
    }
}

/// A finite group as a full multiplication table.
#[derive(Clone, Debug)]
pub struct CayleyTable {
    n: usize,
    identity: usize,
    table: Vec<u32>,
}

impl CayleyTable {
    /// `table[a * n + b]` is the index of `a·b`.
    pub fn new(n: usize, identity: usize, table: Vec<u32>) -> Result<Self> {
        if table.len() != n * n || identity >= n.max(1) {
            return Err(Error::PreconditionViolated("malformed table".into()));
        }
        Ok(CayleyTable { n, identity, table })
    }

    /// Enumerates the group generated by `gens` (product `a·b = a then b`
    /// read as functions composed right to left: `(a·b)(x) = a(b(x))`).
    pub fn from_perms(gens: &[Perm], bound: usize) -> Result<(Self, Vec<Perm>)> {
        let degree = gens.first().map_or(0, |g| g.degree());
        let mut elems: Vec<Perm> = vec![Perm::identity(degree)];
        let mut index: HashMap<Perm, usize> = HashMap::new();
        index.insert(elems[0].clone(), 0);
        let mut head = 0;
        while head < elems.len() {
            let a = elems[head].clone();
            head += 1;
            for g in gens {
                let c = g.then(&a);
                if !index.contains_key(&c) {
                    if elems.len() >= bound {
                        return Err(Error::TooLarge(format!("> {bound}")));
                    }
                    index.insert(c.clone(), elems.len());
                    elems.push(c);
                }
            }
        }
        let n = elems.len();
        let mut table = vec![0u32; n * n];
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                // (a·b)(x) = a(b(x)) = b then a
                table[i * n + j] = index[&b.then(a)] as u32;
            }
        }
        Ok((CayleyTable { n, identity: 0, table }, elems))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.n)
            .find(|&b| self.mul(a, b) == self.identity)
            .expect("group elements are invertible")
    }

    pub fn pow(&self, a: usize, e: usize) -> usize {
        (0..e).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn cyclic_subgroup(&self, a: usize) -> Vec<usize> {
        let mut out = vec![self.identity];
        let mut x = a;
        while x != self.identity {
            out.push(x);
            x = self.mul(x, a);
        }
        out
    }

    /// Associativity and identity/inverse laws.
    pub fn is_group(&self) -> bool {
        let n = self.n;
        (0..n).all(|a| self.mul(self.identity, a) == a && self.mul(a, self.identity) == a)
            && (0..n).all(|a| (0..n).any(|b| self.mul(a, b) == self.identity))
            && (0..n).all(|a| {
                (0..n).all(|b| (0..n).all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))))
            })
    }

    pub fn order_spectrum(&self) -> BTreeMap<usize, usize> {
        let mut spec = BTreeMap::new();
        for a in 0..self.n {
            *spec.entry(self.element_order(a)).or_insert(0) += 1;
        }
        spec
    }

    /// Witness `(x, y)` with `|x| = a`, `|y| = b`, `y x y^{-1} = x^q` and
    /// `⟨x⟩ ∩ ⟨y⟩ = 1`.
    pub fn find_semidirect(&self, a: usize, b: usize, q: usize) -> Option<(usize, usize)> {
        let orders: Vec<usize> = (0..self.n).map(|g| self.element_order(g)).collect();
        let xs: Vec<usize> = (0..self.n).filter(|&g| orders[g] == a).collect();
        let ys: Vec<usize> = (0..self.n).filter(|&g| orders[g] == b).collect();
        for &x in &xs {
            let cx = self.cyclic_subgroup(x);
            let xq = self.pow(x, q % a.max(1));
            for &y in &ys {
                let conj = self.mul(self.mul(y, x), self.inverse(y));
                if conj != xq {
                    continue;
                }
                let cy = self.cyclic_subgroup(y);
                if cy.iter().filter(|g| cx.contains(g)).count() == 1 {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Witness `(a, b)` for `Dic_k`: `|a| = 2k`, `b^2 = a^k`, `b a b^{-1} = a^{-1}`, `b ∉ ⟨a⟩`.
    pub fn find_dicyclic(&self, k: usize) -> Option<(usize, usize)> {
        let orders: Vec<usize> = (0..self.n).map(|g| self.element_order(g)).collect();
        for a in (0..self.n).filter(|&g| orders[g] == 2 * k) {
            let ak = self.pow(a, k);
            let ainv = self.inverse(a);
            let ca = self.cyclic_subgroup(a);
            for b in 0..self.n {
                if ca.contains(&b) || self.mul(b, b) != ak {
                    continue;
                }
                if self.mul(self.mul(b, a), self.inverse(b)) == ainv {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupTag {
    Cyclic { order: usize },
    Dicyclic { k: usize },
    Semidirect { normal: usize, acting: usize, multiplier: usize },
    Unknown { order: usize, spectrum: BTreeMap<usize, usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupId {
    #[serde(flatten)]
    pub tag: GroupTag,
    /// Table indices of the witnessing generators.
    pub witness: Vec<usize>,
}

impl std::fmt::Display for GroupId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.tag {
            GroupTag::Cyclic { order } => write!(f, "Z/{order}"),
            GroupTag::Dicyclic { k } => write!(f, "Dic_{k}"),
            GroupTag::Semidirect { normal, acting, multiplier } => {
                write!(f, "Z/{normal} x|_{multiplier} Z/{acting}")
            }
            GroupTag::Unknown { order, .. } => write!(f, "unknown of order {order}"),
        }
    }
}

pub const IDENTIFY_BOUND: usize = 512;

/// Cyclic, then dicyclic, then split metacyclic `Z/a ⋊_q Z/b`; otherwise
/// unknown with the element-order spectrum.
pub fn identify_small_group(g: &CayleyTable) -> Result<GroupId> {
    let n = g.order();
    if n > IDENTIFY_BOUND {
        return Err(Error::TooLarge(n.to_string()));
    }
    if let Some(x) = (0..n).find(|&x| g.element_order(x) == n) {
        return Ok(GroupId {
            tag: GroupTag::Cyclic { order: n },
            witness: vec![x],
        });
    }
    if n % 4 == 0 && n >= 8 {
        if let Some((a, b)) = g.find_dicyclic(n / 4) {
            return Ok(GroupId {
                tag: GroupTag::Dicyclic { k: n / 4 },
                witness: vec![a, b],
            });
        }
    }
    // largest normal cyclic factor first
    for a in (2..n).rev().filter(|a| n % a == 0) {
        let b = n / a;
        if b < 2 {
            continue;
        }
        for q in 1..a {
            if num_integer::gcd(q, a) != 1 || !pow_is_one_mod(q, b, a) {
                continue;
            }
            if let Some((x, y)) = g.find_semidirect(a, b, q) {
                return Ok(GroupId {
                    tag: GroupTag::Semidirect {
                        normal: a,
                        acting: b,
                        multiplier: q,
                    },
                    witness: vec![x, y],
                });
            }
        }
    }
    Ok(GroupId {
        tag: GroupTag::Unknown {
            order: n,
            spectrum: g.order_spectrum(),
        },
        witness: Vec::new(),
    })
}

fn pow_is_one_mod(q: usize, e: usize, m: usize) -> bool {
    crate::arith::pow_mod(q as u64, e as u64, m as u64) == 1 % m as u64
}
