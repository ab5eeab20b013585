//! Explicit finite groupoids: cardinality, action groupoids, 2-pullbacks,
//! spans, the function-space functor, and homotopy cardinality.
//!
//! Groupoids are stored strictly — full source/target/composition/inverse
//! tables, validated at construction. Equivalence is tested at the
//! cardinality level (bijection on isomorphism classes plus matching
//! automorphism orders); for groupoids under 200 morphisms a full
//! fully-faithful/essentially-surjective certificate is available. Large
//! 2-pullbacks, whose composition tables would be quadratic in a morphism
//! count that is itself large, are handled by a lazy profile that exposes
//! exactly the iso-class and automorphism data the checks consume.

pub mod flags;

use crate::error::{Error, Result};
use crate::{Int, Rat};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

/// Cap on composition-table entries for strict 2-pullbacks.
pub const PULLBACK_TABLE_BOUND: usize = 2_000_000;

/// A finite groupoid with full tables.
#[derive(Clone, Debug, PartialEq)]
pub struct FiniteGroupoid {
    n_objects: usize,
    src: Vec<usize>,
    tgt: Vec<usize>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
    compose: HashMap<(usize, usize), usize>,
    by_src: Vec<Vec<usize>>,
    hom: HashMap<(usize, usize), Vec<usize>>,
}

impl FiniteGroupoid {
    /// Builds and validates a groupoid from raw tables. `compose[(f, g)]`
    /// is `g ∘ f`, defined exactly when `tgt(f) = src(g)`.
    pub fn new(
        n_objects: usize,
        src: Vec<usize>,
        tgt: Vec<usize>,
        identity: Vec<usize>,
        inverse: Vec<usize>,
        compose: HashMap<(usize, usize), usize>,
    ) -> Result<Self> {
        let n_mor = src.len();
        if tgt.len() != n_mor || inverse.len() != n_mor || identity.len() != n_objects {
            return Err(Error::InvalidArgument("table lengths disagree".into()));
        }
        let mut by_src = vec![Vec::new(); n_objects];
        let mut hom: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for f in 0..n_mor {
            if src[f] >= n_objects || tgt[f] >= n_objects {
                return Err(Error::InvalidArgument("morphism endpoint out of range".into()));
            }
            by_src[src[f]].push(f);
            hom.entry((src[f], tgt[f])).or_default().push(f);
        }
        let g = FiniteGroupoid {
            n_objects,
            src,
            tgt,
            identity,
            inverse,
            compose,
            by_src,
            hom,
        };
        g.validate_basic()?;
        Ok(g)
    }

    fn validate_basic(&self) -> Result<()> {
        for (o, &e) in self.identity.iter().enumerate() {
            if self.src[e] != o || self.tgt[e] != o {
                return Err(Error::InvalidArgument(format!(
                    "identity of object {o} has wrong endpoints"
                )));
            }
        }
        for f in 0..self.src.len() {
            let inv = self.inverse[f];
            if self.src[inv] != self.tgt[f] || self.tgt[inv] != self.src[f] {
                return Err(Error::InvalidArgument("inverse has wrong endpoints".into()));
            }
            if self.compose(f, inv) != Some(self.identity[self.src[f]])
                || self.compose(inv, f) != Some(self.identity[self.tgt[f]])
            {
                return Err(Error::InvalidArgument("inverse law fails".into()));
            }
            if self.compose(self.identity[self.src[f]], f) != Some(f)
                || self.compose(f, self.identity[self.tgt[f]]) != Some(f)
            {
                return Err(Error::InvalidArgument("identity law fails".into()));
            }
        }
        // composition totality and endpoint coherence
        for f in 0..self.src.len() {
            for &g in &self.by_src[self.tgt[f]] {
                match self.compose(f, g) {
                    None => {
                        return Err(Error::InvalidArgument(format!(
                            "composition undefined for composable pair ({f}, {g})"
                        )))
                    }
                    Some(h) => {
                        if self.src[h] != self.src[f] || self.tgt[h] != self.tgt[g] {
                            return Err(Error::InvalidArgument(
                                "composite has wrong endpoints".into(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Full associativity over all composable triples; quadratic-ish, meant
    /// for construction-time use on modest groupoids and for tests.
    pub fn validate_associativity(&self) -> Result<()> {
        for f in 0..self.src.len() {
            for &g in &self.by_src[self.tgt[f]] {
                let fg = self.compose(f, g).unwrap();
                for &h in &self.by_src[self.tgt[g]] {
                    let gh = self.compose(g, h).unwrap();
                    if self.compose(fg, h) != self.compose(f, gh) {
                        return Err(Error::InvalidArgument(format!(
                            "associativity fails at ({f}, {g}, {h})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_morphisms(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.tgt[f]
    }

    pub fn identity_of(&self, o: usize) -> usize {
        self.identity[o]
    }

    pub fn inverse_of(&self, f: usize) -> usize {
        self.inverse[f]
    }

    /// `g ∘ f` when `tgt(f) = src(g)`.
    pub fn compose(&self, f: usize, g: usize) -> Option<usize> {
        self.compose.get(&(f, g)).copied()
    }

    pub fn morphisms_from(&self, o: usize) -> &[usize] {
        &self.by_src[o]
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        self.hom.get(&(a, b)).map_or(&[], Vec::as_slice)
    }

    pub fn aut_order(&self, o: usize) -> usize {
        self.hom(o, o).len()
    }

    /// Isomorphism-class id per object, classes numbered by least member.
    pub fn components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.n_objects);
        for f in 0..self.src.len() {
            uf.union(self.src[f], self.tgt[f]);
        }
        uf.canonical_labels()
    }

    /// One representative (the least object) per isomorphism class.
    pub fn iso_class_reps(&self) -> Vec<usize> {
        let comp = self.components();
        let mut reps: Vec<usize> = Vec::new();
        for (o, &c) in comp.iter().enumerate() {
            if c == reps.len() {
                reps.push(o);
            }
        }
        reps
    }

    /// Groupoid cardinality `Σ_{[a]} 1/|Aut(a)|`.
    pub fn cardinality(&self) -> Rat {
        let mut acc = Rat::zero();
        for rep in self.iso_class_reps() {
            acc += Rat::new(Int::one(), Int::from(self.aut_order(rep) as u64));
        }
        acc
    }

    /// One-object one-morphism groupoid.
    pub fn point() -> Self {
        let mut compose = HashMap::new();
        compose.insert((0, 0), 0);
        FiniteGroupoid::new(1, vec![0], vec![0], vec![0], vec![0], compose).unwrap()
    }

    /// Discrete groupoid on `n` objects.
    pub fn discrete(n: usize) -> Self {
        let mut compose = HashMap::new();
        for i in 0..n {
            compose.insert((i, i), i);
        }
        FiniteGroupoid::new(
            n,
            (0..n).collect(),
            (0..n).collect(),
            (0..n).collect(),
            (0..n).collect(),
            compose,
        )
        .unwrap()
    }
}

/// JSON form: full morphism tables with the composition law as triples.
#[derive(serde::Serialize, serde::Deserialize)]
pub struct GroupoidTables {
    pub n_objects: usize,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
    pub identity: Vec<usize>,
    pub inverse: Vec<usize>,
    pub compose: Vec<(usize, usize, usize)>,
}

impl FiniteGroupoid {
    pub fn to_tables(&self) -> GroupoidTables {
        let mut compose: Vec<(usize, usize, usize)> = self
            .compose
            .iter()
            .map(|(&(f, g), &h)| (f, g, h))
            .collect();
        compose.sort_unstable();
        GroupoidTables {
            n_objects: self.n_objects,
            src: self.src.clone(),
            tgt: self.tgt.clone(),
            identity: self.identity.clone(),
            inverse: self.inverse.clone(),
            compose,
        }
    }

    pub fn from_tables(t: GroupoidTables) -> Result<Self> {
        let compose = t.compose.into_iter().map(|(f, g, h)| ((f, g), h)).collect();
        FiniteGroupoid::new(t.n_objects, t.src, t.tgt, t.identity, t.inverse, compose)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }

    /// 0-based class labels in order of least member.
    fn canonical_labels(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut label: HashMap<usize, usize> = HashMap::new();
        let mut out = vec![0; n];
        for x in 0..n {
            let r = self.find(x);
            let next = label.len();
            out[x] = *label.entry(r).or_insert(next);
        }
        out
    }
}

/// A functor between explicit groupoids: object and morphism maps.
#[derive(Clone, Debug, PartialEq)]
pub struct Functor {
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

impl Functor {
    pub fn identity(g: &FiniteGroupoid) -> Self {
        Functor {
            obj: (0..g.n_objects()).collect(),
            mor: (0..g.n_morphisms()).collect(),
        }
    }

    /// Functor laws against explicit source and target groupoids.
    pub fn validate(&self, a: &FiniteGroupoid, b: &FiniteGroupoid) -> Result<()> {
        if self.obj.len() != a.n_objects() || self.mor.len() != a.n_morphisms() {
            return Err(Error::InvalidArgument("functor table lengths".into()));
        }
        for f in 0..a.n_morphisms() {
            let ff = self.mor[f];
            if b.src(ff) != self.obj[a.src(f)] || b.tgt(ff) != self.obj[a.tgt(f)] {
                return Err(Error::InvalidArgument(format!(
                    "functor breaks endpoints at morphism {f}"
                )));
            }
        }
        for o in 0..a.n_objects() {
            if self.mor[a.identity_of(o)] != b.identity_of(self.obj[o]) {
                return Err(Error::InvalidArgument(format!(
                    "functor breaks the identity at object {o}"
                )));
            }
        }
        for f in 0..a.n_morphisms() {
            for &g in a.morphisms_from(a.tgt(f)) {
                let h = a.compose(f, g).unwrap();
                let bh = b.compose(self.mor[f], self.mor[g]);
                if bh != Some(self.mor[h]) {
                    return Err(Error::InvalidArgument(format!(
                        "functor breaks composition at ({f}, {g})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `g ∘ self` (apply `self` first).
    pub fn then(&self, g: &Functor) -> Functor {
        Functor {
            obj: self.obj.iter().map(|&o| g.obj[o]).collect(),
            mor: self.mor.iter().map(|&m| g.mor[m]).collect(),
        }
    }

    /// Constant functor to an object of `b`.
    pub fn constant(a: &FiniteGroupoid, b: &FiniteGroupoid, target: usize) -> Functor {
        Functor {
            obj: vec![target; a.n_objects()],
            mor: vec![b.identity_of(target); a.n_morphisms()],
        }
    }
}

/// The action groupoid `K // G` of a right permutation action. `perms`
/// must form a group of permutations of `{0, …, k-1}` (validated).
pub fn action_groupoid(k: usize, perms: &[Vec<usize>]) -> Result<FiniteGroupoid> {
    // group validation: well-formed permutations, identity, closure, inverses
    let mut index: HashMap<&[usize], usize> = HashMap::new();
    for (i, p) in perms.iter().enumerate() {
        if p.len() != k {
            return Err(Error::InvalidArgument("permutation length".into()));
        }
        let mut seen = vec![false; k];
        for &x in p {
            if x >= k || seen[x] {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
            seen[x] = true;
        }
        if index.insert(p.as_slice(), i).is_some() {
            return Err(Error::InvalidArgument("duplicate group element".into()));
        }
    }
    let id: Vec<usize> = (0..k).collect();
    let Some(&e) = index.get(id.as_slice()) else {
        return Err(Error::InvalidArgument("identity missing from group".into()));
    };
    let prod = |a: usize, b: usize| -> Option<usize> {
        let composed: Vec<usize> = (0..k).map(|x| perms[b][perms[a][x]]).collect();
        index.get(composed.as_slice()).copied()
    };
    let mut inv_of = vec![usize::MAX; perms.len()];
    for a in 0..perms.len() {
        for b in 0..perms.len() {
            let ab = prod(a, b).ok_or_else(|| {
                Error::InvalidArgument("group is not closed under composition".into())
            })?;
            if ab == e {
                inv_of[a] = b;
            }
        }
        if inv_of[a] == usize::MAX {
            return Err(Error::InvalidArgument("group element has no inverse".into()));
        }
    }
    // morphisms (point, g): src point, tgt g(point)
    let g_count = perms.len();
    let mor = |pt: usize, g: usize| pt * g_count + g;
    let mut src = Vec::with_capacity(k * g_count);
    let mut tgt = Vec::with_capacity(k * g_count);
    let mut inverse = Vec::with_capacity(k * g_count);
    for pt in 0..k {
        for g in 0..g_count {
            src.push(pt);
            tgt.push(perms[g][pt]);
            inverse.push(mor(perms[g][pt], inv_of[g]));
        }
    }
    let identity: Vec<usize> = (0..k).map(|pt| mor(pt, e)).collect();
    let mut compose = HashMap::new();
    for pt in 0..k {
        for g in 0..g_count {
            let mid = perms[g][pt];
            for h in 0..g_count {
                let gh = prod(g, h).unwrap();
                compose.insert((mor(pt, g), mor(mid, h)), mor(pt, gh));
            }
        }
    }
    FiniteGroupoid::new(k, src, tgt, identity, inverse, compose)
}

/// Product groupoid `A × B` with objects and morphisms indexed pairwise.
pub fn product_groupoid(a: &FiniteGroupoid, b: &FiniteGroupoid) -> FiniteGroupoid {
    let obj = |oa: usize, ob: usize| oa * b.n_objects() + ob;
    let mor = |fa: usize, fb: usize| fa * b.n_morphisms() + fb;
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    let mut inverse = Vec::new();
    for fa in 0..a.n_morphisms() {
        for fb in 0..b.n_morphisms() {
            src.push(obj(a.src(fa), b.src(fb)));
            tgt.push(obj(a.tgt(fa), b.tgt(fb)));
            inverse.push(mor(a.inverse_of(fa), b.inverse_of(fb)));
        }
    }
    let mut identity = Vec::new();
    for oa in 0..a.n_objects() {
        for ob in 0..b.n_objects() {
            let _ = ob;
            identity.push(mor(a.identity_of(oa), b.identity_of(ob)));
        }
    }
    let mut compose = HashMap::new();
    for fa in 0..a.n_morphisms() {
        for fb in 0..b.n_morphisms() {
            for &ga in a.morphisms_from(a.tgt(fa)) {
                for &gb in b.morphisms_from(b.tgt(fb)) {
                    let ca = a.compose(fa, ga).unwrap();
                    let cb = b.compose(fb, gb).unwrap();
                    compose.insert((mor(fa, fb), mor(ga, gb)), mor(ca, cb));
                }
            }
        }
    }
    FiniteGroupoid::new(
        a.n_objects() * b.n_objects(),
        src,
        tgt,
        identity,
        inverse,
        compose,
    )
    .expect("product of valid groupoids is valid")
}

/// Pairs two functors with a common source into the product groupoid.
pub fn pair_functors(f: &Functor, g: &Functor, b1: &FiniteGroupoid, b2: &FiniteGroupoid) -> Functor {
    let _ = b1;
    Functor {
        obj: f
            .obj
            .iter()
            .zip(&g.obj)
            .map(|(&oa, &ob)| oa * b2.n_objects() + ob)
            .collect(),
        mor: f
            .mor
            .iter()
            .zip(&g.mor)
            .map(|(&fa, &fb)| fa * b2.n_morphisms() + fb)
            .collect(),
    }
}

/// The strict 2-pullback of `F: A → C ← B : G` as an explicit groupoid of
/// triples `(a, b, φ)`, with its two projections. Errors when the
/// composition table would exceed [`PULLBACK_TABLE_BOUND`] entries; the lazy
/// [`PullbackProfile`] serves the cardinality-level checks at any size.
pub fn two_pullback(
    a: &FiniteGroupoid,
    b: &FiniteGroupoid,
    c: &FiniteGroupoid,
    f: &Functor,
    g: &Functor,
) -> Result<(FiniteGroupoid, Functor, Functor)> {
    let mut objects: Vec<(usize, usize, usize)> = Vec::new();
    let mut obj_index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for oa in 0..a.n_objects() {
        for ob in 0..b.n_objects() {
            for &phi in c.hom(f.obj[oa], g.obj[ob]) {
                obj_index.insert((oa, ob, phi), objects.len());
                objects.push((oa, ob, phi));
            }
        }
    }
    // morphisms: for each object and each pair (fa, fb) out of it, the target
    // isomorphism is determined: φ' = G(fb) ∘ φ ∘ F(fa)^{-1}
    let mut src = Vec::new();
    let mut tgt = Vec::new();
    let mut mors: Vec<(usize, usize, usize)> = Vec::new(); // (object, fa, fb)
    let mut mor_index: HashMap<(usize, usize, usize), usize> = HashMap::new();
    for (o, &(oa, ob, phi)) in objects.iter().enumerate() {
        for &fa in a.morphisms_from(oa) {
            for &fb in b.morphisms_from(ob) {
                let f_inv = c.inverse_of(f.mor[fa]);
                let phi2 = c
                    .compose(f_inv, c.compose(phi, g.mor[fb]).unwrap())
                    .unwrap();
                let target = obj_index[&(a.tgt(fa), b.tgt(fb), phi2)];
                mor_index.insert((o, fa, fb), mors.len());
                src.push(o);
                tgt.push(target);
                mors.push((o, fa, fb));
            }
        }
    }
    // composition-table size guard
    let mut out_deg = vec![0usize; objects.len()];
    for &s in &src {
        out_deg[s] += 1;
    }
    let table: usize = (0..mors.len()).map(|m| out_deg[tgt[m]]).sum();
    if table > PULLBACK_TABLE_BOUND {
        return Err(Error::BoundExceeded(format!(
            "2-pullback composition table would have {table} entries"
        )));
    }
    let identity: Vec<usize> = objects
        .iter()
        .enumerate()
        .map(|(o, &(oa, ob, _))| mor_index[&(o, a.identity_of(oa), b.identity_of(ob))])
        .collect();
    let inverse: Vec<usize> = mors
        .iter()
        .enumerate()
        .map(|(m, &(_, fa, fb))| {
            mor_index[&(tgt[m], a.inverse_of(fa), b.inverse_of(fb))]
        })
        .collect();
    let mut out_by_src = vec![Vec::new(); objects.len()];
    for (m, &s) in src.iter().enumerate() {
        out_by_src[s].push(m);
    }
    let mut compose = HashMap::new();
    for (m, &(_, fa, fb)) in mors.iter().enumerate() {
        for &n in &out_by_src[tgt[m]] {
            let (_, ga, gb) = mors[n];
            let ca = a.compose(fa, ga).unwrap();
            let cb = b.compose(fb, gb).unwrap();
            compose.insert((m, n), mor_index[&(src[m], ca, cb)]);
        }
    }
    let pb = FiniteGroupoid::new(objects.len(), src, tgt, identity, inverse, compose)?;
    let proj_a = Functor {
        obj: objects.iter().map(|&(oa, _, _)| oa).collect(),
        mor: mors.iter().map(|&(_, fa, _)| fa).collect(),
    };
    let proj_b = Functor {
        obj: objects.iter().map(|&(_, ob, _)| ob).collect(),
        mor: mors.iter().map(|&(_, _, fb)| fb).collect(),
    };
    Ok((pb, proj_a, proj_b))
}

/// Lazy 2-pullback: objects are materialized, morphisms are enumerated on
/// the fly for isomorphism classes and automorphism orders.
pub struct PullbackProfile {
    pub objects: Vec<(usize, usize, usize)>,
    index: HashMap<(usize, usize, usize), usize>,
}

impl PullbackProfile {
    pub fn new(
        a: &FiniteGroupoid,
        b: &FiniteGroupoid,
        c: &FiniteGroupoid,
        f: &Functor,
        g: &Functor,
    ) -> Self {
        let mut objects = Vec::new();
        let mut index = HashMap::new();
        for oa in 0..a.n_objects() {
            for ob in 0..b.n_objects() {
                for &phi in c.hom(f.obj[oa], g.obj[ob]) {
                    index.insert((oa, ob, phi), objects.len());
                    objects.push((oa, ob, phi));
                }
            }
        }
        PullbackProfile { objects, index }
    }

    pub fn object_index(&self, key: (usize, usize, usize)) -> Option<usize> {
        self.index.get(&key).copied()
    }

    /// `|Aut(a, b, φ)|`: pairs of automorphisms intertwined by φ.
    pub fn aut_order(
        &self,
        o: usize,
        a: &FiniteGroupoid,
        b: &FiniteGroupoid,
        c: &FiniteGroupoid,
        f: &Functor,
        g: &Functor,
    ) -> usize {
        let (oa, ob, phi) = self.objects[o];
        let mut count = 0;
        for &fa in a.hom(oa, oa) {
            for &fb in b.hom(ob, ob) {
                let lhs = c.compose(f.mor[fa], phi).unwrap();
                let rhs = c.compose(phi, g.mor[fb]).unwrap();
                if lhs == rhs {
                    count += 1;
                }
            }
        }
        count
    }

    /// Iso-class labels, numbered by least member.
    pub fn components(
        &self,
        a: &FiniteGroupoid,
        b: &FiniteGroupoid,
        c: &FiniteGroupoid,
        f: &Functor,
        g: &Functor,
    ) -> Vec<usize> {
        let mut uf = UnionFind::new(self.objects.len());
        for (o, &(oa, ob, phi)) in self.objects.iter().enumerate() {
            for &fa in a.morphisms_from(oa) {
                for &fb in b.morphisms_from(ob) {
                    let f_inv = c.inverse_of(f.mor[fa]);
                    let phi2 = c
                        .compose(f_inv, c.compose(phi, g.mor[fb]).unwrap())
                        .unwrap();
                    let target = self.index[&(a.tgt(fa), b.tgt(fb), phi2)];
                    uf.union(o, target);
                }
            }
        }
        uf.canonical_labels()
    }
}

/// A function on a groupoid: rational values constant on iso classes.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupoidFunction {
    pub values: Vec<Rat>,
}

impl GroupoidFunction {
    pub fn new(g: &FiniteGroupoid, values: Vec<Rat>) -> Result<Self> {
        if values.len() != g.n_objects() {
            return Err(Error::InvalidArgument("value count".into()));
        }
        let comp = g.components();
        let mut class_value: BTreeMap<usize, &Rat> = BTreeMap::new();
        for (o, &c) in comp.iter().enumerate() {
            match class_value.get(&c) {
                None => {
                    class_value.insert(c, &values[o]);
                }
                Some(v) => {
                    if **v != values[o] {
                        return Err(Error::InvalidArgument(format!(
                            "function not constant on the class of object {o}"
                        )));
                    }
                }
            }
        }
        Ok(GroupoidFunction { values })
    }

    pub fn indicator(g: &FiniteGroupoid, class_rep: usize) -> Self {
        let comp = g.components();
        let target = comp[class_rep];
        GroupoidFunction {
            values: comp
                .iter()
                .map(|&c| {
                    if c == target {
                        Rat::one()
                    } else {
                        Rat::zero()
                    }
                })
                .collect(),
        }
    }

    pub fn constant(g: &FiniteGroupoid, v: Rat) -> Self {
        GroupoidFunction {
            values: vec![v; g.n_objects()],
        }
    }
}

/// Total groupoid integral `Σ_{[a]} φ(a)/|Aut(a)|`.
pub fn groupoid_integral(g: &FiniteGroupoid, phi: &GroupoidFunction) -> Rat {
    let mut acc = Rat::zero();
    for rep in g.iso_class_reps() {
        acc += phi.values[rep].clone() / Rat::from_integer(Int::from(g.aut_order(rep) as u64));
    }
    acc
}

/// Groupoid cardinality of the 2-fiber of `F` over the object `b`.
pub fn fiber_cardinality(
    a: &FiniteGroupoid,
    b: &FiniteGroupoid,
    f: &Functor,
    over: usize,
) -> Rat {
    fiber_integral(a, b, f, over, &GroupoidFunction::constant(a, Rat::one()))
}

/// `∫_{A_b} φ|_{A_b}`: the groupoid integral of the restriction of `φ` to
/// the 2-fiber of `F` over `b`, computed from the comma groupoid
/// `(a, ψ: F(a) → b)`.
pub fn fiber_integral(
    a: &FiniteGroupoid,
    b: &FiniteGroupoid,
    f: &Functor,
    over: usize,
    phi: &GroupoidFunction,
) -> Rat {
    let point = FiniteGroupoid::point();
    let const_b = Functor {
        obj: vec![over],
        mor: vec![b.identity_of(over)],
    };
    let profile = PullbackProfile::new(a, &point, b, f, &const_b);
    let comps = profile.components(a, &point, b, f, &const_b);
    let mut seen = vec![false; profile.objects.len()];
    let mut acc = Rat::zero();
    for (o, &(oa, _, _)) in profile.objects.iter().enumerate() {
        let c = comps[o];
        if seen[c] {
            continue;
        }
        seen[c] = true;
        let aut = profile.aut_order(o, a, &point, b, f, &const_b);
        acc += phi.values[oa].clone() / Rat::from_integer(Int::from(aut as u64));
    }
    acc
}

/// Pushforward `F_! φ` by integration along the fibers.
pub fn pushforward(
    a: &FiniteGroupoid,
    b: &FiniteGroupoid,
    f: &Functor,
    phi: &GroupoidFunction,
) -> GroupoidFunction {
    let values: Vec<Rat> = (0..b.n_objects())
        .map(|o| fiber_integral(a, b, f, o, phi))
        .collect();
    GroupoidFunction { values }
}

/// Pullback `F^* φ`: composition with the functor.
pub fn pullback_fn(f: &Functor, phi: &GroupoidFunction) -> GroupoidFunction {
    GroupoidFunction {
        values: f.obj.iter().map(|&o| phi.values[o].clone()).collect(),
    }
}

/// A span of groupoids `A ← X → B` with its feet carried along.
#[derive(Clone, Debug)]
pub struct GroupoidSpan {
    pub a: FiniteGroupoid,
    pub b: FiniteGroupoid,
    pub apex: FiniteGroupoid,
    pub left: Functor,
    pub right: Functor,
}

impl GroupoidSpan {
    pub fn identity(g: &FiniteGroupoid) -> Self {
        GroupoidSpan {
            a: g.clone(),
            b: g.clone(),
            apex: g.clone(),
            left: Functor::identity(g),
            right: Functor::identity(g),
        }
    }
}

/// Composes spans by forming the 2-pullback of the facing legs.
pub fn compose_spans(s1: &GroupoidSpan, s2: &GroupoidSpan) -> Result<GroupoidSpan> {
    if s1.b != s2.a {
        return Err(Error::InvalidArgument(
            "spans do not share the middle groupoid".into(),
        ));
    }
    let (apex, proj1, proj2) = two_pullback(&s1.apex, &s2.apex, &s1.b, &s1.right, &s2.left)?;
    Ok(GroupoidSpan {
        a: s1.a.clone(),
        b: s2.b.clone(),
        apex,
        left: proj1.then(&s1.left),
        right: proj2.then(&s2.right),
    })
}

/// A linear map between function spaces, with rows and columns indexed by
/// the iso classes of the target and source groupoids.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassMatrix {
    pub src_reps: Vec<usize>,
    pub tgt_reps: Vec<usize>,
    /// `entries[row][col]`, row per target class, col per source class
    pub entries: Vec<Vec<Rat>>,
}

impl ClassMatrix {
    pub fn multiply(&self, first: &ClassMatrix) -> ClassMatrix {
        // self ∘ first
        assert_eq!(first.tgt_reps.len(), self.src_reps.len());
        let rows = self.tgt_reps.len();
        let cols = first.src_reps.len();
        let inner = self.src_reps.len();
        let mut entries = vec![vec![Rat::zero(); cols]; rows];
        for r in 0..rows {
            for c in 0..cols {
                let mut acc = Rat::zero();
                for k in 0..inner {
                    acc += self.entries[r][k].clone() * first.entries[k][c].clone();
                }
                entries[r][c] = acc;
            }
        }
        ClassMatrix {
            src_reps: first.src_reps.clone(),
            tgt_reps: self.tgt_reps.clone(),
            entries,
        }
    }
}

/// Matrix of `R_! ∘ L^*` for a span, acting `F(A) → F(B)`.
pub fn span_to_linear_map(s: &GroupoidSpan) -> ClassMatrix {
    let src_reps = s.a.iso_class_reps();
    let tgt_reps = s.b.iso_class_reps();
    let mut entries = Vec::with_capacity(tgt_reps.len());
    for &brep in &tgt_reps {
        let mut row = Vec::with_capacity(src_reps.len());
        for &arep in &src_reps {
            let phi = GroupoidFunction::indicator(&s.a, arep);
            let pulled = pullback_fn(&s.left, &phi);
            row.push(fiber_integral(&s.apex, &s.b, &s.right, brep, &pulled));
        }
        entries.push(row);
    }
    ClassMatrix {
        src_reps,
        tgt_reps,
        entries,
    }
}

/// Matrix of `F_!` over iso classes.
pub fn pushforward_matrix(a: &FiniteGroupoid, b: &FiniteGroupoid, f: &Functor) -> ClassMatrix {
    span_to_linear_map(&GroupoidSpan {
        a: a.clone(),
        b: b.clone(),
        apex: a.clone(),
        left: Functor::identity(a),
        right: f.clone(),
    })
}

/// Matrix of `F^*` over iso classes (rows per class of `A`).
pub fn pullback_matrix(a: &FiniteGroupoid, b: &FiniteGroupoid, f: &Functor) -> ClassMatrix {
    let src_reps = b.iso_class_reps();
    let tgt_reps = a.iso_class_reps();
    let b_comp = b.components();
    let mut entries = Vec::new();
    for &arep in &tgt_reps {
        let mut row = Vec::new();
        for &brep in &src_reps {
            row.push(if b_comp[f.obj[arep]] == b_comp[brep] {
                Rat::one()
            } else {
                Rat::zero()
            });
        }
        entries.push(row);
    }
    ClassMatrix {
        src_reps,
        tgt_reps,
        entries,
    }
}

/// Homotopy cardinality from homotopy-group orders per component:
/// `Σ_components Π_i |π_i|^{(-1)^i}`.
pub fn homotopy_cardinality(pi_data: &[Vec<u64>]) -> Result<Rat> {
    let mut acc = Rat::zero();
    for component in pi_data {
        let mut term = Rat::one();
        for (i, &order) in component.iter().enumerate() {
            if order == 0 {
                return Err(Error::InvalidArgument(
                    "homotopy group of order zero".into(),
                ));
            }
            let r = Rat::from_integer(Int::from(order));
            if (i + 1) % 2 == 1 {
                term /= r;
            } else {
                term *= r;
            }
        }
        acc += term;
    }
    Ok(acc)
}
